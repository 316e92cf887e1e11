//! End-to-end identification of a hidden oracle with a verified scheme.
//!
//! The hidden oracle is reachable only through [`BlackBox`]. Its output on the
//! scheme's input is compared against the precomputed outputs of every
//! candidate `f_k^{⊗t}|psi>`; for an exact scheme exactly one of those has
//! unit overlap and the rest are orthogonal.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::oracle::{overlap, AmpState, BlackBox, GroverOracle, Overlap};
use crate::schemes::{expand_to_state, Scheme, DEFAULT_MAX_TUPLES};

/// Float-mode acceptance band: a candidate matches at `|overlap| >= 1 - this`
/// and is rejected at `|overlap| <= this`.
pub const CLASSIFY_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct IdentificationRun {
    pub n: usize,
    pub identified: usize,
    pub hidden_queries_used: usize,
    /// `<f_k^{⊗t} psi | hidden output>` for `k = 1..=n`.
    pub per_candidate_overlaps: Vec<Overlap>,
}

/// Wraps a black box and counts single-copy queries.
#[derive(Debug)]
pub struct CountingOracle<O> {
    inner: O,
    queries: AtomicUsize,
}

impl<O: BlackBox> CountingOracle<O> {
    pub fn new(inner: O) -> Self {
        Self {
            inner,
            queries: AtomicUsize::new(0),
        }
    }

    pub fn queries(&self) -> usize {
        self.queries.load(Ordering::Relaxed)
    }
}

impl<O: BlackBox> BlackBox for CountingOracle<O> {
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn query(&self, state: &AmpState, slot: usize) -> Result<AmpState> {
        self.queries.fetch_add(1, Ordering::Relaxed);
        self.inner.query(state, slot)
    }
}

/// A scheme's input state plus every candidate output, ready to classify.
#[derive(Clone, Debug)]
pub struct Identifier {
    n: usize,
    copies: usize,
    input: Option<AmpState>,
    candidates: Vec<AmpState>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Match,
    Reject,
    Unclear,
}

fn classify(o: &Overlap) -> Verdict {
    match o {
        Overlap::Exact(_) if o.is_unit() => Verdict::Match,
        Overlap::Exact(_) if o.is_zero() => Verdict::Reject,
        Overlap::Exact(_) => Verdict::Unclear,
        Overlap::Float(z) => {
            let m = z.norm();
            if m >= 1.0 - CLASSIFY_TOLERANCE {
                Verdict::Match
            } else if m <= CLASSIFY_TOLERANCE {
                Verdict::Reject
            } else {
                Verdict::Unclear
            }
        }
    }
}

impl Identifier {
    pub fn new(scheme: &Scheme) -> Result<Self> {
        Self::with_cap(scheme, DEFAULT_MAX_TUPLES)
    }

    pub fn with_cap(scheme: &Scheme, max_tuples: u128) -> Result<Self> {
        let n = scheme.n();
        if scheme.copies() == 0 {
            // only N = 1 has a zero-copy scheme
            return Ok(Self {
                n,
                copies: 0,
                input: None,
                candidates: Vec::new(),
            });
        }
        let input = expand_to_state(scheme, max_tuples)?;
        let candidates = (1..=n)
            .map(|k| GroverOracle::new(n, k)?.apply(&input))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n,
            copies: scheme.copies(),
            input: Some(input),
            candidates,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    /// Queries `hidden` once per copy and returns the unique matching index.
    pub fn run(&self, hidden: &dyn BlackBox) -> Result<IdentificationRun> {
        if hidden.dimension() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: hidden.dimension(),
            });
        }
        let Some(input) = &self.input else {
            return Ok(IdentificationRun {
                n: self.n,
                identified: 1,
                hidden_queries_used: 0,
                per_candidate_overlaps: vec![Overlap::Exact(crate::rational::int(1))],
            });
        };
        let counter = CountingOracle::new(hidden);
        let mut output = input.clone();
        for slot in 0..input.t() {
            output = counter.query(&output, slot)?;
        }
        let overlaps = self
            .candidates
            .iter()
            .map(|c| overlap(c, &output))
            .collect::<Result<Vec<_>>>()?;
        let verdicts: Vec<Verdict> = overlaps.iter().map(classify).collect();
        let matches = verdicts.iter().filter(|&&v| v == Verdict::Match).count();
        let unclear = verdicts.contains(&Verdict::Unclear);
        if matches != 1 || unclear {
            return Err(Error::AmbiguousClassification {
                matches: matches + verdicts.iter().filter(|&&v| v == Verdict::Unclear).count(),
            });
        }
        let identified = 1 + verdicts
            .iter()
            .position(|&v| v == Verdict::Match)
            .expect("one match");
        Ok(IdentificationRun {
            n: self.n,
            identified,
            hidden_queries_used: counter.queries(),
            per_candidate_overlaps: overlaps,
        })
    }

    /// Whether every pair of candidate outputs is orthogonal.
    pub fn exhaustive_check(&self) -> Result<bool> {
        for i in 0..self.candidates.len() {
            for j in (i + 1)..self.candidates.len() {
                if !overlap(&self.candidates[i], &self.candidates[j])?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl<O: BlackBox + ?Sized> BlackBox for &O {
    fn dimension(&self) -> usize {
        (**self).dimension()
    }

    fn query(&self, state: &AmpState, slot: usize) -> Result<AmpState> {
        (**self).query(state, slot)
    }
}

pub fn run_identification(scheme: &Scheme, hidden: &dyn BlackBox) -> Result<IdentificationRun> {
    Identifier::new(scheme)?.run(hidden)
}

pub fn exhaustive_check(scheme: &Scheme) -> Result<bool> {
    Identifier::new(scheme)?.exhaustive_check()
}
