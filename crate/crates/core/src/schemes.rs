//! Parallel discrimination schemes: construction, built-in examples,
//! verification and closed-form bounds.
//!
//! A scheme feeds `t` copies of the unknown oracle one input state. It is
//! exact when all outputs `f_k^{⊗t}|psi>` are mutually orthogonal.
//!
//! * Product inputs `|psi_1> ⊗ .. ⊗ |psi_t>` are exact iff the one-copy
//!   discrimination graphs of the factors cover `K_N`.
//! * General (entangled) inputs are exact iff, for every pair `(i,j)`, the
//!   squared-amplitude mass on tuples with odd `tau` parity is exactly `1/2`.
//!   That mass depends only on each tuple's composition, so a scheme is fully
//!   described by a [`WeightProfile`] over compositions.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::discrimination::{
    block_edges, block_graph, block_state, discrimination_graph, CanonicalBlock,
    DiscriminationGraph, SingleCopyState, Weight,
};
use crate::error::{Error, Result};
use crate::oracle::{overlap, tau_parity, AmpState, Amplitude, Composition, GroverOracle, Overlap};
use crate::rational::{self, half, rat, Rational};

/// Default cap on tuples materialized by full-tensor expansion.
pub const DEFAULT_MAX_TUPLES: u128 = 1_000_000;

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 3] = ["n4-single", "n5-product", "n6-entangled"];

/// One tensor factor of a product scheme.
#[derive(Clone, Debug, PartialEq)]
pub enum Factor {
    Block(CanonicalBlock),
    State(SingleCopyState),
}

impl Factor {
    pub fn n(&self) -> usize {
        match self {
            Self::Block(b) => b.n(),
            Self::State(s) => s.n(),
        }
    }

    pub fn state(&self) -> SingleCopyState {
        match self {
            Self::Block(b) => block_state(b),
            Self::State(s) => s.clone(),
        }
    }

    pub fn graph(&self) -> DiscriminationGraph {
        match self {
            Self::Block(b) => block_graph(b),
            Self::State(s) => discrimination_graph(s),
        }
    }

    /// `<psi| f_i^† f_j |psi> = 1 - 2(|p_i|^2 + |p_j|^2)` for this factor.
    fn pair_overlap(&self, i: usize, j: usize) -> Overlap {
        let s = self.state();
        let wi = s.weight(i).expect("index checked by caller");
        let wj = s.weight(j).expect("index checked by caller");
        match (wi, wj) {
            (Weight::Exact(a), Weight::Exact(b)) => {
                Overlap::Exact(Rational::one() - (a + b) * rational::int(2))
            }
            (a, b) => Overlap::Float((1.0 - 2.0 * (a.to_f64() + b.to_f64())).into()),
        }
    }
}

impl From<CanonicalBlock> for Factor {
    fn from(b: CanonicalBlock) -> Self {
        Self::Block(b)
    }
}

/// A tensor-product input `|psi_1> ⊗ .. ⊗ |psi_t>`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductScheme {
    n: usize,
    factors: Vec<Factor>,
}

impl ProductScheme {
    /// `factors` may be empty only for `n = 1`, where no query is needed.
    pub fn new(n: usize, factors: Vec<Factor>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension(n));
        }
        if factors.is_empty() && n > 1 {
            return Err(Error::CopyMismatch {
                expected: 1,
                found: 0,
            });
        }
        if let Some(f) = factors.iter().find(|f| f.n() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: f.n(),
            });
        }
        Ok(Self { n, factors })
    }

    pub fn from_blocks(n: usize, blocks: Vec<CanonicalBlock>) -> Result<Self> {
        Self::new(n, blocks.into_iter().map(Factor::Block).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of oracle copies `t`.
    pub fn copies(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// The blocks, when every factor is canonical.
    pub fn blocks(&self) -> Option<Vec<CanonicalBlock>> {
        self.factors
            .iter()
            .map(|f| match f {
                Factor::Block(b) => Some(*b),
                Factor::State(_) => None,
            })
            .collect()
    }
}

/// Exact squared-amplitude masses `q_c` aggregated by composition.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightProfile {
    n: usize,
    t: usize,
    weights: BTreeMap<Composition, Rational>,
}

impl WeightProfile {
    /// Validates shapes, rejects duplicate compositions and negative masses,
    /// and requires total mass exactly one. Zero masses are dropped.
    pub fn new<I>(n: usize, t: usize, weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Composition, Rational)>,
    {
        if n == 0 {
            return Err(Error::InvalidDimension(n));
        }
        if t == 0 {
            return Err(Error::InvalidProfile("t must be at least 1".into()));
        }
        let mut map = BTreeMap::new();
        let mut total = Rational::zero();
        for (c, q) in weights {
            if c.n() != n || c.t() != t {
                return Err(Error::InvalidProfile(format!(
                    "composition {:?} does not have N = {n} parts summing to t = {t}",
                    c.counts()
                )));
            }
            if q.is_negative() {
                return Err(Error::InvalidProfile(format!(
                    "negative mass {} on {:?}",
                    rational::format_rational(&q),
                    c.counts()
                )));
            }
            total += &q;
            let counts = c.counts().to_vec();
            if map.insert(c, q).is_some() {
                return Err(Error::InvalidProfile(format!(
                    "duplicate composition {counts:?}"
                )));
            }
        }
        if !total.is_one() {
            return Err(Error::InvalidProfile(format!(
                "total mass is {}, expected 1",
                rational::format_rational(&total)
            )));
        }
        map.retain(|_, q| !q.is_zero());
        Ok(Self { n, t, weights: map })
    }

    /// Aggregates an exact state's squared moduli by composition.
    pub fn from_state(state: &AmpState) -> Result<Self> {
        let mut map: BTreeMap<Composition, Rational> = BTreeMap::new();
        for (tuple, amp) in state.iter() {
            let q = amp
                .norm_sqr_exact()
                .ok_or_else(|| Error::InvalidProfile("state has non-exact amplitudes".into()))?;
            *map.entry(Composition::of(tuple, state.n())?).or_default() += q;
        }
        Self::new(state.n(), state.t(), map)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn weights(&self) -> impl Iterator<Item = (&Composition, &Rational)> {
        self.weights.iter()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Total mass on compositions with odd parity for `(i, j)`.
    pub fn odd_mass(&self, i: usize, j: usize) -> Result<Rational> {
        let mut mass = Rational::zero();
        for (c, q) in &self.weights {
            if tau_parity(c, i, j)? == 1 {
                mass += q;
            }
        }
        Ok(mass)
    }
}

/// Any parallel scheme.
#[derive(Clone, Debug, PartialEq)]
pub enum Scheme {
    Product(ProductScheme),
    Entangled(WeightProfile),
}

impl Scheme {
    pub fn n(&self) -> usize {
        match self {
            Self::Product(p) => p.n(),
            Self::Entangled(w) => w.n(),
        }
    }

    pub fn copies(&self) -> usize {
        match self {
            Self::Product(p) => p.copies(),
            Self::Entangled(w) => w.t(),
        }
    }
}

impl From<ProductScheme> for Scheme {
    fn from(p: ProductScheme) -> Self {
        Self::Product(p)
    }
}

impl From<WeightProfile> for Scheme {
    fn from(w: WeightProfile) -> Self {
        Self::Entangled(w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMethod {
    Coverage,
    ParityMass,
    FullTensor,
}

impl VerifyMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Coverage => "coverage-check",
            Self::ParityMass => "parity-mass",
            Self::FullTensor => "full-tensor",
        }
    }
}

/// A pair the scheme fails to separate.
///
/// `defect` is the output overlap `<psi|(f_i^† f_j)^{⊗t}|psi>` for coverage
/// and full-tensor checks, and `odd mass - 1/2` for parity-mass checks.
#[derive(Clone, Debug, PartialEq)]
pub struct FailingPair {
    pub i: usize,
    pub j: usize,
    pub defect: Overlap,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SchemeReport {
    pub valid: bool,
    pub failing_pairs: Vec<FailingPair>,
    pub method: VerifyMethod,
}

impl SchemeReport {
    fn from_failures(failing_pairs: Vec<FailingPair>, method: VerifyMethod) -> Self {
        Self {
            valid: failing_pairs.is_empty(),
            failing_pairs,
            method,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Also expand the full tensor state and check every output overlap.
    pub full_tensor: bool,
    pub max_tuples: u128,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            full_tensor: false,
            max_tuples: DEFAULT_MAX_TUPLES,
        }
    }
}

/// `2 * floor(n/3) + (n mod 3)` blocks, the size of [`construct_product_scheme`].
pub fn construction_size(n: usize) -> Result<usize> {
    match n {
        0 => Err(Error::InvalidDimension(n)),
        1 => Ok(0),
        2 => Err(Error::Indistinguishable(n)),
        _ => Ok(2 * (n / 3) + n % 3),
    }
}

/// Grouping construction using only `Pair` blocks.
///
/// Each full group `{3g+1, 3g+2, 3g+3}` contributes `<3g+1,3g+2>` and
/// `<3g+1,3g+3>`. A leftover `{N}` adds `<1,N>`; a leftover `{N-1,N}` adds
/// `<1,N-1>` and `<1,N>`.
pub fn construct_product_scheme(n: usize) -> Result<ProductScheme> {
    construction_size(n)?;
    if n == 1 {
        return ProductScheme::new(1, Vec::new());
    }
    let mut blocks = Vec::with_capacity(construction_size(n)?);
    for g in 0..n / 3 {
        let head = 3 * g + 1;
        blocks.push(CanonicalBlock::pair(n, head, head + 1)?);
        blocks.push(CanonicalBlock::pair(n, head, head + 2)?);
    }
    match n % 3 {
        1 => blocks.push(CanonicalBlock::pair(n, 1, n)?),
        2 => {
            blocks.push(CanonicalBlock::pair(n, 1, n - 1)?);
            blocks.push(CanonicalBlock::pair(n, 1, n)?);
        }
        _ => {}
    }
    ProductScheme::from_blocks(n, blocks)
}

/// Coverage verification: valid iff the factor graphs cover `K_N`.
pub fn verify_product(s: &ProductScheme) -> SchemeReport {
    let n = s.n();
    let mut covered = vec![false; n * n];
    for f in &s.factors {
        let edges = match f {
            Factor::Block(b) => block_edges(b),
            Factor::State(st) => discrimination_graph(st).edges().collect(),
        };
        for (i, j) in edges {
            covered[(i - 1) * n + (j - 1)] = true;
        }
    }
    let mut failing = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            if covered[(i - 1) * n + (j - 1)] {
                continue;
            }
            let defect = s
                .factors
                .iter()
                .fold(Overlap::Exact(Rational::one()), |acc, f| {
                    mul_overlap(&acc, &f.pair_overlap(i, j))
                });
            failing.push(FailingPair { i, j, defect });
        }
    }
    SchemeReport::from_failures(failing, VerifyMethod::Coverage)
}

fn mul_overlap(a: &Overlap, b: &Overlap) -> Overlap {
    match (a, b) {
        (Overlap::Exact(x), Overlap::Exact(y)) => Overlap::Exact(x * y),
        _ => Overlap::Float(a.to_complex() * b.to_complex()),
    }
}

/// [`verify_product`], or the full-tensor check when requested.
pub fn verify_product_with(s: &ProductScheme, opts: &VerifyOptions) -> Result<SchemeReport> {
    if !opts.full_tensor {
        return Ok(verify_product(s));
    }
    if s.copies() == 0 {
        return Ok(verify_product(s));
    }
    verify_state(&expand_product(s, opts.max_tuples)?)
}

/// Parity-mass verification of an entangled scheme.
pub fn verify_entangled(w: &WeightProfile) -> SchemeReport {
    let mut failing = Vec::new();
    for i in 1..=w.n {
        for j in (i + 1)..=w.n {
            let mass = w.odd_mass(i, j).expect("pair indices are in range");
            if mass != half() {
                failing.push(FailingPair {
                    i,
                    j,
                    defect: Overlap::Exact(mass - half()),
                });
            }
        }
    }
    SchemeReport::from_failures(failing, VerifyMethod::ParityMass)
}

/// Checks `<psi|(f_i^{⊗t})^† f_j^{⊗t}|psi> = 0` for every pair directly.
pub fn verify_state(psi: &AmpState) -> Result<SchemeReport> {
    let n = psi.n();
    let outputs = (1..=n)
        .map(|k| GroverOracle::new(n, k)?.apply(psi))
        .collect::<Result<Vec<_>>>()?;
    let mut failing = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let o = overlap(&outputs[i], &outputs[j])?;
            if !o.is_zero() {
                failing.push(FailingPair {
                    i: i + 1,
                    j: j + 1,
                    defect: o,
                });
            }
        }
    }
    Ok(SchemeReport::from_failures(
        failing,
        VerifyMethod::FullTensor,
    ))
}

pub fn verify(s: &Scheme) -> SchemeReport {
    match s {
        Scheme::Product(p) => verify_product(p),
        Scheme::Entangled(w) => verify_entangled(w),
    }
}

/// The input state of a scheme as a `t`-copy [`AmpState`].
///
/// Profiles place amplitude `sqrt(q_c)` on the sorted representative tuple of
/// each composition.
pub fn expand_to_state(s: &Scheme, max_tuples: u128) -> Result<AmpState> {
    match s {
        Scheme::Product(p) => expand_product(p, max_tuples),
        Scheme::Entangled(w) => expand_profile(w, max_tuples),
    }
}

fn expand_product(p: &ProductScheme, max_tuples: u128) -> Result<AmpState> {
    if p.copies() == 0 {
        return Err(Error::CopyMismatch {
            expected: 1,
            found: 0,
        });
    }
    let states = p
        .factors
        .iter()
        .map(|f| f.state().to_amp_state())
        .collect::<Result<Vec<_>>>()?;
    let total = states
        .iter()
        .try_fold(1u128, |acc, s| acc.checked_mul(s.len() as u128))
        .unwrap_or(u128::MAX);
    if total > max_tuples {
        return Err(Error::ResourceCap {
            what: "tuple",
            requested: total,
            cap: max_tuples,
        });
    }
    let mut iter = states.into_iter();
    let first = iter.next().expect("at least one factor");
    iter.try_fold(first, |acc, s| acc.tensor(&s))
}

fn expand_profile(w: &WeightProfile, max_tuples: u128) -> Result<AmpState> {
    if w.len() as u128 > max_tuples {
        return Err(Error::ResourceCap {
            what: "tuple",
            requested: w.len() as u128,
            cap: max_tuples,
        });
    }
    let amps = w
        .weights
        .iter()
        .map(|(c, q)| Ok((c.representative(), Amplitude::sqrt_of(q.clone())?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(AmpState::from_parts_unchecked(w.n, w.t, amps))
}

/// The examples worked out by hand for `N = 4, 5, 6`.
///
/// * `n4-single`: `K4{1,2,3,4}`, one copy.
/// * `n5-product`: `E(1) ⊗ K4{2,3,4,5}`, two copies.
/// * `n6-entangled`: `(1/4)(sum_{i<j} |ij> + |kk>)`, two copies, with `k`
///   given by `diagonal` (default 3).
pub fn builtin(name: &str, diagonal: Option<usize>) -> Result<Scheme> {
    match name {
        "n4-single" => {
            Ok(ProductScheme::from_blocks(4, vec![CanonicalBlock::quad(4, [1, 2, 3, 4])?])?.into())
        }
        "n5-product" => Ok(ProductScheme::from_blocks(
            5,
            vec![
                CanonicalBlock::star(5, 1)?,
                CanonicalBlock::quad(5, [2, 3, 4, 5])?,
            ],
        )?
        .into()),
        "n6-entangled" => {
            let n = 6;
            let k = diagonal.unwrap_or(3);
            crate::oracle::check_index(k, n)?;
            let mut weights = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    let mut counts = vec![0u32; n];
                    counts[i] = 1;
                    counts[j] = 1;
                    weights.push((Composition::new(counts)?, rat(1, 16)));
                }
            }
            let mut counts = vec![0u32; n];
            counts[k - 1] = 2;
            weights.push((Composition::new(counts)?, rat(1, 16)));
            Ok(WeightProfile::new(n, 2, weights)?.into())
        }
        other => Err(Error::UnknownBuiltin(other.to_string())),
    }
}

/// Smallest integer `t` with `t >= (n - sqrt(n)) / 2`, in integer arithmetic:
/// `n - 2t <= 0` or `(n - 2t)^2 <= n`.
pub fn general_lower_bound(n: u64) -> u64 {
    let satisfies = |t: u64| {
        let gap = n as i128 - 2 * t as i128;
        gap <= 0 || gap * gap <= n as i128
    };
    // n - 2t <= sqrt(n) < isqrt(n) + 1, so the answer is within one of
    // (n - isqrt(n)) / 2
    let root = num_integer::Roots::sqrt(&n);
    let mut t = (n - root) / 2;
    while t > 0 && satisfies(t - 1) {
        t -= 1;
    }
    while !satisfies(t) {
        t += 1;
    }
    t
}
