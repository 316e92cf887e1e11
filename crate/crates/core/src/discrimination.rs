//! Single-copy discrimination power.
//!
//! A one-copy input `sum_i p_i |i>` separates oracles `f_i` and `f_j` exactly
//! when `|p_i|^2 + |p_j|^2 = 1/2`. The set of separated pairs is the state's
//! discrimination graph. Three canonical states dominate every other one:
//!
//! * `Quad{a,b,c,d}`: amplitude `1/2` on four indices, separates the six
//!   pairs inside `{a,b,c,d}`.
//! * `Pair<i,j>`: amplitude `1/sqrt(2)` on two indices, separates every
//!   `(i,k)` and `(j,k)` but not `(i,j)`.
//! * `Star{i}`: `a|i> + b sum_{j != i} |j>` with `a^2 = (N-3)/(2(N-2))`,
//!   `b^2 = 1/(2(N-2))`, separates every `(i,k)`.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::oracle::{
    check_index, check_pair, overlap, AmpState, Amplitude, BasisTuple, GroverOracle,
    FLOAT_TOLERANCE,
};
use crate::rational::{self, half, rat, Rational};

/// A normalized one-copy state `sum_i p_i |i>`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleCopyState {
    amps: Vec<Amplitude>,
}

impl SingleCopyState {
    pub fn new(amps: Vec<Amplitude>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        let state = Self { amps };
        // reuse the multi-copy normalization check
        state.to_amp_state()?;
        Ok(state)
    }

    /// Exact state with non-negative amplitudes `sqrt(q_i)`.
    pub fn from_squares(squares: Vec<Rational>) -> Result<Self> {
        squares
            .into_iter()
            .map(Amplitude::sqrt_of)
            .collect::<Result<Vec<_>>>()
            .and_then(Self::new)
    }

    pub fn from_complex(amps: Vec<Complex64>) -> Result<Self> {
        Self::new(amps.into_iter().map(Amplitude::Float).collect())
    }

    pub fn n(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn is_exact(&self) -> bool {
        self.amps.iter().all(Amplitude::is_exact)
    }

    /// `|p_i|^2` for a 1-based index, exact when available.
    pub fn weight(&self, index: usize) -> Result<Weight> {
        let i0 = check_index(index, self.n())?;
        Ok(Weight::of(&self.amps[i0]))
    }

    /// The same state as a one-copy [`AmpState`].
    pub fn to_amp_state(&self) -> Result<AmpState> {
        let n = self.n();
        AmpState::new(
            n,
            1,
            self.amps
                .iter()
                .enumerate()
                .map(|(i, a)| (BasisTuple::from_zero_based(vec![i as u32]), a.clone())),
        )
    }
}

/// A squared modulus, exact or float.
#[derive(Clone, Debug, PartialEq)]
pub enum Weight {
    Exact(Rational),
    Float(f64),
}

impl Weight {
    fn of(amp: &Amplitude) -> Self {
        match amp.norm_sqr_exact() {
            Some(q) => Self::Exact(q.clone()),
            None => Self::Float(amp.norm_sqr()),
        }
    }

    fn is_half_sum(&self, other: &Self) -> bool {
        match (self, other) {
            (Self::Exact(a), Self::Exact(b)) => a + b == half(),
            _ => (self.to_f64() + other.to_f64() - 0.5).abs() <= FLOAT_TOLERANCE,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Exact(q) => rational::to_f64(q),
            Self::Float(x) => *x,
        }
    }
}

/// Whether the one-copy state `s` separates `f_i` from `f_j`.
pub fn copy_discriminates(s: &SingleCopyState, i: usize, j: usize) -> Result<bool> {
    let (i0, j0) = check_pair(i, j, s.n())?;
    Ok(Weight::of(&s.amps[i0]).is_half_sum(&Weight::of(&s.amps[j0])))
}

/// An undirected graph on `1..=n` with edges stored as `(i, j)`, `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiscriminationGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl DiscriminationGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: BTreeSet::new(),
        }
    }

    /// The complete graph `K_n`, the target every scheme must cover.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 1..=n {
            for j in (i + 1)..=n {
                g.edges.insert((i, j));
            }
        }
        g
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Self::empty(n);
        for (i, j) in edges {
            g.insert(i, j)?;
        }
        Ok(g)
    }

    pub fn insert(&mut self, i: usize, j: usize) -> Result<bool> {
        check_pair(i, j, self.n)?;
        Ok(self.edges.insert((i.min(j), i.max(j))))
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn is_subgraph_of(&self, other: &Self) -> bool {
        self.n == other.n && self.edges.is_subset(&other.edges)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Vertices touched by at least one edge.
    pub fn vertices(&self) -> BTreeSet<usize> {
        self.edges.iter().flat_map(|&(i, j)| [i, j]).collect()
    }

    /// Pairs of `K_n` not present, in lexicographic order.
    pub fn missing_pairs(&self) -> Vec<(usize, usize)> {
        DiscriminationGraph::complete(self.n)
            .edges
            .difference(&self.edges)
            .copied()
            .collect()
    }

    pub fn union_with(&mut self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        self.edges.extend(other.edges.iter().copied());
        Ok(())
    }
}

/// Pairs separated by `s`, via the squared-modulus test.
pub fn discrimination_graph(s: &SingleCopyState) -> DiscriminationGraph {
    let n = s.n();
    let weights: Vec<Weight> = s.amps.iter().map(Weight::of).collect();
    let mut g = DiscriminationGraph::empty(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if weights[i].is_half_sum(&weights[j]) {
                g.edges.insert((i + 1, j + 1));
            }
        }
    }
    g
}

/// Pairs separated by `s`, via the inner products `<psi| f_i^† f_j |psi>`.
///
/// Independent of the squared-modulus shortcut in [`discrimination_graph`].
pub fn discrimination_graph_by_overlap(s: &SingleCopyState) -> Result<DiscriminationGraph> {
    let n = s.n();
    let psi = s.to_amp_state()?;
    let outputs = (1..=n)
        .map(|k| GroverOracle::new(n, k)?.apply(&psi))
        .collect::<Result<Vec<_>>>()?;
    let mut g = DiscriminationGraph::empty(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if overlap(&outputs[i], &outputs[j])?.is_zero() {
                g.edges.insert((i + 1, j + 1));
            }
        }
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockKind {
    Pair { i: usize, j: usize },
    Quad { indices: [usize; 4] },
    Star { center: usize },
}

/// One of the three canonical one-copy states on dimension `n`.
///
/// Ordering is `Pair < Quad < Star`, then lexicographic on indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalBlock {
    kind: BlockKind,
    n: usize,
}

impl CanonicalBlock {
    pub fn pair(n: usize, i: usize, j: usize) -> Result<Self> {
        check_pair(i, j, n)?;
        Ok(Self {
            kind: BlockKind::Pair {
                i: i.min(j),
                j: i.max(j),
            },
            n,
        })
    }

    pub fn quad(n: usize, indices: [usize; 4]) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidBlock(format!(
                "quad needs N >= 4, got N = {n}"
            )));
        }
        let mut sorted = indices;
        sorted.sort_unstable();
        for &k in &sorted {
            check_index(k, n)?;
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidBlock(format!(
                "quad indices must be distinct, got {indices:?}"
            )));
        }
        Ok(Self {
            kind: BlockKind::Quad { indices: sorted },
            n,
        })
    }

    pub fn star(n: usize, center: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidBlock(format!(
                "star needs N >= 3, got N = {n}"
            )));
        }
        check_index(center, n)?;
        Ok(Self {
            kind: BlockKind::Star { center },
            n,
        })
    }

    pub fn kind(&self) -> BlockKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Every canonical block on `n` in canonical order.
    pub fn all(n: usize) -> Vec<CanonicalBlock> {
        let mut out = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                out.push(Self {
                    kind: BlockKind::Pair { i, j },
                    n,
                });
            }
        }
        if n >= 4 {
            for a in 1..=n {
                for b in (a + 1)..=n {
                    for c in (b + 1)..=n {
                        for d in (c + 1)..=n {
                            out.push(Self {
                                kind: BlockKind::Quad {
                                    indices: [a, b, c, d],
                                },
                                n,
                            });
                        }
                    }
                }
            }
        }
        if n >= 3 {
            out.extend((1..=n).map(|center| Self {
                kind: BlockKind::Star { center },
                n,
            }));
        }
        out
    }
}

impl fmt::Display for CanonicalBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            BlockKind::Pair { i, j } => write!(f, "<{i},{j}>"),
            BlockKind::Quad {
                indices: [a, b, c, d],
            } => write!(f, "K4{{{a},{b},{c},{d}}}"),
            BlockKind::Star { center } => write!(f, "E({center})"),
        }
    }
}

/// The exact state of a canonical block.
pub fn block_state(b: &CanonicalBlock) -> SingleCopyState {
    let n = b.n;
    let mut squares = vec![Rational::zero(); n];
    match b.kind {
        BlockKind::Pair { i, j } => {
            squares[i - 1] = half();
            squares[j - 1] = half();
        }
        BlockKind::Quad { indices } => {
            for k in indices {
                squares[k - 1] = rat(1, 4);
            }
        }
        BlockKind::Star { center } => {
            let denom = 2 * (n as i64 - 2);
            for (k, q) in squares.iter_mut().enumerate() {
                *q = if k + 1 == center {
                    rat(n as i64 - 3, denom)
                } else {
                    rat(1, denom)
                };
            }
        }
    }
    SingleCopyState::from_squares(squares).expect("canonical block states are normalized")
}

/// Edges of [`block_graph`] as `(i, j)` pairs with `i < j`, unsorted.
pub fn block_edges(b: &CanonicalBlock) -> Vec<(usize, usize)> {
    let n = b.n;
    let ordered = |x: usize, y: usize| (x.min(y), x.max(y));
    match b.kind {
        BlockKind::Pair { i, j } => (1..=n)
            .filter(|&k| k != i && k != j)
            .flat_map(|k| [ordered(i, k), ordered(j, k)])
            .collect(),
        BlockKind::Quad { indices } => (0..4)
            .flat_map(|x| ((x + 1)..4).map(move |y| (indices[x], indices[y])))
            .collect(),
        BlockKind::Star { .. } if n == 4 => DiscriminationGraph::complete(4).edges().collect(),
        BlockKind::Star { center } => (1..=n)
            .filter(|&k| k != center)
            .map(|k| ordered(center, k))
            .collect(),
    }
}

/// Combinatorial discrimination graph of a block.
///
/// At `N = 4` the star state equals the uniform quad and separates all six
/// pairs, so the full `K_4` is returned there.
pub fn block_graph(b: &CanonicalBlock) -> DiscriminationGraph {
    DiscriminationGraph {
        n: b.n,
        edges: block_edges(b).into_iter().collect(),
    }
}

/// A canonical block whose graph contains the graph of `s`.
///
/// Candidates are tried in canonical order (pairs, then quads, then stars)
/// and the first containing block is returned.
pub fn canonicalize(s: &SingleCopyState) -> Result<CanonicalBlock> {
    let target = discrimination_graph(s);
    if target.is_empty() {
        return Err(Error::TrivialState);
    }
    let n = s.n();
    let fits = |b: &CanonicalBlock| target.is_subgraph_of(&block_graph(b));

    for i in 1..=n {
        for j in (i + 1)..=n {
            let b = CanonicalBlock::pair(n, i, j)?;
            if fits(&b) {
                return Ok(b);
            }
        }
    }
    // a quad contains the graph iff it contains all of its vertices; the
    // lexicographically first such quad pads the vertex set with the
    // smallest unused indices
    let vertices = target.vertices();
    if n >= 4 && vertices.len() <= 4 {
        let mut indices: Vec<usize> = vertices.iter().copied().collect();
        indices.extend(
            (1..=n)
                .filter(|k| !vertices.contains(k))
                .take(4 - vertices.len()),
        );
        let b = CanonicalBlock::quad(n, [indices[0], indices[1], indices[2], indices[3]])?;
        if fits(&b) {
            return Ok(b);
        }
    }
    for center in 1..=n {
        let b = CanonicalBlock::star(n, center)?;
        if fits(&b) {
            return Ok(b);
        }
    }
    Err(Error::NoCanonicalBlock)
}

/// Whether the union of `graphs` is the complete graph on `n` vertices.
pub fn is_complete_cover(graphs: &[DiscriminationGraph], n: usize) -> Result<bool> {
    let mut union = DiscriminationGraph::empty(n);
    for g in graphs {
        union.union_with(g)?;
    }
    Ok(union.is_complete())
}
