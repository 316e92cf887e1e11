//! Phase oracles, multi-copy basis tuples, compositions and amplitude states.
//!
//! A Grover oracle on dimension `N` with target `x0` is the diagonal operator
//! `f = sum_j (-1)^[j == x0] |j><j|`. Applied to `t` parallel copies it
//! multiplies the amplitude of basis tuple `a = (a_1..a_t)` by
//! `(-1)^(number of k with a_k == x0)`.
//!
//! Indices are 1-based at every public entry point and 0-based in storage.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Absolute tolerance used by every float-mode equality test.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// Default cap on the number of compositions materialized at once.
pub const DEFAULT_MAX_COMPOSITIONS: usize = 200_000;

pub(crate) fn check_index(index: usize, n: usize) -> Result<usize> {
    if index == 0 || index > n {
        return Err(Error::IndexOutOfRange { index, n });
    }
    Ok(index - 1)
}

pub(crate) fn check_pair(i: usize, j: usize, n: usize) -> Result<(usize, usize)> {
    let i0 = check_index(i, n)?;
    let j0 = check_index(j, n)?;
    if i0 == j0 {
        return Err(Error::EqualIndices(i));
    }
    Ok((i0, j0))
}

/// The diagonal ±1 phase oracle `f_target` on dimension `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroverOracle {
    n: usize,
    target: usize,
}

impl GroverOracle {
    pub fn new(n: usize, target: usize) -> Result<Self> {
        check_index(target, n)?;
        Ok(Self { n, target })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The 1-based marked index.
    pub fn target(&self) -> usize {
        self.target
    }

    /// Diagonal entry `(-1)^[index == target]` for a 1-based index.
    pub fn phase(&self, index: usize) -> i8 {
        if index == self.target {
            -1
        } else {
            1
        }
    }

    /// Applies the oracle to every copy of `state`, i.e. `f^{⊗t}`.
    pub fn apply(&self, state: &AmpState) -> Result<AmpState> {
        apply_oracle(self, state)
    }
}

/// Query access to an unknown single-copy oracle.
///
/// Identification code only ever sees this trait, so it cannot read the
/// marked index of the oracle it is probing.
pub trait BlackBox {
    fn dimension(&self) -> usize;

    /// Applies the oracle to copy `slot` (0-based) of a multi-copy state.
    fn query(&self, state: &AmpState, slot: usize) -> Result<AmpState>;
}

impl BlackBox for GroverOracle {
    fn dimension(&self) -> usize {
        self.n
    }

    fn query(&self, state: &AmpState, slot: usize) -> Result<AmpState> {
        if state.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: state.n,
            });
        }
        if slot >= state.t {
            return Err(Error::CopyMismatch {
                expected: state.t,
                found: slot + 1,
            });
        }
        let marked = (self.target - 1) as u32;
        let amps = state
            .amps
            .iter()
            .map(|(tuple, amp)| {
                let amp = if tuple.0[slot] == marked {
                    amp.neg()
                } else {
                    amp.clone()
                };
                (tuple.clone(), amp)
            })
            .collect();
        Ok(AmpState {
            n: state.n,
            t: state.t,
            amps,
        })
    }
}

/// Applies `oracle` once to each of the `t` copies of `state`.
pub fn apply_oracle<O: BlackBox + ?Sized>(oracle: &O, state: &AmpState) -> Result<AmpState> {
    if oracle.dimension() != state.n {
        return Err(Error::DimensionMismatch {
            expected: oracle.dimension(),
            found: state.n,
        });
    }
    let mut out = state.clone();
    for slot in 0..state.t {
        out = oracle.query(&out, slot)?;
    }
    Ok(out)
}

/// An ordered multi-copy basis label `a_1 .. a_t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisTuple(Vec<u32>);

impl BasisTuple {
    /// Builds a tuple from 1-based entries, each in `1..=n`.
    pub fn new(entries: &[usize], n: usize) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        entries
            .iter()
            .map(|&e| check_index(e, n).map(|e0| e0 as u32))
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub(crate) fn from_zero_based(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub(crate) fn zero_based(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> Vec<usize> {
        self.0.iter().map(|&e| e as usize + 1).collect()
    }

    /// Multiplicity of the 1-based `index` in the tuple.
    pub fn count_of(&self, index: usize) -> usize {
        self.0.iter().filter(|&&e| e as usize + 1 == index).count()
    }

    fn concat(&self, other: &BasisTuple) -> BasisTuple {
        let mut entries = Vec::with_capacity(self.0.len() + other.0.len());
        entries.extend_from_slice(&self.0);
        entries.extend_from_slice(&other.0);
        BasisTuple(entries)
    }
}

impl fmt::Display for BasisTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e + 1)?;
        }
        write!(f, ">")
    }
}

/// Multiplicity vector `c_1 .. c_N` of a basis tuple.
///
/// Sign patterns of every pair of oracles depend on a tuple only through its
/// composition, so compositions are the natural variables for pair conditions.
///
/// Compositions order like their sorted representative tuples, which is
/// reverse-lexicographic on the count vector: `(1,0) < (0,1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Composition {
    counts: Vec<u32>,
    t: u32,
}

impl Composition {
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        let t = counts.iter().sum();
        Ok(Self { counts, t })
    }

    pub fn of(tuple: &BasisTuple, n: usize) -> Result<Self> {
        let mut counts = vec![0u32; n];
        for &e in tuple.zero_based() {
            let slot = counts.get_mut(e as usize).ok_or(Error::IndexOutOfRange {
                index: e as usize + 1,
                n,
            })?;
            *slot += 1;
        }
        Ok(Self {
            counts,
            t: tuple.len() as u32,
        })
    }

    pub fn n(&self) -> usize {
        self.counts.len()
    }

    pub fn t(&self) -> usize {
        self.t as usize
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// `c_i` for a 1-based index.
    pub fn count(&self, index: usize) -> Result<u32> {
        let i0 = check_index(index, self.n())?;
        Ok(self.counts[i0])
    }

    /// `l1`: number of indices with odd multiplicity.
    pub fn odd_count(&self) -> usize {
        self.counts.iter().filter(|&&c| c % 2 == 1).count()
    }

    /// `l2`: number of indices with even (possibly zero) multiplicity.
    pub fn even_count(&self) -> usize {
        self.n() - self.odd_count()
    }

    /// The sorted (non-decreasing) tuple with this composition.
    pub fn representative(&self) -> BasisTuple {
        let mut entries = Vec::with_capacity(self.t());
        for (i, &c) in self.counts.iter().enumerate() {
            entries.extend(std::iter::repeat_n(i as u32, c as usize));
        }
        BasisTuple(entries)
    }

    pub(crate) fn parity_bits(&self) -> impl Iterator<Item = u8> + '_ {
        self.counts.iter().map(|&c| (c % 2) as u8)
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.t
            .cmp(&other.t)
            .then_with(|| other.counts.cmp(&self.counts))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn composition_of(tuple: &BasisTuple, n: usize) -> Result<Composition> {
    Composition::of(tuple, n)
}

/// `(c_i + c_j) mod 2`: whether `f_i^{⊗t}` and `f_j^{⊗t}` give a tuple with
/// this composition opposite signs.
pub fn tau_parity(c: &Composition, i: usize, j: usize) -> Result<u8> {
    let (i0, j0) = check_pair(i, j, c.n())?;
    Ok(((c.counts[i0] + c.counts[j0]) % 2) as u8)
}

/// Number of unordered pairs with odd `tau_parity`, `l1 * (N - l1)`.
pub fn odd_pair_count(c: &Composition) -> u64 {
    let l1 = c.odd_count() as u64;
    l1 * (c.n() as u64 - l1)
}

/// Number of compositions of `t` into `n` non-negative parts, `C(n+t-1, n-1)`.
/// Saturates at `u128::MAX`.
pub fn composition_count(n: usize, t: usize) -> u128 {
    if n == 0 {
        return 0;
    }
    let k = (n - 1).min(t) as u128;
    let top = (n + t - 1) as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(top - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// All compositions of `t` into `n` parts, in ascending [`Composition`] order
/// (first `(t,0,..,0)`, last `(0,..,0,t)`).
pub fn enumerate_compositions(n: usize, t: usize, cap: usize) -> Result<Vec<Composition>> {
    if n == 0 {
        return Err(Error::InvalidDimension(n));
    }
    if t == 0 {
        return Err(Error::CopyMismatch {
            expected: 1,
            found: 0,
        });
    }
    let total = composition_count(n, t);
    if total > cap as u128 {
        return Err(Error::ResourceCap {
            what: "composition",
            requested: total,
            cap: cap as u128,
        });
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut counts = vec![0u32; n];
    fill_compositions(0, t as u32, &mut counts, &mut out);
    Ok(out)
}

fn fill_compositions(pos: usize, remaining: u32, counts: &mut [u32], out: &mut Vec<Composition>) {
    let n = counts.len();
    if pos == n - 1 {
        counts[pos] = remaining;
        out.push(Composition {
            counts: counts.to_vec(),
            t: counts.iter().sum(),
        });
        counts[pos] = 0;
        return;
    }
    for c in (0..=remaining).rev() {
        counts[pos] = c;
        fill_compositions(pos + 1, remaining - c, counts, out);
    }
    counts[pos] = 0;
}

/// A complex amplitude, stored exactly as `±sqrt(q)` when possible.
#[derive(Clone, Debug, PartialEq)]
pub enum Amplitude {
    Exact { negative: bool, square: Rational },
    Float(Complex64),
}

impl Amplitude {
    /// `±sqrt(square)`; `square` must be non-negative.
    pub fn exact(negative: bool, square: Rational) -> Result<Self> {
        if square.is_negative() {
            return Err(Error::NotNormalized(format!(
                "negative squared modulus {}",
                rational::format_rational(&square)
            )));
        }
        Ok(Self::Exact { negative, square })
    }

    pub fn sqrt_of(square: Rational) -> Result<Self> {
        Self::exact(false, square)
    }

    pub fn float(re: f64, im: f64) -> Self {
        Self::Float(Complex64::new(re, im))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Self::Exact { .. })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Self::Exact { square, .. } => square.is_zero(),
            Self::Float(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Self::Exact { negative, square } => {
                let magnitude = rational::to_f64(square).sqrt();
                Complex64::new(if *negative { -magnitude } else { magnitude }, 0.0)
            }
            Self::Float(z) => *z,
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        match self {
            Self::Exact { square, .. } => rational::to_f64(square),
            Self::Float(z) => z.norm_sqr(),
        }
    }

    pub fn norm_sqr_exact(&self) -> Option<&Rational> {
        match self {
            Self::Exact { square, .. } => Some(square),
            Self::Float(_) => None,
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Self::Exact { negative, square } => Self::Exact {
                negative: !negative,
                square: square.clone(),
            },
            Self::Float(z) => Self::Float(-z),
        }
    }

    /// Product of two amplitudes; exact inputs stay exact.
    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (
                Self::Exact {
                    negative: na,
                    square: qa,
                },
                Self::Exact {
                    negative: nb,
                    square: qb,
                },
            ) => Self::Exact {
                negative: na ^ nb,
                square: qa * qb,
            },
            _ => Self::Float(self.to_complex() * other.to_complex()),
        }
    }

    /// `conj(self) * other`, exact when the product of squares is a perfect square.
    pub fn conj_mul(&self, other: &Self) -> Overlap {
        if let (
            Self::Exact {
                negative: na,
                square: qa,
            },
            Self::Exact {
                negative: nb,
                square: qb,
            },
        ) = (self, other)
        {
            let magnitude = if qa == qb {
                Some(qa.clone())
            } else {
                rational::exact_sqrt(&(qa * qb))
            };
            if let Some(m) = magnitude {
                return Overlap::Exact(if na ^ nb { -m } else { m });
            }
        }
        Overlap::Float(self.to_complex().conj() * other.to_complex())
    }
}

/// Value of an inner product: exact rational when derivable, else complex float.
#[derive(Clone, Debug, PartialEq)]
pub enum Overlap {
    Exact(Rational),
    Float(Complex64),
}

impl Overlap {
    pub fn zero() -> Self {
        Self::Exact(Rational::zero())
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Self::Exact(q) => Complex64::new(rational::to_f64(q), 0.0),
            Self::Float(z) => *z,
        }
    }

    pub fn norm(&self) -> f64 {
        match self {
            Self::Exact(q) => rational::to_f64(&q.abs()),
            Self::Float(z) => z.norm(),
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Self::Exact(q) => Some(q),
            Self::Float(_) => None,
        }
    }

    /// Exactly zero, or within [`FLOAT_TOLERANCE`] in float mode.
    pub fn is_zero(&self) -> bool {
        match self {
            Self::Exact(q) => q.is_zero(),
            Self::Float(z) => z.norm() <= FLOAT_TOLERANCE,
        }
    }

    /// Modulus exactly one, or within [`FLOAT_TOLERANCE`] in float mode.
    pub fn is_unit(&self) -> bool {
        match self {
            Self::Exact(q) => q.abs().is_one(),
            Self::Float(z) => (z.norm() - 1.0).abs() <= FLOAT_TOLERANCE,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Self::Exact(a), Self::Exact(b)) => Self::Exact(a + b),
            _ => Self::Float(self.to_complex() + other.to_complex()),
        }
    }
}

impl fmt::Display for Overlap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(q) => write!(f, "{}", rational::format_rational(q)),
            Self::Float(z) if z.im == 0.0 => write!(f, "{:e}", z.re),
            Self::Float(z) => write!(f, "{:e}{:+e}i", z.re, z.im),
        }
    }
}

/// A normalized `t`-copy state `sum_a p_a |a>`, stored sparsely.
#[derive(Clone, Debug, PartialEq)]
pub struct AmpState {
    n: usize,
    t: usize,
    amps: BTreeMap<BasisTuple, Amplitude>,
}

impl AmpState {
    /// Builds a state, rejecting duplicate tuples and unnormalized input.
    /// Zero amplitudes are dropped.
    pub fn new<I>(n: usize, t: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BasisTuple, Amplitude)>,
    {
        if n == 0 {
            return Err(Error::InvalidDimension(n));
        }
        if t == 0 {
            return Err(Error::CopyMismatch {
                expected: 1,
                found: 0,
            });
        }
        let mut amps = BTreeMap::new();
        for (tuple, amp) in entries {
            if tuple.len() != t {
                return Err(Error::CopyMismatch {
                    expected: t,
                    found: tuple.len(),
                });
            }
            if let Some(&e) = tuple.zero_based().iter().find(|&&e| e as usize >= n) {
                return Err(Error::IndexOutOfRange {
                    index: e as usize + 1,
                    n,
                });
            }
            if amp.is_zero() {
                continue;
            }
            if amps.insert(tuple.clone(), amp).is_some() {
                return Err(Error::Parse(format!("duplicate basis tuple {tuple}")));
            }
        }
        let state = Self { n, t, amps };
        state.check_normalized()?;
        Ok(state)
    }

    pub(crate) fn from_parts_unchecked(
        n: usize,
        t: usize,
        amps: BTreeMap<BasisTuple, Amplitude>,
    ) -> Self {
        Self { n, t, amps }
    }

    fn check_normalized(&self) -> Result<()> {
        if self.is_exact() {
            let total = self.norm_sqr_exact().unwrap_or_default();
            if !total.is_one() {
                return Err(Error::NotNormalized(rational::format_rational(&total)));
            }
        } else {
            let total = self.norm_sqr();
            if (total - 1.0).abs() > FLOAT_TOLERANCE {
                return Err(Error::NotNormalized(format!("{total}")));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Number of non-zero terms.
    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.amps.values().all(Amplitude::is_exact)
    }

    pub fn amplitude(&self, tuple: &BasisTuple) -> Option<&Amplitude> {
        self.amps.get(tuple)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisTuple, &Amplitude)> {
        self.amps.iter()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(Amplitude::norm_sqr).sum()
    }

    pub fn norm_sqr_exact(&self) -> Option<Rational> {
        self.amps
            .values()
            .map(|a| a.norm_sqr_exact().cloned())
            .sum::<Option<Rational>>()
    }

    /// `self ⊗ other`: copy counts add, dimensions must agree.
    pub fn tensor(&self, other: &AmpState) -> Result<AmpState> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let mut amps = BTreeMap::new();
        for (ta, pa) in &self.amps {
            for (tb, pb) in &other.amps {
                amps.insert(ta.concat(tb), pa.mul(pb));
            }
        }
        Ok(Self {
            n: self.n,
            t: self.t + other.t,
            amps,
        })
    }
}

/// `<x|y>`, exact when every contributing term is.
pub fn overlap(x: &AmpState, y: &AmpState) -> Result<Overlap> {
    if x.n != y.n {
        return Err(Error::DimensionMismatch {
            expected: x.n,
            found: y.n,
        });
    }
    if x.t != y.t {
        return Err(Error::CopyMismatch {
            expected: x.t,
            found: y.t,
        });
    }
    let mut acc = Overlap::zero();
    for (tuple, px) in &x.amps {
        if let Some(py) = y.amps.get(tuple) {
            acc = acc.add(&px.conj_mul(py));
        }
    }
    Ok(acc)
}
