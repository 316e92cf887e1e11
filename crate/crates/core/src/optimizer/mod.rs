//! Exact optimum schemes at small `N`.
//!
//! * [`min_product_cover`]: fewest canonical blocks covering `K_N`, by
//!   branch and bound.
//! * [`entangled_feasible`]: whether any `t`-copy input (entangled or not)
//!   separates all `N` oracles, decided by an exact rational LP over
//!   composition masses.

mod cover;
pub mod simplex;

pub use cover::{
    min_product_cover, min_product_cover_with, CoverInstance, CoverSolution, DEFAULT_MAX_COVER_N,
    HARD_MAX_COVER_N,
};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::oracle::{enumerate_compositions, DEFAULT_MAX_COMPOSITIONS};
use crate::rational::{int, Rational};
use crate::schemes::{general_lower_bound, verify_entangled, WeightProfile};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpStats {
    pub variables: usize,
    pub constraints: usize,
    pub pivots: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FeasibilityResult {
    pub feasible: bool,
    /// A verified profile, present iff `feasible`.
    pub witness: Option<WeightProfile>,
    /// Phase-1 optimum; zero iff `feasible`.
    pub phase1_objective: Rational,
    pub stats: LpStats,
}

/// Decides whether masses `q_c >= 0` on the compositions of `t` into `n`
/// parts exist with total one and odd-parity mass `1/2` for every pair.
///
/// Each pair row is scaled by two so every coefficient is an integer:
/// `sum_c q_c = 1` and `sum_{c: c_i + c_j odd} 2 q_c = 1`.
pub fn entangled_feasible_with(
    n: usize,
    t: usize,
    max_compositions: usize,
) -> Result<FeasibilityResult> {
    if n == 0 {
        return Err(Error::InvalidDimension(n));
    }
    let comps = enumerate_compositions(n, t, max_compositions)?;
    let vars = comps.len();
    let parities: Vec<Vec<u8>> = comps.iter().map(|c| c.parity_bits().collect()).collect();

    let mut rows = Vec::with_capacity(1 + n * (n - 1) / 2);
    let mut rhs = Vec::with_capacity(rows.capacity());
    rows.push(vec![int(1); vars]);
    rhs.push(int(1));
    for i in 0..n {
        for j in (i + 1)..n {
            rows.push(
                parities
                    .iter()
                    .map(|p| {
                        if p[i] != p[j] {
                            int(2)
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect(),
            );
            rhs.push(int(1));
        }
    }
    let stats_rows = rows.len();
    let outcome = simplex::phase_one(&rows, &rhs);
    let stats = LpStats {
        variables: vars,
        constraints: stats_rows,
        pivots: outcome.pivots,
    };

    if !outcome.objective.is_zero() {
        return Ok(FeasibilityResult {
            feasible: false,
            witness: None,
            phase1_objective: outcome.objective,
            stats,
        });
    }
    let witness = WeightProfile::new(n, t, comps.into_iter().zip(outcome.solution))?;
    let report = verify_entangled(&witness);
    assert!(
        report.valid,
        "phase-1 solution must satisfy every pair constraint: {report:?}"
    );
    Ok(FeasibilityResult {
        feasible: true,
        witness: Some(witness),
        phase1_objective: outcome.objective,
        stats,
    })
}

pub fn entangled_feasible(n: usize, t: usize) -> Result<FeasibilityResult> {
    entangled_feasible_with(n, t, DEFAULT_MAX_COMPOSITIONS)
}

/// Smallest feasible `t <= t_max`, scanning up from the general lower bound.
pub fn min_entangled_t_with(
    n: usize,
    t_max: usize,
    max_compositions: usize,
) -> Result<Option<(usize, FeasibilityResult)>> {
    let start = (general_lower_bound(n as u64) as usize).max(1);
    for t in start..=t_max {
        let result = entangled_feasible_with(n, t, max_compositions)?;
        if result.feasible {
            return Ok(Some((t, result)));
        }
    }
    Ok(None)
}

pub fn min_entangled_t(n: usize, t_max: usize) -> Result<Option<usize>> {
    Ok(min_entangled_t_with(n, t_max, DEFAULT_MAX_COMPOSITIONS)?.map(|(t, _)| t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::{builtin, Scheme};

    #[test]
    fn n6_two_copies_feasible() {
        let r = entangled_feasible(6, 2).unwrap();
        assert!(r.feasible);
        assert!(r.phase1_objective.is_zero());
        assert!(verify_entangled(r.witness.as_ref().unwrap()).valid);
        assert_eq!(r.stats.variables, 21);
        assert_eq!(r.stats.constraints, 16);
        let Scheme::Entangled(phi6) = builtin("n6-entangled", None).unwrap() else {
            panic!()
        };
        assert!(verify_entangled(&phi6).valid);
    }

    #[test]
    fn infeasible_cases() {
        let r = entangled_feasible(5, 1).unwrap();
        assert!(!r.feasible);
        assert!(r.witness.is_none());
        assert!(r.phase1_objective > Rational::zero());
        for t in 1..=6 {
            assert!(!entangled_feasible(2, t).unwrap().feasible, "t = {t}");
        }
    }

    #[test]
    fn min_t_examples() {
        assert_eq!(min_entangled_t(6, 4).unwrap(), Some(2));
        assert_eq!(min_entangled_t(5, 4).unwrap(), Some(2));
        assert_eq!(min_entangled_t(3, 4).unwrap(), Some(2));
        assert_eq!(min_entangled_t(4, 4).unwrap(), Some(1));
        assert_eq!(min_entangled_t(2, 5).unwrap(), None);
    }

    #[test]
    fn lp_is_deterministic() {
        let a = entangled_feasible(5, 3).unwrap();
        let b = entangled_feasible(5, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            entangled_feasible_with(6, 2, 20),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn feasibility_is_monotone_in_steps_of_two() {
        for n in 2..=6 {
            for t in 1..=3 {
                if entangled_feasible(n, t).unwrap().feasible {
                    assert!(
                        entangled_feasible(n, t + 2).unwrap().feasible,
                        "n={n} t={t}"
                    );
                }
            }
        }
    }
}
