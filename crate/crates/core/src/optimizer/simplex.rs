//! Exact phase-1 simplex over rationals.
//!
//! Decides feasibility of `A x = b, x >= 0` (with `b >= 0`) by minimizing the
//! sum of one artificial variable per row. Bland's rule picks both the
//! entering column (lowest index with negative reduced cost) and the leaving
//! row (lowest basic-variable index among ratio-test ties), so the method
//! terminates and every run pivots identically.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseOne {
    /// Optimal sum of artificials; zero iff the system is feasible.
    pub objective: Rational,
    /// Values of the structural variables at the final basis.
    pub solution: Vec<Rational>,
    pub pivots: usize,
}

struct Tableau {
    /// `rows x (cols + 1)`, last column is the right-hand side.
    cells: Vec<Vec<Rational>>,
    /// Reduced costs of the phase-1 objective, last entry is `-objective`.
    costs: Vec<Rational>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, row: usize) -> &Rational {
        &self.cells[row][self.cols]
    }

    fn entering(&self) -> Option<usize> {
        (0..self.cols).find(|&j| self.costs[j].is_negative())
    }

    fn leaving(&self, col: usize) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for r in 0..self.cells.len() {
            let a = &self.cells[r][col];
            if !a.is_positive() {
                continue;
            }
            let ratio = self.rhs(r) / a;
            let better = match &best {
                None => true,
                Some((br, bratio)) => {
                    ratio < *bratio || (ratio == *bratio && self.basis[r] < self.basis[*br])
                }
            };
            if better {
                best = Some((r, ratio));
            }
        }
        best.map(|(r, _)| r)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let width = self.cols + 1;
        let inv = self.cells[row][col].recip();
        for k in 0..width {
            if !self.cells[row][k].is_zero() {
                self.cells[row][k] *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.cells[row]);
        let support: Vec<usize> = (0..width).filter(|&k| !pivot_row[k].is_zero()).collect();
        for r in 0..self.cells.len() {
            if r == row || self.cells[r][col].is_zero() {
                continue;
            }
            let factor = self.cells[r][col].clone();
            for &k in &support {
                let delta = &factor * &pivot_row[k];
                self.cells[r][k] -= delta;
            }
        }
        if !self.costs[col].is_zero() {
            let factor = self.costs[col].clone();
            for &k in &support {
                let delta = &factor * &pivot_row[k];
                self.costs[k] -= delta;
            }
        }
        self.cells[row] = pivot_row;
        self.basis[row] = col;
    }
}

/// Phase-1 simplex on `rows · x = rhs`, `x >= 0`. Every `rhs` entry must be
/// non-negative.
pub fn phase_one(rows: &[Vec<Rational>], rhs: &[Rational]) -> PhaseOne {
    assert_eq!(rows.len(), rhs.len(), "one right-hand side per row");
    assert!(
        rhs.iter().all(|b| !b.is_negative()),
        "rhs must be non-negative"
    );
    let m = rows.len();
    let vars = rows.first().map_or(0, Vec::len);
    let cols = vars + m;

    let mut cells = Vec::with_capacity(m);
    for (r, (row, b)) in rows.iter().zip(rhs).enumerate() {
        assert_eq!(row.len(), vars, "ragged constraint matrix");
        let mut cell = Vec::with_capacity(cols + 1);
        cell.extend(row.iter().cloned());
        cell.extend((0..m).map(|k| {
            if k == r {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            }
        }));
        cell.push(b.clone());
        cells.push(cell);
    }
    // reduced costs of min sum(artificials) with the artificial basis priced out
    let mut costs = vec![Rational::zero(); cols + 1];
    for cell in &cells {
        for (k, v) in cell.iter().enumerate() {
            if k < vars || k == cols {
                costs[k] -= v;
            }
        }
    }
    let mut tableau = Tableau {
        cells,
        costs,
        basis: (vars..cols).collect(),
        cols,
    };

    let mut pivots = 0;
    while let Some(col) = tableau.entering() {
        let row = tableau
            .leaving(col)
            .expect("phase-1 objective is bounded below by zero");
        tableau.pivot(row, col);
        pivots += 1;
    }

    let mut solution = vec![Rational::zero(); vars];
    for (r, &b) in tableau.basis.iter().enumerate() {
        if b < vars {
            solution[b] = tableau.rhs(r).clone();
        }
    }
    PhaseOne {
        objective: -tableau.costs[cols].clone(),
        solution,
        pivots,
    }
}
