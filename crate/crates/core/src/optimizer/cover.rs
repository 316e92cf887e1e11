//! Minimum product schemes as exact set cover over canonical blocks.
//!
//! Every one-copy factor can be swapped for a canonical block whose graph
//! contains its own, so the smallest product scheme for `N` is the smallest
//! family of canonical-block graphs covering `K_N`. Edges are bits of a
//! `u128`, which caps `N` at 16.

use crate::discrimination::{block_graph, CanonicalBlock};
use crate::error::{Error, Result};
use crate::schemes::construction_size;

/// Default upper limit on `N` for [`min_product_cover`].
pub const DEFAULT_MAX_COVER_N: usize = 9;

/// Largest `N` whose `C(N,2)` edges fit the bitmask.
pub const HARD_MAX_COVER_N: usize = 16;

fn edge_bit(n: usize, i: usize, j: usize) -> u32 {
    // rank of (i, j), 1 <= i < j <= n, in lexicographic order
    let (i, j) = (i.min(j) - 1, i.max(j) - 1);
    (i * (2 * n - i - 1) / 2 + (j - i - 1)) as u32
}

/// All canonical blocks on `n` with their edge sets as bitmasks.
#[derive(Clone, Debug)]
pub struct CoverInstance {
    n: usize,
    candidates: Vec<CanonicalBlock>,
    masks: Vec<u128>,
    universe: u128,
}

impl CoverInstance {
    pub fn new(n: usize) -> Result<Self> {
        if n > HARD_MAX_COVER_N {
            return Err(Error::ResourceCap {
                what: "cover dimension",
                requested: n as u128,
                cap: HARD_MAX_COVER_N as u128,
            });
        }
        let pairs = n * n.saturating_sub(1) / 2;
        let universe = if pairs == 0 {
            0
        } else {
            u128::MAX >> (128 - pairs)
        };
        let candidates = CanonicalBlock::all(n);
        let masks = candidates
            .iter()
            .map(|b| {
                block_graph(b)
                    .edges()
                    .fold(0u128, |m, (i, j)| m | 1u128 << edge_bit(n, i, j))
            })
            .collect();
        Ok(Self {
            n,
            candidates,
            masks,
            universe,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn candidates(&self) -> &[CanonicalBlock] {
        &self.candidates
    }

    pub fn universe_size(&self) -> u32 {
        self.universe.count_ones()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSolution {
    pub t: usize,
    pub blocks: Vec<CanonicalBlock>,
    pub nodes_explored: u64,
}

struct Search<'a> {
    inst: &'a CoverInstance,
    /// candidates covering each edge, in candidate order
    covering: Vec<Vec<usize>>,
    chosen: Vec<usize>,
    best: Option<Vec<usize>>,
    best_t: usize,
    nodes: u64,
}

impl Search<'_> {
    fn run(&mut self, uncovered: u128) {
        self.nodes += 1;
        let depth = self.chosen.len();
        if uncovered == 0 {
            if depth < self.best_t {
                self.best_t = depth;
                self.best = Some(self.chosen.clone());
            }
            return;
        }
        let max_gain = self
            .inst
            .masks
            .iter()
            .map(|m| (m & uncovered).count_ones())
            .max()
            .unwrap_or(0);
        if max_gain == 0 {
            return;
        }
        let needed = uncovered.count_ones().div_ceil(max_gain) as usize;
        if depth + needed >= self.best_t {
            return;
        }
        let edge = (0..128u32)
            .filter(|&e| uncovered >> e & 1 == 1)
            .min_by_key(|&e| (self.covering[e as usize].len(), e))
            .expect("uncovered is non-empty");
        for k in 0..self.covering[edge as usize].len() {
            let cand = self.covering[edge as usize][k];
            self.chosen.push(cand);
            self.run(uncovered & !self.inst.masks[cand]);
            self.chosen.pop();
            if depth + 1 >= self.best_t {
                // siblings can only tie the incumbent
                return;
            }
        }
    }
}

/// Exact minimum number of canonical blocks covering `K_n`, `n <= max_n`.
pub fn min_product_cover_with(n: usize, max_n: usize) -> Result<CoverSolution> {
    if n > max_n {
        return Err(Error::ResourceCap {
            what: "cover dimension",
            requested: n as u128,
            cap: max_n as u128,
        });
    }
    // rejects n = 0 and the indistinguishable n = 2
    let upper = construction_size(n)?;
    let inst = CoverInstance::new(n)?;
    let edges = inst.universe_size() as usize;
    let covering = (0..edges)
        .map(|e| {
            (0..inst.masks.len())
                .filter(|&c| inst.masks[c] >> e & 1 == 1)
                .collect()
        })
        .collect();
    let mut search = Search {
        inst: &inst,
        covering,
        chosen: Vec::new(),
        best: None,
        best_t: upper + 1,
        nodes: 0,
    };
    search.run(inst.universe);
    let best = search
        .best
        .expect("the grouping construction bounds the optimum");
    Ok(CoverSolution {
        t: best.len(),
        blocks: best.iter().map(|&c| inst.candidates[c]).collect(),
        nodes_explored: search.nodes,
    })
}

pub fn min_product_cover(n: usize) -> Result<CoverSolution> {
    min_product_cover_with(n, DEFAULT_MAX_COVER_N)
}
