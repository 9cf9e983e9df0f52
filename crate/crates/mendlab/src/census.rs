//! Exhaustive 3×3 block census for {1,3,4}-orientation.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Block positions `(x, y)`, `x, y ∈ 0..3`.
pub const CORNERS: [(usize, usize); 4] = [(0, 0), (2, 0), (0, 2), (2, 2)];
pub const MIDPOINTS: [(usize, usize); 4] = [(1, 0), (0, 1), (2, 1), (1, 2)];

/// Incoming external edges per boundary node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BoundaryConfig {
    pub corner_in: [u8; 4],
    pub edge_in: [u8; 4],
}

impl BoundaryConfig {
    /// External incoming count at block position `(x, y)`.
    pub fn external_in(&self, pos: (usize, usize)) -> u8 {
        if let Some(i) = CORNERS.iter().position(|&c| c == pos) {
            self.corner_in[i]
        } else if let Some(i) = MIDPOINTS.iter().position(|&c| c == pos) {
            self.edge_in[i]
        } else {
            0
        }
    }
}

pub fn enumerate_boundary_configs() -> Vec<BoundaryConfig> {
    let mut out = Vec::with_capacity(1296);
    for code in 0..81u32 {
        let corner_in = std::array::from_fn(|i| ((code / 3u32.pow(3 - i as u32)) % 3) as u8);
        for bits in 0..16u32 {
            let edge_in = std::array::from_fn(|i| ((bits >> (3 - i)) & 1) as u8);
            out.push(BoundaryConfig { corner_in, edge_in });
        }
    }
    out
}

/// The 12 internal edges: horizontal ones row by row, then vertical ones row by row.
pub fn internal_edges() -> Vec<((usize, usize), (usize, usize))> {
    let mut e = Vec::with_capacity(12);
    for y in 0..3 {
        for x in 0..2 {
            e.push(((x, y), (x + 1, y)));
        }
    }
    for y in 0..2 {
        for x in 0..3 {
            e.push(((x, y), (x, y + 1)));
        }
    }
    e
}

/// Direction of each internal edge; `true` means from the second endpoint
/// towards the first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Patch {
    pub reversed: Vec<bool>,
}

impl Patch {
    fn from_code(code: u32) -> Self {
        Patch { reversed: (0..12).map(|i| (code >> (11 - i)) & 1 == 1).collect() }
    }

    /// Total indegree of every block node, row-major.
    pub fn indegrees(&self, cfg: &BoundaryConfig) -> [u8; 9] {
        let mut deg = [0u8; 9];
        for y in 0..3 {
            for x in 0..3 {
                deg[y * 3 + x] = cfg.external_in((x, y));
            }
        }
        for (&rev, (a, b)) in self.reversed.iter().zip(internal_edges()) {
            let head = if rev { a } else { b };
            deg[head.1 * 3 + head.0] += 1;
        }
        deg
    }

    pub fn is_valid(&self, cfg: &BoundaryConfig) -> bool {
        self.indegrees(cfg).iter().all(|d| matches!(d, 1 | 3 | 4))
    }
}

pub fn find_patch(cfg: &BoundaryConfig) -> Option<Patch> {
    (0..1u32 << 12).map(Patch::from_code).find(|p| p.is_valid(cfg))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub total: usize,
    pub mendable: usize,
    pub failures: Vec<BoundaryConfig>,
    pub wall_clock_ms: u128,
}

pub fn census() -> CensusReport {
    let start = Instant::now();
    let configs = enumerate_boundary_configs();
    let failures: Vec<BoundaryConfig> = configs.par_iter().filter(|c| find_patch(c).is_none()).copied().collect();
    CensusReport {
        total: configs.len(),
        mendable: configs.len() - failures.len(),
        failures,
        wall_clock_ms: start.elapsed().as_millis(),
    }
}
