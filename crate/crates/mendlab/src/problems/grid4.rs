//! Hole enlargement to a 2×2 block and 4-cycle list coloring for grid 4-coloring.

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Port};
use crate::lcl::{self, Label, LclProblem, Mend, PartialLabeling};

const COLORS: Label = 4;

/// Offsets of the 2×2 blocks containing `v`, tried in order: v at the
/// top-left, top-right, bottom-left, bottom-right corner.
const BLOCKS: [[&[Port]; 3]; 4] = [
    [&[Port::Right], &[Port::Down], &[Port::Down, Port::Right]],
    [&[Port::Left], &[Port::Down], &[Port::Down, Port::Left]],
    [&[Port::Right], &[Port::Up], &[Port::Up, Port::Right]],
    [&[Port::Left], &[Port::Up], &[Port::Up, Port::Left]],
];

fn locally_happy(problem: &LclProblem, g: &Graph, lab: &PartialLabeling, around: &[NodeId]) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    for &b in around {
        seen.extend(g.ball(b, problem.radius));
    }
    seen.into_iter().all(|u| problem.happy_at(g, lab.as_slice(), u))
}

fn smallest_free(used: impl Iterator<Item = Label>) -> Option<Label> {
    let mut mask = 0u8;
    for c in used {
        mask |= 1 << c;
    }
    (0..COLORS).find(|&c| mask & (1 << c) == 0)
}

/// 2×2 block around `v` with cycle order v, a, diagonal, b.
pub fn block_of(g: &Graph, v: NodeId) -> Option<[NodeId; 4]> {
    BLOCKS.iter().find_map(|[a, b, d]| {
        let a = g.follow_path(v, a)?;
        let b = g.follow_path(v, b)?;
        let d = g.follow_path(v, d)?;
        Some([v, a, d, b])
    })
}

/// Colors still available to each block node given its outside neighbors.
pub fn block_lists(g: &Graph, lab: &PartialLabeling, block: &[NodeId; 4]) -> [Vec<Label>; 4] {
    block.map(|b| {
        let blocked: Vec<Label> = g
            .neighbors(b)
            .filter(|u| !block.contains(u))
            .filter_map(|u| lab.get(u))
            .collect();
        (0..COLORS).filter(|c| !blocked.contains(c)).collect()
    })
}

pub fn mend_grid4(g: &Graph, lam: &PartialLabeling, v: NodeId) -> Result<Mend> {
    let problem = crate::problems::make("grid4")?;
    problem.validate(g, lam)?;
    if lam.get(v).is_some() {
        return Err(Error::Precondition(format!("node {v} is not a hole")));
    }
    if !lcl::is_accepted(&problem, g, lam)? {
        return Err(Error::Precondition("labeling is not accepted".into()));
    }
    if let Some(c) = smallest_free(g.neighbors(v).filter_map(|u| lam.get(u))) {
        let mut mu = lam.clone();
        mu.set(v, Some(c));
        if locally_happy(&problem, g, &mu, &[v]) {
            return Ok(Mend::from_diff(g, lam, &mu, v));
        }
    }
    let block = block_of(g, v).ok_or_else(|| Error::Precondition(format!("no 2x2 block contains node {v}")))?;
    let mut mu = lam.clone();
    for &b in &block {
        mu.set(b, None);
    }
    // ring nodes lose the excuse the block gave them; fix their conflicts
    let mut ring: Vec<NodeId> = block
        .iter()
        .flat_map(|&b| g.neighbors(b))
        .filter(|u| !block.contains(u))
        .collect();
    ring.sort_unstable();
    ring.dedup();
    for &w in &ring {
        let Some(c) = mu.get(w) else { continue };
        let outside = || g.neighbors(w).filter(|u| !block.contains(u));
        if outside().any(|u| mu.get(u) == Some(c)) {
            let nc = smallest_free(outside().filter_map(|u| mu.get(u)))
                .ok_or_else(|| Error::Internal(format!("ring node {w} has no free color")))?;
            mu.set(w, Some(nc));
        }
    }
    let lists = block_lists(g, &mu, &block);
    for l0 in &lists[0] {
        for l1 in lists[1].iter().filter(|&x| x != l0) {
            for l2 in lists[2].iter().filter(|&x| x != l1) {
                for l3 in lists[3].iter().filter(|&x| x != l2 && x != l0) {
                    let mut cand = mu.clone();
                    for (&b, &c) in block.iter().zip([l0, l1, l2, l3]) {
                        cand.set(b, Some(c));
                    }
                    if locally_happy(&problem, g, &cand, &block) {
                        return Ok(Mend::from_diff(g, lam, &cand, v));
                    }
                }
            }
        }
    }
    Err(Error::Internal(format!("4-cycle list coloring failed at node {v}")))
}
