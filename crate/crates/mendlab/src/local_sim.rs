//! Distance colorings, network decompositions and the phase-by-color
//! mending solver, with LOCAL round accounting.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, UNREACHED};
use crate::lcl::{self, LclProblem, PartialLabeling};
use crate::mender;

/// Rounds per phase are at most this constant times `d * (k + r)`.
pub const PHASE_ROUND_CONSTANT: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundEvent {
    pub phase: usize,
    pub component: usize,
    pub nodes_touched: Vec<NodeId>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundLog {
    pub rounds: usize,
    pub phases: usize,
    pub events: Vec<RoundEvent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkDecomposition {
    pub power: usize,
    /// Colors in `1..=c`.
    pub color_of: Vec<usize>,
    pub c: usize,
    /// Largest weak diameter of a monochromatic component, in hops of `G^power`.
    pub d: usize,
}

/// Proper coloring of `G^k` (colors from 1) by removing the largest color
/// class each step, starting from ids. One step of `G^k` costs k rounds.
pub fn distance_coloring(g: &Graph, k: usize) -> Result<(Vec<usize>, RoundLog)> {
    if k == 0 {
        return Err(Error::InvalidParams("distance coloring needs k >= 1".into()));
    }
    let h = g.power(k);
    let n = g.n();
    let target = h.max_degree() + 1;
    let mut color: Vec<usize> = (1..=n).collect();
    let mut steps = 0;
    for c in (target + 1..=n).rev() {
        // the class of color c is still the single node c - 1
        let v = c - 1;
        let used: Vec<usize> = h.neighbors(v).map(|u| color[u]).collect();
        color[v] = (1..).find(|x| !used.contains(x)).unwrap();
        steps += 1;
    }
    Ok((color, RoundLog { rounds: steps * k, phases: 0, events: Vec::new() }))
}

/// Components of the nodes with `keep` set, in `h`.
fn components_in(h: &Graph, keep: &[bool]) -> Vec<Vec<NodeId>> {
    h.components(keep)
}

fn weak_diameter(h: &Graph, comp: &[NodeId]) -> usize {
    let mut d = 0;
    for &s in comp {
        let dist = h.distances(s);
        for &t in comp {
            if dist[t] != UNREACHED {
                d = d.max(dist[t]);
            }
        }
    }
    d
}

/// Sequential ball carving on `G^power`: a ball grows while the next
/// layer would more than double it; its boundary layer waits for a later
/// color.
pub fn network_decomposition(g: &Graph, power: usize) -> Result<NetworkDecomposition> {
    if power == 0 {
        return Err(Error::InvalidParams("power must be >= 1".into()));
    }
    let h = g.power(power);
    let n = g.n();
    let mut color_of = vec![0usize; n];
    let mut color = 0;
    while color_of.contains(&0) {
        color += 1;
        let mut blocked = vec![false; n];
        for v in 0..n {
            if color_of[v] != 0 || blocked[v] {
                continue;
            }
            let alive = |u: NodeId| color_of[u] == 0 && !blocked[u];
            let mut ball = vec![v];
            let mut in_ball = std::collections::HashSet::from([v]);
            loop {
                let layer: Vec<NodeId> = {
                    let mut l: Vec<NodeId> = ball
                        .iter()
                        .flat_map(|&u| h.neighbors(u))
                        .filter(|&u| alive(u) && !in_ball.contains(&u))
                        .collect();
                    l.sort_unstable();
                    l.dedup();
                    l
                };
                if ball.len() + layer.len() <= 2 * ball.len() {
                    for &u in &ball {
                        color_of[u] = color;
                    }
                    for u in layer {
                        blocked[u] = true;
                    }
                    break;
                }
                for &u in &layer {
                    in_ball.insert(u);
                }
                ball.extend(layer);
            }
        }
    }
    let mut nd = NetworkDecomposition { power, color_of, c: color, d: 0 };
    nd.d = decomposition_diameter(g, &nd);
    Ok(nd)
}

fn decomposition_diameter(g: &Graph, nd: &NetworkDecomposition) -> usize {
    let h = g.power(nd.power);
    (1..=nd.c)
        .flat_map(|i| {
            let keep: Vec<bool> = nd.color_of.iter().map(|&c| c == i).collect();
            components_in(&h, &keep)
        })
        .map(|comp| weak_diameter(&h, &comp))
        .max()
        .unwrap_or(0)
}

/// Colors in range and every monochromatic component within the stated diameter.
pub fn validate_decomposition(g: &Graph, nd: &NetworkDecomposition) -> bool {
    nd.color_of.len() == g.n()
        && nd.color_of.iter().all(|&c| (1..=nd.c).contains(&c))
        && decomposition_diameter(g, nd) <= nd.d
}

/// Mends every hole of one component in ascending id order.
fn mend_component(
    problem: &LclProblem,
    g: &Graph,
    lab: &PartialLabeling,
    comp: &[NodeId],
    k: usize,
) -> Result<(PartialLabeling, Vec<NodeId>)> {
    let mut work = lab.clone();
    for &v in comp {
        if work.get(v).is_some() {
            continue;
        }
        // conflicts hidden by holes pile up under plain minimal mends
        let m = match mender::find_strict_mend(problem, g, &work, v, k)? {
            Some(m) => m,
            None => mender::find_mend(problem, g, &work, v, k)?.ok_or(Error::MendabilityViolated { node: v, k })?,
        };
        work = m.apply(&work);
    }
    let touched = (0..g.n()).filter(|&u| work.get(u) != lab.get(u)).collect();
    Ok((work, touched))
}

/// Phase i mends the holes of all color-i components, each from the same
/// snapshot; the merged result must equal a sequential replay.
pub fn solve_by_decomposition(
    problem: &LclProblem,
    g: &Graph,
    nd: &NetworkDecomposition,
    k: usize,
    initial: Option<&PartialLabeling>,
) -> Result<(PartialLabeling, RoundLog)> {
    let mut lab = initial.cloned().unwrap_or_else(|| PartialLabeling::all_bottom(g.n()));
    problem.validate(g, &lab)?;
    if !lcl::is_accepted(problem, g, &lab)? {
        return Err(Error::Precondition("initial labeling is not accepted".into()));
    }
    let h = g.power(nd.power);
    let r = problem.radius;
    let mut log = RoundLog::default();
    let phase_rounds = (nd.d.max(1) + 1) * nd.power;
    for phase in 1..=nd.c {
        let keep: Vec<bool> = (0..g.n()).map(|u| nd.color_of[u] == phase && lab.get(u).is_none()).collect();
        if !keep.contains(&true) {
            continue;
        }
        let member: Vec<bool> = nd.color_of.iter().map(|&c| c == phase).collect();
        let comps: Vec<Vec<NodeId>> = components_in(&h, &member)
            .into_iter()
            .filter(|c| c.iter().any(|&u| keep[u]))
            .collect();
        let results: Vec<(PartialLabeling, Vec<NodeId>)> = comps
            .par_iter()
            .map(|comp| mend_component(problem, g, &lab, comp, k))
            .collect::<Result<_>>()?;
        for i in 0..results.len() {
            if results[i].1.is_empty() {
                continue;
            }
            let dist = g.multi_source_distances(&results[i].1, r);
            for j in i + 1..results.len() {
                if let Some(&u) = results[j].1.iter().find(|&&u| dist[u] != UNREACHED) {
                    return Err(Error::PatchOverlap { dist: dist[u], r });
                }
            }
        }
        let mut merged = lab.clone();
        for (ci, (work, touched)) in results.iter().enumerate() {
            for &u in touched {
                merged.set(u, work.get(u));
            }
            log.events.push(RoundEvent { phase, component: ci, nodes_touched: touched.clone() });
        }
        let mut replay = lab.clone();
        for comp in &comps {
            replay = mend_component(problem, g, &replay, comp, k)?.0;
        }
        if replay != merged {
            return Err(Error::Internal(format!("phase {phase}: parallel and sequential mending differ")));
        }
        lab = merged;
        log.phases += 1;
        log.rounds += phase_rounds;
    }
    if !lab.is_complete() {
        return Err(Error::Internal("holes remain after all phases".into()));
    }
    Ok((lab, log))
}

/// Distance-(2k+r) coloring used as a decomposition with singleton
/// components, then phase-by-color mending.
pub fn solve_constant_mendable(problem: &LclProblem, g: &Graph, k: usize) -> Result<(PartialLabeling, RoundLog)> {
    let power = (2 * k + problem.radius).max(1);
    let (colors, clog) = distance_coloring(g, power)?;
    let nd = NetworkDecomposition { power, c: colors.iter().copied().max().unwrap_or(0), color_of: colors, d: 0 };
    let (lab, mut log) = solve_by_decomposition(problem, g, &nd, k, None)?;
    log.rounds += clog.rounds;
    Ok((lab, log))
}
