//! Rake-and-compress layering with long compress paths only, its
//! separation check, and the layered tree mender.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, UNREACHED};
use crate::instances;
use crate::lcl::{self, LclProblem, Mend, PartialLabeling};
use crate::mender::{self, Budget, LabelOrder};

/// Layer bound `L <= LAYER_LOG_FACTOR * ceil(log2 n) + LAYER_K_FACTOR * k + 1`.
pub const LAYER_LOG_FACTOR: usize = 2;
pub const LAYER_K_FACTOR: usize = 2;

/// Changed nodes stay within `MEND_ENVELOPE_CONSTANT * (2k+1) * L` of the hole.
pub const MEND_ENVELOPE_CONSTANT: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LayerLabel {
    Rake(usize),
    Compress(usize),
}

impl LayerLabel {
    pub fn layer(self) -> usize {
        match self {
            LayerLabel::Rake(i) | LayerLabel::Compress(i) => i,
        }
    }

    pub fn is_compress(self) -> bool {
        matches!(self, LayerLabel::Compress(_))
    }
}

impl fmt::Display for LayerLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LayerLabel::Rake(i) => write!(f, "R{i}"),
            LayerLabel::Compress(i) => write!(f, "C{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RakeCompressLayers {
    pub layer_label: Vec<LayerLabel>,
    pub num_layers: usize,
    /// Each compress path in path order.
    pub compress_paths: Vec<Vec<NodeId>>,
    /// (path index, position) of compress nodes.
    pub path_of: Vec<Option<(usize, usize)>>,
    /// Compress nodes at distance >= k from both ends of their path.
    pub z: Vec<NodeId>,
    pub in_z: Vec<bool>,
    pub k: usize,
}

impl RakeCompressLayers {
    pub fn to_json_map(&self) -> BTreeMap<NodeId, String> {
        self.layer_label.iter().enumerate().map(|(u, l)| (u, l.to_string())).collect()
    }

    pub fn layer(&self, u: NodeId) -> usize {
        self.layer_label[u].layer()
    }

    pub fn layer_bound(n: usize, k: usize) -> usize {
        LAYER_LOG_FACTOR * (n.max(1) as f64).log2().ceil() as usize + LAYER_K_FACTOR * k + 1
    }

    /// Recomputes `path_of`, `z` and `in_z` from the labels and paths.
    fn finish(&mut self) {
        let n = self.layer_label.len();
        self.path_of = vec![None; n];
        self.in_z = vec![false; n];
        self.z.clear();
        for (pi, path) in self.compress_paths.iter().enumerate() {
            let m = path.len();
            for (j, &u) in path.iter().enumerate() {
                self.path_of[u] = Some((pi, j));
                if j >= self.k && m - 1 - j >= self.k {
                    self.in_z[u] = true;
                    self.z.push(u);
                }
            }
        }
        self.z.sort_unstable();
    }
}

/// Runs the layering on a tree. An isolated edge rakes only its larger id,
/// and a degree-2 node next to a node raked in the same iteration is not
/// compressed; both keep equal-layer neighbors apart.
pub fn rake_compress(t: &Graph, k: usize) -> Result<RakeCompressLayers> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be >= 1".into()));
    }
    if t.n() == 0 || !t.is_tree() {
        return Err(Error::InvalidGraph("rake-compress needs a non-empty tree".into()));
    }
    let n = t.n();
    let mut alive = vec![true; n];
    let mut remaining = n;
    let mut label: Vec<Option<LayerLabel>> = vec![None; n];
    let mut paths = Vec::new();
    let mut i = 0;
    let deg = |alive: &[bool], u: NodeId| t.neighbors(u).filter(|&w| alive[w]).count();
    while remaining > 0 {
        i += 1;
        if i > n + 1 {
            return Err(Error::Internal("rake-compress did not terminate".into()));
        }
        let mut raked = vec![false; n];
        for u in (0..n).filter(|&u| alive[u]) {
            match deg(&alive, u) {
                0 => raked[u] = true,
                1 => {
                    let w = t.neighbors(u).find(|&w| alive[w]).expect("one alive neighbor");
                    if deg(&alive, w) != 1 || u > w {
                        raked[u] = true;
                    }
                }
                _ => {}
            }
        }
        for u in (0..n).filter(|&u| raked[u]) {
            alive[u] = false;
            label[u] = Some(LayerLabel::Rake(i));
            remaining -= 1;
        }
        let eligible: Vec<bool> = (0..n)
            .map(|u| alive[u] && deg(&alive, u) == 2 && !t.neighbors(u).any(|w| raked[w]))
            .collect();
        let mut done = vec![false; n];
        for s in 0..n {
            if !eligible[s] || done[s] || t.neighbors(s).filter(|&w| eligible[w]).count() > 1 {
                continue;
            }
            let mut chain = vec![s];
            done[s] = true;
            let mut cur = s;
            while let Some(next) = t.neighbors(cur).find(|&w| eligible[w] && !done[w]) {
                done[next] = true;
                chain.push(next);
                cur = next;
            }
            if chain.len() > 2 * k {
                for &u in &chain {
                    alive[u] = false;
                    label[u] = Some(LayerLabel::Compress(i));
                    remaining -= 1;
                }
                paths.push(chain);
            }
        }
    }
    let mut layers = RakeCompressLayers {
        layer_label: label.into_iter().map(|l| l.expect("every node removed")).collect(),
        num_layers: i,
        compress_paths: paths,
        path_of: Vec::new(),
        z: Vec::new(),
        in_z: Vec::new(),
        k,
    };
    layers.finish();
    Ok(layers)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationViolation {
    pub layer: usize,
    pub first: NodeId,
    pub second: NodeId,
}

/// Two layer-i nodes from different groups (a rake node is its own group,
/// a compress path is one group) must not be connected in the forest of
/// layers <= i without passing a lower-layer compress node.
pub fn check_separation(t: &Graph, layers: &RakeCompressLayers) -> Vec<SeparationViolation> {
    let mut out = Vec::new();
    let group = |u: NodeId| match layers.layer_label[u] {
        LayerLabel::Rake(_) => (false, u),
        LayerLabel::Compress(_) => (true, layers.path_of[u].map_or(u, |(p, _)| p)),
    };
    for i in 1..=layers.num_layers {
        let keep: Vec<bool> = layers
            .layer_label
            .iter()
            .map(|&l| l.layer() <= i && !(l.is_compress() && l.layer() < i))
            .collect();
        for comp in t.components(&keep) {
            let mut first: Option<((bool, usize), NodeId)> = None;
            for &u in comp.iter().filter(|&&u| layers.layer(u) == i) {
                match first {
                    None => first = Some((group(u), u)),
                    Some((g0, u0)) if g0 != group(u) => {
                        out.push(SeparationViolation { layer: i, first: u0, second: u });
                    }
                    _ => {}
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestReport {
    pub trees: usize,
    pub max_radius: usize,
    pub bound: usize,
    /// One node of every tree whose radius exceeds the bound.
    pub flagged: Vec<NodeId>,
}

fn bfs_within(t: &Graph, src: NodeId, keep: &[bool]) -> Vec<usize> {
    let mut dist = vec![UNREACHED; t.n()];
    dist[src] = 0;
    let mut q = VecDeque::from([src]);
    while let Some(x) = q.pop_front() {
        for y in t.neighbors(x) {
            if keep[y] && dist[y] == UNREACHED {
                dist[y] = dist[x] + 1;
                q.push_back(y);
            }
        }
    }
    dist
}

/// Radii of the trees left after removing Z, against `(k+1) * L`.
pub fn check_forest_radius(t: &Graph, layers: &RakeCompressLayers) -> ForestReport {
    let keep: Vec<bool> = layers.in_z.iter().map(|&z| !z).collect();
    let bound = (layers.k + 1) * layers.num_layers;
    let mut report = ForestReport { trees: 0, max_radius: 0, bound, flagged: Vec::new() };
    for comp in t.components(&keep) {
        let d0 = bfs_within(t, comp[0], &keep);
        let far = *comp.iter().max_by_key(|&&u| (d0[u], std::cmp::Reverse(u))).expect("non-empty");
        let d1 = bfs_within(t, far, &keep);
        let diam = comp.iter().map(|&u| d1[u]).max().unwrap_or(0);
        let radius = diam.div_ceil(2);
        report.trees += 1;
        report.max_radius = report.max_radius.max(radius);
        if radius > bound {
            report.flagged.push(comp[0]);
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionStep {
    pub node: NodeId,
    pub layer: usize,
    /// Node whose processing blanked this one.
    pub parent: NodeId,
    pub depth: usize,
    /// Path window radius that completed.
    pub window: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayeredMend {
    pub mend: Mend,
    pub num_layers: usize,
    pub envelope: usize,
    /// Nodes relabeled in the first phase.
    pub phase_one: Vec<NodeId>,
    pub steps: Vec<RecursionStep>,
}

impl LayeredMend {
    pub fn max_depth(&self) -> usize {
        self.steps.iter().map(|s| s.depth).max().unwrap_or(0)
    }
}

pub fn envelope(k: usize, num_layers: usize) -> usize {
    MEND_ENVELOPE_CONSTANT * (2 * k + 1) * num_layers
}

pub fn mend_tree_layered(problem: &LclProblem, t: &Graph, lam: &PartialLabeling, v: NodeId, k: usize) -> Result<Mend> {
    mend_tree_layered_report(problem, t, lam, v, k).map(|r| r.mend)
}

pub fn mend_tree_layered_report(
    problem: &LclProblem,
    t: &Graph,
    lam: &PartialLabeling,
    v: NodeId,
    k: usize,
) -> Result<LayeredMend> {
    problem.validate(t, lam)?;
    if v >= t.n() || lam.get(v).is_some() {
        return Err(Error::Precondition(format!("node {v} is not a hole")));
    }
    if !lcl::is_accepted(problem, t, lam)? {
        return Err(Error::Precondition("labeling is not accepted".into()));
    }
    let layers = rake_compress(t, k)?;
    let solution = mender::global_solution(problem, t)?.ok_or(Error::Unsolvable)?;
    let mut mu = lam.clone();
    // (node, parent, depth)
    let mut pending: Vec<(NodeId, NodeId, usize)> = Vec::new();
    let mut phase_one = Vec::new();
    if layers.in_z[v] {
        pending.push((v, v, 0));
    } else {
        let keep: Vec<bool> = layers.in_z.iter().map(|&z| !z).collect();
        let dist = bfs_within(t, v, &keep);
        for u in (0..t.n()).filter(|&u| dist[u] != UNREACHED) {
            mu.set(u, solution.get(u));
            phase_one.push(u);
            for z in t.neighbors(u).filter(|&z| layers.in_z[z]) {
                if mu.get(z).is_some() {
                    mu.set(z, None);
                    pending.push((z, v, 1));
                }
            }
        }
    }
    let mut steps = Vec::new();
    let cap = t.n() * (layers.num_layers + 1) + 1;
    while !pending.is_empty() {
        if steps.len() > cap {
            return Err(Error::Internal("layered mending did not terminate".into()));
        }
        let idx = (0..pending.len())
            .max_by_key(|&i| (layers.layer(pending[i].0), std::cmp::Reverse(pending[i].0)))
            .expect("non-empty");
        let (u, parent, depth) = pending.swap_remove(idx);
        if mu.get(u).is_some() {
            continue;
        }
        let (next, blanked, window) = resolve_window(problem, t, &layers, &mu, u)?;
        mu = next;
        pending.extend(blanked.into_iter().map(|z| (z, u, depth + 1)));
        steps.push(RecursionStep { node: u, layer: layers.layer(u), parent, depth, window });
    }
    if (0..t.n()).any(|u| mu.get(u).is_none() && lam.get(u).is_some()) || mu.get(v).is_none() {
        return Err(Error::Internal("temporary holes remain".into()));
    }
    if !lcl::is_accepted(problem, t, &mu)? {
        return Err(Error::Internal("layered mend is not accepted".into()));
    }
    Ok(LayeredMend {
        mend: Mend::from_diff(t, lam, &mu, v),
        num_layers: layers.num_layers,
        envelope: envelope(k, layers.num_layers),
        phase_one,
        steps,
    })
}

/// Relabels a window of `u`'s compress path plus the subtrees hanging off
/// it (cut at Z), growing the window up to `k - r`. Z nodes next to the
/// region are blanked and returned.
fn resolve_window(
    problem: &LclProblem,
    t: &Graph,
    layers: &RakeCompressLayers,
    mu: &PartialLabeling,
    u: NodeId,
) -> Result<(PartialLabeling, Vec<NodeId>, usize)> {
    let (pi, pos) = layers.path_of[u].ok_or_else(|| Error::Internal(format!("node {u} is not on a compress path")))?;
    let c = layers.k.saturating_sub(problem.radius);
    for rho in 0..=c {
        let allowed = |y: NodeId| match layers.path_of[y] {
            Some((p, j)) if p == pi => j.abs_diff(pos) <= rho,
            _ => !layers.in_z[y],
        };
        let mut region = vec![u];
        let mut seen = std::collections::HashSet::from([u]);
        let mut blanked = Vec::new();
        let mut trial = mu.clone();
        let mut i = 0;
        while i < region.len() {
            let x = region[i];
            for y in t.neighbors(x) {
                if seen.contains(&y) {
                    continue;
                }
                if allowed(y) {
                    seen.insert(y);
                    region.push(y);
                } else if layers.in_z[y] && layers.path_of[y].map(|(p, _)| p) != Some(pi) {
                    seen.insert(y);
                    if trial.get(y).is_some() {
                        trial.set(y, None);
                        blanked.push(y);
                    }
                }
            }
            i += 1;
        }
        let domains = mender::domains_for(problem, trial.as_slice(), &region, Some(u), LabelOrder::KeepCurrent);
        let mut budget = Budget::default();
        if let Some(sol) = mender::solve_region(problem, t, trial.as_slice(), &region, &domains, &mut budget)? {
            return Ok((PartialLabeling::from_vec(sol), blanked, rho));
        }
    }
    Err(Error::WindowExceeded(u))
}

/// Smallest `k` in `1..=max_k` for which layered mending succeeds on every
/// calibration case: seeded random trees with sampled accepted labelings.
pub fn calibrate_k(problem: &LclProblem, max_k: usize, trees: usize, seed: u64) -> Result<Option<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for i in 0..trees {
        let n = 20 + 10 * i;
        let t = instances::random_tree(n, rng.gen())?;
        let lab = mender::sample_accepted(problem, &t, 0.3, &mut rng);
        cases.push((t, lab));
    }
    'k: for k in 1..=max_k {
        for (t, lab) in &cases {
            for v in lab.holes() {
                match mend_tree_layered(problem, t, lab, v, k) {
                    Ok(_) => {}
                    Err(Error::WindowExceeded(_)) => continue 'k,
                    Err(e) => return Err(e),
                }
            }
        }
        return Ok(Some(k));
    }
    Ok(None)
}
