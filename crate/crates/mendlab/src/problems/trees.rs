//! Colorings of rooted trees: restricted (mixed-node) variants, their
//! menders, shift-down solving, and the rigid and overlapping-cycle
//! counterexample problems with their instances.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Port};
use crate::lcl::{self, Label, LclProblem, Mend, PartialLabeling, View};
use crate::mender::{domains_for, solve_region, Budget, LabelOrder};

/// Children carry at least two distinct colors. Leaves are not mixed.
pub fn is_mixed(view: &View, u: NodeId) -> bool {
    let mut colors = view.graph.children(u).into_iter().map(|c| view.label(c));
    match colors.next() {
        Some(first) => colors.any(|c| c != first),
        None => false,
    }
}

/// Longest downward chain of mixed nodes starting at `u`, capped at `cap`.
fn mixed_chain(view: &View, u: NodeId, cap: usize) -> usize {
    if cap == 0 || !is_mixed(view, u) {
        return 0;
    }
    1 + view
        .graph
        .children(u)
        .into_iter()
        .map(|c| mixed_chain(view, c, cap - 1))
        .max()
        .unwrap_or(0)
}

/// Proper `palette`-coloring in which components of mixed nodes have
/// height below `k`: no downward chain of `k + 1` mixed nodes.
pub fn restricted_coloring(id: &str, palette: usize, k: usize) -> LclProblem {
    let names = (1..=palette).map(|i| i.to_string()).collect();
    LclProblem::new_local(id, names, k + 1, move |view: &View| {
        let c = view.center_label();
        view.graph.neighbors(view.center).all(|u| view.label(u) != c)
            && mixed_chain(view, view.center, k + 1) <= k
    })
    .with_pair_filter(|_: &Graph, _: NodeId, a: Label, _: NodeId, b: Label| a != b)
}

fn check_input(problem: &LclProblem, g: &Graph, lam: &PartialLabeling, v: NodeId) -> Result<()> {
    problem.validate(g, lam)?;
    if g.root().is_none() || !g.is_tree() {
        return Err(Error::Precondition("expected a rooted tree with Parent/Child ports".into()));
    }
    if lam.get(v).is_some() {
        return Err(Error::Precondition(format!("node {v} is not a hole")));
    }
    if !lcl::is_accepted(problem, g, lam)? {
        return Err(Error::Precondition("labeling is not accepted".into()));
    }
    Ok(())
}

fn descendants(g: &Graph, v: NodeId, depth: usize) -> Vec<NodeId> {
    let mut out = vec![v];
    let mut level = vec![v];
    for _ in 0..depth {
        level = level.iter().flat_map(|&u| g.children(u)).collect();
        out.extend(&level);
    }
    out
}

/// Tries the regions in order, keeping current labels where possible.
fn mend_in_regions(
    problem: &LclProblem,
    g: &Graph,
    lam: &PartialLabeling,
    v: NodeId,
    regions: Vec<Vec<NodeId>>,
) -> Result<Mend> {
    let mut budget = Budget::default();
    for mut vars in regions {
        vars.sort_unstable();
        vars.dedup();
        let domains = domains_for(problem, lam.as_slice(), &vars, Some(v), LabelOrder::KeepCurrent);
        if let Some(mu) = solve_region(problem, g, lam.as_slice(), &vars, &domains, &mut budget)? {
            return Ok(Mend::from_diff(g, lam, &PartialLabeling::from_vec(mu), v));
        }
    }
    Err(Error::MendabilityViolated { node: v, k: usize::MAX })
}

/// Regions following the case analysis: the hole alone, then its subtree
/// down to growing depth, then (below the root) the siblings' subtrees.
fn subtree_regions(g: &Graph, v: NodeId, max_depth: usize, fallback: usize) -> Vec<Vec<NodeId>> {
    let mut regions: Vec<Vec<NodeId>> = (0..=max_depth).map(|d| descendants(g, v, d)).collect();
    if let Some(p) = g.parent(v) {
        if g.parent(p).is_none() {
            let family: Vec<NodeId> =
                g.children(p).into_iter().flat_map(|s| descendants(g, s, max_depth)).collect();
            regions.push(family);
        }
    }
    regions.push(g.ball(v, fallback));
    regions
}

/// Mend with radius at most 3 for `binary3col_restricted`.
pub fn mend_binary3col_restricted(g: &Graph, lam: &PartialLabeling, v: NodeId) -> Result<Mend> {
    let problem = super::make("binary3col_restricted")?;
    check_input(&problem, g, lam, v)?;
    mend_in_regions(&problem, g, lam, v, subtree_regions(g, v, 3, 3))
        .map_err(|_| Error::MendabilityViolated { node: v, k: 3 })
}

/// Mend with radius at most `k + 3` for `deltacol_restricted:Δ:k`.
pub fn mend_deltacol_restricted(g: &Graph, lam: &PartialLabeling, v: NodeId, delta: usize, k: usize) -> Result<Mend> {
    if delta <= 2 {
        return Err(Error::InvalidParams("Δ must exceed 2".into()));
    }
    let problem = super::make(&format!("deltacol_restricted:{delta}:{k}"))?;
    check_input(&problem, g, lam, v)?;
    mend_in_regions(&problem, g, lam, v, subtree_regions(g, v, k + 2, k + 3))
        .map_err(|_| Error::MendabilityViolated { node: v, k: k + 3 })
}

fn depth_order(g: &Graph) -> Result<Vec<NodeId>> {
    let root = g.root().ok_or_else(|| Error::Precondition("expected a rooted tree".into()))?;
    let mut order = vec![root];
    let mut i = 0;
    while i < order.len() {
        order.extend(g.children(order[i]));
        i += 1;
    }
    Ok(order)
}

/// Every node takes its parent's old color; the root takes the smallest
/// palette color different from its old one.
fn shift_down(g: &Graph, order: &[NodeId], colors: &mut [Label], palette: Label) {
    let old = colors.to_vec();
    for &u in order {
        colors[u] = match g.parent(u) {
            Some(p) => old[p],
            None => (0..palette).find(|&c| c != old[u]).unwrap_or(0),
        };
    }
}

/// Proper coloring with only monochromatic nodes. Starts from an id-based
/// (Δ+1)-coloring, removes excess colors one at a time (shift down, then
/// recolor the eliminated class), and ends with a final shift down.
/// Returns the labeling and the number of simulated rounds.
pub fn solve_shift_down(g: &Graph, palette: usize) -> Result<(PartialLabeling, usize)> {
    if palette < 3 {
        return Err(Error::InvalidParams("shift-down needs a palette of at least 3".into()));
    }
    let order = depth_order(g)?;
    if order.len() != g.n() {
        return Err(Error::Precondition("expected a connected rooted tree".into()));
    }
    let (init, log) = crate::local_sim::distance_coloring(g, 1)?;
    let mut colors: Vec<Label> = init.iter().map(|&c| (c - 1) as Label).collect();
    let mut rounds = log.rounds;
    let mut top = colors.iter().copied().max().unwrap_or(0) + 1;
    let palette = palette as Label;
    while top > palette {
        shift_down(g, &order, &mut colors, top);
        let gone = top - 1;
        let snapshot = colors.clone();
        for u in 0..g.n() {
            if snapshot[u] == gone {
                let used: Vec<Label> = g.neighbors(u).map(|w| snapshot[w]).collect();
                colors[u] = (0..palette).find(|c| !used.contains(c)).expect("two blocked colors leave a third");
            }
        }
        top -= 1;
        rounds += 2;
    }
    shift_down(g, &order, &mut colors, palette);
    rounds += 1;
    Ok((PartialLabeling::complete(&colors), rounds))
}

// ---- rigid configurations ----

/// Parent color followed by the two child colors, colors 1..=3.
pub type Config = (Label, [Label; 2]);

/// Configurations in their customary numbering (1)..(9).
pub const CONFIGS: [Config; 9] = [
    (1, [2, 2]),
    (1, [3, 3]),
    (2, [1, 1]),
    (2, [3, 3]),
    (3, [1, 1]),
    (3, [2, 2]),
    (3, [1, 2]),
    (2, [1, 3]),
    (1, [2, 3]),
];

/// Allowed configuration numbers per variant.
pub fn rigid_allowed(version: u8) -> Vec<usize> {
    match version {
        1 => (1..=8).collect(),
        _ => vec![1, 2, 3, 6],
    }
}

fn config_allowed(allowed: &[usize], parent: Label, children: &[Label]) -> bool {
    let mut ch: Vec<Label> = children.to_vec();
    ch.sort_unstable();
    allowed.iter().any(|&i| {
        let (p, c) = CONFIGS[i - 1];
        p == parent
            && match ch.as_slice() {
                [a, b] => c == [*a, *b],
                [a] => c[0] == *a || c[1] == *a,
                _ => false,
            }
    })
}

/// 3-coloring of binary rooted trees with only the listed configurations.
pub fn rigid_problem(version: u8) -> LclProblem {
    let allowed = rigid_allowed(version);
    let id = format!("binary3col_rigid_v{version}");
    LclProblem::new_local(id, vec!["1".into(), "2".into(), "3".into()], 1, move |view: &View| {
        let g = view.graph;
        let u = view.center;
        let c = view.center_label();
        if g.neighbors(u).any(|w| view.label(w) == c) {
            return false;
        }
        let ch: Vec<Label> = g.children(u).into_iter().map(|w| view.label(w) + 1).collect();
        ch.is_empty() || config_allowed(&allowed, c + 1, &ch)
    })
    .with_pair_filter(|_: &Graph, _: NodeId, a: Label, _: NodeId, b: Label| a != b)
}

/// A node kind of the rigid trees: its color and the kinds of its left and
/// right child.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RigidState {
    pub color: Label,
    pub children: [usize; 2],
}

/// Node kinds of each variant and the kinds of the hole's two children.
/// Colors are 1..=3.
pub fn rigid_states(version: u8) -> (Vec<RigidState>, [usize; 2]) {
    let st = |color, l, r| RigidState { color, children: [l, r] };
    match version {
        1 => (vec![st(1, 2, 2), st(1, 3, 3), st(2, 1, 3), st(3, 2, 0)], [2, 3]),
        _ => (vec![st(1, 2, 2), st(1, 3, 3), st(2, 1, 0), st(3, 2, 2)], [2, 3]),
    }
}

/// Complete binary tree whose root is a hole with children colored 2 and
/// 3; below them, every node's children follow its kind.
pub fn rigid_instance(version: u8, depth: usize) -> Result<(Graph, PartialLabeling)> {
    if depth < 1 {
        return Err(Error::InvalidParams("rigid trees need depth >= 1".into()));
    }
    let g = crate::instances::complete_binary_tree(depth)?;
    let (states, root_kids) = rigid_states(version);
    let mut kind: Vec<Option<usize>> = vec![None; g.n()];
    let mut colors: Vec<Option<Label>> = vec![None; g.n()];
    for u in depth_order(&g)? {
        let picks = kind[u].map_or(root_kids, |s| states[s].children);
        for (i, w) in g.children(u).into_iter().enumerate() {
            kind[w] = Some(picks[i]);
            colors[w] = Some(states[picks[i]].color - 1);
        }
    }
    Ok((g, PartialLabeling::from_vec(colors)))
}

// ---- overlapping cycles ----

/// Labels: the shared run 1..5, the long cycle's A..H, the short cycle's a..e.
pub const OVERLAP_LABELS: [&str; 18] =
    ["1", "2", "3", "4", "5", "A", "B", "C", "D", "E", "F", "G", "H", "a", "b", "c", "d", "e"];

fn overlap_index(name: &str) -> Label {
    OVERLAP_LABELS.iter().position(|&l| l == name).expect("known label") as Label
}

/// Successor relation of the two cycles 1→…→5→A→…→H→1 (13) and
/// 1→…→5→a→…→e→1 (10).
pub fn overlap_edges() -> BTreeSet<(Label, Label)> {
    let long = ["1", "2", "3", "4", "5", "A", "B", "C", "D", "E", "F", "G", "H"];
    let short = ["1", "2", "3", "4", "5", "a", "b", "c", "d", "e"];
    let mut e = BTreeSet::new();
    for cyc in [&long[..], &short[..]] {
        for i in 0..cyc.len() {
            e.insert((overlap_index(cyc[i]), overlap_index(cyc[(i + 1) % cyc.len()])));
        }
    }
    e
}

/// Every child's label must be a successor of its parent's label.
pub fn overlap_cycles_problem() -> LclProblem {
    let edges = std::sync::Arc::new(overlap_edges());
    let e2 = edges.clone();
    LclProblem::new_local("overlap_cycles", OVERLAP_LABELS.iter().map(|s| s.to_string()).collect(), 1, move |view: &View| {
        let g = view.graph;
        let u = view.center;
        let x = view.center_label();
        g.children(u).into_iter().all(|c| edges.contains(&(x, view.label(c))))
            && g.parent(u).is_none_or(|p| edges.contains(&(view.label(p), x)))
    })
    .with_pair_filter(move |g: &Graph, u: NodeId, lu: Label, w: NodeId, lw: Label| {
        if g.parent(w) == Some(u) {
            e2.contains(&(lu, lw))
        } else if g.parent(u) == Some(w) {
            e2.contains(&(lw, lu))
        } else {
            true
        }
    })
}

struct TreeBuilder {
    edges: Vec<(NodeId, NodeId, u8)>,
    labels: Vec<Option<Label>>,
}

impl TreeBuilder {
    fn node(&mut self, label: Option<Label>) -> NodeId {
        self.labels.push(label);
        self.labels.len() - 1
    }

    fn child(&mut self, parent: NodeId, idx: u8, label: Option<Label>) -> NodeId {
        let c = self.node(label);
        self.edges.push((parent, c, idx));
        c
    }

    /// The rigid substructure rooted at `root` (labeled 4), with `levels`
    /// further copies hung below each of its two leaves.
    fn substructure(&mut self, root: NodeId, levels: usize) {
        let long = ["5", "A", "B", "C", "D", "E", "F", "G", "H", "1", "2", "3", "4"];
        let short = ["5", "a", "b", "c", "d", "e", "1", "2", "3", "4"];
        for (i, chain) in [&long[..], &short[..]].into_iter().enumerate() {
            let mut cur = self.child(root, i as u8, Some(overlap_index(chain[0])));
            for name in &chain[1..] {
                cur = self.child(cur, 0, Some(overlap_index(name)));
            }
            if levels > 1 {
                self.substructure(cur, levels - 1);
            }
        }
    }
}

/// Root hole; left child 4 carries `levels` nested substructures; right
/// child 3 has two children 4 carrying the same.
pub fn overlap_cycles_instance(levels: usize) -> Result<(Graph, PartialLabeling)> {
    if levels < 1 {
        return Err(Error::InvalidParams("overlap instance needs at least one level".into()));
    }
    let mut b = TreeBuilder { edges: Vec::new(), labels: Vec::new() };
    let root = b.node(None);
    let left = b.child(root, 0, Some(overlap_index("4")));
    b.substructure(left, levels);
    let right = b.child(root, 1, Some(overlap_index("3")));
    for i in 0..2 {
        let s = b.child(right, i, Some(overlap_index("4")));
        b.substructure(s, levels);
    }
    let mut g = Graph::new(b.labels.len());
    for (p, c, i) in b.edges {
        g.add_edge_ports(p, c, Some(Port::Child(i)), Some(Port::Parent))?;
    }
    Ok((g, PartialLabeling::from_vec(b.labels)))
}
