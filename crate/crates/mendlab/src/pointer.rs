//! Grid-structure checks, the pointer problem on grid-like graphs, its
//! five-case mender, and wrap-around cycle search.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Port};
use crate::instances;
use crate::lcl::{self, Label, LclProblem, Mend, PartialLabeling, View};

pub const ZERO: Label = 0;
pub const FLAG: Label = 1;
pub const LEFT: Label = 2;
pub const UP: Label = 3;
pub const RIGHT: Label = 4;

pub const DEFAULT_C: f64 = 2.0;

/// Non-Down moves in search order.
const MOVES: [(Port, Label); 3] = [(Port::Left, LEFT), (Port::Up, UP), (Port::Right, RIGHT)];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridViolation {
    pub node: NodeId,
    pub constraint: String,
    pub description: String,
}

pub fn check_grid_constraints(g: &Graph, v: NodeId) -> Vec<GridViolation> {
    let mut out = Vec::new();
    let mut push = |c: &str, d: String| {
        out.push(GridViolation { node: v, constraint: c.to_string(), description: d })
    };
    let adj = g.adj(v);
    if adj.len() != 4 {
        push("1a", format!("degree {} instead of 4", adj.len()));
    }
    let mut tos: Vec<NodeId> = adj.iter().map(|a| a.to).collect();
    let has_loop = tos.contains(&v);
    tos.sort_unstable();
    tos.dedup();
    if has_loop || tos.len() != adj.len() {
        push("1b", "parallel edge or self-loop".into());
    }
    for a in adj {
        match a.port {
            None => push("1d", format!("edge to {} carries no label", a.to)),
            Some(p) if !p.is_grid() => push("1c", format!("label {p} is not a grid direction")),
            _ => {}
        }
    }
    let mut ports: Vec<Port> = adj.iter().filter_map(|a| a.port).collect();
    ports.sort_by_key(|p| p.to_string());
    if ports.windows(2).any(|w| w[0] == w[1]) {
        push("1e", "two incident edges share a label".into());
    }
    for (p, q, id) in [(Port::Up, Port::Down, "2a"), (Port::Right, Port::Left, "2b")] {
        for a in adj.iter().filter(|a| a.port == Some(p)) {
            if g.port_towards(a.to, v) != Some(q) {
                push(id, format!("{p} edge to {} is not labeled {q} there", a.to));
            }
        }
    }
    let around = g.follow_path(v, &[Port::Down, Port::Right, Port::Up]);
    let right = g.follow(v, Port::Right);
    if around.is_none() || around != right {
        push("2c", "Down, Right, Up does not reach the Right neighbor".into());
    }
    out
}

pub fn satisfies_grid(g: &Graph, v: NodeId) -> bool {
    check_grid_constraints(g, v).is_empty()
}

fn pointer_port(l: Label) -> Option<Port> {
    match l {
        LEFT => Some(Port::Left),
        UP => Some(Port::Up),
        RIGHT => Some(Port::Right),
        _ => None,
    }
}

/// Node `u` labeled `lu` points at `w`.
fn points_at(g: &Graph, u: NodeId, lu: Label, w: NodeId) -> bool {
    pointer_port(lu).is_some_and(|p| g.follow(u, p) == Some(w))
}

fn target_allowed(lu: Label, lw: Label) -> bool {
    match lu {
        UP => matches!(lw, UP | LEFT | RIGHT | FLAG),
        LEFT => matches!(lw, LEFT | UP | FLAG),
        RIGHT => matches!(lw, RIGHT | UP | FLAG),
        _ => true,
    }
}

pub fn problem() -> LclProblem {
    let names = ["Zero", "Flag", "Left", "Up", "Right"].iter().map(|s| s.to_string()).collect();
    let mut p = LclProblem::new_local("pointer_lcl", names, 2, |view: &View| {
        let g = view.graph;
        let u = view.center;
        let lu = view.center_label();
        match lu {
            FLAG => !satisfies_grid(g, u),
            ZERO => g.neighbors(u).all(|w| !points_at(g, w, view.label(w), u)),
            _ => {
                let Some(w) = pointer_port(lu).and_then(|p| g.follow(u, p)) else { return false };
                let lw = view.label(w);
                target_allowed(lu, lw) && !points_at(g, w, lw, u)
            }
        }
    })
    .with_pair_filter(|g: &Graph, u: NodeId, lu: Label, w: NodeId, lw: Label| {
        let into_zero = (lw == ZERO && points_at(g, u, lu, w)) || (lu == ZERO && points_at(g, w, lw, u));
        let mutual = points_at(g, u, lu, w) && points_at(g, w, lw, u);
        !into_zero && !mutual
    });
    p.inputs = ["Up", "Down", "Left", "Right"].iter().map(|s| s.to_string()).collect();
    p.label_radius = 1;
    p
}

/// BFS over (node, last move) with Left < Up < Right, never reversing
/// Left/Right; yields each reached state's move path in BFS order.
struct MoveSearch<'a> {
    g: &'a Graph,
    start: NodeId,
    max_steps: usize,
}

type MovePath = Vec<(NodeId, Port)>;

impl MoveSearch<'_> {
    fn run(&self, mut visit: impl FnMut(NodeId, &MovePath) -> Result<bool>) -> Result<Option<MovePath>> {
        let mut parent: HashMap<(NodeId, Option<Port>), (NodeId, Option<Port>)> = HashMap::new();
        let mut q = VecDeque::from([((self.start, None::<Port>), 0usize)]);
        let mut seen = std::collections::HashSet::from([(self.start, None::<Port>)]);
        while let Some(((x, last), d)) = q.pop_front() {
            if d == self.max_steps {
                continue;
            }
            for (p, _) in MOVES {
                if matches!((last, p), (Some(Port::Left), Port::Right) | (Some(Port::Right), Port::Left)) {
                    continue;
                }
                let Some(y) = self.g.follow(x, p) else { continue };
                let state = (y, Some(p));
                if y == self.start || seen.insert(state) {
                    if y != self.start {
                        parent.insert(state, (x, last));
                    }
                    let mut path = vec![(x, p)];
                    let mut cur = (x, last);
                    while let Some(&prev) = parent.get(&cur) {
                        path.push((prev.0, cur.1.expect("non-start state has a move")));
                        cur = prev;
                    }
                    path.reverse();
                    if visit(y, &path)? {
                        return Ok(Some(path));
                    }
                    if y != self.start {
                        q.push_back((state, d + 1));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Shortest closed walk through `u` using Left/Up/Right moves, at most
/// `r` steps long. Returns the (node, move) pairs of the walk.
pub fn find_up_right_cycle(g: &Graph, u: NodeId, r: usize) -> Result<Option<Vec<(NodeId, Port)>>> {
    let search = MoveSearch { g, start: u, max_steps: r };
    let mut bad: Option<GridViolation> = None;
    let found = search.run(|y, _| {
        if y == u {
            return Ok(true);
        }
        if let Some(v) = check_grid_constraints(g, y).into_iter().next() {
            bad.get_or_insert(v);
        }
        Ok(false)
    })?;
    if let Some(v) = bad.filter(|_| found.is_none()).or_else(|| {
        check_grid_constraints(g, u).into_iter().next()
    }) {
        return Err(Error::Precondition(format!(
            "node {} violates grid constraint {}: {}",
            v.node, v.constraint, v.description
        )));
    }
    Ok(found)
}

fn unhappy_near(problem: &LclProblem, g: &Graph, mu: &PartialLabeling, changed: &[NodeId]) -> Vec<NodeId> {
    let mut nodes: Vec<NodeId> = changed.iter().flat_map(|&c| g.ball(c, problem.radius)).collect();
    nodes.sort_unstable();
    nodes.dedup();
    nodes.retain(|&x| !problem.happy_at(g, mu.as_slice(), x));
    nodes
}

/// Which of the five cases produced a pointer mend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointerCase {
    Flag = 1,
    Zero = 2,
    SafePointer = 3,
    ChainToEnd = 4,
    Cycle = 5,
}

pub fn budget_radius(n: usize, c: f64) -> usize {
    (c * (n as f64).sqrt()).ceil() as usize
}

pub fn mend_pointer(g: &Graph, lam: &PartialLabeling, v: NodeId, c: f64) -> Result<Mend> {
    mend_pointer_case(g, lam, v, c).map(|(m, _)| m)
}

/// Mends `v` by the first applicable case. Labels near `v` that were only
/// accepted because `v` was a hole are blanked and mended the same way.
pub fn mend_pointer_case(g: &Graph, lam: &PartialLabeling, v: NodeId, c: f64) -> Result<(Mend, PointerCase)> {
    let problem = problem();
    problem.validate(g, lam)?;
    if lam.get(v).is_some() {
        return Err(Error::Precondition(format!("node {v} is not a hole")));
    }
    if !lcl::is_accepted(&problem, g, lam)? {
        return Err(Error::Precondition("labeling is not accepted".into()));
    }
    let r = budget_radius(g.n(), c);
    let dist = g.distances_within(v, r);
    let mut work = lam.clone();
    let mut queue = VecDeque::from([v]);
    let mut first_case = None;
    let mut fills = 0;
    while let Some(x) = queue.pop_front() {
        if work.get(x).is_some() {
            continue;
        }
        fills += 1;
        if fills > 4 * g.n() {
            return Err(Error::Internal(format!("pointer repairs around node {v} do not settle")));
        }
        let (mu, case, changed) = match fill_one(&problem, g, &work, x, r, true)? {
            Some(found) => found,
            None => fill_one(&problem, g, &work, x, r, false)?
                .ok_or_else(|| Error::Internal(format!("no pointer mend found within {r} steps of node {x}")))?,
        };
        first_case.get_or_insert(case);
        work = mu;
        for u in unhappy_near(&problem, g, &work, &changed) {
            if dist[u] == crate::graph::UNREACHED {
                return Err(Error::Internal(format!("repair around node {v} leaves radius {r}")));
            }
            work.set(u, None);
            queue.push_back(u);
        }
    }
    if let Some(u) = (0..g.n()).find(|&u| work.get(u) != lam.get(u) && dist[u] == crate::graph::UNREACHED) {
        return Err(Error::Internal(format!("node {u} changed outside radius {r}")));
    }
    Ok((Mend::from_diff(g, lam, &work, v), first_case.expect("v was filled")))
}

/// First case that fills `x`. Strict mode also keeps every node around the
/// change happy; loose mode only the changed nodes.
fn fill_one(
    problem: &LclProblem,
    g: &Graph,
    lam: &PartialLabeling,
    x: NodeId,
    r: usize,
    strict: bool,
) -> Result<Option<(PartialLabeling, PointerCase, Vec<NodeId>)>> {
    let accept = |mu: &PartialLabeling, changed: &[NodeId]| {
        if strict {
            unhappy_near(problem, g, mu, changed).is_empty()
        } else {
            changed.iter().all(|&u| problem.happy_at(g, mu.as_slice(), u))
        }
    };
    let with = |l: Label| {
        let mut mu = lam.clone();
        mu.set(x, Some(l));
        mu
    };
    if !satisfies_grid(g, x) {
        return Ok(Some((with(FLAG), PointerCase::Flag, vec![x])));
    }
    if g.neighbors(x).all(|w| matches!(lam.get(w), None | Some(ZERO) | Some(FLAG))) {
        let mu = with(ZERO);
        if accept(&mu, &[x]) {
            return Ok(Some((mu, PointerCase::Zero, vec![x])));
        }
    }
    for (p, l) in MOVES {
        let Some(w) = g.follow(x, p) else { continue };
        let Some(lw) = lam.get(w) else { continue };
        if pointer_port(lw).is_some() && !points_at(g, w, lw, x) && target_allowed(l, lw) {
            let mu = with(l);
            if accept(&mu, &[x]) {
                return Ok(Some((mu, PointerCase::SafePointer, vec![x])));
            }
        }
    }
    let search = MoveSearch { g, start: x, max_steps: r };
    let mut found: Option<(PartialLabeling, Vec<NodeId>)> = None;
    search.run(|y, path| {
        if y == x || !matches!(lam.get(y), None | Some(FLAG)) {
            return Ok(false);
        }
        Ok(try_assign(lam, path, &accept, &mut found))
    })?;
    if let Some((mu, changed)) = found {
        return Ok(Some((mu, PointerCase::ChainToEnd, changed)));
    }
    search.run(|y, path| Ok(y == x && try_assign(lam, path, &accept, &mut found)))?;
    Ok(found.map(|(mu, changed)| (mu, PointerCase::Cycle, changed)))
}

/// Writes the moves of `path` as pointer labels if the nodes are distinct
/// and `accept` approves the result.
fn try_assign(
    lam: &PartialLabeling,
    path: &[(NodeId, Port)],
    accept: &impl Fn(&PartialLabeling, &[NodeId]) -> bool,
    out: &mut Option<(PartialLabeling, Vec<NodeId>)>,
) -> bool {
    let mut nodes: Vec<NodeId> = path.iter().map(|&(x, _)| x).collect();
    nodes.sort_unstable();
    nodes.dedup();
    if nodes.len() != path.len() {
        return false;
    }
    let mut mu = lam.clone();
    for &(x, p) in path {
        let l = MOVES.iter().find(|(q, _)| *q == p).map(|&(_, l)| l).expect("pointer move");
        mu.set(x, Some(l));
    }
    if accept(&mu, &nodes) {
        *out = Some((mu, nodes));
        true
    } else {
        false
    }
}

/// `k×k` torus (`n = k²`) with the hole at `(⌈k/2⌉, ⌈k/2⌉)` and the rest
/// of its row to the right labeled Left; everything else Zero.
/// Coordinates are 1-based.
pub fn lower_bound_instance(n: usize) -> Result<(Graph, PartialLabeling)> {
    let k = (n as f64).sqrt().round() as usize;
    if k * k != n || k < 3 {
        return Err(Error::InvalidParams(format!("pointer lower bound needs a square n >= 9, got {n}")));
    }
    let g = instances::torus(k, k)?;
    let mid = k.div_ceil(2);
    let id = |x: usize, y: usize| instances::grid_id(k, x - 1, y - 1);
    let mut lab = PartialLabeling::complete(&vec![ZERO; n]);
    lab.set(id(mid, mid), None);
    for x in mid + 1..=k {
        lab.set(id(x, mid), Some(LEFT));
    }
    Ok((g, lab))
}

/// Node id of 1-based torus coordinates.
pub fn torus_node(k: usize, x: usize, y: usize) -> NodeId {
    instances::grid_id(k, x - 1, y - 1)
}
