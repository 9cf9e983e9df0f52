//! Diagram view of node-edge-checkable problems on paths and cycles:
//! state classification, restriction to a mendable sub-diagram, walks, and
//! walk-splicing mends.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Port};
use crate::lcl::{self, HappyTable, Label, LclProblem, Mend, PartialLabeling, Verifier, View};

/// `(Γ, C_Edge, C_Node, C_Start, C_End)` over label indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSpec {
    pub labels: Vec<String>,
    pub edge: BTreeSet<(Label, Label)>,
    pub node: BTreeSet<(Label, Label)>,
    pub start: BTreeSet<Label>,
    pub end: BTreeSet<Label>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathSpecJson {
    pub labels: Vec<String>,
    pub edge: Vec<(String, String)>,
    pub node: Vec<(String, String)>,
    pub start: Vec<String>,
    pub end: Vec<String>,
}

impl PathSpec {
    /// Node-output problem: C_Node is equality, every label may start or end.
    pub fn node_labeled(labels: &[&str], edges: &[(Label, Label)], symmetric_closure: bool) -> PathSpec {
        let n = labels.len() as Label;
        let mut edge: BTreeSet<(Label, Label)> = edges.iter().copied().collect();
        if symmetric_closure {
            edge.extend(edges.iter().map(|&(a, b)| (b, a)));
        }
        PathSpec {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            edge,
            node: (0..n).map(|x| (x, x)).collect(),
            start: (0..n).collect(),
            end: (0..n).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.start == self.end
            && self.edge.iter().all(|&(a, b)| self.edge.contains(&(b, a)))
            && self.node.iter().all(|&(a, b)| self.node.contains(&(b, a)))
    }

    /// True when C_Node only relates a label to itself.
    pub fn is_node_labeled(&self) -> bool {
        self.node.iter().all(|&(a, b)| a == b)
    }

    fn name_of(&self, s: &str) -> Result<Label> {
        self.labels
            .iter()
            .position(|l| l == s)
            .map(|i| i as Label)
            .ok_or_else(|| Error::InvalidParams(format!("label `{s}` not declared")))
    }

    pub fn from_json(j: &PathSpecJson) -> Result<PathSpec> {
        let mut spec = PathSpec {
            labels: j.labels.clone(),
            edge: BTreeSet::new(),
            node: BTreeSet::new(),
            start: BTreeSet::new(),
            end: BTreeSet::new(),
        };
        for (a, b) in &j.edge {
            let p = (spec.name_of(a)?, spec.name_of(b)?);
            spec.edge.insert(p);
        }
        for (a, b) in &j.node {
            let p = (spec.name_of(a)?, spec.name_of(b)?);
            spec.node.insert(p);
        }
        for s in &j.start {
            let l = spec.name_of(s)?;
            spec.start.insert(l);
        }
        for s in &j.end {
            let l = spec.name_of(s)?;
            spec.end.insert(l);
        }
        Ok(spec)
    }

    pub fn to_json(&self) -> PathSpecJson {
        let nm = |l: Label| self.labels[l as usize].clone();
        PathSpecJson {
            labels: self.labels.clone(),
            edge: self.edge.iter().map(|&(a, b)| (nm(a), nm(b))).collect(),
            node: self.node.iter().map(|&(a, b)| (nm(a), nm(b))).collect(),
            start: self.start.iter().map(|&a| nm(a)).collect(),
            end: self.end.iter().map(|&a| nm(a)).collect(),
        }
    }

    /// Whether a node labeled `x` is consistent with its predecessor and
    /// successor labels (`None` = path end).
    fn node_ok(&self, x: Label, pred: Option<Label>, succ: Option<Label>) -> bool {
        let in_ok = match pred {
            Some(p) => self.edge.contains(&(p, x)),
            None => self.start.contains(&x),
        };
        let out_ok = match succ {
            Some(s) => self.edge.contains(&(x, s)),
            None => self.end.contains(&x),
        };
        in_ok && out_ok
    }

    /// Generic node-output verifier on paths and cycles. Paths with
    /// Left/Right ports are read as directed; port-less graphs need a
    /// symmetric spec.
    pub fn to_problem(&self, id: &str) -> Result<LclProblem> {
        if !self.is_node_labeled() {
            return Err(Error::InvalidParams(
                "only node-output specs (C_Node within equality) map to graph problems".into(),
            ));
        }
        let spec = Arc::new(self.clone());
        let s2 = spec.clone();
        let verifier = move |view: &View| -> bool {
            let g = view.graph;
            let u = view.center;
            let x = view.center_label();
            if g.degree(u) > 2 {
                return false;
            }
            let directed = g.adj(u).iter().all(|a| matches!(a.port, Some(Port::Left) | Some(Port::Right)))
                && g.degree(u) > 0;
            if directed {
                let pred = g.follow(u, Port::Left).map(|w| view.label(w));
                let succ = g.follow(u, Port::Right).map(|w| view.label(w));
                return spec.node_ok(x, pred, succ);
            }
            if !spec.is_symmetric() {
                return false;
            }
            let nb: Vec<Label> = g.neighbors(u).map(|w| view.label(w)).collect();
            match nb.len() {
                0 => spec.node_ok(x, None, None),
                1 => spec.node_ok(x, Some(nb[0]), None),
                _ => spec.node_ok(x, Some(nb[0]), Some(nb[1])),
            }
        };
        let mut p = LclProblem::new_local(id, self.labels.clone(), 1, verifier).with_pair_filter(
            move |g: &Graph, u: NodeId, lu: Label, w: NodeId, lw: Label| {
                if g.follow(u, Port::Right) == Some(w) {
                    s2.edge.contains(&(lu, lw))
                } else if g.follow(u, Port::Left) == Some(w) {
                    s2.edge.contains(&(lw, lu))
                } else {
                    s2.edge.contains(&(lu, lw)) || s2.edge.contains(&(lw, lu))
                }
            },
        );
        p.path_spec = Some(self.clone());
        Ok(p)
    }

    /// Same problem as `to_problem` in happy-table form (symmetric specs,
    /// port-free, degree at most 2).
    pub fn to_table_problem(&self, id: &str) -> Result<LclProblem> {
        if !self.is_symmetric() {
            return Err(Error::InvalidParams("happy tables need a symmetric spec".into()));
        }
        let mut p = self.to_problem(id)?;
        let n = self.labels.len() as Label;
        let mut table = HappyTable::new();
        for x in 0..n {
            if self.node_ok(x, None, None) {
                table.allow(x, vec![]);
            }
            for y in 0..n {
                if self.node_ok(x, Some(y), None) {
                    table.allow(x, vec![y]);
                }
                for z in y..n {
                    if self.node_ok(x, Some(y), Some(z)) {
                        table.allow(x, vec![y, z]);
                    }
                }
            }
        }
        p.verifier = Verifier::Table(Arc::new(table));
        Ok(p)
    }
}

pub type StateId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub spec: PathSpec,
    /// States in ascending label-pair order.
    pub states: Vec<(Label, Label)>,
    pub succ: Vec<Vec<StateId>>,
    pub start: Vec<bool>,
    pub end: Vec<bool>,
    pub symmetric: bool,
}

pub fn build_diagram(spec: &PathSpec) -> Diagram {
    let states: Vec<(Label, Label)> = spec.edge.iter().copied().collect();
    let succ = states
        .iter()
        .map(|&(_, b)| {
            states
                .iter()
                .enumerate()
                .filter(|(_, &(c, _))| spec.node.contains(&(b, c)))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    Diagram {
        start: states.iter().map(|(a, _)| spec.start.contains(a)).collect(),
        end: states.iter().map(|(_, b)| spec.end.contains(b)).collect(),
        symmetric: spec.is_symmetric(),
        spec: spec.clone(),
        states,
        succ,
    }
}

impl Diagram {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state_id(&self, s: (Label, Label)) -> Option<StateId> {
        self.states.binary_search(&s).ok()
    }

    pub fn state_names(&self, s: StateId) -> (String, String) {
        let (a, b) = self.states[s];
        (self.spec.labels[a as usize].clone(), self.spec.labels[b as usize].clone())
    }

    pub fn parse_state(&self, s: &str) -> Result<StateId> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::InvalidParams(format!("state `{s}` is not of the form a,b")))?;
        let a = self.spec.name_of(a.trim())?;
        let b = self.spec.name_of(b.trim())?;
        self.state_id((a, b)).ok_or_else(|| Error::InvalidParams(format!("`{s}` is not a state")))
    }

    /// Sub-diagram on `keep`; start/end labels shrink to those still used.
    pub fn induced(&self, keep: &[StateId]) -> Diagram {
        let mut spec = self.spec.clone();
        spec.edge = keep.iter().map(|&s| self.states[s]).collect();
        spec.start = keep.iter().filter(|&&s| self.start[s]).map(|&s| self.states[s].0).collect();
        spec.end = keep.iter().filter(|&&s| self.end[s]).map(|&s| self.states[s].1).collect();
        build_diagram(&spec)
    }

    /// Strongly connected components; ids ordered by smallest member.
    pub fn scc_ids(&self) -> Vec<usize> {
        let n = self.len();
        let reach = self.reachability();
        let mut id = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if id[s] != usize::MAX {
                continue;
            }
            for t in s..n {
                if t == s || (reach[s][t] && reach[t][s]) {
                    id[t] = next;
                }
            }
            next += 1;
        }
        id
    }

    /// `reach[s][t]`: a walk of length >= 1 leads from s to t.
    fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut reach = vec![vec![false; n]; n];
        for (s, row) in reach.iter_mut().enumerate() {
            let mut stack: Vec<StateId> = self.succ[s].clone();
            while let Some(t) = stack.pop() {
                if !row[t] {
                    row[t] = true;
                    stack.extend(self.succ[t].iter().copied());
                }
            }
        }
        reach
    }

    fn max_walk_len(&self) -> usize {
        let n = self.len();
        n * n + 2 * n
    }

    /// `out[l]`: some walk of length exactly l goes from `from` to `to`, for l <= max_len.
    pub fn walk_lengths(&self, from: StateId, to: StateId, max_len: usize) -> Vec<bool> {
        let n = self.len();
        let mut cur = vec![false; n];
        cur[from] = true;
        let mut out = vec![cur[to]];
        for _ in 0..max_len {
            let mut nxt = vec![false; n];
            for s in 0..n {
                if cur[s] {
                    for &t in &self.succ[s] {
                        nxt[t] = true;
                    }
                }
            }
            out.push(nxt[to]);
            cur = nxt;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateClass {
    pub repeatable: bool,
    pub loop_: bool,
    pub flexible: bool,
    /// Closed walks exist for every length >= this value (flexible states).
    pub flexibility: Option<usize>,
    pub mirror_flexible: bool,
    pub mirror_flexibility: Option<usize>,
    pub scc_id: usize,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Least K such that `lens[l]` holds for every K <= l <= max, given that at
/// least `min_tail` trailing entries hold.
fn eventual_bound(lens: &[bool], min_tail: usize) -> Option<usize> {
    let last_false = (1..lens.len()).rev().find(|&l| !lens[l]);
    let k = last_false.map_or(1, |l| l + 1);
    (lens.len().saturating_sub(k) >= min_tail.max(1)).then_some(k)
}

pub fn classify_states(d: &Diagram) -> Result<Vec<StateClass>> {
    let n = d.len();
    let scc = d.scc_ids();
    let lmax = d.max_walk_len();
    let mut out = Vec::with_capacity(n);
    for s in 0..n {
        let closed = d.walk_lengths(s, s, lmax);
        let repeatable = closed.iter().skip(1).any(|&b| b);
        let loop_ = d.succ[s].contains(&s);
        let g = (1..closed.len()).filter(|&l| closed[l]).fold(0, gcd);
        let (flexible, flexibility) = if g == 1 {
            match eventual_bound(&closed, n) {
                Some(k) => (true, Some(k)),
                None => {
                    return Err(Error::Internal(format!(
                        "state {s} has period 1 but no closed-walk tail within {lmax}"
                    )))
                }
            }
        } else {
            (false, None)
        };
        let (a, b) = d.states[s];
        let (mirror_flexible, mirror_flexibility) = match d.state_id((b, a)) {
            Some(m) => {
                let lens = d.walk_lengths(s, m, lmax);
                match eventual_bound(&lens, n) {
                    Some(k) => (true, Some(k)),
                    None => (false, None),
                }
            }
            None => (false, None),
        };
        out.push(StateClass {
            repeatable,
            loop_,
            flexible,
            flexibility,
            mirror_flexible,
            mirror_flexibility,
            scc_id: scc[s],
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RestrictMode {
    Directed,
    UndirectedPath,
    UndirectedCycle,
}

impl std::str::FromStr for RestrictMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<RestrictMode> {
        match s {
            "directed" => Ok(RestrictMode::Directed),
            "undirected_path" | "undirected-path" => Ok(RestrictMode::UndirectedPath),
            "undirected_cycle" | "undirected-cycle" => Ok(RestrictMode::UndirectedCycle),
            _ => Err(Error::InvalidParams(format!("unknown restriction mode `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub diagram: Diagram,
    pub mode: RestrictMode,
    /// Largest flexibility parameter among the kept flexible states.
    pub flexibility: usize,
    /// Number of non-repeatable attachment states kept.
    pub q: usize,
}

impl Restriction {
    /// Radius the walk-splicing mender stays within.
    pub fn mend_bound(&self) -> usize {
        self.flexibility + self.q + 1
    }
}

pub fn restrict(d: &Diagram, mode: RestrictMode) -> Result<Restriction> {
    if mode != RestrictMode::Directed && !d.symmetric {
        return Err(Error::Precondition("undirected restriction needs a symmetric diagram".into()));
    }
    let classes = classify_states(d)?;
    let mut comps: BTreeMap<usize, Vec<StateId>> = BTreeMap::new();
    for (s, c) in classes.iter().enumerate() {
        comps.entry(c.scc_id).or_default().push(s);
    }
    let swap_closed = |members: &[StateId]| {
        members.iter().all(|&s| {
            let (a, b) = d.states[s];
            d.state_id((b, a)).is_some_and(|m| members.contains(&m))
        })
    };
    let mut candidates: Vec<Vec<StateId>> = comps
        .into_values()
        .filter(|m| m.iter().any(|&s| classes[s].flexible))
        .filter(|m| mode == RestrictMode::Directed || swap_closed(m))
        .collect();
    candidates.sort_by(|a, b| {
        let ka: Vec<_> = a.iter().map(|&s| d.states[s]).collect();
        let kb: Vec<_> = b.iter().map(|&s| d.states[s]).collect();
        a.len().cmp(&b.len()).then(ka.cmp(&kb))
    });
    let core = candidates.into_iter().next().ok_or(Error::NotRestrictable)?;
    let flexibility = core.iter().filter_map(|&s| classes[s].flexibility).max().unwrap_or(1);
    let mut keep: BTreeSet<StateId> = core.iter().copied().collect();
    if mode == RestrictMode::UndirectedPath {
        let in_core: Vec<bool> = (0..d.len()).map(|s| keep.contains(&s)).collect();
        let nonrep: Vec<bool> = classes.iter().map(|c| !c.repeatable).collect();
        // states reachable from a start state through non-repeatable states only
        let from_start = closure(d, (0..d.len()).filter(|&s| d.start[s] && nonrep[s]), &nonrep, false);
        let to_core = closure(
            d,
            (0..d.len()).filter(|&s| nonrep[s] && d.succ[s].iter().any(|&t| in_core[t])),
            &nonrep,
            true,
        );
        let from_core = closure(
            d,
            (0..d.len()).filter(|&s| nonrep[s] && core.iter().any(|&c| d.succ[c].contains(&s))),
            &nonrep,
            false,
        );
        let to_end = closure(d, (0..d.len()).filter(|&s| d.end[s] && nonrep[s]), &nonrep, true);
        for s in 0..d.len() {
            if (from_start[s] && to_core[s]) || (from_core[s] && to_end[s]) {
                keep.insert(s);
            }
        }
    }
    let keep: Vec<StateId> = keep.into_iter().collect();
    let q = keep.len() - core.len();
    Ok(Restriction { diagram: d.induced(&keep), mode, flexibility, q })
}

/// States reachable (or co-reachable) from `seeds` through states allowed by `through`.
fn closure(d: &Diagram, seeds: impl Iterator<Item = StateId>, through: &[bool], backwards: bool) -> Vec<bool> {
    let n = d.len();
    let mut pred: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for s in 0..n {
        for &t in &d.succ[s] {
            pred[t].push(s);
        }
    }
    let mut seen = vec![false; n];
    let mut stack: Vec<StateId> = seeds.collect();
    for &s in &stack {
        seen[s] = true;
    }
    while let Some(s) = stack.pop() {
        let next = if backwards { &pred[s] } else { &d.succ[s] };
        for &t in next {
            if through[t] && !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    seen
}

/// Lexicographically first walk with exactly `len` transitions, as the
/// visited states (`len + 1` of them).
pub fn walk(d: &Diagram, from: StateId, to: StateId, len: usize) -> Option<Vec<StateId>> {
    let n = d.len();
    // can[l][s]: `to` reachable from s in exactly l steps
    let mut can = vec![vec![false; n]; len + 1];
    can[0][to] = true;
    for l in 1..=len {
        for s in 0..n {
            can[l][s] = d.succ[s].iter().any(|&t| can[l - 1][t]);
        }
    }
    if !can[len][from] {
        return None;
    }
    let mut out = vec![from];
    let mut cur = from;
    for l in (0..len).rev() {
        cur = *d.succ[cur].iter().find(|&&t| can[l][t])?;
        out.push(cur);
    }
    Some(out)
}

/// Orders the nodes of a path or cycle starting at a path end (or node 0 on
/// a cycle), following Right ports when present.
pub fn path_order(g: &Graph) -> Result<(Vec<NodeId>, bool)> {
    let n = g.n();
    if n == 0 || g.max_degree() > 2 || !g.is_connected() {
        return Err(Error::Precondition("graph is not a path or cycle".into()));
    }
    let is_cycle = g.edge_count() == n && n >= 3;
    if !is_cycle && g.edge_count() != n - 1 {
        return Err(Error::Precondition("graph is not a path or cycle".into()));
    }
    let ported = g.has_ports();
    let first = if is_cycle {
        0
    } else if ported {
        (0..n).find(|&v| g.follow(v, Port::Left).is_none()).unwrap_or(0)
    } else {
        (0..n).find(|&v| g.degree(v) <= 1).unwrap_or(0)
    };
    let mut order = vec![first];
    let mut prev = usize::MAX;
    let mut cur = first;
    while order.len() < n {
        let next = if ported {
            g.follow(cur, Port::Right)
        } else {
            g.neighbors(cur).filter(|&w| w != prev).min()
        };
        let next = next.ok_or_else(|| Error::Precondition("path ports are inconsistent".into()))?;
        prev = cur;
        cur = next;
        order.push(cur);
    }
    Ok((order, is_cycle))
}

/// Mends the hole at `v` by blanking a growing window around it and
/// splicing a diagram walk between the window's boundary states.
pub fn mend_path(r: &Restriction, g: &Graph, lam: &PartialLabeling, v: NodeId) -> Result<Mend> {
    let d = &r.diagram;
    let problem = d.spec.to_problem("restricted")?;
    problem.validate(g, lam)?;
    if lam.get(v).is_some() {
        return Err(Error::Precondition(format!("node {v} is not a hole")));
    }
    let usable: BTreeSet<Label> = d.states.iter().flat_map(|&(a, b)| [a, b]).collect();
    if let Some(u) = (0..g.n()).find(|&u| lam.get(u).is_some_and(|l| !usable.contains(&l))) {
        return Err(Error::InvalidPartialSolution(format!(
            "node {u} carries a label outside the restricted diagram"
        )));
    }
    if !lcl::is_accepted(&problem, g, lam)? {
        return Err(Error::Precondition("labeling not accepted by the restricted problem".into()));
    }
    let (order, is_cycle) = path_order(g)?;
    let n = order.len();
    let pos_of = {
        let mut p = vec![0; n];
        for (i, &u) in order.iter().enumerate() {
            p[u] = i;
        }
        p
    };
    let pv = pos_of[v];
    let edge = &d.spec.edge;
    for rho in 0..=r.mend_bound().max(n) {
        let whole = if is_cycle { 2 * rho + 1 >= n } else { pv < rho + 1 && pv + rho + 1 >= n };
        let window: Vec<usize> = if whole {
            if is_cycle {
                (0..n).map(|i| (pv + i) % n).collect()
            } else {
                (0..n).collect()
            }
        } else if is_cycle {
            (0..=2 * rho).map(|i| (pv + n - rho + i) % n).collect()
        } else {
            (pv.saturating_sub(rho)..=(pv + rho).min(n - 1)).collect()
        };
        let m = window.len();
        let left = if whole && is_cycle {
            None
        } else if is_cycle {
            Some((window[0] + n - 1) % n)
        } else {
            window[0].checked_sub(1)
        };
        let right = if whole && is_cycle {
            None
        } else if is_cycle {
            Some((window[m - 1] + 1) % n)
        } else {
            Some(window[m - 1] + 1).filter(|&i| i < n)
        };
        let lab_at = |i: usize| lam.get(order[i]);
        // allowed first labels
        let first_ok = |x: Label| match left {
            None if !is_cycle => d.spec.start.contains(&x),
            None => true,
            Some(i) => lab_at(i).is_none_or(|p| edge.contains(&(p, x))),
        };
        let last_ok = |x: Label| match right {
            None if !is_cycle => d.spec.end.contains(&x),
            None => true,
            Some(i) => lab_at(i).is_none_or(|s| edge.contains(&(x, s))),
        };
        let labels: Vec<Label> = usable.iter().copied().collect();
        let firsts: Vec<Label> = if whole && is_cycle { labels.clone() } else { labels.iter().copied().filter(|&x| first_ok(x)).collect() };
        let mut found: Option<Vec<Label>> = None;
        'outer: for &x0 in &firsts {
            // feasible[i][x]: positions i..m-1 can be filled with x at i
            let mut feasible = vec![vec![false; labels.len()]; m];
            for (xi, &x) in labels.iter().enumerate() {
                let closes = if whole && is_cycle { edge.contains(&(x, x0)) } else { last_ok(x) };
                feasible[m - 1][xi] = closes;
            }
            for i in (0..m.saturating_sub(1)).rev() {
                for (xi, &x) in labels.iter().enumerate() {
                    feasible[i][xi] = labels
                        .iter()
                        .enumerate()
                        .any(|(yi, &y)| feasible[i + 1][yi] && edge.contains(&(x, y)));
                }
            }
            let x0i = labels.iter().position(|&x| x == x0).unwrap();
            if !feasible[0][x0i] {
                continue;
            }
            let mut seq = vec![x0];
            for i in 1..m {
                let prev = seq[i - 1];
                match labels
                    .iter()
                    .enumerate()
                    .find(|&(yi, &y)| feasible[i][yi] && edge.contains(&(prev, y)))
                {
                    Some((_, &y)) => seq.push(y),
                    None => continue 'outer,
                }
            }
            found = Some(seq);
            break;
        }
        let Some(seq) = found else { continue };
        let mut mu = lam.clone();
        for (i, &p) in window.iter().enumerate() {
            mu.set(order[p], Some(seq[i]));
        }
        if lcl::is_mend(&problem, g, lam, &mu, v, rho)? {
            return Ok(Mend::from_diff(g, lam, &mu, v));
        }
    }
    Err(Error::InvalidPartialSolution(format!("no spliced walk mends node {v}")))
}
