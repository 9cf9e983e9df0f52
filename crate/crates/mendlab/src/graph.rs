//! Port-labeled undirected graphs with dense node ids.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type NodeId = usize;

pub const UNREACHED: usize = usize::MAX;

/// Label attached to one endpoint of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Port {
    Up,
    Down,
    Left,
    Right,
    Parent,
    Child(u8),
}

impl Port {
    pub const GRID: [Port; 4] = [Port::Up, Port::Down, Port::Left, Port::Right];

    pub fn is_grid(self) -> bool {
        matches!(self, Port::Up | Port::Down | Port::Left | Port::Right)
    }

    /// The label the far endpoint carries on an aligned grid.
    pub fn opposite(self) -> Option<Port> {
        match self {
            Port::Up => Some(Port::Down),
            Port::Down => Some(Port::Up),
            Port::Left => Some(Port::Right),
            Port::Right => Some(Port::Left),
            _ => None,
        }
    }
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Port::Up => write!(f, "Up"),
            Port::Down => write!(f, "Down"),
            Port::Left => write!(f, "Left"),
            Port::Right => write!(f, "Right"),
            Port::Parent => write!(f, "Parent"),
            Port::Child(i) => write!(f, "Child{i}"),
        }
    }
}

impl FromStr for Port {
    type Err = Error;
    fn from_str(s: &str) -> Result<Port> {
        Ok(match s {
            "Up" => Port::Up,
            "Down" => Port::Down,
            "Left" => Port::Left,
            "Right" => Port::Right,
            "Parent" => Port::Parent,
            _ => {
                let idx = s
                    .strip_prefix("Child")
                    .and_then(|d| d.parse::<u8>().ok())
                    .ok_or_else(|| Error::InvalidGraph(format!("unknown port label `{s}`")))?;
                Port::Child(idx)
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Adj {
    pub to: NodeId,
    pub port: Option<Port>,
}

/// Simple undirected graph; adjacency lists keep insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<Adj>>,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph without the simple-graph checks. Only meant for
    /// exercising the structural checkers on malformed inputs.
    pub fn from_raw_adjacency(adj: Vec<Vec<Adj>>) -> Graph {
        Graph { adj }
    }

    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Graph> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> Result<()> {
        self.add_edge_ports(u, v, None, None)
    }

    pub fn add_edge_ports(
        &mut self,
        u: NodeId,
        v: NodeId,
        pu: Option<Port>,
        pv: Option<Port>,
    ) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!("edge ({u},{v}) out of range for {n} nodes")));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::InvalidGraph(format!("parallel edge ({u},{v})")));
        }
        for (x, p) in [(u, pu), (v, pv)] {
            if let Some(p) = p {
                if self.adj[x].iter().any(|a| a.port == Some(p)) {
                    return Err(Error::InvalidGraph(format!("port {p} used twice at node {x}")));
                }
            }
        }
        self.adj[u].push(Adj { to: v, port: pu });
        self.adj[v].push(Adj { to: u, port: pv });
        Ok(())
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adj[u].iter().any(|a| a.to == v)
    }

    pub fn adj(&self, v: NodeId) -> &[Adj] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adj[v].iter().map(|a| a.to)
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out: Vec<_> = (0..self.n())
            .flat_map(|u| self.adj[u].iter().filter(move |a| a.to > u).map(move |a| (u, a.to)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn has_ports(&self) -> bool {
        self.adj.iter().flatten().any(|a| a.port.is_some())
    }

    /// Neighbor reached through `port` at `v`.
    pub fn follow(&self, v: NodeId, port: Port) -> Option<NodeId> {
        self.adj[v].iter().find(|a| a.port == Some(port)).map(|a| a.to)
    }

    /// Follows a sequence of ports; `None` if any step is missing.
    pub fn follow_path(&self, v: NodeId, ports: &[Port]) -> Option<NodeId> {
        ports.iter().try_fold(v, |cur, &p| self.follow(cur, p))
    }

    /// Port label at `v` of the edge towards `to`.
    pub fn port_towards(&self, v: NodeId, to: NodeId) -> Option<Port> {
        self.adj[v].iter().find(|a| a.to == to).and_then(|a| a.port)
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.follow(v, Port::Parent)
    }

    /// Children ordered by child index.
    pub fn children(&self, v: NodeId) -> Vec<NodeId> {
        let mut ch: Vec<(u8, NodeId)> = self.adj[v]
            .iter()
            .filter_map(|a| match a.port {
                Some(Port::Child(i)) => Some((i, a.to)),
                _ => None,
            })
            .collect();
        ch.sort_unstable();
        ch.into_iter().map(|(_, c)| c).collect()
    }

    pub fn root(&self) -> Option<NodeId> {
        if self.n() == 1 {
            return Some(0);
        }
        if !self.adj.iter().flatten().any(|a| a.port == Some(Port::Parent)) {
            return None;
        }
        (0..self.n()).find(|&v| self.parent(v).is_none())
    }

    /// BFS distances from `src`, truncated at `limit` (nodes beyond get `UNREACHED`).
    pub fn distances_within(&self, src: NodeId, limit: usize) -> Vec<usize> {
        self.multi_source_distances(&[src], limit)
    }

    pub fn distances(&self, src: NodeId) -> Vec<usize> {
        self.distances_within(src, usize::MAX)
    }

    pub fn multi_source_distances(&self, srcs: &[NodeId], limit: usize) -> Vec<usize> {
        let mut dist = vec![UNREACHED; self.n()];
        let mut q = VecDeque::new();
        for &s in srcs {
            if dist[s] != 0 {
                dist[s] = 0;
                q.push_back(s);
            }
        }
        while let Some(u) = q.pop_front() {
            let du = dist[u];
            if du >= limit {
                continue;
            }
            for a in &self.adj[u] {
                if dist[a.to] == UNREACHED {
                    dist[a.to] = du + 1;
                    q.push_back(a.to);
                }
            }
        }
        dist
    }

    /// Nodes within distance `r` of `v`, ascending by id.
    pub fn ball(&self, v: NodeId, r: usize) -> Vec<NodeId> {
        let mut out = Vec::new();
        self.ball_into(v, r, &mut out);
        out
    }

    /// BFS ball without allocating a full distance vector.
    pub fn ball_into(&self, v: NodeId, r: usize, out: &mut Vec<NodeId>) {
        out.clear();
        out.push(v);
        let mut seen: std::collections::HashSet<NodeId> = std::collections::HashSet::new();
        seen.insert(v);
        let mut frontier_start = 0;
        for _ in 0..r {
            let frontier_end = out.len();
            if frontier_start == frontier_end {
                break;
            }
            for i in frontier_start..frontier_end {
                let u = out[i];
                for a in &self.adj[u] {
                    if seen.insert(a.to) {
                        out.push(a.to);
                    }
                }
            }
            frontier_start = frontier_end;
        }
        out.sort_unstable();
    }

    /// Nodes within distance `r` of `v` with their distances, in BFS order.
    pub fn ball_with_dist(&self, v: NodeId, r: usize) -> Vec<(NodeId, usize)> {
        let mut out = vec![(v, 0)];
        let mut seen: std::collections::HashSet<NodeId> = std::collections::HashSet::new();
        seen.insert(v);
        let mut i = 0;
        while i < out.len() {
            let (u, d) = out[i];
            i += 1;
            if d == r {
                continue;
            }
            for a in &self.adj[u] {
                if seen.insert(a.to) {
                    out.push((a.to, d + 1));
                }
            }
        }
        out
    }

    pub fn dist(&self, u: NodeId, v: NodeId) -> Option<usize> {
        let d = self.distances(u)[v];
        (d != UNREACHED).then_some(d)
    }

    pub fn eccentricity(&self, v: NodeId) -> usize {
        self.distances(v).into_iter().filter(|&d| d != UNREACHED).max().unwrap_or(0)
    }

    /// Largest finite distance over all pairs.
    pub fn diameter(&self) -> usize {
        (0..self.n()).map(|v| self.eccentricity(v)).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.distances(0).iter().all(|&d| d != UNREACHED)
    }

    pub fn is_tree(&self) -> bool {
        self.n() > 0 && self.edge_count() == self.n() - 1 && self.is_connected()
    }

    /// Connected components of the subgraph induced by `keep`, each sorted.
    pub fn components(&self, keep: &[bool]) -> Vec<Vec<NodeId>> {
        let mut seen = vec![false; self.n()];
        let mut comps = Vec::new();
        for s in 0..self.n() {
            if !keep[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for a in &self.adj[u] {
                    if keep[a.to] && !seen[a.to] {
                        seen[a.to] = true;
                        comp.push(a.to);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Relabels node `v` as `perm[v]`, keeping ports and adjacency order.
    pub fn permuted(&self, perm: &[NodeId]) -> Result<Graph> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidParams("not a permutation".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for v in 0..n {
            adj[perm[v]] = self.adj[v].iter().map(|a| Adj { to: perm[a.to], port: a.port }).collect();
        }
        Ok(Graph { adj })
    }

    /// Same graph with every adjacency list sorted by neighbor id.
    pub fn canonical(&self) -> Graph {
        let mut adj = self.adj.clone();
        for a in &mut adj {
            a.sort_by_key(|x| x.to);
        }
        Graph { adj }
    }

    /// The graph whose edges join nodes at distance 1..=k.
    pub fn power(&self, k: usize) -> Graph {
        let mut g = Graph::new(self.n());
        let mut ball = Vec::new();
        for v in 0..self.n() {
            self.ball_into(v, k, &mut ball);
            for &u in &ball {
                if u != v {
                    g.adj[v].push(Adj { to: u, port: None });
                }
            }
        }
        g
    }
}
