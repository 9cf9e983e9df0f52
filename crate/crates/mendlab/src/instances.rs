//! Deterministic graph generators and the adversarial partial labelings.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Port};
use crate::lcl::PartialLabeling;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    Path,
    Cycle,
    Grid,
    Torus,
    CompleteBinaryTree,
    RegularTree,
    RandomTree,
    RigidTreeV1,
    RigidTreeV2,
    OverlapCyclesTree,
}

impl std::str::FromStr for InstanceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<InstanceKind> {
        serde_json::from_value(serde_json::Value::String(s.replace('-', "_")))
            .map_err(|_| Error::InvalidParams(format!("unknown instance kind `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub kind: InstanceKind,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub width: Option<usize>,
    #[serde(default)]
    pub height: Option<usize>,
    #[serde(default)]
    pub degree: Option<usize>,
    #[serde(default)]
    pub depth: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl InstanceSpec {
    pub fn new(kind: InstanceKind) -> InstanceSpec {
        InstanceSpec { kind, n: None, width: None, height: None, degree: None, depth: None, seed: None }
    }

    pub fn path(n: usize) -> InstanceSpec {
        InstanceSpec { n: Some(n), ..InstanceSpec::new(InstanceKind::Path) }
    }

    pub fn cycle(n: usize) -> InstanceSpec {
        InstanceSpec { n: Some(n), ..InstanceSpec::new(InstanceKind::Cycle) }
    }

    pub fn grid(width: usize, height: usize) -> InstanceSpec {
        InstanceSpec { width: Some(width), height: Some(height), ..InstanceSpec::new(InstanceKind::Grid) }
    }

    pub fn torus(width: usize, height: usize) -> InstanceSpec {
        InstanceSpec { width: Some(width), height: Some(height), ..InstanceSpec::new(InstanceKind::Torus) }
    }

    pub fn binary_tree(depth: usize) -> InstanceSpec {
        InstanceSpec { depth: Some(depth), ..InstanceSpec::new(InstanceKind::CompleteBinaryTree) }
    }

    pub fn regular_tree(degree: usize, depth: usize) -> InstanceSpec {
        InstanceSpec { degree: Some(degree), depth: Some(depth), ..InstanceSpec::new(InstanceKind::RegularTree) }
    }

    pub fn random_tree(n: usize, seed: u64) -> InstanceSpec {
        InstanceSpec { n: Some(n), seed: Some(seed), ..InstanceSpec::new(InstanceKind::RandomTree) }
    }

    /// Same family at a different size; the size parameter depends on the kind.
    pub fn with_size(&self, size: usize) -> InstanceSpec {
        let mut s = self.clone();
        match s.kind {
            InstanceKind::Path | InstanceKind::Cycle | InstanceKind::RandomTree => s.n = Some(size),
            InstanceKind::Grid | InstanceKind::Torus => {
                s.width = Some(size);
                s.height = Some(size);
            }
            _ => s.depth = Some(size),
        }
        s
    }
}

fn need(v: Option<usize>, what: &str) -> Result<usize> {
    v.ok_or_else(|| Error::InvalidParams(format!("missing parameter `{what}`")))
}

pub fn generate(spec: &InstanceSpec) -> Result<Graph> {
    match spec.kind {
        InstanceKind::Path => path(need(spec.n, "n")?),
        InstanceKind::Cycle => cycle(need(spec.n, "n")?),
        InstanceKind::Grid => grid(need(spec.width, "width")?, need(spec.height, "height")?),
        InstanceKind::Torus => torus(need(spec.width, "width")?, need(spec.height, "height")?),
        InstanceKind::CompleteBinaryTree => regular_tree_impl(2, need(spec.depth, "depth")?, false),
        InstanceKind::RegularTree => {
            let d = need(spec.degree, "degree")?;
            if d < 2 {
                return Err(Error::InvalidParams("regular tree degree must be >= 2".into()));
            }
            regular_tree_impl(d, need(spec.depth, "depth")?, true)
        }
        InstanceKind::RandomTree => {
            let seed = spec.seed.ok_or_else(|| Error::InvalidParams("random_tree needs a seed".into()))?;
            random_tree(need(spec.n, "n")?, seed)
        }
        InstanceKind::RigidTreeV1 | InstanceKind::RigidTreeV2 => {
            regular_tree_impl(2, need(spec.depth, "depth")?, false)
        }
        InstanceKind::OverlapCyclesTree => {
            Ok(crate::problems::trees::overlap_cycles_instance(need(spec.depth, "depth")?)?.0)
        }
    }
}

/// Path with Right ports pointing to the next node, Left to the previous.
pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParams("path needs n >= 1".into()));
    }
    let mut g = Graph::new(n);
    for i in 1..n {
        g.add_edge_ports(i - 1, i, Some(Port::Right), Some(Port::Left))?;
    }
    Ok(g)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParams("cycle needs n >= 3".into()));
    }
    let mut g = path(n)?;
    g.add_edge_ports(n - 1, 0, Some(Port::Right), Some(Port::Left))?;
    Ok(g)
}

/// Node `(x, y)` has id `y * width + x`; Up increases y, Right increases x.
pub fn grid_id(width: usize, x: usize, y: usize) -> NodeId {
    y * width + x
}

pub fn grid(width: usize, height: usize) -> Result<Graph> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidParams("grid needs positive sides".into()));
    }
    let mut g = Graph::new(width * height);
    for y in 0..height {
        for x in 0..width {
            let v = grid_id(width, x, y);
            if x + 1 < width {
                g.add_edge_ports(v, grid_id(width, x + 1, y), Some(Port::Right), Some(Port::Left))?;
            }
            if y + 1 < height {
                g.add_edge_ports(v, grid_id(width, x, y + 1), Some(Port::Up), Some(Port::Down))?;
            }
        }
    }
    Ok(g)
}

/// Aligned torus; both sides at least 3 so it stays simple.
pub fn torus(width: usize, height: usize) -> Result<Graph> {
    if width < 3 || height < 3 {
        return Err(Error::InvalidParams("torus needs width, height >= 3".into()));
    }
    let mut g = Graph::new(width * height);
    for y in 0..height {
        for x in 0..width {
            let v = grid_id(width, x, y);
            g.add_edge_ports(v, grid_id(width, (x + 1) % width, y), Some(Port::Right), Some(Port::Left))?;
            g.add_edge_ports(v, grid_id(width, x, (y + 1) % height), Some(Port::Up), Some(Port::Down))?;
        }
    }
    Ok(g)
}

/// BFS-numbered rooted tree. Every internal node has `arity` children,
/// plus one more at the root when `root_extra`.
fn regular_tree_impl(arity: usize, depth: usize, root_extra: bool) -> Result<Graph> {
    let child_arity = if root_extra { arity - 1 } else { arity };
    let mut level = vec![0usize];
    let mut parents: Vec<(NodeId, NodeId, u8)> = Vec::new();
    let mut next = 1;
    for _ in 0..depth {
        let mut nxt = Vec::new();
        for &p in &level {
            let k = if p == 0 && root_extra { arity } else { child_arity };
            for i in 0..k {
                parents.push((p, next, i as u8));
                nxt.push(next);
                next += 1;
            }
        }
        level = nxt;
    }
    let mut g = Graph::new(next);
    for (p, c, i) in parents {
        g.add_edge_ports(p, c, Some(Port::Child(i)), Some(Port::Parent))?;
    }
    Ok(g)
}

pub fn complete_binary_tree(depth: usize) -> Result<Graph> {
    regular_tree_impl(2, depth, false)
}

/// Root has `degree` children, every other internal node `degree - 1`.
pub fn regular_tree(degree: usize, depth: usize) -> Result<Graph> {
    generate(&InstanceSpec::regular_tree(degree, depth))
}

/// Uniform labeled tree from a seeded Prüfer sequence; no ports.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParams("random tree needs n >= 1".into()));
    }
    let mut g = Graph::new(n);
    if n == 1 {
        return Ok(g);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let prufer: Vec<NodeId> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &p in &prufer {
        degree[p] += 1;
    }
    let mut leaves: std::collections::BinaryHeap<std::cmp::Reverse<NodeId>> =
        (0..n).filter(|&v| degree[v] == 1).map(std::cmp::Reverse).collect();
    for &p in &prufer {
        let std::cmp::Reverse(leaf) = leaves.pop().expect("prufer decoding keeps a leaf");
        g.add_edge(leaf, p)?;
        degree[p] -= 1;
        if degree[p] == 1 {
            leaves.push(std::cmp::Reverse(p));
        }
    }
    let std::cmp::Reverse(a) = leaves.pop().unwrap();
    let std::cmp::Reverse(b) = leaves.pop().unwrap();
    g.add_edge(a, b)?;
    Ok(g)
}

/// Uniform random permutation of `0..n`.
pub fn random_permutation(n: usize, seed: u64) -> Vec<NodeId> {
    let mut p: Vec<NodeId> = (0..n).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

/// Adversarial instance for the named problem. `n` is the node count for
/// ab123 and pointer_lcl and the recursion depth for the tree problems.
pub fn lower_bound_instance(problem_id: &str, n: usize) -> Result<(Graph, PartialLabeling)> {
    match problem_id {
        "ab123" => ab123_lower_bound(n),
        "pointer_lcl" => crate::pointer::lower_bound_instance(n),
        "binary3col_rigid_v1" => crate::problems::trees::rigid_instance(1, n),
        "binary3col_rigid_v2" => crate::problems::trees::rigid_instance(2, n),
        "overlap_cycles" => crate::problems::trees::overlap_cycles_instance(n),
        other => Err(Error::UnknownProblem(other.to_string())),
    }
}

/// Two incompatible A/B 2-colorings meeting at a hole in the middle.
fn ab123_lower_bound(n: usize) -> Result<(Graph, PartialLabeling)> {
    if n % 2 == 0 || n < 3 {
        return Err(Error::InvalidParams("ab123 lower bound needs odd n >= 3".into()));
    }
    let k = n / 2;
    let problem = crate::problems::make("ab123")?;
    let a = problem.label_of("A");
    let b = problem.label_of("B");
    let labels = (0..n)
        .map(|i| match i.cmp(&k) {
            std::cmp::Ordering::Less => if i % 2 == 0 { a } else { b },
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => if i % 2 == 0 { b } else { a },
        })
        .collect();
    Ok((path(n)?, PartialLabeling::from_vec(labels)))
}
