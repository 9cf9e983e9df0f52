//! Problems, partial labelings, the relaxed verifier and the t-mend predicate.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::automata::PathSpec;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, UNREACHED};

/// Index into a problem's output alphabet.
pub type Label = u16;

/// Centered view handed to a verifier. Verifiers navigate from `center`
/// through `graph` and must not read labels beyond the problem's label radius.
pub struct View<'a> {
    pub graph: &'a Graph,
    labels: &'a [Option<Label>],
    pub center: NodeId,
}

impl<'a> View<'a> {
    pub fn new(graph: &'a Graph, labels: &'a [Option<Label>], center: NodeId) -> View<'a> {
        View { graph, labels, center }
    }

    /// Output of `u`; panics on a hole, which the relaxed verifier rules out.
    pub fn label(&self, u: NodeId) -> Label {
        self.labels[u].unwrap_or_else(|| panic!("verifier read unlabeled node {u}"))
    }

    pub fn center_label(&self) -> Label {
        self.label(self.center)
    }
}

pub type LocalVerifier = dyn Fn(&View) -> bool + Send + Sync;

/// A necessary condition on an edge: if it returns false for two labeled
/// adjacent nodes, the verifier rejects at both of them.
pub type PairFilter = dyn Fn(&Graph, NodeId, Label, NodeId, Label) -> bool + Send + Sync;

/// Explicit happy-neighborhood table: (center label, sorted neighbor labels).
#[derive(Debug, Clone, Default)]
pub struct HappyTable {
    allowed: HashSet<(Label, Vec<Label>)>,
}

impl HappyTable {
    pub fn new() -> HappyTable {
        HappyTable::default()
    }

    pub fn allow(&mut self, center: Label, mut neighbors: Vec<Label>) {
        neighbors.sort_unstable();
        self.allowed.insert((center, neighbors));
    }

    pub fn len(&self) -> usize {
        self.allowed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.allowed.is_empty()
    }

    pub fn accepts(&self, center: Label, neighbors: &[Label]) -> bool {
        let mut nb = neighbors.to_vec();
        nb.sort_unstable();
        self.allowed.contains(&(center, nb))
    }
}

#[derive(Clone)]
pub enum Verifier {
    Local(Arc<LocalVerifier>),
    Table(Arc<HappyTable>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Happy,
    Unhappy,
}

#[derive(Clone)]
pub struct LclProblem {
    pub id: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    /// Radius of the verifier's view (holes within it make a node happy).
    pub radius: usize,
    /// Radius up to which the verifier reads output labels (`<= radius`).
    pub label_radius: usize,
    pub verifier: Verifier,
    pub pair_filter: Option<Arc<PairFilter>>,
    pub path_spec: Option<PathSpec>,
}

impl fmt::Debug for LclProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LclProblem")
            .field("id", &self.id)
            .field("outputs", &self.outputs)
            .field("radius", &self.radius)
            .finish_non_exhaustive()
    }
}

impl LclProblem {
    pub fn new_local(
        id: impl Into<String>,
        outputs: Vec<String>,
        radius: usize,
        verifier: impl Fn(&View) -> bool + Send + Sync + 'static,
    ) -> LclProblem {
        LclProblem {
            id: id.into(),
            inputs: Vec::new(),
            outputs,
            radius,
            label_radius: radius,
            verifier: Verifier::Local(Arc::new(verifier)),
            pair_filter: None,
            path_spec: None,
        }
    }

    pub fn with_pair_filter(
        mut self,
        f: impl Fn(&Graph, NodeId, Label, NodeId, Label) -> bool + Send + Sync + 'static,
    ) -> LclProblem {
        self.pair_filter = Some(Arc::new(f));
        self
    }

    pub fn num_labels(&self) -> usize {
        self.outputs.len()
    }

    pub fn label_of(&self, name: &str) -> Option<Label> {
        self.outputs.iter().position(|o| o == name).map(|i| i as Label)
    }

    pub fn name(&self, l: Label) -> &str {
        &self.outputs[l as usize]
    }

    /// Underlying verifier on a fully labeled view.
    pub fn verify_view(&self, view: &View) -> bool {
        match &self.verifier {
            Verifier::Local(f) => f(view),
            Verifier::Table(t) => {
                let g = view.graph;
                let nb: Vec<Label> = g.neighbors(view.center).map(|u| view.label(u)).collect();
                t.accepts(view.center_label(), &nb)
            }
        }
    }

    /// Maps label names (None = hole) to a labeling.
    pub fn encode(&self, names: &[Option<String>]) -> Result<PartialLabeling> {
        names
            .iter()
            .enumerate()
            .map(|(v, n)| match n {
                None => Ok(None),
                Some(s) => self.label_of(s).map(Some).ok_or_else(|| {
                    Error::InvalidLabeling(format!("label `{s}` at node {v} not in {}", self.id))
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(PartialLabeling::from_vec)
    }

    pub fn encode_strs(&self, names: &[Option<&str>]) -> Result<PartialLabeling> {
        let owned: Vec<Option<String>> = names.iter().map(|n| n.map(str::to_string)).collect();
        self.encode(&owned)
    }

    pub fn decode(&self, lab: &PartialLabeling) -> Vec<Option<String>> {
        lab.as_slice().iter().map(|l| l.map(|l| self.name(l).to_string())).collect()
    }

    pub fn validate(&self, g: &Graph, lab: &PartialLabeling) -> Result<()> {
        if lab.len() != g.n() {
            return Err(Error::InvalidLabeling(format!(
                "labeling has {} entries for {} nodes",
                lab.len(),
                g.n()
            )));
        }
        if let Some((v, l)) = lab
            .as_slice()
            .iter()
            .enumerate()
            .find_map(|(v, l)| l.filter(|&l| l as usize >= self.num_labels()).map(|l| (v, l)))
        {
            return Err(Error::InvalidLabeling(format!("label index {l} at node {v} outside alphabet")));
        }
        Ok(())
    }

    /// Relaxed verdict without validation; `labels` must be in range.
    pub fn happy_at(&self, g: &Graph, labels: &[Option<Label>], v: NodeId) -> bool {
        if self.radius == 0 {
            if labels[v].is_none() {
                return true;
            }
        } else if g.ball(v, self.radius).iter().any(|&u| labels[u].is_none()) {
            return true;
        }
        self.verify_view(&View::new(g, labels, v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialLabeling {
    labels: Vec<Option<Label>>,
}

impl PartialLabeling {
    pub fn all_bottom(n: usize) -> PartialLabeling {
        PartialLabeling { labels: vec![None; n] }
    }

    pub fn from_vec(labels: Vec<Option<Label>>) -> PartialLabeling {
        PartialLabeling { labels }
    }

    pub fn complete(labels: &[Label]) -> PartialLabeling {
        PartialLabeling { labels: labels.iter().map(|&l| Some(l)).collect() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, v: NodeId) -> Option<Label> {
        self.labels[v]
    }

    pub fn set(&mut self, v: NodeId, l: Option<Label>) {
        self.labels[v] = l;
    }

    pub fn as_slice(&self) -> &[Option<Label>] {
        &self.labels
    }

    pub fn as_mut_slice(&mut self) -> &mut [Option<Label>] {
        &mut self.labels
    }

    pub fn into_vec(self) -> Vec<Option<Label>> {
        self.labels
    }

    pub fn is_complete(&self) -> bool {
        self.labels.iter().all(Option::is_some)
    }

    pub fn holes(&self) -> Vec<NodeId> {
        (0..self.len()).filter(|&v| self.labels[v].is_none()).collect()
    }
}

/// A t-mend: the new labels of every changed node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mend {
    pub center: NodeId,
    pub radius: usize,
    pub changes: BTreeMap<NodeId, Option<Label>>,
}

impl Mend {
    /// Diff of `mu` against `lam`; the radius is the farthest change from `center`.
    pub fn from_diff(g: &Graph, lam: &PartialLabeling, mu: &PartialLabeling, center: NodeId) -> Mend {
        let changes: BTreeMap<NodeId, Option<Label>> = (0..lam.len())
            .filter(|&u| lam.get(u) != mu.get(u))
            .map(|u| (u, mu.get(u)))
            .collect();
        let radius = if changes.is_empty() {
            0
        } else {
            let d = g.distances(center);
            changes.keys().map(|&u| d[u]).max().unwrap_or(0)
        };
        Mend { center, radius, changes }
    }

    pub fn apply(&self, lam: &PartialLabeling) -> PartialLabeling {
        let mut mu = lam.clone();
        for (&u, &l) in &self.changes {
            mu.set(u, l);
        }
        mu
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Acceptance {
    pub accepted: bool,
    pub unhappy_nodes: Vec<NodeId>,
}

/// Relaxed verifier: happy if a hole lies within the view radius, otherwise
/// the underlying verdict.
pub fn relaxed_verify(problem: &LclProblem, g: &Graph, lab: &PartialLabeling, v: NodeId) -> Result<Verdict> {
    if lab.len() != g.n() || v >= g.n() {
        return Err(Error::InvalidLabeling("labeling or node does not match graph".into()));
    }
    let ball = g.ball(v, problem.radius);
    for &u in &ball {
        if let Some(l) = lab.get(u) {
            if l as usize >= problem.num_labels() {
                return Err(Error::InvalidLabeling(format!("label index {l} at node {u} outside alphabet")));
            }
        }
    }
    if ball.iter().any(|&u| lab.get(u).is_none()) {
        return Ok(Verdict::Happy);
    }
    Ok(if problem.verify_view(&View::new(g, lab.as_slice(), v)) { Verdict::Happy } else { Verdict::Unhappy })
}

pub fn accepts(problem: &LclProblem, g: &Graph, lab: &PartialLabeling) -> Result<Acceptance> {
    problem.validate(g, lab)?;
    let holes = lab.holes();
    let near = g.multi_source_distances(&holes, problem.radius);
    let unhappy_nodes: Vec<NodeId> = (0..g.n())
        .filter(|&v| {
            (near[v] == UNREACHED || near[v] > problem.radius)
                && !problem.verify_view(&View::new(g, lab.as_slice(), v))
        })
        .collect();
    Ok(Acceptance { accepted: unhappy_nodes.is_empty(), unhappy_nodes })
}

pub fn is_accepted(problem: &LclProblem, g: &Graph, lab: &PartialLabeling) -> Result<bool> {
    accepts(problem, g, lab).map(|a| a.accepted)
}

/// Checks the four t-mend conditions of `mu` relative to `lam` at `v`.
pub fn is_mend(
    problem: &LclProblem,
    g: &Graph,
    lam: &PartialLabeling,
    mu: &PartialLabeling,
    v: NodeId,
    t: usize,
) -> Result<bool> {
    if !is_accepted(problem, g, lam)? {
        return Err(Error::Precondition("base labeling is not accepted by the relaxed verifier".into()));
    }
    if !is_accepted(problem, g, mu)? {
        return Ok(false);
    }
    if mu.get(v).is_none() {
        return Ok(false);
    }
    let dist = g.distances_within(v, t);
    for u in 0..g.n() {
        let (a, b) = (lam.get(u), mu.get(u));
        if b.is_none() && a.is_some() {
            return Ok(false);
        }
        if a != b && (dist[u] == UNREACHED || dist[u] > t) {
            return Ok(false);
        }
    }
    Ok(true)
}
