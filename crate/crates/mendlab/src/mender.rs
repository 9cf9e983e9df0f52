//! Exhaustive mend oracle and empirical radius estimation.
//!
//! The search fixes a region of variable nodes, gives each a domain, and
//! backtracks in variable order. A node's relaxed verdict is evaluated as
//! soon as every variable it can depend on is assigned. Only nodes within
//! distance `r` of the region are evaluated, and their verifiers read at
//! most `label_radius` further.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, UNREACHED};
use crate::instances::{self, InstanceSpec};
use crate::io;
use crate::lcl::{self, Label, LclProblem, Mend, PartialLabeling, View};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Counts verifier evaluations against a cap.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub used: u64,
    pub limit: u64,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget { used: 0, limit: DEFAULT_BUDGET }
    }
}

impl Budget {
    pub fn new(limit: u64) -> Budget {
        Budget { used: 0, limit }
    }

    fn charge(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}

/// How candidate labels of a variable are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelOrder {
    /// Hole first (for nodes that were holes), then alphabet order.
    Canonical,
    /// Current label first, then hole, then the rest of the alphabet.
    KeepCurrent,
}

/// Domains for `vars`: `center` must get a label, former holes may stay
/// holes, labeled nodes must stay labeled.
pub fn domains_for(
    problem: &LclProblem,
    base: &[Option<Label>],
    vars: &[NodeId],
    center: Option<NodeId>,
    order: LabelOrder,
) -> Vec<Vec<Option<Label>>> {
    let alphabet: Vec<Option<Label>> = (0..problem.num_labels() as Label).map(Some).collect();
    vars.iter()
        .map(|&x| {
            let may_hole = base[x].is_none() && Some(x) != center;
            let mut d: Vec<Option<Label>> = Vec::with_capacity(alphabet.len() + 1);
            match order {
                LabelOrder::Canonical => {
                    if may_hole {
                        d.push(None);
                    }
                    d.extend(alphabet.iter().copied());
                }
                LabelOrder::KeepCurrent => {
                    if base[x].is_some() {
                        d.push(base[x]);
                    }
                    if may_hole {
                        d.push(None);
                    }
                    d.extend(alphabet.iter().copied().filter(|&l| l != base[x]));
                }
            }
            d
        })
        .collect()
}

struct Search<'a> {
    problem: &'a LclProblem,
    g: &'a Graph,
    vars: &'a [NodeId],
    domains: &'a [Vec<Option<Label>>],
    var_idx: HashMap<NodeId, usize>,
    work: Vec<Option<Label>>,
    /// Check nodes evaluated right after variable `i` is assigned.
    checks_at: Vec<Vec<usize>>,
    check_nodes: Vec<NodeId>,
    check_ball: Vec<Vec<NodeId>>,
    /// Whether some node near this one is, or may become, a hole.
    excusable: HashMap<NodeId, bool>,
    /// Reject pair-filter conflicts even where a hole would excuse them.
    strict: bool,
    budget: &'a mut Budget,
}

impl Search<'_> {
    fn happy(&mut self, c: usize) -> Result<bool> {
        if self.check_ball[c].iter().any(|&u| self.work[u].is_none()) {
            return Ok(true);
        }
        self.budget.charge()?;
        Ok(self.problem.verify_view(&View::new(self.g, &self.work, self.check_nodes[c])))
    }

    fn pair_ok(&self, i: usize, x: NodeId, lx: Label) -> bool {
        let Some(filter) = &self.problem.pair_filter else { return true };
        if self.problem.radius == 0 {
            return true;
        }
        let ex_x = self.excusable.get(&x).copied().unwrap_or(true);
        for w in self.g.neighbors(x) {
            let assigned = self.var_idx.get(&w).is_none_or(|&j| j < i);
            if !assigned {
                continue;
            }
            let Some(lw) = self.work[w] else { continue };
            let ex_w = self.excusable.get(&w).copied().unwrap_or(true);
            if (self.strict || !ex_x || !ex_w) && !filter(self.g, x, lx, w, lw) {
                return false;
            }
        }
        true
    }

    fn dfs(&mut self, i: usize) -> Result<bool> {
        if i == self.vars.len() {
            return Ok(true);
        }
        let x = self.vars[i];
        for di in 0..self.domains[i].len() {
            let val = self.domains[i][di];
            if let Some(l) = val {
                if !self.pair_ok(i, x, l) {
                    continue;
                }
            }
            self.work[x] = val;
            let mut ok = true;
            for k in 0..self.checks_at[i].len() {
                let c = self.checks_at[i][k];
                if !self.happy(c)? {
                    ok = false;
                    break;
                }
            }
            if ok && self.dfs(i + 1)? {
                return Ok(true);
            }
        }
        self.work[x] = Some(0);
        Ok(false)
    }
}

/// Lexicographically first assignment of `vars` (in the given order, each
/// domain in its given order) that leaves every node happy under the
/// relaxed verifier. Nodes outside the region keep their `base` labels and
/// `base` is assumed accepted away from the region.
pub fn solve_region(
    problem: &LclProblem,
    g: &Graph,
    base: &[Option<Label>],
    vars: &[NodeId],
    domains: &[Vec<Option<Label>>],
    budget: &mut Budget,
) -> Result<Option<Vec<Option<Label>>>> {
    search_region(problem, g, base, vars, domains, false, budget)
}

fn search_region(
    problem: &LclProblem,
    g: &Graph,
    base: &[Option<Label>],
    vars: &[NodeId],
    domains: &[Vec<Option<Label>>],
    strict: bool,
    budget: &mut Budget,
) -> Result<Option<Vec<Option<Label>>>> {
    let r = problem.radius;
    let lr = problem.label_radius.min(r);
    let var_idx: HashMap<NodeId, usize> = vars.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    if var_idx.len() != vars.len() || domains.len() != vars.len() {
        return Err(Error::Internal("region variables must be distinct with one domain each".into()));
    }
    let may_hole: Vec<bool> = domains.iter().map(|d| d.contains(&None)).collect();
    let dist = g.multi_source_distances(vars, r);
    let check_nodes: Vec<NodeId> = (0..g.n()).filter(|&u| dist[u] != UNREACHED).collect();
    let mut checks_at = vec![Vec::new(); vars.len()];
    let mut pre = Vec::new();
    let mut check_ball = Vec::with_capacity(check_nodes.len());
    let mut excusable = HashMap::with_capacity(check_nodes.len());
    for (ci, &c) in check_nodes.iter().enumerate() {
        let ball = g.ball_with_dist(c, r);
        let mut ready: Option<usize> = None;
        let mut ex = false;
        for &(u, d) in &ball {
            match var_idx.get(&u) {
                Some(&i) => {
                    if d <= lr || may_hole[i] {
                        ready = Some(ready.map_or(i, |m| m.max(i)));
                    }
                    ex |= may_hole[i];
                }
                None => ex |= base[u].is_none(),
            }
        }
        excusable.insert(c, ex);
        match ready {
            Some(i) => checks_at[i].push(ci),
            None => pre.push(ci),
        }
        check_ball.push(ball.into_iter().map(|(u, _)| u).collect());
    }
    let mut work = base.to_vec();
    for &x in vars {
        work[x] = Some(0);
    }
    let mut s = Search {
        problem,
        g,
        vars,
        domains,
        var_idx,
        work,
        checks_at,
        check_nodes,
        check_ball,
        excusable,
        strict,
        budget,
    };
    for c in pre {
        if !s.happy(c)? {
            return Ok(None);
        }
    }
    if s.dfs(0)? {
        Ok(Some(s.work))
    } else {
        Ok(None)
    }
}

fn check_mend_input(problem: &LclProblem, g: &Graph, lam: &PartialLabeling, v: NodeId) -> Result<()> {
    problem.validate(g, lam)?;
    if v >= g.n() {
        return Err(Error::InvalidParams(format!("node {v} out of range")));
    }
    if lam.get(v).is_some() {
        return Err(Error::Precondition(format!("node {v} is not a hole")));
    }
    if !lcl::is_accepted(problem, g, lam)? {
        return Err(Error::Precondition("labeling is not accepted by the relaxed verifier".into()));
    }
    Ok(())
}

/// Minimal-radius mend with `radius <= t_max`, lexicographically first by
/// (node id, label order) among mends of that radius.
pub fn find_mend(
    problem: &LclProblem,
    g: &Graph,
    lam: &PartialLabeling,
    v: NodeId,
    t_max: usize,
) -> Result<Option<Mend>> {
    find_mend_with_budget(problem, g, lam, v, t_max, &mut Budget::default())
}

pub fn find_mend_with_budget(
    problem: &LclProblem,
    g: &Graph,
    lam: &PartialLabeling,
    v: NodeId,
    t_max: usize,
    budget: &mut Budget,
) -> Result<Option<Mend>> {
    check_mend_input(problem, g, lam, v)?;
    let ecc = g.eccentricity(v);
    for t in 0..=t_max {
        if let Some(m) = mend_at_radius(problem, g, lam, v, t, false, budget)? {
            return Ok(Some(m));
        }
        if t >= ecc {
            break;
        }
    }
    Ok(None)
}

/// Like [`find_mend`], but the mend may not leave two labeled neighbors
/// that fail the problem's pair filter, even where holes would excuse
/// them. Equals `find_mend` for problems without a pair filter.
pub fn find_strict_mend(
    problem: &LclProblem,
    g: &Graph,
    lam: &PartialLabeling,
    v: NodeId,
    t_max: usize,
) -> Result<Option<Mend>> {
    check_mend_input(problem, g, lam, v)?;
    let ecc = g.eccentricity(v);
    let mut budget = Budget::default();
    for t in 0..=t_max.min(ecc) {
        if let Some(m) = mend_at_radius(problem, g, lam, v, t, true, &mut budget)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn mend_at_radius(
    problem: &LclProblem,
    g: &Graph,
    lam: &PartialLabeling,
    v: NodeId,
    t: usize,
    strict: bool,
    budget: &mut Budget,
) -> Result<Option<Mend>> {
    let vars = g.ball(v, t);
    let domains = domains_for(problem, lam.as_slice(), &vars, Some(v), LabelOrder::Canonical);
    Ok(search_region(problem, g, lam.as_slice(), &vars, &domains, strict, budget)?.map(|mu| {
        let mut m = Mend::from_diff(g, lam, &PartialLabeling::from_vec(mu), v);
        m.radius = t;
        m
    }))
}

/// Memo for repeated mend queries at one node of one graph. A radius-t
/// search reads only labels within `t + 2r` of the hole, so results are
/// keyed by that window.
pub struct MendCache {
    v: NodeId,
    windows: Vec<Vec<NodeId>>,
    seen: Vec<HashMap<Vec<Option<Label>>, Option<Mend>>>,
}

impl MendCache {
    pub fn new(problem: &LclProblem, g: &Graph, v: NodeId, t_max: usize) -> MendCache {
        let windows = (0..=t_max).map(|t| g.ball(v, t + 2 * problem.radius)).collect();
        MendCache { v, windows, seen: vec![HashMap::new(); t_max + 1] }
    }

    /// Same result as [`find_mend`] for the cached node and radius cap,
    /// without re-checking that `lam` is accepted.
    pub fn find(&mut self, problem: &LclProblem, g: &Graph, lam: &PartialLabeling) -> Result<Option<Mend>> {
        let ecc = g.eccentricity(self.v);
        for t in 0..self.windows.len() {
            let key: Vec<Option<Label>> = self.windows[t].iter().map(|&u| lam.get(u)).collect();
            let hit = match self.seen[t].get(&key) {
                Some(hit) => hit.clone(),
                None => {
                    let found = mend_at_radius(problem, g, lam, self.v, t, false, &mut Budget::default())?;
                    self.seen[t].insert(key, found.clone());
                    found
                }
            };
            if hit.is_some() {
                return Ok(hit);
            }
            if t >= ecc {
                break;
            }
        }
        Ok(None)
    }
}

/// Least t admitting a t-mend at `v`.
pub fn mend_radius_at(problem: &LclProblem, g: &Graph, lam: &PartialLabeling, v: NodeId) -> Result<usize> {
    mend_radius_with_budget(problem, g, lam, v, &mut Budget::default())
}

pub fn mend_radius_with_budget(
    problem: &LclProblem,
    g: &Graph,
    lam: &PartialLabeling,
    v: NodeId,
    budget: &mut Budget,
) -> Result<usize> {
    check_mend_input(problem, g, lam, v)?;
    for t in 0..=g.eccentricity(v) {
        if mend_at_radius(problem, g, lam, v, t, false, budget)?.is_some() {
            return Ok(t);
        }
    }
    Err(Error::Unsolvable)
}

/// Random labeling with holes, then unhappy nodes blanked (lowest id
/// first) until the relaxed verifier accepts.
pub fn sample_accepted(problem: &LclProblem, g: &Graph, hole_prob: f64, rng: &mut impl Rng) -> PartialLabeling {
    let k = problem.num_labels() as Label;
    let labels: Vec<Option<Label>> = (0..g.n())
        .map(|_| if rng.gen_bool(hole_prob) { None } else { Some(rng.gen_range(0..k)) })
        .collect();
    blank_until_accepted(problem, g, PartialLabeling::from_vec(labels))
}

/// Blanks unhappy nodes in id order until the labeling is accepted. One
/// pass suffices since blanking never makes a happy node unhappy.
pub fn blank_until_accepted(problem: &LclProblem, g: &Graph, mut lab: PartialLabeling) -> PartialLabeling {
    for u in 0..g.n() {
        if !problem.happy_at(g, lab.as_slice(), u) {
            lab.set(u, None);
        }
    }
    lab
}

/// Sampling variant starting from a valid complete solution: some nodes
/// are recolored at random, some blanked, then unhappy nodes are blanked.
pub fn sample_near_solution(
    problem: &LclProblem,
    g: &Graph,
    solution: &PartialLabeling,
    hole_prob: f64,
    noise_prob: f64,
    rng: &mut impl Rng,
) -> PartialLabeling {
    let k = problem.num_labels() as Label;
    let labels = (0..g.n())
        .map(|u| {
            if rng.gen_bool(hole_prob) {
                None
            } else if rng.gen_bool(noise_prob) {
                Some(rng.gen_range(0..k))
            } else {
                solution.get(u)
            }
        })
        .collect();
    blank_until_accepted(problem, g, PartialLabeling::from_vec(labels))
}

/// Some complete valid labeling of `g`, if one exists.
pub fn global_solution(problem: &LclProblem, g: &Graph) -> Result<Option<PartialLabeling>> {
    let base = vec![None; g.n()];
    // BFS order per component keeps backtracking shallow on sparse graphs
    let mut seen = vec![false; g.n()];
    let mut vars: Vec<NodeId> = Vec::with_capacity(g.n());
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let start = vars.len();
        vars.push(s);
        let mut i = start;
        while i < vars.len() {
            let x = vars[i];
            for y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    vars.push(y);
                }
            }
            i += 1;
        }
    }
    let domains = domains_for(problem, &base, &vars, None, LabelOrder::Canonical)
        .into_iter()
        .map(|d| d.into_iter().filter(Option::is_some).collect())
        .collect::<Vec<_>>();
    let mut budget = Budget::default();
    Ok(solve_region(problem, g, &base, &vars, &domains, &mut budget)?.map(PartialLabeling::from_vec))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateMode {
    Exhaustive,
    Sampled,
    Adversarial,
}

impl std::str::FromStr for EstimateMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<EstimateMode> {
        match s {
            "exhaustive" => Ok(EstimateMode::Exhaustive),
            "sampled" => Ok(EstimateMode::Sampled),
            "adversarial" => Ok(EstimateMode::Adversarial),
            _ => Err(Error::InvalidParams(format!("unknown mode `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Witness {
    /// Instance JSON including the partial labeling.
    pub instance: String,
    pub node: NodeId,
    pub radius: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SizeReport {
    pub n: usize,
    pub max_radius_found: usize,
    pub instances_checked: usize,
    pub mode: EstimateMode,
    pub complete: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadiusReport {
    pub problem_id: String,
    pub sizes: Vec<SizeReport>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct EstimateOptions {
    pub mode: EstimateMode,
    /// Cap on enumerated (labeling, hole) pairs for exhaustive mode, and on
    /// verifier calls per oracle query.
    pub budget: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for EstimateOptions {
    fn default() -> EstimateOptions {
        EstimateOptions { mode: EstimateMode::Sampled, budget: DEFAULT_BUDGET, samples: 100, seed: 0 }
    }
}

/// Max radius over (accepted labeling, hole) pairs; `None` when the oracle
/// ran out of budget on one of them.
fn max_over(
    problem: &LclProblem,
    g: &Graph,
    labelings: &[PartialLabeling],
    budget: u64,
) -> Result<(usize, usize, bool, Option<(usize, NodeId)>)> {
    let per: Vec<Result<Option<(usize, NodeId)>>> = labelings
        .par_iter()
        .map(|lab| {
            let mut best: Option<(usize, NodeId)> = None;
            for v in lab.holes() {
                let mut b = Budget::new(budget);
                match mend_radius_with_budget(problem, g, lab, v, &mut b) {
                    Ok(t) => {
                        if best.is_none_or(|(bt, _)| t > bt) {
                            best = Some((t, v));
                        }
                    }
                    Err(Error::BudgetExceeded(_)) => return Ok(None),
                    Err(e) => return Err(e),
                }
            }
            Ok(Some(best.unwrap_or((0, usize::MAX))))
        })
        .collect();
    let mut max = 0;
    let mut complete = true;
    let mut witness = None;
    let mut checked = 0;
    for (i, p) in per.into_iter().enumerate() {
        match p? {
            Some((t, v)) => {
                checked += 1;
                if t > max {
                    max = t;
                    witness = Some((i, v));
                }
            }
            None => complete = false,
        }
    }
    Ok((max, checked, complete, witness))
}

/// Calls `f` on every accepted partial labeling of `g` with at least one
/// hole, with the listed nodes pinned. Nodes are assigned in BFS order and
/// a node is checked as soon as its whole ball is assigned.
pub fn for_each_accepted(
    problem: &LclProblem,
    g: &Graph,
    pinned: &[(NodeId, Option<Label>)],
    f: &mut dyn FnMut(&PartialLabeling),
) {
    let n = g.n();
    let mut order: Vec<NodeId> = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let starts = pinned.iter().map(|&(u, _)| u).chain(0..n);
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let start = order.len();
        order.push(s);
        let mut i = start;
        while i < order.len() {
            for y in g.neighbors(order[i]) {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
            i += 1;
        }
    }
    let mut pos = vec![0; n];
    for (i, &u) in order.iter().enumerate() {
        pos[u] = i;
    }
    let mut checks_at = vec![Vec::new(); n];
    for c in 0..n {
        let ready = g.ball(c, problem.radius).into_iter().map(|u| pos[u]).max().unwrap_or(0);
        checks_at[ready].push(c);
    }
    let mut domain: Vec<Vec<Option<Label>>> = vec![
        std::iter::once(None).chain((0..problem.num_labels() as Label).map(Some)).collect();
        n
    ];
    for &(u, l) in pinned {
        domain[u] = vec![l];
    }
    struct Walk<'a> {
        problem: &'a LclProblem,
        g: &'a Graph,
        order: Vec<NodeId>,
        checks_at: Vec<Vec<NodeId>>,
        domain: Vec<Vec<Option<Label>>>,
        work: PartialLabeling,
    }
    fn go(w: &mut Walk, i: usize, holes: usize, f: &mut dyn FnMut(&PartialLabeling)) {
        if i == w.order.len() {
            if holes > 0 {
                f(&w.work);
            }
            return;
        }
        let u = w.order[i];
        for di in 0..w.domain[u].len() {
            let l = w.domain[u][di];
            w.work.set(u, l);
            if w.checks_at[i].iter().all(|&c| w.problem.happy_at(w.g, w.work.as_slice(), c)) {
                go(w, i + 1, holes + usize::from(l.is_none()), f);
            }
        }
        w.work.set(u, None);
    }
    let mut walk = Walk { problem, g, order, checks_at, domain, work: PartialLabeling::all_bottom(n) };
    go(&mut walk, 0, 0, f);
}

/// All accepted partial labelings of `g` with at least one hole.
pub fn enumerate_accepted(problem: &LclProblem, g: &Graph) -> Vec<PartialLabeling> {
    let mut out = Vec::new();
    for_each_accepted(problem, g, &[], &mut |lab| out.push(lab.clone()));
    out
}

pub fn estimate_radius(
    problem: &LclProblem,
    family: &InstanceSpec,
    sizes: &[usize],
    opts: &EstimateOptions,
) -> Result<RadiusReport> {
    let mut report = RadiusReport { problem_id: problem.id.clone(), sizes: Vec::new(), warnings: Vec::new() };
    for &size in sizes {
        let mut spec = family.with_size(size);
        if spec.seed.is_none() {
            spec.seed = Some(opts.seed);
        }
        let g = instances::generate(&spec)?;
        let mut mode = opts.mode;
        if mode == EstimateMode::Exhaustive {
            let k = (problem.num_labels() + 1) as f64;
            let cost = k.powi(g.n() as i32) * g.n() as f64;
            if cost > opts.budget as f64 {
                report.warnings.push(format!("size {size}: exhaustive cost {cost:.0} over budget, sampling instead"));
                mode = EstimateMode::Sampled;
            }
        }
        let mut labelings = match mode {
            EstimateMode::Exhaustive => enumerate_accepted(problem, &g),
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (size as u64).wrapping_mul(0x9e37_79b9));
                (0..opts.samples).map(|_| sample_accepted(problem, &g, 0.2, &mut rng)).collect()
            }
        };
        let mut graphs_differ = None;
        if mode == EstimateMode::Adversarial {
            if let Ok((lg, lab)) = instances::lower_bound_instance(&problem.id, size) {
                if lg == g {
                    labelings.insert(0, lab);
                } else {
                    graphs_differ = Some((lg, lab));
                }
            }
        }
        let (mut max, mut checked, mut complete, w) = max_over(problem, &g, &labelings, opts.budget)?;
        let mut witness = w.map(|(i, v)| Witness {
            instance: io::write_labeled(problem, &g, &labelings[i]),
            node: v,
            radius: max,
        });
        if let Some((lg, lab)) = graphs_differ {
            let (m2, c2, ok2, w2) = max_over(problem, &lg, std::slice::from_ref(&lab), opts.budget)?;
            checked += c2;
            complete &= ok2;
            if m2 > max {
                max = m2;
                witness = w2.map(|(_, v)| Witness { instance: io::write_labeled(problem, &lg, &lab), node: v, radius: m2 });
            }
        }
        if !complete {
            report.warnings.push(format!("size {size}: some oracle queries exceeded the budget"));
        }
        report.sizes.push(SizeReport { n: size, max_radius_found: max, instances_checked: checked, mode, complete, witness });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_trips() {
        let mut b = Budget::new(2);
        assert!(b.charge().is_ok());
        assert!(b.charge().is_ok());
        assert_eq!(b.charge(), Err(Error::BudgetExceeded(2)));
    }
}
