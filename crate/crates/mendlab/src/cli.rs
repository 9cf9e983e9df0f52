//! Command-line front end. `run` parses arguments, dispatches, prints a
//! text report and optionally writes a JSON report.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::automata::{self, PathSpec, PathSpecJson, RestrictMode};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::instances::{self, InstanceKind, InstanceSpec};
use crate::lcl::{self, LclProblem, Mend, PartialLabeling};
use crate::mender::{self, EstimateMode, EstimateOptions};
use crate::{census, io, local_sim, pointer, problems, tree_mend};

pub const EXIT_OK: i32 = 0;
pub const EXIT_EXPECTATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Overlap-cycle lower bound: each substructure level adds at least the
/// short cycle's length to the mend radius.
pub const OVERLAP_RADIUS_PER_LEVEL: usize = 10;
/// Rigid trees: expected radius is at least `depth - RIGID_SLACK`.
pub const RIGID_SLACK: usize = 0;

#[derive(Debug, Parser)]
#[command(name = "mendlab", version, about = "Mending radii of locally checkable labeling problems")]
pub struct Cli {
    /// Also write the report as JSON to this path.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the relaxed verifier on a labeled instance.
    Verify {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        graph: PathBuf,
        /// Exit 1 unless the verdict matches.
        #[arg(long, value_parser = ["accepted", "rejected"])]
        expect: Option<String>,
    },
    /// Mend one hole.
    Mend(MendArgs),
    /// Largest minimal mend radius over a family of instances.
    Radius(RadiusArgs),
    /// Solve from scratch by mending holes phase by phase.
    Solve {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        /// Use a ball-carving decomposition of G^p instead of a distance coloring.
        #[arg(long)]
        nd_power: Option<usize>,
        /// Write the solved instance here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Diagram classification, restriction and walks.
    Automaton {
        #[command(subcommand)]
        action: AutomatonAction,
    },
    /// Exhaustive 3x3 block census for {1,3,4}-orientation.
    #[command(name = "census-134")]
    Census134,
    /// Generate an instance file.
    Gen(GenArgs),
    /// Oracle radius on a hard instance, checked against its expected bound.
    Lowerbound {
        problem: String,
        /// Size parameter: path length, node count of the torus, or tree depth / levels.
        #[arg(long)]
        n: usize,
    },
    /// Rake-and-compress layering and layered tree mending.
    Tree {
        #[command(subcommand)]
        action: TreeAction,
    },
    /// Problem catalog.
    Problems {
        #[command(subcommand)]
        action: ProblemsAction,
    },
}

#[derive(Debug, Args)]
pub struct MendArgs {
    #[arg(long)]
    pub problem: String,
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub node: NodeId,
    /// Largest radius the oracle may use.
    #[arg(long)]
    pub max_radius: Option<usize>,
    #[arg(long, default_value = "oracle",
          value_parser = ["oracle", "grid4", "pointer", "binary3col-restricted", "deltacol-restricted", "path", "tree"])]
    pub method: String,
    /// Parameter k of the deltacol and tree menders.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Budget constant of the pointer mender.
    #[arg(long, default_value_t = pointer::DEFAULT_C)]
    pub c: f64,
    /// Write the mended instance here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RadiusArgs {
    #[arg(long)]
    pub problem: String,
    #[arg(long)]
    pub family: String,
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long, default_value = "exhaustive")]
    pub mode: String,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value_t = mender::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Degree for regular trees.
    #[arg(long)]
    pub degree: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub kind: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub width: Option<usize>,
    #[arg(long)]
    pub height: Option<usize>,
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long)]
    pub depth: Option<usize>,
    /// Attach a sampled accepted labeling of this problem.
    #[arg(long)]
    pub sample_problem: Option<String>,
    #[arg(long, default_value_t = 0.2)]
    pub hole_prob: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpecSource {
    /// Catalog problem with a path description.
    #[arg(long, conflicts_with = "spec")]
    pub problem: Option<String>,
    /// Path description JSON file.
    #[arg(long)]
    pub spec: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum AutomatonAction {
    Classify {
        #[command(flatten)]
        source: SpecSource,
    },
    Restrict {
        #[command(flatten)]
        source: SpecSource,
        #[arg(long, default_value = "directed")]
        mode: String,
    },
    Walk {
        #[command(flatten)]
        source: SpecSource,
        /// State as `a,b`.
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        len: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum TreeAction {
    Decompose {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    Mend {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        node: NodeId,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ProblemsAction {
    List,
}

/// What a subcommand produced.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    /// False when a stated expectation does not hold.
    pub ok: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Outcome {
        Outcome { text, json, ok: true }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnknownProblem(_) | Error::InvalidParams(_) => EXIT_USAGE,
        Error::Parse { .. }
        | Error::InvalidGraph(_)
        | Error::InvalidLabeling(_)
        | Error::Precondition(_)
        | Error::InvalidPartialSolution(_) => EXIT_INPUT,
        _ => EXIT_EXPECTATION,
    }
}

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build_global();
    match dispatch(&cli) {
        Ok(outcome) => {
            let _ = write!(out, "{}", outcome.text);
            if let Some(path) = &cli.json {
                let mut doc = outcome.json;
                if let Value::Object(m) = &mut doc {
                    m.insert("schema".into(), json!(io::SCHEMA));
                }
                let text = serde_json::to_string_pretty(&doc).expect("json value serializes");
                if let Err(e) = std::fs::write(path, text) {
                    let _ = writeln!(out, "error: cannot write {}: {e}", path.display());
                    return EXIT_INPUT;
                }
            }
            if outcome.ok {
                EXIT_OK
            } else {
                EXIT_EXPECTATION
            }
        }
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            exit_code(&e)
        }
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))
}

fn load(problem: &LclProblem, path: &Path) -> Result<(Graph, PartialLabeling)> {
    io::read_labeled(problem, &read_file(path)?)
}

fn instance_value(problem: &LclProblem, g: &Graph, lab: &PartialLabeling) -> Value {
    serde_json::from_str(&io::write_labeled(problem, g, lab)).expect("writer emits valid json")
}

fn mend_value(problem: &LclProblem, g: &Graph, lam: &PartialLabeling, m: &Mend) -> Value {
    let changes: serde_json::Map<String, Value> = m
        .changes
        .iter()
        .map(|(u, l)| (u.to_string(), l.map_or(Value::Null, |l| json!(problem.name(l)))))
        .collect();
    json!({
        "center": m.center,
        "radius": m.radius,
        "t": m.radius,
        "changes": changes,
        "instance": instance_value(problem, g, &m.apply(lam)),
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Verify { problem, graph, expect } => verify(problem, graph, expect.as_deref()),
        Command::Mend(args) => mend(args),
        Command::Radius(args) => radius(args, cli.seed),
        Command::Solve { problem, graph, k, nd_power, out } => solve(problem, graph, *k, *nd_power, out.as_deref()),
        Command::Automaton { action } => automaton(action),
        Command::Census134 => Ok(census_report()),
        Command::Gen(args) => gen(args, cli.seed),
        Command::Lowerbound { problem, n } => lowerbound(problem, *n),
        Command::Tree { action } => tree(action),
        Command::Problems { action: ProblemsAction::List } => problems_list(),
    }
}

fn verify(id: &str, path: &Path, expect: Option<&str>) -> Result<Outcome> {
    let problem = problems::make(id)?;
    let (g, lab) = load(&problem, path)?;
    let acc = lcl::accepts(&problem, &g, &lab)?;
    let verdict = if acc.accepted { "accepted" } else { "rejected" };
    let mut text = format!("{verdict}\n");
    if !acc.unhappy_nodes.is_empty() {
        let _ = writeln!(text, "unhappy nodes: {:?}", acc.unhappy_nodes);
    }
    Ok(Outcome {
        text,
        json: json!({"accepted": acc.accepted, "unhappy_nodes": acc.unhappy_nodes}),
        ok: expect.is_none_or(|e| e == verdict),
    })
}

fn mend(a: &MendArgs) -> Result<Outcome> {
    let problem = problems::make(&a.problem)?;
    let (g, lam) = load(&problem, &a.graph)?;
    let v = a.node;
    if v >= g.n() {
        return Err(Error::InvalidParams(format!("node {v} out of range")));
    }
    let found = match a.method.as_str() {
        "oracle" => {
            let t_max = a.max_radius.unwrap_or_else(|| g.eccentricity(v));
            mender::find_mend(&problem, &g, &lam, v, t_max)?
        }
        "grid4" => Some(problems::grid4::mend_grid4(&g, &lam, v)?),
        "pointer" => Some(pointer::mend_pointer(&g, &lam, v, a.c)?),
        "binary3col-restricted" => Some(problems::trees::mend_binary3col_restricted(&g, &lam, v)?),
        "deltacol-restricted" => {
            let delta = g.max_degree();
            Some(problems::trees::mend_deltacol_restricted(&g, &lam, v, delta, a.k)?)
        }
        "path" => {
            let parts: Vec<&str> = a.problem.split(':').collect();
            let ["restricted", base, mode] = parts.as_slice() else {
                return Err(Error::InvalidParams("path mending needs a restricted:<base>:<mode> problem".into()));
            };
            let r = problems::restriction_of(base, mode.parse()?)?;
            Some(automata::mend_path(&r, &g, &lam, v)?)
        }
        _ => Some(tree_mend::mend_tree_layered(&problem, &g, &lam, v, a.k)?),
    };
    let Some(m) = found else {
        let t = a.max_radius.map_or("any radius".to_string(), |t| format!("radius {t}"));
        return Ok(Outcome {
            text: format!("no mend at node {v} within {t}\n"),
            json: json!({"center": v, "found": false}),
            ok: false,
        });
    };
    if let Some(path) = &a.out {
        write_file(path, &io::write_labeled(&problem, &g, &m.apply(&lam)))?;
    }
    let mut text = format!("mend at node {v}: radius {}, {} node(s) changed\n", m.radius, m.changes.len());
    for (u, l) in &m.changes {
        let _ = writeln!(text, "  {u} -> {}", l.map_or("_", |l| problem.name(l)));
    }
    let within = a.max_radius.is_none_or(|t| m.radius <= t);
    Ok(Outcome { text, json: mend_value(&problem, &g, &lam, &m), ok: within })
}

fn radius(a: &RadiusArgs, seed: u64) -> Result<Outcome> {
    let problem = problems::make(&a.problem)?;
    let kind: InstanceKind = a.family.parse()?;
    let mut family = InstanceSpec::new(kind);
    family.degree = a.degree;
    let mode: EstimateMode = a.mode.parse()?;
    let opts = EstimateOptions { mode, budget: a.budget, samples: a.samples, seed };
    let report = mender::estimate_radius(&problem, &family, &a.sizes, &opts)?;
    let mut text = format!("{:>6} {:>10} {:>10} {:>12} {:>9}\n", "n", "max_radius", "checked", "mode", "complete");
    for s in &report.sizes {
        let _ = writeln!(
            text,
            "{:>6} {:>10} {:>10} {:>12} {:>9}",
            s.n,
            s.max_radius_found,
            s.instances_checked,
            format!("{:?}", s.mode).to_lowercase(),
            s.complete
        );
    }
    for w in &report.warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    let json = serde_json::to_value(&report).expect("report serializes");
    Ok(Outcome::ok(text, json))
}

fn solve(id: &str, path: &Path, k: usize, nd_power: Option<usize>, out: Option<&Path>) -> Result<Outcome> {
    let problem = problems::make(id)?;
    let g = io::from_json(&read_file(path)?)?.graph;
    let (lab, log) = match nd_power {
        None => local_sim::solve_constant_mendable(&problem, &g, k)?,
        Some(p) => {
            let nd = local_sim::network_decomposition(&g, p)?;
            local_sim::solve_by_decomposition(&problem, &g, &nd, k, None)?
        }
    };
    let accepted = lcl::is_accepted(&problem, &g, &lab)? && lab.is_complete();
    if let Some(path) = out {
        write_file(path, &io::write_labeled(&problem, &g, &lab))?;
    }
    let text = format!(
        "solved {} nodes: {} phases, {} rounds, {}\n",
        g.n(),
        log.phases,
        log.rounds,
        if accepted { "accepted" } else { "REJECTED" }
    );
    Ok(Outcome {
        text,
        json: json!({
            "accepted": accepted,
            "instance": instance_value(&problem, &g, &lab),
            "rounds": log.rounds,
            "phases": log.phases,
            "events": serde_json::to_value(&log.events).expect("events serialize"),
        }),
        ok: accepted,
    })
}

fn spec_of(source: &SpecSource) -> Result<PathSpec> {
    match (&source.problem, &source.spec) {
        (Some(id), _) => problems::make(id)?
            .path_spec
            .ok_or_else(|| Error::InvalidParams(format!("problem `{id}` has no path description"))),
        (None, Some(path)) => {
            let text = read_file(path)?;
            let j: PathSpecJson = serde_json::from_str(&text)
                .map_err(|e| Error::Parse { line: e.line(), column: e.column(), msg: e.to_string() })?;
            PathSpec::from_json(&j)
        }
        (None, None) => Err(Error::InvalidParams("give --problem or --spec".into())),
    }
}

fn state_list(d: &automata::Diagram) -> Vec<Value> {
    (0..d.len()).map(|s| json!(d.state_names(s))).collect()
}

fn automaton(action: &AutomatonAction) -> Result<Outcome> {
    match action {
        AutomatonAction::Classify { source } => {
            let d = automata::build_diagram(&spec_of(source)?);
            let classes = automata::classify_states(&d)?;
            let mut text = format!("{:>8} {:>5} {:>10} {:>5} {:>8} {:>4} {:>15}\n", "state", "scc", "repeatable", "loop", "flexible", "K", "mirror_flexible");
            let mut rows = Vec::new();
            for (s, c) in classes.iter().enumerate() {
                let (a, b) = d.state_names(s);
                let k = c.flexibility.map_or("-".to_string(), |k| k.to_string());
                let _ = writeln!(
                    text,
                    "{:>8} {:>5} {:>10} {:>5} {:>8} {:>4} {:>15}",
                    format!("{a},{b}"),
                    c.scc_id,
                    c.repeatable,
                    c.loop_,
                    c.flexible,
                    k,
                    c.mirror_flexible
                );
                rows.push(json!({
                    "state": [a, b],
                    "scc": c.scc_id,
                    "repeatable": c.repeatable,
                    "loop": c.loop_,
                    "flexible": c.flexible,
                    "flexibility": c.flexibility,
                    "mirror_flexible": c.mirror_flexible,
                    "mirror_flexibility": c.mirror_flexibility,
                }));
            }
            Ok(Outcome::ok(text, json!({"states": rows})))
        }
        AutomatonAction::Restrict { source, mode } => {
            let mode: RestrictMode = mode.parse()?;
            let d = automata::build_diagram(&spec_of(source)?);
            let r = automata::restrict(&d, mode)?;
            let states = state_list(&r.diagram);
            let names: Vec<String> = (0..r.diagram.len())
                .map(|s| {
                    let (a, b) = r.diagram.state_names(s);
                    format!("{a},{b}")
                })
                .collect();
            let text = format!(
                "kept {} state(s): {}\nflexibility K = {}, attachments q = {}, mend bound = {}\n",
                names.len(),
                names.join(" "),
                r.flexibility,
                r.q,
                r.mend_bound()
            );
            let labels: Vec<String> = r.diagram.spec.to_json().labels;
            Ok(Outcome::ok(
                text,
                json!({
                    "states": states,
                    "labels": labels,
                    "flexibility": r.flexibility,
                    "q": r.q,
                    "mend_bound": r.mend_bound(),
                }),
            ))
        }
        AutomatonAction::Walk { source, from, to, len } => {
            let d = automata::build_diagram(&spec_of(source)?);
            let (s, t) = (d.parse_state(from)?, d.parse_state(to)?);
            match automata::walk(&d, s, t, *len) {
                Some(w) => {
                    let names: Vec<String> = w
                        .iter()
                        .map(|&x| {
                            let (a, b) = d.state_names(x);
                            format!("{a},{b}")
                        })
                        .collect();
                    Ok(Outcome::ok(format!("{}\n", names.join(" -> ")), json!({"walk": names})))
                }
                None => Ok(Outcome {
                    text: format!("no walk of length {len} from {from} to {to}\n"),
                    json: json!({"walk": Value::Null}),
                    ok: false,
                }),
            }
        }
    }
}

fn census_report() -> Outcome {
    let r = census::census();
    let text = format!(
        "{}/{} mendable, {} failure(s), {} ms\n",
        r.mendable,
        r.total,
        r.failures.len(),
        r.wall_clock_ms
    );
    let ok = r.failures.is_empty();
    Outcome { text, json: serde_json::to_value(&r).expect("report serializes"), ok }
}

fn gen(a: &GenArgs, seed: u64) -> Result<Outcome> {
    let spec = InstanceSpec {
        kind: a.kind.parse()?,
        n: a.n,
        width: a.width,
        height: a.height,
        degree: a.degree,
        depth: a.depth,
        seed: Some(seed),
    };
    let g = instances::generate(&spec)?;
    let doc = match &a.sample_problem {
        Some(id) => {
            let problem = problems::make(id)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let lab = mender::sample_accepted(&problem, &g, a.hole_prob, &mut rng);
            io::write_labeled(&problem, &g, &lab)
        }
        None => io::to_json(&g, None),
    };
    let json: Value = serde_json::from_str(&doc).expect("writer emits valid json");
    let text = match &a.out {
        Some(path) => {
            write_file(path, &doc)?;
            format!("wrote {} nodes to {}\n", g.n(), path.display())
        }
        None => format!("{doc}\n"),
    };
    Ok(Outcome::ok(text, json))
}

/// Expected lower bound on the oracle radius for a hard instance of size `n`.
pub fn expected_lower_bound(id: &str, n: usize) -> Result<usize> {
    match id {
        "ab123" => Ok(((n - 1) / 2).saturating_sub(1)),
        "pointer_lcl" => Ok(((n as f64).sqrt().round() as usize) / 2),
        "binary3col_rigid_v1" | "binary3col_rigid_v2" => Ok(n.saturating_sub(RIGID_SLACK)),
        "overlap_cycles" => Ok(OVERLAP_RADIUS_PER_LEVEL * n),
        _ => Err(Error::InvalidParams(format!("no hard instance for `{id}`"))),
    }
}

fn lowerbound(id: &str, n: usize) -> Result<Outcome> {
    let expected = expected_lower_bound(id, n)?;
    let problem = problems::make(id)?;
    let (g, lab) = instances::lower_bound_instance(id, n)?;
    let v = *lab.holes().first().ok_or_else(|| Error::Internal("hard instance has no hole".into()))?;
    let mut budget = mender::Budget::new(50 * mender::DEFAULT_BUDGET);
    let r = mender::mend_radius_with_budget(&problem, &g, &lab, v, &mut budget)?;
    let ok = r >= expected;
    let text = format!(
        "{id} n={n}: oracle radius {r} at node {v}, expected >= {expected}: {}\n",
        if ok { "ok" } else { "FAILED" }
    );
    Ok(Outcome {
        text,
        json: json!({
            "problem": id, "n": n, "node": v, "radius": r, "expected_at_least": expected, "ok": ok,
            "instance": instance_value(&problem, &g, &lab),
        }),
        ok,
    })
}

fn tree(action: &TreeAction) -> Result<Outcome> {
    match action {
        TreeAction::Decompose { graph, k } => {
            let g = io::from_json(&read_file(graph)?)?.graph;
            let layers = tree_mend::rake_compress(&g, *k)?;
            let sep = tree_mend::check_separation(&g, &layers);
            let forest = tree_mend::check_forest_radius(&g, &layers);
            let text = format!(
                "{} layers, {} compress path(s), |Z| = {}, separation {}, forest radius {} (bound {}{})\n",
                layers.num_layers,
                layers.compress_paths.len(),
                layers.z.len(),
                if sep.is_empty() { "ok".to_string() } else { format!("{} violation(s)", sep.len()) },
                forest.max_radius,
                forest.bound,
                if forest.flagged.is_empty() { "" } else { ", FLAGGED" }
            );
            Ok(Outcome {
                text,
                json: json!({
                    "layers": layers.to_json_map(),
                    "num_layers": layers.num_layers,
                    "z": layers.z,
                    "separation_violations": sep,
                    "forest": forest,
                }),
                ok: sep.is_empty(),
            })
        }
        TreeAction::Mend { problem, graph, node, k } => {
            let problem = problems::make(problem)?;
            let (g, lam) = load(&problem, graph)?;
            let rep = tree_mend::mend_tree_layered_report(&problem, &g, &lam, *node, *k)?;
            let within = rep.mend.radius <= rep.envelope;
            let text = format!(
                "mend at node {}: radius {}, envelope {}, {} layer(s), {} recursion step(s)\n",
                node,
                rep.mend.radius,
                rep.envelope,
                rep.num_layers,
                rep.steps.len()
            );
            let mut json = mend_value(&problem, &g, &lam, &rep.mend);
            json["envelope"] = json!(rep.envelope);
            json["steps"] = serde_json::to_value(&rep.steps).expect("steps serialize");
            Ok(Outcome { text, json, ok: within })
        }
    }
}

fn problems_list() -> Result<Outcome> {
    let mut text = format!("{:<28} {:>2}  alphabet\n", "id", "r");
    let mut rows = Vec::new();
    let mut ids = problems::CATALOG.to_vec();
    ids.sort_unstable();
    for id in ids {
        let p = problems::make(id)?;
        let _ = writeln!(text, "{:<28} {:>2}  {}", id, p.radius, p.outputs.join(" "));
        rows.push(json!({"id": id, "radius": p.radius, "outputs": p.outputs}));
    }
    Ok(Outcome::ok(text, json!({"problems": rows})))
}
