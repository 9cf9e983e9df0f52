//! Catalog of concrete problems and their dedicated menders.

pub mod grid4;
pub mod orientation;
pub mod trees;

use crate::automata::{self, PathSpec, RestrictMode};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::lcl::{Label, LclProblem, View};

pub use grid4::mend_grid4;
pub use trees::{mend_binary3col_restricted, mend_deltacol_restricted, solve_shift_down};

/// Problem ids understood by [`make`]; parameterized ones show a sample.
pub const CATALOG: &[&str] = &[
    "coloring:3",
    "grid4",
    "grid5",
    "ab123",
    "orientation134",
    "binary3col",
    "binary3col_restricted",
    "deltacol_restricted:3:1",
    "pointer_lcl",
    "overlap_cycles",
    "binary3col_rigid_v1",
    "binary3col_rigid_v2",
    "restricted:ab123:directed",
];

pub fn make(id: &str) -> Result<LclProblem> {
    let parts: Vec<&str> = id.split(':').collect();
    let num = |s: &str| -> Result<usize> {
        s.parse().map_err(|_| Error::UnknownProblem(id.to_string()))
    };
    match parts.as_slice() {
        ["coloring", k] => coloring(id, num(k)?),
        ["grid4"] => coloring(id, 4),
        ["grid5"] => coloring(id, 5),
        ["binary3col"] => coloring(id, 3),
        ["ab123"] => ab123(),
        ["orientation134"] => Ok(orientation::problem()),
        ["binary3col_restricted"] => Ok(trees::restricted_coloring(id, 3, 1)),
        ["deltacol_restricted", d, k] => {
            let (d, k) = (num(d)?, num(k)?);
            if d < 3 || k < 1 {
                return Err(Error::InvalidParams("deltacol_restricted needs Δ >= 3 and k >= 1".into()));
            }
            Ok(trees::restricted_coloring(id, d, k))
        }
        ["pointer_lcl"] => Ok(crate::pointer::problem()),
        ["overlap_cycles"] => Ok(trees::overlap_cycles_problem()),
        ["binary3col_rigid_v1"] => Ok(trees::rigid_problem(1)),
        ["binary3col_rigid_v2"] => Ok(trees::rigid_problem(2)),
        ["restricted", base, mode] => restricted(id, base, mode.parse()?),
        _ => Err(Error::UnknownProblem(id.to_string())),
    }
}

fn digit_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| i.to_string()).collect()
}

/// Proper k-coloring, any degree.
pub fn coloring(id: &str, k: usize) -> Result<LclProblem> {
    if k == 0 || k > Label::MAX as usize {
        return Err(Error::InvalidParams(format!("bad palette size {k}")));
    }
    let mut p = LclProblem::new_local(id, digit_names(k), 1, |view: &View| {
        let c = view.center_label();
        view.graph.neighbors(view.center).all(|u| view.label(u) != c)
    })
    .with_pair_filter(|_: &Graph, _: NodeId, a: Label, _: NodeId, b: Label| a != b);
    let edges: Vec<(Label, Label)> = (0..k as Label)
        .flat_map(|a| (0..k as Label).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let names: Vec<&str> = p.outputs.iter().map(String::as_str).collect();
    p.path_spec = Some(PathSpec::node_labeled(&names, &edges, false));
    Ok(p)
}

pub fn ab123_spec() -> PathSpec {
    // A=0 B=1 1=2 2=3 3=4
    PathSpec::node_labeled(&["A", "B", "1", "2", "3"], &[(0, 1), (2, 3), (2, 4), (3, 4)], true)
}

/// Either a 2-coloring with {A,B} or a 3-coloring with {1,2,3}, never mixed.
pub fn ab123() -> Result<LclProblem> {
    ab123_spec().to_table_problem("ab123")
}

/// Problem induced by the restricted diagram of `base`'s path spec.
pub fn restricted(id: &str, base: &str, mode: RestrictMode) -> Result<LclProblem> {
    let base = make(base)?;
    let spec = base
        .path_spec
        .ok_or_else(|| Error::InvalidParams(format!("`{}` has no path form", base.id)))?;
    let r = automata::restrict(&automata::build_diagram(&spec), mode)?;
    let mut p = r.diagram.spec.to_problem(id)?;
    p.outputs = spec.labels;
    Ok(p)
}

pub fn restriction_of(base: &str, mode: RestrictMode) -> Result<automata::Restriction> {
    let base = make(base)?;
    let spec = base
        .path_spec
        .ok_or_else(|| Error::InvalidParams(format!("`{}` has no path form", base.id)))?;
    automata::restrict(&automata::build_diagram(&spec), mode)
}
