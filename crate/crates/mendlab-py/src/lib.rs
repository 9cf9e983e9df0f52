//! Python module `mendlab`. Instances cross the boundary as the same JSON
//! text the command line reads and writes.

use std::collections::BTreeMap;

use mendlab::instances::{self, InstanceSpec};
use mendlab::{census, io, lcl, mender, problems, tree_mend, Error, LclProblem};
use pyo3::exceptions::{PyKeyError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::UnknownProblem(_) => PyKeyError::new_err(e.to_string()),
        Error::InvalidParams(_)
        | Error::Parse { .. }
        | Error::InvalidGraph(_)
        | Error::InvalidLabeling(_)
        | Error::Precondition(_)
        | Error::InvalidPartialSolution(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// A catalog problem.
#[pyclass(name = "Problem", module = "mendlab", frozen)]
struct PyProblem {
    inner: LclProblem,
}

#[pymethods]
impl PyProblem {
    #[new]
    fn new(id: &str) -> PyResult<Self> {
        problems::make(id).map(|inner| PyProblem { inner }).map_err(to_py)
    }

    #[getter]
    fn id(&self) -> &str {
        &self.inner.id
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.outputs.clone()
    }

    #[getter]
    fn radius(&self) -> usize {
        self.inner.radius
    }

    /// `(accepted, unhappy_nodes)` under the relaxed verifier.
    fn verify(&self, instance: &str) -> PyResult<(bool, Vec<usize>)> {
        let (g, lab) = io::read_labeled(&self.inner, instance).map_err(to_py)?;
        let verdict = lcl::accepts(&self.inner, &g, &lab).map_err(to_py)?;
        Ok((verdict.unhappy_nodes.is_empty(), verdict.unhappy_nodes))
    }

    /// Smallest mend of `node` within `max_radius`, or None.
    fn find_mend(&self, instance: &str, node: usize, max_radius: usize) -> PyResult<Option<PyMend>> {
        let (g, lam) = io::read_labeled(&self.inner, instance).map_err(to_py)?;
        let found = mender::find_mend(&self.inner, &g, &lam, node, max_radius).map_err(to_py)?;
        Ok(found.map(|m| PyMend {
            center: m.center,
            radius: m.radius,
            changes: m.changes.iter().map(|(&u, l)| (u, l.map(|l| self.inner.name(l).to_string()))).collect(),
            instance: io::write_labeled(&self.inner, &g, &m.apply(&lam)),
        }))
    }

    /// Minimal mend radius at `node`.
    fn mend_radius(&self, instance: &str, node: usize) -> PyResult<usize> {
        let (g, lam) = io::read_labeled(&self.inner, instance).map_err(to_py)?;
        mender::mend_radius_at(&self.inner, &g, &lam, node).map_err(to_py)
    }

    /// Random accepted partial labeling of an unlabeled instance.
    #[pyo3(signature = (instance, hole_prob=0.2, seed=0))]
    fn sample(&self, instance: &str, hole_prob: f64, seed: u64) -> PyResult<String> {
        if !(0.0..=1.0).contains(&hole_prob) {
            return Err(PyValueError::new_err("hole_prob must lie in [0, 1]"));
        }
        let g = io::from_json(instance).map_err(to_py)?.graph;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lab = mender::sample_accepted(&self.inner, &g, hole_prob, &mut rng);
        Ok(io::write_labeled(&self.inner, &g, &lab))
    }

    fn __repr__(&self) -> String {
        format!("Problem({:?})", self.inner.id)
    }
}

#[pyclass(name = "Mend", module = "mendlab", frozen, get_all)]
struct PyMend {
    center: usize,
    radius: usize,
    /// New label per changed node; None is a hole.
    changes: BTreeMap<usize, Option<String>>,
    /// The mended instance as JSON.
    instance: String,
}

#[pymethods]
impl PyMend {
    fn __repr__(&self) -> String {
        format!("Mend(center={}, radius={}, changed={})", self.center, self.radius, self.changes.len())
    }
}

#[pyfunction]
fn problem_ids() -> Vec<String> {
    let mut ids: Vec<String> = problems::CATALOG.iter().map(|s| s.to_string()).collect();
    ids.sort();
    ids
}

/// Instance JSON for a generated graph without labels.
#[pyfunction]
#[pyo3(signature = (kind, n=None, width=None, height=None, degree=None, depth=None, seed=0))]
fn generate(
    kind: &str,
    n: Option<usize>,
    width: Option<usize>,
    height: Option<usize>,
    degree: Option<usize>,
    depth: Option<usize>,
    seed: u64,
) -> PyResult<String> {
    let spec = InstanceSpec {
        kind: kind.parse().map_err(to_py)?,
        n,
        width,
        height,
        degree,
        depth,
        seed: Some(seed),
    };
    let g = instances::generate(&spec).map_err(to_py)?;
    Ok(io::to_json(&g, None))
}

#[pyfunction]
fn lower_bound_instance(problem_id: &str, n: usize) -> PyResult<String> {
    let p = problems::make(problem_id).map_err(to_py)?;
    let (g, lab) = instances::lower_bound_instance(problem_id, n).map_err(to_py)?;
    Ok(io::write_labeled(&p, &g, &lab))
}

/// `(total, mendable, failures)` of the 3×3 orientation census.
#[pyfunction]
fn census_134() -> (usize, usize, usize) {
    let r = census::census();
    (r.total, r.mendable, r.failures.len())
}

/// Rake-and-compress layer names, indexed by node.
#[pyfunction]
fn rake_compress(instance: &str, k: usize) -> PyResult<Vec<String>> {
    let g = io::from_json(instance).map_err(to_py)?.graph;
    let layers = tree_mend::rake_compress(&g, k).map_err(to_py)?;
    Ok(layers.layer_label.iter().map(|l| l.to_string()).collect())
}

/// Runs the command line with `args` and returns `(exit_code, stdout)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String) {
    let mut out = Vec::new();
    let code = mendlab::cli::run(std::iter::once("mendlab".to_string()).chain(args), &mut out);
    (code, String::from_utf8_lossy(&out).into_owned())
}

#[pymodule]
#[pyo3(name = "mendlab")]
fn mendlab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyProblem>()?;
    m.add_class::<PyMend>()?;
    m.add_function(wrap_pyfunction!(problem_ids, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound_instance, m)?)?;
    m.add_function(wrap_pyfunction!(census_134, m)?)?;
    m.add_function(wrap_pyfunction!(rake_compress, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
