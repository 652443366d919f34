use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use isotemporal_core as core;
use isotemporal_core::classes::{
    brute_force_classes_with_limit, swap_closure_classes_with_limit, DEFAULT_EDGE_LIMIT,
};
use isotemporal_core::formulas::{formula_count, lattice_for};
use isotemporal_core::verify::VerifyOptions;
use isotemporal_core::FamilySpec;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn family(spec: &str) -> PyResult<FamilySpec> {
    spec.parse().map_err(err)
}

/// A pseudograph whose edges carry the labels 1..t exactly once.
#[pyclass(
    name = "TemporalNetwork",
    module = "isotemporal",
    frozen,
    eq,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
struct PyTemporalNetwork {
    inner: core::TemporalNetwork,
}

#[pymethods]
impl PyTemporalNetwork {
    #[new]
    fn new(vertex_count: usize, edges: Vec<(usize, usize)>, labels: Vec<usize>) -> PyResult<Self> {
        let graph = core::Pseudograph::new(vertex_count, edges).map_err(err)?;
        let inner = core::TemporalNetwork::from_labels(graph, labels).map_err(err)?;
        Ok(Self { inner })
    }

    /// Parse the `vertices:` / `edges:` text format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: core::parse_network(text).map_err(err)?,
        })
    }

    /// Labels 1..t assigned to a family's edges in generation order.
    #[staticmethod]
    fn from_family(spec: &str) -> PyResult<Self> {
        let graph = core::generate(&family(spec)?).map_err(err)?;
        let labels = (1..=graph.edge_count()).collect();
        Ok(Self {
            inner: core::TemporalNetwork::from_labels(graph, labels).map_err(err)?,
        })
    }

    fn to_text(&self) -> String {
        core::serialize_network(&self.inner)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.graph().vertex_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.graph().edges().to_vec()
    }

    #[getter]
    fn labels(&self) -> Vec<usize> {
        self.inner.labels().to_vec()
    }

    fn relabeled(&self, labels: Vec<usize>) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.relabeled(labels).map_err(err)?,
        })
    }

    /// Every temporal path as `(labels, vertex trace)`.
    fn paths(&self) -> PyResult<Vec<(Vec<usize>, Vec<usize>)>> {
        let paths = core::temporal_paths(&self.inner).map_err(err)?;
        Ok(paths
            .iter()
            .map(|p| (p.labels(&self.inner), p.trace().to_vec()))
            .collect())
    }

    fn max_path_length(&self) -> usize {
        core::max_temporal_path_length(&self.inner)
    }

    fn canonical(&self) -> PyResult<Self> {
        Ok(Self {
            inner: core::canonical_labeling(&self.inner).map_err(err)?,
        })
    }

    fn is_label_isomorphic(&self, other: PyRef<'_, Self>) -> PyResult<bool> {
        core::is_label_isomorphic(&self.inner, &other.inner).map_err(err)
    }

    fn is_temporally_isomorphic(&self, other: PyRef<'_, Self>) -> PyResult<bool> {
        core::is_temporal_isomorphic(&self.inner, &other.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "TemporalNetwork(vertex_count={}, edges={:?}, labels={:?})",
            self.vertex_count(),
            self.edges(),
            self.labels()
        )
    }
}

#[pyfunction]
fn is_temporal_isomorphic(
    a: PyRef<'_, PyTemporalNetwork>,
    b: PyRef<'_, PyTemporalNetwork>,
) -> PyResult<bool> {
    core::is_temporal_isomorphic(&a.inner, &b.inner).map_err(err)
}

/// `(vertex_count, edges)` of a family such as `"diaster:2,3"`.
#[pyfunction]
fn generate(spec: &str) -> PyResult<(usize, Vec<(usize, usize)>)> {
    let graph = core::generate(&family(spec)?).map_err(err)?;
    Ok((graph.vertex_count(), graph.edges().to_vec()))
}

/// Class count by `"formula"`, `"lattice"`, `"brute"` or `"swap"`; `None` when not covered.
#[pyfunction]
#[pyo3(signature = (spec, method = "formula", limit = DEFAULT_EDGE_LIMIT))]
fn count(spec: &str, method: &str, limit: usize) -> PyResult<Option<u64>> {
    let spec = family(spec)?;
    match method {
        "formula" => Ok(formula_count(&spec).map_err(err)?.value),
        "lattice" => Ok(lattice_for(&spec).map_err(err)?.and_then(|r| r.value)),
        "brute" | "swap" => Ok(Some(partition(&spec, method, limit)?.class_count() as u64)),
        other => Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    }
}

fn partition(spec: &FamilySpec, method: &str, limit: usize) -> PyResult<core::ClassPartition> {
    let graph = core::generate(spec).map_err(err)?;
    match method {
        "brute" => brute_force_classes_with_limit(&graph, limit).map_err(err),
        "swap" => swap_closure_classes_with_limit(&graph, limit).map_err(err),
        other => Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    }
}

/// Canonical labelings grouped into classes.
#[pyfunction]
#[pyo3(signature = (spec, method = "brute", limit = DEFAULT_EDGE_LIMIT))]
fn classes(spec: &str, method: &str, limit: usize) -> PyResult<Vec<Vec<Vec<usize>>>> {
    Ok(partition(&family(spec)?, method, limit)?.blocks)
}

#[pyfunction]
fn diaster_formula(a: usize, b: usize) -> PyResult<Option<u64>> {
    Ok(core::diaster_formula(a, b).map_err(err)?.value)
}

#[pyfunction]
fn lattice_count(a: usize, b: usize) -> PyResult<Option<u64>> {
    Ok(core::lattice_count(a, b).map_err(err)?.value)
}

/// Positions `i` of adjacent swaps `(i, i + 1)` turning `a` into `b`.
#[pyfunction]
fn binary_swap_sequence(a: Vec<bool>, b: Vec<bool>) -> PyResult<Vec<usize>> {
    core::binary_swap_sequence(&a, &b).map_err(err)
}

/// Swaps `(label, edge, edge)` taking `n` to a relabeling of `m`, for diasters and stems.
#[pyfunction]
fn swap_script(
    n: PyRef<'_, PyTemporalNetwork>,
    m: PyRef<'_, PyTemporalNetwork>,
) -> PyResult<Vec<(usize, usize, usize)>> {
    let script = core::diaster_swap_permutation(&n.inner, &m.inner).map_err(err)?;
    Ok(script
        .steps
        .iter()
        .map(|s| (s.label, s.edges.0, s.edges.1))
        .collect())
}

/// One dict per family with every applicable count and the verdict.
#[pyfunction]
#[pyo3(signature = (max_edges = 6))]
fn verify<'py>(py: Python<'py>, max_edges: usize) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let options = VerifyOptions {
        max_edges,
        timing: false,
        ..VerifyOptions::default()
    };
    let rows = py.detach(|| core::verify::verify(&options)).map_err(err)?;
    rows.into_iter()
        .map(|row| {
            let d = PyDict::new(py);
            d.set_item("family", row.family)?;
            d.set_item("edges", row.edges)?;
            d.set_item("formula", row.formula)?;
            d.set_item("formula_basis", row.formula_basis.name())?;
            d.set_item("lattice", row.lattice)?;
            d.set_item("brute", row.brute)?;
            d.set_item("swap", row.swap)?;
            d.set_item("verdict", row.verdict.to_string())?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn isotemporal(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTemporalNetwork>()?;
    m.add_function(wrap_pyfunction!(is_temporal_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(classes, m)?)?;
    m.add_function(wrap_pyfunction!(diaster_formula, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_count, m)?)?;
    m.add_function(wrap_pyfunction!(binary_swap_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(swap_script, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
