//! Python bindings for the qline workbench.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qline_core::expr::{parse_poly, parse_scalar as core_parse_scalar, Alphabet, Context};
use qline_core::pointalg::PointAlgebra as CorePointAlgebra;
use qline_core::poisson::{LambdaMatrix as CoreLambda, PoissonContext};
use qline_core::projcoord::{cross_ratio_table, parse_perm, MuPair, ProjAlgebra};
use qline_core::report::{Report as CoreReport, Status};
use qline_core::suites::{self, SuiteConfig, DEFAULT_SEED};
use qline_core::uqaction::{act as core_act, ActionTable, UqOp};
use qline_core::NCPoly;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn labels_of(p: &NCPoly) -> Vec<u32> {
    let mut l: Vec<u32> = p.terms().keys().flat_map(|w| w.letters().iter().map(|g| g.index)).collect();
    l.sort_unstable();
    l.dedup();
    l
}

/// Antisymmetric lambda matrix on a set of point labels.
#[pyclass(module = "qline", skip_from_py_object)]
#[derive(Clone)]
struct LambdaMatrix {
    inner: CoreLambda,
}

#[pymethods]
impl LambdaMatrix {
    /// Preset on the labels 1..=n: ones, zero, symbolic, exceptional, coth, coth:<k>, ...
    #[staticmethod]
    #[pyo3(signature = (name, n=3))]
    fn preset(name: &str, n: u32) -> PyResult<Self> {
        Ok(LambdaMatrix { inner: suites::lambda_preset(name, n).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(LambdaMatrix { inner: suites::lambda_from_json(text).map_err(err)? })
    }

    fn labels(&self) -> Vec<u32> {
        self.inner.labels().to_vec()
    }

    fn get(&self, i: u32, j: u32) -> String {
        self.inner.get(i, j).to_string()
    }

    /// Sets `lambda_ij` (and `lambda_ji = -lambda_ij`) from scalar text.
    fn set(&mut self, i: u32, j: u32, value: &str) -> PyResult<()> {
        if !self.inner.contains(i) || !self.inner.contains(j) || i == j {
            return Err(PyValueError::new_err(format!("no pair ({i}, {j})")));
        }
        self.inner.set(i, j, core_parse_scalar(value).map_err(err)?);
        Ok(())
    }

    fn jacobi_defect(&self, i: u32, j: u32, k: u32) -> PyResult<String> {
        Ok(PoissonContext::new(self.inner.clone()).jacobi_defect(i, j, k).map_err(err)?.to_string())
    }

    fn __repr__(&self) -> String {
        let pairs: Vec<String> = self.inner.pairs().iter().map(|&(i, j)| format!("{i},{j}: {}", self.inner.get(i, j))).collect();
        format!("LambdaMatrix({{{}}})", pairs.join(", "))
    }
}

/// Quadratic point algebra for a lambda matrix.
#[pyclass(module = "qline")]
struct PointAlgebra {
    inner: CorePointAlgebra,
}

#[pymethods]
impl PointAlgebra {
    #[new]
    fn new(lam: &LambdaMatrix) -> Self {
        PointAlgebra { inner: CorePointAlgebra::real(lam.inner.clone()) }
    }

    #[staticmethod]
    fn exceptional(labels: Vec<u32>) -> Self {
        PointAlgebra { inner: CorePointAlgebra::exceptional(labels) }
    }

    fn graded_dimension(&self, degree: usize) -> PyResult<usize> {
        self.inner.graded_dimension(degree).map_err(err)
    }

    fn pbw_eligible(&self) -> bool {
        self.inner.pbw_eligible()
    }

    /// Normal form of an expression in the `v` letters, degree at most 3.
    fn normal_form(&self, expr: &str) -> PyResult<String> {
        let ctx = Context::new(Alphabet::Point, Some(self.inner.labels().to_vec()));
        let p = parse_poly(expr, &ctx).map_err(err)?;
        Ok(self.inner.normal_form_deg3(&p).map_err(err)?.to_string())
    }
}

/// Homogeneous coordinate algebra; every pair shares the same `mu1`, `mu2`
/// (default `q^2`, `q`).
#[pyclass(module = "qline")]
struct CoordinateAlgebra {
    inner: ProjAlgebra,
}

#[pymethods]
impl CoordinateAlgebra {
    #[new]
    #[pyo3(signature = (labels, mu1=None, mu2=None))]
    fn new(labels: Vec<u32>, mu1: Option<&str>, mu2: Option<&str>) -> PyResult<Self> {
        let inner = match (mu1, mu2) {
            (None, None) => ProjAlgebra::ones(labels).map_err(err)?,
            (Some(a), Some(b)) => {
                let m = MuPair::new(core_parse_scalar(a).map_err(err)?, core_parse_scalar(b).map_err(err)?);
                let base = ProjAlgebra::new(labels).map_err(err)?;
                base.pairs().into_iter().fold(base, |alg, (i, j)| alg.with_pair(i, j, m.clone()))
            }
            _ => return Err(PyValueError::new_err("give both mu1 and mu2, or neither")),
        };
        Ok(CoordinateAlgebra { inner })
    }

    fn lambda_of(&self, i: u32, j: u32) -> PyResult<String> {
        Ok(self.inner.lambda(i, j).map_err(err)?.to_string())
    }

    fn normal_form(&self, expr: &str) -> PyResult<String> {
        let ctx = Context::new(Alphabet::Coordinates, Some(self.inner.labels().to_vec()));
        let p = parse_poly(expr, &ctx).map_err(err)?;
        Ok(self.inner.normal_form(&p).map_err(err)?.to_string())
    }
}

/// Result of a verification suite.
#[pyclass(module = "qline")]
struct Report {
    inner: CoreReport,
}

#[pymethods]
impl Report {
    #[getter]
    fn suite(&self) -> String {
        self.inner.suite.clone()
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.inner.seed
    }

    #[getter]
    fn passed(&self) -> bool {
        self.inner.passed()
    }

    /// One dict per check: id, anchor, status, residue, wall_ms.
    fn checks<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        self.inner
            .checks
            .iter()
            .map(|c| {
                let d = PyDict::new(py);
                d.set_item("id", &c.id)?;
                d.set_item("anchor", &c.anchor)?;
                let status = match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "fail",
                    Status::Skip => "skip",
                };
                d.set_item("status", status)?;
                d.set_item("residue", c.residue.clone())?;
                d.set_item("wall_ms", c.wall_ms)?;
                Ok(d)
            })
            .collect()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __str__(&self) -> String {
        self.inner.to_text()
    }
}

#[pyfunction]
fn suite_names() -> Vec<&'static str> {
    suites::SUITES.to_vec()
}

#[pyfunction]
#[pyo3(signature = (name, seed=DEFAULT_SEED, lam=None, degree=None))]
fn run_suite(name: &str, seed: u64, lam: Option<&LambdaMatrix>, degree: Option<usize>) -> PyResult<Report> {
    let mut cfg = SuiteConfig::new(seed);
    cfg.lambda = lam.map(|l| l.inner.clone());
    cfg.degree = degree;
    Ok(Report { inner: suites::run_suite(name, &cfg).map_err(err)? })
}

/// Canonical rendering of a scalar expression.
#[pyfunction]
fn parse_scalar(text: &str) -> PyResult<String> {
    Ok(core_parse_scalar(text).map_err(err)?.to_string())
}

/// Applies E, F, K or Kinv to an expression; `algebra` is "point" or "coordinates".
#[pyfunction]
#[pyo3(signature = (op, expr, algebra="point"))]
fn act(op: &str, expr: &str, algebra: &str) -> PyResult<String> {
    let op = UqOp::parse(op).ok_or_else(|| PyValueError::new_err(format!("unknown operator '{op}'")))?;
    let (alpha, table) = match algebra {
        "point" => (Alphabet::Point, ActionTable::Point),
        "coordinates" => (Alphabet::Coordinates, ActionTable::Projective),
        other => return Err(PyValueError::new_err(format!("unknown algebra '{other}'"))),
    };
    let p = parse_poly(expr, &Context::new(alpha, None)).map_err(err)?;
    let mut image = core_act(table, op, &p).map_err(err)?;
    if alpha == Alphabet::Coordinates {
        image = ProjAlgebra::ones(labels_of(&image)).map_err(err)?.normal_form(&image).map_err(err)?;
    }
    Ok(image.to_string())
}

/// Cross ratio of a rearrangement of (1,2,3,4), e.g. "ilkj", in terms of C[1,2,3,4].
#[pyfunction]
fn cross_ratio<'py>(py: Python<'py>, perm: &str) -> PyResult<Bound<'py, PyDict>> {
    let p = parse_perm(perm).map_err(err)?;
    let table = cross_ratio_table([1, 2, 3, 4]).map_err(err)?;
    let v = table.value(p);
    let d = PyDict::new(py);
    d.set_item("value", v.to_string())?;
    d.set_item("star", table.star_value(v).map_err(err)?.to_string())?;
    d.set_item("quantum", table.quantum(p).map_err(err)?.to_string())?;
    Ok(d)
}

#[pymodule]
fn qline(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<LambdaMatrix>()?;
    m.add_class::<PointAlgebra>()?;
    m.add_class::<CoordinateAlgebra>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(suite_names, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(parse_scalar, m)?)?;
    m.add_function(wrap_pyfunction!(act, m)?)?;
    m.add_function(wrap_pyfunction!(cross_ratio, m)?)?;
    Ok(())
}
