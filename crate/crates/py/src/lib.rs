//! Python module `subdiff`.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use subdiff::assumptions::{check_inequalities, CertifyOptions};
use subdiff::presets::{CoeffPreset, InitialPreset, SourcePreset};
use subdiff::{BoundaryCondition, CylinderSpec, Error};

fn err(e: Error) -> PyErr {
    match e {
        Error::Quadrature(_) | Error::Bracket(_) | Error::Singular { .. } | Error::NonFinite { .. } | Error::DegenerateFit { .. } => {
            PyArithmeticError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A kernel pair (k, l) with k ∗ l = 1.
#[pyclass(name = "KernelSpec", module = "subdiff", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyKernelSpec(subdiff::KernelSpec);

fn measure(atoms: Vec<(f64, f64)>, weight: Vec<f64>) -> PyResult<subdiff::Measure> {
    subdiff::Measure::new(atoms, weight).map_err(err)
}

#[pymethods]
impl PyKernelSpec {
    #[staticmethod]
    #[pyo3(signature = (alpha, gamma = 0.0))]
    fn frac_exp(alpha: f64, gamma: f64) -> PyResult<Self> {
        subdiff::KernelSpec::frac_exp(alpha, gamma).map(Self).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (alpha, gamma = 0.0))]
    fn switched_frac_exp(alpha: f64, gamma: f64) -> PyResult<Self> {
        subdiff::KernelSpec::switched_frac_exp(alpha, gamma).map(Self).map_err(err)
    }

    /// `atoms` is a list of (order, mass); `weight` a density on equal cells of (0, 1).
    #[staticmethod]
    #[pyo3(signature = (atoms = Vec::new(), weight = Vec::new()))]
    fn distributed(atoms: Vec<(f64, f64)>, weight: Vec<f64>) -> PyResult<Self> {
        subdiff::KernelSpec::distributed(measure(atoms, weight)?).map(Self).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (atoms = Vec::new(), weight = Vec::new()))]
    fn switched_distributed(atoms: Vec<(f64, f64)>, weight: Vec<f64>) -> PyResult<Self> {
        subdiff::KernelSpec::switched_distributed(measure(atoms, weight)?).map(Self).map_err(err)
    }

    #[getter]
    fn family(&self) -> &'static str {
        self.0.family().name()
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.0.alpha()
    }

    #[getter]
    fn gamma(&self) -> f64 {
        self.0.gamma()
    }

    fn k(&self, t: f64) -> PyResult<f64> {
        subdiff::eval_k(&self.0, t).map_err(err)
    }

    fn l(&self, t: f64) -> PyResult<f64> {
        subdiff::eval_l(&self.0, t).map_err(err)
    }

    fn one_conv_l(&self, t: f64) -> PyResult<f64> {
        subdiff::one_conv_l(&self.0, t).map_err(err)
    }

    fn k1(&self, t: f64) -> PyResult<f64> {
        subdiff::k1(&self.0, t).map_err(err)
    }

    fn r0(&self) -> f64 {
        subdiff::r0(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("KernelSpec.{}", self.0)
    }
}

/// Φ with k₁(Φ(r)) = r⁻², on radii below r₀.
#[pyclass(name = "PhiSolver", module = "subdiff", frozen)]
pub struct PyPhiSolver(subdiff::PhiSolver);

#[pymethods]
impl PyPhiSolver {
    #[new]
    #[pyo3(signature = (spec, horizon = 1.0))]
    fn new(spec: &PyKernelSpec, horizon: f64) -> PyResult<Self> {
        subdiff::PhiSolver::new(&spec.0, horizon).map(Self).map_err(err)
    }

    fn phi(&self, r: f64) -> PyResult<f64> {
        self.0.phi(r).map_err(err)
    }

    fn r_star(&self) -> f64 {
        self.0.r_star()
    }

    /// (Q₋, Q₊) as (t_lo, t_hi, x_lo, x_hi) tuples.
    #[pyo3(signature = (r, t0 = 0.0, x0 = 0.5, delta = 0.5, tau = 0.05))]
    fn boxes(&self, r: f64, t0: f64, x0: f64, delta: f64, tau: f64) -> PyResult<((f64, f64, f64, f64), (f64, f64, f64, f64))> {
        let c = CylinderSpec { t0, x0, r, delta, tau };
        let (m, p) = subdiff::make_boxes(&c, &self.0).map_err(err)?;
        Ok(((m.t_lo, m.t_hi, m.x_lo, m.x_hi), (p.t_lo, p.t_hi, p.x_lo, p.x_hi)))
    }
}

/// A solved field u(t_i, x_j).
#[pyclass(name = "Field", module = "subdiff", frozen)]
pub struct PyField(subdiff::DiscreteField);

#[pymethods]
impl PyField {
    #[getter]
    fn times(&self) -> Vec<f64> {
        self.0.times().to_vec()
    }

    #[getter]
    fn xs(&self) -> Vec<f64> {
        self.0.xs().to_vec()
    }

    fn row(&self, i: usize) -> PyResult<Vec<f64>> {
        if i >= self.0.times().len() {
            return Err(PyValueError::new_err(format!("row {i} out of range")));
        }
        Ok(self.0.row(i).to_vec())
    }

    fn values(&self) -> Vec<Vec<f64>> {
        (0..self.0.times().len()).map(|i| self.0.row(i).to_vec()).collect()
    }

    fn scaled(&self, factor: f64) -> Self {
        Self(self.0.scaled(factor))
    }

    fn min(&self) -> f64 {
        self.0.min()
    }

    /// Weighted p-mean over Q₋ against the grid minimum over Q₊.
    #[pyo3(signature = (solver, r, p, q1, q2, d, p0, f_norm = 0.0, t0 = 0.0, x0 = 0.5, delta = 0.5, tau = 0.05))]
    #[allow(clippy::too_many_arguments)]
    fn harnack_ratio<'py>(
        &self,
        py: Python<'py>,
        solver: &PyPhiSolver,
        r: f64,
        p: f64,
        q1: f64,
        q2: f64,
        d: f64,
        p0: f64,
        f_norm: f64,
        t0: f64,
        x0: f64,
        delta: f64,
        tau: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let norm = subdiff::MixedNormSpec::new(q1, q2, d, p0).map_err(err)?;
        let c = CylinderSpec { t0, x0, r, delta, tau };
        let rep = subdiff::harnack_ratio(&self.0, &c, p, &norm, f_norm, &solver.0).map_err(err)?;
        let out = PyDict::new(py);
        out.set_item("lhs", rep.lhs)?;
        out.set_item("ess_inf_plus", rep.ess_inf_plus)?;
        out.set_item("f_term", rep.f_term)?;
        out.set_item("C_empirical", rep.c_empirical)?;
        Ok(out)
    }

    /// Oscillations over nested cylinders and the fitted decay exponent.
    #[pyo3(signature = (solver, t1, x1, r, theta, levels, p0, error_floor = 0.0))]
    #[allow(clippy::too_many_arguments)]
    fn hoelder_decay(
        &self,
        solver: &PyPhiSolver,
        t1: f64,
        x1: f64,
        r: f64,
        theta: f64,
        levels: u32,
        p0: f64,
        error_floor: f64,
    ) -> PyResult<(Vec<f64>, Option<f64>)> {
        let rep = subdiff::hoelder_decay(&self.0, t1, x1, r, theta, levels, &solver.0, p0, error_floor).map_err(err)?;
        Ok((rep.levels.iter().map(|l| l.1).collect(), rep.kappa_fit))
    }
}

/// Solves ∂ₜ(k ∗ (u − u₀)) − ∂ₓ(A ∂ₓu) = f on (x_left, x_right) with presets
/// given as strings, e.g. `A="checkerboard_A(1, 10)"`, `bc=(0.0, 0.0)` or
/// `bc=None` for Neumann.
#[pyfunction]
#[pyo3(signature = (spec, t_max, nt, nx, grading = None, a = "constant_A(1)", u0 = "sin_pi(1)", f = "zero", bc = Some((0.0, 0.0)), x_left = 0.0, x_right = 1.0))]
#[allow(clippy::too_many_arguments)]
fn solve(
    spec: &PyKernelSpec,
    t_max: f64,
    nt: usize,
    nx: usize,
    grading: Option<f64>,
    a: &str,
    u0: &str,
    f: &str,
    bc: Option<(f64, f64)>,
    x_left: f64,
    x_right: f64,
) -> PyResult<PyField> {
    let coeff: CoeffPreset = a.parse().map_err(err)?;
    let init: InitialPreset = u0.parse().map_err(err)?;
    let src: SourcePreset = f.parse().map_err(err)?;
    let (nu, lambda) = coeff.bounds();
    let mut p = subdiff::ProblemSpec::new(spec.0.clone(), x_left, x_right, t_max)
        .with_coeff(coeff.evaluator(), nu, lambda)
        .with_u0(init.evaluator(x_left, x_right))
        .with_bc(match bc {
            Some((left, right)) => BoundaryCondition::Dirichlet { left, right },
            None => BoundaryCondition::Neumann,
        });
    if !src.is_zero() {
        p = p.with_source(src.evaluator(x_left, x_right));
    }
    let g = grading.unwrap_or_else(|| subdiff::mesh::default_grading(spec.0.alpha()));
    subdiff::solve(&p, nt, nx, g).map(PyField).map_err(err)
}

/// Certified constants and sampled inequality checks as a dict.
#[pyfunction]
#[pyo3(signature = (spec, samples = 200, seed = 0, p0 = None))]
fn certify<'py>(py: Python<'py>, spec: &PyKernelSpec, samples: usize, seed: u64, p0: Option<f64>) -> PyResult<Bound<'py, PyDict>> {
    let opts = CertifyOptions { p0, ..CertifyOptions::default() };
    let cert = subdiff::certify(&spec.0, &opts).map_err(err)?;
    let rep = check_inequalities(&spec.0, &cert, samples, seed).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("p0", cert.p0)?;
    out.set_item("t0", cert.t0)?;
    out.set_item("c_bar", cert.c_bar)?;
    out.set_item("t_tilde0", cert.t_tilde0)?;
    out.set_item("c_tilde", cert.c_tilde)?;
    out.set_item("beta", cert.beta)?;
    out.set_item("kl_residual", cert.max_residual_kl)?;
    out.set_item("pass", cert.pass() && rep.pass())?;
    let v: Vec<(&str, usize)> = rep.checks.iter().map(|c| (c.name, c.violations)).collect();
    out.set_item("violations", v)?;
    Ok(out)
}

/// (h_n at the nodes, k_n at the nodes) on a graded mesh of [0, t_max].
#[pyfunction]
#[pyo3(signature = (spec, n, t_max = 1.0, nt = 1024, grading = 2.0))]
fn resolvent(spec: &PyKernelSpec, n: u32, t_max: f64, nt: usize, grading: f64) -> PyResult<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let mesh = subdiff::TimeMesh::new(t_max, nt, grading).map_err(err)?;
    let r = subdiff::resolvent(&spec.0, n, &mesh).map_err(err)?;
    Ok((mesh.nodes().to_vec(), r.h_values().to_vec(), r.k_n_values().to_vec()))
}

/// Solves v + l ∗ (θ v) = l ∗ rhs with θ and rhs given as functions of t.
#[pyfunction]
#[pyo3(signature = (spec, theta, rhs, t_max = 1.0, nt = 512, grading = 2.0))]
fn solve_second_kind(
    spec: &PyKernelSpec,
    theta: Bound<'_, PyAny>,
    rhs: Bound<'_, PyAny>,
    t_max: f64,
    nt: usize,
    grading: f64,
) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let mesh = subdiff::TimeMesh::new(t_max, nt, grading).map_err(err)?;
    let sample = |f: &Bound<'_, PyAny>| -> PyResult<Vec<f64>> {
        mesh.nodes().iter().map(|t| f.call1((*t,))?.extract::<f64>()).collect()
    };
    let (th, g) = (sample(&theta)?, sample(&rhs)?);
    let lw = subdiff::ConvolutionWeights::for_spec(&spec.0, subdiff::Side::L, &mesh, subdiff::WeightMode::PiecewiseLinear)
        .map_err(err)?;
    let v = subdiff::solve_second_kind(&lw, &th, &g).map_err(err)?;
    Ok((mesh.nodes().to_vec(), v))
}

#[pyfunction]
fn critical_exponent(p0: f64, n: u32) -> f64 {
    subdiff::critical_exponent(p0, n)
}

#[pyfunction]
#[pyo3(signature = (alpha, z, beta = 1.0))]
fn mittag_leffler(alpha: f64, z: f64, beta: f64) -> f64 {
    subdiff::mittag_leffler(alpha, beta, z)
}

#[pyfunction]
fn presets() -> Vec<(&'static str, &'static str)> {
    subdiff::presets::listing()
}

#[pymodule]
#[pyo3(name = "subdiff")]
fn subdiff_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyKernelSpec>()?;
    m.add_class::<PyPhiSolver>()?;
    m.add_class::<PyField>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(resolvent, m)?)?;
    m.add_function(wrap_pyfunction!(solve_second_kind, m)?)?;
    m.add_function(wrap_pyfunction!(critical_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(mittag_leffler, m)?)?;
    m.add_function(wrap_pyfunction!(presets, m)?)?;
    Ok(())
}

