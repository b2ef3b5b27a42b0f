//! Implicit solver for ∂ₜ(k ∗ (u − u₀)) − ∂ₓ(A ∂ₓu) = f on an interval,
//! plus mixed Lebesgue norms of space-time data.
//!
//! The memory term at t_n is Σⱼ κ_{n,j}(v^{j+1} − v^j)/Δtⱼ with
//! κ_{n,j} = ∫_{t_j}^{t_{j+1}} k(t_n − s) ds and v = u − u₀; the flux uses
//! the harmonic mean of A at neighbouring nodes.

use crate::convolution::{ConvolutionWeights, WeightMode};
use crate::error::{Error, Result};
use crate::kernel::{KernelSpec, Side};
use crate::mesh::TimeMesh;
use crate::scaling::{PhiSolver, SpaceTimeBox};
use std::fmt;
use std::io::{self, BufRead, Write};
use std::sync::Arc;

pub type SpaceTimeFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
pub type SpaceFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryCondition {
    Dirichlet { left: f64, right: f64 },
    /// Zero flux at both ends.
    Neumann,
}

#[derive(Clone)]
pub struct ProblemSpec {
    pub kernel: KernelSpec,
    pub x_left: f64,
    pub x_right: f64,
    pub t_max: f64,
    pub coeff_a: SpaceTimeFn,
    pub nu: f64,
    pub lambda: f64,
    pub u0: SpaceFn,
    pub f: SpaceTimeFn,
    pub bc: BoundaryCondition,
    /// Free-form description carried into reports.
    pub label: String,
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("kernel", &self.kernel)
            .field("domain", &(self.x_left, self.x_right))
            .field("t_max", &self.t_max)
            .field("nu", &self.nu)
            .field("lambda", &self.lambda)
            .field("bc", &self.bc)
            .field("label", &self.label)
            .finish()
    }
}

impl ProblemSpec {
    /// A ≡ 1, u₀ ≡ 0, f ≡ 0, homogeneous Dirichlet data.
    pub fn new(kernel: KernelSpec, x_left: f64, x_right: f64, t_max: f64) -> Self {
        Self {
            kernel,
            x_left,
            x_right,
            t_max,
            coeff_a: Arc::new(|_, _| 1.0),
            nu: 1.0,
            lambda: 1.0,
            u0: Arc::new(|_| 0.0),
            f: Arc::new(|_, _| 0.0),
            bc: BoundaryCondition::Dirichlet { left: 0.0, right: 0.0 },
            label: String::new(),
        }
    }

    pub fn with_coeff(mut self, a: SpaceTimeFn, nu: f64, lambda: f64) -> Self {
        self.coeff_a = a;
        self.nu = nu;
        self.lambda = lambda;
        self
    }

    pub fn with_u0(mut self, u0: SpaceFn) -> Self {
        self.u0 = u0;
        self
    }

    pub fn with_source(mut self, f: SpaceTimeFn) -> Self {
        self.f = f;
        self
    }

    pub fn with_bc(mut self, bc: BoundaryCondition) -> Self {
        self.bc = bc;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.kernel.validate()?;
        let bad = |m: String| Err(Error::InvalidProblem(m));
        if !(self.x_left < self.x_right) || !self.x_left.is_finite() || !self.x_right.is_finite() {
            return bad(format!("domain ({}, {}) is empty", self.x_left, self.x_right));
        }
        if !(self.t_max > 0.0) || !self.t_max.is_finite() {
            return bad(format!("horizon T = {} must be positive", self.t_max));
        }
        if !(self.nu > 0.0) || !(self.lambda >= self.nu) || !self.lambda.is_finite() {
            return bad(format!(
                "ellipticity bounds need 0 < nu <= Lambda, got nu = {}, Lambda = {}",
                self.nu, self.lambda
            ));
        }
        Ok(())
    }
}

/// u(t_i, x_j) on the time nodes and a uniform spatial grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteField {
    times: Vec<f64>,
    xs: Vec<f64>,
    values: Vec<f64>,
}

pub const FIELD_SCHEMA: &str = "subdiff-field-v1";

impl DiscreteField {
    pub fn new(times: Vec<f64>, xs: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.len() != times.len() * xs.len() {
            return Err(Error::MeshMismatch {
                expected: times.len() * xs.len(),
                got: values.len(),
            });
        }
        Ok(Self { times, xs, values })
    }

    /// Samples u(t, x) on the given nodes.
    pub fn from_fn(times: &[f64], xs: &[f64], u: impl Fn(f64, f64) -> f64) -> Self {
        let values = times
            .iter()
            .flat_map(|&t| xs.iter().map(move |&x| (t, x)))
            .map(|(t, x)| u(t, x))
            .collect();
        Self {
            times: times.to_vec(),
            xs: xs.to_vec(),
            values,
        }
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.xs.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let nx = self.xs.len();
        &self.values[i * nx..(i + 1) * nx]
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            times: self.times.clone(),
            xs: self.xs.clone(),
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Indices of time nodes in (t_lo, t_hi] and space nodes in [x_lo, x_hi].
    pub fn box_nodes(&self, b: &SpaceTimeBox) -> (Vec<usize>, Vec<usize>) {
        let ti = (0..self.times.len())
            .filter(|&i| self.times[i] > b.t_lo && self.times[i] <= b.t_hi)
            .collect();
        let slack = 1e-12 * (self.xs[self.xs.len() - 1] - self.xs[0]);
        let xj = (0..self.xs.len())
            .filter(|&j| self.xs[j] >= b.x_lo - slack && self.xs[j] <= b.x_hi + slack)
            .collect();
        (ti, xj)
    }

    /// Box nodes with quadrature weights: backward time cells and
    /// nearest-node spatial cells, both clipped to the box.
    pub fn box_weights(&self, b: &SpaceTimeBox) -> Result<(Vec<(usize, f64)>, Vec<(usize, f64)>)> {
        self.check_inside(b)?;
        let (ti, xj) = self.box_nodes(b);
        if ti.is_empty() || xj.is_empty() {
            return Err(Error::EmptyBox(describe(b)));
        }
        let tw = ti
            .iter()
            .map(|&i| (i, self.times[i] - self.times[i - 1].max(b.t_lo)))
            .collect();
        let nx = self.xs.len();
        let xw = xj
            .iter()
            .map(|&j| {
                let lo = if j == 0 { self.xs[0] } else { 0.5 * (self.xs[j - 1] + self.xs[j]) };
                let hi = if j + 1 == nx { self.xs[nx - 1] } else { 0.5 * (self.xs[j] + self.xs[j + 1]) };
                (j, (hi.min(b.x_hi) - lo.max(b.x_lo)).max(0.0))
            })
            .collect();
        Ok((tw, xw))
    }

    pub fn check_inside(&self, b: &SpaceTimeBox) -> Result<()> {
        let eps = 1e-12 * (1.0 + self.times[self.times.len() - 1]);
        let xeps = 1e-12 * (self.xs[self.xs.len() - 1] - self.xs[0]);
        let inside = b.t_lo >= self.times[0] - eps
            && b.t_hi <= self.times[self.times.len() - 1] + eps
            && b.x_lo >= self.xs[0] - xeps
            && b.x_hi <= self.xs[self.xs.len() - 1] + xeps
            && b.t_lo < b.t_hi
            && b.x_lo <= b.x_hi;
        if inside {
            Ok(())
        } else {
            Err(Error::OutsideField(describe(b)))
        }
    }

    /// Grid (min, max) over box nodes.
    pub fn box_extrema(&self, b: &SpaceTimeBox) -> Result<(f64, f64)> {
        self.check_inside(b)?;
        let (ti, xj) = self.box_nodes(b);
        if ti.is_empty() || xj.is_empty() {
            return Err(Error::EmptyBox(describe(b)));
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &i in &ti {
            for &j in &xj {
                let v = self.get(i, j);
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
        Ok((lo, hi))
    }

    /// Mixed norm of the field over a box with [`box_weights`](Self::box_weights).
    pub fn mixed_norm(&self, exps: NormExponents, b: &SpaceTimeBox) -> Result<f64> {
        let (tw, xw) = self.box_weights(b)?;
        let rows: Vec<(f64, Vec<(f64, f64)>)> = tw
            .iter()
            .map(|&(i, w)| (w, xw.iter().map(|&(j, wx)| (wx, self.get(i, j))).collect()))
            .collect();
        Ok(weighted_mixed_norm(exps, &rows))
    }

    /// CSV: schema line, header `t,x_0,…`, one row per time node, floats
    /// with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "# {FIELD_SCHEMA}")?;
        write!(w, "t")?;
        for x in &self.xs {
            write!(w, ",{x:.16e}")?;
        }
        writeln!(w)?;
        for (i, t) in self.times.iter().enumerate() {
            write!(w, "{t:.16e}")?;
            for v in self.row(i) {
                write!(w, ",{v:.16e}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let parse = |s: &str, line: usize| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("line {line}: {e}")))
        };
        let mut xs = None;
        let mut times = Vec::new();
        let mut values = Vec::new();
        for (n, line) in r.lines().enumerate() {
            let line = line.map_err(|e| Error::Parse(e.to_string()))?;
            let n = n + 1;
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let mut cells = line.split(',');
            let first = cells.next().unwrap_or("");
            if xs.is_none() {
                if first.trim() != "t" {
                    return Err(Error::Parse(format!("line {n}: expected header starting with t")));
                }
                xs = Some(cells.map(|c| parse(c, n)).collect::<Result<Vec<_>>>()?);
                continue;
            }
            times.push(parse(first, n)?);
            let row = cells.map(|c| parse(c, n)).collect::<Result<Vec<_>>>()?;
            if row.len() != xs.as_ref().unwrap().len() {
                return Err(Error::Parse(format!("line {n}: wrong number of columns")));
            }
            values.extend(row);
        }
        let xs = xs.ok_or_else(|| Error::Parse("missing header".into()))?;
        Self::new(times, xs, values)
    }
}

fn describe(b: &SpaceTimeBox) -> String {
    format!("(t: {}..{}, x: {}..{})", b.t_lo, b.t_hi, b.x_lo, b.x_hi)
}

/// Solves the problem on `nt` graded time steps and `nx` spatial nodes.
pub fn solve(p: &ProblemSpec, nt: usize, nx: usize, grading: f64) -> Result<DiscreteField> {
    p.validate()?;
    if nt < 8 || nx < 8 {
        return Err(Error::InvalidProblem(format!(
            "need nt, nx >= 8, got nt = {nt}, nx = {nx}"
        )));
    }
    let mesh = TimeMesh::new(p.t_max, nt, grading)?;
    let weights = ConvolutionWeights::for_spec(&p.kernel, Side::K, &mesh, WeightMode::Cellwise)?;
    solve_on(p, &weights, nx)
}

/// [`solve`] with precomputed cellwise weights for k.
pub fn solve_on(p: &ProblemSpec, weights: &ConvolutionWeights, nx: usize) -> Result<DiscreteField> {
    p.validate()?;
    if weights.mode() != WeightMode::Cellwise {
        return Err(Error::InvalidProblem("solver needs cellwise weights".into()));
    }
    let mesh = weights.mesh();
    if (mesh.t_max() - p.t_max).abs() > 1e-12 * p.t_max {
        return Err(Error::InvalidProblem(format!(
            "weights were built for T = {}, problem has T = {}",
            mesh.t_max(),
            p.t_max
        )));
    }
    let nt = mesh.n_steps();
    let t = mesh.nodes();
    let h = (p.x_right - p.x_left) / (nx - 1) as f64;
    let xs: Vec<f64> = (0..nx)
        .map(|j| if j + 1 == nx { p.x_right } else { p.x_left + j as f64 * h })
        .collect();
    let u0: Vec<f64> = xs.iter().map(|&x| (p.u0)(x)).collect();
    let mut values = Vec::with_capacity((nt + 1) * nx);
    values.extend_from_slice(&u0);
    // Differences u^{j+1} − u^j, one row per completed step.
    let mut diffs: Vec<f64> = Vec::with_capacity(nt * nx);
    let mut prev = u0.clone();

    let mut hist = vec![0.0; nx];
    let mut a_half = vec![0.0; nx - 1];
    let mut a_node = vec![0.0; nx];
    let (mut lower, mut diag, mut upper, mut rhs) =
        (vec![0.0; nx], vec![0.0; nx], vec![0.0; nx], vec![0.0; nx]);
    let tol = 1e-12 * p.lambda;
    for n in 1..=nt {
        let tn = t[n];
        for (j, a) in a_node.iter_mut().enumerate() {
            *a = (p.coeff_a)(tn, xs[j]);
            if !(*a >= p.nu - tol && *a <= p.lambda + tol) {
                return Err(Error::InvalidProblem(format!(
                    "A({tn}, {}) = {a} outside the declared bounds [{}, {}]",
                    xs[j], p.nu, p.lambda
                )));
            }
        }
        for j in 0..nx - 1 {
            let (a, b) = (a_node[j], a_node[j + 1]);
            a_half[j] = 2.0 * a * b / (a + b);
        }
        let row = weights.row(n);
        let b_last = row[n - 1] / mesh.width(n - 1);
        let inv_h2 = 1.0 / (h * h);
        hist.iter_mut().for_each(|v| *v = 0.0);
        for (m, w) in row[..n - 1].iter().enumerate() {
            let c = w / mesh.width(m);
            for (hj, dj) in hist.iter_mut().zip(&diffs[m * nx..(m + 1) * nx]) {
                *hj += c * dj;
            }
        }
        for j in 0..nx {
            rhs[j] = (p.f)(tn, xs[j]) + b_last * prev[j] - hist[j];
            let al = if j > 0 { a_half[j - 1] } else { 0.0 };
            let ar = if j + 1 < nx { a_half[j] } else { 0.0 };
            lower[j] = -al * inv_h2;
            upper[j] = -ar * inv_h2;
            diag[j] = b_last + (al + ar) * inv_h2;
        }
        match p.bc {
            BoundaryCondition::Dirichlet { left, right } => {
                diag[0] = 1.0;
                upper[0] = 0.0;
                rhs[0] = left;
                diag[nx - 1] = 1.0;
                lower[nx - 1] = 0.0;
                rhs[nx - 1] = right;
            }
            BoundaryCondition::Neumann => {
                // Half cells at the ends: the one-sided flux counts twice.
                upper[0] *= 2.0;
                diag[0] = b_last - upper[0];
                lower[nx - 1] *= 2.0;
                diag[nx - 1] = b_last - lower[nx - 1];
            }
        }
        let u = thomas(&lower, &diag, &upper, &rhs).ok_or(Error::Singular { step: n })?;
        if u.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { step: n });
        }
        diffs.extend(u.iter().zip(&prev).map(|(a, b)| a - b));
        values.extend_from_slice(&u);
        prev = u;
    }
    DiscreteField::new(t.to_vec(), xs, values)
}

/// Tridiagonal solve; `None` on a nonpositive pivot.
fn thomas(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Option<Vec<f64>> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut piv = diag[0];
    if !(piv > 0.0) {
        return None;
    }
    c[0] = upper[0] / piv;
    d[0] = rhs[0] / piv;
    for i in 1..n {
        piv = diag[i] - lower[i] * c[i - 1];
        if !(piv > 0.0) {
            return None;
        }
        c[i] = upper[i] / piv;
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / piv;
    }
    for i in (0..n - 1).rev() {
        d[i] -= c[i] * d[i + 1];
    }
    Some(d)
}

/// Exponents of L_{q₁}(time; L_{q₂}(space)); infinity is allowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormExponents {
    pub q1: f64,
    pub q2: f64,
}

impl NormExponents {
    pub fn new(q1: f64, q2: f64) -> Result<Self> {
        for (what, q) in [("q1", q1), ("q2", q2)] {
            if !(q >= 1.0) {
                return Err(Error::Domain {
                    what,
                    value: q,
                    domain: "[1, inf]",
                });
            }
        }
        Ok(Self { q1, q2 })
    }
}

/// Norm exponents tied to p₀ through p₀′/q₁ + 1/(2q₂) = 1 − d, with
/// 0 < d < 1/2 and p₀′/(1 − d) ≤ q₁ ≤ 2p₀′/(1 − 2d) (one space dimension).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedNormSpec {
    pub q1: f64,
    pub q2: f64,
    pub d: f64,
    pub p0: f64,
}

impl MixedNormSpec {
    pub fn new(q1: f64, q2: f64, d: f64, p0: f64) -> Result<Self> {
        NormExponents::new(q1, q2)?;
        if !(p0 > 1.0) {
            return Err(Error::Domain {
                what: "p0",
                value: p0,
                domain: "(1, inf)",
            });
        }
        let pc = p0 / (p0 - 1.0);
        let relation = format!("p0'/q1 + N/(2 q2) = 1 - d with N = 1, p0' = {pc}");
        if !(d > 0.0 && d < 0.5) {
            return Err(Error::NormRelation(format!("d = {d} must lie in (0, 1/2); {relation}")));
        }
        let lhs = pc / q1 + 1.0 / (2.0 * q2);
        if (lhs - (1.0 - d)).abs() > 1e-10 {
            return Err(Error::NormRelation(format!(
                "{relation} fails: lhs = {lhs}, 1 - d = {}",
                1.0 - d
            )));
        }
        let (lo, hi) = (pc / (1.0 - d), 2.0 * pc / (1.0 - 2.0 * d));
        if q1 < lo * (1.0 - 1e-12) || q1 > hi * (1.0 + 1e-12) {
            return Err(Error::NormRelation(format!(
                "q1 = {q1} outside [p0'/(1-d), 2p0'/(1-2d)] = [{lo}, {hi}]"
            )));
        }
        Ok(Self { q1, q2, d, p0 })
    }

    /// Chooses q₂ from the relation for given q₁ and d.
    pub fn from_q1(q1: f64, d: f64, p0: f64) -> Result<Self> {
        let pc = p0 / (p0 - 1.0);
        let s = 1.0 - d - pc / q1;
        let q2 = if s == 0.0 { f64::INFINITY } else { 1.0 / (2.0 * s) };
        Self::new(q1, q2, d, p0)
    }

    pub fn exponents(&self) -> NormExponents {
        NormExponents {
            q1: self.q1,
            q2: self.q2,
        }
    }

    pub fn p0_conj(&self) -> f64 {
        self.p0 / (self.p0 - 1.0)
    }
}

fn lq(q: f64, items: impl Iterator<Item = (f64, f64)>) -> f64 {
    if q.is_infinite() {
        items.filter(|(w, _)| *w > 0.0).map(|(_, v)| v.abs()).fold(0.0, f64::max)
    } else {
        items.map(|(w, v)| w * v.abs().powf(q)).sum::<f64>().powf(1.0 / q)
    }
}

/// rows: (time weight, [(space weight, value)]).
fn weighted_mixed_norm(exps: NormExponents, rows: &[(f64, Vec<(f64, f64)>)]) -> f64 {
    lq(
        exps.q1,
        rows.iter().map(|(w, r)| (*w, lq(exps.q2, r.iter().copied()))),
    )
}

/// Midpoint-rule approximation of ‖f‖ in L_{q₁}(t_lo, t_hi; L_{q₂}(x_lo, x_hi))
/// on an `nt` × `nx` grid of cells.
pub fn mixed_norm(
    f: &dyn Fn(f64, f64) -> f64,
    exps: NormExponents,
    b: &SpaceTimeBox,
    nt: usize,
    nx: usize,
) -> Result<f64> {
    if !(b.t_hi > b.t_lo) || !(b.x_hi > b.x_lo) || nt == 0 || nx == 0 {
        return Err(Error::EmptyBox(describe(b)));
    }
    let dt = (b.t_hi - b.t_lo) / nt as f64;
    let dx = (b.x_hi - b.x_lo) / nx as f64;
    let rows: Vec<(f64, Vec<(f64, f64)>)> = (0..nt)
        .map(|i| {
            let t = b.t_lo + (i as f64 + 0.5) * dt;
            let row = (0..nx)
                .map(|j| (dx, f(t, b.x_lo + (j as f64 + 0.5) * dx)))
                .collect();
            (dt, row)
        })
        .collect();
    Ok(weighted_mixed_norm(exps, &rows))
}

/// b = r^{2 − 1/q₂} Φ(2r)^{−1/q₁} ‖f‖, or ε when ‖f‖ = 0.
pub fn shift_constant_b(
    f_norm: f64,
    r: f64,
    norm: &MixedNormSpec,
    solver: &PhiSolver,
    epsilon: f64,
) -> Result<f64> {
    if f_norm == 0.0 {
        return Ok(epsilon);
    }
    source_scale(r, norm.exponents(), solver).map(|s| s * f_norm)
}

/// r^{2 − 1/q₂} Φ(2r)^{−1/q₁}.
pub fn source_scale(r: f64, exps: NormExponents, solver: &PhiSolver) -> Result<f64> {
    Ok(r.powf(2.0 - 1.0 / exps.q2) * solver.phi(2.0 * r)?.powf(-1.0 / exps.q1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thomas_solves_small_system() {
        let x = thomas(&[0.0, -1.0, -1.0], &[2.0, 2.0, 2.0], &[-1.0, -1.0, 0.0], &[1.0, 0.0, 1.0]).unwrap();
        for v in x {
            assert!((v - 1.0).abs() < 1e-15);
        }
        assert!(thomas(&[0.0, 0.0], &[0.0, 1.0], &[0.0, 0.0], &[1.0, 1.0]).is_none());
    }

    #[test]
    fn constants_are_preserved_with_neumann_data() {
        let spec = KernelSpec::frac_exp(0.5, 0.0).unwrap();
        let p = ProblemSpec::new(spec, 0.0, 1.0, 0.5)
            .with_u0(Arc::new(|_| 2.5))
            .with_bc(BoundaryCondition::Neumann);
        let u = solve(&p, 32, 17, 2.0).unwrap();
        assert!(u.values().iter().all(|v| (v - 2.5).abs() < 1e-12));
    }

    #[test]
    fn norm_relation_is_enforced() {
        assert!(MixedNormSpec::new(4.0, 4.0, 0.125, 1.5).is_ok());
        assert!(matches!(MixedNormSpec::new(2.0, 4.0, 0.125, 1.5), Err(Error::NormRelation(_))));
        let m = MixedNormSpec::from_q1(6.0, 0.25, 1.5).unwrap();
        assert!((3.0 / m.q1 + 0.5 / m.q2 - 0.75).abs() < 1e-14);
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let f = DiscreteField::from_fn(&[0.0, 0.1, 0.3], &[0.0, 0.5, 1.0], |t, x| (t + 1.0) / 3.0 + x.sin());
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let g = DiscreteField::read_csv(&buf[..]).unwrap();
        assert_eq!(f, g);
    }
}
