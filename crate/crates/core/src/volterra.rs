//! Resolvent kernels hₙ of n·l, the regularized kernels kₙ = k ∗ hₙ,
//! second-kind Volterra solves and a discrete check of the product rule
//! for H′(u)·∂ₜ(kₙ ∗ u).

use crate::convolution::{ConvolutionWeights, WeightMode};
use crate::error::{Error, Result};
use crate::kernel::{KernelSpec, Side};
use crate::mesh::TimeMesh;
use crate::quadrature::gl8;

/// hₙ and kₙ on a mesh. hₙ is stored per cell (its right-node value),
/// kₙ per node with kₙ(0) = n.
#[derive(Debug, Clone)]
pub struct ResolventKernel {
    pub n: u32,
    mesh: TimeMesh,
    h: Vec<f64>,
    k_n: Vec<f64>,
    residual: f64,
}

impl ResolventKernel {
    pub fn mesh(&self) -> &TimeMesh {
        &self.mesh
    }

    /// hₙ(t_1), …, hₙ(t_N).
    pub fn h_values(&self) -> &[f64] {
        &self.h
    }

    /// kₙ(t_0), …, kₙ(t_N).
    pub fn k_n_values(&self) -> &[f64] {
        &self.k_n
    }

    /// max over nodes of |hₙ + n hₙ ∗ l − n l| / (n l).
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// (hₙ ∗ f)(t_i) with f sampled by 8-point Gauss on each cell.
    pub fn convolve_fn(&self, mut f: impl FnMut(f64) -> f64) -> Vec<f64> {
        let t = self.mesh.nodes();
        let mut out = vec![0.0; t.len()];
        for (i, o) in out.iter_mut().enumerate().skip(1) {
            *o = (0..i)
                .map(|j| self.h[j] * gl8(|s| f(t[i] - s), t[j], t[j + 1]))
                .sum();
        }
        out
    }

    /// ∫₀ᵗ kₙ by the trapezoid rule on the nodes, linearly interpolated.
    pub fn k_n_integral(&self, t: f64) -> f64 {
        let nodes = self.mesh.nodes();
        let mut acc = 0.0;
        for j in 0..nodes.len() - 1 {
            let (a, b) = (nodes[j], nodes[j + 1]);
            let w = b - a;
            if t <= b {
                let frac = ((t - a) / w).max(0.0);
                let kt = self.k_n[j] + frac * (self.k_n[j + 1] - self.k_n[j]);
                return acc + 0.5 * (self.k_n[j] + kt) * (t - a).max(0.0);
            }
            acc += 0.5 * w * (self.k_n[j] + self.k_n[j + 1]);
        }
        acc
    }
}

/// Solves hₙ + n hₙ ∗ l = n l by forward substitution, hₙ constant on each
/// cell at its right-node value. kₙ = k ∗ hₙ is formed as n(1 − 1 ∗ hₙ),
/// which follows from k ∗ l = 1 and keeps kₙ nonincreasing whenever hₙ ≥ 0.
pub fn resolvent(spec: &KernelSpec, n: u32, mesh: &TimeMesh) -> Result<ResolventKernel> {
    let lw = ConvolutionWeights::for_spec(spec, Side::L, mesh, WeightMode::Cellwise)?;
    resolvent_with(&lw, n)
}

/// [`resolvent`] with precomputed cellwise weights for l.
pub fn resolvent_with(lw: &ConvolutionWeights, n: u32) -> Result<ResolventKernel> {
    if n == 0 {
        return Err(Error::Domain {
            what: "n",
            value: 0.0,
            domain: "[1, inf)",
        });
    }
    if lw.mode() != WeightMode::Cellwise {
        return Err(Error::InvalidProblem("resolvent needs cellwise weights".into()));
    }
    let mesh = lw.mesh();
    let steps = mesh.n_steps();
    let nf = n as f64;
    let t = mesh.nodes();
    let l = lw.kernel();
    let mut rhs = Vec::with_capacity(steps);
    let mut h: Vec<f64> = Vec::with_capacity(steps);
    for i in 1..=steps {
        let row = lw.row(i);
        let history: f64 = row[..i - 1].iter().zip(&h).map(|(w, hj)| w * hj).sum();
        let diag = 1.0 + nf * row[i - 1];
        if !(diag > 0.0) {
            return Err(Error::Singular { step: i });
        }
        let nl = nf * l.value(t[i])?;
        let hi = (nl - nf * history) / diag;
        if !hi.is_finite() {
            return Err(Error::NonFinite { step: i });
        }
        rhs.push(nl);
        h.push(hi);
    }
    let mut residual: f64 = 0.0;
    for i in 1..=steps {
        let conv: f64 = lw.row(i).iter().zip(&h).map(|(w, hj)| w * hj).sum();
        let r = (h[i - 1] + nf * conv - rhs[i - 1]).abs() / rhs[i - 1].abs().max(f64::MIN_POSITIVE);
        residual = residual.max(r);
    }
    let mut k_n = Vec::with_capacity(steps + 1);
    k_n.push(nf);
    let mut mass = 0.0;
    for (j, hj) in h.iter().enumerate() {
        mass += hj * mesh.width(j);
        k_n.push(nf * (1.0 - mass));
    }
    Ok(ResolventKernel {
        n,
        mesh: mesh.clone(),
        h,
        k_n,
        residual,
    })
}

fn check_len(weights: &ConvolutionWeights, v: &[f64]) -> Result<()> {
    let expected = weights.mesh().n_steps() + 1;
    if v.len() != expected {
        return Err(Error::MeshMismatch {
            expected,
            got: v.len(),
        });
    }
    Ok(())
}

/// Solves v + l ∗ (θv) = g for node data θ ≥ 0 and g = l ∗ Υ, in the
/// interpolation mode of the weights.
pub fn solve_second_kind_conv(
    l_weights: &ConvolutionWeights,
    theta: &[f64],
    g: &[f64],
) -> Result<Vec<f64>> {
    check_len(l_weights, theta)?;
    check_len(l_weights, g)?;
    if let Some(&bad) = theta.iter().find(|x| !(**x >= 0.0)) {
        return Err(Error::Domain {
            what: "theta",
            value: bad,
            domain: "[0, inf)",
        });
    }
    let n = l_weights.mesh().n_steps();
    let mut v = vec![0.0; n + 1];
    v[0] = g[0];
    for i in 1..=n {
        let mut history = 0.0;
        for j in 0..i - 1 {
            let (a, b) = l_weights.node_coefficients(i, j);
            history += a * theta[j] * v[j] + b * theta[j + 1] * v[j + 1];
        }
        let (a, b) = l_weights.node_coefficients(i, i - 1);
        history += a * theta[i - 1] * v[i - 1];
        let diag = 1.0 + b * theta[i];
        v[i] = (g[i] - history) / diag;
        if !v[i].is_finite() {
            return Err(Error::NonFinite { step: i });
        }
    }
    Ok(v)
}

/// Solves v + l ∗ (θv) = l ∗ Υ with Υ given as node data.
pub fn solve_second_kind(
    l_weights: &ConvolutionWeights,
    theta: &[f64],
    rhs: &[f64],
) -> Result<Vec<f64>> {
    check_len(l_weights, rhs)?;
    let g = l_weights.convolve(rhs)?;
    solve_second_kind_conv(l_weights, theta, &g)
}

/// Partial sum of Σ_m (−1)^m (l ∗ θ·)^m g with `terms` terms.
pub fn neumann_series(
    l_weights: &ConvolutionWeights,
    theta: &[f64],
    g: &[f64],
    terms: usize,
) -> Result<Vec<f64>> {
    check_len(l_weights, theta)?;
    check_len(l_weights, g)?;
    let mut term = g.to_vec();
    let mut sum = g.to_vec();
    for _ in 1..terms {
        let weighted: Vec<f64> = term.iter().zip(theta).map(|(a, b)| a * b).collect();
        term = l_weights.convolve(&weighted)?;
        for (s, x) in sum.iter_mut().zip(&mut term) {
            *x = -*x;
            *s += *x;
        }
    }
    Ok(sum)
}

/// Convex (or affine) test functions for the product rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvexFn {
    Identity,
    Square,
    /// e^y − 1 − y
    ExpShift,
    /// −ln y, for y > 0
    NegLog,
}

impl ConvexFn {
    pub fn value(self, y: f64) -> f64 {
        match self {
            Self::Identity => y,
            Self::Square => y * y,
            Self::ExpShift => y.exp_m1() - y,
            Self::NegLog => -y.ln(),
        }
    }

    pub fn derivative(self, y: f64) -> f64 {
        match self {
            Self::Identity => 1.0,
            Self::Square => 2.0 * y,
            Self::ExpShift => y.exp_m1(),
            Self::NegLog => -1.0 / y,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    /// max over evaluated nodes of |H′(u)∂ₜ(kₙ∗u) − ∂ₜ(kₙ∗H(u)) − (uH′(u) − H(u))kₙ − R|.
    pub max_residual: f64,
    /// min over evaluated nodes of the remainder R.
    pub min_remainder: f64,
    pub nodes_checked: usize,
}

/// Evaluates both sides of
/// H′(u)∂ₜ(kₙ∗u) = ∂ₜ(kₙ∗H(u)) + (uH′(u) − H(u))kₙ
///     + ∫₀ᵗ [H(u(t−s)) − H(u(t)) − H′(u(t))(u(t−s) − u(t))](−k̇ₙ(s)) ds
/// with kₙ piecewise linear between nodes of a uniform mesh. Convolutions
/// use the trapezoid rule, ∂ₜ central differences; nodes with t < `t_from`
/// are skipped.
pub fn check_fundamental_identity(
    k_n: &ResolventKernel,
    u: impl Fn(f64) -> f64,
    h: ConvexFn,
    t_from: f64,
) -> Result<IdentityReport> {
    let mesh = k_n.mesh();
    if !mesh.is_uniform() {
        return Err(Error::InvalidProblem(
            "the product-rule check needs a uniform mesh".into(),
        ));
    }
    let steps = mesh.n_steps();
    let dt = mesh.width(0);
    let t = mesh.nodes();
    let kv = k_n.k_n_values();
    let uv: Vec<f64> = t.iter().map(|&s| u(s)).collect();
    let hv: Vec<f64> = uv.iter().map(|&y| h.value(y)).collect();
    let trap = |g: &[f64], i: usize| -> f64 {
        if i == 0 {
            return 0.0;
        }
        let inner: f64 = (1..i).map(|j| kv[j] * g[i - j]).sum();
        dt * (inner + 0.5 * (kv[0] * g[i] + kv[i] * g[0]))
    };
    let cu: Vec<f64> = (0..=steps).map(|i| trap(&uv, i)).collect();
    let ch: Vec<f64> = (0..=steps).map(|i| trap(&hv, i)).collect();
    let mut max_residual: f64 = 0.0;
    let mut min_remainder = f64::INFINITY;
    let mut nodes_checked = 0;
    for i in 1..steps {
        if t[i] < t_from {
            continue;
        }
        let (ui, hi, dhi) = (uv[i], hv[i], h.derivative(uv[i]));
        let du = (cu[i + 1] - cu[i - 1]) / (2.0 * dt);
        let dh = (ch[i + 1] - ch[i - 1]) / (2.0 * dt);
        let mut rem = 0.0;
        for j in 0..i {
            let slope = -(kv[j + 1] - kv[j]) / dt;
            let bregman = |s: f64| {
                let y = u(t[i] - s);
                h.value(y) - hi - dhi * (y - ui)
            };
            rem += slope * gl8(bregman, t[j], t[j + 1]);
        }
        let residual = dhi * du - dh - (ui * dhi - hi) * kv[i] - rem;
        if !residual.is_finite() {
            return Err(Error::NonFinite { step: i });
        }
        max_residual = max_residual.max(residual.abs());
        min_remainder = min_remainder.min(rem);
        nodes_checked += 1;
    }
    Ok(IdentityReport {
        max_residual,
        min_remainder,
        nodes_checked,
    })
}

/// ‖hₙ ∗ f − f‖ in L₁(0, t_max) by the trapezoid rule on the nodes.
pub fn approximate_identity_error(res: &ResolventKernel, f: impl Fn(f64) -> f64 + Copy) -> f64 {
    let t = res.mesh().nodes();
    let conv = res.convolve_fn(f);
    let err: Vec<f64> = t.iter().zip(&conv).map(|(&s, c)| (c - f(s)).abs()).collect();
    (0..t.len() - 1)
        .map(|j| 0.5 * (t[j + 1] - t[j]) * (err[j] + err[j + 1]))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mittag_leffler::mittag_leffler;

    #[test]
    fn resolvent_is_positive_and_kn_starts_at_n() {
        let spec = KernelSpec::frac_exp(0.5, 0.0).unwrap();
        let mesh = TimeMesh::new(1.0, 512, 4.0).unwrap();
        let r = resolvent(&spec, 4, &mesh).unwrap();
        assert!(r.h_values().iter().all(|h| *h >= 0.0));
        assert_eq!(r.k_n_values()[0], 4.0);
        assert!(r.k_n_values().windows(2).all(|w| w[1] <= w[0]));
        assert!(r.residual() < 1e-12);
        let want = 4.0 * mittag_leffler(0.5, 1.0, -4.0);
        assert!((r.k_n_values()[512] - want).abs() < 0.02 * want);
    }

    #[test]
    fn second_kind_with_zero_theta_is_the_convolution() {
        let spec = KernelSpec::frac_exp(0.5, 0.0).unwrap();
        let mesh = TimeMesh::new(1.0, 32, 2.0).unwrap();
        let w = ConvolutionWeights::for_spec(&spec, Side::L, &mesh, WeightMode::PiecewiseLinear).unwrap();
        let rhs: Vec<f64> = mesh.nodes().iter().map(|t| 1.0 + t).collect();
        let v = solve_second_kind(&w, &vec![0.0; 33], &rhs).unwrap();
        assert_eq!(v, w.convolve(&rhs).unwrap());
        assert!(solve_second_kind(&w, &vec![0.0; 5], &rhs).is_err());
        assert!(solve_second_kind(&w, &vec![-1.0; 33], &rhs).is_err());
    }

    #[test]
    fn affine_h_has_no_remainder() {
        let spec = KernelSpec::frac_exp(0.5, 0.0).unwrap();
        let mesh = TimeMesh::uniform(1.0, 128).unwrap();
        let r = resolvent(&spec, 16, &mesh).unwrap();
        let rep = check_fundamental_identity(&r, |t| 1.0 + t * t, ConvexFn::Identity, 0.1).unwrap();
        assert!(rep.min_remainder.abs() < 1e-12);
        assert!(rep.max_residual < 1e-10);
    }
}
