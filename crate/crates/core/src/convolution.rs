//! Product-integration weights for (κ ∗ v)(t_i) on a [`TimeMesh`].
//!
//! For node i and cell j = [t_j, t_{j+1}] the weights are the moments
//! I0 = ∫_a^b κ(σ)dσ and I1 = ∫_a^b κ(σ)(b − σ)dσ with a = t_i − t_{j+1},
//! b = t_i − t_j, so that κ is integrated exactly against constants
//! and linear functions on every cell.

use crate::error::{Error, Result};
use crate::kernel::{second_antiderivative_factor, Kernel, KernelSpec, LaplaceKernel, Side};
use crate::mesh::TimeMesh;
use crate::quadrature::{find_tail, GL8_W, GL8_X};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    /// v constant on each cell (the right-node value when given node data).
    Cellwise,
    /// v linear on each cell.
    PiecewiseLinear,
}

/// Trapezoid rule in s = ln p for the spectral representation; with the
/// e^{-pa} factor the integrand is analytic in a strip, so the rule
/// converges geometrically in 1/h.
struct SpectralTable {
    p: Vec<f64>,
    w: Vec<f64>,
}

const SPECTRAL_STEP: f64 = 0.1;

impl SpectralTable {
    fn new(lk: &LaplaceKernel, a_min: f64, a_max: f64) -> Result<Self> {
        let s_hi = (45.0 / a_min).ln();
        let mut f = |s: f64| {
            let p = s.exp();
            p * lk.h(s) * (-p * a_max).exp()
        };
        let s_lo = find_tail(&mut f, -a_max.ln(), -1.0, 1e-15)?.min(s_hi - 1.0);
        let q = ((s_hi - s_lo) / SPECTRAL_STEP).ceil() as usize;
        let (mut p, mut w) = (Vec::with_capacity(q + 1), Vec::with_capacity(q + 1));
        for i in 0..=q {
            let s = s_lo + i as f64 * SPECTRAL_STEP;
            p.push(s.exp());
            w.push(SPECTRAL_STEP * lk.h(s) / PI);
        }
        Ok(Self { p, w })
    }

    fn moments(&self, a: f64, delta: f64, need_i1: bool) -> (f64, f64) {
        let (mut i0, mut i1) = (0.0, 0.0);
        for (&p, &w) in self.p.iter().zip(&self.w) {
            let x = p * a;
            if x > 745.0 {
                break;
            }
            let e = w * (-x).exp();
            let y = p * delta;
            i0 += e * -(-y).exp_m1();
            if need_i1 {
                i1 += e * second_antiderivative_factor(y) / p;
            }
        }
        (i0, i1)
    }
}

fn gl8_moments(kernel: &Kernel, a: f64, delta: f64, need_i1: bool) -> Result<(f64, f64)> {
    let h = 0.5 * delta;
    let c = a + h;
    let b = a + delta;
    let (mut i0, mut i1) = (0.0, 0.0);
    for (x, w) in GL8_X.iter().zip(&GL8_W) {
        for sigma in [c - h * x, c + h * x] {
            let k = kernel.value(sigma)?;
            i0 += w * k;
            if need_i1 {
                i1 += w * k * (b - sigma);
            }
        }
    }
    Ok((i0 * h, i1 * h))
}

/// (I0, I1) for one cell from the kernel's antiderivatives near the
/// singularity, Gauss–Legendre away from it.
fn pointwise_moments(kernel: &Kernel, a: f64, delta: f64, need_i1: bool) -> Result<(f64, f64)> {
    let b = a + delta;
    if a == 0.0 {
        let i1 = if need_i1 { kernel.double_integral(delta)? } else { 0.0 };
        return Ok((kernel.integral(delta)?, i1));
    }
    if a < 2.0 * delta {
        let ka = kernel.integral(a)?;
        let i0 = kernel.integral(b)? - ka;
        let i1 = if need_i1 {
            kernel.double_integral(b)? - kernel.double_integral(a)? - delta * ka
        } else {
            0.0
        };
        return Ok((i0, i1));
    }
    // Differences of closed-form antiderivatives lose about b/Δ ulps.
    if kernel.is_closed_form() && delta >= 1e-4 * b && !need_i1 {
        return Ok((kernel.integral(b)? - kernel.integral(a)?, 0.0));
    }
    gl8_moments(kernel, a, delta, need_i1)
}

#[derive(Debug, Clone)]
pub struct ConvolutionWeights {
    kernel: Kernel,
    mesh: TimeMesh,
    mode: WeightMode,
    i0: Vec<f64>,
    i1: Vec<f64>,
}

fn row_offset(i: usize) -> usize {
    i * (i - 1) / 2
}

impl ConvolutionWeights {
    pub fn new(kernel: Kernel, mesh: &TimeMesh, mode: WeightMode) -> Result<Self> {
        let n = mesh.n_steps();
        let t = mesh.nodes();
        let need_i1 = mode == WeightMode::PiecewiseLinear;
        let len = row_offset(n + 1);
        let mut i0 = Vec::with_capacity(len);
        let mut i1 = Vec::with_capacity(if need_i1 { len } else { 0 });
        let table = match kernel.as_laplace() {
            Some(lk) if n >= 2 => Some(SpectralTable::new(lk, t[2] - t[1], t[n] - t[1])?),
            _ => None,
        };
        for i in 1..=n {
            for j in 0..i {
                let a = t[i] - t[j + 1];
                let delta = t[j + 1] - t[j];
                let (m0, m1) = match &table {
                    Some(tab) if j + 1 < i => tab.moments(a, delta, need_i1),
                    _ => pointwise_moments(&kernel, a, delta, need_i1)?,
                };
                i0.push(m0);
                if need_i1 {
                    i1.push(m1);
                }
            }
        }
        Ok(Self {
            kernel,
            mesh: mesh.clone(),
            mode,
            i0,
            i1,
        })
    }

    pub fn for_spec(spec: &KernelSpec, side: Side, mesh: &TimeMesh, mode: WeightMode) -> Result<Self> {
        Self::new(spec.side(side), mesh, mode)
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn mesh(&self) -> &TimeMesh {
        &self.mesh
    }

    pub fn mode(&self) -> WeightMode {
        self.mode
    }

    /// ∫ over cell j of κ(t_i − s) ds, for 0 ≤ j < i.
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.i0[row_offset(i) + j]
    }

    /// Coefficients (on v_j, on v_{j+1}) of cell j in (κ ∗ v)(t_i).
    pub fn node_coefficients(&self, i: usize, j: usize) -> (f64, f64) {
        let k = row_offset(i) + j;
        match self.mode {
            WeightMode::Cellwise => (0.0, self.i0[k]),
            WeightMode::PiecewiseLinear => {
                let w1 = self.i1[k] / self.mesh.width(j);
                (self.i0[k] - w1, w1)
            }
        }
    }

    /// All cell weights of row i (j = 0..i).
    pub fn row(&self, i: usize) -> &[f64] {
        &self.i0[row_offset(i)..row_offset(i) + i]
    }

    /// ∫ over each mesh cell of κ itself.
    pub fn cell_integrals(&self) -> Result<Vec<f64>> {
        let t = self.mesh.nodes();
        (0..self.mesh.n_steps())
            .map(|m| Ok(pointwise_moments(&self.kernel, t[m], t[m + 1] - t[m], false)?.0))
            .collect()
    }

    /// (κ ∗ v)(t_i) for node data v (length n + 1); the result has v's length
    /// and vanishes at t_0.
    pub fn convolve(&self, v: &[f64]) -> Result<Vec<f64>> {
        let n = self.mesh.n_steps();
        if v.len() != n + 1 {
            return Err(Error::MeshMismatch {
                expected: n + 1,
                got: v.len(),
            });
        }
        let t = self.mesh.nodes();
        let mut out = vec![0.0; n + 1];
        for (i, o) in out.iter_mut().enumerate().skip(1) {
            let base = row_offset(i);
            let mut acc = 0.0;
            match self.mode {
                WeightMode::Cellwise => {
                    for j in 0..i {
                        acc += self.i0[base + j] * v[j + 1];
                    }
                }
                WeightMode::PiecewiseLinear => {
                    for j in 0..i {
                        let d = t[j + 1] - t[j];
                        let w1 = self.i1[base + j] / d;
                        acc += v[j] * (self.i0[base + j] - w1) + v[j + 1] * w1;
                    }
                }
            }
            *o = acc;
        }
        Ok(out)
    }

    /// (κ ∗ c)(t_i) for a cell-constant c (length n).
    pub fn convolve_cells(&self, c: &[f64]) -> Result<Vec<f64>> {
        let n = self.mesh.n_steps();
        if c.len() != n {
            return Err(Error::MeshMismatch {
                expected: n,
                got: c.len(),
            });
        }
        let mut out = vec![0.0; n + 1];
        for (i, o) in out.iter_mut().enumerate().skip(1) {
            *o = self.row(i).iter().zip(c).map(|(w, c)| w * c).sum();
        }
        Ok(out)
    }
}

/// Exact cell averages of a kernel over the mesh cells.
pub fn cell_averages(kernel: &Kernel, mesh: &TimeMesh) -> Result<Vec<f64>> {
    let t = mesh.nodes();
    let mut prev = 0.0;
    let mut out = Vec::with_capacity(mesh.n_steps());
    for m in 0..mesh.n_steps() {
        let upper = kernel.integral(t[m + 1])?;
        out.push((upper - prev) / (t[m + 1] - t[m]));
        prev = upper;
    }
    Ok(out)
}

/// (k ∗ l)(t_i) on the mesh: the closed-form kernel of the pair supplies the
/// weights and the other enters through its exact cell averages.
pub fn pair_product(k: &Kernel, l: &Kernel, mesh: &TimeMesh) -> Result<Vec<f64>> {
    let (wk, other) = if k.is_closed_form() || !l.is_closed_form() {
        (k, l)
    } else {
        (l, k)
    };
    let weights = ConvolutionWeights::new(wk.clone(), mesh, WeightMode::Cellwise)?;
    weights.convolve_cells(&cell_averages(other, mesh)?)
}

pub fn pair_product_spec(spec: &KernelSpec, mesh: &TimeMesh) -> Result<Vec<f64>> {
    pair_product(&spec.k(), &spec.l(), mesh)
}
