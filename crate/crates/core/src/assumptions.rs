//! Sampled certification of the kernel hypotheses and the constants they
//! provide: k0 is positivity, monotonicity and k ∗ l = 1; k1 is higher
//! integrability of l; k2 is the derivative bound for k; k3 is the bound
//! needed for Hölder continuity. A pass is a falsification check on the
//! recorded grids, not a proof.

use crate::convolution::pair_product;
use crate::error::{Error, Result};
use crate::kernel::{Kernel, KernelSpec};
use crate::mesh::TimeMesh;
use crate::quadrature::{adaptive, find_tail};
use crate::scaling::PhiSolver;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Decades sampled below a horizon, and points per decade.
pub const GRID_DECADES: u32 = 6;
pub const GRID_PER_DECADE: u32 = 10;
pub const K0_TOLERANCE: f64 = 1e-3;

fn log_grid(top: f64, decades: u32, per_decade: u32) -> Vec<f64> {
    let m = decades * per_decade;
    (0..=m)
        .map(|i| top * 10f64.powf(-(decades as f64) + i as f64 / per_decade as f64))
        .collect()
}

// ---------------------------------------------------------------- k0

#[derive(Debug, Clone, PartialEq)]
pub struct K0Report {
    pub nonnegative: bool,
    pub monotone: bool,
    /// max |(k ∗ l)(t) − 1| over nodes in [0.01 t_max, t_max].
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

pub fn check_k0(spec: &KernelSpec, mesh: &TimeMesh) -> Result<K0Report> {
    check_k0_pair(&spec.k(), &spec.l(), mesh)
}

pub fn check_k0_pair(k: &Kernel, l: &Kernel, mesh: &TimeMesh) -> Result<K0Report> {
    let t = &mesh.nodes()[1..];
    let mut nonnegative = true;
    let mut monotone = true;
    for kern in [k, l] {
        let v: Vec<f64> = t.iter().map(|&s| kern.value(s)).collect::<Result<_>>()?;
        nonnegative &= v.iter().all(|x| *x >= 0.0);
        monotone &= v.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12));
    }
    let kl = pair_product(k, l, mesh)?;
    let lo = 0.01 * mesh.t_max();
    let max_residual = mesh
        .nodes()
        .iter()
        .zip(&kl)
        .filter(|(s, _)| **s >= lo)
        .map(|(_, v)| (v - 1.0).abs())
        .fold(0.0, f64::max);
    Ok(K0Report {
        nonnegative,
        monotone,
        max_residual,
        tolerance: K0_TOLERANCE,
        pass: nonnegative && monotone && max_residual <= K0_TOLERANCE,
    })
}

// ---------------------------------------------------------------- k1

/// Running integrals ∫₀ᵗ l^p on a log grid below `top`.
#[derive(Debug, Clone)]
pub struct LpProfile {
    kernel: Kernel,
    p: f64,
    grid: Vec<f64>,
    cumulative: Vec<f64>,
}

fn lp_segment(kernel: &Kernel, p: f64, a: f64, b: f64) -> Result<f64> {
    // In x = ln s to follow the power-law shape.
    adaptive(
        |x: f64| {
            let s = x.exp();
            kernel.value(s).map(|v| v.powf(p) * s).unwrap_or(f64::NAN)
        },
        a.ln(),
        b.ln(),
        1,
        1e-11,
        0.0,
    )
}

/// ∫₀^{t} l^p via s = t e^{-u}; fails when the integrand does not decay in u.
fn lp_head(kernel: &Kernel, p: f64, t: f64) -> Result<f64> {
    let mut g = |u: f64| kernel.value(t * (-u).exp()).map(|v| v.powf(p) * (-u).exp()).unwrap_or(f64::NAN);
    let end = find_tail(&mut g, 0.0, 1.0, 1e-14).map_err(|e| {
        Error::Quadrature(format!("l^{p} does not appear integrable at 0 ({e})"))
    })?;
    Ok(t * adaptive(g, 0.0, end, (end.ceil() as usize).max(1), 1e-11, 0.0)?)
}

impl LpProfile {
    pub fn new(kernel: &Kernel, p: f64, top: f64) -> Result<Self> {
        let grid = log_grid(top, GRID_DECADES, GRID_PER_DECADE);
        let mut cumulative = Vec::with_capacity(grid.len());
        cumulative.push(lp_head(kernel, p, grid[0])?);
        for w in grid.windows(2) {
            let last = *cumulative.last().unwrap();
            cumulative.push(last + lp_segment(kernel, p, w[0], w[1])?);
        }
        Ok(Self {
            kernel: kernel.clone(),
            p,
            grid,
            cumulative,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    /// ∫₀ᵗ l^p for any t > 0.
    pub fn integral_to(&self, t: f64) -> Result<f64> {
        if t <= self.grid[0] {
            return lp_head(&self.kernel, self.p, t);
        }
        let i = self.grid.partition_point(|g| *g <= t) - 1;
        let rest = if t > self.grid[i] {
            lp_segment(&self.kernel, self.p, self.grid[i], t)?
        } else {
            0.0
        };
        Ok(self.cumulative[i] + rest)
    }

    /// (1/t)∫₀ᵗ l^p / l(t)^p.
    pub fn ratio(&self, t: f64) -> Result<f64> {
        Ok(self.integral_to(t)? / t / self.kernel.value(t)?.powf(self.p))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct K1Certificate {
    pub p0: f64,
    pub t0: f64,
    pub c_bar: f64,
    pub pass: bool,
    pub diagnostic: Option<String>,
}

/// sup over the log grid in (0, t₀] (with local refinement at the maximum)
/// of (1/t)∫₀ᵗ l^{p₀} / l(t)^{p₀}.
pub fn certify_k1(spec: &KernelSpec, p0: f64, t0: f64) -> Result<K1Certificate> {
    certify_k1_kernel(&spec.l(), p0, t0)
}

pub fn certify_k1_kernel(l: &Kernel, p0: f64, t0: f64) -> Result<K1Certificate> {
    if !(p0 >= 1.0) {
        return Err(Error::Domain {
            what: "p0",
            value: p0,
            domain: "[1, inf)",
        });
    }
    let profile = match LpProfile::new(l, p0, t0) {
        Ok(p) => p,
        Err(e) => {
            return Ok(K1Certificate {
                p0,
                t0,
                c_bar: f64::INFINITY,
                pass: false,
                diagnostic: Some(e.to_string()),
            })
        }
    };
    let g = profile.grid();
    let ratios: Vec<f64> = g.iter().map(|&t| profile.ratio(t)).collect::<Result<_>>()?;
    let (imax, mut sup) = ratios
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |a, (i, r)| if r > a.1 { (i, r) } else { a });
    let lo = g[imax.saturating_sub(1)];
    let hi = g[(imax + 1).min(g.len() - 1)];
    for k in 1..20 {
        let t = lo * (hi / lo).powf(k as f64 / 20.0);
        sup = sup.max(profile.ratio(t)?);
    }
    let pass = sup.is_finite();
    Ok(K1Certificate {
        p0,
        t0,
        c_bar: sup.max(1.0),
        pass,
        diagnostic: (!pass).then(|| "sampled ratio is not finite".to_string()),
    })
}

// ---------------------------------------------------------------- k2

#[derive(Debug, Clone, PartialEq)]
pub struct K2Certificate {
    pub t_tilde0: f64,
    /// inf of −t k̇(t)/k(t) over the samples.
    pub inf: f64,
    pub c_tilde: f64,
    pub pass: bool,
}

pub fn certify_k2(spec: &KernelSpec, t_tilde0: f64) -> Result<K2Certificate> {
    certify_k2_kernel(&spec.k(), t_tilde0)
}

pub fn certify_k2_kernel(k: &Kernel, t_tilde0: f64) -> Result<K2Certificate> {
    let mut inf = f64::INFINITY;
    for t in log_grid(t_tilde0, GRID_DECADES, GRID_PER_DECADE) {
        let q = -t * k.derivative(t)? / k.value(t)?;
        inf = inf.min(q);
    }
    Ok(K2Certificate {
        t_tilde0,
        inf,
        c_tilde: inf.min(1.0 - 1e-6),
        pass: inf > 0.0,
    })
}

// ---------------------------------------------------------------- k3

#[derive(Debug, Clone, PartialEq)]
pub struct K3Certificate {
    pub beta: f64,
    /// (D, sampled sup) rows, nondecreasing in D.
    pub c_of_d: Vec<(f64, f64)>,
    /// Largest ratio of the full-range sup to the sup over y ≥ 1e-3, x ≤ 1e3.
    pub growth: f64,
    pub pass: bool,
}

/// Growth ratio above which the sampled sup is taken to diverge.
pub const K3_GROWTH_LIMIT: f64 = 1.5;

/// For each D: sup over 0 < y ≤ 1, 1 ≤ x ≤ D/y of −xy k̇(xy) x^β / k₁(y).
pub fn certify_k3(spec: &KernelSpec, beta: f64, d_grid: &[f64]) -> Result<K3Certificate> {
    let k = spec.k();
    let l = spec.l();
    let mut ds: Vec<f64> = d_grid.to_vec();
    ds.sort_by(f64::total_cmp);
    let d_max = ds.last().copied().unwrap_or(1.0);
    let ys = log_grid(1.0, GRID_DECADES, GRID_PER_DECADE);
    let decades = (d_max / ys[0]).log10().ceil() as u32;
    let xs: Vec<f64> = (0..=decades * GRID_PER_DECADE)
        .map(|i| 10f64.powf(i as f64 / GRID_PER_DECADE as f64))
        .collect();
    // (x, y, value) for every admissible sample.
    let mut samples = Vec::new();
    for &y in &ys {
        let k1y = 1.0 / l.integral(y)?;
        for &x in &xs {
            if x > d_max / y * (1.0 + 1e-12) {
                break;
            }
            let z = x * y;
            let v = -z * k.derivative(z)? * x.powf(beta) / k1y;
            samples.push((x, y, v));
        }
    }
    let mut c_of_d = Vec::with_capacity(ds.len());
    let mut growth: f64 = 1.0;
    for &d in &ds {
        let admissible = |s: &&(f64, f64, f64)| s.0 <= d / s.1 * (1.0 + 1e-12);
        let full = samples.iter().filter(admissible).map(|s| s.2).fold(0.0, f64::max);
        let inner = samples
            .iter()
            .filter(admissible)
            .filter(|s| s.1 >= 1e-3 && s.0 <= 1e3)
            .map(|s| s.2)
            .fold(0.0, f64::max);
        if inner > 0.0 {
            growth = growth.max(full / inner);
        }
        c_of_d.push((d, full));
    }
    let finite = c_of_d.iter().all(|c| c.1.is_finite());
    let monotone = c_of_d.windows(2).all(|w| w[1].1 >= w[0].1);
    Ok(K3Certificate {
        beta,
        c_of_d,
        growth,
        pass: finite && monotone && growth <= K3_GROWTH_LIMIT,
    })
}

// ------------------------------------------------------- parameter defaults

/// Supremum of the exponents p with l^p integrable near 0 (closed form for
/// single-order families, read off the local power of l for the
/// distributed-order family).
pub fn integrability_bound(spec: &KernelSpec) -> Result<f64> {
    Ok(match spec {
        KernelSpec::FracExp { alpha, .. } => 1.0 / (1.0 - alpha),
        KernelSpec::SwitchedFracExp { alpha, .. } => 1.0 / alpha,
        KernelSpec::SwitchedDistributed { measure } => 1.0 / measure.orders().last().unwrap().0,
        KernelSpec::DistributedOrder { .. } => {
            let l = spec.l();
            let t = 1e-12;
            let power = -t * l.derivative(t)? / l.value(t)?;
            1.0 / power
        }
    })
}

/// Default certification parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Defaults {
    pub p0: f64,
    pub t0: f64,
    pub t_tilde0: f64,
    pub beta: f64,
}

pub fn defaults(spec: &KernelSpec) -> Result<Defaults> {
    let p0 = 0.5 * (1.0 + integrability_bound(spec)?);
    let (t0, beta) = match spec {
        KernelSpec::FracExp { alpha, .. } => (1.0, *alpha),
        KernelSpec::SwitchedFracExp { alpha, gamma } => {
            let t0 = if *gamma > 0.0 {
                (1.0 / (2.0 * gamma)) * (1.0 / p0 - alpha)
            } else {
                1.0
            };
            (t0, 1.0 - alpha)
        }
        KernelSpec::DistributedOrder { measure } => (1.0, measure.orders()[0].0),
        KernelSpec::SwitchedDistributed { measure } => {
            (1.0, 1.0 - measure.orders().last().unwrap().0)
        }
    };
    Ok(Defaults {
        p0,
        t0,
        t_tilde0: 1.0,
        beta,
    })
}

pub const DEFAULT_D_GRID: [f64; 5] = [1.0, 2.0, 5.0, 10.0, 100.0];

#[derive(Debug, Clone, PartialEq)]
pub struct CertifyOptions {
    pub p0: Option<f64>,
    pub t0: Option<f64>,
    pub t_tilde0: Option<f64>,
    pub beta: Option<f64>,
    pub d_grid: Vec<f64>,
    pub mesh_steps: usize,
    pub grading: f64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            p0: None,
            t0: None,
            t_tilde0: None,
            beta: None,
            d_grid: DEFAULT_D_GRID.to_vec(),
            mesh_steps: 2048,
            grading: 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssumptionCertificate {
    pub p0: f64,
    pub t0: f64,
    pub c_bar: f64,
    pub c_tilde: f64,
    pub t_tilde0: f64,
    pub beta: f64,
    pub c_of_d: Vec<(f64, f64)>,
    pub max_residual_kl: f64,
    pub k0: K0Report,
    pub k1_pass: bool,
    pub k2_pass: bool,
    pub k3_pass: bool,
    pub k3_growth: f64,
    pub grid_decades: u32,
    pub grid_per_decade: u32,
}

impl AssumptionCertificate {
    pub fn pass(&self) -> bool {
        self.k0.pass && self.k1_pass && self.k2_pass && self.k3_pass
    }

    /// min{t₀, t̃₀}, the horizon handed to [`PhiSolver`].
    pub fn horizon(&self) -> f64 {
        self.t0.min(self.t_tilde0)
    }

    pub fn phi_solver(&self, spec: &KernelSpec) -> Result<PhiSolver> {
        PhiSolver::new(spec, self.horizon())
    }

    /// Conjugate exponent p₀′.
    pub fn p0_conj(&self) -> f64 {
        self.p0 / (self.p0 - 1.0)
    }
}

pub fn certify(spec: &KernelSpec, opts: &CertifyOptions) -> Result<AssumptionCertificate> {
    let d = defaults(spec)?;
    let p0 = opts.p0.unwrap_or(d.p0);
    let t0 = opts.t0.unwrap_or(d.t0);
    let t_tilde0 = opts.t_tilde0.unwrap_or(d.t_tilde0);
    let beta = opts.beta.unwrap_or(d.beta);
    let mesh = TimeMesh::new(1.0, opts.mesh_steps, opts.grading)?;
    let k0 = check_k0(spec, &mesh)?;
    let k1 = certify_k1(spec, p0, t0)?;
    let k2 = certify_k2(spec, t_tilde0)?;
    let k3 = certify_k3(spec, beta, &opts.d_grid)?;
    Ok(AssumptionCertificate {
        p0,
        t0,
        c_bar: k1.c_bar,
        c_tilde: k2.c_tilde,
        t_tilde0,
        beta,
        c_of_d: k3.c_of_d,
        max_residual_kl: k0.max_residual,
        k0,
        k1_pass: k1.pass,
        k2_pass: k2.pass,
        k3_pass: k3.pass,
        k3_growth: k3.growth,
        grid_decades: GRID_DECADES,
        grid_per_decade: GRID_PER_DECADE,
    })
}

// ------------------------------------------------------ sampled inequalities

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityCheck {
    pub name: &'static str,
    pub samples: usize,
    pub violations: usize,
    /// min over samples of (rhs − lhs)/|rhs|.
    pub worst_margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub checks: Vec<InequalityCheck>,
    /// sampled inf of Φ(2r)/r^{2p₀′} over r ≤ r*.
    pub phi_power_inf: f64,
}

impl InequalityReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.violations == 0)
    }

    pub fn get(&self, name: &str) -> Option<&InequalityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const INEQUALITY_SLACK: f64 = 1e-8;

struct Tally {
    name: &'static str,
    samples: usize,
    violations: usize,
    worst: f64,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            samples: 0,
            violations: 0,
            worst: f64::INFINITY,
        }
    }

    /// Records lhs ≤ rhs.
    fn le(&mut self, lhs: f64, rhs: f64) {
        self.samples += 1;
        let margin = (rhs - lhs) / rhs.abs().max(f64::MIN_POSITIVE);
        if !(margin >= -INEQUALITY_SLACK) {
            self.violations += 1;
        }
        self.worst = self.worst.min(margin);
    }

    fn finish(self) -> InequalityCheck {
        InequalityCheck {
            name: self.name,
            samples: self.samples,
            violations: self.violations,
            worst_margin: self.worst,
        }
    }
}

fn log_uniform(rng: &mut StdRng, lo: f64, hi: f64) -> f64 {
    (lo.ln() + rng.random::<f64>() * (hi / lo).ln()).exp()
}

/// Randomized checks of the inequalities that k0–k2 imply for the
/// certified (p₀, t₀, c̄, c̃), `samples` draws each.
pub fn check_inequalities(
    spec: &KernelSpec,
    cert: &AssumptionCertificate,
    samples: usize,
    seed: u64,
) -> Result<InequalityReport> {
    let mut rng = StdRng::seed_from_u64(seed);
    let k = spec.k();
    let l = spec.l();
    let solver = cert.phi_solver(spec)?;
    let (p0, t0, cb) = (cert.p0, cert.t0, cert.c_bar);
    let p0c = cert.p0_conj();
    let k1 = |t: f64| -> Result<f64> { Ok(1.0 / l.integral(t)?) };
    let mut out = Vec::new();

    let mut a = Tally::new("k_below_k1");
    let mut b = Tally::new("integral_of_k");
    for _ in 0..samples {
        let t = log_uniform(&mut rng, 1e-6, 10.0);
        a.le(k.value(t)?, k1(t)?);
        let t = log_uniform(&mut rng, 1e-6 * t0, t0);
        b.le(k.integral(t)?, cb * t * k1(t)?);
    }
    out.push(a.finish());
    out.push(b.finish());

    let mut c = Tally::new("k1_scaling");
    for _ in 0..samples {
        let x = log_uniform(&mut rng, 1e-4, 10.0);
        let y = log_uniform(&mut rng, 1e-2, 1e2);
        c.le(k1(x * y)?, 1f64.max(1.0 / y) * k1(x)?);
    }
    out.push(c.finish());

    let mut c = Tally::new("l_dilation");
    for _ in 0..samples {
        let t = log_uniform(&mut rng, 1e-6 * t0, t0);
        let a = rng.random_range(1e-3..1.0);
        c.le(l.value(a * t)?, cb / a * l.value(t)?);
    }
    out.push(c.finish());

    let mut c = Tally::new("one_conv_l_scaling");
    for _ in 0..samples {
        let x = log_uniform(&mut rng, 1e-4, 1.0);
        let y = log_uniform(&mut rng, 1e-6 * t0, t0);
        c.le(l.integral(x * y)?, cb.powf(1.0 / p0) * x.powf(1.0 / p0c) * l.integral(y)?);
    }
    out.push(c.finish());

    let p_mid = 0.5 * (1.0 + p0);
    let mid = LpProfile::new(&l, p_mid, t0)?;
    let top = LpProfile::new(&l, p0, t0)?;
    let mut c = Tally::new("lp_average");
    let mut d = Tally::new("lp_scaling");
    let p_conj = p_mid / (p_mid - 1.0);
    for _ in 0..samples {
        let t = log_uniform(&mut rng, 1e-6 * t0, t0);
        c.le(mid.integral_to(t)? / t, cb * l.value(t)?.powf(p_mid));
        let x = log_uniform(&mut rng, 1e-4, 1.0);
        let y = log_uniform(&mut rng, 1e-6 * t0, t0);
        let lhs = mid.integral_to(x * y)?.powf(1.0 / p_mid);
        let rhs = cb.powf(1.0 / p_mid + 1.0 / p0)
            * x.powf(1.0 / p0c - 1.0 / p_conj)
            * mid.integral_to(y)?.powf(1.0 / p_mid);
        d.le(lhs, rhs);
    }
    out.push(c.finish());
    out.push(d.finish());

    let r_star = solver.r_star();
    let mut c = Tally::new("lp_norm_at_phi");
    let bound = 4f64.powf(p0) * cb;
    for i in 0..samples {
        let r = log_uniform(&mut rng, 1e-3 * r_star, r_star);
        let ph = solver.phi(2.0 * r)?;
        let (p, lp) = match i % 3 {
            0 => (1.0, l.integral(ph)?),
            1 => (p_mid, mid.integral_to(ph)?),
            _ => (p0, top.integral_to(ph)?),
        };
        c.le(lp * ph.powf(p - 1.0), bound * r.powf(2.0 * p));
    }
    out.push(c.finish());

    let mut c = Tally::new("phi_ratio");
    let r_top = l.integral(t0)?.sqrt().min(0.999 * solver.r0());
    let factor = cb.powf(1.0 / (p0 - 1.0));
    for _ in 0..samples {
        let xy = log_uniform(&mut rng, 1e-3 * r_top, r_top);
        let y = log_uniform(&mut rng, 1.0 + 1e-9, 10.0);
        let x = xy / y;
        c.le(solver.phi(xy)?, factor * y.powf(2.0 * p0c) * solver.phi(x)?);
    }
    out.push(c.finish());

    let mut c = Tally::new("phi_quadratic_shrink");
    let r_hi = (2.0 * r_star).min(0.99 * solver.r0());
    for _ in 0..samples {
        let r = log_uniform(&mut rng, 1e-3, r_hi);
        let lambda = rng.random_range(1e-3..=1.0);
        c.le(solver.phi(lambda * r)?, lambda * lambda * solver.phi(r)?);
    }
    out.push(c.finish());

    let mut c = Tally::new("phi_power_lower_bound");
    let mut inf = f64::INFINITY;
    for _ in 0..samples {
        let r = log_uniform(&mut rng, 1e-3 * r_star, r_star);
        let q = solver.phi(2.0 * r)? / r.powf(2.0 * p0c);
        inf = inf.min(q);
        c.le(0.0, q);
    }
    out.push(c.finish());

    let mut c = Tally::new("k_difference");
    let tt = cert.t_tilde0;
    for _ in 0..samples {
        let u = log_uniform(&mut rng, 1e-6 * tt, tt);
        let v = log_uniform(&mut rng, 1e-6 * tt, tt);
        let (x, y) = if u < v { (u, v) } else { (v, u) };
        if x == y {
            continue;
        }
        let kx = k.value(x)?;
        c.le(cert.c_tilde * kx * (y - x) / y, kx - k.value(y)?);
    }
    out.push(c.finish());

    Ok(InequalityReport {
        checks: out,
        phi_power_inf: inf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn k1_constant_for_half_order() {
        let spec = KernelSpec::frac_exp(0.5, 0.0).unwrap();
        let c = certify_k1(&spec, 1.5, 1.0).unwrap();
        assert!(c.pass);
        assert_relative_eq!(c.c_bar, 4.0, max_relative = 1e-6);
        let bad = certify_k1(&spec, 2.0, 1.0).unwrap();
        assert!(!bad.pass);
        assert!(bad.diagnostic.is_some());
    }

    #[test]
    fn k2_constant_for_half_order() {
        let spec = KernelSpec::frac_exp(0.5, 0.0).unwrap();
        let c = certify_k2(&spec, 1.0).unwrap();
        assert_relative_eq!(c.inf, 0.5, max_relative = 1e-12);
        assert!(certify_k2_kernel(&Kernel::constant(1.0), 1.0).map(|c| !c.pass).unwrap());
    }

    #[test]
    fn k3_flags_aggressive_beta() {
        let spec = KernelSpec::frac_exp(0.5, 0.0).unwrap();
        let ok = certify_k3(&spec, 0.5, &DEFAULT_D_GRID).unwrap();
        assert!(ok.pass);
        assert!(ok.c_of_d.iter().all(|c| c.1 <= 0.5 + 1e-12));
        assert!(!certify_k3(&spec, 10.0, &DEFAULT_D_GRID).unwrap().pass);
    }

    #[test]
    fn perturbed_pair_fails_k0() {
        let spec = KernelSpec::frac_exp(0.5, 0.0).unwrap();
        let mesh = TimeMesh::new(1.0, 256, 2.0).unwrap();
        let r = check_k0_pair(&spec.k(), &spec.l().scaled(1.01), &mesh).unwrap();
        assert!(!r.pass);
        assert!((r.max_residual - 0.01).abs() < 2e-3);
    }
}
