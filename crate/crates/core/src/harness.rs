//! Measured weak-Harnack ratios and oscillation decay on solved fields.

use crate::error::{Error, Result};
use crate::kernel::{Family, KernelSpec};
use crate::pde::{mixed_norm, solve, source_scale, DiscreteField, MixedNormSpec, ProblemSpec};
use crate::scaling::{make_boxes, nested_cylinder, CylinderSpec, PhiSolver, SpaceTimeBox};
use rayon::prelude::*;

/// κ = (2p₀ + N(p₀ − 1)) / (2 + N(p₀ − 1)).
pub fn critical_exponent(p0: f64, n: u32) -> f64 {
    let m = n as f64 * (p0 - 1.0);
    (2.0 * p0 + m) / (2.0 + m)
}

/// Field values below this count as negative.
pub const NEGATIVITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct HarnackReport {
    pub p: f64,
    /// (mean of u^p over Q₋)^{1/p}
    pub lhs: f64,
    /// grid min of u over Q₊
    pub ess_inf_plus: f64,
    pub f_term: f64,
    pub c_empirical: f64,
    pub cylinder: CylinderSpec,
    pub q_minus: SpaceTimeBox,
    pub q_plus: SpaceTimeBox,
}

/// Both sides of the weak Harnack inequality on the cylinders of `c`.
/// `f_norm` is the L_{q₁}L_{q₂} norm of the source over the full cylinder.
pub fn harnack_ratio(
    field: &DiscreteField,
    c: &CylinderSpec,
    p: f64,
    norm: &MixedNormSpec,
    f_norm: f64,
    solver: &PhiSolver,
) -> Result<HarnackReport> {
    let kappa = critical_exponent(norm.p0, 1);
    if !(p > 0.0 && p < kappa) {
        return Err(Error::Domain {
            what: "p",
            value: p,
            domain: "(0, critical exponent)",
        });
    }
    if !(f_norm >= 0.0) {
        return Err(Error::Domain {
            what: "f_norm",
            value: f_norm,
            domain: "[0, inf)",
        });
    }
    let (q_minus, q_plus) = make_boxes(c, solver)?;
    let t_end = q_plus.t_hi;
    let region = SpaceTimeBox {
        t_lo: c.t0,
        t_hi: t_end,
        x_lo: q_minus.x_lo,
        x_hi: q_minus.x_hi,
    };
    field.check_inside(&region)?;
    let mut min = f64::INFINITY;
    for (i, &t) in field.times().iter().enumerate() {
        if t <= t_end {
            min = field.row(i).iter().copied().fold(min, f64::min);
        }
    }
    if min < -NEGATIVITY_TOLERANCE {
        return Err(Error::NegativeField { min });
    }
    let (tw, xw) = field.box_weights(&q_minus)?;
    let (mut sum, mut mass) = (0.0, 0.0);
    for &(i, wt) in &tw {
        for &(j, wx) in &xw {
            sum += wt * wx * field.get(i, j).max(0.0).powf(p);
            mass += wt * wx;
        }
    }
    if !(mass > 0.0) {
        return Err(Error::EmptyBox(format!("{q_minus:?}")));
    }
    let lhs = (sum / mass).powf(1.0 / p);
    let ess_inf_plus = field.box_extrema(&q_plus)?.0.max(0.0);
    let f_term = if f_norm == 0.0 {
        0.0
    } else {
        source_scale(c.r, norm.exponents(), solver)? * f_norm
    };
    let denom = ess_inf_plus + f_term;
    let c_empirical = if denom > 0.0 { lhs / denom } else { f64::INFINITY };
    Ok(HarnackReport {
        p,
        lhs,
        ess_inf_plus,
        f_term,
        c_empirical,
        cylinder: *c,
        q_minus,
        q_plus,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct HoelderReport {
    /// (j, grid oscillation over Q(2^{-j}))
    pub levels: Vec<(u32, f64)>,
    /// Minus the least-squares slope of log₂ osc_j against j; `None` for a
    /// constant field.
    pub kappa_fit: Option<f64>,
    pub used_levels: usize,
    /// Sampled sup of |u(P) − u(Q)| / (|Δt|^{1/(2p₀′)} + |Δx|)^κ over Q(1).
    pub seminorm: f64,
    pub constant_field: bool,
}

/// Oscillation decay over Q(2^{-j}) = (t₁ − θΦ(2ρr), t₁] × B(x₁, ρr),
/// ρ = 2^{-j}, j = 0..=levels. Levels with osc_j < 10·`error_floor` are left
/// out of the fit.
#[allow(clippy::too_many_arguments)]
pub fn hoelder_decay(
    field: &DiscreteField,
    t1: f64,
    x1: f64,
    r: f64,
    theta: f64,
    levels: u32,
    solver: &PhiSolver,
    p0: f64,
    error_floor: f64,
) -> Result<HoelderReport> {
    let mut boxes = Vec::with_capacity(levels as usize + 1);
    for j in 0..=levels {
        boxes.push(nested_cylinder(t1, x1, r, j, theta, solver)?);
    }
    for w in boxes.windows(2) {
        if !w[0].contains_box(&w[1]) {
            return Err(Error::InvalidProblem(format!(
                "nested cylinders are not contained: {:?} vs {:?}",
                w[0], w[1]
            )));
        }
    }
    let mut out = Vec::with_capacity(boxes.len());
    for (j, b) in boxes.iter().enumerate() {
        let (lo, hi) = field.box_extrema(b)?;
        out.push((j as u32, hi - lo));
    }
    let constant_field = out.iter().all(|(_, o)| *o == 0.0);
    if constant_field {
        return Ok(HoelderReport {
            levels: out,
            kappa_fit: None,
            used_levels: 0,
            seminorm: 0.0,
            constant_field,
        });
    }
    let cut = 10.0 * error_floor;
    let pts: Vec<(f64, f64)> = out
        .iter()
        .filter(|(_, o)| *o > 0.0 && *o >= cut)
        .map(|&(j, o)| (j as f64, o.log2()))
        .collect();
    if pts.len() < 3 {
        return Err(Error::DegenerateFit { usable: pts.len() });
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let kappa = -sxy / sxx;
    let seminorm = sampled_seminorm(field, &boxes[0], kappa, p0 / (p0 - 1.0))?;
    Ok(HoelderReport {
        levels: out,
        kappa_fit: Some(kappa),
        used_levels: pts.len(),
        seminorm,
        constant_field,
    })
}

/// Largest box-node sample count per axis for the seminorm.
const SEMINORM_SAMPLES: usize = 40;

fn sampled_seminorm(field: &DiscreteField, b: &SpaceTimeBox, kappa: f64, p0c: f64) -> Result<f64> {
    let (ti, xj) = field.box_nodes(b);
    let stride = |n: usize| n.div_ceil(SEMINORM_SAMPLES).max(1);
    let ti: Vec<usize> = ti.iter().copied().step_by(stride(ti.len())).collect();
    let xj: Vec<usize> = xj.iter().copied().step_by(stride(xj.len())).collect();
    let pts: Vec<(f64, f64, f64)> = ti
        .iter()
        .flat_map(|&i| xj.iter().map(move |&j| (i, j)))
        .map(|(i, j)| (field.times()[i], field.xs()[j], field.get(i, j)))
        .collect();
    let mut sup: f64 = 0.0;
    for (a, p) in pts.iter().enumerate() {
        for q in &pts[a + 1..] {
            let d = (p.0 - q.0).abs().powf(1.0 / (2.0 * p0c)) + (p.1 - q.1).abs();
            if d > 0.0 {
                sup = sup.max((p.2 - q.2).abs() / d.powf(kappa));
            }
        }
    }
    Ok(sup)
}

/// One solve with its Harnack evaluations.
#[derive(Debug, Clone)]
pub struct SweepCase {
    pub problem: ProblemSpec,
    pub nt: usize,
    pub nx: usize,
    pub grading: f64,
    /// min{t₀, t̃₀} for the scaling solver.
    pub horizon: f64,
    pub norm: MixedNormSpec,
    pub evaluations: Vec<(CylinderSpec, f64)>,
}

/// Grid for the midpoint-rule source norm over each cylinder.
const SOURCE_NORM_GRID: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub case: usize,
    pub label: String,
    pub family: Family,
    pub alpha: f64,
    pub gamma: f64,
    pub r: f64,
    pub delta: f64,
    pub tau: f64,
    pub p: f64,
    pub report: Option<HarnackReport>,
    /// "ok" or the error message.
    pub status: String,
}

impl SweepRow {
    pub fn c_empirical(&self) -> Option<f64> {
        self.report.as_ref().map(|r| r.c_empirical)
    }
}

fn run_case(index: usize, case: &SweepCase) -> Vec<SweepRow> {
    let spec: &KernelSpec = &case.problem.kernel;
    let row = |c: &CylinderSpec, p: f64, res: Result<HarnackReport>| SweepRow {
        case: index,
        label: case.problem.label.clone(),
        family: spec.family(),
        alpha: spec.alpha(),
        gamma: spec.gamma(),
        r: c.r,
        delta: c.delta,
        tau: c.tau,
        p,
        status: match &res {
            Ok(_) => "ok".into(),
            Err(e) => e.to_string(),
        },
        report: res.ok(),
    };
    let prepared = PhiSolver::new(spec, case.horizon).and_then(|s| {
        solve(&case.problem, case.nt, case.nx, case.grading).map(|field| (s, field))
    });
    let (solver, field) = match prepared {
        Ok(v) => v,
        Err(e) => {
            return case
                .evaluations
                .iter()
                .map(|(c, p)| row(c, *p, Err(e.clone())))
                .collect()
        }
    };
    let f = case.problem.f.clone();
    case.evaluations
        .iter()
        .map(|(c, p)| {
            let res = (|| {
                let t_end = c.t_end(&solver)?;
                let q = SpaceTimeBox {
                    t_lo: c.t0,
                    t_hi: t_end,
                    x_lo: c.x0 - c.r,
                    x_hi: c.x0 + c.r,
                };
                let f_norm = mixed_norm(
                    &|t, x| f(t, x),
                    case.norm.exponents(),
                    &q,
                    SOURCE_NORM_GRID,
                    SOURCE_NORM_GRID,
                )?;
                harnack_ratio(&field, c, *p, &case.norm, f_norm, &solver)
            })();
            row(c, *p, res)
        })
        .collect()
}

/// Runs every case (in parallel on the current rayon pool) and returns rows
/// in case order, then evaluation order. Failures are recorded per row.
pub fn sweep(cases: &[SweepCase]) -> Vec<SweepRow> {
    cases
        .par_iter()
        .enumerate()
        .map(|(i, c)| run_case(i, c))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub family: Family,
    pub delta: f64,
    pub tau: f64,
    pub p: f64,
    pub max_c: f64,
    pub rows: usize,
}

/// Max C_empirical per (family, δ, τ, p), in first-appearance order.
pub fn aggregate(rows: &[SweepRow]) -> Vec<AggregateRow> {
    let mut out: Vec<AggregateRow> = Vec::new();
    for r in rows {
        let Some(c) = r.c_empirical() else { continue };
        let key = |a: &AggregateRow| {
            a.family == r.family && a.delta == r.delta && a.tau == r.tau && a.p == r.p
        };
        match out.iter_mut().find(|a| key(a)) {
            Some(a) => {
                a.max_c = a.max_c.max(c);
                a.rows += 1;
            }
            None => out.push(AggregateRow {
                family: r.family,
                delta: r.delta,
                tau: r.tau,
                p: r.p,
                max_c: c,
                rows: 1,
            }),
        }
    }
    out
}

/// Kinds of nonnegative supersolutions in [`supersolution_fleet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FleetKind {
    /// f = 0, u₀ = 1 + sin(πx), boundary value 1.
    Plain,
    /// A nonpositive source well added to the plain problem.
    Well,
    /// Boundary value raised to 3.
    Raised,
}

impl FleetKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Plain => "plain",
            Self::Well => "well",
            Self::Raised => "raised",
        }
    }
}

/// Representative specs of the four families.
pub fn fleet_specs() -> Result<Vec<KernelSpec>> {
    use crate::kernel::Measure;
    Ok(vec![
        KernelSpec::frac_exp(0.5, 0.0)?,
        KernelSpec::distributed(Measure::new(vec![(0.3, 0.5), (0.7, 0.5)], vec![])?)?,
        KernelSpec::switched_frac_exp(0.5, 1.0)?,
        KernelSpec::switched_distributed(Measure::new(vec![(0.2, 0.5), (0.4, 0.5)], vec![])?)?,
    ])
}

/// Radii, exponents and cylinder shape of the fleet.
pub const FLEET_RADII: [f64; 3] = [0.05, 0.1, 0.2];
pub const FLEET_EXPONENTS: [f64; 3] = [0.5, 1.0, 1.2];
pub const FLEET_DELTA: f64 = 0.5;
pub const FLEET_TAU: f64 = 0.05;

/// Twelve solves (four families × three radii) on (0, 1) with a
/// checkerboard coefficient of contrast 10, each run up to the end of its
/// cylinder and evaluated at every exponent in [`FLEET_EXPONENTS`].
pub fn supersolution_fleet(nt: usize, nx: usize) -> Result<Vec<(FleetKind, SweepCase)>> {
    use crate::assumptions::defaults;
    use crate::pde::BoundaryCondition;
    use crate::presets::{CoeffPreset, InitialPreset, SourcePreset};
    let a = CoeffPreset::Checkerboard {
        nu: 1.0,
        lambda: 10.0,
        period: 0.125,
    };
    let (nu, lambda) = a.bounds();
    let kinds = [FleetKind::Plain, FleetKind::Well, FleetKind::Raised];
    let mut out = Vec::new();
    for (si, spec) in fleet_specs()?.into_iter().enumerate() {
        let d = defaults(&spec)?;
        let horizon = d.t0.min(d.t_tilde0);
        let solver = PhiSolver::new(&spec, horizon)?;
        let pc = d.p0 / (d.p0 - 1.0);
        let norm = MixedNormSpec::new(2.0 * pc, 2.0, 0.25, d.p0)?;
        for (ri, &r) in FLEET_RADII.iter().enumerate() {
            let c = CylinderSpec {
                t0: 0.0,
                x0: 0.5,
                r,
                delta: FLEET_DELTA,
                tau: FLEET_TAU,
            };
            let kind = kinds[(si + ri) % kinds.len()];
            let mut p = ProblemSpec::new(spec.clone(), 0.0, 1.0, c.t_end(&solver)?)
                .with_coeff(a.evaluator(), nu, lambda)
                .with_u0(InitialPreset::ShiftedSinPi(1.0).evaluator(0.0, 1.0))
                .with_bc(BoundaryCondition::Dirichlet { left: 1.0, right: 1.0 })
                .with_label(format!("{}:{}:r={r}", spec.family(), kind.name()));
            match kind {
                FleetKind::Plain => {}
                FleetKind::Well => {
                    let w = SourcePreset::Well {
                        centre: 0.5,
                        width: 0.3,
                        depth: 1.0,
                    };
                    p = p.with_source(w.evaluator(0.0, 1.0));
                }
                FleetKind::Raised => {
                    p = p.with_bc(BoundaryCondition::Dirichlet { left: 3.0, right: 3.0 });
                }
            }
            let case = SweepCase {
                problem: p,
                nt,
                nx,
                grading: 2.0,
                horizon,
                norm,
                evaluations: FLEET_EXPONENTS.iter().map(|&q| (c, q)).collect(),
            };
            out.push((kind, case));
        }
    }
    Ok(out)
}
