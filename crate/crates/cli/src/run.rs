//! Executes an [`Experiment`] and collects its artifacts in memory, so that
//! output is independent of scheduling and byte-identical across runs.

use crate::error::CliError;
use crate::experiment::{Experiment, Mode};
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;
use subdiff::assumptions::{certify, check_inequalities};
use subdiff::harness::{aggregate, supersolution_fleet, SweepRow};
use subdiff::presets::{CoeffPreset, SourcePreset};
use subdiff::*;

pub const CERTIFICATE_SCHEMA: &str = "subdiff-certificate-v1";
pub const INEQUALITY_SCHEMA: &str = "subdiff-inequalities-v1";
pub const REPORT_SCHEMA: &str = "subdiff-report-v1";
pub const AGGREGATE_SCHEMA: &str = "subdiff-aggregate-v1";
pub const HOELDER_SCHEMA: &str = "subdiff-hoelder-v1";
pub const BENCHMARK_SCHEMA: &str = "subdiff-benchmark-v1";

pub const REPORT_COLUMNS: &str = "family,alpha,gamma,r,delta,tau,p,lhs,ess_inf_plus,f_term,C_empirical,status";

/// Artifacts of a run; `failures` lists checks that did not pass.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Outcome {
    pub files: Vec<(String, String)>,
    pub summary: String,
    pub failures: Vec<String>,
}

impl Outcome {
    fn merge(&mut self, other: Outcome) {
        self.files.extend(other.files);
        self.summary.push_str(&other.summary);
        self.failures.extend(other.failures);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn write_to(&self, dir: &Path) -> Result<(), CliError> {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
        for (name, body) in self.files.iter().chain(std::iter::once(&("summary.txt".to_string(), self.summary.clone()))) {
            let path = dir.join(name);
            std::fs::write(&path, body).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        }
        Ok(())
    }
}

/// 17 significant digits; non-finite values as `inf`, `-inf`, `nan`.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn csv_text(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn header(schema: &str, columns: &str) -> String {
    format!("# {schema}\n{columns}\n")
}

fn problem_for(exp: &Experiment, spec: &KernelSpec, t_max: f64) -> ProblemSpec {
    let (nu, lambda) = exp.problem.coeff.bounds();
    let (a, b) = (exp.mesh.x_left, exp.mesh.x_right);
    let mut p = ProblemSpec::new(spec.clone(), a, b, t_max)
        .with_coeff(exp.problem.coeff.evaluator(), nu, lambda)
        .with_u0(exp.problem.u0.evaluator(a, b))
        .with_bc(exp.problem.bc)
        .with_label(spec.to_string());
    if !exp.problem.f.is_zero() {
        p = p.with_source(exp.problem.f.evaluator(a, b));
    }
    p
}

pub fn execute(exp: &Experiment) -> Result<Outcome, CliError> {
    match exp.mode {
        Mode::Certify => run_certify(exp),
        Mode::Solve => run_solve(exp, true),
        Mode::Harnack => run_harnack(exp),
        Mode::Hoelder => run_hoelder(exp),
        Mode::Sweep => run_sweep(exp),
        Mode::Benchmark => run_benchmark(exp),
        Mode::Pipeline => {
            let mut out = run_certify(exp)?;
            out.merge(run_solve(exp, exp.write_field)?);
            if exp.harness.is_some() {
                out.merge(run_harnack(exp)?);
            }
            if exp.hoelder.is_some() {
                out.merge(run_hoelder(exp)?);
            }
            Ok(out)
        }
    }
}

fn run_certify(exp: &Experiment) -> Result<Outcome, CliError> {
    let mut cert_csv = header(
        CERTIFICATE_SCHEMA,
        "family,alpha,gamma,kernel,p0,t0,c_bar,t_tilde0,c_tilde,beta,k3_growth,kl_residual,k0_pass,k1_pass,k2_pass,k3_pass,inequality_violations,pass",
    );
    let mut ineq_csv = header(INEQUALITY_SCHEMA, "kernel,name,samples,violations,worst_margin");
    let mut out = Outcome::default();
    writeln!(out.summary, "certification (seed {}, {} samples per inequality)", exp.seed, exp.samples).unwrap();
    for spec in &exp.kernels {
        let cert = certify(spec, &exp.certify)?;
        let rep = check_inequalities(spec, &cert, exp.samples, exp.seed)?;
        let violations: usize = rep.checks.iter().map(|c| c.violations).sum();
        let pass = cert.pass() && rep.pass() && rep.phi_power_inf > 0.0;
        let label = csv_text(&spec.to_string());
        writeln!(
            cert_csv,
            "{},{},{},{label},{},{},{},{},{},{},{},{},{},{},{},{},{violations},{pass}",
            spec.family(),
            num(spec.alpha()),
            num(spec.gamma()),
            num(cert.p0),
            num(cert.t0),
            num(cert.c_bar),
            num(cert.t_tilde0),
            num(cert.c_tilde),
            num(cert.beta),
            num(cert.k3_growth),
            num(cert.max_residual_kl),
            cert.k0.pass,
            cert.k1_pass,
            cert.k2_pass,
            cert.k3_pass,
        )
        .unwrap();
        for c in &rep.checks {
            writeln!(ineq_csv, "{label},{},{},{},{}", c.name, c.samples, c.violations, num(c.worst_margin)).unwrap();
        }
        writeln!(
            out.summary,
            "  {spec}: p0 = {:.4}, c_bar = {:.6}, c_tilde = {:.6}, k*l residual = {:.2e}, {} inequality violations -> {}",
            cert.p0,
            cert.c_bar,
            cert.c_tilde,
            cert.max_residual_kl,
            violations,
            if pass { "pass" } else { "FAIL" }
        )
        .unwrap();
        if !pass {
            out.failures.push(format!("certification failed for {spec}"));
        }
    }
    out.files.push(("certificate.csv".into(), cert_csv));
    out.files.push(("inequalities.csv".into(), ineq_csv));
    Ok(out)
}

fn run_solve(exp: &Experiment, write_field: bool) -> Result<Outcome, CliError> {
    let t_max = exp.mesh.t_max.unwrap_or(1.0);
    let mut out = Outcome::default();
    writeln!(out.summary, "solve to T = {t_max} on nt = {}, nx = {}", exp.mesh.nt, exp.mesh.nx).unwrap();
    for (i, spec) in exp.kernels.iter().enumerate() {
        let p = problem_for(exp, spec, t_max);
        let u = solve(&p, exp.mesh.nt, exp.mesh.nx, exp.mesh.grading_for(spec))?;
        let max = u.values().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        writeln!(out.summary, "  {spec}: min u = {:.6e}, max u = {max:.6e}", u.min()).unwrap();
        if write_field {
            let mut buf = Vec::new();
            u.write_csv(&mut buf)?;
            out.files.push((format!("field_{i}.csv"), String::from_utf8(buf).expect("ascii csv")));
        }
    }
    Ok(out)
}

fn report_rows(rows: &[SweepRow], out: &mut Outcome) {
    let mut csv = header(REPORT_SCHEMA, REPORT_COLUMNS);
    for r in rows {
        let (lhs, inf, ft, c) = match &r.report {
            Some(h) => (h.lhs, h.ess_inf_plus, h.f_term, h.c_empirical),
            None => (f64::NAN, f64::NAN, f64::NAN, f64::NAN),
        };
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.family,
            num(r.alpha),
            num(r.gamma),
            num(r.r),
            num(r.delta),
            num(r.tau),
            num(r.p),
            num(lhs),
            num(inf),
            num(ft),
            num(c),
            csv_text(&r.status)
        )
        .unwrap();
        let c_text = r.c_empirical().map_or_else(|| r.status.clone(), |c| format!("C = {c:.6}"));
        writeln!(out.summary, "  {} r = {} p = {}: {c_text}", r.label, r.r, r.p).unwrap();
        if r.status != "ok" {
            out.failures.push(format!("{} r = {} p = {}: {}", r.label, r.r, r.p, r.status));
        }
    }
    let mut agg = header(AGGREGATE_SCHEMA, "family,delta,tau,p,max_C_empirical,rows");
    for a in aggregate(rows) {
        writeln!(agg, "{},{},{},{},{},{}", a.family, num(a.delta), num(a.tau), num(a.p), num(a.max_c), a.rows).unwrap();
    }
    out.files.push(("report.csv".into(), csv));
    out.files.push(("aggregate.csv".into(), agg));
}

fn cylinders(exp: &Experiment) -> Vec<CylinderSpec> {
    let h = exp.harness.as_ref().expect("harness block");
    h.r.iter()
        .map(|&r| CylinderSpec {
            t0: h.t0,
            x0: h.x0,
            r,
            delta: h.delta,
            tau: h.tau,
        })
        .collect()
}

fn run_harnack(exp: &Experiment) -> Result<Outcome, CliError> {
    let h = exp.harness.as_ref().expect("harness block");
    let mut cases = Vec::new();
    for (spec, norm) in exp.kernels.iter().zip(&exp.norms) {
        let horizon = exp.horizon(spec)?;
        let solver = PhiSolver::new(spec, horizon)?;
        let cyl = cylinders(exp);
        let mut needed: f64 = 0.0;
        for c in &cyl {
            needed = needed.max(c.t_end(&solver)?);
        }
        let t_max = exp.mesh.t_max.unwrap_or(needed);
        if t_max < needed * (1.0 - 1e-12) {
            return Err(CliError::Invariant(format!(
                "mesh.T = {t_max} ends before the last cylinder at t = {needed} for {spec}"
            )));
        }
        cases.push(SweepCase {
            problem: problem_for(exp, spec, t_max),
            nt: exp.mesh.nt,
            nx: exp.mesh.nx,
            grading: exp.mesh.grading_for(spec),
            horizon,
            norm: *norm,
            evaluations: cyl.iter().flat_map(|c| h.p.iter().map(move |&p| (*c, p))).collect(),
        });
    }
    let mut out = Outcome::default();
    writeln!(out.summary, "weak Harnack ratios (delta = {}, tau = {})", h.delta, h.tau).unwrap();
    report_rows(&sweep(&cases), &mut out);
    Ok(out)
}

fn run_sweep(exp: &Experiment) -> Result<Outcome, CliError> {
    let h = exp.harness.as_ref().expect("harness block");
    let cases: Vec<SweepCase> = if h.fleet {
        supersolution_fleet(exp.mesh.nt, exp.mesh.nx)?.into_iter().map(|c| c.1).collect()
    } else {
        let mut v = Vec::new();
        for (spec, norm) in exp.kernels.iter().zip(&exp.norms) {
            let horizon = exp.horizon(spec)?;
            let solver = PhiSolver::new(spec, horizon)?;
            for c in cylinders(exp) {
                let t_end = c.t_end(&solver)?;
                v.push(SweepCase {
                    problem: problem_for(exp, spec, t_end).with_label(format!("{spec}:r={}", c.r)),
                    nt: exp.mesh.nt,
                    nx: exp.mesh.nx,
                    grading: exp.mesh.grading_for(spec),
                    horizon,
                    norm: *norm,
                    evaluations: h.p.iter().map(|&p| (c, p)).collect(),
                });
            }
        }
        v
    };
    let mut out = Outcome::default();
    writeln!(out.summary, "sweep over {} solves{}", cases.len(), if h.fleet { " (supersolution fleet)" } else { "" }).unwrap();
    report_rows(&sweep(&cases), &mut out);
    Ok(out)
}

fn run_hoelder(exp: &Experiment) -> Result<Outcome, CliError> {
    let h = exp.hoelder.as_ref().expect("hoelder block");
    let mut csv = header(HOELDER_SCHEMA, "family,alpha,gamma,t1,x1,r,theta,level,oscillation,used_in_fit");
    let mut out = Outcome::default();
    writeln!(out.summary, "oscillation decay (r = {}, theta = {}, {} levels)", h.r, h.theta, h.levels).unwrap();
    for spec in &exp.kernels {
        let t_max = exp.mesh.t_max.or(h.t1).unwrap_or(1.0);
        let p = problem_for(exp, spec, t_max);
        let (nt, nx, g) = (exp.mesh.nt, exp.mesh.nx, exp.mesh.grading_for(spec));
        let u = solve(&p, nt, nx, g)?;
        let floor = match h.error_floor {
            Some(f) => f,
            None => {
                let fine = solve(&p, 2 * nt, nx, g)?;
                (0..=nt)
                    .flat_map(|i| u.row(i).iter().zip(fine.row(2 * i)).map(|(a, b)| (a - b).abs()))
                    .fold(0.0, f64::max)
            }
        };
        let want = h.t1.unwrap_or(t_max);
        let t1 = *u
            .times()
            .iter()
            .min_by(|a, b| (*a - want).abs().total_cmp(&(*b - want).abs()))
            .expect("nonempty mesh");
        let solver = PhiSolver::new(spec, exp.horizon(spec)?)?;
        let rep = hoelder_decay(&u, t1, h.x1, h.r, h.theta, h.levels, &solver, exp.p0(spec)?, floor)?;
        for (j, osc) in &rep.levels {
            let used = *osc >= 10.0 * floor && !rep.constant_field;
            writeln!(
                csv,
                "{},{},{},{},{},{},{},{j},{},{used}",
                spec.family(),
                num(spec.alpha()),
                num(spec.gamma()),
                num(t1),
                num(h.x1),
                num(h.r),
                num(h.theta),
                num(*osc)
            )
            .unwrap();
        }
        let kappa = rep.kappa_fit.map_or_else(|| "undefined (constant field)".to_string(), |k| format!("{k:.6}"));
        writeln!(
            out.summary,
            "  {spec}: t1 = {t1:.6e}, error floor = {floor:.3e}, kappa_fit = {kappa}, {} levels fitted, seminorm = {:.6e}",
            rep.used_levels, rep.seminorm
        )
        .unwrap();
        if rep.levels.windows(2).any(|w| w[1].1 > w[0].1) {
            out.failures.push(format!("oscillation increases across levels for {spec}"));
        }
    }
    out.files.push(("hoelder.csv".into(), csv));
    Ok(out)
}

fn run_benchmark(exp: &Experiment) -> Result<Outcome, CliError> {
    let a = match exp.problem.coeff {
        CoeffPreset::Constant(a) => a,
        ref other => {
            return Err(CliError::Invariant(format!(
                "the benchmark needs a constant coefficient, got {other}"
            )))
        }
    };
    if exp.problem.f != SourcePreset::Zero {
        return Err(CliError::Invariant("the benchmark needs f = zero".into()));
    }
    let t_max = exp.mesh.t_max.unwrap_or(0.1);
    let (xl, xr) = (exp.mesh.x_left, exp.mesh.x_right);
    let len = xr - xl;
    let mut csv = header(BENCHMARK_SCHEMA, "family,alpha,gamma,nt,nx,grading,T,max_error,relative_error,tolerance,pass");
    let mut out = Outcome::default();
    writeln!(out.summary, "Mittag-Leffler benchmark: u0 = sin(pi x), Dirichlet 0, A = {a}, T = {t_max}").unwrap();
    for spec in &exp.kernels {
        if !matches!(spec, KernelSpec::FracExp { gamma, .. } if *gamma == 0.0) {
            return Err(CliError::Invariant(format!("the benchmark has a closed form only for frac_exp with gamma = 0, got {spec}")));
        }
        let alpha = spec.alpha();
        let p = ProblemSpec::new(spec.clone(), xl, xr, t_max)
            .with_coeff(Arc::new(move |_, _| a), a, a)
            .with_u0(Arc::new(move |x: f64| (PI * (x - xl) / len).sin()));
        let g = exp.mesh.grading_for(spec);
        let u = solve(&p, exp.mesh.nt, exp.mesh.nx, g)?;
        let amp = mittag_leffler(alpha, 1.0, -a * (PI / len).powi(2) * t_max.powf(alpha));
        let err = u
            .xs()
            .iter()
            .zip(u.row(exp.mesh.nt))
            .map(|(x, v)| (v - amp * (PI * (x - xl) / len).sin()).abs())
            .fold(0.0, f64::max);
        let rel = err / amp;
        let pass = rel <= exp.tolerance;
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{},{pass}",
            spec.family(),
            num(alpha),
            num(0.0),
            exp.mesh.nt,
            exp.mesh.nx,
            num(g),
            num(t_max),
            num(err),
            num(rel),
            num(exp.tolerance)
        )
        .unwrap();
        writeln!(
            out.summary,
            "  {spec}: max-norm error {err:.3e}, relative {rel:.3e} (tolerance {}) -> {}",
            exp.tolerance,
            if pass { "pass" } else { "FAIL" }
        )
        .unwrap();
        if !pass {
            out.failures.push(format!("benchmark error {rel:.3e} exceeds {} for {spec}", exp.tolerance));
        }
    }
    out.files.push(("benchmark.csv".into(), csv));
    Ok(out)
}
