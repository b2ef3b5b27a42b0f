//! Typed experiment description built from a [`RawConfig`].

use crate::config::{RawConfig, Section};
use crate::error::CliError;
use std::path::PathBuf;
use std::str::FromStr;
use subdiff::assumptions::{defaults, CertifyOptions, DEFAULT_D_GRID};
use subdiff::mesh::default_grading;
use subdiff::presets::{CoeffPreset, InitialPreset, SourcePreset};
use subdiff::{BoundaryCondition, KernelSpec, Measure, MixedNormSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Certify,
    Solve,
    Harnack,
    Hoelder,
    Sweep,
    Benchmark,
    /// certify, then solve, then the harness blocks that are present.
    Pipeline,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "certify" => Self::Certify,
            "solve" => Self::Solve,
            "harnack" => Self::Harnack,
            "hoelder" => Self::Hoelder,
            "sweep" => Self::Sweep,
            "benchmark" => Self::Benchmark,
            "pipeline" | "run" => Self::Pipeline,
            _ => return Err(format!("unknown mode '{s}'")),
        })
    }
}

#[derive(Debug, Clone)]
pub struct MeshConfig {
    pub nt: usize,
    pub nx: usize,
    /// `None` picks a grading from the kernel order.
    pub grading: Option<f64>,
    /// `None` picks the horizon from the harness blocks.
    pub t_max: Option<f64>,
    pub x_left: f64,
    pub x_right: f64,
}

impl MeshConfig {
    pub fn grading_for(&self, spec: &KernelSpec) -> f64 {
        self.grading.unwrap_or_else(|| default_grading(spec.alpha()))
    }
}

#[derive(Debug, Clone)]
pub struct ProblemConfig {
    pub coeff: CoeffPreset,
    pub u0: InitialPreset,
    pub f: SourcePreset,
    pub bc: BoundaryCondition,
}

#[derive(Debug, Clone)]
pub struct HarnessConfig {
    pub r: Vec<f64>,
    pub p: Vec<f64>,
    pub delta: f64,
    pub tau: f64,
    pub t0: f64,
    pub x0: f64,
    /// Use the built-in supersolution fleet instead of the configured kernels.
    pub fleet: bool,
}

#[derive(Debug, Clone)]
pub struct HoelderConfig {
    pub t1: Option<f64>,
    pub x1: f64,
    pub r: f64,
    pub theta: f64,
    pub levels: u32,
    /// `None` estimates the floor from a solve with twice the time steps.
    pub error_floor: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Experiment {
    pub mode: Mode,
    pub seed: u64,
    pub kernels: Vec<KernelSpec>,
    pub mesh: MeshConfig,
    pub problem: ProblemConfig,
    /// One per kernel, checked against that kernel's p₀.
    pub norms: Vec<MixedNormSpec>,
    pub certify: CertifyOptions,
    pub samples: usize,
    pub harness: Option<HarnessConfig>,
    pub hoelder: Option<HoelderConfig>,
    pub tolerance: f64,
    pub out_dir: Option<PathBuf>,
    pub write_field: bool,
}

#[derive(Debug, Clone, Copy)]
struct Horizons {
    p0: f64,
    t0: f64,
    t_tilde0: f64,
}

fn preset<T: FromStr<Err = subdiff::Error>>(s: &Section, key: &str, default: &str) -> Result<T, CliError> {
    let text = s.raw(key).map_or(default, |e| e.value.as_str());
    text.parse::<T>().map_err(|e| s.error(key, e.to_string()))
}

fn parse_atoms(s: &Section) -> Result<Vec<(f64, f64)>, CliError> {
    let Some(e) = s.raw("atoms") else { return Ok(Vec::new()) };
    e.value
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|item| {
            let (a, m) = item
                .split_once(':')
                .ok_or_else(|| s.error("atoms", format!("expected 'order:mass', got '{item}'")))?;
            let num = |x: &str| {
                x.trim()
                    .parse::<f64>()
                    .map_err(|err| s.error("atoms", format!("cannot parse '{x}': {err}")))
            };
            Ok((num(a)?, num(m)?))
        })
        .collect()
}

fn parse_kernel(s: &Section) -> Result<KernelSpec, CliError> {
    s.check_keys(&["family", "alpha", "gamma", "atoms", "weight"])?;
    let family: String = s.require("family")?;
    let wrap = |key: &str, r: subdiff::Result<KernelSpec>| r.map_err(|e| s.error(key, e.to_string()));
    match family.as_str() {
        "frac_exp" | "switched_frac_exp" => {
            if s.has("atoms") || s.has("weight") {
                return Err(s.error("family", format!("{family} takes alpha and gamma, not a measure")));
            }
            let alpha = s.number("alpha", None, 0.0, 1.0)?.ok_or_else(|| s.error("alpha", "required key is missing"))?;
            let gamma = s.number("gamma", Some(0.0), 0.0, f64::INFINITY)?.unwrap();
            if family == "frac_exp" {
                wrap("alpha", KernelSpec::frac_exp(alpha, gamma))
            } else {
                wrap("alpha", KernelSpec::switched_frac_exp(alpha, gamma))
            }
        }
        "distributed" | "switched_distributed" => {
            if s.has("alpha") || s.has("gamma") {
                return Err(s.error("family", format!("{family} takes atoms and weight, not alpha/gamma")));
            }
            let atoms = parse_atoms(s)?;
            let weight = s.list("weight")?.unwrap_or_default();
            let m = Measure::new(atoms, weight).map_err(|e| s.error("atoms", e.to_string()))?;
            if family == "distributed" {
                wrap("atoms", KernelSpec::distributed(m))
            } else {
                wrap("atoms", KernelSpec::switched_distributed(m))
            }
        }
        _ => Err(s.error(
            "family",
            format!("unknown family '{family}'; expected frac_exp, distributed, switched_frac_exp or switched_distributed"),
        )),
    }
}

fn parse_bc(s: &Section) -> Result<BoundaryCondition, CliError> {
    let text = s.raw("bc").map_or("dirichlet(0, 0)", |e| e.value.as_str()).trim();
    if text == "neumann" {
        return Ok(BoundaryCondition::Neumann);
    }
    let inner = text
        .strip_prefix("dirichlet")
        .map(str::trim)
        .and_then(|r| r.strip_prefix('('))
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| s.error("bc", format!("expected 'neumann' or 'dirichlet(left, right)', got '{text}'")))?;
    let vals: Vec<f64> = inner
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| s.error("bc", format!("bad boundary value in '{text}': {e}")))?;
    match vals[..] {
        [left, right] => Ok(BoundaryCondition::Dirichlet { left, right }),
        [v] => Ok(BoundaryCondition::Dirichlet { left: v, right: v }),
        _ => Err(s.error("bc", "dirichlet takes one or two values")),
    }
}

fn positive_list(s: &Section, key: &str, default: &[f64]) -> Result<Vec<f64>, CliError> {
    let v = s.list(key)?.unwrap_or_else(|| default.to_vec());
    if v.is_empty() {
        return Err(s.error(key, "list is empty"));
    }
    if let Some(bad) = v.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
        return Err(s.error(key, format!("entries must be positive, got {bad}")));
    }
    Ok(v)
}

fn count(s: &Section, key: &str, default: usize, min: usize) -> Result<usize, CliError> {
    let v: usize = s.get_or(key, default)?;
    if v < min {
        return Err(s.error(key, format!("must be at least {min}, got {v}")));
    }
    Ok(v)
}

impl Experiment {
    pub fn from_raw(raw: &RawConfig) -> Result<Self, CliError> {
        const KNOWN: [&str; 9] = ["run", "kernel", "mesh", "problem", "norm", "certify", "harness", "hoelder", "output"];
        for s in &raw.sections {
            if !KNOWN.contains(&s.kind.as_str()) {
                return Err(CliError::parse(
                    s.line,
                    Some(&s.name),
                    format!("unknown section; expected one of: {}", KNOWN.join(", ")),
                ));
            }
            if s.kind != "kernel" && s.name != s.kind {
                return Err(CliError::parse(s.line, Some(&s.name), "only [kernel] blocks may repeat"));
            }
        }
        let empty = |k: &str| Section::empty(k);
        let sec = |k: &'static str| -> Section { raw.section(k).cloned().unwrap_or_else(|| empty(k)) };

        let run = sec("run");
        run.check_keys(&["mode", "seed", "tolerance"])?;
        let mode: Mode = run.get_or("mode", Mode::Pipeline)?;
        let seed: u64 = run.get_or("seed", 0)?;
        let tolerance = run.number("tolerance", Some(0.02), 0.0, f64::INFINITY)?.unwrap();

        let kernels = raw.sections_of("kernel").map(parse_kernel).collect::<Result<Vec<_>, _>>()?;

        let mesh_s = sec("mesh");
        mesh_s.check_keys(&["nt", "nx", "grading", "T", "x_left", "x_right"])?;
        let mesh = MeshConfig {
            nt: count(&mesh_s, "nt", 256, 8)?,
            nx: count(&mesh_s, "nx", 129, 8)?,
            grading: mesh_s.number("grading", None, 1.0, 10.0)?,
            t_max: mesh_s.number("T", None, f64::MIN_POSITIVE, f64::MAX)?,
            x_left: mesh_s.get_or("x_left", 0.0)?,
            x_right: mesh_s.get_or("x_right", 1.0)?,
        };
        if !(mesh.x_left < mesh.x_right) {
            return Err(mesh_s.error("x_right", "x_right must exceed x_left"));
        }

        let prob = sec("problem");
        prob.check_keys(&["A", "u0", "f", "bc"])?;
        let problem = ProblemConfig {
            coeff: preset(&prob, "A", "constant_A(1)")?,
            u0: preset(&prob, "u0", "sin_pi(1)")?,
            f: preset(&prob, "f", "zero")?,
            bc: parse_bc(&prob)?,
        };

        let cert = sec("certify");
        cert.check_keys(&["p0", "t0", "t_tilde0", "beta", "samples", "mesh_steps", "grading", "d_grid"])?;
        let certify = CertifyOptions {
            p0: cert.number("p0", None, 1.0, f64::MAX)?,
            t0: cert.number("t0", None, f64::MIN_POSITIVE, f64::MAX)?,
            t_tilde0: cert.number("t_tilde0", None, f64::MIN_POSITIVE, f64::MAX)?,
            beta: cert.number("beta", None, f64::MIN_POSITIVE, f64::MAX)?,
            d_grid: cert.list("d_grid")?.unwrap_or_else(|| DEFAULT_D_GRID.to_vec()),
            mesh_steps: count(&cert, "mesh_steps", 2048, 8)?,
            grading: cert.number("grading", Some(2.0), 1.0, 10.0)?.unwrap(),
        };
        let samples = count(&cert, "samples", 200, 1)?;

        let norm_s = sec("norm");
        norm_s.check_keys(&["q1", "q2", "d"])?;
        let q1 = norm_s.number("q1", None, 1.0, f64::INFINITY)?;
        let q2 = norm_s.number("q2", None, 1.0, f64::INFINITY)?;
        let d = norm_s.number("d", Some(0.25), 0.0, 1.0)?.unwrap();

        let h = raw.section("harness").cloned();
        let harness = match &h {
            None => None,
            Some(s) => {
                s.check_keys(&["r", "p", "delta", "tau", "t0", "x0", "fleet"])?;
                Some(HarnessConfig {
                    r: positive_list(s, "r", &[0.1])?,
                    p: positive_list(s, "p", &[1.0])?,
                    delta: s.number("delta", Some(0.5), 0.0, 1.0)?.unwrap(),
                    tau: s.number("tau", Some(0.05), f64::MIN_POSITIVE, f64::MAX)?.unwrap(),
                    t0: s.number("t0", Some(0.0), 0.0, f64::MAX)?.unwrap(),
                    x0: s.get_or("x0", 0.5 * (mesh.x_left + mesh.x_right))?,
                    fleet: s.get_or("fleet", false)?,
                })
            }
        };
        let ho = raw.section("hoelder").cloned();
        let hoelder = match &ho {
            None => None,
            Some(s) => {
                s.check_keys(&["t1", "x1", "r", "theta", "levels", "error_floor"])?;
                Some(HoelderConfig {
                    t1: s.number("t1", None, f64::MIN_POSITIVE, f64::MAX)?,
                    x1: s.get_or("x1", 0.5 * (mesh.x_left + mesh.x_right))?,
                    r: s.number("r", Some(0.25), f64::MIN_POSITIVE, f64::MAX)?.unwrap(),
                    theta: s.number("theta", Some(0.1), 0.0, 1.0)?.unwrap(),
                    levels: s.get_or("levels", 5)?,
                    error_floor: s.number("error_floor", None, 0.0, f64::MAX)?,
                })
            }
        };

        let out = sec("output");
        out.check_keys(&["dir", "write_field"])?;
        let out_dir = out.get::<String>("dir")?.map(PathBuf::from);
        let write_field: bool = out.get_or("write_field", false)?;

        let needs_kernel = !(mode == Mode::Sweep && harness.as_ref().is_some_and(|h| h.fleet));
        if kernels.is_empty() && needs_kernel {
            return Err(CliError::parse(0, Some("kernel"), "at least one [kernel] block is required"));
        }
        if mode == Mode::Hoelder && hoelder.is_none() {
            return Err(CliError::parse(0, Some("hoelder"), "mode hoelder needs a [hoelder] block"));
        }
        if matches!(mode, Mode::Harnack | Mode::Sweep) && harness.is_none() {
            return Err(CliError::parse(0, Some("harness"), "this mode needs a [harness] block"));
        }

        let mut norms = Vec::with_capacity(kernels.len());
        for spec in &kernels {
            let hz = Self::horizons_for(&certify, spec)?;
            let pc = hz.p0 / (hz.p0 - 1.0);
            let built = match (q1, q2) {
                (Some(a), Some(b)) => MixedNormSpec::new(a, b, d, hz.p0),
                (Some(a), None) => MixedNormSpec::from_q1(a, d, hz.p0),
                // q₂ = 2 and q₁ from the relation
                (None, None) => MixedNormSpec::new(pc / (0.75 - d), 2.0, d, hz.p0),
                (None, Some(_)) => return Err(norm_s.error("q2", "q2 needs q1")),
            };
            norms.push(built.map_err(|e| CliError::Invariant(format!("[norm] for {spec}: {e}")))?);
        }
        Ok(Self {
            mode,
            seed,
            kernels,
            mesh,
            problem,
            norms,
            certify,
            samples,
            harness,
            hoelder,
            tolerance,
            out_dir,
            write_field,
        })
    }

    fn horizons_for(opts: &CertifyOptions, spec: &KernelSpec) -> Result<Horizons, CliError> {
        let d = defaults(spec)?;
        Ok(Horizons {
            p0: opts.p0.unwrap_or(d.p0),
            t0: opts.t0.unwrap_or(d.t0),
            t_tilde0: opts.t_tilde0.unwrap_or(d.t_tilde0),
        })
    }

    /// min{t₀, t̃₀} for the scaling solver of `spec`.
    pub fn horizon(&self, spec: &KernelSpec) -> Result<f64, CliError> {
        let h = Self::horizons_for(&self.certify, spec)?;
        Ok(h.t0.min(h.t_tilde0))
    }

    pub fn p0(&self, spec: &KernelSpec) -> Result<f64, CliError> {
        Ok(Self::horizons_for(&self.certify, spec)?.p0)
    }
}
