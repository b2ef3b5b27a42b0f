use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use subdiff_cli::{CliError, Experiment, Mode, RawConfig};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_subdiff"));
    c.env_remove(subdiff_cli::OUT_DIR_ENV);
    c
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn write_cfg(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const SMALL_HARNACK: &str = "\
[kernel]
family = frac_exp
alpha = 0.5

[kernel.2]
family = switched_frac_exp
alpha = 0.5
gamma = 1

[mesh]
nt = 64
nx = 65

[problem]
A = checkerboard_A(1, 10)
u0 = shifted_sin_pi(1)
bc = dirichlet(1)

[harness]
r = 0.1, 0.2
p = 0.5, 1.2
";

#[test]
fn bundled_benchmark_passes() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = configs().join("mittag_leffler_benchmark.cfg");
    let o = run(&["run", "--config", cfg.to_str().unwrap(), "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = fs::read_to_string(tmp.path().join("benchmark.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("# subdiff-benchmark-v1"));
    let cols: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let rel: f64 = row[cols.iter().position(|c| *c == "relative_error").unwrap()].parse().unwrap();
    assert!(rel <= 0.02);
    assert!(fs::read_to_string(tmp.path().join("summary.txt")).unwrap().contains("pass"));
}

#[test]
fn benchmark_failure_exits_nonzero() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        tmp.path(),
        "b.cfg",
        "[run]\nmode = benchmark\ntolerance = 1e-9\n[kernel]\nfamily = frac_exp\nalpha = 0.5\n[mesh]\nnt = 32\nnx = 17\nT = 0.1\n",
    );
    let o = run(&["run", "--config", cfg.to_str().unwrap(), "--out", tmp.path().join("o").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(tmp.path().join("o/benchmark.csv").exists());
}

#[test]
fn certify_only_writes_certificate() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        tmp.path(),
        "c.cfg",
        "[run]\nmode = certify\n[kernel]\nfamily = frac_exp\nalpha = 0.5\ngamma = 0\n[certify]\nsamples = 20\n",
    );
    let out = tmp.path().join("o");
    let o = run(&["run", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let cert = fs::read_to_string(out.join("certificate.csv")).unwrap();
    assert!(cert.starts_with("# subdiff-certificate-v1\n"));
    assert!(cert.lines().nth(2).unwrap().ends_with(",true"));
    assert!(out.join("inequalities.csv").exists());
    assert!(!out.join("report.csv").exists());
    assert!(fs::read_dir(&out).unwrap().all(|e| !e.unwrap().file_name().to_string_lossy().starts_with("field")));
}

#[test]
fn norm_relation_violation_exits_3() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        tmp.path(),
        "n.cfg",
        "[kernel]\nfamily = frac_exp\nalpha = 0.5\n[norm]\nq1 = 40\nq2 = 2\nd = 0.25\n",
    );
    let o = run(&["certify", "--config", cfg.to_str().unwrap(), "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("p0'/q1 + N/(2 q2) = 1 - d"), "{}", stderr(&o));
}

#[test]
fn parse_errors_name_line_and_key() {
    let tmp = tempfile::tempdir().unwrap();
    let cases = [
        ("[kernel]\nfamily = frac_exp\nalpha = 0.5\n[mesh]\nnt = many\n", "line 5", "mesh.nt"),
        ("[kernel]\nfamily = frac_exp\nalpha = 0.5\nbeta = 1\n", "line 4", "kernel.beta"),
        ("[kernel]\nfamily = fractional\nalpha = 0.5\n", "line 2", "kernel.family"),
        ("[kernel]\nfamily = frac_exp\nalpha = 0.5\n[problem]\nA = marble_A(2)\n", "line 5", "problem.A"),
        ("[kernel]\nfamily = frac_exp\nalpha = 1.5\n", "line 3", "kernel.alpha"),
        ("[kernel]\nfamily = frac_exp\nalpha = 0.5\n[harness]\nr = 0.1, x\n", "line 5", "harness.r"),
        ("[kernels]\nfamily = frac_exp\n", "line 1", "kernels"),
        ("[kernel]\nfamily frac_exp\n", "line 2", ""),
    ];
    for (i, (body, line, key)) in cases.iter().enumerate() {
        let cfg = write_cfg(tmp.path(), &format!("p{i}.cfg"), body);
        let o = run(&["run", "--config", cfg.to_str().unwrap(), "--out", tmp.path().to_str().unwrap()]);
        let e = stderr(&o);
        assert_eq!(o.status.code(), Some(2), "case {i}: {e}");
        assert!(e.contains(line) && e.contains(key), "case {i}: {e}");
    }
}

#[test]
fn output_is_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(tmp.path(), "h.cfg", SMALL_HARNACK);
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    for (dir, threads) in [(&a, "1"), (&b, "2")] {
        let o = run(&["harnack", "--config", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap(), "--threads", threads]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    for name in ["report.csv", "aggregate.csv", "summary.txt"] {
        assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(b.join(name)).unwrap(), "{name}");
    }
    let report = fs::read_to_string(a.join("report.csv")).unwrap();
    assert_eq!(
        report.lines().nth(1),
        Some("family,alpha,gamma,r,delta,tau,p,lhs,ess_inf_plus,f_term,C_empirical,status")
    );
    assert_eq!(report.lines().count(), 2 + 2 * 2 * 2);
    assert!(report.lines().skip(2).all(|l| l.ends_with(",ok")));
}

#[test]
fn env_var_sets_output_dir() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_cfg(tmp.path(), "s.cfg", "[kernel]\nfamily = frac_exp\nalpha = 0.5\n[mesh]\nnt = 16\nnx = 9\nT = 0.5\n");
    let out = tmp.path().join("env_out");
    let o = bin()
        .args(["solve", "--config", cfg.to_str().unwrap()])
        .env(subdiff_cli::OUT_DIR_ENV, &out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let field = fs::read_to_string(out.join("field_0.csv")).unwrap();
    assert!(field.starts_with("# subdiff-field-v1"));
}

#[test]
fn hoelder_and_sweep_commands() {
    let tmp = tempfile::tempdir().unwrap();
    let body = format!(
        "{SMALL_HARNACK}\n[hoelder]\nr = 0.25\ntheta = 0.1\nlevels = 3\nerror_floor = 0\n"
    )
    .replace("nt = 64", "nt = 64\nT = 0.1");
    let cfg = write_cfg(tmp.path(), "x.cfg", &body);
    let o = run(&["hoelder", "--config", cfg.to_str().unwrap(), "--out", tmp.path().join("h").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = fs::read_to_string(tmp.path().join("h/hoelder.csv")).unwrap();
    assert_eq!(csv.lines().count(), 2 + 2 * 4);
    let cfg = write_cfg(tmp.path(), "y.cfg", &SMALL_HARNACK.replace("nt = 64", "nt = 32"));
    let o = run(&["sweep", "--config", cfg.to_str().unwrap(), "--out", tmp.path().join("s").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(fs::read_to_string(tmp.path().join("s/report.csv")).unwrap().lines().count(), 2 + 8);
}

#[test]
fn presets_listing() {
    let o = run(&["presets"]);
    assert_eq!(o.status.code(), Some(0));
    let s = String::from_utf8_lossy(&o.stdout);
    for want in ["frac_exp(alpha, gamma)", "distributed(atoms, weight)", "checkerboard_A(nu, Lambda, period)"] {
        assert!(s.contains(want), "{want}");
    }
}

#[test]
fn missing_config_is_a_usage_error() {
    assert_eq!(run(&["certify"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn raw_config_sections() {
    let raw = RawConfig::parse("mode = solve # top level\n[kernel]\nfamily = frac_exp\nalpha = 0.3\n[kernel.b]\nfamily = frac_exp\nalpha = 0.7\n").unwrap();
    assert_eq!(raw.sections.len(), 3);
    assert_eq!(raw.sections_of("kernel").count(), 2);
    let exp = Experiment::from_raw(&raw).unwrap();
    assert_eq!(exp.mode, Mode::Solve);
    assert_eq!(exp.kernels.len(), 2);
    assert_eq!(exp.norms.len(), 2);
    assert!(matches!(RawConfig::parse("[a]\nx = 1\nx = 2\n"), Err(CliError::Parse { line: 3, .. })));
}

#[test]
fn exit_codes_by_error_kind() {
    assert_eq!(CliError::from(subdiff::Error::Singular { step: 3 }).exit_code(), 4);
    assert_eq!(CliError::from(subdiff::Error::NormRelation("x".into())).exit_code(), 3);
    assert_eq!(CliError::from(subdiff::Error::Parse("x".into())).exit_code(), 2);
}
