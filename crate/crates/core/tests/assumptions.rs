use approx::assert_relative_eq;
use subdiff::assumptions::*;
use subdiff::*;

fn two_atoms(a: f64, b: f64) -> Measure {
    Measure::new(vec![(a, 0.5), (b, 0.5)], vec![]).unwrap()
}

#[test]
fn pair_checks() {
    let mesh = TimeMesh::new(1.0, 2048, 2.0).unwrap();
    for spec in [KernelSpec::frac_exp(0.5, 0.0).unwrap(), KernelSpec::frac_exp(0.5, 1.0).unwrap()] {
        let r = check_k0(&spec, &mesh).unwrap();
        assert!(r.pass && r.max_residual <= 1e-3, "{spec}: {r:?}");
    }
}

#[test]
fn k1_certification_is_monotone_in_p0() {
    let spec = KernelSpec::frac_exp(0.5, 0.0).unwrap();
    let top = certify_k1(&spec, 1.5, 1.0).unwrap();
    for p in [1.0, 1.1, 1.3] {
        let c = certify_k1(&spec, p, 1.0).unwrap();
        assert!(c.pass);
        assert!(c.c_bar >= 1.0 - 1e-12);
        assert!(c.c_bar <= top.c_bar * (1.0 + 1e-9));
        // 1/(1 − p(1 − α)) for the power law
        assert_relative_eq!(c.c_bar, 1.0 / (1.0 - 0.5 * p), max_relative = 1e-6);
    }
}

#[test]
fn k2_switched_bound() {
    let (alpha, gamma) = (0.5, 1.0);
    let spec = KernelSpec::switched_frac_exp(alpha, gamma).unwrap();
    let c = certify_k2(&spec, 1.0).unwrap();
    let bound = (1.0 - alpha) / (1.0 + gamma * f64::exp(gamma) / alpha);
    assert!(c.pass && c.c_tilde >= bound, "{} < {bound}", c.c_tilde);
}

#[test]
fn k3_weighted_power_law_is_finite() {
    let spec = KernelSpec::frac_exp(0.5, 1.0).unwrap();
    let c = certify_k3(&spec, 0.5, &DEFAULT_D_GRID).unwrap();
    assert!(c.pass);
    assert!(c.c_of_d.iter().all(|r| r.1.is_finite()));
    assert!(c.c_of_d.windows(2).all(|w| w[1].1 >= w[0].1));
}

#[test]
fn dirac_constants_match_single_order() {
    let opts = CertifyOptions::default();
    let a = certify(&KernelSpec::frac_exp(0.5, 0.0).unwrap(), &opts).unwrap();
    let b = certify(&KernelSpec::distributed(Measure::dirac(0.5).unwrap()).unwrap(), &opts).unwrap();
    assert!(a.pass() && b.pass());
    for (x, y) in [(a.p0, b.p0), (a.c_bar, b.c_bar), (a.c_tilde, b.c_tilde), (a.t0, b.t0)] {
        assert_relative_eq!(x, y, max_relative = 0.05);
    }
}

#[test]
fn inequalities_hold_for_the_fleet() {
    for (i, spec) in [
        KernelSpec::frac_exp(0.5, 0.0).unwrap(),
        KernelSpec::frac_exp(0.3, 1.0).unwrap(),
        KernelSpec::switched_frac_exp(0.5, 1.0).unwrap(),
        KernelSpec::switched_distributed(two_atoms(0.2, 0.4)).unwrap(),
    ]
    .iter()
    .enumerate()
    {
        let cert = certify(spec, &CertifyOptions::default()).unwrap();
        let rep = check_inequalities(spec, &cert, 100, i as u64).unwrap();
        assert!(rep.pass(), "{spec}: {:?}", rep.checks.iter().filter(|c| c.violations > 0).collect::<Vec<_>>());
        assert!(rep.phi_power_inf > 0.0);
        assert!(rep.get("k_below_k1").is_some());
    }
}

#[test]
fn integral_of_k_has_wide_margin_at_half() {
    // (1∗k)(0.5) = 0.5^{1/2}/Γ(3/2) against c̄·t·k₁(t) = 4·0.5^{1/2}·Γ(3/2)
    let lhs = 0.797_884_560_802_865_4;
    let rhs = 2.506_628_274_631_000_5;
    let spec = KernelSpec::frac_exp(0.5, 0.0).unwrap();
    let k = spec.k();
    assert_relative_eq!(k.integral(0.5).unwrap(), lhs, max_relative = 1e-12);
    let cert = certify(&spec, &CertifyOptions::default()).unwrap();
    assert_relative_eq!(cert.c_bar * 0.5 * k1(&spec, 0.5).unwrap(), rhs, max_relative = 1e-6);
    assert!(rhs / lhs > 3.0);
}

#[test]
fn seeds_are_reproducible() {
    let spec = KernelSpec::frac_exp(0.7, 1.0).unwrap();
    let cert = certify(&spec, &CertifyOptions::default()).unwrap();
    let a = check_inequalities(&spec, &cert, 50, 7).unwrap();
    let b = check_inequalities(&spec, &cert, 50, 7).unwrap();
    assert_eq!(a, b);
}
