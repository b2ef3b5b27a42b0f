use approx::assert_relative_eq;
use proptest::prelude::*;
use subdiff::*;

fn half() -> PhiSolver {
    PhiSolver::new(&KernelSpec::frac_exp(0.5, 0.0).unwrap(), 1.0).unwrap()
}

#[test]
fn phi_closed_form_at_half() {
    assert_relative_eq!(half().phi(0.5).unwrap(), 0.049_087_385_212_340_52, max_relative = 1e-10);
    assert!(half().phi(1e-6).unwrap() < 1e-20);
}

#[test]
fn r_star_matches_bisection() {
    let s = half();
    let (mut lo, mut hi) = (1e-6, 10.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        // closed form Φ(ρ) = Γ(3/2)² ρ⁴
        if 0.785_398_163_397_448_3 * f64::powi(2.0 * mid, 4) <= 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    assert_relative_eq!(s.r_star(), lo, max_relative = 1e-8);
    assert!(s.phi(2.0 * s.r_star()).unwrap() <= 1.0 + 1e-8);
}

#[test]
fn r_star_stays_below_half_r0() {
    let spec = KernelSpec::switched_frac_exp(0.5, 1.0).unwrap();
    let s = PhiSolver::new(&spec, 1.0).unwrap();
    assert!(s.r_star() < 0.5 * r0(&spec));
    assert!(s.phi(2.0 * s.r_star()).unwrap() <= 1.0 + 1e-8);
    assert!(s.phi(1.5).is_err());
}

#[test]
fn boxes_for_reference_cylinder() {
    let c = CylinderSpec {
        t0: 0.0,
        x0: 0.5,
        r: 0.25,
        delta: 0.5,
        tau: 0.1,
    };
    let (m, p) = make_boxes(&c, &half()).unwrap();
    let phi = 0.049_087_385_212_340_52;
    assert_relative_eq!(m.t_hi, 0.05 * phi, max_relative = 1e-9);
    assert_relative_eq!(p.t_lo, 0.15 * phi, max_relative = 1e-9);
    assert_relative_eq!(p.t_hi, 0.2 * phi, max_relative = 1e-9);
    assert_relative_eq!(m.x_lo, 0.375, max_relative = 1e-12);
    assert!(m.t_hi <= p.t_lo);
    let bad = CylinderSpec { delta: 1.0, ..c };
    assert!(make_boxes(&bad, &half()).is_err());
}

#[test]
fn nested_cylinders_shrink() {
    let s = half();
    let q1 = nested_cylinder(0.01, 0.5, 0.25, 1, 0.1, &s).unwrap();
    assert_relative_eq!(q1.duration(), 3.067_961_575_771_282e-4, max_relative = 1e-9);
    let mut prev = nested_cylinder(0.01, 0.5, 0.25, 0, 0.1, &s).unwrap();
    for l in 1..6 {
        let q = nested_cylinder(0.01, 0.5, 0.25, l, 0.1, &s).unwrap();
        assert!(prev.contains_box(&q));
        assert!(q.duration() <= 0.25 * prev.duration() * (1.0 + 1e-12));
        prev = q;
    }
    assert!(nested_cylinder(0.01, 0.5, 0.25, 1, 1.5, &s).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn phi_shrinks_at_least_quadratically(which in 0usize..3, r in 1e-3f64..0.4, lambda in 1e-3f64..=1.0) {
        let spec = [
            KernelSpec::frac_exp(0.5, 0.0).unwrap(),
            KernelSpec::frac_exp(0.7, 1.0).unwrap(),
            KernelSpec::switched_frac_exp(0.5, 1.0).unwrap(),
        ][which].clone();
        let s = PhiSolver::new(&spec, 1.0).unwrap();
        prop_assert!(s.phi(lambda * r).unwrap() <= lambda * lambda * s.phi(r).unwrap() * (1.0 + 1e-8));
    }

    #[test]
    fn phi_round_trip(alpha in 0.2f64..0.8, gamma in 0.0f64..2.0, r in 1e-3f64..0.5) {
        let spec = KernelSpec::frac_exp(alpha, gamma).unwrap();
        let s = PhiSolver::new(&spec, 1.0).unwrap();
        let phi = s.phi(r).unwrap();
        prop_assert!((k1(&spec, phi).unwrap() * r * r - 1.0).abs() < 1e-8);
        prop_assert!(s.phi(1.01 * r).unwrap() > phi);
    }
}
