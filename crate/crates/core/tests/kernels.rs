use approx::assert_relative_eq;
use proptest::prelude::*;
use subdiff::convolution::pair_product_spec;
use subdiff::*;

const INV_GAMMA_HALF: f64 = 0.564_189_583_547_756_3;
const INV_GAMMA_THREE_HALVES: f64 = 1.128_379_167_095_512_6;

fn two_atoms(a: f64, b: f64) -> Measure {
    Measure::new(vec![(a, 0.5), (b, 0.5)], vec![]).unwrap()
}

fn families() -> Vec<KernelSpec> {
    vec![
        KernelSpec::frac_exp(0.5, 0.0).unwrap(),
        KernelSpec::frac_exp(0.3, 1.0).unwrap(),
        KernelSpec::distributed(two_atoms(0.3, 0.7)).unwrap(),
        KernelSpec::switched_frac_exp(0.5, 1.0).unwrap(),
        KernelSpec::switched_distributed(two_atoms(0.2, 0.4)).unwrap(),
    ]
}

#[test]
fn closed_form_values() {
    let half = KernelSpec::frac_exp(0.5, 0.0).unwrap();
    assert_relative_eq!(eval_k(&half, 1.0).unwrap(), INV_GAMMA_HALF, max_relative = 1e-14);
    assert_relative_eq!(eval_k(&half, 4.0).unwrap(), 0.5 * INV_GAMMA_HALF, max_relative = 1e-14);
    assert_relative_eq!(eval_l(&half, 1.0).unwrap(), INV_GAMMA_HALF, max_relative = 1e-14);
    let weighted = KernelSpec::frac_exp(0.5, 1.0).unwrap();
    assert_relative_eq!(eval_k(&weighted, 1.0).unwrap(), 0.207_553_748_710_297_35, max_relative = 1e-13);
    let switched = KernelSpec::switched_frac_exp(0.5, 2.0).unwrap();
    assert_relative_eq!(eval_l(&switched, 1.0).unwrap(), 0.076_354_757_088_582_16, max_relative = 1e-13);
}

#[test]
fn running_integral_and_k1() {
    let half = KernelSpec::frac_exp(0.5, 0.0).unwrap();
    assert_relative_eq!(one_conv_l(&half, 1.0).unwrap(), INV_GAMMA_THREE_HALVES, max_relative = 1e-12);
    assert_relative_eq!(one_conv_l(&half, 4.0).unwrap(), 2.0 * INV_GAMMA_THREE_HALVES, max_relative = 1e-12);
    assert!(one_conv_l(&half, 1e-14).unwrap() < 1e-6);
    assert_relative_eq!(k1(&half, 1.0).unwrap(), 0.886_226_925_452_758, max_relative = 1e-12);
    for s in families() {
        assert!(k1(&s, 2.0).unwrap() < k1(&s, 1.0).unwrap(), "{s}");
    }
    let alpha = 0.3;
    let s = KernelSpec::frac_exp(alpha, 0.0).unwrap();
    for t in [0.01, 0.5, 3.0] {
        let want = statrs::function::gamma::gamma(alpha + 1.0) * f64::powf(t, -alpha);
        assert_relative_eq!(k1(&s, t).unwrap(), want, max_relative = 1e-10);
    }
}

#[test]
fn dirac_measure_reduces_to_single_order() {
    let single = KernelSpec::frac_exp(0.5, 0.0).unwrap();
    let dirac = KernelSpec::distributed(Measure::dirac(0.5).unwrap()).unwrap();
    for t in [0.01, 0.3, 1.0, 7.0] {
        assert_relative_eq!(eval_l(&dirac, t).unwrap(), eval_l(&single, t).unwrap(), max_relative = 1e-7);
        assert_relative_eq!(eval_k(&dirac, t).unwrap(), eval_k(&single, t).unwrap(), max_relative = 1e-7);
    }
}

#[test]
fn non_integrable_tails() {
    assert!(r0(&KernelSpec::frac_exp(0.5, 0.0).unwrap()).is_infinite());
    assert!(r0(&KernelSpec::distributed(two_atoms(0.3, 0.7)).unwrap()).is_infinite());
    assert_relative_eq!(r0(&KernelSpec::switched_frac_exp(0.5, 1.0).unwrap()), 1.0, max_relative = 1e-12);
}

#[test]
fn rejects_bad_arguments() {
    let s = KernelSpec::frac_exp(0.5, 0.0).unwrap();
    assert!(matches!(eval_k(&s, 0.0), Err(Error::Domain { .. })));
    assert!(eval_l(&s, -1.0).is_err());
    assert!(KernelSpec::frac_exp(1.0, 0.0).is_err());
    assert!(KernelSpec::frac_exp(0.5, -1.0).is_err());
    assert!(Measure::new(vec![(1.0, 1.0)], vec![]).is_err());
    assert!(Measure::new(vec![(0.5, -1.0)], vec![]).is_err());
    assert!(Measure::new(vec![], vec![]).is_err());
}

#[test]
fn convolution_with_node_data() {
    let s = KernelSpec::frac_exp(0.5, 0.0).unwrap();
    let mesh = TimeMesh::new(1.0, 256, 2.0).unwrap();
    let w = ConvolutionWeights::for_spec(&s, Side::L, &mesh, WeightMode::PiecewiseLinear).unwrap();
    let zero = w.convolve(&vec![0.0; mesh.nodes().len()]).unwrap();
    assert!(zero.iter().all(|v| *v == 0.0));
    let ones = w.convolve(&vec![1.0; mesh.nodes().len()]).unwrap();
    for (t, v) in mesh.nodes().iter().zip(&ones).skip(1) {
        assert_relative_eq!(*v, one_conv_l(&s, *t).unwrap(), max_relative = 1e-10);
    }
    assert!(matches!(w.convolve(&[1.0; 3]), Err(Error::MeshMismatch { .. })));
}

#[test]
fn pair_identity_on_graded_mesh() {
    let mesh = TimeMesh::new(1.0, 1024, 2.0).unwrap();
    for s in families() {
        let kl = pair_product_spec(&s, &mesh).unwrap();
        for (t, v) in mesh.nodes().iter().zip(&kl) {
            if [0.25, 0.5, 1.0].iter().any(|x| (t - x).abs() < 2e-3) {
                assert!((v - 1.0).abs() < 1e-3, "{s} at t={t}: {v}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernels_are_positive_and_nonincreasing(which in 0usize..5, t in 1e-4f64..20.0, f in 1.0001f64..5.0) {
        let s = &families()[which];
        let (k0, k1v) = (eval_k(s, t).unwrap(), eval_k(s, f * t).unwrap());
        let (l0, l1) = (eval_l(s, t).unwrap(), eval_l(s, f * t).unwrap());
        prop_assert!(k0 > 0.0 && l0 > 0.0);
        prop_assert!(k1v <= k0 * (1.0 + 1e-9));
        prop_assert!(l1 <= l0 * (1.0 + 1e-9));
    }

    #[test]
    fn running_integral_increases(alpha in 0.1f64..0.9, gamma in 0.0f64..2.0, t in 1e-3f64..10.0) {
        let s = KernelSpec::frac_exp(alpha, gamma).unwrap();
        prop_assert!(one_conv_l(&s, 1.5 * t).unwrap() > one_conv_l(&s, t).unwrap());
    }
}
