//! Memory-kernel pairs (k, l) with k ∗ l = 1 and their evaluation.

use crate::error::{Error, Result};
use crate::quadrature::integrate_line;
use crate::special::{rgamma, LowerGamma};
use std::f64::consts::PI;
use std::fmt;

const LAPLACE_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    FracExp,
    DistributedOrder,
    SwitchedFracExp,
    SwitchedDistributed,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::FracExp => "frac_exp",
            Family::DistributedOrder => "distributed",
            Family::SwitchedFracExp => "switched_frac_exp",
            Family::SwitchedDistributed => "switched_distributed",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    K,
    L,
}

/// A finite measure on (0, 1): Dirac atoms plus a piecewise-constant density
/// on `weight.len()` equal cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Measure {
    atoms: Vec<(f64, f64)>,
    weight: Vec<f64>,
}

impl Measure {
    pub fn new(atoms: Vec<(f64, f64)>, weight: Vec<f64>) -> Result<Self> {
        for (i, &(a, q)) in atoms.iter().enumerate() {
            if !(a > 0.0 && a < 1.0) {
                return Err(Error::InvalidSpec(format!("atom order {a} not in (0, 1)")));
            }
            if !(q >= 0.0) || !q.is_finite() {
                return Err(Error::InvalidSpec(format!("atom mass {q} is negative")));
            }
            if i > 0 && atoms[i - 1].0 >= a {
                return Err(Error::InvalidSpec(
                    "atom orders must be strictly increasing".into(),
                ));
            }
        }
        if let Some(w) = weight.iter().find(|w| !(**w >= 0.0) || !w.is_finite()) {
            return Err(Error::InvalidSpec(format!("density value {w} is negative")));
        }
        let m = Self { atoms, weight };
        if m.orders().is_empty() {
            return Err(Error::InvalidSpec("measure has zero total mass".into()));
        }
        Ok(m)
    }

    pub fn dirac(alpha: f64) -> Result<Self> {
        Self::new(vec![(alpha, 1.0)], vec![])
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn weight(&self) -> &[f64] {
        &self.weight
    }

    /// Atoms together with the density lumped at cell midpoints,
    /// as (order, mass) pairs sorted by order.
    pub fn orders(&self) -> Vec<(f64, f64)> {
        let m = self.weight.len() as f64;
        let mut out: Vec<(f64, f64)> = self.atoms.iter().copied().filter(|a| a.1 > 0.0).collect();
        for (c, &w) in self.weight.iter().enumerate() {
            if w > 0.0 {
                out.push(((c as f64 + 0.5) / m, w / m));
            }
        }
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        out
    }

    pub fn total_mass(&self) -> f64 {
        self.orders().iter().map(|o| o.1).sum()
    }

    /// Right end of the support.
    pub fn support_max(&self) -> f64 {
        let m = self.weight.len() as f64;
        let atoms = self.atoms.iter().filter(|a| a.1 > 0.0).map(|a| a.0);
        let cells = self
            .weight
            .iter()
            .enumerate()
            .filter(|(_, w)| **w > 0.0)
            .map(|(c, _)| (c as f64 + 1.0) / m);
        atoms.chain(cells).fold(0.0, f64::max)
    }
}

/// One of the four parametric kernel pairs.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelSpec {
    /// k = t^{-α}e^{-γt}/Γ(1-α).
    FracExp { alpha: f64, gamma: f64 },
    /// k = ∫ t^{-a}/Γ(1-a) dμ(a).
    DistributedOrder { measure: Measure },
    /// The roles of k and l in `FracExp` exchanged.
    SwitchedFracExp { alpha: f64, gamma: f64 },
    /// The roles of k and l in `DistributedOrder` exchanged.
    SwitchedDistributed { measure: Measure },
}

fn check_alpha_gamma(alpha: f64, gamma: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidSpec(format!("alpha = {alpha} not in (0, 1)")));
    }
    if !(gamma >= 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidSpec(format!("gamma = {gamma} is negative")));
    }
    Ok(())
}

impl KernelSpec {
    pub fn frac_exp(alpha: f64, gamma: f64) -> Result<Self> {
        check_alpha_gamma(alpha, gamma)?;
        Ok(Self::FracExp { alpha, gamma })
    }

    pub fn switched_frac_exp(alpha: f64, gamma: f64) -> Result<Self> {
        check_alpha_gamma(alpha, gamma)?;
        Ok(Self::SwitchedFracExp { alpha, gamma })
    }

    pub fn distributed(measure: Measure) -> Result<Self> {
        Ok(Self::DistributedOrder { measure })
    }

    pub fn switched_distributed(measure: Measure) -> Result<Self> {
        let top = measure.support_max();
        if top >= 1.0 {
            return Err(Error::InvalidSpec(format!(
                "switched distributed kernel needs measure support below 1, got {top}"
            )));
        }
        Ok(Self::SwitchedDistributed { measure })
    }

    /// Re-checks the invariants (useful for values built by hand).
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::FracExp { alpha, gamma } | Self::SwitchedFracExp { alpha, gamma } => {
                check_alpha_gamma(*alpha, *gamma)
            }
            Self::DistributedOrder { measure } => {
                Measure::new(measure.atoms.clone(), measure.weight.clone()).map(|_| ())
            }
            Self::SwitchedDistributed { measure } => {
                Measure::new(measure.atoms.clone(), measure.weight.clone())?;
                Self::switched_distributed(measure.clone()).map(|_| ())
            }
        }
    }

    pub fn family(&self) -> Family {
        match self {
            Self::FracExp { .. } => Family::FracExp,
            Self::DistributedOrder { .. } => Family::DistributedOrder,
            Self::SwitchedFracExp { .. } => Family::SwitchedFracExp,
            Self::SwitchedDistributed { .. } => Family::SwitchedDistributed,
        }
    }

    /// α for the single-order families, the right end of the support otherwise.
    pub fn alpha(&self) -> f64 {
        match self {
            Self::FracExp { alpha, .. } | Self::SwitchedFracExp { alpha, .. } => *alpha,
            Self::DistributedOrder { measure } | Self::SwitchedDistributed { measure } => {
                measure.orders().last().map(|o| o.0).unwrap_or(0.0)
            }
        }
    }

    pub fn gamma(&self) -> f64 {
        match self {
            Self::FracExp { gamma, .. } | Self::SwitchedFracExp { gamma, .. } => *gamma,
            _ => 0.0,
        }
    }

    pub fn k(&self) -> Kernel {
        self.side(Side::K)
    }

    pub fn l(&self) -> Kernel {
        self.side(Side::L)
    }

    pub fn side(&self, side: Side) -> Kernel {
        let (first, second) = match self {
            Self::FracExp { alpha, gamma } => (
                Kernel::power_exp(1.0 - alpha, *gamma),
                Kernel::power_exp_partner(*alpha, *gamma),
            ),
            Self::SwitchedFracExp { alpha, gamma } => (
                Kernel::power_exp_partner(*alpha, *gamma),
                Kernel::power_exp(1.0 - alpha, *gamma),
            ),
            Self::DistributedOrder { measure } => (
                Kernel::power_mixture(&measure.orders()),
                Kernel::laplace(&measure.orders()),
            ),
            Self::SwitchedDistributed { measure } => (
                Kernel::laplace(&measure.orders()),
                Kernel::power_mixture(&measure.orders()),
            ),
        };
        match side {
            Side::K => first,
            Side::L => second,
        }
    }
}

impl fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::FracExp { alpha, gamma } | Self::SwitchedFracExp { alpha, gamma } => {
                write!(f, "{}(alpha={alpha}, gamma={gamma})", self.family())
            }
            Self::DistributedOrder { measure } | Self::SwitchedDistributed { measure } => {
                write!(f, "{}(", self.family())?;
                for (i, (a, q)) in measure.orders().iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{q}*delta({a})")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
struct PowerExp {
    a: f64,
    gamma: f64,
    inv_gamma_a: f64,
    lg: [LowerGamma; 3],
}

impl PowerExp {
    fn new(a: f64, gamma: f64) -> Self {
        Self {
            a,
            gamma,
            inv_gamma_a: rgamma(a),
            lg: [
                LowerGamma::new(a, gamma),
                LowerGamma::new(a + 1.0, gamma),
                LowerGamma::new(a + 2.0, gamma),
            ],
        }
    }

    fn value(&self, t: f64) -> f64 {
        t.powf(self.a - 1.0) * (-self.gamma * t).exp() * self.inv_gamma_a
    }
}

#[derive(Debug, Clone, PartialEq)]
struct PowerTerm {
    a: f64,
    mass: f64,
    inv_gamma: [f64; 3],
}

/// (1/π)∫₀^∞ e^{-pt} H(p) dp with H = S/(S²+C²),
/// S = Σ m p^a sin(πa), C = Σ m p^a cos(πa).
#[derive(Debug, Clone, PartialEq)]
pub struct LaplaceKernel {
    orders: Vec<(f64, f64, f64, f64)>,
    a_min: f64,
    a_max: f64,
}

impl LaplaceKernel {
    fn new(orders: &[(f64, f64)]) -> Self {
        let orders: Vec<_> = orders
            .iter()
            .map(|&(a, m)| {
                let (s, c) = (PI * a).sin_cos();
                (a, m * s, m * c, m)
            })
            .collect();
        let a_min = orders.iter().map(|o| o.0).fold(f64::INFINITY, f64::min);
        let a_max = orders.iter().map(|o| o.0).fold(0.0, f64::max);
        Self { orders, a_min, a_max }
    }

    /// H(e^s).
    pub fn h(&self, s: f64) -> f64 {
        // Scale by e^{-a_ref s} so neither S nor C overflows.
        let a_ref = if s > 0.0 { self.a_max } else { self.a_min };
        let (mut sn, mut cs) = (0.0, 0.0);
        for &(a, ms, mc, _) in &self.orders {
            let w = ((a - a_ref) * s).exp();
            sn += ms * w;
            cs += mc * w;
        }
        (-a_ref * s).exp() * sn / (sn * sn + cs * cs)
    }

    pub fn a_min(&self) -> f64 {
        self.a_min
    }

    pub fn a_max(&self) -> f64 {
        self.a_max
    }

    fn line(&self, t: f64, g: impl Fn(f64, f64) -> f64) -> Result<f64> {
        let v = integrate_line(
            |s| {
                let p = s.exp();
                self.h(s) * g(p, p * t)
            },
            -t.ln(),
            LAPLACE_TOL,
        )?;
        Ok(v / PI)
    }

    fn value(&self, t: f64) -> Result<f64> {
        self.line(t, |p, x| p * (-x).exp())
    }

    fn derivative(&self, t: f64) -> Result<f64> {
        self.line(t, |p, x| -p * p * (-x).exp())
    }

    fn integral(&self, t: f64) -> Result<f64> {
        self.line(t, |_, x| -(-x).exp_m1())
    }

    fn double_integral(&self, t: f64) -> Result<f64> {
        self.line(t, |p, x| second_antiderivative_factor(x) / p)
    }
}

/// x - 1 + e^{-x}, accurate for small x.
pub(crate) fn second_antiderivative_factor(x: f64) -> f64 {
    if x < 1e-3 {
        x * x * (0.5 - x / 6.0 + x * x / 24.0)
    } else {
        x + (-x).exp_m1()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    /// t^{a-1}e^{-γt}/Γ(a)
    PowerExp(PowerExp),
    /// t^{a-1}e^{-γt}/Γ(a) + γ Lg(a, t)
    PowerExpPartner(PowerExp),
    /// Σ m t^{a-1}/Γ(a)
    PowerMixture(Vec<PowerTerm>),
    Laplace(LaplaceKernel),
    Constant(f64),
    Scaled(f64, Box<Kernel>),
}

/// One kernel of a pair, with its first two antiderivatives from 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel(Repr);

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "t",
            value: t,
            domain: "(0, inf)",
        })
    }
}

impl Kernel {
    pub fn power_exp(a: f64, gamma: f64) -> Self {
        Kernel(Repr::PowerExp(PowerExp::new(a, gamma)))
    }

    pub fn power_exp_partner(a: f64, gamma: f64) -> Self {
        Kernel(Repr::PowerExpPartner(PowerExp::new(a, gamma)))
    }

    /// Σ m t^{-α}/Γ(1-α) over the given (α, m).
    pub fn power_mixture(orders: &[(f64, f64)]) -> Self {
        Kernel(Repr::PowerMixture(
            orders
                .iter()
                .map(|&(alpha, mass)| {
                    let a = 1.0 - alpha;
                    PowerTerm {
                        a,
                        mass,
                        inv_gamma: [rgamma(a), rgamma(a + 1.0), rgamma(a + 2.0)],
                    }
                })
                .collect(),
        ))
    }

    pub fn laplace(orders: &[(f64, f64)]) -> Self {
        Kernel(Repr::Laplace(LaplaceKernel::new(orders)))
    }

    pub fn constant(c: f64) -> Self {
        Kernel(Repr::Constant(c))
    }

    pub fn scaled(self, factor: f64) -> Self {
        Kernel(Repr::Scaled(factor, Box::new(self)))
    }

    /// Some for kernels given by a spectral integral.
    pub fn as_laplace(&self) -> Option<&LaplaceKernel> {
        match &self.0 {
            Repr::Laplace(l) => Some(l),
            _ => None,
        }
    }

    /// True when values and antiderivatives are elementary/special-function
    /// closed forms (no quadrature per evaluation).
    pub fn is_closed_form(&self) -> bool {
        match &self.0 {
            Repr::Laplace(_) => false,
            Repr::Scaled(_, inner) => inner.is_closed_form(),
            _ => true,
        }
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        check_t(t)?;
        Ok(match &self.0 {
            Repr::PowerExp(pe) => pe.value(t),
            Repr::PowerExpPartner(pe) => pe.value(t) + pe.gamma * pe.lg[0].eval(t),
            Repr::PowerMixture(terms) => terms
                .iter()
                .map(|p| p.mass * t.powf(p.a - 1.0) * p.inv_gamma[0])
                .sum(),
            Repr::Laplace(lk) => lk.value(t)?,
            Repr::Constant(c) => *c,
            Repr::Scaled(f, inner) => f * inner.value(t)?,
        })
    }

    /// (1 ∗ κ)(t) = ∫₀ᵗ κ.
    pub fn integral(&self, t: f64) -> Result<f64> {
        check_t(t)?;
        Ok(match &self.0 {
            Repr::PowerExp(pe) => pe.lg[0].eval(t),
            Repr::PowerExpPartner(pe) => {
                (1.0 + pe.gamma * t) * pe.lg[0].eval(t) - pe.a * pe.gamma * pe.lg[1].eval(t)
            }
            Repr::PowerMixture(terms) => terms
                .iter()
                .map(|p| p.mass * t.powf(p.a) * p.inv_gamma[1])
                .sum(),
            Repr::Laplace(lk) => lk.integral(t)?,
            Repr::Constant(c) => c * t,
            Repr::Scaled(f, inner) => f * inner.integral(t)?,
        })
    }

    /// (1 ∗ 1 ∗ κ)(t) = ∫₀ᵗ (t - s) κ(s) ds.
    pub fn double_integral(&self, t: f64) -> Result<f64> {
        check_t(t)?;
        Ok(match &self.0 {
            Repr::PowerExp(pe) => t * pe.lg[0].eval(t) - pe.a * pe.lg[1].eval(t),
            Repr::PowerExpPartner(pe) => {
                let (a, g) = (pe.a, pe.gamma);
                (t + 0.5 * g * t * t) * pe.lg[0].eval(t) - a * (1.0 + g * t) * pe.lg[1].eval(t)
                    + 0.5 * g * a * (a + 1.0) * pe.lg[2].eval(t)
            }
            Repr::PowerMixture(terms) => terms
                .iter()
                .map(|p| p.mass * t.powf(p.a + 1.0) * p.inv_gamma[2])
                .sum(),
            Repr::Laplace(lk) => lk.double_integral(t)?,
            Repr::Constant(c) => 0.5 * c * t * t,
            Repr::Scaled(f, inner) => f * inner.double_integral(t)?,
        })
    }

    /// κ'(t).
    pub fn derivative(&self, t: f64) -> Result<f64> {
        check_t(t)?;
        Ok(match &self.0 {
            Repr::PowerExp(pe) => pe.value(t) * ((pe.a - 1.0) / t - pe.gamma),
            Repr::PowerExpPartner(pe) => pe.value(t) * (pe.a - 1.0) / t,
            Repr::PowerMixture(terms) => terms
                .iter()
                .map(|p| p.mass * (p.a - 1.0) * t.powf(p.a - 2.0) * p.inv_gamma[0])
                .sum(),
            Repr::Laplace(lk) => lk.derivative(t)?,
            Repr::Constant(_) => 0.0,
            Repr::Scaled(f, inner) => f * inner.derivative(t)?,
        })
    }

    /// ∫₀^∞ κ, possibly infinite.
    pub fn total_integral(&self) -> f64 {
        match &self.0 {
            Repr::PowerExp(pe) if pe.gamma > 0.0 => pe.gamma.powf(-pe.a),
            Repr::Scaled(f, inner) => f * inner.total_integral(),
            Repr::Constant(c) if *c == 0.0 => 0.0,
            // Power-law tails; the partner tends to the constant γ^{1-a};
            // H(p) ~ p^{-a_min} makes the Laplace integral diverge at p → 0.
            _ => f64::INFINITY,
        }
    }
}

pub fn eval_k(spec: &KernelSpec, t: f64) -> Result<f64> {
    spec.k().value(t)
}

pub fn eval_l(spec: &KernelSpec, t: f64) -> Result<f64> {
    spec.l().value(t)
}

/// (1 ∗ l)(t).
pub fn one_conv_l(spec: &KernelSpec, t: f64) -> Result<f64> {
    spec.l().integral(t)
}

/// k₁ = 1/(1 ∗ l).
pub fn k1(spec: &KernelSpec, t: f64) -> Result<f64> {
    Ok(1.0 / one_conv_l(spec, t)?)
}

/// r₀ = (∫₀^∞ l)^{1/2}.
pub fn r0(spec: &KernelSpec) -> f64 {
    spec.l().total_integral().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;
    use approx::assert_relative_eq;

    fn fe(alpha: f64, g: f64) -> KernelSpec {
        KernelSpec::frac_exp(alpha, g).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(KernelSpec::frac_exp(1.0, 0.0).is_err());
        assert!(KernelSpec::frac_exp(0.5, -1.0).is_err());
        assert!(Measure::new(vec![(0.5, 0.0)], vec![]).is_err());
        assert!(Measure::new(vec![(0.6, 1.0), (0.3, 1.0)], vec![]).is_err());
        let full = Measure::new(vec![], vec![1.0; 4]).unwrap();
        assert!(KernelSpec::switched_distributed(full).is_err());
        assert!(eval_k(&fe(0.5, 0.0), 0.0).is_err());
    }

    #[test]
    fn closed_form_values() {
        let s = fe(0.5, 0.0);
        assert_relative_eq!(eval_k(&s, 1.0).unwrap(), 0.564_189_583_547_756_3, max_relative = 1e-14);
        assert_relative_eq!(eval_k(&s, 4.0).unwrap(), 0.5 * eval_k(&s, 1.0).unwrap(), max_relative = 1e-14);
        assert_relative_eq!(eval_l(&s, 1.0).unwrap(), 0.564_189_583_547_756_3, max_relative = 1e-14);
        assert_relative_eq!(eval_k(&fe(0.5, 1.0), 1.0).unwrap(), 0.207_553_748_710_297_8, max_relative = 1e-12);
        let sw = KernelSpec::switched_frac_exp(0.5, 2.0).unwrap();
        assert_relative_eq!(eval_l(&sw, 1.0).unwrap(), (-2f64).exp() / PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(one_conv_l(&s, 1.0).unwrap(), 1.0 / gamma(1.5), max_relative = 1e-14);
        assert_relative_eq!(k1(&s, 1.0).unwrap(), gamma(1.5), max_relative = 1e-14);
    }

    #[test]
    fn antiderivatives_match_quadrature() {
        use crate::quadrature::adaptive;
        for spec in [fe(0.3, 0.0), fe(0.7, 1.5), KernelSpec::switched_frac_exp(0.4, 2.0).unwrap()] {
            for side in [Side::K, Side::L] {
                let kern = spec.side(side);
                let t = 0.8;
                // Substitute s = t u^m to remove the endpoint singularity.
                let m = 4.0;
                let q1 = adaptive(|u: f64| kern.value(t * u.powf(m)).unwrap_or(0.0) * t * m * u.powf(m - 1.0), 0.0, 1.0, 4, 1e-13, 0.0).unwrap();
                let q2 = adaptive(
                    |u: f64| {
                        let s = t * u.powf(m);
                        kern.value(s).unwrap_or(0.0) * (t - s) * t * m * u.powf(m - 1.0)
                    },
                    0.0, 1.0, 4, 1e-13, 0.0,
                )
                .unwrap();
                assert_relative_eq!(kern.integral(t).unwrap(), q1, max_relative = 1e-10);
                assert_relative_eq!(kern.double_integral(t).unwrap(), q2, max_relative = 1e-10);
                let h = 1e-5;
                let fd = (kern.value(t + h).unwrap() - kern.value(t - h).unwrap()) / (2.0 * h);
                assert_relative_eq!(kern.derivative(t).unwrap(), fd, max_relative = 1e-7);
            }
        }
    }

    #[test]
    fn dirac_measure_reduces_to_single_order() {
        let d = KernelSpec::distributed(Measure::dirac(0.5).unwrap()).unwrap();
        let s = fe(0.5, 0.0);
        for t in [1e-3, 0.1, 1.0, 7.0] {
            assert_relative_eq!(eval_l(&d, t).unwrap(), eval_l(&s, t).unwrap(), max_relative = 1e-9);
            assert_relative_eq!(one_conv_l(&d, t).unwrap(), one_conv_l(&s, t).unwrap(), max_relative = 1e-9);
            assert_relative_eq!(
                d.l().double_integral(t).unwrap(),
                s.l().double_integral(t).unwrap(),
                max_relative = 1e-9
            );
            assert_relative_eq!(d.l().derivative(t).unwrap(), s.l().derivative(t).unwrap(), max_relative = 1e-9);
            assert_relative_eq!(eval_k(&d, t).unwrap(), eval_k(&s, t).unwrap(), max_relative = 1e-14);
        }
        let sd = KernelSpec::switched_distributed(Measure::dirac(0.3).unwrap()).unwrap();
        let ss = KernelSpec::switched_frac_exp(0.3, 0.0).unwrap();
        assert_relative_eq!(eval_k(&sd, 0.5).unwrap(), eval_k(&ss, 0.5).unwrap(), max_relative = 1e-9);
    }

    #[test]
    fn uniform_density_lumps_at_midpoints() {
        let m = Measure::new(vec![(0.25, 1.0)], vec![2.0, 0.0]).unwrap();
        assert_eq!(m.orders(), vec![(0.25, 1.0), (0.25, 1.0)]);
        assert_relative_eq!(m.total_mass(), 2.0);
        assert_relative_eq!(m.support_max(), 0.5);
    }

    #[test]
    fn r0_values() {
        assert!(r0(&fe(0.5, 0.0)).is_infinite());
        assert!(r0(&fe(0.5, 1.0)).is_infinite());
        assert_relative_eq!(r0(&KernelSpec::switched_frac_exp(0.5, 1.0).unwrap()), 1.0, max_relative = 1e-14);
        assert!(r0(&KernelSpec::switched_frac_exp(0.5, 0.0).unwrap()).is_infinite());
        let d = KernelSpec::distributed(Measure::new(vec![(0.3, 0.5), (0.7, 0.5)], vec![]).unwrap()).unwrap();
        assert!(r0(&d).is_infinite());
    }
}
