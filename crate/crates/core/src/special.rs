//! Gamma-function helpers on top of `statrs`.

pub use statrs::function::gamma::{gamma, ln_gamma};

/// 1/Γ(x), zero at the poles.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    1.0 / gamma(x)
}

/// `Lg(a, t) = ∫₀ᵗ s^{a-1} e^{-γs} ds / Γ(a)`, i.e. `γ^{-a} P(a, γt)`,
/// which stays finite (and equals `t^a / Γ(a+1)`) as `γ → 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerGamma {
    a: f64,
    gamma: f64,
    inv_gamma_a1: f64,
}

impl LowerGamma {
    pub fn new(a: f64, gamma: f64) -> Self {
        Self {
            a,
            gamma,
            inv_gamma_a1: rgamma(a + 1.0),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let x = self.gamma * t;
        if x <= 30.0 {
            // t^a e^{-x} Σ xⁿ / Γ(a+n+1): all terms positive.
            let mut term = self.inv_gamma_a1;
            let mut sum = term;
            let mut n = 1.0;
            while term > 1e-17 * sum {
                term *= x / (self.a + n);
                sum += term;
                n += 1.0;
            }
            t.powf(self.a) * (-x).exp() * sum
        } else {
            self.gamma.powf(-self.a) * statrs::function::gamma::gamma_lr(self.a, x)
        }
    }
}
