//! The intrinsic scaling function Φ, defined by (1 ∗ l)(Φ(r)) = r², and the
//! space-time cylinders built from it.

use crate::error::{Error, Result};
use crate::kernel::{r0, Kernel, KernelSpec};

/// Root-finder for Φ with the admissible radius r* attached.
#[derive(Debug, Clone)]
pub struct PhiSolver {
    spec: KernelSpec,
    l: Kernel,
    rel_tol: f64,
    r0: f64,
    horizon: f64,
    r_star: f64,
}

impl PhiSolver {
    /// `horizon` is min{t₀, t̃₀}; r* is the radius with Φ(2r*) = min{1, horizon}.
    pub fn new(spec: &KernelSpec, horizon: f64) -> Result<Self> {
        if !(horizon > 0.0) {
            return Err(Error::Domain {
                what: "horizon",
                value: horizon,
                domain: "(0, inf)",
            });
        }
        let l = spec.l();
        let m = horizon.min(1.0);
        // Φ(2r) = m  ⇔  (1 ∗ l)(m) = 4r².
        let r_star = 0.5 * l.integral(m)?.sqrt();
        Ok(Self {
            spec: spec.clone(),
            l,
            rel_tol: 1e-10,
            r0: r0(spec),
            horizon,
            r_star,
        })
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn r_star(&self) -> f64 {
        self.r_star
    }

    pub fn k1(&self, t: f64) -> Result<f64> {
        Ok(1.0 / self.l.integral(t)?)
    }

    /// Solves (1 ∗ l)(Φ) = r² by safeguarded Newton on ln(1 ∗ l) against ln t.
    pub fn phi(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) || !r.is_finite() || r >= 0.999 * self.r0 {
            return Err(Error::Domain {
                what: "r",
                value: r,
                domain: "(0, 0.999 r0)",
            });
        }
        let target = 2.0 * r.ln();
        let f = |x: f64| -> Result<f64> { Ok(self.l.integral(x.exp())?.ln() - target) };

        // Bracket in x = ln t, starting from [ln 1e-12, 0].
        let (mut lo, mut hi) = (-12.0 * std::f64::consts::LN_10, 0.0);
        let mut f_hi = f(hi)?;
        let mut expansions = 0;
        while f_hi < 0.0 {
            lo = hi;
            hi += std::f64::consts::LN_10;
            f_hi = f(hi)?;
            expansions += 1;
            if expansions > 12 {
                return Err(Error::Bracket(format!(
                    "(1 * l)(t) stays below r^2 = {} up to t = 1e12; r is at or beyond r0",
                    r * r
                )));
            }
        }
        let mut f_lo = f(lo)?;
        while f_lo > 0.0 {
            hi = lo;
            lo -= 10.0 * std::f64::consts::LN_10;
            if lo < -700.0 {
                return Err(Error::Bracket(format!("no lower bracket for r = {r}")));
            }
            f_lo = f(lo)?;
        }

        let mut x = if f_lo.abs() < f_hi.abs() { lo } else { hi };
        let mut fx = if x == lo { f_lo } else { f_hi };
        for _ in 0..200 {
            if fx.abs() <= 0.5 * self.rel_tol {
                return Ok(x.exp());
            }
            if fx < 0.0 {
                lo = x;
            } else {
                hi = x;
            }
            let t = x.exp();
            // d ln(1∗l)/d ln t = t l(t) / (1∗l)(t)
            let slope = t * self.l.value(t)? / self.l.integral(t)?;
            let newton = x - fx / slope;
            x = if slope > 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            fx = f(x)?;
        }
        Err(Error::Bracket(format!("Newton iteration for r = {r} did not converge")))
    }
}

pub fn phi(solver: &PhiSolver, r: f64) -> Result<f64> {
    solver.phi(r)
}

pub fn r_star(solver: &PhiSolver) -> f64 {
    solver.r_star()
}

/// A space-time box, half-open in time `(t_lo, t_hi]`, closed in space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceTimeBox {
    pub t_lo: f64,
    pub t_hi: f64,
    pub x_lo: f64,
    pub x_hi: f64,
}

impl SpaceTimeBox {
    pub fn contains_box(&self, other: &SpaceTimeBox) -> bool {
        self.t_lo <= other.t_lo
            && other.t_hi <= self.t_hi
            && self.x_lo <= other.x_lo
            && other.x_hi <= self.x_hi
    }

    pub fn duration(&self) -> f64 {
        self.t_hi - self.t_lo
    }

    pub fn width(&self) -> f64 {
        self.x_hi - self.x_lo
    }
}

/// Intrinsic cylinder parameters (t₀, x₀, r, δ, τ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderSpec {
    pub t0: f64,
    pub x0: f64,
    pub r: f64,
    pub delta: f64,
    pub tau: f64,
}

impl CylinderSpec {
    pub fn validate(&self, solver: &PhiSolver) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidProblem(m));
        if !(self.t0 >= 0.0) || !self.t0.is_finite() {
            return bad(format!("cylinder t0 = {} must be nonnegative", self.t0));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return bad(format!("cylinder delta = {} not in (0, 1)", self.delta));
        }
        if !(self.tau > 0.0 && self.tau <= 1.0) {
            return bad(format!("cylinder tau = {} not in (0, 1]", self.tau));
        }
        if !self.x0.is_finite() {
            return bad("cylinder x0 is not finite".into());
        }
        if !(self.r > 0.0) || self.r > solver.r_star() * (1.0 + 1e-12) {
            return bad(format!(
                "cylinder r = {} not in (0, r*] with r* = {}",
                self.r,
                solver.r_star()
            ));
        }
        Ok(())
    }

    /// t₀ + 2τΦ(2r), the end of the later box.
    pub fn t_end(&self, solver: &PhiSolver) -> Result<f64> {
        Ok(self.t0 + 2.0 * self.tau * solver.phi(2.0 * self.r)?)
    }
}

/// Q₋ = (t₀, t₀ + δτΦ(2r)] × B(x₀, δr) and
/// Q₊ = (t₀ + (2 − δ)τΦ(2r), t₀ + 2τΦ(2r)] × B(x₀, δr).
pub fn make_boxes(c: &CylinderSpec, solver: &PhiSolver) -> Result<(SpaceTimeBox, SpaceTimeBox)> {
    c.validate(solver)?;
    let h = c.tau * solver.phi(2.0 * c.r)?;
    let (x_lo, x_hi) = (c.x0 - c.delta * c.r, c.x0 + c.delta * c.r);
    let minus = SpaceTimeBox {
        t_lo: c.t0,
        t_hi: c.t0 + c.delta * h,
        x_lo,
        x_hi,
    };
    let plus = SpaceTimeBox {
        t_lo: c.t0 + (2.0 - c.delta) * h,
        t_hi: c.t0 + 2.0 * h,
        x_lo,
        x_hi,
    };
    Ok((minus, plus))
}

/// Q(2^{-l}) = (t₁ − θΦ(2ρr), t₁] × B(x₁, ρr) with ρ = 2^{-l}.
pub fn nested_cylinder(
    t1: f64,
    x1: f64,
    r: f64,
    l_index: u32,
    theta: f64,
    solver: &PhiSolver,
) -> Result<SpaceTimeBox> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Domain {
            what: "theta",
            value: theta,
            domain: "(0, 1)",
        });
    }
    let rho_r = r * 0.5f64.powi(l_index as i32);
    let h = theta * solver.phi(2.0 * rho_r)?;
    Ok(SpaceTimeBox {
        t_lo: t1 - h,
        t_hi: t1,
        x_lo: x1 - rho_r,
        x_hi: x1 + rho_r,
    })
}
