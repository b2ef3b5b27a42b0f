//! Named coefficient, initial-value and source presets, parsed from
//! strings such as `checkerboard_A(nu=1, Lambda=10, period=0.125)`.

use crate::error::{Error, Result};
use crate::pde::{SpaceFn, SpaceTimeFn};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// Splits `name(a, k=b, …)` into the name and its (key, value) arguments.
fn split_call(s: &str) -> Result<(String, Vec<(Option<String>, f64)>)> {
    let s = s.trim();
    let (name, rest) = match s.find('(') {
        Some(i) => (&s[..i], &s[i + 1..]),
        None => return Ok((s.to_string(), Vec::new())),
    };
    let inner = rest
        .strip_suffix(')')
        .ok_or_else(|| Error::Parse(format!("missing ')' in '{s}'")))?;
    let mut args = Vec::new();
    for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = match part.split_once('=') {
            Some((k, v)) => (Some(k.trim().to_string()), v.trim()),
            None => (None, part),
        };
        let v = value
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("bad number '{value}' in '{s}'")))?;
        args.push((key, v));
    }
    Ok((name.trim().to_string(), args))
}

/// Resolves arguments against parameter names, positional or by key.
fn bind(name: &str, args: &[(Option<String>, f64)], params: &[(&str, Option<f64>)]) -> Result<Vec<f64>> {
    if args.len() > params.len() {
        return Err(Error::Parse(format!(
            "{name} takes at most {} arguments",
            params.len()
        )));
    }
    let mut out: Vec<Option<f64>> = params.iter().map(|p| p.1).collect();
    for (i, (key, v)) in args.iter().enumerate() {
        let slot = match key {
            Some(k) => params
                .iter()
                .position(|p| p.0.eq_ignore_ascii_case(k))
                .ok_or_else(|| Error::Parse(format!("{name} has no parameter '{k}'")))?,
            None => i,
        };
        out[slot] = Some(*v);
    }
    out.iter()
        .zip(params)
        .map(|(v, p)| v.ok_or_else(|| Error::Parse(format!("{name} needs '{}'", p.0))))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoeffPreset {
    Constant(f64),
    /// ν on even cells of width `period`, Λ on odd ones.
    Checkerboard { nu: f64, lambda: f64, period: f64 },
}

impl CoeffPreset {
    pub fn evaluator(&self) -> SpaceTimeFn {
        match *self {
            Self::Constant(c) => Arc::new(move |_, _| c),
            Self::Checkerboard { nu, lambda, period } => Arc::new(move |_, x| {
                if (x / period).floor().rem_euclid(2.0) == 0.0 {
                    nu
                } else {
                    lambda
                }
            }),
        }
    }

    /// (ν, Λ)
    pub fn bounds(&self) -> (f64, f64) {
        match *self {
            Self::Constant(c) => (c, c),
            Self::Checkerboard { nu, lambda, .. } => (nu.min(lambda), nu.max(lambda)),
        }
    }
}

impl FromStr for CoeffPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = split_call(s)?;
        let p = match name.as_str() {
            "constant" | "constant_A" => {
                let v = bind(&name, &args, &[("value", Some(1.0))])?;
                Self::Constant(v[0])
            }
            "checkerboard" | "checkerboard_A" => {
                let v = bind(
                    &name,
                    &args,
                    &[("nu", None), ("Lambda", None), ("period", Some(0.125))],
                )?;
                Self::Checkerboard {
                    nu: v[0],
                    lambda: v[1],
                    period: v[2],
                }
            }
            _ => return Err(Error::Parse(format!("unknown coefficient preset '{name}'"))),
        };
        let (nu, lambda) = p.bounds();
        if !(nu > 0.0) || !lambda.is_finite() {
            return Err(Error::Parse(format!("coefficient preset '{s}' is not uniformly elliptic")));
        }
        if let Self::Checkerboard { period, .. } = p {
            if !(period > 0.0) {
                return Err(Error::Parse(format!("checkerboard period must be positive in '{s}'")));
            }
        }
        Ok(p)
    }
}

impl fmt::Display for CoeffPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant(c) => write!(f, "constant_A(value={c})"),
            Self::Checkerboard { nu, lambda, period } => {
                write!(f, "checkerboard_A(nu={nu}, Lambda={lambda}, period={period})")
            }
        }
    }
}

/// Initial values on (x_left, x_right); `s` below is the rescaled
/// coordinate (x − x_left)/(x_right − x_left).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialPreset {
    Constant(f64),
    /// a·sin(πs)
    SinPi(f64),
    /// c + sin(πs)
    ShiftedSinPi(f64),
    /// base + height·max(0, 1 − ((s − centre)/width)²)
    Bump { centre: f64, width: f64, height: f64, base: f64 },
}

impl InitialPreset {
    pub fn evaluator(&self, x_left: f64, x_right: f64) -> SpaceFn {
        let len = x_right - x_left;
        match *self {
            Self::Constant(c) => Arc::new(move |_| c),
            Self::SinPi(a) => Arc::new(move |x| a * (PI * (x - x_left) / len).sin()),
            Self::ShiftedSinPi(c) => Arc::new(move |x| c + (PI * (x - x_left) / len).sin()),
            Self::Bump {
                centre,
                width,
                height,
                base,
            } => Arc::new(move |x| {
                let z = ((x - x_left) / len - centre) / width;
                base + height * (1.0 - z * z).max(0.0)
            }),
        }
    }
}

impl FromStr for InitialPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = split_call(s)?;
        Ok(match name.as_str() {
            "constant" => Self::Constant(bind(&name, &args, &[("value", None)])?[0]),
            "sin_pi" => Self::SinPi(bind(&name, &args, &[("amplitude", Some(1.0))])?[0]),
            "one_plus_sin_pi" | "shifted_sin_pi" => {
                Self::ShiftedSinPi(bind(&name, &args, &[("shift", Some(1.0))])?[0])
            }
            "bump" => {
                let v = bind(
                    &name,
                    &args,
                    &[
                        ("centre", Some(0.5)),
                        ("width", Some(0.25)),
                        ("height", Some(1.0)),
                        ("base", Some(0.0)),
                    ],
                )?;
                if !(v[1] > 0.0) {
                    return Err(Error::Parse(format!("bump width must be positive in '{s}'")));
                }
                Self::Bump {
                    centre: v[0],
                    width: v[1],
                    height: v[2],
                    base: v[3],
                }
            }
            _ => return Err(Error::Parse(format!("unknown initial-value preset '{name}'"))),
        })
    }
}

impl fmt::Display for InitialPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant(c) => write!(f, "constant(value={c})"),
            Self::SinPi(a) => write!(f, "sin_pi(amplitude={a})"),
            Self::ShiftedSinPi(c) => write!(f, "shifted_sin_pi(shift={c})"),
            Self::Bump {
                centre,
                width,
                height,
                base,
            } => write!(f, "bump(centre={centre}, width={width}, height={height}, base={base})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SourcePreset {
    Zero,
    Constant(f64),
    /// −depth·max(0, 1 − ((s − centre)/width)²), never positive.
    Well { centre: f64, width: f64, depth: f64 },
}

impl SourcePreset {
    pub fn evaluator(&self, x_left: f64, x_right: f64) -> SpaceTimeFn {
        let len = x_right - x_left;
        match *self {
            Self::Zero => Arc::new(|_, _| 0.0),
            Self::Constant(c) => Arc::new(move |_, _| c),
            Self::Well {
                centre,
                width,
                depth,
            } => Arc::new(move |_, x| {
                let z = ((x - x_left) / len - centre) / width;
                -depth * (1.0 - z * z).max(0.0)
            }),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Self::Zero) || matches!(self, Self::Constant(c) if *c == 0.0)
    }
}

impl FromStr for SourcePreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = split_call(s)?;
        Ok(match name.as_str() {
            "zero" => {
                bind(&name, &args, &[])?;
                Self::Zero
            }
            "constant" => Self::Constant(bind(&name, &args, &[("value", None)])?[0]),
            "well" => {
                let v = bind(
                    &name,
                    &args,
                    &[("centre", Some(0.5)), ("width", Some(0.25)), ("depth", Some(1.0))],
                )?;
                if !(v[1] > 0.0) || !(v[2] >= 0.0) {
                    return Err(Error::Parse(format!(
                        "well needs width > 0 and depth >= 0 in '{s}'"
                    )));
                }
                Self::Well {
                    centre: v[0],
                    width: v[1],
                    depth: v[2],
                }
            }
            _ => return Err(Error::Parse(format!("unknown source preset '{name}'"))),
        })
    }
}

impl fmt::Display for SourcePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zero => write!(f, "zero"),
            Self::Constant(c) => write!(f, "constant(value={c})"),
            Self::Well {
                centre,
                width,
                depth,
            } => write!(f, "well(centre={centre}, width={width}, depth={depth})"),
        }
    }
}

/// Human-readable listing of every preset and kernel family.
pub fn listing() -> Vec<(&'static str, &'static str)> {
    vec![
        ("kernel", "frac_exp(alpha, gamma)  e.g. frac_exp(alpha=0.5, gamma=0)"),
        ("kernel", "distributed(atoms, weight)  e.g. atoms = 0.3:0.5, 0.7:0.5"),
        ("kernel", "switched_frac_exp(alpha, gamma)  e.g. switched_frac_exp(alpha=0.5, gamma=1)"),
        ("kernel", "switched_distributed(atoms, weight)  support below 1, e.g. atoms = 0.2:0.5, 0.4:0.5"),
        ("A", "constant_A(value)"),
        ("A", "checkerboard_A(nu, Lambda, period)"),
        ("u0", "constant(value)"),
        ("u0", "sin_pi(amplitude)"),
        ("u0", "shifted_sin_pi(shift)"),
        ("u0", "bump(centre, width, height, base)"),
        ("f", "zero"),
        ("f", "constant(value)"),
        ("f", "well(centre, width, depth)  (f <= 0)"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keyword_and_positional_arguments() {
        let a: CoeffPreset = "checkerboard_A(nu=1, Lambda=10, period=0.25)".parse().unwrap();
        assert_eq!(a, CoeffPreset::Checkerboard { nu: 1.0, lambda: 10.0, period: 0.25 });
        let b: CoeffPreset = "checkerboard_A(1, 10)".parse().unwrap();
        assert_eq!(b.bounds(), (1.0, 10.0));
        let e = a.evaluator();
        assert_eq!((e(0.0, 0.1), e(0.0, 0.3)), (1.0, 10.0));
        assert!("checkerboard_A(nu=0, Lambda=1)".parse::<CoeffPreset>().is_err());
        assert!("wobble".parse::<SourcePreset>().is_err());
        assert!("bump(colour=1)".parse::<InitialPreset>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["bump(centre=0.4, width=0.2, height=2, base=1)", "sin_pi(amplitude=1)"] {
            let p: InitialPreset = s.parse().unwrap();
            assert_eq!(p.to_string().parse::<InitialPreset>().unwrap(), p);
        }
        let w: SourcePreset = "well(depth=0.5)".parse().unwrap();
        assert!(w.evaluator(0.0, 1.0)(0.0, 0.5) == -0.5);
    }

    #[test]
    fn listing_names_required_entries() {
        let all: String = listing().iter().map(|e| e.1).collect::<Vec<_>>().join("\n");
        for want in ["frac_exp(alpha, gamma)", "distributed(atoms, weight)", "checkerboard_A(nu, Lambda, period)"] {
            assert!(all.contains(want));
        }
    }
}
