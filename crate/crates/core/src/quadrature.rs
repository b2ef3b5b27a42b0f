//! Gauss–Kronrod / Gauss–Legendre rules and adaptive drivers used by the
//! kernel evaluations.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

// 7-point Gauss weights, paired with XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// 8-point Gauss–Legendre nodes (positive half) and weights on [-1, 1].
pub const GL8_X: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
pub const GL8_W: [f64; 4] = [
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// One GK15 panel: returns (Kronrod estimate, |Kronrod - Gauss|).
pub fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (i, &x) in XGK.iter().take(7).enumerate() {
        let f1 = f(c - h * x);
        let f2 = f(c + h * x);
        kron += WGK[i] * (f1 + f2);
        if i % 2 == 1 {
            gauss += WG[i / 2] * (f1 + f2);
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

/// Gauss–Legendre 8-point rule on [a, b].
pub fn gl8<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut s = 0.0;
    for (x, w) in GL8_X.iter().zip(GL8_W.iter()) {
        s += w * (f(c - h * x) + f(c + h * x));
    }
    s * h
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Globally adaptive GK15 over `[a, b]`, pre-split into `pieces` equal panels.
///
/// Stops when the summed error estimate is below `max(abs_tol, rel_tol·|I|)`.
pub fn adaptive<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    pieces: usize,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<f64> {
    const MAX_PANELS: usize = 4000;
    let pieces = pieces.max(1);
    let w = (b - a) / pieces as f64;
    let mut panels: Vec<Panel> = (0..pieces)
        .map(|i| {
            let pa = a + w * i as f64;
            let pb = if i + 1 == pieces { b } else { pa + w };
            let (value, error) = gk15(&mut f, pa, pb);
            Panel {
                a: pa,
                b: pb,
                value,
                error,
            }
        })
        .collect();
    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.error).sum();
        if !total.is_finite() {
            return Err(Error::Quadrature(format!(
                "non-finite integrand on [{a}, {b}]"
            )));
        }
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(total);
        }
        if panels.len() >= MAX_PANELS {
            return Err(Error::Quadrature(format!(
                "error estimate {err:e} above tolerance after {MAX_PANELS} panels on [{a}, {b}]"
            )));
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, -1.0), |acc, (i, p)| if p.error > acc.1 { (i, p.error) } else { acc });
        let p = panels.swap_remove(worst);
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            return Err(Error::Quadrature(format!(
                "panel [{}, {}] cannot be bisected further",
                p.a, p.b
            )));
        }
        let (v1, e1) = gk15(&mut f, p.a, m);
        let (v2, e2) = gk15(&mut f, m, p.b);
        panels.push(Panel {
            a: p.a,
            b: m,
            value: v1,
            error: e1,
        });
        panels.push(Panel {
            a: m,
            b: p.b,
            value: v2,
            error: e2,
        });
    }
}

/// Walks from `start` in direction `dir` (±1) in unit steps until the
/// integrand's geometric tail estimate drops below `tol · max|f|`.
///
/// Returns the truncation point. Fails if the integrand stops decaying.
pub fn find_tail<F: FnMut(f64) -> f64>(f: &mut F, start: f64, dir: f64, tol: f64) -> Result<f64> {
    const MAX_STEPS: usize = 600;
    let mut s = start;
    let mut g0 = f(s).abs();
    let mut gmax = g0;
    for _ in 0..MAX_STEPS {
        let next = s + dir;
        let g1 = f(next).abs();
        if !g1.is_finite() {
            return Err(Error::Quadrature(format!("non-finite integrand at s = {next}")));
        }
        gmax = gmax.max(g1);
        if g1 == 0.0 && gmax > 0.0 {
            return Ok(next);
        }
        if g1 < g0 {
            let rate = (g0 / g1).ln();
            if g1 / rate <= tol * gmax {
                return Ok(next);
            }
        }
        g0 = g1;
        s = next;
    }
    Err(Error::Quadrature(format!(
        "integrand does not decay (walked {MAX_STEPS} units from {start})"
    )))
}

/// Integral over the whole real line of a log-variable integrand that decays at both ends.
pub fn integrate_line<F: FnMut(f64) -> f64>(mut f: F, centre: f64, rel_tol: f64) -> Result<f64> {
    let tail_tol = rel_tol * 1e-2;
    let lo = find_tail(&mut f, centre, -1.0, tail_tol)?;
    let hi = find_tail(&mut f, centre, 1.0, tail_tol)?;
    let pieces = ((hi - lo).ceil() as usize).max(2);
    adaptive(f, lo, hi, pieces, rel_tol, 1e-300)
}
