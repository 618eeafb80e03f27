//! Partner function of `g(z) = pi r / sin(pi r z)`, `r = p/q`.

use std::f64::consts::{E, PI};

use super::{algebraic_tail_term, descriptor, KernelId, S_POLE_GUARD};
use crate::complex_special::{
    cpow, csc, gamma, hyp1f2, log_gamma_unchecked, recip_gamma, sec, CompensatedSum, Complex64, MAX_ITER, STOP_REL,
};
use crate::error::{Error, Result};

const SERIES_RADIUS: f64 = 1.0;
const MB_STEPS_PER_HALF_WIDTH: f64 = 7.0;
const MB_MAX_STEP: f64 = 0.25;
const MB_CUTOFF: f64 = 1e-20;
const MB_MAX_NODES: usize = 400_000;

fn ratio(p: u32, q: u32) -> Result<f64> {
    KernelId::RationalTrig { p, q }.validate()?;
    Ok(f64::from(p) / f64::from(q))
}

fn check_s(p: u32, q: u32, s: Complex64) -> Result<()> {
    let d = descriptor(KernelId::RationalTrig { p, q });
    if d.s_pole_spec.distance(s) < S_POLE_GUARD {
        return Err(Error::pole(format!("h({s}, .) is singular for rational-trig {p}/{q}")));
    }
    Ok(())
}

/// `ln sin z`, evaluated without overflow far from the real axis.
pub(crate) fn ln_sin(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im > 15.0 {
        -i * z + (i / 2.0).ln() + (-(2.0 * i * z).exp()).ln_1p_safe()
    } else if z.im < -15.0 {
        i * z - (2.0 * i).ln() + (-(-2.0 * i * z).exp()).ln_1p_safe()
    } else {
        z.sin().ln()
    }
}

trait Ln1p {
    fn ln_1p_safe(self) -> Complex64;
}

impl Ln1p for Complex64 {
    fn ln_1p_safe(self) -> Complex64 {
        if self.norm() < 1e-8 {
            self - self * self / 2.0
        } else {
            (1.0 + self).ln()
        }
    }
}

/// Convergent double series for `h(s, x)`, accurate for moderate `|x|`.
///
/// ```
/// use zeta_kernels::complex_special::Complex64;
/// use zeta_kernels::kernels::rational_trig_series;
/// let v = rational_trig_series(1, 4, Complex64::new(-0.3, 0.0), Complex64::new(0.5, 0.0)).unwrap();
/// assert!((v.re - 0.329_183_788_117_712).abs() < 1e-14);
/// ```
pub fn rational_trig_series(p: u32, q: u32, s: Complex64, x: Complex64) -> Result<Complex64> {
    let r = ratio(p, q)?;
    check_s(p, q, s)?;
    if x.norm() == 0.0 {
        return Err(Error::domain("rational-trig series needs x != 0"));
    }

    let mut first = CompensatedSum::new();
    let mut power = Complex64::new(1.0, 0.0);
    let mut small = 0;
    let mut done = false;
    for n in 0..MAX_ITER {
        if n > 0 {
            power = power * x / n as f64;
        }
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * power * csc(PI * r * (2.0 * n as f64 + s));
        first.add(term);
        if n as f64 > x.norm() && term.norm() <= STOP_REL * first.value().norm() {
            small += 1;
            if small == 2 {
                done = true;
                break;
            }
        } else {
            small = 0;
        }
    }
    if !done {
        return Err(Error::convergence(format!("rational-trig first series at x = {x} hit the term cap")));
    }

    let ln_x = x.ln();
    let m_min = (2.0 * r * E * x.norm()).ceil() as usize;
    let mut second = CompensatedSum::new();
    let mut small = 0;
    let mut done = false;
    for m in 0..MAX_ITER {
        let shift = m as f64 / r;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign
            * csc(PI * (s - shift) / 2.0)
            * (((shift - s) / 2.0) * ln_x).exp()
            * recip_gamma(1.0 - s / 2.0 + shift / 2.0);
        second.add(term);
        if m >= m_min && term.norm() <= STOP_REL * second.value().norm() {
            small += 1;
            if small == 3 {
                done = true;
                break;
            }
        } else {
            small = 0;
        }
    }
    if !done {
        return Err(Error::convergence(format!("rational-trig second series at x = {x} hit the term cap")));
    }

    Ok(-PI * r * first.value() + PI / 2.0 * second.value())
}

/// Closed form of `h(s, x)` for `r = 1/4` through `1F2`.
pub fn rational_trig_quarter_closed_form(s: Complex64, x: Complex64) -> Result<Complex64> {
    check_s(1, 4, s)?;
    let quarter = PI / 4.0;
    let hyper = hyp1f2(Complex64::new(1.0, 0.0), 0.5 - s / 4.0, 1.0 - s / 4.0, -x * x / 4.0)?;
    Ok(-quarter * x.cos() * csc(quarter * s)
        + quarter * x.sin() * sec(quarter * s)
        + 0.5 * gamma(s / 2.0)? * cpow(x, -s / 2.0) * hyper)
}

/// Large-`x` expansion `sum_m (-1)^{m+1} Gamma(e_m) x^{-e_m} / 2`,
/// `e_m = (s + m/r)/2`, summed to its smallest term.
///
/// Fails with a convergence error when the terms start growing before
/// reaching double precision.
pub fn rational_trig_asymptotic(p: u32, q: u32, s: Complex64, x: Complex64) -> Result<Complex64> {
    let r = ratio(p, q)?;
    asymptotic(r, s, x)
}

pub(crate) fn asymptotic(r: f64, s: Complex64, x: Complex64) -> Result<Complex64> {
    let ln_x = x.ln();
    let mut sum = CompensatedSum::new();
    let mut previous = f64::INFINITY;
    for m in 1..MAX_ITER {
        let (e, c) = algebraic_tail_term(r, s, m);
        let term = c * (-e * ln_x).exp();
        let size = term.norm();
        if size > previous && m > 2 {
            break;
        }
        sum.add(term);
        if size <= STOP_REL * sum.value().norm() {
            return Ok(sum.value());
        }
        previous = size;
    }
    Err(Error::convergence(format!("large-x expansion of h at x = {x} does not reach precision")))
}

/// `h(s, x) = (r/2) int Gamma(w) x^{-w} / sin(pi r (2w - s)) dy`, `w = c + iy`,
/// by the trapezoidal rule on a vertical line centred in the admissible band.
pub fn rational_trig_mellin_barnes(p: u32, q: u32, s: Complex64, x: Complex64) -> Result<Complex64> {
    let r = ratio(p, q)?;
    check_s(p, q, s)?;
    mellin_barnes(r, s, x)
}

pub(crate) fn mellin_barnes(r: f64, s: Complex64, x: Complex64) -> Result<Complex64> {
    let lo = (s.re / 2.0).max(0.0);
    let hi = (s.re + 1.0 / r) / 2.0;
    if hi - lo < 1e-3 {
        return Err(Error::domain(format!("no contour for h({s}, .) with r = {r}")));
    }
    let center = 0.5 * (lo + hi);
    let step = (0.5 * (hi - lo) / MB_STEPS_PER_HALF_WIDTH).min(MB_MAX_STEP);
    let ln_x = x.ln();
    let log_phi = |y: f64| {
        let w = Complex64::new(center, y);
        log_gamma_unchecked(w) - w * ln_x - ln_sin(PI * r * (2.0 * w - s))
    };

    // Work in units of the largest integrand magnitude to avoid overflow.
    let start = (s.im / 2.0).round_ties_even();
    let mut logs: Vec<Complex64> = Vec::new();
    for direction in [1.0, -1.0] {
        let first = if direction > 0.0 { 0 } else { 1 };
        let mut prev = f64::INFINITY;
        let mut falling = 0;
        for k in first.. {
            if logs.len() > MB_MAX_NODES {
                return Err(Error::convergence(format!("contour integral for h({s}, {x}) did not settle")));
            }
            let l = log_phi(start + direction * k as f64 * step);
            let peak = logs.iter().map(|v| v.re).fold(l.re, f64::max);
            logs.push(l);
            falling = if l.re < prev { falling + 1 } else { 0 };
            prev = l.re;
            if falling >= 4 && l.re < peak + MB_CUTOFF.ln() {
                break;
            }
        }
    }
    let peak = logs.iter().map(|v| v.re).fold(f64::NEG_INFINITY, f64::max);
    let mut sum = CompensatedSum::new();
    for l in &logs {
        sum.add((l - peak).exp());
    }
    Ok(r / 2.0 * step * peak.exp() * sum.value())
}

/// Route between the convergent series, the large-`x` expansion and the
/// contour integral.
pub(crate) fn h_auto(p: u32, q: u32, s: Complex64, x: Complex64) -> Result<Complex64> {
    let r = ratio(p, q)?;
    check_s(p, q, s)?;
    if x.norm() <= SERIES_RADIUS {
        return rational_trig_series(p, q, s, x);
    }
    match asymptotic(r, s, x) {
        Ok(v) => Ok(v),
        Err(Error::Convergence(_)) => mellin_barnes(r, s, x),
        Err(e) => Err(e),
    }
}
