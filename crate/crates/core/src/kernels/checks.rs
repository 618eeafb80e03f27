//! Numerical checks of the kernel hypotheses and of the Mellin pairing.

use std::f64::consts::PI;

use super::{algebraic_tail_term, descriptor, g, h, KernelId};
use crate::complex_special::{gamma, integrate_adaptive, Complex64};
use crate::error::{Error, Result};
use crate::series::SeriesOptions;

const LEFT_CUT: f64 = -40.0;
const RIGHT_CUT_ALGEBRAIC: f64 = 40.0;
const RIGHT_TAIL_TERMS: usize = 3;

/// Relative residual `|int_0^inf h(s,x) x^{w-1} dx - Gamma(w) g(2w-s)| / |Gamma(w) g(2w-s)|`.
///
/// The integral is taken in `u = ln x` by adaptive Gauss-Kronrod on a finite
/// window; the leading small-`x` behaviour and, for the trigonometric
/// kernels, the first large-`x` terms are integrated in closed form outside
/// the window. `w` must satisfy `max(0, Re s)/2 < Re w < (a + Re s)/2`.
pub fn mellin_check(k: KernelId, s: Complex64, w: Complex64) -> Result<f64> {
    k.validate()?;
    let d = descriptor(k);
    let lower = s.re.max(0.0) / 2.0;
    let upper = (d.a + s.re) / 2.0;
    if !(lower < w.re && w.re < upper) {
        return Err(Error::domain(format!("mellin_check needs {lower} < Re w < {upper}, got w = {w}")));
    }
    let opts = SeriesOptions { rel_tol: 1e-14, ..SeriesOptions::default() };
    let right_cut = match k {
        KernelId::Gamma => 6.0,
        KernelId::Gauss { alpha } => 4.5 + 64.0 * alpha.sqrt(),
        KernelId::Trig | KernelId::RationalTrig { .. } => RIGHT_CUT_ALGEBRAIC,
    };

    let (inner, _) = integrate_adaptive(
        |u| {
            let x = Complex64::new(u.exp(), 0.0);
            Ok(h(k, s, x, &opts)? * (w * u).exp())
        },
        LEFT_CUT,
        right_cut,
        1e-300,
        1e-11,
        4000,
    )?;

    // h(s, x) = -g(s) + Gamma(s/2) x^{-s/2} / 2 + o(1) as x -> 0
    let x_lo = LEFT_CUT.exp();
    let left = -g(k, s)? * x_lo.powf(w.re) * Complex64::new(0.0, w.im * LEFT_CUT).exp() / w
        + 0.5 * gamma(s / 2.0)? * ((w - s / 2.0) * LEFT_CUT).exp() / (w - s / 2.0);

    let mut right = Complex64::new(0.0, 0.0);
    if let Some(r) = k.ratio() {
        for m in 1..=RIGHT_TAIL_TERMS {
            let (e, c) = algebraic_tail_term(r, s, m);
            right -= c * ((w - e) * right_cut).exp() / (w - e);
        }
    }

    let exact = gamma(w)? * g(k, 2.0 * w - s)?;
    Ok((inner + left + right - exact).norm() / exact.norm())
}

/// `max |g(z) + g(-z)|` over the given points.
pub fn oddness_defect(k: KernelId, points: &[Complex64]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &z in points {
        worst = worst.max((g(k, z)? + g(k, -z)?).norm());
    }
    Ok(worst)
}

/// `max |z g(z) - 1|` on eight rays at radius `radius`.
pub fn residue_defect(k: KernelId, radius: f64) -> Result<f64> {
    let mut worst = 0.0f64;
    for j in 0..8 {
        let z = Complex64::from_polar(radius, PI / 8.0 + j as f64 * PI / 4.0);
        worst = worst.max((z * g(k, z)? - 1.0).norm());
    }
    Ok(worst)
}

/// Outcome of the sampled growth-bound check `|g(x0 + iy)| <= C e^{b_eff |y| / 2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    /// Analytic constant valid for `|y| >= 1` on the sampled abscissae.
    pub constant: f64,
    /// Ratio `|g| e^{-b_eff |y| / 2}` at `|y| = 1`, maximised over abscissae.
    pub fitted_at_one: f64,
    /// Largest sampled ratio.
    pub max_ratio: f64,
    pub abscissae: [f64; 3],
    pub samples: usize,
    pub passed: bool,
}

/// Samples `|y|` in `[1, 50]` on three abscissae inside the strip.
pub fn growth_check(k: KernelId) -> Result<GrowthReport> {
    k.validate()?;
    let d = descriptor(k);
    let width = d.a.min(2.0);
    let abscissae = [0.25 * width, 0.5 * width, 0.75 * width];
    let x_max = abscissae[2];
    let constant = match k {
        KernelId::Gamma => 1.0,
        KernelId::Gauss { alpha } => (alpha * x_max * x_max + PI * PI / (256.0 * alpha)).exp(),
        KernelId::Trig | KernelId::RationalTrig { .. } => {
            let r = k.ratio().expect("trigonometric kernel");
            2.0 * PI * r / (1.0 - (-2.0 * PI * r).exp())
        }
    };
    let ratio =
        |x0: f64, y: f64| -> Result<f64> { Ok(g(k, Complex64::new(x0, y))?.norm() * (-d.b_eff * y.abs() / 2.0).exp()) };
    let mut fitted_at_one = 0.0f64;
    let mut max_ratio = 0.0f64;
    let mut samples = 0;
    for &x0 in &abscissae {
        fitted_at_one = fitted_at_one.max(ratio(x0, 1.0)?.max(ratio(x0, -1.0)?));
        for j in 0..=490 {
            let y = 1.0 + 0.1 * j as f64;
            max_ratio = max_ratio.max(ratio(x0, y)?.max(ratio(x0, -y)?));
            samples += 2;
        }
    }
    Ok(GrowthReport {
        constant,
        fitted_at_one,
        max_ratio,
        abscissae,
        samples,
        passed: max_ratio <= constant * (1.0 + 1e-12),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const ALL: [KernelId; 5] = [
        KernelId::Gamma,
        KernelId::Gauss { alpha: 0.01 },
        KernelId::Trig,
        KernelId::RationalTrig { p: 1, q: 4 },
        KernelId::RationalTrig { p: 1, q: 2 },
    ];

    #[test]
    fn residues_at_the_origin() {
        for k in ALL {
            assert!(residue_defect(k, 1e-4).unwrap() < 1e-6, "{k}");
        }
    }

    #[test]
    fn growth_bounds_hold() {
        for k in ALL.into_iter().chain([KernelId::Gauss { alpha: 1e-4 }, KernelId::Gauss { alpha: 1.0 }]) {
            let report = growth_check(k).unwrap();
            assert!(report.passed, "{k}: {report:?}");
        }
    }

    #[test]
    fn fitted_constant_is_not_a_bound_for_gauss() {
        let report = growth_check(KernelId::Gauss { alpha: 0.01 }).unwrap();
        assert!(report.max_ratio > report.fitted_at_one);
    }

    #[test]
    fn mellin_pairing_gamma() {
        let k = KernelId::Gamma;
        for (s, w) in [(c(0.3, 0.0), c(0.6, 0.1)), (c(1.2, 0.0), c(1.0, -0.2)), (c(0.5, 2.0), c(0.9, 0.0))] {
            let res = mellin_check(k, s, w).unwrap();
            assert!(res < 1e-8, "s={s} w={w}: {res}");
        }
    }

    #[test]
    fn mellin_pairing_trig() {
        let res = mellin_check(KernelId::Trig, c(0.5, 2.0), c(0.9, 0.1)).unwrap();
        assert!(res < 1e-8, "{res}");
    }

    #[test]
    fn mellin_pairing_rational() {
        let res = mellin_check(KernelId::RationalTrig { p: 1, q: 2 }, c(0.3, 0.0), c(0.7, 0.1)).unwrap();
        assert!(res < 1e-8, "{res}");
    }

    #[test]
    fn mellin_pairing_gauss() {
        let res = mellin_check(KernelId::Gauss { alpha: 0.01 }, c(0.5, 2.0), c(0.9, 0.1)).unwrap();
        assert!(res < 1e-8, "{res}");
    }

    #[test]
    fn mellin_band_is_enforced() {
        assert!(mellin_check(KernelId::Trig, c(0.5, 0.0), c(1.5, 0.0)).is_err());
        assert!(mellin_check(KernelId::Gamma, c(0.5, 0.0), c(0.1, 0.0)).is_err());
    }
}
