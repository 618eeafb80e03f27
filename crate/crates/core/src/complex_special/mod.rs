//! Complex special functions used by the kernels and the reference oracle.
//!
//! Everything here works on [`Complex64`] in double precision. Branches are
//! principal: `x^a = exp(a (ln|x| + i arg x))` with `arg x` in `(-pi, pi]`.

mod bernoulli;
mod erfc;
mod gamma;
mod hyper;
mod incomplete;
mod integrate;
mod quadrature;

pub use bernoulli::bernoulli;
pub use erfc::erfc;
pub use gamma::{digamma, gamma, log_gamma, trigamma};
pub use hyper::hyp1f2;
pub use incomplete::{reg_q, scaled_upper_gamma, upper_gamma, SECTOR_MARGIN};
pub use quadrature::{gauss_hermite, QuadratureRule};

pub(crate) use bernoulli::bernoulli_table;
pub(crate) use gamma::{log_gamma_unchecked, recip_gamma};
pub(crate) use incomplete::{scaled_upper_gamma_cut, upper_gamma_cut};
pub(crate) use integrate::integrate_adaptive;
pub(crate) use quadrature::gauss_hermite_shared;

pub use num_complex::Complex64;

use crate::error::{Error, Result};

/// Euler-Mascheroni constant.
pub(crate) const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Stop threshold for series and continued fractions: a term is negligible
/// once it falls below `STOP_REL * |partial sum|`.
pub(crate) const STOP_REL: f64 = f64::EPSILON / 8.0;

/// Hard cap on iterations of any internal series or continued fraction.
pub(crate) const MAX_ITER: usize = 10_000;

/// Principal power `base^exponent`.
#[inline]
pub fn cpow(base: Complex64, exponent: Complex64) -> Complex64 {
    (exponent * base.ln()).exp()
}

/// `1 / sin z`, without overflow far from the real axis.
pub(crate) fn csc(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im > 20.0 {
        let e = (i * z).exp();
        2.0 * i * e / (e * e - 1.0)
    } else if z.im < -20.0 {
        let e = (-i * z).exp();
        2.0 * i * e / (1.0 - e * e)
    } else {
        z.sin().inv()
    }
}

/// `1 / cos z`, without overflow far from the real axis.
pub(crate) fn sec(z: Complex64) -> Complex64 {
    csc(std::f64::consts::FRAC_PI_2 - z)
}

/// `(e^z - 1) / z`, accurate near zero.
pub(crate) fn exprel(z: Complex64) -> Complex64 {
    if z.norm() < 0.5 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for n in 2..60 {
            term = term * z / n as f64;
            sum += term;
            if term.norm() < STOP_REL * sum.norm() {
                break;
            }
        }
        sum
    } else {
        (z.exp() - 1.0) / z
    }
}

/// `ln(1 + u) / u`, accurate near zero.
pub(crate) fn log1p_over(u: Complex64) -> Complex64 {
    if u.norm() < 0.2 {
        let mut power = Complex64::new(1.0, 0.0);
        let mut sum = power;
        for n in 1..80 {
            power *= -u;
            let term = power / (n + 1) as f64;
            sum += term;
            if term.norm() < STOP_REL * sum.norm() {
                break;
            }
        }
        sum
    } else {
        (1.0 + u).ln() / u
    }
}

/// Distance from `z` to the nearest non-positive integer, together with that
/// integer's magnitude `k` (so the integer is `-k`).
pub(crate) fn nearest_nonpositive_integer(z: Complex64) -> (f64, u64) {
    let k = (-z.re).round().max(0.0);
    let dist = Complex64::new(z.re + k, z.im).norm();
    (dist, k as u64)
}

pub(crate) fn ensure_finite(name: &str, z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} is not finite: {z}")))
    }
}

/// Neumaier-compensated running sum of complex terms.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: Complex64) {
        let (re, cre) = two_sum(self.sum.re, x.re);
        let (im, cim) = two_sum(self.sum.im, x.im);
        self.sum = Complex64::new(re, im);
        self.comp += Complex64::new(cre, cim);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = if a.abs() >= b.abs() { (a - s) + b } else { (b - s) + a };
    (s, err)
}

/// Zeta values at integers 2..=30, used by the small-argument log-gamma
/// expansion.
pub(crate) const ZETA_INT: [f64; 29] = [
    1.644_934_066_848_226_4,
    1.202_056_903_159_594_3,
    1.082_323_233_711_138_2,
    1.036_927_755_143_37,
    1.017_343_061_984_449,
    1.008_349_277_381_922_8,
    1.004_077_356_197_944_3,
    1.002_008_392_826_082_2,
    1.000_994_575_127_818_1,
    1.000_494_188_604_119_5,
    1.000_246_086_553_308,
    1.000_122_713_347_578_5,
    1.000_061_248_135_058_7,
    1.000_030_588_236_307,
    1.000_015_282_259_408_7,
    1.000_007_637_197_637_9,
    1.000_003_817_293_265,
    1.000_001_908_212_716_6,
    1.000_000_953_962_033_9,
    1.000_000_476_932_986_8,
    1.000_000_238_450_502_7,
    1.000_000_119_219_926,
    1.000_000_059_608_189,
    1.000_000_029_803_503_5,
    1.000_000_014_901_554_8,
    1.000_000_007_450_711_8,
    1.000_000_003_725_334,
    1.000_000_001_862_659_7,
    1.000_000_000_931_327_4,
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_trig_far_from_the_axis() {
        for z in [Complex64::new(0.3, 19.0), Complex64::new(-1.1, -19.5), Complex64::new(2.0, 0.4)] {
            assert!((csc(z) * z.sin() - 1.0).norm() < 1e-14, "{z}");
            assert!((sec(z) * z.cos() - 1.0).norm() < 1e-14, "{z}");
        }
        for im in [25.0, -25.0, 700.0, -700.0] {
            let z = Complex64::new(0.7, im);
            let want = 2.0 * (-im.abs()).exp();
            assert!((csc(z).norm() / want - 1.0).abs() < 1e-12, "{z}");
        }
        assert_eq!(csc(Complex64::new(0.7, 1000.0)).norm(), 0.0);
    }

    #[test]
    fn exprel_matches_direct_formula_away_from_zero() {
        let z = Complex64::new(0.3, -0.2);
        let direct = (z.exp() - 1.0) / z;
        assert!((exprel(z) - direct).norm() < 1e-15);
        assert!((exprel(Complex64::new(1e-12, 0.0)) - 1.0).norm() < 1e-12);
    }

    #[test]
    fn log1p_over_small_and_large() {
        let u = Complex64::new(0.1, 0.05);
        assert!((log1p_over(u) - (1.0 + u).ln() / u).norm() < 1e-15);
        assert_eq!(log1p_over(Complex64::new(0.0, 0.0)), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn compensated_sum_recovers_cancelled_digits() {
        let mut acc = CompensatedSum::new();
        acc.add(Complex64::new(1e16, 0.0));
        acc.add(Complex64::new(1.0, 1.0));
        acc.add(Complex64::new(-1e16, 0.0));
        assert_eq!(acc.value(), Complex64::new(1.0, 1.0));
    }

    #[test]
    fn nearest_nonpositive_integer_reports_distance() {
        let (d, k) = nearest_nonpositive_integer(Complex64::new(-2.1, 0.0));
        assert_eq!(k, 2);
        assert!((d - 0.1).abs() < 1e-12);
        let (_, k) = nearest_nonpositive_integer(Complex64::new(3.0, 1.0));
        assert_eq!(k, 0);
    }
}
