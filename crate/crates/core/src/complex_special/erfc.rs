use std::f64::consts::PI;

use super::{Complex64, MAX_ITER, STOP_REL};

const TINY: f64 = 1e-300;

/// Complementary error function for complex argument.
///
/// Power series for `erf` near the imaginary axis, the Laplace continued
/// fraction of the Faddeeva function elsewhere; `Re z < 0` goes through
/// `erfc(z) = 2 - erfc(-z)`.
pub fn erfc(z: Complex64) -> Complex64 {
    if z.re < 0.0 {
        return 2.0 - erfc(-z);
    }
    if z.re < 1.5 && z.norm() < 10.0 {
        return 1.0 - erf_series(z);
    }
    let w = faddeeva_cf(Complex64::new(-z.im, z.re));
    (-z * z).exp() * w
}

/// `erf(z) = 2/sqrt(pi) sum_n (-1)^n z^{2n+1} / (n! (2n+1))`.
fn erf_series(z: Complex64) -> Complex64 {
    let z2 = z * z;
    let mut power = z;
    let mut sum = z;
    let mut small = 0;
    for n in 1..MAX_ITER {
        power = -power * z2 / n as f64;
        let term = power / (2 * n + 1) as f64;
        sum += term;
        if term.norm() < STOP_REL * sum.norm() {
            small += 1;
            if small == 2 {
                break;
            }
        } else {
            small = 0;
        }
    }
    sum * (2.0 / PI.sqrt())
}

/// Faddeeva `w(zeta)` for `Im zeta > 0`:
/// `w = (i/sqrt(pi)) / (zeta - (1/2)/(zeta - 1/(zeta - (3/2)/(zeta - ...))))`.
fn faddeeva_cf(zeta: Complex64) -> Complex64 {
    let guard = |v: Complex64| if v.norm() < TINY { Complex64::new(TINY, 0.0) } else { v };
    let mut f = guard(zeta);
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    for k in 1..MAX_ITER {
        let ak = -(k as f64) / 2.0;
        d = guard(zeta + ak * d).inv();
        c = guard(zeta + ak / c);
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() <= f64::EPSILON {
            break;
        }
    }
    Complex64::new(0.0, 1.0 / PI.sqrt()) / f
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn value_at_zero_and_one() {
        assert_eq!(erfc(c(0.0, 0.0)), c(1.0, 0.0));
        assert!((erfc(c(1.0, 0.0)).re - 0.157_299_207_050_285_13).abs() < 1e-16);
    }

    #[test]
    fn reflection() {
        let z = c(1.3, 0.2);
        let sum = erfc(z) + erfc(-z);
        assert!((sum - 2.0).norm() < 1e-15);
    }

    #[test]
    fn continued_fraction_and_series_meet_smoothly() {
        for im in [-3.0, -0.5, 0.0, 0.7, 4.0] {
            let below = erfc(c(1.5 - 1e-12, im));
            let above = erfc(c(1.5, im));
            assert!((below - above).norm() / above.norm() < 1e-11, "im = {im}");
        }
    }

    #[test]
    fn large_real_argument_tail() {
        // erfc(5) = 1.5374597944280348502e-12
        let v = erfc(c(5.0, 0.0));
        assert!((v.re / 1.537_459_794_428_035e-12 - 1.0).abs() < 1e-13);
        assert!(erfc(c(-5.0, 0.0)).re < 2.0);
    }
}
