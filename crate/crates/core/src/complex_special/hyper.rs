use super::{ensure_finite, nearest_nonpositive_integer, CompensatedSum, Complex64, MAX_ITER, STOP_REL};
use crate::error::{Error, Result};

const POLE_GUARD: f64 = 1e-12;

/// Generalized hypergeometric `1F2(a1; b1, b2; z)` by term recurrence.
///
/// ```
/// use zeta_kernels::complex_special::{hyp1f2, Complex64};
/// let one = Complex64::new(1.0, 0.0);
/// let v = hyp1f2(one, one, one, Complex64::new(0.0, 0.0)).unwrap();
/// assert_eq!(v, one);
/// ```
pub fn hyp1f2(a1: Complex64, b1: Complex64, b2: Complex64, z: Complex64) -> Result<Complex64> {
    for (name, v) in [("a1", a1), ("b1", b1), ("b2", b2), ("z", z)] {
        ensure_finite(name, v)?;
    }
    for b in [b1, b2] {
        let (dist, k) = nearest_nonpositive_integer(b);
        if dist < POLE_GUARD {
            return Err(Error::pole(format!("1F2 lower parameter {b} is at -{k}")));
        }
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = CompensatedSum::new();
    sum.add(term);
    let mut small = 0;
    for k in 0..MAX_ITER {
        let kf = k as f64;
        term = term * (a1 + kf) / ((b1 + kf) * (b2 + kf) * (kf + 1.0)) * z;
        sum.add(term);
        if term.norm() <= STOP_REL * sum.value().norm() {
            small += 1;
            if small == 2 {
                return Ok(sum.value());
            }
        } else {
            small = 0;
        }
    }
    Err(Error::convergence(format!("1F2 series at z = {z} hit the term cap")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pochhammer(a: Complex64, k: usize) -> Complex64 {
        (0..k).fold(c(1.0, 0.0), |acc, j| acc * (a + j as f64))
    }

    #[test]
    fn reduces_to_bessel_type_series() {
        // a1 = b1 and b2 = 1 leaves sum z^k / (k!)^2 = I0(2 sqrt z)
        let v = hyp1f2(c(0.3, 0.1), c(0.3, 0.1), c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!((v.re - 2.279_585_302_336_067_3).abs() < 1e-15, "{v}");
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn terminating_series() {
        // a1 = -2: 1 + (-2) z / (b1 b2) + (-2)(-1) z^2 / (b1 (b1+1) b2 (b2+1) 2)
        let (b1, b2, z) = (c(0.5, 0.0), c(1.5, 0.0), c(2.0, 0.0));
        let want = 1.0 - 2.0 * z / (b1 * b2) + z * z / (b1 * (b1 + 1.0) * b2 * (b2 + 1.0));
        let v = hyp1f2(c(-2.0, 0.0), b1, b2, z).unwrap();
        assert!((v - want).norm() < 1e-15);
    }

    #[test]
    fn term_ratio_matches_pochhammer_products() {
        let (a1, b1, b2, z) = (c(0.7, -0.2), c(0.375, 0.4), c(1.8, 0.0), c(-0.6, 0.3));
        let mut term = c(1.0, 0.0);
        let mut fact = 1.0;
        for k in 0..30 {
            let kf = k as f64;
            let explicit = pochhammer(a1, k) / (pochhammer(b1, k) * pochhammer(b2, k)) * z.powu(k as u32) / fact;
            assert!((term - explicit).norm() <= 1e-13 * explicit.norm());
            term = term * (a1 + kf) / ((b1 + kf) * (b2 + kf) * (kf + 1.0)) * z;
            fact *= kf + 1.0;
        }
    }

    #[test]
    fn pole_parameters_are_refused() {
        assert!(matches!(hyp1f2(c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.5, 0.0)), Err(Error::Pole(_))));
    }
}
