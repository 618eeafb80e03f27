//! Tails of the algebraically decaying kernel sums.
//!
//! For the trigonometric kernels `h(s, x) ~ sum_m c_m x^{-e_m}`, so
//! `sum_{n>N} h(s, b n^2) ~ sum_m c_m b^{-e_m} T(2 e_m, N)` with
//! `T(p, N) = sum_{n>N} n^{-p}`.

use crate::complex_special::{bernoulli_table, CompensatedSum, Complex64, STOP_REL};
use crate::error::Result;
use crate::kernels::algebraic_tail_term;

const EM_TERMS: usize = 15;
const MAX_M: usize = 400;
const RISING_LIMIT: usize = 3;

/// `sum_{n > n0} n^{-p}` for `Re p > 1`: direct terms up to a cut-off,
/// then Euler-Maclaurin.
pub(crate) fn power_tail(p: Complex64, n0: usize) -> Complex64 {
    let cut = (n0 + 1).max((p.norm() / 2.0).ceil() as usize + 10);
    let mut sum = CompensatedSum::new();
    for n in n0 + 1..cut {
        sum.add((-p * (n as f64).ln()).exp());
    }
    let l = cut as f64;
    let ln_l = l.ln();
    let l_p = (-p * ln_l).exp();
    sum.add(l_p * l / (p - 1.0));
    sum.add(l_p / 2.0);
    let b = bernoulli_table();
    // (p)_{2j-1} L^{-p-2j+1} / (2j)!, updated in place
    let mut factor = p * l_p / l;
    let mut fact = 2.0;
    for j in 1..=EM_TERMS {
        sum.add(b[2 * j] / fact * factor);
        let k = (2 * j) as f64;
        factor = factor * (p + k - 1.0) * (p + k) / (l * l);
        fact *= (k + 1.0) * (k + 2.0);
    }
    sum.value()
}

/// Whether the large-`x` expansion reaches double precision at `x` before
/// its terms start to grow.
fn expansion_converges(r: f64, s: Complex64, x: Complex64) -> bool {
    let ln_x = x.ln();
    let mut first = 0.0;
    let mut previous = f64::INFINITY;
    for m in 1..MAX_M {
        let (e, c) = algebraic_tail_term(r, s, m);
        let size = (c.ln() - e * ln_x).exp().norm();
        if m == 1 {
            first = size;
        }
        if size > previous && m > 2 {
            return false;
        }
        if size <= STOP_REL * first {
            return true;
        }
        previous = size;
    }
    false
}

/// `Some((sum_{n>n0} h(s, base n^2), error))` once the expansion is usable
/// from `n0 + 1` on, otherwise `None`.
pub(super) fn asymptotic_tail(r: f64, s: Complex64, base: Complex64, n0: usize) -> Result<Option<(Complex64, f64)>> {
    let next = ((n0 + 1) * (n0 + 1)) as f64;
    if !expansion_converges(r, s, base * next) {
        return Ok(None);
    }
    let ln_base = base.ln();
    let mut sum = CompensatedSum::new();
    let mut previous = f64::INFINITY;
    let mut rising = 0;
    for m in 1..MAX_M {
        let (e, c) = algebraic_tail_term(r, s, m);
        let term = c * (-e * ln_base).exp() * power_tail(2.0 * e, n0);
        let size = term.norm();
        // the power tails oscillate, so a single uptick is not divergence
        rising = if size > previous { rising + 1 } else { 0 };
        if rising >= RISING_LIMIT {
            return Ok(None);
        }
        sum.add(term);
        if size <= STOP_REL * sum.value().norm() {
            return Ok(Some((sum.value(), size)));
        }
        previous = size;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_tail_of_basel_sum() {
        let p = Complex64::new(2.0, 0.0);
        let head: f64 = (1..=3).map(|n| 1.0 / (n * n) as f64).sum();
        let want = std::f64::consts::PI.powi(2) / 6.0 - head;
        assert!((power_tail(p, 3) - want).norm() < 1e-15);
    }

    #[test]
    fn power_tail_complex_exponent() {
        // sum_{n>5} n^{-p} by brute force with a crude integral remainder is
        // too slow to converge; compare two cut-offs instead
        let p = Complex64::new(1.7, 40.0);
        let a = power_tail(p, 5);
        let b = power_tail(p, 60) + (6..=60).map(|n| (-p * (n as f64).ln()).exp()).sum::<Complex64>();
        assert!((a - b).norm() < 1e-14, "{a} {b}");
    }

    #[test]
    fn expansion_switch() {
        let s = Complex64::new(0.5, 0.0);
        assert!(expansion_converges(0.5, s, Complex64::new(100.0, 0.0)));
        assert!(!expansion_converges(0.5, s, Complex64::new(1.0, 0.0)));
    }
}
