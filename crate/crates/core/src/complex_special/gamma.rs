use super::{bernoulli_table, ensure_finite, nearest_nonpositive_integer, Complex64};
use crate::error::{Error, Result};

/// Guard radius around the poles of the gamma family.
const POLE_GUARD: f64 = 1e-12;

/// Arguments are shifted upward until `|z| >= ASYMPTOTIC_RADIUS` and
/// `Re z >= 0` before any asymptotic series is used.
const ASYMPTOTIC_RADIUS: f64 = 10.0;

/// Number of Bernoulli terms in the Stirling, digamma and trigamma tails.
const ASYMPTOTIC_TERMS: usize = 12;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

fn check_pole(name: &str, z: Complex64) -> Result<()> {
    ensure_finite(name, z)?;
    let (dist, k) = nearest_nonpositive_integer(z);
    if dist < POLE_GUARD {
        return Err(Error::pole(format!("{name}({z}) is within {POLE_GUARD:e} of the pole at -{k}")));
    }
    Ok(())
}

/// Principal branch of `ln Gamma(z)`: analytic in the plane cut along the
/// negative real axis and real on the positive real axis.
///
/// This is the continuous log-gamma (its imaginary part grows without bound
/// along vertical lines), not the principal logarithm of `Gamma(z)`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    check_pole("log_gamma", z)?;
    Ok(log_gamma_unchecked(z))
}

pub(crate) fn log_gamma_unchecked(mut z: Complex64) -> Complex64 {
    // ln Gamma(z) = ln Gamma(z + n) - sum_{k<n} ln(z + k), with the moduli
    // multiplied out and the arguments summed so the branch stays continuous
    let mut product = Complex64::new(1.0, 0.0);
    let mut log_modulus = 0.0;
    let mut arg_sum = 0.0;
    while z.re < 0.0 || z.norm() < ASYMPTOTIC_RADIUS {
        product *= z;
        arg_sum += z.arg();
        if product.norm() > 1e150 {
            log_modulus += product.norm().ln();
            product = Complex64::new(1.0, 0.0);
        }
        z += 1.0;
    }
    log_modulus += product.norm().ln();
    stirling(z) - Complex64::new(log_modulus, arg_sum)
}

fn stirling(z: Complex64) -> Complex64 {
    let b = bernoulli_table();
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut power = inv;
    let mut tail = Complex64::new(0.0, 0.0);
    for k in 1..=ASYMPTOTIC_TERMS {
        let n = 2 * k;
        tail += power * (b[n] / (n * (n - 1)) as f64);
        power *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + tail
}

/// `Gamma(z)`, via `exp(log_gamma(z))`.
///
/// Overflow is reported as [`Error::Overflow`] rather than returned as an
/// infinity.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    let lg = log_gamma(z)?;
    if lg.re > f64::MAX.ln() {
        return Err(Error::overflow(format!("gamma({z}) exceeds the double range")));
    }
    let value = lg.exp();
    if z.im == 0.0 {
        Ok(Complex64::new(value.re, 0.0))
    } else {
        Ok(value)
    }
}

/// Digamma `psi(z) = Gamma'(z)/Gamma(z)`.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    check_pole("digamma", z)?;
    let mut z = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < 0.0 || z.norm() < ASYMPTOTIC_RADIUS {
        shift += z.inv();
        z += 1.0;
    }
    let b = bernoulli_table();
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut power = inv2;
    let mut tail = Complex64::new(0.0, 0.0);
    for k in 1..=ASYMPTOTIC_TERMS {
        tail += power * (b[2 * k] / (2 * k) as f64);
        power *= inv2;
    }
    Ok(z.ln() - 0.5 * inv - tail - shift)
}

/// Trigamma `psi'(z)`.
pub fn trigamma(z: Complex64) -> Result<Complex64> {
    check_pole("trigamma", z)?;
    let mut z = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < 0.0 || z.norm() < ASYMPTOTIC_RADIUS {
        shift += (z * z).inv();
        z += 1.0;
    }
    let b = bernoulli_table();
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut power = inv2 * inv;
    let mut tail = Complex64::new(0.0, 0.0);
    for k in 1..=ASYMPTOTIC_TERMS {
        tail += power * b[2 * k];
        power *= inv2;
    }
    Ok(inv + 0.5 * inv2 + tail + shift)
}

/// `ln Gamma(1 + eps) / eps` for small `eps`, finite at `eps = 0`.
pub(crate) fn log_gamma_1p_over(eps: Complex64) -> Complex64 {
    use super::{EULER_GAMMA, STOP_REL, ZETA_INT};
    if eps.norm() >= 0.2 {
        return log_gamma_unchecked(1.0 + eps) / eps;
    }
    // ln Gamma(1+e) = -gamma e + sum_{k>=2} (-1)^k zeta(k) e^k / k
    let mut sum = Complex64::new(-EULER_GAMMA, 0.0);
    let mut power = Complex64::new(-1.0, 0.0);
    for (i, zeta_k) in ZETA_INT.iter().enumerate() {
        let k = i + 2;
        power *= -eps;
        let term = power * (zeta_k / k as f64);
        sum += term;
        if term.norm() < STOP_REL * sum.norm() {
            break;
        }
    }
    sum
}

/// `1 / Gamma(z)`, entire: exactly zero at the poles of `Gamma`.
pub(crate) fn recip_gamma(z: Complex64) -> Complex64 {
    let (dist, _) = nearest_nonpositive_integer(z);
    if dist == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    (-log_gamma_unchecked(z)).exp()
}
