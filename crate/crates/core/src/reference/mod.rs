//! Independent oracles: Euler-Maclaurin zeta, the Riemann-Siegel theta and
//! Hardy Z functions, the Riemann-Siegel main sum with its first correction,
//! and the Berry-Keating smoothed sum.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use crate::complex_special::{
    bernoulli_table, digamma, erfc, log_gamma_unchecked, trigamma, CompensatedSum, Complex64,
};
use crate::error::{Error, Result};
use crate::kernels::KernelId;
use crate::series::{hardy_z_series, SeriesOptions};

pub const EM_DEFAULT_N: usize = 40;
pub const EM_DEFAULT_M: usize = 15;
const ZETA_POLE_GUARD: f64 = 1e-10;
const BISECTION_WIDTH: f64 = 1e-8;

/// Euler-Maclaurin zeta with `N` direct terms and `M` Bernoulli corrections.
///
/// ```
/// use zeta_kernels::complex_special::Complex64;
/// use zeta_kernels::reference::zeta_em;
/// let v = zeta_em(Complex64::new(-1.0, 0.0), 40, 15).unwrap();
/// assert!((v.re + 1.0 / 12.0).abs() < 1e-12);
/// ```
pub fn zeta_em(s: Complex64, n: usize, m: usize) -> Result<Complex64> {
    if (s - 1.0).norm() < ZETA_POLE_GUARD {
        return Err(Error::pole(format!("zeta has a pole at s = 1, got {s}")));
    }
    if n < 10 || 2 * m > 60 || m == 0 {
        return Err(Error::domain(format!("zeta_em needs N >= 10 and 1 <= M <= 30, got N = {n}, M = {m}")));
    }
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::domain(format!("s must be finite, got {s}")));
    }
    let mut sum = CompensatedSum::new();
    for k in 1..=n {
        sum.add((-s * (k as f64).ln()).exp());
    }
    let nf = n as f64;
    let n_s = (-s * nf.ln()).exp();
    sum.add(n_s * nf / (s - 1.0));
    sum.add(-n_s / 2.0);
    let b = bernoulli_table();
    // (s)_{2j-1} N^{-s-2j+1} / (2j)!
    let mut factor = s * n_s / nf;
    let mut fact = 2.0;
    for j in 1..=m {
        sum.add(b[2 * j] / fact * factor);
        let k = (2 * j) as f64;
        factor = factor * (s + k - 1.0) * (s + k) / (nf * nf);
        fact *= (k + 1.0) * (k + 2.0);
    }
    Ok(sum.value())
}

/// Euler-Maclaurin zeta with the direct-sum length grown with `|s|`, so the
/// correction series stays well inside its convergent range.
pub fn zeta_ref(s: Complex64) -> Result<Complex64> {
    let n = EM_DEFAULT_N.max((s.norm() / PI).ceil() as usize + 10);
    zeta_em(s, n, EM_DEFAULT_M)
}

fn theta_point(t: f64) -> Complex64 {
    Complex64::new(0.25, t / 2.0)
}

/// `theta(t) = Im ln Gamma(1/4 + it/2) - (t/2) ln pi`.
pub fn theta(t: f64) -> f64 {
    log_gamma_unchecked(theta_point(t)).im - t / 2.0 * PI.ln()
}

/// `theta'(t) = Re psi(1/4 + it/2) / 2 - ln(pi) / 2`.
pub fn theta_p(t: f64) -> f64 {
    let psi = digamma(theta_point(t)).expect("1/4 + it/2 is never a pole");
    0.5 * psi.re - 0.5 * PI.ln()
}

/// `theta''(t) = -Im psi'(1/4 + it/2) / 4`.
pub fn theta_pp(t: f64) -> f64 {
    let psi1 = trigamma(theta_point(t)).expect("1/4 + it/2 is never a pole");
    -0.25 * psi1.im
}

/// `Z(t) = e^{i theta(t)} zeta(1/2 + it)` from the Euler-Maclaurin oracle.
pub fn hardy_z_ref(t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::domain(format!("t must be finite, got {t}")));
    }
    let z = Complex64::new(0.0, theta(t)).exp() * zeta_ref(Complex64::new(0.5, t))?;
    if z.im.abs() > 1e-9 * z.re.abs().max(1.0) {
        return Err(Error::convergence(format!("Z({t}) has imaginary part {:e}", z.im)));
    }
    Ok(z.re)
}

/// Riemann-Siegel main sum and its first correction term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RSApprox {
    pub main_sum: f64,
    pub correction: f64,
    pub n_t: usize,
    pub omega: f64,
}

impl RSApprox {
    pub fn corrected(&self) -> f64 {
        self.main_sum + self.correction
    }
}

/// `2 sum_{n <= N_t} cos(theta(t) - t ln n) / sqrt(n)` with
/// `N_t = floor(sqrt(t / 2 pi))`, plus
/// `(-1)^{N_t - 1} (2 pi / t)^{1/4} cos(pi w^2 / 2 + 3 pi / 8) / cos(pi w)`,
/// `w = 1 + 2 (N_t - sqrt(t / 2 pi))`.
pub fn rs_main(t: f64) -> Result<RSApprox> {
    if !(t >= TAU) || !t.is_finite() {
        return Err(Error::domain(format!("Riemann-Siegel sum needs t >= 2 pi, got {t}")));
    }
    let root = (t / TAU).sqrt();
    let n_t = root.floor() as usize;
    let omega = 1.0 + 2.0 * (n_t as f64 - root);
    let th = theta(t);
    let mut main_sum = 0.0;
    for n in 1..=n_t {
        let nf = n as f64;
        main_sum += 2.0 * (th - t * nf.ln()).cos() / nf.sqrt();
    }
    let denom = (PI * omega).cos();
    if denom.abs() < 1e-10 {
        return Err(Error::pole(format!("cos(pi omega) vanishes at t = {t}")));
    }
    let sign = if n_t % 2 == 1 { 1.0 } else { -1.0 };
    let correction = sign * (TAU / t).powf(0.25) * (PI * omega * omega / 2.0 + 3.0 * PI / 8.0).cos() / denom;
    Ok(RSApprox { main_sum, correction, n_t, omega })
}

pub fn rs_corrected(t: f64) -> Result<f64> {
    Ok(rs_main(t)?.corrected())
}

/// Smoothing data of the Berry-Keating sum at height `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BKParams {
    pub k: f64,
    pub t: f64,
    /// `theta'(t)`
    pub theta_p: f64,
    /// `K^2 - i t theta''(t)`
    pub q_sq: Complex64,
}

impl BKParams {
    pub fn new(t: f64, k: f64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::domain(format!("Berry-Keating needs K > 0, got {k}")));
        }
        Ok(BKParams { k, t, theta_p: theta_p(t), q_sq: Complex64::new(k * k, -t * theta_pp(t)) })
    }

    /// `ln n - theta'(t)`
    pub fn xi(&self, n: usize) -> f64 {
        (n as f64).ln() - self.theta_p
    }

    /// Principal square root of `q^2`.
    pub fn q(&self) -> Complex64 {
        self.q_sq.sqrt()
    }
}

/// `2 Re sum_n e^{i(theta - t ln n)} / sqrt(n) * erfc(xi(n,t) sqrt(t/2) / q) / 2`.
pub fn bk_z0(t: f64, k: f64, opts: &SeriesOptions) -> Result<f64> {
    if !(t >= 10.0) || !t.is_finite() {
        return Err(Error::domain(format!("Berry-Keating sum needs t >= 10, got {t}")));
    }
    opts.validate()?;
    let params = BKParams::new(t, k)?;
    let scale = (t / 2.0).sqrt() / params.q();
    let n_t = (t / TAU).sqrt().floor() as usize;
    let th = theta(t);
    let mut sum = 0.0;
    let mut small = 0;
    for n in 1..=opts.max_terms {
        let nf = n as f64;
        let weight = 0.5 * erfc(params.xi(n) * scale);
        let phase = Complex64::new(0.0, th - t * nf.ln()).exp();
        sum += 2.0 * (phase * weight).re / nf.sqrt();
        if n > n_t && weight.norm() < opts.rel_tol {
            small += 1;
            if small >= opts.consecutive_small {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::convergence(format!("Berry-Keating sum at t = {t} hit the term cap")))
}

/// How `Z(t)` is evaluated by [`find_zeros`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZMethod {
    /// [`hardy_z_ref`].
    Reference,
    /// [`hardy_z_series`] with the given kernel.
    Series { kernel: KernelId, opts: SeriesOptions },
}

impl ZMethod {
    pub fn z(&self, t: f64) -> Result<f64> {
        match self {
            ZMethod::Reference => hardy_z_ref(t),
            ZMethod::Series { kernel, opts } => Ok(hardy_z_series(t, *kernel, opts)?.value),
        }
    }
}

/// Sign changes of `Z` on the grid `t_min, t_min + step, ...`, each refined
/// by bisection to width `1e-8`. Grid values are computed in parallel;
/// the result is in increasing order.
pub fn find_zeros(t_min: f64, t_max: f64, step: f64, method: ZMethod) -> Result<Vec<f64>> {
    if !(0.0 <= t_min && t_min < t_max && t_max.is_finite()) || !(step > 0.0) {
        return Err(Error::domain(format!(
            "find_zeros needs 0 <= t_min < t_max and step > 0, got [{t_min}, {t_max}] step {step}"
        )));
    }
    let count = ((t_max - t_min) / step).floor() as usize;
    let mut grid: Vec<f64> = (0..=count).map(|j| t_min + j as f64 * step).collect();
    if *grid.last().expect("non-empty") < t_max {
        grid.push(t_max);
    }
    let values = grid.par_iter().map(|&t| method.z(t)).collect::<Result<Vec<f64>>>()?;
    let mut brackets = Vec::new();
    for j in 0..grid.len() {
        if values[j] == 0.0 {
            brackets.push((grid[j], grid[j], 0.0));
        } else if j + 1 < grid.len() && values[j] * values[j + 1] < 0.0 {
            brackets.push((grid[j], grid[j + 1], values[j]));
        }
    }
    brackets
        .into_par_iter()
        .map(|(mut lo, mut hi, mut f_lo)| {
            while hi - lo > BISECTION_WIDTH {
                let mid = 0.5 * (lo + hi);
                let f_mid = method.z(mid)?;
                if f_mid == 0.0 {
                    return Ok(mid);
                }
                if f_mid.signum() == f_lo.signum() {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            Ok(0.5 * (lo + hi))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classical_zeta_values() {
        let v = zeta_em(c(2.0, 0.0), 40, 15).unwrap();
        assert!((v.re - PI * PI / 6.0).abs() < 1e-15);
        let v = zeta_em(c(3.0, 0.0), 40, 15).unwrap();
        assert!((v.re - 1.202_056_903_159_594_3).abs() < 1e-15);
        assert!(matches!(zeta_em(c(1.0, 0.0), 40, 15), Err(Error::Pole(_))));
        assert!(zeta_em(c(2.0, 0.0), 5, 15).is_err());
    }

    #[test]
    fn zeta_near_first_zero() {
        let v = zeta_ref(c(0.5, 14.134_725_141_734_693)).unwrap();
        assert!(v.norm() < 1e-13, "{v}");
    }

    #[test]
    fn theta_properties() {
        assert_eq!(theta(0.0), 0.0);
        assert!((theta(-7.3) + theta(7.3)).abs() < 1e-12);
        let h = 1e-4;
        let fd = (theta(20.0 + h) - theta(20.0 - h)) / (2.0 * h);
        assert!((theta_p(20.0) - fd).abs() < 1e-7);
        let fd2 = (theta_p(20.0 + h) - theta_p(20.0 - h)) / (2.0 * h);
        assert!((theta_pp(20.0) - fd2).abs() < 1e-7);
    }

    #[test]
    fn hardy_z_symmetry_and_value() {
        assert!((hardy_z_ref(0.0).unwrap() + 1.460_354_508_809_586_8).abs() < 1e-13);
        assert!((hardy_z_ref(9.1).unwrap() - hardy_z_ref(-9.1).unwrap()).abs() < 1e-13);
    }

    #[test]
    fn riemann_siegel_counts() {
        let a = rs_main(TAU * 4.0).unwrap();
        assert_eq!(a.n_t, 2);
        assert!((a.omega - 1.0).abs() < 1e-12);
        assert!(rs_main(5.0).is_err());
    }

    #[test]
    fn berry_keating_improves_on_the_main_sum() {
        let o = SeriesOptions::default();
        for t in [100.0, 500.0] {
            let z = hardy_z_ref(t).unwrap();
            let bk = bk_z0(t, 4.0, &o).unwrap();
            let rs = rs_main(t).unwrap().main_sum;
            assert!((bk - z).abs() < (rs - z).abs(), "t = {t}");
        }
        assert!((bk_z0(500.0, 4.0, &o).unwrap() - hardy_z_ref(500.0).unwrap()).abs() < 5e-3);
    }

    #[test]
    fn no_zeros_below_ten() {
        assert!(find_zeros(2.0, 5.0, 0.1, ZMethod::Reference).unwrap().is_empty());
    }
}
