//! Evaluation of `G(s) = pi^{-s/2} Gamma(s/2) zeta(s)` from the two kernel
//! series
//!
//! `G(s) = tau^{s/2} [-g(s) + 2 sum h(s, pi tau n^2)]
//!       + tau^{(s-1)/2} [-g(1-s) + 2 sum h(1-s, pi n^2 / tau)]`.

mod tail;

use std::f64::consts::{FRAC_PI_2, PI};

use crate::complex_special::{log_gamma_unchecked, recip_gamma, reg_q, CompensatedSum, Complex64};
use crate::error::{Error, Result};
use crate::kernels::{self, descriptor, KernelId};

/// Below this `|Im s|` the automatic parameter is `tau = 1`.
const AUTO_TAU_T: f64 = 5.0;
const POLE_GUARD: f64 = 1e-8;

/// Truncation and quadrature controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    /// Free parameter; `None` picks one from `s` (see [`auto_tau`]).
    pub tau: Option<Complex64>,
    pub rel_tol: f64,
    pub max_terms: usize,
    pub consecutive_small: usize,
    /// Gauss-Hermite order for the Gauss kernel.
    pub quad_order: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions { tau: None, rel_tol: 1e-12, max_terms: 100_000, consecutive_small: 3, quad_order: 64 }
    }
}

impl SeriesOptions {
    pub fn with_tau(tau: Complex64) -> Self {
        SeriesOptions { tau: Some(tau), ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(tau) = self.tau {
            if tau.norm() == 0.0 || !tau.re.is_finite() || !tau.im.is_finite() {
                return Err(Error::domain(format!("tau must be finite and non-zero, got {tau}")));
            }
        }
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::domain(format!("rel_tol must lie in (0, 1), got {}", self.rel_tol)));
        }
        if self.max_terms == 0 || self.consecutive_small == 0 {
            return Err(Error::domain("max_terms and consecutive_small must be at least 1"));
        }
        if !(4..=256).contains(&self.quad_order) {
            return Err(Error::domain(format!("quad_order must lie in 4..=256, got {}", self.quad_order)));
        }
        Ok(())
    }
}

/// Result of a series evaluation with its truncation diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalOutcome {
    pub value: Complex64,
    /// Terms summed in the `tau^{s/2}` series.
    pub terms_first: usize,
    /// Terms summed in the `tau^{(s-1)/2}` series.
    pub terms_second: usize,
    /// Heuristic: final term magnitudes plus rounding and tail truncation.
    pub error_estimate: f64,
    pub warnings: Vec<String>,
    /// False when a series hit `max_terms`; `value` is then a partial sum.
    pub converged: bool,
    /// The `tau` actually used.
    pub tau: Complex64,
}

impl EvalOutcome {
    /// Turns a truncated evaluation into a convergence error.
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::convergence(self.warnings.join("; ")))
        }
    }
}

/// `tau = 1` for small `|Im s|`, otherwise a unimodular `tau` turned towards
/// `sign(Im s) i`, which removes the `e^{-pi |t| / 4}` cancellation in the
/// sums. Clamped to the kernel's sector.
pub fn auto_tau(k: KernelId, s: Complex64) -> Complex64 {
    let t = s.im;
    if t.abs() <= AUTO_TAU_T {
        return Complex64::new(1.0, 0.0);
    }
    let phi = (FRAC_PI_2 - (2.0 / t.abs()).max(0.02)).min(descriptor(k).tau_sector());
    Complex64::from_polar(1.0, phi.copysign(t))
}

struct Partial {
    sum: Complex64,
    terms: usize,
    error: f64,
    converged: bool,
}

/// `sum_{n>=1} h(s, pi tau n^2)`.
fn kernel_sum(k: KernelId, s: Complex64, tau: Complex64, opts: &SeriesOptions) -> Result<Partial> {
    let base = PI * tau;
    // each h value carries phases of size |s| ln |s|, and so does its rounding
    let unit = f64::EPSILON * (1.0 + s.norm() * (2.0 + s.norm()).ln());
    let mut sum = CompensatedSum::new();
    let mut magnitude = 0.0;
    let mut recent = vec![0.0; opts.consecutive_small];
    let mut quad_error = 0.0;
    let mut small = 0;
    let ratio = k.ratio();
    for n in 1..=opts.max_terms {
        let x = base * (n * n) as f64;
        if let Some(r) = ratio {
            if let Some((tail, tail_error)) = tail::asymptotic_tail(r, s, base, n - 1)? {
                sum.add(tail);
                let rounding = unit * (magnitude + tail.norm());
                return Ok(Partial { sum: sum.value(), terms: n - 1, error: tail_error + rounding, converged: true });
            }
        }
        let (term, q_err) = kernels::h_eval(k, s, x, opts)?;
        sum.add(term);
        quad_error += q_err;
        magnitude += term.norm();
        recent[n % opts.consecutive_small] = term.norm();
        if term.norm() < opts.rel_tol * sum.value().norm() {
            small += 1;
            if small >= opts.consecutive_small {
                let tail: f64 = recent.iter().sum();
                return Ok(Partial {
                    sum: sum.value(),
                    terms: n,
                    error: tail + quad_error + unit * magnitude,
                    converged: true,
                });
            }
        } else {
            small = 0;
        }
    }
    let tail: f64 = recent.iter().sum();
    Ok(Partial {
        sum: sum.value(),
        terms: opts.max_terms,
        error: tail + quad_error + unit * magnitude,
        converged: false,
    })
}

fn check_inputs(k: KernelId, s: Complex64, opts: &SeriesOptions) -> Result<Complex64> {
    k.validate()?;
    opts.validate()?;
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::domain(format!("s must be finite, got {s}")));
    }
    let d = descriptor(k);
    if !d.strip_contains(s) {
        return Err(Error::domain(format!("s = {s} outside the strip {} < Re s < {} of {}", 1.0 - d.a, d.a, d.name)));
    }
    if s.norm() < POLE_GUARD || (s - 1.0).norm() < POLE_GUARD {
        return Err(Error::pole(format!("s = {s} is inside the pole guard ({POLE_GUARD:e}) of a pole of G")));
    }
    for arg in [s, 1.0 - s] {
        if d.s_pole_spec.distance(arg) < kernels::S_POLE_GUARD {
            return Err(Error::pole(format!("h({arg}, .) is singular for {}", d.name)));
        }
    }
    let tau = opts.tau.unwrap_or_else(|| auto_tau(k, s));
    if tau.arg().abs() > d.tau_sector() {
        return Err(Error::domain(format!(
            "|arg tau| = {:.6} exceeds {:.6} for {}",
            tau.arg().abs(),
            d.tau_sector(),
            d.name
        )));
    }
    Ok(tau)
}

/// `G(s) = pi^{-s/2} Gamma(s/2) zeta(s)` from the kernel series.
///
/// ```
/// use zeta_kernels::complex_special::Complex64;
/// use zeta_kernels::kernels::KernelId;
/// use zeta_kernels::series::{completed_zeta, SeriesOptions};
/// let out = completed_zeta(Complex64::new(2.0, 0.0), KernelId::Gamma, &SeriesOptions::default()).unwrap();
/// assert!((out.value.re - std::f64::consts::PI / 6.0).abs() < 1e-13);
/// ```
pub fn completed_zeta(s: Complex64, k: KernelId, opts: &SeriesOptions) -> Result<EvalOutcome> {
    let tau = check_inputs(k, s, opts)?;
    let mut warnings = Vec::new();
    if let KernelId::RationalTrig { p, .. } = k {
        let lo = -0.5 / f64::from(p);
        if !(lo < s.re && s.re < 0.0) || !(lo < 1.0 - s.re && 1.0 - s.re < 0.0) {
            warnings.push(format!(
                "series for h evaluated outside the strip {lo} < Re s < 0 where its derivation is given"
            ));
        }
    }
    let first = kernel_sum(k, s, tau, opts)?;
    let second = kernel_sum(k, 1.0 - s, tau.inv(), opts)?;
    let ln_tau = tau.ln();
    let w1 = (s / 2.0 * ln_tau).exp();
    let w2 = ((s - 1.0) / 2.0 * ln_tau).exp();
    let value = w1 * (-kernels::g(k, s)? + 2.0 * first.sum) + w2 * (-kernels::g(k, 1.0 - s)? + 2.0 * second.sum);
    let rounding = f64::EPSILON * (w1.norm() * kernels::g(k, s)?.norm() + w2.norm() * kernels::g(k, 1.0 - s)?.norm());
    let error_estimate = 2.0 * (w1.norm() * first.error + w2.norm() * second.error) + rounding;
    let converged = first.converged && second.converged;
    if !converged {
        warnings.push(format!(
            "term cap {} reached before the stop rule (first: {}, second: {})",
            opts.max_terms, first.terms, second.terms
        ));
    }
    if !value.re.is_finite() || !value.im.is_finite() {
        // the terms carry |tau^{-s/2}| ~ e^{phi |t| / 2}, which leaves the
        // double range near |t| = 900 while G itself underflows
        return Err(Error::overflow(format!(
            "G({s}) is outside the double range; the series are usable up to about |Im s| = 800"
        )));
    }
    Ok(EvalOutcome {
        value,
        terms_first: first.terms,
        terms_second: second.terms,
        error_estimate,
        warnings,
        converged,
        tau,
    })
}

/// `zeta(s) = G(s) pi^{s/2} / Gamma(s/2)`.
pub fn zeta(s: Complex64, k: KernelId, opts: &SeriesOptions) -> Result<EvalOutcome> {
    let mut out = completed_zeta(s, k, opts)?;
    let factor = (s / 2.0 * PI.ln()).exp() * recip_gamma(s / 2.0);
    out.value *= factor;
    // the phase of 1/Gamma(s/2) is good to about eps |s| ln|s|
    let phase_error = f64::EPSILON * (1.0 + s.norm() * s.norm().max(1.0).ln()) * out.value.norm();
    out.error_estimate = out.error_estimate * factor.norm() + phase_error;
    Ok(out)
}

/// `Z(t)` from a series evaluation, with the size of the imaginary part
/// that should vanish.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyZ {
    pub value: f64,
    pub imag_residual: f64,
    pub outcome: EvalOutcome,
}

/// `Z(t) = e^{i theta(t)} zeta(1/2 + it)`, using
/// `e^{i theta} pi^{s/2} / Gamma(s/2) = pi^{1/4} / |Gamma(s/2)|` on the
/// critical line.
pub fn hardy_z_series(t: f64, k: KernelId, opts: &SeriesOptions) -> Result<HardyZ> {
    if !t.is_finite() {
        return Err(Error::domain(format!("t must be finite, got {t}")));
    }
    let s = Complex64::new(0.5, t);
    let outcome = completed_zeta(s, k, opts)?;
    let scale = PI.powf(0.25) * (-log_gamma_unchecked(s / 2.0).re).exp();
    let z = outcome.value * scale;
    Ok(HardyZ { value: z.re, imag_residual: z.im.abs(), outcome })
}

/// `Z(t)` as `2 Re e^{i theta} [sum n^{-s} Q(s/2, pi tau n^2) - pi^{s/2} tau^{s/2} / (s Gamma(s/2))]`
/// with `s = 1/2 + it`, `tau = e^{i (pi/2 - delta)}` (sign following `t`).
pub fn paris_cang_z(t: f64, delta: f64, opts: &SeriesOptions) -> Result<f64> {
    opts.validate()?;
    if !(delta > crate::complex_special::SECTOR_MARGIN && delta < FRAC_PI_2) || !t.is_finite() {
        return Err(Error::domain(format!("need 1e-3 < delta < pi/2 and finite t, got {delta}, {t}")));
    }
    let s = Complex64::new(0.5, t);
    let tau = Complex64::from_polar(1.0, (FRAC_PI_2 - delta).copysign(if t == 0.0 { 1.0 } else { t }));
    let a = s / 2.0;
    let mut sum = CompensatedSum::new();
    let mut small = 0;
    let mut converged = false;
    for n in 1..=opts.max_terms {
        let nf = n as f64;
        let term = (-s * nf.ln()).exp() * reg_q(a, PI * tau * nf * nf)?;
        sum.add(term);
        if term.norm() < opts.rel_tol * sum.value().norm() {
            small += 1;
            if small >= opts.consecutive_small {
                converged = true;
                break;
            }
        } else {
            small = 0;
        }
    }
    if !converged {
        return Err(Error::convergence(format!("incomplete-gamma sum for Z({t}) hit the term cap")));
    }
    let lg = log_gamma_unchecked(a);
    let pole = ((a * PI.ln()) + a * tau.ln() - lg).exp() / s;
    // e^{i theta} = pi^{-it/2} Gamma(s/2) / |Gamma(s/2)|
    let phase = Complex64::new(0.0, lg.im - t / 2.0 * PI.ln()).exp();
    Ok(2.0 * (phase * (sum.value() - pole)).re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const ZETA_HALF: f64 = -1.460_354_508_809_586_8;

    #[test]
    fn classical_values() {
        let o = SeriesOptions::with_tau(c(1.0, 0.0));
        let z2 = zeta(c(2.0, 0.0), KernelId::Gamma, &o).unwrap();
        assert!((z2.value.re - PI * PI / 6.0).abs() < 1e-13);
        let zh = zeta(c(0.5, 0.0), KernelId::Gamma, &o).unwrap();
        assert!((zh.value.re - ZETA_HALF).abs() < 1e-13, "{}", zh.value);
    }

    #[test]
    fn all_kernels_at_one_half() {
        let o = SeriesOptions::default();
        for k in [
            KernelId::Gamma,
            KernelId::Trig,
            KernelId::Gauss { alpha: 0.01 },
            KernelId::RationalTrig { p: 1, q: 4 },
            KernelId::RationalTrig { p: 1, q: 3 },
        ] {
            let v = zeta(c(0.5, 0.0), k, &o).unwrap();
            assert!((v.value.re - ZETA_HALF).abs() < 1e-11, "{k}: {}", v.value);
            assert!(v.converged);
        }
    }

    #[test]
    fn hardy_z_at_zero() {
        let z = hardy_z_series(0.0, KernelId::Gamma, &SeriesOptions::default()).unwrap();
        assert!((z.value - ZETA_HALF).abs() < 1e-13);
        assert!(z.imag_residual < 1e-13);
    }

    #[test]
    fn domain_and_pole_guards() {
        let o = SeriesOptions::default();
        assert!(matches!(zeta(c(2.5, 0.0), KernelId::Trig, &o), Err(Error::Domain(_))));
        assert!(matches!(zeta(c(1.0, 1e-9), KernelId::Gamma, &o), Err(Error::Pole(_))));
        let steep = SeriesOptions::with_tau(Complex64::from_polar(1.0, 1.6));
        assert!(matches!(zeta(c(0.5, 0.0), KernelId::Gamma, &steep), Err(Error::Domain(_))));
        let zero = SeriesOptions::with_tau(c(0.0, 0.0));
        assert!(zeta(c(0.5, 0.0), KernelId::Gamma, &zero).is_err());
    }

    #[test]
    fn term_cap_is_reported() {
        let o = SeriesOptions { max_terms: 1, tau: Some(c(1.0, 0.0)), ..SeriesOptions::default() };
        let out = zeta(c(0.5, 0.0), KernelId::Gamma, &o).unwrap();
        assert!(!out.converged);
        assert!(!out.warnings.is_empty());
        assert!(matches!(out.require_converged(), Err(Error::Convergence(_))));
    }

    #[test]
    fn automatic_tau() {
        assert_eq!(auto_tau(KernelId::Gamma, c(0.5, 3.0)), c(1.0, 0.0));
        let tau = auto_tau(KernelId::Gamma, c(0.5, -40.0));
        assert!((tau.norm() - 1.0).abs() < 1e-15 && tau.arg() < -1.5);
        assert!(tau.arg().abs() <= descriptor(KernelId::Gamma).tau_sector());
    }
}
