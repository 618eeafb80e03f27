//! Kernels `g(z)` of the convergent-series representation, with their
//! Mellin partners `h(s, x)`.
//!
//! A kernel is odd, analytic in the strip `|Re z| < a` apart from a simple
//! pole at the origin with residue one, and decays like `exp(b |Im z| / 2)`.
//! Its partner `h` satisfies
//! `int_0^inf h(s, x) x^{w-1} dx = Gamma(w) g(2w - s)`.

mod checks;
mod rational;

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::complex_special::{
    cpow, csc, gamma, gauss_hermite_shared, scaled_upper_gamma_cut, upper_gamma_cut, Complex64, SECTOR_MARGIN,
};
use crate::error::{Error, Result};
use crate::series::SeriesOptions;

pub use checks::{growth_check, mellin_check, oddness_defect, residue_defect, GrowthReport};
pub use rational::{
    rational_trig_asymptotic, rational_trig_mellin_barnes, rational_trig_quarter_closed_form, rational_trig_series,
};

/// Guard radius around poles of `g` in the `z` plane.
pub const Z_POLE_GUARD: f64 = 1e-9;
/// Guard radius around singular `s` values of `h(s, .)`.
pub const S_POLE_GUARD: f64 = 1e-6;
/// Working angle parameter of the Gauss kernel (any `b < 0` is admissible).
pub const GAUSS_WORKING_B: f64 = -PI / 4.0;

/// One of the four concrete kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelId {
    /// `g(z) = 1/z`.
    Gamma,
    /// `g(z) = exp(alpha z^2) / z`.
    Gauss { alpha: f64 },
    /// `g(z) = (pi/2) / sin(pi z / 2)`.
    Trig,
    /// `g(z) = pi r / sin(pi r z)` with `r = p/q` in lowest terms.
    RationalTrig { p: u32, q: u32 },
}

/// Where a kernel (or its partner) is singular.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PoleSet {
    /// No singularities.
    Empty,
    /// Only the origin.
    Origin,
    /// The lattice `spacing * Z`.
    Lattice { spacing: f64 },
    /// `-2, -4, -6, ...`
    NegativeEvenIntegers,
}

impl PoleSet {
    /// Distance from `z` to the nearest point of the set (infinite if empty).
    pub fn distance(&self, z: Complex64) -> f64 {
        match *self {
            PoleSet::Empty => f64::INFINITY,
            PoleSet::Origin => z.norm(),
            PoleSet::Lattice { spacing } => {
                let k = (z.re / spacing).round();
                Complex64::new(z.re - k * spacing, z.im).norm()
            }
            PoleSet::NegativeEvenIntegers => {
                let k = (-z.re / 2.0).round().max(1.0);
                Complex64::new(z.re + 2.0 * k, z.im).norm()
            }
        }
    }
}

impl fmt::Display for PoleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoleSet::Empty => write!(f, "none"),
            PoleSet::Origin => write!(f, "{{0}}"),
            PoleSet::Lattice { spacing } => write!(f, "{spacing}*Z"),
            PoleSet::NegativeEvenIntegers => write!(f, "{{-2, -4, ...}}"),
        }
    }
}

/// Admissibility data of a kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelDescriptor {
    pub name: String,
    /// Strip half-width, possibly infinite.
    pub a: f64,
    /// Angle parameter of the growth bound.
    pub b: f64,
    /// `max(b, -pi/2 + 1e-3)`, the value the sector checks use.
    pub b_eff: f64,
    /// Poles of `g`; always contains the origin.
    pub pole_spec: PoleSet,
    /// Values of `s` where `h(s, .)` or its prefactors are singular.
    pub s_pole_spec: PoleSet,
}

impl KernelDescriptor {
    /// Largest admissible `|arg x|` in `h(s, x)`.
    pub fn x_sector(&self) -> f64 {
        FRAC_PI_2 - self.b_eff - SECTOR_MARGIN
    }

    /// Largest admissible `|arg tau|` in the series representation.
    pub fn tau_sector(&self) -> f64 {
        (FRAC_PI_2 - self.b_eff).min(PI - 1e-6) - SECTOR_MARGIN
    }

    /// Whether `1 - a < Re s < a`.
    pub fn strip_contains(&self, s: Complex64) -> bool {
        1.0 - self.a < s.re && s.re < self.a
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl KernelId {
    /// Gauss kernel with parameter `alpha > 0`.
    pub fn gauss(alpha: f64) -> Result<Self> {
        let k = KernelId::Gauss { alpha };
        k.validate()?;
        Ok(k)
    }

    /// Rational trigonometric kernel with `r = p/q` in lowest terms.
    pub fn rational_trig(p: u32, q: u32) -> Result<Self> {
        let k = KernelId::RationalTrig { p, q };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            KernelId::Gauss { alpha } if !(alpha > 0.0 && alpha.is_finite()) => {
                Err(Error::domain(format!("gauss kernel needs alpha > 0, got {alpha}")))
            }
            KernelId::RationalTrig { p, q } if p == 0 || q == 0 => {
                Err(Error::domain("rational-trig kernel needs p, q >= 1"))
            }
            KernelId::RationalTrig { p, q } if gcd(p, q) != 1 => {
                Err(Error::domain(format!("rational-trig kernel needs gcd(p, q) = 1, got {p}/{q}")))
            }
            _ => Ok(()),
        }
    }

    /// `r = p/q` for the trigonometric kernels (`1/2` for the plain one).
    pub fn ratio(&self) -> Option<f64> {
        match *self {
            KernelId::Trig => Some(0.5),
            KernelId::RationalTrig { p, q } => Some(f64::from(p) / f64::from(q)),
            _ => None,
        }
    }

    pub fn descriptor(&self) -> KernelDescriptor {
        descriptor(*self)
    }

    pub fn g(&self, z: Complex64) -> Result<Complex64> {
        g(*self, z)
    }

    pub fn h(&self, s: Complex64, x: Complex64, opts: &SeriesOptions) -> Result<Complex64> {
        h(*self, s, x, opts)
    }
}

impl fmt::Display for KernelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelId::Gamma => write!(f, "gamma"),
            KernelId::Gauss { alpha } => write!(f, "gauss:{alpha}"),
            KernelId::Trig => write!(f, "trig"),
            KernelId::RationalTrig { p, q } => write!(f, "rational-trig:{p}/{q}"),
        }
    }
}

impl FromStr for KernelId {
    type Err = Error;

    /// `gamma`, `trig`, `gauss[:alpha]` (default alpha 0.01),
    /// `rational-trig[:p/q]` (default 1/4).
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (head, arg) = match text.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (text, None),
        };
        let bad = || Error::domain(format!("unknown kernel '{text}'"));
        match (head, arg) {
            ("gamma", None) => Ok(KernelId::Gamma),
            ("trig", None) => Ok(KernelId::Trig),
            ("gauss", None) => KernelId::gauss(0.01),
            ("gauss", Some(a)) => KernelId::gauss(a.parse().map_err(|_| bad())?),
            ("rational-trig", None) => KernelId::rational_trig(1, 4),
            ("rational-trig", Some(r)) => {
                let (p, q) = r.split_once('/').ok_or_else(bad)?;
                KernelId::rational_trig(p.parse().map_err(|_| bad())?, q.parse().map_err(|_| bad())?)
            }
            _ => Err(bad()),
        }
    }
}

/// Strip width, angle parameter and singular sets of a kernel.
///
/// ```
/// use zeta_kernels::kernels::{descriptor, KernelId};
/// let d = descriptor(KernelId::Trig);
/// assert_eq!((d.a, d.b), (2.0, -std::f64::consts::PI));
/// ```
pub fn descriptor(k: KernelId) -> KernelDescriptor {
    let (a, b, pole_spec, s_pole_spec) = match k {
        KernelId::Gamma => (f64::INFINITY, 0.0, PoleSet::Origin, PoleSet::Empty),
        KernelId::Gauss { .. } => (f64::INFINITY, GAUSS_WORKING_B, PoleSet::Origin, PoleSet::Empty),
        KernelId::Trig => (2.0, -PI, PoleSet::Lattice { spacing: 2.0 }, PoleSet::NegativeEvenIntegers),
        KernelId::RationalTrig { p, q } => {
            let (p, q) = (f64::from(p), f64::from(q));
            let s_spacing = f64::from(gcd(q as u32, 2)) / p;
            (q / p, -2.0 * PI * p / q, PoleSet::Lattice { spacing: q / p }, PoleSet::Lattice { spacing: s_spacing })
        }
    };
    KernelDescriptor { name: k.to_string(), a, b, b_eff: b.max(-FRAC_PI_2 + 1e-3), pole_spec, s_pole_spec }
}

/// Kernel value `g(z)`, odd by construction: the core is evaluated on the
/// right half-plane and reflected.
pub fn g(k: KernelId, z: Complex64) -> Result<Complex64> {
    k.validate()?;
    let d = descriptor(k);
    if z.re.abs() >= d.a || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain(format!("g({z}) outside the strip |Re z| < {}", d.a)));
    }
    if d.pole_spec.distance(z) < Z_POLE_GUARD {
        return Err(Error::pole(format!("g({z}) is within {Z_POLE_GUARD:e} of a pole of {}", d.name)));
    }
    let mirrored = z.re < 0.0 || (z.re == 0.0 && z.im < 0.0);
    let w = if mirrored { -z } else { z };
    let core = match k {
        KernelId::Gamma => w.inv(),
        KernelId::Gauss { alpha } => (alpha * w * w).exp() / w,
        KernelId::Trig => FRAC_PI_2 * csc(FRAC_PI_2 * w),
        KernelId::RationalTrig { .. } => {
            let r = k.ratio().expect("trigonometric kernel");
            PI * r * csc(PI * r * w)
        }
    };
    Ok(if mirrored { -core } else { core })
}

/// Mellin partner `h(s, x)`.
pub fn h(k: KernelId, s: Complex64, x: Complex64, opts: &SeriesOptions) -> Result<Complex64> {
    Ok(h_eval(k, s, x, opts)?.0)
}

/// `h(s, x)` together with a quadrature error estimate (zero except for the
/// Gauss kernel).
pub(crate) fn h_eval(k: KernelId, s: Complex64, x: Complex64, opts: &SeriesOptions) -> Result<(Complex64, f64)> {
    k.validate()?;
    let d = descriptor(k);
    check_h_domain(&d, s, x)?;
    match k {
        KernelId::Gamma => Ok((0.5 * cpow(x, -s / 2.0) * upper_gamma_cut(s / 2.0, x)?, 0.0)),
        KernelId::Gauss { alpha } => gauss_h(alpha, s, x, opts),
        KernelId::Trig => {
            let prefactor = 0.5 * gamma(1.0 + s / 2.0)?;
            Ok((prefactor * scaled_upper_gamma_cut(-s / 2.0, x)?, 0.0))
        }
        KernelId::RationalTrig { p, q } => Ok((rational::h_auto(p, q, s, x)?, 0.0)),
    }
}

fn check_h_domain(d: &KernelDescriptor, s: Complex64, x: Complex64) -> Result<()> {
    if !(s.re > -d.a) || !s.im.is_finite() {
        return Err(Error::domain(format!("h({s}, .) needs Re s > {}", -d.a)));
    }
    if x.norm() == 0.0 || !x.re.is_finite() || !x.im.is_finite() {
        return Err(Error::domain(format!("h(., {x}) needs a finite non-zero x")));
    }
    if x.arg().abs() > d.x_sector() {
        return Err(Error::domain(format!("h(., {x}): |arg x| exceeds {:.6} for {}", d.x_sector(), d.name)));
    }
    if d.s_pole_spec.distance(s) < S_POLE_GUARD {
        return Err(Error::pole(format!(
            "h({s}, .) is within {S_POLE_GUARD:e} of a singular s of {} ({})",
            d.name, d.s_pole_spec
        )));
    }
    Ok(())
}

/// `(1/2) x^{-s/2} E[Gamma(s/2, x e^{sqrt(8 alpha) X})]`, `X` standard normal,
/// by Gauss-Hermite quadrature with `X = sqrt(2) t`.
fn gauss_h(alpha: f64, s: Complex64, x: Complex64, opts: &SeriesOptions) -> Result<(Complex64, f64)> {
    let scale = 4.0 * alpha.sqrt();
    let a = s / 2.0;
    let expectation = |order: usize| -> Result<Complex64> {
        let rule = gauss_hermite_shared(order)?;
        let mut sum = Complex64::new(0.0, 0.0);
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            sum += w * upper_gamma_cut(a, x * (scale * t).exp())?;
        }
        Ok(sum / PI.sqrt())
    };
    let order = opts.quad_order.clamp(4, 256);
    let mut value = expectation(order)?;
    let mut err = (value - expectation(order / 2)?).norm();
    if err > opts.rel_tol * value.norm() && order < 256 {
        let finer = expectation((2 * order).min(256))?;
        err = (finer - value).norm();
        value = finer;
    }
    let prefactor = 0.5 * cpow(x, -a);
    Ok((prefactor * value, prefactor.norm() * err))
}

/// Lognormal density factor of the Gauss kernel:
/// `f(x) = exp(-ln(x)^2 / (16 alpha)) / (8 sqrt(pi alpha))`.
pub fn f_prop1(k: KernelId, x: f64) -> Result<f64> {
    let KernelId::Gauss { alpha } = k else {
        return Err(Error::domain(format!("f_prop1 is defined for the gauss kernel, not {k}")));
    };
    k.validate()?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("f_prop1 needs x > 0, got {x}")));
    }
    let l = x.ln();
    Ok((-l * l / (16.0 * alpha)).exp() / (8.0 * (PI * alpha).sqrt()))
}

/// Coefficients of the large-`x` expansion
/// `h(s, x) ~ sum_{m>=1} c_m x^{-e_m}` of a trigonometric kernel with ratio
/// `r`: `e_m = (s + m/r)/2`, `c_m = (-1)^{m+1} Gamma(e_m) / 2`.
pub(crate) fn algebraic_tail_term(r: f64, s: Complex64, m: usize) -> (Complex64, Complex64) {
    let e = (s + m as f64 / r) / 2.0;
    let sign = if m % 2 == 1 { 0.5 } else { -0.5 };
    (e, sign * crate::complex_special::log_gamma_unchecked(e).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn descriptors_match_the_examples() {
        let d = descriptor(KernelId::Trig);
        assert_eq!((d.a, d.b), (2.0, -PI));
        let d = descriptor(KernelId::RationalTrig { p: 1, q: 4 });
        assert_eq!((d.a, d.b), (4.0, -PI / 2.0));
        let d = descriptor(KernelId::Gamma);
        assert_eq!((d.a, d.b), (f64::INFINITY, 0.0));
        let d = descriptor(KernelId::Gauss { alpha: 0.3 });
        assert_eq!((d.a, d.b), (f64::INFINITY, -PI / 4.0));
        for k in [KernelId::Gamma, KernelId::Trig, KernelId::RationalTrig { p: 2, q: 3 }] {
            assert_eq!(descriptor(k).pole_spec.distance(c(0.0, 0.0)), 0.0);
        }
    }

    #[test]
    fn kernel_values() {
        assert_eq!(g(KernelId::Gamma, c(2.0, 0.0)).unwrap(), c(0.5, 0.0));
        assert!((g(KernelId::Trig, c(1.0, 0.0)).unwrap() - FRAC_PI_2).norm() < 1e-15);
        let z = c(1.0, 1.0);
        let got = g(KernelId::Gauss { alpha: 0.1 }, z).unwrap();
        // e^{0.1 (2i)} / (1 + i), written out in real arithmetic
        let (cs, sn) = (0.2f64.cos(), 0.2f64.sin());
        let want = c((cs + sn) / 2.0, (sn - cs) / 2.0);
        assert!((got - want).norm() < 1e-15);
    }

    #[test]
    fn g_refuses_poles_and_strip_exits() {
        assert!(matches!(g(KernelId::Gamma, c(0.0, 0.0)), Err(Error::Pole(_))));
        assert!(matches!(g(KernelId::Trig, c(2.5, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(g(KernelId::RationalTrig { p: 1, q: 4 }, c(1e-10, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for text in ["gamma", "trig", "gauss:0.25", "rational-trig:1/4", "rational-trig:3/7"] {
            let k: KernelId = text.parse().unwrap();
            assert_eq!(k.to_string(), text);
        }
        assert!("rational-trig:2/4".parse::<KernelId>().is_err());
        assert!("gauss:-1".parse::<KernelId>().is_err());
        assert!("zeta".parse::<KernelId>().is_err());
    }

    #[test]
    fn gamma_kernel_h_at_two() {
        let v = h(KernelId::Gamma, c(2.0, 0.0), c(1.0, 0.0), &SeriesOptions::default()).unwrap();
        assert!((v.re - 0.5 * (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn trig_kernel_h_matches_regularized_form() {
        // -(pi/2) e Q(-1/2, 1)
        let q = crate::complex_special::reg_q(c(-0.5, 0.0), c(1.0, 0.0)).unwrap();
        let want = -FRAC_PI_2 * std::f64::consts::E * q;
        let v = h(KernelId::Trig, c(1.0, 0.0), c(1.0, 0.0), &SeriesOptions::default()).unwrap();
        assert!((v - want).norm() < 1e-14 * want.norm());
    }

    #[test]
    fn h_domain_checks() {
        let o = SeriesOptions::default();
        assert!(matches!(h(KernelId::Gamma, c(0.5, 0.0), c(-1.0, 0.1), &o), Err(Error::Domain(_))));
        assert!(matches!(h(KernelId::Trig, c(-2.5, 0.0), c(1.0, 0.0), &o), Err(Error::Domain(_))));
        let quarter = KernelId::RationalTrig { p: 1, q: 4 };
        assert!(matches!(h(quarter, c(2.0, 1e-8), c(1.0, 0.0), &o), Err(Error::Pole(_))));
        // the trig kernels accept arguments beyond the right half-plane
        assert!(h(KernelId::Trig, c(0.5, 0.0), c(-1.0, 0.5), &o).is_ok());
    }

    #[test]
    fn lognormal_factor() {
        let k = KernelId::Gauss { alpha: 1.0 / (64.0 * PI) };
        assert!((f_prop1(k, 1.0).unwrap() - 1.0).abs() < 1e-15);
        let k = KernelId::Gauss { alpha: 0.2 };
        assert!((f_prop1(k, 3.7).unwrap() - f_prop1(k, 1.0 / 3.7).unwrap()).abs() < 1e-16);
        let k = KernelId::Gauss { alpha: 0.25 };
        let want = (-1.0f64).exp() / (8.0 * (PI / 4.0).sqrt());
        assert!((f_prop1(k, 2f64.exp()).unwrap() - want).abs() < 1e-16);
        assert!(f_prop1(k, 0.0).is_err());
        assert!(f_prop1(KernelId::Gamma, 1.0).is_err());
    }

    #[test]
    fn lognormal_factor_inverts_its_mellin_transform() {
        // f(x) = (1/2pi) int e^{4 alpha (iy)^2} / 2 * x^{-iy} dy on Re w = 0
        let alpha = 0.25;
        let x = 2f64.exp();
        let (v, _) = crate::complex_special::integrate_adaptive(
            |y| Ok(Complex64::new(0.0, -y * x.ln()).exp() * (-4.0 * alpha * y * y).exp() / 2.0),
            -20.0,
            20.0,
            0.0,
            1e-14,
            200,
        )
        .unwrap();
        let inverted = v.re / (2.0 * PI);
        let f = f_prop1(KernelId::Gauss { alpha }, x).unwrap();
        assert!((inverted - f).abs() < 1e-13, "{inverted} vs {f}");
    }

    #[test]
    fn asymptotic_coefficients_of_the_trig_kernel() {
        // e^x Gamma(a, x) ~ x^{a-1} (1 + (a-1)/x + ...), a = -s/2
        let s = c(0.3, 2.0);
        let (e1, c1) = algebraic_tail_term(0.5, s, 1);
        let (e2, c2) = algebraic_tail_term(0.5, s, 2);
        let g1 = crate::complex_special::gamma(1.0 + s / 2.0).unwrap();
        assert!((e1 - (1.0 + s / 2.0)).norm() < 1e-15);
        assert!((c1 - 0.5 * g1).norm() < 1e-14 * g1.norm());
        assert!((e2 - (2.0 + s / 2.0)).norm() < 1e-15);
        assert!((c2 + 0.5 * g1 * (1.0 + s / 2.0)).norm() < 1e-14 * g1.norm());
    }
}
