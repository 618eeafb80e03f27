use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Gauss rule for the weight `e^{-x^2}` on the real line.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub order: usize,
}

impl QuadratureRule {
    /// `sum_i w_i f(x_i)`.
    pub fn integrate<T, F>(&self, mut f: F) -> T
    where
        T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
        F: FnMut(f64) -> T,
    {
        self.nodes.iter().zip(&self.weights).fold(T::default(), |acc, (&x, &w)| acc + f(x) * w)
    }
}

pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 256;

/// Gauss-Hermite nodes and weights of the given order.
///
/// Nodes are the eigenvalues of the Jacobi matrix (implicit QL), polished
/// by Newton steps on the orthonormal Hermite polynomial; weights come from
/// the Christoffel function, which keeps the far-tail weights positive.
pub fn gauss_hermite(order: usize) -> Result<QuadratureRule> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
        return Err(Error::domain(format!("Gauss-Hermite order {order} outside {MIN_ORDER}..={MAX_ORDER}")));
    }
    let n = order;
    let mut diag = vec![0.0; n];
    let mut off: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    off.push(0.0);
    tridiagonal_ql(&mut diag, &mut off)?;
    diag.sort_by(f64::total_cmp);

    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for &x0 in &diag {
        let mut x = x0;
        for _ in 0..3 {
            let (p, dp, _) = orthonormal_hermite(n, x);
            let step = p / dp;
            x -= step;
            if step.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, _, christoffel) = orthonormal_hermite(n, x);
        nodes.push(x);
        weights.push(1.0 / christoffel);
    }
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let x = 0.5 * (nodes[j] - nodes[i]);
        let w = 0.5 * (weights[i] + weights[j]);
        nodes[i] = -x;
        nodes[j] = x;
        weights[i] = w;
        weights[j] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(QuadratureRule { nodes, weights, order })
}

/// Shared immutable rules for the orders used by the Gauss kernel.
pub(crate) fn gauss_hermite_shared(order: usize) -> Result<&'static QuadratureRule> {
    static CACHE: [OnceLock<QuadratureRule>; MAX_ORDER + 1] = [const { OnceLock::new() }; MAX_ORDER + 1];
    if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
        return Err(Error::domain(format!("Gauss-Hermite order {order} outside {MIN_ORDER}..={MAX_ORDER}")));
    }
    if let Some(rule) = CACHE[order].get() {
        return Ok(rule);
    }
    let rule = gauss_hermite(order)?;
    Ok(CACHE[order].get_or_init(|| rule))
}

/// Orthonormal Hermite `p_n(x)`, its derivative, and `sum_{k<n} p_k(x)^2`.
fn orthonormal_hermite(n: usize, x: f64) -> (f64, f64, f64) {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25);
    let mut christoffel = 0.0;
    for k in 0..n {
        christoffel += cur * cur;
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    let deriv = (2.0 * n as f64).sqrt() * prev;
    (cur, deriv, christoffel)
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with
/// Wilkinson shifts. `off[i]` couples rows `i` and `i + 1`; on return `diag`
/// holds the eigenvalues in no particular order.
fn tridiagonal_ql(diag: &mut [f64], off: &mut [f64]) -> Result<()> {
    let n = diag.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::convergence("tridiagonal QL did not converge"));
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two_closed_form() {
        let rule = gauss_hermite(2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((rule.nodes[0] + h).abs() < 1e-15 && (rule.nodes[1] - h).abs() < 1e-15);
        for w in &rule.weights {
            assert!((w - PI.sqrt() / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn moments_across_orders() {
        for order in [2, 3, 5, 16, 32, 63, 64, 128, 200, 256] {
            let rule = gauss_hermite(order).unwrap();
            let m0: f64 = rule.integrate(|_| 1.0);
            let m2: f64 = rule.integrate(|x| x * x);
            assert!((m0 - PI.sqrt()).abs() < 1e-12, "order {order}: {m0}");
            assert!((m2 - PI.sqrt() / 2.0).abs() < 1e-12, "order {order}: {m2}");
            assert!(rule.nodes.windows(2).all(|p| p[0] < p[1]));
            assert!(rule.weights.iter().all(|&w| w > 0.0));
        }
    }

    #[test]
    fn fourth_moment_at_order_sixteen() {
        let rule = gauss_hermite(16).unwrap();
        let m4: f64 = rule.integrate(|x| x.powi(4));
        assert!((m4 - 0.75 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn nodes_are_roots_of_the_hermite_polynomial() {
        // H_5 roots: 0, +-0.958572464613819, +-2.020182870456086
        let rule = gauss_hermite(5).unwrap();
        let want = [-2.020_182_870_456_086, -0.958_572_464_613_819, 0.0, 0.958_572_464_613_819, 2.020_182_870_456_086];
        for (x, w) in rule.nodes.iter().zip(want) {
            assert!((x - w).abs() < 1e-14);
        }
    }

    #[test]
    fn order_range_is_checked() {
        assert!(gauss_hermite(1).is_err());
        assert!(gauss_hermite(257).is_err());
        assert!(gauss_hermite_shared(1).is_err());
    }

    #[test]
    fn shared_rule_is_the_same_allocation() {
        let a = gauss_hermite_shared(64).unwrap();
        let b = gauss_hermite_shared(64).unwrap();
        assert!(std::ptr::eq(a, b));
        assert_eq!(a, &gauss_hermite(64).unwrap());
    }
}
