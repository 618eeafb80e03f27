use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest Bernoulli index kept in the table.
const MAX_INDEX: usize = 60;

/// `B_0 ..= B_60`, built once on first use and never mutated afterwards.
pub(crate) fn bernoulli_table() -> &'static [f64; MAX_INDEX + 1] {
    static TABLE: OnceLock<[f64; MAX_INDEX + 1]> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Tangent numbers T_k (all additions positive), then
        // B_2k = (-1)^{k-1} 2k T_k / (4^k (4^k - 1)).
        const HALF: usize = MAX_INDEX / 2;
        let mut t = [0.0f64; HALF + 1];
        t[1] = 1.0;
        for k in 2..=HALF {
            t[k] = (k - 1) as f64 * t[k - 1];
        }
        for k in 2..=HALF {
            for j in k..=HALF {
                t[j] = (j - k) as f64 * t[j - 1] + (j - k + 2) as f64 * t[j];
            }
        }
        let mut b = [0.0; MAX_INDEX + 1];
        b[0] = 1.0;
        b[1] = -0.5;
        for k in 1..=HALF {
            let four_k = 4f64.powi(k as i32);
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            b[2 * k] = sign * (2 * k) as f64 * t[k] / (four_k * (four_k - 1.0));
        }
        b
    })
}

/// Even-index Bernoulli numbers `[B_2, B_4, ..., B_upto]`.
///
/// An odd `upto` stops at the largest even index below it.
pub fn bernoulli(upto: usize) -> Result<Vec<f64>> {
    if !(2..=MAX_INDEX).contains(&upto) {
        return Err(Error::domain(format!("bernoulli index {upto} outside 2..={MAX_INDEX}")));
    }
    let table = bernoulli_table();
    Ok((2..=upto).step_by(2).map(|n| table[n]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exact rational Bernoulli numbers from the same recurrence, in i128.
    fn exact_bernoulli(n_max: usize) -> Vec<(i128, i128)> {
        fn gcd(a: i128, b: i128) -> i128 {
            if b == 0 {
                a.abs()
            } else {
                gcd(b, a % b)
            }
        }
        fn binom(n: i128, k: i128) -> i128 {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        let mut out: Vec<(i128, i128)> = vec![(1, 1)];
        for n in 1..=n_max {
            let (mut num, mut den) = (0i128, 1i128);
            for (k, &(bn, bd)) in out.iter().enumerate() {
                let c = binom(n as i128 + 1, k as i128);
                num = num * bd + c * bn * den;
                den *= bd;
                let g = gcd(num, den);
                num /= g;
                den /= g;
            }
            let (mut num, mut den) = (-num, den * (n as i128 + 1));
            let g = gcd(num, den);
            num /= g;
            den /= g;
            if den < 0 {
                num = -num;
                den = -den;
            }
            out.push((num, den));
        }
        out
    }

    #[test]
    fn leading_values() {
        let b = bernoulli(12).unwrap();
        assert_eq!(b.len(), 6);
        assert!((b[0] - 1.0 / 6.0).abs() < 1e-16);
        assert!((b[1] + 1.0 / 30.0).abs() < 1e-16);
        assert!((b[5] + 691.0 / 2730.0).abs() < 1e-15);
    }

    #[test]
    fn agrees_with_exact_rational_recurrence() {
        let exact = exact_bernoulli(24);
        let b = bernoulli_table();
        for n in (2..=24).step_by(2) {
            let (num, den) = exact[n];
            let want = num as f64 / den as f64;
            assert!(((b[n] - want) / want).abs() < 1e-14, "B_{n}: {} vs {want}", b[n]);
        }
        assert_eq!(exact[12], (-691, 2730));
    }

    #[test]
    fn magnitudes_grow_beyond_index_thirty() {
        let b = bernoulli(60).unwrap();
        for pair in b.windows(2).skip(3) {
            assert!(pair[1].abs() > pair[0].abs());
            assert!(pair[1].signum() == -pair[0].signum());
        }
    }

    #[test]
    fn rejects_out_of_range_index() {
        assert!(bernoulli(0).is_err());
        assert!(bernoulli(62).is_err());
        assert_eq!(bernoulli(5).unwrap().len(), 2);
    }
}
