use super::Complex64;
use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

fn kronrod15<F>(f: &mut F, a: f64, b: f64) -> Result<(Complex64, f64)>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx)? + f(center + dx)?;
        kronrod += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    Ok((kronrod * half, ((kronrod - gauss) * half).norm()))
}

/// Adaptive Gauss-Kronrod (7/15) integral of a complex function over
/// `[a, b]`, bisecting the interval with the largest error estimate until
/// the total estimate drops below `max(abs_tol, rel_tol * |integral|)`.
pub(crate) fn integrate_adaptive<F>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_intervals: usize,
) -> Result<(Complex64, f64)>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let (v, e) = kronrod15(&mut f, a, b)?;
    let mut pieces = vec![(a, b, v, e)];
    loop {
        let total: Complex64 = pieces.iter().map(|p| p.2).sum();
        let err: f64 = pieces.iter().map(|p| p.3).sum();
        if err <= abs_tol.max(rel_tol * total.norm()) {
            return Ok((total, err));
        }
        if pieces.len() >= max_intervals {
            return Err(Error::convergence(format!("adaptive quadrature stalled at error {err:.3e} on [{a}, {b}]")));
        }
        let (idx, _) = pieces.iter().enumerate().max_by(|x, y| x.1 .3.total_cmp(&y.1 .3)).expect("non-empty");
        let (lo, hi, _, _) = pieces.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = kronrod15(&mut f, lo, mid)?;
        let (v2, e2) = kronrod15(&mut f, mid, hi)?;
        pieces.push((lo, mid, v1, e1));
        pieces.push((mid, hi, v2, e2));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_oscillatory_exponential() {
        // int_0^10 e^{(-0.3 + 2i) u} du
        let k = Complex64::new(-0.3, 2.0);
        let (v, _) = integrate_adaptive(|u| Ok((k * u).exp()), 0.0, 10.0, 0.0, 1e-13, 500).unwrap();
        let want = ((k * 10.0).exp() - 1.0) / k;
        assert!((v - want).norm() < 1e-13);
    }

    #[test]
    fn gaussian_integral() {
        let (v, _) =
            integrate_adaptive(|u| Ok(Complex64::new((-u * u).exp(), 0.0)), -12.0, 12.0, 0.0, 1e-14, 500).unwrap();
        assert!((v.re - std::f64::consts::PI.sqrt()).abs() < 1e-14);
    }
}
