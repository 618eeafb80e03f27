use zeta_kernels::complex_special::{digamma, erfc, log_gamma, trigamma, upper_gamma, Complex64};

fn rows(name: &str) -> Vec<Vec<f64>> {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    text.lines().skip(1).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect()
}

fn rel(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm()
}

#[test]
fn upper_gamma_against_reference_grid() {
    let mut worst = (0.0, Complex64::default(), Complex64::default());
    for r in rows("upper_gamma.csv") {
        let (a, x) = (Complex64::new(r[0], r[1]), Complex64::new(r[2], r[3]));
        let want = Complex64::new(r[4], r[5]);
        let got = upper_gamma(a, x).unwrap_or_else(|e| panic!("a = {a}, x = {x}: {e}"));
        let err = rel(got, want);
        if err > worst.0 {
            worst = (err, a, x);
        }
    }
    println!("upper_gamma worst relative error {:.3e} at a = {}, x = {}", worst.0, worst.1, worst.2);
    assert!(worst.0 < 1e-12);
}

#[test]
fn erfc_against_reference_grid() {
    let mut worst: f64 = 0.0;
    for r in rows("erfc.csv") {
        let z = Complex64::new(r[0], r[1]);
        let err = rel(erfc(z), Complex64::new(r[2], r[3]));
        assert!(err < 1e-12, "z = {z}: {err:e}");
        worst = worst.max(err);
    }
    println!("erfc worst relative error {worst:.3e}");
}

#[test]
fn gamma_family_against_reference_grid() {
    let (mut lg_worst, mut psi_worst, mut psi1_worst) = (0.0f64, 0.0f64, 0.0f64);
    for r in rows("log_gamma.csv") {
        let z = Complex64::new(r[0], r[1]);
        let lg = log_gamma(z).unwrap();
        // relative to max(1, |lnGamma|): near the zeros of lnGamma only absolute accuracy is meaningful
        let want = Complex64::new(r[2], r[3]);
        let lg_err = (lg - want).norm() / want.norm().max(1.0);
        assert!(lg_err < 1e-13, "log_gamma({z}): {lg_err:e}");
        let psi_err = rel(digamma(z).unwrap(), Complex64::new(r[4], r[5]))
            .min((digamma(z).unwrap() - Complex64::new(r[4], r[5])).norm());
        assert!(psi_err < 1e-12, "digamma({z}): {psi_err:e}");
        let psi1_err = rel(trigamma(z).unwrap(), Complex64::new(r[6], r[7]));
        assert!(psi1_err < 1e-12, "trigamma({z}): {psi1_err:e}");
        lg_worst = lg_worst.max(lg_err);
        psi_worst = psi_worst.max(psi_err);
        psi1_worst = psi1_worst.max(psi1_err);
    }
    println!("log_gamma {lg_worst:.3e}, digamma {psi_worst:.3e}, trigamma {psi1_worst:.3e}");
}

#[test]
fn upper_gamma_at_large_orders() {
    let mut worst = (0.0, Complex64::default(), Complex64::default());
    let mut bad = 0;
    for r in rows("upper_gamma_large_order.csv") {
        let (a, x) = (Complex64::new(r[0], r[1]), Complex64::new(r[2], r[3]));
        let want = Complex64::new(r[4], r[5]);
        let got = upper_gamma(a, x).unwrap_or_else(|e| panic!("a = {a}, x = {x}: {e}"));
        let err = rel(got, want);
        if err > 1e-11 {
            bad += 1;
            if bad < 40 {
                println!("a = {a}, |x| = {:.3}, arg x = {:.4}: {err:.2e}", x.norm(), x.arg());
            }
        }
        if err > worst.0 {
            worst = (err, a, x);
        }
    }
    println!(
        "large orders: worst relative error {:.3e} at a = {}, x = {}; {bad} above 1e-11",
        worst.0, worst.1, worst.2
    );
    assert!(worst.0 < 1e-11);
}
