//! The acceptance criteria as runnable checks, shared by the test suite and
//! the `zk selftest` command.

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex_special::Complex64;
use crate::error::Result;
use crate::kernels::{
    self, growth_check, mellin_check, oddness_defect, rational_trig_quarter_closed_form, rational_trig_series,
    residue_defect, KernelId,
};
use crate::reference::{self, bk_z0, find_zeros, hardy_z_ref, rs_corrected, rs_main, zeta_em, zeta_ref, ZMethod};
use crate::series::{completed_zeta, paris_cang_z, zeta, SeriesOptions};

/// Outcome of one criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl std::fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<28} {:>7.3}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

pub const CRITERIA: [(usize, &str); 11] = [
    (1, "classical values"),
    (2, "oracle grid"),
    (3, "tau invariance"),
    (4, "functional equation"),
    (5, "mellin consistency"),
    (6, "kernel cross-consistency"),
    (7, "gabcke bound"),
    (8, "berry-keating vs main sum"),
    (9, "zeros on [10, 30]"),
    (10, "kernel hypotheses"),
    (11, "paris-cang limit"),
];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

/// Runs criterion `id` (1..=11).
pub fn run(id: usize) -> CriterionReport {
    let name = CRITERIA.iter().find(|(i, _)| *i == id).map(|(_, n)| *n).unwrap_or("unknown");
    let start = Instant::now();
    let outcome = match id {
        1 => classical_values(),
        2 => oracle_grid(),
        3 => tau_invariance(),
        4 => functional_equation(),
        5 => mellin_consistency(),
        6 => cross_consistency(),
        7 => gabcke_bound(),
        8 => berry_keating(),
        9 => zeros(),
        10 => kernel_hypotheses(),
        11 => paris_cang(),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let seconds = start.elapsed().as_secs_f64();
    let (mut passed, mut detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    let budget = match id {
        1 => Some(1.0),
        2 => Some(10.0),
        _ => None,
    };
    if let Some(limit) = budget {
        if seconds >= limit {
            passed = false;
            detail.push_str(&format!("; runtime {seconds:.2}s over {limit}s"));
        }
    }
    CriterionReport { id, name, passed, detail, seconds }
}

pub fn run_all() -> Vec<CriterionReport> {
    CRITERIA.iter().map(|(id, _)| run(*id)).collect()
}

type Outcome = Result<(bool, String)>;

fn classical_values() -> Outcome {
    let opts = SeriesOptions::with_tau(c(1.0, 0.0));
    let z2 = zeta(c(2.0, 0.0), KernelId::Gamma, &opts)?.value;
    let e2 = (z2 - PI * PI / 6.0).norm();
    let zm1 = zeta_em(c(-1.0, 0.0), reference::EM_DEFAULT_N, reference::EM_DEFAULT_M)?;
    let em1 = (zm1 + 1.0 / 12.0).norm();
    Ok((e2 < 1e-12 && em1 < 1e-12, format!("|zeta(2) - pi^2/6| = {e2:.1e}, |zeta_em(-1) + 1/12| = {em1:.1e}")))
}

fn oracle_grid() -> Outcome {
    let kernels =
        [KernelId::Gamma, KernelId::Trig, KernelId::RationalTrig { p: 1, q: 4 }, KernelId::Gauss { alpha: 0.01 }];
    let opts = SeriesOptions::default();
    let mut worst = (0.0f64, String::new());
    for sigma in [0.25, 0.5, 0.75, 1.5] {
        for t in [1.0, 5.0, 10.0, 30.0] {
            let s = c(sigma, t);
            let oracle = zeta_ref(s)?;
            for k in kernels {
                let v = zeta(s, k, &opts)?.require_converged()?.value;
                let e = rel(v, oracle);
                if e > worst.0 {
                    worst = (e, format!("{k} at {s}"));
                }
            }
        }
    }
    Ok((worst.0 < 1e-9, format!("64 points, worst relative error {:.1e} ({})", worst.0, worst.1)))
}

fn tau_invariance() -> Outcome {
    let s = c(0.5, 10.0);
    let taus = [c(1.0, 0.0), c(2.0, 0.0), c(0.5, 0.0), Complex64::from_polar(1.0, PI / 6.0)];
    let mut values = Vec::new();
    for tau in taus {
        values.push(zeta(s, KernelId::Gamma, &SeriesOptions::with_tau(tau))?.value);
    }
    let mut worst = 0.0f64;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            worst = worst.max(rel(values[i], values[j]));
        }
    }
    Ok((worst < 1e-9, format!("max pairwise relative deviation of zeta(0.5+10i) {worst:.1e}")))
}

fn functional_equation() -> Outcome {
    let points = [
        (0.2, 3.0),
        (0.35, -7.5),
        (0.5, 20.0),
        (0.6, 14.0),
        (0.8, -20.0),
        (0.1, 1.0),
        (0.9, 11.5),
        (0.45, -2.0),
        (0.7, 17.3),
        (0.3, 0.5),
    ];
    let kernels =
        [KernelId::Gamma, KernelId::Trig, KernelId::RationalTrig { p: 1, q: 4 }, KernelId::Gauss { alpha: 0.01 }];
    let mut worst_abs = 0.0f64;
    let mut worst_rel = 0.0f64;
    for (j, (sigma, t)) in points.into_iter().enumerate() {
        let k = kernels[j % kernels.len()];
        let s = c(sigma, t);
        let a = completed_zeta(s, k, &SeriesOptions::default())?.value;
        let b = completed_zeta(1.0 - s, k, &SeriesOptions::default())?.value;
        worst_abs = worst_abs.max((a - b).norm());
        worst_rel = worst_rel.max(rel(a, b));
    }
    Ok((worst_abs < 1e-9, format!("max |G(s) - G(1-s)| {worst_abs:.1e} (relative {worst_rel:.1e})")))
}

/// Three `s` values and, for each, three `w` inside the admissible band.
pub fn mellin_grid(k: KernelId) -> Vec<(Complex64, Complex64)> {
    let a = k.descriptor().a;
    let mut grid = Vec::new();
    for s in [c(0.3, 0.0), c(0.5, 2.0), c(1.2, 0.0)] {
        let lower = s.re.max(0.0) / 2.0;
        for (j, im) in [0.1, -0.2, 0.3].into_iter().enumerate() {
            let re = if a.is_finite() {
                let upper = (a + s.re) / 2.0;
                lower + [0.3, 0.5, 0.7][j] * (upper - lower)
            } else {
                lower + [0.3, 0.6, 0.9][j]
            };
            grid.push((s, c(re, im)));
        }
    }
    grid
}

fn mellin_consistency() -> Outcome {
    let mut worst = (0.0f64, String::new());
    for k in [KernelId::Gamma, KernelId::Trig, KernelId::RationalTrig { p: 1, q: 2 }] {
        for (s, w) in mellin_grid(k) {
            let r = mellin_check(k, s, w)?;
            if r > worst.0 {
                worst = (r, format!("{k}, s = {s}, w = {w}"));
            }
        }
    }
    Ok((worst.0 < 1e-6, format!("27 pairs, worst residual {:.1e} ({})", worst.0, worst.1)))
}

fn cross_consistency() -> Outcome {
    let opts = SeriesOptions::default();
    let half = KernelId::RationalTrig { p: 1, q: 2 };
    let mut trig_gap = 0.0f64;
    for (s, x) in [
        (c(0.3, 0.0), c(1.5, 0.0)),
        (c(0.5, 3.0), c(0.7, 0.2)),
        (c(-0.4, 1.0), c(4.0, -1.0)),
        (c(1.3, -2.0), c(25.0, 3.0)),
        (c(0.8, 0.0), c(0.05, 0.0)),
    ] {
        let a = kernels::h(half, s, x, &opts)?;
        let b = kernels::h(KernelId::Trig, s, x, &opts)?;
        trig_gap = trig_gap.max(rel(a, b));
    }
    let mut closed_gap = 0.0f64;
    for (s, x) in [
        (c(-0.3, 0.0), c(0.5, 0.0)),
        (c(-0.1, 0.0), c(1.2, 0.0)),
        (c(0.5, 4.0), c(0.8, 0.3)),
        (c(1.7, -1.5), c(2.0, 0.0)),
    ] {
        let a = rational_trig_series(1, 4, s, x)?;
        let b = rational_trig_quarter_closed_form(s, x)?;
        closed_gap = closed_gap.max(rel(a, b));
    }
    let (s, x) = (c(0.5, 0.0), c(2.0, 0.0));
    let target = kernels::h(KernelId::Gamma, s, x, &opts)?;
    let mut gauss_gaps = Vec::new();
    for alpha in [1e-2, 1e-3, 1e-4] {
        let v = kernels::h(KernelId::Gauss { alpha }, s, x, &opts)?;
        gauss_gaps.push((v - target).norm());
    }
    let decreasing = gauss_gaps.windows(2).all(|p| p[1] < p[0]);
    let passed = trig_gap < 1e-9 && closed_gap < 1e-10 && decreasing && gauss_gaps[2] < 5e-3;
    Ok((
        passed,
        format!(
            "r=1/2 vs trig {trig_gap:.1e}; quarter series vs 1F2 {closed_gap:.1e}; gauss->gamma gaps {:.1e} {:.1e} {:.1e}",
            gauss_gaps[0], gauss_gaps[1], gauss_gaps[2]
        ),
    ))
}

fn gabcke_bound() -> Outcome {
    let mut passed = true;
    let mut worst_ratio = 0.0f64;
    for t in [200.0, 300.0, 500.0, 1000.0, 5000.0] {
        let err = (rs_corrected(t)? - hardy_z_ref(t)?).abs();
        let bound = 0.127 * t.powf(-0.75);
        passed &= err <= bound;
        worst_ratio = worst_ratio.max(err / bound);
    }
    Ok((passed, format!("largest error / bound {worst_ratio:.3}")))
}

/// Largest jump of `f` across the points `2 pi k^2` where `N_t` increments.
fn jump_across_increments(f: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let mut worst = 0.0f64;
    for k in [3.0, 4.0, 5.0, 6.0] {
        let t = TAU * k * k;
        worst = worst.max((f(t + 1e-9)? - f(t - 1e-9)?).abs());
    }
    Ok(worst)
}

fn berry_keating() -> Outcome {
    let opts = SeriesOptions::default();
    let mut better = true;
    let mut ratios = Vec::new();
    for t in [100.0, 500.0, 1000.0] {
        let z = hardy_z_ref(t)?;
        let bk = (bk_z0(t, 4.0, &opts)? - z).abs();
        let rs = (rs_main(t)?.main_sum - z).abs();
        better &= bk < rs;
        ratios.push(bk / rs);
    }
    let bk_jump = jump_across_increments(|t| bk_z0(t, 4.0, &opts))?;
    let rs_jump = jump_across_increments(|t| Ok(rs_main(t)?.main_sum))?;
    let passed = better && bk_jump <= 1e-3 && rs_jump > 1e-3;
    Ok((
        passed,
        format!(
            "bk/rs error ratios {:.1e} {:.1e} {:.1e}; jumps bk {bk_jump:.1e}, main sum {rs_jump:.2}",
            ratios[0], ratios[1], ratios[2]
        ),
    ))
}

pub const FIRST_ZEROS: [f64; 3] = [14.134_725_141_734_693, 21.022_039_638_771_555, 25.010_857_580_145_69];

fn zeros() -> Outcome {
    let reference_zeros = find_zeros(10.0, 30.0, 0.1, ZMethod::Reference)?;
    let series = ZMethod::Series { kernel: KernelId::Gamma, opts: SeriesOptions::default() };
    let series_zeros = find_zeros(10.0, 30.0, 0.1, series)?;
    if reference_zeros.len() != 3 || series_zeros.len() != 3 {
        return Ok((
            false,
            format!("found {} (reference) and {} (series) zeros", reference_zeros.len(), series_zeros.len()),
        ));
    }
    let mut known = 0.0f64;
    let mut agree = 0.0f64;
    for j in 0..3 {
        known = known.max((reference_zeros[j] - FIRST_ZEROS[j]).abs()).max((series_zeros[j] - FIRST_ZEROS[j]).abs());
        agree = agree.max((reference_zeros[j] - series_zeros[j]).abs());
    }
    Ok((
        known < 1e-5 && agree < 1e-6,
        format!("3 zeros each; max offset from known {known:.1e}, between methods {agree:.1e}"),
    ))
}

/// `count` seeded random points in the strip of `k`, clear of its poles.
pub fn strip_points(k: KernelId, count: usize, seed: u64) -> Vec<Complex64> {
    let d = k.descriptor();
    let half_width = 0.99 * d.a.min(5.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(count);
    while points.len() < count {
        let z = c(rng.gen_range(-half_width..half_width), rng.gen_range(-20.0..20.0));
        if d.pole_spec.distance(z) > 1e-3 {
            points.push(z);
        }
    }
    points
}

fn kernel_hypotheses() -> Outcome {
    let mut passed = true;
    let mut lines = Vec::new();
    for k in [KernelId::Gamma, KernelId::Gauss { alpha: 0.01 }, KernelId::Trig, KernelId::RationalTrig { p: 1, q: 4 }] {
        let odd = oddness_defect(k, &strip_points(k, 500, 7))?;
        let res = residue_defect(k, 1e-4)?;
        let growth = growth_check(k)?;
        passed &= odd < 1e-14 && res < 1e-6 && growth.passed;
        lines.push(format!("{k}: odd {odd:.0e} res {res:.0e} growth {:.3}/{:.3}", growth.max_ratio, growth.constant));
    }
    Ok((passed, lines.join("; ")))
}

fn paris_cang() -> Outcome {
    let z = paris_cang_z(10.0, 0.05, &SeriesOptions::default())?;
    let want = hardy_z_ref(10.0)?;
    let err = (z - want).abs();
    Ok((err < 1e-6, format!("|Z_pc(10) - Z(10)| = {err:.1e}")))
}
