use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Map, Value};
use zeta_kernels::acceptance;
use zeta_kernels::complex_special::Complex64;
use zeta_kernels::kernels::KernelId;
use zeta_kernels::reference::{bk_z0, find_zeros, hardy_z_ref, rs_corrected, rs_main, zeta_ref, ZMethod};
use zeta_kernels::series::{hardy_z_series, zeta, EvalOutcome};
use zeta_kernels::Result;

use crate::config::{Format, JobConfig, Method};
use crate::error::CliError;
use crate::output::{Cell, Table};
use crate::Command;

pub fn run(job: &JobConfig) -> Result<Table, CliError> {
    let mut table = match job.command {
        Command::Eval => eval(job)?,
        Command::Z => hardy_z(job)?,
        Command::Compare => compare(job)?,
        Command::Zeros => zeros(job)?,
        Command::Bench => bench(job)?,
        Command::Selftest => selftest(job),
    };
    let mut meta = common_meta(job);
    meta.append(&mut table.meta);
    table.meta = meta;
    Ok(table)
}

fn common_meta(job: &JobConfig) -> Map<String, Value> {
    let command = format!("{:?}", job.command).to_lowercase();
    let tau = match job.opts.tau {
        Some(t) => json!([t.re, t.im]),
        None => json!("auto"),
    };
    let mut meta = Map::new();
    meta.insert("command".into(), json!(command));
    meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    meta.insert("kernels".into(), json!(job.kernels.iter().map(|k| k.to_string()).collect::<Vec<_>>()));
    meta.insert("tau".into(), tau);
    meta.insert("rel_tol".into(), json!(job.opts.rel_tol));
    meta.insert("max_terms".into(), json!(job.opts.max_terms));
    meta.insert("quad_order".into(), json!(job.opts.quad_order));
    meta
}

/// Parallel map whose first failure (in input order) wins, so errors are as
/// deterministic as the rows.
fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> Result<U> + Sync + Send) -> Result<Vec<U>> {
    let results: Vec<Result<U>> = items.par_iter().map(f).collect();
    results.into_iter().collect()
}

fn converged(out: EvalOutcome) -> Result<EvalOutcome> {
    let out = out.require_converged()?;
    for w in &out.warnings {
        eprintln!("zk: warning: {w}");
    }
    Ok(out)
}

fn eval(job: &JobConfig) -> Result<Table, CliError> {
    let cases: Vec<(Complex64, KernelId)> =
        job.points.iter().flat_map(|&s| job.kernels.iter().map(move |&k| (s, k))).collect();
    let results = par_map(&cases, |&(s, k)| {
        let start = Instant::now();
        let out = converged(zeta(s, k, &job.opts)?)?;
        Ok((out, start.elapsed().as_nanos() as u64))
    })?;
    let mut table = Table::new(&[
        "s_re",
        "s_im",
        "zeta_re",
        "zeta_im",
        "kernel",
        "tau_re",
        "tau_im",
        "terms_first",
        "terms_second",
        "error_estimate",
        "elapsed_ns",
    ]);
    for ((s, k), (out, ns)) in cases.iter().zip(results) {
        table.rows.push(vec![
            s.re.into(),
            s.im.into(),
            out.value.re.into(),
            out.value.im.into(),
            k.to_string().into(),
            out.tau.re.into(),
            out.tau.im.into(),
            out.terms_first.into(),
            out.terms_second.into(),
            out.error_estimate.into(),
            ns.into(),
        ]);
    }
    Ok(table)
}

fn z_value(method: Method, t: f64, job: &JobConfig) -> Result<f64> {
    match method {
        Method::Ref => hardy_z_ref(t),
        Method::RsMain => Ok(rs_main(t)?.main_sum),
        Method::RsCorrected => rs_corrected(t),
        Method::Bk => bk_z0(t, job.bk_k, &job.opts),
        Method::Series(k) => {
            let z = hardy_z_series(t, k, &job.opts)?;
            converged(z.outcome)?;
            Ok(z.value)
        }
    }
}

fn hardy_z(job: &JobConfig) -> Result<Table, CliError> {
    let others: Vec<Method> = job.methods.iter().copied().filter(|m| *m != Method::Ref).collect();
    let rows = par_map(&job.heights, |&t| {
        let reference = hardy_z_ref(t)?;
        let values = job.methods.iter().map(|&m| z_value(m, t, job)).collect::<Result<Vec<f64>>>()?;
        let errors: Vec<f64> = job
            .methods
            .iter()
            .zip(&values)
            .filter(|(m, _)| **m != Method::Ref)
            .map(|(_, v)| (v - reference).abs())
            .collect();
        Ok((values, errors))
    })?;
    let mut columns = vec!["t".to_string()];
    columns.extend(job.methods.iter().map(|m| m.to_string()));
    columns.extend(others.iter().map(|m| format!("err_{m}")));
    let mut table = Table { columns, ..Table::default() };
    for (t, (values, errors)) in job.heights.iter().zip(rows) {
        let mut row: Vec<Cell> = vec![(*t).into()];
        row.extend(values.into_iter().map(Cell::from));
        row.extend(errors.into_iter().map(Cell::from));
        table.rows.push(row);
    }
    table.meta.insert("methods".into(), json!(job.methods.iter().map(|m| m.to_string()).collect::<Vec<_>>()));
    table.meta.insert("K".into(), json!(job.bk_k));
    Ok(table)
}

fn compare(job: &JobConfig) -> Result<Table, CliError> {
    let cases: Vec<(KernelId, Complex64)> = job
        .kernels
        .iter()
        .flat_map(|&k| {
            job.sigmas.iter().flat_map(move |&x| job.heights.iter().map(move |&y| (k, Complex64::new(x, y))))
        })
        .collect();
    let results = par_map(&cases, |&(k, s)| {
        let want = zeta_ref(s)?;
        let out = converged(zeta(s, k, &job.opts)?)?;
        Ok(((out.value - want).norm() / want.norm(), out))
    })?;
    let mut table =
        Table::new(&["kernel", "s_re", "s_im", "rel_error", "error_estimate", "terms_first", "terms_second"]);
    let mut worst: BTreeMap<String, f64> = BTreeMap::new();
    for ((k, s), (rel, out)) in cases.iter().zip(results) {
        let name = k.to_string();
        let entry = worst.entry(name.clone()).or_insert(0.0);
        *entry = entry.max(rel);
        table.rows.push(vec![
            name.into(),
            s.re.into(),
            s.im.into(),
            rel.into(),
            out.error_estimate.into(),
            out.terms_first.into(),
            out.terms_second.into(),
        ]);
    }
    for (name, w) in &worst {
        table.notes.push(format!("max relative error {name}: {w:.3e}"));
    }
    table.meta.insert("max_rel_error".into(), json!(worst));
    Ok(table)
}

fn zeros(job: &JobConfig) -> Result<Table, CliError> {
    let (lo, hi, step) = job.range.expect("checked in JobConfig::build");
    let method = match job.methods[0] {
        Method::Series(kernel) => ZMethod::Series { kernel, opts: job.opts },
        _ => ZMethod::Reference,
    };
    let found = find_zeros(lo, hi, step, method)?;
    let mut table = Table::new(&["index", "t"]);
    for (j, t) in found.iter().enumerate() {
        table.rows.push(vec![(j + 1).into(), (*t).into()]);
    }
    table.notes.push(format!("{} zeros on [{lo}, {hi}]", found.len()));
    table.meta.insert("method".into(), json!(job.methods[0].to_string()));
    table.meta.insert("range".into(), json!([lo, hi, step]));
    table.meta.insert("count".into(), json!(found.len()));
    Ok(table)
}

fn bench(job: &JobConfig) -> Result<Table, CliError> {
    let mut table = Table::new(&["kernel", "s_re", "s_im", "reps", "median_ns", "p95_ns"]);
    for &k in &job.kernels {
        for &s in &job.points {
            let mut times = Vec::with_capacity(job.reps);
            for _ in 0..job.reps {
                let start = Instant::now();
                let out = zeta(s, k, &job.opts)?;
                times.push(start.elapsed().as_nanos() as u64);
                std::hint::black_box(out);
            }
            times.sort_unstable();
            let median = times[times.len() / 2];
            let p95 = times[((0.95 * times.len() as f64).ceil() as usize).clamp(1, times.len()) - 1];
            table.rows.push(vec![
                k.to_string().into(),
                s.re.into(),
                s.im.into(),
                job.reps.into(),
                median.into(),
                p95.into(),
            ]);
        }
    }
    table.meta.insert("reps".into(), json!(job.reps));
    Ok(table)
}

fn selftest(job: &JobConfig) -> Table {
    let reports = acceptance::run_all();
    let failed = reports.iter().filter(|r| !r.passed).count();
    let mut table = if job.format == Format::Text {
        Table::default()
    } else {
        let mut t = Table::new(&["id", "name", "passed", "seconds", "detail"]);
        for r in &reports {
            t.rows.push(vec![
                r.id.into(),
                r.name.to_string().into(),
                r.passed.into(),
                r.seconds.into(),
                r.detail.clone().into(),
            ]);
        }
        t
    };
    table.notes.extend(reports.iter().map(|r| r.to_string()));
    table.notes.push(format!("selftest: {} passed, {failed} failed", reports.len() - failed));
    table.meta.insert("failed".into(), json!(failed));
    if failed > 0 {
        table.failed = Some(failed);
    }
    table
}
