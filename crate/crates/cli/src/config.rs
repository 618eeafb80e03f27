//! Flat `key=value` settings and their conversion into a checked job.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use zeta_kernels::complex_special::Complex64;
use zeta_kernels::kernels::KernelId;
use zeta_kernels::series::SeriesOptions;

use crate::error::{usage, CliError};
use crate::{Command, Flags};

const KEYS: [&str; 20] = [
    "s",
    "t",
    "sigma",
    "kernels",
    "kernel",
    "tau",
    "K",
    "alpha",
    "r",
    "tol",
    "max-terms",
    "quad-order",
    "methods",
    "method",
    "range",
    "step",
    "reps",
    "threads",
    "format",
    "out",
];

/// Raw settings: config-file values, then flag values on top.
#[derive(Debug, Default, Clone)]
pub struct Settings(BTreeMap<String, String>);

impl Settings {
    pub fn from_file(path: &str) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
        Self::parse(&text).map_err(|e| usage(format!("{path}: {e}")))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut map = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(format!("line {}: expected key=value", n + 1))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(format!("line {}: unknown key '{key}'", n + 1));
            }
            let key = match key {
                "kernel" => "kernels",
                "method" => "methods",
                k => k,
            };
            map.insert(key.to_string(), value.trim().to_string());
        }
        Ok(Settings(map))
    }

    pub fn overlay(&mut self, flags: &Flags) {
        let pairs = [
            ("s", &flags.s),
            ("t", &flags.t),
            ("sigma", &flags.sigma),
            ("kernels", &flags.kernels),
            ("tau", &flags.tau),
            ("K", &flags.k),
            ("alpha", &flags.alpha),
            ("r", &flags.r),
            ("tol", &flags.tol),
            ("max-terms", &flags.max_terms),
            ("quad-order", &flags.quad_order),
            ("methods", &flags.methods),
            ("range", &flags.range),
            ("step", &flags.step),
            ("reps", &flags.reps),
            ("threads", &flags.threads),
            ("format", &flags.format),
            ("out", &flags.out),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                self.0.insert(key.to_string(), v.clone());
            }
        }
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A way of computing `Z(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Ref,
    RsMain,
    RsCorrected,
    Bk,
    Series(KernelId),
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Ref => write!(f, "ref"),
            Method::RsMain => write!(f, "rs-main"),
            Method::RsCorrected => write!(f, "rs-corrected"),
            Method::Bk => write!(f, "bk"),
            Method::Series(k) => write!(f, "series:{k}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct JobConfig {
    pub command: Command,
    pub points: Vec<Complex64>,
    pub sigmas: Vec<f64>,
    pub heights: Vec<f64>,
    pub kernels: Vec<KernelId>,
    pub opts: SeriesOptions,
    pub bk_k: f64,
    pub methods: Vec<Method>,
    pub range: Option<(f64, f64, f64)>,
    pub reps: usize,
    pub threads: Option<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl JobConfig {
    pub fn build(command: Command, st: &Settings) -> Result<Self, CliError> {
        let format = match st.get("format").unwrap_or("text") {
            "json" => Format::Json,
            "csv" => Format::Csv,
            "text" => Format::Text,
            other => return Err(usage(format!("format must be json, csv or text, got '{other}'"))),
        };
        let alpha = st.get("alpha").map(|a| number("alpha", a)).transpose()?;
        let ratio = st.get("r").map(parse_ratio).transpose()?;
        let kernels = parse_kernels(st.get("kernels").unwrap_or("gamma"), alpha, ratio)?;

        let tau = match st.get("tau") {
            None | Some("auto") => None,
            Some(text) => Some(parse_complex(text)?),
        };
        let mut opts = SeriesOptions { tau, ..SeriesOptions::default() };
        if let Some(v) = st.get("tol") {
            opts.rel_tol = number("tol", v)?;
        }
        if let Some(v) = st.get("max-terms") {
            opts.max_terms = count("max-terms", v)?;
        }
        if let Some(v) = st.get("quad-order") {
            opts.quad_order = count("quad-order", v)?;
        }
        opts.validate().map_err(usage)?;

        let sigmas = match st.get("sigma") {
            Some(text) => parse_reals("sigma", text)?,
            None => vec![0.5],
        };
        let heights = match st.get("t") {
            Some(text) => parse_reals("t", text)?,
            None => Vec::new(),
        };
        let points = match st.get("s") {
            Some(text) => text.split(';').map(parse_complex).collect::<Result<Vec<_>, _>>()?,
            None => sigmas.iter().flat_map(|&x| heights.iter().map(move |&y| Complex64::new(x, y))).collect(),
        };
        let methods = match st.get("methods") {
            Some(text) => parse_methods(text)?,
            None => vec![Method::Ref],
        };
        let bk_k = st.get("K").map(|v| number("K", v)).transpose()?.unwrap_or(4.0);
        let reps = st.get("reps").map(|v| count("reps", v)).transpose()?.unwrap_or(21);
        let threads = st.get("threads").map(|v| count("threads", v)).transpose()?;
        if threads == Some(0) || reps == 0 {
            return Err(usage("threads and reps must be positive"));
        }
        let step = st.get("step").map(|v| number("step", v)).transpose()?;
        let range = st.get("range").map(|v| parse_interval(v, step)).transpose()?;

        let job = JobConfig {
            command,
            points,
            sigmas,
            heights,
            kernels,
            opts,
            bk_k,
            methods,
            range,
            reps,
            threads,
            format,
            out: st.get("out").map(PathBuf::from),
        };
        job.check()?;
        Ok(job)
    }

    fn check(&self) -> Result<(), CliError> {
        match self.command {
            Command::Eval | Command::Bench if self.points.is_empty() => Err(usage("needs --s or --t")),
            Command::Z | Command::Compare if self.heights.is_empty() => Err(usage("needs --t")),
            Command::Zeros if self.range.is_none() => Err(usage("needs --range min:max[:step]")),
            Command::Zeros if self.methods.len() != 1 => Err(usage("zeros takes a single method")),
            Command::Zeros if matches!(self.methods[0], Method::RsMain | Method::RsCorrected | Method::Bk) => {
                Err(usage("zeros supports ref and series:<kernel>"))
            }
            _ => Ok(()),
        }
    }
}

fn number(key: &str, text: &str) -> Result<f64, CliError> {
    let v: f64 = text.trim().parse().map_err(|_| usage(format!("{key}: '{text}' is not a number")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(usage(format!("{key} must be finite")))
    }
}

fn count(key: &str, text: &str) -> Result<usize, CliError> {
    text.trim().parse().map_err(|_| usage(format!("{key}: '{text}' is not a non-negative integer")))
}

/// `re,im` or a bare real.
pub fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    match text.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(number("re", re)?, number("im", im)?)),
        None => Ok(Complex64::new(number("re", text)?, 0.0)),
    }
}

/// A value, a comma list or `min:max:step` (inclusive of `max` up to rounding).
pub fn parse_reals(key: &str, text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let values = match parts.as_slice() {
        [lo, hi, step] => {
            let (lo, hi, step) = (number(key, lo)?, number(key, hi)?, number(key, step)?);
            if !(step > 0.0) || hi < lo {
                return Err(usage(format!("{key}: range needs min <= max and step > 0")));
            }
            let n = ((hi - lo) / step + 1e-9).floor() as usize;
            (0..=n).map(|j| lo + j as f64 * step).collect()
        }
        [single] => single.split(',').map(|v| number(key, v)).collect::<Result<Vec<_>, _>>()?,
        _ => return Err(usage(format!("{key}: expected a value, a list or min:max:step"))),
    };
    if values.is_empty() {
        return Err(usage(format!("{key}: empty range")));
    }
    Ok(values)
}

fn parse_interval(text: &str, step: Option<f64>) -> Result<(f64, f64, f64), CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let (lo, hi, inline) = match parts.as_slice() {
        [lo, hi] => (number("range", lo)?, number("range", hi)?, None),
        [lo, hi, st] => (number("range", lo)?, number("range", hi)?, Some(number("range", st)?)),
        _ => return Err(usage("range: expected min:max[:step]")),
    };
    let step = inline.or(step).unwrap_or(0.1);
    if !(lo < hi) || !(step > 0.0) {
        return Err(usage("range needs min < max and step > 0"));
    }
    Ok((lo, hi, step))
}

fn parse_ratio(text: &str) -> Result<(u32, u32), CliError> {
    let bad = || usage(format!("r: expected p/q with positive integers, got '{text}'"));
    let (p, q) = text.split_once('/').ok_or_else(bad)?;
    Ok((p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?))
}

fn parse_kernel(name: &str, alpha: Option<f64>, ratio: Option<(u32, u32)>) -> Result<KernelId, CliError> {
    let name = name.trim();
    match (name, alpha, ratio) {
        ("gauss", Some(a), _) => KernelId::gauss(a),
        ("rational-trig", _, Some((p, q))) => KernelId::rational_trig(p, q),
        _ => name.parse(),
    }
    .map_err(usage)
}

fn parse_kernels(text: &str, alpha: Option<f64>, ratio: Option<(u32, u32)>) -> Result<Vec<KernelId>, CliError> {
    text.split(',').map(|name| parse_kernel(name, alpha, ratio)).collect()
}

fn parse_methods(text: &str) -> Result<Vec<Method>, CliError> {
    text.split(',')
        .map(|m| match m.trim() {
            "ref" => Ok(Method::Ref),
            "rs-main" => Ok(Method::RsMain),
            "rs-corrected" => Ok(Method::RsCorrected),
            "bk" => Ok(Method::Bk),
            other => match other.strip_prefix("series:") {
                Some(k) => Ok(Method::Series(parse_kernel(k, None, None)?)),
                None => Err(usage(format!("unknown method '{other}'"))),
            },
        })
        .collect()
}
