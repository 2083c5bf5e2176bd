//! CSV/JSON export and the flat `key = value` run configuration.

use crate::error::{Result, WedgeError};
use crate::poles::{Incidence, Wave};
use crate::problem::{SigmaChoice, Solution, WedgeProblem};
use crate::solver::LineSolution;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Write;

/// Line functions as CSV: `eta` then real and imaginary columns.
pub fn write_line_csv<W: Write>(sol: &LineSolution, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let cols: [(&str, &[C64]); 7] = [
        ("x", &sol.x),
        ("y", &sol.y),
        ("u", &sol.u),
        ("r1", &sol.rhs.r1),
        ("r2", &sol.rhs.r2),
        ("q0", &sol.rhs.q0),
        ("q1", &sol.rhs.q1),
    ];
    let mut head = vec!["eta".to_string()];
    for (n, _) in &cols {
        head.push(format!("re_{n}"));
        head.push(format!("im_{n}"));
    }
    w.write_record(&head)?;
    for (k, e) in sol.eta.iter().enumerate() {
        let mut row = vec![e.to_string()];
        for (_, v) in &cols {
            row.push(v[k].re.to_string());
            row.push(v[k].im.to_string());
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Read back the `eta` column and one complex column of a line CSV.
pub fn read_line_column<R: std::io::Read>(input: R, name: &str) -> Result<(Vec<f64>, Vec<C64>)> {
    let mut r = csv::Reader::from_reader(input);
    let head = r.headers()?.clone();
    let find = |c: &str| {
        head.iter()
            .position(|h| h == c)
            .ok_or_else(|| WedgeError::Config(format!("missing column {c}")))
    };
    let (ie, ir, ii) = (find("eta")?, find(&format!("re_{name}"))?, find(&format!("im_{name}"))?);
    let (mut eta, mut val) = (Vec::new(), Vec::new());
    for rec in r.records() {
        let rec = rec?;
        let num = |i: usize| -> Result<f64> {
            rec[i]
                .parse()
                .map_err(|_| WedgeError::Config(format!("bad number {}", &rec[i])))
        };
        eta.push(num(ie)?);
        val.push(C64::new(num(ir)?, num(ii)?));
    }
    Ok((eta, val))
}

/// Scalar summary of a line solution for JSON export.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LineSummary {
    pub sym: String,
    pub h: f64,
    pub t: f64,
    pub nodes: usize,
    pub c1: C64,
    pub lambda: [C64; 2],
    pub residual: f64,
    pub c1_forced: bool,
}

impl From<&LineSolution> for LineSummary {
    fn from(s: &LineSolution) -> Self {
        LineSummary {
            sym: s.sym.label().to_string(),
            h: s.mesh.h,
            t: s.mesh.t(),
            nodes: s.eta.len(),
            c1: s.c1,
            lambda: s.lambda,
            residual: s.residual,
            c1_forced: s.c1_forced,
        }
    }
}

/// One amplitude sample `(ω, Φ₀(ω), Φ₁(ω))`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct AmplitudeSample {
    pub re_w: f64,
    pub im_w: f64,
    pub re_phi0: f64,
    pub im_phi0: f64,
    pub re_phi1: f64,
    pub im_phi1: f64,
}

pub fn sample_amplitudes(sol: &Solution, points: &[C64]) -> Result<Vec<AmplitudeSample>> {
    points
        .iter()
        .map(|&w| {
            let (a, b) = (sol.value(0, w)?, sol.value(1, w)?);
            Ok(AmplitudeSample {
                re_w: w.re,
                im_w: w.im,
                re_phi0: a.re,
                im_phi0: a.im,
                re_phi1: b.re,
                im_phi1: b.im,
            })
        })
        .collect()
}

/// Serialize rows with a header; an empty slice still writes the header.
pub fn write_rows_csv<W: Write, T: Serialize>(rows: &[T], header: &[&str], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub const AMPLITUDE_HEADER: [&str; 6] = ["re_w", "im_w", "re_phi0", "im_phi0", "re_phi1", "im_phi1"];

/// One row of a Rayleigh coefficient sweep. A failed solve leaves the numeric
/// columns empty and fills `error`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub angle_deg: f64,
    pub ref_abs: Option<f64>,
    pub ref_arg_deg: Option<f64>,
    pub tran_abs: Option<f64>,
    pub tran_arg_deg: Option<f64>,
    pub re_c1_plus: Option<f64>,
    pub im_c1_plus: Option<f64>,
    pub re_c1_minus: Option<f64>,
    pub im_c1_minus: Option<f64>,
    pub lambda0_plus: Option<f64>,
    pub lambda0_minus: Option<f64>,
    pub residual: Option<f64>,
    pub error: String,
}

pub const SWEEP_HEADER: [&str; 13] = [
    "angle_deg",
    "ref_abs",
    "ref_arg_deg",
    "tran_abs",
    "tran_arg_deg",
    "re_c1_plus",
    "im_c1_plus",
    "re_c1_minus",
    "im_c1_minus",
    "lambda0_plus",
    "lambda0_minus",
    "residual",
    "error",
];

/// Solve the Rayleigh problem for `p` with its angle set to `angle_deg`.
pub fn sweep_row(p: &WedgeProblem, angle_deg: f64) -> SweepRow {
    let mut p = p.clone();
    p.angle_deg = angle_deg;
    p.incidence = Incidence {
        wave: Wave::Rayleigh,
        theta_inc: 0.0,
    };
    let run = || -> Result<SweepRow> {
        let sol = crate::problem::solve(&p)?;
        let c = crate::coefficients::rayleigh_coefficients(&sol)?;
        let part = |s| sol.part(s).map(|a| &a.sol);
        let (pl, mi) = (
            part(crate::special::Symmetry::Plus),
            part(crate::special::Symmetry::Minus),
        );
        Ok(SweepRow {
            angle_deg,
            ref_abs: Some(c.ref_abs),
            ref_arg_deg: Some(c.ref_arg_deg),
            tran_abs: Some(c.tran_abs),
            tran_arg_deg: Some(c.tran_arg_deg),
            re_c1_plus: pl.map(|s| s.c1.re),
            im_c1_plus: pl.map(|s| s.c1.im),
            re_c1_minus: mi.map(|s| s.c1.re),
            im_c1_minus: mi.map(|s| s.c1.im),
            lambda0_plus: pl.map(|s| s.lambda[0].norm()),
            lambda0_minus: mi.map(|s| s.lambda[0].norm()),
            residual: sol.parts.iter().map(|a| a.sol.residual).reduce(f64::max),
            error: String::new(),
        })
    };
    run().unwrap_or_else(|e| SweepRow {
        angle_deg,
        error: e.to_string(),
        ..Default::default()
    })
}

/// Angles `from, from + step, …` up to `to` inclusive; empty when `to < from`.
pub fn angle_range(from: f64, to: f64, step: f64) -> Result<Vec<f64>> {
    if step.is_nan() || step <= 0.0 {
        return Err(WedgeError::Config(format!("sweep step must be positive, got {step}")));
    }
    if to < from {
        return Ok(Vec::new());
    }
    let n = ((to - from) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|k| from + k as f64 * step).collect())
}

pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

/// Parse `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| WedgeError::Config(format!("line {}: expected key = value", n + 1)))?;
        out.insert(k.trim().to_ascii_lowercase(), v.trim().to_string());
    }
    Ok(out)
}

fn num(key: &str, v: &str) -> Result<f64> {
    v.parse()
        .map_err(|_| WedgeError::Config(format!("{key}: not a number: {v}")))
}

pub fn parse_wave(v: &str) -> Result<Wave> {
    match v.to_ascii_lowercase().as_str() {
        "p" => Ok(Wave::P),
        "s" => Ok(Wave::S),
        "r" | "rayleigh" => Ok(Wave::Rayleigh),
        _ => Err(WedgeError::Config(format!("unknown incidence {v}"))),
    }
}

/// Apply configuration keys to a problem. Angles are in degrees.
pub fn apply_config(p: &mut WedgeProblem, cfg: &BTreeMap<String, String>) -> Result<()> {
    let mut beta = None;
    let mut soft = matches!(p.sigma, SigmaChoice::Soft(_));
    for (k, v) in cfg {
        match k.as_str() {
            "angle" => p.angle_deg = num(k, v)?,
            "nu" => p.nu = num(k, v)?,
            "incidence" => p.incidence.wave = parse_wave(v)?,
            "theta" => p.incidence.theta_inc = num(k, v)?.to_radians(),
            "mesh_h" | "h" => p.h = num(k, v)?,
            "mesh_t" | "t" => p.t = num(k, v)?,
            "mesh_l" => p.l = Some(num(k, v)?),
            "sigma" => {
                soft = match v.to_ascii_lowercase().as_str() {
                    "standard" => false,
                    "soft" => true,
                    _ => return Err(WedgeError::Config(format!("unknown sigma {v}"))),
                }
            }
            "beta" => beta = Some(num(k, v)?),
            "widen" => {
                p.widen = v
                    .parse()
                    .map_err(|_| WedgeError::Config(format!("widen: not a bool: {v}")))?
            }
            _ => return Err(WedgeError::Config(format!("unknown key {k}"))),
        }
    }
    if beta.is_some() && !soft {
        return Err(WedgeError::Config("beta given without sigma = soft".into()));
    }
    p.sigma = if soft {
        SigmaChoice::Soft(beta.or(match p.sigma {
            SigmaChoice::Soft(b) => b,
            SigmaChoice::Standard => None,
        }))
    } else {
        SigmaChoice::Standard
    };
    if p.incidence.wave == Wave::Rayleigh {
        p.incidence = Incidence {
            wave: Wave::Rayleigh,
            theta_inc: 0.0,
        };
    }
    Ok(())
}
