//! `wedge` command-line driver: single solves, angle sweeps and verification.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use wedge::io::{self, AmplitudeSample, LineSummary};
use wedge::{
    face_traction, rayleigh_coefficients, solve, verify, Complex64, ContourOptions, Thresholds, Wave,
    WedgeError, WedgeProblem,
};

#[derive(Parser)]
#[command(name = "wedge", version, about = "Elastic wedge diffraction solver")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve one configuration and write its artifacts.
    Solve {
        #[command(flatten)]
        run: RunArgs,
        /// Number of amplitude samples along `Re ω = π/2`.
        #[arg(long, default_value_t = 81)]
        samples: usize,
        /// Also write face tractions at these `kr` (comma separated).
        #[arg(long, value_delimiter = ',')]
        traction_kr: Vec<f64>,
    },
    /// Rayleigh coefficients over a range of wedge angles.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
    },
    /// Run the self-consistency checks; exits nonzero if any fails.
    Verify {
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WaveArg {
    #[value(name = "P", alias = "p")]
    P,
    #[value(name = "S", alias = "s")]
    S,
    #[value(alias = "R")]
    Rayleigh,
}

#[derive(Clone, Copy, ValueEnum)]
enum SigmaArg {
    Standard,
    Soft,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Flat `key = value` file; flags given on the command line override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Full wedge angle 2α in degrees.
    #[arg(long)]
    angle: Option<f64>,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long, value_enum)]
    incidence: Option<WaveArg>,
    /// Incidence angle in degrees (P and S only).
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long = "mesh-h")]
    mesh_h: Option<f64>,
    #[arg(long = "mesh-T")]
    mesh_t: Option<f64>,
    #[arg(long, value_enum)]
    sigma: Option<SigmaArg>,
    #[arg(long)]
    beta: Option<f64>,
    /// Take singular-part poles from the doubled strip.
    #[arg(long)]
    widen: bool,
    /// Output directory (solve) or file (sweep, verify); stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, hide = true)]
    c1_zero: bool,
}

impl RunArgs {
    fn problem(&self) -> Result<WedgeProblem, WedgeError> {
        let mut p = WedgeProblem::rayleigh(150.0, 0.25);
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path)?;
            io::apply_config(&mut p, &io::parse_config(&text)?)?;
        }
        let mut over = std::collections::BTreeMap::new();
        let mut set = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                over.insert(k.to_string(), v);
            }
        };
        set("angle", self.angle.map(|v| v.to_string()));
        set("nu", self.nu.map(|v| v.to_string()));
        set(
            "incidence",
            self.incidence.map(|w| match w {
                WaveArg::P => "P".into(),
                WaveArg::S => "S".into(),
                WaveArg::Rayleigh => "rayleigh".into(),
            }),
        );
        set("theta", self.theta.map(|v| v.to_string()));
        set("mesh_h", self.mesh_h.map(|v| v.to_string()));
        set("mesh_t", self.mesh_t.map(|v| v.to_string()));
        set(
            "sigma",
            self.sigma.map(|s| match s {
                SigmaArg::Standard => "standard".into(),
                SigmaArg::Soft => "soft".into(),
            }),
        );
        set("beta", self.beta.map(|v| v.to_string()));
        if self.widen {
            set("widen", Some("true".into()));
        }
        io::apply_config(&mut p, &over)?;
        p.c1_zero |= self.c1_zero;
        check_angle(p.angle_deg)?;
        p.validate()?;
        Ok(p)
    }
}

fn check_angle(a: f64) -> Result<(), WedgeError> {
    if a >= 180.0 {
        return Err(WedgeError::Config(format!(
            "wedge angle {a}° rejected: the method requires 2α < 180° (α < π/2)"
        )));
    }
    if !(40.0..=178.0).contains(&a) {
        eprintln!("warning: wedge angle {a}° is outside the validated range 40°–178°");
    }
    Ok(())
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), WedgeError> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn write_file(dir: &Path, name: &str, text: &str) -> Result<(), WedgeError> {
    fs::write(dir.join(name), text)?;
    Ok(())
}

fn cmd_solve(run: &RunArgs, samples: usize, traction_kr: &[f64]) -> Result<(), WedgeError> {
    let p = run.problem()?;
    let sol = solve(&p)?;
    let report = verify(&sol, &Thresholds::default())?;
    let coeffs = match p.incidence.wave {
        Wave::Rayleigh => Some(rayleigh_coefficients(&sol)?),
        _ => None,
    };
    let summary = serde_json::json!({
        "problem": &p,
        "parts": sol.parts.iter().map(|a| LineSummary::from(&a.sol)).collect::<Vec<_>>(),
        "coefficients": coeffs,
        "verification_passed": report.passed(),
    });
    let Some(dir) = &run.out else {
        return emit(None, &(io::to_json(&summary)? + "\n"));
    };
    fs::create_dir_all(dir)?;
    write_file(dir, "summary.json", &io::to_json(&summary)?)?;
    write_file(dir, "verification.json", &io::to_json(&report)?)?;
    if let Some(c) = &coeffs {
        write_file(dir, "coefficients.json", &io::to_json(c)?)?;
    }
    for a in &sol.parts {
        let tag = if a.sym.sign() > 0.0 { "plus" } else { "minus" };
        write_file(dir, &format!("poles_{tag}.json"), &io::to_json(&a.poles)?)?;
        match run.format {
            Format::Json => write_file(dir, &format!("line_{tag}.json"), &io::to_json(&a.sol)?)?,
            Format::Csv => io::write_line_csv(&a.sol, fs::File::create(dir.join(format!("line_{tag}.csv")))?)?,
        }
    }
    let pts: Vec<Complex64> = (0..samples)
        .map(|k| {
            let y = if samples > 1 { -4.0 + 8.0 * k as f64 / (samples - 1) as f64 } else { 0.0 };
            Complex64::new(PI / 2.0, y)
        })
        .collect();
    let amp: Vec<AmplitudeSample> = io::sample_amplitudes(&sol, &pts)?;
    match run.format {
        Format::Json => write_file(dir, "amplitudes.json", &io::to_json(&amp)?)?,
        Format::Csv => io::write_rows_csv(&amp, &io::AMPLITUDE_HEADER, fs::File::create(dir.join("amplitudes.csv"))?)?,
    }
    if !traction_kr.is_empty() {
        let t = face_traction(&sol, traction_kr, &ContourOptions::default())?;
        write_file(dir, "traction.json", &io::to_json(&t)?)?;
    }
    eprintln!("wrote artifacts to {}", dir.display());
    Ok(())
}

fn cmd_sweep(run: &RunArgs, from: f64, to: f64, step: f64) -> Result<(), WedgeError> {
    let angles = io::angle_range(from, to, step)?;
    let base = if angles.is_empty() {
        WedgeProblem::rayleigh(150.0, 0.25)
    } else {
        let mut r = RunArgs { angle: Some(angles[0]), ..run.clone() };
        r.incidence = Some(WaveArg::Rayleigh);
        r.problem()?
    };
    for &a in &angles {
        check_angle(a)?;
    }
    let rows: Vec<io::SweepRow> = angles.par_iter().map(|&a| io::sweep_row(&base, a)).collect();
    for r in rows.iter().filter(|r| !r.error.is_empty()) {
        eprintln!("warning: {}°: {}", r.angle_deg, r.error);
    }
    let text = match run.format {
        Format::Csv => {
            let mut buf = Vec::new();
            io::write_rows_csv(&rows, &io::SWEEP_HEADER, &mut buf)?;
            String::from_utf8(buf).expect("csv is utf-8")
        }
        Format::Json => io::to_json(&rows)? + "\n",
    };
    emit(run.out.as_deref(), &text)
}

fn cmd_verify(run: &RunArgs) -> Result<bool, WedgeError> {
    let p = run.problem()?;
    let report = verify(&solve(&p)?, &Thresholds::default())?;
    for c in &report.checks {
        eprintln!(
            "{} {:<40} {:.3e} (≤ {:.1e})",
            if c.pass { "ok  " } else { "FAIL" },
            c.name,
            c.value,
            c.threshold
        );
    }
    emit(run.out.as_deref(), &(io::to_json(&report)? + "\n"))?;
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Solve { run, samples, traction_kr } => cmd_solve(run, *samples, traction_kr).map(|_| true),
        Cmd::Sweep { run, from, to, step } => cmd_sweep(run, *from, *to, *step).map(|_| true),
        Cmd::Verify { run } => cmd_verify(run),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ (WedgeError::Config(_) | WedgeError::WedgeAngle(_) | WedgeError::IncidenceAngle(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
