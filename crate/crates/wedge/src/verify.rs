//! Self-consistency checks of a solved problem.

use crate::error::Result;
use crate::field::Amplitude;
use crate::poles::Wave;
use crate::problem::Solution;
use crate::special::Symmetry;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Thresholds {
    /// Derivative jump across strip lines, relative to the amplitude scale.
    pub derivative_jump: f64,
    /// Value jump across strip lines, relative to the amplitude scale.
    pub value_jump: f64,
    pub nonphysical_residue: f64,
    pub parity: f64,
    pub realness: f64,
    /// Largest `|ũ(η)| e^{|η|}` on the free mesh relative to its value near `η = 0`.
    pub boundedness: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            derivative_jump: 1e-3,
            value_jump: 1e-3,
            nonphysical_residue: 1e-5,
            parity: 1e-4,
            realness: 1e-3,
            boundedness: 10.0,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn push(&mut self, name: String, value: f64, threshold: f64) {
        let pass = value.is_finite() && value <= threshold;
        self.checks.push(Check {
            name,
            value,
            threshold,
            pass,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn worst(&self, prefix: &str) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.name.starts_with(prefix))
            .map(|c| if c.value.is_finite() { c.value } else { f64::INFINITY })
            .fold(0.0, f64::max)
    }
}

pub const JUMP_ETAS: [f64; 4] = [-1.0, -0.5, 0.5, 1.0];
pub const JUMP_STEP: f64 = 1e-3;

/// Value and one-sided derivative jumps of `Φ_mode` across `Re ω = x0`.
pub fn jumps(amp: &Amplitude, mode: usize, x0: f64, eta: f64, d: f64) -> Result<(f64, f64)> {
    let z = C64::new(x0, eta);
    let inward = if x0 > PI / 2.0 { -1.0 } else { 1.0 };
    let eps = -1e-9 * inward;
    let fin: Vec<C64> = (0..3)
        .map(|k| amp.value(mode, z + inward * k as f64 * d))
        .collect::<Result<_>>()?;
    let fout: Vec<C64> = (0..3)
        .map(|k| amp.value(mode, z - inward * k as f64 * d + eps))
        .collect::<Result<_>>()?;
    let one_sided = |f: &[C64]| (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * d);
    let din = inward * one_sided(&fin);
    let dout = -inward * one_sided(&fout);
    Ok(((fin[0] - fout[0]).norm(), (din - dout).norm()))
}

fn parity_sign(sym: Symmetry, mode: usize) -> f64 {
    // +1 for odd functions (defect Φ(ω)+Φ(−ω)), −1 for even
    match (sym, mode) {
        (Symmetry::Plus, 0) | (Symmetry::Minus, 1) => 1.0,
        _ => -1.0,
    }
}

fn part_name(amp: &Amplitude, mode: usize) -> String {
    format!("Phi{}{}", mode, amp.sym.label())
}

pub fn verify(sol: &Solution, th: &Thresholds) -> Result<VerificationReport> {
    let mut rep = VerificationReport::default();
    for amp in &sol.parts {
        let (lo, hi) = amp.strip();
        let a = amp.alpha;
        let m = &amp.mat;
        // amplitude scale on the sampled lines
        let mut scale: f64 = 0.0;
        for &x in &[lo, PI / 2.0, hi] {
            for &e in &JUMP_ETAS {
                for mode in 0..2 {
                    scale = scale.max(amp.value(mode, C64::new(x, e))?.norm());
                }
            }
        }
        let scale = scale.max(1e-300);
        for mode in 0..2 {
            let name = part_name(amp, mode);
            let (mut vj, mut dj) = (0.0f64, 0.0f64);
            for &x0 in &[lo, hi] {
                for &e in &JUMP_ETAS {
                    let (v, d) = jumps(amp, mode, x0, e, JUMP_STEP)?;
                    vj = vj.max(v);
                    dj = dj.max(d);
                }
            }
            rep.push(format!("value_jump/{name}"), vj / scale, th.value_jump);
            rep.push(format!("derivative_jump/{name}"), dj / scale, th.derivative_jump);
        }
        // nonphysical Rayleigh poles coming in from infinity
        let ib = C64::new(0.0, m.beta_r);
        let gib = m.g(ib);
        let mut r: f64 = 0.0;
        let known = |mode: usize, z: C64| {
            amp.poles
                .poles
                .iter()
                .any(|p| p.mode == mode && (p.theta - z).norm() < 1e-6)
        };
        for sgn in [1.0, -1.0] {
            for (mode, z) in [(1, -a + sgn * ib), (0, -a + sgn * gib)] {
                if !known(mode, z) {
                    r = r.max(amp.residue_direct(mode, z, 0.05, 64)?.norm());
                }
            }
        }
        rep.push(format!("nonphysical_residue/{}", amp.sym.label()), r, th.nonphysical_residue);
        // parity about ω = 0
        for mode in 0..2 {
            let ps = parity_sign(amp.sym, mode);
            let mut defect: f64 = 0.0;
            for &x in &[PI / 2.0 - a / 2.0, PI / 2.0, PI / 2.0 + a / 2.0] {
                for &e in &[-0.4, 0.3, 0.8] {
                    let w = C64::new(x, e);
                    let v = amp.value_direct(mode, w)? + ps * amp.value_direct(mode, -w)?;
                    defect = defect.max(v.norm());
                }
            }
            rep.push(format!("parity/{}", part_name(amp, mode)), defect / scale, th.parity);
        }
        // boundedness of the regularised unknown against e^{-|η|}
        let t = amp.sol.mesh.t();
        let ratio: Vec<(f64, f64)> = amp
            .sol
            .eta
            .iter()
            .zip(&amp.sol.u)
            .filter(|(e, _)| e.abs() <= t + 1e-9)
            .map(|(&e, v)| (e, v.norm() * m.line_coeffs(e).d.sqrt() * e.abs().exp()))
            .collect();
        let core = ratio
            .iter()
            .filter(|(e, _)| e.abs() <= 1.0)
            .map(|r| r.1)
            .fold(0.0, f64::max)
            .max(1e-300);
        let worst = ratio.iter().map(|r| r.1).fold(0.0, f64::max);
        rep.push(format!("boundedness/{}", amp.sym.label()), worst / core, th.boundedness);
    }
    let inc = sol.problem.incidence;
    if inc.wave == Wave::P && inc.theta_inc == 0.0 {
        if let Some(amp) = sol.part(Symmetry::Plus) {
            let (lo, hi) = amp.strip();
            let (mut re, mut im) = (0.0f64, 0.0f64);
            for k in 0..=20 {
                let x = lo + 0.01 + (hi - lo - 0.02) * k as f64 / 20.0;
                for mode in 0..2 {
                    let v = amp.value(mode, C64::new(x, 0.0))?;
                    re = re.max(v.re.abs());
                    im = im.max(v.im.abs());
                }
            }
            rep.push("realness/bisectrix".into(), re / im.max(1e-300), th.realness);
        }
    }
    Ok(rep)
}
