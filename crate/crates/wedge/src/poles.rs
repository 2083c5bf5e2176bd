//! Incident waves, the symmetric/antisymmetric split and the geometrical poles
//! generated by repeated reflection at the faces.

use crate::special::{Material, Symmetry};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::f64::consts::PI;

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Children with `|Δ(ω₀)|` below this are not generated.
pub const DELTA_ZERO: f64 = 1e-9;
/// Residues above this mark the table as unstable.
pub const BLOWUP: f64 = 1e6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Wave {
    P,
    S,
    Rayleigh,
}

/// Incident wave. For P and S the pole of the full amplitude sits at
/// `−theta_inc`; the Rayleigh wave travels along the face `θ = −α` towards the tip.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Incidence {
    pub wave: Wave,
    pub theta_inc: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Pole {
    pub mode: usize,
    pub theta: C64,
    pub residue: C64,
    pub lineage: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Sigma {
    Standard,
    Soft { beta: f64 },
}

impl Sigma {
    pub fn soft_default(alpha: f64) -> Self {
        Sigma::Soft { beta: PI / (6.0 * alpha) }
    }

    /// Kernel with a unit-residue pole at the origin.
    pub fn eval(&self, w: C64, alpha: f64) -> C64 {
        let c = match *self {
            Sigma::Standard => PI / (2.0 * alpha),
            Sigma::Soft { beta } => beta,
        };
        c / (c * w).sin()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PoleTable {
    pub sym: Symmetry,
    pub poles: Vec<Pole>,
    /// Real-part window of the poles used in the singular part.
    pub lo: f64,
    pub hi: f64,
    pub unstable: bool,
}

impl PoleTable {
    pub fn in_strip(&self) -> impl Iterator<Item = &Pole> {
        self.poles
            .iter()
            .filter(move |p| p.theta.re >= self.lo - 1e-12 && p.theta.re <= self.hi + 1e-12)
    }

    /// Singular part `Φ̂_mode(ω) = Σ Res σ(ω − θ)` over poles in the window.
    pub fn hat(&self, mode: usize, w: C64, sigma: Sigma, alpha: f64) -> C64 {
        self.in_strip()
            .filter(|p| p.mode == mode)
            .map(|p| p.residue * sigma.eval(w - p.theta, alpha))
            .sum()
    }

    /// Smallest distance from an in-window pole to the lines `Re ω = π/2 ± α`.
    pub fn boundary_gap(&self, alpha: f64) -> f64 {
        let (a, b) = (PI / 2.0 - alpha, PI / 2.0 + alpha);
        self.in_strip()
            .map(|p| (p.theta.re - a).abs().min((p.theta.re - b).abs()))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Poles of the full (unsplit) amplitudes carried by the incident wave.
pub fn seeds(mat: &Material, alpha: f64, inc: Incidence) -> Vec<Pole> {
    let unit = -1.0 / (2.0 * PI * I);
    match inc.wave {
        Wave::P => vec![Pole {
            mode: 0,
            theta: C64::new(-inc.theta_inc, 0.0),
            residue: unit,
            lineage: "P".into(),
        }],
        Wave::S => vec![Pole {
            mode: 1,
            theta: C64::new(-inc.theta_inc, 0.0),
            residue: unit,
            lineage: "S".into(),
        }],
        Wave::Rayleigh => {
            let ib = C64::new(0.0, mat.beta_r);
            vec![
                Pole {
                    mode: 0,
                    theta: alpha - mat.g(ib),
                    residue: C64::new(-2.0, 0.0),
                    lineage: "R".into(),
                },
                Pole {
                    mode: 1,
                    theta: alpha - ib,
                    residue: -2.0 * mat.rayleigh_phi10(),
                    lineage: "R".into(),
                },
            ]
        }
    }
}

/// Residue of the incident Rayleigh compressional pole, the normalisation of
/// the Rayleigh coefficients.
pub const RAYLEIGH_RHO: f64 = -2.0;

/// Parity part of full-amplitude poles: half the residue at `θ` plus a mirrored
/// half at `−θ`, signed `(−1)^i` for `+` and `(−1)^{i+1}` for `−`.
pub fn decompose(full: &[Pole], sym: Symmetry) -> Vec<Pole> {
    let mut out: Vec<Pole> = Vec::new();
    for p in full {
        let parity = if p.mode == 0 { 1.0 } else { -1.0 };
        let f = match sym {
            Symmetry::Plus => parity,
            Symmetry::Minus => -parity,
        };
        for (theta, res) in [(p.theta, p.residue / 2.0), (-p.theta, f * p.residue / 2.0)] {
            match out
                .iter_mut()
                .find(|q| q.mode == p.mode && (q.theta - theta).norm() < 1e-12)
            {
                Some(q) => q.residue += res,
                None => out.push(Pole {
                    mode: p.mode,
                    theta,
                    residue: res,
                    lineage: p.lineage.clone(),
                }),
            }
        }
    }
    out.retain(|p| p.residue.norm() > 1e-300);
    out
}

fn letter(mode: usize) -> char {
    if mode == 0 {
        'P'
    } else {
        'S'
    }
}

/// Breadth-first reflection of the parity part of `full` until pole locations
/// leave `Re ω ≤ hi`. Every pole of the result lies in `Re ω ≤ hi`.
pub fn enumerate(
    mat: &Material,
    alpha: f64,
    full: &[Pole],
    sym: Symmetry,
    lo: f64,
    hi: f64,
) -> PoleTable {
    let s = sym.sign();
    let base = decompose(full, sym);
    let mut out = base.clone();
    let mut queue: VecDeque<Pole> = base.into();
    while let Some(p) = queue.pop_front() {
        let w0 = if p.mode == 0 {
            mat.g_inv(p.theta + alpha)
        } else {
            p.theta + alpha
        };
        let rs = mat.rayleigh_system(w0);
        if rs.delta.norm() < DELTA_ZERO {
            continue;
        }
        let r = rs.r;
        let kids = if p.mode == 0 {
            let gp = mat.g_prime(w0);
            [
                (0, p.theta + 2.0 * alpha, s * r[0][0] * p.residue),
                (1, w0 + alpha, s * r[1][0] * p.residue / gp),
            ]
        } else {
            let gp = mat.g_prime(w0);
            [
                (0, mat.g(w0) + alpha, s * r[0][1] * gp * p.residue),
                (1, p.theta + 2.0 * alpha, s * r[1][1] * p.residue),
            ]
        };
        for (mode, theta, residue) in kids {
            if theta.re <= hi + 1e-12 {
                let k = Pole {
                    mode,
                    theta,
                    residue,
                    lineage: format!("{}-{}", p.lineage, letter(mode)),
                };
                out.push(k.clone());
                queue.push_back(k);
            }
        }
    }
    let unstable = out.iter().any(|p| !p.residue.is_finite() || p.residue.norm() > BLOWUP);
    PoleTable {
        sym,
        poles: out,
        lo,
        hi,
        unstable,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_unit_residue() {
        let a = 0.6;
        for s in [Sigma::Standard, Sigma::soft_default(a)] {
            let e = 1e-7;
            let r = s.eval(C64::new(e, 0.0), a) * e;
            assert!((r - 1.0).norm() < 1e-10);
        }
        assert!(Sigma::Standard.eval(C64::new(2.0 * a, 0.0), a).norm() > 1e12);
    }

    #[test]
    fn p_at_zero_has_no_antisymmetric_part() {
        let m = Material::from_poisson(0.25).unwrap();
        let inc = Incidence { wave: Wave::P, theta_inc: 0.0 };
        let full = seeds(&m, 0.6, inc);
        assert!(decompose(&full, Symmetry::Minus).is_empty());
        let plus = decompose(&full, Symmetry::Plus);
        assert_eq!(plus.len(), 1);
        assert!((plus[0].residue - full[0].residue).norm() < 1e-15);
    }

    #[test]
    fn s_at_zero_is_antisymmetric() {
        let m = Material::from_poisson(0.25).unwrap();
        let inc = Incidence { wave: Wave::S, theta_inc: 0.0 };
        let full = seeds(&m, 0.6, inc);
        assert!(decompose(&full, Symmetry::Plus).is_empty());
        assert_eq!(decompose(&full, Symmetry::Minus).len(), 1);
    }

    #[test]
    fn halving_off_axis() {
        let m = Material::from_poisson(0.25).unwrap();
        let inc = Incidence { wave: Wave::P, theta_inc: 0.3 };
        let full = seeds(&m, 0.6, inc);
        let half = -1.0 / (4.0 * PI * I);
        for sym in [Symmetry::Plus, Symmetry::Minus] {
            let d = decompose(&full, sym);
            assert_eq!(d.len(), 2);
            assert!(d.iter().all(|p| (p.residue.norm() - half.norm()).abs() < 1e-15));
        }
    }
}
