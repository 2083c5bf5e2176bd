//! Problem description and the end-to-end solve of both parity parts.

use crate::error::{Result, WedgeError};
use crate::field::Amplitude;
use crate::poles::{self, Incidence, PoleTable, Sigma, Wave};
use crate::solver::{self, Mesh, Operators};
use crate::special::{Material, Symmetry};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SigmaChoice {
    Standard,
    /// `β/sin(βω)`; `None` selects `β = π/6α`.
    Soft(Option<f64>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WedgeProblem {
    /// Full wedge angle `2α` in degrees.
    pub angle_deg: f64,
    pub nu: f64,
    pub incidence: Incidence,
    pub h: f64,
    pub t: f64,
    /// Extra outer width of the mesh; `None` uses `T`.
    pub l: Option<f64>,
    pub sigma: SigmaChoice,
    /// Use the poles in `[π/2 − 2α, π/2 + 2α]` for the singular part.
    pub widen: bool,
    /// Force `c₁ = 0` in both parts (diagnostic).
    pub c1_zero: bool,
}

impl WedgeProblem {
    pub fn new(angle_deg: f64, nu: f64, incidence: Incidence) -> Self {
        WedgeProblem {
            angle_deg,
            nu,
            incidence,
            h: 0.05,
            t: 12.0,
            l: None,
            sigma: SigmaChoice::Standard,
            widen: false,
            c1_zero: false,
        }
    }

    pub fn rayleigh(angle_deg: f64, nu: f64) -> Self {
        Self::new(
            angle_deg,
            nu,
            Incidence {
                wave: Wave::Rayleigh,
                theta_inc: 0.0,
            },
        )
    }

    pub fn alpha(&self) -> f64 {
        self.angle_deg.to_radians() / 2.0
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.angle_deg > 0.0 && self.angle_deg < 180.0) {
            return Err(WedgeError::WedgeAngle(self.angle_deg));
        }
        if self.incidence.wave != Wave::Rayleigh && self.incidence.theta_inc.abs() >= self.alpha() {
            return Err(WedgeError::IncidenceAngle(self.incidence.theta_inc.to_degrees()));
        }
        Mesh::new(self.h, self.t, self.l.unwrap_or(self.t))?;
        if let SigmaChoice::Soft(Some(b)) = self.sigma {
            if !(b > 0.0 && b < PI / (2.0 * self.alpha())) {
                return Err(WedgeError::Config(format!("soft beta {b} must lie in (0, pi/2alpha)")));
            }
        }
        Ok(())
    }

    pub fn sigma(&self) -> Sigma {
        match self.sigma {
            SigmaChoice::Standard => Sigma::Standard,
            SigmaChoice::Soft(None) => Sigma::soft_default(self.alpha()),
            SigmaChoice::Soft(Some(beta)) => Sigma::Soft { beta },
        }
    }

    pub fn mesh(&self) -> Result<Mesh> {
        Mesh::new(self.h, self.t, self.l.unwrap_or(self.t))
    }

    pub fn pole_table(&self, mat: &Material, sym: Symmetry) -> PoleTable {
        let a = self.alpha();
        let k = if self.widen { 2.0 } else { 1.0 };
        let full = poles::seeds(mat, a, self.incidence);
        poles::enumerate(mat, a, &full, sym, PI / 2.0 - k * a, PI / 2.0 + k * a)
    }
}

/// Solved amplitudes of the parity parts carried by the incidence.
#[derive(Clone, Debug)]
pub struct Solution {
    pub problem: WedgeProblem,
    pub mat: Material,
    pub parts: Vec<Amplitude>,
}

impl Solution {
    pub fn part(&self, sym: Symmetry) -> Option<&Amplitude> {
        self.parts.iter().find(|a| a.sym == sym)
    }

    /// Full amplitudes `Φ = Φ⁺ + Φ⁻`.
    pub fn value(&self, mode: usize, z: C64) -> Result<C64> {
        let mut s = C64::default();
        for p in &self.parts {
            s += p.value(mode, z)?;
        }
        Ok(s)
    }
}

pub fn solve(problem: &WedgeProblem) -> Result<Solution> {
    problem.validate()?;
    let mat = Material::from_poisson(problem.nu)?;
    let alpha = problem.alpha();
    let mesh = problem.mesh()?;
    let sigma = problem.sigma();
    let syms: Vec<Symmetry> = [Symmetry::Plus, Symmetry::Minus]
        .into_iter()
        .filter(|&s| {
            !poles::decompose(&poles::seeds(&mat, alpha, problem.incidence), s).is_empty()
        })
        .collect();
    let ops = Operators::new(&mat, alpha, mesh);
    let mut parts = Vec::new();
    for sym in syms {
        let table = problem.pole_table(&mat, sym);
        let rhs = solver::assemble_rhs(&ops, &table, sigma)?;
        let force = problem.c1_zero.then_some(C64::default());
        let sol = solver::solve(&ops, rhs, sym, force)?;
        parts.push(Amplitude::new(mat, alpha, sigma, table, sol));
    }
    Ok(Solution {
        problem: problem.clone(),
        mat,
        parts,
    })
}
