//! Rayleigh reflection and transmission coefficients.

use crate::error::{Result, WedgeError};
use crate::field::Amplitude;
use crate::poles::{Wave, RAYLEIGH_RHO};
use crate::problem::Solution;
use crate::special::Symmetry;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RayleighCoefficients {
    pub r_plus: C64,
    pub r_minus: C64,
    pub r_ref: C64,
    pub r_tran: C64,
    pub ref_abs: f64,
    pub ref_arg_deg: f64,
    pub tran_abs: f64,
    pub tran_arg_deg: f64,
}

/// Residue of `Φ₀` of one part at the outgoing Rayleigh pole `g(ω_R) + α`,
/// `ω_R = π + iβ_R`.
pub fn outgoing_residue(amp: &Amplitude) -> Result<C64> {
    let m = &amp.mat;
    let a = amp.alpha;
    let wr = C64::new(PI, m.beta_r);
    let rs = m.rayleigh_system(wr);
    let u = amp.value(0, m.g(wr) - a)?;
    let v = amp.value(1, wr - a)?;
    let e = m.e_vec(wr, a, amp.sym);
    let s = amp.sym.sign();
    let core = s * (rs.n[0][0] * u + rs.n[0][1] * v) + amp.sol.c1 * m.s(wr) * e[0];
    Ok(m.g_prime(wr) / m.delta_prime(wr) * core)
}

pub fn rayleigh_coefficients(sol: &Solution) -> Result<RayleighCoefficients> {
    if sol.problem.incidence.wave != Wave::Rayleigh {
        return Err(WedgeError::NotRayleigh);
    }
    let plus = sol.part(Symmetry::Plus).ok_or(WedgeError::NotRayleigh)?;
    let minus = sol.part(Symmetry::Minus).ok_or(WedgeError::NotRayleigh)?;
    let norm = RAYLEIGH_RHO / 2.0;
    let r_plus = outgoing_residue(plus)? / norm;
    let r_minus = outgoing_residue(minus)? / norm;
    Ok(from_parts(r_plus, r_minus))
}

pub fn from_parts(r_plus: C64, r_minus: C64) -> RayleighCoefficients {
    let r_ref = 0.5 * (r_plus + r_minus);
    let r_tran = 0.5 * (r_plus - r_minus);
    RayleighCoefficients {
        r_plus,
        r_minus,
        r_ref,
        r_tran,
        ref_abs: r_ref.norm(),
        ref_arg_deg: r_ref.arg().to_degrees(),
        tran_abs: r_tran.norm(),
        tran_arg_deg: r_tran.arg().to_degrees(),
    }
}
