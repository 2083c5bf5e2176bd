//! Material constants and the closed-form functions of the complex angle.
//!
//! Branch conventions: `S(ω) = γ sin g(ω)` equals `sqrt(γ² − cos²ω)` with value
//! `γ` at `ω = π/2`. `g` has cuts on `[−θ_h + πn, θ_h + πn]`; on a cut the
//! lower-edge limit is returned by [`Material::g`], while [`Material::g_checked`]
//! rejects such points.

use crate::error::{Result, WedgeError};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Tolerance used to decide that a point sits on a real-axis cut.
pub const CUT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Symmetry {
    Plus,
    Minus,
}

impl Symmetry {
    pub fn sign(self) -> f64 {
        match self {
            Symmetry::Plus => 1.0,
            Symmetry::Minus => -1.0,
        }
    }
    pub fn label(self) -> &'static str {
        match self {
            Symmetry::Plus => "+",
            Symmetry::Minus => "-",
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Material {
    pub nu: f64,
    pub gamma: f64,
    pub beta_r: f64,
    pub gamma_r: f64,
    pub theta_h: f64,
}

/// Reflection data of a free half-plane at angle `ω`.
#[derive(Clone, Copy, Debug)]
pub struct RayleighSystem {
    pub delta: C64,
    pub n: [[C64; 2]; 2],
    pub r: [[C64; 2]; 2],
}

/// Coefficients of the line equations at a node `η`.
#[derive(Clone, Copy, Debug)]
pub struct LineCoeffs {
    pub chi: f64,
    pub chi_prime: f64,
    pub a: C64,
    pub b: C64,
    pub d: f64,
    pub s1: f64,
    pub s2: f64,
}

fn rayleigh_real(gamma: f64, b: f64) -> f64 {
    let ch = b.cosh();
    (2.0 * b).cosh().powi(2) - 2.0 * (2.0 * b).sinh() * ch * (ch * ch - gamma * gamma).sqrt()
}

/// Larger-modulus root `R` of `R² − 2wR + 1 = 0`.
fn big_root(w: C64) -> C64 {
    let sq = (w * w - 1.0).sqrt();
    let (p, m) = (w + sq, w - sq);
    if p.norm() >= m.norm() {
        p
    } else {
        m
    }
}

impl Material {
    pub fn from_poisson(nu: f64) -> Result<Self> {
        if !(0.0..0.5).contains(&nu) {
            return Err(WedgeError::PoissonRatio(nu));
        }
        let gamma = ((1.0 - 2.0 * nu) / (2.0 * (1.0 - nu))).sqrt();
        let bmax = 3.0;
        let step = 1e-3;
        let mut lo = step;
        let mut flo = rayleigh_real(gamma, lo);
        let mut bracket = None;
        while lo < bmax {
            let hi = lo + step;
            let fhi = rayleigh_real(gamma, hi);
            if flo * fhi < 0.0 {
                bracket = Some((lo, hi, flo));
                break;
            }
            lo = hi;
            flo = fhi;
        }
        let (mut a, mut b, fa) = bracket.ok_or(WedgeError::RayleighRoot(bmax))?;
        let mut fa = fa;
        while b - a > 1e-15 {
            let m = 0.5 * (a + b);
            let fm = rayleigh_real(gamma, m);
            if fm == 0.0 {
                a = m;
                b = m;
                break;
            }
            if fa * fm < 0.0 {
                b = m;
            } else {
                a = m;
                fa = fm;
            }
        }
        let beta_r = 0.5 * (a + b);
        Ok(Material {
            nu,
            gamma,
            beta_r,
            gamma_r: beta_r.cosh(),
            theta_h: gamma.acos(),
        })
    }

    /// Material with an explicit speed ratio; used for limit checks such as `γ → 1`.
    pub fn with_gamma(gamma: f64) -> Self {
        Material {
            nu: f64::NAN,
            gamma,
            beta_r: f64::NAN,
            gamma_r: f64::NAN,
            theta_h: gamma.min(1.0).acos(),
        }
    }

    fn on_cut(&self, r: C64) -> bool {
        r.im.abs() < CUT_TOL && r.re.abs() < self.theta_h
    }

    /// `g(ω) = arccos(cos ω / γ)` on the branch with `g(π/2) = π/2`, odd and
    /// `π`-quasi-periodic.
    pub fn g(&self, w: C64) -> C64 {
        let n = (w.re / PI).round();
        let r = w - n * PI;
        let gm = self.gamma;
        if r.im.abs() < 1e-13 {
            let x = r.re;
            let c = x.cos() / gm;
            let v = if x.abs() < self.theta_h {
                -I * c.acosh()
            } else if x > 0.0 {
                C64::new(c.acos(), 0.0)
            } else {
                C64::new(-c.acos(), 0.0)
            };
            return n * PI + v;
        }
        let (r, sgn) = if r.im < 0.0 { (-r, -1.0) } else { (r, 1.0) };
        let u = (I * r).exp();
        let big = big_root((u + 1.0 / u) / (2.0 * gm));
        let val = r - I * (1.0 / (big * u)).ln();
        n * PI + sgn * val
    }

    pub fn g_checked(&self, w: C64) -> Result<C64> {
        let n = (w.re / PI).round();
        if self.on_cut(w - n * PI) {
            return Err(WedgeError::BranchCut(w));
        }
        Ok(self.g(w))
    }

    /// Inverse of [`Material::g`]: `cos g⁻¹(z) = γ cos z`.
    pub fn g_inv(&self, z: C64) -> C64 {
        let n = (z.re / PI).round();
        let r = z - n * PI;
        let gm = self.gamma;
        if r.im.abs() < 1e-13 {
            let x = r.re;
            let v = (gm * x.cos()).acos();
            return C64::new(n * PI + if x >= 0.0 { v } else { -v }, 0.0);
        }
        let (r, sgn) = if r.im < 0.0 { (-r, -1.0) } else { (r, 1.0) };
        let v = (I * r).exp();
        let big = big_root(gm * (v + 1.0 / v) / 2.0);
        let val = r - I * (1.0 / (big * v)).ln();
        n * PI + sgn * val
    }

    /// `S(ω) = sqrt(γ² − cos²ω)` on the branch `γ sin g(ω)`.
    pub fn s(&self, w: C64) -> C64 {
        self.gamma * self.g(w).sin()
    }

    pub fn g_prime(&self, w: C64) -> C64 {
        w.sin() / self.s(w)
    }

    pub fn delta(&self, w: C64) -> C64 {
        let s = self.s(w);
        (2.0 * w).cos().powi(2) + 2.0 * (2.0 * w).sin() * w.cos() * s
    }

    pub fn delta_prime(&self, w: C64) -> C64 {
        let s = self.s(w);
        let (c, sn) = (w.cos(), w.sin());
        let (s2, c2) = ((2.0 * w).sin(), (2.0 * w).cos());
        let sp = sn * c / s;
        -4.0 * c2 * s2 + 2.0 * (2.0 * c2 * c * s - s2 * sn * s + s2 * c * sp)
    }

    pub fn rayleigh_system(&self, w: C64) -> RayleighSystem {
        let s = self.s(w);
        let c = w.cos();
        let (s2, c2) = ((2.0 * w).sin(), (2.0 * w).cos());
        let n11 = 2.0 * s2 * c * s - c2 * c2;
        let n12 = -4.0 * c2 * c * s;
        let n21 = -2.0 * s2 * c2;
        let n = [[n11, n12], [n21, -n11]];
        let delta = c2 * c2 + 2.0 * s2 * c * s;
        let r = [
            [n11 / delta, n12 / delta],
            [n21 / delta, -n11 / delta],
        ];
        RayleighSystem { delta, n, r }
    }

    /// Vector multiplying `c₁ S/Δ` in the functional equations.
    pub fn e_vec(&self, w: C64, alpha: f64, sym: Symmetry) -> [C64; 2] {
        let s = self.s(w);
        let t = alpha.tan();
        let (s2, c2) = ((2.0 * w).sin(), (2.0 * w).cos());
        match sym {
            Symmetry::Plus => [-t * s2 + c2, t * c2 * w.sin() / s + s2],
            Symmetry::Minus => [t * c2 + s2, t * s2 - c2 * w.sin() / s],
        }
    }

    pub fn chi(&self, eta: f64) -> f64 {
        (eta.sinh() / self.gamma).asinh()
    }

    pub fn chi_prime(&self, eta: f64) -> f64 {
        eta.cosh() / (self.gamma * self.gamma + eta.sinh().powi(2)).sqrt()
    }

    pub fn chi_inv(&self, tau: f64) -> f64 {
        (self.gamma * tau.sinh()).asinh()
    }

    pub fn line_coeffs(&self, eta: f64) -> LineCoeffs {
        let gm = self.gamma;
        let sh = eta.sinh();
        let ch = eta.cosh();
        let sq = (gm * gm + sh * sh).sqrt();
        let c2 = (2.0 * eta).cosh();
        let chi_prime = ch / sq;
        let d = ((1.0 - gm * gm) / (sq * (ch + sq)) + 1.0 / (c2 * c2)) / chi_prime;
        LineCoeffs {
            chi: (sh / gm).asinh(),
            chi_prime,
            a: -I * (2.0 * eta).tanh(),
            b: 2.0 * I * sh * sq / c2,
            d,
            s1: sq / c2,
            s2: ch / c2,
        }
    }

    /// Shear-potential amplitude of the Rayleigh wave relative to the
    /// compressional one.
    pub fn rayleigh_phi10(&self) -> C64 {
        let (gr, g) = (self.gamma_r, self.gamma);
        -2.0 * I * gr * (gr * gr - g * g).sqrt() / (2.0 * gr * gr - 1.0)
    }
}
