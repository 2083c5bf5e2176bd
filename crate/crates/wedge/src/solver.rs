//! Discrete singular operators on the line `Re ω = π/2` and the regularised
//! solve of the two line equations.
//!
//! Unknowns live on the free nodes `|η| ≤ T` and vanish beyond; rows, the
//! inversion operator and the defect integrals use the extended mesh
//! `|η| ≤ T + L`.

use crate::error::{Result, WedgeError};
use crate::poles::{PoleTable, Sigma};
use crate::special::{LineCoeffs, Material, Symmetry};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Mesh {
    pub h: f64,
    /// Free half-count; unknowns on `n = −n_free..=n_free`.
    pub n_free: usize,
    /// Extended half-count; nodes `n = −n_ext..=n_ext`.
    pub n_ext: usize,
}

#[allow(clippy::len_without_is_empty)]
impl Mesh {
    pub fn new(h: f64, t: f64, l: f64) -> Result<Self> {
        if !(h > 0.0 && t > h && l >= 0.0) {
            return Err(WedgeError::Mesh(format!("h={h}, T={t}, L={l}")));
        }
        let n_free = (t / h).round() as usize;
        let n_ext = n_free + (l / h).round() as usize;
        Ok(Mesh { h, n_free, n_ext })
    }

    pub fn len(&self) -> usize {
        2 * self.n_ext + 1
    }

    pub fn eta(&self, k: usize) -> f64 {
        (k as f64 - self.n_ext as f64) * self.h
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.eta(k)).collect()
    }

    /// Index range of the free nodes.
    pub fn free(&self) -> std::ops::Range<usize> {
        let s = self.n_ext - self.n_free;
        s..s + 2 * self.n_free + 1
    }

    pub fn t(&self) -> f64 {
        self.n_free as f64 * self.h
    }
}

fn odd(i: usize, j: usize) -> bool {
    (i + j) % 2 == 1
}

/// `χ(s) − s` without cancellation.
fn chi_shift(gamma: f64, s: f64) -> f64 {
    let a = s.abs();
    let sh = a.sinh();
    let sq = (gamma * gamma + sh * sh).sqrt();
    let v = ((gamma * gamma - 1.0) * (-a).exp() / (sq + a.cosh())).ln_1p();
    s.signum() * v - s.signum() * gamma.ln()
}

/// Dense discrete operators on an extended mesh.
pub struct Operators {
    pub mesh: Mesh,
    pub alpha: f64,
    pub gamma: f64,
    pub line: Vec<LineCoeffs>,
    pub eta: Vec<f64>,
    pub h: DMatrix<C64>,
    pub hbar: DMatrix<C64>,
    pub hinv: DMatrix<C64>,
    pub hbar_inv: DMatrix<C64>,
}

impl Operators {
    pub fn new(mat: &Material, alpha: f64, mesh: Mesh) -> Self {
        let n = mesh.len();
        let eta = mesh.nodes();
        let line: Vec<LineCoeffs> = eta.iter().map(|&e| mat.line_coeffs(e)).collect();
        let c = PI / (2.0 * alpha);
        let pre = 1.0 / (2.0 * alpha * I);
        let w = 2.0 * mesh.h * pre;
        let half = mesh.h * pre;
        let chi: Vec<f64> = line.iter().map(|l| l.chi).collect();
        let chp: Vec<f64> = line.iter().map(|l| l.chi_prime).collect();
        let mut h = DMatrix::zeros(n, n);
        let mut hbar = DMatrix::zeros(n, n);
        let mut hinv = DMatrix::zeros(n, n);
        let mut hbar_inv = DMatrix::zeros(n, n);
        for i in 0..n {
            let ti = (c * eta[i]).tanh();
            let tci = (c * chi[i]).tanh();
            for j in 0..n {
                let a = c * (eta[j] - eta[i]);
                let b = c * (chi[j] - chi[i]);
                // coth = csch + tanh(·/2): the bounded part takes the full rule
                let mut vi = half * (ti + (a / 2.0).tanh());
                let mut vbi = half * chp[j] * (tci + (b / 2.0).tanh());
                if odd(i, j) {
                    h[(i, j)] = w / a.sinh();
                    hbar[(i, j)] = w * chp[j] / b.sinh();
                    vi += w / a.sinh();
                    vbi += w * chp[j] / b.sinh();
                }
                hinv[(i, j)] = vi;
                hbar_inv[(i, j)] = vbi;
            }
        }
        Operators {
            mesh,
            alpha,
            gamma: mat.gamma,
            line,
            eta,
            h,
            hbar,
            hinv,
            hbar_inv,
        }
    }

    pub fn apply(m: &DMatrix<C64>, f: &[C64]) -> Vec<C64> {
        let v = m * DVector::from_column_slice(f);
        v.as_slice().to_vec()
    }

    pub fn apply_h(&self, f: &[C64]) -> Vec<C64> {
        Self::apply(&self.h, f)
    }

    pub fn apply_hbar(&self, f: &[C64]) -> Vec<C64> {
        Self::apply(&self.hbar, f)
    }

    pub fn apply_hinv(&self, f: &[C64]) -> Vec<C64> {
        Self::apply(&self.hinv, f)
    }

    pub fn apply_hbar_inv(&self, f: &[C64]) -> Vec<C64> {
        Self::apply(&self.hbar_inv, f)
    }

    /// Regular remainder `K = M − Prin·diag(d)` of the line operator of the
    /// given parity, in a cancellation-free form.
    pub fn kernel(&self, sym: Symmetry) -> DMatrix<C64> {
        let n = self.mesh.len();
        let g = self.gamma;
        let c = PI / (2.0 * self.alpha);
        let w = 2.0 * self.mesh.h / (2.0 * self.alpha * I);
        let e = &self.eta;
        let cs: Vec<f64> = e.iter().map(|&s| chi_shift(g, s)).collect();
        let om: Vec<f64> = e
            .iter()
            .zip(&self.line)
            .map(|(&s, l)| {
                let sh = s.sinh();
                let sq = (g * g + sh * sh).sqrt();
                (1.0 - g * g) / (sq * (s.cosh() + sq)) / l.chi_prime
            })
            .collect();
        let th: Vec<f64> = e.iter().map(|&s| (2.0 * s).tanh()).collect();
        let c2: Vec<f64> = e.iter().map(|&s| (2.0 * s).cosh()).collect();
        let mut k = DMatrix::zeros(n, n);
        for i in 0..n {
            let tau = e[i];
            for j in 0..n {
                if !odd(i, j) {
                    continue;
                }
                let t = e[j];
                let a = c * (t - tau);
                let b = c * (self.line[j].chi - self.line[i].chi);
                let bma = c * (cs[j] - cs[i]);
                let t2 = th[i] * th[j];
                let dtt = th[j] * (2.0 * (t - tau)).sinh() / (c2[j] * c2[i]);
                let (sa, sb) = (a.sinh(), b.sinh());
                let diff = 2.0 * ((a + b) / 2.0).cosh() * (bma / 2.0).sinh() / (sa * sb);
                let v = match sym {
                    Symmetry::Plus => (dtt - th[j] * th[j] * om[j]) / sa + t2 * diff,
                    Symmetry::Minus => dtt / sb + t2 * (-diff + om[i] / sa),
                };
                k[(i, j)] = w * v;
            }
        }
        k
    }
}

/// Right-hand sides on the extended mesh.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Rhs {
    pub r1: Vec<C64>,
    pub r2: Vec<C64>,
    pub q0: Vec<C64>,
    pub q1: Vec<C64>,
}

/// Distance below which an in-window pole is considered to sit on a strip line.
pub const CRITICAL_GAP: f64 = 1e-8;

pub fn assemble_rhs(ops: &Operators, poles: &PoleTable, sigma: Sigma) -> Result<Rhs> {
    let alpha = ops.alpha;
    let gap = poles.boundary_gap(alpha);
    if gap < CRITICAL_GAP {
        let p = poles
            .in_strip()
            .find(|p| {
                ((p.theta.re - PI / 2.0).abs() - alpha).abs() < CRITICAL_GAP
            })
            .map(|p| p.theta)
            .unwrap_or_default();
        return Err(WedgeError::CriticalIncidence(p, gap));
    }
    let hp = PI / 2.0 + alpha;
    let hm = PI / 2.0 - alpha;
    let n = ops.mesh.len();
    let (mut r1, mut r2) = (vec![C64::default(); n], vec![C64::default(); n]);
    let tan = alpha.tan();
    let (mut s1, mut s2) = (vec![C64::default(); n], vec![C64::default(); n]);
    for k in 0..n {
        let l = &ops.line[k];
        let e = ops.eta[k];
        let a0 = poles.hat(0, C64::new(hp, l.chi), sigma, alpha);
        let b0 = poles.hat(0, C64::new(hm, l.chi), sigma, alpha);
        let c1 = poles.hat(1, C64::new(hp, e), sigma, alpha);
        let d1 = poles.hat(1, C64::new(hm, e), sigma, alpha);
        let (xp, xm, yp, ym) = (a0 + b0, a0 - b0, c1 + d1, c1 - d1);
        match poles.sym {
            Symmetry::Plus => {
                r1[k] = -(xp + l.b * yp);
                r2[k] = -(l.a * xm + ym);
            }
            Symmetry::Minus => {
                r2[k] = -(l.a * xp + yp);
                r1[k] = -(xm + l.b * ym);
            }
        }
        s1[k] = C64::new(l.s1, 0.0);
        s2[k] = C64::new(l.s2, 0.0);
    }
    let (q0, q1) = match poles.sym {
        Symmetry::Plus => {
            let hr = ops.apply_hbar(&r1);
            let hs = ops.apply_hbar(&s1);
            let q0 = (0..n).map(|k| r2[k] - ops.line[k].a * hr[k]).collect();
            let q1 = (0..n).map(|k| -tan * s2[k] + ops.line[k].a * hs[k]).collect();
            (q0, q1)
        }
        Symmetry::Minus => {
            let hr = ops.apply_h(&r2);
            let hs = ops.apply_h(&s2);
            let q0 = (0..n).map(|k| r1[k] - ops.line[k].b * hr[k]).collect();
            let q1 = (0..n).map(|k| -tan * s1[k] - ops.line[k].b * hs[k]).collect();
            (q0, q1)
        }
    };
    Ok(Rhs { r1, r2, q0, q1 })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LineSolution {
    pub sym: Symmetry,
    pub mesh: Mesh,
    pub eta: Vec<f64>,
    pub chi: Vec<f64>,
    pub chi_prime: Vec<f64>,
    /// Compressional line function `x` on the extended mesh.
    pub x: Vec<C64>,
    /// Shear line function `y` on the extended mesh.
    pub y: Vec<C64>,
    /// The solved unknown (`y` for `+`, `x` for `−`); zero off the free nodes.
    pub u: Vec<C64>,
    pub rhs: Rhs,
    pub c1: C64,
    pub lambda: [C64; 2],
    pub residual: f64,
    pub c1_forced: bool,
}

/// Solve the regularised line equation of one parity.
pub fn solve(
    ops: &Operators,
    rhs: Rhs,
    sym: Symmetry,
    c1_force: Option<C64>,
) -> Result<LineSolution> {
    let mesh = ops.mesh;
    let n = mesh.len();
    let fr = mesh.free();
    let nf = fr.len();
    let s0 = fr.start;
    let hstep = mesh.h;
    let kmat = ops.kernel(sym);
    let (inv, wts): (&DMatrix<C64>, Vec<f64>) = match sym {
        Symmetry::Plus => (&ops.hinv, vec![1.0; n]),
        Symmetry::Minus => (&ops.hbar_inv, ops.line.iter().map(|l| l.chi_prime).collect()),
    };
    let inv_f = inv.rows(s0, nf);
    let k_f = kmat.columns(s0, nf);
    let mut a = inv_f * k_f;
    let sd: Vec<f64> = ops.line[fr.clone()].iter().map(|l| l.d.sqrt()).collect();
    for i in 0..nf {
        a[(i, i)] += C64::new(ops.line[s0 + i].d, 0.0);
    }
    for j in 0..nf {
        for i in 0..nf {
            a[(i, j)] /= sd[i] * sd[j];
        }
    }
    let q0 = DVector::from_column_slice(&rhs.q0);
    let q1 = DVector::from_column_slice(&rhs.q1);
    let mut b = DMatrix::zeros(nf, 2);
    let iq0 = inv_f * &q0;
    let iq1 = inv_f * &q1;
    for i in 0..nf {
        b[(i, 0)] = iq0[i] / sd[i];
        b[(i, 1)] = iq1[i] / sd[i];
    }
    let z = a.lu().solve(&b).ok_or(WedgeError::Singular)?;
    let mut u0 = DVector::zeros(nf);
    let mut u1 = DVector::zeros(nf);
    for i in 0..nf {
        u0[i] = z[(i, 0)] / sd[i];
        u1[i] = z[(i, 1)] / sd[i];
    }
    let ku0 = k_f * &u0;
    let ku1 = k_f * &u1;
    let mut lam0 = C64::default();
    let mut lam1 = C64::default();
    for k in 0..n {
        lam0 += wts[k] * (ku0[k] - q0[k]);
        lam1 += wts[k] * (ku1[k] - q1[k]);
    }
    lam0 *= hstep;
    lam1 *= hstep;
    let c1 = match c1_force {
        Some(c) => c,
        None => {
            if lam1.norm() < 1e-300 {
                return Err(WedgeError::Defect(lam1.norm()));
            }
            -lam0 / lam1
        }
    };
    let mut u = vec![C64::default(); n];
    for i in 0..nf {
        u[s0 + i] = u0[i] + c1 * u1[i];
    }
    let mu = apply_line_operator(ops, sym, &u);
    let residual = fr
        .clone()
        .map(|k| (mu[k] - rhs.q0[k] - c1 * rhs.q1[k]).norm())
        .fold(0.0, f64::max);
    let (x, y): (Vec<C64>, Vec<C64>) = match sym {
        Symmetry::Plus => (
            (0..n)
                .map(|k| {
                    let l = &ops.line[k];
                    rhs.r1[k] - c1 * l.s1 - l.b * u[k]
                })
                .collect(),
            u.clone(),
        ),
        Symmetry::Minus => (
            u.clone(),
            (0..n)
                .map(|k| {
                    let l = &ops.line[k];
                    rhs.r2[k] + c1 * l.s2 - l.a * u[k]
                })
                .collect(),
        ),
    };
    Ok(LineSolution {
        sym,
        mesh,
        eta: ops.eta.clone(),
        chi: ops.line.iter().map(|l| l.chi).collect(),
        chi_prime: ops.line.iter().map(|l| l.chi_prime).collect(),
        x,
        y,
        u,
        rhs,
        c1,
        lambda: [lam0, lam1],
        residual,
        c1_forced: c1_force.is_some(),
    })
}

/// Unregularised line operator: `H − aH̄b` for `+`, `H̄ − bHa` for `−`.
pub fn apply_line_operator(ops: &Operators, sym: Symmetry, u: &[C64]) -> Vec<C64> {
    let n = u.len();
    match sym {
        Symmetry::Plus => {
            let bu: Vec<C64> = (0..n).map(|k| ops.line[k].b * u[k]).collect();
            let hu = ops.apply_h(u);
            let hb = ops.apply_hbar(&bu);
            (0..n).map(|k| hu[k] - ops.line[k].a * hb[k]).collect()
        }
        Symmetry::Minus => {
            let au: Vec<C64> = (0..n).map(|k| ops.line[k].a * u[k]).collect();
            let hu = ops.apply_hbar(u);
            let ha = ops.apply_h(&au);
            (0..n).map(|k| hu[k] - ops.line[k].b * ha[k]).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_shift_matches_direct() {
        let m = Material::from_poisson(0.25).unwrap();
        for s in [-3.0, -0.4, 0.2, 1.5, 4.0] {
            let direct = m.chi(s) - s;
            assert!((direct - chi_shift(m.gamma, s)).abs() < 1e-12, "{s}");
        }
    }

    #[test]
    fn kernel_matches_difference() {
        let m = Material::from_poisson(0.25).unwrap();
        let mesh = Mesh::new(0.1, 3.0, 0.0).unwrap();
        let ops = Operators::new(&m, 0.6, mesh);
        let n = mesh.len();
        for sym in [Symmetry::Plus, Symmetry::Minus] {
            let k = ops.kernel(sym);
            let mut maxd: f64 = 0.0;
            for j in 0..n {
                let mut e = vec![C64::default(); n];
                e[j] = C64::new(1.0, 0.0);
                let col = apply_line_operator(&ops, sym, &e);
                let prin = match sym {
                    Symmetry::Plus => &ops.h,
                    Symmetry::Minus => &ops.hbar,
                };
                for i in 0..n {
                    let direct = col[i] - prin[(i, j)] * ops.line[j].d;
                    maxd = maxd.max((direct - k[(i, j)]).norm());
                }
            }
            assert!(maxd < 1e-12, "{sym:?} {maxd}");
        }
    }
}
