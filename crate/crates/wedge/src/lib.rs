//! Semianalytical solver for plane and Rayleigh wave diffraction by a
//! traction-free elastic wedge `|θ| ≤ α`.
//!
//! The Sommerfeld amplitudes are split into parity parts, the singular pole
//! content is subtracted in closed form and the regular remainder is obtained
//! from two singular integral equations on the line `Re ω = π/2`.

pub mod coefficients;
pub mod error;
pub mod field;
pub mod io;
pub mod poles;
pub mod potential;
pub mod problem;
pub mod quadrature;
pub mod solver;
pub mod special;
pub mod tip;
pub mod verify;

pub use error::{Result, WedgeError};
pub use num_complex::Complex64;
pub use coefficients::{rayleigh_coefficients, RayleighCoefficients};
pub use field::Amplitude;
pub use poles::{Incidence, Pole, PoleTable, Sigma, Wave};
pub use potential::{face_traction, field_on_ray, potential_jets, ContourOptions, FaceTraction, FieldPoint, Jet};
pub use problem::{solve, SigmaChoice, Solution, WedgeProblem};
pub use solver::{LineSolution, Mesh, Operators, Rhs};
pub use verify::{verify, Thresholds, VerificationReport};
pub use tip::{tip_exponents, TipExponents};
pub use special::{Material, Symmetry};
