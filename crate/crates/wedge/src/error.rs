use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WedgeError {
    #[error("poisson ratio {0} outside [0, 0.5)")]
    PoissonRatio(f64),
    #[error("no sign change of the Rayleigh function on (0, {0}]")]
    RayleighRoot(f64),
    #[error("wedge angle {0} deg not supported (need 0 < 2*alpha < 180)")]
    WedgeAngle(f64),
    #[error("point {0} lies on a branch cut of g")]
    BranchCut(Complex64),
    #[error("incidence angle {0} deg outside the wedge")]
    IncidenceAngle(f64),
    #[error("pole at {0} is within {1:.1e} of the strip boundary; use the soft sigma")]
    CriticalIncidence(Complex64, f64),
    #[error("mesh parameters invalid: {0}")]
    Mesh(String),
    #[error("dense solve failed (singular collocation matrix)")]
    Singular,
    #[error("defect lambda_1 vanishes ({0:.3e}); c1 undetermined")]
    Defect(f64),
    #[error("continuation depth exceeded at {0}")]
    Depth(Complex64),
    #[error("rayleigh coefficients need Rayleigh incidence")]
    NotRayleigh,
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, WedgeError>;
