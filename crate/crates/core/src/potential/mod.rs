//! Planar Green's functions with a pole, equilibrium measures, Taylor jets
//! and the overflow identities for polynomial maps.
//!
//! `g = -log|z - O| + h` where `h` is harmonic on the domain and matches
//! `log|z - O|` on the boundary. The harmonic part is represented by the
//! method of fundamental solutions: a constant plus logarithmic charges
//! placed on a copy of each boundary curve pushed off into the complex
//! parameter direction. The measure density and all boundary quantities
//! come from the analytic derivative of that representation.

mod analytic;
mod domain;
mod identities;
mod solver;

pub use analytic::{preimages, taylor_jet, AnalyticMap, JetData, Preimage};
pub use domain::{Curve, DomainSpec, ShapeJson};
pub use identities::{
    arakelov_degree, classical_inverse_check, degree_consistency, identity_residual,
    log_abs_boundary_integral, overflow, pushforward_green, symmetry_check, symmetry_deviations,
    ArakelovDegree, ClassicalCheck, Identity, OverflowMethod,
};
pub use solver::{
    equilibrium_measure, green_eval, jet_cap_norm, measure_density, solve_green, solve_green_with,
    GreenSolution, MeasureNode, SolutionSummary,
};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PotentialError {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("the marked point lies on the boundary")]
    CenterOnBoundary,
    #[error("collocation residual {residual:e} exceeds the threshold")]
    SolverIllConditioned { residual: f64 },
    #[error("raw equilibrium mass {mass} is not close to 1")]
    MeasureMass { mass: f64 },
    #[error("Green's function has a pole at the marked point")]
    PoleAtCenter,
    #[error("all Taylor coefficients beyond the constant are below tolerance")]
    AllCoefficientsBelowTolerance,
    #[error("map is constant")]
    ConstantMap,
    #[error("operation needs a polynomial map")]
    NotPolynomial,
    #[error("map vanishes (numerically) on the boundary")]
    BoundaryZero,
    #[error("map does not vanish at the marked point")]
    CenterNotZero,
    #[error("domain is not symmetric under complex conjugation")]
    AsymmetricDomain,
    #[error("expected vanishing order 1, found {0}")]
    WrongVanishingOrder(usize),
    #[error("point outside the convergence disk of the series")]
    OutsideRadius,
    #[error("identity needs a sample point x")]
    MissingPoint,
    #[error("f(x) = 0 at the sample point")]
    SampleAtZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PotentialConfig {
    /// Collocation points (and charges) per boundary curve.
    pub resolution: usize,
    /// Imaginary parameter offset of the charge curves.
    pub source_offset: f64,
    /// Largest acceptable collocation residual.
    pub residual_threshold: f64,
    /// Largest acceptable `|raw mass - 1|`.
    pub mass_tolerance: f64,
    /// Relative cutoff for vanishing Taylor coefficients.
    pub vanishing_tolerance: f64,
    /// Smallest `|f|` allowed at boundary nodes.
    pub boundary_zero_threshold: f64,
}

impl Default for PotentialConfig {
    fn default() -> Self {
        PotentialConfig {
            resolution: 256,
            source_offset: 0.4,
            residual_threshold: 1e-6,
            mass_tolerance: 1e-3,
            vanishing_tolerance: 1e-10,
            boundary_zero_threshold: 1e-12,
        }
    }
}
