//! Numerical thresholds shared across the crate.
//!
//! Every catalog matrix has entries in {0, ±1, ±1/2}, so double precision
//! leaves several orders of magnitude between these thresholds and the
//! quantities they separate.

/// Structural equalities: closure, containment, orthonormality.
pub const TAU_STRUCT: f64 = 1e-9;

/// Residuals of exact-integer computations.
pub const TAU_EXACT: f64 = 1e-12;

/// Root-frame relations; frames pass through an eigensolver.
pub const TAU_ROOT: f64 = 1e-8;

/// Relative singular-value cutoff for null-space computations.
pub const NULL_SPACE_REL: f64 = 1e-8;

/// Relative grouping threshold for rotation speeds of one probe.
pub const THETA_CLUSTER_REL: f64 = 1e-7;

/// Certificate acceptance: commutator norm after unit normalization.
pub const TAU_ACCEPT: f64 = 1e-8;

/// Certificate acceptance: minimal m-bracket norm after unit normalization.
pub const THETA_MIN: f64 = 1e-4;

/// Commutator floor used by the constant estimator.
pub const RATIO_FLOOR: f64 = 1e-6;

/// Ratio at which the constant estimate is reported as divergent.
pub const RATIO_CAP: f64 = 1e6;

/// Acceptance thresholds carried by a certificate.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerances {
    pub tau_accept: f64,
    pub theta_min: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tau_accept: TAU_ACCEPT,
            theta_min: THETA_MIN,
        }
    }
}
