use std::fmt;

use serde::{Deserialize, Serialize};

use super::decomposition::ChainDecomposition;
use crate::matrix::{dot, MatrixElement};
use crate::tolerances::Tolerances;

/// Where a certificate's vectors came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Origin {
    Paper,
    Constructed,
    Searched,
    Transferred,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Origin::Paper => "PAPER",
            Origin::Constructed => "CONSTRUCTED",
            Origin::Searched => "SEARCHED",
            Origin::Transferred => "TRANSFERRED",
        })
    }
}

/// A verified pair `X, Y ∈ p` with `[X, Y] ≈ 0` and `[X^m, Y^m]^m ≠ 0`.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub chain_id: String,
    /// Unit-normalized coordinates over the chain's `p`-basis.
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub x_matrix: MatrixElement,
    pub y_matrix: MatrixElement,
    /// `|[X, Y]|` after normalization.
    pub residual: f64,
    /// `|[X^m, Y^m]^m|` after normalization.
    pub m_bracket_norm: f64,
    /// Both quantities before normalization.
    pub raw_residual: f64,
    pub raw_m_bracket_norm: f64,
    pub tolerances: Tolerances,
    pub seed: Option<u64>,
    pub origin: Origin,
}

impl Certificate {
    pub fn with_provenance(mut self, origin: Origin, seed: Option<u64>) -> Self {
        self.origin = origin;
        self.seed = seed;
        self
    }
}

/// Why a pair was not accepted.
#[derive(Debug, Clone, PartialEq)]
pub enum Rejection {
    /// `X` or `Y` is not in `p`.
    NotInP { which: &'static str, detail: String },
    /// Zero vector: nothing to normalize.
    Degenerate { which: &'static str },
    /// In `p`, but the thresholds are not met.
    Numeric { residual: f64, m_bracket_norm: f64, tolerances: Tolerances },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::NotInP { which, detail } => write!(f, "{which} is not in p: {detail}"),
            Rejection::Degenerate { which } => write!(f, "{which} is the zero vector"),
            Rejection::Numeric { residual, m_bracket_norm, tolerances } => write!(
                f,
                "|[X,Y]| = {residual:.3e} (limit {:.1e}), |[X^m,Y^m]^m| = {m_bracket_norm:.3e} (floor {:.1e})",
                tolerances.tau_accept, tolerances.theta_min
            ),
        }
    }
}

/// Verifies a pair of matrices; the certificate is tagged PAPER until the
/// caller sets its provenance.
pub fn verify_certificate(
    dec: &ChainDecomposition,
    x: &MatrixElement,
    y: &MatrixElement,
    tol: Tolerances,
) -> std::result::Result<Certificate, Rejection> {
    let xc = dec.p_coords(x).map_err(|e| Rejection::NotInP { which: "X", detail: e.to_string() })?;
    let yc = dec.p_coords(y).map_err(|e| Rejection::NotInP { which: "Y", detail: e.to_string() })?;
    verify_coords(dec, &xc, &yc, tol)
}

/// Same as [`verify_certificate`] on `p`-coordinates.
pub fn verify_coords(
    dec: &ChainDecomposition,
    x: &[f64],
    y: &[f64],
    tol: Tolerances,
) -> std::result::Result<Certificate, Rejection> {
    let (nx, ny) = (dot(x, x).sqrt(), dot(y, y).sqrt());
    if nx == 0.0 {
        return Err(Rejection::Degenerate { which: "X" });
    }
    if ny == 0.0 {
        return Err(Rejection::Degenerate { which: "Y" });
    }
    let b = dec.bracket(x, y);
    let mb = dec.m_bracket(x, y);
    let raw_residual = dot(&b, &b).sqrt();
    let raw_m_bracket_norm = dot(&mb, &mb).sqrt();
    let residual = raw_residual / (nx * ny);
    let m_bracket_norm = raw_m_bracket_norm / (nx * ny);
    if !(residual <= tol.tau_accept && m_bracket_norm >= tol.theta_min) {
        return Err(Rejection::Numeric { residual, m_bracket_norm, tolerances: tol });
    }
    let xu: Vec<f64> = x.iter().map(|v| v / nx).collect();
    let yu: Vec<f64> = y.iter().map(|v| v / ny).collect();
    let to_matrix = |c: &[f64]| dec.element(c).expect("p-coordinates of matching length");
    Ok(Certificate {
        chain_id: dec.id().to_string(),
        x_matrix: to_matrix(&xu),
        y_matrix: to_matrix(&yu),
        x: xu,
        y: yu,
        residual,
        m_bracket_norm,
        raw_residual,
        raw_m_bracket_norm,
        tolerances: tol,
        seed: None,
        origin: Origin::Paper,
    })
}
