//! On-disk certificate format.

use std::fmt;

use chrono::{SecondsFormat, Utc};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::catalog::build_chain;
use crate::criterion::{decompose, verify_coords, Certificate, ChainDecomposition, Origin, Rejection};
use crate::error::{Error, Result};
use crate::subspace::Subspace;
use crate::tolerances::Tolerances;

pub const SCHEMA_VERSION: u32 = 1;

/// sha256 over the shortest round-trip decimal rendering of every basis
/// component, newline separated.
pub fn digest_subspace(s: &Subspace) -> String {
    let mut h = Sha256::new();
    h.update(format!("{}:{}:{}\n", s.field(), s.ambient_dim(), s.dim()).as_bytes());
    for b in s.basis() {
        for v in b.data() {
            let v = if *v == 0.0 { 0.0 } else { *v };
            h.update(serde_json::to_string(&v).unwrap_or_default().as_bytes());
            h.update(b",");
        }
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

/// Field order is the schema order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub schema_version: u32,
    pub chain_id: String,
    pub basis_digest: String,
    #[serde(rename = "X_coeffs")]
    pub x_coeffs: Vec<f64>,
    #[serde(rename = "Y_coeffs")]
    pub y_coeffs: Vec<f64>,
    pub residual_commutator: f64,
    pub m_bracket_norm: f64,
    pub tolerances: Tolerances,
    pub seed: Option<u64>,
    pub origin: Origin,
    pub created_at: String,
}

/// Why a certificate file did not verify.
#[derive(Debug, Clone, PartialEq)]
pub enum FileCheck {
    DigestMismatch { expected: String, found: String },
    Rejected(Rejection),
    Chain(Error),
}

impl fmt::Display for FileCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FileCheck::DigestMismatch { expected, found } => {
                write!(f, "basis digest mismatch: file has {found}, rebuilt chain has {expected}")
            }
            FileCheck::Rejected(r) => write!(f, "rejected: {r}"),
            FileCheck::Chain(e) => write!(f, "cannot rebuild chain: {e}"),
        }
    }
}

impl CertificateFile {
    pub fn from_certificate(cert: &Certificate, dec: &ChainDecomposition) -> Self {
        CertificateFile {
            schema_version: SCHEMA_VERSION,
            chain_id: cert.chain_id.clone(),
            basis_digest: digest_subspace(dec.p()),
            x_coeffs: cert.x.clone(),
            y_coeffs: cert.y.clone(),
            residual_commutator: cert.residual,
            m_bracket_norm: cert.m_bracket_norm,
            tolerances: cert.tolerances,
            seed: cert.seed,
            origin: cert.origin,
            created_at: Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true),
        }
    }

    /// Pretty JSON with LF line endings and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let f: CertificateFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        if f.schema_version != SCHEMA_VERSION {
            return Err(Error::Format(format!("unsupported schema version {}", f.schema_version)));
        }
        Ok(f)
    }

    /// Rebuilds the chain, checks the basis digest and re-verifies. The
    /// thresholds used are never looser than the defaults.
    pub fn verify(&self) -> std::result::Result<Certificate, FileCheck> {
        let chain = build_chain(&self.chain_id).map_err(FileCheck::Chain)?;
        let dec = decompose(&chain).map_err(FileCheck::Chain)?;
        let expected = digest_subspace(dec.p());
        if expected != self.basis_digest {
            return Err(FileCheck::DigestMismatch {
                expected,
                found: self.basis_digest.clone(),
            });
        }
        let d = Tolerances::default();
        let tol = Tolerances {
            tau_accept: self.tolerances.tau_accept.min(d.tau_accept),
            theta_min: self.tolerances.theta_min.max(d.theta_min),
        };
        if self.x_coeffs.len() != dec.dim_p() || self.y_coeffs.len() != dec.dim_p() {
            return Err(FileCheck::Rejected(Rejection::NotInP {
                which: "X/Y",
                detail: format!("expected {} coefficients", dec.dim_p()),
            }));
        }
        verify_coords(&dec, &self.x_coeffs, &self.y_coeffs, tol)
            .map(|c| c.with_provenance(self.origin, self.seed))
            .map_err(FileCheck::Rejected)
    }
}
