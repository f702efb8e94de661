//! Simple ideals and the structural case labels for regular chains.

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::decomposition::is_symmetric_pair;
use crate::algebra::{center, maximal_torus, rank, LieAlgebraModel};
use crate::error::Result;
use crate::roots::root_decomposition;
use crate::subspace::Subspace;
use crate::tolerances::{TAU_ROOT, TAU_STRUCT};

/// Isomorphism type of a simple compact algebra read off its roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    G2,
    Other { rank: usize, roots: usize },
}

impl RootType {
    /// `B₂` and `C₂` coincide.
    pub fn is_b(self, n: usize) -> bool {
        matches!(self, RootType::B(r) if r == n) || (n == 2 && self == RootType::C(2))
    }

    pub fn is_c(self, n: usize) -> bool {
        matches!(self, RootType::C(r) if r == n) || (n == 2 && self == RootType::B(2))
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::A(n) => write!(f, "A{n}"),
            RootType::B(n) => write!(f, "B{n}"),
            RootType::C(n) => write!(f, "C{n}"),
            RootType::D(n) => write!(f, "D{n}"),
            RootType::G2 => write!(f, "G2"),
            RootType::Other { rank, roots } => write!(f, "?(rank {rank}, {roots} roots)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimpleIdeal {
    pub algebra: LieAlgebraModel,
    pub root_type: RootType,
    pub rank: usize,
    /// Length of the longest root.
    pub max_root_length: f64,
}

fn classify_lengths(rank: usize, lengths: &[f64]) -> RootType {
    let n = lengths.len();
    let lmax = lengths.iter().cloned().fold(0.0, f64::max);
    let lmin = lengths.iter().cloned().fold(f64::INFINITY, f64::min);
    let r = rank;
    let other = RootType::Other { rank, roots: n };
    if (lmax - lmin) <= 1e-6 * lmax {
        return if n == r * (r + 1) {
            RootType::A(r)
        } else if r >= 4 && n == 2 * r * (r - 1) {
            RootType::D(r)
        } else {
            other
        };
    }
    let ratio = (lmax / lmin).powi(2);
    let long = lengths.iter().filter(|&&l| l > 0.5 * (lmax + lmin)).count();
    if (ratio - 3.0).abs() < 1e-6 && n == 12 {
        RootType::G2
    } else if (ratio - 2.0).abs() < 1e-6 && n == 2 * r * r {
        if long == 2 * r * (r - 1) {
            RootType::B(r)
        } else if long == 2 * r {
            RootType::C(r)
        } else {
            other
        }
    } else {
        other
    }
}

/// Centre and simple ideals of `alg`, one per connected component of the
/// root system.
pub fn simple_ideals(alg: &LieAlgebraModel, seed: u64) -> Result<(Subspace, Vec<SimpleIdeal>)> {
    let z = center(alg)?;
    if alg.dim() == 0 || alg.is_abelian() {
        return Ok((z, Vec::new()));
    }
    let t = maximal_torus(alg, seed)?;
    let rd = root_decomposition(alg, &t, seed)?;
    let mut out = Vec::new();
    for comp in rd.components() {
        let mut vectors = Vec::new();
        let mut cov = Vec::new();
        for &a in &comp {
            let (x, y) = rd.frame(a)?;
            vectors.push(x.bracket(&y)?);
            vectors.push(x);
            vectors.push(y);
            cov.push(rd.covector(a));
        }
        let ideal = LieAlgebraModel::from_span(format!("ideal{}", out.len()), alg.field(), alg.ambient_dim(), &vectors)?;
        let m = DMatrix::from_fn(cov.len(), rd.rank(), |i, j| cov[i][j]);
        let r = crate::linalg::rank(&m);
        let lengths: Vec<f64> = comp
            .iter()
            .flat_map(|&a| {
                let l = rd.length_sqr(a).sqrt();
                [l, l]
            })
            .collect();
        let max_root_length = lengths.iter().cloned().fold(0.0, f64::max);
        out.push(SimpleIdeal {
            algebra: ideal,
            root_type: classify_lengths(r, &lengths),
            rank: r,
            max_root_length,
        });
    }
    Ok((z, out))
}

/// Case labels 1–5 of the regular-chain classification, per simple ideal of `g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Taxonomy {
    /// `h` or `k` is not a regular subalgebra.
    NotRegular,
    /// Matching cases for each simple ideal; an empty entry means none matched.
    Cases(Vec<Vec<u8>>),
}

impl Taxonomy {
    pub fn matched(&self) -> bool {
        matches!(self, Taxonomy::Cases(c) if c.iter().all(|v| !v.is_empty()))
    }
}

impl fmt::Display for Taxonomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Taxonomy::NotRegular => f.write_str("-"),
            Taxonomy::Cases(c) if !self.matched() || c.is_empty() => f.write_str("NONE"),
            Taxonomy::Cases(c) => {
                let parts: Vec<String> = c
                    .iter()
                    .map(|v| v.iter().map(u8::to_string).collect::<Vec<_>>().join("/"))
                    .collect();
                write!(f, "case {}", parts.join("+"))
            }
        }
    }
}

/// Spectral norm of `ad_x` on `ideal` for unit `x`, compared with the
/// longest root length: equality singles out long-root `su(2)`s.
fn is_long_su2(ideal: &SimpleIdeal, a: &LieAlgebraModel) -> Result<bool> {
    if a.dim() != 3 {
        return Ok(false);
    }
    let x = &a.basis()[0];
    let g = &ideal.algebra;
    let coords = g.coefficients(x)?;
    let ad = g.ad_matrix(&coords);
    let norm = ad.singular_values().iter().cloned().fold(0.0, f64::max);
    Ok((norm - ideal.max_root_length).abs() <= TAU_ROOT.sqrt() * ideal.max_root_length)
}

fn is_semisimple(a: &LieAlgebraModel) -> Result<bool> {
    Ok(center(a)?.is_zero())
}

/// Which of the cases hold for one simple ideal `g_i` with `k_i = g_i ∩ k`
/// and `h_i = g_i ∩ h`.
pub fn ideal_cases(gi: &SimpleIdeal, ki: &LieAlgebraModel, hi: &LieAlgebraModel, seed: u64) -> Result<Vec<u8>> {
    let mut cases = Vec::new();
    let g = &gi.algebra;
    if ki.dim() == g.dim() {
        cases.push(1);
        return Ok(cases);
    }
    if is_symmetric_pair(ki, hi)? {
        cases.push(2);
    }
    let rk = rank(ki, seed)?;
    let rh = rank(hi, seed)?;
    let n = gi.rank;
    if n >= 2
        && gi.root_type.is_b(n)
        && ki.dim() == n * (2 * n - 1)
        && rk == n
        && hi.dim() == n * n - 1
        && rh == n - 1
        && is_semisimple(hi)?
    {
        cases.push(3);
    }
    if n >= 2 && gi.root_type.is_c(n) {
        let (_, kis) = simple_ideals(ki, seed)?;
        let outside: Vec<&SimpleIdeal> = kis
            .iter()
            .filter(|s| !s.algebra.subspace().is_contained_in(hi.subspace(), TAU_STRUCT).unwrap_or(false))
            .collect();
        if outside.len() == 1 && is_long_su2(gi, &outside[0].algebra)? {
            cases.push(4);
        }
    }
    if gi.root_type == RootType::G2
        && ki.dim() == 6
        && rk == 2
        && is_semisimple(ki)?
        && is_semisimple(hi)?
        && is_long_su2(gi, hi)?
    {
        cases.push(5);
    }
    Ok(cases)
}
