//! Orthonormal subspaces of a matrix space under the real trace form.

use nalgebra::DMatrix;

use crate::error::{structural, Result};
use crate::linalg::{null_space, null_space_abs};
use crate::matrix::MatrixElement;
use crate::scalar::Field;
use crate::tolerances::{TAU_ROOT, TAU_STRUCT};

/// A subspace given by an orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    field: Field,
    n: usize,
    basis: Vec<MatrixElement>,
}

impl Subspace {
    pub fn zero(field: Field, n: usize) -> Self {
        Subspace { field, n, basis: Vec::new() }
    }

    /// Wraps a basis that is already orthonormal; checked to `TAU_STRUCT`.
    pub fn from_orthonormal(field: Field, n: usize, basis: Vec<MatrixElement>) -> Result<Self> {
        for b in &basis {
            if b.field() != field || b.dim() != n {
                return Err(structural("basis element outside the ambient space"));
            }
        }
        let s = Subspace { field, n, basis };
        let defect = s.orthonormality_defect();
        if defect > TAU_STRUCT {
            return Err(structural(format!("basis is not orthonormal (defect {defect:.2e})")));
        }
        Ok(s)
    }

    /// Gram–Schmidt with rank detection: vectors whose residual after
    /// projection has norm below `tau` are dropped.
    pub fn orthonormal_span(field: Field, n: usize, vectors: &[MatrixElement], tau: f64) -> Result<Self> {
        let mut basis: Vec<MatrixElement> = Vec::new();
        for v in vectors {
            if v.field() != field || v.dim() != n {
                return Err(structural("spanning vector outside the ambient space"));
            }
            let mut r = v.clone();
            // Two passes of modified Gram–Schmidt.
            for _ in 0..2 {
                for b in &basis {
                    let c = b.inner(&r)?;
                    r.axpy(-c, b)?;
                }
            }
            let nr = r.norm();
            if nr >= tau {
                basis.push(r.scale(1.0 / nr));
            }
        }
        Ok(Subspace { field, n, basis })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[MatrixElement] {
        &self.basis
    }

    pub fn same_ambient(&self, x: &MatrixElement) -> bool {
        x.field() == self.field && x.dim() == self.n
    }

    fn check_ambient(&self, x: &MatrixElement) -> Result<()> {
        if self.same_ambient(x) {
            Ok(())
        } else {
            Err(structural(format!(
                "element of {}x{} over {} used with a subspace of {}x{} over {}",
                x.dim(),
                x.dim(),
                x.field(),
                self.n,
                self.n,
                self.field
            )))
        }
    }

    /// Coordinates of the orthogonal projection of `x` in this basis.
    pub fn coefficients(&self, x: &MatrixElement) -> Result<Vec<f64>> {
        self.check_ambient(x)?;
        self.basis.iter().map(|b| b.inner(x)).collect()
    }

    /// Element with the given coordinates.
    pub fn combine(&self, coeffs: &[f64]) -> Result<MatrixElement> {
        if coeffs.len() != self.basis.len() {
            return Err(structural(format!(
                "{} coefficients for a {}-dimensional subspace",
                coeffs.len(),
                self.basis.len()
            )));
        }
        let mut out = MatrixElement::zeros(self.field, self.n);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if *c != 0.0 {
                out.axpy(*c, b)?;
            }
        }
        Ok(out)
    }

    /// Splits `x` into its component in this subspace and the orthogonal residual.
    pub fn project(&self, x: &MatrixElement) -> Result<(MatrixElement, MatrixElement)> {
        let comp = self.combine(&self.coefficients(x)?)?;
        let resid = x.sub(&comp)?;
        Ok((comp, resid))
    }

    pub fn component(&self, x: &MatrixElement) -> Result<MatrixElement> {
        self.combine(&self.coefficients(x)?)
    }

    /// Norm of the part of `x` orthogonal to this subspace.
    pub fn residual_norm(&self, x: &MatrixElement) -> Result<f64> {
        Ok(self.project(x)?.1.norm())
    }

    /// Membership up to `tol` relative to `max(1, |x|)`.
    pub fn contains(&self, x: &MatrixElement, tol: f64) -> Result<bool> {
        Ok(self.residual_norm(x)? <= tol * x.norm().max(1.0))
    }

    /// Whether every basis vector of `self` lies in `other`.
    pub fn is_contained_in(&self, other: &Subspace, tol: f64) -> Result<bool> {
        for b in &self.basis {
            if !other.contains(b, tol)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate().skip(i) {
                let target = if i == j { 1.0 } else { 0.0 };
                let g = crate::matrix::dot(a.data(), b.data());
                worst = worst.max((g - target).abs());
            }
        }
        worst
    }

    /// Subspace spanned by the elements with the given coordinate vectors,
    /// which must be orthonormal in `R^dim`.
    pub fn from_coefficient_vectors(&self, vectors: &[Vec<f64>]) -> Result<Subspace> {
        let basis = vectors
            .iter()
            .map(|c| self.combine(c))
            .collect::<Result<Vec<_>>>()?;
        Subspace::from_orthonormal(self.field, self.n, basis)
    }

    /// Orthogonal complement of `self` inside `within`; `self ⊆ within` is required.
    pub fn orth_complement_in(&self, within: &Subspace) -> Result<Subspace> {
        if self.field != within.field || self.n != within.n {
            return Err(structural("complement across different ambient spaces"));
        }
        if !self.is_contained_in(within, TAU_STRUCT)? {
            return Err(structural("subspace is not contained in the enclosing space"));
        }
        if self.is_zero() {
            return Ok(within.clone());
        }
        // Coefficient vectors c over `within` with <Σ c_j w_j, s_k> = 0 for all k.
        let m = DMatrix::from_fn(self.dim(), within.dim(), |k, j| {
            crate::matrix::dot(self.basis[k].data(), within.basis[j].data())
        });
        let ns = null_space(&m);
        let expected = within.dim() - self.dim();
        if ns.len() != expected {
            return Err(structural(format!(
                "complement has dimension {} but {expected} was expected",
                ns.len()
            )));
        }
        within.from_coefficient_vectors(&ns)
    }

    /// Intersection with `other`, as an orthonormal subspace of `self`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.field != other.field || self.n != other.n {
            return Err(structural("intersection across different ambient spaces"));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field, self.n));
        }
        // c with (I - P_other) Σ c_j u_j = 0.
        let resid: Vec<MatrixElement> = self
            .basis
            .iter()
            .map(|u| other.project(u).map(|(_, r)| r))
            .collect::<Result<_>>()?;
        let len = resid[0].data().len();
        let m = DMatrix::from_fn(len, self.dim(), |r, j| resid[j].data()[r]);
        let ns = null_space_abs(&m, TAU_ROOT);
        self.from_coefficient_vectors(&ns)
    }

    /// Span of the union.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        let all: Vec<MatrixElement> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::orthonormal_span(self.field, self.n, &all, TAU_STRUCT.sqrt())
    }

    /// Concatenates two mutually orthogonal subspaces, keeping both bases.
    pub fn direct_sum(&self, other: &Subspace) -> Result<Subspace> {
        let basis: Vec<MatrixElement> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::from_orthonormal(self.field, self.n, basis)
    }
}
