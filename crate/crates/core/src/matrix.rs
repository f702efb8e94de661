//! Square matrices over ℝ, ℂ or ℍ.
//!
//! Entries are stored as `width` consecutive real components (1, 2 or 4),
//! row-major. The real trace form `Re tr(AᴴB)` is then the plain dot
//! product of the component vectors, which keeps all subspace arithmetic
//! field-uniform.

use std::fmt;

use crate::error::{structural, Result};
use crate::scalar::{Field, Quaternion};

#[derive(Clone, PartialEq)]
pub struct MatrixElement {
    field: Field,
    n: usize,
    data: Vec<f64>,
}

impl fmt::Debug for MatrixElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixElement<{}; {}x{}>[", self.field, self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                let q = self.get(i, j);
                match self.field {
                    Field::Real => write!(f, "{:>8.4} ", q.w)?,
                    Field::Complex => write!(f, "({:.4},{:.4}) ", q.w, q.x)?,
                    Field::Quaternion => write!(f, "({:.3},{:.3},{:.3},{:.3}) ", q.w, q.x, q.y, q.z)?,
                }
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl MatrixElement {
    pub fn zeros(field: Field, n: usize) -> Self {
        MatrixElement {
            field,
            n,
            data: vec![0.0; n * n * field.width()],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n);
        for i in 0..n {
            m.set(i, i, Quaternion::ONE);
        }
        m
    }

    /// Builds a matrix entry by entry. Components outside `field` are dropped.
    pub fn from_fn(field: Field, n: usize, f: impl Fn(usize, usize) -> Quaternion) -> Self {
        let mut m = Self::zeros(field, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Wraps a raw component vector (row-major, `field.width()` reals per entry).
    pub fn from_data(field: Field, n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n * field.width() {
            return Err(structural(format!(
                "component vector of length {} does not fit a {n}x{n} matrix over {field}",
                data.len()
            )));
        }
        Ok(MatrixElement { field, n, data })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Quaternion {
        let w = self.field.width();
        let o = (i * self.n + j) * w;
        let mut c = [0.0; 4];
        c[..w].copy_from_slice(&self.data[o..o + w]);
        Quaternion::from_components(c)
    }

    pub fn set(&mut self, i: usize, j: usize, q: Quaternion) {
        let w = self.field.width();
        let o = (i * self.n + j) * w;
        let c = q.components();
        self.data[o..o + w].copy_from_slice(&c[..w]);
    }

    pub fn same_space(&self, other: &MatrixElement) -> bool {
        self.field == other.field && self.n == other.n
    }

    fn check_same(&self, other: &MatrixElement, op: &str) -> Result<()> {
        if self.same_space(other) {
            Ok(())
        } else {
            Err(structural(format!(
                "{op}: {}x{} over {} vs {}x{} over {}",
                self.n, self.n, self.field, other.n, other.n, other.field
            )))
        }
    }

    pub fn add(&self, other: &MatrixElement) -> Result<MatrixElement> {
        self.check_same(other, "add")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(MatrixElement { data, ..*self })
    }

    pub fn sub(&self, other: &MatrixElement) -> Result<MatrixElement> {
        self.check_same(other, "sub")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(MatrixElement { data, ..*self })
    }

    pub fn scale(&self, s: f64) -> MatrixElement {
        MatrixElement {
            field: self.field,
            n: self.n,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: f64, other: &MatrixElement) -> Result<()> {
        self.check_same(other, "axpy")?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
        Ok(())
    }

    /// Real trace form `Re tr(AᴴB)`.
    pub fn inner(&self, other: &MatrixElement) -> Result<f64> {
        self.check_same(other, "inner")?;
        Ok(dot(&self.data, &other.data))
    }

    pub fn norm(&self) -> f64 {
        dot(&self.data, &self.data).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    pub fn mul(&self, other: &MatrixElement) -> Result<MatrixElement> {
        self.check_same(other, "mul")?;
        let mut out = MatrixElement::zeros(self.field, self.n);
        mul_into(self.field, self.n, &self.data, &other.data, &mut out.data, 1.0);
        Ok(out)
    }

    /// Commutator `AB − BA`.
    pub fn bracket(&self, other: &MatrixElement) -> Result<MatrixElement> {
        self.check_same(other, "bracket")?;
        let mut out = MatrixElement::zeros(self.field, self.n);
        bracket_into(self.field, self.n, &self.data, &other.data, &mut out.data);
        Ok(out)
    }

    /// Entrywise conjugate transpose.
    pub fn adjoint(&self) -> MatrixElement {
        MatrixElement::from_fn(self.field, self.n, |i, j| self.get(j, i).conj())
    }

    /// Largest entry of `Aᴴ + A`.
    pub fn skew_hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                worst = worst.max((self.get(i, j) + self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Same matrix viewed over a larger field.
    pub fn promote(&self, field: Field) -> Result<MatrixElement> {
        if field < self.field {
            return Err(structural(format!("cannot demote {} to {field}", self.field)));
        }
        Ok(MatrixElement::from_fn(field, self.n, |i, j| self.get(i, j)))
    }

    /// Places this matrix on the coordinates `coords` of an `n_big`-square matrix.
    pub fn embed_block(&self, n_big: usize, coords: &[usize]) -> Result<MatrixElement> {
        if coords.len() != self.n || coords.iter().any(|&c| c >= n_big) {
            return Err(structural(format!(
                "block embedding of size {} into {n_big} with coordinates {coords:?}",
                self.n
            )));
        }
        let mut out = MatrixElement::zeros(self.field, n_big);
        for (a, &ca) in coords.iter().enumerate() {
            for (b, &cb) in coords.iter().enumerate() {
                out.set(ca, cb, self.get(a, b));
            }
        }
        Ok(out)
    }

    /// Conjugation `P A Pᴴ`.
    pub fn conjugate_by(&self, p: &MatrixElement) -> Result<MatrixElement> {
        p.mul(self)?.mul(&p.adjoint())
    }

    /// Entrywise map, e.g. complex conjugation.
    pub fn map_entries(&self, f: impl Fn(Quaternion) -> Quaternion) -> MatrixElement {
        MatrixElement::from_fn(self.field, self.n, |i, j| f(self.get(i, j)))
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `out += s * A B` on raw component vectors.
pub(crate) fn mul_into(field: Field, n: usize, a: &[f64], b: &[f64], out: &mut [f64], s: f64) {
    match field {
        Field::Real => {
            for i in 0..n {
                for k in 0..n {
                    let aik = a[i * n + k];
                    if aik == 0.0 {
                        continue;
                    }
                    let aik = s * aik;
                    let row = &b[k * n..k * n + n];
                    let orow = &mut out[i * n..i * n + n];
                    for (o, bv) in orow.iter_mut().zip(row) {
                        *o += aik * bv;
                    }
                }
            }
        }
        Field::Complex => {
            for i in 0..n {
                for k in 0..n {
                    let ar = a[2 * (i * n + k)];
                    let ai = a[2 * (i * n + k) + 1];
                    if ar == 0.0 && ai == 0.0 {
                        continue;
                    }
                    let (ar, ai) = (s * ar, s * ai);
                    for j in 0..n {
                        let br = b[2 * (k * n + j)];
                        let bi = b[2 * (k * n + j) + 1];
                        out[2 * (i * n + j)] += ar * br - ai * bi;
                        out[2 * (i * n + j) + 1] += ar * bi + ai * br;
                    }
                }
            }
        }
        Field::Quaternion => {
            for i in 0..n {
                for k in 0..n {
                    let o = 4 * (i * n + k);
                    let qa = Quaternion::new(a[o], a[o + 1], a[o + 2], a[o + 3]);
                    if qa.norm_sqr() == 0.0 {
                        continue;
                    }
                    let qa = qa.scale(s);
                    for j in 0..n {
                        let ob = 4 * (k * n + j);
                        let qb = Quaternion::new(b[ob], b[ob + 1], b[ob + 2], b[ob + 3]);
                        let p = qa * qb;
                        let oo = 4 * (i * n + j);
                        out[oo] += p.w;
                        out[oo + 1] += p.x;
                        out[oo + 2] += p.y;
                        out[oo + 3] += p.z;
                    }
                }
            }
        }
    }
}

/// `out = AB − BA` on raw component vectors.
pub(crate) fn bracket_into(field: Field, n: usize, a: &[f64], b: &[f64], out: &mut [f64]) {
    out.iter_mut().for_each(|v| *v = 0.0);
    mul_into(field, n, a, b, out, 1.0);
    mul_into(field, n, b, a, out, -1.0);
}

/// Named matrices in 1-based notation.
///
/// `e(n, a, b)` is the skew matrix with `+1` at `(a, b)` and `−1` at `(b, a)`;
/// `f(n, a, b, q)` is `q` times the symmetric matrix with ones at `(a, b)` and
/// `(b, a)` (a single one when `a == b`).
pub mod named {
    use super::MatrixElement;
    use crate::scalar::{Field, Quaternion};

    pub fn e(field: Field, n: usize, a: usize, b: usize) -> MatrixElement {
        let mut m = MatrixElement::zeros(field, n);
        m.set(a - 1, b - 1, Quaternion::ONE);
        m.set(b - 1, a - 1, Quaternion::real(-1.0));
        m
    }

    pub fn f(field: Field, n: usize, a: usize, b: usize, q: Quaternion) -> MatrixElement {
        let mut m = MatrixElement::zeros(field, n);
        m.set(a - 1, b - 1, q);
        m.set(b - 1, a - 1, q);
        m
    }

    /// Diagonal matrix with the given entries.
    pub fn diag(field: Field, entries: &[Quaternion]) -> MatrixElement {
        let n = entries.len();
        MatrixElement::from_fn(field, n, |i, j| if i == j { entries[i] } else { Quaternion::ZERO })
    }
}

#[cfg(test)]
mod tests {
    use super::named::{e, f};
    use super::*;

    #[test]
    fn bracket_of_skew_generators() {
        let c = e(Field::Real, 4, 1, 2).bracket(&e(Field::Real, 4, 2, 3)).unwrap();
        assert_eq!(c, e(Field::Real, 4, 1, 3));
    }

    #[test]
    fn quaternion_scalar_bracket() {
        let i = MatrixElement::from_fn(Field::Quaternion, 1, |_, _| Quaternion::I);
        let j = MatrixElement::from_fn(Field::Quaternion, 1, |_, _| Quaternion::J);
        let c = i.bracket(&j).unwrap();
        assert_eq!(c.get(0, 0), Quaternion::K.scale(2.0));
    }

    #[test]
    fn trace_form_values() {
        let e12 = e(Field::Real, 4, 1, 2);
        assert_eq!(e12.inner(&e12).unwrap(), 2.0);
        assert_eq!(e12.inner(&e(Field::Real, 4, 3, 4)).unwrap(), 0.0);
        let if12 = f(Field::Complex, 3, 1, 2, Quaternion::I);
        assert_eq!(if12.inner(&if12).unwrap(), 2.0);
        assert_eq!(if12.skew_hermitian_defect(), 0.0);
    }

    #[test]
    fn mismatched_spaces_are_rejected() {
        let a = e(Field::Real, 3, 1, 2);
        let b = e(Field::Real, 4, 1, 2);
        assert!(a.bracket(&b).is_err());
        assert!(a.inner(&a.promote(Field::Complex).unwrap()).is_err());
    }

    #[test]
    fn block_embedding_preserves_brackets() {
        let a = e(Field::Real, 3, 1, 2);
        let b = e(Field::Real, 3, 2, 3);
        let coords = [0, 2, 4];
        let lhs = a.bracket(&b).unwrap().embed_block(5, &coords).unwrap();
        let rhs = a
            .embed_block(5, &coords)
            .unwrap()
            .bracket(&b.embed_block(5, &coords).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}
