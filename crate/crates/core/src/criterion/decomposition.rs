use crate::algebra::LieAlgebraModel;
use crate::catalog::Chain;
use crate::error::{structural, Error, Result};
use crate::matrix::{dot, MatrixElement};
use crate::subspace::Subspace;
use crate::tolerances::TAU_STRUCT;

/// Orthogonal pieces `g = h ⊕ m ⊕ s` of a chain, with `p = m ⊕ s`.
///
/// The basis of `p` lists the basis of `m` first, so the first `dim m`
/// coordinates of a `p`-vector are its vertical part.
#[derive(Debug, Clone)]
pub struct ChainDecomposition {
    chain: Chain,
    m: Subspace,
    s: Subspace,
    p: Subspace,
    /// `[p_i, p_j]` in coordinates of `g`, flattened as `(i·dp + j)·dg + c`.
    p_brackets: Vec<f64>,
    /// `[m_i, m_j]^m` in coordinates of `m`, flattened as `(i·dm + j)·dm + c`.
    m_brackets: Vec<f64>,
}

/// Splits the chain and checks that `m` and `s` are `ad_h`-invariant.
pub fn decompose(chain: &Chain) -> Result<ChainDecomposition> {
    let (h, k, g) = (&chain.h, &chain.k, &chain.g);
    if !h.is_subalgebra_of(k)? || !k.is_subalgebra_of(g)? {
        return Err(structural(format!("{}: chain inclusions fail", chain.id)));
    }
    let m = h.subspace().orth_complement_in(k.subspace())?;
    let s = k.subspace().orth_complement_in(g.subspace())?;
    let mut pb = m.basis().to_vec();
    pb.extend(s.basis().iter().cloned());
    let p = Subspace::from_orthonormal(g.field(), g.ambient_dim(), pb)?;
    if m.dim() + s.dim() + h.dim() != g.dim() {
        return Err(structural(format!("{}: dimensions are not additive", chain.id)));
    }
    for hb in h.basis() {
        for (part, name) in [(&m, "m"), (&s, "s")] {
            for b in part.basis() {
                let c = hb.bracket(b)?;
                let r = part.residual_norm(&c)?;
                if r > TAU_STRUCT * c.norm().max(1.0) {
                    return Err(structural(format!("{}: [h, {name}] leaves {name} (residual {r:.2e})", chain.id)));
                }
            }
        }
    }

    let (dp, dm, dg) = (p.dim(), m.dim(), g.dim());
    let pg: Vec<Vec<f64>> = p.basis().iter().map(|b| g.coefficients(b)).collect::<Result<_>>()?;
    let mut p_brackets = vec![0.0; dp * dp * dg];
    for i in 0..dp {
        for j in (i + 1)..dp {
            let c = g.bracket_coords(&pg[i], &pg[j]);
            for (t, v) in c.iter().enumerate() {
                p_brackets[(i * dp + j) * dg + t] = *v;
                p_brackets[(j * dp + i) * dg + t] = -*v;
            }
        }
    }
    let mut m_brackets = vec![0.0; dm * dm * dm];
    for i in 0..dm {
        for j in 0..dm {
            let c = &p_brackets[(i * dp + j) * dg..(i * dp + j + 1) * dg];
            for a in 0..dm {
                m_brackets[(i * dm + j) * dm + a] = dot(&pg[a], c);
            }
        }
    }
    Ok(ChainDecomposition {
        chain: chain.clone(),
        m,
        s,
        p,
        p_brackets,
        m_brackets,
    })
}

impl ChainDecomposition {
    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn id(&self) -> &str {
        &self.chain.id
    }

    pub fn g(&self) -> &LieAlgebraModel {
        &self.chain.g
    }

    pub fn h(&self) -> &Subspace {
        self.chain.h.subspace()
    }

    pub fn m(&self) -> &Subspace {
        &self.m
    }

    pub fn s(&self) -> &Subspace {
        &self.s
    }

    pub fn p(&self) -> &Subspace {
        &self.p
    }

    /// `(dim h, dim m, dim s)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.chain.h.dim(), self.m.dim(), self.s.dim())
    }

    pub fn dim_p(&self) -> usize {
        self.p.dim()
    }

    pub fn dim_m(&self) -> usize {
        self.m.dim()
    }

    pub fn dim_g(&self) -> usize {
        self.chain.g.dim()
    }

    /// `[p_i, p_j]` in `g`-coordinates.
    pub fn p_bracket_basis(&self, i: usize, j: usize) -> &[f64] {
        let (dp, dg) = (self.dim_p(), self.dim_g());
        &self.p_brackets[(i * dp + j) * dg..(i * dp + j + 1) * dg]
    }

    /// `[m_i, m_j]^m` in `m`-coordinates.
    pub fn m_bracket_basis(&self, i: usize, j: usize) -> &[f64] {
        let dm = self.dim_m();
        &self.m_brackets[(i * dm + j) * dm..(i * dm + j + 1) * dm]
    }

    /// `[X, Y]` in `g`-coordinates for `p`-coordinates `x`, `y`.
    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let (dp, dg) = (self.dim_p(), self.dim_g());
        let mut out = vec![0.0; dg];
        for i in 0..dp {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..dp {
                let c = x[i] * y[j];
                if c == 0.0 || i == j {
                    continue;
                }
                for (o, b) in out.iter_mut().zip(self.p_bracket_basis(i, j)) {
                    *o += c * b;
                }
            }
        }
        out
    }

    /// `[X^m, Y^m]^m` in `m`-coordinates for `p`-coordinates `x`, `y`.
    pub fn m_bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let dm = self.dim_m();
        let mut out = vec![0.0; dm];
        for i in 0..dm {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..dm {
                let c = x[i] * y[j];
                if c == 0.0 || i == j {
                    continue;
                }
                for (o, b) in out.iter_mut().zip(self.m_bracket_basis(i, j)) {
                    *o += c * b;
                }
            }
        }
        out
    }

    /// Matrix with the given `p`-coordinates.
    pub fn element(&self, x: &[f64]) -> Result<MatrixElement> {
        self.p.combine(x)
    }

    /// `p`-coordinates of `x`; fails if `x` is not in `p`.
    pub fn p_coords(&self, x: &MatrixElement) -> Result<Vec<f64>> {
        if !self.p.same_ambient(x) {
            return Err(structural("element lives in a different matrix space"));
        }
        let (_, r) = self.p.project(x)?;
        if r.norm() > TAU_STRUCT * x.norm().max(1.0) {
            return Err(Error::Structural(format!("element is not in p (residual {:.2e})", r.norm())));
        }
        self.p.coefficients(x)
    }

    /// Vertical part `X^m` of a matrix.
    pub fn vertical(&self, x: &MatrixElement) -> Result<MatrixElement> {
        self.m.component(x)
    }

    /// Horizontal part `X^s` of a matrix.
    pub fn horizontal(&self, x: &MatrixElement) -> Result<MatrixElement> {
        self.s.component(x)
    }

    /// `[X^m, Y^m]^m` computed on matrices.
    pub fn m_bracket_element(&self, x: &MatrixElement, y: &MatrixElement) -> Result<MatrixElement> {
        self.m.component(&self.vertical(x)?.bracket(&self.vertical(y)?)?)
    }

    /// Whether `[m, m] ⊆ h`.
    pub fn is_symmetric(&self) -> bool {
        self.m_brackets.iter().all(|v| v.abs() < TAU_STRUCT)
    }
}

/// `g_t(X, Y) = g₀(X^m, Y^m)/(1 − t) + g₀(X^s, Y^s)` on `p`-coordinates.
pub fn metric_gt(dec: &ChainDecomposition, t: f64, x: &[f64], y: &[f64]) -> Result<f64> {
    if !(t < 1.0) {
        return Err(Error::Domain(format!("deformation parameter t = {t} must be below 1")));
    }
    let dm = dec.dim_m();
    Ok(dot(&x[..dm], &y[..dm]) / (1.0 - t) + dot(&x[dm..], &y[dm..]))
}

/// `[m, m] ⊆ h` for `m = k ⊖ h`, checked on basis pairs.
///
/// Given `[h, m] ⊆ m`, the map `+1` on `h`, `−1` on `m` is an automorphism
/// of `k` exactly when this holds.
pub fn is_symmetric_pair(k: &LieAlgebraModel, h: &LieAlgebraModel) -> Result<bool> {
    if !h.is_subalgebra_of(k)? {
        return Err(structural(format!("{} is not contained in {}", h.name(), k.name())));
    }
    let m = h.subspace().orth_complement_in(k.subspace())?;
    let b = m.basis();
    for i in 0..b.len() {
        for j in (i + 1)..b.len() {
            let c = b[i].bracket(&b[j])?;
            if m.coefficients(&c)?.iter().any(|v| v.abs() >= TAU_STRUCT) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
