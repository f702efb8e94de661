//! Matrix models of compact Lie algebras: classical families, g₂,
//! embeddings and structural queries (centralizers, tori, rank, regularity).

use std::fmt;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{structural, Error, Result};
use crate::linalg::null_space;
use crate::matrix::{named, MatrixElement};
use crate::scalar::{Field, Quaternion};
use crate::subspace::Subspace;
use crate::tolerances::TAU_STRUCT;

/// Associative 3-form fixing the g₂ ⊂ so(7) embedding, as (a, b, c, sign)
/// with 1-based indices: φ = e127 + e347 + e567 + e135 − e146 − e236 − e245.
pub const G2_FORM: [(usize, usize, usize, f64); 7] = [
    (1, 2, 7, 1.0),
    (3, 4, 7, 1.0),
    (5, 6, 7, 1.0),
    (1, 3, 5, 1.0),
    (1, 4, 6, -1.0),
    (2, 3, 6, -1.0),
    (2, 4, 5, -1.0),
];

/// A Lie subalgebra of a matrix space with an orthonormal basis and its
/// structure constants `[b_i, b_j] = Σ_k c_ij^k b_k`.
#[derive(Clone)]
pub struct LieAlgebraModel {
    name: String,
    basis: Subspace,
    structure: Vec<f64>,
}

impl fmt::Debug for LieAlgebraModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LieAlgebraModel({}, dim {}, {}x{} over {})",
            self.name,
            self.dim(),
            self.ambient_dim(),
            self.ambient_dim(),
            self.field()
        )
    }
}

impl LieAlgebraModel {
    /// Wraps a subspace, computing structure constants and checking closure.
    pub fn from_subspace(name: impl Into<String>, basis: Subspace) -> Result<Self> {
        let name = name.into();
        let d = basis.dim();
        let mut structure = vec![0.0; d * d * d];
        let b = basis.basis();
        for i in 0..d {
            for j in (i + 1)..d {
                let c = b[i].bracket(&b[j])?;
                let coeffs = basis.coefficients(&c)?;
                let recon = basis.combine(&coeffs)?;
                let defect = c.sub(&recon)?.norm();
                if defect > TAU_STRUCT * c.norm().max(1.0) {
                    return Err(Error::Construction(format!(
                        "{name}: bracket of basis elements {i} and {j} leaves the span (residual {defect:.2e})"
                    )));
                }
                for (k, v) in coeffs.into_iter().enumerate() {
                    structure[(i * d + j) * d + k] = v;
                    structure[(j * d + i) * d + k] = -v;
                }
            }
        }
        Ok(LieAlgebraModel { name, basis, structure })
    }

    /// Subalgebra spanned by `vectors`; fails if the span is not closed.
    pub fn from_span(name: impl Into<String>, field: Field, n: usize, vectors: &[MatrixElement]) -> Result<Self> {
        let s = Subspace::orthonormal_span(field, n, vectors, TAU_STRUCT.sqrt())?;
        Self::from_subspace(name, s)
    }

    pub fn zero(name: impl Into<String>, field: Field, n: usize) -> Self {
        LieAlgebraModel {
            name: name.into(),
            basis: Subspace::zero(field, n),
            structure: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.ambient_dim()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.basis
    }

    pub fn basis(&self) -> &[MatrixElement] {
        self.basis.basis()
    }

    /// `c_ij^k`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> f64 {
        let d = self.dim();
        self.structure[(i * d + j) * d + k]
    }

    /// Bracket in coordinates.
    pub fn bracket_coords(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let d = self.dim();
        let mut out = vec![0.0; d];
        for i in 0..d {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                let xy = x[i] * y[j];
                if xy == 0.0 {
                    continue;
                }
                let row = &self.structure[(i * d + j) * d..(i * d + j + 1) * d];
                for (o, c) in out.iter_mut().zip(row) {
                    *o += xy * c;
                }
            }
        }
        out
    }

    /// Matrix of `ad_x` in the orthonormal basis (skew-symmetric).
    pub fn ad_matrix(&self, x: &[f64]) -> DMatrix<f64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for i in 0..d {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                for k in 0..d {
                    m[(k, j)] += x[i] * self.structure[(i * d + j) * d + k];
                }
            }
        }
        m
    }

    /// Largest residual of a basis bracket against the span.
    pub fn closure_defect(&self) -> Result<f64> {
        let b = self.basis();
        let mut worst: f64 = 0.0;
        for i in 0..b.len() {
            for j in (i + 1)..b.len() {
                let c = b[i].bracket(&b[j])?;
                worst = worst.max(self.basis.residual_norm(&c)?);
            }
        }
        Ok(worst)
    }

    pub fn contains(&self, x: &MatrixElement) -> Result<bool> {
        self.basis.contains(x, TAU_STRUCT)
    }

    pub fn is_subalgebra_of(&self, other: &LieAlgebraModel) -> Result<bool> {
        self.basis.is_contained_in(&other.basis, TAU_STRUCT)
    }

    pub fn coefficients(&self, x: &MatrixElement) -> Result<Vec<f64>> {
        self.basis.coefficients(x)
    }

    pub fn element(&self, coeffs: &[f64]) -> Result<MatrixElement> {
        self.basis.combine(coeffs)
    }

    /// Whether all basis brackets vanish.
    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(|c| c.abs() < TAU_STRUCT)
    }

    /// Same algebra placed on coordinates `coords` of an `n_big`-square
    /// matrix over `field`.
    pub fn embedded(&self, field: Field, n_big: usize, coords: &[usize]) -> Result<Self> {
        let basis = self
            .basis()
            .iter()
            .map(|b| b.promote(field)?.embed_block(n_big, coords))
            .collect::<Result<Vec<_>>>()?;
        let sub = Subspace::from_orthonormal(field, n_big, basis)?;
        Ok(LieAlgebraModel {
            name: self.name.clone(),
            basis: sub,
            structure: self.structure.clone(),
        })
    }

    /// Sum of subalgebras of one ambient space (closure re-checked).
    pub fn sum(name: impl Into<String>, parts: &[&LieAlgebraModel]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| structural("sum of an empty list of algebras"))?;
        let (field, n) = (first.field(), first.ambient_dim());
        let vectors: Vec<MatrixElement> = parts.iter().flat_map(|p| p.basis().iter().cloned()).collect();
        Self::from_span(name, field, n, &vectors)
    }

    /// `self ∩ other` as an algebra.
    pub fn intersect(&self, other: &LieAlgebraModel, name: impl Into<String>) -> Result<Self> {
        Self::from_subspace(name, self.basis.intersect(&other.basis)?)
    }

    /// Stable digest of the basis (sha256 over shortest round-trip decimals).
    pub fn digest(&self) -> String {
        crate::certfile::digest_subspace(&self.basis)
    }
}

/// Classical compact families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassicalKind {
    So,
    Su,
    U,
    Sp,
}

impl ClassicalKind {
    pub fn field(self) -> Field {
        match self {
            ClassicalKind::So => Field::Real,
            ClassicalKind::Su | ClassicalKind::U => Field::Complex,
            ClassicalKind::Sp => Field::Quaternion,
        }
    }

    pub fn expected_dim(self, n: usize) -> usize {
        match self {
            ClassicalKind::So => n * (n - 1) / 2,
            ClassicalKind::Su => n * n - 1,
            ClassicalKind::U => n * n,
            ClassicalKind::Sp => n * (2 * n + 1),
        }
    }

    fn label(self) -> &'static str {
        match self {
            ClassicalKind::So => "so",
            ClassicalKind::Su => "su",
            ClassicalKind::U => "u",
            ClassicalKind::Sp => "sp",
        }
    }
}

/// Orthonormal standard basis of so(n), su(n), u(n) or sp(n).
pub fn make_classical(kind: ClassicalKind, n: usize) -> Result<LieAlgebraModel> {
    if n == 0 {
        return Err(structural(format!("{}(0) is not defined", kind.label())));
    }
    let field = kind.field();
    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut basis = Vec::new();
    // Diagonal part.
    match kind {
        ClassicalKind::So => {}
        ClassicalKind::U => {
            for a in 0..n {
                let mut m = MatrixElement::zeros(field, n);
                m.set(a, a, Quaternion::I);
                basis.push(m);
            }
        }
        ClassicalKind::Su => {
            for k in 1..n {
                let norm = ((k * (k + 1)) as f64).sqrt();
                let mut m = MatrixElement::zeros(field, n);
                for l in 0..k {
                    m.set(l, l, Quaternion::I.scale(1.0 / norm));
                }
                m.set(k, k, Quaternion::I.scale(-(k as f64) / norm));
                basis.push(m);
            }
        }
        ClassicalKind::Sp => {
            for a in 0..n {
                for q in [Quaternion::I, Quaternion::J, Quaternion::K] {
                    let mut m = MatrixElement::zeros(field, n);
                    m.set(a, a, q);
                    basis.push(m);
                }
            }
        }
    }
    // Off-diagonal part.
    for a in 1..=n {
        for b in (a + 1)..=n {
            basis.push(named::e(field, n, a, b).scale(s2));
            match kind {
                ClassicalKind::So => {}
                ClassicalKind::Su | ClassicalKind::U => {
                    basis.push(named::f(field, n, a, b, Quaternion::I).scale(s2));
                }
                ClassicalKind::Sp => {
                    for q in [Quaternion::I, Quaternion::J, Quaternion::K] {
                        basis.push(named::f(field, n, a, b, q).scale(s2));
                    }
                }
            }
        }
    }
    let sub = Subspace::from_orthonormal(field, n, basis)?;
    let alg = LieAlgebraModel::from_subspace(format!("{}({n})", kind.label()), sub)?;
    debug_assert_eq!(alg.dim(), kind.expected_dim(n));
    Ok(alg)
}

/// The 14-dimensional derivation algebra of `G2_FORM` inside so(7).
pub fn make_g2() -> Result<LieAlgebraModel> {
    let so7 = make_classical(ClassicalKind::So, 7)?;
    // Antisymmetric tensor of the 3-form.
    let mut phi = [[[0.0f64; 7]; 7]; 7];
    for &(a, b, c, s) in &G2_FORM {
        let (a, b, c) = (a - 1, b - 1, c - 1);
        for (p, q, r, sign) in [
            (a, b, c, 1.0),
            (b, c, a, 1.0),
            (c, a, b, 1.0),
            (b, a, c, -1.0),
            (a, c, b, -1.0),
            (c, b, a, -1.0),
        ] {
            phi[p][q][r] = s * sign;
        }
    }
    // Rows indexed by the 35 triples u < v < w, columns by the so(7) basis.
    let triples: Vec<(usize, usize, usize)> = (0..7)
        .flat_map(|u| ((u + 1)..7).flat_map(move |v| ((v + 1)..7).map(move |w| (u, v, w))))
        .collect();
    let mut m = DMatrix::zeros(triples.len(), so7.dim());
    for (col, b) in so7.basis().iter().enumerate() {
        let a = |i: usize, j: usize| b.get(i, j).w;
        for (row, &(u, v, w)) in triples.iter().enumerate() {
            let mut s = 0.0;
            for i in 0..7 {
                s -= a(i, u) * phi[i][v][w] + a(i, v) * phi[u][i][w] + a(i, w) * phi[u][v][i];
            }
            m[(row, col)] = s;
        }
    }
    let ns = null_space(&m);
    if ns.len() != 14 {
        return Err(Error::Construction(format!(
            "3-form stabilizer has dimension {} instead of 14",
            ns.len()
        )));
    }
    let sub = so7.subspace().from_coefficient_vectors(&ns)?;
    LieAlgebraModel::from_subspace("g2", sub)
}

/// `{X ∈ g : [X, s] = 0 for every basis vector s of S}`.
pub fn centralizer(g: &LieAlgebraModel, s: &Subspace) -> Result<Subspace> {
    if g.dim() == 0 || s.is_zero() {
        return Ok(g.subspace().clone());
    }
    let len = g.basis()[0].data().len();
    let mut m = DMatrix::zeros(len * s.dim(), g.dim());
    for (j, b) in g.basis().iter().enumerate() {
        for (k, sv) in s.basis().iter().enumerate() {
            let c = b.bracket(sv)?;
            for (r, v) in c.data().iter().enumerate() {
                m[(k * len + r, j)] = *v;
            }
        }
    }
    let ns = null_space(&m);
    g.subspace().from_coefficient_vectors(&ns)
}

/// Center of `g`.
pub fn center(g: &LieAlgebraModel) -> Result<Subspace> {
    centralizer(g, g.subspace())
}

fn random_element(space: &Subspace, rng: &mut ChaCha8Rng) -> Result<MatrixElement> {
    let coeffs: Vec<f64> = (0..space.dim()).map(|_| StandardNormal.sample(rng)).collect();
    space.combine(&coeffs)
}

/// Maximal torus of `g` as the centralizer of a random element.
pub fn maximal_torus(g: &LieAlgebraModel, seed: u64) -> Result<Subspace> {
    maximal_torus_from(g, g.subspace(), seed)
}

/// Maximal torus of `g` through a random element of `probe_space ⊆ g`.
///
/// Three probes are drawn; the majority dimension wins. The caller is
/// responsible for `probe_space` containing regular elements.
pub fn maximal_torus_from(g: &LieAlgebraModel, probe_space: &Subspace, seed: u64) -> Result<Subspace> {
    if g.dim() == 0 {
        return Ok(g.subspace().clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<Subspace> = Vec::with_capacity(3);
    for _ in 0..3 {
        let x0 = random_element(probe_space, &mut rng)?;
        let line = Subspace::orthonormal_span(g.field(), g.ambient_dim(), &[x0], TAU_STRUCT)?;
        found.push(centralizer(g, &line)?);
    }
    let dims: Vec<usize> = found.iter().map(Subspace::dim).collect();
    let majority = dims
        .iter()
        .find(|&&d| dims.iter().filter(|&&e| e == d).count() >= 2)
        .copied()
        .ok_or_else(|| Error::DegenerateProbe(format!("torus probes disagree: dimensions {dims:?}")))?;
    let t = found.into_iter().find(|s| s.dim() == majority).expect("majority exists");
    let b = t.basis();
    for i in 0..b.len() {
        for j in (i + 1)..b.len() {
            if b[i].bracket(&b[j])?.norm() > TAU_STRUCT {
                return Err(Error::DegenerateProbe("probe centralizer is not abelian".into()));
            }
        }
    }
    Ok(t)
}

/// Rank of `g` (dimension of a maximal torus).
pub fn rank(g: &LieAlgebraModel, seed: u64) -> Result<usize> {
    if g.is_abelian() {
        return Ok(g.dim());
    }
    Ok(maximal_torus(g, seed)?.dim())
}

/// Regularity test `rk C_g(k) = rk g − rk k + rk Z(k)`.
pub fn is_regular_subalgebra(g: &LieAlgebraModel, k: &LieAlgebraModel, seed: u64) -> Result<bool> {
    if !k.is_subalgebra_of(g)? {
        return Err(structural(format!("{} is not contained in {}", k.name(), g.name())));
    }
    let c = LieAlgebraModel::from_subspace("centralizer", centralizer(g, k.subspace())?)?;
    let z = center(k)?.dim();
    let lhs = rank(&c, seed)? as i64;
    let rhs = rank(g, seed)? as i64 - rank(k, seed)? as i64 + z as i64;
    Ok(lhs == rhs)
}

/// Recipe for realizing one algebra inside another.
#[derive(Debug, Clone)]
pub enum Recipe {
    /// Direct sum of classical blocks on the given (0-based) coordinates,
    /// optionally intersected with the trace-zero matrices.
    Block {
        field: Field,
        n: usize,
        blocks: Vec<(ClassicalKind, Vec<usize>)>,
        traceless: bool,
    },
    /// Commutant of a complex structure `J` in so(2m), placed on `coords`
    /// of an `n`-square real matrix; `special` drops the centre `ℝJ`.
    ComplexStructureJ {
        j: MatrixElement,
        special: bool,
        n: usize,
        coords: Vec<usize>,
    },
    /// The stabilizer of `G2_FORM` in so(7).
    G2Form,
}

#[derive(Debug, Clone)]
pub struct EmbeddingSpec {
    pub source: String,
    pub target: String,
    pub recipe: Recipe,
}

/// Realizes the image of an embedding inside the target's matrix space.
pub fn embed(spec: &EmbeddingSpec) -> Result<LieAlgebraModel> {
    let alg = match &spec.recipe {
        Recipe::Block { field, n, blocks, traceless } => {
            let mut vectors = Vec::new();
            for (kind, coords) in blocks {
                if kind.field() > *field {
                    return Err(structural(format!("{kind:?} block does not fit over {field}")));
                }
                let part = make_classical(*kind, coords.len())?.embedded(*field, *n, coords)?;
                vectors.extend(part.basis().iter().cloned());
            }
            let mut sub = Subspace::orthonormal_span(*field, *n, &vectors, TAU_STRUCT.sqrt())?;
            if *traceless {
                let trace = MatrixElement::from_fn(*field, *n, |i, j| {
                    if i == j {
                        Quaternion::I
                    } else {
                        Quaternion::ZERO
                    }
                });
                if !sub.contains(&trace, TAU_STRUCT)? {
                    return Err(structural("traceless restriction needs the scalar matrices in the block sum"));
                }
                let line = Subspace::orthonormal_span(*field, *n, &[trace], TAU_STRUCT)?;
                let kept: Vec<MatrixElement> = sub
                    .basis()
                    .iter()
                    .map(|b| line.project(b).map(|(_, r)| r))
                    .collect::<Result<_>>()?;
                sub = Subspace::orthonormal_span(*field, *n, &kept, TAU_STRUCT.sqrt())?;
            }
            LieAlgebraModel::from_subspace(spec.source.clone(), sub)?
        }
        Recipe::ComplexStructureJ { j, special, n, coords } => {
            let m = j.dim();
            if j.field() != Field::Real || m % 2 != 0 {
                return Err(structural("complex structure must be a real matrix of even size"));
            }
            let jj = j.mul(j)?;
            if jj.add(&MatrixElement::identity(Field::Real, m))?.max_abs() > TAU_STRUCT {
                return Err(structural("J does not square to −1"));
            }
            let so = make_classical(ClassicalKind::So, m)?;
            let jline = Subspace::orthonormal_span(Field::Real, m, &[j.clone()], TAU_STRUCT)?;
            let mut u = centralizer(&so, &jline)?;
            if *special {
                u = jline.orth_complement_in(&u)?;
            }
            LieAlgebraModel::from_subspace(spec.source.clone(), u)?.embedded(Field::Real, *n, coords)?
        }
        Recipe::G2Form => make_g2()?,
    };
    Ok(alg.renamed(spec.source.clone()))
}

/// The anticommutant `{M ∈ so(2m) : JMJ = M}`, the complement of the
/// J-commutant.
pub fn j_anticommutant(j: &MatrixElement) -> Result<Subspace> {
    let m = j.dim();
    let so = make_classical(ClassicalKind::So, m)?;
    let mut mat = DMatrix::zeros(m * m, so.dim());
    for (c, b) in so.basis().iter().enumerate() {
        let jmj = j.mul(b)?.mul(j)?.sub(b)?;
        for (r, v) in jmj.data().iter().enumerate() {
            mat[(r, c)] = *v;
        }
    }
    so.subspace().from_coefficient_vectors(&null_space(&mat))
}

/// The block-diagonal complex structure of `blocks` copies of [[0, −1], [1, 0]].
pub fn standard_j(blocks: usize) -> MatrixElement {
    let m = 2 * blocks;
    let mut j = MatrixElement::zeros(Field::Real, m);
    for b in 0..blocks {
        j.set(2 * b, 2 * b + 1, Quaternion::real(-1.0));
        j.set(2 * b + 1, 2 * b, Quaternion::ONE);
    }
    j
}

/// The complex structure [[0, −I], [I, 0]] on ℝ^{2m}.
pub fn split_j(m: usize) -> MatrixElement {
    let mut j = MatrixElement::zeros(Field::Real, 2 * m);
    for a in 0..m {
        j.set(a, m + a, Quaternion::real(-1.0));
        j.set(m + a, a, Quaternion::ONE);
    }
    j
}
