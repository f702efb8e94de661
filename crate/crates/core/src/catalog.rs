//! Named chains `h ⊂ k ⊂ g` with their expected verdicts.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    center, embed, make_classical, make_g2, maximal_torus, split_j, standard_j, ClassicalKind, EmbeddingSpec,
    LieAlgebraModel, Recipe,
};
use crate::error::{structural, Error, Result};
use crate::linalg::null_space;
use crate::matrix::{named, MatrixElement};
use crate::roots::{root_decomposition, RootDatum, RootId};
use crate::scalar::{Field, Quaternion};
use crate::subspace::Subspace;
use crate::tolerances::{TAU_ROOT, TAU_STRUCT};

/// Seeds used for the torus and root computations inside g₂ chains, so the
/// realized bases are reproducible.
const G2_TORUS_SEED: u64 = 2;
const G2_ROOT_SEED: u64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExpectedVerdict {
    SymmetricPair,
    Fails,
    HoldsProved,
    HoldsConjectured,
}

impl ExpectedVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            ExpectedVerdict::SymmetricPair => "SYMMETRIC_PAIR",
            ExpectedVerdict::Fails => "FAILS",
            ExpectedVerdict::HoldsProved => "HOLDS_PROVED",
            ExpectedVerdict::HoldsConjectured => "HOLDS_CONJECTURED",
        }
    }
}

impl fmt::Display for ExpectedVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExpectedVerdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "SYMMETRIC_PAIR" => Ok(ExpectedVerdict::SymmetricPair),
            "FAILS" => Ok(ExpectedVerdict::Fails),
            "HOLDS_PROVED" => Ok(ExpectedVerdict::HoldsProved),
            "HOLDS_CONJECTURED" => Ok(ExpectedVerdict::HoldsConjectured),
            other => Err(structural(format!("unknown verdict tag `{other}`"))),
        }
    }
}

/// An involutive automorphism of `g`.
#[derive(Debug, Clone)]
pub enum Involution {
    /// Entrywise complex conjugation.
    Conjugation,
    /// `X ↦ P X Pᴴ` for a unitary `P` with `Ad_P² = id`.
    AdMatrix(MatrixElement),
}

impl Involution {
    pub fn apply(&self, x: &MatrixElement) -> Result<MatrixElement> {
        match self {
            Involution::Conjugation => {
                if x.field() != Field::Complex {
                    return Err(structural("complex conjugation needs a complex matrix algebra"));
                }
                Ok(x.map_entries(|q| Quaternion::new(q.w, -q.x, 0.0, 0.0)))
            }
            Involution::AdMatrix(p) => x.conjugate_by(&p.promote(x.field())?),
        }
    }

    /// Checks `σ² = id`, the automorphism property on basis pairs, and that
    /// the fixed set of `σ` on `g` is exactly `k`.
    pub fn check(&self, g: &LieAlgebraModel, k: &LieAlgebraModel) -> Result<()> {
        let b = g.basis();
        let images: Vec<MatrixElement> = b.iter().map(|x| self.apply(x)).collect::<Result<_>>()?;
        for (x, sx) in b.iter().zip(&images) {
            if self.apply(sx)?.sub(x)?.norm() > TAU_STRUCT {
                return Err(structural("involution does not square to the identity"));
            }
            if g.subspace().residual_norm(sx)? > TAU_STRUCT {
                return Err(structural("involution does not preserve the algebra"));
            }
        }
        for i in 0..b.len() {
            for j in (i + 1)..b.len() {
                let lhs = self.apply(&b[i].bracket(&b[j])?)?;
                let rhs = images[i].bracket(&images[j])?;
                if lhs.sub(&rhs)?.norm() > TAU_STRUCT {
                    return Err(structural("involution is not a bracket automorphism"));
                }
            }
        }
        let fixed = self.fixed_set(g)?;
        if fixed.dim() != k.dim() || !fixed.is_contained_in(k.subspace(), TAU_STRUCT)? {
            return Err(structural(format!(
                "fixed set has dimension {} but k has dimension {}",
                fixed.dim(),
                k.dim()
            )));
        }
        Ok(())
    }

    pub fn fixed_set(&self, g: &LieAlgebraModel) -> Result<Subspace> {
        let d = g.dim();
        let mut m = nalgebra::DMatrix::zeros(d, d);
        for (j, x) in g.basis().iter().enumerate() {
            let c = g.coefficients(&self.apply(x)?.sub(x)?)?;
            for (i, v) in c.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        g.subspace().from_coefficient_vectors(&null_space(&m))
    }
}

/// A realized chain `h ⊊ k ⊊ g` inside one matrix space.
#[derive(Debug, Clone)]
pub struct Chain {
    pub id: String,
    pub h: LieAlgebraModel,
    pub k: LieAlgebraModel,
    pub g: LieAlgebraModel,
    pub expected: Option<ExpectedVerdict>,
    pub reference: String,
    /// Commuting pair stated in closed form for this chain, if any.
    pub known_pair: Option<(MatrixElement, MatrixElement)>,
    /// Involution of `g` with fixed set `k`, and the invariant full-rank
    /// subalgebra `l` with `h = k ∩ l`.
    pub involution: Option<(Involution, LieAlgebraModel)>,
}

impl Chain {
    /// Assembles and validates a chain (strict inclusions, common ambient).
    pub fn new(id: impl Into<String>, h: LieAlgebraModel, k: LieAlgebraModel, g: LieAlgebraModel) -> Result<Self> {
        let id = id.into();
        if h.field() != g.field() || k.field() != g.field() || h.ambient_dim() != g.ambient_dim() || k.ambient_dim() != g.ambient_dim() {
            return Err(structural(format!("{id}: algebras live in different matrix spaces")));
        }
        if !(h.dim() < k.dim() && k.dim() < g.dim()) {
            return Err(structural(format!(
                "{id}: inclusions are not strict (dimensions {}, {}, {})",
                h.dim(),
                k.dim(),
                g.dim()
            )));
        }
        if !h.is_subalgebra_of(&k)? {
            return Err(structural(format!("{id}: h is not contained in k")));
        }
        if !k.is_subalgebra_of(&g)? {
            return Err(structural(format!("{id}: k is not contained in g")));
        }
        Ok(Chain {
            id,
            h,
            k,
            g,
            expected: None,
            reference: String::new(),
            known_pair: None,
            involution: None,
        })
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.h.dim(), self.k.dim(), self.g.dim())
    }

    fn with_pair(mut self, x: MatrixElement, y: MatrixElement) -> Self {
        self.known_pair = Some((x, y));
        self
    }

    fn with_involution(mut self, sigma: Involution, l: LieAlgebraModel) -> Result<Self> {
        sigma.check(&self.g, &self.k)?;
        let hl = self.k.intersect(&l, "k∩l")?;
        if hl.dim() != self.h.dim() || !hl.is_subalgebra_of(&self.h)? {
            return Err(structural(format!("{}: h is not k ∩ l", self.id)));
        }
        for x in l.basis() {
            if !l.contains(&sigma.apply(x)?)? {
                return Err(structural(format!("{}: l is not invariant under the involution", self.id)));
            }
        }
        self.involution = Some((sigma, l));
        Ok(self)
    }
}

/// A row of the catalog listing.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub expected: ExpectedVerdict,
    pub reference: &'static str,
    pub reserved: bool,
}

struct Entry {
    id: &'static str,
    expected: ExpectedVerdict,
    reference: &'static str,
    build: Option<fn() -> Result<Chain>>,
}

use ExpectedVerdict::*;

const ENTRIES: &[Entry] = &[
    Entry { id: "L4.1-1", expected: Fails, reference: "Lemma 4.1 (1)", build: Some(l41_1) },
    Entry { id: "L4.1-2", expected: Fails, reference: "Lemma 4.1 (2)", build: Some(l41_2) },
    Entry { id: "L4.1-3", expected: Fails, reference: "Lemma 4.1 (3)", build: Some(l41_3) },
    Entry { id: "L4.1-4", expected: Fails, reference: "Lemma 4.1 (4)", build: Some(l41_4) },
    Entry { id: "L4.1-5a", expected: Fails, reference: "Lemma 4.1 (5a)", build: Some(l41_5a) },
    Entry { id: "L4.1-5b", expected: Fails, reference: "Lemma 4.1 (5b)", build: Some(l41_5b) },
    Entry { id: "L4.1-6", expected: Fails, reference: "Lemma 4.1 (6)", build: Some(l41_6) },
    Entry { id: "C3.3-1-min", expected: Fails, reference: "Corollary 3.3 (1), n1=n2=n3=1", build: Some(c33_1) },
    Entry { id: "C3.3-2-min", expected: Fails, reference: "Corollary 3.3 (2), n1=n2=n3=1", build: Some(c33_2) },
    Entry { id: "C3.3-3-min", expected: Fails, reference: "Corollary 3.3 (3), n1=n2=n3=1", build: Some(c33_3) },
    Entry { id: "C3.3-4-min", expected: Fails, reference: "Corollary 3.3 (4), n1=n2=n3=1", build: Some(c33_4) },
    Entry { id: "C3.3-5", expected: Fails, reference: "Corollary 3.3 (5), E6 ambient", build: None },
    Entry { id: "C3.3-6", expected: Fails, reference: "Corollary 3.3 (6), E7 ambient", build: None },
    Entry { id: "C3.3-7", expected: Fails, reference: "Corollary 3.3 (7), E8 ambient", build: None },
    Entry { id: "C3.3-8", expected: Fails, reference: "Corollary 3.3 (8), F4 ambient", build: None },
    Entry { id: "C4.5-su3xsu2", expected: HoldsProved, reference: "Corollary 4.5 (ii)+(iii)", build: Some(c45_su3_su2) },
    Entry { id: "T5.1-n2", expected: HoldsProved, reference: "Theorem 5.1, n=2", build: Some(t51_n2) },
    Entry { id: "T5.1-n3", expected: HoldsProved, reference: "Theorem 5.1, n=3", build: Some(t51_n3) },
    Entry { id: "T6.5-sp2", expected: Fails, reference: "Theorem 6.5 proof, sp(2) pair", build: Some(t65_sp2) },
    Entry { id: "T6.5-A2", expected: Fails, reference: "Theorem 6.5 proof, A2 pair", build: Some(t65_a2) },
    Entry { id: "T6.5-B2-short", expected: Fails, reference: "Theorem 6.5 proof, B2 short-root pair", build: Some(t65_b2_short) },
    Entry { id: "T6.5-B2-long", expected: Fails, reference: "Theorem 6.5 proof, B2 long-root pair", build: Some(t65_b2_long) },
    Entry { id: "G2-so7-so8", expected: HoldsProved, reference: "Section 2 examples, p=0", build: Some(g2_so7_so8) },
    Entry { id: "G2-so7-so9", expected: HoldsProved, reference: "Section 2 examples, p=1", build: Some(g2_so7_so9) },
    Entry { id: "G2-su2-so4", expected: HoldsProved, reference: "Section 2 examples, SU(2) ⊂ SO(4) ⊂ G2", build: Some(g2_su2_so4) },
    Entry { id: "CONJ-sp-n2", expected: HoldsConjectured, reference: "Remark 6.7, n=2", build: Some(conj_sp_n2) },
    Entry { id: "CONJ-sp-n3", expected: HoldsConjectured, reference: "Remark 6.7, n=3", build: Some(conj_sp_n3) },
    Entry { id: "SYM-u2-so4-so5", expected: SymmetricPair, reference: "symmetric control (so(4), u(2))", build: Some(sym_u2) },
    Entry { id: "SYM-u3-so6-so7", expected: SymmetricPair, reference: "symmetric control (so(6), u(3))", build: Some(sym_u3) },
    Entry { id: "SYM-so3-so4-so5", expected: SymmetricPair, reference: "symmetric control (so(4), so(3))", build: Some(sym_so3) },
    Entry { id: "SYM-so4-so5-so6", expected: SymmetricPair, reference: "symmetric control (so(5), so(4))", build: Some(sym_so4) },
];

/// All catalog ids in listing order.
pub fn list_catalog() -> Vec<CatalogEntry> {
    ENTRIES
        .iter()
        .map(|e| CatalogEntry {
            id: e.id,
            expected: e.expected,
            reference: e.reference,
            reserved: e.build.is_none(),
        })
        .collect()
}

/// Builds the chain with the given id.
pub fn build_chain(id: &str) -> Result<Chain> {
    let entry = ENTRIES
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownChain(id.to_string()))?;
    let build = entry.build.ok_or_else(|| Error::ReservedChain(id.to_string()))?;
    let mut chain = build().map_err(|e| match e {
        Error::Structural(msg) | Error::Construction(msg) => Error::Construction(format!("{id}: {msg}")),
        other => other,
    })?;
    chain.id = id.to_string();
    chain.expected = Some(entry.expected);
    chain.reference = entry.reference.to_string();
    Ok(chain)
}

// ---------------------------------------------------------------------------
// Building blocks. Coordinates are 0-based; the `named` matrices are 1-based.

fn block(name: &str, field: Field, n: usize, blocks: &[(ClassicalKind, &[usize])], traceless: bool) -> Result<LieAlgebraModel> {
    embed(&EmbeddingSpec {
        source: name.into(),
        target: format!("{field}^{n}x{n}"),
        recipe: Recipe::Block {
            field,
            n,
            blocks: blocks.iter().map(|(k, c)| (*k, c.to_vec())).collect(),
            traceless,
        },
    })
}

fn classical(kind: ClassicalKind, n: usize) -> Result<LieAlgebraModel> {
    make_classical(kind, n)
}

fn j_algebra(name: &str, j: MatrixElement, special: bool, n: usize, coords: &[usize]) -> Result<LieAlgebraModel> {
    embed(&EmbeddingSpec {
        source: name.into(),
        target: format!("so({n})"),
        recipe: Recipe::ComplexStructureJ {
            j,
            special,
            n,
            coords: coords.to_vec(),
        },
    })
}

fn span(name: &str, field: Field, n: usize, v: &[MatrixElement]) -> Result<LieAlgebraModel> {
    LieAlgebraModel::from_span(name, field, n, v)
}

fn sum(name: &str, parts: &[&LieAlgebraModel]) -> Result<LieAlgebraModel> {
    LieAlgebraModel::sum(name, parts)
}

const R: Field = Field::Real;
const C: Field = Field::Complex;
const H: Field = Field::Quaternion;
use ClassicalKind::{So, Sp, Su, U};

fn e(field: Field, n: usize, a: usize, b: usize) -> MatrixElement {
    named::e(field, n, a, b)
}

fn f(field: Field, n: usize, a: usize, b: usize, q: Quaternion) -> MatrixElement {
    named::f(field, n, a, b, q)
}

fn add(parts: &[MatrixElement]) -> MatrixElement {
    let mut out = MatrixElement::zeros(parts[0].field(), parts[0].dim());
    for p in parts {
        out.axpy(1.0, p).expect("same space");
    }
    out
}

fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
    Quaternion::new(w, x, y, z)
}

fn g2_datum() -> Result<RootDatum> {
    let g2 = make_g2()?;
    let t = maximal_torus(&g2, G2_TORUS_SEED)?;
    root_decomposition(&g2, &t, G2_ROOT_SEED)
}

fn long_roots(rd: &RootDatum) -> BTreeSet<RootId> {
    let lmax = rd.all_roots().map(|a| rd.length_sqr(a)).fold(0.0, f64::max);
    rd.all_roots().filter(|&a| rd.length_sqr(a) > 0.9 * lmax).collect()
}

// ---------------------------------------------------------------------------
// Entries.

fn l41_1() -> Result<Chain> {
    let h = block("t3", C, 4, &[(U, &[0]), (U, &[1]), (U, &[2]), (U, &[3])], true)?;
    let k = block("s(u(3)+u(1))", C, 4, &[(U, &[0, 1, 2]), (U, &[3])], true)?;
    let g = classical(Su, 4)?;
    let x = add(&[e(C, 4, 1, 2), e(C, 4, 1, 4)]);
    let y = add(&[e(C, 4, 2, 3), e(C, 4, 3, 4)]);
    Ok(Chain::new("", h, k, g)?.with_pair(x, y))
}

fn l41_2() -> Result<Chain> {
    let u2 = j_algebra("u(2)", split_j(2), false, 7, &[0, 1, 2, 3])?;
    let so2 = block("so(2)", R, 7, &[(So, &[4, 5])], false)?;
    let h = sum("u(2)+so(2)", &[&u2, &so2])?;
    let k = block("so(6)", R, 7, &[(So, &[0, 1, 2, 3, 4, 5])], false)?;
    let g = classical(So, 7)?;
    let x = e(R, 7, 1, 5).sub(&e(R, 7, 1, 7))?;
    let y = add(&[e(R, 7, 2, 5), e(R, 7, 2, 7)]);
    Ok(Chain::new("", h, k, g)?.with_pair(x, y))
}

fn l41_3() -> Result<Chain> {
    let u2 = j_algebra("u(2)", split_j(2), false, 7, &[0, 1, 2, 3])?;
    let so2 = block("so(2)", R, 7, &[(So, &[5, 6])], false)?;
    let h = sum("u(2)+so(2)", &[&u2, &so2])?;
    let k = block("so(5)+so(2)", R, 7, &[(So, &[0, 1, 2, 3, 4]), (So, &[5, 6])], false)?;
    let g = classical(So, 7)?;
    let x = add(&[e(R, 7, 1, 5), e(R, 7, 1, 6)]);
    let y = e(R, 7, 2, 5).sub(&e(R, 7, 2, 6))?;
    Ok(Chain::new("", h, k, g)?.with_pair(x, y))
}

fn l41_4() -> Result<Chain> {
    let h = block("u(1)^3", H, 3, &[(U, &[0]), (U, &[1]), (U, &[2])], false)?;
    let k = block("u(3)", H, 3, &[(U, &[0, 1, 2])], false)?;
    let g = classical(Sp, 3)?;
    Ok(Chain::new("", h, k, g)?)
}

fn l41_5_pair() -> (MatrixElement, MatrixElement) {
    let x = add(&[f(H, 3, 1, 2, Quaternion::I), e(H, 3, 2, 3), f(H, 3, 1, 3, Quaternion::I)]);
    let y = add(&[
        f(H, 3, 1, 2, Quaternion::K),
        f(H, 3, 2, 3, Quaternion::J),
        f(H, 3, 1, 3, Quaternion::K).scale(-1.0),
    ]);
    (x, y)
}

fn l41_5a() -> Result<Chain> {
    let h = block("sp(1)+u(1)+sp(1)", H, 3, &[(Sp, &[0]), (U, &[1]), (Sp, &[2])], false)?;
    let k = block("sp(2)+sp(1)", H, 3, &[(Sp, &[0, 1]), (Sp, &[2])], false)?;
    let g = classical(Sp, 3)?;
    let (x, y) = l41_5_pair();
    Ok(Chain::new("", h, k, g)?.with_pair(x, y))
}

fn l41_5b() -> Result<Chain> {
    let h = block("sp(1)+u(1)+u(1)", H, 3, &[(Sp, &[0]), (U, &[1]), (U, &[2])], false)?;
    let k = block("sp(2)+u(1)", H, 3, &[(Sp, &[0, 1]), (U, &[2])], false)?;
    let g = classical(Sp, 3)?;
    let (x, y) = l41_5_pair();
    Ok(Chain::new("", h, k, g)?.with_pair(x, y))
}

fn l41_6() -> Result<Chain> {
    let rd = g2_datum()?;
    let k = rd.regular_subalgebra_from_roots(&long_roots(&rd), rd.torus(), "su(3)")?;
    let h = LieAlgebraModel::from_subspace("t2", rd.torus().clone())?;
    Ok(Chain::new("", h, k, rd.algebra().clone())?)
}

fn c33_1() -> Result<Chain> {
    let h = LieAlgebraModel::zero("0", C, 3);
    let k = block("so(3)", C, 3, &[(So, &[0, 1, 2])], false)?;
    let g = classical(Su, 3)?;
    let l = block("s(u(1)^3)", C, 3, &[(U, &[0]), (U, &[1]), (U, &[2])], true)?;
    Chain::new("", h, k, g)?.with_involution(Involution::Conjugation, l)
}

fn c33_2() -> Result<Chain> {
    let h = block("so(2)", R, 7, &[(So, &[0, 1])], false)?;
    let k = block("so(4)+so(3)", R, 7, &[(So, &[0, 1, 2, 3]), (So, &[4, 5, 6])], false)?;
    let g = classical(So, 7)?;
    let l = block("so(3)+so(2)+so(2)", R, 7, &[(So, &[0, 1, 4]), (So, &[2, 5]), (So, &[3, 6])], false)?;
    let p = named::diag(R, &[1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0].map(Quaternion::real));
    Chain::new("", h, k, g)?.with_involution(Involution::AdMatrix(p), l)
}

fn c33_3() -> Result<Chain> {
    let h = block("u(1)^3", H, 3, &[(U, &[0]), (U, &[1]), (U, &[2])], false)?;
    let k = block("u(3)", H, 3, &[(U, &[0, 1, 2])], false)?;
    let g = classical(Sp, 3)?;
    let l = block("sp(1)^3", H, 3, &[(Sp, &[0]), (Sp, &[1]), (Sp, &[2])], false)?;
    let p = named::diag(H, &[Quaternion::I; 3]);
    Chain::new("", h, k, g)?.with_involution(Involution::AdMatrix(p), l)
}

fn c33_4() -> Result<Chain> {
    let h = LieAlgebraModel::zero("0", R, 6);
    let k = block("so(3)+so(3)", R, 6, &[(So, &[0, 1, 2]), (So, &[3, 4, 5])], false)?;
    let g = classical(So, 6)?;
    let l = block("so(2)^3", R, 6, &[(So, &[0, 3]), (So, &[1, 4]), (So, &[2, 5])], false)?;
    let p = named::diag(R, &[1.0, 1.0, 1.0, -1.0, -1.0, -1.0].map(Quaternion::real));
    Chain::new("", h, k, g)?.with_involution(Involution::AdMatrix(p), l)
}

fn c45_su3_su2() -> Result<Chain> {
    let g = block("su(3)+su(2)", C, 5, &[(Su, &[0, 1, 2]), (Su, &[3, 4])], false)?;
    let t1 = named::diag(C, &[Quaternion::ZERO, Quaternion::ZERO, Quaternion::ZERO, Quaternion::I, -Quaternion::I]);
    let su3 = block("su(3)", C, 5, &[(Su, &[0, 1, 2])], false)?;
    let mut kv = su3.basis().to_vec();
    kv.push(t1.clone());
    let k = span("su(3)+t1", C, 5, &kv)?;
    let t2a = named::diag(C, &[Quaternion::I, -Quaternion::I, Quaternion::ZERO, Quaternion::ZERO, Quaternion::ZERO]);
    let t2b = named::diag(C, &[Quaternion::ZERO, Quaternion::I, -Quaternion::I, Quaternion::ZERO, Quaternion::ZERO]);
    let h = span("t2+t1", C, 5, &[t2a, t2b, t1])?;
    Chain::new("", h, k, g)
}

fn t51(n: usize) -> Result<Chain> {
    let coords: Vec<usize> = (0..2 * n).collect();
    let h = j_algebra(&format!("su({n})"), standard_j(n), true, 2 * n + 1, &coords)?;
    let k = block(&format!("so({})", 2 * n), R, 2 * n + 1, &[(So, &coords)], false)?;
    let g = classical(So, 2 * n + 1)?;
    Chain::new("", h, k, g)
}

fn t51_n2() -> Result<Chain> {
    t51(2)
}

fn t51_n3() -> Result<Chain> {
    t51(3)
}

fn t65_sp2() -> Result<Chain> {
    let h = LieAlgebraModel::zero("0", H, 2);
    let k = block("sp(1)+sp(1)", H, 2, &[(Sp, &[0]), (Sp, &[1])], false)?;
    let g = classical(Sp, 2)?;
    let x = MatrixElement::from_fn(H, 2, |i, j| match (i, j) {
        (0, 0) => q(0.0, 0.0, 1.0, 0.0),
        (0, 1) => q(1.0, 0.0, 1.0, 0.0),
        (1, 0) => q(-1.0, 0.0, 1.0, 0.0),
        _ => q(0.0, 1.0, 0.0, -1.0),
    });
    let y = MatrixElement::from_fn(H, 2, |i, j| match (i, j) {
        (0, 0) => q(0.0, -1.0, 0.0, -1.0),
        (0, 1) | (1, 0) => q(0.0, 1.0, 0.0, 0.0),
        _ => q(0.0, 0.5, 1.0, -0.5),
    });
    Ok(Chain::new("", h, k, g)?.with_pair(x, y))
}

fn t65_a2() -> Result<Chain> {
    let k = block("s(u(1)+u(2))", C, 3, &[(U, &[0]), (U, &[1, 2])], true)?;
    let h = LieAlgebraModel::from_subspace("u(1)", center(&k)?)?;
    let g = classical(Su, 3)?;
    let x = add(&[e(C, 3, 2, 3), e(C, 3, 1, 2), e(C, 3, 1, 3)]);
    let y = add(&[
        f(C, 3, 2, 3, Quaternion::I),
        f(C, 3, 1, 2, Quaternion::I),
        f(C, 3, 1, 3, Quaternion::I).scale(-1.0),
    ]);
    Ok(Chain::new("", h, k, g)?.with_pair(x, y))
}

fn t65_b2_short() -> Result<Chain> {
    let h = block("so(2)", R, 5, &[(So, &[3, 4])], false)?;
    let k = block("so(3)+so(2)", R, 5, &[(So, &[0, 1, 2]), (So, &[3, 4])], false)?;
    let g = classical(So, 5)?;
    let x = e(R, 5, 1, 2).sub(&e(R, 5, 2, 4))?;
    let y = add(&[e(R, 5, 1, 3), e(R, 5, 3, 4)]);
    Ok(Chain::new("", h, k, g)?.with_pair(x, y))
}

fn t65_b2_long() -> Result<Chain> {
    let h = LieAlgebraModel::zero("0", R, 5);
    let k = span(
        "su(2)",
        R,
        5,
        &[
            add(&[e(R, 5, 2, 3), e(R, 5, 4, 5)]),
            add(&[e(R, 5, 2, 5), e(R, 5, 3, 4)]),
            e(R, 5, 2, 4).sub(&e(R, 5, 3, 5))?,
        ],
    )?;
    let g = classical(So, 5)?;
    let x = add(&[
        add(&[e(R, 5, 2, 5), e(R, 5, 3, 4)]).scale(0.5),
        e(R, 5, 1, 4),
        e(R, 5, 2, 3).sub(&e(R, 5, 4, 5))?.scale(0.5),
    ]);
    let y = add(&[
        add(&[e(R, 5, 2, 3), e(R, 5, 4, 5)]).scale(0.5),
        e(R, 5, 1, 2),
        e(R, 5, 2, 5).sub(&e(R, 5, 3, 4))?.scale(0.5),
    ]);
    Ok(Chain::new("", h, k, g)?.with_pair(x, y))
}

fn g2_so7(n: usize) -> Result<Chain> {
    let coords: Vec<usize> = (0..7).collect();
    let h = make_g2()?.embedded(R, n, &coords)?;
    let k = block("so(7)", R, n, &[(So, &coords)], false)?;
    let g = classical(So, n)?;
    Chain::new("", h, k, g)
}

fn g2_so7_so8() -> Result<Chain> {
    g2_so7(8)
}

fn g2_so7_so9() -> Result<Chain> {
    g2_so7(9)
}

fn g2_su2_so4() -> Result<Chain> {
    let rd = g2_datum()?;
    let long = long_roots(&rd);
    let gamma = rd
        .positive_roots()
        .find(|a| long.contains(a))
        .ok_or_else(|| structural("g2 has no long root"))?;
    let delta = rd
        .positive_roots()
        .find(|&a| !long.contains(&a) && rd.inner(a, gamma).abs() <= TAU_ROOT * rd.length_sqr(gamma))
        .ok_or_else(|| structural("no short root orthogonal to the chosen long root"))?;
    let k_roots: BTreeSet<RootId> = [gamma, rd.negate(gamma), delta, rd.negate(delta)].into();
    let k = rd.regular_subalgebra_from_roots(&k_roots, rd.torus(), "so(4)")?;
    let (xg, yg) = rd.frame(gamma)?;
    let coroot = Subspace::orthonormal_span(R, 7, &[xg.bracket(&yg)?], TAU_STRUCT)?;
    let h_roots: BTreeSet<RootId> = [gamma, rd.negate(gamma)].into();
    let h = rd.regular_subalgebra_from_roots(&h_roots, &coroot, "su(2)")?;
    Chain::new("", h, k, rd.algebra().clone())
}

fn conj_sp(n: usize) -> Result<Chain> {
    let hb: Vec<(ClassicalKind, Vec<usize>)> = (0..n - 1).map(|i| (Sp, vec![i])).collect();
    let kb: Vec<(ClassicalKind, Vec<usize>)> = (0..n).map(|i| (Sp, vec![i])).collect();
    let as_slices = |v: &[(ClassicalKind, Vec<usize>)]| -> Vec<(ClassicalKind, Vec<usize>)> { v.to_vec() };
    let h = embed(&EmbeddingSpec {
        source: format!("sp(1)^{}", n - 1),
        target: format!("sp({n})"),
        recipe: Recipe::Block { field: H, n, blocks: as_slices(&hb), traceless: false },
    })?;
    let k = embed(&EmbeddingSpec {
        source: format!("sp(1)^{n}"),
        target: format!("sp({n})"),
        recipe: Recipe::Block { field: H, n, blocks: as_slices(&kb), traceless: false },
    })?;
    let g = classical(Sp, n)?;
    Chain::new("", h, k, g)
}

fn conj_sp_n2() -> Result<Chain> {
    conj_sp(2)
}

fn conj_sp_n3() -> Result<Chain> {
    conj_sp(3)
}

fn sym_u(n: usize) -> Result<Chain> {
    let coords: Vec<usize> = (0..2 * n).collect();
    let h = j_algebra(&format!("u({n})"), standard_j(n), false, 2 * n + 1, &coords)?;
    let k = block(&format!("so({})", 2 * n), R, 2 * n + 1, &[(So, &coords)], false)?;
    let g = classical(So, 2 * n + 1)?;
    Chain::new("", h, k, g)
}

fn sym_u2() -> Result<Chain> {
    sym_u(2)
}

fn sym_u3() -> Result<Chain> {
    sym_u(3)
}

fn sym_so(n: usize) -> Result<Chain> {
    let hc: Vec<usize> = (0..n).collect();
    let kc: Vec<usize> = (0..n + 1).collect();
    let h = block(&format!("so({n})"), R, n + 2, &[(So, &hc)], false)?;
    let k = block(&format!("so({})", n + 1), R, n + 2, &[(So, &kc)], false)?;
    let g = classical(So, n + 2)?;
    Chain::new("", h, k, g)
}

fn sym_so3() -> Result<Chain> {
    sym_so(3)
}

fn sym_so4() -> Result<Chain> {
    sym_so(4)
}
