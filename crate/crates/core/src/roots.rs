//! Real root-space decomposition relative to a maximal torus.
//!
//! Roots are indexed by [`RootId`]: ids `0..p` are the positive roots and
//! `p..2p` their negatives, with frames `X_{-α} = X_α`, `Y_{-α} = -Y_α`.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebraModel;
use crate::error::{structural, Error, Result};
use crate::linalg::{null_space, symmetric_eigen};
use crate::matrix::{dot, MatrixElement};
use crate::subspace::Subspace;
use crate::tolerances::{TAU_ROOT, TAU_STRUCT, THETA_CLUSTER_REL};

pub type RootId = usize;

const MAX_PROBES: usize = 5;

#[derive(Debug, Clone)]
struct Frame {
    covector: Vec<f64>,
    x: Vec<f64>,
    y: Vec<f64>,
}

/// Torus, roots and orthonormal real root frames of a compact algebra.
#[derive(Debug, Clone)]
pub struct RootDatum {
    algebra: LieAlgebraModel,
    torus: Subspace,
    torus_coords: Vec<Vec<f64>>,
    positivity: Vec<f64>,
    frames: Vec<Frame>,
}

/// Isomorphism type of a rank-two integer span of roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rank2Type {
    A2,
    B2,
    G2,
    Reducible,
}

/// A complex number `re + i·im`, used for `N_{α,β}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
}

fn column_matrix(cols: &[Vec<f64>], rows: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i])
}

fn mat_vec(m: &DMatrix<f64>, v: &[f64]) -> Vec<f64> {
    (m * DVector::from_column_slice(v)).iter().cloned().collect()
}

fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Decomposes `g` relative to the maximal torus `t`.
pub fn root_decomposition(g: &LieAlgebraModel, t: &Subspace, seed: u64) -> Result<RootDatum> {
    let d = g.dim();
    let r = t.dim();
    let mut torus_coords = Vec::with_capacity(r);
    for h in t.basis() {
        if g.subspace().residual_norm(h)? > TAU_STRUCT {
            return Err(structural("torus is not contained in the algebra"));
        }
        torus_coords.push(g.coefficients(h)?);
    }
    let ads: Vec<DMatrix<f64>> = torus_coords.iter().map(|h| g.ad_matrix(h)).collect();
    for i in 0..r {
        for j in (i + 1)..r {
            if (&ads[i] * &ads[j] - &ads[j] * &ads[i]).amax() > TAU_STRUCT {
                return Err(structural("torus is not abelian"));
            }
        }
    }
    let complement = if r == 0 {
        (0..d)
            .map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect()
    } else {
        let rows = DMatrix::from_fn(r, d, |i, j| torus_coords[i][j]);
        null_space(&rows)
    };
    if complement.len() != d - r || (d - r) % 2 != 0 {
        return Err(structural(format!(
            "torus complement has dimension {} in an algebra of dimension {d} and rank {r}",
            complement.len()
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| -> DMatrix<f64> {
        let mut a = DMatrix::zeros(d, d);
        for ad in &ads {
            let c: f64 = StandardNormal.sample(rng);
            a += ad * c;
        }
        a
    };
    let frame_probe = draw(&mut rng);

    let mut pending = vec![column_matrix(&complement, d)];
    let mut planes: Vec<DMatrix<f64>> = Vec::new();
    let mut probes = 0;
    while let Some(block) = pending.pop() {
        if block.ncols() == 0 {
            continue;
        }
        if block.ncols() == 2 {
            planes.push(block);
            continue;
        }
        if probes >= MAX_PROBES {
            return Err(Error::DegenerateProbe(format!(
                "rotation speeds still clustered after {MAX_PROBES} probes"
            )));
        }
        let a = if probes == 0 { frame_probe.clone() } else { draw(&mut rng) };
        probes += 1;
        let b = block.transpose() * &a * &block;
        let s = b.transpose() * &b;
        let (vals, vecs) = symmetric_eigen(&s);
        let thetas: Vec<f64> = vals.iter().map(|v| v.max(0.0).sqrt()).collect();
        let tmax = thetas.iter().cloned().fold(0.0, f64::max);
        if tmax == 0.0 || thetas[0] < THETA_CLUSTER_REL * tmax {
            pending.push(block);
            continue;
        }
        let mut groups: Vec<Vec<usize>> = vec![vec![0]];
        for i in 1..thetas.len() {
            if thetas[i] - thetas[i - 1] <= THETA_CLUSTER_REL * tmax {
                groups.last_mut().expect("nonempty").push(i);
            } else {
                groups.push(vec![i]);
            }
        }
        if groups.len() == 1 || groups.iter().any(|g| g.len() % 2 != 0) {
            pending.push(block);
            continue;
        }
        for grp in groups {
            let sub = column_matrix(&grp.iter().map(|&i| vecs[i].clone()).collect::<Vec<_>>(), block.ncols());
            pending.push(&block * sub);
        }
    }

    let positivity: Vec<f64> = (0..r).map(|i| PI.powi(-(i as i32))).collect();
    let mut frames = Vec::with_capacity(planes.len());
    for plane in planes {
        let u: Vec<f64> = plane.column(0).iter().cloned().collect();
        let mut w = mat_vec(&frame_probe, &u);
        let theta = norm(&w);
        if theta < THETA_CLUSTER_REL {
            return Err(Error::DegenerateProbe("frame probe vanishes on a root plane".into()));
        }
        w.iter_mut().for_each(|v| *v /= theta);
        let covector: Vec<f64> = ads.iter().map(|ad| dot(&mat_vec(ad, &u), &w)).collect();
        let mut f = Frame { covector, x: u, y: w };
        let sign = dot(&f.covector, &positivity);
        if sign.abs() < TAU_ROOT {
            return Err(Error::DegenerateProbe("positivity vector is orthogonal to a root".into()));
        }
        if sign < 0.0 {
            f.covector.iter_mut().for_each(|c| *c = -*c);
            f.y.iter_mut().for_each(|c| *c = -*c);
        }
        frames.push(f);
    }
    frames.sort_by(|a, b| dot(&a.covector, &positivity).total_cmp(&dot(&b.covector, &positivity)));

    let mut rd = RootDatum {
        algebra: g.clone(),
        torus: t.clone(),
        torus_coords,
        positivity,
        frames,
    };
    for i in 0..rd.frames.len() {
        rd.gauge_fix(i)?;
    }
    rd.check_frame_relations(&ads)?;
    Ok(rd)
}

impl RootDatum {
    pub fn algebra(&self) -> &LieAlgebraModel {
        &self.algebra
    }

    pub fn torus(&self) -> &Subspace {
        &self.torus
    }

    pub fn rank(&self) -> usize {
        self.torus.dim()
    }

    pub fn positivity_vector(&self) -> &[f64] {
        &self.positivity
    }

    /// Torus basis elements in algebra coordinates.
    pub fn torus_coords(&self) -> &[Vec<f64>] {
        &self.torus_coords
    }

    pub fn num_positive(&self) -> usize {
        self.frames.len()
    }

    pub fn num_roots(&self) -> usize {
        2 * self.frames.len()
    }

    pub fn positive_roots(&self) -> std::ops::Range<RootId> {
        0..self.frames.len()
    }

    pub fn all_roots(&self) -> std::ops::Range<RootId> {
        0..self.num_roots()
    }

    pub fn is_positive(&self, a: RootId) -> bool {
        a < self.frames.len()
    }

    pub fn negate(&self, a: RootId) -> RootId {
        let p = self.frames.len();
        if a < p {
            a + p
        } else {
            a - p
        }
    }

    /// The positive root among `±a`.
    pub fn abs(&self, a: RootId) -> RootId {
        a % self.frames.len()
    }

    /// Root values `α(H_1), …, α(H_r)` on the torus basis.
    pub fn covector(&self, a: RootId) -> Vec<f64> {
        let f = &self.frames[self.abs(a)];
        if self.is_positive(a) {
            f.covector.clone()
        } else {
            f.covector.iter().map(|c| -c).collect()
        }
    }

    /// `α(H)` for `H` given in torus coordinates.
    pub fn eval(&self, a: RootId, h: &[f64]) -> f64 {
        dot(&self.covector(a), h)
    }

    /// Frame `(X_α, Y_α)` in algebra coordinates.
    pub fn frame_coords(&self, a: RootId) -> (Vec<f64>, Vec<f64>) {
        let f = &self.frames[self.abs(a)];
        if self.is_positive(a) {
            (f.x.clone(), f.y.clone())
        } else {
            (f.x.clone(), f.y.iter().map(|c| -c).collect())
        }
    }

    /// Frame `(X_α, Y_α)` as matrices.
    pub fn frame(&self, a: RootId) -> Result<(MatrixElement, MatrixElement)> {
        let (x, y) = self.frame_coords(a);
        Ok((self.algebra.element(&x)?, self.algebra.element(&y)?))
    }

    /// Torus element with the given coordinates, as a matrix.
    pub fn torus_element(&self, h: &[f64]) -> Result<MatrixElement> {
        self.torus.combine(h)
    }

    pub fn length_sqr(&self, a: RootId) -> f64 {
        let c = &self.frames[self.abs(a)].covector;
        dot(c, c)
    }

    pub fn inner(&self, a: RootId, b: RootId) -> f64 {
        dot(&self.covector(a), &self.covector(b))
    }

    /// Root with the given covector, if any.
    pub fn find(&self, covector: &[f64]) -> Option<RootId> {
        let scale = norm(covector).max(1.0);
        self.all_roots().find(|&a| {
            let c = self.covector(a);
            c.iter().zip(covector).all(|(u, v)| (u - v).abs() <= TAU_ROOT * scale)
        })
    }

    /// `α + β` as a root, if it is one.
    pub fn sum(&self, a: RootId, b: RootId) -> Option<RootId> {
        let s: Vec<f64> = self.covector(a).iter().zip(self.covector(b)).map(|(u, v)| u + v).collect();
        if norm(&s) <= TAU_ROOT {
            return None;
        }
        self.find(&s)
    }

    /// `α − β` as a root, if it is one.
    pub fn difference(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.sum(a, self.negate(b))
    }

    /// Integer combination `m·α + n·β` as a root, if it is one.
    pub fn combination(&self, m: i32, a: RootId, n: i32, b: RootId) -> Option<RootId> {
        let s: Vec<f64> = self
            .covector(a)
            .iter()
            .zip(self.covector(b))
            .map(|(u, v)| m as f64 * u + n as f64 * v)
            .collect();
        if norm(&s) <= TAU_ROOT {
            return None;
        }
        self.find(&s)
    }

    /// Replaces `(X_α, Y_α)` by `(cos t·X + sin t·Y, −sin t·X + cos t·Y)`.
    pub fn frame_rotate(&self, a: RootId, t: f64) -> RootDatum {
        let mut out = self.clone();
        out.rotate_in_place(a, t);
        out
    }

    fn rotate_in_place(&mut self, a: RootId, t: f64) {
        // Rotating the negative root's frame by t rotates the positive one by −t.
        let t = if self.is_positive(a) { t } else { -t };
        let p = self.frames.len();
        let f = &mut self.frames[a % p];
        let (c, s) = (t.cos(), t.sin());
        let x: Vec<f64> = f.x.iter().zip(&f.y).map(|(x, y)| c * x + s * y).collect();
        let y: Vec<f64> = f.x.iter().zip(&f.y).map(|(x, y)| -s * x + c * y).collect();
        f.x = x;
        f.y = y;
    }

    /// Rotates the positive frame `i` so that, at the first ambient entry
    /// carrying a substantial share of the plane, `Y` vanishes and `X > 0`.
    fn gauge_fix(&mut self, i: usize) -> Result<()> {
        let (x, y) = self.frame(i)?;
        let (xd, yd) = (x.data(), y.data());
        let weights: Vec<f64> = xd.iter().zip(yd).map(|(a, b)| a * a + b * b).collect();
        let wmax = weights.iter().cloned().fold(0.0, f64::max);
        let k = weights
            .iter()
            .position(|&w| w >= 0.5 * wmax)
            .expect("nonzero frame");
        let t = yd[k].atan2(xd[k]);
        self.rotate_in_place(i, t);
        Ok(())
    }

    /// Rotates every positive frame so that `X_α` lies in `k` and `Y_α` is
    /// orthogonal to it, as for the frames adapted to an involution with
    /// fixed set `k`. Fails if some root plane meets `k` in other than a line.
    pub fn adapt_to_fixed_set(&self, k: &Subspace) -> Result<RootDatum> {
        let mut out = self.clone();
        for i in self.positive_roots() {
            let (x, y) = out.frame(i)?;
            let (px, py) = (k.component(&x)?, k.component(&y)?);
            let gram = DMatrix::from_row_slice(
                2,
                2,
                &[px.inner(&px)?, px.inner(&py)?, py.inner(&px)?, py.inner(&py)?],
            );
            let (vals, vecs) = symmetric_eigen(&gram);
            if (vals[1] - 1.0).abs() > TAU_ROOT.sqrt() || vals[0].abs() > TAU_ROOT.sqrt() {
                return Err(Error::FrameConvention(format!(
                    "root plane {i} meets the fixed set in dimension other than one (Gram eigenvalues {:.3e}, {:.3e})",
                    vals[0], vals[1]
                )));
            }
            let t = vecs[1][1].atan2(vecs[1][0]);
            out.rotate_in_place(i, t);
            let (x, _) = out.frame(i)?;
            let xd = x.data();
            let k0 = xd
                .iter()
                .position(|v| v.abs() >= 0.5 * x.max_abs())
                .expect("nonzero frame");
            if xd[k0] < 0.0 {
                out.rotate_in_place(i, PI);
            }
        }
        Ok(out)
    }

    fn check_frame_relations(&self, ads: &[DMatrix<f64>]) -> Result<()> {
        let scale = self
            .frames
            .iter()
            .map(|f| norm(&f.covector))
            .fold(1.0, f64::max);
        for (i, f) in self.frames.iter().enumerate() {
            for (h, ad) in ads.iter().enumerate() {
                let ax = mat_vec(ad, &f.x);
                let ay = mat_vec(ad, &f.y);
                let a = f.covector[h];
                let ex = ax.iter().zip(&f.y).map(|(u, v)| (u - a * v).abs()).fold(0.0, f64::max);
                let ey = ay.iter().zip(&f.x).map(|(u, v)| (u + a * v).abs()).fold(0.0, f64::max);
                if ex.max(ey) > TAU_ROOT * scale {
                    return Err(Error::DegenerateProbe(format!(
                        "root plane {i} is not invariant under the torus (defect {:.2e})",
                        ex.max(ey)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Largest frame-relation defect `|ad_H X_α − α(H) Y_α| + |ad_H Y_α + α(H) X_α|`
    /// for a torus element given in torus coordinates.
    pub fn frame_defect(&self, h: &[f64]) -> Result<f64> {
        let hc: Vec<f64> = (0..self.algebra.dim())
            .map(|j| h.iter().zip(&self.torus_coords).map(|(c, t)| c * t[j]).sum())
            .collect();
        let ad = self.algebra.ad_matrix(&hc);
        let mut worst: f64 = 0.0;
        for a in self.positive_roots() {
            let (x, y) = self.frame_coords(a);
            let v = self.eval(a, h);
            let ax = mat_vec(&ad, &x);
            let ay = mat_vec(&ad, &y);
            let ex: f64 = ax.iter().zip(&y).map(|(u, w)| (u - v * w).powi(2)).sum::<f64>().sqrt();
            let ey: f64 = ay.iter().zip(&x).map(|(u, w)| (u + v * w).powi(2)).sum::<f64>().sqrt();
            worst = worst.max(ex + ey);
        }
        Ok(worst)
    }

    /// `N_{α,β}` from `[E_α, E_β] = N_{α,β} E_{α+β}`, or `None` when
    /// `α + β` is not a root. Both the real and the imaginary part of the
    /// bracket determine `N`; disagreement is a frame-convention error.
    pub fn structure_constant(&self, a: RootId, b: RootId) -> Result<Option<Complex>> {
        let Some(c) = self.sum(a, b) else {
            return Ok(None);
        };
        let g = &self.algebra;
        let (xa, ya) = self.frame_coords(a);
        let (xb, yb) = self.frame_coords(b);
        let (xc, yc) = self.frame_coords(c);
        let sub = |u: &[f64], v: &[f64]| -> Vec<f64> { u.iter().zip(v).map(|(p, q)| p - q).collect() };
        let re_part = sub(&g.bracket_coords(&xa, &xb), &g.bracket_coords(&ya, &yb));
        let im_part: Vec<f64> = g
            .bracket_coords(&xa, &yb)
            .iter()
            .zip(g.bracket_coords(&ya, &xb))
            .map(|(p, q)| -(p + q))
            .collect();
        let re = dot(&re_part, &xc);
        let im = dot(&re_part, &yc);
        let im_alt = dot(&im_part, &xc);
        let re_alt = -dot(&im_part, &yc);
        let scale = re.hypot(im).max(1.0);
        if (re - re_alt).abs() > TAU_ROOT * scale || (im - im_alt).abs() > TAU_ROOT * scale {
            return Err(Error::FrameConvention(format!(
                "N extraction disagrees between real and imaginary parts for roots {a}, {b}"
            )));
        }
        Ok(Some(Complex { re, im }))
    }

    /// Full table `N[a][b]` over all roots.
    pub fn structure_constants(&self) -> Result<Vec<Vec<Option<Complex>>>> {
        self.all_roots()
            .map(|a| self.all_roots().map(|b| self.structure_constant(a, b)).collect())
            .collect()
    }

    /// `(symmetric, closed)` for a set of root ids.
    pub fn subset_properties(&self, s: &BTreeSet<RootId>) -> (bool, bool) {
        let symmetric = s.iter().all(|&a| s.contains(&self.negate(a)));
        let closed = s
            .iter()
            .all(|&a| s.iter().all(|&b| self.sum(a, b).is_none_or(|c| s.contains(&c))));
        (symmetric, closed)
    }

    /// Roots in the integer span of `α` and `β`.
    pub fn integer_span(&self, a: RootId, b: RootId) -> Result<Vec<RootId>> {
        let (ca, cb) = (self.covector(a), self.covector(b));
        let g = [dot(&ca, &ca), dot(&ca, &cb), dot(&cb, &cb)];
        let det = g[0] * g[2] - g[1] * g[1];
        if det.abs() <= TAU_ROOT * g[0] * g[2] {
            return Err(structural(format!("roots {a} and {b} are linearly dependent")));
        }
        let mut out = Vec::new();
        for c in self.all_roots() {
            let cc = self.covector(c);
            let (p, q) = (dot(&cc, &ca), dot(&cc, &cb));
            let s = (g[2] * p - g[1] * q) / det;
            let t = (g[0] * q - g[1] * p) / det;
            let resid: f64 = cc
                .iter()
                .zip(ca.iter().zip(&cb))
                .map(|(v, (x, y))| (v - s * x - t * y).powi(2))
                .sum::<f64>()
                .sqrt();
            let integral = (s - s.round()).abs() < 1e-6 && (t - t.round()).abs() < 1e-6;
            if resid <= TAU_ROOT * norm(&cc).max(1.0) && integral {
                out.push(c);
            }
        }
        Ok(out)
    }

    /// Type of the integer span of two independent roots.
    pub fn rank2_span_type(&self, a: RootId, b: RootId) -> Result<Rank2Type> {
        let span = self.integer_span(a, b)?;
        let lengths: Vec<f64> = span.iter().map(|&c| self.length_sqr(c)).collect();
        let lmax = lengths.iter().cloned().fold(0.0, f64::max);
        let lmin = lengths.iter().cloned().fold(f64::INFINITY, f64::min);
        let ratio = lmax / lmin;
        let near = |x: f64| (ratio - x).abs() < 1e-6;
        Ok(match span.len() {
            6 if near(1.0) => Rank2Type::A2,
            8 if near(2.0) => Rank2Type::B2,
            12 if near(3.0) => Rank2Type::G2,
            _ => Rank2Type::Reducible,
        })
    }

    /// Span of `t0` and the root planes of the positive part of `s`.
    pub fn regular_subalgebra_from_roots(
        &self,
        s: &BTreeSet<RootId>,
        t0: &Subspace,
        name: &str,
    ) -> Result<LieAlgebraModel> {
        let (symmetric, _) = self.subset_properties(s);
        if !symmetric {
            return Err(structural("root subset is not symmetric"));
        }
        for &a in s {
            for &b in s {
                if let Some(c) = self.sum(a, b) {
                    if !s.contains(&c) {
                        return Err(Error::ClosureFailure { alpha: a, beta: b });
                    }
                }
            }
        }
        let mut vectors: Vec<MatrixElement> = t0.basis().to_vec();
        for &a in s.iter().filter(|&&a| self.is_positive(a)) {
            let (x, y) = self.frame(a)?;
            vectors.push(x);
            vectors.push(y);
        }
        let g = &self.algebra;
        LieAlgebraModel::from_span(name, g.field(), g.ambient_dim(), &vectors)
    }

    /// Connected components of the positive roots under non-orthogonality;
    /// each component spans one simple ideal.
    pub fn components(&self) -> Vec<Vec<RootId>> {
        let p = self.num_positive();
        let mut label: Vec<usize> = (0..p).collect();
        fn find(label: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while label[r] != r {
                r = label[r];
            }
            label[i] = r;
            r
        }
        for a in 0..p {
            for b in (a + 1)..p {
                let scale = self.length_sqr(a).max(self.length_sqr(b));
                if self.inner(a, b).abs() > TAU_ROOT * scale {
                    let (ra, rb) = (find(&mut label, a), find(&mut label, b));
                    label[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut groups: Vec<Vec<RootId>> = Vec::new();
        let mut roots_of: Vec<Option<usize>> = vec![None; p];
        for a in 0..p {
            let r = find(&mut label, a);
            match roots_of[r] {
                Some(gi) => groups[gi].push(a),
                None => {
                    roots_of[r] = Some(groups.len());
                    groups.push(vec![a]);
                }
            }
        }
        groups
    }
}
