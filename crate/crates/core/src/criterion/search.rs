//! Seeded multi-start search for commuting pairs with nonzero m-bracket.
//!
//! Each restart runs damped Gauss–Newton on the residual vector
//! `([X, Y], √μ (|[X^m, Y^m]^m|² − 1))` in `p`-coordinates, with the penalty
//! weight raised in stages. The unit-sphere normalization is applied only
//! when verifying: both residual parts are invariant under
//! `(X, Y) ↦ (cX, Y/c)`, and the constraint cannot be met by unit vectors
//! when the chain's best m-bracket is smaller than one.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::certificate::{verify_coords, Certificate, Origin};
use super::decomposition::ChainDecomposition;
use crate::matrix::dot;
use crate::tolerances::{Tolerances, RATIO_CAP, RATIO_FLOOR};

const PENALTIES: [f64; 3] = [10.0, 1e3, 1e5];
const BATCH: usize = 8;
const POLISH_ITERATIONS: usize = 50;
const STAGNATION_WINDOW: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub restarts: usize,
    pub iterations: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            restarts: 200,
            iterations: 2000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub certificate: Option<Certificate>,
    /// Smallest final penalized objective over the restarts that ran.
    pub best_objective: f64,
    pub restarts_run: usize,
    /// Largest `|[X^m,Y^m]^m| / max(|[X,Y]|, floor·|X||Y|)` at an endpoint.
    pub best_ratio: f64,
}

#[derive(Debug, Clone)]
struct RestartResult {
    certificate: Option<Certificate>,
    objective: f64,
    ratio: f64,
}

/// Looks for a certificate; `None` inside the outcome is a value, not an
/// error. Restarts run in batches and the search stops after the first
/// batch containing a success, so the result does not depend on the
/// number of threads.
pub fn search_counterexample(dec: &ChainDecomposition, budget: Budget, seed: u64) -> SearchOutcome {
    run(dec, budget, seed, true)
}

fn run(dec: &ChainDecomposition, budget: Budget, seed: u64, stop_on_success: bool) -> SearchOutcome {
    let mut outcome = SearchOutcome {
        certificate: None,
        best_objective: f64::INFINITY,
        restarts_run: 0,
        best_ratio: 0.0,
    };
    if dec.is_symmetric() || dec.dim_m() < 2 {
        return outcome;
    }
    let mut start = 0;
    while start < budget.restarts {
        let end = (start + BATCH).min(budget.restarts);
        let results: Vec<RestartResult> = (start..end)
            .into_par_iter()
            .map(|i| restart(dec, budget.iterations, seed, i as u64))
            .collect();
        for r in results {
            outcome.restarts_run += 1;
            outcome.best_objective = outcome.best_objective.min(r.objective);
            outcome.best_ratio = outcome.best_ratio.max(r.ratio);
            if let Some(c) = r.certificate {
                let better = match &outcome.certificate {
                    None => true,
                    Some(b) => c.residual < b.residual,
                };
                if better {
                    outcome.certificate = Some(c);
                }
            }
        }
        if stop_on_success && outcome.certificate.is_some() {
            break;
        }
        start = end;
    }
    outcome
}

fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Floored ratio `|M| / max(|B|, floor·|X||Y|)` for `p`-coordinates.
pub fn pair_ratio(dec: &ChainDecomposition, x: &[f64], y: &[f64]) -> f64 {
    let b = norm(&dec.bracket(x, y));
    let m = norm(&dec.m_bracket(x, y));
    let scale = norm(x) * norm(y);
    if scale == 0.0 {
        return 0.0;
    }
    m / b.max(RATIO_FLOOR * scale)
}

struct Problem<'a> {
    dec: &'a ChainDecomposition,
    dp: usize,
    dm: usize,
    dg: usize,
}

impl Problem<'_> {
    /// Residual vector for penalty `mu`.
    fn residual(&self, z: &[f64], mu: f64) -> Vec<f64> {
        let (x, y) = z.split_at(self.dp);
        let mut r = self.dec.bracket(x, y);
        let m = self.dec.m_bracket(x, y);
        r.push(mu.sqrt() * (dot(&m, &m) - 1.0));
        r
    }

    fn objective(&self, z: &[f64], mu: f64) -> f64 {
        let r = self.residual(z, mu);
        dot(&r, &r)
    }

    fn jacobian(&self, z: &[f64], mu: f64) -> DMatrix<f64> {
        let (dp, dm, dg) = (self.dp, self.dm, self.dg);
        let (x, y) = z.split_at(dp);
        let mut j = DMatrix::zeros(dg + 1, 2 * dp);
        for a in 0..dp {
            for b in 0..dp {
                if a == b {
                    continue;
                }
                let bb = self.dec.p_bracket_basis(a, b);
                let (ya, xa) = (y[b], x[a]);
                // ∂/∂x_a gets y_b [p_a, p_b]; ∂/∂y_b gets x_a [p_a, p_b].
                for (c, v) in bb.iter().enumerate() {
                    if *v != 0.0 {
                        j[(c, a)] += ya * v;
                        j[(c, dp + b)] += xa * v;
                    }
                }
            }
        }
        let m = self.dec.m_bracket(x, y);
        let w = 2.0 * mu.sqrt();
        for a in 0..dm {
            for b in 0..dm {
                if a == b {
                    continue;
                }
                let mb = dot(&m, self.dec.m_bracket_basis(a, b));
                j[(dg, a)] += w * y[b] * mb;
                j[(dg, dp + b)] += w * x[a] * mb;
            }
        }
        j
    }

    /// Damped Gauss–Newton at fixed penalty; returns the final objective.
    fn minimize(&self, z: &mut Vec<f64>, mu: f64, iterations: usize) -> f64 {
        let n = 2 * self.dp;
        let mut f = self.objective(z, mu);
        let mut lambda = 1e-3;
        let mut history: Vec<f64> = Vec::new();
        for _ in 0..iterations {
            if f < 1e-30 {
                break;
            }
            let j = self.jacobian(z, mu);
            let r = DVector::from_vec(self.residual(z, mu));
            let jt = j.transpose();
            let a = &jt * &j;
            let g = &jt * r;
            let scale = (0..n).map(|i| a[(i, i)]).fold(0.0, f64::max).max(1e-300);
            let mut accepted = false;
            while lambda < 1e16 {
                let mut damped = a.clone();
                for i in 0..n {
                    damped[(i, i)] += lambda * scale;
                }
                let step = match damped.cholesky() {
                    Some(ch) => ch.solve(&(-&g)),
                    None => {
                        lambda *= 10.0;
                        continue;
                    }
                };
                let trial: Vec<f64> = z.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
                let ft = self.objective(&trial, mu);
                if ft < f {
                    let small = step.norm() <= 1e-15 * (norm(z) + 1e-15);
                    *z = trial;
                    self.rebalance(z);
                    f = ft;
                    lambda = (lambda / 3.0).max(1e-12);
                    accepted = !small;
                    break;
                }
                lambda *= 4.0;
            }
            if !accepted {
                break;
            }
            history.push(f);
            if history.len() > STAGNATION_WINDOW {
                let old = history[history.len() - 1 - STAGNATION_WINDOW];
                if old - f <= 1e-10 * old {
                    break;
                }
            }
        }
        f
    }

    /// Equalizes `|X|` and `|Y|`; both residual parts are unchanged.
    fn rebalance(&self, z: &mut [f64]) {
        let (x, y) = z.split_at_mut(self.dp);
        let (nx, ny) = (norm(x), norm(y));
        if nx > 0.0 && ny > 0.0 {
            let s = (ny / nx).sqrt();
            x.iter_mut().for_each(|v| *v *= s);
            y.iter_mut().for_each(|v| *v /= s);
        }
    }
}

/// Deterministic start for restart `index`.
fn initial_point(dp: usize, seed: u64, index: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut z: Vec<f64> = (0..2 * dp).map(|_| StandardNormal.sample(&mut rng)).collect();
    for half in z.chunks_mut(dp) {
        let n = norm(half);
        half.iter_mut().for_each(|v| *v /= n);
    }
    z
}

fn restart(dec: &ChainDecomposition, iterations: usize, seed: u64, index: u64) -> RestartResult {
    let problem = Problem {
        dec,
        dp: dec.dim_p(),
        dm: dec.dim_m(),
        dg: dec.dim_g(),
    };
    let mut z = initial_point(problem.dp, seed, index);
    let per_stage = (iterations / PENALTIES.len()).max(1);
    let mut objective = f64::INFINITY;
    for (s, &mu) in PENALTIES.iter().enumerate() {
        let budget = if s + 1 == PENALTIES.len() {
            iterations.saturating_sub(per_stage * s).max(1)
        } else {
            per_stage
        };
        objective = problem.minimize(&mut z, mu, budget);
        if objective < 1e-24 {
            break;
        }
    }
    let (x, y) = z.split_at(problem.dp);
    let m = dec.m_bracket(x, y);
    if (dot(&m, &m) - 1.0).abs() <= 0.01 {
        objective = problem.minimize(&mut z, PENALTIES[PENALTIES.len() - 1], POLISH_ITERATIONS);
    }
    let (x, y) = z.split_at(problem.dp);
    let certificate = verify_coords(dec, x, y, Tolerances::default())
        .ok()
        .map(|c| c.with_provenance(Origin::Searched, Some(seed)));
    RestartResult {
        certificate,
        objective,
        ratio: pair_ratio(dec, x, y),
    }
}

/// Lower bound for the best constant `C` with a divergence flag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantEstimate {
    pub value: f64,
    pub divergent: bool,
}

/// Number of random pairs sampled by [`estimate_constant`] in addition to
/// the optimizer endpoints.
pub const RANDOM_SAMPLES: usize = 2000;

/// Largest floored ratio over the optimizer endpoints and random pairs.
/// A found certificate, or a ratio at or above the cap, makes the estimate
/// divergent; the value is then the cap.
pub fn estimate_constant(dec: &ChainDecomposition, budget: Budget, seed: u64) -> ConstantEstimate {
    if dec.is_symmetric() {
        return ConstantEstimate { value: 0.0, divergent: false };
    }
    let outcome = run(dec, budget, seed, true);
    let best = outcome.best_ratio.max(random_ratio_max(dec, RANDOM_SAMPLES, seed));
    estimate_from(best, outcome.certificate.is_some())
}

pub(crate) fn estimate_from(ratio: f64, found: bool) -> ConstantEstimate {
    if found || ratio >= RATIO_CAP {
        ConstantEstimate { value: RATIO_CAP, divergent: true }
    } else {
        ConstantEstimate { value: ratio, divergent: false }
    }
}

/// Largest floored ratio over `n` Gaussian pairs in `p`.
pub fn random_ratio_max(dec: &ChainDecomposition, n: usize, seed: u64) -> f64 {
    let dp = dec.dim_p();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed);
    let mut best: f64 = 0.0;
    for _ in 0..n {
        let x: Vec<f64> = (0..dp).map(|_| StandardNormal.sample(&mut rng)).collect();
        let y: Vec<f64> = (0..dp).map(|_| StandardNormal.sample(&mut rng)).collect();
        best = best.max(pair_ratio(dec, &x, &y));
    }
    best
}
