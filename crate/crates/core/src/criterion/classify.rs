use super::certificate::{verify_certificate, Certificate};
use super::construct::{fullrank_construct, involution_root_datum, Construction};
use super::decomposition::{decompose, is_symmetric_pair, ChainDecomposition};
use super::ideals::{ideal_cases, simple_ideals, Taxonomy};
use super::search::{estimate_from, random_ratio_max, search_counterexample, Budget, ConstantEstimate, RANDOM_SAMPLES};
use crate::algebra::{is_regular_subalgebra, rank, LieAlgebraModel};
use crate::catalog::Chain;
use crate::error::Result;
use crate::tolerances::{Tolerances, TAU_STRUCT};

/// Seed for the structural probes (tori, ranks); independent of the search seed.
const STRUCT_SEED: u64 = 11;

#[derive(Debug, Clone)]
pub enum VerdictKind {
    SymmetricPair,
    CounterexampleFound(Box<Certificate>),
    HoldsByClassification,
    NoCounterexampleFound {
        estimate: ConstantEstimate,
        budget: Budget,
        restarts_run: usize,
        best_objective: f64,
    },
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub taxonomy: Taxonomy,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self.kind {
            VerdictKind::SymmetricPair => "SYMMETRIC_PAIR",
            VerdictKind::CounterexampleFound(_) => "COUNTEREXAMPLE_FOUND",
            VerdictKind::HoldsByClassification => "HOLDS_BY_CLASSIFICATION",
            VerdictKind::NoCounterexampleFound { .. } => "NO_COUNTEREXAMPLE_FOUND",
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.kind {
            VerdictKind::CounterexampleFound(c) => Some(c),
            _ => None,
        }
    }
}

fn part(g: &LieAlgebraModel, x: &LieAlgebraModel, name: &str) -> Result<LieAlgebraModel> {
    g.intersect(x, name)
}

/// Test on a full-rank chain: every simple ideal `g_i` has
/// `(g_i∩k, g_i∩h)` symmetric, `g_i ⊆ k`, or `g_i∩k ⊆ h`. Returns the
/// indices of the ideals failing all three.
fn full_rank_obstructions(chain: &Chain) -> Result<Vec<usize>> {
    let (_, ideals) = simple_ideals(&chain.g, STRUCT_SEED)?;
    let mut bad = Vec::new();
    for (i, gi) in ideals.iter().enumerate() {
        let ki = part(&gi.algebra, &chain.k, "k_i")?;
        let hi = part(&gi.algebra, &chain.h, "h_i")?;
        let symmetric = is_symmetric_pair(&ki, &hi)?;
        let inside_k = ki.dim() == gi.algebra.dim();
        let k_in_h = ki.subspace().is_contained_in(chain.h.subspace(), TAU_STRUCT)?;
        if !(symmetric || inside_k || k_in_h) {
            bad.push(i);
        }
    }
    Ok(bad)
}

fn taxonomy(chain: &Chain) -> Result<Taxonomy> {
    if !(is_regular_subalgebra(&chain.g, &chain.k, STRUCT_SEED)? && is_regular_subalgebra(&chain.g, &chain.h, STRUCT_SEED)?) {
        return Ok(Taxonomy::NotRegular);
    }
    let (_, ideals) = simple_ideals(&chain.g, STRUCT_SEED)?;
    let mut cases = Vec::new();
    for gi in &ideals {
        let ki = part(&gi.algebra, &chain.k, "k_i")?;
        let hi = part(&gi.algebra, &chain.h, "h_i")?;
        cases.push(ideal_cases(gi, &ki, &hi, STRUCT_SEED)?);
    }
    Ok(Taxonomy::Cases(cases))
}

fn closed_form_certificate(dec: &ChainDecomposition) -> Option<Certificate> {
    let (x, y) = dec.chain().known_pair.as_ref()?;
    verify_certificate(dec, x, y, Tolerances::default()).ok()
}

/// Runs the decision pipeline on one chain.
pub fn classify_chain(chain: &Chain, budget: Budget, seed: u64) -> Result<Verdict> {
    let dec = decompose(chain)?;
    let mut notes = Vec::new();
    if dec.is_symmetric() {
        return Ok(Verdict {
            kind: VerdictKind::SymmetricPair,
            taxonomy: taxonomy(chain)?,
            notes: vec!["[m, m] ⊆ h".into()],
        });
    }

    if chain.involution.is_some() {
        let rd = involution_root_datum(chain, &dec, STRUCT_SEED)?;
        match fullrank_construct(&dec, &rd)? {
            Construction::Certificate(c) => {
                return Ok(Verdict {
                    kind: VerdictKind::CounterexampleFound(c),
                    taxonomy: taxonomy(chain)?,
                    notes: vec!["explicit construction from the involution's root frames".into()],
                });
            }
            Construction::NotApplicable(why) => notes.push(format!("construction not applicable: {why}")),
        }
    }

    let full_rank = rank(&chain.h, STRUCT_SEED)? == rank(&chain.g, STRUCT_SEED)?;
    let tax = taxonomy(chain)?;
    if full_rank {
        let bad = full_rank_obstructions(chain)?;
        if bad.is_empty() {
            return Ok(Verdict {
                kind: VerdictKind::HoldsByClassification,
                taxonomy: tax,
                notes: vec!["full rank; every simple ideal is symmetric, inside k, or meets k inside h".into()],
            });
        }
        notes.push(format!("full rank; simple ideals {bad:?} admit a counterexample"));
    }
    if let Taxonomy::Cases(c) = &tax {
        let hold: Vec<String> = c
            .iter()
            .map(|v| match v.first() {
                Some(1) | Some(2) | Some(3) | Some(5) => "holds".to_string(),
                Some(4) => "conjectured".to_string(),
                _ => "excluded".to_string(),
            })
            .collect();
        // The case list is necessary for the criterion, not sufficient: a
        // matching label does not predict the verdict.
        notes.push(format!("regular chain, taxonomy {tax} ({}; necessary condition only)", hold.join(", ")));
    }

    if let Some(c) = closed_form_certificate(&dec) {
        notes.push("closed-form pair verified".into());
        return Ok(Verdict {
            kind: VerdictKind::CounterexampleFound(Box::new(c)),
            taxonomy: tax,
            notes,
        });
    }

    let outcome = search_counterexample(&dec, budget, seed);
    if let Some(c) = outcome.certificate {
        notes.push(format!("found by search after {} restarts", outcome.restarts_run));
        return Ok(Verdict {
            kind: VerdictKind::CounterexampleFound(Box::new(c)),
            taxonomy: tax,
            notes,
        });
    }
    let ratio = outcome.best_ratio.max(random_ratio_max(&dec, RANDOM_SAMPLES, seed));
    notes.push("no counterexample within the budget; this is not a proof".into());
    Ok(Verdict {
        kind: VerdictKind::NoCounterexampleFound {
            estimate: estimate_from(ratio, false),
            budget,
            restarts_run: outcome.restarts_run,
            best_objective: outcome.best_objective,
        },
        taxonomy: tax,
        notes,
    })
}
