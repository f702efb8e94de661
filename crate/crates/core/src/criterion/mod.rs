//! Decomposition, certificates, construction, search and classification.

mod certificate;
mod classify;
mod construct;
mod decomposition;
mod ideals;
mod search;
mod transfer;

pub use certificate::{verify_certificate, verify_coords, Certificate, Origin, Rejection};
pub use classify::{classify_chain, Verdict, VerdictKind};
pub use construct::{fullrank_construct, involution_root_datum, Construction};
pub use decomposition::{decompose, is_symmetric_pair, metric_gt, ChainDecomposition};
pub use ideals::{ideal_cases, simple_ideals, RootType, SimpleIdeal, Taxonomy};
pub use search::{
    estimate_constant, pair_ratio, random_ratio_max, search_counterexample, Budget, ConstantEstimate, SearchOutcome,
    RANDOM_SAMPLES,
};
pub use transfer::transfer_certificate;
