//! One line per acceptance criterion. Exits non-zero if any fails.

mod common;

use std::time::Instant;

use common::props;
use fiberscale_core::catalog::build_chain;
use fiberscale_core::criterion::{
    decompose, estimate_constant, fullrank_construct, involution_root_datum, is_symmetric_pair, random_ratio_max,
    search_counterexample, simple_ideals, verify_certificate, Budget, Construction, RootType,
};
use fiberscale_core::report::{all_consistent, run_suite};
use fiberscale_core::tolerances::Tolerances;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RESIDUAL_EXACT: f64 = 1e-12;
const RESIDUAL_CONSTRUCT: f64 = 1e-9;
const M_BRACKET_CONSTRUCT: f64 = 1e-3;
const RATIO_SQ_BOUND: f64 = 2.0 + 1e-3;
const OBJECTIVE_FLOOR: f64 = 1e-4;
const STABILITY: f64 = 0.10;
const DRAWS: usize = 1000;
const RANDOM_PAIRS: usize = 100_000;
const STABILITY_BUDGET: Budget = Budget { restarts: 200, iterations: 2000 };

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn closed_form_pairs() -> Outcome {
    let start = Instant::now();
    for (id, want, sign_free) in common::known_m_brackets() {
        let chain = build_chain(id).map_err(|e| e.to_string())?;
        let dec = decompose(&chain).map_err(|e| e.to_string())?;
        let (x, y) = chain.known_pair.clone().ok_or(format!("{id}: no pair"))?;
        let raw = x.bracket(&y).unwrap().norm();
        ensure(raw < RESIDUAL_EXACT, || format!("{id}: residual {raw:.2e}"))?;
        verify_certificate(&dec, &x, &y, Tolerances::default()).map_err(|r| format!("{id}: {r}"))?;
        let m = dec.m_bracket_element(&x, &y).unwrap();
        let d = common::oracle_distance(&m, &want, sign_free);
        ensure(d < RESIDUAL_EXACT, || format!("{id}: m-bracket off by {d:.2e}"))?;
    }
    let chain = build_chain("T6.5-sp2").unwrap();
    let dec = decompose(&chain).unwrap();
    let (x, y) = chain.known_pair.clone().unwrap();
    ensure(x.bracket(&y).unwrap().norm() < RESIDUAL_EXACT, || "sp(2): [X,Y] != 0".into())?;
    ensure(dec.m_bracket_element(&x, &y).unwrap().norm() > 1e-3, || "sp(2): zero m-bracket".into())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 1.0, || format!("took {secs:.2} s"))?;
    Ok(format!("9 closed-form pairs, {secs:.2} s"))
}

fn symmetric_table() -> Outcome {
    let cases = common::symmetric_pair_cases();
    for (name, k, h, want) in &cases {
        let got = is_symmetric_pair(k, h).map_err(|e| e.to_string())?;
        ensure(got == *want, || format!("({name}) gave {got}"))?;
    }
    Ok(format!("{}/{} agree", cases.len(), cases.len()))
}

fn construction() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for id in ["C3.3-1-min", "C3.3-2-min", "C3.3-3-min", "C3.3-4-min"] {
        let chain = build_chain(id).map_err(|e| e.to_string())?;
        let dec = decompose(&chain).map_err(|e| e.to_string())?;
        let run = || -> Result<_, String> {
            let rd = involution_root_datum(&chain, &dec, 11).map_err(|e| e.to_string())?;
            match fullrank_construct(&dec, &rd).map_err(|e| e.to_string())? {
                Construction::Certificate(c) => Ok(c),
                Construction::NotApplicable(why) => Err(format!("{id}: {why}")),
            }
        };
        let (a, b) = (run()?, run()?);
        ensure(a.x == b.x && a.y == b.y, || format!("{id}: not deterministic"))?;
        ensure(a.residual < RESIDUAL_CONSTRUCT, || format!("{id}: residual {:.2e}", a.residual))?;
        ensure(a.m_bracket_norm > M_BRACKET_CONSTRUCT, || format!("{id}: m-bracket {:.2e}", a.m_bracket_norm))?;
        worst = worst.max(a.residual);
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.2} s"))?;
    Ok(format!("4 cases, worst residual {worst:.1e}, {secs:.2} s"))
}

fn search_completeness() -> Outcome {
    let start = Instant::now();
    let ids = ["L4.1-1", "L4.1-2", "L4.1-3", "L4.1-4", "L4.1-5a", "L4.1-5b", "L4.1-6", "T6.5-sp2"];
    let mut restarts = 0;
    for id in ids {
        let dec = decompose(&build_chain(id).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let out = search_counterexample(&dec, Budget::default(), 0);
        ensure(out.certificate.is_some(), || format!("{id}: nothing found"))?;
        restarts += out.restarts_run;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 300.0, || format!("took {secs:.1} s"))?;
    Ok(format!("{} chains, {restarts} restarts in total, {secs:.2} s", ids.len()))
}

fn so5_bound_evidence() -> Outcome {
    let dec = decompose(&build_chain("T5.1-n2").unwrap()).unwrap();
    let random = random_ratio_max(&dec, RANDOM_PAIRS, 0);
    let out = search_counterexample(&dec, Budget { restarts: 100, iterations: 2000 }, 0);
    ensure(out.certificate.is_none(), || "T5.1-n2: certificate found".into())?;
    let ratio_sq = random.max(out.best_ratio).powi(2);
    ensure(ratio_sq <= RATIO_SQ_BOUND, || format!("max ratio² {ratio_sq:.6}"))?;
    let mut objectives = Vec::new();
    for id in ["T5.1-n2", "T5.1-n3"] {
        let dec = decompose(&build_chain(id).unwrap()).unwrap();
        let out = search_counterexample(&dec, Budget::default(), 0);
        ensure(out.certificate.is_none(), || format!("{id}: certificate found"))?;
        ensure(out.best_objective >= OBJECTIVE_FLOOR, || format!("{id}: objective {:.2e}", out.best_objective))?;
        objectives.push(out.best_objective);
    }
    Ok(format!(
        "max ratio² {ratio_sq:.6} over {RANDOM_PAIRS} pairs + 100 restarts; min objective n=2 {:.3e}, n=3 {:.3e}",
        objectives[0], objectives[1]
    ))
}

fn root_machinery() -> Outcome {
    let types = [RootType::B(2), RootType::A(2), RootType::A(3), RootType::B(3), RootType::C(3), RootType::G2];
    let mut pairs = 0;
    for ((name, g, roots, count), want) in common::root_test_algebras().into_iter().zip(types) {
        let rd = common::datum(&g);
        ensure(rd.num_positive() == count, || format!("{name}: {} positive roots", rd.num_positive()))?;
        let (_, ideals) = simple_ideals(&g, 11).map_err(|e| e.to_string())?;
        let got = ideals[0].root_type;
        let type_ok = if name == "so(5)" { got.is_b(2) && got.is_c(2) } else { got == want };
        ensure(ideals.len() == 1 && type_ok, || format!("{name}: type {got}"))?;
        let h = common::computed_histogram(&rd);
        ensure(h == common::oracle_histogram(&roots), || format!("{name}: rank-two spans {h:?}"))?;
        pairs += h.values().sum::<usize>();
    }
    Ok(format!("6 algebras, {pairs} root pairs typed"))
}

fn invariant_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let v = |n: usize, rng: &mut ChaCha8Rng| -> Vec<f64> { (0..n).map(|_| rng.random_range(-1.0..1.0)).collect() };
    let mut worst = [0.0f64; 8];
    for _ in 0..DRAWS {
        let (x, y, z) = (v(20, &mut rng), v(20, &mut rng), v(20, &mut rng));
        let t = rng.random_range(-3.2..3.2);
        let (c, e) = (rng.random_range(0.01..100.0), rng.random_range(0.01..100.0));
        let i5 = rng.random_range(0..5);
        let i4 = rng.random_range(0..4);
        worst[0] = worst[0].max(props::jacobi(i5, &x, &y, &z));
        worst[1] = worst[1].max(props::ad_invariance(i5, &x, &y, &z));
        worst[2] = worst[2].max(props::frame_relations(i4, &x));
        worst[3] = worst[3].max(props::rotation_trick(i5, &x, &y, t));
        worst[4] = worst[4].max(props::projections(i5, &x, &y));
        props::scale_equivariance(i5, &x, &y, c, e, t)?;
        worst[5] = worst[5].max(props::guard(i4, &x, &y));
        worst[6] = worst[6].max(props::horizontal_rank(i4, &x, &y)?);
        worst[7] = worst[7].max(props::transfer_soundness(t, rng.random_range(0.1..10.0))?);
    }
    let names = ["jacobi", "ad-invariance", "frames", "rotation", "projections", "guard", "rank<=2", "transfer"];
    let limits = [1e-9, 1e-9, 1e-8, 1e-9, 1e-9, 1e-9, 1e-9, 1e-12];
    for ((n, w), l) in names.iter().zip(worst).zip(limits) {
        ensure(w < l, || format!("{n}: {w:.2e} >= {l:.0e}"))?;
    }
    Ok(format!("9 suites x {DRAWS} draws, worst frame defect {:.1e}", worst[2]))
}

fn sp_chain_stability() -> Outcome {
    let mut parts = Vec::new();
    for id in ["CONJ-sp-n2", "CONJ-sp-n3"] {
        let dec = decompose(&build_chain(id).unwrap()).unwrap();
        let mut values = Vec::new();
        for seed in 0..5 {
            let out = search_counterexample(&dec, STABILITY_BUDGET, seed);
            ensure(out.certificate.is_none(), || format!("{id}: certificate at seed {seed}"))?;
            let c = estimate_constant(&dec, STABILITY_BUDGET, seed);
            ensure(!c.divergent, || format!("{id}: divergent at seed {seed}"))?;
            values.push(c.value);
        }
        let (lo, hi) = values.iter().fold((f64::INFINITY, 0.0f64), |(l, h), v| (l.min(*v), h.max(*v)));
        ensure(hi <= lo * (1.0 + STABILITY), || format!("{id}: C ranges over [{lo:.4}, {hi:.4}]"))?;
        parts.push(format!("{id} C in [{lo:.4}, {hi:.4}]"));
    }
    Ok(parts.join("; "))
}

fn reproduction_suite() -> Outcome {
    let start = Instant::now();
    let rows = run_suite(Budget::default(), 0, &[]);
    let bad: Vec<String> = rows.iter().filter(|r| !r.consistent).map(|r| format!("{} ({})", r.chain_id, r.computed)).collect();
    ensure(all_consistent(&rows), || format!("inconsistent: {}", bad.join(", ")))?;
    Ok(format!("{} chains consistent, {:.1} s", rows.len(), start.elapsed().as_secs_f64()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("closed-form pair regression", closed_form_pairs),
        ("symmetric-pair table", symmetric_table),
        ("full-rank construction", construction),
        ("search completeness", search_completeness),
        ("su(2) ⊂ so(4) ⊂ so(5) bound", so5_bound_evidence),
        ("root machinery", root_machinery),
        ("invariant suites", invariant_suites),
        ("sp(1) chain stability", sp_chain_stability),
        ("reproduction suite", reproduction_suite),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
