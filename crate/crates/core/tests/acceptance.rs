//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::sync::Arc;

use ordcat::gen;
use ordcat::laws::{
    meet_lower_star_sides, registry, run_law, run_suite, strict_meet_instance, Backend, Law,
};
use ordcat::maltsev::{
    counterexample_search, dd_star_d, is_difunctional, is_ord_difunctional, ord_w_maltsev_direct,
    w_maltsev_object_test, Restriction,
};
use ordcat::quantale::FinQuantale;
use ordcat::replay::{replay, REPLAY_IDS};
use ordcat::vcat::{h_is_vfunctor, is_symmetric_vwedge, FinVCat};
use ordcat::{FinPreorder, IdealRel};
use rand::Rng;

const SEED: u64 = 0x5eed;

fn law(id: &str) -> Law {
    [Backend::Ord, Backend::Vcat]
        .into_iter()
        .flat_map(registry)
        .find(|l| l.id == id)
        .unwrap_or_else(|| panic!("no law {id}"))
}

/// Runs one registered law and returns (clean, summary).
fn law_clean(id: &str, iterations: usize, max_size: usize) -> (bool, String) {
    let rep = run_law(&law(id), iterations, max_size, SEED);
    let ok = rep.violated == 0 && rep.passed > 0;
    (
        ok,
        format!(
            "{id}: {} passed, {} vacuous, {} violated",
            rep.passed, rep.vacuous, rep.violated
        ),
    )
}

fn criterion_1() -> (bool, String) {
    let ord = run_suite(Backend::Ord, &registry(Backend::Ord), 1000, 6, SEED);
    let vcat = run_suite(Backend::Vcat, &registry(Backend::Vcat), 1000, 6, SEED);
    let (r, s, k) = strict_meet_instance();
    let (lhs, rhs) = meet_lower_star_sides(&r, &s, &k);
    let strict = lhs.is_subset(&rhs) && lhs != rhs;
    let ok = ord.violations == 0 && vcat.violations == 0 && strict;
    (
        ok,
        format!(
            "ord violations {}, vcat violations {}, strict meet instance {strict}",
            ord.violations, vcat.violations
        ),
    )
}

fn criterion_2() -> (bool, String) {
    law_clean("adjoint-round-trip", 200, 5)
}

fn criterion_3() -> (bool, String) {
    let found = counterexample_search(2, SEED, Restriction::Any);
    let witness_ok = found
        .as_ref()
        .is_some_and(|d| !is_ord_difunctional(d) && dd_star_d(d) != *d.as_rel());
    let mut discrete = 0;
    let mut agree = true;
    for na in 0..=3 {
        for nb in 0..=3 {
            let (a, b) = (FinPreorder::discrete(na), FinPreorder::discrete(nb));
            for d in IdealRel::enumerate(&a, &b) {
                discrete += 1;
                agree &= is_ord_difunctional(&d) == is_difunctional(&d);
            }
        }
    }
    (
        witness_ok && agree,
        format!("witness found {witness_ok}, {discrete} discrete ideals, agreement {agree}"),
    )
}

fn criterion_4() -> (bool, String) {
    let mut rng = gen::rng(SEED ^ 4);
    let (mut difunctional, mut bad_implication, mut bad_inclusion) = (0, 0, 0);
    for _ in 0..1000 {
        let (na, nb) = (gen::size(&mut rng, 5), gen::size(&mut rng, 5));
        let a = gen::preorder(&mut rng, na);
        let b = gen::preorder(&mut rng, nb);
        let d = gen::ideal(&mut rng, &a, &b);
        if is_difunctional(&d) {
            difunctional += 1;
            if !is_ord_difunctional(&d) {
                bad_implication += 1;
            }
        }
        if !d.is_subset(&dd_star_d(&d)) {
            bad_inclusion += 1;
        }
    }
    (
        bad_implication == 0 && bad_inclusion == 0,
        format!("{difunctional} difunctional, {bad_implication} implication failures, {bad_inclusion} inclusion failures"),
    )
}

fn criterion_5() -> (bool, String) {
    let mut checked = 0;
    let mut disagreements = 0;
    for n in 0..=3 {
        for y in FinPreorder::all_of_size(n) {
            checked += 1;
            if w_maltsev_object_test(&y) != ord_w_maltsev_direct(&y, 2).holds {
                disagreements += 1;
            }
        }
    }
    let singleton = !w_maltsev_object_test(&FinPreorder::singleton());
    let chain = !w_maltsev_object_test(&FinPreorder::chain(2));
    (
        disagreements == 0 && singleton && chain,
        format!("{checked} preorders, {disagreements} disagreements, singleton rejected {singleton}, 2-chain rejected {chain}"),
    )
}

fn criterion_6() -> (bool, String) {
    let mut exhaustive = 0;
    let mut bad = 0;
    for name in ["V2", "min3", "luk3"] {
        let v = Arc::new(FinQuantale::fixture(name).expect("fixture"));
        let boolean = name == "V2";
        for n in 0..=3 {
            for y in FinVCat::all_of_size(&v, n) {
                exhaustive += 1;
                let sym = is_symmetric_vwedge(&y);
                let eq = !boolean || y.to_preorder().expect("boolean").is_symmetric() == sym;
                if h_is_vfunctor(&y) != sym || !eq {
                    bad += 1;
                }
            }
        }
    }
    let mut rng = gen::rng(SEED ^ 6);
    for _ in 0..500 {
        let v = gen::quantale(&mut rng);
        let n = rng.gen_range(4..=5);
        let y = if rng.gen_bool(0.3) {
            gen::symmetric_vwedge(&mut rng, &v, n)
        } else {
            gen::vcat(&mut rng, &v, n)
        };
        if h_is_vfunctor(&y) != is_symmetric_vwedge(&y) {
            bad += 1;
        }
    }
    (
        bad == 0,
        format!("{exhaustive} exhaustive + 500 random instances, {bad} disagreements"),
    )
}

fn criterion_7() -> (bool, String) {
    let (a, sa) = law_clean("vcat-cocomma", 200, 5);
    let (b, sb) = law_clean("vcat-r-star-formula", 200, 5);
    (a && b, format!("{sa}; {sb}"))
}

fn criterion_8() -> (bool, String) {
    let failed: Vec<&str> = REPLAY_IDS
        .iter()
        .copied()
        .filter(|id| !replay(id).expect("known id").passed())
        .collect();
    (
        failed.is_empty(),
        format!("{} replays, failed {failed:?}", REPLAY_IDS.len()),
    )
}

fn criterion_9() -> (bool, String) {
    let runs = [
        law_clean("r2-factorization", 1000, 6),
        law_clean("r3-so-pullback", 500, 6),
        law_clean("r4-bicoinserter", 200, 6),
    ];
    let ok = runs.iter().all(|r| r.0);
    (ok, runs.map(|r| r.1).join("; "))
}

#[test]
fn acceptance() {
    let criteria: [fn() -> (bool, String); 9] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
    ];
    let mut failed = Vec::new();
    for (i, c) in criteria.iter().enumerate() {
        let (ok, summary) = c();
        println!(
            "{} criterion {}: {summary}",
            if ok { "PASS" } else { "FAIL" },
            i + 1
        );
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
