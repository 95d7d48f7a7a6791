//! A registry of randomized laws for both backends and a deterministic,
//! parallel runner.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::gen::{self, GenRng};
use crate::ideal::{
    adjoint_to_map, contains_identity, effective_witness, ideal_upper, is_reflexive, lower_star,
    pullback_ideal, r_star, r_upper, upper_star,
};
use crate::json::{ideal_json, map_json, preorder_json, rel_json, vcat_json};
use crate::limits::{
    bicoinserter_check, comma, pairing, product, product_map, pullback, so_ff_factorize,
};
use crate::maltsev::{
    ckp_suite, dd_star_d, dd_star_d_agreement, is_difunctional, is_ord_difunctional,
};
use crate::preorder::{hom_leq, is_ff, is_so, FinPreorder, MonotoneMap};
use crate::quantale::FinQuantale;
use crate::relation::{IdealRel, Rel};
use crate::report::{LawReport, SuiteReport};
use crate::vcat::{
    cocomma_self, d_star_table, h_is_vfunctor, is_symmetric_vwedge, r_star_vcat, vcat_check,
    vhom_leq, VFunctor,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Ord,
    Vcat,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Ord => "ord",
            Backend::Vcat => "vcat",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass,
    /// The law's premise did not hold on this instance.
    Vacuous,
    Violated(Value),
}

pub type Check = fn(&mut GenRng, usize) -> Outcome;

#[derive(Clone, Copy)]
pub struct Law {
    pub id: &'static str,
    pub backend: Backend,
    pub check: Check,
}

fn ensure(ok: bool, witness: impl FnOnce() -> Value) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Violated(witness())
    }
}

fn implies(premise: bool, ok: bool, witness: impl FnOnce() -> Value) -> Outcome {
    if premise {
        ensure(ok, witness)
    } else {
        Outcome::Vacuous
    }
}

// ---- generation helpers -------------------------------------------------

fn pre(r: &mut GenRng, max: usize) -> FinPreorder {
    let n = gen::size(r, max);
    gen::preorder(r, n)
}

fn pos(r: &mut GenRng, max: usize) -> FinPreorder {
    let n = gen::size(r, max);
    gen::poset(r, n)
}

/// A preorder that admits a map from `dom`.
fn target_for(r: &mut GenRng, dom: &FinPreorder, max: usize) -> FinPreorder {
    let n = if dom.size() > 0 {
        gen::nonempty_size(r, max)
    } else {
        gen::size(r, max)
    };
    gen::preorder(r, n)
}

/// A preorder that admits a map into `cod`.
fn source_for(r: &mut GenRng, cod: &FinPreorder, max: usize) -> FinPreorder {
    let n = if cod.size() > 0 { gen::size(r, max) } else { 0 };
    gen::preorder(r, n)
}

fn map_between(r: &mut GenRng, dom: &FinPreorder, cod: &FinPreorder) -> MonotoneMap {
    gen::monotone_map(r, dom, cod).expect("codomain admits a map")
}

fn map_from(r: &mut GenRng, dom: &FinPreorder, max: usize) -> MonotoneMap {
    let cod = target_for(r, dom, max);
    map_between(r, dom, &cod)
}

fn map_to(r: &mut GenRng, cod: &FinPreorder, max: usize) -> MonotoneMap {
    let dom = source_for(r, cod, max);
    map_between(r, &dom, cod)
}

fn any_map(r: &mut GenRng, max: usize) -> MonotoneMap {
    let x = pre(r, max);
    map_from(r, &x, max)
}

/// Half the time a surjection, otherwise an arbitrary map.
fn often_so(r: &mut GenRng, max: usize) -> MonotoneMap {
    let x = pre(r, max);
    if r.gen_bool(0.5) {
        gen::surjection(r, &x)
    } else {
        map_from(r, &x, max)
    }
}

fn ideal_on(r: &mut GenRng, x: &FinPreorder, y: &FinPreorder) -> IdealRel {
    gen::ideal(r, x, y)
}

fn c(a: &IdealRel, b: &IdealRel) -> IdealRel {
    a.compose(b).expect("composable by construction")
}

fn m(a: &IdealRel, b: &IdealRel) -> IdealRel {
    a.meet(b).expect("same boundary by construction")
}

fn rc(a: &Rel, b: &Rel) -> Rel {
    a.compose(b).expect("composable by construction")
}

fn rm(a: &Rel, b: &Rel) -> Rel {
    a.meet(b).expect("same boundary by construction")
}

/// `f^* f_*` written diagrammatically.
fn kernel(f: &MonotoneMap) -> IdealRel {
    c(&lower_star(f), &upper_star(f))
}

/// `f_* f^*` written diagrammatically.
fn cokernel(f: &MonotoneMap) -> IdealRel {
    c(&upper_star(f), &lower_star(f))
}

// ---- ff / so and limits -------------------------------------------------

fn ff_compose(r: &mut GenRng, k: usize) -> Outcome {
    let f = any_map(r, k);
    let g = map_from(r, f.cod(), k);
    let gf = f.then(&g).expect("composable");
    implies(
        is_ff(&f) && is_ff(&g),
        is_ff(&gf),
        || json!({"f": map_json(&f), "g": map_json(&g)}),
    )
}

fn ff_cancel(r: &mut GenRng, k: usize) -> Outcome {
    let f = any_map(r, k);
    let g = map_from(r, f.cod(), k);
    let gf = f.then(&g).expect("composable");
    implies(
        is_ff(&gf),
        is_ff(&f),
        || json!({"f": map_json(&f), "g": map_json(&g)}),
    )
}

fn ff_pullback(r: &mut GenRng, k: usize) -> Outcome {
    let y = pre(r, k);
    let mm = gen::embedding(r, &y);
    let f = map_to(r, &y, k);
    let pb = pullback(&f, &mm).expect("cospan");
    implies(
        is_ff(&mm),
        is_ff(&pb.p1) && pb.p1.is_injective(),
        || json!({"f": map_json(&f), "m": map_json(&mm)}),
    )
}

fn so_compose(r: &mut GenRng, k: usize) -> Outcome {
    let e = often_so(r, k);
    let f = if r.gen_bool(0.5) {
        gen::surjection(r, e.cod())
    } else {
        map_from(r, e.cod(), k)
    };
    let fe = e.then(&f).expect("composable");
    implies(
        is_so(&e) && is_so(&f),
        is_so(&fe),
        || json!({"e": map_json(&e), "f": map_json(&f)}),
    )
}

fn so_cancel(r: &mut GenRng, k: usize) -> Outcome {
    let e = often_so(r, k);
    let f = map_from(r, e.cod(), k);
    let fe = e.then(&f).expect("composable");
    implies(
        is_so(&fe),
        is_so(&f),
        || json!({"e": map_json(&e), "f": map_json(&f)}),
    )
}

/// Square `v e = m u` with `e` surjective and `m` an ff inclusion; a diagonal
/// is searched for among all monotone maps.
fn so_ff_orthogonal(r: &mut GenRng, k: usize) -> Outcome {
    let k = k.min(4);
    let a = pre(r, k);
    let e = gen::surjection(r, &a);
    let d = target_for(r, e.cod(), k);
    let v = map_between(r, e.cod(), &d);
    let mut elems = v.image();
    for y in 0..d.size() {
        if r.gen_bool(0.3) && !elems.contains(&y) {
            elems.push(y);
        }
    }
    elems.sort_unstable();
    let cdom = d.restrict(&elems);
    let mm = MonotoneMap::new(cdom.clone(), d.clone(), elems.clone()).expect("inclusion");
    let ve = e.then(&v).expect("composable");
    let u_table = ve
        .table()
        .iter()
        .map(|y| elems.binary_search(y).expect("in image"))
        .collect();
    let u =
        MonotoneMap::new(a.clone(), cdom.clone(), u_table).expect("ff inclusion reflects order");
    let found = MonotoneMap::all(e.cod(), &cdom)
        .into_iter()
        .any(|dg| e.then(&dg).as_ref() == Ok(&u) && dg.then(&mm).as_ref() == Ok(&v));
    ensure(
        found,
        || json!({"e": map_json(&e), "m": map_json(&mm), "u": map_json(&u), "v": map_json(&v)}),
    )
}

/// Pasting a pullback of `π1` along `x` onto `f/g` gives `(f x)/g`.
fn comma_pasting(r: &mut GenRng, k: usize) -> Outcome {
    let f = any_map(r, k);
    let g = map_to(r, f.cod(), k);
    let x = map_to(r, f.dom(), k);
    let cm = comma(&f, &g).expect("cospan");
    let pb = pullback(&x, &cm.p1).expect("cospan");
    let outer = comma(&x.then(&f).expect("composable"), &g).expect("cospan");
    let image: Vec<(usize, usize)> = pb
        .carrier
        .iter()
        .map(|&(a, w)| (a, cm.carrier[w].1))
        .collect();
    let mut sorted = image.clone();
    sorted.sort_unstable();
    let same_set = sorted == outer.carrier;
    let same_order = same_set
        && (0..image.len()).all(|i| {
            (0..image.len()).all(|j| {
                let (oi, oj) = (
                    outer.index_of(image[i].0, image[i].1),
                    outer.index_of(image[j].0, image[j].1),
                );
                pb.obj.leq(i, j) == outer.obj.leq(oi.unwrap(), oj.unwrap())
            })
        });
    ensure(
        same_order,
        || json!({"f": map_json(&f), "g": map_json(&g), "x": map_json(&x)}),
    )
}

fn comma_unit_projections(r: &mut GenRng, k: usize) -> Outcome {
    let f = often_so(r, k);
    let (x, y) = (f.dom(), f.cod());
    let (idx, idy) = (MonotoneMap::identity(x), MonotoneMap::identity(y));
    let lower = comma(&f, &idy).expect("cospan");
    let upper = comma(&idy, &f).expect("cospan");
    let lambda = lower.pairing(&idx, &f).expect("(x, f x) lies in f/1");
    let mu = upper.pairing(&f, &idx).expect("(f x, x) lies in 1/f");
    let split =
        lambda.then(&lower.p1).as_ref() == Ok(&idx) && mu.then(&upper.p2).as_ref() == Ok(&idx);
    let so_sides = !is_so(&f) || (is_so(&lower.p2) && is_so(&upper.p1));
    ensure(split && so_sides, || json!({"f": map_json(&f)}))
}

fn comma_preserves_so(r: &mut GenRng, k: usize) -> Outcome {
    let z = pre(r, k);
    let g = gen::surjection(r, &z);
    let f = map_to(r, g.cod(), k);
    let cm = comma(&f, &g).expect("cospan");
    implies(
        is_so(&g),
        is_so(&cm.p1),
        || json!({"f": map_json(&f), "g": map_json(&g)}),
    )
}

fn r2_factorization(r: &mut GenRng, k: usize) -> Outcome {
    let f = any_map(r, k);
    let fac = so_ff_factorize(&f);
    let ok = is_so(&fac.e)
        && is_ff(&fac.m)
        && fac.m.is_injective()
        && fac.e.then(&fac.m).as_ref() == Ok(&f);
    ensure(ok, || json!({"f": map_json(&f)}))
}

fn r3_so_pullback(r: &mut GenRng, k: usize) -> Outcome {
    let z = pre(r, k);
    let g = gen::surjection(r, &z);
    let f = map_to(r, g.cod(), k);
    let pb = pullback(&f, &g).expect("cospan");
    implies(
        is_so(&g),
        is_so(&pb.p1),
        || json!({"f": map_json(&f), "g": map_json(&g)}),
    )
}

fn r4_bicoinserter(r: &mut GenRng, k: usize) -> Outcome {
    let a = pre(r, k);
    let e = gen::surjection(r, &a);
    ensure(
        bicoinserter_check(&e) == Ok(true),
        || json!({"e": map_json(&e)}),
    )
}

// ---- stars ----------------------------------------------------------------

fn star_of_graph(r: &mut GenRng, k: usize) -> Outcome {
    let f = any_map(r, k);
    let id = MonotoneMap::identity(f.dom());
    let g = Rel::graph(&f);
    let ok = r_star(&id, &f).as_ref() == Ok(&lower_star(&f))
        && r_upper(&id, &f).as_ref() == Ok(&upper_star(&f))
        && g.ideal_close() == lower_star(&f)
        && g.opp().ideal_close() == upper_star(&f);
    ensure(ok, || json!({"f": map_json(&f)}))
}

fn star_contains_graph(r: &mut GenRng, k: usize) -> Outcome {
    let f = any_map(r, k);
    let g = Rel::graph(&f);
    let ok = g.is_subset(&lower_star(&f)) && g.opp().is_subset(&upper_star(&f));
    ensure(ok, || json!({"f": map_json(&f)}))
}

fn star_functorial(r: &mut GenRng, k: usize) -> Outcome {
    let f = any_map(r, k);
    let g = map_from(r, f.cod(), k);
    let gf = f.then(&g).expect("composable");
    let ok = lower_star(&gf) == c(&lower_star(&f), &lower_star(&g))
        && upper_star(&gf) == c(&upper_star(&g), &upper_star(&f));
    ensure(ok, || json!({"f": map_json(&f), "g": map_json(&g)}))
}

fn star_order(r: &mut GenRng, k: usize) -> Outcome {
    let f = any_map(r, k);
    let h = gen::parallel_map(r, &f);
    let le = hom_leq(&f, &h).expect("parallel");
    let a = lower_star(&h).is_subset(&lower_star(&f));
    let b = upper_star(&f).is_subset(&upper_star(&h));
    ensure(
        le == a && a == b,
        || json!({"f": map_json(&f), "h": map_json(&h)}),
    )
}

fn star_unit_counit(r: &mut GenRng, k: usize) -> Outcome {
    let f = any_map(r, k);
    let ok = IdealRel::identity(f.dom()).is_subset(&kernel(&f))
        && cokernel(&f).is_subset(&IdealRel::identity(f.cod()));
    ensure(ok, || json!({"f": map_json(&f)}))
}

fn star_triangles(r: &mut GenRng, k: usize) -> Outcome {
    let f = any_map(r, k);
    let (lo, up) = (lower_star(&f), upper_star(&f));
    let ok = c(&c(&up, &lo), &up) == up && c(&c(&lo, &up), &lo) == lo;
    ensure(ok, || json!({"f": map_json(&f)}))
}

// ---- commas and kernels -------------------------------------------------

fn comma_as_composite(r: &mut GenRng, k: usize) -> Outcome {
    let f = any_map(r, k);
    let g = map_to(r, f.cod(), k);
    let cm = comma(&f, &g).expect("cospan");
    let span = Rel::from_span(&cm.p1, &cm.p2).expect("span");
    ensure(
        &span == c(&lower_star(&f), &upper_star(&g)).as_rel(),
        || json!({"f": map_json(&f), "g": map_json(&g)}),
    )
}

fn ff_kernel(r: &mut GenRng, k: usize) -> Outcome {
    let f = if r.gen_bool(0.3) {
        let y = pre(r, k);
        gen::embedding(r, &y)
    } else {
        any_map(r, k)
    };
    ensure(
        is_ff(&f) == (kernel(&f) == IdealRel::identity(f.dom())),
        || json!({"f": map_json(&f)}),
    )
}

fn ff_mono_kernel_posets(r: &mut GenRng, k: usize) -> Outcome {
    let y = pos(r, k);
    let f = if r.gen_bool(0.4) {
        gen::embedding(r, &y)
    } else {
        map_to_poset(r, &y, k)
    };
    let mono = is_ff(&f) && f.is_injective();
    ensure(
        mono == (kernel(&f) == IdealRel::identity(f.dom())),
        || json!({"f": map_json(&f)}),
    )
}

fn map_to_poset(r: &mut GenRng, y: &FinPreorder, k: usize) -> MonotoneMap {
    let n = if y.size() > 0 { gen::size(r, k) } else { 0 };
    let x = gen::poset(r, n);
    map_between(r, &x, y)
}

fn so_cokernel(r: &mut GenRng, k: usize) -> Outcome {
    let f = often_so(r, k);
    implies(
        is_so(&f),
        cokernel(&f) == IdealRel::identity(f.cod()),
        || json!({"f": map_json(&f)}),
    )
}

fn so_cokernel_posets(r: &mut GenRng, k: usize) -> Outcome {
    let x = pos(r, k);
    let f = if r.gen_bool(0.5) {
        gen::surjection(r, &x)
    } else {
        map_from_poset(r, &x, k)
    };
    if !(f.dom().is_antisymmetric() && f.cod().is_antisymmetric()) {
        return Outcome::Vacuous;
    }
    ensure(
        is_so(&f) == (cokernel(&f) == IdealRel::identity(f.cod())),
        || json!({"f": map_json(&f)}),
    )
}

fn map_from_poset(r: &mut GenRng, x: &FinPreorder, k: usize) -> MonotoneMap {
    let n = if x.size() > 0 {
        gen::nonempty_size(r, k)
    } else {
        gen::size(r, k)
    };
    let y = gen::poset(r, n);
    map_between(r, x, &y)
}

fn pairing_ff(r: &mut GenRng, k: usize) -> Outcome {
    let f = any_map(r, k);
    let h = map_from(r, f.dom(), k);
    let p = pairing(&f, &h).expect("common domain");
    let meet = m(&kernel(&f), &kernel(&h));
    ensure(
        is_ff(&p) == (meet == IdealRel::identity(f.dom())),
        || json!({"f": map_json(&f), "h": map_json(&h)}),
    )
}

fn pairing_ff_mono_posets(r: &mut GenRng, k: usize) -> Outcome {
    let x = pos(r, k);
    let f = map_from_poset(r, &x, k);
    let h = map_from_poset(r, &x, k);
    let p = pairing(&f, &h).expect("common domain");
    let meet = m(&kernel(&f), &kernel(&h));
    let mono = is_ff(&p) && p.is_injective();
    ensure(
        mono == (meet == IdealRel::identity(&x)),
        || json!({"f": map_json(&f), "h": map_json(&h)}),
    )
}

// ---- meets, transposition, Freyd ------------------------------------------

fn two_ideals(r: &mut GenRng, k: usize) -> (IdealRel, IdealRel) {
    let x = pre(r, k);
    let y = pre(r, k);
    let a = ideal_on(r, &x, &y);
    let b = ideal_on(r, &x, &y);
    (a, b)
}

fn meet_upper_star(r: &mut GenRng, k: usize) -> Outcome {
    let (rr, s) = two_ideals(r, k);
    let g = map_to(r, rr.cod(), k);
    let up = upper_star(&g);
    let ok = c(&m(&rr, &s), &up) == m(&c(&rr, &up), &c(&s, &up));
    ensure(
        ok,
        || json!({"R": ideal_json(&rr), "S": ideal_json(&s), "g": map_json(&g)}),
    )
}

fn meet_lower_star_source(r: &mut GenRng, k: usize) -> Outcome {
    let (rr, s) = two_ideals(r, k);
    let f = map_to(r, rr.dom(), k);
    let lo = lower_star(&f);
    let ok = c(&lo, &m(&rr, &s)) == m(&c(&lo, &rr), &c(&lo, &s));
    ensure(
        ok,
        || json!({"R": ideal_json(&rr), "S": ideal_json(&s), "f": map_json(&f)}),
    )
}

fn meet_lower_star_target(r: &mut GenRng, k: usize) -> Outcome {
    let (rr, s) = two_ideals(r, k);
    let kk = map_from(r, rr.cod(), k);
    let lo = lower_star(&kk);
    let ok = c(&m(&rr, &s), &lo).is_subset(&m(&c(&rr, &lo), &c(&s, &lo)));
    ensure(
        ok,
        || json!({"R": ideal_json(&rr), "S": ideal_json(&s), "k": map_json(&kk)}),
    )
}

fn meet_upper_star_source(r: &mut GenRng, k: usize) -> Outcome {
    let (rr, s) = two_ideals(r, k);
    let h = map_from(r, rr.dom(), k);
    let up = upper_star(&h);
    let ok = c(&up, &m(&rr, &s)).is_subset(&m(&c(&up, &rr), &c(&up, &s)));
    ensure(
        ok,
        || json!({"R": ideal_json(&rr), "S": ideal_json(&s), "h": map_json(&h)}),
    )
}

/// `g_* T f^* ⊆ R` iff `T ⊆ g^* R f_*`.
fn star_transpose(r: &mut GenRng, k: usize) -> Outcome {
    let x = pre(r, k);
    let y = pre(r, k);
    let f = map_to(r, &x, k);
    let g = map_to(r, &y, k);
    let t = ideal_on(r, f.dom(), g.dom());
    let pushed = c(&c(&upper_star(&f), &t), &lower_star(&g));
    let rr = if r.gen_bool(0.5) {
        let extra = ideal_on(r, &x, &y);
        pushed
            .as_rel()
            .join(&extra)
            .expect("same boundary")
            .ideal_close()
    } else {
        ideal_on(r, &x, &y)
    };
    let pulled = c(&c(&lower_star(&f), &rr), &upper_star(&g));
    let ok = pushed.is_subset(&rr) == t.is_subset(&pulled);
    ensure(
        ok,
        || json!({"R": ideal_json(&rr), "T": ideal_json(&t), "f": map_json(&f), "g": map_json(&g)}),
    )
}

fn three_ideals(r: &mut GenRng, k: usize) -> (IdealRel, IdealRel, IdealRel) {
    let x = pre(r, k);
    let y = pre(r, k);
    let z = pre(r, k);
    let a = ideal_on(r, &x, &y);
    let b = ideal_on(r, &y, &z);
    let t = ideal_on(r, &x, &z);
    (a, b, t)
}

fn freyd_enriched(r: &mut GenRng, k: usize) -> Outcome {
    let (rr, s, t) = three_ideals(r, k);
    let sr_t = m(&c(&rr, &s), &t);
    let first = c(&m(&rr, &c(&t, &ideal_upper(&s))), &s);
    let second = c(&rr, &m(&s, &c(&ideal_upper(&rr), &t)));
    ensure(
        sr_t.is_subset(&first) && sr_t.is_subset(&second),
        || json!({"R": ideal_json(&rr), "S": ideal_json(&s), "T": ideal_json(&t)}),
    )
}

fn freyd_plain(r: &mut GenRng, k: usize) -> Outcome {
    let x = pre(r, k);
    let y = pre(r, k);
    let z = pre(r, k);
    let rr = gen::rel(r, &x, &y);
    let s = gen::rel(r, &y, &z);
    let t = gen::rel(r, &x, &z);
    let sr_t = rm(&rc(&rr, &s), &t);
    let first = rc(&rm(&rr, &rc(&t, &s.opp())), &s);
    let second = rc(&rr, &rm(&s, &rc(&rr.opp(), &t)));
    ensure(
        sr_t.is_subset(&first) && sr_t.is_subset(&second),
        || json!({"R": rel_json(&rr), "S": rel_json(&s), "T": rel_json(&t)}),
    )
}

/// `R^*` is an ideal containing `R°` and below every such ideal.
fn upper_smallest(r: &mut GenRng, k: usize) -> Outcome {
    let k = k.min(3);
    let x = pre(r, k);
    let y = pre(r, k);
    let rr = gen::rel(r, &x, &y);
    let up = ideal_upper(&rr);
    let op = rr.opp();
    let smallest = IdealRel::enumerate(&y, &x)
        .iter()
        .filter(|i| op.is_subset(i))
        .all(|i| up.is_subset(i));
    let t = rr.tabulate();
    let generated = r_star(&t.p1, &t.p2).as_ref() == Ok(&rr.ideal_close());
    ensure(
        up.is_weakening_closed() && op.is_subset(&up) && smallest && generated,
        || json!({"R": rel_json(&rr)}),
    )
}

/// `T S° R = T S^* R`, and the left side is an ideal.
fn opposite_vs_upper(r: &mut GenRng, k: usize) -> Outcome {
    let x = pre(r, k);
    let y = pre(r, k);
    let z = pre(r, k);
    let w = pre(r, k);
    let rr = ideal_on(r, &x, &y);
    let s = ideal_on(r, &z, &y);
    let t = ideal_on(r, &z, &w);
    let plain = rc(&rc(&rr, &s.opp()), &t);
    let starred = c(&c(&rr, &ideal_upper(&s)), &t);
    ensure(
        &plain == starred.as_rel() && plain.is_weakening_closed(),
        || json!({"R": ideal_json(&rr), "S": ideal_json(&s), "T": ideal_json(&t)}),
    )
}

/// The 2-pullback of an ideal along `f × g`, built from the tabulation.
fn pullback_of_ideal(r: &mut GenRng, k: usize) -> Outcome {
    let x = pre(r, k);
    let y = pre(r, k);
    let rr = ideal_on(r, &x, &y);
    let f = map_to(r, &x, k);
    let g = map_to(r, &y, k);
    let pointwise = pullback_ideal(&rr, &f, &g).expect("boundaries match");
    let tab = rr.tabulate();
    let xy = product(&x, &y);
    let incl_table = tab
        .carrier
        .iter()
        .map(|&(a, b)| xy.index_of(a, b).expect("full product"))
        .collect();
    let incl = MonotoneMap::new(tab.obj.clone(), xy.obj.clone(), incl_table).expect("inclusion");
    let fg = product_map(&f, &g);
    let pb = pullback(&fg, &incl).expect("cospan");
    let uv = product(f.dom(), g.dom());
    let pairs: Vec<(usize, usize)> = pb.carrier.iter().map(|&(p, _)| uv.carrier[p]).collect();
    let built = Rel::from_pairs(f.dom(), g.dom(), &pairs).expect("indices in range");
    let sandwich = c(&c(&lower_star(&f), &rr), &upper_star(&g));
    let t = ideal_on(r, &x, &x);
    let h = map_to(r, &x, k);
    let inverse = pullback_ideal(&t, &h, &h).expect("endo");
    let inv_ok = &inverse == c(&c(&lower_star(&h), &t), &upper_star(&h)).as_rel();
    let ok = built == pointwise
        && pointwise.is_weakening_closed()
        && &pointwise == sandwich.as_rel()
        && inv_ok;
    ensure(
        ok,
        || json!({"R": ideal_json(&rr), "f": map_json(&f), "g": map_json(&g)}),
    )
}

fn ideal_category(r: &mut GenRng, k: usize) -> Outcome {
    let x = pre(r, k);
    let y = pre(r, k);
    let z = pre(r, k);
    let w = pre(r, k);
    let a = ideal_on(r, &x, &y);
    let b = ideal_on(r, &y, &z);
    let t = ideal_on(r, &z, &w);
    let assoc = c(&c(&a, &b), &t) == c(&a, &c(&b, &t));
    let unit = c(&IdealRel::identity(&x), &a) == a && c(&a, &IdealRel::identity(&y)) == a;
    ensure(
        assoc && unit,
        || json!({"R": ideal_json(&a), "S": ideal_json(&b), "T": ideal_json(&t)}),
    )
}

fn closure_laws(r: &mut GenRng, k: usize) -> Outcome {
    let x = pre(r, k);
    let y = pre(r, k);
    let a = gen::rel(r, &x, &y);
    let b = gen::rel(r, &x, &y);
    let ab = a.join(&b).expect("same boundary");
    let ca = a.ideal_close();
    let ok = a.is_subset(&ca)
        && ca.is_weakening_closed()
        && ca.as_rel().ideal_close() == ca
        && ca.is_subset(&ab.ideal_close());
    ensure(ok, || json!({"R": rel_json(&a), "S": rel_json(&b)}))
}

fn adjoint_round_trip(r: &mut GenRng, k: usize) -> Outcome {
    let f = any_map(r, k.min(5));
    let back = adjoint_to_map(&lower_star(&f), &upper_star(&f));
    ensure(
        back.as_ref().map(lower_star).as_ref() == Ok(&lower_star(&f)),
        || json!({"f": map_json(&f)}),
    )
}

fn effective_congruence(r: &mut GenRng, k: usize) -> Outcome {
    let x = pre(r, k);
    let cg = gen::congruence(r, &x);
    let ok = match effective_witness(&cg) {
        Ok(f) => is_so(&f) && kernel(&f) == cg,
        Err(_) => false,
    };
    ensure(ok, || json!({"R": ideal_json(&cg)}))
}

fn reflexive_tests_agree(r: &mut GenRng, k: usize) -> Outcome {
    let x = pre(r, k);
    let a = if r.gen_bool(0.5) {
        gen::reflexive_ideal(r, &x)
    } else {
        ideal_on(r, &x, &x)
    };
    ensure(
        is_reflexive(&a) == contains_identity(&a),
        || json!({"R": ideal_json(&a)}),
    )
}

// ---- Mal'tsev -----------------------------------------------------------

fn difunctional_implies_ord(r: &mut GenRng, k: usize) -> Outcome {
    let (d, _) = two_ideals(r, k);
    implies(
        is_difunctional(&d),
        is_ord_difunctional(&d),
        || json!({"D": ideal_json(&d)}),
    )
}

fn d_below_dd_star_d(r: &mut GenRng, k: usize) -> Outcome {
    let (d, _) = two_ideals(r, k);
    ensure(d.is_subset(&dd_star_d(&d)), || json!({"D": ideal_json(&d)}))
}

fn ord_difunctional_deciders(r: &mut GenRng, k: usize) -> Outcome {
    let (d, _) = two_ideals(r, k);
    ensure(dd_star_d_agreement(&d), || json!({"D": ideal_json(&d)}))
}

fn discrete_difunctional(r: &mut GenRng, k: usize) -> Outcome {
    let (n, mm) = (gen::size(r, k), gen::size(r, k));
    let (x, y) = (FinPreorder::discrete(n), FinPreorder::discrete(mm));
    let d = ideal_on(r, &x, &y);
    ensure(
        is_ord_difunctional(&d) == is_difunctional(&d),
        || json!({"D": ideal_json(&d)}),
    )
}

fn ckp_implications(r: &mut GenRng, k: usize) -> Outcome {
    let seed: u64 = r.gen();
    let rep = ckp_suite(1, k, seed);
    ensure(rep.violations() == 0, || {
        let ws: Vec<Value> = rep
            .witnesses
            .iter()
            .map(|(t, w)| json!({"item": t.to_string(), "rel": rel_json(w)}))
            .collect();
        json!({"witnesses": ws})
    })
}

// ---- V-categories -------------------------------------------------------

fn vcat_classifier(r: &mut GenRng, k: usize) -> Outcome {
    let v = gen::quantale(r);
    let n = gen::size(r, k.min(5));
    let y = if r.gen_bool(0.3) {
        gen::symmetric_vwedge(r, &v, n)
    } else {
        gen::vcat(r, &v, n)
    };
    ensure(
        h_is_vfunctor(&y) == is_symmetric_vwedge(&y),
        || json!({"Y": vcat_json(&y)}),
    )
}

fn vcat_boolean_equivalence(r: &mut GenRng, k: usize) -> Outcome {
    let v = std::sync::Arc::new(FinQuantale::boolean());
    let n = gen::size(r, k);
    let y = if r.gen_bool(0.3) {
        gen::symmetric_vwedge(r, &v, n)
    } else {
        gen::vcat(r, &v, n)
    };
    let p = y.to_preorder().expect("boolean quantale");
    ensure(
        is_symmetric_vwedge(&y) == p.is_symmetric(),
        || json!({"Y": preorder_json(&p)}),
    )
}

fn vcat_cocomma(r: &mut GenRng, k: usize) -> Outcome {
    let v = gen::quantale(r);
    let n = gen::size(r, k);
    let x = gen::vcat(r, &v, n);
    let cc = cocomma_self(&x);
    let id = VFunctor::identity(&x);
    let via = r_star_vcat(&id, &id);
    ensure(
        vcat_check(&v, &cc.hom_rows()).is_ok() && via.as_ref() == Ok(&cc),
        || json!({"X": vcat_json(&x)}),
    )
}

/// The cross homs of `R_*` against `⋁_w R(w, r2 z) ⊗ R(r1 x, w)`.
fn vcat_r_star_formula(r: &mut GenRng, k: usize) -> Outcome {
    let v = gen::quantale(r);
    let rn = gen::size(r, k);
    let rel = gen::vcat(r, &v, rn);
    let n = if rn > 0 { gen::size(r, k) } else { 0 };
    let Some(r1) = gen::vfunctor(r, &rel, n) else {
        return Outcome::Vacuous;
    };
    let mut t2: Vec<usize> = (0..rn).collect();
    t2.shuffle(r);
    let extra = if rn > 0 { gen::size(r, 2) } else { 0 };
    t2.extend((0..extra).map(|_| r.gen_range(0..rn)));
    let r2 = gen::vfunctors_with_tables(r, &rel, &[t2])
        .pop()
        .expect("one functor");
    let out = match r_star_vcat(&r1, &r2) {
        Ok(o) => o,
        Err(_) => return Outcome::Violated(json!({"R": vcat_json(&rel)})),
    };
    let (x, z) = (r1.dom(), r2.dom());
    let nx = x.size();
    let cross = |a: usize, b: usize| {
        (0..rn).fold(v.bottom(), |acc, w| {
            v.join(
                acc,
                v.tensor(rel.hom(w, r2.apply(b)), rel.hom(r1.apply(a), w)),
            )
        })
    };
    let ok = vcat_check(&v, &out.hom_rows()).is_ok()
        && (0..out.size()).all(|a| {
            (0..out.size()).all(|b| {
                let expect = match (a < nx, b < nx) {
                    (true, true) => x.hom(a, b),
                    (false, false) => z.hom(a - nx, b - nx),
                    (true, false) => cross(a, b - nx),
                    (false, true) => v.bottom(),
                };
                out.hom(a, b) == expect
            })
        });
    ensure(
        ok,
        || json!({"R": vcat_json(&rel), "X": vcat_json(x), "Z": vcat_json(z), "r1": r1.table(), "r2": r2.table()}),
    )
}

fn vcat_hom_preorder(r: &mut GenRng, k: usize) -> Outcome {
    let v = gen::quantale(r);
    let yn = gen::size(r, k);
    let y = gen::vcat(r, &v, yn);
    let n = if yn > 0 { gen::size(r, k) } else { 0 };
    let Some(fs) = gen::vfunctors(r, &y, n, 3) else {
        return Outcome::Vacuous;
    };
    let le = |a: &VFunctor, b: &VFunctor| vhom_leq(a, b).expect("parallel");
    let (f, g, h) = (&fs[0], &fs[1], &fs[2]);
    let refl = le(f, f);
    let trans = !(le(f, g) && le(g, h)) || le(f, h);
    let en = gen::size(r, k);
    let e = if n == 0 {
        None
    } else {
        gen::vfunctor(r, f.dom(), en)
    };
    let whisker = e.is_none_or(|e| {
        let ef = e.then(f).expect("composable");
        let eg = e.then(g).expect("composable");
        !le(f, g) || vhom_leq(&ef, &eg).expect("parallel")
    });
    ensure(
        refl && trans && whisker,
        || json!({"Y": vcat_json(&y), "f": f.table(), "g": g.table(), "h": h.table()}),
    )
}

fn vcat_d_star_cross(r: &mut GenRng, k: usize) -> Outcome {
    let v = gen::quantale(r);
    let n = gen::size(r, k.min(4));
    let y = gen::vcat(r, &v, n);
    let d = d_star_table(&y);
    let nn = n * n;
    let ok = (0..nn).all(|p| {
        (0..nn).all(|q| {
            let (y1, y2, z1, z2) = (p / n, p % n, q / n, q % n);
            let expect = v.meet(v.meet(y.hom(y1, z2), y.hom(y2, z2)), y.hom(y2, z1));
            d.hom(p, nn + q) == expect && d.hom(nn + q, p) == v.bottom()
        })
    });
    ensure(
        ok && vcat_check(&v, &d.hom_rows()).is_ok(),
        || json!({"Y": vcat_json(&y)}),
    )
}

// ---- registry and runner --------------------------------------------------

macro_rules! laws {
    ($backend:expr; $($id:literal => $f:ident),* $(,)?) => {
        vec![$(Law { id: $id, backend: $backend, check: $f }),*]
    };
}

pub fn registry(backend: Backend) -> Vec<Law> {
    match backend {
        Backend::Ord => laws![Backend::Ord;
            "ff-compose" => ff_compose,
            "ff-cancel" => ff_cancel,
            "ff-pullback" => ff_pullback,
            "so-compose" => so_compose,
            "so-cancel" => so_cancel,
            "so-ff-orthogonal" => so_ff_orthogonal,
            "comma-pasting" => comma_pasting,
            "comma-unit-projections" => comma_unit_projections,
            "comma-preserves-so" => comma_preserves_so,
            "r2-factorization" => r2_factorization,
            "r3-so-pullback" => r3_so_pullback,
            "r4-bicoinserter" => r4_bicoinserter,
            "star-of-graph" => star_of_graph,
            "star-contains-graph" => star_contains_graph,
            "star-functorial" => star_functorial,
            "star-order" => star_order,
            "star-unit-counit" => star_unit_counit,
            "star-triangles" => star_triangles,
            "comma-as-composite" => comma_as_composite,
            "ff-kernel" => ff_kernel,
            "ff-mono-kernel-posets" => ff_mono_kernel_posets,
            "so-cokernel" => so_cokernel,
            "so-cokernel-posets" => so_cokernel_posets,
            "pairing-ff" => pairing_ff,
            "pairing-ff-mono-posets" => pairing_ff_mono_posets,
            "meet-upper-star" => meet_upper_star,
            "meet-lower-star-source" => meet_lower_star_source,
            "meet-lower-star-target" => meet_lower_star_target,
            "meet-upper-star-source" => meet_upper_star_source,
            "star-transpose" => star_transpose,
            "freyd-enriched" => freyd_enriched,
            "freyd-plain" => freyd_plain,
            "upper-smallest" => upper_smallest,
            "opposite-vs-upper" => opposite_vs_upper,
            "pullback-of-ideal" => pullback_of_ideal,
            "ideal-category" => ideal_category,
            "closure-laws" => closure_laws,
            "adjoint-round-trip" => adjoint_round_trip,
            "effective-congruence" => effective_congruence,
            "reflexive-tests-agree" => reflexive_tests_agree,
            "difunctional-implies-ord" => difunctional_implies_ord,
            "d-below-dd-star-d" => d_below_dd_star_d,
            "ord-difunctional-deciders" => ord_difunctional_deciders,
            "discrete-difunctional" => discrete_difunctional,
            "ckp-implications" => ckp_implications,
        ],
        Backend::Vcat => laws![Backend::Vcat;
            "vcat-classifier" => vcat_classifier,
            "vcat-boolean-equivalence" => vcat_boolean_equivalence,
            "vcat-cocomma" => vcat_cocomma,
            "vcat-r-star-formula" => vcat_r_star_formula,
            "vcat-hom-preorder" => vcat_hom_preorder,
            "vcat-d-star-cross" => vcat_d_star_cross,
        ],
    }
}

fn claims_antisymmetry(r: &mut GenRng, k: usize) -> Outcome {
    let x = pre(r, k);
    ensure(x.is_antisymmetric(), || json!({"X": preorder_json(&x)}))
}

/// A deliberately false law ("every preorder is a partial order"), used to
/// check that the runner reports violations.
pub fn bad_law(backend: Backend) -> Law {
    Law {
        id: "injected-bad-law",
        backend,
        check: claims_antisymmetry,
    }
}

/// A stable stream number for a law id (FNV-1a).
fn stream(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

pub fn run_law(law: &Law, iterations: usize, max_size: usize, seed: u64) -> LawReport {
    let s = stream(law.id);
    let mut rep = LawReport::new(law.id);
    for i in 0..iterations {
        let mut r = gen::rng(gen::derive_seed(seed, s, i as u64));
        match (law.check)(&mut r, max_size) {
            Outcome::Pass => rep.passed += 1,
            Outcome::Vacuous => rep.vacuous += 1,
            Outcome::Violated(w) => {
                rep.violated += 1;
                if rep.witness.is_none() {
                    rep.witness = Some(json!({"iteration": i, "instance": w}));
                }
            }
        }
    }
    rep
}

/// Runs every law in parallel; the report is independent of scheduling.
pub fn run_suite(
    backend: Backend,
    laws: &[Law],
    iterations: usize,
    max_size: usize,
    seed: u64,
) -> SuiteReport {
    let results: Vec<LawReport> = laws
        .par_iter()
        .map(|l| run_law(l, iterations, max_size, seed))
        .collect();
    SuiteReport::new(backend, iterations, max_size, seed, results)
}

/// The stored instance on which `k_*(R ∧ S) ⊆ k_*R ∧ k_*S` is strict:
/// `X = 1`, `Y = 2` discrete, `k : Y -> 1`, `R = {(0,0)}`, `S = {(0,1)}`.
pub fn strict_meet_instance() -> (IdealRel, IdealRel, MonotoneMap) {
    let x = FinPreorder::singleton();
    let y = FinPreorder::discrete(2);
    let rr =
        IdealRel::new(Rel::from_pairs(&x, &y, &[(0, 0)]).expect("in range")).expect("discrete");
    let s = IdealRel::new(Rel::from_pairs(&x, &y, &[(0, 1)]).expect("in range")).expect("discrete");
    let k = MonotoneMap::constant(&y, &x, 0).expect("singleton");
    (rr, s, k)
}

/// `(k_*(R ∧ S), k_*R ∧ k_*S)` for an instance.
pub fn meet_lower_star_sides(rr: &IdealRel, s: &IdealRel, k: &MonotoneMap) -> (IdealRel, IdealRel) {
    let lo = lower_star(k);
    (c(&m(rr, s), &lo), m(&c(rr, &lo), &c(s, &lo)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laws_hold_on_a_short_run() {
        for backend in [Backend::Ord, Backend::Vcat] {
            let rep = run_suite(backend, &registry(backend), 40, 4, 3);
            for l in &rep.laws {
                assert_eq!(l.violated, 0, "{} failed: {:?}", l.law, l.witness);
            }
        }
    }

    #[test]
    fn bad_law_is_caught_with_witness() {
        let rep = run_suite(Backend::Ord, &[bad_law(Backend::Ord)], 50, 4, 0);
        assert!(rep.violations > 0);
        assert!(rep.laws[0].witness.is_some());
    }

    #[test]
    fn runs_are_deterministic() {
        let laws = registry(Backend::Ord);
        let a = run_suite(Backend::Ord, &laws[..6], 20, 4, 9);
        let b = run_suite(Backend::Ord, &laws[..6], 20, 4, 9);
        assert_eq!(a.to_json_string(), b.to_json_string());
    }

    #[test]
    fn size_zero_is_vacuously_fine() {
        let rep = run_suite(Backend::Ord, &registry(Backend::Ord), 5, 0, 0);
        assert_eq!(rep.violations, 0);
    }

    #[test]
    fn strict_meet_instance_is_strict() {
        let (rr, s, k) = strict_meet_instance();
        let (lhs, rhs) = meet_lower_star_sides(&rr, &s, &k);
        assert!(lhs.is_subset(&rhs));
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = registry(Backend::Ord)
            .iter()
            .chain(&registry(Backend::Vcat))
            .map(|l| l.id)
            .collect();
        let n = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }
}
