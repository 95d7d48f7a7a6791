//! Difunctionality deciders, the W-Mal'tsev object tests, the permutability
//! implications and a counterexample search for the `Ord` backend.

use rand::Rng;

use crate::gen::{self, GenRng};
use crate::ideal::{
    ideal_upper, is_congruence, is_reflexive, is_transitive, lower_star, upper_star,
};
use crate::limits::{product, so_ff_factorize, Coproduct};
use crate::preorder::{hom_leq, FinPreorder, MonotoneMap};
use crate::relation::{membership, IdealRel, Rel};

/// `x D y`, `u D y`, `u D v` but not `x D v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DifunctionalWitness {
    pub x: usize,
    pub y: usize,
    pub u: usize,
    pub v: usize,
}

/// `x D y`, `y <= y2`, `u D y2`, `u <= u2`, `u2 D v` but not `x D v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PictureWitness {
    pub x: usize,
    pub y: usize,
    pub y2: usize,
    pub u: usize,
    pub u2: usize,
    pub v: usize,
}

pub fn difunctional_violation(d: &Rel) -> Option<DifunctionalWitness> {
    let (n, m) = (d.dom().size(), d.cod().size());
    for (x, y) in d.pairs() {
        for u in (0..n).filter(|&u| d.get(u, y)) {
            for v in 0..m {
                if d.get(u, v) && !d.get(x, v) {
                    return Some(DifunctionalWitness { x, y, u, v });
                }
            }
        }
    }
    None
}

pub fn is_difunctional(d: &Rel) -> bool {
    difunctional_violation(d).is_none()
}

/// `DD°D ⊆ D`.
pub fn difunctional_by_composite(d: &Rel) -> bool {
    let ddd = d
        .compose(&d.opp())
        .and_then(|r| r.compose(d))
        .expect("boundaries line up");
    ddd.is_subset(d)
}

/// Searches the order-interleaved picture using the orders on `d`'s boundaries.
pub fn ord_difunctional_violation(d: &Rel) -> Option<PictureWitness> {
    let (xs, ys) = (d.dom(), d.cod());
    let (n, m) = (xs.size(), ys.size());
    for (x, y) in d.pairs() {
        for y2 in (0..m).filter(|&y2| ys.leq(y, y2)) {
            for u in (0..n).filter(|&u| d.get(u, y2)) {
                for u2 in (0..n).filter(|&u2| xs.leq(u, u2)) {
                    for v in (0..m).filter(|&v| d.get(u2, v)) {
                        if !d.get(x, v) {
                            return Some(PictureWitness { x, y, y2, u, u2, v });
                        }
                    }
                }
            }
        }
    }
    None
}

pub fn is_ord_difunctional(d: &IdealRel) -> bool {
    ord_difunctional_violation(d).is_none()
}

/// `D D^* D`, composed diagrammatically.
pub fn dd_star_d(d: &Rel) -> Rel {
    d.compose(&ideal_upper(d))
        .and_then(|r| r.compose(d))
        .expect("boundaries line up")
}

pub fn ord_difunctional_by_composite(d: &IdealRel) -> bool {
    dd_star_d(d) == **d
}

/// The picture decider and the composite decider agree.
pub fn dd_star_d_agreement(d: &IdealRel) -> bool {
    is_ord_difunctional(d) == ord_difunctional_by_composite(d)
}

/// The relation `D ⊆ 2Y × 2Y` of the coproduct test, with its generated ideal.
#[derive(Debug, Clone)]
pub struct CoproductTest {
    pub two_y: Coproduct,
    pub d: Rel,
    pub d_star: IdealRel,
}

impl CoproductTest {
    pub fn new(y: &FinPreorder) -> CoproductTest {
        let two_y = Coproduct::new(&[y, y]);
        let three_y = Coproduct::new(&[y, y, y]);
        let sq = product(&two_y.obj, &two_y.obj);
        let (i1, i2) = (&two_y.injections[0], &two_y.injections[1]);
        let legs: Vec<MonotoneMap> = [(i1, i2), (i2, i2), (i2, i1)]
            .iter()
            .map(|(a, b)| sq.pairing(a, b).expect("coprojections share Y"))
            .collect();
        let into_sq = three_y.copairing(&legs).expect("legs share codomain");
        let fact = so_ff_factorize(&into_sq);
        let pairs: Vec<(usize, usize)> = (0..fact.image.size())
            .map(|i| sq.carrier[fact.m.apply(i)])
            .collect();
        let d =
            Rel::from_pairs(&two_y.obj, &two_y.obj, &pairs).expect("pairs come from the product");
        let d_star = d.ideal_close();
        CoproductTest { two_y, d, d_star }
    }

    /// `(ι1, ι1) ∈_Y D_*`.
    pub fn holds(&self) -> bool {
        let i1 = &self.two_y.injections[0];
        membership(&self.d_star, i1, i1).expect("coprojection lands in 2Y")
    }

    /// `(ι1, ι1) ∈_Y D`, the test without ideal closure.
    pub fn holds_plain(&self) -> bool {
        let i1 = &self.two_y.injections[0];
        membership(&self.d, i1, i1).expect("coprojection lands in 2Y")
    }
}

pub fn w_maltsev_object_test(y: &FinPreorder) -> bool {
    CoproductTest::new(y).holds()
}

/// The same construction read as an ordinary relation.
pub fn w_maltsev_object_test_plain(y: &FinPreorder) -> bool {
    CoproductTest::new(y).holds_plain()
}

/// A failing instance of the defining implication at the object `Y`.
#[derive(Debug, Clone)]
pub struct DirectWitness {
    pub ideal: IdealRel,
    pub x: MonotoneMap,
    pub z: MonotoneMap,
    pub z2: MonotoneMap,
    pub u: MonotoneMap,
    pub u2: MonotoneMap,
    pub v: MonotoneMap,
}

#[derive(Debug, Clone)]
pub struct DirectOutcome {
    pub holds: bool,
    pub witness: Option<DirectWitness>,
    pub ideals_checked: usize,
}

/// The hom-preorder `Ord(Y, X)` as a finite preorder, with its maps.
fn hom_object(y: &FinPreorder, x: &FinPreorder) -> (FinPreorder, Vec<MonotoneMap>) {
    let maps = MonotoneMap::all(y, x);
    let p = FinPreorder::from_fn(maps.len(), |i, j| {
        hom_leq(&maps[i], &maps[j]).expect("parallel")
    });
    (p, maps)
}

/// Bounded search over ideals `R: X ↬ Z` with `|X|, |Z| <= budget` and all
/// generalised elements out of `Y`.
///
/// Membership of pairs of generalised elements is itself an ideal between
/// the hom-preorders, so the implication is the picture test on that ideal.
pub fn ord_w_maltsev_direct(y: &FinPreorder, budget: usize) -> DirectOutcome {
    assert!(budget <= 3, "direct search budget is limited to 3");
    let objs: Vec<FinPreorder> = (0..=budget).flat_map(FinPreorder::all_of_size).collect();
    let homs: Vec<(FinPreorder, Vec<MonotoneMap>)> =
        objs.iter().map(|x| hom_object(y, x)).collect();
    let mut checked = 0;
    for (xi, x) in objs.iter().enumerate() {
        for (zi, z) in objs.iter().enumerate() {
            let (hx, mx) = &homs[xi];
            let (hz, mz) = &homs[zi];
            for r in IdealRel::enumerate(x, z) {
                checked += 1;
                let m = Rel::from_fn(hx, hz, |i, j| {
                    membership(&r, &mx[i], &mz[j]).expect("typed")
                });
                if let Some(w) = ord_difunctional_violation(&m) {
                    let witness = DirectWitness {
                        ideal: r,
                        x: mx[w.x].clone(),
                        z: mz[w.y].clone(),
                        z2: mz[w.y2].clone(),
                        u: mx[w.u].clone(),
                        u2: mx[w.u2].clone(),
                        v: mz[w.v].clone(),
                    };
                    return DirectOutcome {
                        holds: false,
                        witness: Some(witness),
                        ideals_checked: checked,
                    };
                }
            }
        }
    }
    DirectOutcome {
        holds: true,
        witness: None,
        ideals_checked: checked,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Restriction {
    Any,
    DiscreteOnly,
    TotalOnly,
}

fn admissible(r: &IdealRel, restriction: Restriction) -> bool {
    match restriction {
        Restriction::Any => true,
        Restriction::DiscreteOnly => r.dom().is_discrete() && r.cod().is_discrete(),
        Restriction::TotalOnly => r.count() == r.dom().size() * r.cod().size(),
    }
}

/// Finds an ideal that is not Ord-difunctional: exhaustively on carriers of
/// size at most 2, then by seeded sampling up to `max_size`.
pub fn counterexample_search(
    max_size: usize,
    seed: u64,
    restriction: Restriction,
) -> Option<IdealRel> {
    let exhaustive = max_size.min(2);
    let objs: Vec<FinPreorder> = (0..=exhaustive)
        .flat_map(FinPreorder::all_of_size)
        .filter(|p| restriction != Restriction::DiscreteOnly || p.is_discrete())
        .collect();
    for x in &objs {
        for z in &objs {
            for r in IdealRel::enumerate(x, z) {
                if admissible(&r, restriction) && !is_ord_difunctional(&r) {
                    return Some(r);
                }
            }
        }
    }
    let mut rng = gen::rng(seed);
    for _ in 0..2000 {
        if max_size < 3 {
            break;
        }
        let (n, m) = (rng.gen_range(3..=max_size), rng.gen_range(1..=max_size));
        let (x, z) = match restriction {
            Restriction::DiscreteOnly => (FinPreorder::discrete(n), FinPreorder::discrete(m)),
            _ => (gen::preorder(&mut rng, n), gen::preorder(&mut rng, m)),
        };
        let r = match restriction {
            Restriction::TotalOnly => IdealRel::total(&x, &z),
            _ => gen::ideal(&mut rng, &x, &z),
        };
        if !is_ord_difunctional(&r) {
            return Some(r);
        }
    }
    None
}

/// Tally for one implication of the permutability suite.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ImplicationTally {
    pub applicable: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, Default)]
pub struct CkpReport {
    /// (a) commuting kernels of the legs give `DD^*D = D`.
    pub kernels_commute: ImplicationTally,
    /// (b) a reflexive Ord-difunctional ideal is transitive.
    pub reflexive_is_congruence: ImplicationTally,
    /// (c) composites of reflexive ideals are reflexive.
    pub reflexive_composite: ImplicationTally,
    /// (d) commuting congruences compose to a congruence.
    pub commuting_congruences: ImplicationTally,
    /// (e) for ideals, Ord-difunctional iff difunctional.
    pub ideal_difunctional: ImplicationTally,
    pub witnesses: Vec<(char, Rel)>,
}

impl CkpReport {
    pub fn violations(&self) -> usize {
        self.tallies().iter().map(|(_, t)| t.violations).sum()
    }

    pub fn tallies(&self) -> [(char, &ImplicationTally); 5] {
        [
            ('a', &self.kernels_commute),
            ('b', &self.reflexive_is_congruence),
            ('c', &self.reflexive_composite),
            ('d', &self.commuting_congruences),
            ('e', &self.ideal_difunctional),
        ]
    }
}

fn record(
    t: &mut ImplicationTally,
    witnesses: &mut Vec<(char, Rel)>,
    tag: char,
    premise: bool,
    ok: bool,
    r: &Rel,
) {
    if premise {
        t.applicable += 1;
        if !ok {
            t.violations += 1;
            witnesses.push((tag, r.clone()));
        }
    }
}

/// Per-instance implications used in the characterisation of regular
/// Ord-Mal'tsev categories, checked on `samples` random instances.
pub fn ckp_suite(samples: usize, max_size: usize, seed: u64) -> CkpReport {
    let mut rep = CkpReport::default();
    let mut rng = gen::rng(seed);
    for _ in 0..samples {
        ckp_instance(&mut rng, max_size, &mut rep);
    }
    rep
}

fn ckp_instance(rng: &mut GenRng, max_size: usize, rep: &mut CkpReport) {
    let w = &mut rep.witnesses;
    let (n, m) = (gen::size(rng, max_size), gen::size(rng, max_size));
    let x = gen::preorder(rng, n);
    let y = gen::preorder(rng, m);

    let d = gen::ideal(rng, &x, &y);
    let t = d.tabulate();
    let k1 = lower_star(&t.p1).compose(&upper_star(&t.p1)).expect("endo");
    let k2 = lower_star(&t.p2).compose(&upper_star(&t.p2)).expect("endo");
    let commute = k1.compose(&k2).ok() == k2.compose(&k1).ok();
    record(
        &mut rep.kernels_commute,
        w,
        'a',
        commute,
        ord_difunctional_by_composite(&d),
        &d,
    );

    let r = gen::reflexive_ideal(rng, &x);
    let trans = is_transitive(&r).expect("endo");
    record(
        &mut rep.reflexive_is_congruence,
        w,
        'b',
        is_ord_difunctional(&r),
        trans,
        &r,
    );

    let s = gen::reflexive_ideal(rng, &x);
    let rs = r.compose(&s).expect("endo");
    record(
        &mut rep.reflexive_composite,
        w,
        'c',
        true,
        is_reflexive(&rs).expect("endo"),
        &rs,
    );

    let (c1, c2) = if rng.gen_bool(0.5) {
        (gen::congruence(rng, &x), gen::congruence(rng, &x))
    } else {
        let c = gen::congruence(rng, &x);
        (c.clone(), c)
    };
    let c12 = c1.compose(&c2).expect("endo");
    let perm = c12 == c2.compose(&c1).expect("endo");
    record(
        &mut rep.commuting_congruences,
        w,
        'd',
        perm,
        is_congruence(&c12).expect("endo"),
        &c12,
    );

    let agree = is_ord_difunctional(&d) == is_difunctional(&d);
    record(&mut rep.ideal_difunctional, w, 'e', true, agree, &d);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::id_ideal;

    #[test]
    fn graphs_and_diagonals_are_difunctional() {
        let x = FinPreorder::closure(3, &[(0, 2)]).unwrap();
        let y = FinPreorder::chain(2);
        for f in MonotoneMap::all(&x, &y) {
            let g = Rel::graph(&f);
            assert!(is_difunctional(&g));
            assert!(difunctional_by_composite(&g));
        }
        assert!(is_difunctional(&Rel::diagonal(&x)));
    }

    #[test]
    fn naturals_leq_is_not_difunctional() {
        // <= restricted to {5, 6, 7, 8}, indexed from 5.
        let s = FinPreorder::discrete(4);
        let le = Rel::from_fn(&s, &s, |a, b| a <= b);
        assert!(!is_difunctional(&le));
        assert!(!difunctional_by_composite(&le));
        let w = DifunctionalWitness {
            x: 2,
            y: 3,
            u: 0,
            v: 1,
        };
        assert!(le.get(w.x, w.y) && le.get(w.u, w.y) && le.get(w.u, w.v) && !le.get(w.x, w.v));
    }

    #[test]
    fn ord_difunctional_examples() {
        let c2 = FinPreorder::chain(2);
        let total = IdealRel::total(&c2, &c2);
        assert!(is_ord_difunctional(&total));
        assert!(ord_difunctional_by_composite(&total));
        let i = id_ideal(&c2);
        assert!(!is_ord_difunctional(&i));
        assert_eq!(dd_star_d(&i).count(), 4);
        assert!(dd_star_d_agreement(&i));
        let a2 = FinPreorder::discrete(2);
        assert!(dd_star_d_agreement(&Rel::diagonal(&a2).ideal_close()));
    }

    #[test]
    fn discrete_ideals_agree_with_ordinary_difunctionality() {
        for n in 0..=2 {
            for m in 0..=2 {
                let (x, y) = (FinPreorder::discrete(n), FinPreorder::discrete(m));
                for d in IdealRel::enumerate(&x, &y) {
                    assert_eq!(is_ord_difunctional(&d), is_difunctional(&d));
                }
            }
        }
    }

    #[test]
    fn coproduct_test_examples() {
        assert!(w_maltsev_object_test(&FinPreorder::empty()));
        let one = CoproductTest::new(&FinPreorder::singleton());
        assert_eq!(
            one.d_star.pairs().collect::<Vec<_>>(),
            vec![(0, 1), (1, 0), (1, 1)]
        );
        assert!(!one.holds());
        assert!(!w_maltsev_object_test(&FinPreorder::chain(2)));
        assert!(!w_maltsev_object_test_plain(&FinPreorder::discrete(2)));
    }

    #[test]
    fn direct_search_examples() {
        assert!(ord_w_maltsev_direct(&FinPreorder::empty(), 2).holds);
        let out = ord_w_maltsev_direct(&FinPreorder::singleton(), 2);
        assert!(!out.holds);
        let w = out.witness.unwrap();
        assert!(
            !w.ideal.dom().is_discrete() || !w.ideal.cod().is_discrete() || w.ideal.count() > 0
        );
    }

    #[test]
    fn counterexample_search_examples() {
        let r = counterexample_search(2, 0, Restriction::Any).unwrap();
        assert!(!is_ord_difunctional(&r));
        let r = counterexample_search(2, 0, Restriction::DiscreteOnly).unwrap();
        assert!(!is_difunctional(&r));
        assert_eq!(r.count(), 3);
        assert!(counterexample_search(4, 0, Restriction::TotalOnly).is_none());
    }

    #[test]
    fn ckp_suite_has_no_violations() {
        let rep = ckp_suite(300, 5, 1);
        assert_eq!(rep.violations(), 0, "{:?}", rep.witnesses);
        assert!(rep.tallies().iter().all(|(_, t)| t.applicable > 0));
    }
}
