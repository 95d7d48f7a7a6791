//! Seeded random generators for preorders, maps and relations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use std::sync::Arc;

use crate::preorder::{FinPreorder, MonotoneMap};
use crate::quantale::FinQuantale;
use crate::relation::{IdealRel, Rel};
use crate::vcat::{FinVCat, VFunctor};

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixes a base seed with a stream and an index (splitmix64 finaliser).
pub fn derive_seed(base: u64, stream: u64, index: u64) -> u64 {
    let mut z = base
        .wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(index.wrapping_mul(0xBF58_476D_1CE4_E5B9))
        .wrapping_add(0x94D0_49BB_1331_11EB);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn size(rng: &mut GenRng, max: usize) -> usize {
    rng.gen_range(0..=max)
}

pub fn nonempty_size(rng: &mut GenRng, max: usize) -> usize {
    rng.gen_range(1..=max.max(1))
}

fn density(rng: &mut GenRng) -> f64 {
    rng.gen_range(0.0..0.6)
}

pub fn preorder(rng: &mut GenRng, n: usize) -> FinPreorder {
    let p = density(rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(p / 2.0) {
                pairs.push((i, j));
            }
        }
    }
    FinPreorder::closure(n, &pairs).expect("indices in range")
}

/// A random partial order: an acyclic relation on shuffled labels, closed.
pub fn poset(rng: &mut GenRng, n: usize) -> FinPreorder {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let p = density(rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                pairs.push((perm[i], perm[j]));
            }
        }
    }
    FinPreorder::closure(n, &pairs).expect("indices in range")
}

fn backtrack(
    rng: &mut GenRng,
    dom: &FinPreorder,
    cod: &FinPreorder,
    allowed: &dyn Fn(usize, usize) -> bool,
) -> Option<MonotoneMap> {
    let n = dom.size();
    let cands: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            let mut c: Vec<usize> = (0..cod.size()).filter(|&v| allowed(a, v)).collect();
            c.shuffle(rng);
            c
        })
        .collect();
    let mut table = vec![0; n];
    let mut pos = vec![0usize; n];
    let mut k = 0;
    while k < n {
        let mut placed = false;
        while pos[k] < cands[k].len() {
            let v = cands[k][pos[k]];
            pos[k] += 1;
            let ok = (0..k).all(|i| {
                (!dom.leq(i, k) || cod.leq(table[i], v)) && (!dom.leq(k, i) || cod.leq(v, table[i]))
            });
            if ok {
                table[k] = v;
                placed = true;
                break;
            }
        }
        if placed {
            k += 1;
        } else {
            pos[k] = 0;
            if k == 0 {
                return None;
            }
            k -= 1;
        }
    }
    Some(
        MonotoneMap::new(dom.clone(), cod.clone(), table).expect("backtracking keeps monotonicity"),
    )
}

/// A uniformly-shuffled monotone map; `None` only when `cod` is empty and `dom` is not.
pub fn monotone_map(rng: &mut GenRng, dom: &FinPreorder, cod: &FinPreorder) -> Option<MonotoneMap> {
    backtrack(rng, dom, cod, &|_, _| true)
}

/// A map `g` with `f ⪯ g`.
pub fn map_above(rng: &mut GenRng, f: &MonotoneMap) -> MonotoneMap {
    let cod = f.cod();
    backtrack(rng, f.dom(), cod, &|a, v| cod.leq(f.apply(a), v)).expect("f itself qualifies")
}

/// A parallel map, biased towards comparable ones.
pub fn parallel_map(rng: &mut GenRng, f: &MonotoneMap) -> MonotoneMap {
    if rng.gen_bool(0.5) {
        map_above(rng, f)
    } else {
        monotone_map(rng, f.dom(), f.cod()).expect("f witnesses a map exists")
    }
}

/// A surjective monotone map out of `dom` onto a random quotient.
pub fn surjection(rng: &mut GenRng, dom: &FinPreorder) -> MonotoneMap {
    let n = dom.size();
    if n == 0 {
        return MonotoneMap::identity(dom);
    }
    let m = rng.gen_range(1..=n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut table = vec![0; n];
    for (i, &a) in order.iter().enumerate() {
        table[a] = if i < m { i } else { rng.gen_range(0..m) };
    }
    let mut pairs: Vec<(usize, usize)> = dom.pairs().map(|(a, b)| (table[a], table[b])).collect();
    let p = density(rng) / 3.0;
    for i in 0..m {
        for j in 0..m {
            if i != j && rng.gen_bool(p) {
                pairs.push((i, j));
            }
        }
    }
    let cod = FinPreorder::closure(m, &pairs).expect("indices in range");
    MonotoneMap::new(dom.clone(), cod, table).expect("image order contains the pushed order")
}

/// An ff injective map: inclusion of a random subset with the restricted order.
pub fn embedding(rng: &mut GenRng, cod: &FinPreorder) -> MonotoneMap {
    let elems: Vec<usize> = (0..cod.size()).filter(|_| rng.gen_bool(0.6)).collect();
    let dom = cod.restrict(&elems);
    MonotoneMap::new(dom, cod.clone(), elems).expect("inclusions are monotone")
}

pub fn rel(rng: &mut GenRng, dom: &FinPreorder, cod: &FinPreorder) -> Rel {
    let p = density(rng);
    let cells: Vec<bool> = (0..dom.size() * cod.size())
        .map(|_| rng.gen_bool(p))
        .collect();
    let m = cod.size();
    Rel::from_fn(dom, cod, |x, y| cells[x * m + y])
}

/// A random ideal: a sparse relation closed under weakening.
pub fn ideal(rng: &mut GenRng, dom: &FinPreorder, cod: &FinPreorder) -> IdealRel {
    match rng.gen_range(0..20) {
        0 => IdealRel::empty(dom, cod),
        1 => IdealRel::total(dom, cod),
        _ => {
            let p = density(rng) / 2.0;
            let cells: Vec<bool> = (0..dom.size() * cod.size())
                .map(|_| rng.gen_bool(p))
                .collect();
            let m = cod.size();
            Rel::from_fn(dom, cod, |x, y| cells[x * m + y]).ideal_close()
        }
    }
}

/// A reflexive ideal on `x`: `≤` together with some extra generated pairs.
pub fn reflexive_ideal(rng: &mut GenRng, x: &FinPreorder) -> IdealRel {
    let extra = ideal(rng, x, x);
    IdealRel::identity(x)
        .as_rel()
        .join(&extra)
        .expect("same boundary")
        .ideal_close()
}

/// A congruence on `x`: a preorder containing `≤`.
pub fn congruence(rng: &mut GenRng, x: &FinPreorder) -> IdealRel {
    let n = x.size();
    let p = density(rng) / 3.0;
    let mut pairs: Vec<(usize, usize)> = x.pairs().collect();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(p) {
                pairs.push((i, j));
            }
        }
    }
    let c = FinPreorder::closure(n, &pairs).expect("indices in range");
    IdealRel::new(Rel::from_fn(x, x, |a, b| c.leq(a, b)))
        .expect("transitive and contains the order")
}

/// One of the shipped quantale fixtures.
pub fn quantale(rng: &mut GenRng) -> Arc<FinQuantale> {
    let name = FinQuantale::FIXTURES.choose(rng).expect("nonempty");
    Arc::new(FinQuantale::fixture(name).expect("listed fixture"))
}

fn close_homs(
    v: &FinQuantale,
    n: usize,
    hom: &mut [usize],
    compose: impl Fn(usize, usize) -> usize,
) {
    let mut changed = true;
    while changed {
        changed = false;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let via = compose(hom[b * n + c], hom[a * n + b]);
                    let j = v.join(hom[a * n + c], via);
                    if j != hom[a * n + c] {
                        hom[a * n + c] = j;
                        changed = true;
                    }
                }
            }
        }
    }
}

fn random_value(rng: &mut GenRng, v: &FinQuantale) -> usize {
    if rng.gen_bool(0.4) {
        v.bottom()
    } else {
        rng.gen_range(0..v.size())
    }
}

/// Random homs with `k` on the diagonal, raised to the least V-category above them.
pub fn vcat(rng: &mut GenRng, v: &Arc<FinQuantale>, n: usize) -> FinVCat {
    let mut hom: Vec<usize> = (0..n * n)
        .map(|i| {
            if i % (n + 1) == 0 {
                v.unit()
            } else {
                random_value(rng, v)
            }
        })
        .collect();
    close_homs(v, n, &mut hom, |s, t| v.tensor(s, t));
    FinVCat::from_fn(v, n, |a, b| hom[a * n + b])
}

/// A symmetric V-category whose homs are transitive for `∧`.
pub fn symmetric_vwedge(rng: &mut GenRng, v: &Arc<FinQuantale>, n: usize) -> FinVCat {
    let mut hom = vec![v.unit(); n * n];
    for a in 0..n {
        for b in a + 1..n {
            let t = random_value(rng, v);
            hom[a * n + b] = t;
            hom[b * n + a] = t;
        }
    }
    close_homs(v, n, &mut hom, |s, t| v.meet(s, t));
    FinVCat::from_fn(v, n, |a, b| hom[a * n + b])
}

/// V-functors into `cod` with the given tables (all of one length) on a
/// common random domain, whose homs are cut down by the homs of the images.
pub fn vfunctors_with_tables(
    rng: &mut GenRng,
    cod: &FinVCat,
    tables: &[Vec<usize>],
) -> Vec<VFunctor> {
    let n = tables.first().map_or(0, Vec::len);
    let v = cod.quantale();
    let base = vcat(rng, v, n);
    let dom = FinVCat::from_fn(v, n, |a, b| {
        tables
            .iter()
            .fold(base.hom(a, b), |acc, t| v.meet(acc, cod.hom(t[a], t[b])))
    });
    tables
        .iter()
        .map(|t| {
            VFunctor::new(dom.clone(), cod.clone(), t.clone())
                .expect("homs bounded by the codomain")
        })
        .collect()
}

/// `count` parallel V-functors into `cod` from a random domain of size `n`.
pub fn vfunctors(rng: &mut GenRng, cod: &FinVCat, n: usize, count: usize) -> Option<Vec<VFunctor>> {
    if cod.size() == 0 && n > 0 {
        return None;
    }
    let tables: Vec<Vec<usize>> = (0..count)
        .map(|_| (0..n).map(|_| rng.gen_range(0..cod.size())).collect())
        .collect();
    Some(vfunctors_with_tables(rng, cod, &tables))
}

pub fn vfunctor(rng: &mut GenRng, cod: &FinVCat, n: usize) -> Option<VFunctor> {
    vfunctors(rng, cod, n, 1).map(|mut v| v.pop().expect("one functor"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preorder::{hom_leq, is_ff, is_so};

    #[test]
    fn seeds_are_reproducible() {
        let a = preorder(&mut rng(7), 5);
        let b = preorder(&mut rng(7), 5);
        assert_eq!(a, b);
        assert_ne!(derive_seed(0, 1, 2), derive_seed(0, 2, 1));
    }

    #[test]
    fn generated_values_satisfy_their_contracts() {
        let mut r = rng(11);
        for _ in 0..200 {
            let n = size(&mut r, 5);
            let x = preorder(&mut r, n);
            let m = nonempty_size(&mut r, 5);
            let y = preorder(&mut r, m);
            assert!(poset(&mut r, n).is_antisymmetric());
            let f = monotone_map(&mut r, &x, &y).unwrap();
            assert!(hom_leq(&f, &map_above(&mut r, &f)).unwrap());
            assert!(is_so(&surjection(&mut r, &x)));
            let e = embedding(&mut r, &y);
            assert!(is_ff(&e) && e.is_injective());
            assert!(ideal(&mut r, &x, &y).is_weakening_closed());
            let c = congruence(&mut r, &x);
            assert!(crate::ideal::is_congruence(&c).unwrap());
            assert!(crate::ideal::is_reflexive(&reflexive_ideal(&mut r, &x)).unwrap());
        }
    }

    #[test]
    fn generated_vcats_validate() {
        let mut r = rng(5);
        for _ in 0..200 {
            let v = quantale(&mut r);
            let n = size(&mut r, 5);
            let x = vcat(&mut r, &v, n);
            assert!(crate::vcat::vcat_check(&v, &x.hom_rows()).is_ok());
            let s = symmetric_vwedge(&mut r, &v, n);
            assert!(crate::vcat::is_symmetric_vwedge(&s));
            assert!(crate::vcat::vcat_check(&v, &s.hom_rows()).is_ok());
            let m = size(&mut r, 4);
            if let Some(f) = vfunctor(&mut r, &x, m) {
                assert!(crate::vcat::vfunctor_check(f.dom(), f.cod(), f.table()).is_ok());
            }
        }
    }

    #[test]
    fn no_map_into_empty() {
        let mut r = rng(0);
        assert!(monotone_map(&mut r, &FinPreorder::singleton(), &FinPreorder::empty()).is_none());
        assert!(monotone_map(&mut r, &FinPreorder::empty(), &FinPreorder::empty()).is_some());
    }
}
