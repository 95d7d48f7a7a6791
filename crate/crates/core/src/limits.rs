//! Finite 2-limits and colimits in `Ord`: products, pullbacks, comma
//! objects, coproducts, coinserters, and the (so, ff) factorization.
//!
//! Every limit built here is a subset of a product `X × Z` carrying the
//! componentwise order, so its pair of projections is jointly ff.

use crate::error::{Error, Result};
use crate::preorder::{is_ff, is_so, FinPreorder, MonotoneMap};

/// An object whose carrier is a set of pairs in `X × Z`, ordered
/// componentwise, together with its two projections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSpan {
    pub obj: FinPreorder,
    pub carrier: Vec<(usize, usize)>,
    pub p1: MonotoneMap,
    pub p2: MonotoneMap,
}

impl PairSpan {
    pub(crate) fn build(x: &FinPreorder, z: &FinPreorder, carrier: Vec<(usize, usize)>) -> Self {
        let obj = FinPreorder::from_fn(carrier.len(), |i, j| {
            x.leq(carrier[i].0, carrier[j].0) && z.leq(carrier[i].1, carrier[j].1)
        });
        let p1 = MonotoneMap::new_unchecked(
            obj.clone(),
            x.clone(),
            carrier.iter().map(|p| p.0).collect(),
        );
        let p2 = MonotoneMap::new_unchecked(
            obj.clone(),
            z.clone(),
            carrier.iter().map(|p| p.1).collect(),
        );
        PairSpan {
            obj,
            carrier,
            p1,
            p2,
        }
    }

    pub fn left(&self) -> &FinPreorder {
        self.p1.cod()
    }

    pub fn right(&self) -> &FinPreorder {
        self.p2.cod()
    }

    pub fn index_of(&self, x: usize, z: usize) -> Option<usize> {
        self.carrier.binary_search(&(x, z)).ok()
    }

    pub fn contains(&self, x: usize, z: usize) -> bool {
        self.index_of(x, z).is_some()
    }

    /// The induced map `⟨a, b⟩ : A -> self`, if `(a t, b t)` always lands in
    /// the carrier.
    pub fn pairing(&self, a: &MonotoneMap, b: &MonotoneMap) -> Result<MonotoneMap> {
        if a.dom() != b.dom() || a.cod() != self.left() || b.cod() != self.right() {
            return Err(Error::Mismatch("pairing"));
        }
        let mut table = Vec::with_capacity(a.dom().size());
        for t in 0..a.dom().size() {
            match self.index_of(a.apply(t), b.apply(t)) {
                Some(i) => table.push(i),
                None => {
                    return Err(Error::Precondition(format!(
                        "pair ({}, {}) not in carrier",
                        a.apply(t),
                        b.apply(t)
                    )))
                }
            }
        }
        // Componentwise order makes this monotone whenever a and b are.
        Ok(MonotoneMap::new_unchecked(
            a.dom().clone(),
            self.obj.clone(),
            table,
        ))
    }
}

pub fn product(x: &FinPreorder, y: &FinPreorder) -> PairSpan {
    let carrier = (0..x.size())
        .flat_map(|a| (0..y.size()).map(move |b| (a, b)))
        .collect();
    PairSpan::build(x, y, carrier)
}

/// Strict pullback of a cospan `f : X -> Y <- Z : g`.
pub fn pullback(f: &MonotoneMap, g: &MonotoneMap) -> Result<PairSpan> {
    if f.cod() != g.cod() {
        return Err(Error::Mismatch("pullback"));
    }
    let carrier = pairs_where(f.dom(), g.dom(), |a, b| f.apply(a) == g.apply(b));
    Ok(PairSpan::build(f.dom(), g.dom(), carrier))
}

/// The strict comma object `f/g` with carrier `{(x, z) : f x <= g z}`.
pub fn comma(f: &MonotoneMap, g: &MonotoneMap) -> Result<PairSpan> {
    if f.cod() != g.cod() {
        return Err(Error::Mismatch("comma"));
    }
    let y = f.cod();
    let carrier = pairs_where(f.dom(), g.dom(), |a, b| y.leq(f.apply(a), g.apply(b)));
    Ok(PairSpan::build(f.dom(), g.dom(), carrier))
}

fn pairs_where(
    x: &FinPreorder,
    z: &FinPreorder,
    pred: impl Fn(usize, usize) -> bool,
) -> Vec<(usize, usize)> {
    (0..x.size())
        .flat_map(|a| (0..z.size()).map(move |b| (a, b)))
        .filter(|&(a, b)| pred(a, b))
        .collect()
}

/// `⟨f, h⟩ : X -> Y × Z`.
pub fn pairing(f: &MonotoneMap, h: &MonotoneMap) -> Result<MonotoneMap> {
    product(f.cod(), h.cod()).pairing(f, h)
}

/// `f × g : X × Z -> X' × Z'`.
pub fn product_map(f: &MonotoneMap, g: &MonotoneMap) -> MonotoneMap {
    let src = product(f.dom(), g.dom());
    let dst = product(f.cod(), g.cod());
    let table = src
        .carrier
        .iter()
        .map(|&(a, b)| {
            dst.index_of(f.apply(a), g.apply(b))
                .expect("product is full")
        })
        .collect();
    MonotoneMap::new_unchecked(src.obj, dst.obj, table)
}

/// A finite coproduct: summands laid out consecutively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coproduct {
    pub obj: FinPreorder,
    pub injections: Vec<MonotoneMap>,
    offsets: Vec<usize>,
}

impl Coproduct {
    pub fn new(summands: &[&FinPreorder]) -> Self {
        let mut offsets = Vec::with_capacity(summands.len());
        let mut total = 0;
        let mut owner = Vec::new();
        for (s, p) in summands.iter().enumerate() {
            offsets.push(total);
            total += p.size();
            owner.extend((0..p.size()).map(|i| (s, i)));
        }
        let obj = FinPreorder::from_fn(total, |i, j| {
            let (si, li) = owner[i];
            let (sj, lj) = owner[j];
            si == sj && summands[si].leq(li, lj)
        });
        let injections = summands
            .iter()
            .zip(&offsets)
            .map(|(p, &off)| {
                MonotoneMap::new_unchecked(
                    (*p).clone(),
                    obj.clone(),
                    (off..off + p.size()).collect(),
                )
            })
            .collect();
        Coproduct {
            obj,
            injections,
            offsets,
        }
    }

    pub fn index(&self, summand: usize, local: usize) -> usize {
        self.offsets[summand] + local
    }

    /// `(summand, local index)` of a point of the coproduct.
    pub fn locate(&self, i: usize) -> (usize, usize) {
        let s = (0..self.offsets.len())
            .find(|&s| {
                i >= self.offsets[s] && i < self.offsets[s] + self.injections[s].dom().size()
            })
            .expect("point out of range");
        (s, i - self.offsets[s])
    }

    /// The copairing `[f_1, ..., f_n] : ∐ X_i -> Y`.
    pub fn copairing(&self, maps: &[MonotoneMap]) -> Result<MonotoneMap> {
        if maps.len() != self.injections.len() {
            return Err(Error::Mismatch("copairing"));
        }
        let cod = maps
            .first()
            .map(|m| m.cod().clone())
            .unwrap_or_else(FinPreorder::empty);
        let mut table = Vec::with_capacity(self.obj.size());
        for (m, inj) in maps.iter().zip(&self.injections) {
            if m.dom() != inj.dom() || *m.cod() != cod {
                return Err(Error::Mismatch("copairing"));
            }
            table.extend_from_slice(m.table());
        }
        Ok(MonotoneMap::new_unchecked(self.obj.clone(), cod, table))
    }
}

pub fn coproduct(x: &FinPreorder, y: &FinPreorder) -> Coproduct {
    Coproduct::new(&[x, y])
}

/// The (so, ff) factorization `f = m ∘ e` through the image of `f` with the
/// order restricted from the codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub image: FinPreorder,
    pub e: MonotoneMap,
    pub m: MonotoneMap,
}

pub fn so_ff_factorize(f: &MonotoneMap) -> Factorization {
    let img = f.image();
    let image = f.cod().restrict(&img);
    let e_table = f
        .table()
        .iter()
        .map(|v| img.binary_search(v).expect("in image"))
        .collect();
    let e = MonotoneMap::new_unchecked(f.dom().clone(), image.clone(), e_table);
    let m = MonotoneMap::new_unchecked(image.clone(), f.cod().clone(), img);
    debug_assert!(is_so(&e) && is_ff(&m));
    Factorization { image, e, m }
}

/// Coinserter of a parallel pair `a, b : X -> A`: the identity-on-points map
/// into `A` re-ordered by the closure of `<= ∪ {(a x, b x)}`.
pub fn coinserter(a: &MonotoneMap, b: &MonotoneMap) -> Result<MonotoneMap> {
    if !a.parallel(b) {
        return Err(Error::Mismatch("coinserter"));
    }
    let target = a.cod();
    let mut pairs: Vec<(usize, usize)> = target.pairs().collect();
    pairs.extend((0..a.dom().size()).map(|x| (a.apply(x), b.apply(x))));
    let quotient = FinPreorder::closure(target.size(), &pairs)?;
    MonotoneMap::new(target.clone(), quotient, (0..target.size()).collect())
}

/// Whether the so-morphism `e : A -> E` is a bicoinserter of its own comma
/// projections: the coinserter `c : A -> B` of `e/e` must be equivalent to
/// `e` over `E`, i.e. the comparison `t : B -> E` with `t ∘ c = e` is
/// monotone, ff, and essentially surjective.
pub fn bicoinserter_check(e: &MonotoneMap) -> Result<bool> {
    if !is_so(e) {
        return Err(Error::Precondition(
            "bicoinserter_check needs an so-morphism".into(),
        ));
    }
    let kernel = comma(e, e)?;
    let c = coinserter(&kernel.p1, &kernel.p2)?;
    let Ok(t) = MonotoneMap::new(c.cod().clone(), e.cod().clone(), e.table().to_vec()) else {
        return Ok(false);
    };
    let ess_surj =
        (0..t.cod().size()).all(|y| (0..t.dom().size()).any(|b| t.cod().equivalent(t.apply(b), y)));
    Ok(is_ff(&t) && ess_surj)
}
