//! Relations between finite preorders, stored tabulated as boolean
//! matrices, and the ideals (weakening-closed relations) among them.
//!
//! Composition is written diagrammatically: `r.compose(&s)` is "first `r`,
//! then `s`", i.e. the composite usually written `SR`.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::limits::PairSpan;
use crate::preorder::{FinPreorder, MonotoneMap};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rel {
    dom: FinPreorder,
    cod: FinPreorder,
    mat: Vec<bool>,
}

impl fmt::Debug for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Rel")
            .field("dom", &self.dom)
            .field("cod", &self.cod)
            .field("pairs", &self.pairs().collect::<Vec<_>>())
            .finish()
    }
}

impl Rel {
    pub fn from_fn(dom: &FinPreorder, cod: &FinPreorder, f: impl Fn(usize, usize) -> bool) -> Rel {
        let (n, m) = (dom.size(), cod.size());
        let mut mat = Vec::with_capacity(n * m);
        for x in 0..n {
            for y in 0..m {
                mat.push(f(x, y));
            }
        }
        Rel {
            dom: dom.clone(),
            cod: cod.clone(),
            mat,
        }
    }

    pub fn from_pairs(
        dom: &FinPreorder,
        cod: &FinPreorder,
        pairs: &[(usize, usize)],
    ) -> Result<Rel> {
        let mut r = Rel::empty(dom, cod);
        for &(x, y) in pairs {
            if x >= dom.size() {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    size: dom.size(),
                });
            }
            if y >= cod.size() {
                return Err(Error::IndexOutOfRange {
                    index: y,
                    size: cod.size(),
                });
            }
            r.set(x, y, true);
        }
        Ok(r)
    }

    pub fn empty(dom: &FinPreorder, cod: &FinPreorder) -> Rel {
        Rel::from_fn(dom, cod, |_, _| false)
    }

    pub fn total(dom: &FinPreorder, cod: &FinPreorder) -> Rel {
        Rel::from_fn(dom, cod, |_, _| true)
    }

    /// The identity relation `Δ_X`.
    pub fn diagonal(x: &FinPreorder) -> Rel {
        Rel::from_fn(x, x, |a, b| a == b)
    }

    /// The graph of a map, `{(x, f x)}`.
    pub fn graph(f: &MonotoneMap) -> Rel {
        Rel::from_fn(f.dom(), f.cod(), |x, y| f.apply(x) == y)
    }

    /// The relation tabulated by a span `X <- R -> Y`: the image of `⟨r1, r2⟩`.
    pub fn from_span(r1: &MonotoneMap, r2: &MonotoneMap) -> Result<Rel> {
        if r1.dom() != r2.dom() {
            return Err(Error::Mismatch("span"));
        }
        let mut r = Rel::empty(r1.cod(), r2.cod());
        for t in 0..r1.dom().size() {
            r.set(r1.apply(t), r2.apply(t), true);
        }
        Ok(r)
    }

    pub fn dom(&self) -> &FinPreorder {
        &self.dom
    }

    pub fn cod(&self) -> &FinPreorder {
        &self.cod
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.mat[x * self.cod.size() + y]
    }

    fn set(&mut self, x: usize, y: usize, v: bool) {
        let m = self.cod.size();
        self.mat[x * m + y] = v;
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.cod.size();
        (0..self.dom.size())
            .flat_map(move |x| (0..m).map(move |y| (x, y)))
            .filter(|&(x, y)| self.get(x, y))
    }

    pub fn count(&self) -> usize {
        self.mat.iter().filter(|&&b| b).count()
    }

    pub fn same_boundary(&self, other: &Rel) -> bool {
        self.dom == other.dom && self.cod == other.cod
    }

    pub fn is_endo(&self) -> bool {
        self.dom == self.cod
    }

    /// `self ⊆ other`; relations with different boundaries are incomparable.
    pub fn is_subset(&self, other: &Rel) -> bool {
        self.same_boundary(other) && self.mat.iter().zip(&other.mat).all(|(&a, &b)| !a || b)
    }

    /// `self` followed by `s`: `x (s∘r) z ⇔ ∃y. x r y ∧ y s z`.
    pub fn compose(&self, s: &Rel) -> Result<Rel> {
        if self.cod != s.dom {
            return Err(Error::Mismatch("compose"));
        }
        let (n, m, k) = (self.dom.size(), self.cod.size(), s.cod.size());
        let mut mat = vec![false; n * k];
        for x in 0..n {
            for y in 0..m {
                if !self.get(x, y) {
                    continue;
                }
                for z in 0..k {
                    if s.get(y, z) {
                        mat[x * k + z] = true;
                    }
                }
            }
        }
        Ok(Rel {
            dom: self.dom.clone(),
            cod: s.cod.clone(),
            mat,
        })
    }

    pub fn meet(&self, other: &Rel) -> Result<Rel> {
        if !self.same_boundary(other) {
            return Err(Error::Mismatch("meet"));
        }
        let mat = self
            .mat
            .iter()
            .zip(&other.mat)
            .map(|(&a, &b)| a && b)
            .collect();
        Ok(Rel {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            mat,
        })
    }

    pub fn join(&self, other: &Rel) -> Result<Rel> {
        if !self.same_boundary(other) {
            return Err(Error::Mismatch("join"));
        }
        let mat = self
            .mat
            .iter()
            .zip(&other.mat)
            .map(|(&a, &b)| a || b)
            .collect();
        Ok(Rel {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            mat,
        })
    }

    /// The opposite relation `R°`.
    pub fn opp(&self) -> Rel {
        Rel::from_fn(&self.cod, &self.dom, |y, x| self.get(x, y))
    }

    /// A single weakening step that leaves the relation, if any.
    pub fn weakening_violation(&self) -> Option<Error> {
        for (x, y) in self.pairs() {
            for x2 in (0..self.dom.size()).filter(|&x2| self.dom.leq(x2, x)) {
                if !self.get(x2, y) {
                    return Some(Error::NotIdeal { x, y, x2, y2: y });
                }
            }
            for y2 in (0..self.cod.size()).filter(|&y2| self.cod.leq(y, y2)) {
                if !self.get(x, y2) {
                    return Some(Error::NotIdeal { x, y, x2: x, y2 });
                }
            }
        }
        None
    }

    pub fn is_weakening_closed(&self) -> bool {
        self.weakening_violation().is_none()
    }

    /// The ideal generated by `self`: `x' R_* y'` iff some `x' <= x`, `x R y`,
    /// `y <= y'`.
    pub fn ideal_close(&self) -> IdealRel {
        let r = Rel::from_fn(&self.dom, &self.cod, |x2, y2| {
            self.pairs()
                .any(|(x, y)| self.dom.leq(x2, x) && self.cod.leq(y, y2))
        });
        IdealRel(r)
    }

    /// The tabulation `X <- R -> Y` of this relation, with `R` ordered
    /// componentwise.
    pub fn tabulate(&self) -> PairSpan {
        PairSpan::build(&self.dom, &self.cod, self.pairs().collect())
    }
}

/// A weakening-closed relation: `x' <= x`, `x R y`, `y <= y'` imply `x' R y'`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IdealRel(Rel);

impl fmt::Debug for IdealRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal")?;
        self.0.fmt(f)
    }
}

impl Deref for IdealRel {
    type Target = Rel;
    fn deref(&self) -> &Rel {
        &self.0
    }
}

impl From<IdealRel> for Rel {
    fn from(r: IdealRel) -> Rel {
        r.0
    }
}

impl TryFrom<Rel> for IdealRel {
    type Error = Error;
    fn try_from(r: Rel) -> Result<IdealRel> {
        IdealRel::new(r)
    }
}

impl IdealRel {
    pub fn new(r: Rel) -> Result<IdealRel> {
        match r.weakening_violation() {
            Some(e) => Err(e),
            None => Ok(IdealRel(r)),
        }
    }

    pub(crate) fn new_unchecked(r: Rel) -> IdealRel {
        debug_assert!(r.is_weakening_closed(), "not an ideal: {r:?}");
        IdealRel(r)
    }

    /// `I_X`: the order of `X` itself.
    pub fn identity(x: &FinPreorder) -> IdealRel {
        IdealRel(Rel::from_fn(x, x, |a, b| x.leq(a, b)))
    }

    pub fn total(dom: &FinPreorder, cod: &FinPreorder) -> IdealRel {
        IdealRel(Rel::total(dom, cod))
    }

    pub fn empty(dom: &FinPreorder, cod: &FinPreorder) -> IdealRel {
        IdealRel(Rel::empty(dom, cod))
    }

    pub fn as_rel(&self) -> &Rel {
        &self.0
    }

    pub fn compose(&self, s: &IdealRel) -> Result<IdealRel> {
        self.0.compose(&s.0).map(IdealRel::new_unchecked)
    }

    pub fn meet(&self, other: &IdealRel) -> Result<IdealRel> {
        self.0.meet(&other.0).map(IdealRel::new_unchecked)
    }

    /// Every ideal `dom ↬ cod`, by brute force over all subsets. Only for
    /// tiny boundaries (at most 16 cells).
    pub fn enumerate(dom: &FinPreorder, cod: &FinPreorder) -> Vec<IdealRel> {
        let cells = dom.size() * cod.size();
        assert!(cells <= 16, "ideal enumeration limited to 16 cells");
        let m = cod.size().max(1);
        (0u32..(1u32 << cells))
            .map(|mask| Rel::from_fn(dom, cod, |x, y| mask & (1 << (x * m + y)) != 0))
            .filter(Rel::is_weakening_closed)
            .map(IdealRel)
            .collect()
    }
}

pub fn id_ideal(x: &FinPreorder) -> IdealRel {
    IdealRel::identity(x)
}

pub fn ideal_close(r: &Rel) -> IdealRel {
    r.ideal_close()
}

pub fn compose(r: &Rel, s: &Rel) -> Result<Rel> {
    r.compose(s)
}

pub fn meet(r: &Rel, s: &Rel) -> Result<Rel> {
    r.meet(s)
}

pub fn opp(r: &Rel) -> Rel {
    r.opp()
}

/// `(x, y) ∈_A R`: the pairing of two generalized elements factors through
/// the tabulation of `R`.
pub fn membership(r: &Rel, x: &MonotoneMap, y: &MonotoneMap) -> Result<bool> {
    if x.dom() != y.dom() || x.cod() != r.dom() || y.cod() != r.cod() {
        return Err(Error::Mismatch("membership"));
    }
    Ok((0..x.dom().size()).all(|a| r.get(x.apply(a), y.apply(a))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::comma;

    fn c2() -> FinPreorder {
        FinPreorder::chain(2)
    }

    #[test]
    fn id_ideal_examples() {
        let a2 = FinPreorder::discrete(2);
        assert_eq!(id_ideal(&a2).as_rel(), &Rel::diagonal(&a2));
        assert_eq!(
            id_ideal(&c2()).pairs().collect::<Vec<_>>(),
            vec![(0, 0), (0, 1), (1, 1)]
        );
        assert_eq!(id_ideal(&FinPreorder::indiscrete(2)).count(), 4);
    }

    #[test]
    fn ideal_close_examples() {
        let a2 = FinPreorder::discrete(2);
        assert_eq!(
            Rel::diagonal(&a2).ideal_close().as_rel(),
            &Rel::diagonal(&a2)
        );
        let r = Rel::from_pairs(&c2(), &c2(), &[(1, 0)]).unwrap();
        assert_eq!(r.ideal_close().count(), 4);
        assert_eq!(Rel::diagonal(&c2()).ideal_close(), id_ideal(&c2()));
    }

    #[test]
    fn ideal_close_matches_identity_sandwich() {
        let x = FinPreorder::closure(3, &[(0, 1)]).unwrap();
        let y = FinPreorder::closure(2, &[(1, 0)]).unwrap();
        let r = Rel::from_pairs(&x, &y, &[(1, 1), (2, 0)]).unwrap();
        let sandwich = id_ideal(&x)
            .as_rel()
            .compose(&r)
            .unwrap()
            .compose(&id_ideal(&y))
            .unwrap();
        assert_eq!(r.ideal_close().as_rel(), &sandwich);
    }

    #[test]
    fn compose_examples() {
        let r = Rel::from_pairs(&c2(), &c2(), &[(0, 1)]).unwrap();
        let s = id_ideal(&c2());
        assert_eq!(r.compose(&s).unwrap(), r);
        let ideal = r.ideal_close();
        assert_eq!(id_ideal(&c2()).compose(&ideal).unwrap(), ideal);
        let t = Rel::total(&c2(), &c2());
        assert_eq!(t.compose(&t).unwrap(), t);
        let bad = Rel::total(&FinPreorder::singleton(), &c2());
        assert_eq!(bad.compose(&bad), Err(Error::Mismatch("compose")));
    }

    #[test]
    fn meet_opp_examples() {
        let i = id_ideal(&c2());
        assert_eq!(i.meet(&i).unwrap(), i);
        assert_eq!(
            i.opp().pairs().collect::<Vec<_>>(),
            vec![(0, 0), (1, 0), (1, 1)]
        );
        assert_eq!(i.as_rel().meet(&i.opp()).unwrap(), Rel::diagonal(&c2()));
        assert!(!i.opp().is_weakening_closed());
    }

    #[test]
    fn ideal_validation_reports_witness() {
        let r = Rel::from_pairs(&c2(), &c2(), &[(1, 0)]).unwrap();
        assert_eq!(
            IdealRel::new(r),
            Err(Error::NotIdeal {
                x: 1,
                y: 0,
                x2: 0,
                y2: 0
            })
        );
    }

    #[test]
    fn membership_examples() {
        let x = FinPreorder::closure(3, &[(0, 2)]).unwrap();
        let id = MonotoneMap::identity(&x);
        assert!(membership(&id_ideal(&x), &id, &id).unwrap());

        // comma membership is pointwise f x <= g z
        let f = MonotoneMap::new(c2(), x.clone(), vec![0, 2]).unwrap();
        let g = MonotoneMap::new(FinPreorder::discrete(2), x.clone(), vec![2, 1]).unwrap();
        let k = comma(&f, &g).unwrap();
        let rel = Rel::from_span(&k.p1, &k.p2).unwrap();
        for a in FinPreorder::all_of_size(2) {
            for gx in MonotoneMap::all(&a, f.dom()) {
                for gz in MonotoneMap::all(&a, g.dom()) {
                    let expected =
                        (0..a.size()).all(|t| x.leq(f.apply(gx.apply(t)), g.apply(gz.apply(t))));
                    assert_eq!(membership(&rel, &gx, &gz).unwrap(), expected);
                }
            }
        }

        let pt = FinPreorder::singleton();
        let one = MonotoneMap::constant(&pt, &c2(), 1).unwrap();
        let zero = MonotoneMap::constant(&pt, &c2(), 0).unwrap();
        assert!(!membership(&id_ideal(&c2()), &one, &zero).unwrap());
    }

    #[test]
    fn enumerate_counts_ideals() {
        // ideals C2 ↬ C2 are the down-up closed subsets of a 2x2 grid: 6
        assert_eq!(IdealRel::enumerate(&c2(), &c2()).len(), 6);
        let a2 = FinPreorder::discrete(2);
        assert_eq!(IdealRel::enumerate(&a2, &a2).len(), 16);
    }
}
