//! Finite preorders and monotone maps: the objects and morphisms of the
//! `Ord` backend, with the hom-preorder and the ff / so tests.

use std::fmt;

use crate::error::{Error, Result};

/// A finite preorder on `0..size`, stored as a dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinPreorder {
    size: usize,
    leq: Vec<bool>,
}

impl fmt::Debug for FinPreorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<(usize, usize)> = self.strict_pairs().collect();
        f.debug_struct("FinPreorder")
            .field("size", &self.size)
            .field("pairs", &pairs)
            .finish()
    }
}

impl FinPreorder {
    /// Validates a full boolean matrix.
    pub fn from_matrix(rows: &[Vec<bool>]) -> Result<Self> {
        let size = rows.len();
        let mut leq = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::BadMatrixShape {
                    rows: size,
                    cols: row.len(),
                    size,
                });
            }
            leq.extend_from_slice(row);
        }
        let p = FinPreorder { size, leq };
        p.validate()?;
        Ok(p)
    }

    /// The smallest preorder on `0..size` containing `pairs`.
    pub fn closure(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![false; size * size];
        for i in 0..size {
            leq[i * size + i] = true;
        }
        for &(a, b) in pairs {
            for index in [a, b] {
                if index >= size {
                    return Err(Error::IndexOutOfRange { index, size });
                }
            }
            leq[a * size + b] = true;
        }
        transitive_close(size, &mut leq);
        Ok(FinPreorder { size, leq })
    }

    /// Caller guarantees reflexivity and transitivity.
    pub(crate) fn from_flat_unchecked(size: usize, leq: Vec<bool>) -> Self {
        debug_assert_eq!(leq.len(), size * size);
        let p = FinPreorder { size, leq };
        debug_assert!(p.validate().is_ok(), "not a preorder: {p:?}");
        p
    }

    pub(crate) fn from_fn(size: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut leq = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                leq.push(f(i, j));
            }
        }
        Self::from_flat_unchecked(size, leq)
    }

    pub fn empty() -> Self {
        Self::discrete(0)
    }

    pub fn singleton() -> Self {
        Self::discrete(1)
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_fn(n, |i, j| i == j)
    }

    /// `0 <= 1 <= ... <= n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_fn(n, |i, j| i <= j)
    }

    pub fn indiscrete(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    fn validate(&self) -> Result<()> {
        let n = self.size;
        for i in 0..n {
            if !self.leq(i, i) {
                return Err(Error::NotReflexive(i));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !self.leq(i, j) {
                    continue;
                }
                for k in 0..n {
                    if self.leq(j, k) && !self.leq(i, k) {
                        return Err(Error::NotTransitive(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.size + j]
    }

    /// `i <= j` and `j <= i`.
    pub fn equivalent(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) && self.leq(j, i)
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        self.leq
            .chunks(self.size.max(1))
            .take(self.size)
            .map(<[bool]>::to_vec)
            .collect()
    }

    /// All pairs `(i, j)` with `i <= j`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size;
        (0..n)
            .flat_map(move |i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.leq(i, j))
    }

    /// Pairs `i <= j` with `i != j`.
    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs().filter(|&(i, j)| i != j)
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.strict_pairs().all(|(i, j)| !self.leq(j, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(i, j)| self.leq(j, i))
    }

    pub fn is_discrete(&self) -> bool {
        self.strict_pairs().next().is_none()
    }

    /// The induced sub-preorder on `elems` (re-indexed in the given order).
    pub fn restrict(&self, elems: &[usize]) -> FinPreorder {
        Self::from_fn(elems.len(), |i, j| self.leq(elems[i], elems[j]))
    }

    /// An order isomorphism `self -> other` as a permutation table, found
    /// by exhaustive search. Only meant for the small carriers used here.
    pub fn isomorphism_to(&self, other: &FinPreorder) -> Option<Vec<usize>> {
        if self.size != other.size {
            return None;
        }
        let n = self.size;
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            a: &FinPreorder,
            b: &FinPreorder,
            k: usize,
            perm: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if k == a.size {
                return true;
            }
            for cand in 0..a.size {
                if used[cand] {
                    continue;
                }
                let ok = (0..k).all(|i| {
                    a.leq(i, k) == b.leq(perm[i], cand) && a.leq(k, i) == b.leq(cand, perm[i])
                });
                if ok {
                    perm[k] = cand;
                    used[cand] = true;
                    if go(a, b, k + 1, perm, used) {
                        return true;
                    }
                    used[cand] = false;
                }
            }
            false
        }
        go(self, other, 0, &mut perm, &mut used).then_some(perm)
    }

    /// Every preorder on `0..n`, labelled (not up to isomorphism).
    pub fn all_of_size(n: usize) -> Vec<FinPreorder> {
        let off: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .collect();
        assert!(
            off.len() < 31,
            "enumeration of preorders only supported for n <= 5"
        );
        let mut out = Vec::new();
        for mask in 0u32..(1u32 << off.len()) {
            let mut leq = vec![false; n * n];
            for i in 0..n {
                leq[i * n + i] = true;
            }
            for (bit, &(i, j)) in off.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    leq[i * n + j] = true;
                }
            }
            let p = FinPreorder { size: n, leq };
            if p.validate().is_ok() {
                out.push(p);
            }
        }
        out
    }
}

/// Warshall's algorithm on a flat matrix.
pub(crate) fn transitive_close(n: usize, m: &mut [bool]) {
    for k in 0..n {
        for i in 0..n {
            if !m[i * n + k] {
                continue;
            }
            for j in 0..n {
                if m[k * n + j] {
                    m[i * n + j] = true;
                }
            }
        }
    }
}

/// A monotone map between finite preorders.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    dom: FinPreorder,
    cod: FinPreorder,
    table: Vec<usize>,
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonotoneMap")
            .field("dom", &self.dom)
            .field("cod", &self.cod)
            .field("table", &self.table)
            .finish()
    }
}

impl MonotoneMap {
    pub fn new(dom: FinPreorder, cod: FinPreorder, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.size() {
            return Err(Error::BadTableLength {
                got: table.len(),
                expected: dom.size(),
            });
        }
        if let Some(&index) = table.iter().find(|&&v| v >= cod.size()) {
            return Err(Error::IndexOutOfRange {
                index,
                size: cod.size(),
            });
        }
        for (a, b) in dom.pairs() {
            if !cod.leq(table[a], table[b]) {
                return Err(Error::NotMonotone(a, b, table[a], table[b]));
            }
        }
        Ok(MonotoneMap { dom, cod, table })
    }

    pub(crate) fn new_unchecked(dom: FinPreorder, cod: FinPreorder, table: Vec<usize>) -> Self {
        debug_assert!(Self::new(dom.clone(), cod.clone(), table.clone()).is_ok());
        MonotoneMap { dom, cod, table }
    }

    pub fn identity(x: &FinPreorder) -> Self {
        Self::new_unchecked(x.clone(), x.clone(), (0..x.size()).collect())
    }

    pub fn constant(dom: &FinPreorder, cod: &FinPreorder, value: usize) -> Result<Self> {
        Self::new(dom.clone(), cod.clone(), vec![value; dom.size()])
    }

    pub fn dom(&self) -> &FinPreorder {
        &self.dom
    }

    pub fn cod(&self) -> &FinPreorder {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &MonotoneMap) -> Result<MonotoneMap> {
        if self.cod != g.dom {
            return Err(Error::Mismatch("composition"));
        }
        let table = self.table.iter().map(|&a| g.table[a]).collect();
        Ok(Self::new_unchecked(self.dom.clone(), g.cod.clone(), table))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.size()];
        self.table
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.size()];
        for &v in &self.table {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Distinct image points in ascending order.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.table.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn parallel(&self, other: &MonotoneMap) -> bool {
        self.dom == other.dom && self.cod == other.cod
    }

    /// Every monotone map `dom -> cod`, in lexicographic table order.
    pub fn all(dom: &FinPreorder, cod: &FinPreorder) -> Vec<MonotoneMap> {
        let mut out = Vec::new();
        let mut table = Vec::with_capacity(dom.size());
        fn go(
            dom: &FinPreorder,
            cod: &FinPreorder,
            table: &mut Vec<usize>,
            out: &mut Vec<MonotoneMap>,
        ) {
            let k = table.len();
            if k == dom.size() {
                out.push(MonotoneMap::new_unchecked(
                    dom.clone(),
                    cod.clone(),
                    table.clone(),
                ));
                return;
            }
            for v in 0..cod.size() {
                let ok = (0..k).all(|i| {
                    (!dom.leq(i, k) || cod.leq(table[i], v))
                        && (!dom.leq(k, i) || cod.leq(v, table[i]))
                });
                if ok {
                    table.push(v);
                    go(dom, cod, table, out);
                    table.pop();
                }
            }
        }
        go(dom, cod, &mut table, &mut out);
        out
    }
}

/// The hom-preorder: `f ⪯ g` iff `f(a) <= g(a)` for every `a`.
pub fn hom_leq(f: &MonotoneMap, g: &MonotoneMap) -> Result<bool> {
    if !f.parallel(g) {
        return Err(Error::Mismatch("hom_leq"));
    }
    Ok((0..f.dom.size()).all(|a| f.cod.leq(f.apply(a), g.apply(a))))
}

/// Fully faithful: `f a <= f a'` implies `a <= a'`.
pub fn is_ff(f: &MonotoneMap) -> bool {
    let n = f.dom.size();
    (0..n).all(|a| (0..n).all(|b| !f.cod.leq(f.apply(a), f.apply(b)) || f.dom.leq(a, b)))
}

/// so-morphisms of `Ord` are the surjective monotone maps.
pub fn is_so(f: &MonotoneMap) -> bool {
    f.is_surjective()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> FinPreorder {
        FinPreorder::chain(2)
    }

    #[test]
    fn closure_examples() {
        assert_eq!(
            FinPreorder::closure(2, &[]).unwrap(),
            FinPreorder::discrete(2)
        );
        assert_eq!(FinPreorder::closure(2, &[(0, 1)]).unwrap(), c2());
        assert_eq!(
            FinPreorder::closure(2, &[(0, 1), (1, 0)]).unwrap(),
            FinPreorder::indiscrete(2)
        );
        assert_eq!(
            FinPreorder::closure(2, &[(0, 2)]),
            Err(Error::IndexOutOfRange { index: 2, size: 2 })
        );
    }

    #[test]
    fn from_matrix_rejects_non_preorders() {
        let r = FinPreorder::from_matrix(&[vec![true, false], vec![false, false]]);
        assert_eq!(r, Err(Error::NotReflexive(1)));
        let r = FinPreorder::from_matrix(&[
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ]);
        assert_eq!(r, Err(Error::NotTransitive(0, 1, 2)));
        let r = FinPreorder::from_matrix(&[vec![true, true]]);
        assert!(matches!(r, Err(Error::BadMatrixShape { .. })));
    }

    #[test]
    fn hom_leq_examples() {
        let id = MonotoneMap::identity(&c2());
        assert!(hom_leq(&id, &id).unwrap());
        let zero = MonotoneMap::constant(&c2(), &c2(), 0).unwrap();
        let one = MonotoneMap::constant(&c2(), &c2(), 1).unwrap();
        assert!(hom_leq(&zero, &one).unwrap());
        assert!(!hom_leq(&one, &zero).unwrap());
        let other = MonotoneMap::constant(&FinPreorder::singleton(), &c2(), 0).unwrap();
        assert_eq!(hom_leq(&zero, &other), Err(Error::Mismatch("hom_leq")));
    }

    #[test]
    fn ff_examples() {
        assert!(is_ff(&MonotoneMap::identity(&c2())));
        let a2_to_c2 = MonotoneMap::new(FinPreorder::discrete(2), c2(), vec![0, 1]).unwrap();
        assert!(!is_ff(&a2_to_c2));
        let bang = MonotoneMap::constant(&c2(), &FinPreorder::singleton(), 0).unwrap();
        assert!(!is_ff(&bang));
    }

    #[test]
    fn so_examples() {
        assert!(is_so(&MonotoneMap::identity(&c2())));
        let bang = MonotoneMap::constant(&c2(), &FinPreorder::singleton(), 0).unwrap();
        assert!(is_so(&bang));
        let incl = MonotoneMap::constant(&FinPreorder::singleton(), &c2(), 0).unwrap();
        assert!(!is_so(&incl));
    }

    #[test]
    fn monotonicity_is_enforced() {
        let r = MonotoneMap::new(c2(), c2(), vec![1, 0]);
        assert_eq!(r, Err(Error::NotMonotone(0, 1, 1, 0)));
    }

    #[test]
    fn enumeration_counts() {
        // labelled preorders on n points: 1, 1, 4, 29, 355
        let counts: Vec<usize> = (0..5).map(|n| FinPreorder::all_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 29, 355]);
        assert_eq!(MonotoneMap::all(&c2(), &c2()).len(), 3);
        assert_eq!(MonotoneMap::all(&FinPreorder::empty(), &c2()).len(), 1);
    }

    #[test]
    fn isomorphism_search() {
        let a = FinPreorder::closure(3, &[(0, 1)]).unwrap();
        let b = FinPreorder::closure(3, &[(2, 0)]).unwrap();
        let perm = a.isomorphism_to(&b).unwrap();
        for (i, j) in a.pairs() {
            assert!(b.leq(perm[i], perm[j]));
        }
        assert!(a.isomorphism_to(&FinPreorder::chain(3)).is_none());
    }
}
