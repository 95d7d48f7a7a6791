//! Categories enriched in a finite quantale, V-functors between them, and
//! the cocomma, `R_*` and `D_*` constructions of the dual category.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::preorder::FinPreorder;
use crate::quantale::FinQuantale;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinVCat {
    v: Arc<FinQuantale>,
    size: usize,
    hom: Vec<usize>,
}

/// Checks `hom[x][x] = k` and `hom[y][z] ⊗ hom[x][y] <= hom[x][z]`.
pub fn vcat_check(v: &FinQuantale, hom: &[Vec<usize>]) -> Result<()> {
    let n = hom.len();
    let e = |m: String| Err(Error::VCat(m));
    if hom.iter().any(|r| r.len() != n) {
        return e("hom table is not square".into());
    }
    if let Some(&h) = hom.iter().flatten().find(|&&h| h >= v.size()) {
        return e(format!("hom value {h} outside the quantale"));
    }
    for x in 0..n {
        if !v.leq(v.unit(), hom[x][x]) {
            return e(format!("unit law fails at {x}"));
        }
        for y in 0..n {
            for z in 0..n {
                if !v.leq(v.tensor(hom[y][z], hom[x][y]), hom[x][z]) {
                    return e(format!("composition law fails at {x}, {y}, {z}"));
                }
            }
        }
    }
    Ok(())
}

impl FinVCat {
    pub fn new(v: Arc<FinQuantale>, hom: Vec<Vec<usize>>) -> Result<FinVCat> {
        vcat_check(&v, &hom)?;
        Ok(FinVCat {
            size: hom.len(),
            hom: hom.concat(),
            v,
        })
    }

    pub(crate) fn from_fn(
        v: &Arc<FinQuantale>,
        n: usize,
        f: impl Fn(usize, usize) -> usize,
    ) -> FinVCat {
        let hom = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| f(a, b))
            .collect();
        let c = FinVCat {
            v: v.clone(),
            size: n,
            hom,
        };
        debug_assert!(vcat_check(&c.v, &c.hom_rows()).is_ok(), "not a V-category");
        c
    }

    pub fn quantale(&self) -> &Arc<FinQuantale> {
        &self.v
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn hom(&self, a: usize, b: usize) -> usize {
        self.hom[a * self.size + b]
    }

    pub fn hom_rows(&self) -> Vec<Vec<usize>> {
        if self.size == 0 {
            return Vec::new();
        }
        self.hom.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    /// Off-diagonal homs `⊥`.
    pub fn discrete(v: &Arc<FinQuantale>, n: usize) -> FinVCat {
        Self::from_fn(v, n, |a, b| if a == b { v.top() } else { v.bottom() })
    }

    /// Every hom `k`.
    pub fn indiscrete(v: &Arc<FinQuantale>, n: usize) -> FinVCat {
        Self::from_fn(v, n, |_, _| v.top())
    }

    /// A preorder read as a two-valued V-category: `k` where `a <= b`, else `⊥`.
    pub fn from_preorder(v: &Arc<FinQuantale>, p: &FinPreorder) -> FinVCat {
        Self::from_fn(
            v,
            p.size(),
            |a, b| if p.leq(a, b) { v.top() } else { v.bottom() },
        )
    }

    /// Over the Boolean quantale, the underlying preorder `hom[a][b] = ⊤`.
    pub fn to_preorder(&self) -> Option<FinPreorder> {
        let v = &self.v;
        if v.size() != 2 {
            return None;
        }
        FinPreorder::from_matrix(
            &(0..self.size)
                .map(|a| (0..self.size).map(|b| self.hom(a, b) == v.top()).collect())
                .collect::<Vec<_>>(),
        )
        .ok()
    }

    /// Product with meets of homs; the pair `(a, b)` has index `a * other.size + b`.
    pub fn product(&self, other: &FinVCat) -> FinVCat {
        let m = other.size;
        Self::from_fn(&self.v, self.size * m, |p, q| {
            self.v.meet(self.hom(p / m, q / m), other.hom(p % m, q % m))
        })
    }

    /// Disjoint union with `⊥` across summands.
    pub fn coproduct(parts: &[&FinVCat]) -> FinVCat {
        let v = parts[0].v.clone();
        let offsets: Vec<usize> = parts
            .iter()
            .scan(0, |acc, p| {
                let o = *acc;
                *acc += p.size;
                Some(o)
            })
            .collect();
        let total: usize = parts.iter().map(|p| p.size).sum();
        let locate = |i: usize| {
            let s = (0..parts.len())
                .find(|&s| i >= offsets[s] && i < offsets[s] + parts[s].size)
                .expect("index in range");
            (s, i - offsets[s])
        };
        Self::from_fn(&v, total, |a, b| {
            let ((sa, la), (sb, lb)) = (locate(a), locate(b));
            if sa == sb {
                parts[sa].hom(la, lb)
            } else {
                v.bottom()
            }
        })
    }

    /// The full sub-V-category on `elems`, in the given order.
    pub fn restrict(&self, elems: &[usize]) -> FinVCat {
        Self::from_fn(&self.v, elems.len(), |a, b| self.hom(elems[a], elems[b]))
    }

    /// Every V-category on `0..n`, in lexicographic order of hom tables.
    pub fn all_of_size(v: &Arc<FinQuantale>, n: usize) -> Vec<FinVCat> {
        let off: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|(a, b)| a != b)
            .collect();
        let s = v.size();
        let count = s
            .checked_pow(off.len() as u32)
            .expect("enumeration too large");
        let mut out = Vec::new();
        for mut code in 0..count {
            let mut hom = vec![v.top(); n * n];
            for &(a, b) in off.iter().rev() {
                hom[a * n + b] = code % s;
                code /= s;
            }
            let rows: Vec<Vec<usize>> = (0..n).map(|a| hom[a * n..(a + 1) * n].to_vec()).collect();
            if vcat_check(v, &rows).is_ok() {
                out.push(FinVCat {
                    v: v.clone(),
                    size: n,
                    hom,
                });
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VFunctor {
    dom: FinVCat,
    cod: FinVCat,
    table: Vec<usize>,
}

/// Checks `dom.hom[x][x'] <= cod.hom[f x][f x']`.
pub fn vfunctor_check(dom: &FinVCat, cod: &FinVCat, table: &[usize]) -> Result<()> {
    let e = |m: String| Err(Error::VFunctor(m));
    if dom.v != cod.v {
        return e("domain and codomain over different quantales".into());
    }
    if table.len() != dom.size {
        return e(format!(
            "table has length {}, domain has size {}",
            table.len(),
            dom.size
        ));
    }
    if let Some(&t) = table.iter().find(|&&t| t >= cod.size) {
        return e(format!("image {t} outside codomain"));
    }
    for a in 0..dom.size {
        for b in 0..dom.size {
            if !dom.v.leq(dom.hom(a, b), cod.hom(table[a], table[b])) {
                return e(format!("hom not preserved at {a}, {b}"));
            }
        }
    }
    Ok(())
}

impl VFunctor {
    pub fn new(dom: FinVCat, cod: FinVCat, table: Vec<usize>) -> Result<VFunctor> {
        vfunctor_check(&dom, &cod, &table)?;
        Ok(VFunctor { dom, cod, table })
    }

    pub fn identity(x: &FinVCat) -> VFunctor {
        VFunctor {
            dom: x.clone(),
            cod: x.clone(),
            table: (0..x.size).collect(),
        }
    }

    pub fn constant(dom: &FinVCat, cod: &FinVCat, value: usize) -> Result<VFunctor> {
        Self::new(dom.clone(), cod.clone(), vec![value; dom.size])
    }

    pub fn dom(&self) -> &FinVCat {
        &self.dom
    }

    pub fn cod(&self) -> &FinVCat {
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
    pub fn then(&self, g: &VFunctor) -> Result<VFunctor> {
        if self.cod != g.dom {
            return Err(Error::Mismatch("VFunctor::then"));
        }
        let table = self.table.iter().map(|&a| g.apply(a)).collect();
        Ok(VFunctor {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            table,
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.size];
        self.table.iter().for_each(|&b| hit[b] = true);
        hit.into_iter().all(|h| h)
    }
}

/// `f ⪯ g` iff `cod.hom[f x][g x] = k` for every `x`.
pub fn vhom_leq(f: &VFunctor, g: &VFunctor) -> Result<bool> {
    if f.dom != g.dom || f.cod != g.cod {
        return Err(Error::Mismatch("vhom_leq"));
    }
    let k = f.cod.v.unit();
    Ok((0..f.dom.size).all(|x| f.cod.hom(f.apply(x), g.apply(x)) == k))
}

/// The cocomma of `1_X` with itself: two copies of `X`, homs from the first
/// copy to the second as in `X`, and `⊥` back.
pub fn cocomma_self(x: &FinVCat) -> FinVCat {
    let n = x.size;
    FinVCat::from_fn(&x.v, 2 * n, |a, b| {
        let (i, j) = (a / n.max(1), b / n.max(1));
        if i <= j {
            x.hom(a % n, b % n)
        } else {
            x.v.bottom()
        }
    })
}

/// `R_*` for a relation `X --r1--> R <--r2-- Z` of the dual category, on the
/// carrier `X + Z`.
pub fn r_star_vcat(r1: &VFunctor, r2: &VFunctor) -> Result<FinVCat> {
    if r1.cod != r2.cod {
        return Err(Error::Mismatch("r_star_vcat"));
    }
    let r = &r1.cod;
    let mut hit = vec![false; r.size];
    r1.table
        .iter()
        .chain(&r2.table)
        .for_each(|&t| hit[t] = true);
    if let Some(miss) = hit.iter().position(|h| !h) {
        return Err(Error::Precondition(format!(
            "object {miss} of R is not hit by r1 or r2"
        )));
    }
    let (x, z) = (&r1.dom, &r2.dom);
    let n = x.size;
    Ok(FinVCat::from_fn(&r.v, n + z.size, |a, b| {
        match (a < n, b < n) {
            (true, true) => x.hom(a, b),
            (false, false) => z.hom(a - n, b - n),
            (true, false) => r.hom(r1.apply(a), r2.apply(b - n)),
            (false, true) => r.v.bottom(),
        }
    }))
}

/// `D_*` of the coproduct test in the dual category, on `(Y×Y) + (Y×Y)`.
///
/// `D` is the full sub-V-category of `Y³` on `{(y1,y2,y2)} ∪ {(y2,y2,y1)}`,
/// with legs `(y1,y2) ↦ (y1,y2,y2)` and `(y1',y2') ↦ (y2',y2',y1')`.
pub fn d_star_table(y: &FinVCat) -> FinVCat {
    let n = y.size;
    let yy = y.product(y);
    let yyy = yy.product(y);
    let triple = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    let mut objs: Vec<usize> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            objs.push(triple(a, b, b));
            objs.push(triple(b, b, a));
        }
    }
    objs.sort_unstable();
    objs.dedup();
    let d = yyy.restrict(&objs);
    let at = |t: usize| objs.binary_search(&t).expect("object of D");
    let t1 = (0..n * n)
        .map(|p| at(triple(p / n, p % n, p % n)))
        .collect();
    let t2 = (0..n * n)
        .map(|p| at(triple(p % n, p % n, p / n)))
        .collect();
    let r1 = VFunctor::new(yy.clone(), d.clone(), t1).expect("first leg is a V-functor");
    let r2 = VFunctor::new(yy, d, t2).expect("second leg is a V-functor");
    r_star_vcat(&r1, &r2).expect("legs are jointly surjective")
}

/// Whether `h = (π1 π1): D_* -> Y` is a V-functor, checked on every pair.
pub fn h_is_vfunctor(y: &FinVCat) -> bool {
    let n = y.size;
    let d = d_star_table(y);
    let h = |w: usize| (w % (n * n)) / n;
    (0..d.size).all(|a| (0..d.size).all(|b| y.v.leq(d.hom(a, b), y.hom(h(a), h(b)))))
}

/// Symmetric homs and `hom[a][b] ∧ hom[b][c] <= hom[a][c]`.
pub fn is_symmetric_vwedge(y: &FinVCat) -> bool {
    let n = y.size;
    let v = &y.v;
    (0..n).all(|a| {
        (0..n).all(|b| {
            y.hom(a, b) == y.hom(b, a)
                && (0..n).all(|c| v.leq(v.meet(y.hom(a, b), y.hom(b, c)), y.hom(a, c)))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v2() -> Arc<FinQuantale> {
        Arc::new(FinQuantale::boolean())
    }

    fn chain_cat() -> FinVCat {
        FinVCat::from_preorder(&v2(), &FinPreorder::chain(2))
    }

    #[test]
    fn vcat_check_reports_axioms() {
        let v = v2();
        assert!(FinVCat::new(v.clone(), vec![vec![1, 1], vec![0, 1]]).is_ok());
        assert!(matches!(
            FinVCat::new(v.clone(), vec![vec![0]]),
            Err(Error::VCat(_))
        ));
        let bad = vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]];
        assert!(matches!(FinVCat::new(v, bad), Err(Error::VCat(_))));
    }

    #[test]
    fn vhom_leq_examples() {
        let y = chain_cat();
        let one = FinVCat::indiscrete(&v2(), 1);
        let c0 = VFunctor::constant(&one, &y, 0).unwrap();
        let c1 = VFunctor::constant(&one, &y, 1).unwrap();
        assert!(vhom_leq(&c0, &c0).unwrap());
        assert!(vhom_leq(&c0, &c1).unwrap());
        assert!(!vhom_leq(&c1, &c0).unwrap());
    }

    #[test]
    fn cocomma_examples() {
        let v = Arc::new(FinQuantale::lukasiewicz3());
        let x = FinVCat::new(v.clone(), vec![vec![2, 1], vec![0, 2]]).unwrap();
        let c = cocomma_self(&x);
        assert!(vcat_check(&v, &c.hom_rows()).is_ok());
        assert_eq!(c.hom(2, 1), v.bottom());
        assert_eq!(c.hom(0, 1), x.hom(0, 1));
        assert_eq!(c.hom(2, 3), x.hom(0, 1));
        assert_eq!(c.hom(0, 3), x.hom(0, 1));
        let s = cocomma_self(&FinVCat::indiscrete(&v, 1));
        assert_eq!(s.hom_rows(), vec![vec![2, 2], vec![0, 2]]);
    }

    #[test]
    fn r_star_branches() {
        let v = v2();
        let x = chain_cat();
        let id = VFunctor::identity(&x);
        let r = r_star_vcat(&id, &id).unwrap();
        assert_eq!(
            r.hom_rows(),
            vec![
                vec![1, 1, 1, 1],
                vec![0, 1, 0, 1],
                vec![0, 0, 1, 1],
                vec![0, 0, 0, 1]
            ]
        );
        let one = FinVCat::indiscrete(&v, 1);
        let c0 = VFunctor::constant(&one, &x, 0).unwrap();
        assert!(matches!(r_star_vcat(&c0, &c0), Err(Error::Precondition(_))));
    }

    #[test]
    fn d_star_matches_displayed_meet() {
        for name in FinQuantale::FIXTURES {
            let v = Arc::new(FinQuantale::fixture(name).unwrap());
            for y in FinVCat::all_of_size(&v, 2) {
                let n = y.size();
                let d = d_star_table(&y);
                assert_eq!(d.size(), 2 * n * n);
                for p in 0..n * n {
                    for q in 0..n * n {
                        let (y1, y2, z1, z2) = (p / n, p % n, q / n, q % n);
                        let cross = v.meet(v.meet(y.hom(y1, z2), y.hom(y2, z2)), y.hom(y2, z1));
                        assert_eq!(d.hom(p, n * n + q), cross);
                        assert_eq!(d.hom(n * n + q, p), v.bottom());
                        assert_eq!(d.hom(p, q), v.meet(y.hom(y1, z1), y.hom(y2, z2)));
                    }
                    assert_eq!(d.hom(p, p), v.unit());
                }
            }
        }
    }

    #[test]
    fn d_star_of_singleton() {
        let v = v2();
        let d = d_star_table(&FinVCat::indiscrete(&v, 1));
        assert_eq!(d.hom_rows(), vec![vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn classifier_examples() {
        let v = v2();
        for n in 0..=3 {
            assert!(h_is_vfunctor(&FinVCat::indiscrete(&v, n)));
            assert!(is_symmetric_vwedge(&FinVCat::indiscrete(&v, n)));
            assert!(h_is_vfunctor(&FinVCat::discrete(&v, n)));
            assert!(is_symmetric_vwedge(&FinVCat::discrete(&v, n)));
        }
        assert!(!h_is_vfunctor(&chain_cat()));
        assert!(!is_symmetric_vwedge(&chain_cat()));
    }

    #[test]
    fn enumeration_over_booleans_counts_preorders() {
        let v = v2();
        for (n, count) in [(0, 1), (1, 1), (2, 4), (3, 29)] {
            assert_eq!(FinVCat::all_of_size(&v, n).len(), count);
        }
    }

    #[test]
    fn functor_composition() {
        let x = chain_cat();
        let id = VFunctor::identity(&x);
        assert_eq!(id.then(&id).unwrap(), id);
        assert!(VFunctor::new(x.clone(), x, vec![1, 0]).is_err());
    }
}
