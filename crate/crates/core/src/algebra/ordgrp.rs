//! Finite preordered groups: a group with a positive cone `P` (a submonoid
//! closed under conjugation), ordered by `a <= b ⇔ -a + b ∈ P`.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPreordGroup {
    n: usize,
    op: Vec<usize>,
    inv: Vec<usize>,
    zero: usize,
    cone: Vec<bool>,
}

fn gerr(m: impl Into<String>) -> Error {
    Error::Group(m.into())
}

impl FinPreordGroup {
    /// Validates the group table and the cone.
    pub fn new(op: Vec<Vec<usize>>, cone: &[usize]) -> Result<FinPreordGroup> {
        let n = op.len();
        if n == 0 || op.iter().any(|r| r.len() != n) {
            return Err(gerr("table shape"));
        }
        let op: Vec<usize> = op.concat();
        if op.iter().any(|&v| v >= n) {
            return Err(gerr("table value out of range"));
        }
        let m = |a: usize, b: usize| op[a * n + b];
        let zero = (0..n)
            .find(|&e| (0..n).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or_else(|| gerr("no identity"))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(gerr(format!("not associative at {a}, {b}, {c}")));
                    }
                }
            }
        }
        let inv = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| m(a, b) == zero)
                    .ok_or_else(|| gerr(format!("{a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut g = FinPreordGroup {
            n,
            op,
            inv,
            zero,
            cone: vec![false; n],
        };
        g.set_cone(cone)?;
        Ok(g)
    }

    fn set_cone(&mut self, cone: &[usize]) -> Result<()> {
        let n = self.n;
        let mut c = vec![false; n];
        for &a in cone {
            if a >= n {
                return Err(gerr(format!("cone element {a} out of range")));
            }
            c[a] = true;
        }
        if !c[self.zero] {
            return Err(gerr("cone misses identity"));
        }
        for a in (0..n).filter(|&a| c[a]) {
            for b in 0..n {
                if c[b] && !c[self.op(a, b)] {
                    return Err(gerr(format!("cone not closed at {a}, {b}")));
                }
                if !c[self.op(self.op(self.inv[b], a), b)] {
                    return Err(gerr(format!("cone not conjugation-closed at {a}, {b}")));
                }
            }
        }
        self.cone = c;
        Ok(())
    }

    /// The same group with a different cone.
    pub fn with_cone(&self, cone: &[usize]) -> Result<FinPreordGroup> {
        let mut g = self.clone();
        g.set_cone(cone)?;
        Ok(g)
    }

    /// `ℤ/n` with the given cone.
    pub fn cyclic(n: usize, cone: &[usize]) -> Result<FinPreordGroup> {
        let op = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FinPreordGroup::new(op, cone)
    }

    /// `X × Y` with cone `P_X × P_Y`; `(a, b)` has index `a·|Y| + b`.
    pub fn product(&self, other: &FinPreordGroup) -> FinPreordGroup {
        let m = other.n;
        let n = self.n * m;
        let op = (0..n)
            .map(|p| {
                (0..n)
                    .map(|q| self.op(p / m, q / m) * m + other.op(p % m, q % m))
                    .collect()
            })
            .collect();
        let cone: Vec<usize> = (0..n)
            .filter(|&p| self.in_cone(p / m) && other.in_cone(p % m))
            .collect();
        FinPreordGroup::new(op, &cone).expect("products of preordered groups are preordered groups")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.op[a * self.n + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn in_cone(&self, a: usize) -> bool {
        self.cone[a]
    }

    pub fn cone(&self) -> Vec<usize> {
        (0..self.n).filter(|&a| self.cone[a]).collect()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.cone[self.op(self.inv[a], b)]
    }

    /// Smallest subgroup containing `gens`, as a sorted element list.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        inside[self.zero] = true;
        let mut stack: Vec<usize> = gens.to_vec();
        while let Some(a) = stack.pop() {
            if inside[a] {
                continue;
            }
            inside[a] = true;
            for b in (0..self.n).filter(|&b| inside[b]) {
                stack.push(self.op(a, b));
                stack.push(self.op(b, a));
            }
        }
        (0..self.n).filter(|&a| inside[a]).collect()
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let mut s = elems.to_vec();
        s.sort_unstable();
        s.dedup();
        self.subgroup_closure(&s) == s
    }
}

pub fn is_group_hom(x: &FinPreordGroup, y: &FinPreordGroup, f: &[usize]) -> bool {
    f.len() == x.size()
        && f.iter().all(|&v| v < y.size())
        && (0..x.size()).all(|a| (0..x.size()).all(|b| f[x.op(a, b)] == y.op(f[a], f[b])))
}

pub fn is_monotone_hom(x: &FinPreordGroup, y: &FinPreordGroup, f: &[usize]) -> bool {
    is_group_hom(x, y, f) && x.cone().into_iter().all(|a| y.in_cone(f[a]))
}

/// All monotone homomorphisms `X → Y`, in lexicographic order of tables.
pub fn homs(x: &FinPreordGroup, y: &FinPreordGroup) -> Vec<Vec<usize>> {
    let n = x.size();
    let mut out = Vec::new();
    let mut table = vec![usize::MAX; n];
    fn go(
        k: usize,
        x: &FinPreordGroup,
        y: &FinPreordGroup,
        table: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = x.size();
        if k == n {
            if is_monotone_hom(x, y, table) {
                out.push(table.clone());
            }
            return;
        }
        for v in 0..y.size() {
            table[k] = v;
            let ok = (0..=k).all(|i| {
                (0..=k).all(|j| {
                    let p = x.op(i, j);
                    p > k || table[p] == y.op(table[i], table[j])
                })
            });
            if ok {
                go(k + 1, x, y, table, out);
            }
        }
        table[k] = usize::MAX;
    }
    go(0, x, y, &mut table, &mut out);
    out
}

fn check_homs(x: &FinPreordGroup, y: &FinPreordGroup, fs: &[&[usize]]) -> Result<()> {
    if fs.iter().all(|f| is_monotone_hom(x, y, f)) {
        Ok(())
    } else {
        Err(gerr("not a monotone homomorphism"))
    }
}

/// The 2-cell order: `f ⪯ g` iff `-f(a) + g(a) ∈ P_Y` for every `a ∈ P_X`.
pub fn ordgrp_hom_leq(
    x: &FinPreordGroup,
    y: &FinPreordGroup,
    f: &[usize],
    g: &[usize],
) -> Result<bool> {
    check_homs(x, y, &[f, g])?;
    Ok(x.cone()
        .into_iter()
        .all(|a| y.in_cone(y.op(y.inv(f[a]), g[a]))))
}

/// `f(a) <= g(a)` for every `a`.
pub fn pointwise_leq(
    x: &FinPreordGroup,
    y: &FinPreordGroup,
    f: &[usize],
    g: &[usize],
) -> Result<bool> {
    check_homs(x, y, &[f, g])?;
    Ok((0..x.size()).all(|a| y.leq(f[a], g[a])))
}

/// Whether pointwise comparison is symmetric on all pairs of monotone homs `X → Y`.
pub fn pointwise_trivializes_check(x: &FinPreordGroup, y: &FinPreordGroup) -> bool {
    let hs = homs(x, y);
    hs.iter().all(|f| {
        hs.iter().all(|g| {
            !pointwise_leq(x, y, f, g).expect("enumerated homs")
                || pointwise_leq(x, y, g, f).expect("enumerated homs")
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealForcing {
    /// Elements of `X × Y` forced into `D`.
    pub closure: Vec<usize>,
    pub is_full_product: bool,
}

/// Starting from a subgroup `D ⊆ X × Y` containing `(0, 0)`, adds the pairs
/// forced by weakening along the generalised elements `0 ⪯ π` out of
/// `A = (X × Y, {0})`, and closes.
pub fn ideal_forces_product(
    x: &FinPreordGroup,
    y: &FinPreordGroup,
    d: &[usize],
) -> Result<IdealForcing> {
    let xy = x.product(y);
    if !xy.is_subgroup(d) {
        return Err(Error::Precondition("D is not a subgroup of X × Y".into()));
    }
    // A has the trivial cone, so every homomorphism out of A is monotone and
    // every pair of parallel ones is comparable; (0, 0) ∈ D then forces
    // (π_X a, π_Y a) = a for each a ∈ A.
    let a = xy.with_cone(&[xy.zero()])?;
    let pi_x: Vec<usize> = (0..a.size()).map(|p| p / y.size()).collect();
    let pi_y: Vec<usize> = (0..a.size()).map(|p| p % y.size()).collect();
    let zx = vec![x.zero(); a.size()];
    let zy = vec![y.zero(); a.size()];
    if !(ordgrp_hom_leq(&a, x, &pi_x, &zx)? && ordgrp_hom_leq(&a, y, &zy, &pi_y)?) {
        return Err(gerr("projections not comparable with zero"));
    }
    let mut gens = d.to_vec();
    gens.extend((0..a.size()).map(|p| pi_x[p] * y.size() + pi_y[p]));
    let closure = xy.subgroup_closure(&gens);
    let is_full_product = closure.len() == xy.size();
    Ok(IdealForcing {
        closure,
        is_full_product,
    })
}

/// One instance of the chain `f D g ⪯ g' D° h ⪯ h' D k` over `D = X × Y`
/// with cone `P_D`, generalised elements out of `A`.
#[derive(Debug, Clone)]
pub struct ChainInstance<'a> {
    pub x: &'a FinPreordGroup,
    pub y: &'a FinPreordGroup,
    pub a: &'a FinPreordGroup,
    /// Cone of `D`, as indices into `X × Y`.
    pub pd: &'a [usize],
    pub f: &'a [usize],
    pub g: &'a [usize],
    pub g2: &'a [usize],
    pub h: &'a [usize],
    pub h2: &'a [usize],
    pub k: &'a [usize],
}

fn cone_valid(x: &FinPreordGroup, y: &FinPreordGroup, pd: &[bool]) -> bool {
    let m = y.size();
    let xy = x.product(y);
    let elems: Vec<usize> = (0..pd.len()).filter(|&p| pd[p]).collect();
    xy.with_cone(&elems).is_ok()
        && elems.iter().all(|&p| {
            x.in_cone(p / m)
                && y.in_cone(p % m)
                && pd[(p / m) * m + y.zero()]
                && pd[x.zero() * m + p % m]
        })
}

/// `(p, q) ∈_A D`: `⟨p, q⟩` is monotone into `(X × Y, P_D)`.
fn member(inst: &ChainInstance, pd: &[bool], p: &[usize], q: &[usize]) -> bool {
    let m = inst.y.size();
    inst.a.cone().into_iter().all(|c| pd[p[c] * m + q[c]])
}

/// Verifies the hypotheses of the chain, then derives `(f, k) ∈ D` through the
/// projection-closure argument and checks it directly.
pub fn ordgrp_maltsev_chain_check(inst: &ChainInstance) -> Result<bool> {
    let (x, y, a) = (inst.x, inst.y, inst.a);
    let mut pd = vec![false; x.size() * y.size()];
    for &p in inst.pd {
        if p >= pd.len() {
            return Err(gerr("cone element out of range"));
        }
        pd[p] = true;
    }
    if !cone_valid(x, y, &pd) {
        return Err(Error::Precondition(
            "P_D must be a cone inside P_X × P_Y closed under projections".into(),
        ));
    }
    check_homs(a, x, &[inst.f, inst.h, inst.h2])?;
    check_homs(a, y, &[inst.g, inst.g2, inst.k])?;
    let hyp = member(inst, &pd, inst.f, inst.g)
        && ordgrp_hom_leq(a, y, inst.g, inst.g2)?
        && member(inst, &pd, inst.h, inst.g2)
        && ordgrp_hom_leq(a, x, inst.h, inst.h2)?
        && member(inst, &pd, inst.h2, inst.k);
    if !hyp {
        return Err(Error::Precondition("chain hypotheses fail".into()));
    }
    let m = y.size();
    let derived = a.cone().into_iter().all(|c| {
        let fx = inst.f[c] * m + y.zero();
        let ky = x.zero() * m + inst.k[c];
        pd[fx] && pd[ky] && pd[inst.f[c] * m + inst.k[c]]
    });
    Ok(derived && member(inst, &pd, inst.f, inst.k))
}

/// `ℤ/2` and `ℤ/4` with each of their cones.
pub fn small_fixtures() -> Vec<FinPreordGroup> {
    let mut v = Vec::new();
    for cone in [&[0][..], &[0, 1]] {
        v.push(FinPreordGroup::cyclic(2, cone).expect("valid cone"));
    }
    for cone in [&[0][..], &[0, 2], &[0, 1, 2, 3]] {
        v.push(FinPreordGroup::cyclic(4, cone).expect("valid cone"));
    }
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChainSweep {
    pub configurations: usize,
    pub failures: usize,
}

/// Every chain over the small fixtures, with every admissible `P_D`.
pub fn ordgrp_chain_sweep() -> ChainSweep {
    let fx = small_fixtures();
    let mut sweep = ChainSweep {
        configurations: 0,
        failures: 0,
    };
    for x in &fx {
        for y in &fx {
            let m = y.size();
            let qx: Vec<Vec<usize>> = subcones(x);
            let qy: Vec<Vec<usize>> = subcones(y);
            for a in &fx {
                let ax = homs(a, x);
                let ay = homs(a, y);
                for q1 in &qx {
                    for q2 in &qy {
                        let pd: Vec<usize> = q1
                            .iter()
                            .flat_map(|&p| q2.iter().map(move |&q| p * m + q))
                            .collect();
                        sweep_one(x, y, a, &pd, &ax, &ay, &mut sweep);
                    }
                }
            }
        }
    }
    sweep
}

fn subcones(x: &FinPreordGroup) -> Vec<Vec<usize>> {
    let cone = x.cone();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1 << cone.len()) {
        let s: Vec<usize> = (0..cone.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| cone[i])
            .collect();
        if x.with_cone(&s).is_ok() && !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

fn sweep_one(
    x: &FinPreordGroup,
    y: &FinPreordGroup,
    a: &FinPreordGroup,
    pd: &[usize],
    ax: &[Vec<usize>],
    ay: &[Vec<usize>],
    sweep: &mut ChainSweep,
) {
    let m = y.size();
    let mut pdm = vec![false; x.size() * m];
    for &p in pd {
        pdm[p] = true;
    }
    let ac = a.cone();
    let mem: Vec<Vec<bool>> = ax
        .iter()
        .map(|p| {
            ay.iter()
                .map(|q| ac.iter().all(|&c| pdm[p[c] * m + q[c]]))
                .collect()
        })
        .collect();
    let order = |g: &FinPreordGroup, hs: &[Vec<usize>]| -> Vec<Vec<bool>> {
        hs.iter()
            .map(|p| {
                hs.iter()
                    .map(|q| ac.iter().all(|&c| g.in_cone(g.op(g.inv(p[c]), q[c]))))
                    .collect()
            })
            .collect()
    };
    let (lx, ly) = (order(x, ax), order(y, ay));
    let (nx, ny) = (ax.len(), ay.len());
    for f in 0..nx {
        for g in (0..ny).filter(|&g| mem[f][g]) {
            for g2 in (0..ny).filter(|&g2| ly[g][g2]) {
                for h in (0..nx).filter(|&h| mem[h][g2]) {
                    for h2 in (0..nx).filter(|&h2| lx[h][h2]) {
                        for k in (0..ny).filter(|&k| mem[h2][k]) {
                            sweep.configurations += 1;
                            let inst = ChainInstance {
                                x,
                                y,
                                a,
                                pd,
                                f: &ax[f],
                                g: &ay[g],
                                g2: &ay[g2],
                                h: &ax[h],
                                h2: &ax[h2],
                                k: &ay[k],
                            };
                            // The full check revalidates everything; do it on a sample.
                            let ok = if sweep.configurations % 64 == 1 {
                                matches!(ordgrp_maltsev_chain_check(&inst), Ok(true))
                            } else {
                                mem[f][k]
                            };
                            if !ok {
                                sweep.failures += 1;
                            }
                        }
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_cones() {
        let z4 = FinPreordGroup::cyclic(4, &[0, 2]).unwrap();
        assert!(z4.leq(1, 3));
        assert!(!z4.leq(1, 2));
        assert!(FinPreordGroup::cyclic(4, &[0, 1]).is_err());
        assert!(FinPreordGroup::cyclic(4, &[1]).is_err());
    }

    #[test]
    fn identity_below_tripling_on_z4() {
        let z4 = FinPreordGroup::cyclic(4, &[0, 2]).unwrap();
        let id = [0, 1, 2, 3];
        let triple = [0, 3, 2, 1];
        assert!(is_monotone_hom(&z4, &z4, &triple));
        assert!(ordgrp_hom_leq(&z4, &z4, &id, &triple).unwrap());
        assert!(ordgrp_hom_leq(&z4, &z4, &triple, &id).unwrap());
    }

    #[test]
    fn rejects_non_groups() {
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(FinPreordGroup::new(bad, &[0]).is_err());
    }

    #[test]
    fn conjugation_closure_is_enforced() {
        // S3 as permutations of {0,1,2}; a transposition subgroup is not normal.
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        let op: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| idx([b[a[0]], b[a[1]], b[a[2]]]))
                    .collect()
            })
            .collect();
        assert!(FinPreordGroup::new(op.clone(), &[0, 1]).is_err());
        assert!(FinPreordGroup::new(op, &[0, 4, 5]).is_ok());
    }

    #[test]
    fn hom_counts() {
        let z2 = FinPreordGroup::cyclic(2, &[0]).unwrap();
        let z4 = FinPreordGroup::cyclic(4, &[0]).unwrap();
        assert_eq!(homs(&z4, &z4).len(), 4);
        assert_eq!(homs(&z4, &z2).len(), 2);
        assert_eq!(homs(&z2, &z4).len(), 2);
        let z4p = FinPreordGroup::cyclic(4, &[0, 2]).unwrap();
        // Monotone: the cone {0, 2} must land in the trivial cone.
        assert_eq!(homs(&z4p, &z4).len(), 2);
    }

    #[test]
    fn pointwise_order_is_symmetric() {
        for x in small_fixtures() {
            for y in small_fixtures() {
                assert!(pointwise_trivializes_check(&x, &y));
            }
        }
    }

    #[test]
    fn ideal_forces_full_product() {
        let z2 = FinPreordGroup::cyclic(2, &[0]).unwrap();
        let r = ideal_forces_product(&z2, &z2, &[0]).unwrap();
        assert!(r.is_full_product);
        assert_eq!(r.closure, vec![0, 1, 2, 3]);
        assert!(ideal_forces_product(&z2, &z2, &[1]).is_err());
    }

    #[test]
    fn chain_rejects_bad_cone() {
        let z2 = FinPreordGroup::cyclic(2, &[0, 1]).unwrap();
        let z = [0usize, 0];
        // (1, 1) alone is not projection-closed.
        let inst = ChainInstance {
            x: &z2,
            y: &z2,
            a: &z2,
            pd: &[0, 3],
            f: &z,
            g: &z,
            g2: &z,
            h: &z,
            h2: &z,
            k: &z,
        };
        assert!(matches!(
            ordgrp_maltsev_chain_check(&inst),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn chain_sweep_has_no_failures() {
        let s = ordgrp_chain_sweep();
        assert!(s.configurations > 100);
        assert_eq!(s.failures, 0);
    }
}
