//! The additive monoid `ℕ₀`, its algebraic preorder, and the comma
//! non-existence arguments replayed on concrete numbers.

use serde::Serialize;

use super::bicyclic::{bicyclic_add, BicyclicElem};

/// `a ⪯ b` iff `a + z = b` for some `z`.
pub fn nat_leq(a: u64, b: u64) -> bool {
    (0..=b).any(|z| a + z == b)
}

/// The algebraic preorder on `ℕ₀` checked on `7, 5, 8, 6`.
pub fn natleq_replay() -> Vec<(u64, u64, bool)> {
    [(7, 8), (5, 8), (5, 6), (7, 6)]
        .map(|(a, b)| (a, b, nat_leq(a, b)))
        .to_vec()
}

/// A monoid endomorphism of `ℕ₀`, `n ↦ c·n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NatHom(pub u64);

impl NatHom {
    pub fn apply(self, n: u64) -> u64 {
        self.0 * n
    }
}

/// `f ⪯ g` in the hom-preorder: `f(1) ⪯ g(1)`.
pub fn monoid_hom_leq(f: NatHom, g: NatHom) -> bool {
    nat_leq(f.apply(1), g.apply(1))
}

/// Pointwise version, checked for every `x ≤ bound`.
pub fn monoid_hom_leq_pointwise(f: NatHom, g: NatHom, bound: u64) -> bool {
    (0..=bound).all(|x| nat_leq(f.apply(x), g.apply(x)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommaMonLc {
    pub pi1: u64,
    pub pi2: u64,
    pub pi1_leq_pi2: bool,
}

/// The unique `p` with `a + p = b` in `ℕ₀`, found by scan.
fn solve(a: u64, b: u64) -> Option<u64> {
    (0..=b).find(|&p| a + p == b)
}

/// With `f = 1·`, `f' = 3·`, `g = 4·`, `g' = 5·`: the comparison `λ(1) + c = λ'(1)`
/// for the induced maps into a putative comma object `1/1` pins down the
/// projections of `c`, which then violate `π₁ ⪯ π₂`.
pub fn comma_monlc_replay() -> CommaMonLc {
    let (f, fp, g, gp) = (NatHom(1), NatHom(3), NatHom(4), NatHom(5));
    assert!(monoid_hom_leq(f, g) && monoid_hom_leq(fp, gp));
    assert!(monoid_hom_leq(f, fp) && monoid_hom_leq(g, gp));
    let pi1 = solve(f.apply(1), fp.apply(1)).expect("f ⪯ f'");
    let pi2 = solve(g.apply(1), gp.apply(1)).expect("g ⪯ g'");
    CommaMonLc {
        pi1,
        pi2,
        pi1_leq_pi2: nat_leq(pi1, pi2),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommaGmon {
    pub y: u64,
    pub pi1: BicyclicElem,
    pub pi2: BicyclicElem,
    pub inverse_found: bool,
    pub first_coordinate_grows: bool,
}

/// In the bicyclic monoid: the comparison forces `π₂ = 0` at `(y, y)`, then
/// `y + z = 0` would be needed, which has no solution.
pub fn comma_gmon_replay(bound: u64) -> CommaGmon {
    let y = BicyclicElem::Y;
    let pi1 = BicyclicElem::box_of(bound)
        .find(|&c| bicyclic_add(BicyclicElem::ZERO, c) == y)
        .expect("y solves 0 + c = y");
    let pi2 = BicyclicElem::box_of(bound)
        .find(|&c| bicyclic_add(y, c) == y)
        .expect("0 solves y + c = y");
    let inverse_found =
        BicyclicElem::box_of(bound).any(|z| bicyclic_add(y, z) == BicyclicElem::ZERO);
    // Adding on the right never lowers the count of leading `y`s.
    let first_coordinate_grows = BicyclicElem::box_of(bound)
        .all(|a| BicyclicElem::box_of(bound).all(|b| bicyclic_add(a, b).m >= a.m));
    CommaGmon {
        y: 1,
        pi1,
        pi2,
        inverse_found,
        first_coordinate_grows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natleq_examples() {
        assert_eq!(
            natleq_replay(),
            vec![(7, 8, true), (5, 8, true), (5, 6, true), (7, 6, false)]
        );
    }

    #[test]
    fn hom_preorder_matches_pointwise() {
        for a in 0..6 {
            for b in 0..6 {
                let (f, g) = (NatHom(a), NatHom(b));
                assert_eq!(monoid_hom_leq(f, g), monoid_hom_leq_pointwise(f, g, 100));
            }
            assert!(monoid_hom_leq(NatHom(0), NatHom(a)));
        }
        assert!(monoid_hom_leq(NatHom(1), NatHom(3)));
        assert!(!monoid_hom_leq(NatHom(3), NatHom(1)));
    }

    #[test]
    fn comma_monlc() {
        let r = comma_monlc_replay();
        assert_eq!((r.pi1, r.pi2), (2, 1));
        assert!(!r.pi1_leq_pi2);
    }

    #[test]
    fn comma_gmon() {
        let r = comma_gmon_replay(10);
        assert_eq!(r.pi1, BicyclicElem::Y);
        assert_eq!(r.pi2, BicyclicElem::ZERO);
        assert!(!r.inverse_found);
        assert!(r.first_coordinate_grows);
    }
}
