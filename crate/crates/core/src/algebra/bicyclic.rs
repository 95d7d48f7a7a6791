//! The bicyclic monoid `⟨x, y | x + y = 0⟩` in normal form `m·y + n·x`.

use std::ops::Add;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BicyclicElem {
    pub m: u64,
    pub n: u64,
}

impl BicyclicElem {
    pub const ZERO: BicyclicElem = BicyclicElem { m: 0, n: 0 };
    pub const X: BicyclicElem = BicyclicElem { m: 0, n: 1 };
    pub const Y: BicyclicElem = BicyclicElem { m: 1, n: 0 };

    pub const fn new(m: u64, n: u64) -> BicyclicElem {
        BicyclicElem { m, n }
    }

    /// All elements with both coordinates at most `bound`, ordered by `(m, n)`.
    pub fn box_of(bound: u64) -> impl Iterator<Item = BicyclicElem> {
        (0..=bound).flat_map(move |m| (0..=bound).map(move |n| BicyclicElem { m, n }))
    }
}

/// `(m·y + n·x) + (m'·y + n'·x)`: the inner `x`s cancel against the `y`s.
pub fn bicyclic_add(a: BicyclicElem, b: BicyclicElem) -> BicyclicElem {
    if a.n >= b.m {
        BicyclicElem {
            m: a.m,
            n: a.n - b.m + b.n,
        }
    } else {
        BicyclicElem {
            m: a.m + b.m - a.n,
            n: b.n,
        }
    }
}

impl Add for BicyclicElem {
    type Output = BicyclicElem;
    fn add(self, rhs: BicyclicElem) -> BicyclicElem {
        bicyclic_add(self, rhs)
    }
}

/// `u = m·x`, `v = n·y`, so that `u + e + v = 0`.
pub fn gregarious_witness(e: BicyclicElem) -> (BicyclicElem, BicyclicElem) {
    (BicyclicElem::new(0, e.m), BicyclicElem::new(e.n, 0))
}

/// The relation `D`: the diagonal together with `(my+nx, (m+1)y+(n+1)x)`.
pub fn bicyclic_d_member(a: BicyclicElem, b: BicyclicElem) -> bool {
    a == b || (b.m == a.m + 1 && b.n == a.n + 1)
}

/// Searches the box for `a ~ b`, `c ~ b`, `c ~ d` with `a ≁ d`.
pub fn find_difunctionality_witness(
    member: impl Fn(BicyclicElem, BicyclicElem) -> bool,
    bound: u64,
) -> Option<[BicyclicElem; 4]> {
    let els: Vec<BicyclicElem> = BicyclicElem::box_of(bound).collect();
    for &a in &els {
        for &b in els.iter().filter(|&&b| member(a, b)) {
            for &c in els.iter().filter(|&&c| member(c, b)) {
                for &d in els.iter().filter(|&&d| member(c, d)) {
                    if !member(a, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// The three printed pairs `(x, 2x)`, `(2x, 2x)`, `(2x, 3x)` and whether each lies in `D`.
pub fn printed_witness_membership() -> [(BicyclicElem, BicyclicElem, bool); 3] {
    let x = |k| BicyclicElem::new(0, k);
    [(x(1), x(2)), (x(2), x(2)), (x(2), x(3))].map(|(a, b)| (a, b, bicyclic_d_member(a, b)))
}

/// Bounded check that `D` is closed under componentwise addition.
pub fn d_is_submonoid(bound: u64) -> bool {
    let pairs: Vec<(BicyclicElem, BicyclicElem)> = BicyclicElem::box_of(bound)
        .flat_map(|a| [(a, a), (a, BicyclicElem::new(a.m + 1, a.n + 1))])
        .collect();
    bicyclic_d_member(BicyclicElem::ZERO, BicyclicElem::ZERO)
        && pairs
            .iter()
            .all(|&(a, b)| pairs.iter().all(|&(c, d)| bicyclic_d_member(a + c, b + d)))
}

/// Whether some `z` in the box is a two-sided inverse of `e`.
pub fn has_inverse_in_box(e: BicyclicElem, bound: u64) -> bool {
    BicyclicElem::box_of(bound).any(|z| e + z == BicyclicElem::ZERO && z + e == BicyclicElem::ZERO)
}
