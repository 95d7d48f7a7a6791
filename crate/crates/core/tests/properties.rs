use ordcat::algebra::bicyclic::{bicyclic_add, BicyclicElem};
use ordcat::algebra::ordgrp::{homs, ordgrp_hom_leq, small_fixtures};
use ordcat::gen;
use ordcat::ideal::{lower_star, upper_star};
use ordcat::quantale::FinQuantale;
use ordcat::relation::id_ideal;
use ordcat::MonotoneMap;
use proptest::prelude::*;

/// Normal form of a word over {x, y} under the single rule `xy -> ε`.
fn reduce(word: &str) -> (u64, u64) {
    let mut stack: Vec<char> = Vec::new();
    for c in word.chars() {
        if c == 'y' && stack.last() == Some(&'x') {
            stack.pop();
        } else {
            stack.push(c);
        }
    }
    let m = stack.iter().take_while(|&&c| c == 'y').count();
    (m as u64, (stack.len() - m) as u64)
}

fn word(e: BicyclicElem) -> String {
    "y".repeat(e.m as usize) + &"x".repeat(e.n as usize)
}

fn elem() -> impl Strategy<Value = BicyclicElem> {
    (0u64..=12, 0u64..=12).prop_map(|(m, n)| BicyclicElem::new(m, n))
}

fn map_pair(seed: u64, k: usize) -> MonotoneMap {
    let mut r = gen::rng(seed);
    let (a, b) = (gen::size(&mut r, k), gen::nonempty_size(&mut r, k));
    let x = gen::preorder(&mut r, a);
    let y = gen::preorder(&mut r, b);
    gen::monotone_map(&mut r, &x, &y).expect("nonempty codomain")
}

proptest! {
    #[test]
    fn bicyclic_matches_word_rewriting(a in elem(), b in elem()) {
        let s = bicyclic_add(a, b);
        prop_assert_eq!((s.m, s.n), reduce(&(word(a) + &word(b))));
    }

    #[test]
    fn bicyclic_is_associative(a in elem(), b in elem(), c in elem()) {
        prop_assert_eq!(bicyclic_add(bicyclic_add(a, b), c), bicyclic_add(a, bicyclic_add(b, c)));
        prop_assert_eq!(bicyclic_add(a, BicyclicElem::ZERO), a);
        prop_assert_eq!(bicyclic_add(BicyclicElem::ZERO, a), a);
    }

    #[test]
    fn kernel_contains_identity_and_cokernel_is_below_it(seed in any::<u64>()) {
        let f = map_pair(seed, 5);
        let kernel = lower_star(&f).compose(&upper_star(&f)).unwrap();
        let cokernel = upper_star(&f).compose(&lower_star(&f)).unwrap();
        prop_assert!(id_ideal(f.dom()).is_subset(&kernel));
        prop_assert!(cokernel.is_subset(&id_ideal(f.cod())));
    }

    #[test]
    fn ideal_composition_is_associative_and_unital(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let sizes: Vec<usize> = (0..4).map(|_| gen::size(&mut r, 4)).collect();
        let objs: Vec<_> = sizes.iter().map(|&n| gen::preorder(&mut r, n)).collect();
        let a = gen::ideal(&mut r, &objs[0], &objs[1]);
        let b = gen::ideal(&mut r, &objs[1], &objs[2]);
        let c = gen::ideal(&mut r, &objs[2], &objs[3]);
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(id_ideal(&objs[0]).compose(&a).unwrap(), a.clone());
        prop_assert_eq!(a.compose(&id_ideal(&objs[1])).unwrap(), a);
    }

    #[test]
    fn quantale_tensor_is_associative_and_monotone(q in 0usize..4, a in 0usize..4, b in 0usize..4, c in 0usize..4) {
        let v = [FinQuantale::boolean(), FinQuantale::min_chain3(), FinQuantale::lukasiewicz3(), FinQuantale::diamond()][q].clone();
        let n = v.size();
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(v.tensor(v.tensor(a, b), c), v.tensor(a, v.tensor(b, c)));
        prop_assert_eq!(v.tensor(v.unit(), a), a);
        if v.leq(a, b) {
            prop_assert!(v.leq(v.tensor(a, c), v.tensor(b, c)));
        }
        prop_assert!(v.leq(v.tensor(a, b), v.meet(a, b)));
    }
}

#[test]
fn group_hom_order_is_a_preorder() {
    let groups = small_fixtures();
    for x in &groups {
        for y in &groups {
            let hs = homs(x, y);
            let leq = |f: &[usize], g: &[usize]| ordgrp_hom_leq(x, y, f, g).unwrap();
            for f in &hs {
                assert!(leq(f, f));
                for g in &hs {
                    for h in &hs {
                        if leq(f, g) && leq(g, h) {
                            assert!(leq(f, h));
                        }
                    }
                }
            }
        }
    }
}
