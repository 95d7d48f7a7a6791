//! Named replays of the worked examples, each producing a [`Verdict`].

use serde_json::json;

use crate::algebra::bicyclic::{
    bicyclic_add, bicyclic_d_member, d_is_submonoid, find_difunctionality_witness,
    gregarious_witness, has_inverse_in_box, printed_witness_membership, BicyclicElem,
};
use crate::algebra::naturals::{comma_gmon_replay, comma_monlc_replay, natleq_replay};
use crate::algebra::ordgrp::{ideal_forces_product, ordgrp_chain_sweep, FinPreordGroup};
use crate::json::{ideal_json, rel_json};
use crate::maltsev::{counterexample_search, dd_star_d, Restriction};
use crate::report::Verdict;

pub const REPLAY_IDS: [&str; 7] = [
    "natleq",
    "gregarious-D",
    "comma-monlc",
    "comma-gmon",
    "ordgrp-ideal",
    "ordgrp-chain",
    "ord-not-maltsev",
];

/// Runs the replay named `id`; `None` for an unknown id.
pub fn replay(id: &str) -> Option<Verdict> {
    Some(match id {
        "natleq" => natleq(),
        "gregarious-D" => gregarious_d(),
        "comma-monlc" => comma_monlc(),
        "comma-gmon" => comma_gmon(),
        "ordgrp-ideal" => ordgrp_ideal(),
        "ordgrp-chain" => ordgrp_chain(),
        "ord-not-maltsev" => ord_not_maltsev(),
        _ => return None,
    })
}

fn elem(e: BicyclicElem) -> serde_json::Value {
    json!([e.m, e.n])
}

fn natleq() -> Verdict {
    let rows = natleq_replay();
    let expected = [true, true, true, false];
    let ok = rows.iter().zip(expected).all(|(r, e)| r.2 == e);
    let details: Vec<_> = rows
        .iter()
        .map(|&(a, b, le)| json!({"a": a, "b": b, "leq": le}))
        .collect();
    Verdict::new("natleq", ok, json!({"comparisons": details}))
}

fn gregarious_d() -> Verdict {
    const BOX: u64 = 12;
    let submonoid = d_is_submonoid(8);
    let gregarious = BicyclicElem::box_of(BOX).all(|e| {
        let (u, v) = gregarious_witness(e);
        bicyclic_add(u, bicyclic_add(e, v)) == BicyclicElem::ZERO
    });
    let yx = bicyclic_add(BicyclicElem::Y, BicyclicElem::X);
    let yx_invertible = has_inverse_in_box(yx, BOX);
    let witness = find_difunctionality_witness(bicyclic_d_member, 4);
    let printed: Vec<_> = printed_witness_membership()
        .iter()
        .map(|&(a, b, inside)| json!({"pair": [elem(a), elem(b)], "in_D": inside}))
        .collect();
    let discrepancy = printed_witness_membership().iter().any(|p| !p.2);
    let ok = submonoid && gregarious && !yx_invertible && witness.is_some();
    Verdict::new(
        "gregarious-D",
        ok,
        json!({
            "submonoid_box": 8,
            "d_is_submonoid": submonoid,
            "gregarious_box": BOX,
            "gregarious": gregarious,
            "y_plus_x": elem(yx),
            "y_plus_x_has_inverse_in_box": yx_invertible,
            "difunctionality_witness": witness.map(|w| w.map(elem).to_vec()),
            "printed_witness": printed,
            "printed_witness_discrepancy": discrepancy,
        }),
    )
}

fn comma_monlc() -> Verdict {
    let r = comma_monlc_replay();
    let ok = (r.pi1, r.pi2) == (2, 1) && !r.pi1_leq_pi2;
    Verdict::new(
        "comma-monlc",
        ok,
        serde_json::to_value(&r).expect("serializes"),
    )
}

fn comma_gmon() -> Verdict {
    let r = comma_gmon_replay(10);
    let ok = r.pi1 == BicyclicElem::Y
        && r.pi2 == BicyclicElem::ZERO
        && !r.inverse_found
        && r.first_coordinate_grows;
    Verdict::new(
        "comma-gmon",
        ok,
        json!({
            "pi1": elem(r.pi1),
            "pi2": elem(r.pi2),
            "bound": 10,
            "y_plus_z_eq_0_solvable": r.inverse_found,
            "first_coordinate_never_drops": r.first_coordinate_grows,
        }),
    )
}

fn ordgrp_ideal() -> Verdict {
    let z2 = FinPreordGroup::cyclic(2, &[0]).expect("trivial cone");
    let cases: [(&str, &[usize]); 2] = [("zero", &[0]), ("diagonal", &[0, 3])];
    let mut ok = true;
    let mut details = Vec::new();
    for (name, d) in cases {
        match ideal_forces_product(&z2, &z2, d) {
            Ok(f) => {
                ok &= f.is_full_product;
                details.push(json!({"D": name, "generators": d, "closure": f.closure, "full": f.is_full_product}));
            }
            Err(e) => {
                ok = false;
                details.push(json!({"D": name, "error": e.to_string()}));
            }
        }
    }
    Verdict::new(
        "ordgrp-ideal",
        ok,
        json!({"groups": "Z/2 x Z/2", "cases": details}),
    )
}

fn ordgrp_chain() -> Verdict {
    let s = ordgrp_chain_sweep();
    Verdict::new(
        "ordgrp-chain",
        s.failures == 0 && s.configurations > 0,
        serde_json::to_value(s).expect("serializes"),
    )
}

fn ord_not_maltsev() -> Verdict {
    match counterexample_search(2, 0, Restriction::Any) {
        Some(d) => {
            let dd = dd_star_d(&d);
            Verdict::new(
                "ord-not-maltsev",
                true,
                json!({"ideal": ideal_json(&d), "dd_star_d": rel_json(&dd)}),
            )
        }
        None => Verdict::new("ord-not-maltsev", false, json!({"ideal": null})),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_replay_passes() {
        for id in REPLAY_IDS {
            let v = replay(id).unwrap();
            assert!(v.passed(), "{id}: {}", v.to_json_string());
        }
        assert!(replay("nope").is_none());
    }

    #[test]
    fn gregarious_reports_discrepancy() {
        let v = replay("gregarious-D").unwrap();
        assert_eq!(v.details["printed_witness_discrepancy"], true);
        assert_eq!(
            v.details["difunctionality_witness"],
            json!([[0, 0], [1, 1], [1, 1], [2, 2]])
        );
    }
}
