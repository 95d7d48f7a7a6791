//! The canonical ideals attached to maps and spans, congruences, and the
//! reconstruction of a map from an adjoint pair of ideals.

use crate::error::{Error, Result};
use crate::limits::comma;
use crate::preorder::{FinPreorder, MonotoneMap};
use crate::relation::{IdealRel, Rel};

/// `f_* : X ↬ Y`, with `x f_* y ⇔ f x <= y`.
pub fn lower_star(f: &MonotoneMap) -> IdealRel {
    let cod = f.cod();
    IdealRel::new_unchecked(Rel::from_fn(f.dom(), cod, |x, y| cod.leq(f.apply(x), y)))
}

/// `f^* : Y ↬ X`, with `y f^* x ⇔ y <= f x`.
pub fn upper_star(f: &MonotoneMap) -> IdealRel {
    let cod = f.cod();
    IdealRel::new_unchecked(Rel::from_fn(cod, f.dom(), |y, x| cod.leq(y, f.apply(x))))
}

/// `R_*` for the span `X <-r1- R -r2-> Y`: the ideal generated by its image.
pub fn r_star(r1: &MonotoneMap, r2: &MonotoneMap) -> Result<IdealRel> {
    if r1.dom() != r2.dom() {
        return Err(Error::Mismatch("r_star"));
    }
    upper_star(r1).compose(&lower_star(r2))
}

/// `R^* : Y ↬ X`, the smallest ideal containing the opposite of the span.
pub fn r_upper(r1: &MonotoneMap, r2: &MonotoneMap) -> Result<IdealRel> {
    if r1.dom() != r2.dom() {
        return Err(Error::Mismatch("r_upper"));
    }
    upper_star(r2).compose(&lower_star(r1))
}

/// `D^*` computed from the tabulation of `d`.
pub fn ideal_upper(d: &Rel) -> IdealRel {
    let t = d.tabulate();
    upper_star(&t.p2)
        .compose(&lower_star(&t.p1))
        .expect("tabulation legs share a domain")
}

fn endo(r: &Rel) -> Result<()> {
    if r.is_endo() {
        Ok(())
    } else {
        Err(Error::NotEndo)
    }
}

/// Diagonal test: `x R x` for every `x`.
pub fn is_reflexive(r: &Rel) -> Result<bool> {
    endo(r)?;
    Ok((0..r.dom().size()).all(|x| r.get(x, x)))
}

/// `I_X ⊆ R`. Agrees with [`is_reflexive`] on ideals.
pub fn contains_identity(r: &Rel) -> Result<bool> {
    endo(r)?;
    Ok(IdealRel::identity(r.dom()).is_subset(r))
}

pub fn is_transitive(r: &Rel) -> Result<bool> {
    endo(r)?;
    Ok(r.compose(r)?.is_subset(r))
}

pub fn is_congruence(r: &IdealRel) -> Result<bool> {
    Ok(is_reflexive(r)? && is_transitive(r)?)
}

/// Quotient of `X` by a congruence; returns `f` with `f/f = R`.
///
/// Classes are represented by their smallest member.
pub fn effective_witness(r: &IdealRel) -> Result<MonotoneMap> {
    if !is_congruence(r)? {
        return Err(Error::NotCongruence);
    }
    let x = r.dom();
    let n = x.size();
    let rep: Vec<usize> = (0..n)
        .map(|a| (0..n).find(|&b| r.get(a, b) && r.get(b, a)).unwrap_or(a))
        .collect();
    let mut reps: Vec<usize> = rep.clone();
    reps.sort_unstable();
    reps.dedup();
    let q = FinPreorder::from_fn(reps.len(), |i, j| r.get(reps[i], reps[j]));
    let table = rep.iter().map(|c| reps.binary_search(c).unwrap()).collect();
    let f = MonotoneMap::new(x.clone(), q, table)?;
    let kernel = comma(&f, &f)?;
    let same = (0..n).all(|a| (0..n).all(|b| kernel.contains(a, b) == r.get(a, b)));
    if !same {
        return Err(Error::Reconstruction(
            "quotient kernel differs from congruence".into(),
        ));
    }
    Ok(f)
}

/// Unit and counit inclusions `I_X ⊆ R̄R` and `RR̄ ⊆ I_Y`.
pub fn check_adjunction(r: &IdealRel, rbar: &IdealRel) -> Result<bool> {
    if r.dom() != rbar.cod() || r.cod() != rbar.dom() {
        return Err(Error::Mismatch("check_adjunction"));
    }
    let unit = IdealRel::identity(r.dom()).is_subset(r.compose(rbar)?.as_rel());
    let counit = rbar.compose(r)?.is_subset(&IdealRel::identity(r.cod()));
    Ok(unit && counit)
}

/// Recovers `f` with `f_* = R` from an adjunction `R ⊣ R̄`.
pub fn adjoint_to_map(r: &IdealRel, rbar: &IdealRel) -> Result<MonotoneMap> {
    if !check_adjunction(r, rbar)? {
        return Err(Error::NotAdjunction);
    }
    let s = r.as_rel().meet(&rbar.opp())?;
    let m = r.cod().size();
    let table = (0..r.dom().size())
        .map(|x| {
            (0..m)
                .find(|&y| s.get(x, y))
                .ok_or_else(|| Error::Reconstruction(format!("no image for {x}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let f = MonotoneMap::new(r.dom().clone(), r.cod().clone(), table)?;
    if lower_star(&f) != *r {
        return Err(Error::Reconstruction("lower star of result differs".into()));
    }
    Ok(f)
}

/// The 2-pullback of `R: X ↬ Y` along `f × g`, computed pointwise.
pub fn pullback_ideal(r: &IdealRel, f: &MonotoneMap, g: &MonotoneMap) -> Result<Rel> {
    if f.cod() != r.dom() || g.cod() != r.cod() {
        return Err(Error::Mismatch("pullback_ideal"));
    }
    Ok(Rel::from_fn(f.dom(), g.dom(), |u, v| {
        r.get(f.apply(u), g.apply(v))
    }))
}
