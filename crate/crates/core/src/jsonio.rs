//! JSON encodings for the element types, built on the per-instance literal
//! formats supplied by the coset system.
//!
//! Rationals appear as `"p/q"` strings, field elements as coordinate arrays,
//! lamp configurations as `[position, value]` pairs. Object keys serialize in
//! sorted order, so encodings are byte-deterministic.

use serde_json::{json, Value};

use crate::a0::A0Elem;
use crate::d0::D0Elem;
use crate::hecke::{DoubleCoset, HeckeElem};
use crate::repr::FinVec;
use crate::scalar::Scalar;
use crate::system::{Coset, CosetError, CosetSystem, GroupElem};

pub fn group_to_json<S: CosetSystem>(sys: &S, g: &GroupElem<S>) -> Value {
    json!({ "n": sys.n_to_json(&g.n), "h": sys.h_to_json(&g.h) })
}

pub fn group_from_json<S: CosetSystem>(sys: &S, v: &Value) -> Result<GroupElem<S>, CosetError> {
    let obj = v
        .as_object()
        .ok_or_else(|| CosetError::Parse("group element must be {n, h}".into()))?;
    let n = sys.n_from_json(obj.get("n").unwrap_or(&Value::Null))?;
    let h = sys.h_from_json(obj.get("h").unwrap_or(&Value::Null))?;
    Ok(sys.g_of(n, h))
}

pub fn coset_to_json<S: CosetSystem>(sys: &S, c: &Coset<S>) -> Value {
    json!({ "rep": sys.n_to_json(c.rep()), "sub": sys.sub_to_json(c.sub()) })
}

/// Parse a coset; the representative is canonicalized against the subgroup.
pub fn coset_from_json<S: CosetSystem>(sys: &S, v: &Value) -> Result<Coset<S>, CosetError> {
    let obj = v
        .as_object()
        .ok_or_else(|| CosetError::Parse("coset must be {rep, sub}".into()))?;
    let rep = sys.n_from_json(obj.get("rep").unwrap_or(&Value::Null))?;
    let sub = sys.sub_from_json(obj.get("sub").unwrap_or(&Value::Null))?;
    Ok(sys.coset(&rep, &sub))
}

pub fn d0_to_json<S: CosetSystem>(sys: &S, x: &D0Elem<S>) -> Value {
    Value::Array(
        x.terms()
            .map(|(c, s)| json!({ "coeff": s.to_json(), "coset": coset_to_json(sys, c) }))
            .collect(),
    )
}

pub fn d0_from_json<S: CosetSystem>(sys: &S, v: &Value) -> Result<D0Elem<S>, CosetError> {
    let arr = v
        .as_array()
        .ok_or_else(|| CosetError::Parse("D0 element must be a list of terms".into()))?;
    let mut pairs = Vec::new();
    for term in arr {
        let obj = term
            .as_object()
            .ok_or_else(|| CosetError::Parse("D0 term must be {coeff, coset}".into()))?;
        let coeff = Scalar::from_json(obj.get("coeff").unwrap_or(&Value::Null))?;
        let coset = coset_from_json(sys, obj.get("coset").unwrap_or(&Value::Null))?;
        pairs.push((coset, coeff));
    }
    Ok(D0Elem::from_pairs(pairs))
}

/// Serialize a proper crossed-product element as `[{g, f}]`.
pub fn a0_to_json<S: CosetSystem>(sys: &S, x: &A0Elem<S>) -> Result<Value, CosetError> {
    let terms = x.proper_terms()?;
    Ok(Value::Array(
        terms
            .into_iter()
            .map(|(g, f)| json!({ "g": group_to_json(sys, &g), "f": d0_to_json(sys, &f) }))
            .collect(),
    ))
}

pub fn a0_from_json<S: CosetSystem>(sys: &S, v: &Value) -> Result<A0Elem<S>, CosetError> {
    let arr = v
        .as_array()
        .ok_or_else(|| CosetError::Parse("A0 element must be a list of terms".into()))?;
    let mut out = A0Elem::zero();
    for term in arr {
        let obj = term
            .as_object()
            .ok_or_else(|| CosetError::Parse("A0 term must be {g, f}".into()))?;
        let g = group_from_json(sys, obj.get("g").unwrap_or(&Value::Null))?;
        let f = d0_from_json(sys, obj.get("f").unwrap_or(&Value::Null))?;
        out = out.add(&A0Elem::from_term(g, f));
    }
    Ok(out)
}

pub fn dcoset_to_json<S: CosetSystem>(sys: &S, d: &DoubleCoset<S>) -> Value {
    group_to_json(sys, d.rep())
}

pub fn hecke_to_json<S: CosetSystem>(sys: &S, x: &HeckeElem<S>) -> Value {
    Value::Array(
        x.terms()
            .map(|(d, s)| json!({ "coeff": s.to_json(), "class": dcoset_to_json(sys, d) }))
            .collect(),
    )
}

pub fn hecke_from_json<S: CosetSystem>(sys: &S, v: &Value) -> Result<HeckeElem<S>, CosetError> {
    let arr = v
        .as_array()
        .ok_or_else(|| CosetError::Parse("Hecke element must be a list of terms".into()))?;
    let mut pairs = Vec::new();
    for term in arr {
        let obj = term
            .as_object()
            .ok_or_else(|| CosetError::Parse("Hecke term must be {coeff, class}".into()))?;
        let coeff = Scalar::from_json(obj.get("coeff").unwrap_or(&Value::Null))?;
        let g = group_from_json(sys, obj.get("class").unwrap_or(&Value::Null))?;
        pairs.push((DoubleCoset::canonical(sys, &g), coeff));
    }
    Ok(HeckeElem::from_pairs(pairs))
}

pub fn finvec_to_json<S: CosetSystem>(sys: &S, v: &FinVec<S>) -> Value {
    Value::Array(
        v.entries()
            .map(|(n, s)| Value::Array(vec![sys.n_to_json(n), s.to_json()]))
            .collect(),
    )
}

pub fn finvec_from_json<S: CosetSystem>(sys: &S, v: &Value) -> Result<FinVec<S>, CosetError> {
    let arr = v
        .as_array()
        .ok_or_else(|| CosetError::Parse("vector must be a list of [point, scalar]".into()))?;
    let mut out = FinVec::zero();
    for entry in arr {
        let pair = entry
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| CosetError::Parse("vector entries are [point, scalar]".into()))?;
        let n = sys.n_from_json(&pair[0])?;
        let s = Scalar::from_json(&pair[1])?;
        out.add_entry(n, s);
    }
    Ok(out)
}
