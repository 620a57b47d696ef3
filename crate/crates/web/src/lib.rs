//! Browser bindings: sumset membership for a clicked set, the closed-form
//! curves over m, and small exact searches. Every function returns a JSON
//! string.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use signed_sumset::{
    classify_symmetry, h_fold_signed_sumset, h_fold_sumset, min_sumset_size,
    predicted_signed_minimum, rho_pm_oracle, signed_sumset_bound, ElementSet, Error, Family,
    GroupSpec, SearchOptions,
};

/// Groups larger than this are refused so the page stays responsive.
const MAX_ORDER: usize = 400;

fn fail(e: impl ToString) -> JsError {
    JsError::new(&e.to_string())
}

fn parse_group(literal: &str) -> Result<GroupSpec, JsError> {
    let g: GroupSpec = literal.trim().parse().map_err(fail)?;
    if g.order() > MAX_ORDER {
        return Err(fail(format!(
            "{g} has order {}, the demo stops at {MAX_ORDER}",
            g.order()
        )));
    }
    Ok(g)
}

fn sumset_json(g: &GroupSpec, indices: &[u32], h: usize) -> Result<Value, Error> {
    let a = ElementSet::from_indices(g, indices.iter().map(|&i| i as usize))?;
    let plain = h_fold_sumset(g, &a, h)?;
    let signed = h_fold_signed_sumset(g, &a, h)?;
    let cells: Vec<Value> = (0..g.order())
        .map(|i| {
            json!({
                "label": g.format_element(i),
                "coords": g.coords(g.element(i).expect("index in range")),
                "in_set": a.contains(i),
                "in_plain": plain.contains(i),
                "in_signed": signed.contains(i),
            })
        })
        .collect();
    let class = if a.is_empty() {
        None
    } else {
        Some(classify_symmetry(g, &a)?.label())
    };
    Ok(json!({
        "group": g.to_string(),
        "factors": g.factors(),
        "h": h,
        "size": a.len(),
        "class": class,
        "plain_size": plain.len(),
        "signed_size": signed.len(),
        "cells": cells,
    }))
}

/// `hA` and `h_±A` for the set of element indices `indices`, one entry
/// per group element.
#[wasm_bindgen]
pub fn sumsets(group: &str, indices: Vec<u32>, h: u32) -> Result<String, JsError> {
    let g = parse_group(group)?;
    Ok(sumset_json(&g, &indices, h as usize)
        .map_err(fail)?
        .to_string())
}

fn curves_json(g: &GroupSpec, h: u64) -> Result<Value, Error> {
    let n = g.order() as u64;
    let ms: Vec<u64> = (1..=n).collect();
    let mut plain = Vec::new();
    let mut bound = Vec::new();
    let mut predicted = Vec::new();
    for &m in &ms {
        plain.push(min_sumset_size(n, m, h)?.value);
        bound.push(signed_sumset_bound(g, m, h)?.value);
        predicted.push(predicted_signed_minimum(g, m, h)?);
    }
    Ok(json!({
        "group": g.to_string(),
        "h": h,
        "m": ms,
        "u": plain,
        "u_pm": bound,
        "predicted": predicted,
    }))
}

/// The plain minimum, the signed upper bound and the predicted signed
/// minimum for every m.
#[wasm_bindgen]
pub fn bound_curves(group: &str, h: u32) -> Result<String, JsError> {
    let g = parse_group(group)?;
    Ok(curves_json(&g, u64::from(h)).map_err(fail)?.to_string())
}

fn exact_json(g: &GroupSpec, m: usize, h: usize, budget: u64) -> Result<Value, Error> {
    let options = SearchOptions {
        budget: u128::from(budget),
        reduce_negation: true,
    };
    let r = rho_pm_oracle(g, m, h, Family::AFamily, &options)?;
    Ok(json!({
        "group": g.to_string(),
        "m": m,
        "h": h,
        "value": r.value,
        "witness": r.witness.indices(),
        "witness_labels": r.witness.iter().map(|i| g.format_element(i)).collect::<Vec<_>>(),
        "class": r.witness_class.label(),
        "enumerated": r.enumerated.to_string(),
        "u": min_sumset_size(g.order() as u64, m as u64, h as u64)?.value,
        "u_pm": signed_sumset_bound(g, m as u64, h as u64)?.value,
    }))
}

/// Exact minimum signed sumset size by exhaustive search, refused when
/// the search space exceeds `budget` sets.
#[wasm_bindgen]
pub fn exact_signed_minimum(group: &str, m: u32, h: u32, budget: u32) -> Result<String, JsError> {
    let g = parse_group(group)?;
    Ok(exact_json(&g, m as usize, h as usize, u64::from(budget))
        .map_err(fail)?
        .to_string())
}
