//! WebAssembly bindings for the browser demo in `www/`. Every export returns
//! a JSON string; the plain functions are usable natively.

use narayana_core::dyck::{self, DyckPath};
use narayana_core::qpoly::{narayana, q_narayana_closed};
use narayana_core::shelling::{omega_n, sigma_stat, OMEGA_LIMIT};
use narayana_core::tableaux::dyck_to_ssyt;
use narayana_core::{Error, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest semilength the q-Narayana explorer accepts.
pub const EXPLORER_LIMIT: usize = 40;

fn coeffs(p: &narayana_core::QPoly) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

/// Statistics of a vh-word, and the tableau it corresponds to.
pub fn path_stats_json(word: &str) -> Result<String> {
    let w: DyckPath = word.trim().parse()?;
    let (da, maj) = sigma_stat(&w);
    let v = json!({
        "path": w,
        "semilength": w.semilength(),
        "descents": w.descent_set(),
        "des": w.des(),
        "maj": maj,
        "high_peaks": w.high_peak_set(),
        "hp": w.hp(),
        "ea": w.ea(),
        "ls": w.ls_set(),
        "lnfs": w.lnfs(),
        "maj_l": w.maj_l(),
        "da": da,
        "tableau": dyck_to_ssyt(&w),
    });
    Ok(v.to_string())
}

pub fn random_path_string(n: usize, seed: u64) -> Result<String> {
    if n == 0 || n > dyck::MAX_SEMILENGTH {
        return Err(Error::RankOutOfRange {
            rank: n,
            max: dyck::MAX_SEMILENGTH,
        });
    }
    Ok(dyck::random_path(n, seed).to_string())
}

/// `N_q(n, k)` for every `k`, coefficients as decimal strings.
pub fn q_narayana_json(n: usize) -> Result<String> {
    if n == 0 || n > EXPLORER_LIMIT {
        return Err(Error::TooLarge {
            what: "semilength",
            size: n as u64,
            limit: EXPLORER_LIMIT as u64,
        });
    }
    let rows = (0..n)
        .map(|k| {
            let p = q_narayana_closed(n, k)?;
            Ok(json!({
                "k": k,
                "narayana": narayana(n, k)?.to_string(),
                "text": p.to_string(),
                "coeffs": coeffs(&p),
            }))
        })
        .collect::<Result<Vec<Value>>>()?;
    Ok(Value::Array(rows).to_string())
}

/// Hasse diagram of `Omega_n` with a level for layout: the length of the
/// longest chain down to the minimum.
pub fn omega_hasse_json(n: usize) -> Result<String> {
    let order = omega_n(n)?;
    let paths = dyck::enumerate(n);
    let covers = order.covers();
    // σ decreases downwards, so increasing σ is a linear extension
    let mut by_sigma: Vec<usize> = (0..paths.len()).collect();
    by_sigma.sort_by_key(|&i| sigma_stat(&paths[i]));
    let mut below = vec![Vec::new(); paths.len()];
    for &(a, b) in &covers {
        below[b].push(a);
    }
    let mut level = vec![0usize; paths.len()];
    for &b in &by_sigma {
        level[b] = below[b].iter().map(|&a| level[a] + 1).max().unwrap_or(0);
    }
    let nodes: Vec<Value> = paths
        .iter()
        .zip(&level)
        .map(|(w, l)| json!({ "path": w, "ls": w.ls_set(), "level": l }))
        .collect();
    let edges: Vec<Value> = covers.iter().map(|&(a, b)| json!([a, b])).collect();
    Ok(json!({ "n": n, "limit": OMEGA_LIMIT, "nodes": nodes, "edges": edges }).to_string())
}

fn js(r: Result<String>) -> std::result::Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn path_stats(word: &str) -> std::result::Result<String, JsError> {
    js(path_stats_json(word))
}

#[wasm_bindgen]
pub fn random_path(n: usize, seed: u32) -> std::result::Result<String, JsError> {
    js(random_path_string(n, seed.into()))
}

#[wasm_bindgen]
pub fn q_narayana(n: usize) -> std::result::Result<String, JsError> {
    js(q_narayana_json(n))
}

#[wasm_bindgen]
pub fn omega_hasse(n: usize) -> std::result::Result<String, JsError> {
    js(omega_hasse_json(n))
}
