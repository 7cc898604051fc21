//! Browser bindings: decompose a tensor product, compute a fusion tower, and
//! draw its Bratteli diagram. Every export returns a JSON or DOT string; the
//! page in `www/` renders it.
//!
//! The `*_report` functions are the plain-Rust core of each export so they can
//! be tested natively.

use wasm_bindgen::prelude::*;

use slq_core::decompose::{build_fingerprint_library, SummandType};
use slq_core::fusion::{bratteli, fusion_tower_with, FusionTable, PairTable, TowerMode, TowerOptions};
use slq_core::qalgebra::{QContext, Sign, Spin};
use slq_core::report::{decompose_spins, DecompositionReport, FusionReport};
use slq_core::scalars::Rational;

/// Largest product the page will decompose explicitly.
const DECOMPOSE_CAP: usize = 256;
/// Largest deepest-level dimension a tower may reach.
const TOWER_CAP: u64 = 1 << 20;
const MAX_DEPTH: usize = 12;

/// `root = 0` selects generic mode with the rational `q0`.
fn context(root: u32, q0: &str, eps: i32) -> Result<QContext, String> {
    let eps = Sign::from_i64(eps as i64).ok_or_else(|| format!("eps must be +1 or -1, got {eps}"))?;
    let ctx = if root == 0 {
        let q0: Rational = q0.trim().parse().map_err(|e: slq_core::Error| e.to_string())?;
        QContext::generic(q0, eps)
    } else {
        QContext::root(root as usize, eps)
    };
    ctx.map_err(|e| e.to_string())
}

fn parse_spins(spins: &str) -> Result<Vec<Spin>, String> {
    spins
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<Spin>().map_err(|e| e.to_string()))
        .collect()
}

fn tower(root: u32, q0: &str, eps: i32, seed_rep: &str, depth: usize) -> Result<FusionTable, String> {
    if depth == 0 || depth > MAX_DEPTH {
        return Err(format!("depth must be between 1 and {MAX_DEPTH}"));
    }
    let ctx = context(root, q0, eps)?;
    let lib = build_fingerprint_library(&ctx).map_err(|e| e.to_string())?;
    let seed_rep = seed_rep.trim();
    let generator = match seed_rep.parse::<Spin>() {
        Ok(spin) => SummandType::irrep(spin),
        Err(_) => seed_rep.parse().map_err(|e: slq_core::Error| e.to_string())?,
    };
    lib.entry(generator).map_err(|e| e.to_string())?;
    let opts = TowerOptions::ring().with_cap(TOWER_CAP);
    fusion_tower_with(generator, depth, &lib, &mut PairTable::new(), opts).map_err(|e| e.to_string())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report types serialize")
}

pub fn decompose_report(root: u32, q0: &str, eps: i32, spins: &str) -> Result<String, String> {
    let ctx = context(root, q0, eps)?;
    let spins = parse_spins(spins)?;
    let d = decompose_spins(&spins, &ctx, 0, DECOMPOSE_CAP).map_err(|e| e.to_string())?;
    Ok(to_json(&DecompositionReport::new(&spins, &d, false)))
}

pub fn fusion_report(root: u32, q0: &str, eps: i32, seed_rep: &str, depth: usize) -> Result<String, String> {
    let table = tower(root, q0, eps, seed_rep, depth)?;
    Ok(to_json(&FusionReport::new(&table, TowerMode::Ring)))
}

/// The diagram with twisted copies identified, as JSON (`dot = false`) or DOT.
pub fn bratteli_report(
    root: u32,
    q0: &str,
    eps: i32,
    seed_rep: &str,
    depth: usize,
    dot: bool,
) -> Result<String, String> {
    let table = tower(root, q0, eps, seed_rep, depth)?;
    let diagram = bratteli(&table).up_to_twist().map_err(|e| e.to_string())?;
    Ok(if dot {
        diagram.to_dot(&format!("{} in {}", table.generator, table.ctx))
    } else {
        to_json(&diagram)
    })
}

#[wasm_bindgen]
pub fn decompose_json(root: u32, q0: &str, eps: i32, spins: &str) -> Result<String, JsValue> {
    decompose_report(root, q0, eps, spins).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn fusion_json(root: u32, q0: &str, eps: i32, seed_rep: &str, depth: usize) -> Result<String, JsValue> {
    fusion_report(root, q0, eps, seed_rep, depth).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn bratteli_json(root: u32, q0: &str, eps: i32, seed_rep: &str, depth: usize) -> Result<String, JsValue> {
    bratteli_report(root, q0, eps, seed_rep, depth, false).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn bratteli_dot(root: u32, q0: &str, eps: i32, seed_rep: &str, depth: usize) -> Result<String, JsValue> {
    bratteli_report(root, q0, eps, seed_rep, depth, true).map_err(|e| JsValue::from_str(&e))
}
