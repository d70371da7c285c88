//! Aligned-text and JSON renderings of the branching table, the genus
//! table, and the low-genus classification.

use serde_json::{json, Value};

use crate::schwarz::{branch_counts, classify_low_genus, genus, nu_range};
use crate::CoreError;

fn coprime(p: u32, q: u32) -> bool {
    crate::num::gcd_u(p as u64, q as u64) == 1
}

/// Branching table rows for one (p, q, k): text rendering.
pub fn branching_table_text(p: u32, q: u32, k: u32) -> Result<String, CoreError> {
    if !coprime(p, q) {
        return Err(CoreError::Constraint(format!("p={p}, q={q} must be coprime")));
    }
    let mut out = String::new();
    out.push_str(&format!(
        "branching data over zeta = 0 for (p, q, k) = ({p}, {q}, {k})\n"
    ));
    out.push_str(&format!("{:>4}  {:>12}  {:>10}  {:>6}\n", "nu", "points", "tangents", "mult"));
    for nu in nu_range(p, q, k) {
        let d = branch_counts(p, q, k, nu)?;
        out.push_str(&format!(
            "{:>4}  {:>12}  {:>10}  {:>6}\n",
            d.nu, d.points, d.tangents, d.multiplicity
        ));
    }
    Ok(out)
}

pub fn branching_table_json(p: u32, q: u32, k: u32) -> Result<Value, CoreError> {
    if !coprime(p, q) {
        return Err(CoreError::Constraint(format!("p={p}, q={q} must be coprime")));
    }
    let rows: Vec<Value> = nu_range(p, q, k)
        .map(|nu| {
            let d = branch_counts(p, q, k, nu).expect("in range");
            json!({
                "nu": d.nu,
                "points": d.points.to_string(),
                "tangents": d.tangents.to_string(),
                "multiplicity": d.multiplicity,
            })
        })
        .collect();
    Ok(json!({ "p": p, "q": q, "k": k, "rows": rows }))
}

/// Genus table for all coprime p + q <= bound and every 1 <= k <= n.
pub fn genus_table_text(bound: u32) -> String {
    let mut out = String::new();
    out.push_str(&format!("{:>3} {:>3} {:>3}  {:>6}\n", "p", "q", "k", "genus"));
    for p in 1..bound {
        for q in 1..bound {
            if p + q > bound || !coprime(p, q) {
                continue;
            }
            for k in 1..=(p + q) {
                let g = genus(p, q, k).expect("in range").genus;
                out.push_str(&format!("{p:>3} {q:>3} {k:>3}  {g:>6}\n"));
            }
        }
    }
    out
}

pub fn genus_table_json(bound: u32) -> Value {
    let mut rows = vec![];
    for p in 1..bound {
        for q in 1..bound {
            if p + q > bound || !coprime(p, q) {
                continue;
            }
            for k in 1..=(p + q) {
                let g = genus(p, q, k).expect("in range").genus;
                rows.push(json!({ "p": p, "q": q, "k": k, "genus": g }));
            }
        }
    }
    json!({ "bound": bound, "rows": rows })
}

/// Low-genus classification (k >= 3) up to the bound.
pub fn classification_text(bound: u32) -> String {
    let (g0, g1) = classify_low_genus(bound);
    let fmt = |v: &[(u32, u32, u32)]| {
        v.iter()
            .map(|(p, q, k)| format!("({p},{q},{k})"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        "genus 0 (k >= 3): {}\ngenus 1 (k >= 3): {}\n",
        fmt(&g0),
        fmt(&g1)
    )
}

pub fn classification_json(bound: u32) -> Value {
    let (g0, g1) = classify_low_genus(bound);
    let arr = |v: Vec<(u32, u32, u32)>| -> Vec<Value> {
        v.into_iter()
            .map(|(p, q, k)| json!({ "p": p, "q": q, "k": k }))
            .collect()
    };
    json!({ "bound": bound, "genus0": arr(g0), "genus1": arr(g1) })
}
