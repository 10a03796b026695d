//! Browser bindings for the interactive demo page: three operations, each
//! taking and returning JSON strings so the page stays framework-free.

use serde_json::json;
use wasm_bindgen::prelude::*;

use whitney::detection::{detection_table, lemma_table};
use whitney::dihedral::Representation;
use whitney::lifting::lift_reports_cross_checked;
use whitney::products::{product_report, ProductRep};
use whitney::swc::SwcReport;

fn error_json(detail: impl std::fmt::Display) -> String {
    json!({ "error": detail.to_string() }).to_string()
}

fn parse_rep(m: u32, mult_json: &str) -> Result<Representation, String> {
    let value: serde_json::Value =
        serde_json::from_str(mult_json).map_err(|e| format!("malformed JSON: {e}"))?;
    // Accept either the full {"m":..,"mult":..} shape or the bare mult map.
    let wrapped = if value.get("mult").is_some() || value.get("m").is_some() {
        value
    } else {
        json!({ "mult": value })
    };
    Representation::from_json(&wrapped, Some(u64::from(m))).map_err(|e| e.to_string())
}

/// Classes, invariants and the lift report of a representation of `D_m`,
/// with both lifting criteria cross-checked.
#[wasm_bindgen]
pub fn swc_report(m: u32, mult_json: &str) -> String {
    let rep = match parse_rep(m, mult_json) {
        Ok(rep) => rep,
        Err(e) => return error_json(e),
    };
    let classes = match SwcReport::from_representation(&rep) {
        Ok(r) => r,
        Err(e) => return error_json(e),
    };
    let lift = match lift_reports_cross_checked(&rep) {
        Ok(l) => l,
        Err(e) => return error_json(e),
    };
    json!({
        "m": m,
        "degree": rep.degree(),
        "swc": classes,
        "lift": lift.character,
        "lift_cohomological": lift.cohomological,
        "agreement": lift.agreement,
    })
    .to_string()
}

/// Per-degree detection and independence tables up to `max_degree`.
#[wasm_bindgen]
pub fn detection_report(max_degree: u32) -> String {
    let max_degree = max_degree.min(60);
    let rows = detection_table(max_degree);
    let lemma = lemma_table(max_degree);
    let all_ok = rows.iter().all(|r| r.ok) && lemma.iter().all(|r| r.ok);
    json!({ "rows": rows, "lemma": lemma, "all_ok": all_ok }).to_string()
}

/// Spinoriality report for an external tensor product.
#[wasm_bindgen]
pub fn product_spin_report(
    m_left: u32,
    left_json: &str,
    m_right: u32,
    right_json: &str,
) -> String {
    let left = match parse_rep(m_left, left_json) {
        Ok(rep) => rep,
        Err(e) => return error_json(e),
    };
    let right = match parse_rep(m_right, right_json) {
        Ok(rep) => rep,
        Err(e) => return error_json(e),
    };
    let product = match ProductRep::new(left, right) {
        Ok(p) => p,
        Err(e) => return error_json(e),
    };
    match product_report(&product) {
        Ok(report) => serde_json::to_value(&report)
            .map(|v| v.to_string())
            .unwrap_or_else(error_json),
        Err(e) => error_json(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swc_report_shape() {
        let out: serde_json::Value =
            serde_json::from_str(&swc_report(4, r#"{"sigma":[1]}"#)).unwrap();
        assert_eq!(out["swc"]["total"], "1+x+w");
        assert_eq!(out["agreement"], true);
        assert_eq!(out["degree"], 2);
    }

    #[test]
    fn rejects_bad_input() {
        let out: serde_json::Value = serde_json::from_str(&swc_report(3, r#"{"chi_r":1}"#)).unwrap();
        assert!(out["error"].is_string());
    }

    #[test]
    fn detection_report_shape() {
        let out: serde_json::Value = serde_json::from_str(&detection_report(10)).unwrap();
        assert_eq!(out["all_ok"], true);
        assert_eq!(out["rows"].as_array().unwrap().len(), 11);
    }

    #[test]
    fn product_report_shape() {
        let out: serde_json::Value = serde_json::from_str(&product_spin_report(
            8,
            r#"{"sigma":[0,2]}"#,
            8,
            r#"{"sigma":[0,2]}"#,
        ))
        .unwrap();
        assert_eq!(out["spinorial"], true);
    }
}
