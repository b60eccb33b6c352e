//! WebAssembly bindings for the static demo in `www/`.
//!
//! The `api` functions take and return JSON text so they can be tested
//! natively; the exported wrappers turn errors into thrown JS strings.

use wasm_bindgen::prelude::*;

/// Largest rank the page will enumerate; the count grows quickly past this.
pub const MAX_DEMO_RANK: i64 = 24;

pub mod api {
    use serde_json::{json, Value};
    use spectra_core::hn::{hnp_from_points, polygon_geq, slopes, HnPolygon, RankDegreePoint};
    use spectra_core::spectrum::{
        cohomology_table, enumerate_spectra, vanishing_thresholds, Spectrum, SpectrumConstraints,
    };

    use super::MAX_DEMO_RANK;

    fn points(text: &str) -> Result<Vec<RankDegreePoint>, String> {
        serde_json::from_str(text).map_err(|e| format!("points: {e}"))
    }

    fn polygon(text: &str, which: &str) -> Result<HnPolygon, String> {
        HnPolygon::from_vertices(points(text)?)
            .ok_or_else(|| format!("{which}: vertices do not form a concave polygon from [0,0]"))
    }

    /// Upper hull of `points_json` with endpoint (`total_rank`, `total_degree`).
    pub fn hull(points_json: &str, total_rank: u64, total_degree: i64) -> Result<String, String> {
        let total = RankDegreePoint::new(total_rank, total_degree);
        let p = hnp_from_points(&points(points_json)?, total).map_err(|e| e.to_string())?;
        Ok(json!({ "vertices": p, "slopes": slopes(&p) }).to_string())
    }

    pub fn compare(p_json: &str, q_json: &str) -> Result<String, String> {
        let (p, q) = (polygon(p_json, "first")?, polygon(q_json, "second")?);
        let geq = |a, b| polygon_geq(a, b).map_err(|e| e.to_string());
        Ok(json!({ "p_geq_q": geq(&p, &q)?, "q_geq_p": geq(&q, &p)? }).to_string())
    }

    pub fn enumerate(r: i64, d: i64, connected: bool, symmetric: bool, bounds: bool) -> Result<String, String> {
        if r > MAX_DEMO_RANK {
            return Err(format!("rank above {MAX_DEMO_RANK} is left to the command line tool"));
        }
        let c = SpectrumConstraints { connected, symmetric, bounds, window: None };
        let all = enumerate_spectra(r, d, &c).map_err(|e| e.to_string())?;
        let thresholds = vanishing_thresholds(r, d).ok();
        Ok(json!({
            "spectra": all,
            "labels": all.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "thresholds": thresholds,
        })
        .to_string())
    }

    /// Accepts the full serialized form or a bare `{"j": m}` map.
    pub fn cohomology(spectrum_json: &str, lmin: i64, lmax: i64) -> Result<String, String> {
        if lmin > lmax {
            return Err("lmin exceeds lmax".into());
        }
        let s: Spectrum = serde_json::from_str(spectrum_json).map_err(|e| format!("spectrum: {e}"))?;
        let rows: Vec<Value> = cohomology_table(&s, lmin, lmax)
            .into_iter()
            .map(|row| json!(row))
            .collect();
        Ok(json!({ "spectrum": s.to_string(), "rows": rows }).to_string())
    }
}

fn throw(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn hull(points_json: &str, total_rank: u32, total_degree: i32) -> Result<String, JsValue> {
    throw(api::hull(points_json, total_rank.into(), total_degree.into()))
}

#[wasm_bindgen]
pub fn compare(p_json: &str, q_json: &str) -> Result<String, JsValue> {
    throw(api::compare(p_json, q_json))
}

#[wasm_bindgen]
pub fn enumerate(r: i32, d: i32, connected: bool, symmetric: bool, bounds: bool) -> Result<String, JsValue> {
    throw(api::enumerate(r.into(), d.into(), connected, symmetric, bounds))
}

#[wasm_bindgen]
pub fn cohomology(spectrum_json: &str, lmin: i32, lmax: i32) -> Result<String, JsValue> {
    throw(api::cohomology(spectrum_json, lmin.into(), lmax.into()))
}
