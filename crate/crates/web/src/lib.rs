//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export returns a JSON string (or an error message), and the page
//! renders it. Counts are sent as decimal strings because they can exceed
//! the range JavaScript numbers hold exactly.

use std::str::FromStr;

use rscount::algebra::prime_power;
use rscount::census::{CensusCache, CensusError};
use rscount::closedform::{rs, Family, GroupSpec, Parity};
use rscount::genfun::{closed_side, gf_count, group_series, verify_lemma_with, LemmaId, QValue};
use rscount::oracle::{oracle_count, OracleError};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Enumeration budget for the page, small enough to stay interactive.
pub const BROWSER_CAP: u64 = 200_000;

const MAX_RANK: u32 = 200;
const MAX_TERMS: usize = 60;

fn family(s: &str) -> Result<Family, String> {
    Family::from_str(s.trim()).map_err(|e| e.to_string())
}

/// Closed-form, generating-function and (when affordable) enumeration
/// counts for ranks `1..=n_max`.
#[wasm_bindgen(js_name = countTable)]
pub fn count_table(group: &str, q: u32, n_max: u32) -> Result<String, String> {
    let family = family(group)?;
    if n_max == 0 || n_max > MAX_RANK {
        return Err(format!("n-max must be between 1 and {MAX_RANK}"));
    }
    if prime_power(q.into()).is_none() {
        return Err(format!("q={q} is not a prime power"));
    }
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let g = GroupSpec::new(family, n, q.into()).map_err(|e| e.to_string())?;
        let formula = rs(&g).map_err(|e| e.to_string())?;
        let genfun = gf_count(&g).map_err(|e| e.to_string())?;
        let oracle = match oracle_count(&g, BROWSER_CAP) {
            Ok(r) => Some(r.count.to_string()),
            Err(OracleError::BoundExceeded { .. }) | Err(OracleError::Census(CensusError::BoundExceeded { .. })) => None,
            Err(e) => return Err(e.to_string()),
        };
        let agree = formula == genfun && oracle.as_ref().is_none_or(|o| *o == formula.to_string());
        rows.push(json!({
            "n": n,
            "name": g.name(),
            "formula": formula.to_string(),
            "genfun": genfun.to_string(),
            "oracle": oracle,
            "agree": agree,
        }));
    }
    Ok(json!({ "group": family.token(), "q": q, "rows": rows }).to_string())
}

/// Both sides of an identity at a concrete q.
#[wasm_bindgen(js_name = verifyLemma)]
pub fn verify_lemma(lemma: &str, q: u32, terms: u32) -> Result<String, String> {
    let id = LemmaId::from_str(lemma.trim()).map_err(|e| e.to_string())?;
    let terms = terms as usize;
    if terms > MAX_TERMS {
        return Err(format!("at most {MAX_TERMS} terms"));
    }
    let cache = CensusCache::new(BROWSER_CAP);
    let report = verify_lemma_with(&cache, id, q.into(), terms).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

/// Series coefficients as polynomials in q. `q` is either an integer or
/// `even`/`odd` to keep q symbolic. `source` is a family token or an
/// identity id, in which case the rational side is shown.
#[wasm_bindgen(js_name = seriesCoefficients)]
pub fn series_coefficients(source: &str, q: &str, terms: u32) -> Result<String, String> {
    let terms = terms as usize;
    if terms > MAX_TERMS {
        return Err(format!("at most {MAX_TERMS} terms"));
    }
    let qv = match q.trim() {
        "even" => QValue::Symbolic(Parity::Even),
        "odd" => QValue::Symbolic(Parity::Odd),
        other => match other.parse::<u64>() {
            Ok(v) if v >= 2 => QValue::Int(v),
            _ => return Err(format!("q must be an integer >= 2, \"even\" or \"odd\"; got {other:?}")),
        },
    };
    let series = match family(source) {
        Ok(f) => group_series(f, qv, terms),
        Err(_) => {
            let id = LemmaId::from_str(source.trim()).map_err(|_| format!("unknown family or identity {source:?}"))?;
            closed_side(id, qv, terms)
        }
    }
    .map_err(|e| e.to_string())?;
    let coeffs: Vec<Value> = series.coeffs().iter().map(|c| json!(c.to_string())).collect();
    Ok(json!({ "source": source.trim(), "q": q.trim(), "coeffs": coeffs }).to_string())
}
