//! Browser bindings for the word-power toolkit: analyze a word, verify the
//! bounds on it, or sweep a small exhaustive space, each returning a JSON
//! payload for the demo page to render.
//!
//! Everything here also compiles natively so the payload shapes stay under
//! ordinary unit tests; the wasm-bindgen attributes only matter on the
//! `wasm32` target.

use serde::Serialize;
use std::collections::BTreeSet;
use wasm_bindgen::prelude::*;
use wordpower::index::FactorIndex;
use wordpower::power::repetitive_roots;
use wordpower::report::{analyze_records, verify_records, AnalyzeRecord, VerifyRecord};
use wordpower::search::{exhaustive_search, CheckId, SearchConfig, SearchOutcome};
use wordpower::verify::verify_word;
use wordpower::Word;

const MAX_ANALYZE_LEN: usize = 512;
const MAX_VERIFY_LEN: usize = 128;
const MAX_EXPLORE_LEN: usize = 13;
const EXPLORE_BUDGET: u64 = 400_000;

#[derive(Serialize)]
#[serde(untagged)]
enum Payload<T: Serialize> {
    Ok(T),
    Err { error: String },
}

fn to_json<T: Serialize>(result: Result<T, String>) -> String {
    let payload = match result {
        Ok(value) => Payload::Ok(value),
        Err(error) => Payload::Err { error },
    };
    serde_json::to_string(&payload).expect("demo payloads serialize")
}

fn parse_ks(csv: &str, min: u32) -> Result<Vec<u32>, String> {
    let ks: Result<Vec<u32>, _> = csv
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse::<u32>)
        .collect();
    let ks = ks.map_err(|e| format!("bad k list: {e}"))?;
    if ks.is_empty() {
        return Err("at least one k value is required".into());
    }
    if let Some(&k) = ks.iter().find(|&&k| k < min) {
        return Err(format!("k must be at least {min}, got {k}"));
    }
    Ok(ks)
}

fn parse_word(text: &str, cap: usize) -> Result<Word, String> {
    let word = Word::from_text(text.trim());
    if word.is_empty() {
        return Err("enter a non-empty word".into());
    }
    if word.len() > cap {
        return Err(format!("word is {} letters; the demo caps this view at {cap}", word.len()));
    }
    Ok(word)
}

#[derive(Serialize)]
struct RootView {
    root: String,
    exponent: String,
    markers: Vec<String>,
}

#[derive(Serialize)]
struct AnalysisView {
    records: Vec<AnalyzeRecord>,
    /// Per-length slack bound `C(i+1) - C(i) + 1` over `w*`, aligned with
    /// the `s(w*)` profile for charting.
    per_length_bound: Vec<i64>,
    roots: Vec<RootView>,
    right_special: Vec<String>,
    right_special_total: u64,
}

/// Full per-word analysis as JSON. `ks_csv` like `"3,4,5"` (k >= 2).
#[wasm_bindgen]
pub fn analyze(text: &str, ks_csv: &str) -> String {
    to_json(analyze_impl(text, ks_csv))
}

fn analyze_impl(text: &str, ks_csv: &str) -> Result<AnalysisView, String> {
    let ks = parse_ks(ks_csv, 2)?;
    let word = parse_word(text, MAX_ANALYZE_LEN)?;
    let records = analyze_records(&word, &ks).map_err(|e| e.to_string())?;

    let star = word.append_sentinel().map_err(|e| e.to_string())?;
    let index_star = FactorIndex::build(&star);
    let profile = index_star.factor_complexity();
    let per_length_bound = (1..=star.len())
        .map(|i| profile.at(i + 1) as i64 - profile.at(i) as i64 + 1)
        .collect();

    let index = FactorIndex::build(&word);
    let roots = repetitive_roots(&index)
        .into_iter()
        .take(12)
        .map(|rec| RootView {
            root: rec.root.to_text(),
            exponent: rec.exponent.to_string(),
            markers: rec.markers.iter().map(Word::to_text).collect(),
        })
        .collect();

    let special: BTreeSet<Word> = index_star.right_special_factors();
    let right_special_total = special.len() as u64;
    let right_special = special.iter().take(64).map(Word::to_text).collect();

    Ok(AnalysisView {
        records,
        per_length_bound,
        roots,
        right_special,
        right_special_total,
    })
}

#[derive(Serialize)]
struct VerifyView {
    records: Vec<VerifyRecord>,
    hard_checks_pass: bool,
    findings: Vec<String>,
}

/// Every check on one word as JSON. `ks_csv` like `"3,4,5"` (k >= 3).
#[wasm_bindgen]
pub fn verify(text: &str, ks_csv: &str) -> String {
    to_json(verify_impl(text, ks_csv))
}

fn verify_impl(text: &str, ks_csv: &str) -> Result<VerifyView, String> {
    let ks = parse_ks(ks_csv, 3)?;
    let word = parse_word(text, MAX_VERIFY_LEN)?;
    let report = verify_word(&word, &ks).map_err(|e| e.to_string())?;
    Ok(VerifyView {
        records: verify_records(&report),
        hard_checks_pass: report.hard_checks_pass(),
        findings: report.findings(),
    })
}

/// Exhaustive sweep of every canonical word up to `max_len` over
/// `alphabet` letters, all checks enabled.
#[wasm_bindgen]
pub fn explore(alphabet: u32, max_len: u32, ks_csv: &str) -> String {
    to_json(explore_impl(alphabet, max_len, ks_csv))
}

fn explore_impl(alphabet: u32, max_len: u32, ks_csv: &str) -> Result<SearchOutcome, String> {
    let ks = parse_ks(ks_csv, 3)?;
    if !(1..=3).contains(&alphabet) {
        return Err("the demo explores alphabets of 1 to 3 letters".into());
    }
    if max_len as usize > MAX_EXPLORE_LEN {
        return Err(format!("the demo caps exhaustive sweeps at length {MAX_EXPLORE_LEN}"));
    }
    let cfg = SearchConfig {
        alphabet_size: alphabet,
        max_len: max_len as usize,
        checks: CheckId::ALL.into_iter().collect(),
        ks,
        budget: EXPLORE_BUDGET,
        workers: 1,
    };
    exhaustive_search(&cfg).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_payload_carries_example_values() {
        let json = analyze("abababacababa", "3");
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["records"][0]["N_k"], 2);
        assert_eq!(v["records"][0]["M"], 5);
        assert_eq!(v["roots"][0]["root"], "ab");
        assert_eq!(v["roots"][0]["exponent"], "7/2");
        assert_eq!(v["roots"][0]["markers"][1], "ababa");
        assert_eq!(v["right_special"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn verify_payload_reports_findings() {
        let json = verify("abababacababa", "3,4,5");
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["hard_checks_pass"], true);
        assert_eq!(v["records"][0]["checks"]["marker_count"], true);
        let findings = v["findings"].as_array().unwrap();
        assert_eq!(findings.len(), 1);
        assert!(findings[0].as_str().unwrap().starts_with("minus_one_variant"));
    }

    #[test]
    fn explore_payload_summarizes_space() {
        let json = explore(2, 7, "3");
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["stats"]["words_examined"], 127);
        assert_eq!(v["stats"]["hard_violations"], 0);
    }

    #[test]
    fn errors_become_json() {
        let v: serde_json::Value = serde_json::from_str(&analyze("", "3")).unwrap();
        assert!(v["error"].as_str().unwrap().contains("non-empty"));
        let v: serde_json::Value = serde_json::from_str(&verify("aaa", "2")).unwrap();
        assert!(v["error"].as_str().unwrap().contains("at least 3"));
        let v: serde_json::Value = serde_json::from_str(&explore(9, 5, "3")).unwrap();
        assert!(v["error"].as_str().unwrap().contains("alphabets"));
    }
}
