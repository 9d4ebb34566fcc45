//! Flat, schema-stable report records and their JSON and CSV encodings.
//!
//! Verify and analyze reports emit one record per `(word, k)` pair; CSV is
//! a column-for-column projection of the JSON fields. Exact rationals
//! serialize as numerator/denominator pairs. The big exponent sums use
//! decimal strings because mixed denominators outgrow fixed-width integers;
//! bounds and counts stay plain integers.

use crate::error::Error;
use crate::index::FactorIndex;
use crate::power::summarize;
use crate::rational::big_ratio_strings;
use crate::search::SearchOutcome;
use crate::verify::VerificationReport;
use crate::word::Word;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CheckFlags {
    pub theorem: bool,
    pub conjecture: bool,
    pub corollary_literal: bool,
    pub minus_one_variant: bool,
    pub marker_count: bool,
    pub fine_wilf: bool,
    pub lemma_special: bool,
    pub lemma_disjoint: bool,
    pub sentinel_facts: bool,
    pub per_length: bool,
    pub rs_subset: bool,
    pub formula_oracle: bool,
}

/// One verify row. `bound_*` is the main `(n - alph)/(k-2)` bound; the
/// conjectured `(k-1)` bound rides along in its own columns.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyRecord {
    pub word: String,
    pub n: u64,
    pub alph: u64,
    pub k: u32,
    #[serde(rename = "N_k")]
    pub n_k: u64,
    pub bound_num: u64,
    pub bound_den: u64,
    pub holds: bool,
    #[serde(rename = "M")]
    pub m: u64,
    #[serde(rename = "S_int")]
    pub s_int: u64,
    #[serde(rename = "S_real_num")]
    pub s_real_num: String,
    #[serde(rename = "S_real_den")]
    pub s_real_den: String,
    pub s_real_pos_num: String,
    pub s_real_pos_den: String,
    pub s_minus_one_num: String,
    pub s_minus_one_den: String,
    pub s_cardinality: u64,
    pub conjecture_bound_num: u64,
    pub conjecture_bound_den: u64,
    pub conjecture_holds: bool,
    pub checks: CheckFlags,
}

pub fn verify_records(report: &VerificationReport) -> Vec<VerifyRecord> {
    let (s_real_num, s_real_den) = big_ratio_strings(&report.corollary.s_real);
    let (s_pos_num, s_pos_den) = big_ratio_strings(&report.corollary.s_real_pos);
    let (s_m1_num, s_m1_den) = big_ratio_strings(&report.summary.s_minus_one);
    report
        .theorem
        .iter()
        .zip(&report.conjecture)
        .map(|(t, c)| VerifyRecord {
            word: report.word.to_text(),
            n: report.n,
            alph: report.alph,
            k: t.k,
            n_k: t.n_k,
            bound_num: t.bound.num,
            bound_den: t.bound.den,
            holds: t.holds,
            m: report.m_special,
            s_int: report.corollary.s_int,
            s_real_num: s_real_num.clone(),
            s_real_den: s_real_den.clone(),
            s_real_pos_num: s_pos_num.clone(),
            s_real_pos_den: s_pos_den.clone(),
            s_minus_one_num: s_m1_num.clone(),
            s_minus_one_den: s_m1_den.clone(),
            s_cardinality: report.corollary.s_cardinality,
            conjecture_bound_num: c.bound.num,
            conjecture_bound_den: c.bound.den,
            conjecture_holds: c.holds,
            checks: CheckFlags {
                theorem: t.holds,
                conjecture: c.holds,
                corollary_literal: report.corollary.corollary_literal_holds,
                minus_one_variant: c.holds_vs_m,
                marker_count: report.corollary.marker_count_holds,
                fine_wilf: report.lemmas.fine_wilf_holds,
                lemma_special: report.lemmas.lemma_special_holds,
                lemma_disjoint: report.lemmas.lemma_disjoint_holds,
                sentinel_facts: report.lemmas.sentinel_facts_hold,
                per_length: report.structure.per_length_holds,
                rs_subset: report.structure.rs_subset_holds,
                formula_oracle: t.n_k == t.n_k_oracle,
            },
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TopExponent {
    pub root: String,
    pub num: u64,
    pub den: u64,
}

/// One analyze row. The bound columns are absent for `k = 2`, where the
/// main bound's denominator would vanish.
#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeRecord {
    pub word: String,
    pub n: u64,
    pub alph: u64,
    pub k: u32,
    #[serde(rename = "N_k")]
    pub n_k: u64,
    pub bound_num: Option<u64>,
    pub bound_den: Option<u64>,
    pub holds: Option<bool>,
    #[serde(rename = "M")]
    pub m: u64,
    pub distinct_factors: u64,
    pub primitive_factors: u64,
    pub c_profile: Vec<u64>,
    pub c_star_profile: Vec<u64>,
    pub s_star_profile: Vec<u64>,
    pub top_exponents: Vec<TopExponent>,
}

/// Per-word surface quantities: complexity profiles, right-special counts,
/// top exponents and the k-power counts. Accepts `k >= 2`.
pub fn analyze_records(word: &Word, ks: &[u32]) -> Result<Vec<AnalyzeRecord>, Error> {
    if word.has_sentinel() {
        return Err(Error::SentinelInOperand);
    }
    if let Some(&k) = ks.iter().find(|&&k| k < 2) {
        return Err(Error::InvalidK { k });
    }
    let index = FactorIndex::build(word);
    let index_star = FactorIndex::build(&word.append_sentinel()?);
    let summary = summarize(&index, ks, 5);
    let c_profile = index.factor_complexity().counts().to_vec();
    let c_star_profile = index_star.factor_complexity().counts().to_vec();
    let special = index_star.count_right_special();
    let n = word.len() as u64;
    let alph = word.alphabet_len() as u64;
    let top_exponents: Vec<TopExponent> = summary
        .top_exponents
        .iter()
        .map(|(root, m)| TopExponent { root: root.to_text(), num: m.num(), den: m.den() })
        .collect();
    Ok(ks
        .iter()
        .map(|&k| {
            let (bound_num, bound_den, holds) = if k >= 3 {
                let bound = n - alph;
                let den = (k - 2) as u64;
                let holds = summary.n_k[&k] as u128 * den as u128 <= bound as u128;
                (Some(bound), Some(den), Some(holds))
            } else {
                (None, None, None)
            };
            AnalyzeRecord {
                word: word.to_text(),
                n,
                alph,
                k,
                n_k: summary.n_k[&k],
                bound_num,
                bound_den,
                holds,
                m: special.total,
                distinct_factors: summary.distinct_factors,
                primitive_factors: summary.primitive_count,
                c_profile: c_profile.clone(),
                c_star_profile: c_star_profile.clone(),
                s_star_profile: special.per_length.clone(),
                top_exponents: top_exponents.clone(),
            }
        })
        .collect())
}

pub fn to_json_line<T: Serialize>(record: &T) -> String {
    serde_json::to_string(record).expect("report records serialize")
}

pub fn outcome_json(outcome: &SearchOutcome) -> String {
    serde_json::to_string_pretty(outcome).expect("outcomes serialize")
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn join_counts(counts: &[u64]) -> String {
    counts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

pub const VERIFY_CSV_HEADER: &str = "word,n,alph,k,N_k,bound_num,bound_den,holds,M,S_int,\
S_real_num,S_real_den,s_real_pos_num,s_real_pos_den,s_minus_one_num,s_minus_one_den,\
s_cardinality,conjecture_bound_num,conjecture_bound_den,conjecture_holds,\
check_theorem,check_conjecture,check_corollary_literal,check_minus_one_variant,\
check_marker_count,check_fine_wilf,check_lemma_special,check_lemma_disjoint,\
check_sentinel_facts,check_per_length,check_rs_subset,check_formula_oracle";

pub fn verify_csv_row(r: &VerifyRecord) -> String {
    let c = &r.checks;
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        csv_escape(&r.word),
        r.n,
        r.alph,
        r.k,
        r.n_k,
        r.bound_num,
        r.bound_den,
        r.holds,
        r.m,
        r.s_int,
        r.s_real_num,
        r.s_real_den,
        r.s_real_pos_num,
        r.s_real_pos_den,
        r.s_minus_one_num,
        r.s_minus_one_den,
        r.s_cardinality,
        r.conjecture_bound_num,
        r.conjecture_bound_den,
        r.conjecture_holds,
        c.theorem,
        c.conjecture,
        c.corollary_literal,
        c.minus_one_variant,
        c.marker_count,
        c.fine_wilf,
        c.lemma_special,
        c.lemma_disjoint,
        c.sentinel_facts,
        c.per_length,
        c.rs_subset,
        c.formula_oracle,
    )
}

pub const ANALYZE_CSV_HEADER: &str = "word,n,alph,k,N_k,bound_num,bound_den,holds,M,\
distinct_factors,primitive_factors,c_profile,c_star_profile,s_star_profile,top_exponents";

pub fn analyze_csv_row(r: &AnalyzeRecord) -> String {
    let opt = |v: &Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
    let tops = r
        .top_exponents
        .iter()
        .map(|t| format!("{}={}/{}", t.root, t.num, t.den))
        .collect::<Vec<_>>()
        .join(" ");
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        csv_escape(&r.word),
        r.n,
        r.alph,
        r.k,
        r.n_k,
        opt(&r.bound_num),
        opt(&r.bound_den),
        r.holds.map(|h| h.to_string()).unwrap_or_default(),
        r.m,
        r.distinct_factors,
        r.primitive_factors,
        csv_escape(&join_counts(&r.c_profile)),
        csv_escape(&join_counts(&r.c_star_profile)),
        csv_escape(&join_counts(&r.s_star_profile)),
        csv_escape(&tops),
    )
}
