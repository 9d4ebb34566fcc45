//! Exhaustive and seeded-random search campaigns.
//!
//! Exhaustive spaces are enumerated up to alphabet renaming: a word is
//! canonical when each first occurrence of a new letter introduces the next
//! unused letter id. Every quantity the harness checks is invariant under
//! renaming, so the quotient loses nothing and cuts the space by up to
//! `|Alph|!`.
//!
//! Outcomes are deterministic: words are generated in one fixed order,
//! evaluated through an order-preserving parallel map, and merged by that
//! order, so results are byte-identical across runs and worker counts.
//! Wall-clock timings are deliberately kept out of the outcome.

use crate::error::Error;
use crate::parallel::map_ordered;
use crate::verify::{verify_word, CheckSelection, VerificationReport};
use crate::word::{Letter, Word};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// Check groups selectable in a campaign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckId {
    Theorem,
    Corollary,
    Conjecture,
    Lemmas,
}

impl CheckId {
    pub const ALL: [CheckId; 4] =
        [CheckId::Theorem, CheckId::Corollary, CheckId::Conjecture, CheckId::Lemmas];
}

impl std::str::FromStr for CheckId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "theorem" => Ok(CheckId::Theorem),
            "corollary" => Ok(CheckId::Corollary),
            "conjecture" => Ok(CheckId::Conjecture),
            "lemmas" => Ok(CheckId::Lemmas),
            other => Err(format!("unknown check id: {other}")),
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckId::Theorem => "theorem",
            CheckId::Corollary => "corollary",
            CheckId::Conjecture => "conjecture",
            CheckId::Lemmas => "lemmas",
        };
        f.write_str(s)
    }
}

pub fn selection_from(checks: &BTreeSet<CheckId>) -> CheckSelection {
    CheckSelection {
        theorem: checks.contains(&CheckId::Theorem),
        corollary: checks.contains(&CheckId::Corollary),
        conjecture: checks.contains(&CheckId::Conjecture),
        lemmas: checks.contains(&CheckId::Lemmas),
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub alphabet_size: u32,
    pub max_len: usize,
    pub checks: BTreeSet<CheckId>,
    pub ks: Vec<u32>,
    /// Word-count cap; the canonical space must fit under it.
    pub budget: u64,
    pub workers: usize,
}

#[derive(Clone, Debug)]
pub struct RandomConfig {
    pub seed: u64,
    pub count: u64,
    pub len: usize,
    pub alphabet_size: u32,
    pub checks: BTreeSet<CheckId>,
    pub ks: Vec<u32>,
    pub workers: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpaceDescriptor {
    pub mode: String,
    pub alphabet_size: u32,
    pub max_len: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
    pub canonicalized: bool,
}

/// One failed check on one word.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Violation {
    pub check: String,
    pub word: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub detail: String,
}

/// A word ranked by how close it pushes `N_k` to the main bound.
#[derive(Clone, Debug, Serialize)]
pub struct TightnessEntry {
    pub word: String,
    pub k: u32,
    pub n_k: u64,
    pub bound_num: u64,
    pub bound_den: u64,
    /// Ratio `N_k * (k-2) / (n - |Alph|)` as an exact pair.
    pub ratio_num: u64,
    pub ratio_den: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchStats {
    pub words_examined: u64,
    pub findings: u64,
    pub hard_violations: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub space: SpaceDescriptor,
    /// Failed unproven claims, in enumeration order. Each entry has been
    /// re-verified in isolation before being listed.
    pub counterexamples: Vec<Violation>,
    /// Failed proven facts. Any entry is an internal defect.
    pub hard_violations: Vec<Violation>,
    /// Top tightness ratios, largest first.
    pub extremal: Vec<TightnessEntry>,
    pub stats: SearchStats,
}

const EXTREMAL_CAP: usize = 10;

/// Number of canonical words of length `1..=max_len` over at most
/// `alphabet_size` letters, saturating.
pub fn canonical_word_count(alphabet_size: u32, max_len: usize) -> u128 {
    let a = alphabet_size as usize;
    let mut total: u128 = 0;
    // per_used[u] = canonical words of the current length using exactly u+1 letters
    let mut per_used: Vec<u128> = Vec::new();
    for _len in 1..=max_len {
        if per_used.is_empty() {
            per_used = vec![0; a];
            if a > 0 {
                per_used[0] = 1;
            }
        } else {
            let mut next = vec![0u128; a];
            for u in 0..a {
                let stay = per_used[u].saturating_mul((u + 1) as u128);
                let grow = if u > 0 { per_used[u - 1] } else { 0 };
                next[u] = stay.saturating_add(grow);
            }
            per_used = next;
        }
        for &c in &per_used {
            total = total.saturating_add(c);
        }
    }
    total
}

/// All canonical words of length `1..=max_len`, in length-then-lexicographic
/// order. Letters are `a, b, c, ...` in first-occurrence order.
pub fn canonical_words(alphabet_size: u32, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut ids: Vec<u8> = Vec::new();
    for len in 1..=max_len {
        ids.clear();
        ids.resize(len, 0);
        descend(alphabet_size, &mut ids, 0, 0, &mut out);
    }
    out
}

fn descend(alphabet: u32, ids: &mut Vec<u8>, pos: usize, used: u32, out: &mut Vec<Word>) {
    if pos == ids.len() {
        out.push(word_from_ids(ids));
        return;
    }
    let choices = if used < alphabet { used + 1 } else { alphabet };
    for id in 0..choices {
        ids[pos] = id as u8;
        let next_used = used.max(id + 1);
        descend(alphabet, ids, pos + 1, next_used, out);
    }
}

pub(crate) fn word_from_ids(ids: &[u8]) -> Word {
    Word::from_letters_unchecked(
        ids.iter().map(|&i| Letter::Ordinary('a' as u32 + i as u32)).collect(),
    )
}

/// Canonical form under letter renaming: letters are relabeled in first
/// occurrence order. All checked quantities are invariant under this map.
pub fn canonicalize(word: &Word) -> Word {
    let mut mapping: Vec<u32> = Vec::new();
    let letters = word
        .letters()
        .iter()
        .map(|l| match l {
            Letter::Sentinel => Letter::Sentinel,
            Letter::Ordinary(c) => {
                let id = match mapping.iter().position(|&m| m == *c) {
                    Some(i) => i,
                    None => {
                        mapping.push(*c);
                        mapping.len() - 1
                    }
                };
                Letter::Ordinary('a' as u32 + id as u32)
            }
        })
        .collect();
    Word::from_letters_unchecked(letters)
}

/// splitmix64; the whole generator state is the seed, so campaigns are
/// reproducible across platforms.
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

pub fn random_words(seed: u64, count: u64, len: usize, alphabet_size: u32) -> Vec<Word> {
    let mut rng = SplitMix64::new(seed);
    (0..count)
        .map(|_| {
            let ids: Vec<u8> = (0..len)
                .map(|_| (rng.next_u64() % alphabet_size as u64) as u8)
                .collect();
            word_from_ids(&ids)
        })
        .collect()
}

/// Exhaustively checks every canonical word of the configured space.
pub fn exhaustive_search(cfg: &SearchConfig) -> Result<SearchOutcome, Error> {
    assert!(cfg.alphabet_size >= 1 && cfg.alphabet_size <= 26);
    let required = canonical_word_count(cfg.alphabet_size, cfg.max_len);
    if required > cfg.budget as u128 {
        return Err(Error::BudgetExceeded { required, budget: cfg.budget });
    }
    let words = canonical_words(cfg.alphabet_size, cfg.max_len);
    let space = SpaceDescriptor {
        mode: "exhaustive".into(),
        alphabet_size: cfg.alphabet_size,
        max_len: cfg.max_len,
        seed: None,
        count: None,
        canonicalized: true,
    };
    run_campaign(words, space, &cfg.checks, &cfg.ks, cfg.workers)
}

/// Checks `count` seeded random words of the configured shape.
pub fn random_search(cfg: &RandomConfig) -> Result<SearchOutcome, Error> {
    assert!(cfg.alphabet_size >= 1 && cfg.alphabet_size <= 26);
    let words = random_words(cfg.seed, cfg.count, cfg.len, cfg.alphabet_size);
    let space = SpaceDescriptor {
        mode: "random".into(),
        alphabet_size: cfg.alphabet_size,
        max_len: cfg.len,
        seed: Some(cfg.seed),
        count: Some(cfg.count),
        canonicalized: false,
    };
    run_campaign(words, space, &cfg.checks, &cfg.ks, cfg.workers)
}

struct WordVerdicts {
    findings: Vec<Violation>,
    hards: Vec<Violation>,
    ratios: Vec<TightnessEntry>,
}

fn run_campaign(
    words: Vec<Word>,
    space: SpaceDescriptor,
    checks: &BTreeSet<CheckId>,
    ks: &[u32],
    workers: usize,
) -> Result<SearchOutcome, Error> {
    if let Some(&k) = ks.iter().find(|&&k| k < 3) {
        return Err(Error::InvalidK { k });
    }
    let sel = selection_from(checks);
    let verdicts = map_ordered(&words, workers, |word| {
        let report = verify_word(word, ks).expect("generated words are sentinel-free");
        collect_verdicts(&report, &sel)
    });

    let mut counterexamples = Vec::new();
    let mut hard_violations = Vec::new();
    let mut extremal: Vec<TightnessEntry> = Vec::new();
    for v in verdicts {
        counterexamples.extend(v.findings);
        hard_violations.extend(v.hards);
        for entry in v.ratios {
            push_extremal(&mut extremal, entry);
        }
    }

    // Re-verify each finding in isolation; a non-reproducing finding is an
    // internal defect.
    let failures = map_ordered(&counterexamples, workers, |v| {
        let word = Word::from_text(&v.word);
        let report = verify_word(&word, ks).expect("finding words re-verify");
        let again = collect_verdicts(&report, &sel);
        if again.findings.contains(v) {
            None
        } else {
            Some(Violation {
                check: "reverify".into(),
                word: v.word.clone(),
                k: v.k,
                detail: format!("finding did not reproduce: {}", v.detail),
            })
        }
    });
    hard_violations.extend(failures.into_iter().flatten());

    let stats = SearchStats {
        words_examined: words.len() as u64,
        findings: counterexamples.len() as u64,
        hard_violations: hard_violations.len() as u64,
    };
    Ok(SearchOutcome { space, counterexamples, hard_violations, extremal, stats })
}

fn collect_verdicts(report: &VerificationReport, sel: &CheckSelection) -> WordVerdicts {
    let word = report.word.to_text();
    let mut findings = Vec::new();
    let mut hards = Vec::new();
    let mut ratios = Vec::new();

    if sel.theorem {
        for t in &report.theorem {
            if t.n_k != t.n_k_oracle {
                hards.push(Violation {
                    check: "formula_oracle".into(),
                    word: word.clone(),
                    k: Some(t.k),
                    detail: format!("formula N={} oracle N={}", t.n_k, t.n_k_oracle),
                });
            }
            if !t.holds {
                hards.push(Violation {
                    check: "theorem".into(),
                    word: word.clone(),
                    k: Some(t.k),
                    detail: format!("N_{} = {} > {}", t.k, t.n_k, t.bound),
                });
            }
            if t.n_k > 0 && report.n > report.alph {
                ratios.push(TightnessEntry {
                    word: word.clone(),
                    k: t.k,
                    n_k: t.n_k,
                    bound_num: t.bound.num,
                    bound_den: t.bound.den,
                    ratio_num: t.n_k * (t.k as u64 - 2),
                    ratio_den: report.n - report.alph,
                });
            }
        }
        if !report.structure.per_length_holds {
            hards.push(Violation {
                check: "per_length".into(),
                word: word.clone(),
                k: None,
                detail: "s(w*)(i) > C(i+1) - C(i) + 1 for some i".into(),
            });
        }
        if !report.structure.telescoped_holds {
            hards.push(Violation {
                check: "telescoped".into(),
                word: word.clone(),
                k: None,
                detail: format!("M = {} > n - alph = {}", report.m_special, report.n - report.alph),
            });
        }
        if !report.structure.rs_subset_holds {
            hards.push(Violation {
                check: "rs_subset".into(),
                word: word.clone(),
                k: None,
                detail: "right-special factor of w* missing from Fac(w)".into(),
            });
        }
    }

    if sel.corollary {
        if !report.corollary.marker_count_holds {
            hards.push(Violation {
                check: "marker_count".into(),
                word: word.clone(),
                k: None,
                detail: format!(
                    "S_int = {} > M = {}",
                    report.corollary.s_int, report.corollary.m_special
                ),
            });
        }
        if !report.corollary.corollary_literal_holds {
            findings.push(Violation {
                check: "corollary_literal".into(),
                word: word.clone(),
                k: None,
                detail: format!(
                    "S_real = {} > M = {}",
                    report.corollary.s_real, report.corollary.m_special
                ),
            });
        }
    }

    if sel.conjecture {
        for c in &report.conjecture {
            if !c.holds {
                findings.push(Violation {
                    check: "conjecture".into(),
                    word: word.clone(),
                    k: Some(c.k),
                    detail: format!("N_{} = {} > {}", c.k, c.n_k, c.bound),
                });
            }
        }
        if let Some(c) = report.conjecture.first() {
            if !c.holds_vs_m {
                findings.push(Violation {
                    check: "minus_one_variant".into(),
                    word: word.clone(),
                    k: None,
                    detail: format!(
                        "sum(m(u)-1) = {} > M = {}",
                        c.s_minus_one, report.m_special
                    ),
                });
            }
        }
    }

    if sel.lemmas {
        if !report.lemmas.fine_wilf_holds {
            hards.push(Violation {
                check: "fine_wilf".into(),
                word: word.clone(),
                k: None,
                detail: "premises held but gcd period failed".into(),
            });
        }
        if !report.lemmas.lemma_special_holds {
            hards.push(Violation {
                check: "lemma_special".into(),
                word: word.clone(),
                k: None,
                detail: "a marker u(i), i <= m(u)-1, is not right-special in w*".into(),
            });
        }
        if !report.lemmas.lemma_disjoint_holds {
            hards.push(Violation {
                check: "lemma_disjoint".into(),
                word: word.clone(),
                k: None,
                detail: "marker sets of distinct roots with m >= 3 intersect".into(),
            });
        }
        if !report.lemmas.sentinel_facts_hold {
            hards.push(Violation {
                check: "sentinel_facts".into(),
                word: word.clone(),
                k: None,
                detail: "m changed under sentinel augmentation".into(),
            });
        }
    }

    WordVerdicts { findings, hards, ratios }
}

fn push_extremal(top: &mut Vec<TightnessEntry>, entry: TightnessEntry) {
    let pos = top
        .binary_search_by(|probe| {
            // descending ratio, then ascending word, then ascending k
            let lhs = entry.ratio_num as u128 * probe.ratio_den as u128;
            let rhs = probe.ratio_num as u128 * entry.ratio_den as u128;
            lhs.cmp(&rhs)
                .then_with(|| probe.word.cmp(&entry.word))
                .then_with(|| probe.k.cmp(&entry.k))
        })
        .unwrap_or_else(|p| p);
    if pos < EXTREMAL_CAP {
        top.insert(pos, entry);
        top.truncate(EXTREMAL_CAP);
    }
}
