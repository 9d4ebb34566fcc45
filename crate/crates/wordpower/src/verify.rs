//! Every displayed inequality as an executable check.
//!
//! Checks split into two classes. Proven facts (the marker lemmas, the
//! sentinel facts, the per-length inequality and its telescoped form, the
//! main k-power bound, and agreement between the closed formula and the
//! brute-force counter) must never fail; a violation is an internal defect.
//! Unproven claims (the literal corollary sum, the stronger conjectured
//! bound, and the `sum(m(u)-1)` variant) are recorded as findings, never
//! asserted.

use crate::error::Error;
use crate::index::FactorIndex;
use crate::power::{
    check_sentinel_facts, enumerate_k_powers_naive, repetitive_roots, summarize,
    PowerSummary, PrimitiveFactorRecord,
};
use crate::rational::gcd_u64;
use crate::word::Word;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// Exact bound `(|w| - |Alph(w)|) / den` as an integer pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub num: u64,
    pub den: u64,
}

impl Bound {
    pub fn admits(&self, count: u64) -> bool {
        count as u128 * self.den as u128 <= self.num as u128
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_multiple_of(self.den) {
            write!(f, "{}", self.num / self.den)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Which check groups to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckSelection {
    pub theorem: bool,
    pub corollary: bool,
    pub conjecture: bool,
    pub lemmas: bool,
}

impl CheckSelection {
    pub fn all() -> Self {
        CheckSelection { theorem: true, corollary: true, conjecture: true, lemmas: true }
    }
}

#[derive(Clone, Debug)]
pub struct TheoremCheck {
    pub k: u32,
    pub n_k: u64,
    pub n_k_oracle: u64,
    pub bound: Bound,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct ConjectureCheck {
    pub k: u32,
    pub n_k: u64,
    pub bound: Bound,
    pub holds: bool,
    /// `sum (m(u) - 1)` over all primitive factors.
    pub s_minus_one: BigRational,
    /// The strengthened marker-sum reading: `sum (m(u) - 1) <= M(w*)`.
    pub holds_vs_m: bool,
}

#[derive(Clone, Debug)]
pub struct CorollaryCheck {
    /// `sum #{ integer i : 2 <= i <= m(u) - 1 }` over primitive factors.
    pub s_int: u64,
    /// Literal sum `sum (m(u) - 2)` over all primitive factors.
    pub s_real: BigRational,
    /// Same sum restricted to `m(u) >= 3`.
    pub s_real_pos: BigRational,
    pub m_special: u64,
    /// Cardinality of the materialized marker set
    /// `{ u(i) : u primitive, 2 <= i <= m(u) - 1 }`.
    pub s_cardinality: u64,
    /// Proven reading: `s_int <= M(w*)`.
    pub marker_count_holds: bool,
    /// Literal reading: `s_real <= M(w*)`.
    pub corollary_literal_holds: bool,
}

#[derive(Clone, Debug)]
pub struct LemmaSpecialWitness {
    pub root: Word,
    pub index: u64,
    pub marker: Word,
}

#[derive(Clone, Debug)]
pub struct LemmaChecks {
    /// Fine and Wilf over every period pair `k, l <= |w|`.
    pub fine_wilf_holds: bool,
    /// Every `u(i)` with `1 <= i <= m(u)-1` is right-special in `w*`.
    pub lemma_special_holds: bool,
    pub lemma_special_witnesses: Vec<LemmaSpecialWitness>,
    /// Marker sets of distinct roots with `m >= 3` are pairwise disjoint.
    pub lemma_disjoint_holds: bool,
    /// Exponents survive sentinel augmentation; new factors have `m = 1`.
    pub sentinel_facts_hold: bool,
}

#[derive(Clone, Debug)]
pub struct StructureChecks {
    /// `s(w*)(i) <= C(i+1) - C(i) + 1` for every length.
    pub per_length_holds: bool,
    /// Telescoped form `M(w*) <= |w| - |Alph(w)|`.
    pub telescoped_holds: bool,
    /// Every right-special factor of `w*` is a factor of `w`.
    pub rs_subset_holds: bool,
}

/// Everything the harness knows about one word after a full pass.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub word: Word,
    pub n: u64,
    pub alph: u64,
    pub m_special: u64,
    pub theorem: Vec<TheoremCheck>,
    pub conjecture: Vec<ConjectureCheck>,
    pub corollary: CorollaryCheck,
    pub lemmas: LemmaChecks,
    pub structure: StructureChecks,
    pub summary: PowerSummary,
}

impl VerificationReport {
    /// True iff every proven-fact check passed. A `false` here is an
    /// internal defect, not a finding.
    pub fn hard_checks_pass(&self) -> bool {
        self.theorem
            .iter()
            .all(|t| t.holds && t.n_k == t.n_k_oracle)
            && self.corollary.marker_count_holds
            && self.lemmas.fine_wilf_holds
            && self.lemmas.lemma_special_holds
            && self.lemmas.lemma_disjoint_holds
            && self.lemmas.sentinel_facts_hold
            && self.structure.per_length_holds
            && self.structure.telescoped_holds
            && self.structure.rs_subset_holds
    }

    /// Human-readable descriptions of every failed unproven claim.
    pub fn findings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.corollary.corollary_literal_holds {
            out.push(format!(
                "corollary_literal: S_real = {} > M = {}",
                self.corollary.s_real, self.corollary.m_special
            ));
        }
        for c in &self.conjecture {
            if !c.holds {
                out.push(format!(
                    "conjecture k={}: N_{} = {} > {}",
                    c.k, c.k, c.n_k, c.bound
                ));
            }
        }
        if let Some(c) = self.conjecture.first() {
            if !c.holds_vs_m {
                out.push(format!(
                    "minus_one_variant: sum(m(u)-1) = {} > M = {}",
                    c.s_minus_one, self.m_special
                ));
            }
        }
        out
    }
}

/// Shared per-word material the check groups draw from.
struct WordContext {
    word: Word,
    index: FactorIndex,
    index_star: FactorIndex,
    summary: PowerSummary,
    m_special: u64,
}

impl WordContext {
    fn new(word: &Word, ks: &[u32]) -> Result<Self, Error> {
        if word.has_sentinel() {
            return Err(Error::SentinelInOperand);
        }
        let index = FactorIndex::build(word);
        let index_star = FactorIndex::build(&word.append_sentinel()?);
        let summary = summarize(&index, ks, 5);
        let m_special = index_star.count_right_special().total;
        Ok(WordContext { word: word.clone(), index, index_star, summary, m_special })
    }

    fn roots(&self) -> Vec<PrimitiveFactorRecord> {
        repetitive_roots(&self.index)
    }
}

fn validate_ks(ks: &[u32]) -> Result<(), Error> {
    match ks.iter().find(|&&k| k < 3) {
        Some(&k) => Err(Error::InvalidK { k }),
        None => Ok(()),
    }
}

fn theorem_checks(ctx: &WordContext, ks: &[u32]) -> Vec<TheoremCheck> {
    let n = ctx.word.len() as u64;
    let alph = ctx.word.alphabet_len() as u64;
    ks.iter()
        .map(|&k| {
            let n_k = ctx.summary.n_k[&k];
            let n_k_oracle = enumerate_k_powers_naive(&ctx.word, k).len() as u64;
            let bound = Bound { num: n - alph, den: (k - 2) as u64 };
            TheoremCheck { k, n_k, n_k_oracle, bound, holds: bound.admits(n_k) }
        })
        .collect()
}

fn conjecture_checks(ctx: &WordContext, ks: &[u32]) -> Vec<ConjectureCheck> {
    let n = ctx.word.len() as u64;
    let alph = ctx.word.alphabet_len() as u64;
    let m_rat = BigRational::from_integer(BigInt::from(ctx.m_special));
    let holds_vs_m = ctx.summary.s_minus_one <= m_rat;
    ks.iter()
        .map(|&k| {
            let n_k = ctx.summary.n_k[&k];
            let bound = Bound { num: n - alph, den: (k - 1) as u64 };
            ConjectureCheck {
                k,
                n_k,
                bound,
                holds: bound.admits(n_k),
                s_minus_one: ctx.summary.s_minus_one.clone(),
                holds_vs_m,
            }
        })
        .collect()
}

fn corollary_check(ctx: &WordContext, roots: &[PrimitiveFactorRecord]) -> CorollaryCheck {
    let s_cardinality = marker_set(roots).len() as u64;
    let m_rat = BigRational::from_integer(BigInt::from(ctx.m_special));
    CorollaryCheck {
        s_int: ctx.summary.s_int,
        s_real: ctx.summary.s_real.clone(),
        s_real_pos: ctx.summary.s_real_pos.clone(),
        m_special: ctx.m_special,
        s_cardinality,
        marker_count_holds: ctx.summary.s_int <= ctx.m_special,
        corollary_literal_holds: ctx.summary.s_real <= m_rat,
    }
}

/// The set `{ u(i) : u primitive, 2 <= i <= m(u) - 1 }`.
fn marker_set(roots: &[PrimitiveFactorRecord]) -> BTreeSet<Word> {
    let mut set = BTreeSet::new();
    for rec in roots {
        for i in 2..=rec.exponent.floor_sub(1) {
            set.insert(rec.marker(i).expect("marker range within floor(m)").clone());
        }
    }
    set
}

fn lemma_checks(ctx: &WordContext, roots: &[PrimitiveFactorRecord]) -> LemmaChecks {
    // Periods in bulk: p is a period iff the Z-array matches to the end,
    // which turns the all-pairs sweep into constant work per pair.
    let n = ctx.word.len();
    let mut z = Vec::new();
    crate::power::z_array(ctx.word.letters(), &mut z);
    let has_period = |p: usize| p >= n || z[p] as usize == n - p;
    let mut fine_wilf_holds = true;
    'outer: for k in 1..=n {
        for l in k..=n {
            let g = gcd_u64(k as u64, l as u64) as usize;
            let premises = has_period(k) && has_period(l) && n >= k + l - g;
            if premises && !has_period(g) {
                fine_wilf_holds = false;
                break 'outer;
            }
        }
    }

    let mut lemma_special_holds = true;
    let mut witnesses = Vec::new();
    for rec in roots {
        for i in 1..=rec.exponent.floor_sub(1) {
            let mk = rec.marker(i).expect("marker range within floor(m)");
            let special = ctx
                .index_star
                .right_extensions(mk)
                .map(|ext| ext.len() >= 2)
                .unwrap_or(false);
            if !special {
                lemma_special_holds = false;
            }
            witnesses.push(LemmaSpecialWitness {
                root: rec.root.clone(),
                index: i,
                marker: mk.clone(),
            });
        }
    }

    // Within one root, markers have pairwise distinct lengths, so any
    // collision must involve two distinct roots.
    let mut inserted = 0u64;
    let set = {
        let mut set = BTreeSet::new();
        for rec in roots.iter().filter(|r| r.exponent.at_least_int(3)) {
            for i in 2..=rec.exponent.floor_sub(1) {
                set.insert(rec.marker(i).expect("marker range within floor(m)").clone());
                inserted += 1;
            }
        }
        set
    };
    let lemma_disjoint_holds = set.len() as u64 == inserted;

    LemmaChecks {
        fine_wilf_holds,
        lemma_special_holds,
        lemma_special_witnesses: witnesses,
        lemma_disjoint_holds,
        sentinel_facts_hold: check_sentinel_facts(&ctx.word),
    }
}

fn structure_checks(ctx: &WordContext) -> StructureChecks {
    let profile = ctx.index_star.factor_complexity();
    let special = ctx.index_star.count_right_special();
    let star_len = ctx.word.len() + 1;
    let mut per_length_holds = true;
    for i in 1..=star_len {
        let lhs = special.per_length[i - 1] as i128;
        let rhs = profile.at(i + 1) as i128 - profile.at(i) as i128 + 1;
        if lhs > rhs {
            per_length_holds = false;
            break;
        }
    }
    let telescoped_holds =
        special.total <= (ctx.word.len() - ctx.word.alphabet_len()) as u64;
    let mut rs_subset_holds = true;
    ctx.index_star.for_each_right_special(|slice| {
        if !ctx.index.contains_letters(slice) {
            rs_subset_holds = false;
        }
    });
    StructureChecks { per_length_holds, telescoped_holds, rs_subset_holds }
}

/// Runs every check on one word. All requested `k` values must be at
/// least 3.
pub fn verify_word(word: &Word, ks: &[u32]) -> Result<VerificationReport, Error> {
    validate_ks(ks)?;
    let ctx = WordContext::new(word, ks)?;
    let roots = ctx.roots();
    Ok(VerificationReport {
        n: ctx.word.len() as u64,
        alph: ctx.word.alphabet_len() as u64,
        m_special: ctx.m_special,
        theorem: theorem_checks(&ctx, ks),
        conjecture: conjecture_checks(&ctx, ks),
        corollary: corollary_check(&ctx, &roots),
        lemmas: lemma_checks(&ctx, &roots),
        structure: structure_checks(&ctx),
        summary: ctx.summary,
        word: ctx.word,
    })
}

/// Lemma check: every marker of every primitive root with `m(u) >= 2` is
/// right-special in `w*`.
pub fn check_lemma_special(word: &Word) -> Result<(bool, Vec<LemmaSpecialWitness>), Error> {
    let ctx = WordContext::new(word, &[])?;
    let lemmas = lemma_checks(&ctx, &ctx.roots());
    Ok((lemmas.lemma_special_holds, lemmas.lemma_special_witnesses))
}

/// Lemma check: marker sets of distinct primitive roots with `m >= 3` are
/// pairwise disjoint.
pub fn check_lemma_disjoint(word: &Word) -> Result<bool, Error> {
    let ctx = WordContext::new(word, &[])?;
    Ok(lemma_checks(&ctx, &ctx.roots()).lemma_disjoint_holds)
}

/// Both readings of the corollary plus the materialized marker set.
pub fn check_corollary(word: &Word) -> Result<CorollaryCheck, Error> {
    let ctx = WordContext::new(word, &[])?;
    Ok(corollary_check(&ctx, &ctx.roots()))
}

/// Per-length inequality and its telescoped consequence.
pub fn check_per_length_inequality(word: &Word) -> Result<bool, Error> {
    let ctx = WordContext::new(word, &[])?;
    let s = structure_checks(&ctx);
    Ok(s.per_length_holds && s.telescoped_holds)
}

/// The main bound for one `k >= 3`, with both counters.
pub fn check_theorem(word: &Word, k: u32) -> Result<TheoremCheck, Error> {
    validate_ks(&[k])?;
    let ctx = WordContext::new(word, &[k])?;
    Ok(theorem_checks(&ctx, &[k]).pop().expect("one k requested"))
}

/// The conjectured stronger bound for one `k >= 3`, plus the marker-sum
/// variant. Recorded, never asserted.
pub fn check_conjecture(word: &Word, k: u32) -> Result<ConjectureCheck, Error> {
    validate_ks(&[k])?;
    let ctx = WordContext::new(word, &[k])?;
    Ok(conjecture_checks(&ctx, &[k]).pop().expect("one k requested"))
}
