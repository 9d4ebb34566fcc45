//! Brute-force oracles shared by the integration suites. Everything here
//! works straight from the definitions: nested-loop substring sets,
//! occurrence scans, divisor-test primitivity. None of it touches the
//! automaton or the exponent scan it is used to check.
#![allow(dead_code)] // each test target uses its own subset

use std::collections::{BTreeMap, BTreeSet};
use wordpower::{Letter, Word};

/// O(n^3)-ish factor oracle: materializes every distinct substring.
pub struct NaiveFactorOracle {
    pub source: Word,
    pub factors: BTreeSet<Word>,
}

impl NaiveFactorOracle {
    pub fn build(source: &Word) -> Self {
        let mut factors = BTreeSet::new();
        for i in 0..source.len() {
            for j in i + 1..=source.len() {
                factors.insert(source.factor(i, j));
            }
        }
        NaiveFactorOracle { source: source.clone(), factors }
    }

    pub fn complexity(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.source.len()];
        for f in &self.factors {
            counts[f.len() - 1] += 1;
        }
        counts
    }

    pub fn contains(&self, u: &Word) -> bool {
        u.is_empty() || self.factors.contains(u)
    }

    pub fn right_extensions(&self, u: &Word) -> BTreeSet<Letter> {
        let letters = self.source.letters();
        let mut out = BTreeSet::new();
        for start in 0..self.source.len().saturating_sub(u.len()) {
            if &letters[start..start + u.len()] == u.letters() {
                out.insert(letters[start + u.len()]);
            }
        }
        out
    }

    pub fn right_special(&self) -> BTreeSet<Word> {
        self.factors
            .iter()
            .filter(|u| self.right_extensions(u).len() >= 2)
            .cloned()
            .collect()
    }
}

/// Largest matched length of a period-|u| extension over all occurrences.
pub fn naive_max_matched(host: &Word, u: &Word) -> Option<u64> {
    let letters = host.letters();
    let p = u.len();
    let mut best = 0usize;
    for j in 0..host.len().saturating_sub(p - 1) {
        if &letters[j..j + p] != u.letters() {
            continue;
        }
        let mut a = p;
        while j + a < host.len() && letters[j + a] == letters[j + a - p] {
            a += 1;
        }
        best = best.max(a);
    }
    (best > 0).then_some(best as u64)
}

pub fn naive_is_primitive(u: &Word) -> bool {
    !(1..u.len()).any(|p| u.len().is_multiple_of(p) && u.has_period(p))
}

/// Exponent table for all primitive factors, straight from the definitions.
pub fn naive_primitive_exponents(word: &Word) -> BTreeMap<Word, (u64, u64)> {
    let oracle = NaiveFactorOracle::build(word);
    let mut out = BTreeMap::new();
    for u in &oracle.factors {
        if u.letters().iter().any(|l| l.is_sentinel()) || !naive_is_primitive(u) {
            continue;
        }
        let matched = naive_max_matched(word, u).expect("factor occurs");
        out.insert(u.clone(), (matched, u.len() as u64));
    }
    out
}

/// Runs `f` over every word of exactly `len` letters over `alph` letters.
pub fn for_each_word(alph: u32, len: usize, mut f: impl FnMut(&Word)) {
    let mut ids = vec![0u32; len];
    loop {
        let word = Word::from_letters(
            ids.iter().map(|&i| Letter::Ordinary('a' as u32 + i)).collect(),
        )
        .expect("no sentinel involved");
        f(&word);
        let mut i = 0;
        while i < len {
            ids[i] += 1;
            if ids[i] < alph {
                break;
            }
            ids[i] = 0;
            i += 1;
        }
        if i == len {
            break;
        }
    }
}
