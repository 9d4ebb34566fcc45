//! A deterministic factor-recognition structure built as a suffix automaton.
//!
//! Construction is online and linear in the source length (up to the
//! log-size transition maps). The automaton recognizes exactly the factors
//! of the source word; states group factors by their occurrence-end sets,
//! so every factor in a state shares one right-extension letter set. That
//! makes distinct-factor counts per length, right-extension queries and
//! right-special enumeration direct reads off the state table.

use crate::error::Error;
use crate::word::{Letter, Word};
use std::collections::{BTreeMap, BTreeSet};

const NO_LINK: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub(crate) struct State {
    /// Length of the longest factor in this state.
    pub(crate) len: u32,
    /// Suffix link; `NO_LINK` on the root.
    pub(crate) link: u32,
    pub(crate) next: BTreeMap<Letter, u32>,
    /// End position (exclusive) of the first occurrence of this state's
    /// factors in the source.
    pub(crate) first_end: u32,
}

/// Factor index over one word, sentinel-augmented or not. Immutable once
/// built; queries never mutate.
pub struct FactorIndex {
    source: Word,
    states: Vec<State>,
}

impl FactorIndex {
    pub fn build(source: &Word) -> Self {
        let mut states = vec![State {
            len: 0,
            link: NO_LINK,
            next: BTreeMap::new(),
            first_end: 0,
        }];
        let mut last = 0u32;
        for (i, &c) in source.letters().iter().enumerate() {
            let cur = states.len() as u32;
            states.push(State {
                len: states[last as usize].len + 1,
                link: 0,
                next: BTreeMap::new(),
                first_end: i as u32 + 1,
            });
            let mut p = last;
            loop {
                if p == NO_LINK {
                    states[cur as usize].link = 0;
                    break;
                }
                if let Some(&q) = states[p as usize].next.get(&c) {
                    if states[q as usize].len == states[p as usize].len + 1 {
                        states[cur as usize].link = q;
                    } else {
                        let clone = states.len() as u32;
                        let mut cloned = states[q as usize].clone();
                        cloned.len = states[p as usize].len + 1;
                        states.push(cloned);
                        while p != NO_LINK && states[p as usize].next.get(&c) == Some(&q) {
                            states[p as usize].next.insert(c, clone);
                            p = states[p as usize].link;
                        }
                        states[q as usize].link = clone;
                        states[cur as usize].link = clone;
                    }
                    break;
                }
                states[p as usize].next.insert(c, cur);
                p = states[p as usize].link;
            }
            last = cur;
        }
        FactorIndex { source: source.clone(), states }
    }

    pub fn source(&self) -> &Word {
        &self.source
    }

    pub(crate) fn states(&self) -> &[State] {
        &self.states
    }

    /// Shortest-factor length minus one for a state, i.e. the `len` of its
    /// suffix link (0 for children of the root).
    pub(crate) fn link_len(&self, s: usize) -> u32 {
        let link = self.states[s].link;
        if link == NO_LINK {
            0
        } else {
            self.states[link as usize].len
        }
    }

    pub(crate) fn step(&self, state: usize, c: Letter) -> Option<usize> {
        self.states[state].next.get(&c).map(|&s| s as usize)
    }

    fn state_for(&self, u: &Word) -> Option<usize> {
        let mut s = 0usize;
        for &c in u.letters() {
            s = self.step(s, c)?;
        }
        Some(s)
    }

    /// True iff `u` is a factor of the source, including the empty word.
    pub fn contains_factor(&self, u: &Word) -> bool {
        self.contains_letters(u.letters())
    }

    pub(crate) fn contains_letters(&self, letters: &[Letter]) -> bool {
        let mut s = 0usize;
        for &c in letters {
            match self.step(s, c) {
                Some(next) => s = next,
                None => return false,
            }
        }
        true
    }

    /// The letters `x` with `ux` a factor of the source.
    pub fn right_extensions(&self, u: &Word) -> Result<BTreeSet<Letter>, Error> {
        let s = self.state_for(u).ok_or(Error::NotAFactor)?;
        Ok(self.states[s].next.keys().copied().collect())
    }

    /// Distinct-factor counts per length.
    pub fn factor_complexity(&self) -> ComplexityProfile {
        let n = self.source.len();
        let mut diff = vec![0i64; n + 2];
        for s in 1..self.states.len() {
            let lo = self.link_len(s) as usize + 1;
            let hi = self.states[s].len as usize;
            diff[lo] += 1;
            diff[hi + 1] -= 1;
        }
        let mut counts = Vec::with_capacity(n);
        let mut acc = 0i64;
        for d in diff.iter().take(n + 1).skip(1) {
            acc += d;
            counts.push(acc as u64);
        }
        ComplexityProfile { counts }
    }

    /// All non-empty right-special factors, materialized. The empty word is
    /// excluded even when it has two extensions.
    pub fn right_special_factors(&self) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        self.for_each_right_special(|slice| {
            out.insert(Word::from_letters_unchecked(slice.to_vec()));
        });
        out
    }

    /// Visits every right-special factor as a slice, without allocating.
    pub(crate) fn for_each_right_special(&self, mut f: impl FnMut(&[Letter])) {
        for s in 1..self.states.len() {
            if self.states[s].next.len() < 2 {
                continue;
            }
            let end = self.states[s].first_end as usize;
            for len in self.link_len(s) as usize + 1..=self.states[s].len as usize {
                f(&self.source.letters()[end - len..end]);
            }
        }
    }

    /// `M` and the per-length breakdown `s(i)` for `i = 1..=|source|`,
    /// without materializing the factors.
    pub fn count_right_special(&self) -> RightSpecialCount {
        let n = self.source.len();
        let mut diff = vec![0i64; n + 2];
        let mut total = 0u64;
        for s in 1..self.states.len() {
            if self.states[s].next.len() < 2 {
                continue;
            }
            let lo = self.link_len(s) as usize + 1;
            let hi = self.states[s].len as usize;
            diff[lo] += 1;
            diff[hi + 1] -= 1;
            total += (hi - lo + 1) as u64;
        }
        let mut per_length = Vec::with_capacity(n);
        let mut acc = 0i64;
        for d in diff.iter().take(n + 1).skip(1) {
            acc += d;
            per_length.push(acc as u64);
        }
        RightSpecialCount { total, per_length }
    }

}

/// `counts[i - 1]` is the number of distinct factors of length `i`;
/// `at` extends the profile with `C(0) = 1` and `C(i) = 0` past the length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityProfile {
    counts: Vec<u64>,
}

impl ComplexityProfile {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn at(&self, i: usize) -> u64 {
        if i == 0 {
            1
        } else {
            self.counts.get(i - 1).copied().unwrap_or(0)
        }
    }

    /// Total number of distinct non-empty factors.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightSpecialCount {
    /// `M`: the number of non-empty right-special factors.
    pub total: u64,
    /// `per_length[i - 1]` counts the right-special factors of length `i`.
    pub per_length: Vec<u64>,
}
