//! Maximal fractional exponents `m(u)`, marker factors `u(i)`, the
//! primitive-factor inventory, and the two distinct-k-power counters.
//!
//! `m(u)` is the largest rational `a/|u|` such that `u^(a/|u|)` is a factor
//! of the host word. It is computed by extending every occurrence of `u`
//! rightwards with period `|u|` and keeping the longest match. The batch
//! scan does this for all distinct factors at once: for each suffix start
//! `j` a Z-array gives the period-`p` extension of `w[j..j+p)` for every
//! `p`, and a parallel walk through the factor index names the distinct
//! factor each `(j, p)` pair belongs to.

use crate::error::Error;
use crate::index::FactorIndex;
use crate::rational::RationalExponent;
use crate::word::{fractional_power, is_primitive_slice, slice_has_period, Letter, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

/// Maximal fractional exponent of `u` inside `w`, by occurrence extension.
pub fn max_exponent(w: &Word, u: &Word) -> Result<RationalExponent, Error> {
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    let host = w.letters();
    let pat = u.letters();
    let p = pat.len();
    let mut best = 0usize;
    for j in 0..host.len().saturating_sub(p - 1) {
        if &host[j..j + p] != pat {
            continue;
        }
        let mut a = p;
        while j + a < host.len() && host[j + a] == host[j + a - p] {
            a += 1;
        }
        best = best.max(a);
    }
    if best == 0 {
        return Err(Error::NotAFactor);
    }
    Ok(RationalExponent::new(best as u64, p as u64))
}

/// Shortest suffix of `base` whose first `reps * |root|` letters spell
/// `root` repeated, i.e. the shortest suffix containing `root^reps` as a
/// prefix. `None` when no suffix qualifies.
pub fn shortest_suffix_with_prefix_power(base: &Word, root: &Word, reps: u64) -> Option<Word> {
    let need = (reps as usize).checked_mul(root.len())?;
    if need == 0 || need > base.len() {
        return None;
    }
    let letters = base.letters();
    let r = root.letters();
    'outer: for len in need..=base.len() {
        let suffix = &letters[base.len() - len..];
        for t in 0..need {
            if suffix[t] != r[t % r.len()] {
                continue 'outer;
            }
        }
        return Some(Word::from_letters_unchecked(suffix.to_vec()));
    }
    None
}

/// The marker `u(i)`: shortest suffix of `u^(m(u))` containing `u^i` as a
/// prefix. Restricted to primitive `u`; the unrestricted definition is
/// available through [`shortest_suffix_with_prefix_power`].
pub fn marker(w: &Word, u: &Word, i: u64) -> Result<Word, Error> {
    let m = max_exponent(w, u)?;
    if !u.is_primitive()? {
        return Err(Error::NotPrimitive);
    }
    if i < 1 || i > m.floor() {
        return Err(Error::MarkerIndexOutOfRange { index: i, max: m.floor() });
    }
    let base = fractional_power(u, m)?;
    Ok(shortest_suffix_with_prefix_power(&base, u, i)
        .expect("u^m contains u^i as a prefix for i <= floor(m)"))
}

/// A primitive factor with its maximal exponent and markers
/// `u(1) ..= u(floor(m))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveFactorRecord {
    pub root: Word,
    pub exponent: RationalExponent,
    pub markers: Vec<Word>,
}

impl PrimitiveFactorRecord {
    pub fn marker(&self, i: u64) -> Option<&Word> {
        if i == 0 {
            return None;
        }
        self.markers.get(i as usize - 1)
    }
}

/// Every primitive factor of a word, keyed by the factor itself.
#[derive(Clone, Debug)]
pub struct PowerInventory {
    word: Word,
    records: BTreeMap<Word, PrimitiveFactorRecord>,
}

impl PowerInventory {
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn records(&self) -> &BTreeMap<Word, PrimitiveFactorRecord> {
        &self.records
    }

    pub fn get(&self, u: &Word) -> Option<&PrimitiveFactorRecord> {
        self.records.get(u)
    }
}

/// One distinct factor as seen by the batch scan.
pub(crate) struct FactorVisit<'a> {
    pub slice: &'a [Letter],
    /// End offset (exclusive) of the first occurrence in the source.
    pub end: usize,
    /// Longest match `a`, so `m = a / slice.len()`.
    pub matched: u64,
    pub primitive: bool,
}

impl FactorVisit<'_> {
    pub(crate) fn exponent(&self) -> RationalExponent {
        RationalExponent::new(self.matched, self.slice.len() as u64)
    }
}

/// Visits every distinct non-empty factor of the indexed word once, with
/// its maximal exponent already computed. O(n^2) time, O(n^2 / word) extra
/// space for the per-factor maxima.
pub(crate) fn scan_factors(index: &FactorIndex, mut visit: impl FnMut(&FactorVisit)) {
    let letters = index.source().letters();
    let n = letters.len();
    let states = index.states();

    // Flat slot per distinct factor: state s covers lengths
    // (link_len(s), len(s)], laid out contiguously.
    let mut offsets = vec![0usize; states.len()];
    let mut total = 0usize;
    for s in 1..states.len() {
        offsets[s] = total;
        total += (states[s].len - index.link_len(s)) as usize;
    }
    let mut ext = vec![0u32; total];

    let mut z = Vec::new();
    for j in 0..n {
        z_array(&letters[j..], &mut z);
        let mut state = 0usize;
        for p in 1..=n - j {
            state = index
                .step(state, letters[j + p - 1])
                .expect("walking the source through its own index");
            let slot = offsets[state] + (p - index.link_len(state) as usize - 1);
            let a = p + if p < z.len() { z[p] as usize } else { 0 };
            ext[slot] = ext[slot].max(a as u32);
        }
    }

    for s in 1..states.len() {
        let end = states[s].first_end as usize;
        let lo = index.link_len(s) as usize + 1;
        for len in lo..=states[s].len as usize {
            let slice = &letters[end - len..end];
            visit(&FactorVisit {
                slice,
                end,
                matched: ext[offsets[s] + (len - lo)] as u64,
                primitive: is_primitive_slice(slice),
            });
        }
    }
}

/// Z-array: `z[t] = lcp(s, s[t..])` with `z[0] = |s|`.
pub(crate) fn z_array(s: &[Letter], z: &mut Vec<u32>) {
    let n = s.len();
    z.clear();
    z.resize(n, 0);
    if n == 0 {
        return;
    }
    z[0] = n as u32;
    let (mut l, mut r) = (0usize, 0usize);
    for t in 1..n {
        let mut k = 0usize;
        if t < r {
            k = (z[t - l] as usize).min(r - t);
        }
        while t + k < n && s[k] == s[t + k] {
            k += 1;
        }
        z[t] = k as u32;
        if t + k > r {
            l = t;
            r = t + k;
        }
    }
}

/// Full inventory with markers materialized for every primitive factor.
/// Quadratic in the word length; meant for desk-scale words.
pub fn build_inventory(w: &Word) -> Result<PowerInventory, Error> {
    if w.has_sentinel() {
        return Err(Error::SentinelInOperand);
    }
    let index = FactorIndex::build(w);
    let mut records = BTreeMap::new();
    scan_factors(&index, |v| {
        if !v.primitive {
            return;
        }
        let root = Word::from_letters_unchecked(v.slice.to_vec());
        let m = v.exponent();
        records.insert(root.clone(), materialize_record(root, m));
    });
    Ok(PowerInventory { word: w.clone(), records })
}

fn materialize_record(root: Word, m: RationalExponent) -> PrimitiveFactorRecord {
    let base = fractional_power(&root, m).expect("primitive root carries no sentinel");
    let markers = (1..=m.floor())
        .map(|i| {
            shortest_suffix_with_prefix_power(&base, &root, i)
                .expect("u^m contains u^i for i <= floor(m)")
        })
        .collect();
    PrimitiveFactorRecord { root, exponent: m, markers }
}

/// Records for the primitive factors with `m(u) >= 2`, sorted by root.
/// These are the only roots the marker lemmas quantify over.
pub fn repetitive_roots(index: &FactorIndex) -> Vec<PrimitiveFactorRecord> {
    let mut out = Vec::new();
    scan_factors(index, |v| {
        if v.primitive && v.matched >= 2 * v.slice.len() as u64 {
            let root = Word::from_letters_unchecked(v.slice.to_vec());
            out.push(materialize_record(root, v.exponent()));
        }
    });
    out.sort_by(|a, b| a.root.cmp(&b.root));
    out
}

/// Aggregates of the exponent scan used by reports and bounds: the k-power
/// counts, the marker-count sum, and the exact exponent sums.
#[derive(Clone, Debug)]
pub struct PowerSummary {
    pub distinct_factors: u64,
    pub primitive_count: u64,
    /// `N_k = sum over primitive u of floor(m(u)/k)`.
    pub n_k: BTreeMap<u32, u64>,
    /// Largest exponents, ties broken by root; at most the requested count.
    pub top_exponents: Vec<(Word, RationalExponent)>,
    /// `sum over primitive u of #{ integer i : 2 <= i <= m(u)-1 }`.
    pub s_int: u64,
    /// `sum (m(u) - 2)` over all primitive factors, exact.
    pub s_real: BigRational,
    /// Same sum restricted to `m(u) >= 3`.
    pub s_real_pos: BigRational,
    /// `sum (m(u) - 1)` over all primitive factors, exact.
    pub s_minus_one: BigRational,
}

pub fn summarize(index: &FactorIndex, ks: &[u32], top_n: usize) -> PowerSummary {
    let n = index.source().len();
    // Bucket the numerators by root length so the exact sums need one
    // rational addition per length instead of one per factor.
    let mut sum_a = vec![0u128; n + 1];
    let mut count = vec![0u64; n + 1];
    let mut sum_a_ge3 = vec![0u128; n + 1];
    let mut count_ge3 = vec![0u64; n + 1];
    let mut distinct = 0u64;
    let mut primitive_count = 0u64;
    let mut s_int = 0u64;
    let mut n_k: BTreeMap<u32, u64> = ks.iter().map(|&k| (k, 0)).collect();
    let mut top: Vec<(u32, u32, RationalExponent)> = Vec::new(); // (first_end, len, m)

    {
        let letters = index.source().letters();
        scan_factors(index, |v| {
            distinct += 1;
            if !v.primitive {
                return;
            }
            primitive_count += 1;
            let len = v.slice.len();
            sum_a[len] += v.matched as u128;
            count[len] += 1;
            let m = v.exponent();
            if v.matched >= 3 * len as u64 {
                sum_a_ge3[len] += v.matched as u128;
                count_ge3[len] += 1;
            }
            s_int += m.floor_sub(1).saturating_sub(1);
            for (&k, acc) in n_k.iter_mut() {
                *acc += v.matched / (len as u64 * k as u64);
            }
            if top_n > 0 {
                push_top(&mut top, letters, v.end as u32, len as u32, m, top_n);
            }
        });
    }

    let mut sum_m = BigRational::zero();
    let mut sum_m_ge3 = BigRational::zero();
    let mut total_count = 0i128;
    let mut total_count_ge3 = 0i128;
    for len in 1..=n {
        if count[len] > 0 {
            sum_m += BigRational::new(BigInt::from(sum_a[len]), BigInt::from(len));
            total_count += count[len] as i128;
        }
        if count_ge3[len] > 0 {
            sum_m_ge3 += BigRational::new(BigInt::from(sum_a_ge3[len]), BigInt::from(len));
            total_count_ge3 += count_ge3[len] as i128;
        }
    }
    let int_rat = |v: i128| BigRational::from_integer(BigInt::from(v));
    let s_real = &sum_m - int_rat(2 * total_count);
    let s_real_pos = &sum_m_ge3 - int_rat(2 * total_count_ge3);
    let s_minus_one = &sum_m - int_rat(total_count);

    let letters = index.source().letters();
    let top_exponents = top
        .into_iter()
        .map(|(end, len, m)| {
            let w = Word::from_letters_unchecked(
                letters[end as usize - len as usize..end as usize].to_vec(),
            );
            (w, m)
        })
        .collect();

    PowerSummary {
        distinct_factors: distinct,
        primitive_count,
        n_k,
        top_exponents,
        s_int,
        s_real,
        s_real_pos,
        s_minus_one,
    }
}

fn push_top(
    top: &mut Vec<(u32, u32, RationalExponent)>,
    letters: &[Letter],
    end: u32,
    len: u32,
    m: RationalExponent,
    cap: usize,
) {
    let slice = |e: u32, l: u32| &letters[(e - l) as usize..e as usize];
    let pos = top
        .binary_search_by(|probe| {
            // descending by exponent, ascending by root
            m.cmp(&probe.2)
                .then_with(|| slice(probe.0, probe.1).cmp(slice(end, len)))
        })
        .unwrap_or_else(|p| p);
    if pos < cap {
        top.insert(pos, (end, len, m));
        top.truncate(cap);
    }
}

/// Counts distinct k-powers through the closed formula
/// `N_k = sum floor(m(u)/k)` over the primitive inventory.
pub fn count_k_powers_formula(inventory: &PowerInventory, k: u32) -> u64 {
    assert!(k >= 2, "k-powers need k >= 2");
    inventory
        .records()
        .values()
        .map(|r| r.exponent.num() / (r.exponent.den() * k as u64))
        .sum()
}

/// Brute-force oracle: the set of distinct non-empty factors that are a
/// k-th power of some word. Independent of the index and the scan.
pub fn enumerate_k_powers_naive(w: &Word, k: u32) -> BTreeSet<Word> {
    assert!(k >= 2, "k-powers need k >= 2");
    let letters = w.letters();
    let n = letters.len();
    let k = k as usize;
    let mut out = BTreeSet::new();
    for start in 0..n {
        let mut len = k;
        while start + len <= n {
            let slice = &letters[start..start + len];
            if slice_has_period(slice, len / k) {
                out.insert(Word::from_letters_unchecked(slice.to_vec()));
            }
            len += k;
        }
    }
    out
}

/// Both exponent facts relating `w` and `w*`: exponents of factors of `w`
/// are unchanged by the sentinel, and factors new to `w*` have exponent 1.
pub fn check_sentinel_facts(w: &Word) -> bool {
    assert!(!w.has_sentinel());
    let plain = exponent_map(&FactorIndex::build(w));
    let starred = exponent_map(&FactorIndex::build(&w.append_sentinel().expect("sentinel-free")));
    for (u, &a) in &plain {
        match starred.get(u) {
            Some(&a_star) if a_star == a && a >= u.len() as u64 => {}
            _ => return false,
        }
    }
    for (u, &a) in &starred {
        if !plain.contains_key(u) && a != u.len() as u64 {
            return false;
        }
    }
    true
}

fn exponent_map(index: &FactorIndex) -> BTreeMap<Word, u64> {
    let mut map = BTreeMap::new();
    scan_factors(index, |v| {
        map.insert(Word::from_letters_unchecked(v.slice.to_vec()), v.matched);
    });
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_text(s)
    }

    const EXAMPLE: &str = "abababacababa";

    #[test]
    fn exponents_of_the_running_example() {
        let host = w(EXAMPLE);
        assert_eq!(max_exponent(&host, &w("ab")).unwrap(), RationalExponent::new(7, 2));
        assert_eq!(max_exponent(&host, &w("abab")).unwrap(), RationalExponent::new(7, 4));
        assert_eq!(max_exponent(&w("aaa"), &w("a")).unwrap(), RationalExponent::new(3, 1));
        assert_eq!(max_exponent(&host, &w("zz")), Err(Error::NotAFactor));
    }

    #[test]
    fn markers_of_the_running_example() {
        let host = w(EXAMPLE);
        assert_eq!(marker(&host, &w("ab"), 1).unwrap(), w("aba"));
        assert_eq!(marker(&host, &w("ab"), 2).unwrap(), w("ababa"));
        assert_eq!(marker(&host, &w("ab"), 3).unwrap(), w("abababa"));
        assert_eq!(marker(&w("aaa"), &w("a"), 2).unwrap(), w("aa"));
        assert_eq!(
            marker(&host, &w("ab"), 4),
            Err(Error::MarkerIndexOutOfRange { index: 4, max: 3 })
        );
        // abab = (ab)^2 is not primitive; the validated marker refuses it,
        // the definitional scan still answers.
        assert_eq!(marker(&host, &w("abab"), 1), Err(Error::NotPrimitive));
        let m = max_exponent(&host, &w("abab")).unwrap();
        let base = fractional_power(&w("abab"), m).unwrap();
        assert_eq!(
            shortest_suffix_with_prefix_power(&base, &w("abab"), 1).unwrap(),
            w("ababa")
        );
    }

    #[test]
    fn inventory_contents() {
        let inv = build_inventory(&w("aaa")).unwrap();
        assert_eq!(inv.records().len(), 1);
        let rec = inv.get(&w("a")).unwrap();
        assert_eq!(rec.exponent, RationalExponent::new(3, 1));
        assert_eq!(rec.markers, vec![w("a"), w("aa"), w("aaa")]);

        let inv = build_inventory(&w("ab")).unwrap();
        assert_eq!(inv.records().len(), 3);
        assert!(inv.records().values().all(|r| r.exponent.num() == r.exponent.den()));
        assert!(inv.get(&w("ba")).is_none());

        let inv = build_inventory(&w("abab")).unwrap();
        assert_eq!(inv.get(&w("ab")).unwrap().exponent, RationalExponent::new(4, 2));
        assert_eq!(inv.get(&w("ba")).unwrap().exponent, RationalExponent::new(3, 2));
        assert!(inv.get(&w("abab")).is_none()); // not primitive
    }

    #[test]
    fn formula_matches_paper_values() {
        let inv = build_inventory(&w("aaa")).unwrap();
        assert_eq!(count_k_powers_formula(&inv, 3), 1);
        let inv = build_inventory(&w(EXAMPLE)).unwrap();
        assert_eq!(count_k_powers_formula(&inv, 3), 2);
        let inv = build_inventory(&w("abc")).unwrap();
        assert_eq!(count_k_powers_formula(&inv, 3), 0);
    }

    #[test]
    fn naive_enumeration() {
        assert_eq!(enumerate_k_powers_naive(&w("aaa"), 3), BTreeSet::from([w("aaa")]));
        assert_eq!(
            enumerate_k_powers_naive(&w("aaaaaaaaa"), 3),
            BTreeSet::from([w("aaa"), w("aaaaaa"), w("aaaaaaaaa")])
        );
        assert!(enumerate_k_powers_naive(&w("abab"), 3).is_empty());
        assert_eq!(
            enumerate_k_powers_naive(&w(EXAMPLE), 3),
            BTreeSet::from([w("ababab"), w("bababa")])
        );
    }

    #[test]
    fn sentinel_facts_hold_on_examples() {
        assert!(check_sentinel_facts(&w(EXAMPLE)));
        assert!(check_sentinel_facts(&w("aaa")));
        assert!(check_sentinel_facts(&Word::empty()));
    }

    #[test]
    fn scan_agrees_with_single_factor_extension() {
        // Every distinct factor of every ternary word up to length 9.
        for len in 1..=9usize {
            for_each_word(3, len, |word| {
                let index = FactorIndex::build(word);
                scan_factors(&index, |v| {
                    let u = Word::from_letters_unchecked(v.slice.to_vec());
                    let direct = max_exponent(word, &u).unwrap();
                    assert_eq!(v.exponent(), direct, "{word} factor {u}");
                });
            });
        }
    }

    #[test]
    fn summary_counts_match_inventory() {
        let word = w(EXAMPLE);
        let index = FactorIndex::build(&word);
        let summary = summarize(&index, &[2, 3, 4, 5], 5);
        let inv = build_inventory(&word).unwrap();
        assert_eq!(summary.primitive_count, inv.records().len() as u64);
        for k in [2u32, 3, 4, 5] {
            assert_eq!(summary.n_k[&k], count_k_powers_formula(&inv, k), "k={k}");
        }
        // top exponent is m(ab) = 7/2
        assert_eq!(summary.top_exponents[0].0, w("ab"));
        assert_eq!(summary.top_exponents[0].1, RationalExponent::new(7, 2));
    }

    #[test]
    fn marker_well_formedness() {
        for len in 1..=8usize {
            for_each_word(2, len, |word| {
                let inv = build_inventory(word).unwrap();
                for rec in inv.records().values() {
                    let base = fractional_power(&rec.root, rec.exponent).unwrap();
                    for (idx, mk) in rec.markers.iter().enumerate() {
                        let i = idx as u64 + 1;
                        // starts with root^i
                        let prefix =
                            fractional_power(&rec.root, RationalExponent::new(i * rec.root.len() as u64, rec.root.len() as u64))
                                .unwrap();
                        assert!(mk.starts_with(&prefix));
                        // suffix of u^m
                        assert_eq!(
                            &base.letters()[base.len() - mk.len()..],
                            mk.letters()
                        );
                        // no shorter suffix qualifies
                        for shorter in prefix.len()..mk.len() {
                            let s = base.factor(base.len() - shorter, base.len());
                            assert!(!s.starts_with(&prefix));
                        }
                        // closed-form length
                        let rem = rec.exponent.num() % rec.exponent.den();
                        assert_eq!(mk.len() as u64, i * rec.root.len() as u64 + rem);
                    }
                }
            });
        }
    }

    /// Odometer over every word of the given length and alphabet size.
    fn for_each_word(alph: u32, len: usize, mut f: impl FnMut(&Word)) {
        let mut ids = vec![0u32; len];
        loop {
            let word = Word::from_letters_unchecked(
                ids.iter().map(|&i| Letter::Ordinary('a' as u32 + i)).collect(),
            );
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

    #[test]
    fn formula_equals_oracle_on_seeded_random_words() {
        // 1000 deterministic random words of length up to 64.
        let mut state = 0x5EEDu64;
        let mut next = move || {
            state = state.wrapping_add(0x9E3779B97F4A7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
            z ^ (z >> 31)
        };
        for _ in 0..1000 {
            let len = (next() % 64 + 1) as usize;
            let alph = next() % 2 + 2;
            let letters: Vec<Letter> = (0..len)
                .map(|_| Letter::Ordinary('a' as u32 + (next() % alph) as u32))
                .collect();
            let word = Word::from_letters_unchecked(letters);
            let inv = build_inventory(&word).unwrap();
            for k in [2u32, 3, 4, 5] {
                assert_eq!(
                    count_k_powers_formula(&inv, k),
                    enumerate_k_powers_naive(&word, k).len() as u64,
                    "{word} k={k}"
                );
            }
        }
    }
}
