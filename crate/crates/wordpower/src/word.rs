//! Finite words over small alphabets: letters, rational powers, periods,
//! primitivity, the Fine and Wilf lemma, and sentinel augmentation.
//!
//! Every type here is immutable after construction and safe to share across
//! threads.

use crate::error::Error;
use crate::rational::{gcd_u64, RationalExponent};
use std::collections::BTreeSet;
use std::fmt;

/// A single symbol. The sentinel is a distinguished terminator that compares
/// unequal to every ordinary letter, so any input text stays legal.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    Ordinary(u32),
    Sentinel,
}

impl Letter {
    pub fn from_char(c: char) -> Self {
        Letter::Ordinary(c as u32)
    }

    pub fn is_sentinel(&self) -> bool {
        matches!(self, Letter::Sentinel)
    }

    pub fn code(&self) -> Option<u32> {
        match self {
            Letter::Ordinary(c) => Some(*c),
            Letter::Sentinel => None,
        }
    }

    /// Render for reports. The sentinel prints as `*`; that is display
    /// convention only and never collides with an ordinary `*` internally.
    pub fn display_char(&self) -> char {
        match self {
            Letter::Ordinary(c) => char::from_u32(*c).unwrap_or('\u{FFFD}'),
            Letter::Sentinel => '*',
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_char())
    }
}

/// An immutable finite word. At most one sentinel may appear and only at the
/// final position; constructors enforce this.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    /// One letter per code point.
    pub fn from_text(text: &str) -> Self {
        Word {
            letters: text.chars().map(Letter::from_char).collect(),
        }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Result<Self, Error> {
        let last = letters.len().wrapping_sub(1);
        if letters.iter().enumerate().any(|(i, l)| l.is_sentinel() && i != last) {
            return Err(Error::MisplacedSentinel);
        }
        Ok(Word { letters })
    }

    /// For callers that already hold a slice of a valid word.
    pub(crate) fn from_letters_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(
            !letters
                .iter()
                .enumerate()
                .any(|(i, l)| l.is_sentinel() && i + 1 != letters.len()),
            "sentinel must be final"
        );
        Word { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn get(&self, i: usize) -> Option<Letter> {
        self.letters.get(i).copied()
    }

    pub fn has_sentinel(&self) -> bool {
        self.letters.last().is_some_and(Letter::is_sentinel)
    }

    /// The set of distinct ordinary letters; the sentinel is never a member.
    pub fn alphabet(&self) -> BTreeSet<Letter> {
        self.letters.iter().copied().filter(|l| !l.is_sentinel()).collect()
    }

    pub fn alphabet_len(&self) -> usize {
        self.alphabet().len()
    }

    /// The factor at `start..end`.
    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word::from_letters_unchecked(self.letters[start..end].to_vec())
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.letters.starts_with(&prefix.letters)
    }

    /// True iff `self[i] = self[i - p]` for every `i >= p`; equivalently the
    /// word is a rational power of its prefix of length `p`. Any `p >= len`
    /// is vacuously a period.
    pub fn has_period(&self, p: usize) -> bool {
        assert!(p >= 1, "period must be positive");
        (p..self.letters.len()).all(|i| self.letters[i] == self.letters[i - p])
    }

    /// True iff the word is not an integer power of a shorter word.
    pub fn is_primitive(&self) -> Result<bool, Error> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        if self.has_sentinel() {
            return Err(Error::SentinelInOperand);
        }
        Ok(is_primitive_slice(&self.letters))
    }

    /// The unique primitive `p` and exponent `e >= 1` with `self = p^e`.
    pub fn primitive_root(&self) -> Result<(Word, u64), Error> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        if self.has_sentinel() {
            return Err(Error::SentinelInOperand);
        }
        let n = self.letters.len();
        for p in 1..=n / 2 {
            if n.is_multiple_of(p) && self.has_period(p) {
                return Ok((self.factor(0, p), (n / p) as u64));
            }
        }
        Ok((self.clone(), 1))
    }

    /// Returns `self` with the sentinel terminator appended.
    pub fn append_sentinel(&self) -> Result<Word, Error> {
        if self.has_sentinel() {
            return Err(Error::SentinelAlreadyPresent);
        }
        let mut letters = self.letters.clone();
        letters.push(Letter::Sentinel);
        Ok(Word { letters })
    }

    pub fn to_text(&self) -> String {
        self.letters.iter().map(Letter::display_char).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// Primitivity by divisor periods. A word of length `n` is an integer power
/// of a shorter word iff `n/q` is a period for some prime `q` dividing `n`,
/// so only maximal proper divisors need checking.
pub(crate) fn is_primitive_slice(letters: &[Letter]) -> bool {
    let n = letters.len();
    debug_assert!(n >= 1);
    let mut m = n;
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            if slice_has_period(letters, n / q) {
                return false;
            }
            while m.is_multiple_of(q) {
                m /= q;
            }
        }
        q += 1;
    }
    // m is now 1 or the largest prime factor of n.
    if m > 1 && slice_has_period(letters, n / m) {
        return false;
    }
    true
}

pub(crate) fn slice_has_period(letters: &[Letter], p: usize) -> bool {
    (p..letters.len()).all(|i| letters[i] == letters[i - p])
}

/// The rational power `root^(e.num/e.den)`: `root` repeated `floor` times
/// followed by its prefix of length `e.num mod |root|`. Defined only when
/// the denominator equals the root length.
pub fn fractional_power(root: &Word, e: RationalExponent) -> Result<Word, Error> {
    if root.has_sentinel() {
        return Err(Error::SentinelInOperand);
    }
    if e.den() != root.len() as u64 {
        return Err(Error::ExponentDenominatorMismatch {
            den: e.den(),
            root_len: root.len() as u64,
        });
    }
    let n = e.num() as usize;
    let letters = (0..n).map(|j| root.letters[j % root.len()]).collect();
    Ok(Word::from_letters_unchecked(letters))
}

/// Outcome of the Fine and Wilf check for one `(w, k, l)` triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FineWilfOutcome {
    pub premises_hold: bool,
    pub conclusion_holds: bool,
}

/// Premises: `w` has periods `k` and `l` and `|w| >= k + l - gcd(k, l)`.
/// Conclusion: `gcd(k, l)` is also a period. The conclusion field is
/// reported regardless of the premises.
pub fn check_fine_wilf(w: &Word, k: usize, l: usize) -> FineWilfOutcome {
    assert!(k >= 1 && l >= 1);
    let g = gcd_u64(k as u64, l as u64) as usize;
    let premises_hold =
        w.has_period(k) && w.has_period(l) && w.len() >= k + l - g;
    FineWilfOutcome {
        premises_hold,
        conclusion_holds: w.has_period(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_text(s)
    }

    #[test]
    fn fractional_power_wraps_the_root() {
        let out = fractional_power(&w("ab"), RationalExponent::new(7, 2)).unwrap();
        assert_eq!(out, w("abababa"));
        let identity = fractional_power(&w("abc"), RationalExponent::new(3, 3)).unwrap();
        assert_eq!(identity, w("abc"));
        assert_eq!(
            fractional_power(&w("ab"), RationalExponent::new(5, 3)),
            Err(Error::ExponentDenominatorMismatch { den: 3, root_len: 2 })
        );
        let e = fractional_power(&w("ab"), RationalExponent::new(0, 2)).unwrap();
        assert!(e.is_empty());
    }

    #[test]
    fn fractional_power_rejects_sentinel() {
        let ws = w("ab").append_sentinel().unwrap();
        assert_eq!(
            fractional_power(&ws, RationalExponent::new(3, 3)),
            Err(Error::SentinelInOperand)
        );
    }

    #[test]
    fn periods() {
        assert!(w("abab").has_period(2));
        assert!(!w("abab").has_period(3)); // w[3]=b != w[0]=a
        assert!(w("abc").has_period(5)); // p >= |w| is vacuous
        assert!(w("aaa").has_period(1));
    }

    #[test]
    fn fine_wilf_examples() {
        let out = check_fine_wilf(&w("aaaaa"), 2, 3);
        assert!(out.premises_hold && out.conclusion_holds);
        let out = check_fine_wilf(&w("ababa"), 2, 4);
        assert!(out.premises_hold && out.conclusion_holds);
        let out = check_fine_wilf(&w("abaab"), 2, 3);
        assert!(!out.premises_hold);
    }

    #[test]
    fn primitivity() {
        assert!(!w("abab").is_primitive().unwrap());
        assert!(w("aba").is_primitive().unwrap());
        assert!(w("a").is_primitive().unwrap());
        assert_eq!(Word::empty().is_primitive(), Err(Error::EmptyWord));
    }

    #[test]
    fn fractional_power_equals_iterated_concat() {
        // Exhaustive over binary roots up to length 6 and k up to 4.
        for len in 1..=6usize {
            for_each_word(2, len, |root| {
                for k in 1..=4u64 {
                    let e = RationalExponent::new(k * len as u64, len as u64);
                    let powered = fractional_power(root, e).unwrap();
                    let mut concat = Vec::new();
                    for _ in 0..k {
                        concat.extend_from_slice(root.letters());
                    }
                    assert_eq!(powered.letters(), &concat[..], "{root}^{k}");
                }
            });
        }
    }

    #[test]
    fn text_round_trip() {
        for text in ["abc", "héllo→é", "a b,c", "ααβ"] {
            assert_eq!(Word::from_text(text).to_text(), text);
        }
    }

    #[test]
    fn primitivity_matches_divisor_oracle() {
        // Full binary and ternary spaces to length 12, against the plain
        // all-divisors definition and the uu-occurrence test.
        for (alph, max_len) in [(2u32, 12usize), (3, 12)] {
            for len in 1..=max_len {
                for_each_word(alph, len, |word| {
                    let naive = !(1..len).any(|p| len % p == 0 && word.has_period(p));
                    assert_eq!(word.is_primitive().unwrap(), naive, "{word}");
                    // Primitive iff the word occurs in its own square only
                    // at offsets 0 and len.
                    let mut doubled = word.letters().to_vec();
                    doubled.extend_from_slice(word.letters());
                    let occurrences = (0..=len)
                        .filter(|&o| doubled[o..o + len] == *word.letters())
                        .count();
                    assert_eq!(naive, occurrences == 2, "{word}");
                });
            }
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
    fn primitive_roots() {
        assert_eq!(w("ababab").primitive_root().unwrap(), (w("ab"), 3));
        assert_eq!(w("aba").primitive_root().unwrap(), (w("aba"), 1));
        assert_eq!(w("aaaa").primitive_root().unwrap(), (w("a"), 4));
    }

    #[test]
    fn sentinel_append() {
        let ws = w("abababacababa").append_sentinel().unwrap();
        assert_eq!(ws.to_text(), "abababacababa*");
        assert_eq!(ws.len(), 14);
        assert_eq!(ws.alphabet_len(), 3);
        let star = Word::empty().append_sentinel().unwrap();
        assert_eq!(star.to_text(), "*");
        assert!(star.has_sentinel());
        assert_eq!(ws.append_sentinel(), Err(Error::SentinelAlreadyPresent));
    }

    #[test]
    fn sentinel_placement_is_enforced() {
        let bad = vec![Letter::Sentinel, Letter::Ordinary(97)];
        assert_eq!(Word::from_letters(bad), Err(Error::MisplacedSentinel));
        let ok = vec![Letter::Ordinary(97), Letter::Sentinel];
        assert!(Word::from_letters(ok).is_ok());
    }

    #[test]
    fn exponent_ordering_is_numeric() {
        let a = RationalExponent::new(7, 2);
        let b = RationalExponent::new(14, 4);
        assert_eq!(a, b);
        assert!(RationalExponent::new(7, 4) < a);
        assert!(a.at_least_int(3));
        assert!(!a.at_least_int(4));
        assert_eq!(a.floor(), 3);
        assert_eq!(a.floor_sub(1), 2); // floor(7/2 - 1)
        assert_eq!(RationalExponent::new(3, 2).floor_sub(1), 0);
        assert_eq!(RationalExponent::new(2, 1).floor_sub(3), 0);
        assert_eq!(format!("{a}"), "7/2");
        assert_eq!(format!("{}", RationalExponent::new(6, 2)), "3");
    }
}
