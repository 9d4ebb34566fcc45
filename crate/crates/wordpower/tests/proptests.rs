//! Randomized properties over longer words than the exhaustive suites
//! reach. The strategies stay on two- and three-letter alphabets where the
//! repetition structure is densest.

mod common;

use common::{naive_is_primitive, naive_max_matched, NaiveFactorOracle};
use proptest::prelude::*;
use wordpower::index::FactorIndex;
use wordpower::power::{build_inventory, count_k_powers_formula, enumerate_k_powers_naive, max_exponent};
use wordpower::search::canonicalize;
use wordpower::verify::verify_word;
use wordpower::word::{check_fine_wilf, fractional_power};
use wordpower::{RationalExponent, Word};

fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..3, 1..=max_len)
        .prop_map(|ids| Word::from_text(&ids.iter().map(|&i| (b'a' + i) as char).collect::<String>()))
}

proptest! {
    #[test]
    fn primitive_root_reconstructs_the_word(word in arb_word(40)) {
        let (root, e) = word.primitive_root().unwrap();
        prop_assert!(root.is_primitive().unwrap());
        let e_len = e * root.len() as u64;
        let rebuilt = fractional_power(&root, RationalExponent::new(e_len, root.len() as u64)).unwrap();
        prop_assert_eq!(rebuilt, word);
    }

    #[test]
    fn index_answers_match_oracle(word in arb_word(40), with_sentinel in any::<bool>()) {
        let word = if with_sentinel { word.append_sentinel().unwrap() } else { word };
        let index = FactorIndex::build(&word);
        let oracle = NaiveFactorOracle::build(&word);
        let profile = index.factor_complexity();
        prop_assert_eq!(profile.counts(), &oracle.complexity()[..]);
        prop_assert_eq!(index.right_special_factors(), oracle.right_special());
        for u in oracle.factors.iter().take(64) {
            prop_assert_eq!(index.right_extensions(u).unwrap(), oracle.right_extensions(u));
        }
    }

    #[test]
    fn formula_counts_match_enumeration(word in arb_word(32), k in 2u32..=5) {
        let inventory = build_inventory(&word).unwrap();
        prop_assert_eq!(
            count_k_powers_formula(&inventory, k),
            enumerate_k_powers_naive(&word, k).len() as u64
        );
    }

    #[test]
    fn scan_exponents_match_occurrence_extension(word in arb_word(24)) {
        let inventory = build_inventory(&word).unwrap();
        for (root, rec) in inventory.records() {
            let matched = naive_max_matched(&word, root).unwrap();
            prop_assert_eq!(rec.exponent, RationalExponent::new(matched, root.len() as u64));
            prop_assert!(naive_is_primitive(root));
        }
    }

    #[test]
    fn fine_wilf_premises_imply_conclusion(word in arb_word(32)) {
        for k in 1..=word.len() {
            for l in k..=word.len() {
                let out = check_fine_wilf(&word, k, l);
                prop_assert!(!out.premises_hold || out.conclusion_holds);
            }
        }
    }

    #[test]
    fn sentinel_only_adds_one_letter(word in arb_word(24)) {
        let starred = word.append_sentinel().unwrap();
        prop_assert_eq!(starred.len(), word.len() + 1);
        prop_assert_eq!(starred.alphabet_len(), word.alphabet_len());
    }

    #[test]
    fn verify_report_is_renaming_invariant(word in arb_word(16), swap in any::<bool>()) {
        // Rename by swapping two letters; every verdict must be unchanged.
        let renamed = Word::from_text(
            &word
                .to_text()
                .chars()
                .map(|c| match (c, swap) {
                    ('a', true) => 'c',
                    ('c', true) => 'a',
                    ('a', false) => 'b',
                    ('b', false) => 'a',
                    (other, _) => other,
                })
                .collect::<String>(),
        );
        prop_assert_eq!(canonicalize(&word).len(), canonicalize(&renamed).len());
        let r1 = verify_word(&word, &[3, 4]).unwrap();
        let r2 = verify_word(&renamed, &[3, 4]).unwrap();
        prop_assert_eq!(r1.m_special, r2.m_special);
        prop_assert_eq!(r1.corollary.s_int, r2.corollary.s_int);
        prop_assert_eq!(&r1.corollary.s_real, &r2.corollary.s_real);
        prop_assert_eq!(&r1.summary.s_minus_one, &r2.summary.s_minus_one);
        prop_assert_eq!(r1.hard_checks_pass(), r2.hard_checks_pass());
        prop_assert_eq!(r1.findings(), r2.findings());
    }

    #[test]
    fn theorem_chain_step_holds_for_integer_exponents(word in arb_word(24), k in 3u32..=5) {
        // For integer m(u) >= k: floor(m/k) <= (m-2)/(k-2).
        let inventory = build_inventory(&word).unwrap();
        for rec in inventory.records().values() {
            let m = rec.exponent;
            if m.is_integer() && m.at_least_int(k as u64) {
                let whole = m.floor();
                prop_assert!(whole / k as u64 * (k as u64 - 2) <= whole - 2);
            }
        }
    }

    #[test]
    fn max_exponent_is_at_least_one(word in arb_word(24)) {
        let oracle = NaiveFactorOracle::build(&word);
        for u in oracle.factors.iter().take(48) {
            let m = max_exponent(&word, u).unwrap();
            prop_assert!(m.at_least_int(1));
        }
    }
}
