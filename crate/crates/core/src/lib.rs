//! # dabir
//!
//! Canonicalization toolkit for Persian (Farsi) electronic text.
//!
//! Farsi e-texts accumulate encoding ambiguity: Arabic variants of Farsi
//! letters (ي for ی, ك for ک), meaning-free TATWEEL elongation, optional
//! short-vowel marks, mixed digit sets, and misused ZWNJ — the "short space"
//! that joins affixes to stems under the official orthography but is widely
//! replaced by a plain space. This crate removes that ambiguity:
//!
//! - [`charset`]: per-code-point classification, joining behavior, and the
//!   variant substitution tables.
//! - [`mod@normalize`]: the character-level pipeline (variant mapping, TATWEEL
//!   deletion, diacritic stripping, digit unification, ZWNJ repair).
//! - [`mod@tokenize`]: ZWNJ-aware word boundary detection over code points.
//! - [`affix`]: lexicon-driven affix-boundary repair and attached-form
//!   splitting.
//! - [`conformance`]: a linter reporting located deviations with
//!   machine-applicable fixes.
//! - [`cli`]: the `dabir` command-line front end.
//!
//! ```
//! use dabir::{normalize, NormalizationConfig};
//!
//! let config = NormalizationConfig::default();
//! assert_eq!(normalize("كتـاب", &config), "کتاب");
//! ```
//!
//! Everything is pure over immutable configs and tables; parallel use needs
//! no coordination.

pub mod affix;
pub mod charset;
pub mod cli;
pub mod conformance;
pub mod normalize;
pub mod tokenize;

pub use affix::{
    default_affix_lexicon, load_known_words, repair_affixes, split_attached, AffixEntry, AffixJoin,
    AffixLexicon, AffixSide, LexiconError,
};
pub use charset::{
    classify, default_mapping_table, extended_mapping_table, is_standard, joining_class,
    load_mapping_table, load_standard_set, CharClass, CharRecord, JoiningClass, MappingTable,
    TableError, TATWEEL, ZWJ, ZWNJ,
};
pub use conformance::{
    apply_fixes, check, check_with, render_report, Report, ReportFormat, Violation, ViolationKind,
};
pub use normalize::{
    fix_zwnj, map_characters, normalize, remove_tatweel, strip_diacritics, unify_digits, DigitMode,
    NormalizationConfig,
};
pub use tokenize::{
    detokenize, load_abbreviations, tokenize, AbbrevError, Token, TokenKind, TokenListError,
    TokenizerConfig,
};

use std::collections::HashSet;

/// The whole flow in one call: normalize, then (when `repair` is given)
/// re-join space-separated affixes, optionally splitting attached forms
/// whose stems appear in `known_words`.
pub fn standardize(
    text: &str,
    config: &NormalizationConfig,
    tokenizer: &TokenizerConfig,
    repair: Option<&AffixLexicon>,
    known_words: Option<&HashSet<String>>,
) -> String {
    let normalized = normalize(text, config);
    let Some(lexicon) = repair else {
        return normalized;
    };
    let tokens = tokenize(&normalized, tokenizer);
    let mut repaired = repair_affixes(&tokens, lexicon);
    if let Some(known) = known_words {
        repaired = split_attached(&repaired, lexicon, known);
    }
    detokenize(&repaired, &normalized).expect("repaired token spans stay valid")
}
