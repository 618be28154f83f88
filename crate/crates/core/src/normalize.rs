//! Character-level standardization pipeline: variant mapping, TATWEEL
//! deletion, diacritic stripping, digit unification, and ZWNJ cleanup,
//! composed in a fixed order.

use crate::charset::{
    classify, default_mapping_table, joining_class, CharClass, JoiningClass, MappingTable, ZWNJ,
};

/// What to do with Arabic-Indic digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DigitMode {
    /// Replace each Arabic-Indic digit with the Extended Arabic-Indic digit
    /// of equal value.
    #[default]
    Persian,
    Preserve,
}

/// Switches for each pipeline stage. The default enables everything; an
/// all-false/`Preserve` config makes [`normalize`] the identity function.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationConfig {
    pub map_variants: bool,
    pub remove_tatweel: bool,
    pub strip_diacritics: bool,
    pub unify_digits: DigitMode,
    pub fix_zwnj: bool,
    pub mapping: MappingTable,
}

impl Default for NormalizationConfig {
    fn default() -> Self {
        NormalizationConfig {
            map_variants: true,
            remove_tatweel: true,
            strip_diacritics: true,
            unify_digits: DigitMode::Persian,
            fix_zwnj: true,
            mapping: default_mapping_table(),
        }
    }
}

/// Single left-to-right pass replacing every table source by its sequence.
pub fn map_characters(text: &str, table: &MappingTable) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match table.get(c) {
            Some(repl) => out.extend(repl.iter()),
            None => out.push(c),
        }
    }
    out
}

/// Delete every TATWEEL (0640), preserving the order of everything else.
pub fn remove_tatweel(text: &str) -> String {
    text.chars()
        .filter(|c| *c != crate::charset::TATWEEL)
        .collect()
}

/// Delete every code point of class `Diacritic`.
pub fn strip_diacritics(text: &str) -> String {
    text.chars()
        .filter(|c| classify(*c) != CharClass::Diacritic)
        .collect()
}

/// Unify digits per `mode`. `Preserve` is the identity.
pub fn unify_digits(text: &str, mode: DigitMode) -> String {
    match mode {
        DigitMode::Preserve => text.to_string(),
        DigitMode::Persian => text.chars().map(persian_digit).collect(),
    }
}

fn persian_digit(c: char) -> char {
    if ('\u{0660}'..='\u{0669}').contains(&c) {
        char::from_u32(c as u32 + 0x90).unwrap()
    } else {
        c
    }
}

/// Repair ZWNJ misuse: collapse runs to one, delete ZWNJ at string edges or
/// next to a space, and delete ZWNJ with no joining to break (the preceding
/// visible character is non-joining or right-joining).
pub fn fix_zwnj(text: &str) -> String {
    let chars: Vec<char> = text.chars().collect();
    let keep = zwnj_keep_mask(&chars);
    chars
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect()
}

/// Whether text ends in a forward-joining context: its last non-transparent
/// character is dual-joining, so a following letter would connect and a ZWNJ
/// there breaks a real join. Drives the affix join decision so repairs stay
/// fixed points of [`fix_zwnj`].
pub(crate) fn ends_with_forward_joiner(text: &str) -> bool {
    for c in text.chars().rev() {
        match joining_class(c) {
            JoiningClass::Transparent => continue,
            JoiningClass::DualJoining => return true,
            _ => return false,
        }
    }
    false
}

/// Which characters survive [`fix_zwnj`]. Non-ZWNJ characters are always
/// kept. Shared with the conformance checker so both report and repair make
/// identical decisions.
pub(crate) fn zwnj_keep_mask(chars: &[char]) -> Vec<bool> {
    let n = chars.len();
    let mut keep = vec![true; n];
    // Joining context: last kept, non-transparent character.
    let mut ctx: Option<char> = None;
    for i in 0..n {
        let c = chars[i];
        if c != ZWNJ {
            if joining_class(c) != JoiningClass::Transparent {
                ctx = Some(c);
            }
            continue;
        }
        // A run of ZWNJ collapses into its head; the head is judged against
        // the first character after the run.
        let mut next = i + 1;
        while next < n && chars[next] == ZWNJ {
            next += 1;
        }
        let joins_left = matches!(ctx.map(joining_class), Some(JoiningClass::DualJoining));
        let next_ok = next < n && classify(chars[next]) != CharClass::Space;
        keep[i] = joins_left && next_ok;
        if keep[i] {
            ctx = Some(ZWNJ); // breaks the context for any following ZWNJ
        }
    }
    keep
}

/// Apply the enabled stages in fixed order: variant mapping → TATWEEL
/// deletion → diacritic stripping → digit unification → ZWNJ repair.
///
/// The result is a fixed point: normalizing it again returns it unchanged.
/// With `unify_digits` set to `Preserve`, digit entries of the mapping table
/// are suppressed during the mapping stage so digits survive end to end.
pub fn normalize(text: &str, config: &NormalizationConfig) -> String {
    let mut s: String;
    if config.map_variants {
        let keep_digits = config.unify_digits == DigitMode::Preserve;
        let mut out = String::with_capacity(text.len());
        for c in text.chars() {
            let mapped = if keep_digits && classify(c) == CharClass::ArabicIndicDigit {
                None
            } else {
                config.mapping.get(c)
            };
            match mapped {
                Some(repl) => out.extend(repl.iter()),
                None => out.push(c),
            }
        }
        s = out;
    } else {
        s = text.to_string();
    }
    if config.remove_tatweel {
        s = remove_tatweel(&s);
    }
    if config.strip_diacritics {
        s = strip_diacritics(&s);
    }
    if config.unify_digits == DigitMode::Persian {
        s = unify_digits(&s, DigitMode::Persian);
    }
    if config.fix_zwnj {
        s = fix_zwnj(&s);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charset::extended_mapping_table;
    use proptest::prelude::*;

    fn identity_config() -> NormalizationConfig {
        NormalizationConfig {
            map_variants: false,
            remove_tatweel: false,
            strip_diacritics: false,
            unify_digits: DigitMode::Preserve,
            fix_zwnj: false,
            mapping: default_mapping_table(),
        }
    }

    #[test]
    fn map_variant_kaf() {
        let table = default_mapping_table();
        assert_eq!(map_characters("كتاب", &table), "کتاب");
        assert_eq!(map_characters("", &table), "");
        // Fixed point over the target alphabet.
        assert_eq!(map_characters("کتاب ها", &table), "کتاب ها");
    }

    #[test]
    fn map_expands_ligatures_with_extended_table() {
        let table = extended_mapping_table();
        assert_eq!(map_characters("\u{FEFB}", &table), "لا");
    }

    #[test]
    fn tatweel_removal() {
        assert_eq!(remove_tatweel("کتـــاب"), "کتاب");
        assert_eq!(remove_tatweel("ـــ"), "");
        assert_eq!(remove_tatweel("کتاب"), "کتاب");
    }

    #[test]
    fn diacritic_stripping_collapses_homographs() {
        assert_eq!(strip_diacritics("بَبر"), "ببر");
        assert_eq!(strip_diacritics("بِبر"), "ببر");
        assert_eq!(strip_diacritics("بُبر"), "ببر");
        assert_eq!(strip_diacritics("ببر"), "ببر");
    }

    #[test]
    fn digit_unification() {
        assert_eq!(unify_digits("٠١٢", DigitMode::Persian), "۰۱۲");
        assert_eq!(unify_digits("٠١٢", DigitMode::Preserve), "٠١٢");
        assert_eq!(unify_digits("123", DigitMode::Persian), "123");
    }

    #[test]
    fn zwnj_before_space_is_deleted() {
        assert_eq!(fix_zwnj("کتاب\u{200C} ها"), "کتاب ها");
    }

    #[test]
    fn zwnj_runs_collapse() {
        assert_eq!(fix_zwnj("کتاب\u{200C}\u{200C}ها"), "کتاب\u{200C}ها");
        assert_eq!(fix_zwnj("کتاب\u{200C}\u{200C}\u{200C}ها"), "کتاب\u{200C}ها");
    }

    #[test]
    fn lone_and_edge_zwnj_are_deleted() {
        assert_eq!(fix_zwnj("\u{200C}"), "");
        assert_eq!(fix_zwnj("\u{200C}کتاب"), "کتاب");
        assert_eq!(fix_zwnj("کتاب\u{200C}"), "کتاب");
        assert_eq!(fix_zwnj(" \u{200C}ها"), " ها");
    }

    #[test]
    fn no_op_zwnj_after_non_joiner_is_deleted() {
        // د is right-joining: nothing to break.
        assert_eq!(fix_zwnj("داد\u{200C}ها"), "دادها");
        // ب is dual-joining: the break is real, ZWNJ stays.
        assert_eq!(fix_zwnj("کتاب\u{200C}ها"), "کتاب\u{200C}ها");
        // ء never joins.
        assert_eq!(fix_zwnj("ء\u{200C}ب"), "ءب");
    }

    #[test]
    fn zwnj_after_transparent_mark_uses_letter_context() {
        // fatha is transparent; context is the ب before it.
        assert_eq!(fix_zwnj("ب\u{064E}\u{200C}ها"), "ب\u{064E}\u{200C}ها");
        // fatha after a right-joining letter: still no join to break.
        assert_eq!(fix_zwnj("د\u{064E}\u{200C}ها"), "د\u{064E}ها");
    }

    #[test]
    fn normalize_combined_defects() {
        let config = NormalizationConfig::default();
        assert_eq!(normalize("كتـاب", &config), "کتاب");
        assert_eq!(normalize("کتاب", &config), "کتاب");
    }

    #[test]
    fn normalize_identity_config() {
        let config = identity_config();
        let text = "كتـاب\u{200C}\u{200C} ٠١٢ بَبر";
        assert_eq!(normalize(text, &config), text);
    }

    fn probe_char() -> impl Strategy<Value = char> {
        prop_oneof![
            (0x0600u32..=0x06FF).prop_map(|v| char::from_u32(v).unwrap()),
            Just('\u{200C}'),
            Just('\u{200D}'),
            Just(' '),
            Just('.'),
            Just('\u{0640}'),
        ]
    }

    fn probe_text() -> impl Strategy<Value = String> {
        proptest::collection::vec(probe_char(), 0..64).prop_map(|v| v.into_iter().collect())
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(text in probe_text()) {
            let config = NormalizationConfig::default();
            let once = normalize(&text, &config);
            let twice = normalize(&once, &config);
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn identity_config_is_identity(text in probe_text()) {
            prop_assert_eq!(normalize(&text, &identity_config()), text);
        }

        #[test]
        fn base_table_mapping_preserves_length(text in probe_text()) {
            let config = NormalizationConfig {
                remove_tatweel: false,
                strip_diacritics: false,
                fix_zwnj: false,
                ..NormalizationConfig::default()
            };
            let out = normalize(&text, &config);
            prop_assert_eq!(out.chars().count(), text.chars().count());
        }

        #[test]
        fn letters_map_without_loss_or_reorder(text in probe_text()) {
            // The letter skeleton of the output is the mapped letter
            // skeleton of the input: no letters created, lost, or reordered.
            let config = NormalizationConfig::default();
            let out = normalize(&text, &config);
            let is_letter = |c: &char| {
                matches!(
                    classify(*c),
                    CharClass::FarsiLetter | CharClass::ArabicVariantLetter
                )
            };
            let expected: Vec<char> = text
                .chars()
                .filter(is_letter)
                .flat_map(|c| match config.mapping.get(c) {
                    Some(repl) => repl.to_vec(),
                    None => vec![c],
                })
                .collect();
            let got: Vec<char> = out.chars().filter(is_letter).collect();
            prop_assert_eq!(got, expected);
        }

        #[test]
        fn surviving_zwnj_is_word_internal(text in probe_text()) {
            let out = normalize(&text, &NormalizationConfig::default());
            let chars: Vec<char> = out.chars().collect();
            for (i, c) in chars.iter().enumerate() {
                if *c == ZWNJ {
                    prop_assert!(i > 0 && i + 1 < chars.len());
                    prop_assert_ne!(chars[i - 1], ZWNJ);
                    prop_assert!(classify(chars[i - 1]) != CharClass::Space);
                    prop_assert!(classify(chars[i + 1]) != CharClass::Space);
                }
            }
        }
    }
}
