//! Static knowledge base for the Farsi character repertoire: per-code-point
//! classification, cursive joining behavior, standard-set membership, and the
//! Arabic-variant substitution tables every other module queries.

use std::collections::{HashMap, HashSet};

use once_cell::sync::Lazy;
use thiserror::Error;

/// ZERO WIDTH NON-JOINER, Persian orthography's "short space".
pub const ZWNJ: char = '\u{200C}';
/// ZERO WIDTH JOINER.
pub const ZWJ: char = '\u{200D}';
/// TATWEEL / kashida, the meaning-free elongation character.
pub const TATWEEL: char = '\u{0640}';

/// Coarse character classification used throughout the pipeline.
///
/// Every Unicode scalar value maps to exactly one class. Letter classes are
/// scoped to the Arabic block (0600–06FF); anything else that is not a digit,
/// space, or punctuation falls into `Other`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharClass {
    /// Member of the standard Farsi letter repertoire (e.g. ی, ک).
    FarsiLetter,
    /// Arabic-block letter that is a variant of a standard Farsi letter and
    /// has a canonical replacement (e.g. ي, ك).
    ArabicVariantLetter,
    /// Combining mark: short vowels and other Arabic-block signs.
    Diacritic,
    Tatweel,
    Zwnj,
    Zwj,
    /// Any Unicode whitespace.
    Space,
    Punctuation,
    /// Extended Arabic-Indic digits ۰–۹ (06F0–06F9).
    PersianDigit,
    /// Arabic-Indic digits ٠–٩ (0660–0669).
    ArabicIndicDigit,
    /// ASCII digits 0–9.
    LatinDigit,
    Other,
}

/// Cursive joining behavior, after Unicode ArabicShaping. Join-causing
/// characters (TATWEEL, ZWJ) are folded into `DualJoining` since they connect
/// on both sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JoiningClass {
    DualJoining,
    RightJoining,
    NonJoining,
    Transparent,
}

/// Everything the tables know about one code point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharRecord {
    pub code_point: char,
    pub char_class: CharClass,
    pub joining: JoiningClass,
    /// Member of the ISIRI 6219 Farsi subset (bundled data file).
    pub is_standard: bool,
    /// Replacement sequence for non-standard code points, when one exists.
    pub canonical: Option<Vec<char>>,
}

impl CharRecord {
    /// Record for `cp` against the bundled repertoire and tables.
    pub fn of(cp: char) -> CharRecord {
        Self::with_repertoire(cp, standard_set())
    }

    /// Record for `cp` against a caller-supplied standard set (e.g. loaded
    /// via [`load_standard_set`]).
    pub fn with_repertoire(cp: char, repertoire: &HashSet<char>) -> CharRecord {
        let is_standard = repertoire.contains(&cp);
        let canonical = if is_standard {
            None
        } else {
            extended_table().get(cp).map(|seq| seq.to_vec())
        };
        CharRecord {
            code_point: cp,
            char_class: classify(cp),
            joining: joining_class(cp),
            is_standard,
            canonical,
        }
    }
}

// Letter-class sources of the base table. classify() keeps this in sync with
// default_mapping_table(); a unit test cross-checks.
const VARIANT_LETTERS: [char; 7] = [
    '\u{064A}', // ي ARABIC YEH
    '\u{0643}', // ك ARABIC KAF
    '\u{0649}', // ى ALEF MAKSURA
    '\u{0625}', // إ ALEF WITH HAMZA BELOW
    '\u{0671}', // ٱ ALEF WASLA
    '\u{06BE}', // ھ HEH DOACHASHMEE
    '\u{06D5}', // ە AE
];

fn is_arabic_diacritic(cp: u32) -> bool {
    // Nonspacing marks of the Arabic block (harakat, Koranic annotation).
    matches!(cp,
        0x0610..=0x061A
        | 0x064B..=0x065F
        | 0x0670
        | 0x06D6..=0x06DC
        | 0x06DF..=0x06E4
        | 0x06E7..=0x06E8
        | 0x06EA..=0x06ED)
}

fn is_punctuation_cp(c: char) -> bool {
    let cp = c as u32;
    c.is_ascii_punctuation()
        || matches!(cp,
            0x060C // ، comma
            | 0x061B // ؛ semicolon
            | 0x061E // ؞ triple dot
            | 0x061F // ؟ question mark
            | 0x066A..=0x066D // ٪ ٫ ٬ ٭
            | 0x06D4 // ۔ full stop
            | 0x00AB | 0x00BB // « »
            | 0x2010..=0x2027 // dashes, quotes, ellipsis
            | 0x2030..=0x205E)
}

/// Classify any Unicode scalar value. Total and pure.
pub fn classify(cp: char) -> CharClass {
    match cp {
        ZWNJ => CharClass::Zwnj,
        ZWJ => CharClass::Zwj,
        TATWEEL => CharClass::Tatweel,
        '\u{06F0}'..='\u{06F9}' => CharClass::PersianDigit,
        '\u{0660}'..='\u{0669}' => CharClass::ArabicIndicDigit,
        '0'..='9' => CharClass::LatinDigit,
        c if is_arabic_diacritic(c as u32) => CharClass::Diacritic,
        c if c.is_whitespace() => CharClass::Space,
        c if is_punctuation_cp(c) => CharClass::Punctuation,
        c if standard_set().contains(&c) && ('\u{0600}'..='\u{06FF}').contains(&c) => {
            CharClass::FarsiLetter
        }
        c if VARIANT_LETTERS.contains(&c) => CharClass::ArabicVariantLetter,
        _ => CharClass::Other,
    }
}

// Right-joining letters of the Arabic block, per ArabicShaping (alef, dal,
// reh, waw, teh marbuta families).
fn is_right_joining_letter(cp: u32) -> bool {
    matches!(cp,
        0x0622..=0x0625
        | 0x0627
        | 0x0629
        | 0x062F..=0x0632
        | 0x0648
        | 0x0671..=0x0673
        | 0x0675..=0x0677
        | 0x0688..=0x0699
        | 0x06C0
        | 0x06C3..=0x06CB
        | 0x06CD
        | 0x06CF
        | 0x06D2..=0x06D3
        | 0x06D5
        | 0x06EE..=0x06EF)
}

fn is_arabic_block_letter(cp: u32) -> bool {
    (0x0600..=0x06FF).contains(&cp)
        && !matches!(cp,
            0x0600..=0x060F // format signs, symbols, ، punctuation
            | 0x061B
            | 0x061E..=0x061F
            | 0x0640 // tatweel
            | 0x0660..=0x0669
            | 0x066A..=0x066D
            | 0x06D4
            | 0x06DD..=0x06DE
            | 0x06E9
            | 0x06F0..=0x06F9)
        && !is_arabic_diacritic(cp)
}

/// Joining class of any scalar value; diacritics are transparent, letters
/// follow ArabicShaping, everything else is non-joining.
pub fn joining_class(cp: char) -> JoiningClass {
    let v = cp as u32;
    if is_arabic_diacritic(v) {
        return JoiningClass::Transparent;
    }
    match cp {
        // Join-causing: connects on both sides.
        TATWEEL | ZWJ => JoiningClass::DualJoining,
        ZWNJ => JoiningClass::NonJoining,
        _ if is_arabic_block_letter(v) => {
            if is_right_joining_letter(v) {
                JoiningClass::RightJoining
            } else if matches!(v, 0x0621 | 0x0674) {
                // ء and high hamza never connect.
                JoiningClass::NonJoining
            } else {
                JoiningClass::DualJoining
            }
        }
        _ => JoiningClass::NonJoining,
    }
}

/// Errors from parsing or validating substitution tables and code-point
/// list files.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("duplicate source U+{0:04X}")]
    DuplicateSource(u32),
    #[error("empty replacement for U+{0:04X}")]
    EmptyReplacement(u32),
    #[error("cascade: replacement of U+{src:04X} contains source U+{inner:04X}")]
    Cascade { src: u32, inner: u32 },
}

/// Ordered code-point → code-point-sequence substitution map.
///
/// Sources are unique and no replacement contains any source, so one
/// left-to-right pass is a fixed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingTable {
    entries: Vec<(char, Vec<char>)>,
    index: HashMap<char, usize>,
    provenance: String,
}

impl MappingTable {
    pub fn from_entries(
        provenance: impl Into<String>,
        entries: Vec<(char, Vec<char>)>,
    ) -> Result<MappingTable, TableError> {
        let mut index = HashMap::with_capacity(entries.len());
        for (i, (src, repl)) in entries.iter().enumerate() {
            if repl.is_empty() {
                return Err(TableError::EmptyReplacement(*src as u32));
            }
            if index.insert(*src, i).is_some() {
                return Err(TableError::DuplicateSource(*src as u32));
            }
        }
        for (src, repl) in &entries {
            if let Some(inner) = repl.iter().find(|c| index.contains_key(c)) {
                return Err(TableError::Cascade {
                    src: *src as u32,
                    inner: *inner as u32,
                });
            }
        }
        Ok(MappingTable {
            entries,
            index,
            provenance: provenance.into(),
        })
    }

    pub fn get(&self, src: char) -> Option<&[char]> {
        self.index.get(&src).map(|&i| self.entries[i].1.as_slice())
    }

    pub fn contains(&self, src: char) -> bool {
        self.index.contains_key(&src)
    }

    pub fn entries(&self) -> &[(char, Vec<char>)] {
        &self.entries
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Render in the table file format: `SRC_HEX SP REPL_HEX [SP REPL_HEX...]`,
    /// uppercase hex, one entry per line.
    pub fn to_table_string(&self) -> String {
        let mut out = String::new();
        for (src, repl) in &self.entries {
            out.push_str(&format!("{:04X}", *src as u32));
            for r in repl {
                out.push_str(&format!(" {:04X}", *r as u32));
            }
            out.push('\n');
        }
        out
    }

    /// Parse the table file format. `#` starts a comment, blank lines are
    /// ignored. Errors carry 1-based line numbers.
    pub fn parse(source: &str, provenance: impl Into<String>) -> Result<MappingTable, TableError> {
        let mut entries = Vec::new();
        let mut seen = HashSet::new();
        for (lineno, raw) in source.lines().enumerate() {
            let line = lineno + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let mut fields = text.split_whitespace();
            let src = parse_hex_cp(fields.next().unwrap(), line)?;
            let repl: Vec<char> = fields
                .map(|f| parse_hex_cp(f, line))
                .collect::<Result<_, _>>()?;
            if repl.is_empty() {
                return Err(TableError::Parse {
                    line,
                    message: "entry needs at least one replacement code point".into(),
                });
            }
            if !seen.insert(src) {
                return Err(TableError::Parse {
                    line,
                    message: format!("duplicate source U+{:04X}", src as u32),
                });
            }
            entries.push((src, repl));
        }
        MappingTable::from_entries(provenance, entries)
    }
}

fn parse_hex_cp(field: &str, line: usize) -> Result<char, TableError> {
    let value = u32::from_str_radix(field, 16).map_err(|_| TableError::Parse {
        line,
        message: format!("invalid hex field {field:?}"),
    })?;
    char::from_u32(value).ok_or(TableError::Parse {
        line,
        message: format!("U+{value:04X} is not a Unicode scalar value"),
    })
}

/// Parse a mapping table from its file format.
pub fn load_mapping_table(source: &str) -> Result<MappingTable, TableError> {
    MappingTable::parse(source, "loaded")
}

const BASE_ENTRIES: &[(char, &[char])] = &[
    ('\u{064A}', &['\u{06CC}']), // ي → ی
    ('\u{0643}', &['\u{06A9}']), // ك → ک
    ('\u{0649}', &['\u{06CC}']), // ى → ی
    ('\u{0625}', &['\u{0627}']), // إ → ا
    ('\u{0671}', &['\u{0627}']), // ٱ → ا
    ('\u{06BE}', &['\u{0647}']), // ھ → ه
    ('\u{06D5}', &['\u{0647}']), // ە → ه
    ('\u{0660}', &['\u{06F0}']),
    ('\u{0661}', &['\u{06F1}']),
    ('\u{0662}', &['\u{06F2}']),
    ('\u{0663}', &['\u{06F3}']),
    ('\u{0664}', &['\u{06F4}']),
    ('\u{0665}', &['\u{06F5}']),
    ('\u{0666}', &['\u{06F6}']),
    ('\u{0667}', &['\u{06F7}']),
    ('\u{0668}', &['\u{06F8}']),
    ('\u{0669}', &['\u{06F9}']),
];

// Arabic presentation forms folded to their conceptual letters. Positional
// variants are 1→1; ligatures expand. Lam-alef with hamza below folds the
// hamza into plain alef, mirroring the base إ → ا entry.
const PRESENTATION_ENTRIES: &[(char, &[char])] = &[
    // Presentation Forms-B: isolated/final/initial/medial positional forms.
    ('\u{FE80}', &['\u{0621}']),
    ('\u{FE81}', &['\u{0622}']),
    ('\u{FE82}', &['\u{0622}']),
    ('\u{FE83}', &['\u{0623}']),
    ('\u{FE84}', &['\u{0623}']),
    ('\u{FE85}', &['\u{0624}']),
    ('\u{FE86}', &['\u{0624}']),
    ('\u{FE87}', &['\u{0627}']),
    ('\u{FE88}', &['\u{0627}']),
    ('\u{FE89}', &['\u{0626}']),
    ('\u{FE8A}', &['\u{0626}']),
    ('\u{FE8B}', &['\u{0626}']),
    ('\u{FE8C}', &['\u{0626}']),
    ('\u{FE8D}', &['\u{0627}']),
    ('\u{FE8E}', &['\u{0627}']),
    ('\u{FE8F}', &['\u{0628}']),
    ('\u{FE90}', &['\u{0628}']),
    ('\u{FE91}', &['\u{0628}']),
    ('\u{FE92}', &['\u{0628}']),
    ('\u{FE93}', &['\u{0629}']),
    ('\u{FE94}', &['\u{0629}']),
    ('\u{FE95}', &['\u{062A}']),
    ('\u{FE96}', &['\u{062A}']),
    ('\u{FE97}', &['\u{062A}']),
    ('\u{FE98}', &['\u{062A}']),
    ('\u{FE99}', &['\u{062B}']),
    ('\u{FE9A}', &['\u{062B}']),
    ('\u{FE9B}', &['\u{062B}']),
    ('\u{FE9C}', &['\u{062B}']),
    ('\u{FE9D}', &['\u{062C}']),
    ('\u{FE9E}', &['\u{062C}']),
    ('\u{FE9F}', &['\u{062C}']),
    ('\u{FEA0}', &['\u{062C}']),
    ('\u{FEA1}', &['\u{062D}']),
    ('\u{FEA2}', &['\u{062D}']),
    ('\u{FEA3}', &['\u{062D}']),
    ('\u{FEA4}', &['\u{062D}']),
    ('\u{FEA5}', &['\u{062E}']),
    ('\u{FEA6}', &['\u{062E}']),
    ('\u{FEA7}', &['\u{062E}']),
    ('\u{FEA8}', &['\u{062E}']),
    ('\u{FEA9}', &['\u{062F}']),
    ('\u{FEAA}', &['\u{062F}']),
    ('\u{FEAB}', &['\u{0630}']),
    ('\u{FEAC}', &['\u{0630}']),
    ('\u{FEAD}', &['\u{0631}']),
    ('\u{FEAE}', &['\u{0631}']),
    ('\u{FEAF}', &['\u{0632}']),
    ('\u{FEB0}', &['\u{0632}']),
    ('\u{FEB1}', &['\u{0633}']),
    ('\u{FEB2}', &['\u{0633}']),
    ('\u{FEB3}', &['\u{0633}']),
    ('\u{FEB4}', &['\u{0633}']),
    ('\u{FEB5}', &['\u{0634}']),
    ('\u{FEB6}', &['\u{0634}']),
    ('\u{FEB7}', &['\u{0634}']),
    ('\u{FEB8}', &['\u{0634}']),
    ('\u{FEB9}', &['\u{0635}']),
    ('\u{FEBA}', &['\u{0635}']),
    ('\u{FEBB}', &['\u{0635}']),
    ('\u{FEBC}', &['\u{0635}']),
    ('\u{FEBD}', &['\u{0636}']),
    ('\u{FEBE}', &['\u{0636}']),
    ('\u{FEBF}', &['\u{0636}']),
    ('\u{FEC0}', &['\u{0636}']),
    ('\u{FEC1}', &['\u{0637}']),
    ('\u{FEC2}', &['\u{0637}']),
    ('\u{FEC3}', &['\u{0637}']),
    ('\u{FEC4}', &['\u{0637}']),
    ('\u{FEC5}', &['\u{0638}']),
    ('\u{FEC6}', &['\u{0638}']),
    ('\u{FEC7}', &['\u{0638}']),
    ('\u{FEC8}', &['\u{0638}']),
    ('\u{FEC9}', &['\u{0639}']),
    ('\u{FECA}', &['\u{0639}']),
    ('\u{FECB}', &['\u{0639}']),
    ('\u{FECC}', &['\u{0639}']),
    ('\u{FECD}', &['\u{063A}']),
    ('\u{FECE}', &['\u{063A}']),
    ('\u{FECF}', &['\u{063A}']),
    ('\u{FED0}', &['\u{063A}']),
    ('\u{FED1}', &['\u{0641}']),
    ('\u{FED2}', &['\u{0641}']),
    ('\u{FED3}', &['\u{0641}']),
    ('\u{FED4}', &['\u{0641}']),
    ('\u{FED5}', &['\u{0642}']),
    ('\u{FED6}', &['\u{0642}']),
    ('\u{FED7}', &['\u{0642}']),
    ('\u{FED8}', &['\u{0642}']),
    ('\u{FED9}', &['\u{06A9}']), // kaf forms → ک
    ('\u{FEDA}', &['\u{06A9}']),
    ('\u{FEDB}', &['\u{06A9}']),
    ('\u{FEDC}', &['\u{06A9}']),
    ('\u{FEDD}', &['\u{0644}']),
    ('\u{FEDE}', &['\u{0644}']),
    ('\u{FEDF}', &['\u{0644}']),
    ('\u{FEE0}', &['\u{0644}']),
    ('\u{FEE1}', &['\u{0645}']),
    ('\u{FEE2}', &['\u{0645}']),
    ('\u{FEE3}', &['\u{0645}']),
    ('\u{FEE4}', &['\u{0645}']),
    ('\u{FEE5}', &['\u{0646}']),
    ('\u{FEE6}', &['\u{0646}']),
    ('\u{FEE7}', &['\u{0646}']),
    ('\u{FEE8}', &['\u{0646}']),
    ('\u{FEE9}', &['\u{0647}']),
    ('\u{FEEA}', &['\u{0647}']),
    ('\u{FEEB}', &['\u{0647}']),
    ('\u{FEEC}', &['\u{0647}']),
    ('\u{FEED}', &['\u{0648}']),
    ('\u{FEEE}', &['\u{0648}']),
    ('\u{FEEF}', &['\u{06CC}']), // alef maksura forms → ی
    ('\u{FEF0}', &['\u{06CC}']),
    ('\u{FEF1}', &['\u{06CC}']), // yeh forms → ی
    ('\u{FEF2}', &['\u{06CC}']),
    ('\u{FEF3}', &['\u{06CC}']),
    ('\u{FEF4}', &['\u{06CC}']),
    // Lam-alef ligatures → two code points.
    ('\u{FEF5}', &['\u{0644}', '\u{0622}']),
    ('\u{FEF6}', &['\u{0644}', '\u{0622}']),
    ('\u{FEF7}', &['\u{0644}', '\u{0623}']),
    ('\u{FEF8}', &['\u{0644}', '\u{0623}']),
    ('\u{FEF9}', &['\u{0644}', '\u{0627}']),
    ('\u{FEFA}', &['\u{0644}', '\u{0627}']),
    ('\u{FEFB}', &['\u{0644}', '\u{0627}']),
    ('\u{FEFC}', &['\u{0644}', '\u{0627}']),
    // Presentation Forms-A: Persian letters.
    ('\u{FB56}', &['\u{067E}']), // پ
    ('\u{FB57}', &['\u{067E}']),
    ('\u{FB58}', &['\u{067E}']),
    ('\u{FB59}', &['\u{067E}']),
    ('\u{FB7A}', &['\u{0686}']), // چ
    ('\u{FB7B}', &['\u{0686}']),
    ('\u{FB7C}', &['\u{0686}']),
    ('\u{FB7D}', &['\u{0686}']),
    ('\u{FB8A}', &['\u{0698}']), // ژ
    ('\u{FB8B}', &['\u{0698}']),
    ('\u{FB8E}', &['\u{06A9}']), // ک
    ('\u{FB8F}', &['\u{06A9}']),
    ('\u{FB90}', &['\u{06A9}']),
    ('\u{FB91}', &['\u{06A9}']),
    ('\u{FB92}', &['\u{06AF}']), // گ
    ('\u{FB93}', &['\u{06AF}']),
    ('\u{FB94}', &['\u{06AF}']),
    ('\u{FB95}', &['\u{06AF}']),
    ('\u{FBFC}', &['\u{06CC}']), // ی
    ('\u{FBFD}', &['\u{06CC}']),
    ('\u{FBFE}', &['\u{06CC}']),
    ('\u{FBFF}', &['\u{06CC}']),
    // Word ligatures.
    (
        '\u{FDF2}',
        &['\u{0627}', '\u{0644}', '\u{0644}', '\u{0647}'],
    ), // ﷲ
    (
        '\u{FDFC}',
        &['\u{0631}', '\u{06CC}', '\u{0627}', '\u{0644}'],
    ), // ﷼
];

fn build_table(provenance: &str, groups: &[&[(char, &[char])]]) -> MappingTable {
    let entries = groups
        .iter()
        .flat_map(|g| g.iter())
        .map(|(src, repl)| (*src, repl.to_vec()))
        .collect();
    MappingTable::from_entries(provenance, entries).expect("bundled table is valid")
}

static BASE_TABLE: Lazy<MappingTable> = Lazy::new(|| build_table("bundled-base", &[BASE_ENTRIES]));

static EXTENDED_TABLE: Lazy<MappingTable> =
    Lazy::new(|| build_table("bundled-extended", &[BASE_ENTRIES, PRESENTATION_ENTRIES]));

/// The bundled base table: strictly 1→1; Arabic-variant letters plus
/// Arabic-Indic → Extended Arabic-Indic digits.
pub fn default_mapping_table() -> MappingTable {
    BASE_TABLE.clone()
}

/// Base table plus presentation-form foldings, including 1→n ligature
/// expansions. Opt-in because it does not preserve string length.
pub fn extended_mapping_table() -> MappingTable {
    EXTENDED_TABLE.clone()
}

fn extended_table() -> &'static MappingTable {
    &EXTENDED_TABLE
}

static STANDARD_SET: Lazy<HashSet<char>> = Lazy::new(|| {
    load_standard_set(include_str!("../data/isiri6219.txt"))
        .expect("bundled repertoire file is valid")
});

/// The bundled ISIRI 6219 repertoire.
pub fn standard_set() -> &'static HashSet<char> {
    &STANDARD_SET
}

/// Membership in the bundled ISIRI 6219 repertoire.
pub fn is_standard(cp: char) -> bool {
    STANDARD_SET.contains(&cp)
}

/// Parse a repertoire file: one uppercase-hex code point per line, `#`
/// comments, blank lines ignored.
pub fn load_standard_set(source: &str) -> Result<HashSet<char>, TableError> {
    let mut set = HashSet::new();
    for (lineno, raw) in source.lines().enumerate() {
        let line = lineno + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let mut fields = text.split_whitespace();
        let cp = parse_hex_cp(fields.next().unwrap(), line)?;
        if fields.next().is_some() {
            return Err(TableError::Parse {
                line,
                message: "expected a single code point per line".into(),
            });
        }
        set.insert(cp);
    }
    Ok(set)
}
