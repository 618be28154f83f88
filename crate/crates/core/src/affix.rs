//! Affix-boundary repair: space-separated bound morphemes are re-joined to
//! their stems with ZWNJ, and (opt-in) lexicon-attested attached forms are
//! split into the ZWNJ form. Lexicon-driven throughout; the lexicon file is
//! the extension point.

use std::collections::HashSet;

use thiserror::Error;

use crate::charset::ZWNJ;
use crate::tokenize::{Token, TokenKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AffixSide {
    Prefix,
    Suffix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AffixJoin {
    /// Attach to the stem with a ZWNJ.
    Zwnj,
    /// A free lexical element; never merged. Exists to suppress false
    /// repairs.
    Separate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffixEntry {
    pub form: String,
    pub side: AffixSide,
    pub join: AffixJoin,
}

impl AffixEntry {
    pub fn new(form: impl Into<String>, side: AffixSide, join: AffixJoin) -> AffixEntry {
        AffixEntry {
            form: form.into(),
            side,
            join,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LexiconError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("affix form {form:?} appears with two different join values")]
    ConflictingJoin { form: String },
    #[error("invalid affix form {form:?}: {reason}")]
    InvalidForm { form: String, reason: String },
}

/// Affix inventory plus stem exceptions (free words that must never receive
/// a merge).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AffixLexicon {
    entries: Vec<AffixEntry>,
    suffix_zwnj: HashSet<String>,
    prefix_zwnj: HashSet<String>,
    separate: HashSet<String>,
    stem_exceptions: HashSet<String>,
}

impl AffixLexicon {
    pub fn from_entries(entries: Vec<AffixEntry>) -> Result<AffixLexicon, LexiconError> {
        let mut lexicon = AffixLexicon::default();
        for entry in entries {
            lexicon.insert(entry)?;
        }
        Ok(lexicon)
    }

    fn insert(&mut self, entry: AffixEntry) -> Result<(), LexiconError> {
        if entry.form.is_empty() {
            return Err(LexiconError::InvalidForm {
                form: entry.form,
                reason: "form is empty".into(),
            });
        }
        if entry.form.chars().any(char::is_whitespace) || entry.form.contains(ZWNJ) {
            return Err(LexiconError::InvalidForm {
                form: entry.form,
                reason: "form must not contain spaces or ZWNJ".into(),
            });
        }
        let conflicting = match entry.join {
            AffixJoin::Zwnj => self.separate.contains(&entry.form),
            AffixJoin::Separate => {
                self.suffix_zwnj.contains(&entry.form) || self.prefix_zwnj.contains(&entry.form)
            }
        };
        if conflicting {
            return Err(LexiconError::ConflictingJoin { form: entry.form });
        }
        match (entry.side, entry.join) {
            (AffixSide::Suffix, AffixJoin::Zwnj) => {
                self.suffix_zwnj.insert(entry.form.clone());
            }
            (AffixSide::Prefix, AffixJoin::Zwnj) => {
                self.prefix_zwnj.insert(entry.form.clone());
            }
            (_, AffixJoin::Separate) => {
                self.separate.insert(entry.form.clone());
            }
        }
        if !self.entries.contains(&entry) {
            self.entries.push(entry);
        }
        Ok(())
    }

    pub fn entries(&self) -> &[AffixEntry] {
        &self.entries
    }

    pub fn stem_exceptions(&self) -> &HashSet<String> {
        &self.stem_exceptions
    }

    pub fn with_stem_exceptions<I, S>(mut self, words: I) -> AffixLexicon
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.stem_exceptions = words.into_iter().map(Into::into).collect();
        self
    }

    pub fn is_suffix_zwnj(&self, form: &str) -> bool {
        self.suffix_zwnj.contains(form)
    }

    pub fn is_prefix_zwnj(&self, form: &str) -> bool {
        self.prefix_zwnj.contains(form)
    }

    pub fn is_separate(&self, form: &str) -> bool {
        self.separate.contains(form)
    }

    /// Parse the lexicon file format: `FORM TAB SIDE TAB JOIN` with SIDE ∈
    /// {prefix, suffix, word} and JOIN ∈ {zwnj, separate}; `#` comments.
    /// SIDE `word` marks a free lexical element and expands to a Separate
    /// entry on both sides.
    pub fn parse(source: &str) -> Result<AffixLexicon, LexiconError> {
        let mut lexicon = AffixLexicon::default();
        for (lineno, raw) in source.lines().enumerate() {
            let line = lineno + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let fields: Vec<&str> = text.split('\t').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(LexiconError::Parse {
                    line,
                    message: "expected FORM<TAB>SIDE<TAB>JOIN".into(),
                });
            }
            let form = fields[0].to_string();
            let join = match fields[2] {
                "zwnj" => AffixJoin::Zwnj,
                "separate" => AffixJoin::Separate,
                other => {
                    return Err(LexiconError::Parse {
                        line,
                        message: format!("unknown join {other:?}, expected zwnj|separate"),
                    })
                }
            };
            let sides: &[AffixSide] = match fields[1] {
                "prefix" => &[AffixSide::Prefix],
                "suffix" => &[AffixSide::Suffix],
                "word" => {
                    if join != AffixJoin::Separate {
                        return Err(LexiconError::Parse {
                            line,
                            message: "side `word` requires join `separate`".into(),
                        });
                    }
                    &[AffixSide::Prefix, AffixSide::Suffix]
                }
                other => {
                    return Err(LexiconError::Parse {
                        line,
                        message: format!("unknown side {other:?}, expected prefix|suffix|word"),
                    })
                }
            };
            for side in sides {
                lexicon.insert(AffixEntry::new(form.clone(), *side, join))?;
            }
        }
        Ok(lexicon)
    }
}

/// The bundled inventory: ZWNJ suffixes ها، های، تر، ترین; ZWNJ prefixes
/// می، نمی; and the free elements به، را، که that must stay separate.
pub fn default_affix_lexicon() -> AffixLexicon {
    let zwnj_suffixes = ["ها", "های", "تر", "ترین"];
    let zwnj_prefixes = ["می", "نمی"];
    let separate_words = ["به", "را", "که"];
    let mut entries = Vec::new();
    for form in zwnj_suffixes {
        entries.push(AffixEntry::new(form, AffixSide::Suffix, AffixJoin::Zwnj));
    }
    for form in zwnj_prefixes {
        entries.push(AffixEntry::new(form, AffixSide::Prefix, AffixJoin::Zwnj));
    }
    for form in separate_words {
        entries.push(AffixEntry::new(
            form,
            AffixSide::Prefix,
            AffixJoin::Separate,
        ));
        entries.push(AffixEntry::new(
            form,
            AffixSide::Suffix,
            AffixJoin::Separate,
        ));
    }
    AffixLexicon::from_entries(entries).expect("bundled lexicon is valid")
}

/// Parse a known-words file: one word per line, `#` comments.
pub fn load_known_words(source: &str) -> HashSet<String> {
    source
        .lines()
        .filter_map(|raw| {
            let word = raw.split('#').next().unwrap_or("").trim();
            (!word.is_empty()).then(|| word.to_string())
        })
        .collect()
}

/// One pairwise merge performed by the repair pass, in the coordinates of
/// the token stream's source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct MergeEvent {
    pub side: AffixSide,
    /// Replaced region: gap plus affix token for a suffix, affix token plus
    /// gap for a prefix.
    pub span: (usize, usize),
    pub replacement: String,
}

fn ends_with_zwnj_suffix(text: &str, lexicon: &AffixLexicon) -> bool {
    lexicon.suffix_zwnj.iter().any(|f| {
        text.len() > f.len()
            && text.ends_with(f.as_str())
            && text[..text.len() - f.len()].ends_with(ZWNJ)
    })
}

fn starts_with_prefix_zwnj(text: &str, lexicon: &AffixLexicon) -> bool {
    lexicon
        .prefix_zwnj
        .iter()
        .any(|f| matches!(text.strip_prefix(f.as_str()), Some(rest) if rest.starts_with(ZWNJ)))
}

fn suffix_mergeable(stem: &Token, affix: &Token, lexicon: &AffixLexicon) -> bool {
    stem.kind == TokenKind::Word
        && affix.kind == TokenKind::Word
        && lexicon.is_suffix_zwnj(&affix.text)
        && !lexicon.is_separate(&stem.text)
        && !lexicon.stem_exceptions.contains(&stem.text)
        && !ends_with_zwnj_suffix(&stem.text, lexicon)
}

fn prefix_mergeable(affix: &Token, stem: &Token, lexicon: &AffixLexicon) -> bool {
    affix.kind == TokenKind::Word
        && stem.kind == TokenKind::Word
        && lexicon.is_prefix_zwnj(&affix.text)
        && !lexicon.is_separate(&stem.text)
        && !lexicon.stem_exceptions.contains(&stem.text)
        && !starts_with_prefix_zwnj(&stem.text, lexicon)
}

// The join is ZWNJ only where a real cursive join needs breaking: after a
// stem ending in a non-joining or right-joining context the ZWNJ would be a
// no-op that fix_zwnj deletes again, so those pairs attach directly. This
// keeps repaired text a fixed point of the normalizer.
fn join_after(text: &str) -> &'static str {
    if crate::normalize::ends_with_forward_joiner(text) {
        "\u{200C}"
    } else {
        ""
    }
}

pub(crate) fn repair_with_events(
    tokens: &[Token],
    lexicon: &AffixLexicon,
) -> (Vec<Token>, Vec<MergeEvent>) {
    let mut out: Vec<Token> = Vec::with_capacity(tokens.len());
    let mut events = Vec::new();
    for token in tokens {
        let prev = out.pop_if(|prev| {
            suffix_mergeable(prev, token, lexicon) || prefix_mergeable(prev, token, lexicon)
        });
        let Some(prev) = prev else {
            out.push(token.clone());
            continue;
        };
        let join = join_after(&prev.text);
        if suffix_mergeable(&prev, token, lexicon) {
            events.push(MergeEvent {
                side: AffixSide::Suffix,
                span: (prev.end, token.end),
                replacement: format!("{join}{}", token.text),
            });
        } else {
            events.push(MergeEvent {
                side: AffixSide::Prefix,
                span: (prev.start, token.start),
                replacement: format!("{}{join}", prev.text),
            });
        }
        out.push(Token::new(
            format!("{}{join}{}", prev.text, token.text),
            prev.start,
            token.end,
            TokenKind::Word,
        ));
    }
    (out, events)
}

/// Merge space-separated bound morphemes back onto their stems, joined by a
/// single ZWNJ where the stem joins forward and attached directly otherwise.
/// Left-to-right single pass; a token that already carries a ZWNJ-joined
/// affix on a side never merges again on that side, so the repair is
/// idempotent.
pub fn repair_affixes(tokens: &[Token], lexicon: &AffixLexicon) -> Vec<Token> {
    repair_with_events(tokens, lexicon).0
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct SplitEvent {
    pub span: (usize, usize),
    pub replacement: String,
}

pub(crate) fn split_with_events(
    tokens: &[Token],
    lexicon: &AffixLexicon,
    known_words: &HashSet<String>,
) -> (Vec<Token>, Vec<SplitEvent>) {
    let mut suffixes: Vec<&String> = lexicon.suffix_zwnj.iter().collect();
    suffixes.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut out = Vec::with_capacity(tokens.len());
    let mut events = Vec::new();
    for token in tokens {
        let mut rewritten = None;
        if token.kind == TokenKind::Word {
            for form in &suffixes {
                if token.text.len() > form.len() && token.text.ends_with(form.as_str()) {
                    let stem = &token.text[..token.text.len() - form.len()];
                    // A stem that cannot join forward needs no ZWNJ: the
                    // attached spelling already is the canonical form.
                    if !stem.ends_with(ZWNJ)
                        && crate::normalize::ends_with_forward_joiner(stem)
                        && known_words.contains(stem)
                    {
                        rewritten = Some(format!("{stem}{ZWNJ}{form}"));
                        break;
                    }
                }
            }
        }
        match rewritten {
            Some(text) => {
                events.push(SplitEvent {
                    span: (token.start, token.end),
                    replacement: text.clone(),
                });
                out.push(Token::new(text, token.start, token.end, TokenKind::Word));
            }
            None => out.push(token.clone()),
        }
    }
    (out, events)
}

/// Rewrite attached suffix forms into the ZWNJ orthography, but only when
/// the remaining stem is attested in `known_words` — no blind morphology.
pub fn split_attached(
    tokens: &[Token],
    lexicon: &AffixLexicon,
    known_words: &HashSet<String>,
) -> Vec<Token> {
    split_with_events(tokens, lexicon, known_words).0
}
