//! Boundary-rule tokenizer: space always separates, listed punctuation marks
//! are single tokens, full stops inside configured abbreviations stay inside
//! the word, slashes glue digit runs, dashes optionally glue compounds, and
//! ZWNJ never splits a word.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::charset::{classify, CharClass, TATWEEL, ZWJ, ZWNJ};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Word,
    Number,
    Punct,
    Symbol,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            TokenKind::Word => "Word",
            TokenKind::Number => "Number",
            TokenKind::Punct => "Punct",
            TokenKind::Symbol => "Symbol",
        };
        f.write_str(name)
    }
}

/// A slice of the input with its span in code-point offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub start: usize,
    pub end: usize,
    pub kind: TokenKind,
}

impl Token {
    pub fn new(text: impl Into<String>, start: usize, end: usize, kind: TokenKind) -> Token {
        Token {
            text: text.into(),
            start,
            end,
            kind,
        }
    }
}

/// Tokenizer switches. Abbreviation entries must be nonempty, contain at
/// least one full stop, and contain no whitespace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizerConfig {
    pub abbreviations: HashSet<String>,
    pub join_dash_compounds: bool,
}

impl Default for TokenizerConfig {
    fn default() -> Self {
        TokenizerConfig {
            abbreviations: HashSet::new(),
            join_dash_compounds: true,
        }
    }
}

impl TokenizerConfig {
    pub fn with_abbreviations<I, S>(abbreviations: I) -> Result<TokenizerConfig, AbbrevError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut set = HashSet::new();
        for entry in abbreviations {
            let entry = entry.into();
            validate_abbreviation(&entry, None)?;
            set.insert(entry);
        }
        Ok(TokenizerConfig {
            abbreviations: set,
            join_dash_compounds: true,
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AbbrevError {
    #[error("{}abbreviation {entry:?} must contain a full stop", LinePrefix(*line))]
    MissingDot { line: Option<usize>, entry: String },
    #[error("{}abbreviation {entry:?} must not contain whitespace", LinePrefix(*line))]
    HasWhitespace { line: Option<usize>, entry: String },
}

struct LinePrefix(Option<usize>);

impl fmt::Display for LinePrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(line) => write!(f, "line {line}: "),
            None => Ok(()),
        }
    }
}

fn validate_abbreviation(entry: &str, line: Option<usize>) -> Result<(), AbbrevError> {
    if !entry.contains('.') {
        return Err(AbbrevError::MissingDot {
            line,
            entry: entry.to_string(),
        });
    }
    if entry.chars().any(char::is_whitespace) {
        return Err(AbbrevError::HasWhitespace {
            line,
            entry: entry.to_string(),
        });
    }
    Ok(())
}

/// Parse an abbreviation list: one entry per line, `#` comments.
pub fn load_abbreviations(source: &str) -> Result<HashSet<String>, AbbrevError> {
    let mut set = HashSet::new();
    for (lineno, raw) in source.lines().enumerate() {
        let entry = raw.split('#').next().unwrap_or("").trim();
        if entry.is_empty() {
            continue;
        }
        validate_abbreviation(entry, Some(lineno + 1))?;
        set.insert(entry.to_string());
    }
    Ok(set)
}

fn is_word_char(c: char) -> bool {
    c.is_alphabetic() || classify(c) == CharClass::Diacritic || c == TATWEEL
}

fn is_digit_char(c: char) -> bool {
    matches!(
        classify(c),
        CharClass::PersianDigit | CharClass::ArabicIndicDigit | CharClass::LatinDigit
    )
}

fn is_joiner(c: char) -> bool {
    c == ZWNJ || c == ZWJ
}

/// Split `text` into tokens. Spans are disjoint, ordered, and jointly cover
/// every non-space code point; decisions depend only on code points, never
/// on positional letter forms.
pub fn tokenize(text: &str, config: &TokenizerConfig) -> Vec<Token> {
    let chars: Vec<char> = text.chars().collect();
    let n = chars.len();
    // Longest-first candidate list for abbreviation matching.
    let mut abbrevs: Vec<Vec<char>> = config
        .abbreviations
        .iter()
        .map(|a| a.chars().collect())
        .collect();
    abbrevs.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));

    let mut tokens = Vec::new();
    let mut i = 0;
    while i < n {
        let c = chars[i];
        if classify(c) == CharClass::Space {
            i += 1;
            continue;
        }
        if let Some(len) = abbrev_match(&chars, i, &abbrevs) {
            tokens.push(slice_token(&chars, i, i + len, TokenKind::Word));
            i += len;
            continue;
        }
        if is_digit_char(c) {
            let mut j = i + 1;
            while j < n && is_digit_char(chars[j]) {
                j += 1;
            }
            // Slash glues digit runs: numbers and dates.
            while j + 1 < n && chars[j] == '/' && is_digit_char(chars[j + 1]) {
                j += 1;
                while j < n && is_digit_char(chars[j]) {
                    j += 1;
                }
            }
            tokens.push(slice_token(&chars, i, j, TokenKind::Number));
            i = j;
            continue;
        }
        if is_word_char(c) {
            let mut j = i + 1;
            loop {
                while j < n && is_word_char(chars[j]) {
                    j += 1;
                }
                // ZWNJ/ZWJ stay inside the word when flanked by word chars.
                let mut k = j;
                while k < n && is_joiner(chars[k]) {
                    k += 1;
                }
                if k > j && k < n && is_word_char(chars[k]) {
                    j = k;
                    continue;
                }
                if config.join_dash_compounds
                    && j < n
                    && chars[j] == '-'
                    && j + 1 < n
                    && chars[j + 1].is_alphabetic()
                {
                    j += 1;
                    continue;
                }
                break;
            }
            tokens.push(slice_token(&chars, i, j, TokenKind::Word));
            i = j;
            continue;
        }
        let kind = if classify(c) == CharClass::Punctuation {
            TokenKind::Punct
        } else {
            TokenKind::Symbol
        };
        tokens.push(slice_token(&chars, i, i + 1, kind));
        i += 1;
    }
    tokens
}

fn abbrev_match(chars: &[char], at: usize, abbrevs: &[Vec<char>]) -> Option<usize> {
    for entry in abbrevs {
        let len = entry.len();
        if at + len <= chars.len() && chars[at..at + len] == entry[..] {
            let boundary = match chars.get(at + len) {
                None => true,
                Some(next) => !is_word_char(*next) && !is_digit_char(*next),
            };
            if boundary {
                return Some(len);
            }
        }
    }
    None
}

fn slice_token(chars: &[char], start: usize, end: usize, kind: TokenKind) -> Token {
    Token::new(
        chars[start..end].iter().collect::<String>(),
        start,
        end,
        kind,
    )
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TokenListError {
    #[error("token {index}: span {start}..{end} exceeds input length {len}")]
    OutOfBounds {
        index: usize,
        start: usize,
        end: usize,
        len: usize,
    },
    #[error("token {index}: span {start}..{end} is empty or reversed")]
    EmptySpan {
        index: usize,
        start: usize,
        end: usize,
    },
    #[error("token {index}: span {start}..{end} overlaps the previous token")]
    Overlap {
        index: usize,
        start: usize,
        end: usize,
    },
}

/// Rebuild text by interleaving token texts with the inter-span characters
/// of `original`. For tokens straight out of [`tokenize`] this reproduces
/// `original` exactly; for repaired tokens it applies their rewrites.
pub fn detokenize(tokens: &[Token], original: &str) -> Result<String, TokenListError> {
    let chars: Vec<char> = original.chars().collect();
    let len = chars.len();
    let mut out = String::with_capacity(original.len());
    let mut cursor = 0usize;
    for (index, token) in tokens.iter().enumerate() {
        if token.end > len {
            return Err(TokenListError::OutOfBounds {
                index,
                start: token.start,
                end: token.end,
                len,
            });
        }
        if token.start >= token.end {
            return Err(TokenListError::EmptySpan {
                index,
                start: token.start,
                end: token.end,
            });
        }
        if token.start < cursor {
            return Err(TokenListError::Overlap {
                index,
                start: token.start,
                end: token.end,
            });
        }
        out.extend(&chars[cursor..token.start]);
        out.push_str(&token.text);
        cursor = token.end;
    }
    out.extend(&chars[cursor..]);
    Ok(out)
}
