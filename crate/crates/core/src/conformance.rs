//! Deviation detection with located, machine-applicable fixes. The checker
//! runs the same stages as the normalizer while tracking each character's
//! origin in the raw input, so applying every suggested fix in span order
//! reproduces the normalize-plus-repair output byte for byte.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::affix::{repair_with_events, split_with_events, AffixLexicon};
use crate::charset::{classify, CharClass, ZWJ};
use crate::normalize::{zwnj_keep_mask, DigitMode, NormalizationConfig};
use crate::tokenize::{tokenize, TokenizerConfig};

/// Deviation categories. Each kind corresponds to exactly one pipeline stage
/// that fixes it; `ZwjPresent` is report-only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ViolationKind {
    NonStandardLetter,
    Tatweel,
    ShortVowel,
    ArabicIndicDigit,
    ZwnjMisuse,
    SpaceJoinedAffix,
    AttachedAffix,
    ZwjPresent,
}

impl ViolationKind {
    pub fn name(&self) -> &'static str {
        match self {
            ViolationKind::NonStandardLetter => "NonStandardLetter",
            ViolationKind::Tatweel => "Tatweel",
            ViolationKind::ShortVowel => "ShortVowel",
            ViolationKind::ArabicIndicDigit => "ArabicIndicDigit",
            ViolationKind::ZwnjMisuse => "ZwnjMisuse",
            ViolationKind::SpaceJoinedAffix => "SpaceJoinedAffix",
            ViolationKind::AttachedAffix => "AttachedAffix",
            ViolationKind::ZwjPresent => "ZwjPresent",
        }
    }
}

impl std::fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One located deviation. `found` is the raw input slice at `start..end`
/// (code-point offsets); `suggested` is its replacement, absent for
/// report-only kinds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub start: usize,
    pub end: usize,
    pub found: String,
    pub suggested: Option<String>,
}

/// All deviations of one text, ordered by span start.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub total_code_points: usize,
    pub counts: BTreeMap<ViolationKind, usize>,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

// A character of the working text, remembering where it came from. `origin`
// is a single code-point index into the raw input; characters produced by a
// substitution also carry the edit that created them so later stages can
// fold their changes into that edit.
#[derive(Clone, Copy)]
struct TChar {
    ch: char,
    origin: usize,
    edit: Option<(usize, usize)>,
}

struct Edit {
    start: usize,
    end: usize,
    kind: ViolationKind,
    repl: Vec<Option<char>>,
    absorbed: bool,
}

impl Edit {
    fn suggested(&self) -> String {
        self.repl.iter().flatten().collect()
    }
}

/// Check `text` with the default tokenizer and no attached-affix splitting.
pub fn check(text: &str, config: &NormalizationConfig, lexicon: &AffixLexicon) -> Report {
    check_with(text, config, lexicon, &TokenizerConfig::default(), None)
}

/// Full-control variant: custom tokenizer config, and `known_words` enables
/// `AttachedAffix` detection (mirroring the opt-in split stage).
pub fn check_with(
    text: &str,
    config: &NormalizationConfig,
    lexicon: &AffixLexicon,
    tokenizer: &TokenizerConfig,
    known_words: Option<&HashSet<String>>,
) -> Report {
    let original: Vec<char> = text.chars().collect();
    let mut edits: Vec<Edit> = Vec::new();
    let mut cur: Vec<TChar> = original
        .iter()
        .enumerate()
        .map(|(i, c)| TChar {
            ch: *c,
            origin: i,
            edit: None,
        })
        .collect();

    if config.map_variants {
        let keep_digits = config.unify_digits == DigitMode::Preserve;
        let mut next = Vec::with_capacity(cur.len());
        for tc in cur {
            let mapped = if keep_digits && classify(tc.ch) == CharClass::ArabicIndicDigit {
                None
            } else {
                config.mapping.get(tc.ch)
            };
            match mapped {
                Some(repl) => {
                    let kind = if classify(tc.ch) == CharClass::ArabicIndicDigit {
                        ViolationKind::ArabicIndicDigit
                    } else {
                        ViolationKind::NonStandardLetter
                    };
                    let idx = edits.len();
                    edits.push(Edit {
                        start: tc.origin,
                        end: tc.origin + 1,
                        kind,
                        repl: repl.iter().map(|c| Some(*c)).collect(),
                        absorbed: false,
                    });
                    next.extend(repl.iter().enumerate().map(|(k, c)| TChar {
                        ch: *c,
                        origin: tc.origin,
                        edit: Some((idx, k)),
                    }));
                }
                None => next.push(tc),
            }
        }
        cur = next;
    }

    if config.remove_tatweel {
        delete_where(&mut cur, &mut edits, ViolationKind::Tatweel, |c| {
            c == crate::charset::TATWEEL
        });
    }
    if config.strip_diacritics {
        delete_where(&mut cur, &mut edits, ViolationKind::ShortVowel, |c| {
            classify(c) == CharClass::Diacritic
        });
    }
    if config.unify_digits == DigitMode::Persian {
        for tc in &mut cur {
            if classify(tc.ch) == CharClass::ArabicIndicDigit {
                let unified = char::from_u32(tc.ch as u32 + 0x90).unwrap();
                match tc.edit {
                    Some((e, p)) => edits[e].repl[p] = Some(unified),
                    None => {
                        let idx = edits.len();
                        edits.push(Edit {
                            start: tc.origin,
                            end: tc.origin + 1,
                            kind: ViolationKind::ArabicIndicDigit,
                            repl: vec![Some(unified)],
                            absorbed: false,
                        });
                        tc.edit = Some((idx, 0));
                    }
                }
                tc.ch = unified;
            }
        }
    }
    if config.fix_zwnj {
        let chars: Vec<char> = cur.iter().map(|t| t.ch).collect();
        let keep = zwnj_keep_mask(&chars);
        let mut next = Vec::with_capacity(cur.len());
        for (tc, keep) in cur.into_iter().zip(keep) {
            if keep {
                next.push(tc);
            } else {
                delete_one(tc, &mut edits, ViolationKind::ZwnjMisuse);
            }
        }
        cur = next;
    }

    // Affix stages run on the fully normalized stream. Their violations span
    // whole regions of the raw input, so earlier character-level edits inside
    // a region are absorbed: the region's suggested text already reflects
    // them, applied in stage order.
    let normalized: String = cur.iter().map(|t| t.ch).collect();
    let tokens = tokenize(&normalized, tokenizer);
    let (repaired, merges) = repair_with_events(&tokens, lexicon);
    for merge in merges {
        push_region_edit(
            &mut edits,
            &cur,
            merge.span,
            ViolationKind::SpaceJoinedAffix,
            merge.replacement,
        );
    }
    if let Some(known) = known_words {
        let (_, splits) = split_with_events(&repaired, lexicon, known);
        for split in splits {
            push_region_edit(
                &mut edits,
                &cur,
                split.span,
                ViolationKind::AttachedAffix,
                split.replacement,
            );
        }
    }

    let mut violations: Vec<Violation> = edits
        .iter()
        .filter(|e| !e.absorbed)
        .map(|e| Violation {
            kind: e.kind,
            start: e.start,
            end: e.end,
            found: original[e.start..e.end].iter().collect(),
            suggested: Some(e.suggested()),
        })
        .filter(|v| v.suggested.as_deref() != Some(v.found.as_str()))
        .collect();

    // ZWJ is described, never legislated against: report it, suggest nothing.
    let claimed: Vec<(usize, usize)> = violations.iter().map(|v| (v.start, v.end)).collect();
    for (i, c) in original.iter().enumerate() {
        if *c == ZWJ && !claimed.iter().any(|(s, e)| i >= *s && i < *e) {
            violations.push(Violation {
                kind: ViolationKind::ZwjPresent,
                start: i,
                end: i + 1,
                found: c.to_string(),
                suggested: None,
            });
        }
    }

    violations.sort_by_key(|v| (v.start, v.end));
    debug_assert!(violations.windows(2).all(|w| w[0].end <= w[1].start));

    let mut counts = BTreeMap::new();
    for v in &violations {
        *counts.entry(v.kind).or_insert(0) += 1;
    }
    Report {
        total_code_points: original.len(),
        counts,
        violations,
    }
}

fn delete_where(
    cur: &mut Vec<TChar>,
    edits: &mut Vec<Edit>,
    kind: ViolationKind,
    pred: impl Fn(char) -> bool,
) {
    let mut next = Vec::with_capacity(cur.len());
    for tc in cur.drain(..) {
        if pred(tc.ch) {
            delete_one(tc, edits, kind);
        } else {
            next.push(tc);
        }
    }
    *cur = next;
}

fn delete_one(tc: TChar, edits: &mut Vec<Edit>, kind: ViolationKind) {
    match tc.edit {
        Some((e, p)) => edits[e].repl[p] = None,
        None => edits.push(Edit {
            start: tc.origin,
            end: tc.origin + 1,
            kind,
            repl: Vec::new(),
            absorbed: false,
        }),
    }
}

fn push_region_edit(
    edits: &mut Vec<Edit>,
    cur: &[TChar],
    span: (usize, usize),
    kind: ViolationKind,
    replacement: String,
) {
    let (s, e) = span;
    debug_assert!(s < e && e <= cur.len());
    let start = cur[s].origin;
    let end = cur[e - 1].origin + 1;
    for edit in edits.iter_mut() {
        if !edit.absorbed && edit.start >= start && edit.end <= end {
            edit.absorbed = true;
        }
    }
    edits.push(Edit {
        start,
        end,
        kind,
        repl: replacement.chars().map(Some).collect(),
        absorbed: false,
    });
}

/// Apply every suggested fix of `report` to `text`, in span order.
/// Report-only violations (no suggestion) leave their span unchanged.
pub fn apply_fixes(text: &str, report: &Report) -> String {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::with_capacity(text.len());
    let mut cursor = 0;
    for v in &report.violations {
        out.extend(&chars[cursor..v.start]);
        match &v.suggested {
            Some(s) => out.push_str(s),
            None => out.extend(&chars[v.start..v.end]),
        }
        cursor = v.end;
    }
    out.extend(&chars[cursor..]);
    out
}

/// Render a report as human-readable text (one line per violation plus a
/// counts footer) or as the stable-key-order JSON schema.
pub fn render_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => serde_json::to_string(report).expect("report serializes"),
        ReportFormat::Text => {
            let mut out = String::new();
            for v in &report.violations {
                let suggested = match &v.suggested {
                    Some(s) => format!("{s:?}"),
                    None => "-".to_string(),
                };
                out.push_str(&format!(
                    "{}..{}\t{}\t{:?} -> {}\n",
                    v.start, v.end, v.kind, v.found, suggested
                ));
            }
            for (kind, count) in &report.counts {
                out.push_str(&format!("{kind}: {count}\n"));
            }
            out.push_str(&format!(
                "total: {} violation(s) in {} code point(s)\n",
                report.violations.len(),
                report.total_code_points
            ));
            out
        }
    }
}
