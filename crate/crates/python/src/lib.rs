//! Python extension module (`dabir_py`) exposing the toolkit's main types
//! and operations: normalize, tokenize, check, and per-code-point queries.

use std::collections::{BTreeMap, HashSet};

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use dabir::conformance::{check_with, render_report, Report as CoreReport, ReportFormat};
use dabir::{
    classify as core_classify, default_affix_lexicon, joining_class as core_joining, standardize,
    tokenize as core_tokenize, DigitMode, NormalizationConfig, TokenizerConfig,
};

fn digit_mode(digits: &str) -> PyResult<DigitMode> {
    match digits {
        "persian" => Ok(DigitMode::Persian),
        "preserve" => Ok(DigitMode::Preserve),
        other => Err(PyValueError::new_err(format!(
            "digits must be \"persian\" or \"preserve\", got {other:?}"
        ))),
    }
}

fn norm_config(
    map_variants: bool,
    remove_tatweel: bool,
    strip_diacritics: bool,
    digits: &str,
    fix_zwnj: bool,
) -> PyResult<NormalizationConfig> {
    Ok(NormalizationConfig {
        map_variants,
        remove_tatweel,
        strip_diacritics,
        unify_digits: digit_mode(digits)?,
        fix_zwnj,
        mapping: NormalizationConfig::default().mapping,
    })
}

fn tokenizer_config(
    abbreviations: Option<Vec<String>>,
    join_dash_compounds: bool,
) -> PyResult<TokenizerConfig> {
    let mut config = match abbreviations {
        Some(entries) => TokenizerConfig::with_abbreviations(entries)
            .map_err(|e| PyValueError::new_err(e.to_string()))?,
        None => TokenizerConfig::default(),
    };
    config.join_dash_compounds = join_dash_compounds;
    Ok(config)
}

/// A token with its `[start, end)` span in code points over the input.
#[pyclass(frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct Token {
    kind: String,
    start: usize,
    end: usize,
    text: String,
}

#[pymethods]
impl Token {
    fn __repr__(&self) -> String {
        format!(
            "Token(kind={:?}, start={}, end={}, text={:?})",
            self.kind, self.start, self.end, self.text
        )
    }
}

/// One located deviation; `suggested` is None for report-only kinds.
#[pyclass(frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct Violation {
    kind: String,
    start: usize,
    end: usize,
    found: String,
    suggested: Option<String>,
}

#[pymethods]
impl Violation {
    fn __repr__(&self) -> String {
        format!(
            "Violation(kind={:?}, start={}, end={}, found={:?}, suggested={:?})",
            self.kind, self.start, self.end, self.found, self.suggested
        )
    }
}

/// Conformance report for one text.
#[pyclass(frozen)]
struct Report {
    inner: CoreReport,
}

#[pymethods]
impl Report {
    #[getter]
    fn total_code_points(&self) -> usize {
        self.inner.total_code_points
    }

    #[getter]
    fn counts(&self) -> BTreeMap<String, usize> {
        self.inner
            .counts
            .iter()
            .map(|(k, v)| (k.name().to_string(), *v))
            .collect()
    }

    #[getter]
    fn violations(&self) -> Vec<Violation> {
        self.inner
            .violations
            .iter()
            .map(|v| Violation {
                kind: v.kind.name().to_string(),
                start: v.start,
                end: v.end,
                found: v.found.clone(),
                suggested: v.suggested.clone(),
            })
            .collect()
    }

    fn is_clean(&self) -> bool {
        self.inner.is_clean()
    }

    fn to_json(&self) -> String {
        render_report(&self.inner, ReportFormat::Json)
    }

    fn __len__(&self) -> usize {
        self.inner.violations.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Report(violations={}, total_code_points={})",
            self.inner.violations.len(),
            self.inner.total_code_points
        )
    }
}

/// Canonicalize Farsi text; optionally repair affix boundaries and split
/// attached affix forms whose stems appear in `known_words`.
#[pyfunction]
#[pyo3(signature = (
    text, *, map_variants = true, remove_tatweel = true, strip_diacritics = true,
    digits = "persian", fix_zwnj = true, repair_affixes = false,
    split_attached = false, known_words = None, abbreviations = None
))]
#[allow(clippy::too_many_arguments)]
fn normalize(
    text: &str,
    map_variants: bool,
    remove_tatweel: bool,
    strip_diacritics: bool,
    digits: &str,
    fix_zwnj: bool,
    repair_affixes: bool,
    split_attached: bool,
    known_words: Option<Vec<String>>,
    abbreviations: Option<Vec<String>>,
) -> PyResult<String> {
    let config = norm_config(
        map_variants,
        remove_tatweel,
        strip_diacritics,
        digits,
        fix_zwnj,
    )?;
    let tokenizer = tokenizer_config(abbreviations, true)?;
    if split_attached && !repair_affixes {
        return Err(PyValueError::new_err(
            "split_attached requires repair_affixes",
        ));
    }
    if split_attached && known_words.is_none() {
        return Err(PyValueError::new_err("split_attached requires known_words"));
    }
    let lexicon = default_affix_lexicon();
    let repair = repair_affixes.then_some(&lexicon);
    let known: Option<HashSet<String>> =
        split_attached.then(|| known_words.unwrap_or_default().into_iter().collect());
    Ok(standardize(
        text,
        &config,
        &tokenizer,
        repair,
        known.as_ref(),
    ))
}

/// Split text into tokens over code-point boundary rules.
#[pyfunction]
#[pyo3(signature = (text, *, abbreviations = None, join_dash_compounds = true))]
fn tokenize(
    text: &str,
    abbreviations: Option<Vec<String>>,
    join_dash_compounds: bool,
) -> PyResult<Vec<Token>> {
    let config = tokenizer_config(abbreviations, join_dash_compounds)?;
    Ok(core_tokenize(text, &config)
        .into_iter()
        .map(|t| Token {
            kind: t.kind.to_string(),
            start: t.start,
            end: t.end,
            text: t.text,
        })
        .collect())
}

/// Report every deviation from the standard with located suggested fixes.
#[pyfunction]
#[pyo3(signature = (
    text, *, map_variants = true, remove_tatweel = true, strip_diacritics = true,
    digits = "persian", fix_zwnj = true, known_words = None, abbreviations = None
))]
#[allow(clippy::too_many_arguments)]
fn check(
    text: &str,
    map_variants: bool,
    remove_tatweel: bool,
    strip_diacritics: bool,
    digits: &str,
    fix_zwnj: bool,
    known_words: Option<Vec<String>>,
    abbreviations: Option<Vec<String>>,
) -> PyResult<Report> {
    let config = norm_config(
        map_variants,
        remove_tatweel,
        strip_diacritics,
        digits,
        fix_zwnj,
    )?;
    let tokenizer = tokenizer_config(abbreviations, true)?;
    let lexicon = default_affix_lexicon();
    let known: Option<HashSet<String>> = known_words.map(|w| w.into_iter().collect());
    let inner = check_with(text, &config, &lexicon, &tokenizer, known.as_ref());
    Ok(Report { inner })
}

/// Character class name of a single code point.
#[pyfunction]
fn classify(ch: char) -> String {
    format!("{:?}", core_classify(ch))
}

/// Joining class name of a single code point.
#[pyfunction]
fn joining_class(ch: char) -> String {
    format!("{:?}", core_joining(ch))
}

#[pymodule]
fn dabir_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Token>()?;
    m.add_class::<Violation>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(tokenize, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(joining_class, m)?)?;
    Ok(())
}
