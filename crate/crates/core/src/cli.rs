//! Batch front end: streams files or stdin through normalize / tokenize /
//! check, line by line. Exit codes: 0 success (check: no violations), 1
//! violations found, 2 usage or file errors, 3 malformed input encoding.

use std::collections::HashSet;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::affix::{default_affix_lexicon, load_known_words, AffixLexicon};
use crate::charset::{default_mapping_table, load_mapping_table};
use crate::conformance::{check_with, render_report, Report, ReportFormat, Violation};
use crate::normalize::{DigitMode, NormalizationConfig};
use crate::standardize;
use crate::tokenize::{load_abbreviations, tokenize, TokenizerConfig};

#[derive(Debug, Parser)]
#[command(
    name = "dabir",
    version,
    about = "Farsi e-text canonicalization toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write canonicalized text, optionally with affix-boundary repair.
    Normalize(NormalizeArgs),
    /// Write one token per line: KIND TAB START TAB END TAB TEXT.
    Tokenize(TokenizeArgs),
    /// Report every deviation from the standard; exit 1 if any were found.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct NormalizeArgs {
    /// Input files; stdin when none are given.
    pub inputs: Vec<PathBuf>,
    #[command(flatten)]
    pub norm: NormFlags,
    /// Re-join space-separated affixes to their stems with ZWNJ.
    #[arg(long)]
    pub repair_affixes: bool,
    /// Split lexicon-attested attached affixes (requires --known-words).
    #[arg(long)]
    pub split_attached: bool,
    #[command(flatten)]
    pub lex: LexFlags,
    /// Write here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TokenizeArgs {
    /// Input files; stdin when none are given.
    pub inputs: Vec<PathBuf>,
    /// Abbreviation list: one dotted form per line, `#` comments.
    #[arg(long, value_name = "PATH")]
    pub abbrev: Option<PathBuf>,
    /// Emit dashes between words as separate Punct tokens.
    #[arg(long)]
    pub no_dash_compounds: bool,
    /// Write here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Input files; stdin when none are given.
    pub inputs: Vec<PathBuf>,
    #[command(flatten)]
    pub norm: NormFlags,
    /// Also flag attached affixes with attested stems (requires --known-words).
    #[arg(long)]
    pub split_attached: bool,
    #[command(flatten)]
    pub lex: LexFlags,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
    /// Write here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NormFlags {
    /// Keep Arabic-variant letters as written.
    #[arg(long)]
    pub no_map_variants: bool,
    /// Keep TATWEEL elongation characters.
    #[arg(long)]
    pub keep_tatweel: bool,
    /// Keep short-vowel diacritics.
    #[arg(long)]
    pub keep_diacritics: bool,
    #[arg(long, value_enum, default_value_t = DigitsArg::Persian)]
    pub digits: DigitsArg,
    /// Leave ZWNJ misuse as written.
    #[arg(long)]
    pub no_fix_zwnj: bool,
    /// Replace the bundled mapping table with this one.
    #[arg(long, value_name = "PATH")]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LexFlags {
    /// Replace the bundled affix lexicon with this one.
    #[arg(long, value_name = "PATH")]
    pub affixes: Option<PathBuf>,
    /// Known-words list for attached-affix splitting.
    #[arg(long, value_name = "PATH")]
    pub known_words: Option<PathBuf>,
    /// Abbreviation list for the tokenizer.
    #[arg(long, value_name = "PATH")]
    pub abbrev: Option<PathBuf>,
    /// Emit dashes between words as separate Punct tokens.
    #[arg(long)]
    pub no_dash_compounds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DigitsArg {
    Persian,
    Preserve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn encoding(label: &str, byte_offset: u64) -> Failure {
        Failure {
            code: 3,
            message: format!("invalid UTF-8 in {label} at byte {byte_offset}"),
        }
    }

    // A downstream consumer (e.g. `head`) closing the pipe is a normal way
    // to stop; exit quietly.
    fn write(e: io::Error) -> Failure {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Failure {
                code: 0,
                message: String::new(),
            }
        } else {
            Failure::usage(format!("cannot write output: {e}"))
        }
    }
}

/// Run one parsed invocation and return its exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Normalize(args) => run_normalize(args),
        Command::Tokenize(args) => run_tokenize(args),
        Command::Check(args) => run_check(args),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            if !failure.message.is_empty() {
                eprintln!("error: {}", failure.message);
            }
            failure.code
        }
    }
}

fn read_file(path: &Path, what: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {what} {}: {e}", path.display())))
}

fn build_norm_config(flags: &NormFlags) -> Result<NormalizationConfig, Failure> {
    let mapping = match &flags.table {
        Some(path) => load_mapping_table(&read_file(path, "table file")?)
            .map_err(|e| Failure::usage(format!("table file {}: {e}", path.display())))?,
        None => default_mapping_table(),
    };
    Ok(NormalizationConfig {
        map_variants: !flags.no_map_variants,
        remove_tatweel: !flags.keep_tatweel,
        strip_diacritics: !flags.keep_diacritics,
        unify_digits: match flags.digits {
            DigitsArg::Persian => DigitMode::Persian,
            DigitsArg::Preserve => DigitMode::Preserve,
        },
        fix_zwnj: !flags.no_fix_zwnj,
        mapping,
    })
}

fn build_lexicon(flags: &LexFlags) -> Result<AffixLexicon, Failure> {
    match &flags.affixes {
        Some(path) => AffixLexicon::parse(&read_file(path, "affix lexicon")?)
            .map_err(|e| Failure::usage(format!("affix lexicon {}: {e}", path.display()))),
        None => Ok(default_affix_lexicon()),
    }
}

fn build_tokenizer(abbrev: Option<&PathBuf>, no_dash: bool) -> Result<TokenizerConfig, Failure> {
    let abbreviations = match abbrev {
        Some(path) => load_abbreviations(&read_file(path, "abbreviation list")?)
            .map_err(|e| Failure::usage(format!("abbreviation list {}: {e}", path.display())))?,
        None => HashSet::new(),
    };
    Ok(TokenizerConfig {
        abbreviations,
        join_dash_compounds: !no_dash,
    })
}

fn build_known_words(
    split_attached: bool,
    known_words: Option<&PathBuf>,
) -> Result<Option<HashSet<String>>, Failure> {
    if !split_attached {
        return Ok(None);
    }
    let Some(path) = known_words else {
        return Err(Failure::usage("--split-attached requires --known-words"));
    };
    Ok(Some(load_known_words(&read_file(
        path,
        "known-words list",
    )?)))
}

fn open_output(path: Option<&PathBuf>) -> Result<BufWriter<Box<dyn Write>>, Failure> {
    let sink: Box<dyn Write> = match path {
        Some(path) => Box::new(File::create(path).map_err(|e| {
            Failure::usage(format!("cannot create output {}: {e}", path.display()))
        })?),
        None => Box::new(io::stdout().lock()),
    };
    Ok(BufWriter::new(sink))
}

struct LineChunk<'a> {
    content: &'a str,
    bom: &'a str,
    terminator: &'a str,
}

// Streams one input line by line, validating UTF-8 per line. A BOM at the
// very start of the stream is split off so processing never sees it.
fn stream_lines<R, F>(reader: R, label: &str, mut handle: F) -> Result<(), Failure>
where
    R: BufRead,
    F: FnMut(LineChunk) -> Result<(), Failure>,
{
    let mut reader = reader;
    let mut buf: Vec<u8> = Vec::new();
    let mut byte_offset: u64 = 0;
    let mut first = true;
    loop {
        buf.clear();
        let n = reader
            .read_until(b'\n', &mut buf)
            .map_err(|e| Failure::usage(format!("cannot read {label}: {e}")))?;
        if n == 0 {
            return Ok(());
        }
        let line_start = byte_offset;
        byte_offset += n as u64;
        let text = std::str::from_utf8(&buf)
            .map_err(|e| Failure::encoding(label, line_start + e.valid_up_to() as u64))?;
        let (body, terminator) = match text.strip_suffix("\r\n") {
            Some(body) => (body, "\r\n"),
            None => match text.strip_suffix('\n') {
                Some(body) => (body, "\n"),
                None => (text, ""),
            },
        };
        let (bom, content) = match (first, body.strip_prefix('\u{FEFF}')) {
            (true, Some(rest)) => ("\u{FEFF}", rest),
            _ => ("", body),
        };
        first = false;
        handle(LineChunk {
            content,
            bom,
            terminator,
        })?;
    }
}

// Runs `handle` over every input stream in order; files when given, stdin
// otherwise.
fn with_inputs<F>(inputs: &[PathBuf], mut handle: F) -> Result<(), Failure>
where
    F: FnMut(Box<dyn BufRead + '_>, &str) -> Result<(), Failure>,
{
    if inputs.is_empty() {
        let stdin = io::stdin();
        return handle(Box::new(stdin.lock()), "<stdin>");
    }
    for path in inputs {
        let file = File::open(path)
            .map_err(|e| Failure::usage(format!("cannot open {}: {e}", path.display())))?;
        let label = path.display().to_string();
        handle(Box::new(BufReader::new(file)), &label)?;
    }
    Ok(())
}

fn flush(writer: &mut impl Write) -> Result<(), Failure> {
    writer.flush().map_err(Failure::write)
}

fn write_out(writer: &mut impl Write, text: &str) -> Result<(), Failure> {
    writer.write_all(text.as_bytes()).map_err(Failure::write)
}

fn run_normalize(args: NormalizeArgs) -> Result<i32, Failure> {
    let config = build_norm_config(&args.norm)?;
    let tokenizer = build_tokenizer(args.lex.abbrev.as_ref(), args.lex.no_dash_compounds)?;
    let lexicon = build_lexicon(&args.lex)?;
    let known_words = build_known_words(args.split_attached, args.lex.known_words.as_ref())?;
    if args.split_attached && !args.repair_affixes {
        return Err(Failure::usage("--split-attached requires --repair-affixes"));
    }
    let repair = args.repair_affixes.then_some(&lexicon);

    let mut out = open_output(args.output.as_ref())?;
    with_inputs(&args.inputs, |reader, label| {
        stream_lines(reader, label, |chunk| {
            let line = standardize(
                chunk.content,
                &config,
                &tokenizer,
                repair,
                known_words.as_ref(),
            );
            write_out(&mut out, chunk.bom)?;
            write_out(&mut out, &line)?;
            write_out(&mut out, chunk.terminator)
        })
    })?;
    flush(&mut out)?;
    Ok(0)
}

fn run_tokenize(args: TokenizeArgs) -> Result<i32, Failure> {
    let tokenizer = build_tokenizer(args.abbrev.as_ref(), args.no_dash_compounds)?;
    let mut out = open_output(args.output.as_ref())?;
    // Token offsets are code points from the start of the concatenated
    // input, newlines included, BOM excluded.
    let mut offset = 0usize;
    with_inputs(&args.inputs, |reader, label| {
        stream_lines(reader, label, |chunk| {
            for token in tokenize(chunk.content, &tokenizer) {
                write_out(
                    &mut out,
                    &format!(
                        "{}\t{}\t{}\t{}\n",
                        token.kind,
                        token.start + offset,
                        token.end + offset,
                        token.text
                    ),
                )?;
            }
            offset += chunk.content.chars().count() + chunk.terminator.chars().count();
            Ok(())
        })
    })?;
    flush(&mut out)?;
    Ok(0)
}

fn run_check(args: CheckArgs) -> Result<i32, Failure> {
    let config = build_norm_config(&args.norm)?;
    let tokenizer = build_tokenizer(args.lex.abbrev.as_ref(), args.lex.no_dash_compounds)?;
    let lexicon = build_lexicon(&args.lex)?;
    let known_words = build_known_words(args.split_attached, args.lex.known_words.as_ref())?;

    let mut violations: Vec<Violation> = Vec::new();
    let mut total_code_points = 0usize;
    let mut offset = 0usize;
    with_inputs(&args.inputs, |reader, label| {
        stream_lines(reader, label, |chunk| {
            let report = check_with(
                chunk.content,
                &config,
                &lexicon,
                &tokenizer,
                known_words.as_ref(),
            );
            violations.extend(report.violations.into_iter().map(|mut v| {
                v.start += offset;
                v.end += offset;
                v
            }));
            let line_len = chunk.content.chars().count() + chunk.terminator.chars().count();
            offset += line_len;
            total_code_points += line_len;
            Ok(())
        })
    })?;

    let mut counts = std::collections::BTreeMap::new();
    for v in &violations {
        *counts.entry(v.kind).or_insert(0) += 1;
    }
    let report = Report {
        total_code_points,
        counts,
        violations,
    };
    let format = match args.format {
        FormatArg::Text => ReportFormat::Text,
        FormatArg::Json => ReportFormat::Json,
    };
    let mut out = open_output(args.output.as_ref())?;
    let mut rendered = render_report(&report, format);
    if format == ReportFormat::Json {
        rendered.push('\n');
    }
    write_out(&mut out, &rendered)?;
    flush(&mut out)?;
    Ok(if report.is_clean() { 0 } else { 1 })
}
