//! Integration tests for the `dabir` binary: exit codes, streaming
//! behavior, encoding diagnostics, and file overrides.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::{Command, Stdio};

fn run(args: &[&str], stdin: &[u8]) -> (i32, Vec<u8>, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dabir"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn dabir");
    child.stdin.as_mut().unwrap().write_all(stdin).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        out.stdout,
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn temp_file(name: &str, contents: &[u8]) -> PathBuf {
    let path = std::env::temp_dir().join(format!("dabir-test-{}-{name}", std::process::id()));
    fs::write(&path, contents).unwrap();
    path
}

#[test]
fn normalize_file_to_stdout() {
    let input = temp_file("in.txt", "كتـاب\n".as_bytes());
    let (code, stdout, _) = run(&["normalize", input.to_str().unwrap()], b"");
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(stdout).unwrap(), "کتاب\n");
    fs::remove_file(input).unwrap();
}

#[test]
fn normalize_stdin_preserves_line_structure() {
    let (code, stdout, _) = run(&["normalize"], "كتاب\r\nدوم\nسوم".as_bytes());
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(stdout).unwrap(), "کتاب\r\nدوم\nسوم");
}

#[test]
fn normalize_repairs_affixes_when_asked() {
    let (_, stdout, _) = run(&["normalize"], "کتاب ها\n".as_bytes());
    assert_eq!(String::from_utf8(stdout).unwrap(), "کتاب ها\n");
    let (_, stdout, _) = run(&["normalize", "--repair-affixes"], "کتاب ها\n".as_bytes());
    assert_eq!(String::from_utf8(stdout).unwrap(), "کتاب\u{200C}ها\n");
}

#[test]
fn normalize_split_attached_needs_known_words() {
    let (code, _, stderr) = run(&["normalize", "--repair-affixes", "--split-attached"], b"");
    assert_eq!(code, 2);
    assert!(stderr.contains("--known-words"), "{stderr}");

    let words = temp_file("words.txt", "کتاب\n".as_bytes());
    let (code, stdout, _) = run(
        &[
            "normalize",
            "--repair-affixes",
            "--split-attached",
            "--known-words",
            words.to_str().unwrap(),
        ],
        "کتابها\n".as_bytes(),
    );
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(stdout).unwrap(), "کتاب\u{200C}ها\n");
    fs::remove_file(words).unwrap();
}

#[test]
fn normalize_flags_disable_stages() {
    let (_, stdout, _) = run(&["normalize", "--keep-tatweel"], "کتـاب\n".as_bytes());
    assert_eq!(String::from_utf8(stdout).unwrap(), "کتـاب\n");
    let (_, stdout, _) = run(&["normalize", "--keep-diacritics"], "بَبر\n".as_bytes());
    assert_eq!(String::from_utf8(stdout).unwrap(), "بَبر\n");
    let (_, stdout, _) = run(&["normalize", "--digits", "preserve"], "٠١٢\n".as_bytes());
    assert_eq!(String::from_utf8(stdout).unwrap(), "٠١٢\n");
    let (_, stdout, _) = run(&["normalize", "--no-map-variants"], "كتاب\n".as_bytes());
    assert_eq!(String::from_utf8(stdout).unwrap(), "كتاب\n");
    let (_, stdout, _) = run(&["normalize", "--no-fix-zwnj"], "کتاب\u{200C} ها\n".as_bytes());
    assert_eq!(String::from_utf8(stdout).unwrap(), "کتاب\u{200C} ها\n");
}

#[test]
fn tokenize_dash_flag() {
    let (_, stdout, _) = run(&["tokenize"], "ایران-تهران\n".as_bytes());
    assert_eq!(String::from_utf8(stdout).unwrap().lines().count(), 1);
    let (_, stdout, _) = run(
        &["tokenize", "--no-dash-compounds"],
        "ایران-تهران\n".as_bytes(),
    );
    assert_eq!(String::from_utf8(stdout).unwrap().lines().count(), 3);
}

#[test]
fn bom_is_consumed_and_reemitted() {
    let mut input = vec![0xEF, 0xBB, 0xBF];
    input.extend_from_slice("كتاب\n".as_bytes());
    let (code, stdout, _) = run(&["normalize"], &input);
    assert_eq!(code, 0);
    let mut expected = vec![0xEF, 0xBB, 0xBF];
    expected.extend_from_slice("کتاب\n".as_bytes());
    assert_eq!(stdout, expected);
}

#[test]
fn tokenize_line_format_and_offsets() {
    let (code, stdout, _) = run(&["tokenize"], "او رفت.\nبعد\n".as_bytes());
    assert_eq!(code, 0);
    let text = String::from_utf8(stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines,
        vec![
            "Word\t0\t2\tاو",
            "Word\t3\t6\tرفت",
            "Punct\t6\t7\t.",
            // Offsets continue across lines, counting the newline.
            "Word\t8\t11\tبعد",
        ]
    );
}

#[test]
fn check_clean_text_exits_zero() {
    let (code, stdout, _) = run(&["check"], "کتاب\n".as_bytes());
    assert_eq!(code, 0);
    let text = String::from_utf8(stdout).unwrap();
    assert!(text.contains("total: 0 violation(s)"), "{text}");
}

#[test]
fn check_space_joined_affix_exits_one() {
    let (code, stdout, _) = run(&["check", "--format", "json"], "کتاب ها\n".as_bytes());
    assert_eq!(code, 1);
    let value: serde_json::Value =
        serde_json::from_str(&String::from_utf8(stdout).unwrap()).unwrap();
    assert_eq!(value["counts"]["SpaceJoinedAffix"], 1);
    assert_eq!(value["violations"][0]["start"], 4);
    assert_eq!(value["violations"][0]["end"], 7);
    // Line length including the newline.
    assert_eq!(value["total_code_points"], 8);
}

#[test]
fn check_offsets_accumulate_across_lines() {
    let (code, stdout, _) = run(&["check", "--format", "json"], "کتاب\nكتاب\n".as_bytes());
    assert_eq!(code, 1);
    let value: serde_json::Value =
        serde_json::from_str(&String::from_utf8(stdout).unwrap()).unwrap();
    assert_eq!(value["violations"][0]["kind"], "NonStandardLetter");
    assert_eq!(value["violations"][0]["start"], 5);
    assert_eq!(value["total_code_points"], 10);
}

#[test]
fn check_respects_disabled_stages() {
    let (code, _, _) = run(&["check", "--keep-tatweel"], "کتـاب\n".as_bytes());
    assert_eq!(code, 0);
}

#[test]
fn malformed_utf8_exits_three_with_offset() {
    let input = b"\xD9\x83\xFF\xD8\xAA\n"; // valid ك, stray 0xFF, valid ت
    let (code, _, stderr) = run(&["normalize"], input);
    assert_eq!(code, 3);
    assert!(stderr.contains("byte 2"), "{stderr}");
}

#[test]
fn malformed_utf8_offset_counts_earlier_lines() {
    let mut input = Vec::new();
    input.extend_from_slice("کتاب\n".as_bytes()); // 9 bytes
    input.extend_from_slice(b"\xFF\n");
    let (code, _, stderr) = run(&["check"], &input);
    assert_eq!(code, 3);
    assert!(stderr.contains("byte 9"), "{stderr}");
}

#[test]
fn missing_table_file_exits_two() {
    let (code, _, stderr) = run(&["normalize", "--table", "/nonexistent/table.txt"], b"");
    assert_eq!(code, 2);
    assert!(stderr.contains("table"), "{stderr}");
}

#[test]
fn invalid_table_file_exits_two_with_line() {
    let table = temp_file("table.txt", b"064A 06CC\nBAD LINE\n");
    let (code, _, stderr) = run(&["normalize", "--table", table.to_str().unwrap()], b"");
    assert_eq!(code, 2);
    assert!(stderr.contains("line 2"), "{stderr}");
    fs::remove_file(table).unwrap();
}

#[test]
fn custom_table_override_replaces_bundled() {
    // A table that only maps ك; ي must pass through untouched.
    let table = temp_file("custom.txt", b"0643 06A9\n");
    let (code, stdout, _) = run(
        &["normalize", "--table", table.to_str().unwrap()],
        "كتابي\n".as_bytes(),
    );
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(stdout).unwrap(), "کتابي\n");
    fs::remove_file(table).unwrap();
}

#[test]
fn custom_affix_lexicon() {
    let lex = temp_file("affixes.txt", "گان\tsuffix\tzwnj\n".as_bytes());
    let (code, stdout, _) = run(
        &[
            "normalize",
            "--repair-affixes",
            "--affixes",
            lex.to_str().unwrap(),
        ],
        "ستاره گان و کتاب ها\n".as_bytes(),
    );
    assert_eq!(code, 0);
    // Only the custom entry merges; the bundled ها entry is replaced.
    assert_eq!(
        String::from_utf8(stdout).unwrap(),
        "ستاره\u{200C}گان و کتاب ها\n"
    );
    fs::remove_file(lex).unwrap();
}

#[test]
fn abbrev_list_keeps_dotted_token_whole() {
    let abbrev = temp_file("abbrev.txt", "ق.م\n".as_bytes());
    let (code, stdout, _) = run(
        &["tokenize", "--abbrev", abbrev.to_str().unwrap()],
        "ق.م.\n".as_bytes(),
    );
    assert_eq!(code, 0);
    let text = String::from_utf8(stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.starts_with("Word\t0\t3\tق.م\n"), "{text}");
    fs::remove_file(abbrev).unwrap();
}

#[test]
fn output_flag_writes_file() {
    let out = std::env::temp_dir().join(format!("dabir-out-{}.txt", std::process::id()));
    let (code, stdout, _) = run(
        &["normalize", "--output", out.to_str().unwrap()],
        "كتاب\n".as_bytes(),
    );
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    assert_eq!(fs::read_to_string(&out).unwrap(), "کتاب\n");
    fs::remove_file(out).unwrap();
}

#[test]
fn determinism_same_input_same_bytes() {
    let input = "كتـاب ها\u{200C}\u{200C} ٠١٢ می رود\n".as_bytes();
    let (c1, o1, _) = run(&["normalize", "--repair-affixes"], input);
    let (c2, o2, _) = run(&["normalize", "--repair-affixes"], input);
    assert_eq!(c1, c2);
    assert_eq!(o1, o2);
}

#[test]
fn pipe_composition_normalize_repair_then_check_is_clean() {
    // normalize --repair-affixes | check exits 0.
    for input in [
        "كتـاب ها\n",
        "می رود و نمی رود.\n",
        "کتاب\u{200C}\u{200C}ها ٠١٢\n",
        "در ها و بَبر\n",
    ] {
        let (_, normalized, _) = run(&["normalize", "--repair-affixes"], input.as_bytes());
        let (code, _, _) = run(&["check"], &normalized);
        assert_eq!(code, 0, "input {input:?} -> {normalized:?}");
    }
}

#[test]
fn multiple_input_files_concatenate() {
    let a = temp_file("a.txt", "كتاب\n".as_bytes());
    let b = temp_file("b.txt", "کتـاب\n".as_bytes());
    let (code, stdout, _) = run(
        &["normalize", a.to_str().unwrap(), b.to_str().unwrap()],
        b"",
    );
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(stdout).unwrap(), "کتاب\nکتاب\n");
    fs::remove_file(a).unwrap();
    fs::remove_file(b).unwrap();
}

#[test]
fn missing_input_file_exits_two() {
    let (code, _, stderr) = run(&["normalize", "/nonexistent/input.txt"], b"");
    assert_eq!(code, 2);
    assert!(stderr.contains("cannot open"), "{stderr}");
}

#[test]
fn usage_error_exits_two() {
    let (code, _, _) = run(&["frobnicate"], b"");
    assert_eq!(code, 2);
    let (code, _, _) = run(&["normalize", "--digits", "roman"], b"");
    assert_eq!(code, 2);
}
