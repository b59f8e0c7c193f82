use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_pbwtidx");

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env("PBWT_IDX_COLOR", "never")
        .output()
        .expect("spawn pbwtidx")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?} failed: {}", stderr(&o));
    stdout(&o)
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Fixture {
            dir: TempDir::new().unwrap(),
        }
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).to_str().unwrap().to_owned()
    }

    fn positional(&self, policy: &str, extra: &[&str]) -> String {
        let out = self.path(&format!("example-{policy}.idx"));
        let input = data("strings.txt");
        let mut args = vec![
            "build",
            "--input",
            input.to_str().unwrap(),
            "--policy",
            policy,
        ];
        args.extend_from_slice(extra);
        args.extend_from_slice(&["--output", &out]);
        ok(&args);
        out
    }

    fn substring(&self, text: &str, stride: &str) -> String {
        let out = self.path("text.idx");
        ok(&[
            "build",
            "--mode",
            "substring",
            "--text",
            text,
            "--sa-stride",
            stride,
            "--output",
            &out,
        ]);
        out
    }
}

#[test]
fn dump_pi_matches_golden() {
    let f = Fixture::new();
    let idx = f.positional("full", &[]);
    let golden = std::fs::read_to_string(data("permutations.tsv")).unwrap();
    assert_eq!(ok(&["dump", "pi", "--index", &idx]), golden);
}

#[test]
fn dump_pbwt_matches_golden() {
    let f = Fixture::new();
    let idx = f.positional("sampled", &[]);
    let golden = std::fs::read_to_string(data("pbwt.tsv")).unwrap();
    assert_eq!(ok(&["dump", "pbwt", "--index", &idx]), golden);
}

#[test]
fn dump_pi_needs_every_column() {
    let f = Fixture::new();
    let idx = f.positional("sampled", &["--stride", "3"]);
    let o = run(&["dump", "pi", "--index", &idx]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("PermutationNotStored"));
}

#[test]
fn build_prints_summary() {
    let f = Fixture::new();
    let out = f.path("x.idx");
    let input = data("strings.txt");
    let s = ok(&[
        "build",
        "--input",
        input.to_str().unwrap(),
        "--output",
        &out,
    ]);
    for part in ["n=8", "len=8", "sigma=4", "policy=sampled", "bytes="] {
        assert!(s.contains(part), "{s}");
    }
    let bytes: usize = s
        .split("bytes=")
        .nth(1)
        .unwrap()
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(bytes as u64, std::fs::metadata(&out).unwrap().len());
}

#[test]
fn positional_query_every_strategy_and_policy() {
    let f = Fixture::new();
    for policy in ["full", "sampled", "none"] {
        let idx = f.positional(policy, &[]);
        for strategy in ["binary", "backward", "rebuild"] {
            let s = ok(&[
                "query",
                "positional",
                "--index",
                &idx,
                "--pattern",
                "AGA",
                "--position",
                "3",
                "--strategy",
                strategy,
                "--sorted",
                "--verify",
            ]);
            assert_eq!(s, "1\n4\n5\n", "{policy}/{strategy}");
        }
    }
}

#[test]
fn positional_trace_then_row_order() {
    let f = Fixture::new();
    let idx = f.positional("sampled", &["--stride", "2"]);
    let s = ok(&[
        "query",
        "positional",
        "--index",
        &idx,
        "--pattern",
        "AGA",
        "--position",
        "3",
        "--trace",
    ]);
    assert_eq!(s, "6 0 7\n5 0 4\n4 3 5\n3 1 3\n5\n1\n4\n");
}

#[test]
fn positional_count_only() {
    let f = Fixture::new();
    let idx = f.positional("none", &[]);
    let s = ok(&[
        "query",
        "positional",
        "--index",
        &idx,
        "--pattern",
        "AGA",
        "--position",
        "3",
        "--count-only",
    ]);
    assert_eq!(s, "3\n");
}

#[test]
fn positional_empty_result_is_success() {
    let f = Fixture::new();
    let idx = f.positional("full", &[]);
    let o = run(&[
        "query",
        "positional",
        "--index",
        &idx,
        "--pattern",
        "GGG",
        "--position",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn positional_overrun_exits_2() {
    let f = Fixture::new();
    let idx = f.positional("full", &[]);
    let o = run(&[
        "query",
        "positional",
        "--index",
        &idx,
        "--pattern",
        "AGA",
        "--position",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("PatternOverrun"));
}

#[test]
fn unknown_pattern_character_exits_2() {
    let f = Fixture::new();
    let idx = f.positional("full", &[]);
    let o = run(&[
        "query",
        "positional",
        "--index",
        &idx,
        "--pattern",
        "AXA",
        "--position",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("UnknownCharacter"));
}

#[test]
fn dump_bwt_of_example() {
    let f = Fixture::new();
    let idx = f.substring("GATTAGATACAT", "5");
    assert_eq!(ok(&["dump", "bwt", "--index", &idx]), "TTTCGGAA$AATA\n");
}

#[test]
fn text_can_come_from_a_file() {
    let f = Fixture::new();
    let text = f.path("text.txt");
    std::fs::write(&text, "GATTAGATACAT\n").unwrap();
    let idx = f.substring(&text, "5");
    assert_eq!(ok(&["dump", "bwt", "--index", &idx]), "TTTCGGAA$AATA\n");
}

#[test]
fn substring_query() {
    let f = Fixture::new();
    let idx = f.substring("GATTAGATACAT", "5");
    assert_eq!(
        ok(&[
            "query",
            "substring",
            "--index",
            &idx,
            "--pattern",
            "TA",
            "--verify"
        ]),
        "3\n7\n"
    );
    assert_eq!(
        ok(&[
            "query",
            "substring",
            "--index",
            &idx,
            "--pattern",
            "ATA",
            "--count-only"
        ]),
        "1\n"
    );
    assert_eq!(
        ok(&["query", "substring", "--index", &idx, "--pattern", "GG"]),
        ""
    );
}

#[test]
fn substring_trace_lines_precede_results() {
    let f = Fixture::new();
    let idx = f.substring("GATTAGATACAT", "5");
    let s = ok(&[
        "query",
        "substring",
        "--index",
        &idx,
        "--pattern",
        "TA",
        "--trace",
    ]);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines.len(), 3 + 2);
    assert_eq!(&lines[3..], ["3", "7"]);
    for l in &lines[..3] {
        assert_eq!(l.split(' ').count(), 3, "{l}");
    }
}

#[test]
fn mode_mismatch_exits_2() {
    let f = Fixture::new();
    let pos = f.positional("full", &[]);
    let sub = f.substring("GATTAGATACAT", "5");
    for args in [
        vec!["dump", "bwt", "--index", &pos],
        vec!["dump", "pi", "--index", &sub],
        vec!["query", "substring", "--index", &pos, "--pattern", "A"],
        vec![
            "query",
            "positional",
            "--index",
            &sub,
            "--pattern",
            "A",
            "--position",
            "0",
        ],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains("ModeMismatch"), "{args:?}");
    }
}

#[test]
fn empty_input_exits_2() {
    let f = Fixture::new();
    let empty = f.path("empty.txt");
    std::fs::write(&empty, "").unwrap();
    let o = run(&["build", "--input", &empty, "--output", &f.path("e.idx")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("EmptyInput"));
}

#[test]
fn ragged_input_reports_line() {
    let f = Fixture::new();
    let bad = f.path("bad.txt");
    std::fs::write(&bad, "ACGT\nACG\n").unwrap();
    let o = run(&["build", "--input", &bad, "--output", &f.path("b.idx")]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(
        err.contains("RaggedCollection") && err.contains('2'),
        "{err}"
    );
}

#[test]
fn missing_files_exit_1() {
    let f = Fixture::new();
    let o = run(&[
        "build",
        "--input",
        &f.path("nope.txt"),
        "--output",
        &f.path("n.idx"),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["dump", "bwt", "--index", &f.path("nope.idx")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn corrupt_index_exits_2() {
    let f = Fixture::new();
    let bogus = f.path("bogus.idx");
    std::fs::write(&bogus, b"not an index").unwrap();
    let o = run(&["dump", "bwt", "--index", &bogus]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn stdin_input() {
    use std::io::Write;
    use std::process::Stdio;
    let f = Fixture::new();
    let out = f.path("stdin.idx");
    let mut child = Command::new(BIN)
        .args([
            "build", "--input", "-", "--policy", "full", "--output", &out,
        ])
        .stdin(Stdio::piped())
        .stdout(Stdio::null())
        .spawn()
        .unwrap();
    let example = std::fs::read(data("strings.txt")).unwrap();
    child.stdin.take().unwrap().write_all(&example).unwrap();
    assert!(child.wait().unwrap().success());
    let golden = std::fs::read_to_string(data("permutations.tsv")).unwrap();
    assert_eq!(ok(&["dump", "pi", "--index", &out]), golden);
}

#[test]
fn blocked_rank_tables_answer_the_same() {
    let f = Fixture::new();
    let idx = f.positional("none", &["--rank-block", "3"]);
    let s = ok(&[
        "query",
        "positional",
        "--index",
        &idx,
        "--pattern",
        "AGA",
        "--position",
        "3",
        "--sorted",
    ]);
    assert_eq!(s, "1\n4\n5\n");
}

#[test]
fn color_auto_is_plain_when_piped() {
    let f = Fixture::new();
    let idx = f.substring("GATTAGATACAT", "5");
    let o = Command::new(BIN)
        .args(["dump", "bwt", "--index", &idx])
        .env("PBWT_IDX_COLOR", "auto")
        .output()
        .unwrap();
    // stdout is a pipe here, so auto stays plain
    assert_eq!(stdout(&o), "TTTCGGAA$AATA\n");
}
