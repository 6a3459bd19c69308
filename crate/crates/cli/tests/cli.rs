use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use weakcross::fixtures::paper_example;
use weakcross::format::{self, Instance};
use weakcross::Field;

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_weakcross"));
    cmd.args(args).env_remove("WEAKCROSS_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("spawn weakcross")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn export(dir: &TempDir, name: &str) -> PathBuf {
    let path = dir.path().join(format!("{name}.wxp"));
    let o = run(&["fixture", name, "--out", path.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    path
}

fn write_variant(dir: &TempDir, src: &Path, name: &str, edit: impl FnOnce(String) -> String) -> PathBuf {
    let text = std::fs::read_to_string(src).unwrap();
    let out = dir.path().join(name);
    std::fs::write(&out, edit(text)).unwrap();
    out
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn fixture_export_round_trips() {
    let dir = TempDir::new().unwrap();
    let path = export(&dir, "paper8");
    let text = std::fs::read_to_string(&path).unwrap();
    let expect = format::serialize(&Instance::from_fixture(&paper_example(Field::Rational)));
    assert_eq!(text, expect);
    let o = run(&["validate", p(&path)], &[]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("summary: PASS"));
}

#[test]
fn groupoid_fixture_dimension() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("g.wxp");
    let o = run(&["fixture", "groupoid-3", "--out", p(&path)], &[]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("dim H = 9"), "{}", stdout(&o));
}

#[test]
fn unknown_fixture_is_input_error() {
    let dir = TempDir::new().unwrap();
    let o = run(&["fixture", "nope", "--out", p(&dir.path().join("x"))], &[]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("unknown fixture"));
}

#[test]
fn non_square_antipode_is_rejected_with_position() {
    let dir = TempDir::new().unwrap();
    let src = export(&dir, "paper8");
    let bad = write_variant(&dir, &src, "ns.wxp", |t| t.replacen("  antipode 0 0 1", "  antipode-shape 8 7\n  antipode 0 0 1", 1));
    let o = run(&["validate", p(&bad)], &[]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("antipode must be square"), "{}", stderr(&o));
    assert!(stderr(&o).contains("line "), "{}", stderr(&o));
}

#[test]
fn parse_error_reports_line() {
    let dir = TempDir::new().unwrap();
    let src = export(&dir, "smash-c2");
    let bad = write_variant(&dir, &src, "pe.wxp", |t| t.replacen("mult ", "mlt ", 1));
    let o = run(&["validate", p(&bad)], &[]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line "), "{}", stderr(&o));
}

#[test]
fn dropped_comult_entry_fails_validation() {
    let dir = TempDir::new().unwrap();
    let src = export(&dir, "paper8");
    let bad = write_variant(&dir, &src, "bad.wxp", |t| t.replacen("  comult 0 0 0 1\n", "", 1));
    let o = run(&["validate", p(&bad)], &[]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("[counit"), "{out}");
    let o = run(&["--format", "machine", "validate", p(&bad)], &[]);
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("COND counit FAIL witness=h:")), "{out}");
    assert!(out.lines().last().unwrap().starts_with("SUMMARY FAIL"));
}

#[test]
fn paper_bb_conditions_report_10_witness() {
    let dir = TempDir::new().unwrap();
    let src = export(&dir, "paper8");
    let o = run(&["--format", "machine", "conditions", p(&src), "--set", "bb"], &[]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("COND 10 FAIL witness=h:5,l:HL0"), "{out}");
    assert!(out.contains("COND 8 PASS"), "{out}");
}

#[test]
fn smash_all_conditions_pass() {
    let dir = TempDir::new().unwrap();
    let src = export(&dir, "smash-c2");
    let o = run(&["conditions", p(&src), "--set", "all"], &[]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn missing_cocycle_skips_cocycle_conditions() {
    let dir = TempDir::new().unwrap();
    let src = export(&dir, "paper8");
    let noc = write_variant(&dir, &src, "noc.wxp", |t| {
        let start = t.find("cocycle bb").unwrap();
        let end = start + t[start..].find("end\n").unwrap() + 4;
        format!("{}{}", &t[..start], &t[end..])
    });
    let o = run(&["--format", "machine", "conditions", p(&noc), "--set", "bb"], &[]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("COND 7 SKIP"), "{out}");
    assert!(out.contains("SUMMARY PASS"));
}

#[test]
fn build_paper_bb_and_smash_tables_agree() {
    let dir = TempDir::new().unwrap();
    let paper = export(&dir, "paper8");
    let out = dir.path().join("p-bb.wxp");
    let o = run(&["build", p(&paper), "--construction", "bb", "--out", p(&out)], &[]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let table = std::fs::read_to_string(&out).unwrap();
    assert!(table.contains("product bb"));
    assert!(table.lines().any(|l| l.trim() == "dim 8"), "{table}");

    let smash = export(&dir, "smash-c2");
    let (bb, ag) = (dir.path().join("s-bb.wxp"), dir.path().join("s-ag.wxp"));
    for (c, path) in [("bb", &bb), ("ag", &ag)] {
        let o = run(&["build", p(&smash), "--construction", c, "--out", p(path)], &[]);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
    }
    let strip = |path: &Path| -> Vec<String> {
        std::fs::read_to_string(path)
            .unwrap()
            .lines()
            .filter(|l| !l.trim_start().starts_with("verdict") && !l.starts_with("product"))
            .map(str::to_owned)
            .collect()
    };
    assert_eq!(strip(&bb), strip(&ag));
}

#[test]
fn build_refuses_instance_failing_5() {
    let dir = TempDir::new().unwrap();
    let src = export(&dir, "paper8");
    // σ(λ_{10}^{10}, λ_{10}^{10}) gains a (0,1) component
    let bad = write_variant(&dir, &src, "s5.wxp", |t| t.replacen("  sig 0 0 0 1\n", "  sig 0 0 0 1\n  sig 0 0 1 1\n", 1));
    let o = run(&["build", p(&bad), "--construction", "bb", "--out", p(&dir.path().join("o"))], &[]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("precondition failed"), "{out}");
    assert!(out.contains("failing: 5, 6"), "{out}");
}

#[test]
fn compare_exits_zero_on_fixtures() {
    let dir = TempDir::new().unwrap();
    for name in ["groupoid-2", "smash-c2", "paper8"] {
        let src = export(&dir, name);
        let o = run(&["compare", p(&src)], &[]);
        assert_eq!(code(&o), 0, "{name}: {}", stdout(&o));
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let src = export(&dir, "paper8");
    let args = ["--format", "machine", "conditions", p(&src), "--set", "all"];
    let one = run(&args, &[("WEAKCROSS_THREADS", "1")]);
    let four = run(&args, &[("WEAKCROSS_THREADS", "4")]);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(code(&one), code(&four));
    let bad = run(&args, &[("WEAKCROSS_THREADS", "zero")]);
    assert_eq!(code(&bad), 2);
}
