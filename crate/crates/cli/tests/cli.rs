use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn teq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_teq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_methods_on_running_example() {
    let input = data("running_example.txt");
    for (method, expected) in [
        ("teq-exact", "a b c\n"),
        ("teq-heuristic", "a b c\n"),
        ("banks", "a b c d\n"),
        ("topcycle", "a b c d e\n"),
    ] {
        let o = teq(&["solve", "--input", path(&input), "--method", method]);
        assert_eq!(code(&o), 0, "{method}");
        assert_eq!(stdout(&o), expected, "{method}");
    }
}

#[test]
fn membership_with_witnesses() {
    let input = data("running_example.txt");
    let o = teq(&["solve", "-i", path(&input), "-m", "banks", "--member", "e"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "false\n"));

    let o = teq(&["solve", "-i", path(&input), "-m", "banks", "--member", "d"]);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("true"));
    assert!(lines.next().unwrap().starts_with("chain: d > "));

    let o = teq(&["solve", "-i", path(&input), "--member", "e"]);
    assert_eq!(stdout(&o), "false\npath: a => e\n");
    let o = teq(&["solve", "-i", path(&input), "--member", "a"]);
    assert_eq!(stdout(&o), "true\npath: a => b => c => a\n");

    let o = teq(&["solve", "-i", path(&input), "--member", "zz"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("zz"));
}

#[test]
fn trace_and_stats() {
    let input = data("running_example.txt");
    let o = teq(&["solve", "-i", path(&input), "--trace", "1"]);
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("TEQ{a,b,c,d,e} = {a,b,c}"));
    assert!(out.contains("  D(e) = {a,c,d}: TEQ = {a,c,d}\n"));
    let o = teq(&["solve", "-i", path(&input), "--stats"]);
    assert!(stderr(&o).starts_with("calls="));
}

#[test]
fn parse_errors_exit_2_naming_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "tournament 2\na b\n-1\n1-\n").unwrap();
    let o = teq(&["solve", "-i", path(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));

    let o = teq(&["solve", "-i", path(&dir.path().join("missing.txt"))]);
    assert_eq!(code(&o), 2);
    let o = teq(&["solve", "--method", "nope"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn reduce_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = data("three_clauses.cnf");
    for (target, size) in [("banks", 17), ("teq", 29)] {
        let out = dir.path().join(format!("{target}.txt"));
        let labels = dir.path().join(format!("{target}.labels"));
        let o = teq(&["reduce", "-i", path(&cnf), "-t", target, "-o", path(&out), "--labels", path(&labels)]);
        assert_eq!(code(&o), 0);
        let first = std::fs::read(&out).unwrap();
        assert!(String::from_utf8_lossy(&first).starts_with(&format!("tournament {size}\n")));
        let again = teq(&["reduce", "-i", path(&cnf), "-t", target]);
        assert_eq!(again.stdout, first);
        assert!(std::fs::read_to_string(&labels).unwrap().starts_with("d\t"));

        let o = teq(&["solve", "-i", path(&out), "-m", "banks", "--member", "d"]);
        assert_eq!(stdout(&o).lines().next(), Some("true"));
    }
    let dot = teq(&["reduce", "-i", path(&cnf), "-t", "teq", "--dot"]);
    let text = stdout(&dot);
    assert!(text.starts_with("digraph") && text.ends_with("}\n"));
}

#[test]
fn reduce_rejects_invalid_clause() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cnf");
    std::fs::write(&bad, "p cnf 3 2\n1 2 3 0\n1 -1 2 0\n").unwrap();
    let o = teq(&["reduce", "-i", path(&bad), "-t", "banks"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("clause 2"), "{}", stderr(&o));
}

#[test]
fn verify_verdicts() {
    let o = teq(&["verify", "-i", path(&data("three_clauses.cnf")), "-t", "banks"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("SAT=true MEMBER=true VERDICT=AGREE"));

    let o = teq(&["verify", "-i", path(&data("one_clause.cnf")), "-t", "teq"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "SAT=true MEMBER=true VERDICT=AGREE\n"));

    let o = teq(&["verify", "-i", path(&data("three_clauses.cnf")), "-t", "teq"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "SAT=true MEMBER=true VERDICT=UNVERIFIED\n");
    assert!(stderr(&o).starts_with("warning:"));

    let o = teq(&["verify", "-i", path(&data("all_signs.cnf")), "-t", "banks"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "SAT=false MEMBER=false VERDICT=AGREE\n"));
}

#[test]
fn time_budget_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.txt");
    let o = teq(&["reduce", "-i", path(&data("all_signs.cnf")), "-t", "teq", "-o", path(&big)]);
    assert_eq!(code(&o), 0);
    let o = teq(&["solve", "-i", path(&big), "--time-budget-ms", "200"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).starts_with("TIMEOUT budget_ms=200 "));
    assert!(stdout(&o).contains(" calls="));
}

#[test]
fn sweep_summaries_and_report_round_trip() {
    let o = teq(&["sweep", "--n", "3", "--exhaustive"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "8 instances, 0 failures\n"));
    let o = teq(&["sweep", "--n", "1"]);
    assert_eq!(stdout(&o), "1 instance, 0 failures\n");
    let o = teq(&["sweep", "--n", "9"]);
    assert_eq!(code(&o), 2);

    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.txt");
    let four = dir.path().join("four.txt");
    teq(&["sweep", "--n", "3..5", "--workers", "1", "-o", path(&one)]);
    teq(&["sweep", "--n", "3..5", "--workers", "4", "-o", path(&four)]);
    let strip = |p: &std::path::Path| -> String {
        std::fs::read_to_string(p)
            .unwrap()
            .lines()
            .filter(|l| !l.starts_with("workers ") && !l.starts_with("duration_ms "))
            .collect()
    };
    assert_eq!(strip(&one), strip(&four));

    let o = teq(&["sweep", "-i", path(&four), "--workers", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1096 instances, 0 failures\nreplay identical\n");

    let o = teq(&["sweep", "--n", "8", "--samples", "5", "--seed", "3", "--checks", "teq-in-banks,nonempty"]);
    assert_eq!(stdout(&o), "5 instances, 0 failures\n");
    let o = teq(&["sweep", "--n", "4", "--checks", "bogus"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn bench_prints_both_methods() {
    let o = teq(&["bench", "--sizes", "6..8:2", "--samples", "3", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 6);
    assert!(out.contains("mean_calls") && out.contains("teq-heuristic"));
    assert!(out.ends_with('\n'));
}
