use flagtangle_cli::run;
use serde_json::Value;

fn json_of(s: &str) -> Value {
    serde_json::from_str(s.trim()).expect("valid json")
}

#[test]
fn circle_nu_and_phi() {
    let o = run(["flagtangle", "nu", "tests/corpus/s2_lhs.tgl"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, "(q-1)^-1 * []\n");
    let o = run(["flagtangle", "phi", "--q", "3", "tests/corpus/s2_lhs.tgl"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, "1/2 * []\n");
}

#[test]
fn parse_error_exits_2_with_line() {
    let o = run(["flagtangle", "--json", "nu", "tests/corpus/bad_syntax.tgl"]);
    assert_eq!(o.code, 2);
    assert!(o.stdout.is_empty());
    let v = json_of(&o.stderr);
    assert_eq!(v["error"], "parse");
    assert_eq!(v["line"], 2);
}

#[test]
fn grading_error_exits_2() {
    let o = run(["flagtangle", "grade", "tests/corpus/eye.tgl"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("slice 3"), "{}", o.stderr);
    let o = run(["flagtangle", "--json", "phi", "--q", "2", "tests/corpus/eye.tgl"]);
    assert_eq!(o.code, 2);
    assert_eq!(json_of(&o.stderr)["error"], "grading");
}

#[test]
fn missing_file_and_bad_usage_exit_2() {
    let o = run(["flagtangle", "nu", "tests/corpus/no_such_file.tgl"]);
    assert_eq!(o.code, 2);
    let o = run(["flagtangle", "phi", "tests/corpus/s2_lhs.tgl"]);
    assert_eq!(o.code, 2);
    let o = run(["flagtangle", "--json", "verify", "--suite", "moves", "--q", "2", "--deg-range", "2..1"]);
    assert_eq!(o.code, 2);
    assert_eq!(json_of(&o.stderr)["error"], "usage");
    let o = run(["flagtangle", "phi", "--q", "6", "tests/corpus/s2_lhs.tgl"]);
    assert_eq!(o.code, 2);
}

#[test]
fn nu_needs_empty_left() {
    let o = run(["flagtangle", "nu", "tests/corpus/r1_lhs.tgl"]);
    assert_eq!(o.code, 2);
}

#[test]
fn json_outputs_parse() {
    let o = run(["flagtangle", "--json", "phi", "--q", "2", "tests/corpus/braid_t1.tgl"]);
    assert_eq!(o.code, 0);
    let v = json_of(&o.stdout);
    assert_eq!(v["q"], 2);
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
    let o = run(["flagtangle", "--json", "rulings", "tests/corpus/clasp.tgl"]);
    assert_eq!(o.code, 0);
    assert!(json_of(&o.stdout).is_array());
    let o = run(["flagtangle", "--json", "grade", "tests/corpus/open_crossing.tgl"]);
    assert_eq!(json_of(&o.stdout)["right"]["degrees"], serde_json::json!([1, 1, 0, 0]));
}

#[test]
fn compare_bends_words_with_left_boundary() {
    for f in ["r3_lhs", "s1_shift_lhs_a", "braid_121"] {
        let o = run(["flagtangle", "compare", "--q", "3", &format!("tests/corpus/{}.tgl", f)]);
        assert_eq!(o.code, 0, "{}: {}", f, o.stdout);
        assert!(o.stdout.starts_with("compare_nu_phi: pass"));
    }
}

#[test]
fn hecke_and_verify_pass() {
    let o = run(["flagtangle", "hecke", "--rank", "2", "--q", "2", "--oracle"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert!(o.stdout.contains("T_i^2 = 1*T_i + 2*1"));
    let o = run(["flagtangle", "verify", "--suite", "all", "--q", "2", "--deg-range", "-1..1", "--count", "10"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    let o = run(["flagtangle", "--json", "verify", "--suite", "beta", "--q", "3", "--deg-range", "0..1"]);
    assert_eq!(o.code, 0);
    assert!(json_of(&o.stdout).as_array().unwrap().iter().all(|r| r["failures"].as_array().unwrap().is_empty()));
}
