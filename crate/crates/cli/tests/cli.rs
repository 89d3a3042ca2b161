use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagchern")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn decompose_so6() {
    let o = run(&["decompose", "FD(3;1,2)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let dims: Vec<u64> = v["summands"].as_array().unwrap().iter().map(|s| s["dim_complex"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![2, 1, 2]);
}

#[test]
fn decompose_from_family_and_theta() {
    let a = run(&["decompose", "--family", "A", "--rank", "4", "--theta", "keep=2", "--format", "csv"]);
    assert_eq!(a.status.code(), Some(0));
    let b = run(&["decompose", "F(5;1,2,1,1)", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
    let mut dims: Vec<String> = stdout(&a).lines().skip(1).map(|l| l.split(',').nth(1).unwrap().to_string()).collect();
    dims.sort();
    assert_eq!(dims, vec!["1", "1", "1", "2", "2", "2"]);
}

#[test]
fn classify_f5_1_2_2() {
    let o = run(&["acs", "classify", "F(5;1,2,2)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let sizes: Vec<u64> = v["classes"].as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, vec![2, 1, 1]);
}

#[test]
fn enumerate_counts() {
    let o = run(&["acs", "enumerate", "F(4)", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 33);
    let o = run(&["acs", "enumerate", "F(4)", "--all", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 65);
}

#[test]
fn reproduce_tab5() {
    let o = run(&["table", "reproduce", "tab5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("| c1^6 | 46080 |"));
    assert!(text.contains("printed -96, suspected-typo"));
    assert_eq!(text.lines().filter(|l| l.starts_with("| c")).count(), 11);
    assert!(text.trim_end().ends_with("PASS: tab5: 44 cells, 1 flagged, 0 scaled, 0 discrepancies"));
}

#[test]
fn json_output_round_trips() {
    for args in [
        vec!["table", "reproduce", "tabso1", "--format", "json"],
        vec!["chern", "--manifold", "G2-long", "--todd", "--format", "json"],
        vec!["roots", "B", "3", "--format", "json"],
        vec!["cohomology", "verify", "--case", "so6-groebner", "--format", "json"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let text = stdout(&o);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text, "{args:?}");
    }
}

#[test]
fn chern_numbers_are_strings_in_json() {
    let o = run(&["chern", "--manifold", "F(7;1,2,4)", "--acs", "+,+,+", "--numbers", "c1^14", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["numbers"]["c1^14"], "4169710642825728");
}

#[test]
fn output_is_independent_of_jobs() {
    let a = run(&["chern", "--manifold", "F(5;1,2,2)", "--acs", "+,-,+", "--jobs", "1", "--format", "csv"]);
    let b = run(&["chern", "--manifold", "F(5;1,2,2)", "--acs", "+,-,+", "--jobs", "3", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 23);
}

#[test]
fn groebner_so6_preset() {
    let o = run(&["groebner", "--ideal", "so6", "--order", "lex", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["quotient_dimension"], 24);
    assert_eq!(v["basis"].as_array().unwrap().len(), 5);
    let o = run(&["groebner", "--ideal", "borel:C3", "--order", "grevlex", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["quotient_dimension"], 48);
}

#[test]
fn groebner_from_file() {
    let dir = std::env::temp_dir().join(format!("flagchern-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ideal.txt");
    std::fs::write(&path, "# elementary symmetric\na+b\na*b\n").unwrap();
    let o = run(&["groebner", "--ideal", path.to_str().unwrap(), "--vars", "a,b", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["quotient_dimension"], 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cohomology_case() {
    let o = run(&["cohomology", "verify", "--case", "a-full:4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS a-full:4"));
}

#[test]
fn verify_selected_criteria() {
    let o = run(&["verify", "all", "--criterion", "7", "--criterion", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("PASS criterion  7"));
    assert!(text.contains("2/2 criteria passed"));
}

#[test]
fn verification_failure_exits_2() {
    let o = run(&["verify", "all", "--criterion", "9", "--oracle", "weyl"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL criterion  9"));
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        vec!["frobnicate"],
        vec!["decompose", "E(8)"],
        vec!["chern", "--manifold", "F(4)", "--acs", "+,+"],
        vec!["chern", "--manifold", "F(4)", "--numbers", "c1^5"],
        vec!["table", "reproduce", "nope"],
        vec!["cohomology", "verify", "--case", "a-full:99"],
        vec!["roots", "A", "1", "--oracle", "magic"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn help_exits_0() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify"));
}

#[test]
fn todd_polynomial_text() {
    let o = run(&["todd", "4"]);
    assert_eq!(stdout(&o), "td_4 = (1/720)(-c4 + c1c3 + 3c2^2 + 4c1^2c2 - c1^4)\n");
}
