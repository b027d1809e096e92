use std::process::{Command, Output};

fn run_with(threads: Option<&str>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lrpuzzle"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("LRPUZZLE_THREADS", t),
        None => cmd.env_remove("LRPUZZLE_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String) {
    let o = run_with(None, args);
    (o.status.code().unwrap_or(-1), String::from_utf8(o.stdout).unwrap())
}

#[test]
fn basic_product() {
    assert_eq!(run(&["lr", "--space", "g(2,4)", "--theory", "h", "0101", "0101"]), (0, "0110\t1\n1001\t1\n".into()));
}

#[test]
fn equivariant_product() {
    assert_eq!(run(&["lr", "--space", "g(1,3)", "--theory", "ht", "010", "010"]), (0, "100\t1\n010\ty3 - y2\n".into()));
}

#[test]
fn k_theory_product() {
    assert_eq!(run(&["lr", "--space", "g(2,4)", "--theory", "k", "0101", "0101"]), (0, "1010\t-1\n0110\t1\n1001\t1\n".into()));
}

#[test]
fn worked_quantum_invariant() {
    assert_eq!(run(&["quantum", "--space", "g(3,6)", "-d", "1", "3,2,1", "3,2,1", "2,1"]), (0, "2\n".into()));
}

#[test]
fn quantum_product_lines() {
    assert_eq!(run(&["quantum", "--space", "g(2,4)", "1", "2,2"]), (0, "q^1\t1\t1\n".into()));
}

#[test]
fn single_coefficient_and_counts() {
    assert_eq!(run(&["lr", "--space", "g(3,6)", "--gamma", "101010", "010101", "010101"]), (0, "2\n".into()));
    let (code, out) = run(&["lr", "--space", "g(3,6)", "--count-puzzles", "010101", "010101"]);
    assert_eq!(code, 0);
    assert!(out.contains("101010\t2\n"));
}

#[test]
fn mondrian_game() {
    assert_eq!(run(&["mondrian", "--space", "g(3,6)", "2,1", "2,1"]), (0, "3,3\t1\n3,2,1\t2\n2,2,2\t1\n".into()));
    let (code, out) = run(&["mondrian", "--space", "g(2,4)", "--trace", "1", "1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("0\tO:[1,4] A1:[1,2] B1:[3,4]\n"));
}

#[test]
fn json_is_one_object() {
    let (code, out) = run(&["lr", "--json", "--space", "g(2,4)", "0101", "0101"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["terms"][0]["class"], "0110");
    assert_eq!(v["terms"][1]["coeff"], "1");
}

#[test]
fn trace_lines() {
    let (code, out) = run(&["lr", "--space", "g(2,4)", "--trace", "--gamma", "0110", "0101", "0101"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "# puzzle 0\t0110");
    assert_eq!(lines[1], "0\t0101\t0101");
    assert_eq!(*lines.last().unwrap(), "6\t0110\t0110");
}

#[test]
fn svg_files() {
    let dir = std::env::temp_dir().join(format!("lrpuzzle-svg-{}", std::process::id()));
    let d = dir.to_str().unwrap();
    let (code, _) = run(&["lr", "--space", "g(2,4)", "--render-dir", d, "0101", "0101"]);
    assert_eq!(code, 0);
    for i in 0..2 {
        let svg = std::fs::read_to_string(dir.join(format!("0101_0101_{i}.svg"))).unwrap();
        assert!(svg.starts_with("<svg"));
    }
    assert!(!dir.join("0101_0101_2.svg").exists());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn crosscheck_and_oracle() {
    assert_eq!(
        run(&["crosscheck", "--space", "g(2,5)", "--methods", "puzzle:h,lr,mondrian,giambelli,flag"]),
        (0, "OK 55 products\n".into())
    );
    assert_eq!(run(&["oracle", "--space", "g(2,4)", "--name", "lr", "0101", "0101"]), (0, "0110\t1\n1001\t1\n".into()));
}

#[test]
fn og_arithmetic() {
    assert_eq!(run(&["og", "associated", "--m", "6", "6,4"]), (0, "5,4,3,1\n".into()));
    assert_eq!(run(&["og", "discrepancy", "--m", "6", "--k", "2", "6,4"]), (0, "discrepancy\t8\ncodim\t18\n".into()));
    assert_eq!(run(&["og", "b-from-c", "--c", "4", "--su", "1", "--sv", "1", "--sw", "0"]), (0, "1\n".into()));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["lr", "--space", "g(2,4)", "--theory", "h2", "0101", "0101"]).0, 1);
    assert_eq!(run(&["lr", "--space", "g(2,4)", "0111", "0101"]).0, 1);
    assert_eq!(run(&["lr", "--bogus"]).0, 1);
    assert_eq!(run(&["quantum", "--space", "g(2,4)", "1", "1", "1"]).0, 1);
    assert_eq!(run(&["quantum", "--space", "g(2,4)", "-d", "1", "1", "1", "1"]).0, 1);
    assert_eq!(run(&["crosscheck", "--space", "fl(1,2;3)", "--methods", "lr,flag"]).0, 1);
    assert_eq!(run_with(Some("zero"), &["og", "associated", "--m", "3", "1"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn output_independent_of_threads() {
    let cases: [&[&str]; 3] = [
        &["lr", "--space", "fl(1,3;6)", "001021", "010201"],
        &["crosscheck", "--space", "g(3,6)", "--methods", "puzzle:h,lr"],
        &["quantum", "--space", "g(3,6)", "2,1", "3,2"],
    ];
    for args in cases {
        let one = run_with(Some("1"), args).stdout;
        let four = run_with(Some("4"), args).stdout;
        assert!(!one.is_empty());
        assert_eq!(one, four, "{args:?}");
    }
}
