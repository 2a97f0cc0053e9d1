use std::process::{Command, Output};

fn d0q(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_d0q"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn verify_json_for_11a3() {
    let out = d0q(&[
        "verify",
        "--N",
        "5",
        "--k",
        "2",
        "--param",
        "1",
        "--prec-bits",
        "256",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["all_match"], true);
    let rep = &v["reports"][0];
    assert_eq!(rep["N"], 5);
    assert_eq!(rep["k"], 2);
    assert_eq!(rep["recognized"], "-2/5");
    assert_eq!(rep["expected"], "-2/5");
    assert_eq!(rep["case"], "A");
    assert_eq!(rep["status"], "match");
    assert_eq!(v["table_checksum"].as_str().unwrap().len(), 64);
}

#[test]
fn verify_csv_is_clean() {
    let out = d0q(&[
        "verify",
        "--N",
        "6",
        "--k",
        "1",
        "--param",
        "1",
        "--prec-bits",
        "256",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("N,k,t,case,computed_R,recognized,expected,match,residual"));
    let fields: Vec<_> = lines[1].split(',').collect();
    assert_eq!(fields[0], "6");
    assert_eq!(fields[3], "B");
    assert_eq!(fields[5], "-1/3");
}

#[test]
fn low_precision_exits_with_2() {
    let out = d0q(&["verify", "--N", "5", "--k", "1", "--param", "1", "--prec-bits", "64"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("insufficient-precision"));
}

#[test]
fn usage_errors_exit_with_2() {
    for args in [
        &["verify", "--N", "11", "--k", "1"][..],
        &["verify", "--N", "5", "--k", "1", "--param", "0"],
        &[
            "period", "--a1", "0", "--a2", "0", "--a3", "0", "--a4", "0", "--a6", "0",
        ],
        &["expand", "--series", "hk", "--N", "5", "--k", "1", "--terms", "3"],
        &["bogus"],
    ] {
        let out = d0q(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn expand_dump() {
    let out = d0q(&["expand", "--series", "gk", "--N", "4", "--k", "1", "--terms", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0/1\t-1/2*z\n1/1\t-2*z\n2/1\t-2*z\n");
    let out = d0q(&["expand", "--series", "cusp0", "--N", "5", "--ell", "1", "--terms", "5"]);
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines, ["0/5\t-3/10", "1/5\t-1", "2/5\t-1", "3/5\t-1", "4/5\t0"]);
}

#[test]
fn recognize_exit_codes() {
    let out = d0q(&[
        "recognize",
        "--value",
        "0.4285714285714285714285714285714",
        "--max-height",
        "100",
        "--tol",
        "1e-25",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("3/7\n"));
    let out = d0q(&[
        "recognize",
        "--value",
        "3.14159265358979323846264338327950288",
        "--max-height",
        "1000",
        "--tol",
        "1e-30",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out).trim(), "none");
}

#[test]
fn period_of_11a3() {
    let out = d0q(&[
        "period",
        "--a1",
        "0",
        "--a2",
        "-1",
        "--a3",
        "1",
        "--a4",
        "0",
        "--a6",
        "0",
        "--prec-bits",
        "128",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("6.34604652139776710844"), "{text}");
    assert!(text.contains("components 1"));
}
