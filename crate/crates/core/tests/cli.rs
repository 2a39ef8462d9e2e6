use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_collatz-repr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn repr_and_invert() {
    assert_eq!(stdout(&["repr", "5/3"]), "[1,1,4,(2)]\n");
    assert_eq!(stdout(&["repr", "-7"]), "[(2,1)]\n");
    // 7/5 -> 13/5 -> 11/5 -> 19/5 -> 31/5 -> 49/5 -> 19/5
    assert_eq!(stdout(&["repr", "1.4"]), "[1,2,1,(1,1,3)]\n");
    assert_eq!(stdout(&["invert", "[4,1,(3)]"]), "-7/5\n");
    assert_eq!(
        stdout(&["invert", "[2,(1)]", "--dec", "4"]),
        "-5/3 ~ -1.667\n"
    );
    assert_eq!(
        stdout(&["repr", "27", "--max-steps", "5"]),
        "truncated after 5 steps: [1,2,1,1,1] last iterate 107\n"
    );
}

#[test]
fn repr_output_inverts_back() {
    for a in ["5/3", "-7/5", "7", "-17", "23/5", "-101/17", "13/11"] {
        let seq = stdout(&["repr", a]);
        assert_eq!(stdout(&["invert", seq.trim()]).trim(), a);
    }
}

#[test]
fn point_and_digits() {
    assert_eq!(stdout(&["point", "[1,2]"]), "(1/3, -13/9)\n");
    assert_eq!(stdout(&["point", "[]"]), "(1, -1)\n");
    assert_eq!(stdout(&["digits", "-5/3", "--digits", "4"]), "[2,1,1,1]\n");
    assert_eq!(stdout(&["digits", "-2", "--digits", "5"]), "[2,1,1,1,2]\n");
}

#[test]
fn approx_report() {
    let out = stdout(&["approx", "-2", "--eps", "1/10", "--trace", "--digits", "7"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "sequence: [2,1,1,1,2]");
    assert_eq!(lines[1], "value: -469/243");
    assert_eq!(lines[2], "error: 17/243");
    assert!(lines[3].starts_with("value_dec: -1.93004115226"));
    assert!(out.contains("round 1: twos 1 ones 3 error 1/3 -> 17/243"));
    assert!(out.contains("digits: [2,1,1,1,2,"));

    let decimal = stdout(&["approx", "-3.5", "--eps", "0.001"]);
    assert!(decimal.starts_with("sequence: ["));
}

#[test]
fn loops_formats() {
    let text = stdout(&[
        "loops",
        "--min",
        "-100",
        "--max",
        "100",
        "--max-steps",
        "1000",
    ]);
    assert!(text.contains("loop 4: [-17,-25,-37,-55,-41,-61,-91] cycle [(1,1,1,2,1,1,4)]"));
    assert!(text.contains("undecided: 0"));

    let json = stdout(&["loops", "--min", "-10", "--max", "10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["loops"].as_array().unwrap().len(), 3);
    assert_eq!(v["loops"][2]["members"], serde_json::json!(["-5", "-7"]));
    assert_eq!(v["scanned"], 10);
}

#[test]
fn fractal_outputs() {
    let csv = stdout(&["fractal", "--depth", "1", "--format", "csv"]);
    assert!(csv.starts_with("seq,x_exact,y_exact,x_dec,y_dec\n[],1/1,-1/1,1,-1\n"));

    let json = stdout(&["fractal", "--depth", "2", "--format", "json", "--dec", "4"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 7);
    assert_eq!(v["edges"][5], serde_json::json!([2, 6]));
    assert_eq!(v["nodes"][4]["x"], "1/3");
    assert_eq!(v["nodes"][4]["y_dec"], "-1.444");

    let dir = std::env::temp_dir().join(format!("collatz-repr-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p5.svg");
    let out = run(&[
        "fractal",
        "--depth",
        "5",
        "--format",
        "svg",
        "--viewport",
        "-4,3,-4,1",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches("<line ").count(), 62);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_reports() {
    let out = stdout(&["verify", "--depth", "3"]);
    assert!(out.starts_with("verify depth 3: 15 sequences checked\n"));
    assert!(out.contains("all suites passed"));
    assert!(!out.contains("FAIL"));
    assert_eq!(out, stdout(&["verify", "--depth", "3"]));
}

#[test]
fn exit_codes() {
    // domain errors
    for args in [
        &["repr", "2"][..],
        &["repr", "-1/3"],
        &["approx", "-1/2", "--eps", "1/10"],
        &["approx", "-2", "--eps", "0"],
        &["point", "[1,3]"],
        &["fractal", "--depth", "21"],
        &["verify", "--depth", "15"],
        &["fractal", "--depth", "2", "--viewport", "1,1,0,2"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
    // usage errors name the token
    for (args, token) in [
        (&["repr", "1/x"][..], "1/x"),
        (&["invert", "[4,1,3]"], "[4,1,3]"),
        (&["approx", "-2", "--eps", "tenth"], "tenth"),
        (&["fractal", "--depth", "2", "--viewport", "1,2,3"], "1,2,3"),
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains(token));
    }
    assert_eq!(
        run(&["fractal", "--depth", "2", "--format", "svg"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["loops", "--min", "5", "--max", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&[]).status.code(), Some(2));
}
