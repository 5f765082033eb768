use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syzchain"))
        .args(args)
        .env_remove("SYZCHAIN_PRIME")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value, String) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (out.status.code().unwrap(), v, text)
}

/// Compares against `tests/golden/<name>.json`; `SYZCHAIN_BLESS=1` rewrites it.
fn golden(name: &str, args: &[&str]) -> Value {
    let (code, v, text) = json(args);
    assert_eq!(code, 0, "{name}");
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"));
    if std::env::var_os("SYZCHAIN_BLESS").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(text, expected, "{name} drifted from its golden file");
    v
}

#[test]
fn butler_golden() {
    let v = golden("butler_g2_r3_deg15", &["butler", "--g", "2", "--r", "3", "--deg", "15"]);
    assert_eq!(v["bundle"]["h0"], 12);
    assert_eq!(v["kernel"]["rank"], 9);
    assert_eq!(v["kernel"]["degree"], -15);
    assert_eq!(v["kernel"]["slope"], "-5/3");

    let (_, v, _) = json(&["butler", "--g", "1", "--r", "1", "--deg", "3"]);
    assert_eq!(
        (v["kernel"]["rank"].as_i64(), v["kernel"]["degree"].as_i64()),
        (Some(2), Some(-3))
    );
    assert_eq!(v["kernel"]["slope"], "-3/2");
}

#[test]
fn bezout_golden() {
    let v = golden("bezout_2_6", &["verify", "bezout", "--m1", "2", "--m2", "6"]);
    assert_eq!(v["certificate"]["a"], 12);
    assert_eq!(v["certificate"]["b"], -1);
    assert_eq!(v["passed"], true);
}

#[test]
fn koszul_resolution_golden() {
    let v = golden(
        "resolve_one_point_module",
        &[
            "resolve",
            "--builtin",
            "one-point",
            "--d",
            "1",
            "--m",
            "1",
            "--mode",
            "module",
        ],
    );
    let stage = &v["chain"]["stages"][0];
    assert_eq!(stage["rank"], 1);
    assert_eq!(stage["chern"], serde_json::json!([1, -1, 0]));
    assert_eq!(stage["flags"]["locally_free"]["verdict"], "locally_free");
}

#[test]
fn three_points_golden() {
    let v = golden(
        "resolve_three_points_d3_m2",
        &["resolve", "--builtin", "three-points", "--d", "3", "--m", "2"],
    );
    let stage = &v["chain"]["stages"][0];
    assert_eq!(stage["dim_v"], 18);
    assert_eq!(stage["rank"], 17);
    assert_eq!(stage["chern"], serde_json::json!([1, -6, 33]));
    assert_eq!(v["chain"]["residual_zero"], true);
    assert_eq!(v["restriction"][0]["agree"], true);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        &[
            "resolve",
            "--builtin",
            "three-points",
            "--d",
            "3",
            "--m",
            "2",
            "--seed",
            "9",
        ][..],
        &["verify", "uniformity", "--trials", "3", "--seed", "4"][..],
        &[
            "verify",
            "genericity",
            "--r",
            "1",
            "--n",
            "2",
            "--v",
            "3",
            "--trials",
            "10",
        ][..],
    ] {
        let (_, _, a) = json(args);
        let (_, _, b) = json(args);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn line_in_space_has_two_stages() {
    let (code, v, _) = json(&["resolve", "--builtin", "line-p3", "--d", "2"]);
    assert_eq!(code, 0);
    let stages = v["chain"]["stages"].as_array().unwrap();
    assert_eq!(stages.len(), 2);
    assert_eq!(stages[0]["m"], 2);
    assert_eq!(stages[0]["dim_v"], 16);
    assert_eq!(stages[0]["h0"], 30);
    assert_eq!(v["chain"]["residual"], serde_json::json!(["0", "0", "0", "0"]));
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "whitney", "--trials", "50"]);
    assert!(out.status.success());
    let (code, v, _) = json(&["verify", "genericity", "--r", "1", "--n", "2", "--v", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["runs"][0]["failures"], 0);
    // too few sections: the suite confirms every draw fails and still passes
    let (code, v, _) = json(&[
        "verify",
        "genericity",
        "--r",
        "1",
        "--n",
        "2",
        "--v",
        "2",
        "--trials",
        "5",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["runs"][0]["failures"], 5);
}

#[test]
fn errors_carry_codes() {
    let cases: [(&[&str], &str, i32); 5] = [
        (&["butler", "--g", "1", "--r", "1", "--deg", "2"], "HYPOTHESIS", 22),
        (&["verify", "bezout", "--m1", "2", "--m2", "4"], "COPRIMALITY", 24),
        (
            &["resolve", "--builtin", "three-points", "--d", "3", "--m", "0"],
            "THRESHOLD",
            18,
        ),
        (
            &["resolve", "--builtin", "three-points", "--d", "3", "--prime", "32004"],
            "NOT_PRIME",
            12,
        ),
        (&["resolve", "--builtin", "nowhere", "--d", "3"], "INPUT", 27),
    ];
    for (args, code, exit) in cases {
        let (status, v, _) = json(args);
        assert_eq!(status, exit, "{args:?}");
        assert_eq!(v["error"]["code"], code, "{args:?}");
        assert_eq!(v["error"]["exit_code"], exit);
        let text = run(args);
        assert!(String::from_utf8_lossy(&text.stderr).contains(&format!("error[{code}]")));
    }
    let (_, v, _) = json(&["resolve", "--builtin", "three-points", "--d", "3", "--m", "0"]);
    assert_eq!(v["error"]["hint"], "rerun with --m 2");
}

#[test]
fn divisors_are_rejected() {
    let dir = std::env::temp_dir().join(format!("syzchain-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("conic.txt");
    std::fs::write(
        &path,
        "ambient: 2\nfield: F_32003\npolarization: 3\nideal:\nx0^2 + x1*x2\n",
    )
    .unwrap();
    let (code, v, _) = json(&["resolve", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 17);
    assert_eq!(v["error"]["code"], "CODIMENSION");
    assert!(v["error"]["message"].as_str().unwrap().contains("invertible"));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn prime_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_syzchain"))
        .args(["butler", "--g", "1", "--r", "1", "--deg", "3", "--format", "json"])
        .env("SYZCHAIN_PRIME", "101")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["prime"], 101);
}
