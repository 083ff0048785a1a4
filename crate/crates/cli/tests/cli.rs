use std::path::PathBuf;
use std::process::{Command, Output};

fn system(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../systems").join(name)
}

fn oretel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oretel")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn value<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix(": "))
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("oretel-{}-{name}", std::process::id()))
}

#[test]
fn telescope_differential_example() {
    let sys = system("diff_example.sys");
    let out = oretel(&["telescope", sys.to_str().unwrap(), "--phi", "0", "--format", "structured"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(value(&text, "order"), Some("2"));
    assert_eq!(value(&text, "verified"), Some("true"));
}

#[test]
fn bound_of_bessel_k2() {
    let sys = system("bessel_k2.sys");
    let out = oretel(&["bound", sys.to_str().unwrap(), "--phi", "0", "--format", "structured"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(value(&stdout(&out), "order_bound"), Some("8"));
}

#[test]
fn nonproper_system_exits_with_one() {
    let sys = system("nonproper.sys");
    let out = oretel(&["properness", sys.to_str().unwrap(), "--format", "structured"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(value(&stdout(&out), "proper"), Some("false"));
}

#[test]
fn verify_accepts_emitted_pairs() {
    for name in ["gamma_xy.sys", "gamma_sum_n2_r1.sys", "diff_example.sys", "bessel_k0.sys"] {
        let sys = system(name);
        let pair = scratch(&format!("{name}.pair"));
        let out = oretel(&["telescope", sys.to_str().unwrap(), "--phi", "0", "--out", pair.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let out = oretel(&["verify", sys.to_str().unwrap(), pair.to_str().unwrap(), "--format", "structured"]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(value(&stdout(&out), "verified"), Some("true"), "{name}");

        let tampered = std::fs::read_to_string(&pair).unwrap().replacen("certificate: ", "certificate: 2*", 1);
        std::fs::write(&pair, tampered).unwrap();
        let out = oretel(&["verify", sys.to_str().unwrap(), pair.to_str().unwrap(), "--format", "structured"]);
        assert_eq!(out.status.code(), Some(1), "{name}");
        let _ = std::fs::remove_file(&pair);
    }
}

#[test]
fn structured_output_is_reproducible() {
    let sys = system("gamma_sum_n1_r2.sys");
    let args = ["telescope", sys.to_str().unwrap(), "--format", "structured"];
    let first = oretel(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&oretel(&args)));
    assert!(!stdout(&first).contains("elapsed"));
    let text = stdout(&oretel(&["telescope", sys.to_str().unwrap()]));
    assert!(text.contains("elapsed"));
}

#[test]
fn sequential_and_threaded_runs_agree() {
    let sys = system("bessel_k1.sys");
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_oretel"))
            .args(["telescope", sys.to_str().unwrap(), "--phi", "0", "--format", "structured"])
            .env("ORETEL_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        stdout(&out)
    };
    assert_eq!(run("0"), run("4"));
}

#[test]
fn input_errors_exit_with_two() {
    let sys = system("gamma_xy.sys");
    let sys = sys.to_str().unwrap();
    assert_eq!(oretel(&["telescope", "/nonexistent/file.sys"]).status.code(), Some(2));
    assert_eq!(oretel(&["bound", sys, "--phi", "7"]).status.code(), Some(2));
    assert_eq!(oretel(&["telescope", sys, "--r-start", "0"]).status.code(), Some(2));
    assert_eq!(oretel(&["apply", sys, "Dx +", "1"]).status.code(), Some(2));

    let bad = scratch("bad.sys");
    std::fs::write(&bad, "algebra: x: shift, y: forward_difference\nn: 1\nu: x + y\nU: 1\nv: 1\nV: 1\ne: 1/x\n").unwrap();
    let out = oretel(&["bound", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("admissibility"));
    std::fs::write(&bad, "algebra: x: shift, y: forward_difference\nn: 1\nu: x + \n").unwrap();
    let out = oretel(&["bound", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
    let _ = std::fs::remove_file(&bad);
}

#[test]
fn search_cap_is_a_mathematical_failure() {
    let sys = system("gamma_sum_n2_r1.sys");
    let out = oretel(&["telescope", sys.to_str().unwrap(), "--r-max", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gff_and_apply() {
    let sys = system("gamma_xy.sys");
    let sys = sys.to_str().unwrap();
    let out = oretel(&["gff", sys, "y*(y+1)*(y+2)*(y+5)", "--format", "structured"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("factor: y; index 3"));
    assert_eq!(value(&text, "left_border"), Some("y^2 + 5*y"));

    let out = oretel(&["apply", sys, "Dx - 1", "x", "--format", "structured"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(value(&stdout(&out), "result"), Some("1"));
}
