use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn agq(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agq"))
        .args(args)
        .current_dir(dir)
        .env_remove("AGQ_PRECISION")
        .output()
        .expect("spawn agq")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn build_then_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = agq(d, &["--precision", "50", "build", "--measure", "lebesgue_pm1", "--order", "60", "--nodes", "8", "--out", "r.json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rule = fs::read_to_string(d.join("r.json")).unwrap();
    assert!(rule.contains("\"format\": \"agq-rule/1\""));

    let o = agq(d, &["sweep", "--rule", "r.json", "--nmax", "80", "--out", "s.csv"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let csv = fs::read_to_string(d.join("s.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,measured_error,bound"));
    assert_eq!(lines.count(), 81);
}

#[test]
fn two_atom_measure_gives_two_nodes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = agq(
        d,
        &["--precision", "40", "build", "--measure", "discrete", "--atoms", "-0.5,0.25", "--weights", "1,2", "--order", "10", "--eps", "1e-30", "--out", "r.json"],
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rule: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("r.json")).unwrap()).unwrap();
    assert_eq!(rule["nodes"].as_array().unwrap().len(), 2);
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&agq(d, &["build", "--measure", "lebesgue_pm1", "--order", "10"])), 1);
    assert_eq!(code(&agq(d, &["build", "--measure", "nope", "--order", "10", "--nodes", "2"])), 1);
    assert_eq!(code(&agq(d, &["sweep", "--rule", "missing.json"])), 1);
    assert_eq!(code(&agq(d, &["--precision", "5", "svd", "--measure", "lebesgue_pm1", "--size", "4"])), 1);
    assert_eq!(code(&agq(d, &["--help"])), 0);
}

#[test]
fn zero_measure_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("m.txt"), "0\n0\n0\n0\n0\n0\n0\n0\n0\n").unwrap();
    let o = agq(d, &["--precision", "30", "svd", "--measure", "moments", "--moments", "m.txt", "--size", "3"]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));
    assert!(stderr(&o).contains("zero"));
}

#[test]
fn flags_override_config_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("c.cfg"), "precision = 30\nmeasure = lebesgue_pm1\nsize = 6\n").unwrap();

    let run = |extra: &[&str], env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_agq"));
        c.current_dir(d).env_remove("AGQ_PRECISION");
        if let Some(p) = env {
            c.env("AGQ_PRECISION", p);
        }
        let o = c.args(extra).output().unwrap();
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        String::from_utf8(o.stdout).unwrap()
    };
    // The config fills in everything; the explicit --size wins over it.
    let a = run(&["--config", "c.cfg", "svd", "--size", "4"], None);
    assert_eq!(a.lines().count(), 1 + 4);
    // Config precision beats the environment; without a config the environment applies.
    let b = run(&["svd", "--measure", "lebesgue_pm1", "--size", "4"], Some("30"));
    assert_eq!(a, b);
    let c = run(&["svd", "--measure", "lebesgue_pm1", "--size", "4"], Some("60"));
    assert_ne!(a, c);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let args = ["--precision", "40", "svd", "--measure", "chebyshev1", "--size", "12", "--out", "OUT"];
    let mut outs = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let a: Vec<&str> = args.iter().map(|s| if *s == "OUT" { name } else { s }).collect();
        assert_eq!(code(&agq(d, &a)), 0);
        outs.push(fs::read(d.join(name)).unwrap());
    }
    assert_eq!(outs[0], outs[1]);
}

#[test]
fn constant_samples_give_one_term() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let mut text = String::from("a,0\nb,1\nM,20\n");
    for _ in 0..=20 {
        text.push_str("2.5\n");
    }
    fs::write(d.join("s.csv"), text).unwrap();
    let o = agq(d, &["--precision", "40", "expsum", "--samples", "s.csv", "--out", "e.json", "--residuals", "r.csv"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let e: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("e.json")).unwrap()).unwrap();
    assert_eq!(e["alpha"].as_array().unwrap().len(), 1);
    let r = fs::read_to_string(d.join("r.csv")).unwrap();
    assert_eq!(r.lines().next(), Some("x,abs_error"));
    assert_eq!(r.lines().count(), 1 + 21);
}
