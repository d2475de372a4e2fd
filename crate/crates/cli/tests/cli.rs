use std::path::Path;
use std::process::{Command, Output};

fn residue(args: &[&str]) -> Output {
    residue_env(args, &[])
}

fn residue_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_residue"));
    cmd.args(args);
    for var in ["RESIDUE_LIMIT", "RESIDUE_PRECISION", "RESIDUE_SLACK", "RESIDUE_FORMAT", "RESIDUE_OUTPUT", "RESIDUE_THREADS", "RESIDUE_GRID_POINTS"] {
        cmd.env_remove(var);
    }
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn column<'a>(csv: &'a str, name: &str) -> Vec<&'a str> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let i = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(i).unwrap()).collect()
}

#[test]
fn psi_at_a_million() {
    let o = residue(&["psi", "--x", "1000000", "--limit", "1000000"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert_eq!(column(&out, "pass"), vec!["true"]);
    let psi: f64 = column(&out, "big_psi")[0].parse().unwrap();
    let main: f64 = column(&out, "lnlnx_plus_gamma")[0].parse().unwrap();
    let bound: f64 = column(&out, "bound")[0].parse().unwrap();
    assert!((psi - main).abs() < bound);
}

#[test]
fn usage_and_io_errors_exit_two() {
    assert_eq!(residue(&["psi"]).status.code(), Some(2));
    assert_eq!(residue(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(residue(&["psi", "--x", "100", "--limit", "50"]).status.code(), Some(2));
    assert_eq!(residue(&["verify-fields", "--input", "/nonexistent/fields.csv"]).status.code(), Some(2));
    assert_eq!(residue(&["psi", "--x", "100", "--slack", "0"]).status.code(), Some(2));
    assert_eq!(residue(&["psi", "--x", "100", "--precision", "quad"]).status.code(), Some(2));
}

#[test]
fn verify_lemmas_small() {
    let o = residue(&["verify-lemmas", "--limit", "100000", "--grid-points", "200", "--precision", "interval"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1 + 2 + 7);
    assert!(column(&out, "violations").iter().all(|v| *v == "0"));
    assert!(column(&out, "rigorous").iter().all(|v| *v == "true"));
}

#[test]
fn verify_fields_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("fields.csv");
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/fields.csv");
    std::fs::copy(&data, &input).unwrap();
    let report = dir.path().join("report.csv");
    let o = residue(&[
        "verify-fields",
        "--input",
        input.to_str().unwrap(),
        "--output",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let digest = String::from_utf8(o.stderr).unwrap();
    assert!(digest.contains("exceptions at constant 0: 3"), "{digest}");
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.starts_with("label,kappa,x_used,upper_19,lower_19,pass_upper,pass_lower,c_min_upper,c_min_lower,comparators,notes"));

    let jsonl = dir.path().join("report.jsonl");
    let o = residue(&["report", "--input", report.to_str().unwrap(), "--format", "jsonl", "--output", jsonl.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&jsonl).unwrap().lines().count(), 6);
}

#[test]
fn violation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.csv");
    // κ far above the upper bound for this discriminant
    std::fs::write(
        &input,
        "label,degree,r1,r2,disc,class_number,regulator,torsion,kappa\nbogus,2,0,1,-163,1,1,2,1e9\n",
    )
    .unwrap();
    let o = residue(&["verify-fields", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(column(&stdout(&o), "pass_upper"), vec!["false"]);
}

#[test]
fn flags_override_environment() {
    let from_env = residue_env(&["mertens", "--x", "1000"], &[("RESIDUE_FORMAT", "jsonl")]);
    assert!(stdout(&from_env).starts_with('{'));
    let flag_wins = residue_env(&["mertens", "--x", "1000", "--format", "csv"], &[("RESIDUE_FORMAT", "jsonl")]);
    assert!(stdout(&flag_wins).starts_with("x,product"));
    let bad_env = residue_env(&["mertens", "--x", "1000"], &[("RESIDUE_PRECISION", "bogus")]);
    assert_eq!(bad_env.status.code(), Some(2));
}

#[test]
fn output_is_deterministic_across_threads() {
    let run = |threads: &str| {
        let o = residue(&["verify-fields", "--quadratic-up-to", "2000", "--threads", threads]);
        assert_eq!(o.status.code(), Some(0));
        (o.stdout, o.stderr)
    };
    let one = run("1");
    assert_eq!(one, run("1"));
    assert_eq!(one, run("3"));
}

#[test]
fn scalar_subcommands() {
    let o = residue(&["zeta-product", "--x", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 8);

    let o = residue(&["bounds", "--degree", "2", "--disc", "-163", "--x", "5e5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let upper: f64 = column(&out, "upper")[0].parse().unwrap();
    assert!(upper > std::f64::consts::PI / 163f64.sqrt());

    let o = residue(&["min-const", "--degree", "2", "--disc", "-163", "--kappa", "0.24606852755296027"]);
    assert_eq!(o.status.code(), Some(0));
    let c: f64 = column(&stdout(&o), "c_min_lower")[0].parse().unwrap();
    assert!(c > 0.0);

    let o = residue(&["sigma", "--bundled", "--x", "500000", "--precision", "interval"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(column(&stdout(&o), "passed").iter().all(|v| *v == "true"));
}
