use std::fs;
use std::path::PathBuf;

use invsat::cli::{run, EXIT_ERROR, EXIT_INVALID_MODEL, EXIT_OK, EXIT_SAT, EXIT_UNSAT};
use invsat::io::{parse_dimacs, stats_from_json, Decision};
use invsat::verify_model;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("invsat").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn solve_reports_a_known_answer() {
    let path = golden("sample.cnf");
    let (code, out, _) = invoke(&["solve", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_SAT);
    assert!(out.starts_with("s SATISFIABLE\n"));
    assert!(
        out.contains("v 1 2 3 -4 0") || out.contains("v -1 2 -3 -4 0"),
        "{out}"
    );
    assert!(out.contains("c stats {"));
}

#[test]
fn solve_json_round_trips() {
    let path = golden("sample.cnf");
    for flags in [
        vec![],
        vec!["--seed-mode", "first", "--resume-mode", "restart"],
        vec!["--no-dedup", "--fill", "false"],
    ] {
        let mut args = vec!["solve", "--json", path.to_str().unwrap()];
        args.extend(flags);
        let (code, out, _) = invoke(&args);
        assert_eq!(code, EXIT_SAT);
        let report = stats_from_json(out.trim()).unwrap();
        assert_eq!(report.decision, Decision::Sat);
        let problem = parse_dimacs(&fs::read_to_string(&path).unwrap())
            .unwrap()
            .problem;
        assert!(verify_model(&problem, &report.model_assignment().unwrap()).unwrap());
    }
}

#[test]
fn unsat_exit_code() {
    let path = golden("empty-clause.cnf");
    let (code, out, _) = invoke(&["solve", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_UNSAT);
    assert!(out.starts_with("s UNSATISFIABLE"));

    let (code, out, _) = invoke(&["oracle", "--count", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_UNSAT);
    assert!(out.contains("c models 0"));
}

#[test]
fn oracle_lists_models() {
    let path = golden("sample.cnf");
    let (code, out, _) = invoke(&["oracle", "--models", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_SAT);
    assert!(out.contains("c models 2"));
    let lines: Vec<&str> = out.lines().filter(|l| l.starts_with("v ")).collect();
    assert_eq!(lines, ["v 1 2 3 -4 0", "v -1 2 -3 -4 0"]);
}

#[test]
fn explain_matches_golden() {
    let path = golden("sample.cnf");
    let (code, out, _) = invoke(&["explain", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        fs::read_to_string(golden("explain_sample.txt")).unwrap()
    );
    assert!(out.contains("R_S = 1111 0111 1111 1101\n"));
}

#[test]
fn explain_capacity_is_an_error() {
    let path = golden("sample.cnf");
    let (code, _, err) = invoke(&["explain", "--max-pathsem-vars", "3", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("capacity"), "{err}");
}

#[test]
fn gen_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("p.cnf");
    let args = [
        "gen",
        "--vars",
        "8",
        "--clauses",
        "30",
        "--width",
        "3",
        "--seed",
        "5",
        "--planted",
        "-o",
    ];
    let mut argv: Vec<&str> = args.to_vec();
    argv.push(cnf.to_str().unwrap());
    assert_eq!(invoke(&argv).0, EXIT_OK);
    let again = invoke(&[
        "gen",
        "--vars",
        "8",
        "--clauses",
        "30",
        "--seed",
        "5",
        "--planted",
    ]);
    assert_eq!(again.1, fs::read_to_string(&cnf).unwrap());

    let (code, out, _) = invoke(&["solve", cnf.to_str().unwrap()]);
    assert_eq!(code, EXIT_SAT);
    let model = dir.path().join("model.txt");
    fs::write(&model, out).unwrap();
    let (code, out, _) = invoke(&["verify", cnf.to_str().unwrap(), model.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");

    let bad = dir.path().join("bad.txt");
    let sample = golden("sample.cnf");
    fs::write(&bad, "v 1 -2 3 4 0\n").unwrap();
    let (code, out, _) = invoke(&["verify", sample.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID_MODEL);
    assert!(out.starts_with("invalid"));
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let (code, _, err) = invoke(&[
        "bench",
        "--sweep",
        "3:5",
        "--per-point",
        "2",
        "--all-configs",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(err.contains("agreed 24"), "{err}");
    let text = fs::read_to_string(csv).unwrap();
    assert_eq!(text.lines().count(), 25);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(invoke(&["solve", "--bogus", "x.cnf"]).0, EXIT_ERROR);
    assert_eq!(invoke(&[]).0, EXIT_ERROR);
    assert_eq!(invoke(&["solve", "/nonexistent/file.cnf"]).0, EXIT_ERROR);
    assert_eq!(
        invoke(&["solve", "--seed-mode", "middle", "x.cnf"]).0,
        EXIT_ERROR
    );
    assert_eq!(
        invoke(&["gen", "--vars", "2", "--clauses", "1", "--width", "3"]).0,
        EXIT_ERROR
    );
    assert_eq!(invoke(&["--help"]).0, EXIT_OK);

    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.cnf");
    fs::write(&broken, "p cnf 2 1\n1 3 0\n").unwrap();
    let (code, _, err) = invoke(&["solve", broken.to_str().unwrap()]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("line 2"), "{err}");
}
