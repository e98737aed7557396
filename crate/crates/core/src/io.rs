//! DIMACS CNF reading and writing, text rendering, and the stats JSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Assignment, Column, Problem};
use crate::pathsem::PathSet;
use crate::solver::{Outcome, SolveStats, SolverConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseReport {
    pub problem: Problem,
    pub dropped_tautologies: usize,
    pub collapsed_duplicate_literals: usize,
    pub warnings: Vec<String>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses DIMACS CNF.
///
/// Tautological clauses are dropped and counted, repeated literals are
/// collapsed, and a bare `0` becomes an all-`U` (empty) clause. A `%`
/// line ends the input, as in the SATLIB benchmark files.
pub fn parse_dimacs(text: &str) -> Result<ParseReport> {
    let mut header: Option<(usize, usize)> = None;
    let mut columns = Vec::new();
    let mut warnings = Vec::new();
    let mut dropped_tautologies = 0;
    let mut collapsed = 0;
    let mut pending: Vec<(usize, bool)> = Vec::new();
    let mut pending_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(parse_err(line_no, "duplicate problem line"));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return Err(parse_err(
                    line_no,
                    "expected header `p cnf <vars> <clauses>`",
                ));
            }
            let vars: usize = fields[2]
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad variable count {:?}", fields[2])))?;
            let clauses: usize = fields[3]
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad clause count {:?}", fields[3])))?;
            if vars == 0 {
                return Err(parse_err(line_no, "variable count must be positive"));
            }
            header = Some((vars, clauses));
            continue;
        }
        let Some((var_count, _)) = header else {
            return Err(parse_err(line_no, "clause before `p cnf` header"));
        };
        for token in line.split_whitespace() {
            let lit: i64 = token
                .parse()
                .map_err(|_| parse_err(line_no, format!("non-integer token {token:?}")))?;
            if lit == 0 {
                let mut literals = std::mem::take(&mut pending);
                let before = literals.len();
                literals.sort_unstable();
                literals.dedup();
                collapsed += before - literals.len();
                match Column::from_literals(literals, var_count) {
                    Ok(col) => columns.push(col),
                    Err(Error::Tautology { var }) => {
                        dropped_tautologies += 1;
                        warnings.push(format!(
                            "line {pending_line}: dropped tautological clause on x{var}"
                        ));
                    }
                    Err(e) => return Err(parse_err(line_no, e.to_string())),
                }
                continue;
            }
            let index = lit.unsigned_abs() as usize;
            if index > var_count {
                return Err(parse_err(
                    line_no,
                    format!("literal {lit} exceeds declared {var_count} variables"),
                ));
            }
            if pending.is_empty() {
                pending_line = line_no;
            }
            pending.push((index, lit > 0));
        }
    }

    let Some((var_count, declared)) = header else {
        return Err(parse_err(
            text.lines().count().max(1),
            "missing `p cnf` header",
        ));
    };
    if !pending.is_empty() {
        return Err(parse_err(
            pending_line,
            "final clause is not terminated by 0",
        ));
    }
    if columns.len() != declared {
        warnings.push(format!(
            "header declares {declared} clauses, kept {}",
            columns.len()
        ));
    }
    Ok(ParseReport {
        problem: Problem::new(var_count, columns)?,
        dropped_tautologies,
        collapsed_duplicate_literals: collapsed,
        warnings,
    })
}

pub fn write_dimacs(problem: &Problem) -> String {
    let mut out = format!("p cnf {} {}\n", problem.var_count(), problem.clause_count());
    for col in problem.columns() {
        for (i, positive) in col.literals() {
            let lit = i as i64 + 1;
            write!(out, "{} ", if positive { lit } else { -lit }).unwrap();
        }
        out.push_str("0\n");
    }
    out
}

/// One row per variable, one column per clause, cells separated by a
/// space. Rows are prefixed with the variable name.
pub fn format_matrix(problem: &Problem) -> String {
    let width = problem.var_count().to_string().len() + 1;
    let mut out = String::new();
    for var in 0..problem.var_count() {
        write!(out, "{:<width$} [", format!("x{}", var + 1)).unwrap();
        for (j, col) in problem.columns().iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            out.push(col.get(var).as_char());
        }
        out.push_str("]\n");
    }
    out
}

pub fn format_pathset(set: &PathSet) -> String {
    set.to_string()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Sat,
    Unsat,
}

/// The flat JSON record emitted per solver run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub decision: Decision,
    pub vars: usize,
    pub clauses: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cube: Option<String>,
    #[serde(flatten)]
    pub stats: SolveStats,
    #[serde(flatten)]
    pub config: SolverConfig,
    pub wall_time_ms: f64,
}

impl RunReport {
    pub fn new(
        problem: &Problem,
        outcome: &Outcome,
        stats: &SolveStats,
        config: &SolverConfig,
        wall_time_ms: f64,
    ) -> Self {
        let (decision, model, cube) = match outcome {
            Outcome::Sat { model, cube } => (
                Decision::Sat,
                Some(model.to_dimacs_literals()),
                Some(cube.to_ternary_string()),
            ),
            Outcome::Unsat => (Decision::Unsat, None, None),
        };
        RunReport {
            decision,
            vars: problem.var_count(),
            clauses: problem.clause_count(),
            model,
            cube,
            stats: *stats,
            config: *config,
            wall_time_ms,
        }
    }

    pub fn model_assignment(&self) -> Option<Assignment> {
        self.model
            .as_ref()
            .map(|lits| Assignment::new(lits.iter().map(|l| *l > 0).collect()))
    }
}

pub fn stats_to_json(
    problem: &Problem,
    outcome: &Outcome,
    stats: &SolveStats,
    config: &SolverConfig,
    wall_time_ms: f64,
) -> String {
    serde_json::to_string(&RunReport::new(
        problem,
        outcome,
        stats,
        config,
        wall_time_ms,
    ))
    .expect("report is always serializable")
}

pub fn stats_from_json(text: &str) -> std::result::Result<RunReport, serde_json::Error> {
    serde_json::from_str(text)
}

/// Reads a model in DIMACS solver-output style (`v 1 -2 3 0`, or bare
/// signed literals). Variables not mentioned default to FALSE.
pub fn parse_model(text: &str, var_count: usize) -> Result<Assignment> {
    let mut values = vec![false; var_count];
    let mut seen = vec![false; var_count];
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        let body = match line.split_once(char::is_whitespace) {
            Some(("v", rest)) => rest,
            _ if line == "v" => "",
            _ if line.is_empty() || line.starts_with('c') || line.starts_with('s') => continue,
            _ => line,
        };
        for token in body.split_whitespace() {
            let lit: i64 = token
                .parse()
                .map_err(|_| parse_err(line_no, format!("non-integer token {token:?}")))?;
            if lit == 0 {
                continue;
            }
            let index = lit.unsigned_abs() as usize;
            if index > var_count {
                return Err(parse_err(
                    line_no,
                    format!("literal {lit} exceeds {var_count} variables"),
                ));
            }
            if seen[index - 1] && values[index - 1] != (lit > 0) {
                return Err(parse_err(
                    line_no,
                    format!("variable {index} assigned twice"),
                ));
            }
            seen[index - 1] = true;
            values[index - 1] = lit > 0;
        }
    }
    Ok(Assignment::new(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathsem::{paths_of, PathSemantics};
    use crate::sample::{sample_problem, MEMBERSHIP, SAMPLE_DIMACS};
    use crate::solver::solve;

    #[test]
    fn parses_sample() {
        let report = parse_dimacs(SAMPLE_DIMACS).unwrap();
        assert_eq!(report.problem, sample_problem());
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn tautology_and_empty_clause() {
        let r = parse_dimacs("p cnf 2 1\n1 -1 0\n").unwrap();
        assert_eq!(r.problem.clause_count(), 0);
        assert_eq!(r.dropped_tautologies, 1);
        assert_eq!(r.warnings.len(), 2);

        let r = parse_dimacs("p cnf 3 1\n0\n").unwrap();
        assert_eq!(r.problem.columns(), &["UUU".parse::<Column>().unwrap()]);
    }

    #[test]
    fn collapses_duplicates_and_spans_lines() {
        let r = parse_dimacs("c hello\np cnf 3 1\n1 2\n 1 0\n").unwrap();
        assert_eq!(r.collapsed_duplicate_literals, 1);
        assert_eq!(r.problem.columns()[0].to_ternary_string(), "TTU");
    }

    #[test]
    fn error_paths_carry_line_numbers() {
        let cases = [
            ("1 2 0\n", 1),
            ("p cnf 2\n", 1),
            ("p cnf 2 1\n1 3 0\n", 2),
            ("p cnf 2 1\n1 x 0\n", 2),
            ("p cnf 2 1\n\n1 2\n", 3),
            ("c only comments\n", 1),
            ("p cnf 2 1\np cnf 2 1\n", 2),
        ];
        for (text, line) in cases {
            match parse_dimacs(text) {
                Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn header_mismatch_is_a_warning() {
        let r = parse_dimacs("p cnf 2 3\n1 0\n").unwrap();
        assert_eq!(r.problem.clause_count(), 1);
        assert_eq!(r.warnings.len(), 1);
        let r = parse_dimacs("p cnf 2 1\n1 0\n2 0\n%\n0\n").unwrap();
        assert_eq!(r.problem.clause_count(), 2);
    }

    #[test]
    fn writes_dimacs() {
        let p = sample_problem();
        assert_eq!(parse_dimacs(&write_dimacs(&p)).unwrap().problem, p);
        assert_eq!(
            write_dimacs(&Problem::new(5, vec![]).unwrap()),
            "p cnf 5 0\n"
        );
        let empty = Problem::from_column_strs(2, &["UU"]).unwrap();
        assert_eq!(write_dimacs(&empty), "p cnf 2 1\n0\n");
    }

    #[test]
    fn renders_text() {
        let c1: Column = "FUTT".parse().unwrap();
        assert_eq!(
            format_pathset(&paths_of(&c1).unwrap()),
            "0000 0000 1000 1000"
        );
        let rs = PathSemantics::default()
            .membership(&sample_problem())
            .unwrap();
        assert_eq!(format_pathset(&rs), MEMBERSHIP);
        assert_eq!(format_pathset(&PathSet::empty(2)), "0000");
        assert_eq!(
            format_matrix(&sample_problem()),
            "x1 [F U T U]\nx2 [U T F F]\nx3 [T U F U]\nx4 [T U T F]\n"
        );
    }

    #[test]
    fn stats_json() {
        let cfg = SolverConfig::default();
        let unsat = Problem::from_column_strs(1, &["T", "F"]).unwrap();
        let sol = solve(&unsat, &cfg).unwrap();
        let json = stats_to_json(&unsat, &sol.outcome, &sol.stats, &cfg, 0.5);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["decision"], "unsat");
        assert!(v.get("model").is_none());

        let p = sample_problem();
        let sol = solve(&p, &cfg).unwrap();
        let json = stats_to_json(&p, &sol.outcome, &sol.stats, &cfg, 1.25);
        let back = stats_from_json(&json).unwrap();
        assert_eq!(back.decision, Decision::Sat);
        assert_eq!(back.stats, sol.stats);
        assert_eq!(back.config, cfg);
        let model = back.model_assignment().unwrap();
        assert_eq!(model.len(), 4);
        assert!(crate::solver::verify_model(&p, &model).unwrap());
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["seed_mode"], "all");
        assert_eq!(v["fill"], "true");
    }

    #[test]
    fn reads_models() {
        let a = parse_model("s SATISFIABLE\nv 1 -2\nv 3 0\n", 4).unwrap();
        assert_eq!(a.values(), &[true, false, true, false]);
        assert_eq!(parse_model("-1 2 0", 2).unwrap().values(), &[false, true]);
        assert!(parse_model("v 5 0", 2).is_err());
        assert!(parse_model("v 1 -1 0", 2).is_err());
    }
}
