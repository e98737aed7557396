//! Human-readable walk through every artifact of a small problem: the
//! matrix, per-clause membership strings, the combined membership and
//! answer sets, and each clause's inverse and satisfying cover.

use std::fmt::Write as _;

use crate::error::Result;
use crate::io::format_matrix;
use crate::model::{Column, Problem};
use crate::pathsem::{leaf_index, PathSemantics};
use crate::solver::{inverse_cover, sat_cover};

fn join_cubes(cubes: &[Column]) -> String {
    if cubes.is_empty() {
        return "{}".to_string();
    }
    cubes
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn explain(problem: &Problem, semantics: &PathSemantics) -> Result<String> {
    let mut out = String::new();
    let w = &mut out;
    writeln!(
        w,
        "V = {}, C = {}, N = {}",
        problem.var_count(),
        problem.clause_count(),
        problem.input_size()
    )
    .unwrap();
    writeln!(w, "\nmatrix:").unwrap();
    w.push_str(&format_matrix(problem));

    writeln!(w, "\nclause membership:").unwrap();
    for (i, col) in problem.columns().iter().enumerate() {
        let set = semantics.paths_of(col)?;
        writeln!(w, "C_{} {} = {}", i + 1, col, set).unwrap();
    }

    let membership = semantics.membership(problem)?;
    let answers = membership.reverse_flip();
    writeln!(w, "\nR_S = {membership}").unwrap();
    writeln!(w, "R_A = {answers}").unwrap();

    writeln!(w, "\nanswers ({}):", answers.count_ones()).unwrap();
    for model in semantics.answers_of(problem)? {
        let p = leaf_index(&model);
        writeln!(w, "  position {} (leaf {}) = {}", p, p + 1, model).unwrap();
    }

    writeln!(w, "\ninverse covers:").unwrap();
    for (i, col) in problem.columns().iter().enumerate() {
        writeln!(w, "I_{} = {}", i + 1, join_cubes(&inverse_cover(col))).unwrap();
    }
    writeln!(w, "\nsat covers:").unwrap();
    for (i, col) in problem.columns().iter().enumerate() {
        writeln!(w, "S_{} = {}", i + 1, join_cubes(&sat_cover(col))).unwrap();
    }
    Ok(out)
}
