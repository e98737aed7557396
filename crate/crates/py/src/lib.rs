//! Python bindings for the `invsat` toolkit.
//!
//! Columns and cubes cross the boundary as ternary strings (`"FUTT"`),
//! assignments as lists of bools, path sets as their grouped bit strings.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use invsat::gen::GenSpec;
use invsat::io::{parse_dimacs, write_dimacs};
use invsat::oracle::Oracle;
use invsat::pathsem::{self, PathSemantics, DEFAULT_MAX_VARS};
use invsat::{Assignment, Column, FillPolicy, ResumeMode, SeedMode, SolverConfig};

fn to_py(e: invsat::Error) -> PyErr {
    match e {
        invsat::Error::InvariantViolation(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn column(text: &str) -> PyResult<Column> {
    text.parse().map_err(to_py)
}

fn cube_strings(cubes: Vec<Column>) -> Vec<String> {
    cubes.iter().map(Column::to_ternary_string).collect()
}

/// A CNF problem held as a ternary matrix.
#[pyclass(name = "Problem", module = "invsat_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyProblem {
    inner: invsat::Problem,
}

#[pymethods]
impl PyProblem {
    /// Builds a problem from ternary column strings.
    #[new]
    fn new(var_count: usize, columns: Vec<String>) -> PyResult<Self> {
        let refs: Vec<&str> = columns.iter().map(String::as_str).collect();
        let inner = invsat::Problem::from_column_strs(var_count, &refs).map_err(to_py)?;
        Ok(PyProblem { inner })
    }

    #[staticmethod]
    fn from_dimacs(text: &str) -> PyResult<Self> {
        let report = parse_dimacs(text).map_err(to_py)?;
        Ok(PyProblem {
            inner: report.problem,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (var_count, clause_count, width, seed, planted = false))]
    fn random(
        var_count: usize,
        clause_count: usize,
        width: usize,
        seed: u64,
        planted: bool,
    ) -> PyResult<Self> {
        let spec = GenSpec {
            var_count,
            clause_count,
            width,
            seed,
            planted,
        };
        let (inner, _) = invsat::gen::generate(&spec).map_err(to_py)?;
        Ok(PyProblem { inner })
    }

    #[getter]
    fn var_count(&self) -> usize {
        self.inner.var_count()
    }

    #[getter]
    fn clause_count(&self) -> usize {
        self.inner.clause_count()
    }

    #[getter]
    fn columns(&self) -> Vec<String> {
        self.inner
            .columns()
            .iter()
            .map(Column::to_ternary_string)
            .collect()
    }

    fn to_dimacs(&self) -> String {
        write_dimacs(&self.inner)
    }

    fn matrix(&self) -> String {
        invsat::io::format_matrix(&self.inner)
    }

    #[pyo3(signature = (max_vars = DEFAULT_MAX_VARS))]
    fn explain(&self, max_vars: usize) -> PyResult<String> {
        invsat::explain::explain(&self.inner, &PathSemantics::with_max_vars(max_vars))
            .map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!(
            "Problem(var_count={}, columns={:?})",
            self.inner.var_count(),
            self.columns()
        )
    }
}

/// Result of a solver run.
#[pyclass(name = "Solution", module = "invsat_py", frozen, get_all)]
pub struct PySolution {
    sat: bool,
    model: Option<Vec<bool>>,
    cube: Option<String>,
    stats_json: String,
}

#[pymethods]
impl PySolution {
    fn __repr__(&self) -> String {
        format!(
            "Solution(sat={}, model={:?}, cube={:?})",
            self.sat, self.model, self.cube
        )
    }
}

fn parse_mode<T: std::str::FromStr<Err = String>>(text: &str) -> PyResult<T> {
    text.parse().map_err(PyValueError::new_err)
}

/// Runs the inverse-cover intersection search.
#[pyfunction]
#[pyo3(signature = (problem, seed_mode = "all", resume_mode = "resume", dedup = true, fill = true))]
fn solve(
    problem: &PyProblem,
    seed_mode: &str,
    resume_mode: &str,
    dedup: bool,
    fill: bool,
) -> PyResult<PySolution> {
    let config = SolverConfig {
        seed_mode: parse_mode::<SeedMode>(seed_mode)?,
        resume_mode: parse_mode::<ResumeMode>(resume_mode)?,
        dedup,
        fill: if fill {
            FillPolicy::True
        } else {
            FillPolicy::False
        },
    };
    let start = std::time::Instant::now();
    let solution = invsat::solve(&problem.inner, &config).map_err(to_py)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let stats_json = invsat::io::stats_to_json(
        &problem.inner,
        &solution.outcome,
        &solution.stats,
        &config,
        ms,
    );
    let (model, cube) = match &solution.outcome {
        invsat::Outcome::Sat { model, cube } => (
            Some(model.values().to_vec()),
            Some(cube.to_ternary_string()),
        ),
        invsat::Outcome::Unsat => (None, None),
    };
    Ok(PySolution {
        sat: solution.outcome.is_sat(),
        model,
        cube,
        stats_json,
    })
}

#[pyfunction]
fn verify_model(problem: &PyProblem, model: Vec<bool>) -> PyResult<bool> {
    invsat::verify_model(&problem.inner, &Assignment::new(model)).map_err(to_py)
}

/// Brute-force list of every model, in leaf order.
#[pyfunction]
#[pyo3(signature = (problem, max_vars = DEFAULT_MAX_VARS))]
fn enumerate_models(problem: &PyProblem, max_vars: usize) -> PyResult<Vec<Vec<bool>>> {
    let set = Oracle::with_max_vars(max_vars)
        .enumerate_models(&problem.inner)
        .map_err(to_py)?;
    Ok(set.models.iter().map(|a| a.values().to_vec()).collect())
}

#[pyfunction]
#[pyo3(signature = (problem, max_vars = DEFAULT_MAX_VARS))]
fn decide(problem: &PyProblem, max_vars: usize) -> PyResult<bool> {
    Oracle::with_max_vars(max_vars)
        .decide(&problem.inner)
        .map_err(to_py)
}

/// Path set of a column as its grouped bit string.
#[pyfunction]
fn paths_of(col: &str) -> PyResult<String> {
    Ok(pathsem::paths_of(&column(col)?).map_err(to_py)?.to_string())
}

#[pyfunction]
fn membership(problem: &PyProblem) -> PyResult<String> {
    Ok(PathSemantics::default()
        .membership(&problem.inner)
        .map_err(to_py)?
        .to_string())
}

#[pyfunction]
fn answer_set(problem: &PyProblem) -> PyResult<String> {
    Ok(PathSemantics::default()
        .answer_set(&problem.inner)
        .map_err(to_py)?
        .to_string())
}

#[pyfunction]
fn inverse_cover(col: &str) -> PyResult<Vec<String>> {
    Ok(cube_strings(invsat::inverse_cover(&column(col)?)))
}

#[pyfunction]
fn sat_cover(col: &str) -> PyResult<Vec<String>> {
    Ok(cube_strings(invsat::sat_cover(&column(col)?)))
}

#[pyfunction]
fn overlap(a: &str, b: &str) -> PyResult<Option<String>> {
    let hit = invsat::overlap(&column(a)?, &column(b)?).map_err(to_py)?;
    Ok(hit.map(|c| c.to_ternary_string()))
}

#[pyfunction]
fn merge_adjacent(a: &str, b: &str) -> PyResult<Option<String>> {
    Ok(pathsem::merge_adjacent(&column(a)?, &column(b)?).map(|c| c.to_ternary_string()))
}

#[pymodule]
fn invsat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyProblem>()?;
    m.add_class::<PySolution>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(verify_model, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_models, m)?)?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(paths_of, m)?)?;
    m.add_function(wrap_pyfunction!(membership, m)?)?;
    m.add_function(wrap_pyfunction!(answer_set, m)?)?;
    m.add_function(wrap_pyfunction!(inverse_cover, m)?)?;
    m.add_function(wrap_pyfunction!(sat_cover, m)?)?;
    m.add_function(wrap_pyfunction!(overlap, m)?)?;
    m.add_function(wrap_pyfunction!(merge_adjacent, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use pyo3::types::PyDict;

    #[test]
    fn module_round_trip() {
        Python::initialize();
        Python::attach(|py| {
            let m = PyModule::new(py, "invsat_py").unwrap();
            invsat_py(&m).unwrap();
            let locals = PyDict::new(py);
            locals.set_item("inv", &m).unwrap();
            py.run(
                cr#"
p = inv.Problem.from_dimacs("p cnf 4 4\n-1 3 4 0\n2 0\n1 -2 -3 4 0\n-2 -4 0\n")
sol = inv.solve(p, seed_mode="first")
assert sol.sat and inv.verify_model(p, sol.model)
assert inv.answer_set(p) == "0100 0000 0001 0000"
assert inv.sat_cover("UTUU") == ["UTUU"]
try:
    inv.solve(p, seed_mode="sideways")
    raise AssertionError("bad mode accepted")
except ValueError:
    pass
"#,
                None,
                Some(&locals),
            )
            .unwrap();
        });
    }
}
