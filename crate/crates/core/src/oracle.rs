//! Brute-force reference semantics.
//!
//! Reads the matrix strictly as a CNF formula and tries every total
//! assignment. Nothing in here goes through path sets, so it stays an
//! independent check on [`crate::pathsem`] and [`crate::solver`].

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{Assignment, Cell, Problem};
use crate::pathsem::{DEFAULT_MAX_VARS, HARD_MAX_VARS};

/// Satisfying assignments in ascending leaf order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSet {
    pub var_count: usize,
    pub models: Vec<Assignment>,
}

impl ModelSet {
    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }
}

// Counting up with the most significant digit on variable 1, and a 0 digit
// meaning TRUE, walks leaves in tree order.
fn nth_assignment(n: u64, var_count: usize) -> Vec<bool> {
    (0..var_count)
        .map(|i| (n >> (var_count - 1 - i)) & 1 == 0)
        .collect()
}

fn formula_satisfied(problem: &Problem, values: &[bool]) -> bool {
    problem
        .columns()
        .iter()
        .all(|col| clause_satisfied(col.cells(), values))
}

fn clause_satisfied(cells: &[Cell], values: &[bool]) -> bool {
    cells.iter().zip(values).any(|(c, v)| match c {
        Cell::T => *v,
        Cell::F => !*v,
        Cell::U => false,
    })
}

pub fn eval(problem: &Problem, assignment: &Assignment) -> Result<bool> {
    problem.check_assignment(assignment)?;
    Ok(formula_satisfied(problem, assignment.values()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub max_vars: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            max_vars: DEFAULT_MAX_VARS,
        }
    }
}

impl Oracle {
    pub fn with_max_vars(max_vars: usize) -> Self {
        Oracle { max_vars }
    }

    fn check(&self, problem: &Problem) -> Result<()> {
        let limit = self.max_vars.min(HARD_MAX_VARS);
        if problem.var_count() > limit {
            return Err(Error::Capacity {
                var_count: problem.var_count(),
                limit,
            });
        }
        Ok(())
    }

    pub fn enumerate_models(&self, problem: &Problem) -> Result<ModelSet> {
        self.check(problem)?;
        let v = problem.var_count();
        let total = 1u64 << v;
        let models = (0..total)
            .into_par_iter()
            .filter_map(|n| {
                let values = nth_assignment(n, v);
                formula_satisfied(problem, &values).then(|| Assignment::new(values))
            })
            .collect();
        Ok(ModelSet {
            var_count: v,
            models,
        })
    }

    pub fn count_models(&self, problem: &Problem) -> Result<u64> {
        self.check(problem)?;
        let v = problem.var_count();
        Ok((0..1u64 << v)
            .into_par_iter()
            .filter(|n| formula_satisfied(problem, &nth_assignment(*n, v)))
            .count() as u64)
    }

    pub fn decide(&self, problem: &Problem) -> Result<bool> {
        self.check(problem)?;
        let v = problem.var_count();
        Ok((0..1u64 << v)
            .into_par_iter()
            .any(|n| formula_satisfied(problem, &nth_assignment(n, v))))
    }
}

pub fn enumerate_models(problem: &Problem) -> Result<ModelSet> {
    Oracle::default().enumerate_models(problem)
}

pub fn count_models(problem: &Problem) -> Result<u64> {
    Oracle::default().count_models(problem)
}

pub fn decide(problem: &Problem) -> Result<bool> {
    Oracle::default().decide(problem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::sample_problem;

    fn tv(v: &[bool]) -> Assignment {
        Assignment::new(v.to_vec())
    }

    #[test]
    fn eval_examples() {
        let p = sample_problem();
        assert!(eval(&p, &tv(&[false, true, false, false])).unwrap());
        assert!(eval(&p, &tv(&[true, true, true, false])).unwrap());
        assert!(!eval(&p, &tv(&[true, false, true, true])).unwrap());

        let empty_clause = Problem::from_column_strs(2, &["UU"]).unwrap();
        assert!(!eval(&empty_clause, &tv(&[true, false])).unwrap());
        let none = Problem::new(3, vec![]).unwrap();
        assert!(eval(&none, &tv(&[false, false, true])).unwrap());
        assert!(eval(&none, &tv(&[false])).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let models = enumerate_models(&sample_problem()).unwrap();
        assert_eq!(
            models.models,
            vec![
                tv(&[true, true, true, false]),
                tv(&[false, true, false, false])
            ]
        );
        let unit = Problem::from_column_strs(1, &["T"]).unwrap();
        assert_eq!(enumerate_models(&unit).unwrap().models, vec![tv(&[true])]);
        let contradiction = Problem::from_column_strs(1, &["T", "F"]).unwrap();
        assert!(enumerate_models(&contradiction).unwrap().is_empty());
    }

    #[test]
    fn decide_and_count() {
        assert!(decide(&sample_problem()).unwrap());
        assert_eq!(count_models(&sample_problem()).unwrap(), 2);
        let none = Problem::new(2, vec![]).unwrap();
        assert_eq!(
            (decide(&none).unwrap(), count_models(&none).unwrap()),
            (true, 4)
        );
        let contradiction = Problem::from_column_strs(1, &["T", "F"]).unwrap();
        assert_eq!(
            (
                decide(&contradiction).unwrap(),
                count_models(&contradiction).unwrap()
            ),
            (false, 0)
        );
    }

    #[test]
    fn capacity() {
        let p = Problem::new(5, vec![]).unwrap();
        assert!(Oracle::with_max_vars(4).decide(&p).is_err());
    }
}
