//! Ternary matrix model.
//!
//! A [`Problem`] is a `V x C` matrix of [`Cell`]s: one row per variable and
//! one [`Column`] per clause. The same column type doubles as a cube (a
//! partial assignment) when read as a set of paths rather than a clause.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cell {
    T,
    F,
    U,
}

impl Cell {
    pub fn flip(self) -> Cell {
        match self {
            Cell::T => Cell::F,
            Cell::F => Cell::T,
            Cell::U => Cell::U,
        }
    }

    pub fn is_literal(self) -> bool {
        self != Cell::U
    }

    pub fn from_bool(value: bool) -> Cell {
        if value {
            Cell::T
        } else {
            Cell::F
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Cell::T => 'T',
            Cell::F => 'F',
            Cell::U => 'U',
        }
    }

    pub fn from_char(c: char) -> Result<Cell> {
        match c {
            'T' | 't' => Ok(Cell::T),
            'F' | 'f' => Ok(Cell::F),
            'U' | 'u' => Ok(Cell::U),
            other => Err(Error::InvalidCell(other)),
        }
    }
}

/// How unassigned cells are filled when a cube is turned into a total
/// assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FillPolicy {
    #[default]
    True,
    False,
}

impl FillPolicy {
    pub fn value(self) -> bool {
        matches!(self, FillPolicy::True)
    }
}

impl fmt::Display for FillPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.value() { "true" } else { "false" })
    }
}

/// A length-`V` ternary vector, read either as a clause pattern or a cube.
///
/// The canonical text form is one character per variable, e.g. `FUTT`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Column {
    cells: Vec<Cell>,
}

impl Column {
    pub fn new(cells: Vec<Cell>) -> Self {
        Column { cells }
    }

    pub fn all_u(var_count: usize) -> Self {
        Column {
            cells: vec![Cell::U; var_count],
        }
    }

    /// Builds a column from `(variable, polarity)` pairs with 1-based
    /// variable indices. Repeated literals collapse; a variable seen with
    /// both polarities yields [`Error::Tautology`].
    pub fn from_literals<I>(literals: I, var_count: usize) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, bool)>,
    {
        let mut cells = vec![Cell::U; var_count];
        for (index, positive) in literals {
            if index == 0 || index > var_count {
                return Err(Error::VarOutOfRange { index, var_count });
            }
            let cell = Cell::from_bool(positive);
            match cells[index - 1] {
                Cell::U => cells[index - 1] = cell,
                existing if existing == cell => {}
                _ => return Err(Error::Tautology { var: index }),
            }
        }
        Ok(Column { cells })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn get(&self, var: usize) -> Cell {
        self.cells[var]
    }

    pub fn set(&mut self, var: usize, cell: Cell) {
        self.cells[var] = cell;
    }

    pub fn flip(&self) -> Column {
        Column {
            cells: self.cells.iter().map(|c| c.flip()).collect(),
        }
    }

    /// Number of `U` cells.
    pub fn free_count(&self) -> usize {
        self.cells.iter().filter(|c| **c == Cell::U).count()
    }

    pub fn assigned_count(&self) -> usize {
        self.len() - self.free_count()
    }

    /// Number of tree paths the column covers, `2^free_count`.
    ///
    /// Saturates at `u128::MAX` past 127 free cells.
    pub fn path_count(&self) -> u128 {
        let q = self.free_count();
        if q >= 128 {
            u128::MAX
        } else {
            1u128 << q
        }
    }

    /// Iterates `(zero_based_var, positive)` for every literal cell.
    pub fn literals(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.cells.iter().enumerate().filter_map(|(i, c)| match c {
            Cell::T => Some((i, true)),
            Cell::F => Some((i, false)),
            Cell::U => None,
        })
    }

    pub fn complete(&self, policy: FillPolicy) -> Assignment {
        Assignment::new(
            self.cells
                .iter()
                .map(|c| match c {
                    Cell::T => true,
                    Cell::F => false,
                    Cell::U => policy.value(),
                })
                .collect(),
        )
    }

    /// True when the total assignment lies inside this cube.
    pub fn contains(&self, assignment: &Assignment) -> bool {
        self.cells
            .iter()
            .zip(assignment.values())
            .all(|(c, v)| match c {
                Cell::U => true,
                Cell::T => *v,
                Cell::F => !*v,
            })
    }

    pub fn to_ternary_string(&self) -> String {
        self.cells.iter().map(|c| c.as_char()).collect()
    }
}

impl FromStr for Column {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace() && !matches!(c, ',' | '[' | ']'))
            .map(Cell::from_char)
            .collect::<Result<Vec<_>>>()
            .map(Column::new)
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", c.as_char())?;
        }
        f.write_str("]")
    }
}

/// A total assignment, one boolean per variable in matrix row order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn get(&self, var: usize) -> bool {
        self.values[var]
    }

    /// DIMACS-style signed literals, `1 -2 3 ...`.
    pub fn to_dimacs_literals(&self) -> Vec<i64> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| if *v { i as i64 + 1 } else { -(i as i64 + 1) })
            .collect()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(if *v { "T" } else { "F" })?;
        }
        f.write_str(")")
    }
}

/// The clause matrix: `var_count` rows, one column per clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    var_count: usize,
    columns: Vec<Column>,
}

impl Problem {
    pub fn new(var_count: usize, columns: Vec<Column>) -> Result<Self> {
        if var_count == 0 {
            return Err(Error::VarOutOfRange {
                index: 0,
                var_count,
            });
        }
        for col in &columns {
            if col.len() != var_count {
                return Err(Error::LengthMismatch {
                    expected: var_count,
                    actual: col.len(),
                });
            }
        }
        Ok(Problem { var_count, columns })
    }

    /// Parses whitespace-separated ternary columns such as `"FUTT UTUU"`.
    pub fn from_column_strs(var_count: usize, columns: &[&str]) -> Result<Self> {
        let columns = columns
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Column>>>()?;
        Problem::new(var_count, columns)
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn clause_count(&self) -> usize {
        self.columns.len()
    }

    /// Input size `V * C`.
    pub fn input_size(&self) -> usize {
        self.var_count * self.columns.len()
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub(crate) fn check_assignment(&self, assignment: &Assignment) -> Result<()> {
        if assignment.len() != self.var_count {
            return Err(Error::LengthMismatch {
                expected: self.var_count,
                actual: assignment.len(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(s: &str) -> Column {
        s.parse().unwrap()
    }

    #[test]
    fn from_literals_matches_matrix_columns() {
        let c1 = Column::from_literals([(1, false), (3, true), (4, true)], 4).unwrap();
        assert_eq!(c1, col("FUTT"));
        assert_eq!(Column::from_literals([], 3).unwrap(), col("UUU"));
        assert_eq!(Column::from_literals([(2, true)], 4).unwrap(), col("UTUU"));
    }

    #[test]
    fn from_literals_collapses_and_rejects() {
        let dup = Column::from_literals([(2, true), (2, true)], 3).unwrap();
        assert_eq!(dup, col("UTU"));
        assert_eq!(
            Column::from_literals([(2, true), (2, false)], 3),
            Err(Error::Tautology { var: 2 })
        );
        assert!(matches!(
            Column::from_literals([(4, true)], 3),
            Err(Error::VarOutOfRange { index: 4, .. })
        ));
        assert!(Column::from_literals([(0, true)], 3).is_err());
    }

    #[test]
    fn flip_swaps_literals() {
        assert_eq!(col("FUTT").flip(), col("TUFF"));
        assert_eq!(col("UUUU").flip(), col("UUUU"));
        assert_eq!(col("TFU").flip().flip(), col("TFU"));
    }

    #[test]
    fn free_and_path_counts() {
        assert_eq!(col("FUTT").free_count(), 1);
        assert_eq!(col("FUTT").path_count(), 2);
        assert_eq!(col("UUUU").path_count(), 16);
        assert_eq!(col("TFTF").path_count(), 1);
    }

    #[test]
    fn complete_uses_fill_policy() {
        let t = |v: &[bool]| Assignment::new(v.to_vec());
        assert_eq!(
            col("TTTF").complete(FillPolicy::True),
            t(&[true, true, true, false])
        );
        assert_eq!(
            col("UTUF").complete(FillPolicy::True),
            t(&[true, true, true, false])
        );
        assert_eq!(col("U").complete(FillPolicy::False), t(&[false]));
    }

    #[test]
    fn problem_rejects_ragged_columns() {
        assert!(Problem::from_column_strs(3, &["TTT", "TT"]).is_err());
        assert!(Problem::new(0, vec![]).is_err());
        let p = Problem::from_column_strs(4, &["FUTT", "UTUU"]).unwrap();
        assert_eq!(p.input_size(), 8);
    }

    #[test]
    fn column_text_forms() {
        assert_eq!(col("[F,U,T,T]"), col("FUTT"));
        assert_eq!(col("FUTT").to_string(), "[F,U,T,T]");
        assert!("FXT".parse::<Column>().is_err());
    }
}
