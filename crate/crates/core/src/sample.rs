//! The four-variable, four-clause worked problem and its known path sets.
//!
//! ```text
//! (-x1 | x3 | x4) & (x2) & (x1 | -x2 | -x3 | x4) & (-x2 | -x4)
//! ```

use crate::model::Problem;

pub const SAMPLE_DIMACS: &str = "p cnf 4 4\n-1 3 4 0\n2 0\n1 -2 -3 4 0\n-2 -4 0\n";

pub const SAMPLE_COLUMNS: [&str; 4] = ["FUTT", "UTUU", "TFFT", "UFUF"];

/// Per-clause membership strings, in clause order.
pub const CLAUSE_MEMBERSHIP: [&str; 4] = [
    "0000 0000 1000 1000",
    "1111 0000 1111 0000",
    "0000 0010 0000 0000",
    "0000 0101 0000 0101",
];

pub const MEMBERSHIP: &str = "1111 0111 1111 1101";

pub const ANSWER_SET: &str = "0100 0000 0001 0000";

pub fn sample_problem() -> Problem {
    Problem::from_column_strs(4, &SAMPLE_COLUMNS).expect("sample columns are well formed")
}
