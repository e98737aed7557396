//! Exact path-set semantics over the variable binary tree.
//!
//! Every total assignment is a leaf of the tree built from the matrix rows
//! in order. A [`PathSet`] is the `2^V`-bit characteristic vector of a set
//! of leaves. Leaf positions are 0-based; reading position `p` as `V`
//! binary digits, most significant first, variable `i` is TRUE iff its
//! digit is 0. Position 0 is all-TRUE and `2^V - 1` is all-FALSE.
//!
//! Everything here is exponential in `V`, so every entry point is bounded
//! by a variable capacity ([`DEFAULT_MAX_VARS`] unless configured).

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{Assignment, Cell, Column, Problem};

pub const DEFAULT_MAX_VARS: usize = 24;

/// 2^32 bits is 512 MiB; nothing larger is accepted whatever the config.
pub const HARD_MAX_VARS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathSet {
    var_count: usize,
    words: Vec<u64>,
}

fn word_count(var_count: usize) -> usize {
    let bits = 1usize << var_count;
    bits.div_ceil(64)
}

impl PathSet {
    pub fn empty(var_count: usize) -> Self {
        PathSet {
            var_count,
            words: vec![0; word_count(var_count)],
        }
    }

    pub fn full(var_count: usize) -> Self {
        let mut s = PathSet {
            var_count,
            words: vec![u64::MAX; word_count(var_count)],
        };
        s.mask_tail();
        s
    }

    /// Parses the grouped text form, e.g. `"0000 0000 1000 1000"`.
    pub fn from_bit_str(var_count: usize, text: &str) -> Result<Self> {
        let mut s = PathSet::empty(var_count);
        let mut position = 0u64;
        for ch in text.chars().filter(|c| !c.is_whitespace()) {
            if position >= s.len() {
                return Err(Error::LengthMismatch {
                    expected: s.len() as usize,
                    actual: position as usize + 1,
                });
            }
            match ch {
                '1' => s.insert(position),
                '0' => {}
                other => return Err(Error::InvalidCell(other)),
            }
            position += 1;
        }
        if position != s.len() {
            return Err(Error::LengthMismatch {
                expected: s.len() as usize,
                actual: position as usize,
            });
        }
        Ok(s)
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    /// Number of leaf positions, `2^V`.
    pub fn len(&self) -> u64 {
        1u64 << self.var_count
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn contains(&self, position: u64) -> bool {
        position < self.len() && self.words[(position / 64) as usize] >> (position % 64) & 1 == 1
    }

    pub fn insert(&mut self, position: u64) {
        debug_assert!(position < self.len());
        self.words[(position / 64) as usize] |= 1 << (position % 64);
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Set positions in ascending order.
    pub fn positions(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as u64;
                w &= w - 1;
                Some(wi as u64 * 64 + bit)
            })
        })
    }

    fn same_shape(&self, other: &PathSet) -> Result<()> {
        if self.var_count != other.var_count {
            return Err(Error::LengthMismatch {
                expected: self.var_count,
                actual: other.var_count,
            });
        }
        Ok(())
    }

    pub fn union(&self, other: &PathSet) -> Result<PathSet> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a | b))
    }

    pub fn intersection(&self, other: &PathSet) -> Result<PathSet> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a & b))
    }

    fn zip_with(&self, other: &PathSet, op: impl Fn(u64, u64) -> u64) -> PathSet {
        PathSet {
            var_count: self.var_count,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| op(*a, *b))
                .collect(),
        }
    }

    pub fn complement(&self) -> PathSet {
        let mut s = PathSet {
            var_count: self.var_count,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.mask_tail();
        s
    }

    /// Bit `p` of the result is bit `2^V - 1 - p` of `self`.
    pub fn reverse(&self) -> PathSet {
        let n = self.len();
        let mut out = PathSet::empty(self.var_count);
        for p in self.positions() {
            out.insert(n - 1 - p);
        }
        out
    }

    /// Reverse the bit order, then complement every bit.
    pub fn reverse_flip(&self) -> PathSet {
        self.reverse().complement()
    }

    fn mask_tail(&mut self) {
        let bits = self.len();
        if bits < 64 {
            self.words[0] &= (1u64 << bits) - 1;
        }
    }
}

/// Grouped-by-4 text, position 0 first.
impl fmt::Display for PathSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in 0..self.len() {
            if p > 0 && p % 4 == 0 {
                f.write_str(" ")?;
            }
            f.write_str(if self.contains(p) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Path-set engine with a configurable variable capacity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathSemantics {
    pub max_vars: usize,
}

impl Default for PathSemantics {
    fn default() -> Self {
        PathSemantics {
            max_vars: DEFAULT_MAX_VARS,
        }
    }
}

impl PathSemantics {
    pub fn with_max_vars(max_vars: usize) -> Self {
        PathSemantics { max_vars }
    }

    fn check(&self, var_count: usize) -> Result<()> {
        let limit = self.max_vars.min(HARD_MAX_VARS);
        if var_count > limit {
            return Err(Error::Capacity { var_count, limit });
        }
        Ok(())
    }

    pub fn paths_of(&self, col: &Column) -> Result<PathSet> {
        let v = col.len();
        self.check(v)?;
        let mut base = 0u64;
        let mut free_mask = 0u64;
        for (i, cell) in col.cells().iter().enumerate() {
            let weight = 1u64 << (v - 1 - i);
            match cell {
                Cell::T => {}
                Cell::F => base |= weight,
                Cell::U => free_mask |= weight,
            }
        }
        let mut set = PathSet::empty(v);
        // walk every submask of the free positions
        let mut sub = 0u64;
        loop {
            set.insert(base | sub);
            if sub == free_mask {
                break;
            }
            sub = (sub.wrapping_sub(free_mask)) & free_mask;
        }
        Ok(set)
    }

    /// Union of the clause path sets.
    pub fn membership(&self, problem: &Problem) -> Result<PathSet> {
        self.check(problem.var_count())?;
        let sets = problem
            .columns()
            .iter()
            .map(|c| self.paths_of(c))
            .collect::<Result<Vec<_>>>()?;
        union(problem.var_count(), &sets)
    }

    /// The answer set, `reverse_flip(membership)`.
    pub fn answer_set(&self, problem: &Problem) -> Result<PathSet> {
        Ok(self.membership(problem)?.reverse_flip())
    }

    pub fn answers_of(&self, problem: &Problem) -> Result<Vec<Assignment>> {
        let answers = self.answer_set(problem)?;
        answers
            .positions()
            .map(|p| assignment_at(p, problem.var_count()))
            .collect()
    }
}

pub fn paths_of(col: &Column) -> Result<PathSet> {
    PathSemantics::default().paths_of(col)
}

pub fn answers_of(problem: &Problem) -> Result<Vec<Assignment>> {
    PathSemantics::default().answers_of(problem)
}

/// Bitwise OR of all sets; the empty list yields the all-zero set.
pub fn union(var_count: usize, sets: &[PathSet]) -> Result<PathSet> {
    let mut acc = PathSet::empty(var_count);
    for s in sets {
        acc = acc.union(s)?;
    }
    Ok(acc)
}

pub fn leaf_index(assignment: &Assignment) -> u64 {
    let v = assignment.len();
    assignment
        .values()
        .iter()
        .enumerate()
        .filter(|(_, value)| !**value)
        .fold(0u64, |acc, (i, _)| acc | 1u64 << (v - 1 - i))
}

pub fn assignment_at(position: u64, var_count: usize) -> Result<Assignment> {
    if var_count >= 64 || position >= 1u64 << var_count {
        return Err(Error::PositionOutOfRange {
            position,
            var_count,
        });
    }
    Ok(Assignment::new(
        (0..var_count)
            .map(|i| position >> (var_count - 1 - i) & 1 == 0)
            .collect(),
    ))
}

/// Combines two columns that are equal, or that differ only in one cell
/// holding opposite literals (that cell becomes `U`). Anything else is
/// not mergeable.
pub fn merge_adjacent(c1: &Column, c2: &Column) -> Option<Column> {
    if c1.len() != c2.len() {
        return None;
    }
    let mut diff = None;
    for (i, (a, b)) in c1.cells().iter().zip(c2.cells()).enumerate() {
        if a == b {
            continue;
        }
        if !(a.is_literal() && b.is_literal()) || diff.is_some() {
            return None;
        }
        diff = Some(i);
    }
    let mut merged = c1.clone();
    if let Some(i) = diff {
        merged.set(i, Cell::U);
    }
    Some(merged)
}
