//! Seeded random k-SAT instances.
//!
//! Output is bit-exact for a given [`GenSpec`] on every platform. The
//! procedure is pinned and must not change without a version bump of
//! the corpus:
//!
//! * PRNG is SplitMix64 seeded with `spec.seed`.
//! * `below(n)` is `(next_u64() as u128 * n as u128) >> 64`.
//! * A clause draws `k` distinct variables by a partial Fisher-Yates
//!   shuffle of `[1..=V]`: for `i in 0..k`, swap slot `i` with slot
//!   `i + below(V - i)`. After each pick, one `next_u64()` is drawn and
//!   its top bit set means a positive literal.
//! * Planted instances first draw the hidden assignment, one
//!   `next_u64()` per variable in order (top bit set means TRUE), then
//!   draw clauses as above, redrawing any clause the assignment falsifies.

use crate::error::{Error, Result};
use crate::model::{Assignment, Column, Problem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub var_count: usize,
    pub clause_count: usize,
    pub width: usize,
    pub seed: u64,
    pub planted: bool,
}

impl GenSpec {
    fn validate(&self) -> Result<()> {
        if self.var_count == 0 {
            return Err(Error::InvalidSpec("need at least one variable".into()));
        }
        if self.width == 0 || self.width > self.var_count {
            return Err(Error::InvalidSpec(format!(
                "clause width {} must be in 1..={}",
                self.width, self.var_count
            )));
        }
        Ok(())
    }
}

/// SplitMix64, used for every random draw in this module.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish in `0..n` by multiply-shift; no rejection step.
    pub fn below(&mut self, n: u64) -> u64 {
        ((self.next_u64() as u128 * n as u128) >> 64) as u64
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }
}

fn draw_clause(
    rng: &mut SplitMix64,
    var_count: usize,
    width: usize,
    slots: &mut [usize],
) -> Column {
    for (i, slot) in slots.iter_mut().enumerate() {
        *slot = i + 1;
    }
    let mut literals = Vec::with_capacity(width);
    for i in 0..width {
        let j = i + rng.below((var_count - i) as u64) as usize;
        slots.swap(i, j);
        literals.push((slots[i], rng.coin()));
    }
    Column::from_literals(literals, var_count).expect("distinct in-range variables")
}

pub fn random_ksat(spec: &GenSpec) -> Result<Problem> {
    spec.validate()?;
    if spec.planted {
        return Err(Error::InvalidSpec(
            "planted spec passed to random_ksat; use planted_ksat".into(),
        ));
    }
    let mut rng = SplitMix64::new(spec.seed);
    let mut slots = vec![0; spec.var_count];
    let columns = (0..spec.clause_count)
        .map(|_| draw_clause(&mut rng, spec.var_count, spec.width, &mut slots))
        .collect();
    Problem::new(spec.var_count, columns)
}

pub fn planted_ksat(spec: &GenSpec) -> Result<(Problem, Assignment)> {
    spec.validate()?;
    if !spec.planted {
        return Err(Error::InvalidSpec(
            "unplanted spec passed to planted_ksat; use random_ksat".into(),
        ));
    }
    let mut rng = SplitMix64::new(spec.seed);
    let hidden = Assignment::new((0..spec.var_count).map(|_| rng.coin()).collect());
    let mut slots = vec![0; spec.var_count];
    let mut columns = Vec::with_capacity(spec.clause_count);
    while columns.len() < spec.clause_count {
        let clause = draw_clause(&mut rng, spec.var_count, spec.width, &mut slots);
        if clause.literals().any(|(i, pos)| hidden.get(i) == pos) {
            columns.push(clause);
        }
    }
    Ok((Problem::new(spec.var_count, columns)?, hidden))
}

/// Generates according to `spec.planted`; the hidden assignment is
/// returned for planted specs only.
pub fn generate(spec: &GenSpec) -> Result<(Problem, Option<Assignment>)> {
    if spec.planted {
        planted_ksat(spec).map(|(p, a)| (p, Some(a)))
    } else {
        random_ksat(spec).map(|p| (p, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(v: usize, c: usize, k: usize, seed: u64) -> GenSpec {
        GenSpec {
            var_count: v,
            clause_count: c,
            width: k,
            seed,
            planted: false,
        }
    }

    #[test]
    fn splitmix_reference_values() {
        // first outputs for seed 0 of the published SplitMix64
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(rng.next_u64(), 0x6E78_9E6A_A1B9_65F4);
    }

    #[test]
    fn deterministic() {
        let s = spec(10, 42, 3, 7);
        assert_eq!(random_ksat(&s).unwrap(), random_ksat(&s).unwrap());
        assert_ne!(
            random_ksat(&s).unwrap(),
            random_ksat(&spec(10, 42, 3, 8)).unwrap()
        );
    }

    #[test]
    fn clause_shapes() {
        let full = random_ksat(&spec(4, 4, 4, 1)).unwrap();
        assert!(full.columns().iter().all(|c| c.free_count() == 0));
        let p = random_ksat(&spec(10, 42, 3, 1)).unwrap();
        assert_eq!(p.clause_count(), 42);
        assert!(p.columns().iter().all(|c| c.assigned_count() == 3));
    }

    #[test]
    fn planted_is_satisfied() {
        let s = GenSpec {
            planted: true,
            ..spec(8, 30, 3, 99)
        };
        let (p, a) = planted_ksat(&s).unwrap();
        assert!(crate::oracle::eval(&p, &a).unwrap());
        assert_eq!(planted_ksat(&s).unwrap(), (p, a));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(random_ksat(&spec(3, 1, 4, 0)).is_err());
        assert!(random_ksat(&spec(3, 1, 0, 0)).is_err());
        assert!(planted_ksat(&spec(3, 1, 2, 0)).is_err());
        assert!(random_ksat(&GenSpec {
            planted: true,
            ..spec(3, 1, 2, 0)
        })
        .is_err());
    }
}
