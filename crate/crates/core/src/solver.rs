//! Inverse-cover intersection search.
//!
//! Each clause is turned into its satisfying cover: a list of pairwise
//! disjoint cubes whose union is exactly the set of assignments that
//! satisfy it. A model must sit in one cube of every cover, so the solver
//! pushes candidate cubes through the covers one by one, narrowing a
//! candidate to its overlap with the cover and splitting off a fragment
//! for every further overlapping cube. Anything that survives every cover
//! is a cube of models.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Assignment, Cell, Column, FillPolicy, Problem};

/// Complement cover of a column read as a cube.
///
/// With literal positions `p1 < p2 < ... < pk`, cube `j` keeps the
/// original literals at `p1..p(j-1)`, flips the literal at `pj` and leaves
/// everything else `U`. An all-`U` column has an empty complement.
pub fn inverse_cover(col: &Column) -> Vec<Column> {
    let mut prefix = Column::all_u(col.len());
    let mut cover = Vec::with_capacity(col.assigned_count());
    for (i, cell) in col.cells().iter().enumerate() {
        if cell.is_literal() {
            let mut cube = prefix.clone();
            cube.set(i, cell.flip());
            cover.push(cube);
            prefix.set(i, *cell);
        }
    }
    cover
}

/// Disjoint cubes covering exactly the assignments that satisfy `col`.
pub fn sat_cover(col: &Column) -> Vec<Column> {
    inverse_cover(col).iter().map(Column::flip).collect()
}

/// Intersection of two cubes, or `None` when they are disjoint.
pub fn overlap(c1: &Column, c2: &Column) -> Result<Option<Column>> {
    if c1.len() != c2.len() {
        return Err(Error::LengthMismatch {
            expected: c1.len(),
            actual: c2.len(),
        });
    }
    Ok(overlap_unchecked(c1, c2))
}

fn overlap_unchecked(c1: &Column, c2: &Column) -> Option<Column> {
    let mut out = Vec::with_capacity(c1.len());
    for (a, b) in c1.cells().iter().zip(c2.cells()) {
        out.push(match (a, b) {
            (Cell::U, other) | (other, Cell::U) => *other,
            (x, y) if x == y => *x,
            _ => return None,
        });
    }
    Some(Column::new(out))
}

/// Clause-wise check of a total assignment: it falsifies a clause exactly
/// when it lies in the clause's flipped cube.
pub fn verify_model(problem: &Problem, assignment: &Assignment) -> Result<bool> {
    problem.check_assignment(assignment)?;
    Ok(problem
        .columns()
        .iter()
        .all(|col| !col.flip().contains(assignment)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedMode {
    /// Queue every cube of every clause's cover.
    #[default]
    All,
    /// Queue only the first clause's cover.
    First,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResumeMode {
    /// Fragments continue at the cover after the one they split from.
    #[default]
    Resume,
    /// Fragments are re-tested from the first cover.
    Restart,
}

macro_rules! text_enum {
    ($ty:ident { $($variant:ident => $text:literal),+ }) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($ty::$variant => $text),+ })
            }
        }

        impl FromStr for $ty {
            type Err = String;

            fn from_str(s: &str) -> std::result::Result<Self, String> {
                match s {
                    $($text => Ok($ty::$variant),)+
                    other => Err(format!("unknown {}: {other}", stringify!($ty))),
                }
            }
        }
    };
}

text_enum!(SeedMode { All => "all", First => "first" });
text_enum!(ResumeMode { Resume => "resume", Restart => "restart" });

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub seed_mode: SeedMode,
    pub resume_mode: ResumeMode,
    pub dedup: bool,
    pub fill: FillPolicy,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            seed_mode: SeedMode::All,
            resume_mode: ResumeMode::Resume,
            dedup: true,
            fill: FillPolicy::True,
        }
    }
}

impl SolverConfig {
    /// The four seed/resume combinations, dedup and fill at defaults.
    pub fn variants() -> [SolverConfig; 4] {
        let mk = |seed_mode, resume_mode| SolverConfig {
            seed_mode,
            resume_mode,
            ..SolverConfig::default()
        };
        [
            mk(SeedMode::All, ResumeMode::Resume),
            mk(SeedMode::All, ResumeMode::Restart),
            mk(SeedMode::First, ResumeMode::Resume),
            mk(SeedMode::First, ResumeMode::Restart),
        ]
    }
}

/// A queued cube and the index of the next cover it has to pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub cube: Column,
    pub resume_at: usize,
    /// Number of strict narrowings since the lineage was seeded.
    pub depth: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SolveStats {
    pub candidates_enqueued: u64,
    pub candidates_dequeued: u64,
    pub overlap_calls: u64,
    pub fragments_spawned: u64,
    pub dedup_hits: u64,
    pub max_queue_len: u64,
    pub dead_candidates: u64,
    pub max_depth: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Sat { model: Assignment, cube: Column },
    Unsat,
}

impl Outcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, Outcome::Sat { .. })
    }

    pub fn model(&self) -> Option<&Assignment> {
        match self {
            Outcome::Sat { model, .. } => Some(model),
            Outcome::Unsat => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub outcome: Outcome,
    pub stats: SolveStats,
}

/// Search events, for instrumentation and tests.
#[derive(Debug)]
pub enum SolveEvent<'a> {
    Seeded {
        cube: &'a Column,
        clause: usize,
    },
    /// The candidate was narrowed in place by a cover.
    Narrowed {
        parent: &'a Column,
        child: &'a Column,
        depth: usize,
    },
    /// An extra overlap split off as its own candidate.
    Fragment {
        parent: &'a Column,
        child: &'a Column,
        depth: usize,
    },
    Dead {
        cube: &'a Column,
        clause: usize,
    },
}

pub fn solve(problem: &Problem, config: &SolverConfig) -> Result<Solution> {
    solve_observed(problem, config, |_| {})
}

struct Queue {
    items: VecDeque<Candidate>,
    seen: HashSet<Column>,
    dedup: bool,
}

impl Queue {
    fn push(&mut self, candidate: Candidate, stats: &mut SolveStats) {
        if self.dedup && !self.seen.insert(candidate.cube.clone()) {
            stats.dedup_hits += 1;
            return;
        }
        stats.candidates_enqueued += 1;
        self.items.push_back(candidate);
        stats.max_queue_len = stats.max_queue_len.max(self.items.len() as u64);
    }
}

pub fn solve_observed<F>(
    problem: &Problem,
    config: &SolverConfig,
    mut observe: F,
) -> Result<Solution>
where
    F: FnMut(SolveEvent<'_>),
{
    let mut stats = SolveStats::default();
    let covers: Vec<Vec<Column>> = problem.columns().iter().map(sat_cover).collect();

    if covers.is_empty() {
        let cube = Column::all_u(problem.var_count());
        let model = cube.complete(config.fill);
        return Ok(Solution {
            outcome: Outcome::Sat { model, cube },
            stats,
        });
    }
    if covers.iter().any(Vec::is_empty) {
        return Ok(Solution {
            outcome: Outcome::Unsat,
            stats,
        });
    }

    let mut queue = Queue {
        items: VecDeque::new(),
        seen: HashSet::new(),
        dedup: config.dedup,
    };
    let seeded: &[Vec<Column>] = match config.seed_mode {
        SeedMode::All => &covers,
        SeedMode::First => &covers[..1],
    };
    let seed_resume = match config.seed_mode {
        SeedMode::All => 0,
        SeedMode::First => 1,
    };
    for (clause, cover) in seeded.iter().enumerate() {
        for cube in cover {
            observe(SolveEvent::Seeded { cube, clause });
            queue.push(
                Candidate {
                    cube: cube.clone(),
                    resume_at: seed_resume,
                    depth: 0,
                },
                &mut stats,
            );
        }
    }

    'queue: while let Some(Candidate {
        mut cube,
        resume_at,
        mut depth,
    }) = queue.items.pop_front()
    {
        stats.candidates_dequeued += 1;
        for (clause, cover) in covers.iter().enumerate().skip(resume_at) {
            let mut narrowed: Option<Column> = None;
            for cover_cube in cover {
                stats.overlap_calls += 1;
                let Some(hit) = overlap_unchecked(&cube, cover_cube) else {
                    continue;
                };
                if narrowed.is_none() {
                    narrowed = Some(hit);
                    continue;
                }
                let fragment = Candidate {
                    cube: hit,
                    resume_at: match config.resume_mode {
                        ResumeMode::Resume => clause + 1,
                        ResumeMode::Restart => 0,
                    },
                    depth: depth + 1,
                };
                stats.fragments_spawned += 1;
                stats.max_depth = stats.max_depth.max(fragment.depth as u64);
                observe(SolveEvent::Fragment {
                    parent: &cube,
                    child: &fragment.cube,
                    depth: fragment.depth,
                });
                queue.push(fragment, &mut stats);
            }
            match narrowed {
                None => {
                    stats.dead_candidates += 1;
                    observe(SolveEvent::Dead {
                        cube: &cube,
                        clause,
                    });
                    continue 'queue;
                }
                Some(next) => {
                    if next != cube {
                        depth += 1;
                        stats.max_depth = stats.max_depth.max(depth as u64);
                        observe(SolveEvent::Narrowed {
                            parent: &cube,
                            child: &next,
                            depth,
                        });
                        cube = next;
                    }
                }
            }
        }

        let model = cube.complete(config.fill);
        if !crate::oracle::eval(problem, &model)? {
            return Err(Error::InvariantViolation(format!(
                "surviving cube {cube} completes to non-model {model}"
            )));
        }
        return Ok(Solution {
            outcome: Outcome::Sat { model, cube },
            stats,
        });
    }

    Ok(Solution {
        outcome: Outcome::Unsat,
        stats,
    })
}
