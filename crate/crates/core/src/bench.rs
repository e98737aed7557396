//! Sweeps over generated instances, running the solver (and the oracle
//! where the variable count allows) and producing one CSV row each.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gen::{generate, GenSpec};
use crate::io::Decision;
use crate::oracle::Oracle;
use crate::solver::{solve, verify_model, ResumeMode, SeedMode, SolverConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// Inclusive variable-count range and step.
    pub vars: (usize, usize, usize),
    pub widths: Vec<usize>,
    /// Clause-to-variable ratios; clause count is `round(ratio * V)`.
    pub ratios: Vec<f64>,
    pub per_point: usize,
    pub seed: u64,
    pub planted: bool,
    pub oracle_max_vars: usize,
    pub configs: Vec<SolverConfig>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            vars: (4, 12, 1),
            widths: vec![3],
            ratios: vec![4.26],
            per_point: 10,
            seed: 1,
            planted: false,
            oracle_max_vars: 16,
            configs: vec![SolverConfig::default()],
        }
    }
}

/// Parses `MIN:MAX` or `MIN:MAX:STEP`; a single number is `N:N`.
pub fn parse_range(text: &str) -> Result<(usize, usize, usize)> {
    let bad = || Error::InvalidSpec(format!("bad range {text:?}; expected MIN:MAX[:STEP]"));
    let parts: Vec<usize> = text
        .split(':')
        .map(|p| p.trim().parse().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let range = match parts.as_slice() {
        [n] => (*n, *n, 1),
        [lo, hi] => (*lo, *hi, 1),
        [lo, hi, step] => (*lo, *hi, *step),
        _ => return Err(bad()),
    };
    if range.0 > range.1 || range.2 == 0 {
        return Err(bad());
    }
    Ok(range)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub vars: usize,
    pub clauses: usize,
    pub width: usize,
    pub ratio: f64,
    pub seed: u64,
    pub planted: bool,
    pub seed_mode: SeedMode,
    pub resume_mode: ResumeMode,
    pub dedup: bool,
    pub decision: Decision,
    /// Empty when the oracle was skipped.
    pub oracle: Option<Decision>,
    pub agree: Option<bool>,
    pub model_ok: Option<bool>,
    pub candidates_enqueued: u64,
    pub candidates_dequeued: u64,
    pub overlap_calls: u64,
    pub fragments_spawned: u64,
    pub dedup_hits: u64,
    pub max_queue_len: u64,
    pub dead_candidates: u64,
    pub max_depth: u64,
    pub wall_time_ms: f64,
}

struct Job {
    gen: GenSpec,
    ratio: f64,
    config: SolverConfig,
}

fn jobs(spec: &SweepSpec) -> Vec<Job> {
    let (lo, hi, step) = spec.vars;
    let mut out = Vec::new();
    let mut index = 0u64;
    for v in (lo..=hi).step_by(step) {
        for &width in &spec.widths {
            for &ratio in &spec.ratios {
                for _ in 0..spec.per_point {
                    let gen = GenSpec {
                        var_count: v,
                        clause_count: (ratio * v as f64).round() as usize,
                        width,
                        seed: spec.seed.wrapping_add(index),
                        planted: spec.planted,
                    };
                    index += 1;
                    for config in &spec.configs {
                        out.push(Job {
                            gen,
                            ratio,
                            config: *config,
                        });
                    }
                }
            }
        }
    }
    out
}

fn run_job(job: &Job, oracle: &Oracle) -> Result<BenchRow> {
    let (problem, _) = generate(&job.gen)?;
    let start = Instant::now();
    let solution = solve(&problem, &job.config)?;
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    let decision = if solution.outcome.is_sat() {
        Decision::Sat
    } else {
        Decision::Unsat
    };
    let model_ok = match solution.outcome.model() {
        Some(m) => Some(verify_model(&problem, m)?),
        None => None,
    };
    let oracle_decision = if problem.var_count() <= oracle.max_vars {
        Some(if oracle.decide(&problem)? {
            Decision::Sat
        } else {
            Decision::Unsat
        })
    } else {
        None
    };
    let s = solution.stats;
    Ok(BenchRow {
        vars: job.gen.var_count,
        clauses: job.gen.clause_count,
        width: job.gen.width,
        ratio: job.ratio,
        seed: job.gen.seed,
        planted: job.gen.planted,
        seed_mode: job.config.seed_mode,
        resume_mode: job.config.resume_mode,
        dedup: job.config.dedup,
        decision,
        oracle: oracle_decision,
        agree: oracle_decision.map(|d| d == decision),
        model_ok,
        candidates_enqueued: s.candidates_enqueued,
        candidates_dequeued: s.candidates_dequeued,
        overlap_calls: s.overlap_calls,
        fragments_spawned: s.fragments_spawned,
        dedup_hits: s.dedup_hits,
        max_queue_len: s.max_queue_len,
        dead_candidates: s.dead_candidates,
        max_depth: s.max_depth,
        wall_time_ms,
    })
}

/// Runs every instance of the sweep in parallel; rows come back in sweep
/// order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<BenchRow>> {
    for &w in &spec.widths {
        if w == 0 || w > spec.vars.0 {
            return Err(Error::InvalidSpec(format!(
                "width {w} does not fit {} variables",
                spec.vars.0
            )));
        }
    }
    let oracle = Oracle::with_max_vars(spec.oracle_max_vars);
    jobs(spec).par_iter().map(|j| run_job(j, &oracle)).collect()
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> std::io::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub instances: usize,
    pub sat: usize,
    pub checked: usize,
    pub agreed: usize,
}

pub fn summarize(rows: &[BenchRow]) -> Summary {
    Summary {
        instances: rows.len(),
        sat: rows.iter().filter(|r| r.decision == Decision::Sat).count(),
        checked: rows.iter().filter(|r| r.agree.is_some()).count(),
        agreed: rows.iter().filter(|r| r.agree == Some(true)).count(),
    }
}
