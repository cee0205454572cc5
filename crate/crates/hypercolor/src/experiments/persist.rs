use std::path::PathBuf;

use hypercolor_core::coloring::goodness::classify_goodness;
use hypercolor_core::coloring::is_proper;
use hypercolor_core::dynamics::{persistence_horizon, run, Checkpoint, RunConfig};
use hypercolor_core::{Coloring, GoodnessParams};
use serde::Serialize;
use serde_json::json;

use super::{as_display, write_trace, GoodnessOpts, Proportion};
use crate::report::{Parameters, Report};
use crate::source::GraphSource;
use crate::{parallel, Result};

pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Serialize)]
pub struct PersistConfig {
    #[serde(serialize_with = "as_display")]
    pub graph: GraphSource,
    pub q: usize,
    pub goodness: GoodnessOpts,
    /// Upper limit on the `t*` factor of the schedule.
    pub cap: u64,
    /// Replaces `t0 * min(t*, cap)` when set.
    pub steps: Option<u64>,
    pub replicas: u64,
    /// Uniform draws per replica while looking for a proper eps-good start.
    pub max_attempts: u64,
    pub seed: u64,
    /// CSV of `t,proper,good_s1,good_s2,min_avail` for replica 0.
    pub trace: Option<PathBuf>,
}

impl PersistConfig {
    pub fn new(graph: GraphSource, q: usize, replicas: u64, seed: u64) -> Self {
        PersistConfig {
            graph,
            q,
            goodness: GoodnessOpts::default(),
            cap: DEFAULT_CAP,
            steps: None,
            replicas,
            max_attempts: 10_000,
            seed,
            trace: None,
        }
    }
}

/// `(t*, min(ceil t*, cap), t0 * that)`, saturating.
pub fn schedule_steps(params: &GoodnessParams, t0: u64, cap: u64) -> (f64, u64, u64) {
    let t_star = params.t_star();
    let factor = if t_star.is_finite() && t_star < cap as f64 { t_star.ceil() as u64 } else { cap };
    (t_star, factor, t0.saturating_mul(factor))
}

#[derive(Default)]
struct Tally {
    started: u64,
    no_start: u64,
    attempts: u64,
    s2_through_t0: u64,
    s1_at_t0: u64,
    reached_t0: u64,
    s1_final: u64,
    proper_final: u64,
    min_available: Option<usize>,
    trace: Option<Vec<Checkpoint>>,
}

impl Tally {
    fn merge(&mut self, other: Tally) {
        self.started += other.started;
        self.no_start += other.no_start;
        self.attempts += other.attempts;
        self.s2_through_t0 += other.s2_through_t0;
        self.s1_at_t0 += other.s1_at_t0;
        self.reached_t0 += other.reached_t0;
        self.s1_final += other.s1_final;
        self.proper_final += other.proper_final;
        self.min_available = match (self.min_available, other.min_available) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if self.trace.is_none() {
            self.trace = other.trace;
        }
    }
}

#[derive(Serialize)]
struct TraceRow {
    t: u64,
    proper: bool,
    good_s1: bool,
    good_s2: bool,
    min_avail: usize,
}

pub fn cmd_persist(config: &PersistConfig) -> Result<Report> {
    let h = config.graph.load()?;
    let q = config.q;
    let (params, over) = config.goodness.resolve(&h, q)?;
    let params = params.with_scale(1);
    let mut report = Report::new("persist", Some(config.seed), config)?;
    report.parameters = Some(Parameters::new(&params, over));

    let t0 = persistence_horizon(h.n(), h.k());
    let (t_star, factor, scheduled) = schedule_steps(&params, t0, config.cap);
    let steps = config.steps.unwrap_or(scheduled);
    if t0 == 0 {
        report.warnings.push(format!("t0 = floor(n / (4 k^2 e)) = 0 at n = {}", h.n()));
    }
    if factor == config.cap && (!t_star.is_finite() || t_star > config.cap as f64) {
        report.warnings.push(format!("t* = {t_star:e} capped at {}", config.cap));
    }

    let run_config = RunConfig { steps, checkpoint_every: 0 };
    let tally = parallel::replicate(
        config.replicas,
        config.seed,
        Tally::default,
        |acc: &mut Tally, r, rng| {
            let mut start = None;
            for _ in 0..config.max_attempts {
                acc.attempts += 1;
                let x = Coloring::random(h.n(), q, rng)?;
                if is_proper(&h, &x)? && classify_goodness(&h, &x, &params)?.is_good() {
                    start = Some(x);
                    break;
                }
            }
            let Some(x0) = start else {
                acc.no_start += 1;
                return Ok(());
            };
            acc.started += 1;
            let outcome = run(&h, x0, &mut *rng, run_config, &params)?;
            let d = &outcome.diagnostics;
            acc.s2_through_t0 += u64::from(d.s2_good_through_t0);
            if let Some(good) = d.s1_good_at_t0 {
                acc.reached_t0 += 1;
                acc.s1_at_t0 += u64::from(good);
            }
            let last = d.checkpoints.last().copied();
            if let Some(cp) = last {
                acc.s1_final += u64::from(cp.good_s1);
                acc.proper_final += u64::from(cp.proper);
            }
            let lowest = d.checkpoints.iter().map(|c| c.min_available).min();
            acc.min_available = match (acc.min_available, lowest) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
            if r == 0 {
                acc.trace = Some(d.checkpoints.clone());
            }
            Ok(())
        },
        Tally::merge,
    )?;

    if let (Some(path), Some(trace)) = (&config.trace, &tally.trace) {
        let rows = trace.iter().map(|c| TraceRow {
            t: c.t,
            proper: c.proper,
            good_s1: c.good_s1,
            good_s2: c.good_s2,
            min_avail: c.min_available,
        });
        write_trace(path, config.seed, rows)?;
    }
    if tally.no_start > 0 {
        report.warnings.push(format!(
            "{} replicas found no proper eps-good start in {} draws",
            tally.no_start, config.max_attempts
        ));
    }
    report.result = json!({
        "t0": t0,
        "t_star": t_star,
        "t_star_factor": factor,
        "cap": config.cap,
        "steps": steps,
        "replicas": config.replicas,
        "started": tally.started,
        "start_acceptance": Proportion::new(tally.started, tally.attempts),
        "s2_good_through_t0": Proportion::new(tally.s2_through_t0, tally.started),
        "s1_good_at_t0": Proportion::new(tally.s1_at_t0, tally.reached_t0),
        "s1_good_at_end": Proportion::new(tally.s1_final, tally.started),
        "proper_at_end": Proportion::new(tally.proper_final, tally.started),
        "min_available": tally.min_available,
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_caps_t_star() {
        let p = GoodnessParams::new(3, 40, 1000, 10).unwrap();
        let (t_star, factor, steps) = schedule_steps(&p, 3, 1_000_000);
        // eps q = 40/450, t* = e^{0.0444..}
        assert!((t_star - (40.0f64 / 900.0).exp()).abs() < 1e-12);
        assert_eq!(factor, 2);
        assert_eq!(steps, 6);
        let big = p.with_c(1e4);
        let (_, factor, steps) = schedule_steps(&big, 3, 1000);
        assert_eq!(factor, 1000);
        assert_eq!(steps, 3000);
    }
}
