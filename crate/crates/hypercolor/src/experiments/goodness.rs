use std::path::PathBuf;

use hypercolor_core::coloring::goodness::{bad_witnesses, classify_goodness, goodness_implies_available};
use hypercolor_core::coloring::is_proper;
use hypercolor_core::dynamics::{mixing_horizon, random_initial, ChainState};
use hypercolor_core::oracle::{state_count, LllParams, DEFAULT_BUDGET};
use hypercolor_core::{Coloring, Goodness};
use serde::Serialize;
use serde_json::json;

use super::{as_display, GoodnessOpts, Proportion};
use crate::report::{bad_records, Parameters, Report};
use crate::source::GraphSource;
use crate::{io, parallel, Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct GoodnessConfig {
    #[serde(serialize_with = "as_display")]
    pub graph: GraphSource,
    pub q: usize,
    pub goodness: GoodnessOpts,
    /// Threshold scale: 1 for eps-good, 2 for 2eps-good.
    pub scale: u32,
    pub samples: u64,
    pub seed: u64,
    pub budget: u64,
    /// Steps per chain when `Q` is too large to enumerate; defaults to
    /// `t_delta` at delta = 0.01.
    pub chain_steps: Option<u64>,
    /// Classify this coloring instead of sampling.
    pub coloring: Option<PathBuf>,
}

impl GoodnessConfig {
    pub fn new(graph: GraphSource, q: usize, samples: u64, seed: u64) -> Self {
        GoodnessConfig {
            graph,
            q,
            goodness: GoodnessOpts::default(),
            scale: 1,
            samples,
            seed,
            budget: DEFAULT_BUDGET,
            chain_steps: None,
            coloring: None,
        }
    }
}

pub fn cmd_goodness(config: &GoodnessConfig) -> Result<Report> {
    let h = config.graph.load()?;
    let q = config.q;
    let (params, over) = config.goodness.resolve(&h, q)?;
    let params = params.with_scale(config.scale);
    let mut report = Report::new("goodness", Some(config.seed), config)?;
    report.parameters = Some(Parameters::new(&params, over));

    if let Some(path) = &config.coloring {
        let x = io::read_coloring(path)?;
        if x.q() != q {
            return Err(Error::Usage(format!("coloring has q = {}, expected {q}", x.q())));
        }
        let class = classify_goodness(&h, &x, &params)?;
        let bad = bad_witnesses(&h, &x, &params)?;
        let availability = match class {
            Goodness::Good => {
                let a = goodness_implies_available(&h, &x, &params)?;
                if !a.violations.is_empty() {
                    report.invariant_violation =
                        Some(format!("good coloring with too few available colors at {:?}", a.violations));
                }
                Some(json!({ "min_available": a.min_available, "bound": a.bound, "violations": a.violations }))
            }
            Goodness::Bad { .. } => None,
        };
        report.result = json!({
            "proper": is_proper(&h, &x)?,
            "good": class.is_good(),
            "bad": bad_records(&bad, &params),
            "availability": availability,
        });
        return Ok(report);
    }

    let omega_bad = parallel::replicate(
        config.samples,
        config.seed,
        || 0u64,
        |acc: &mut u64, _, rng| {
            let x = Coloring::random(h.n(), q, rng)?;
            *acc += u64::from(!classify_goodness(&h, &x, &params)?.is_good());
            Ok(())
        },
        |a, b| *a += b,
    )?;

    let enumerable = state_count(h.n(), q) <= u128::from(config.budget);
    let proper_part = if enumerable {
        let proper = parallel::enumerate_proper(&h, q, config.budget)?.with_goodness(&h, &params);
        let total = proper.count() as u64;
        let good = proper.good_count().unwrap_or(0) as u64;
        json!({
            "method": "exact",
            "proper_count": total,
            "bad": Proportion::new(total - good, total),
        })
    } else {
        let steps = match config.chain_steps {
            Some(s) => s,
            None => mixing_horizon(h.n(), 0.01)?,
        };
        report.warnings.push(format!("Q is not enumerable; Pr_Q is estimated from chains run {steps} steps"));
        // the stream ids continue past the Omega samples
        let offset = config.samples;
        let (proper, bad) = parallel::replicate(
            config.samples,
            config.seed,
            || (0u64, 0u64),
            |acc: &mut (u64, u64), r, _| {
                let mut rng = crate::rng::stream(config.seed, offset + r);
                let x0 = random_initial(h.n(), q, &mut rng)?;
                let mut chain = ChainState::new(&h, x0, &mut rng)?;
                for _ in 0..steps {
                    chain.step(&h);
                }
                let x = chain.into_coloring();
                if is_proper(&h, &x)? {
                    acc.0 += 1;
                    acc.1 += u64::from(!classify_goodness(&h, &x, &params)?.is_good());
                }
                Ok(())
            },
            |a, b| {
                a.0 += b.0;
                a.1 += b.1;
            },
        )?;
        json!({
            "method": "chain_approximate",
            "chain_steps": steps,
            "proper_samples": proper,
            "bad": Proportion::new(bad, proper),
        })
    };

    // Pr_Omega(A_v) <= e^{-eps q}; Pr_Q(exists v: A_v) <= n e^{-eps q} prod_{f in N_v} (1 - theta)^{-1}
    let eps_q = params.eps().value() * f64::from(params.scale()) * q as f64;
    let vertex_bound = (-eps_q).exp();
    let mut max_neighborhood = 0;
    for v in 0..h.n() {
        max_neighborhood = max_neighborhood.max(h.neighborhood(v)?.len());
    }
    let theta = LllParams::new(h.k(), q).theta;
    let inflation = if theta < 1.0 { (1.0 - theta).powf(-(max_neighborhood as f64)) } else { f64::INFINITY };
    report.result = json!({
        "omega": { "samples": config.samples, "bad": Proportion::new(omega_bad, config.samples) },
        "proper": proper_part,
        "bounds": {
            "vertex_omega": vertex_bound,
            "union_omega": h.n() as f64 * vertex_bound,
            "max_neighborhood": max_neighborhood,
            "union_q": h.n() as f64 * vertex_bound * inflation,
            "union_q_simplified": h.n() as f64 * (0.5 - eps_q).exp(),
        },
    });
    Ok(report)
}
