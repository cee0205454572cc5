use std::path::PathBuf;

use hypercolor_core::coupling::{coalescence_run, Coalescence, CoupledStepRecord};
use hypercolor_core::dynamics::random_initial;
use serde::Serialize;
use serde_json::json;

use super::{as_display, write_trace, GoodnessOpts};
use crate::report::{Parameters, Report};
use crate::source::GraphSource;
use crate::{io, rng, Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct CoupleConfig {
    #[serde(serialize_with = "as_display")]
    pub graph: GraphSource,
    pub q: usize,
    pub goodness: GoodnessOpts,
    pub max_steps: u64,
    pub seed: u64,
    /// Starting colorings; drawn uniformly when absent.
    pub x0: Option<PathBuf>,
    pub y0: Option<PathBuf>,
    /// CSV of `t,hamming,agreed,vertex`.
    pub trace: Option<PathBuf>,
}

impl CoupleConfig {
    pub fn new(graph: GraphSource, q: usize, max_steps: u64, seed: u64) -> Self {
        CoupleConfig { graph, q, goodness: GoodnessOpts::default(), max_steps, seed, x0: None, y0: None, trace: None }
    }
}

#[derive(Serialize)]
struct TraceRow {
    t: u64,
    hamming: usize,
    agreed: bool,
    vertex: usize,
}

pub fn cmd_couple(config: &CoupleConfig) -> Result<Report> {
    let h = config.graph.load()?;
    let q = config.q;
    let mut report = Report::new("couple", Some(config.seed), config)?;
    if h.k() >= 3 {
        let (params, over) = config.goodness.resolve(&h, q)?;
        report.parameters = Some(Parameters::new(&params, over));
    }
    let load = |path: &Option<PathBuf>, stream: u64| -> Result<_> {
        match path {
            Some(p) => {
                let x = io::read_coloring(p)?;
                if x.q() != q {
                    return Err(Error::Usage(format!("{}: coloring has q = {}, expected {q}", p.display(), x.q())));
                }
                Ok(x)
            }
            None => Ok(random_initial(h.n(), q, &mut rng::stream(config.seed, stream))?),
        }
    };
    let x0 = load(&config.x0, 1)?;
    let y0 = load(&config.y0, 2)?;
    let initial = x0.hamming(&y0);

    let mut rows = Vec::new();
    let mut agreements = 0u64;
    let mut steps = 0u64;
    let mut record = |t: u64, step: &CoupledStepRecord, hamming: usize| {
        steps = t;
        agreements += u64::from(step.agreed());
        if config.trace.is_some() {
            rows.push(TraceRow { t, hamming, agreed: step.agreed(), vertex: step.vertex });
        }
    };
    let outcome = coalescence_run(&h, x0, y0, config.max_steps, rng::stream(config.seed, 0), Some(&mut record))?;
    if let Some(path) = &config.trace {
        write_trace(path, config.seed, rows)?;
    }
    let (coalesced, t, final_hamming) = match outcome {
        Coalescence::Coalesced { t } => (true, Some(t), 0),
        Coalescence::Timeout { hamming } => (false, None, hamming),
    };
    report.result = json!({
        "initial_hamming": initial,
        "coalesced": coalesced,
        "coalescence_time": t,
        "final_hamming": final_hamming,
        "steps": steps,
        "agreement_rate": if steps == 0 { 1.0 } else { agreements as f64 / steps as f64 },
    });
    Ok(report)
}
