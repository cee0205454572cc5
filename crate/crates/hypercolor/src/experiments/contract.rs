use hypercolor_core::coupling::{contraction_tally, ContractionConfig, ContractionTally};
use serde::Serialize;
use serde_json::json;

use super::{as_display, GoodnessOpts};
use crate::parallel::{map_chunks, CHUNK};
use crate::report::{Parameters, Report};
use crate::source::GraphSource;
use crate::{rng, Result};

#[derive(Debug, Clone, Serialize)]
pub struct ContractConfig {
    #[serde(serialize_with = "as_display")]
    pub graph: GraphSource,
    pub q: usize,
    pub goodness: GoodnessOpts,
    /// Qualifying starting pairs; both sides 2eps-good and distinct.
    pub pairs: u64,
    pub steps_per_pair: usize,
    /// Consecutive non-qualifying draws, per worker chunk, before giving up.
    pub max_discards: usize,
    pub seed: u64,
}

impl ContractConfig {
    pub fn new(graph: GraphSource, q: usize, pairs: u64, seed: u64) -> Self {
        ContractConfig {
            graph,
            q,
            goodness: GoodnessOpts::default(),
            pairs,
            steps_per_pair: 1,
            max_discards: 100_000,
            seed,
        }
    }
}

pub fn cmd_contract(config: &ContractConfig) -> Result<Report> {
    let h = config.graph.load()?;
    let (params, over) = config.goodness.resolve(&h, config.q)?;
    let mut report = Report::new("contract", Some(config.seed), config)?;
    report.parameters = Some(Parameters::new(&params.clone().with_scale(2), over));

    let parts = map_chunks(config.pairs, CHUNK, |chunk, range| {
        let sub = ContractionConfig {
            pairs: (range.end - range.start) as usize,
            steps_per_pair: config.steps_per_pair,
            max_discards: config.max_discards,
        };
        contraction_tally(&h, &params, &sub, rng::stream(config.seed, chunk))
    });
    let mut tally = ContractionTally::default();
    for part in parts {
        tally.merge(&part?);
    }
    if tally.pairs < config.pairs as usize {
        report.warnings.push(format!(
            "only {} of {} qualifying pairs found before the discard cap",
            tally.pairs, config.pairs
        ));
    }
    let estimate = tally.report(h.n(), config.q)?;
    report.result = json!({
        "bound": estimate.bound,
        "mean_ratio": estimate.mean_ratio,
        "se": estimate.se,
        "samples": estimate.samples,
        "pairs": tally.pairs,
        "discarded": estimate.discarded,
        "within_3se": estimate.within(3.0),
    });
    Ok(report)
}
