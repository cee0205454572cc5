use std::path::PathBuf;

use hypercolor_core::oracle::{move_graph, state_count, DEFAULT_BUDGET};
use serde::Serialize;
use serde_json::json;

use super::{as_display, GoodnessOpts};
use crate::report::{Parameters, Report};
use crate::source::GraphSource;
use crate::{io, parallel, Error, Result};

/// Exhaustive oracle run: proper set, goodness within it and the move graph.
#[derive(Debug, Clone, Serialize)]
pub struct EnumerateConfig {
    #[serde(serialize_with = "as_display")]
    pub graph: GraphSource,
    pub q: usize,
    pub goodness: GoodnessOpts,
    pub budget: u64,
    /// Proper coloring codes, one per line, ascending.
    pub dump: Option<PathBuf>,
}

impl EnumerateConfig {
    pub fn new(graph: GraphSource, q: usize) -> Self {
        EnumerateConfig { graph, q, goodness: GoodnessOpts::default(), budget: DEFAULT_BUDGET, dump: None }
    }
}

pub fn cmd_enumerate(config: &EnumerateConfig) -> Result<Report> {
    let h = config.graph.load()?;
    let mut report = Report::new("enumerate", None, config)?;
    let mut proper = parallel::enumerate_proper(&h, config.q, config.budget)?;
    if let Some(path) = &config.dump {
        std::fs::write(path, io::format_codes(&proper.proper)).map_err(|e| Error::io(path, e))?;
    }
    let mut good_total = None;
    if h.k() >= 3 {
        let (params, over) = config.goodness.resolve(&h, config.q)?;
        proper = proper.with_goodness(&h, &params);
        good_total = proper.good_count();
        report.parameters = Some(Parameters::new(&params, over));
    }
    let graph = move_graph(&h, config.q, config.budget)?;
    let good_in_giant = proper.good.as_ref().map(|g| graph.good_in_giant(g));
    report.result = json!({
        "omega_size": state_count(h.n(), config.q) as u64,
        "proper_count": proper.count(),
        "good_count": good_total,
        "move_graph": {
            "edges": graph.edge_count(),
            "symmetric": graph.is_symmetric(),
            "exits": graph.exits,
            "components": graph.component_sizes.len(),
            "giant_fraction": graph.giant_fraction(),
            "good_in_giant": good_in_giant.map(|(inside, _, _)| inside),
        },
    });
    if graph.exits > 0 || !graph.is_symmetric() {
        report.invariant_violation = Some(format!(
            "move graph: {} exits from the proper set, symmetric = {}",
            graph.exits,
            graph.is_symmetric()
        ));
    }
    Ok(report)
}
