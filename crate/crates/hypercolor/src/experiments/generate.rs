use std::path::PathBuf;

use hypercolor_core::hypergraph::{generate_random_simple, EdgeTarget, GeneratorConfig};
use serde::Serialize;
use serde_json::json;

use super::{as_display, GoodnessOpts};
use crate::report::{Parameters, Report};
use crate::source::GraphSource;
use crate::{io, rng, Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct GenerateConfig {
    /// A named construction or file; when absent the random generator runs
    /// with `n`, `k`, `max_degree` and `seed`.
    #[serde(serialize_with = "serialize_source")]
    pub source: Option<GraphSource>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub max_degree: Option<usize>,
    /// Exact edge count; otherwise add edges until rejections run out.
    pub edges: Option<usize>,
    pub rejection_cap: Option<usize>,
    pub seed: u64,
    /// Palette size for the regime verdict.
    pub q: Option<usize>,
    pub goodness: GoodnessOpts,
    pub output: Option<PathBuf>,
}

fn serialize_source<S: serde::Serializer>(src: &Option<GraphSource>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match src {
        Some(src) => as_display(src, s),
        None => s.serialize_none(),
    }
}

impl GenerateConfig {
    pub fn random(n: usize, k: usize, max_degree: usize, seed: u64) -> Self {
        GenerateConfig {
            source: None,
            n: Some(n),
            k: Some(k),
            max_degree: Some(max_degree),
            edges: None,
            rejection_cap: None,
            seed,
            q: None,
            goodness: GoodnessOpts::default(),
            output: None,
        }
    }

    pub fn from_source(source: GraphSource) -> Self {
        GenerateConfig { source: Some(source), n: None, k: None, max_degree: None, ..Self::random(0, 0, 0, 0) }
    }
}

pub fn cmd_generate(config: &GenerateConfig) -> Result<Report> {
    let h = match &config.source {
        Some(src) => src.load()?,
        None => {
            let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Error::Usage(format!("generate needs --{flag} or --graph")));
            let mut gen = GeneratorConfig::new(need(config.n, "n")?, need(config.k, "k")?, need(config.max_degree, "max-deg")?);
            if let Some(m) = config.edges {
                gen.target = EdgeTarget::Exact(m);
            }
            gen.rejection_cap = config.rejection_cap;
            generate_random_simple(&gen, &mut rng::stream(config.seed, 0))?
        }
    };
    let mut report = Report::new("generate", Some(config.seed), config)?;
    if let Some(path) = &config.output {
        io::write_hypergraph(path, &h)?;
    }
    let mut result = json!({
        "n": h.n(),
        "m": h.m(),
        "k": h.k(),
        "max_degree": h.max_degree(),
        "valid": h.validate().is_ok(),
        "file": config.output.as_ref().map(|p| p.display().to_string()),
        "low_color_regime": false,
    });
    match config.q {
        Some(q) if h.k() >= 3 => {
            let (params, over) = config.goodness.resolve(&h, q)?;
            let parameters = Parameters::new(&params, over);
            result["low_color_regime"] = json!(parameters.regime.low_color_regime);
            report.parameters = Some(parameters);
        }
        Some(_) => report.warnings.push("regime verdict needs k >= 3".into()),
        None => report.warnings.push("no q given; regime verdict needs a palette size".into()),
    }
    if config.output.is_none() {
        result["edges"] = json!(h.edges());
    }
    report.result = result;
    Ok(report)
}
