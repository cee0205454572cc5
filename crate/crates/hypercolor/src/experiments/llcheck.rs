use hypercolor_core::oracle::{
    level_tail_bound, event_census, hss_transfer_check, lll_premise_check, state_count, DEFAULT_BUDGET,
};
use serde::Serialize;
use serde_json::{json, Value};

use super::{as_display, GoodnessOpts};
use crate::report::{Parameters, Report};
use crate::source::GraphSource;
use crate::Result;

#[derive(Debug, Clone, Serialize)]
pub struct LlcheckConfig {
    #[serde(serialize_with = "as_display")]
    pub graph: GraphSource,
    pub q: usize,
    pub goodness: GoodnessOpts,
    pub budget: u64,
}

impl LlcheckConfig {
    pub fn new(graph: GraphSource, q: usize) -> Self {
        LlcheckConfig { graph, q, goodness: GoodnessOpts::default(), budget: DEFAULT_BUDGET }
    }
}

/// Local lemma premise, the exact transfer inequality at every vertex, and
/// the tail bounds per level.
pub fn cmd_llcheck(config: &LlcheckConfig) -> Result<Report> {
    let h = config.graph.load()?;
    let q = config.q;
    let (params, over) = config.goodness.resolve(&h, q)?;
    let mut report = Report::new("llcheck", None, config)?;
    report.parameters = Some(Parameters::new(&params, over));

    let premise = lll_premise_check(&h, q);
    let min_product = premise.edges.iter().map(|e| e.product).fold(f64::INFINITY, f64::min);
    let premise_json = json!({
        "p": premise.params.p,
        "theta": premise.params.theta,
        "theta_at_most_half": premise.theta_at_most_half,
        "holds": premise.holds,
        "failing_edges": premise.edges.iter().filter(|e| !e.holds).map(|e| e.edge).collect::<Vec<_>>(),
        "min_product": if premise.edges.is_empty() { None } else { Some(min_product) },
        "k_delta_theta": premise.k_delta_theta,
        "chain_lower": premise.chain_lower,
        "chain_holds": premise.chain_holds,
    });

    let mut violations = Vec::new();
    let hss = if state_count(h.n(), q) > u128::from(config.budget) {
        report.warnings.push("state space exceeds the enumeration budget; transfer inequality not checked".into());
        Value::Null
    } else {
        let census = event_census(&h, q, &params, config.budget)?;
        if census.proper_total == 0 {
            report.warnings.push("no proper colorings; transfer inequality is vacuous".into());
            Value::Null
        } else {
            let mut rows = Vec::with_capacity(h.n());
            for v in 0..h.n() {
                let check = hss_transfer_check(&h, &census, &premise, v)?;
                if check.holds == Some(false) {
                    violations.push(v);
                }
                rows.push(json!({
                    "vertex": v,
                    "neighborhood": check.neighborhood,
                    "pr_q": check.lhs.to_string(),
                    "pr_q_value": check.lhs_f64(),
                    "bound": check.rhs.as_ref().map(ToString::to_string),
                    "bound_value": check.rhs_f64(),
                    "ratio": check.ratio(),
                    "holds": check.holds,
                }));
            }
            json!({
                "omega_total": census.omega_total,
                "proper_total": census.proper_total,
                "checked": premise.holds,
                "violations": violations,
                "vertices": rows,
            })
        }
    };
    if !premise.holds {
        report.warnings.push("local lemma premise fails; transfer inequality reported but not asserted".into());
    }

    let tail: Vec<Value> = (1..h.k().saturating_sub(1))
        .map(|i| {
            let b = level_tail_bound(&params, i)?;
            Ok(json!({
                "level": i,
                "mu": b.mu,
                "ln_bound": b.ln_value,
                "bound": b.clamped(),
                "vacuous": b.vacuous(),
                "ln_ten_mu": b.ln_ten_mu,
                "ln_ten_eps_q": b.ln_ten_eps_q,
                "ln_union": b.ln_union,
                "ln_exp_eps_q": b.ln_exp_eps_q,
            }))
        })
        .collect::<Result<_>>()?;

    if !violations.is_empty() {
        report.invariant_violation = Some(format!("transfer inequality fails at vertices {violations:?}"));
    }
    report.result = json!({ "premise": premise_json, "transfer": hss, "tail": tail });
    Ok(report)
}
