//! Batch checks over every instance of a quiver.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use super::cc::CcOptions;
use super::fixtures::{kronecker_fixture, root_fixtures};
use super::verify::{
    tilting_bijection_check, variable_bijection_check, verify_denominator, Report,
};
use crate::error::{Error, Result};
use crate::mutation::{explore, ExchangeGraph, ExplorationLimits, QuiverSpec, Seed};
use crate::repcore::{ClusterObject, QuiverAlgebraContext};

/// Runs `f` over `items`, keeping input order.
fn map_ordered<T: Sync, R: Send>(items: &[T], parallel: bool, f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

/// Turns a budget refusal into a failing report so that batches keep going.
fn or_budget_failure(check: &str, what: String, r: Result<Report>) -> Result<Report> {
    match r {
        Err(e @ Error::BudgetExceeded { .. }) => Ok(Report::new(
            check,
            false,
            vec![json!({ "object": what, "error": e.to_string() })],
            Instant::now(),
        )),
        other => other,
    }
}

pub fn denominator_suite(ctx: &QuiverAlgebraContext, objects: &[ClusterObject], opts: &CcOptions) -> Result<Report> {
    let started = Instant::now();
    let inner = CcOptions { parallel: false, ..opts.clone() };
    let parts = map_ordered(objects, opts.parallel, |o| {
        or_budget_failure("denominator", o.describe(), verify_denominator(ctx, o, &inner))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(Report::combine("denominator", parts, started))
}

/// The exchange fixtures among real roots with entries at most `bound`,
/// plus `W¹ · U^k` for `k ≤ kronecker_max` on the Kronecker quiver.
pub fn exchange_suite(
    ctx: &Arc<QuiverAlgebraContext>,
    bound: usize,
    kronecker_max: usize,
    opts: &CcOptions,
) -> Result<Report> {
    let started = Instant::now();
    let (mut fixtures, skipped) = root_fixtures(ctx, bound, opts.seed)?;
    if *ctx.quiver() == QuiverSpec::preset("kronecker")? {
        for k in 0..=kronecker_max {
            fixtures.push(kronecker_fixture(k)?);
        }
    }
    let inner = CcOptions { parallel: false, ..opts.clone() };
    let mut parts = map_ordered(&fixtures, opts.parallel, |f| {
        or_budget_failure("exchange", f.label(), f.verify(ctx, &inner))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    if !skipped.is_empty() {
        parts.push(Report::new("exchange_skipped", true, skipped.into_iter().map(|s| json!(s)).collect(), started));
    }
    Ok(Report::combine("exchange", parts, started))
}

pub fn initial_seed(ctx: &QuiverAlgebraContext) -> Seed {
    Seed::initial(ctx.quiver().to_matrix())
}

pub fn bijection_suite(
    ctx: &Arc<QuiverAlgebraContext>,
    graph: &ExchangeGraph,
    bound: usize,
    opts: &CcOptions,
) -> Result<Report> {
    let started = Instant::now();
    let parts = vec![
        variable_bijection_check(ctx, graph, bound, opts)?,
        tilting_bijection_check(ctx, graph, bound, opts)?,
    ];
    Ok(Report::combine("bijection", parts, started))
}

/// Explores from the initial seed; a failed exact division fails the check
/// instead of aborting. Every variable found must pass the sufficient
/// weak-positivity test on its numerator.
pub fn laurent_suite(ctx: &QuiverAlgebraContext, limits: ExplorationLimits, parallel: bool) -> Result<Report> {
    let started = Instant::now();
    let graph = match explore(&initial_seed(ctx), limits, parallel) {
        Ok(g) => g,
        Err(e @ Error::NotDivisible { .. }) => {
            return Ok(Report::new("laurent", false, vec![json!({ "not_divisible": e.to_string() })], started));
        }
        Err(e) => return Err(e),
    };
    let vars = graph.cluster_variables();
    let not_positive: Vec<String> = vars
        .iter()
        .filter(|v| !v.is_weakly_positive_sufficient())
        .map(|v| v.fraction_string())
        .collect();
    let witness = json!({
        "seeds": graph.node_count(),
        "complete": graph.is_complete(),
        "variables": vars.len(),
        "not_divisible": 0,
        "not_weakly_positive": not_positive,
    });
    Ok(Report::new("laurent", not_positive.is_empty(), vec![witness], started))
}

/// On a complete graph: the seeds containing a given variable are
/// connected, and the seeds with acyclic quiver are nonempty and connected.
pub fn connectivity_suite(graph: &ExchangeGraph) -> Result<Report> {
    let started = Instant::now();
    let vars = graph.cluster_variables();
    let mut disconnected = Vec::new();
    for v in &vars {
        if !graph.variable_support_subgraph(v)?.is_connected {
            disconnected.push(v.fraction_string());
        }
    }
    let acyclic = graph.acyclic_seed_subgraph()?;
    let pass = disconnected.is_empty() && acyclic.is_connected;
    let witness = json!({
        "seeds": graph.node_count(),
        "variables": vars.len(),
        "disconnected_variables": disconnected,
        "acyclic_seeds": acyclic.nodes.len(),
        "acyclic_connected": acyclic.is_connected,
    });
    Ok(Report::new("connectivity", pass, vec![witness], started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccmap::indecomposable_rigid_objects;

    fn ctx(name: &str) -> Arc<QuiverAlgebraContext> {
        Arc::new(QuiverAlgebraContext::preset(name).unwrap())
    }

    #[test]
    fn a3_suites() {
        let c = ctx("a3");
        let objs = indecomposable_rigid_objects(&c, 1, crate::repcore::DEFAULT_SEED).unwrap();
        let r = denominator_suite(&c, &objs, &CcOptions::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.witnesses.len(), 9);
        let g = explore(&initial_seed(&c), ExplorationLimits::default(), false).unwrap();
        assert!(connectivity_suite(&g).unwrap().passed());
        assert!(laurent_suite(&c, ExplorationLimits::default(), false).unwrap().passed());
        assert!(exchange_suite(&c, 1, 0, &CcOptions::default()).unwrap().passed());
    }

    #[test]
    fn kronecker_exchange_and_laurent() {
        let c = ctx("kronecker");
        let r = exchange_suite(&c, 2, 2, &CcOptions::default()).unwrap();
        assert!(r.passed(), "{:?}", r.witnesses);
        let limits = ExplorationLimits { max_seeds: 12, max_depth: 64 };
        let r = laurent_suite(&c, limits, false).unwrap();
        assert!(r.passed());
        assert_eq!(r.witnesses[0]["complete"], json!(false));
    }

    #[test]
    fn budget_refusal_fails_without_aborting() {
        let c = ctx("a3");
        let objs = indecomposable_rigid_objects(&c, 1, crate::repcore::DEFAULT_SEED).unwrap();
        let r = denominator_suite(&c, &objs, &CcOptions { budget: 0, ..Default::default() }).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn connectivity_needs_complete_graph() {
        let c = ctx("kronecker");
        let limits = ExplorationLimits { max_seeds: 5, max_depth: 64 };
        let g = explore(&initial_seed(&c), limits, false).unwrap();
        assert_eq!(connectivity_suite(&g).unwrap_err(), Error::IncompleteGraph);
    }
}
