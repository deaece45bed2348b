use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::cc::{cc_of_object, CcOptions};
use crate::error::{Error, Result};
use crate::laurent::{sup_vector, LaurentPoly};
use crate::mutation::ExchangeGraph;
use crate::repcore::{
    ext_dim_cluster, is_exceptional_object, positive_roots, ClusterObject, GenericFamily,
    QuiverAlgebraContext,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one check, with the evidence behind it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub status: Status,
    pub witnesses: Vec<Value>,
    /// Seconds.
    pub timing: f64,
}

impl Report {
    pub fn new(check: impl Into<String>, pass: bool, witnesses: Vec<Value>, started: Instant) -> Self {
        Report {
            check: check.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            witnesses,
            timing: started.elapsed().as_secs_f64(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One report passing iff every part passes; parts become witnesses.
    pub fn combine(check: impl Into<String>, parts: Vec<Report>, started: Instant) -> Self {
        let pass = parts.iter().all(Report::passed);
        let witnesses = parts
            .into_iter()
            .map(|r| serde_json::to_value(r).expect("report serializes"))
            .collect();
        Report::new(check, pass, witnesses, started)
    }
}

/// `den(X)` predicted from the object: `dim M₀ − Σ c_i α_i`.
pub fn delta(object: &ClusterObject) -> Vec<i64> {
    object
        .module_dims()
        .iter()
        .zip(object.shifted_multiplicities())
        .map(|(&m, c)| m as i64 - c)
        .collect()
}

/// Checks that the denominator vector of `X_T` is `δ(T)`, which for a
/// module is its dimension vector.
pub fn verify_denominator(ctx: &QuiverAlgebraContext, object: &ClusterObject, opts: &CcOptions) -> Result<Report> {
    let started = Instant::now();
    if !is_exceptional_object(object)? {
        return Err(Error::Precondition(format!("{} is not exceptional", object.describe())));
    }
    let r = cc_of_object(ctx, object, opts)?;
    let expected = delta(object);
    let got = &r.denominator.denominator;
    let pass = *got == expected;
    let witness = json!({
        "object": r.object,
        "x": r.display,
        "denominator": got,
        "expected": expected,
    });
    Ok(Report::new("denominator", pass, vec![witness], started))
}

/// Checks `X_M X_N = X_B + X_{B'}` for objects with one-dimensional
/// `Ext¹` in the cluster category. For exceptional `M`, `N` also checks
/// `den(M) + den(N) = sup(den(B), den(B'))`.
pub fn verify_exchange(
    ctx: &QuiverAlgebraContext,
    m: &ClusterObject,
    n: &ClusterObject,
    b: &ClusterObject,
    b_prime: &ClusterObject,
    opts: &CcOptions,
) -> Result<Report> {
    let started = Instant::now();
    let ext = ext_dim_cluster(m, n)?;
    if ext != 1 {
        return Err(Error::Precondition(format!(
            "Ext^1({}, {}) has dimension {ext}, not 1",
            m.describe(),
            n.describe()
        )));
    }
    let xs = [m, n, b, b_prime]
        .into_iter()
        .map(|o| cc_of_object(ctx, o, opts))
        .collect::<Result<Vec<_>>>()?;
    let lhs = xs[0].polynomial.checked_mul(&xs[1].polynomial)?;
    let rhs = xs[2].polynomial.checked_add(&xs[3].polynomial)?;
    let identity = lhs == rhs;
    let mut witness = json!({
        "m": xs[0].object,
        "n": xs[1].object,
        "b": xs[2].object,
        "b_prime": xs[3].object,
        "lhs": lhs.fraction_string(),
        "rhs": rhs.fraction_string(),
        "identity": identity,
    });
    let mut pass = identity;
    if is_exceptional_object(m)? && is_exceptional_object(n)? {
        let dm = &xs[0].denominator.denominator;
        let dn = &xs[1].denominator.denominator;
        let left: Vec<i64> = dm.iter().zip(dn).map(|(a, b)| a + b).collect();
        let right = sup_vector(&xs[2].denominator.denominator, &xs[3].denominator.denominator)?;
        let sup_rule = left == right;
        witness["sup_rule"] = json!({ "sum": left, "sup": right, "holds": sup_rule });
        pass &= sup_rule;
    }
    Ok(Report::new("exchange", pass, vec![witness], started))
}

/// Exceptional modules of the real roots with entries at most `bound`,
/// followed by the `SP_i`. For a Dynkin quiver and large enough `bound`
/// these are all indecomposable rigid objects of the cluster category.
pub fn indecomposable_rigid_objects(
    ctx: &Arc<QuiverAlgebraContext>,
    bound: usize,
    seed: u64,
) -> Result<Vec<ClusterObject>> {
    let mut out = positive_roots(ctx, bound)
        .into_iter()
        .map(|d| Ok(ClusterObject::module(Arc::new(GenericFamily::new(ctx.clone(), d, seed)?))))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..ctx.rank() {
        out.push(ClusterObject::shifted_projective(ctx.rank(), i)?);
    }
    Ok(out)
}

fn cc_all(ctx: &QuiverAlgebraContext, objects: &[ClusterObject], opts: &CcOptions) -> Result<Vec<LaurentPoly>> {
    let one = |o: &ClusterObject| cc_of_object(ctx, o, opts).map(|r| r.polynomial);
    if opts.parallel {
        objects.par_iter().map(one).collect()
    } else {
        objects.iter().map(one).collect()
    }
}

fn strings<'a>(set: impl IntoIterator<Item = &'a LaurentPoly>) -> Vec<String> {
    set.into_iter().map(LaurentPoly::fraction_string).collect()
}

/// Compares `{X_M : M exceptional} ∪ {x_i}` with the cluster variables of a
/// complete exchange graph, and checks that `M ↦ X_M` is injective.
pub fn variable_bijection_check(
    ctx: &Arc<QuiverAlgebraContext>,
    graph: &ExchangeGraph,
    bound: usize,
    opts: &CcOptions,
) -> Result<Report> {
    let started = Instant::now();
    if !graph.is_complete() {
        return Err(Error::IncompleteGraph);
    }
    let objects = indecomposable_rigid_objects(ctx, bound, opts.seed)?;
    let xs = cc_all(ctx, &objects, opts)?;
    let from_cc: BTreeSet<LaurentPoly> = xs.iter().cloned().collect();
    let from_graph = graph.cluster_variables();
    let injective = from_cc.len() == objects.len();
    let only_cc: Vec<&LaurentPoly> = from_cc.difference(&from_graph).collect();
    let only_graph: Vec<&LaurentPoly> = from_graph.difference(&from_cc).collect();
    let pass = injective && only_cc.is_empty() && only_graph.is_empty();
    let witness = json!({
        "objects": objects.len(),
        "roots": objects.len() - ctx.rank(),
        "cc_values": from_cc.len(),
        "graph_variables": from_graph.len(),
        "injective": injective,
        "only_cc": strings(only_cc),
        "only_graph": strings(only_graph),
    });
    Ok(Report::new("variable_bijection", pass, vec![witness], started))
}

/// All `k`-cliques of an undirected graph, as sorted index lists.
fn cliques(adj: &[Vec<bool>], k: usize) -> Vec<Vec<usize>> {
    fn extend(adj: &[Vec<bool>], k: usize, current: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for v in start..adj.len() {
            if current.iter().all(|&u| adj[u][v]) {
                current.push(v);
                extend(adj, k, current, v + 1, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(adj, k, &mut Vec::new(), 0, &mut out);
    out
}

/// Matches maximal rigid sets of `n` indecomposables (tilting objects)
/// with the clusters of a complete exchange graph, and checks that every
/// almost complete tilting object has exactly two complements.
pub fn tilting_bijection_check(
    ctx: &Arc<QuiverAlgebraContext>,
    graph: &ExchangeGraph,
    bound: usize,
    opts: &CcOptions,
) -> Result<Report> {
    let started = Instant::now();
    if !graph.is_complete() {
        return Err(Error::IncompleteGraph);
    }
    let n = ctx.rank();
    let objects = indecomposable_rigid_objects(ctx, bound, opts.seed)?;
    let xs = cc_all(ctx, &objects, opts)?;
    let k = objects.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let ext = |&(i, j): &(usize, usize)| ext_dim_cluster(&objects[i], &objects[j]).map(|e| ((i, j), e == 0));
    let compat: Vec<((usize, usize), bool)> = if opts.parallel {
        pairs.par_iter().map(ext).collect::<Result<_>>()?
    } else {
        pairs.iter().map(ext).collect::<Result<_>>()?
    };
    let mut adj = vec![vec![false; k]; k];
    for ((i, j), ok) in compat {
        adj[i][j] = ok;
        adj[j][i] = ok;
    }
    let tilting: Vec<Vec<usize>> = cliques(&adj, n)
        .into_iter()
        .filter(|c| (0..k).all(|v| c.contains(&v) || c.iter().any(|&u| !adj[u][v])))
        .collect();
    let from_tilting: BTreeSet<BTreeSet<LaurentPoly>> = tilting
        .iter()
        .map(|c| c.iter().map(|&i| xs[i].clone()).collect())
        .collect();
    let from_graph: BTreeSet<BTreeSet<LaurentPoly>> = graph.clusters().into_iter().collect();
    let one_to_one = from_tilting.len() == tilting.len() && from_tilting == from_graph;

    let mut complements: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for c in &tilting {
        for skip in 0..n {
            let almost: Vec<usize> = c.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            complements.entry(almost).or_insert_with_key(|almost| {
                (0..k)
                    .filter(|v| !almost.contains(v) && almost.iter().all(|&u| adj[u][*v]))
                    .count()
            });
        }
    }
    let bad: Vec<Value> = complements
        .iter()
        .filter(|(_, &c)| c != 2)
        .map(|(a, c)| json!({ "almost": a.iter().map(|&i| objects[i].describe()).collect::<Vec<_>>(), "complements": c }))
        .collect();
    let pass = one_to_one && bad.is_empty();
    let witness = json!({
        "indecomposables": k,
        "tilting_objects": tilting.len(),
        "clusters": from_graph.len(),
        "one_to_one": one_to_one,
        "almost_tilting": complements.len(),
        "bad_completions": bad,
    });
    Ok(Report::new("tilting_bijection", pass, vec![witness], started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mutation::{explore, ExplorationLimits, QuiverSpec, Seed};
    use crate::repcore::{kronecker_module, KroneckerKind, P1Point, DEFAULT_SEED};

    fn setup(name: &str) -> (Arc<QuiverAlgebraContext>, ExchangeGraph) {
        let ctx = Arc::new(QuiverAlgebraContext::preset(name).unwrap());
        let seed = Seed::initial(QuiverSpec::preset(name).unwrap().to_matrix());
        let g = explore(&seed, ExplorationLimits::default(), false).unwrap();
        (ctx, g)
    }

    #[test]
    fn denominators_of_a3() {
        let (ctx, _) = setup("a3");
        let objs = indecomposable_rigid_objects(&ctx, 1, DEFAULT_SEED).unwrap();
        assert_eq!(objs.len(), 9);
        for o in &objs {
            let r = verify_denominator(&ctx, o, &CcOptions::default()).unwrap();
            assert!(r.passed(), "{:?}", r.witnesses);
        }
    }

    #[test]
    fn denominator_of_u1() {
        let ctx = QuiverAlgebraContext::preset("kronecker").unwrap();
        let u1 = ClusterObject::module(Arc::new(kronecker_module(KroneckerKind::U, 1, P1Point::default()).unwrap()));
        let r = verify_denominator(&ctx, &u1, &CcOptions::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.witnesses[0]["denominator"], json!([1, 2]));
        let sp = ClusterObject::shifted_projective(2, 0).unwrap();
        let r = verify_denominator(&ctx, &sp, &CcOptions::default()).unwrap();
        assert_eq!(r.witnesses[0]["denominator"], json!([-1, 0]));
    }

    #[test]
    fn non_exceptional_is_rejected() {
        let ctx = QuiverAlgebraContext::preset("kronecker").unwrap();
        let w1 = ClusterObject::module(Arc::new(kronecker_module(KroneckerKind::W, 1, P1Point::default()).unwrap()));
        assert!(matches!(
            verify_denominator(&ctx, &w1, &CcOptions::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn bijections_small() {
        for (name, vars, clusters) in [("a1", 2, 2), ("a2", 5, 5), ("a3", 9, 14)] {
            let (ctx, g) = setup(name);
            let v = variable_bijection_check(&ctx, &g, 3, &CcOptions::default()).unwrap();
            assert!(v.passed(), "{name}: {:?}", v.witnesses);
            assert_eq!(v.witnesses[0]["graph_variables"], json!(vars));
            let t = tilting_bijection_check(&ctx, &g, 3, &CcOptions::default()).unwrap();
            assert!(t.passed(), "{name}: {:?}", t.witnesses);
            assert_eq!(t.witnesses[0]["tilting_objects"], json!(clusters));
        }
    }

    #[test]
    fn exchange_needs_one_dimensional_ext() {
        let ctx = QuiverAlgebraContext::preset("a2").unwrap();
        let sp = ClusterObject::shifted_projective(2, 0).unwrap();
        let sp2 = ClusterObject::shifted_projective(2, 1).unwrap();
        let zero = ClusterObject::zero(2);
        assert!(matches!(
            verify_exchange(&ctx, &sp, &sp2, &zero, &zero, &CcOptions::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn cliques_of_triangle() {
        let adj = vec![vec![false, true, true], vec![true, false, true], vec![true, true, false]];
        assert_eq!(cliques(&adj, 2).len(), 3);
        assert_eq!(cliques(&adj, 3), vec![vec![0, 1, 2]]);
    }
}
