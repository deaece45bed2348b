//! Breadth-first exploration of the exchange graph.
//!
//! Nodes are canonical seeds (seeds up to simultaneous relabeling). Node ids
//! follow discovery order, frontiers are expanded node by node and direction
//! by direction, so the output does not depend on whether the mutations of a
//! frontier were computed in parallel.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use super::seed::Seed;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExplorationLimits {
    pub max_seeds: usize,
    pub max_depth: usize,
}

impl Default for ExplorationLimits {
    fn default() -> Self {
        ExplorationLimits {
            max_seeds: 100_000,
            max_depth: 64,
        }
    }
}

/// Half-edge: mutating node `from` in direction `direction` (0-based, in the
/// canonical labeling of `from`) gives node `to`, where the new variable sits
/// at `reverse_direction`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub direction: usize,
    pub reverse_direction: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeGraph {
    rank: usize,
    nodes: Vec<Seed>,
    depths: Vec<usize>,
    half_edges: Vec<Edge>,
    complete: bool,
}

/// Induced subgraph on a node subset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedSubgraph {
    pub nodes: Vec<usize>,
    /// Nonempty and connected.
    pub is_connected: bool,
}

pub fn explore(initial: &Seed, limits: ExplorationLimits, parallel: bool) -> Result<ExchangeGraph> {
    if limits.max_seeds == 0 {
        return Err(Error::Precondition("max_seeds must be at least 1".into()));
    }
    let n = initial.rank();
    let root = initial.canonical();
    let mut index: HashMap<Seed, usize> = HashMap::new();
    index.insert(root.clone(), 0);
    let mut nodes = vec![root];
    let mut depths = vec![0];
    let mut half_edges = Vec::new();
    let mut truncated = false;
    let mut frontier = vec![0usize];
    let mut depth = 0;

    while !frontier.is_empty() {
        let jobs: Vec<(usize, usize)> = frontier
            .iter()
            .flat_map(|&u| (0..n).map(move |j| (u, j)))
            .collect();
        let step = |&(u, j): &(usize, usize)| -> Result<(Seed, usize)> {
            let mutated = nodes[u].mutate(j)?;
            let (canon, perm) = mutated.canonical_with_perm();
            Ok((canon, perm[j]))
        };
        let results: Vec<Result<(Seed, usize)>> = if parallel {
            jobs.par_iter().map(step).collect()
        } else {
            jobs.iter().map(step).collect()
        };

        let mut next = Vec::new();
        for (&(u, j), res) in jobs.iter().zip(results) {
            let (seed, back) = res?;
            let to = match index.get(&seed) {
                Some(&v) => v,
                None if depth < limits.max_depth && nodes.len() < limits.max_seeds => {
                    let v = nodes.len();
                    index.insert(seed.clone(), v);
                    nodes.push(seed);
                    depths.push(depth + 1);
                    next.push(v);
                    v
                }
                None => {
                    truncated = true;
                    continue;
                }
            };
            half_edges.push(Edge {
                from: u,
                to,
                direction: j,
                reverse_direction: back,
            });
        }
        frontier = next;
        depth += 1;
    }

    Ok(ExchangeGraph {
        rank: n,
        nodes,
        depths,
        half_edges,
        complete: !truncated,
    })
}

/// Number of labeled seeds reachable from `initial` (no identification up to
/// relabeling), and whether that exploration finished within `limits`.
pub fn count_labeled(initial: &Seed, limits: ExplorationLimits) -> Result<(usize, bool)> {
    let n = initial.rank();
    let mut seen: HashSet<Seed> = HashSet::new();
    seen.insert(initial.clone());
    let mut queue = VecDeque::from([(initial.clone(), 0usize)]);
    let mut complete = true;
    while let Some((s, d)) = queue.pop_front() {
        for j in 0..n {
            let m = s.mutate(j)?;
            if seen.contains(&m) {
                continue;
            }
            if d >= limits.max_depth || seen.len() >= limits.max_seeds {
                complete = false;
                continue;
            }
            seen.insert(m.clone());
            queue.push_back((m, d + 1));
        }
    }
    Ok((seen.len(), complete))
}

impl ExchangeGraph {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nodes(&self) -> &[Seed] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn depth(&self, node: usize) -> usize {
        self.depths[node]
    }

    pub fn half_edges(&self) -> &[Edge] {
        &self.half_edges
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Undirected edges, each reported once from its smaller endpoint.
    pub fn edges(&self) -> Vec<Edge> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for e in &self.half_edges {
            let key = std::cmp::min((e.from, e.direction), (e.to, e.reverse_direction));
            if seen.insert(key) {
                let mut e = *e;
                if (e.to, e.reverse_direction) < (e.from, e.direction) {
                    e = Edge {
                        from: e.to,
                        to: e.from,
                        direction: e.reverse_direction,
                        reverse_direction: e.direction,
                    };
                }
                out.push(e);
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    fn require_complete(&self) -> Result<()> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::IncompleteGraph)
        }
    }

    /// All cluster variables, deduplicated, in canonical order.
    pub fn cluster_variables(&self) -> BTreeSet<LaurentPoly> {
        self.nodes.iter().flat_map(|s| s.cluster().iter().cloned()).collect()
    }

    /// Unordered clusters of all nodes.
    pub fn clusters(&self) -> Vec<BTreeSet<LaurentPoly>> {
        self.nodes.iter().map(Seed::cluster_set).collect()
    }

    /// Number of incident half-edges per node.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for e in &self.half_edges {
            deg[e.from] += 1;
        }
        deg
    }

    /// Every half-edge `(u, j) → (v, j')` has its partner `(v, j') → (u, j)`.
    pub fn is_symmetric(&self) -> bool {
        let set: HashSet<(usize, usize, usize, usize)> = self
            .half_edges
            .iter()
            .map(|e| (e.from, e.direction, e.to, e.reverse_direction))
            .collect();
        self.half_edges
            .iter()
            .all(|e| set.contains(&(e.to, e.reverse_direction, e.from, e.direction)))
    }

    fn induced(&self, members: Vec<usize>) -> InducedSubgraph {
        let inside: HashSet<usize> = members.iter().copied().collect();
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in &self.half_edges {
            if inside.contains(&e.from) && inside.contains(&e.to) {
                adj.entry(e.from).or_default().push(e.to);
                adj.entry(e.to).or_default().push(e.from);
            }
        }
        let is_connected = match members.first() {
            None => false,
            Some(&start) => {
                let mut seen = HashSet::from([start]);
                let mut stack = vec![start];
                while let Some(u) = stack.pop() {
                    for &v in adj.get(&u).into_iter().flatten() {
                        if seen.insert(v) {
                            stack.push(v);
                        }
                    }
                }
                seen.len() == members.len()
            }
        };
        InducedSubgraph {
            nodes: members,
            is_connected,
        }
    }

    /// Seeds whose cluster contains `v`, and whether they form a connected
    /// subgraph.
    pub fn variable_support_subgraph(&self, v: &LaurentPoly) -> Result<InducedSubgraph> {
        self.require_complete()?;
        let members: Vec<usize> = (0..self.nodes.len())
            .filter(|&i| self.nodes[i].contains(v))
            .collect();
        if members.is_empty() {
            return Err(Error::NotAClusterVariable(v.fraction_string()));
        }
        Ok(self.induced(members))
    }

    /// Seeds whose exchange matrix gives an acyclic quiver.
    pub fn acyclic_seed_subgraph(&self) -> Result<InducedSubgraph> {
        self.require_complete()?;
        let members: Vec<usize> = (0..self.nodes.len())
            .filter(|&i| self.nodes[i].matrix().is_acyclic())
            .collect();
        Ok(self.induced(members))
    }

    /// No two distinct nodes carry the same unordered cluster.
    pub fn seed_determined_by_cluster(&self) -> Result<bool> {
        self.require_complete()?;
        let distinct: HashSet<BTreeSet<LaurentPoly>> = self.clusters().into_iter().collect();
        Ok(distinct.len() == self.nodes.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mutation::{ExchangeMatrix, QuiverSpec};

    fn graph(preset: &str) -> ExchangeGraph {
        let seed = Seed::initial(QuiverSpec::preset(preset).unwrap().to_matrix());
        explore(&seed, ExplorationLimits::default(), false).unwrap()
    }

    fn poly_from(n: usize, terms: &[(i64, &[i64])]) -> LaurentPoly {
        LaurentPoly::from_terms(n, terms.iter().map(|(c, e)| (e.to_vec(), (*c).into()))).unwrap()
    }

    #[test]
    fn a2_pentagon() {
        let g = graph("a2");
        assert!(g.is_complete());
        assert_eq!(g.node_count(), 5);
        assert_eq!(g.edge_count(), 5);
        let vars = g.cluster_variables();
        let expected: BTreeSet<LaurentPoly> = [
            poly_from(2, &[(1, &[1, 0])]),
            poly_from(2, &[(1, &[0, 1])]),
            poly_from(2, &[(1, &[-1, 0]), (1, &[-1, 1])]),
            poly_from(2, &[(1, &[0, -1]), (1, &[1, -1])]),
            poly_from(2, &[(1, &[-1, -1]), (1, &[0, -1]), (1, &[-1, 0])]),
        ]
        .into_iter()
        .collect();
        assert_eq!(vars, expected);
        assert!(g.degrees().iter().all(|&d| d == 2));
        assert!(g.is_symmetric());
    }

    #[test]
    fn a1_and_a3_counts() {
        let g = graph("a1");
        assert_eq!((g.node_count(), g.cluster_variables().len()), (2, 2));
        let two_over_x = poly_from(1, &[(2, &[-1])]);
        assert!(g.cluster_variables().contains(&two_over_x));
        let g = graph("a3");
        assert_eq!((g.node_count(), g.cluster_variables().len()), (14, 9));
    }

    #[test]
    fn kronecker_truncates() {
        let seed = Seed::initial(QuiverSpec::preset("kronecker").unwrap().to_matrix());
        let limits = ExplorationLimits {
            max_seeds: 10,
            max_depth: 64,
        };
        let g = explore(&seed, limits, false).unwrap();
        assert!(!g.is_complete());
        assert_eq!(g.node_count(), 10);
        let g = explore(
            &seed,
            ExplorationLimits {
                max_seeds: 1000,
                max_depth: 3,
            },
            false,
        )
        .unwrap();
        assert!(!g.is_complete());
        assert!(g.variable_support_subgraph(&LaurentPoly::var(2, 0)).is_err());
    }

    #[test]
    fn support_subgraphs() {
        let g = graph("a2");
        let s = g.variable_support_subgraph(&LaurentPoly::var(2, 0)).unwrap();
        assert_eq!(s.nodes.len(), 2);
        assert!(s.is_connected);
        assert!(matches!(
            g.variable_support_subgraph(&LaurentPoly::constant(2, 3)),
            Err(Error::NotAClusterVariable(_))
        ));
        let a1 = graph("a1");
        let s = a1.variable_support_subgraph(&LaurentPoly::var(1, 0)).unwrap();
        assert_eq!(s.nodes, vec![0]);
        assert!(s.is_connected);
    }

    #[test]
    fn acyclic_subgraphs() {
        let g = graph("a2");
        let s = g.acyclic_seed_subgraph().unwrap();
        assert_eq!(s.nodes.len(), 5);
        assert!(s.is_connected);
        let g = graph("a3");
        let s = g.acyclic_seed_subgraph().unwrap();
        assert!(!s.nodes.is_empty() && s.nodes.len() < 14);
        assert!(s.is_connected);
        let g = graph("a1");
        assert_eq!(g.acyclic_seed_subgraph().unwrap().nodes.len(), 2);
    }

    #[test]
    fn clusters_determine_seeds() {
        for p in ["a1", "a2", "a3"] {
            assert!(graph(p).seed_determined_by_cluster().unwrap());
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let seed = Seed::initial(QuiverSpec::preset("a3").unwrap().to_matrix());
        let a = explore(&seed, ExplorationLimits::default(), false).unwrap();
        let b = explore(&seed, ExplorationLimits::default(), true).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn labeled_counts() {
        let seed = Seed::initial(QuiverSpec::preset("a2").unwrap().to_matrix());
        let (count, complete) = count_labeled(&seed, ExplorationLimits::default()).unwrap();
        assert!(complete);
        assert_eq!(count, 10);
        let seed = Seed::initial(ExchangeMatrix::zero(1));
        assert_eq!(count_labeled(&seed, ExplorationLimits::default()).unwrap(), (2, true));
    }

    #[test]
    fn zero_cap_is_rejected() {
        let seed = Seed::initial(ExchangeMatrix::zero(1));
        let limits = ExplorationLimits {
            max_seeds: 0,
            max_depth: 1,
        };
        assert!(explore(&seed, limits, false).is_err());
    }
}
