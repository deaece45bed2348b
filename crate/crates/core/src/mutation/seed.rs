use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::matrix::ExchangeMatrix;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Monomial};

/// An ordered cluster of `n` Laurent polynomials with its exchange matrix.
///
/// The derived ordering compares clusters entrywise first, then matrices;
/// [`Seed::canonical`] picks the smallest relabeling under it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Seed {
    cluster: Vec<LaurentPoly>,
    matrix: ExchangeMatrix,
}

impl Seed {
    pub fn new(cluster: Vec<LaurentPoly>, matrix: ExchangeMatrix) -> Result<Self> {
        let n = matrix.size();
        if cluster.len() != n {
            return Err(Error::Length {
                left: cluster.len(),
                right: n,
            });
        }
        if let Some(p) = cluster.iter().find(|p| p.nvars() != cluster.len()) {
            return Err(Error::VariableCount {
                left: p.nvars(),
                right: n,
            });
        }
        let distinct: BTreeSet<&LaurentPoly> = cluster.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidSeed("cluster entries must be pairwise distinct".into()));
        }
        Ok(Seed { cluster, matrix })
    }

    /// `(x_1, …, x_n; B)`.
    pub fn initial(matrix: ExchangeMatrix) -> Self {
        let n = matrix.size();
        Seed {
            cluster: (0..n).map(|i| LaurentPoly::var(n, i)).collect(),
            matrix,
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.size()
    }

    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.cluster
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn cluster_set(&self) -> BTreeSet<LaurentPoly> {
        self.cluster.iter().cloned().collect()
    }

    pub fn contains(&self, v: &LaurentPoly) -> bool {
        self.cluster.contains(v)
    }

    /// Mutation in direction `j` (0-based) via the exchange relation
    /// `u_j u_j' = Π_{b_ij>0} u_i^{b_ij} + Π_{b_ij<0} u_i^{-b_ij}`,
    /// empty products being 1.
    pub fn mutate(&self, j: usize) -> Result<Seed> {
        let n = self.rank();
        let matrix = self.matrix.mutate(j)?;
        let mut plus = LaurentPoly::one(n);
        let mut minus = LaurentPoly::one(n);
        for (i, u) in self.cluster.iter().enumerate() {
            let b = self.matrix.get(i, j);
            if b > 0 {
                plus = &plus * &u.pow(b as u32);
            } else if b < 0 {
                minus = &minus * &u.pow((-b) as u32);
            }
        }
        let fresh = (&plus + &minus).exact_div(&self.cluster[j])?;
        let mut cluster = self.cluster.clone();
        cluster[j] = fresh;
        Ok(Seed { cluster, matrix })
    }

    /// Applies `perm` (entry `i` moves to slot `perm[i]`) to the cluster and
    /// conjugates the matrix accordingly.
    pub fn relabel(&self, perm: &[usize]) -> Seed {
        let mut cluster = self.cluster.clone();
        for (i, &t) in perm.iter().enumerate() {
            cluster[t] = self.cluster[i].clone();
        }
        Seed {
            cluster,
            matrix: self.matrix.permute(perm),
        }
    }

    /// Canonical representative under simultaneous relabeling, together
    /// with the permutation that produced it.
    pub fn canonical_with_perm(&self) -> (Seed, Vec<usize>) {
        let n = self.rank();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| self.cluster[a].cmp(&self.cluster[b]));
        let mut perm = vec![0; n];
        for (slot, &i) in order.iter().enumerate() {
            perm[i] = slot;
        }
        (self.relabel(&perm), perm)
    }

    pub fn canonical(&self) -> Seed {
        self.canonical_with_perm().0
    }

    /// Pretty one-line form used in text output.
    pub fn describe(&self) -> String {
        let entries: Vec<String> = self.cluster.iter().map(LaurentPoly::fraction_string).collect();
        format!("({}) B={:?}", entries.join(", "), self.matrix.to_rows())
    }
}

/// `x^{v}` for a 0-based exponent vector.
pub fn monomial_poly(exps: Vec<i64>) -> LaurentPoly {
    let n = exps.len();
    LaurentPoly::monomial(n, Monomial::new(exps), 1)
}
