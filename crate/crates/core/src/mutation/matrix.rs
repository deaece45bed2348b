use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Antisymmetric integer exchange matrix `B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct ExchangeMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl ExchangeMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in &rows {
            if r.len() != n {
                return Err(Error::Length {
                    left: r.len(),
                    right: n,
                });
            }
            entries.extend_from_slice(r);
        }
        let m = ExchangeMatrix { n, entries };
        for i in 0..n {
            for j in 0..n {
                if m.get(i, j) != -m.get(j, i) {
                    return Err(Error::NotAntisymmetric { row: i, col: j });
                }
            }
        }
        Ok(m)
    }

    pub fn zero(n: usize) -> Self {
        ExchangeMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n.max(1)).take(self.n).map(<[i64]>::to_vec).collect()
    }

    /// Matrix mutation in direction `j` (0-based):
    /// `b'_ik = -b_ik` if `i = j` or `k = j`, otherwise
    /// `b_ik + (|b_ij| b_jk + b_ij |b_jk|) / 2`.
    pub fn mutate(&self, j: usize) -> Result<Self> {
        if j >= self.n {
            return Err(Error::IndexOutOfRange {
                index: j,
                size: self.n,
            });
        }
        let n = self.n;
        let mut out = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let b = self.get(i, k);
                out[i * n + k] = if i == j || k == j {
                    -b
                } else {
                    let (bij, bjk) = (self.get(i, j), self.get(j, k));
                    b + (bij.abs() * bjk + bij * bjk.abs()) / 2
                };
            }
        }
        Ok(ExchangeMatrix { n, entries: out })
    }

    /// Simultaneous row/column relabeling: entry `(i, k)` moves to
    /// `(perm[i], perm[k])`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut out = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                out[perm[i] * n + perm[k]] = self.get(i, k);
            }
        }
        ExchangeMatrix { n, entries: out }
    }

    /// True when the quiver with `b_ij` arrows `i → j` has no oriented cycle.
    pub fn is_acyclic(&self) -> bool {
        topological_order(self.n, |i, j| self.get(i, j) > 0).is_some()
    }
}

impl TryFrom<Vec<Vec<i64>>> for ExchangeMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        ExchangeMatrix::new(rows)
    }
}

impl From<ExchangeMatrix> for Vec<Vec<i64>> {
    fn from(m: ExchangeMatrix) -> Self {
        m.to_rows()
    }
}

/// Kahn's algorithm on the relation `edge(i, j)`.
pub(crate) fn topological_order(n: usize, edge: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if edge(i, j) {
                indeg[j] += 1;
            }
        }
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).rev().collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop() {
        order.push(v);
        for w in (0..n).rev() {
            if edge(v, w) {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
    }
    (order.len() == n).then_some(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ExchangeMatrix {
        ExchangeMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn rank_two_sign_flip() {
        let b = m(&[&[0, 1], &[-1, 0]]);
        assert_eq!(b.mutate(0).unwrap(), m(&[&[0, -1], &[1, 0]]));
    }

    #[test]
    fn kronecker_involution() {
        let b = m(&[&[0, 2], &[-2, 0]]);
        assert_eq!(b.mutate(1).unwrap().mutate(1).unwrap(), b);
    }

    #[test]
    fn a3_middle_mutation() {
        // b'_13 = 0 + (|1|*1 + 1*|1|)/2 = 1
        let b = m(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]]);
        let expected = m(&[&[0, -1, 1], &[1, 0, -1], &[-1, 1, 0]]);
        assert_eq!(b.mutate(1).unwrap(), expected);
        assert!(b.is_acyclic());
        assert!(!expected.is_acyclic());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            ExchangeMatrix::new(vec![vec![0, 1], vec![1, 0]]),
            Err(Error::NotAntisymmetric { .. })
        ));
        assert!(ExchangeMatrix::new(vec![vec![1]]).is_err());
        assert!(ExchangeMatrix::new(vec![vec![0, 1]]).is_err());
        assert_eq!(
            m(&[&[0]]).mutate(1),
            Err(Error::IndexOutOfRange { index: 1, size: 1 })
        );
    }

    #[test]
    fn serde_as_rows() {
        let b = m(&[&[0, 2], &[-2, 0]]);
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, "[[0,2],[-2,0]]");
        assert!(serde_json::from_str::<ExchangeMatrix>("[[0,2],[2,0]]").is_err());
    }
}
