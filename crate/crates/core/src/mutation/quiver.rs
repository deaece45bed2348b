use serde::{Deserialize, Serialize};

use super::matrix::{topological_order, ExchangeMatrix};
use crate::error::{Error, Result};

/// A finite quiver without loops or 2-cycles. Vertices are `0..n`; each
/// arrow group is `(source, target, multiplicity)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuiverSpec {
    n: usize,
    arrows: Vec<(usize, usize, u32)>,
}

impl QuiverSpec {
    pub fn new(n: usize, arrows: impl IntoIterator<Item = (usize, usize, u32)>) -> Result<Self> {
        let mut counts = vec![0u32; n * n];
        for (s, t, k) in arrows {
            if s >= n || t >= n {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {s}->{t} leaves the vertex range 0..{n}"
                )));
            }
            if s == t && k > 0 {
                return Err(Error::InvalidQuiver(format!("loop at vertex {s}")));
            }
            counts[s * n + t] += k;
        }
        let mut groups = Vec::new();
        for s in 0..n {
            for t in 0..n {
                let k = counts[s * n + t];
                if k > 0 && counts[t * n + s] > 0 {
                    return Err(Error::InvalidQuiver(format!("2-cycle between {s} and {t}")));
                }
                if k > 0 {
                    groups.push((s, t, k));
                }
            }
        }
        Ok(QuiverSpec { n, arrows: groups })
    }

    /// `b_ij` arrows `i → j` for every positive entry.
    pub fn from_matrix(b: &ExchangeMatrix) -> Self {
        let n = b.size();
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if b.get(i, j) > 0 {
                    arrows.push((i, j, b.get(i, j) as u32));
                }
            }
        }
        QuiverSpec { n, arrows }
    }

    pub fn to_matrix(&self) -> ExchangeMatrix {
        let n = self.n;
        let mut rows = vec![vec![0i64; n]; n];
        for &(s, t, k) in &self.arrows {
            rows[s][t] += k as i64;
            rows[t][s] -= k as i64;
        }
        ExchangeMatrix::new(rows).expect("quiver without 2-cycles gives an antisymmetric matrix")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arrow_groups(&self) -> &[(usize, usize, u32)] {
        &self.arrows
    }

    /// Individual arrows, parallel arrows repeated in order.
    pub fn arrow_list(&self) -> Vec<(usize, usize)> {
        self.arrows
            .iter()
            .flat_map(|&(s, t, k)| std::iter::repeat_n((s, t), k as usize))
            .collect()
    }

    pub fn arrow_count(&self, s: usize, t: usize) -> u32 {
        self.arrows
            .iter()
            .filter(|a| a.0 == s && a.1 == t)
            .map(|a| a.2)
            .sum()
    }

    pub fn topological_order(&self) -> Option<Vec<usize>> {
        topological_order(self.n, |i, j| self.arrow_count(i, j) > 0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Named presets: `a1`..`aN` (linear `1 → 2 → … → N`), `d4`
    /// (`1 → 2`, `3 → 2`, `4 → 2`) and `kronecker` (two arrows `1 → 2`).
    pub fn preset(name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        match lower.as_str() {
            "kronecker" => QuiverSpec::new(2, [(0, 1, 2)]),
            "d4" => QuiverSpec::new(4, [(0, 1, 1), (2, 1, 1), (3, 1, 1)]),
            _ => {
                let n: usize = lower
                    .strip_prefix('a')
                    .and_then(|k| k.parse().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| Error::InvalidQuiver(format!("unknown preset {name:?}")))?;
                QuiverSpec::new(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1, 1)))
            }
        }
    }

    /// Parses `{"n": …, "matrix": [[…]]}` or `{"n": …, "arrows": [[s, t, k], …]}`
    /// with 1-based vertex labels.
    pub fn from_json(text: &str) -> Result<Self> {
        let input: QuiverInput =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        input.into_quiver()
    }
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverInput {
    pub n: usize,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub arrows: Option<Vec<(usize, usize, u32)>>,
}

impl QuiverInput {
    pub fn into_quiver(self) -> Result<QuiverSpec> {
        match (self.matrix, self.arrows) {
            (Some(rows), None) => {
                if rows.len() != self.n {
                    return Err(Error::Length {
                        left: rows.len(),
                        right: self.n,
                    });
                }
                Ok(QuiverSpec::from_matrix(&ExchangeMatrix::new(rows)?))
            }
            (None, Some(arrows)) => {
                let mut zero_based = Vec::with_capacity(arrows.len());
                for (s, t, k) in arrows {
                    if s == 0 || t == 0 {
                        return Err(Error::InvalidQuiver("vertex labels are 1-based".into()));
                    }
                    zero_based.push((s - 1, t - 1, k));
                }
                QuiverSpec::new(self.n, zero_based)
            }
            _ => Err(Error::Parse("exactly one of `matrix` or `arrows` is required".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_dictionary() {
        let b = ExchangeMatrix::new(vec![vec![0, 2], vec![-2, 0]]).unwrap();
        let q = QuiverSpec::from_matrix(&b);
        assert_eq!(q.arrow_groups(), &[(0, 1, 2)]);
        assert_eq!(q.arrow_list(), vec![(0, 1), (0, 1)]);
        assert_eq!(q, QuiverSpec::preset("kronecker").unwrap());
    }

    #[test]
    fn linear_a3_matrix() {
        let q = QuiverSpec::preset("a3").unwrap();
        assert_eq!(
            q.to_matrix().to_rows(),
            vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]
        );
    }

    #[test]
    fn round_trip_a2() {
        let q = QuiverSpec::preset("a2").unwrap();
        assert_eq!(QuiverSpec::from_matrix(&q.to_matrix()), q);
    }

    #[test]
    fn invalid_quivers() {
        assert!(QuiverSpec::new(2, [(0, 0, 1)]).is_err());
        assert!(QuiverSpec::new(2, [(0, 1, 1), (1, 0, 1)]).is_err());
        assert!(QuiverSpec::new(2, [(0, 2, 1)]).is_err());
        assert!(QuiverSpec::preset("e9x").is_err());
        assert!(QuiverSpec::preset("a0").is_err());
    }

    #[test]
    fn json_input() {
        let q = QuiverSpec::from_json(r#"{"n": 2, "arrows": [[1, 2, 2]]}"#).unwrap();
        assert_eq!(q, QuiverSpec::preset("kronecker").unwrap());
        let q = QuiverSpec::from_json(r#"{"n": 3, "matrix": [[0,1,0],[-1,0,1],[0,-1,0]]}"#).unwrap();
        assert_eq!(q, QuiverSpec::preset("a3").unwrap());
        assert!(QuiverSpec::from_json(r#"{"n": 2}"#).is_err());
        assert!(QuiverSpec::from_json(r#"{"n": 2, "arrows": [[0, 1, 1]]}"#).is_err());
    }

    #[test]
    fn acyclicity() {
        assert!(QuiverSpec::preset("d4").unwrap().is_acyclic());
        let cyc = QuiverSpec::new(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        assert!(!cyc.is_acyclic());
    }
}
