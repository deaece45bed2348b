use serde::{Deserialize, Serialize};

use super::context::DimVector;
use crate::error::{Error, Result};
use crate::fp::{self, Mat};
use crate::mutation::QuiverSpec;

/// A representation over `F_p`: a space `F_p^{d_i}` per vertex and a
/// `d_t × d_s` matrix per arrow `s → t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuiverRep {
    p: u64,
    dims: DimVector,
    arrows: Vec<(usize, usize)>,
    maps: Vec<Mat>,
}

/// Subspace per vertex, as a reduced echelon row basis.
pub type Subspaces = Vec<Vec<Vec<u64>>>;

/// A morphism `M → N`: one `n_i × m_i` matrix per vertex.
pub type Morphism = Vec<Mat>;

impl QuiverRep {
    pub fn new(p: u64, dims: DimVector, arrows: Vec<(usize, usize)>, maps: Vec<Mat>) -> Result<Self> {
        fp::check_prime(p)?;
        if arrows.len() != maps.len() {
            return Err(Error::Length {
                left: maps.len(),
                right: arrows.len(),
            });
        }
        for (k, (&(s, t), m)) in arrows.iter().zip(&maps).enumerate() {
            if s >= dims.len() || t >= dims.len() {
                return Err(Error::IndexOutOfRange {
                    index: s.max(t),
                    size: dims.len(),
                });
            }
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(Error::Shape(format!(
                    "arrow {k} ({s}->{t}) needs a {}x{} matrix, got {}x{}",
                    dims[t],
                    dims[s],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.to_rows().iter().flatten().any(|&x| x >= p) {
                return Err(Error::Shape(format!("arrow {k} has entries outside F_{p}")));
            }
        }
        Ok(QuiverRep {
            p,
            dims,
            arrows,
            maps,
        })
    }

    pub fn zero(quiver: &QuiverSpec, p: u64) -> Result<Self> {
        let arrows = quiver.arrow_list();
        let maps = arrows.iter().map(|_| Mat::zeros(0, 0)).collect();
        Self::new(p, vec![0; quiver.vertex_count()], arrows, maps)
    }

    /// Simple representation at vertex `i`.
    pub fn simple(quiver: &QuiverSpec, i: usize, p: u64) -> Result<Self> {
        let n = quiver.vertex_count();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, size: n });
        }
        let mut dims = vec![0; n];
        dims[i] = 1;
        let arrows = quiver.arrow_list();
        let maps = arrows.iter().map(|&(s, t)| Mat::zeros(dims[t], dims[s])).collect();
        Self::new(p, dims, arrows, maps)
    }

    /// Reduces integer matrices modulo `p`.
    pub fn from_integers(
        p: u64,
        dims: DimVector,
        arrows: Vec<(usize, usize)>,
        maps: &[Vec<Vec<i64>>],
    ) -> Result<Self> {
        let mats = arrows
            .iter()
            .zip(maps)
            .map(|(&(s, t), rows)| {
                if dims[s] == 0 || dims[t] == 0 {
                    Ok(Mat::zeros(dims[t], dims[s]))
                } else {
                    Mat::from_int_rows(rows, dims[s], p)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, dims, arrows, mats)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn vertex_count(&self) -> usize {
        self.dims.len()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }

    pub fn map(&self, a: usize) -> &Mat {
        &self.maps[a]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn same_context(&self, other: &QuiverRep) -> Result<()> {
        if self.p != other.p || self.arrows != other.arrows || self.dims.len() != other.dims.len() {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    /// Checks that the arrows are exactly those of `quiver`, in its order.
    pub fn check_quiver(&self, quiver: &QuiverSpec) -> Result<()> {
        if self.dims.len() != quiver.vertex_count() || self.arrows != quiver.arrow_list() {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    /// Euler form of the dimension vectors, read off the arrow list.
    pub fn euler_form_with(&self, other: &QuiverRep) -> i64 {
        let diag: i64 = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(&a, &b)| (a * b) as i64)
            .sum();
        let arrows: i64 = self
            .arrows
            .iter()
            .map(|&(s, t)| (self.dims[s] * other.dims[t]) as i64)
            .sum();
        diag - arrows
    }

    pub fn direct_sum(&self, other: &QuiverRep) -> Result<QuiverRep> {
        self.same_context(other)?;
        let dims: DimVector = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let tr = Mat::zeros(self.dims[t], other.dims[s]);
                let bl = Mat::zeros(other.dims[t], self.dims[s]);
                Mat::block(&self.maps[a], &tr, &bl, &other.maps[a])
            })
            .collect::<Result<Vec<_>>>()?;
        QuiverRep::new(self.p, dims, self.arrows.clone(), maps)
    }

    /// The dual representation on the opposite quiver: same spaces,
    /// reversed arrows, transposed maps. Subrepresentations of dimension `e`
    /// correspond to subrepresentations of the dual of dimension `dims − e`.
    pub fn dual(&self) -> QuiverRep {
        QuiverRep {
            p: self.p,
            dims: self.dims.clone(),
            arrows: self.arrows.iter().map(|&(s, t)| (t, s)).collect(),
            maps: self.maps.iter().map(Mat::transpose).collect(),
        }
    }

    /// Whether `sub` (a row basis per vertex) is stable under all arrows.
    pub fn is_subrep(&self, sub: &Subspaces) -> bool {
        self.arrows.iter().enumerate().all(|(a, &(s, t))| {
            let target = fp::span_basis(&sub[t], self.dims[t], self.p);
            let piv = fp::pivots_of(&target);
            sub[s].iter().all(|v| {
                let image = self.maps[a].apply(v, self.p);
                fp::coordinates(&target, &piv, &image, self.p).is_some()
            })
        })
    }

    /// The subrepresentation on the given stable subspaces, written in the
    /// echelon bases of those subspaces.
    pub fn subrep(&self, sub: &Subspaces) -> Result<QuiverRep> {
        let p = self.p;
        let bases: Vec<Vec<Vec<u64>>> = sub
            .iter()
            .zip(&self.dims)
            .map(|(b, &d)| fp::span_basis(b, d, p))
            .collect();
        let pivots: Vec<Vec<usize>> = bases.iter().map(|b| fp::pivots_of(b)).collect();
        let dims: DimVector = bases.iter().map(Vec::len).collect();
        let mut maps = Vec::with_capacity(self.arrows.len());
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            let mut m = Mat::zeros(dims[t], dims[s]);
            for (c, v) in bases[s].iter().enumerate() {
                let image = self.maps[a].apply(v, p);
                let coords = fp::coordinates(&bases[t], &pivots[t], &image, p)
                    .ok_or_else(|| Error::Precondition("subspaces are not arrow-stable".into()))?;
                for (r, x) in coords.into_iter().enumerate() {
                    m.set(r, c, x);
                }
            }
            maps.push(m);
        }
        QuiverRep::new(p, dims, self.arrows.clone(), maps)
    }

    /// The quotient by stable subspaces. The quotient at each vertex is
    /// identified with the coordinates at the non-pivot columns of the
    /// echelon basis of the subspace.
    pub fn quotient(&self, sub: &Subspaces) -> Result<QuiverRep> {
        if !self.is_subrep(sub) {
            return Err(Error::Precondition("subspaces are not arrow-stable".into()));
        }
        let p = self.p;
        let bases: Vec<Vec<Vec<u64>>> = sub
            .iter()
            .zip(&self.dims)
            .map(|(b, &d)| fp::span_basis(b, d, p))
            .collect();
        let free: Vec<Vec<usize>> = bases
            .iter()
            .zip(&self.dims)
            .map(|(b, &d)| {
                let piv = fp::pivots_of(b);
                (0..d).filter(|c| !piv.contains(c)).collect()
            })
            .collect();
        let reduce = |v: &mut Vec<u64>, basis: &[Vec<u64>]| {
            for row in basis {
                let pc = row.iter().position(|&x| x != 0).expect("echelon row");
                let f = v[pc];
                if f != 0 {
                    for (x, y) in v.iter_mut().zip(row) {
                        *x = (*x + p - f * y % p) % p;
                    }
                }
            }
        };
        let dims: DimVector = free.iter().map(Vec::len).collect();
        let mut maps = Vec::with_capacity(self.arrows.len());
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            let mut m = Mat::zeros(dims[t], dims[s]);
            for (c, &col) in free[s].iter().enumerate() {
                let mut unit = vec![0u64; self.dims[s]];
                unit[col] = 1;
                let mut image = self.maps[a].apply(&unit, p);
                reduce(&mut image, &bases[t]);
                for (r, &fc) in free[t].iter().enumerate() {
                    m.set(r, c, image[fc]);
                }
            }
            maps.push(m);
        }
        QuiverRep::new(p, dims, self.arrows.clone(), maps)
    }

    /// Kernel subspaces of a morphism out of `self`.
    pub fn kernel_subspaces(&self, f: &Morphism) -> Subspaces {
        f.iter()
            .map(|fi| fp::span_basis(&fi.nullspace(self.p), fi.cols(), self.p))
            .collect()
    }

    /// Image subspaces of a morphism `self → target`.
    pub fn image_subspaces(&self, f: &Morphism) -> Subspaces {
        f.iter()
            .map(|fi| {
                let cols: Vec<Vec<u64>> = fi.transpose().to_rows();
                fp::span_basis(&cols, fi.rows(), self.p)
            })
            .collect()
    }

    /// Largest subrepresentation vanishing at vertex `i`.
    pub fn largest_subrep_avoiding(&self, i: usize, quiver: &QuiverSpec) -> Result<Subspaces> {
        let order = quiver
            .topological_order()
            .ok_or_else(|| Error::InvalidQuiver("quiver has an oriented cycle".into()))?;
        let p = self.p;
        let mut sub: Subspaces = vec![Vec::new(); self.vertex_count()];
        for &v in order.iter().rev() {
            if v == i {
                continue;
            }
            // Intersection of preimages M_a^{-1}(K_t) over arrows a: v → t.
            let mut constraints: Vec<Vec<u64>> = Vec::new();
            for (a, &(s, t)) in self.arrows.iter().enumerate() {
                if s != v {
                    continue;
                }
                // Rows spanning the annihilator of K_t, composed with M_a.
                let annihilator = Mat::from_rows(
                    sub[t].len(),
                    self.dims[t],
                    sub[t].iter().flatten().copied().collect(),
                )?
                .nullspace(p);
                for w in annihilator {
                    let row = self.maps[a].transpose().apply(&w, p);
                    constraints.push(row);
                }
            }
            let cmat = Mat::from_rows(
                constraints.len(),
                self.dims[v],
                constraints.into_iter().flatten().collect(),
            )?;
            sub[v] = fp::span_basis(&cmat.nullspace(p), self.dims[v], p);
        }
        Ok(sub)
    }

    /// Smallest subrepresentation containing the whole space at vertex `i`.
    pub fn subrep_generated_at(&self, i: usize, quiver: &QuiverSpec) -> Result<Subspaces> {
        let order = quiver
            .topological_order()
            .ok_or_else(|| Error::InvalidQuiver("quiver has an oriented cycle".into()))?;
        let p = self.p;
        let mut gens: Vec<Vec<Vec<u64>>> = vec![Vec::new(); self.vertex_count()];
        gens[i] = (0..self.dims[i])
            .map(|c| {
                let mut v = vec![0; self.dims[i]];
                v[c] = 1;
                v
            })
            .collect();
        let mut sub: Subspaces = vec![Vec::new(); self.vertex_count()];
        for &v in &order {
            sub[v] = fp::span_basis(&gens[v], self.dims[v], p);
            for (a, &(s, t)) in self.arrows.iter().enumerate() {
                if s == v {
                    for w in &sub[v] {
                        gens[t].push(self.maps[a].apply(w, p));
                    }
                }
            }
        }
        Ok(sub)
    }

    pub fn to_json_value(&self) -> RepFile {
        RepFile {
            p: self.p,
            dims: self.dims.clone(),
            arrows: self
                .arrows
                .iter()
                .zip(&self.maps)
                .map(|(&(s, t), m)| ArrowFile {
                    source: s + 1,
                    target: t + 1,
                    matrix: m.to_rows(),
                })
                .collect(),
        }
    }

    /// Parses the JSON file format (1-based vertices). Arrows are matched to
    /// those of `quiver`; parallel arrows keep their order of appearance.
    pub fn from_json(text: &str, quiver: &QuiverSpec) -> Result<Self> {
        let file: RepFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_rep(quiver)
    }
}

/// Serialized representation: `{p, dims, arrows: [{source, target, matrix}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub p: u64,
    pub dims: Vec<usize>,
    pub arrows: Vec<ArrowFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowFile {
    pub source: usize,
    pub target: usize,
    pub matrix: Vec<Vec<u64>>,
}

impl RepFile {
    pub fn into_rep(self, quiver: &QuiverSpec) -> Result<QuiverRep> {
        let n = quiver.vertex_count();
        if self.dims.len() != n {
            return Err(Error::Length {
                left: self.dims.len(),
                right: n,
            });
        }
        let mut entries = Vec::with_capacity(self.arrows.len());
        for a in self.arrows {
            if a.source == 0 || a.target == 0 || a.source > n || a.target > n {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {}->{} outside vertices 1..{n}",
                    a.source, a.target
                )));
            }
            let (s, t) = (a.source - 1, a.target - 1);
            let rows = self.dims[t];
            let cols = self.dims[s];
            if a.matrix.len() != rows || a.matrix.iter().any(|r| r.len() != cols) {
                return Err(Error::Shape(format!(
                    "arrow {}->{} needs a {rows}x{cols} matrix",
                    a.source, a.target
                )));
            }
            let data = a.matrix.into_iter().flatten().collect();
            entries.push(((s, t), Mat::from_rows(rows, cols, data)?));
        }
        entries.sort_by_key(|e| e.0);
        let arrows: Vec<(usize, usize)> = entries.iter().map(|e| e.0).collect();
        if arrows != quiver.arrow_list() {
            return Err(Error::ContextMismatch);
        }
        QuiverRep::new(self.p, self.dims, arrows, entries.into_iter().map(|e| e.1).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kron_u1(p: u64) -> QuiverRep {
        let q = QuiverSpec::preset("kronecker").unwrap();
        QuiverRep::from_integers(
            p,
            vec![1, 2],
            q.arrow_list(),
            &[vec![vec![1], vec![0]], vec![vec![0], vec![1]]],
        )
        .unwrap()
    }

    #[test]
    fn shape_validation() {
        let q = QuiverSpec::preset("a2").unwrap();
        let bad = QuiverRep::new(7, vec![1, 1], q.arrow_list(), vec![Mat::zeros(2, 1)]);
        assert!(matches!(bad, Err(Error::Shape(_))));
        assert!(QuiverRep::new(6, vec![1, 1], q.arrow_list(), vec![Mat::zeros(1, 1)]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let q = QuiverSpec::preset("kronecker").unwrap();
        let m = kron_u1(5);
        let text = serde_json::to_string(&m.to_json_value()).unwrap();
        assert_eq!(QuiverRep::from_json(&text, &q).unwrap(), m);
        let a2 = QuiverSpec::preset("a2").unwrap();
        assert!(QuiverRep::from_json(&text, &a2).is_err());
    }

    #[test]
    fn direct_sum_dims() {
        let m = kron_u1(7);
        let s = m.direct_sum(&m).unwrap();
        assert_eq!(s.dims(), &[2, 4]);
        assert_eq!(s.map(0).rank(7), 2);
    }

    #[test]
    fn sub_and_quotient() {
        let q = QuiverSpec::preset("kronecker").unwrap();
        let m = kron_u1(7);
        let sub: Subspaces = vec![vec![], vec![vec![1, 0]]];
        assert!(m.is_subrep(&sub));
        let s = m.subrep(&sub).unwrap();
        assert_eq!(s.dims(), &[0, 1]);
        let quo = m.quotient(&sub).unwrap();
        assert_eq!(quo.dims(), &[1, 1]);
        // α: e1 ↦ e1 ≡ 0, β: e1 ↦ e2 survives.
        assert_eq!(quo.map(0).to_rows(), vec![vec![0]]);
        assert_eq!(quo.map(1).to_rows(), vec![vec![1]]);
        assert!(!m.is_subrep(&vec![vec![vec![1]], vec![vec![1, 0]]]));
        let gen = m.subrep_generated_at(0, &q).unwrap();
        assert_eq!(gen[1].len(), 2);
        let avoid = m.largest_subrep_avoiding(1, &q).unwrap();
        assert!(avoid.iter().all(Vec::is_empty));
        let avoid = m.largest_subrep_avoiding(0, &q).unwrap();
        assert_eq!(avoid[1].len(), 2);
    }

    #[test]
    fn dual_reverses_arrows() {
        let m = kron_u1(3);
        let d = m.dual();
        assert_eq!(d.arrows(), &[(1, 0), (1, 0)]);
        assert_eq!(d.map(0).rows(), 1);
        assert_eq!(d.dual(), m);
    }
}
