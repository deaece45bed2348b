use serde::Serialize;

use crate::error::{Error, Result};
use crate::mutation::QuiverSpec;

/// Dimension vectors of modules. Signed Grothendieck-group vectors use `Vec<i64>`.
pub type DimVector = Vec<usize>;

pub type IntMatrix = Vec<Vec<i64>>;

/// Integer invariants of the path algebra of an acyclic quiver.
///
/// The Euler form is `<d, e> = dᵀ E e` with `E = I − A`, `A_ij` the number of
/// arrows `i → j`. The Coxeter map `Φ = −E⁻¹ Eᵀ` satisfies `<x, Φy> = −<y, x>`
/// and realizes the AR translate on dimension vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverAlgebraContext {
    #[serde(skip)]
    quiver: QuiverSpec,
    euler: IntMatrix,
    euler_inverse: IntMatrix,
    coxeter: IntMatrix,
    coxeter_inverse: IntMatrix,
    projectives: Vec<Vec<i64>>,
    injectives: Vec<Vec<i64>>,
}

fn matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![0; m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            let aik = a[i][k];
            if aik != 0 {
                for j in 0..m {
                    out[i][j] += aik * bk[j];
                }
            }
        }
    }
    out
}

fn transpose(a: &IntMatrix) -> IntMatrix {
    let n = a.len();
    (0..n).map(|j| (0..n).map(|i| a[i][j]).collect()).collect()
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn negate(a: &IntMatrix) -> IntMatrix {
    a.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
}

pub(crate) fn apply_int(a: &IntMatrix, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

impl QuiverAlgebraContext {
    pub fn new(quiver: QuiverSpec) -> Result<Self> {
        if !quiver.is_acyclic() {
            return Err(Error::InvalidQuiver("path algebra needs an acyclic quiver".into()));
        }
        let n = quiver.vertex_count();
        let mut adj = vec![vec![0i64; n]; n];
        for &(s, t, k) in quiver.arrow_groups() {
            adj[s][t] += i64::from(k);
        }
        let mut euler = identity(n);
        for i in 0..n {
            for j in 0..n {
                euler[i][j] -= adj[i][j];
            }
        }
        // E⁻¹ = Σ_k A^k: the (i, j) entry counts paths i → j.
        let mut euler_inverse = identity(n);
        let mut power = identity(n);
        for _ in 1..n.max(1) {
            power = matmul(&power, &adj);
            for i in 0..n {
                for j in 0..n {
                    euler_inverse[i][j] += power[i][j];
                }
            }
        }
        if matmul(&euler, &euler_inverse) != identity(n) {
            return Err(Error::Inconsistent("Euler matrix inverse".into()));
        }
        let coxeter = negate(&matmul(&euler_inverse, &transpose(&euler)));
        let coxeter_inverse = negate(&matmul(&transpose(&euler_inverse), &euler));
        let projectives = (0..n).map(|j| euler_inverse[j].clone()).collect();
        let injectives = (0..n)
            .map(|j| (0..n).map(|i| euler_inverse[i][j]).collect())
            .collect();
        Ok(QuiverAlgebraContext {
            quiver,
            euler,
            euler_inverse,
            coxeter,
            coxeter_inverse,
            projectives,
            injectives,
        })
    }

    pub fn preset(name: &str) -> Result<Self> {
        Self::new(QuiverSpec::preset(name)?)
    }

    pub fn quiver(&self) -> &QuiverSpec {
        &self.quiver
    }

    pub fn rank(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn euler_matrix(&self) -> &IntMatrix {
        &self.euler
    }

    pub fn coxeter_matrix(&self) -> &IntMatrix {
        &self.coxeter
    }

    fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::Length {
                left: v.len(),
                right: self.rank(),
            });
        }
        Ok(())
    }

    pub fn euler_form(&self, d: &[i64], e: &[i64]) -> Result<i64> {
        self.check_len(d)?;
        self.check_len(e)?;
        Ok(d.iter()
            .zip(&self.euler)
            .map(|(di, row)| di * row.iter().zip(e).map(|(x, y)| x * y).sum::<i64>())
            .sum())
    }

    /// `E v`, whose `i`-th entry is `<α_i, v>`.
    pub fn euler_apply(&self, v: &[i64]) -> Vec<i64> {
        apply_int(&self.euler, v)
    }

    /// `Eᵀ v`, whose `i`-th entry is `<v, α_i>`.
    pub fn euler_transpose_apply(&self, v: &[i64]) -> Vec<i64> {
        apply_int(&transpose(&self.euler), v)
    }

    pub fn coxeter_tau(&self, e: &[i64]) -> Result<Vec<i64>> {
        self.check_len(e)?;
        Ok(apply_int(&self.coxeter, e))
    }

    pub fn coxeter_tau_inverse(&self, e: &[i64]) -> Result<Vec<i64>> {
        self.check_len(e)?;
        Ok(apply_int(&self.coxeter_inverse, e))
    }

    pub fn projective_dims(&self, j: usize) -> &[i64] {
        &self.projectives[j]
    }

    pub fn injective_dims(&self, j: usize) -> &[i64] {
        &self.injectives[j]
    }

    /// Multiplicities `c` with `Σ c_j dim I_j = v`.
    pub fn injective_multiplicities(&self, v: &[i64]) -> Vec<i64> {
        apply_int(&self.euler, v)
    }

    /// Multiplicities `c` with `Σ c_j dim P_j = v`.
    pub fn projective_multiplicities(&self, v: &[i64]) -> Vec<i64> {
        apply_int(&transpose(&self.euler), v)
    }

    pub fn unit(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }
}

pub fn to_signed(d: &[usize]) -> Vec<i64> {
    d.iter().map(|&x| x as i64).collect()
}

/// Converts a signed vector back to a dimension vector if it has no
/// negative entry.
pub fn to_dims(v: &[i64]) -> Option<DimVector> {
    v.iter().map(|&x| usize::try_from(x).ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const PRESETS: [&str; 7] = ["a1", "a2", "a3", "a4", "a6", "d4", "kronecker"];

    #[test]
    fn euler_form_examples() {
        let k = QuiverAlgebraContext::preset("kronecker").unwrap();
        assert_eq!(k.euler_form(&[1, 0], &[0, 1]).unwrap(), -2);
        let a3 = QuiverAlgebraContext::preset("a3").unwrap();
        assert_eq!(a3.euler_form(&[1, 1, 1], &[1, 1, 1]).unwrap(), 1);
        for p in PRESETS {
            let c = QuiverAlgebraContext::preset(p).unwrap();
            for i in 0..c.rank() {
                assert_eq!(c.euler_form(&c.unit(i), &c.unit(i)).unwrap(), 1);
            }
        }
        assert!(a3.euler_form(&[1, 0], &[1, 0, 0]).is_err());
    }

    #[test]
    fn coxeter_sends_projectives_to_negative_injectives() {
        for p in PRESETS {
            let c = QuiverAlgebraContext::preset(p).unwrap();
            for j in 0..c.rank() {
                let image = c.coxeter_tau(c.projective_dims(j)).unwrap();
                let minus: Vec<i64> = c.injective_dims(j).iter().map(|x| -x).collect();
                assert_eq!(image, minus, "{p} vertex {j}");
                assert_eq!(c.coxeter_tau_inverse(&image).unwrap(), c.projective_dims(j));
            }
        }
    }

    #[test]
    fn kronecker_postprojective_orbit() {
        let c = QuiverAlgebraContext::preset("kronecker").unwrap();
        assert_eq!(c.projective_dims(0), &[1, 2]);
        assert_eq!(c.projective_dims(1), &[0, 1]);
        // τ U^{n+2} = U^n on the postprojective component.
        for n in 0..8i64 {
            assert_eq!(c.coxeter_tau(&[n + 2, n + 3]).unwrap(), vec![n, n + 1]);
        }
    }

    #[test]
    fn multiplicities_invert_dims() {
        let c = QuiverAlgebraContext::preset("d4").unwrap();
        for j in 0..4 {
            assert_eq!(c.injective_multiplicities(c.injective_dims(j)), c.unit(j));
            assert_eq!(c.projective_multiplicities(c.projective_dims(j)), c.unit(j));
        }
    }

    #[test]
    fn cyclic_quiver_rejected() {
        let q = QuiverSpec::new(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        assert!(QuiverAlgebraContext::new(q).is_err());
    }
}
