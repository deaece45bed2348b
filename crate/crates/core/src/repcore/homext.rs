//! Hom and Ext¹ between representations of an acyclic quiver.
//!
//! Both come from one linear map. With cochains
//! `C⁰ = ⊕_i Hom(M_i, N_i)` and `C¹ = ⊕_a Hom(M_{s(a)}, N_{t(a)})`, the
//! differential `δ(f)_a = N_a f_s − f_t M_a` has kernel `Hom(M, N)` and
//! cokernel `Ext¹(M, N)`.

use super::rep::{Morphism, QuiverRep};
use crate::error::{Error, Result};
use crate::fp::{self, Mat};

/// A tuple `(c_a)` with `c_a : M_{s(a)} → N_{t(a)}`.
pub type Cochain = Vec<Mat>;

fn c0_offsets(m: &QuiverRep, n: &QuiverRep) -> (Vec<usize>, usize) {
    let mut offs = Vec::with_capacity(m.vertex_count());
    let mut total = 0;
    for i in 0..m.vertex_count() {
        offs.push(total);
        total += n.dims()[i] * m.dims()[i];
    }
    (offs, total)
}

fn c1_offsets(m: &QuiverRep, n: &QuiverRep) -> (Vec<usize>, usize) {
    let mut offs = Vec::with_capacity(m.arrows().len());
    let mut total = 0;
    for &(s, t) in m.arrows() {
        offs.push(total);
        total += n.dims()[t] * m.dims()[s];
    }
    (offs, total)
}

/// Matrix of `δ : C⁰ → C¹` (rows index `C¹`, columns index `C⁰`).
fn differential(m: &QuiverRep, n: &QuiverRep) -> Result<Mat> {
    m.same_context(n)?;
    let p = m.prime();
    let (off0, dim0) = c0_offsets(m, n);
    let (off1, dim1) = c1_offsets(m, n);
    let mut d = Mat::zeros(dim1, dim0);
    for (a, &(s, t)) in m.arrows().iter().enumerate() {
        let (ms, mt, nt) = (m.dims()[s], m.dims()[t], n.dims()[t]);
        let (na, ma) = (n.map(a), m.map(a));
        for r in 0..nt {
            for c in 0..ms {
                let row = off1[a] + r * ms + c;
                // (N_a f_s)[r][c] = Σ_k N_a[r][k] f_s[k][c]
                for k in 0..n.dims()[s] {
                    let col = off0[s] + k * ms + c;
                    d.set(row, col, (d.get(row, col) + na.get(r, k)) % p);
                }
                // −(f_t M_a)[r][c] = −Σ_k f_t[r][k] M_a[k][c]
                for k in 0..mt {
                    let col = off0[t] + r * mt + k;
                    d.set(row, col, (d.get(row, col) + p - ma.get(k, c)) % p);
                }
            }
        }
    }
    Ok(d)
}

fn unflatten_c0(m: &QuiverRep, n: &QuiverRep, v: &[u64]) -> Morphism {
    let (offs, _) = c0_offsets(m, n);
    (0..m.vertex_count())
        .map(|i| {
            let (r, c) = (n.dims()[i], m.dims()[i]);
            Mat::from_rows(r, c, v[offs[i]..offs[i] + r * c].to_vec()).expect("sized slice")
        })
        .collect()
}

fn unflatten_c1(m: &QuiverRep, n: &QuiverRep, v: &[u64]) -> Cochain {
    let (offs, _) = c1_offsets(m, n);
    m.arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let (r, c) = (n.dims()[t], m.dims()[s]);
            Mat::from_rows(r, c, v[offs[a]..offs[a] + r * c].to_vec()).expect("sized slice")
        })
        .collect()
}

fn flatten_c1(m: &QuiverRep, n: &QuiverRep, c: &Cochain) -> Result<Vec<u64>> {
    if c.len() != m.arrows().len() {
        return Err(Error::Shape("cochain needs one matrix per arrow".into()));
    }
    let mut out = Vec::new();
    for (ca, &(s, t)) in c.iter().zip(m.arrows()) {
        if ca.rows() != n.dims()[t] || ca.cols() != m.dims()[s] {
            return Err(Error::Shape(format!(
                "cochain component {s}->{t} must be {}x{}",
                n.dims()[t],
                m.dims()[s]
            )));
        }
        out.extend(ca.to_rows().into_iter().flatten());
    }
    Ok(out)
}

pub fn hom_dim(m: &QuiverRep, n: &QuiverRep) -> Result<usize> {
    let d = differential(m, n)?;
    Ok(d.cols() - d.rank(m.prime()))
}

pub fn hom_basis(m: &QuiverRep, n: &QuiverRep) -> Result<Vec<Morphism>> {
    let d = differential(m, n)?;
    Ok(d.nullspace(m.prime())
        .iter()
        .map(|v| unflatten_c0(m, n, v))
        .collect())
}

/// `dim Ext¹(M, N) = dim Hom(M, N) − <dim M, dim N>`, cross-checked against
/// the cokernel of the differential.
pub fn ext_dim(m: &QuiverRep, n: &QuiverRep) -> Result<usize> {
    let d = differential(m, n)?;
    let rank = d.rank(m.prime());
    let hom = (d.cols() - rank) as i64;
    let via_euler = hom - m.euler_form_with(n);
    let via_cokernel = (d.rows() - rank) as i64;
    if via_euler < 0 || via_euler != via_cokernel {
        return Err(Error::Inconsistent(format!(
            "ext via Euler form {via_euler} vs cokernel {via_cokernel}"
        )));
    }
    Ok(via_euler as usize)
}

/// Cokernel dimension of the differential alone.
pub fn ext_dim_cocycle(m: &QuiverRep, n: &QuiverRep) -> Result<usize> {
    let d = differential(m, n)?;
    Ok(d.rows() - d.rank(m.prime()))
}

/// Cochains whose classes form a basis of `Ext¹(M, N)`: standard basis
/// vectors of `C¹` chosen greedily outside the image of `δ`.
pub fn ext_basis(m: &QuiverRep, n: &QuiverRep) -> Result<Vec<Cochain>> {
    let d = differential(m, n)?;
    let p = m.prime();
    let mut span: Vec<Vec<u64>> = d.transpose().to_rows();
    let mut rank = fp::rank_of_rows(&span, d.rows(), p);
    let mut out = Vec::new();
    for k in 0..d.rows() {
        let mut unit = vec![0u64; d.rows()];
        unit[k] = 1;
        span.push(unit.clone());
        let r = fp::rank_of_rows(&span, d.rows(), p);
        if r > rank {
            rank = r;
            out.push(unflatten_c1(m, n, &unit));
        } else {
            span.pop();
        }
    }
    Ok(out)
}

pub fn is_coboundary(m: &QuiverRep, n: &QuiverRep, c: &Cochain) -> Result<bool> {
    let d = differential(m, n)?;
    let p = m.prime();
    let v = flatten_c1(m, n, c)?;
    let mut cols = d.transpose().to_rows();
    let before = fp::rank_of_rows(&cols, d.rows(), p);
    cols.push(v);
    Ok(fp::rank_of_rows(&cols, d.rows(), p) == before)
}

/// The extension `0 → M → B → N → 0` of the class of `c ∈ C¹(N, M)`, with
/// `B_i = M_i ⊕ N_i` and arrow blocks `[[M_a, c_a], [0, N_a]]`.
pub fn build_extension(n: &QuiverRep, m: &QuiverRep, c: &Cochain) -> Result<QuiverRep> {
    m.same_context(n)?;
    flatten_c1(n, m, c)?;
    let dims = m.dims().iter().zip(n.dims()).map(|(a, b)| a + b).collect();
    let maps = m
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            Mat::block(m.map(a), &c[a], &Mat::zeros(n.dims()[t], m.dims()[s]), n.map(a))
        })
        .collect::<Result<Vec<_>>>()?;
    QuiverRep::new(m.prime(), dims, m.arrows().to_vec(), maps)
}

pub fn is_rigid(m: &QuiverRep) -> Result<bool> {
    Ok(ext_dim(m, m)? == 0)
}

/// Rigid with one-dimensional endomorphisms.
pub fn is_exceptional(m: &QuiverRep) -> Result<bool> {
    Ok(!m.is_zero() && hom_dim(m, m)? == 1 && is_rigid(m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mutation::QuiverSpec;

    fn kron(dims: Vec<usize>, alpha: Vec<Vec<i64>>, beta: Vec<Vec<i64>>) -> QuiverRep {
        let q = QuiverSpec::preset("kronecker").unwrap();
        QuiverRep::from_integers(101, dims, q.arrow_list(), &[alpha, beta]).unwrap()
    }

    fn u0() -> QuiverRep {
        kron(vec![0, 1], vec![], vec![])
    }

    fn u1() -> QuiverRep {
        kron(vec![1, 2], vec![vec![1], vec![0]], vec![vec![0], vec![1]])
    }

    fn w1() -> QuiverRep {
        kron(vec![1, 1], vec![vec![1]], vec![vec![0]])
    }

    fn s1() -> QuiverRep {
        QuiverRep::simple(&QuiverSpec::preset("kronecker").unwrap(), 0, 101).unwrap()
    }

    #[test]
    fn kronecker_hom_ext() {
        assert_eq!(hom_dim(&u0(), &u0()).unwrap(), 1);
        assert_eq!(hom_dim(&u0(), &u1()).unwrap(), 2);
        assert_eq!(ext_dim(&s1(), &u0()).unwrap(), 2);
        assert_eq!(ext_dim(&u0(), &s1()).unwrap(), 0);
        assert_eq!(ext_dim(&w1(), &w1()).unwrap(), 1);
        assert_eq!(ext_dim(&u1(), &w1()).unwrap(), 0);
        assert_eq!(ext_dim_cocycle(&s1(), &u0()).unwrap(), 2);
    }

    #[test]
    fn rigidity() {
        assert!(is_exceptional(&u0()).unwrap());
        assert!(is_exceptional(&u1()).unwrap());
        assert!(!is_rigid(&w1()).unwrap());
        assert!(!is_exceptional(&u1().direct_sum(&u1()).unwrap()).unwrap());
    }

    #[test]
    fn extension_of_w1_by_u0_is_u1() {
        let basis = ext_basis(&w1(), &u0()).unwrap();
        assert_eq!(basis.len(), 1);
        let b = build_extension(&w1(), &u0(), &basis[0]).unwrap();
        assert_eq!(b.dims(), &[1, 2]);
        assert!(is_exceptional(&b).unwrap());
        assert_eq!(hom_dim(&b, &u1()).unwrap(), 1);
        assert_eq!(hom_dim(&u1(), &b).unwrap(), 1);
    }

    #[test]
    fn split_extension_from_coboundary() {
        let zero: Cochain = vec![Mat::zeros(1, 1), Mat::zeros(1, 1)];
        assert!(is_coboundary(&w1(), &u0(), &zero).unwrap());
        let b = build_extension(&w1(), &u0(), &zero).unwrap();
        assert_eq!(b, u0().direct_sum(&w1()).unwrap());
        let basis = ext_basis(&w1(), &u0()).unwrap();
        assert!(!is_coboundary(&w1(), &u0(), &basis[0]).unwrap());
    }

    #[test]
    fn hom_basis_commutes() {
        let (m, n) = (u0(), u1());
        for f in hom_basis(&m, &n).unwrap() {
            for (a, &(s, t)) in m.arrows().iter().enumerate() {
                let lhs = n.map(a).mul(&f[s], 101);
                let rhs = f[t].mul(m.map(a), 101);
                assert_eq!(lhs, rhs);
            }
        }
    }
}
