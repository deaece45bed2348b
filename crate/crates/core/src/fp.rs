//! Dense linear algebra over prime fields `F_p`.
//!
//! Elements are `u64` values reduced into `[0, p)`. Primes are kept below
//! `2^31` so products fit in a `u64` without widening.

use crate::error::{Error, Result};

pub const MAX_PRIME: u64 = 1 << 31;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// 2, 3, 5, 7, …
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&p| is_prime(p))
}

pub fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) || p >= MAX_PRIME {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

#[inline]
pub fn reduce(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow(a, p - 2, p)
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

/// Row-major dense matrix over `F_p`. The prime is supplied per operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    /// Builds from integer rows, reducing every entry mod `p`.
    pub fn from_int_rows(rows: &[Vec<i64>], cols: usize, p: u64) -> Result<Self> {
        let mut m = Mat::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, reduce(x, p));
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat, p: u64) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out.get(i, j) + a * other.get(k, j)) % p;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &[u64], p: u64) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (a, b)| (acc + a * b) % p)
            })
            .collect()
    }

    pub fn add(&self, other: &Mat, p: u64) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| (a + b) % p)
                .collect(),
        }
    }

    pub fn scale(&self, c: u64, p: u64) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c % p).collect(),
        }
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Mat, b: &Mat, c: &Mat, d: &Mat) -> Result<Mat> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::Shape("incompatible block shapes".into()));
        }
        let mut out = Mat::zeros(a.rows + c.rows, a.cols + b.cols);
        for (blk, r0, c0) in [(a, 0, 0), (b, 0, a.cols), (c, a.rows, 0), (d, a.rows, a.cols)] {
            for i in 0..blk.rows {
                for j in 0..blk.cols {
                    out.set(r0 + i, c0 + j, blk.get(i, j));
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, p: u64) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m.data, m.rows, m.cols, p);
        (m, pivots)
    }

    pub fn rank(&self, p: u64) -> usize {
        let mut buf = self.data.clone();
        rref_in_place(&mut buf, self.rows, self.cols, p).len()
    }

    /// Basis of `{v : self · v = 0}` as column vectors.
    pub fn nullspace(&self, p: u64) -> Vec<Vec<u64>> {
        let (r, pivots) = self.rref(p);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; self.cols];
                v[f] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - r.get(row, f)) % p;
                }
                v
            })
            .collect()
    }
}

/// In-place RREF on a row-major buffer; returns pivot columns.
pub fn rref_in_place(data: &mut [u64], rows: usize, cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    rref_into(data, rows, cols, p, &mut pivots);
    pivots
}

/// As [`rref_in_place`], writing the pivot columns into a reused buffer.
pub fn rref_into(data: &mut [u64], rows: usize, cols: usize, p: u64, pivots: &mut Vec<usize>) {
    pivots.clear();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                data.swap(piv * cols + j, r * cols + j);
            }
        }
        let iv = inv(data[r * cols + c], p);
        for j in c..cols {
            data[r * cols + j] = data[r * cols + j] * iv % p;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = data[i * cols + c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let sub = f * data[r * cols + j] % p;
                data[i * cols + j] = (data[i * cols + j] + p - sub) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
}

/// Rank of a list of row vectors of equal length `cols`.
pub fn rank_of_rows(rows: &[Vec<u64>], cols: usize, p: u64) -> usize {
    let mut buf: Vec<u64> = rows.iter().flatten().copied().collect();
    rref_in_place(&mut buf, rows.len(), cols, p).len()
}

/// Reduced echelon basis of the span of `vectors` (each of length `dim`).
pub fn span_basis(vectors: &[Vec<u64>], dim: usize, p: u64) -> Vec<Vec<u64>> {
    let mut buf: Vec<u64> = vectors.iter().flatten().copied().collect();
    let k = rref_in_place(&mut buf, vectors.len(), dim, p).len();
    (0..k).map(|i| buf[i * dim..(i + 1) * dim].to_vec()).collect()
}

/// Coordinates of `v` in the reduced echelon basis `basis` with pivot
/// columns `pivots`, or `None` when `v` is outside the span.
pub fn coordinates(basis: &[Vec<u64>], pivots: &[usize], v: &[u64], p: u64) -> Option<Vec<u64>> {
    let coords: Vec<u64> = pivots.iter().map(|&c| v[c]).collect();
    let mut rebuilt = vec![0u64; v.len()];
    for (b, &a) in basis.iter().zip(&coords) {
        for (r, x) in rebuilt.iter_mut().zip(b) {
            *r = (*r + a * x) % p;
        }
    }
    (rebuilt == v).then_some(coords)
}

/// Pivot columns of a reduced echelon basis.
pub fn pivots_of(basis: &[Vec<u64>]) -> Vec<usize> {
    basis
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).expect("zero row in echelon basis"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_inverses() {
        let first: Vec<u64> = primes().take(6).collect();
        assert_eq!(first, vec![2, 3, 5, 7, 11, 13]);
        for p in [2, 3, 101] {
            for a in 1..p {
                assert_eq!(a * inv(a, p) % p, 1);
            }
        }
        assert!(check_prime(9).is_err());
        assert!(check_prime(101).is_ok());
    }

    #[test]
    fn rank_and_nullspace() {
        let p = 7;
        let m = Mat::from_int_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]], 3, p).unwrap();
        assert_eq!(m.rank(p), 2);
        let ns = m.nullspace(p);
        assert_eq!(ns.len(), 1);
        assert!(m.apply(&ns[0], p).iter().all(|&x| x == 0));
    }

    #[test]
    fn echelon_coordinates() {
        let p = 5;
        let basis = span_basis(&[vec![1, 1, 0], vec![0, 2, 1]], 3, p);
        let piv = pivots_of(&basis);
        let v = vec![2, 4, 1];
        let c = coordinates(&basis, &piv, &v, p).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c, vec![2, 4]);
        assert!(coordinates(&basis, &piv, &[0, 0, 1], p).is_none());
    }

    #[test]
    fn block_and_product() {
        let p = 11;
        let a = Mat::identity(2);
        let z = Mat::zeros(2, 1);
        let b = Mat::block(&a, &z, &Mat::zeros(1, 2), &Mat::identity(1)).unwrap();
        assert_eq!(b, Mat::identity(3));
        assert_eq!(b.mul(&b, p), b);
        assert!(Mat::block(&a, &Mat::zeros(1, 1), &z, &z).is_err());
    }
}
