//! The indecomposable representations `U^n`, `V^n`, `W^n(λ)` of the
//! Kronecker quiver `1 ⇉ 2` with arrows `α`, `β`.

use std::fmt;
use std::str::FromStr;

use super::family::IntegralRep;
use crate::error::{Error, Result};
use crate::mutation::QuiverSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KroneckerKind {
    /// Postprojective, `k^n → k^{n+1}`.
    U,
    /// Preinjective, `k^{n+1} → k^n`.
    V,
    /// Regular, `k^n → k^n`.
    W,
}

/// A point of the projective line: `(1 : λ)` or `(0 : 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum P1Point {
    Finite(i64),
    Infinity,
}

impl Default for P1Point {
    /// `(1 : 0)`.
    fn default() -> Self {
        P1Point::Finite(0)
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Point::Finite(l) => write!(f, "{l}"),
            P1Point::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for P1Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" => Ok(P1Point::Infinity),
            _ => s
                .parse()
                .map(P1Point::Finite)
                .map_err(|_| Error::Parse(format!("bad point of P^1: {s:?}"))),
        }
    }
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// `λ` on the diagonal, 1 on the superdiagonal.
fn jordan(n: usize, lambda: i64) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        lambda
                    } else {
                        i64::from(j == i + 1)
                    }
                })
                .collect()
        })
        .collect()
}

/// `[I_n ; 0]` (shift = 0) or `[0 ; I_n]` (shift = 1) as an `(n+1) × n` matrix.
fn tall(n: usize, shift: usize) -> Vec<Vec<i64>> {
    (0..=n)
        .map(|i| (0..n).map(|j| i64::from(i == j + shift)).collect())
        .collect()
}

fn transpose(m: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn kronecker_module(kind: KroneckerKind, n: usize, lambda: P1Point) -> Result<IntegralRep> {
    let arrows = QuiverSpec::preset("kronecker")?.arrow_list();
    let (dims, alpha, beta, label) = match kind {
        KroneckerKind::U => (vec![n, n + 1], tall(n, 0), tall(n, 1), format!("kronecker:U:{n}")),
        KroneckerKind::V => (
            vec![n + 1, n],
            transpose(&tall(n, 0), n),
            transpose(&tall(n, 1), n),
            format!("kronecker:V:{n}"),
        ),
        KroneckerKind::W => {
            if n == 0 {
                return Err(Error::InvalidSize("W^n needs n >= 1".into()));
            }
            let (a, b) = match lambda {
                P1Point::Finite(l) => (identity(n), jordan(n, l)),
                P1Point::Infinity => (jordan(n, 0), identity(n)),
            };
            let label = if lambda == P1Point::default() {
                format!("kronecker:W:{n}")
            } else {
                format!("kronecker:W:{n}:{lambda}")
            };
            (vec![n, n], a, b, label)
        }
    };
    IntegralRep::new(label, dims, arrows, vec![alpha, beta])
}

/// Parses `kronecker:U:n`, `kronecker:V:n`, `kronecker:W:n` or
/// `kronecker:W:n:λ` (`λ` an integer or `inf`).
pub fn parse_fixture(spec: &str) -> Result<IntegralRep> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::Parse(format!("unknown Kronecker fixture {spec:?}"));
    if parts.len() < 3 || parts.len() > 4 || !parts[0].eq_ignore_ascii_case("kronecker") {
        return Err(bad());
    }
    let kind = match parts[1] {
        "U" | "u" => KroneckerKind::U,
        "V" | "v" => KroneckerKind::V,
        "W" | "w" => KroneckerKind::W,
        _ => return Err(bad()),
    };
    let n: usize = parts[2].parse().map_err(|_| bad())?;
    let lambda = match parts.get(3) {
        Some(s) if kind == KroneckerKind::W => s.parse()?,
        Some(_) => return Err(bad()),
        None => P1Point::default(),
    };
    kronecker_module(kind, n, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcore::family::RepFamily;
    use crate::repcore::homext::{ext_dim, hom_dim, is_exceptional};

    #[test]
    fn dims_and_matrices() {
        let u0 = kronecker_module(KroneckerKind::U, 0, P1Point::default()).unwrap();
        assert_eq!(u0.dims(), &[0, 1]);
        let v0 = kronecker_module(KroneckerKind::V, 0, P1Point::default()).unwrap();
        assert_eq!(v0.dims(), &[1, 0]);
        let w1 = kronecker_module(KroneckerKind::W, 1, P1Point::Finite(0)).unwrap();
        let r = w1.at_prime(5).unwrap();
        assert_eq!(r.map(0).to_rows(), vec![vec![1]]);
        assert_eq!(r.map(1).to_rows(), vec![vec![0]]);
        let u2 = kronecker_module(KroneckerKind::U, 2, P1Point::default()).unwrap();
        assert_eq!(u2.integer_maps()[0], vec![vec![1, 0], vec![0, 1], vec![0, 0]]);
        assert_eq!(u2.integer_maps()[1], vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        let w2 = kronecker_module(KroneckerKind::W, 2, P1Point::Infinity).unwrap();
        assert_eq!(w2.integer_maps()[0], vec![vec![0, 1], vec![0, 0]]);
        assert!(kronecker_module(KroneckerKind::W, 0, P1Point::default()).is_err());
    }

    #[test]
    fn exceptional_families() {
        for n in 0..5 {
            for kind in [KroneckerKind::U, KroneckerKind::V] {
                let m = kronecker_module(kind, n, P1Point::default()).unwrap();
                assert!(is_exceptional(&m.at_prime(101).unwrap()).unwrap());
            }
        }
        for lambda in [P1Point::Finite(0), P1Point::Finite(3), P1Point::Infinity] {
            let w = kronecker_module(KroneckerKind::W, 2, lambda).unwrap().at_prime(7).unwrap();
            assert_eq!(hom_dim(&w, &w).unwrap(), 2);
            assert_eq!(ext_dim(&w, &w).unwrap(), 2);
        }
    }

    #[test]
    fn fixtures() {
        assert_eq!(parse_fixture("kronecker:U:3").unwrap().dims(), &[3, 4]);
        assert_eq!(parse_fixture("kronecker:W:2:inf").unwrap().label(), "kronecker:W:2:inf");
        assert_eq!(parse_fixture("kronecker:W:1").unwrap().label(), "kronecker:W:1");
        assert!(parse_fixture("kronecker:U:1:2").is_err());
        assert!(parse_fixture("kronecker:X:1").is_err());
        assert!(parse_fixture("a2:U:1").is_err());
    }
}
