//! Exact multivariate Laurent polynomials over the integers.
//!
//! A [`LaurentPoly`] lives in `Z[x_1^{±1}, …, x_n^{±1}]` for a fixed variable
//! count `n`. Terms are kept in a `BTreeMap` keyed by exponent vector, so the
//! stored order is the lexicographic monomial order and two polynomials are
//! equal exactly when their normalized term lists agree.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponent vector of a Laurent monomial; entries may be negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<i64>);

impl Monomial {
    pub fn new(exponents: Vec<i64>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn add(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn sub(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

/// Laurent polynomial with arbitrary-precision integer coefficients.
///
/// Invariant: no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

/// Unique factorization `L = P / x^d` with `P` a polynomial not divisible by
/// any `x_i`. Entries of `d` may be negative (`x_1` has `d = (-1, 0, …)`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FractionForm {
    pub numerator: LaurentPoly,
    pub denominator: Vec<i64>,
}

impl FractionForm {
    /// Rebuilds `numerator · x^{-d}`.
    pub fn reconstruct(&self) -> LaurentPoly {
        let shift = Monomial(self.denominator.iter().map(|d| -d).collect());
        self.numerator.mul_monomial(&shift)
    }
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        LaurentPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, 1)
    }

    pub fn constant(n: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(n, Monomial::one(n), c)
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(n: usize, i: usize) -> Self {
        Self::monomial(n, Monomial::var(n, i), 1)
    }

    pub fn monomial(n: usize, m: Monomial, c: impl Into<BigInt>) -> Self {
        assert_eq!(m.len(), n, "monomial length must equal the variable count");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { n, terms }
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, BigInt)>,
    {
        let mut out = LaurentPoly::zero(n);
        for (exps, c) in terms {
            if exps.len() != n {
                return Err(Error::Length {
                    left: exps.len(),
                    right: n,
                });
            }
            out.add_term(Monomial(exps), c);
        }
        Ok(out)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing lexicographic monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::VariableCount {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = LaurentPoly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.add(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero(self.n);
        }
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(k, c)| (k.add(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = LaurentPoly::one(self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Per-variable minimum exponent, or `None` for the zero polynomial.
    pub fn min_exponents(&self) -> Option<Vec<i64>> {
        self.fold_exponents(i64::min)
    }

    pub fn max_exponents(&self) -> Option<Vec<i64>> {
        self.fold_exponents(i64::max)
    }

    fn fold_exponents(&self, f: fn(i64, i64) -> i64) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let first = it.next()?.0.clone();
        Some(it.fold(first, |acc, m| {
            acc.iter().zip(&m.0).map(|(&a, &b)| f(a, b)).collect()
        }))
    }

    /// Exact quotient `a / b` in the Laurent ring.
    ///
    /// Long division on lex-leading terms. The quotient's exponents are
    /// confined to the box `[min(a) - min(b), max(a) - max(b)]`, which makes
    /// the descent finite; leaving the box or an inexact coefficient division
    /// means `b` does not divide `a`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.check_n(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.n));
        }
        let not_divisible = || Error::NotDivisible {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        let (a_min, a_max) = (self.min_exponents().unwrap(), self.max_exponents().unwrap());
        let (b_min, b_max) = (
            divisor.min_exponents().unwrap(),
            divisor.max_exponents().unwrap(),
        );
        let lo: Vec<i64> = a_min.iter().zip(&b_min).map(|(a, b)| a - b).collect();
        let hi: Vec<i64> = a_max.iter().zip(&b_max).map(|(a, b)| a - b).collect();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(not_divisible());
        }

        let (lead_m, lead_c) = divisor.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero(self.n);
        while let Some((rm, rc)) = rem.terms.iter().next_back() {
            let qm = rm.sub(lead_m);
            let in_box = qm
                .0
                .iter()
                .zip(lo.iter().zip(&hi))
                .all(|(e, (l, h))| l <= e && e <= h);
            if !in_box {
                return Err(not_divisible());
            }
            let (qc, r) = rc.div_rem(lead_c);
            if !r.is_zero() {
                return Err(not_divisible());
            }
            for (m, c) in &divisor.terms {
                rem.add_term(m.add(&qm), -(c * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Factors `self = P / x^d` with `d_i = -min_i` over all terms.
    pub fn to_fraction(&self) -> Result<FractionForm> {
        let mins = self.min_exponents().ok_or(Error::ZeroPolynomial)?;
        let denominator: Vec<i64> = mins.iter().map(|m| -m).collect();
        let numerator = self.mul_monomial(&Monomial(denominator.clone()));
        Ok(FractionForm {
            numerator,
            denominator,
        })
    }

    /// Denominator vector `d` of `self = P / x^d`.
    pub fn denominator_vector(&self) -> Result<Vec<i64>> {
        Ok(self.to_fraction()?.denominator)
    }

    /// Sufficient test for weak positivity of the fraction-form numerator.
    /// `false` is inconclusive.
    pub fn is_weakly_positive_sufficient(&self) -> bool {
        match self.to_fraction() {
            Ok(frac) => frac.numerator.satisfies_positivity_condition(),
            Err(_) => false,
        }
    }

    /// The syntactic condition applied to `self` read as a numerator `P`:
    /// nonzero, no negative coefficient, and for each variable some positive
    /// term free of it.
    pub fn satisfies_positivity_condition(&self) -> bool {
        if self.is_zero() || self.terms.values().any(|c| c.is_negative()) {
            return false;
        }
        (0..self.n).all(|i| {
            self.terms
                .iter()
                .any(|(m, c)| m.0[i] == 0 && c.is_positive())
        })
    }

    /// Renames variables: `x_i` becomes `x_{perm[i]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut out = LaurentPoly::zero(self.n);
        for (m, c) in &self.terms {
            let mut e = vec![0; self.n];
            for (i, &x) in m.0.iter().enumerate() {
                e[perm[i]] = x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Human-readable fraction form, e.g. `(x1^2 + 1)/(x2)`.
    pub fn fraction_string(&self) -> String {
        let Ok(frac) = self.to_fraction() else {
            return "0".into();
        };
        let num = frac.numerator.to_string();
        let den: Vec<String> = frac
            .denominator
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, &d)| power_string(i, d))
            .collect();
        let neg: Vec<String> = frac
            .denominator
            .iter()
            .enumerate()
            .filter(|(_, &d)| d < 0)
            .map(|(i, &d)| power_string(i, -d))
            .collect();
        let mut s = if frac.numerator.num_terms() > 1 {
            format!("({num})")
        } else {
            num
        };
        if !neg.is_empty() {
            s = if frac.numerator.is_one() {
                neg.join("*")
            } else {
                format!("{s}*{}", neg.join("*"))
            };
        }
        if !den.is_empty() {
            s = format!("{s}/({})", den.join("*"));
        }
        s
    }
}

fn power_string(i: usize, e: i64) -> String {
    if e == 1 {
        format!("x{}", i + 1)
    } else {
        format!("x{}^{}", i + 1, e)
    }
}

/// Componentwise maximum of two integer vectors.
pub fn sup_vector(d: &[i64], e: &[i64]) -> Result<Vec<i64>> {
    if d.len() != e.len() {
        return Err(Error::Length {
            left: d.len(),
            right: e.len(),
        });
    }
    Ok(d.iter().zip(e).map(|(a, b)| *a.max(b)).collect())
}

/// Sum of a sequence of equally sized polynomials.
pub fn sum<'a, I: IntoIterator<Item = &'a LaurentPoly>>(n: usize, it: I) -> LaurentPoly {
    it.into_iter().fold(LaurentPoly::zero(n), |acc, p| &acc + p)
}

impl fmt::Display for LaurentPoly {
    /// Terms from the lex-largest down, e.g. `x1^2*x2^-1 + x2^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut coef = c.clone();
            if k > 0 {
                if c.is_negative() {
                    write!(f, " - ")?;
                    coef = -coef;
                } else {
                    write!(f, " + ")?;
                }
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| power_string(i, e))
                .collect();
            if vars.is_empty() {
                write!(f, "{coef}")?;
            } else if coef.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else if coef == -BigInt::one() {
                write!(f, "-{}", vars.join("*"))?;
            } else {
                write!(f, "{coef}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    /// Panics on variable-count mismatch; use [`LaurentPoly::checked_add`] otherwise.
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("variable count mismatch")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    n: usize,
    terms: Vec<(String, Vec<i64>)>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (c.to_string(), m.0.clone()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = Wire::deserialize(d)?;
        let mut terms = Vec::with_capacity(wire.terms.len());
        let mut prev: Option<&Vec<i64>> = None;
        for (c, e) in &wire.terms {
            if prev.is_some_and(|p| p.cmp(&e) != Ordering::Less) {
                return Err(D::Error::custom("terms must be strictly increasing"));
            }
            prev = Some(e);
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            if c.is_zero() {
                return Err(D::Error::custom("zero coefficient in normalized form"));
            }
            terms.push((e.clone(), c));
        }
        LaurentPoly::from_terms(wire.n, terms).map_err(D::Error::custom)
    }
}
