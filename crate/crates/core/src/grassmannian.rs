//! Point counts of quiver Grassmannians over prime fields and their
//! interpolation to counting polynomials.
//!
//! Subrepresentations are enumerated vertex by vertex along a topological
//! order. At a vertex with outgoing arrows every subspace containing the
//! images from its predecessors is enumerated; at a sink only the rank of
//! those images matters, and the number of completions is a Gaussian binomial.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fp;
use crate::mutation::topological_order;
use crate::repcore::{QuiverRep, RepFamily};

/// Default cap on the number of subspace tuples enumerated per count.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Gaussian binomial `[m, k]_q`; zero when `k > m`.
pub fn gaussian_binomial(m: usize, k: usize, q: u64) -> BigUint {
    if k > m {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow((m - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

/// Iterator over the `e`-dimensional subspaces of `F_p^m`, each given once
/// by its reduced echelon row basis.
#[derive(Clone, Debug)]
pub struct Subspaces {
    p: u64,
    m: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    counter: Vec<u64>,
    done: bool,
}

pub fn enumerate_subspaces(p: u64, m: usize, e: usize) -> Subspaces {
    let mut it = Subspaces {
        p,
        m,
        pivots: (0..e).collect(),
        free: Vec::new(),
        counter: Vec::new(),
        done: e > m,
    };
    it.reset_free();
    it
}

impl Subspaces {
    fn reset_free(&mut self) {
        self.free.clear();
        for (r, &c) in self.pivots.iter().enumerate() {
            for j in c + 1..self.m {
                if !self.pivots.contains(&j) {
                    self.free.push((r, j));
                }
            }
        }
        self.counter = vec![0; self.free.len()];
    }

    fn next_pivots(&mut self) -> bool {
        let e = self.pivots.len();
        let mut i = e;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < self.m - e + i {
                self.pivots[i] += 1;
                for k in i + 1..e {
                    self.pivots[k] = self.pivots[k - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn current(&self) -> Vec<Vec<u64>> {
        let mut rows = vec![vec![0u64; self.m]; self.pivots.len()];
        for (r, &c) in self.pivots.iter().enumerate() {
            rows[r][c] = 1;
        }
        for (&(r, c), &v) in self.free.iter().zip(&self.counter) {
            rows[r][c] = v;
        }
        rows
    }
}

impl Iterator for Subspaces {
    type Item = Vec<Vec<u64>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let out = self.current();
        let mut k = 0;
        while k < self.counter.len() && self.counter[k] + 1 == self.p {
            self.counter[k] = 0;
            k += 1;
        }
        if k < self.counter.len() {
            self.counter[k] += 1;
        } else if self.next_pivots() {
            self.reset_free();
        } else {
            self.done = true;
        }
        Some(out)
    }
}

fn check_dims(m: &[usize], e: &[usize]) -> Result<()> {
    if m.len() != e.len() || e.iter().zip(m).any(|(a, b)| a > b) {
        return Err(Error::DimensionOverflow {
            sub: e.to_vec(),
            ambient: m.to_vec(),
        });
    }
    Ok(())
}

struct Plan<'a> {
    rep: &'a QuiverRep,
    e: Vec<usize>,
    /// Vertices with outgoing arrows, in topological order.
    inner: Vec<usize>,
    sinks: Vec<usize>,
    /// Arrow indices into each vertex.
    incoming: Vec<Vec<usize>>,
}

impl<'a> Plan<'a> {
    fn new(rep: &'a QuiverRep, e: &[usize]) -> Result<Self> {
        let n = rep.vertex_count();
        let order = topological_order(n, |i, j| rep.arrows().contains(&(i, j)))
            .ok_or_else(|| Error::InvalidQuiver("quiver has an oriented cycle".into()))?;
        let has_out = |v: usize| rep.arrows().iter().any(|&(s, _)| s == v);
        let inner = order.iter().copied().filter(|&v| has_out(v)).collect();
        let sinks = order.iter().copied().filter(|&v| !has_out(v)).collect();
        let mut incoming = vec![Vec::new(); n];
        for (a, &(_, t)) in rep.arrows().iter().enumerate() {
            incoming[t].push(a);
        }
        Ok(Plan {
            rep,
            e: e.to_vec(),
            inner,
            sinks,
            incoming,
        })
    }

    /// Upper bound on the tuples enumerated at inner vertices.
    fn estimate(&self) -> BigUint {
        let p = self.rep.prime();
        self.inner
            .iter()
            .map(|&v| gaussian_binomial(self.rep.dims()[v], self.e[v], p))
            .product()
    }

    fn count(&self) -> Result<BigUint> {
        let p = self.rep.prime();
        let mut walker = Walker::new(self)?;
        walker.walk(0);
        let tally = std::mem::take(&mut walker.tally);
        let mut total = BigUint::zero();
        for (code, k) in tally {
            let mut rest = code;
            let mut completions = BigUint::one();
            for (&t, &radix) in self.sinks.iter().zip(&walker.radices) {
                let r = (rest % radix) as usize;
                rest /= radix;
                completions *= gaussian_binomial(self.rep.dims()[t] - r, self.e[t] - r, p);
            }
            total += completions * k;
        }
        Ok(total)
    }
}

/// Depth-first enumeration with preallocated buffers. `chosen[v]` holds the
/// current subspace at `v` as `e_v` row-major rows.
struct Walker<'p, 'a> {
    plan: &'p Plan<'a>,
    p: u64,
    chosen: Vec<Vec<u64>>,
    scratch: Vec<u64>,
    pivots: Vec<usize>,
    radices: Vec<u64>,
    tally: HashMap<u64, u64>,
}

impl<'p, 'a> Walker<'p, 'a> {
    fn new(plan: &'p Plan<'a>) -> Result<Self> {
        let dims = plan.rep.dims();
        let radices: Vec<u64> = plan.sinks.iter().map(|&t| plan.e[t] as u64 + 1).collect();
        radices
            .iter()
            .try_fold(1u64, |acc, &r| acc.checked_mul(r))
            .ok_or_else(|| Error::InvalidSize("too many sinks to tally".into()))?;
        Ok(Walker {
            plan,
            p: plan.rep.prime(),
            chosen: (0..dims.len()).map(|v| vec![0; plan.e[v] * dims[v]]).collect(),
            scratch: Vec::new(),
            pivots: Vec::new(),
            radices,
            tally: HashMap::new(),
        })
    }

    /// Row-reduces the images of the chosen subspaces at the predecessors
    /// of `v` in `scratch`; returns the rank.
    fn images(&mut self, v: usize) -> usize {
        let rep = self.plan.rep;
        let p = self.p;
        let m = rep.dims()[v];
        self.scratch.clear();
        let mut rows = 0;
        for &a in &self.plan.incoming[v] {
            let s = rep.arrows()[a].0;
            let ms = rep.dims()[s];
            let map = rep.map(a);
            for w in self.chosen[s].chunks_exact(ms.max(1)).take(self.plan.e[s]) {
                for r in 0..m {
                    let mut acc = 0u64;
                    for (x, y) in map.row(r).iter().zip(w) {
                        acc = (acc + x * y) % p;
                    }
                    self.scratch.push(acc);
                }
                rows += 1;
            }
        }
        fp::rref_into(&mut self.scratch, rows, m, p, &mut self.pivots);
        self.pivots.len()
    }

    fn walk(&mut self, depth: usize) {
        let plan = self.plan;
        if depth == plan.inner.len() {
            let mut code = 0u64;
            let mut scale = 1u64;
            for (k, &t) in plan.sinks.iter().enumerate() {
                let r = self.images(t);
                if r > plan.e[t] {
                    return;
                }
                code += r as u64 * scale;
                scale *= self.radices[k];
            }
            *self.tally.entry(code).or_insert(0) += 1;
            return;
        }
        let v = plan.inner[depth];
        let (m, e) = (plan.rep.dims()[v], plan.e[v]);
        let r = self.images(v);
        if r > e {
            return;
        }
        // The first r rows of every chosen subspace are the images.
        let base: Vec<u64> = self.scratch[..r * m].to_vec();
        let free: Vec<usize> = (0..m).filter(|c| !self.pivots.contains(c)).collect();
        let (qm, qe) = (m - r, e - r);
        let mut qpiv: Vec<usize> = (0..qe).collect();
        loop {
            let slots: Vec<(usize, usize)> = qpiv
                .iter()
                .enumerate()
                .flat_map(|(row, &c)| (c + 1..qm).filter(|j| !qpiv.contains(j)).map(move |j| (row, j)))
                .collect();
            let mut counter = vec![0u64; slots.len()];
            loop {
                let buf = &mut self.chosen[v];
                buf[..r * m].copy_from_slice(&base);
                buf[r * m..].fill(0);
                for (row, &c) in qpiv.iter().enumerate() {
                    buf[(r + row) * m + free[c]] = 1;
                }
                for (&(row, j), &x) in slots.iter().zip(&counter) {
                    buf[(r + row) * m + free[j]] = x;
                }
                self.walk(depth + 1);
                let mut k = 0;
                while k < counter.len() && counter[k] + 1 == self.p {
                    counter[k] = 0;
                    k += 1;
                }
                if k == counter.len() {
                    break;
                }
                counter[k] += 1;
            }
            // Next pivot set in the quotient.
            let mut i = qe;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if qpiv[i] < qm - qe + i {
                    qpiv[i] += 1;
                    for k in i + 1..qe {
                        qpiv[k] = qpiv[k - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
}

/// Picks the cheaper of `rep` and its dual and checks the budget.
fn choose_plan<'a>(rep: &'a QuiverRep, dual: &'a QuiverRep, e: &[usize], budget: u64) -> Result<Plan<'a>> {
    check_dims(rep.dims(), e)?;
    let co_e: Vec<usize> = rep.dims().iter().zip(e).map(|(m, x)| m - x).collect();
    let direct = Plan::new(rep, e)?;
    let opposite = Plan::new(dual, &co_e)?;
    let (a, b) = (direct.estimate(), opposite.estimate());
    let (plan, estimate) = if b < a { (opposite, b) } else { (direct, a) };
    if estimate > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            estimate: estimate.to_string(),
            budget,
        });
    }
    Ok(plan)
}

/// Fails with `BudgetExceeded` when counting `Gr_e(rep)` would enumerate
/// more than `budget` subspace tuples.
pub fn check_budget(rep: &QuiverRep, e: &[usize], budget: u64) -> Result<()> {
    let dual = rep.dual();
    choose_plan(rep, &dual, e, budget).map(|_| ())
}

/// Number of subrepresentations of `rep` with dimension vector `e`,
/// refusing instances that would enumerate more than `budget` tuples.
pub fn count_subreps(rep: &QuiverRep, e: &[usize], budget: u64) -> Result<BigUint> {
    let dual = rep.dual();
    choose_plan(rep, &dual, e, budget)?.count()
}

/// Integer polynomial in `q`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountingPolynomial {
    coefficients: Vec<BigInt>,
}

impl CountingPolynomial {
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn at_one(&self) -> BigInt {
        self.coefficients.iter().sum()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|c| !c.is_zero())
    }

    /// Newton interpolation through `(x_k, y_k)`, required to have integer
    /// coefficients.
    pub fn interpolate(points: &[(u64, BigUint)]) -> Result<Self> {
        let xs: Vec<BigRational> = points
            .iter()
            .map(|(x, _)| BigRational::from_integer(BigInt::from(*x)))
            .collect();
        let mut dd: Vec<BigRational> = points
            .iter()
            .map(|(_, y)| BigRational::from_integer(BigInt::from(y.clone())))
            .collect();
        let k = points.len();
        for level in 1..k {
            for i in (level..k).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &xs[i] - &xs[i - level];
                dd[i] = num / den;
            }
        }
        // Horner on the Newton form, carrying monomial coefficients.
        let mut coeffs: Vec<BigRational> = Vec::new();
        for i in (0..k).rev() {
            let mut next = vec![BigRational::zero(); coeffs.len() + 1];
            for (j, c) in coeffs.iter().enumerate() {
                next[j + 1] += c;
                next[j] -= c * &xs[i];
            }
            next[0] += &dd[i];
            coeffs = next;
        }
        let integral = coeffs.iter().all(|c| c.is_integer());
        if !integral {
            return Err(Error::NonIntegralInterpolation {
                primes: points.iter().map(|p| p.0).collect(),
                counts: points.iter().map(|p| p.1.to_string()).collect(),
            });
        }
        let mut coefficients: Vec<BigInt> = coeffs.into_iter().map(|c| c.to_integer()).collect();
        while coefficients.len() > 1 && coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Ok(CountingPolynomial { coefficients })
    }
}

/// `Σ e_i (m_i − e_i)`, the dimension of the ambient product of Grassmannians.
pub fn required_degree_bound(m: &[usize], e: &[usize]) -> usize {
    m.iter().zip(e).map(|(m, e)| e * (m - e)).sum()
}

/// Counting polynomial from the given representations, one per prime, all
/// assumed isomorphic after extension of scalars.
pub fn counting_polynomial_from(reps: &[QuiverRep], e: &[usize], budget: u64) -> Result<CountingPolynomial> {
    let points = reps
        .iter()
        .map(|r| Ok((r.prime(), count_subreps(r, e, budget)?)))
        .collect::<Result<Vec<_>>>()?;
    CountingPolynomial::interpolate(&points)
}

/// Interpolates counts at the first `degree_bound + 1` primes of `primes`.
pub fn counting_polynomial(
    family: &dyn RepFamily,
    e: &[usize],
    degree_bound: usize,
    primes: &[u64],
    budget: u64,
) -> Result<CountingPolynomial> {
    check_dims(family.dims(), e)?;
    let required = required_degree_bound(family.dims(), e);
    if degree_bound < required {
        return Err(Error::DegreeBound {
            given: degree_bound,
            required,
        });
    }
    if primes.len() < degree_bound + 1 {
        return Err(Error::NotEnoughPrimes {
            needed: degree_bound + 1,
            given: primes.len(),
        });
    }
    let reps = primes[..=degree_bound]
        .iter()
        .map(|&p| family.at_prime(p))
        .collect::<Result<Vec<_>>>()?;
    counting_polynomial_from(&reps, e, budget)
}

/// `χ(Gr_e M)` as the value at `q = 1` of the counting polynomial, sampled
/// at the smallest primes.
pub fn euler_char(family: &dyn RepFamily, e: &[usize], degree_bound: usize, budget: u64) -> Result<BigInt> {
    let primes: Vec<u64> = fp::primes().take(degree_bound + 1).collect();
    Ok(counting_polynomial(family, e, degree_bound, &primes, budget)?.at_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mutation::QuiverSpec;
    use crate::repcore::{kronecker_module, IntegralRep, KroneckerKind, P1Point};

    fn kron(kind: KroneckerKind, n: usize) -> IntegralRep {
        kronecker_module(kind, n, P1Point::default()).unwrap()
    }

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian_binomial(2, 1, 2), BigUint::from(3u32));
        assert_eq!(gaussian_binomial(4, 2, 2), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(3, 0, 7), BigUint::one());
        assert_eq!(gaussian_binomial(3, 4, 7), BigUint::zero());
    }

    #[test]
    fn subspace_enumeration_matches_gaussian_binomial() {
        for p in [2u64, 3, 5] {
            for m in 0..5 {
                for e in 0..=m {
                    let subs: Vec<_> = enumerate_subspaces(p, m, e).collect();
                    assert_eq!(BigUint::from(subs.len()), gaussian_binomial(m, e, p));
                    let distinct: std::collections::HashSet<_> = subs.iter().collect();
                    assert_eq!(distinct.len(), subs.len());
                    for s in &subs {
                        assert_eq!(fp::rank_of_rows(s, m, p), e);
                    }
                }
            }
        }
        assert_eq!(enumerate_subspaces(2, 2, 3).count(), 0);
    }

    #[test]
    fn kronecker_counts() {
        for p in [2u64, 3, 7] {
            let u1 = kron(KroneckerKind::U, 1).at_prime(p).unwrap();
            assert_eq!(count_subreps(&u1, &[0, 1], DEFAULT_BUDGET).unwrap(), BigUint::from(p + 1));
            assert_eq!(count_subreps(&u1, &[0, 0], DEFAULT_BUDGET).unwrap(), BigUint::one());
            assert_eq!(count_subreps(&u1, &[1, 2], DEFAULT_BUDGET).unwrap(), BigUint::one());
            assert_eq!(count_subreps(&u1, &[1, 1], DEFAULT_BUDGET).unwrap(), BigUint::zero());
            let w1 = kron(KroneckerKind::W, 1).at_prime(p).unwrap();
            assert_eq!(count_subreps(&w1, &[1, 0], DEFAULT_BUDGET).unwrap(), BigUint::zero());
            assert_eq!(count_subreps(&w1, &[0, 1], DEFAULT_BUDGET).unwrap(), BigUint::one());
        }
        let u1 = kron(KroneckerKind::U, 1).at_prime(5).unwrap();
        assert!(count_subreps(&u1, &[2, 0], DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn counts_agree_with_brute_force() {
        // Every tuple of subspaces, checked for stability directly.
        let q = QuiverSpec::preset("a3").unwrap();
        let rep = QuiverRep::from_integers(
            3,
            vec![2, 2, 1],
            q.arrow_list(),
            &[vec![vec![1, 1], vec![0, 1]], vec![vec![1, 2]]],
        )
        .unwrap();
        for e0 in 0..=2 {
            for e1 in 0..=2 {
                for e2 in 0..=1 {
                    let mut brute = 0u64;
                    for a in enumerate_subspaces(3, 2, e0) {
                        for b in enumerate_subspaces(3, 2, e1) {
                            for c in enumerate_subspaces(3, 1, e2) {
                                if rep.is_subrep(&vec![a.clone(), b.clone(), c]) {
                                    brute += 1;
                                }
                            }
                        }
                    }
                    let fast = count_subreps(&rep, &[e0, e1, e2], DEFAULT_BUDGET).unwrap();
                    assert_eq!(fast, BigUint::from(brute), "e = {:?}", [e0, e1, e2]);
                }
            }
        }
    }

    #[test]
    fn budget_guard() {
        let u3 = kron(KroneckerKind::U, 3).at_prime(101).unwrap();
        assert!(matches!(
            count_subreps(&u3, &[1, 2], 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn interpolation() {
        let pts: Vec<(u64, BigUint)> = [2u64, 3, 5]
            .iter()
            .map(|&q| (q, BigUint::from(q * q + 1)))
            .collect();
        let poly = CountingPolynomial::interpolate(&pts).unwrap();
        assert_eq!(poly.coefficients(), &[BigInt::from(1), BigInt::zero(), BigInt::from(1)]);
        assert_eq!(poly.at_one(), BigInt::from(2));
        assert_eq!(poly.degree(), Some(2));
        let bad = vec![(2u64, BigUint::from(0u32)), (3, BigUint::from(1u32)), (5, BigUint::from(0u32))];
        assert!(matches!(
            CountingPolynomial::interpolate(&bad),
            Err(Error::NonIntegralInterpolation { .. })
        ));
    }

    #[test]
    fn euler_characteristics() {
        let u1 = kron(KroneckerKind::U, 1);
        assert_eq!(euler_char(&u1, &[0, 1], 1, DEFAULT_BUDGET).unwrap(), BigInt::from(2));
        assert_eq!(euler_char(&u1, &[0, 0], 0, DEFAULT_BUDGET).unwrap(), BigInt::one());
        let w1 = kron(KroneckerKind::W, 1);
        assert_eq!(euler_char(&w1, &[1, 1], 0, DEFAULT_BUDGET).unwrap(), BigInt::one());
        assert!(matches!(
            euler_char(&u1, &[0, 1], 0, DEFAULT_BUDGET),
            Err(Error::DegreeBound { .. })
        ));
        assert!(matches!(
            counting_polynomial(&u1, &[0, 1], 1, &[2], DEFAULT_BUDGET),
            Err(Error::NotEnoughPrimes { .. })
        ));
    }

    #[test]
    fn disjoint_prime_sets_agree() {
        let u2 = kron(KroneckerKind::U, 2);
        let e = [1, 2];
        let bound = required_degree_bound(u2.dims(), &e);
        let first: Vec<u64> = fp::primes().take(bound + 1).collect();
        let second: Vec<u64> = fp::primes().skip(bound + 1).take(bound + 1).collect();
        let a = counting_polynomial(&u2, &e, bound, &first, DEFAULT_BUDGET).unwrap();
        let b = counting_polynomial(&u2, &e, bound, &second, DEFAULT_BUDGET).unwrap();
        assert_eq!(a, b);
    }
}
