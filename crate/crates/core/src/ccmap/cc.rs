use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fp::{self, Mat};
use crate::grassmannian::{self, counting_polynomial_from, required_degree_bound, DEFAULT_BUDGET};
use crate::laurent::{FractionForm, LaurentPoly, Monomial};
use crate::repcore::{to_signed, DEFAULT_SEED, ClusterObject, QuiverAlgebraContext, QuiverRep, RepFamily};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CcOptions {
    pub budget: u64,
    pub parallel: bool,
    /// Interpolation primes; stratum `e` uses a prefix of this list. The
    /// smallest primes when `None`.
    pub primes: Option<Vec<u64>>,
    /// Seed for sampling generic representations.
    pub seed: u64,
}

impl Default for CcOptions {
    fn default() -> Self {
        CcOptions {
            budget: DEFAULT_BUDGET,
            parallel: false,
            primes: None,
            seed: DEFAULT_SEED,
        }
    }
}

/// One stratum of the Grassmannian sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiEntry {
    pub e: Vec<usize>,
    pub chi: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CcResult {
    pub object: String,
    pub polynomial: LaurentPoly,
    pub display: String,
    pub denominator: FractionForm,
    /// Strata of the module part.
    pub chi_table: Vec<ChiEntry>,
}

/// `x^v` with `i`-th exponent `<α_i, v>`.
pub fn x_power(ctx: &QuiverAlgebraContext, v: &[i64]) -> Result<Monomial> {
    if v.len() != ctx.rank() {
        return Err(Error::Length {
            left: v.len(),
            right: ctx.rank(),
        });
    }
    Ok(Monomial::new(ctx.euler_apply(v)))
}

/// All `e` with `0 ≤ e ≤ m`, lexicographic.
pub fn sub_dimension_vectors(m: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &mi in m {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=mi).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Exponent of stratum `e` in `X_M`: `x^{τ(e) − m + e}`.
fn stratum_exponent(ctx: &QuiverAlgebraContext, m: &[usize], e: &[usize]) -> Result<Monomial> {
    let es = to_signed(e);
    let tau = ctx.coxeter_tau(&es)?;
    let v: Vec<i64> = tau
        .iter()
        .zip(m)
        .zip(&es)
        .map(|((t, &mi), ei)| t - mi as i64 + ei)
        .collect();
    x_power(ctx, &v)
}

/// Polynomial from a χ table with the `x^{τ(e) − m + e}` exponents.
pub fn cc_from_table(ctx: &QuiverAlgebraContext, m: &[usize], table: &[ChiEntry]) -> Result<LaurentPoly> {
    let n = ctx.rank();
    let mut acc = LaurentPoly::zero(n);
    for entry in table {
        if entry.chi.is_zero() {
            continue;
        }
        let mono = stratum_exponent(ctx, m, &entry.e)?;
        acc = &acc + &LaurentPoly::monomial(n, mono, entry.chi.clone());
    }
    Ok(acc)
}

/// Polynomial from a χ table with the exponents
/// `−<e, α_i> − <α_i, m − e>` of the defining formula.
pub fn cc_by_definition(ctx: &QuiverAlgebraContext, m: &[usize], table: &[ChiEntry]) -> Result<LaurentPoly> {
    let n = ctx.rank();
    let mut acc = LaurentPoly::zero(n);
    for entry in table {
        if entry.chi.is_zero() {
            continue;
        }
        let e = to_signed(&entry.e);
        let rest: Vec<i64> = m.iter().zip(&e).map(|(&mi, ei)| mi as i64 - ei).collect();
        let left = ctx.euler_transpose_apply(&e);
        let right = ctx.euler_apply(&rest);
        let exps = left.iter().zip(&right).map(|(a, b)| -a - b).collect();
        acc = &acc + &LaurentPoly::monomial(n, Monomial::new(exps), entry.chi.clone());
    }
    Ok(acc)
}

fn check_family(ctx: &QuiverAlgebraContext, family: &dyn RepFamily) -> Result<()> {
    if family.dims().len() != ctx.rank() {
        return Err(Error::ContextMismatch);
    }
    Ok(())
}

struct Prepared {
    strata: Vec<Vec<usize>>,
    bounds: Vec<usize>,
    reps: Vec<QuiverRep>,
}

/// Builds the representations once per prime; stratum `e` uses the first
/// `Σ e_i (m_i − e_i) + 1` primes. Refuses before any counting if some
/// stratum is over budget.
fn prepare(ctx: &QuiverAlgebraContext, family: &dyn RepFamily, opts: &CcOptions) -> Result<Prepared> {
    check_family(ctx, family)?;
    let m = family.dims().to_vec();
    let strata = sub_dimension_vectors(&m);
    let bounds: Vec<usize> = strata.iter().map(|e| required_degree_bound(&m, e)).collect();
    let max_bound = bounds.iter().copied().max().unwrap_or(0);
    let primes: Vec<u64> = match &opts.primes {
        None => fp::primes().take(max_bound + 1).collect(),
        Some(list) if list.len() > max_bound => {
            list.iter().try_for_each(|&p| fp::check_prime(p))?;
            list[..=max_bound].to_vec()
        }
        Some(list) => {
            return Err(Error::NotEnoughPrimes {
                needed: max_bound + 1,
                given: list.len(),
            })
        }
    };
    // The estimate depends only on dimensions, so refuse before sampling.
    let arrows = ctx.quiver().arrow_list();
    for (e, &b) in strata.iter().zip(&bounds) {
        let maps = arrows.iter().map(|&(s, t)| Mat::zeros(m[t], m[s])).collect();
        let shape = QuiverRep::new(primes[b], m.clone(), arrows.clone(), maps)?;
        grassmannian::check_budget(&shape, e, opts.budget)?;
    }
    let reps = primes
        .iter()
        .map(|&p| {
            let r = family.at_prime(p)?;
            r.check_quiver(ctx.quiver())?;
            Ok(r)
        })
        .collect::<Result<Vec<QuiverRep>>>()?;
    Ok(Prepared { strata, bounds, reps })
}

/// `Err(BudgetExceeded)` if computing `X_M` would exceed the budget.
pub fn check_module_budget(ctx: &QuiverAlgebraContext, family: &dyn RepFamily, opts: &CcOptions) -> Result<()> {
    prepare(ctx, family, opts).map(|_| ())
}

/// χ of every stratum of a module family.
pub fn chi_table(ctx: &QuiverAlgebraContext, family: &dyn RepFamily, opts: &CcOptions) -> Result<Vec<ChiEntry>> {
    let Prepared { strata, bounds, reps } = prepare(ctx, family, opts)?;
    let one = |(e, &b): (&Vec<usize>, &usize)| -> Result<ChiEntry> {
        let poly = counting_polynomial_from(&reps[..=b], e, opts.budget)?;
        Ok(ChiEntry {
            e: e.clone(),
            chi: poly.at_one(),
        })
    };
    if opts.parallel {
        strata.par_iter().zip(bounds.par_iter()).map(one).collect()
    } else {
        strata.iter().zip(bounds.iter()).map(one).collect()
    }
}

fn result(object: String, polynomial: LaurentPoly, chi_table: Vec<ChiEntry>) -> Result<CcResult> {
    let denominator = polynomial.to_fraction()?;
    Ok(CcResult {
        object,
        display: polynomial.fraction_string(),
        polynomial,
        denominator,
        chi_table,
    })
}

pub fn cc_of_module(ctx: &QuiverAlgebraContext, family: &dyn RepFamily, opts: &CcOptions) -> Result<CcResult> {
    let table = chi_table(ctx, family, opts)?;
    let poly = cc_from_table(ctx, family.dims(), &table)?;
    result(family.label(), poly, table)
}

/// `X_{M₀} · Π x_i^{c_i}` for `M₀ ⊕ ⊕ SP_i^{c_i}`.
pub fn cc_of_object(ctx: &QuiverAlgebraContext, object: &ClusterObject, opts: &CcOptions) -> Result<CcResult> {
    if object.rank() != ctx.rank() {
        return Err(Error::ContextMismatch);
    }
    let n = ctx.rank();
    let (module_poly, table) = match object.module_part() {
        Some(fam) => {
            let t = chi_table(ctx, fam.as_ref(), opts)?;
            (cc_from_table(ctx, fam.dims(), &t)?, t)
        }
        None => (LaurentPoly::one(n), vec![ChiEntry {
            e: vec![0; n],
            chi: BigInt::from(1),
        }]),
    };
    let shift = Monomial::new(object.shifted_multiplicities());
    result(object.describe(), module_poly.mul_monomial(&shift), table)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::repcore::{kronecker_module, Family, KroneckerKind, P1Point};

    fn kron() -> QuiverAlgebraContext {
        QuiverAlgebraContext::preset("kronecker").unwrap()
    }

    fn k(kind: KroneckerKind, n: usize) -> Family {
        Arc::new(kronecker_module(kind, n, P1Point::default()).unwrap())
    }

    fn poly(terms: &[(i64, [i64; 2])]) -> LaurentPoly {
        LaurentPoly::from_terms(2, terms.iter().map(|(c, e)| (e.to_vec(), BigInt::from(*c)))).unwrap()
    }

    #[test]
    fn x_power_examples() {
        let c = kron();
        assert_eq!(x_power(&c, &[1, 0]).unwrap(), Monomial::new(vec![1, 0]));
        assert_eq!(x_power(&c, &[0, 0]).unwrap(), Monomial::new(vec![0, 0]));
        for name in ["a3", "d4", "kronecker"] {
            let ctx = QuiverAlgebraContext::preset(name).unwrap();
            for i in 0..ctx.rank() {
                let m = x_power(&ctx, ctx.injective_dims(i)).unwrap();
                assert_eq!(m, Monomial::var(ctx.rank(), i));
            }
        }
    }

    #[test]
    fn kronecker_small_modules() {
        let c = kron();
        let opts = &CcOptions::default();
        let u0 = cc_of_module(&c, k(KroneckerKind::U, 0).as_ref(), opts).unwrap();
        assert_eq!(u0.polynomial, poly(&[(1, [2, -1]), (1, [0, -1])]));
        assert_eq!(u0.display, "(x1^2 + 1)/(x2)");
        let w1 = cc_of_module(&c, k(KroneckerKind::W, 1).as_ref(), opts).unwrap();
        assert_eq!(
            w1.polynomial,
            poly(&[(1, [-1, -1]), (1, [1, -1]), (1, [-1, 1])])
        );
        let v0 = cc_of_module(&c, k(KroneckerKind::V, 0).as_ref(), opts).unwrap();
        assert_eq!(v0.polynomial, poly(&[(1, [-1, 0]), (1, [-1, 2])]));
    }

    #[test]
    fn objects() {
        let c = kron();
        let opts = &CcOptions::default();
        let sp = ClusterObject::shifted_projective(2, 0)
            .unwrap()
            .direct_sum(&ClusterObject::shifted_projective(2, 1).unwrap())
            .unwrap();
        assert_eq!(cc_of_object(&c, &sp, opts).unwrap().polynomial, poly(&[(1, [1, 1])]));
        let x = ClusterObject::module(k(KroneckerKind::U, 0))
            .direct_sum(&ClusterObject::shifted_projective(2, 0).unwrap())
            .unwrap();
        assert_eq!(
            cc_of_object(&c, &x, opts).unwrap().polynomial,
            poly(&[(1, [3, -1]), (1, [1, -1])])
        );
        let zero = ClusterObject::zero(2);
        assert!(cc_of_object(&c, &zero, opts).unwrap().polynomial.is_one());
    }

    #[test]
    fn definition_matches_formula() {
        let c = kron();
        for (kind, n) in [(KroneckerKind::U, 2), (KroneckerKind::V, 1), (KroneckerKind::W, 2)] {
            let fam = k(kind, n);
            let r = cc_of_module(&c, fam.as_ref(), &CcOptions::default()).unwrap();
            let def = cc_by_definition(&c, fam.dims(), &r.chi_table).unwrap();
            assert_eq!(def, r.polynomial);
        }
    }

    #[test]
    fn parallel_is_identical() {
        let c = kron();
        let fam = k(KroneckerKind::U, 2);
        let a = cc_of_module(&c, fam.as_ref(), &CcOptions::default()).unwrap();
        let b = cc_of_module(&c, fam.as_ref(), &CcOptions { parallel: true, ..Default::default() }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn explicit_primes() {
        let c = kron();
        let fam = k(KroneckerKind::U, 1);
        let late = CcOptions { primes: Some(vec![11, 13, 17, 19, 23]), ..Default::default() };
        let a = cc_of_module(&c, fam.as_ref(), &CcOptions::default()).unwrap();
        let b = cc_of_module(&c, fam.as_ref(), &late).unwrap();
        assert_eq!(a.polynomial, b.polynomial);
        let short = CcOptions { primes: Some(vec![2]), ..Default::default() };
        assert!(matches!(
            cc_of_module(&c, fam.as_ref(), &short),
            Err(Error::NotEnoughPrimes { .. })
        ));
        let bad = CcOptions { primes: Some(vec![4, 5, 7, 11, 13]), ..Default::default() };
        assert_eq!(cc_of_module(&c, fam.as_ref(), &bad).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn strata_enumeration() {
        assert_eq!(sub_dimension_vectors(&[1, 2]).len(), 6);
        assert_eq!(sub_dimension_vectors(&[]), vec![Vec::<usize>::new()]);
    }
}
