//! Exchange pairs with the middle terms of both non-split triangles.

use std::sync::Arc;

use super::cc::CcOptions;
use super::verify::{verify_exchange, Report};
use crate::error::{Error, Result};
use crate::repcore::{
    build_extension, ext_basis, ext_dim, ext_dim_cluster, hom_basis, hom_dim, kronecker_module, to_dims,
    to_signed, ClusterObject, Family, FnFamily, GenericFamily, KroneckerKind, P1Point, QuiverAlgebraContext,
    QuiverRep, STRUCTURAL_PRIME,
};

/// `X_M X_N = X_B + X_{B'}` instance data.
#[derive(Clone, Debug)]
pub struct ExchangeFixture {
    pub m: ClusterObject,
    pub n: ClusterObject,
    pub b: ClusterObject,
    pub b_prime: ClusterObject,
}

impl ExchangeFixture {
    pub fn label(&self) -> String {
        format!("{} * {}", self.m.describe(), self.n.describe())
    }

    pub fn verify(&self, ctx: &QuiverAlgebraContext, opts: &CcOptions) -> Result<Report> {
        verify_exchange(ctx, &self.m, &self.n, &self.b, &self.b_prime, opts)
    }
}

fn derived(label: String, dims: Vec<usize>, build: impl Fn(u64) -> Result<QuiverRep> + Send + Sync + 'static) -> Family {
    Arc::new(FnFamily::new(label, dims, build))
}

fn object_of(family: Family, shifted: &[i64]) -> Result<ClusterObject> {
    ClusterObject::module(family).with_shifted(shifted)
}

/// `N = SP_i` against a module `M` with `(dim M)_i = 1`. Then
/// `B = ker ζ ⊕ SP` of the injective `coker ζ`, for `ζ : M → I_i`, and
/// `B' = coker ζ' ⊕ SP` of the projective `ker ζ'`, for `ζ' : P_i → M`.
pub fn shifted_fixture(ctx: &Arc<QuiverAlgebraContext>, m: Family, i: usize) -> Result<ExchangeFixture> {
    let n = ctx.rank();
    let dm = to_signed(m.dims());
    if dm.get(i) != Some(&1) {
        return Err(Error::Precondition(format!("{} has dimension {dm:?}, need 1 at vertex {}", m.label(), i + 1)));
    }
    let rep = m.at_prime(STRUCTURAL_PRIME)?;
    let quiver = ctx.quiver().clone();

    let ker = rep.largest_subrep_avoiding(i, &quiver)?;
    let ker_dims: Vec<usize> = ker.iter().map(Vec::len).collect();
    let coker: Vec<i64> = ctx
        .injective_dims(i)
        .iter()
        .zip(&dm)
        .zip(&ker_dims)
        .map(|((&inj, &d), &k)| inj - (d - k as i64))
        .collect();
    let (mm, q) = (m.clone(), quiver.clone());
    let ker_family = derived(format!("ker({} -> I:{})", m.label(), i + 1), ker_dims, move |p| {
        let r = mm.at_prime(p)?;
        r.subrep(&r.largest_subrep_avoiding(i, &q)?)
    });
    let b = object_of(ker_family, &ctx.injective_multiplicities(&coker))?;

    let gen = rep.subrep_generated_at(i, &quiver)?;
    let quot_dims: Vec<usize> = m.dims().iter().zip(&gen).map(|(&d, g)| d - g.len()).collect();
    let kernel: Vec<i64> = ctx
        .projective_dims(i)
        .iter()
        .zip(&gen)
        .map(|(&pd, g)| pd - g.len() as i64)
        .collect();
    let (mm, q) = (m.clone(), quiver);
    let quot_family = derived(format!("coker(P:{} -> {})", i + 1, m.label()), quot_dims, move |p| {
        let r = mm.at_prime(p)?;
        r.quotient(&r.subrep_generated_at(i, &q)?)
    });
    let b_prime = object_of(quot_family, &ctx.projective_multiplicities(&kernel))?;

    Ok(ExchangeFixture {
        m: ClusterObject::module(m),
        n: ClusterObject::shifted_projective(n, i)?,
        b,
        b_prime,
    })
}

/// `τ⁻¹ C` for an exceptional module `C`: `SP_j` when `C ≅ I_j`, otherwise
/// the exceptional module of dimension `Φ⁻¹ dim C`.
fn tau_inverse(ctx: &Arc<QuiverAlgebraContext>, c: &QuiverRep, seed: u64) -> Result<ClusterObject> {
    let n = ctx.rank();
    if c.is_zero() {
        return Ok(ClusterObject::zero(n));
    }
    if hom_dim(c, c)? != 1 || ext_dim(c, c)? != 0 {
        return Err(Error::Precondition("cokernel is not exceptional".into()));
    }
    let d = to_signed(c.dims());
    if let Some(j) = (0..n).find(|&j| ctx.injective_dims(j) == d.as_slice()) {
        return ClusterObject::shifted_projective(n, j);
    }
    let dims = to_dims(&ctx.coxeter_tau_inverse(&d)?)
        .ok_or_else(|| Error::Inconsistent(format!("τ⁻¹ of {d:?} is not a dimension vector")))?;
    Ok(ClusterObject::module(Arc::new(GenericFamily::new(ctx.clone(), dims, seed)?)))
}

/// Two exceptional modules with `Ext¹_C(M, N)` one-dimensional. After
/// ordering so that `Ext¹_H(N, M) = k`: `B = B₊` is the middle term of the
/// non-split extension `0 → M → B₊ → N → 0`, and `B' = ker f ⊕ τ⁻¹ coker f`
/// for nonzero `f : M → τN`.
pub fn module_fixture(ctx: &Arc<QuiverAlgebraContext>, m: Family, n: Family, seed: u64) -> Result<ExchangeFixture> {
    let (om, on) = (ClusterObject::module(m.clone()), ClusterObject::module(n.clone()));
    if ext_dim_cluster(&om, &on)? != 1 {
        return Err(Error::Precondition(format!("Ext^1({}, {}) is not 1-dimensional", m.label(), n.label())));
    }
    let (sub, top) = {
        let (rm, rn) = (m.at_prime(STRUCTURAL_PRIME)?, n.at_prime(STRUCTURAL_PRIME)?);
        if ext_dim(&rn, &rm)? == 1 {
            (m, n)
        } else {
            (n, m)
        }
    };

    let dims: Vec<usize> = sub.dims().iter().zip(top.dims()).map(|(a, b)| a + b).collect();
    let (s, t) = (sub.clone(), top.clone());
    let plus = derived(format!("ext({}, {})", top.label(), sub.label()), dims, move |p| {
        let (rs, rt) = (s.at_prime(p)?, t.at_prime(p)?);
        let class = ext_basis(&rt, &rs)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Inconsistent(format!("Ext^1 vanishes over F_{p}")))?;
        build_extension(&rt, &rs, &class)
    });

    let tau_dims = to_dims(&ctx.coxeter_tau(&to_signed(top.dims()))?)
        .ok_or_else(|| Error::Precondition(format!("{} is projective", top.label())))?;
    let tau_top: Family = Arc::new(GenericFamily::new(ctx.clone(), tau_dims, seed)?);
    // f spans Hom(M, τN) ≅ D Ext¹(N, M); its kernel and cokernel are
    // determined up to isomorphism.
    let morphism = |s: &QuiverRep, t: &QuiverRep| -> Result<_> {
        hom_basis(s, t)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Inconsistent("Hom(M, τN) vanishes".into()))
    };
    let (rs, rt) = (sub.at_prime(STRUCTURAL_PRIME)?, tau_top.at_prime(STRUCTURAL_PRIME)?);
    let f = morphism(&rs, &rt)?;
    let ker = rs.kernel_subspaces(&f);
    let coker = rt.quotient(&rs.image_subspaces(&f))?;
    let ker_dims: Vec<usize> = ker.iter().map(Vec::len).collect();
    let (s, tt) = (sub.clone(), tau_top.clone());
    let ker_family = derived(format!("ker({} -> tau {})", sub.label(), top.label()), ker_dims, move |p| {
        let (rs, rt) = (s.at_prime(p)?, tt.at_prime(p)?);
        let f = morphism(&rs, &rt)?;
        rs.subrep(&rs.kernel_subspaces(&f))
    });
    let minus = ClusterObject::module(ker_family).direct_sum(&tau_inverse(ctx, &coker, seed)?)?;

    Ok(ExchangeFixture {
        m: ClusterObject::module(sub),
        n: ClusterObject::module(top),
        b: ClusterObject::module(plus),
        b_prime: minus,
    })
}

/// `W¹ · U^n = U^{n+1} + U^{n−1}` on the Kronecker quiver, with
/// `U^{−1} = SP_1`.
pub fn kronecker_fixture(n: usize) -> Result<ExchangeFixture> {
    let module = |kind, k| -> Result<ClusterObject> {
        Ok(ClusterObject::module(Arc::new(kronecker_module(kind, k, P1Point::default())?)))
    };
    let b_prime = match n {
        0 => ClusterObject::shifted_projective(2, 0)?,
        _ => module(KroneckerKind::U, n - 1)?,
    };
    Ok(ExchangeFixture {
        m: module(KroneckerKind::W, 1)?,
        n: module(KroneckerKind::U, n)?,
        b: module(KroneckerKind::U, n + 1)?,
        b_prime,
    })
}

/// Every exchange pair among exceptional modules of real roots with entries
/// at most `bound` and the `SP_i` whose triangles the builders above can
/// realize. Pairs the builders reject are returned in the second list.
pub fn root_fixtures(
    ctx: &Arc<QuiverAlgebraContext>,
    bound: usize,
    seed: u64,
) -> Result<(Vec<ExchangeFixture>, Vec<String>)> {
    let roots: Vec<Family> = crate::repcore::positive_roots(ctx, bound)
        .into_iter()
        .map(|d| GenericFamily::new(ctx.clone(), d, seed).map(|g| Arc::new(g) as Family))
        .collect::<Result<_>>()?;
    let mut fixtures = Vec::new();
    let mut skipped = Vec::new();
    for (a, m) in roots.iter().enumerate() {
        for i in 0..ctx.rank() {
            if m.dims()[i] == 1 {
                fixtures.push(shifted_fixture(ctx, m.clone(), i)?);
            }
        }
        for n in &roots[a + 1..] {
            let pair = ext_dim_cluster(&ClusterObject::module(m.clone()), &ClusterObject::module(n.clone()))?;
            if pair != 1 {
                continue;
            }
            match module_fixture(ctx, m.clone(), n.clone(), seed) {
                Ok(f) => fixtures.push(f),
                Err(Error::Precondition(why)) => skipped.push(format!("{} * {}: {why}", m.label(), n.label())),
                Err(e) => return Err(e),
            }
        }
    }
    Ok((fixtures, skipped))
}
