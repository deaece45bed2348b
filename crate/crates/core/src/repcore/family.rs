//! Representations given over every prime at once, and objects of the
//! cluster category built from them.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::context::{to_signed, DimVector, QuiverAlgebraContext};
use super::generic::generic_rep;
use super::homext::{ext_dim, hom_dim};
use super::rep::QuiverRep;
use crate::error::{Error, Result};
use crate::mutation::QuiverSpec;

/// Prime used for structural linear algebra on families.
pub const STRUCTURAL_PRIME: u64 = 101;

/// Default seed for generic sampling.
pub const DEFAULT_SEED: u64 = 0x5eed_c1a5;

/// One isomorphism class of representations, realized over any prime.
pub trait RepFamily: Send + Sync + fmt::Debug {
    fn dims(&self) -> &[usize];
    fn at_prime(&self, p: u64) -> Result<QuiverRep>;
    fn label(&self) -> String;
}

pub type Family = Arc<dyn RepFamily>;

/// Integer matrices reduced modulo each prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralRep {
    label: String,
    dims: DimVector,
    arrows: Vec<(usize, usize)>,
    maps: Vec<Vec<Vec<i64>>>,
}

impl IntegralRep {
    pub fn new(
        label: impl Into<String>,
        dims: DimVector,
        arrows: Vec<(usize, usize)>,
        maps: Vec<Vec<Vec<i64>>>,
    ) -> Result<Self> {
        let rep = IntegralRep {
            label: label.into(),
            dims,
            arrows,
            maps,
        };
        rep.at_prime(STRUCTURAL_PRIME)?;
        Ok(rep)
    }

    /// Lifts a representation over `F_p` entrywise to the integers.
    pub fn lift(label: impl Into<String>, rep: &QuiverRep) -> Self {
        IntegralRep {
            label: label.into(),
            dims: rep.dims().to_vec(),
            arrows: rep.arrows().to_vec(),
            maps: rep
                .maps()
                .iter()
                .map(|m| {
                    m.to_rows()
                        .into_iter()
                        .map(|r| r.into_iter().map(|x| x as i64).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn integer_maps(&self) -> &[Vec<Vec<i64>>] {
        &self.maps
    }
}

impl RepFamily for IntegralRep {
    fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn at_prime(&self, p: u64) -> Result<QuiverRep> {
        QuiverRep::from_integers(p, self.dims.clone(), self.arrows.clone(), &self.maps)
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

/// The exceptional representation of a real Schur root, sampled afresh
/// over each prime from a seeded generator. Exceptional representations
/// are determined by their dimension vector, so every prime sees the same
/// isomorphism class.
#[derive(Clone, Debug)]
pub struct GenericFamily {
    ctx: Arc<QuiverAlgebraContext>,
    dims: DimVector,
    seed: u64,
    attempts: usize,
}

impl GenericFamily {
    pub fn new(ctx: Arc<QuiverAlgebraContext>, dims: DimVector, seed: u64) -> Result<Self> {
        let d = to_signed(&dims);
        if ctx.euler_form(&d, &d)? != 1 {
            return Err(Error::Precondition(format!("{dims:?} is not a real root")));
        }
        Ok(GenericFamily {
            ctx,
            dims,
            seed,
            attempts: 2000,
        })
    }

    fn rng_for(&self, p: u64) -> ChaCha8Rng {
        let mut h = self.seed ^ p.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        for &d in &self.dims {
            h = (h ^ d as u64).wrapping_mul(0x0100_0000_01b3).rotate_left(17);
        }
        ChaCha8Rng::seed_from_u64(h)
    }
}

impl RepFamily for GenericFamily {
    fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn at_prime(&self, p: u64) -> Result<QuiverRep> {
        let mut rng = self.rng_for(p);
        generic_rep(&self.ctx, &self.dims, p, self.attempts, &mut rng)
    }

    fn label(&self) -> String {
        let d: Vec<String> = self.dims.iter().map(ToString::to_string).collect();
        format!("root:{}", d.join(","))
    }
}

type Builder = dyn Fn(u64) -> Result<QuiverRep> + Send + Sync;

/// A family given by an arbitrary per-prime construction.
#[derive(Clone)]
pub struct FnFamily {
    label: String,
    dims: DimVector,
    build: Arc<Builder>,
}

impl FnFamily {
    pub fn new<F>(label: impl Into<String>, dims: DimVector, build: F) -> Self
    where
        F: Fn(u64) -> Result<QuiverRep> + Send + Sync + 'static,
    {
        FnFamily {
            label: label.into(),
            dims,
            build: Arc::new(build),
        }
    }
}

impl fmt::Debug for FnFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnFamily")
            .field("label", &self.label)
            .field("dims", &self.dims)
            .finish()
    }
}

impl RepFamily for FnFamily {
    fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn at_prime(&self, p: u64) -> Result<QuiverRep> {
        let rep = (self.build)(p)?;
        if rep.dims() != self.dims.as_slice() {
            return Err(Error::Inconsistent(format!(
                "{} built dims {:?} over F_{p}, expected {:?}",
                self.label,
                rep.dims(),
                self.dims
            )));
        }
        Ok(rep)
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

pub fn sum_family(a: Family, b: Family) -> Family {
    let dims = a.dims().iter().zip(b.dims()).map(|(x, y)| x + y).collect();
    let label = format!("{} + {}", a.label(), b.label());
    Arc::new(FnFamily::new(label, dims, move |p| {
        a.at_prime(p)?.direct_sum(&b.at_prime(p)?)
    }))
}

/// `M₀ ⊕ ⊕_i SP_i^{c_i}`: a module part plus shifted projectives.
#[derive(Clone, Debug)]
pub struct ClusterObject {
    n: usize,
    module: Option<Family>,
    shifted: Vec<usize>,
}

impl ClusterObject {
    pub fn zero(n: usize) -> Self {
        ClusterObject {
            n,
            module: None,
            shifted: Vec::new(),
        }
    }

    pub fn module(family: Family) -> Self {
        let n = family.dims().len();
        let module = (family.dims().iter().any(|&d| d > 0)).then_some(family);
        ClusterObject {
            n,
            module,
            shifted: Vec::new(),
        }
    }

    pub fn shifted_projective(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, size: n });
        }
        Ok(ClusterObject {
            n,
            module: None,
            shifted: vec![i],
        })
    }

    /// Adds `c_i` copies of `SP_i`.
    pub fn with_shifted(mut self, multiplicities: &[i64]) -> Result<Self> {
        if multiplicities.len() != self.n {
            return Err(Error::Length {
                left: multiplicities.len(),
                right: self.n,
            });
        }
        for (i, &c) in multiplicities.iter().enumerate() {
            let c = usize::try_from(c)
                .map_err(|_| Error::Inconsistent(format!("negative multiplicity of SP_{}", i + 1)))?;
            self.shifted.extend(std::iter::repeat_n(i, c));
        }
        self.shifted.sort_unstable();
        Ok(self)
    }

    pub fn direct_sum(&self, other: &ClusterObject) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ContextMismatch);
        }
        let module = match (&self.module, &other.module) {
            (None, None) => None,
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (Some(a), Some(b)) => Some(sum_family(a.clone(), b.clone())),
        };
        let mut shifted = [self.shifted.clone(), other.shifted.clone()].concat();
        shifted.sort_unstable();
        Ok(ClusterObject {
            n: self.n,
            module,
            shifted,
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn module_part(&self) -> Option<&Family> {
        self.module.as_ref()
    }

    pub fn module_dims(&self) -> DimVector {
        self.module
            .as_ref()
            .map_or_else(|| vec![0; self.n], |m| m.dims().to_vec())
    }

    /// Sorted vertex indices, one per copy of `SP_i`.
    pub fn shifted(&self) -> &[usize] {
        &self.shifted
    }

    pub fn shifted_multiplicities(&self) -> Vec<i64> {
        let mut c = vec![0; self.n];
        for &i in &self.shifted {
            c[i] += 1;
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_none() && self.shifted.is_empty()
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.module.iter().map(|m| m.label()).collect();
        parts.extend(self.shifted.iter().map(|i| format!("SP:{}", i + 1)));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    fn module_at(&self, p: u64) -> Result<Option<QuiverRep>> {
        self.module.as_ref().map(|m| m.at_prime(p)).transpose()
    }
}

/// `dim Ext¹` in the cluster category, evaluated over `F_p`:
/// `Ext¹_H(M, N) + Ext¹_H(N, M)` on module parts, `(dim M)_i` for each
/// `SP_i` against a module `M`, and nothing between shifted projectives.
pub fn ext_dim_cluster_at(x: &ClusterObject, y: &ClusterObject, p: u64) -> Result<usize> {
    if x.n != y.n {
        return Err(Error::ContextMismatch);
    }
    let (mx, my) = (x.module_at(p)?, y.module_at(p)?);
    let mut total = 0;
    if let (Some(a), Some(b)) = (&mx, &my) {
        total += ext_dim(a, b)? + ext_dim(b, a)?;
    }
    let dx = x.module_dims();
    let dy = y.module_dims();
    total += x.shifted.iter().map(|&i| dy[i]).sum::<usize>();
    total += y.shifted.iter().map(|&i| dx[i]).sum::<usize>();
    Ok(total)
}

pub fn ext_dim_cluster(x: &ClusterObject, y: &ClusterObject) -> Result<usize> {
    ext_dim_cluster_at(x, y, STRUCTURAL_PRIME)
}

pub fn is_rigid_object(x: &ClusterObject) -> Result<bool> {
    Ok(ext_dim_cluster(x, x)? == 0)
}

/// Indecomposable and rigid: a single `SP_i`, or an exceptional module.
pub fn is_exceptional_object(x: &ClusterObject) -> Result<bool> {
    match (&x.module, x.shifted.len()) {
        (None, 1) => Ok(true),
        (Some(m), 0) => {
            let rep = m.at_prime(STRUCTURAL_PRIME)?;
            Ok(hom_dim(&rep, &rep)? == 1 && ext_dim(&rep, &rep)? == 0)
        }
        _ => Ok(false),
    }
}

/// Simple representation `S_i` as an integral family.
pub fn simple_family(quiver: &QuiverSpec, i: usize) -> Result<Family> {
    let n = quiver.vertex_count();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, size: n });
    }
    let mut dims = vec![0; n];
    dims[i] = 1;
    let arrows = quiver.arrow_list();
    let maps = arrows.iter().map(|&(_, t)| vec![Vec::new(); dims[t]]).collect();
    Ok(Arc::new(IntegralRep::new(format!("S:{}", i + 1), dims, arrows, maps)?))
}
