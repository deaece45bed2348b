//! Representations of acyclic quivers over prime fields.

mod context;
mod family;
mod generic;
mod homext;
mod kronecker;
mod rep;

pub use context::{to_dims, to_signed, DimVector, IntMatrix, QuiverAlgebraContext};
pub use family::{
    ext_dim_cluster, ext_dim_cluster_at, is_exceptional_object, is_rigid_object, simple_family,
    sum_family, ClusterObject, Family, FnFamily, GenericFamily, IntegralRep, RepFamily,
    DEFAULT_SEED, STRUCTURAL_PRIME,
};
pub use generic::{generic_rep, positive_roots};
pub use homext::{
    build_extension, ext_basis, ext_dim, ext_dim_cocycle, hom_basis, hom_dim, is_coboundary,
    is_exceptional, is_rigid, Cochain,
};
pub use kronecker::{kronecker_module, parse_fixture, KroneckerKind, P1Point};
pub use rep::{ArrowFile, Morphism, QuiverRep, RepFile, Subspaces};
