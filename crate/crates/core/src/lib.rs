//! Cluster algebras of acyclic quivers, computed twice: by seed mutation and
//! by the Caldero–Chapoton map on quiver representations over prime fields.

pub mod error;
pub mod fp;
pub mod grassmannian;
pub mod laurent;
pub mod mutation;
pub mod repcore;
pub mod ccmap;

pub use error::{Error, Result};
pub use laurent::{FractionForm, LaurentPoly, Monomial};
