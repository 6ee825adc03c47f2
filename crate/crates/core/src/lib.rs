//! Exact quantum invariants of closed 3-manifolds presented by framed links.

pub mod cyclo;
pub mod error;
pub mod laurent;
pub mod lie;
pub mod link;
pub mod manifold;
pub mod perturbative;
pub mod weyl_sums;

pub use error::{Error, Result};
