//! Exact and numeric computation of `(q,r)`-Whitney numbers, their
//! combinatorial models, identity verification and the associated
//! q-Poisson moment formulas.

pub mod error;
pub mod ring;
pub mod qcore;
pub mod report;
pub mod whitney;
pub mod tableaux;
pub mod identities;
pub mod qdist;
pub mod cli;

pub use error::{Error, Result};
pub use report::{IdentityId, IdentityReport, Point};
pub use ring::{LaurentPoly, QMode, QRing, RingScalar};
pub use whitney::{Kind, Triangle, WhitneyParams};
