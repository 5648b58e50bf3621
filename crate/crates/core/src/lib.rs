//! Bifurcation braid monodromy of plane-curve families.
//!
//! The crate combines three layers:
//! - exact braid-group arithmetic (`braid`, `perm`): words in Artin
//!   generators, band generators, the word problem via handle reduction;
//! - the Hurwitz action on tuples of permutations (`hurwitz`): stabilizer
//!   checks and orbit enumeration;
//! - numerics (`poly`, `family`, `tracker`): resultants and discriminants,
//!   explicit branch-point families of unfoldings and of plane projective
//!   curves, and a root tracker that turns parameter loops into braids.
//!
//! The `theorems` module assembles the generator sets of the two monodromy
//! groups and the verification pipelines that cross-check tracked braids,
//! Hurwitz stabilization and exact braid identities against each other.

pub mod braid;
pub mod config;
pub mod error;
pub mod family;
pub mod hurwitz;
pub mod perm;
pub mod poly;
pub mod theorems;
pub mod tracker;

pub use braid::{BandGenerator, BraidWord};
pub use config::RunConfig;
pub use error::{Error, Result};
pub use hurwitz::HurwitzTuple;
pub use perm::Permutation;
pub use poly::Poly;
