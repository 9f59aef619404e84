//! Exact tools for ordered point configurations in complex projective or
//! affine space that are geometrically generic, meaning no m+1 of the n
//! points meet a hyperplane.
//!
//! The crate provides, over the field of Gaussian rationals:
//!
//! * maximal minors, the genericity predicate and seeded sampling
//!   ([`config`]);
//! * the unique normalization carrying a generic configuration onto the
//!   standard frame, the product decomposition it induces and the coordinate
//!   embedding of the reduced space ([`normalize`]);
//! * determinant cross ratios as canonical symbolic objects together with
//!   their algebraic identities and the divisibility relation ([`dcr`]);
//! * the divisibility complex with clique enumeration, simplex types,
//!   symmetric group orbits and stabilizers ([`complex`]);
//! * equivariant self maps built from a permutation and an invariant
//!   transform family, and the constructive recovery of both ingredients
//!   from black box evaluations ([`tame`]).
//!
//! Everything is computed in exact arithmetic; every comparison in the test
//! suite is an equality, never a tolerance.

pub mod cli;
pub mod complex;
pub mod config;
pub mod dcr;
pub mod error;
pub mod json;
pub mod normalize;
pub mod perm;
pub mod rng;
pub mod scalar;
pub mod tame;
mod util;

pub use crate::config::{
    act_permutation, act_transform, Configuration, ProjectiveTransform, Space,
};
pub use crate::dcr::Dcr;
pub use crate::error::{Error, Result};
pub use crate::perm::Permutation;
pub use crate::scalar::GaussianRational;
