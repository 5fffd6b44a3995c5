//! Exact computational kernels for modular representation theory of small
//! finite groups: finite fields F_{p^e}, dense/sparse linear algebra and
//! polynomial factorization over them, Z/m solvers, groups as Cayley tables,
//! 2-cocycles and their cohomology classes, twisted group algebras, first
//! Hochschild and group cohomology, and block decompositions with defect
//! groups and Brauer pairs.
//!
//! Everything is deterministic: where an algorithm is randomized the RNG
//! seed is an explicit argument and results are asserted seed-independent.

pub mod algebra;
pub mod blocks;
pub mod cocycle;
pub mod criteria;
pub mod error;
pub mod field;
pub mod gcoh;
pub mod group;
pub mod linalg;
pub mod modm;
pub mod numutil;
pub mod poly;

pub use error::{Error, Result};
pub use field::{FqElem, FqField};
pub use group::{Group, GroupHom, Subgroup};
