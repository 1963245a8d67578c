//! Combinatorial model of Hurwitz-space components.
//!
//! Components are braid orbits of product-one tuples in a finite permutation
//! group. On top of the orbit machinery this crate computes multidiscriminants,
//! rationality tests under a cyclotomic unit group, `ni` sets and permuting
//! criteria, and lifting invariants through a finite quotient of the group
//! `U(H, c)` built by coset enumeration.
//!
//! Conventions used everywhere:
//! * permutations compose left to right (`a.compose(&b)` applies `a` first);
//! * conjugation is `g^h = h g h^{-1}`;
//! * the braid generator `sigma_i` sends `(.., g_i, g_{i+1}, ..)` to
//!   `(.., g_{i+1}^{g_i}, g_i, ..)`.

pub mod braid;
pub mod coset;
mod error;
pub mod galois;
pub mod lifting;
pub mod monoid;
pub mod perm;

pub use braid::{Canonicalizer, Component, GTuple, Multidiscriminant};
pub use error::{Error, Result};
pub use galois::RationalityContext;
pub use lifting::{LiftingInvariant, Presentation, SchurCover};
pub use perm::{ClassSet, ClassTable, Permutation, PermutationGroup};

/// Resource limits for every potentially exponential computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of tuples visited by one orbit search or enumeration.
    pub max_orbit: usize,
    /// Maximum number of cosets defined by one coset enumeration.
    pub max_cosets: usize,
    /// Maximum group order for operations that list every element.
    pub max_elements: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_orbit: 5_000_000,
            max_cosets: 1_000_000,
            max_elements: 100_000,
        }
    }
}
