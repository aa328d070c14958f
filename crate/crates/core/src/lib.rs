//! Exact, finite models of parabelian and proto-exact categories.
//!
//! The crate is `no_std` (with `alloc`). It provides a generic kernel/cokernel
//! calculus over the [`category::PointedCategory`] interface and concrete
//! instances: pointed sets, functor categories and quiver representations,
//! pre-crystals, closure spaces and matroids, commutative monoids and semiring
//! modules, polyhedrally normed rational spaces, plus element-level tooling
//! for special monads and Hall-number counting.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod calculus;
pub mod category;
pub mod closures;
pub mod cmon;
pub mod concrete;
pub mod diagrams;
pub mod error;
pub mod groups;
pub mod hall;
pub mod linalg;
pub mod monadcalc;
pub mod partition;
pub mod polynorm;
mod perm;
pub mod psets;
pub mod report;

pub use calculus::{
    check_parabelian, check_proto_exact_closure, classify, factorize, is_exact_pair, pullback_strict_mono,
    pushout_strict_epi, verify_square, Factorization, MorphismClass, Square, SquareVerdict,
};
pub use category::{Canonical, FiniteCategory, PointedCategory};
pub use error::{Error, Result};
pub use report::{Check, Report};
