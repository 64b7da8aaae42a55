//! Exact and Monte Carlo machinery for L²-Betti numbers of Poisson
//! configuration spaces.
//!
//! The crate is `no_std` (it needs `alloc`). Modules:
//!
//! - [`graded_algebra`]: supercommutative tensor algebra over finitely many
//!   graded generator spaces, the super-symmetrizing projector and the
//!   dimensions of its homogeneous components.
//! - [`betti`]: configuration-space Betti numbers from the Betti numbers of
//!   the base manifold, the vanishing threshold, the Künneth convolution and
//!   the tangent-fiber dimension identity.
//! - [`hodge`]: simplicial complexes, boundary matrices, combinatorial Hodge
//!   Laplacians and the Kronecker-sum kernel identity.
//! - [`poisson`]: seeded Monte Carlo checks of Poisson measure identities
//!   (Laplace transform, local expansion, Mecke identity).
//! - [`linalg`]: dense exact matrices, fraction-free rank and a rational
//!   LDLᵀ semidefiniteness test.
#![no_std]

extern crate alloc;

pub mod betti;
pub mod combinatorics;
pub mod error;
pub mod graded_algebra;
pub mod hodge;
pub mod linalg;
pub mod poisson;

pub use error::{Error, Result};
