//! Canonical Tutte polynomials of minor-system Hopf algebras.
//!
//! Every family of objects closed under deletion and contraction — matroids,
//! perspectives, graphs, delta-matroids, ribbon graphs and their partitioned
//! variants — gets the same three engines for α, and the library checks the
//! identities relating the resulting polynomials.

pub mod bits;
pub mod delta_matroid;
pub mod error;
pub mod graph;
pub mod harness;
pub mod lasvergnas;
pub mod matroid;
pub mod minor_system;
pub mod poly;
pub mod ribbon;

pub use error::{Error, Result};
pub use poly::{Monomial, Polynomial};
