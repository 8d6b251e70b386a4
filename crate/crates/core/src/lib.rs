//! Exact computations with restricted Lie algebras in characteristic `p`.
//!
//! The crate is organised bottom-up:
//!
//! * [`fields`]: prime fields, finite extensions, rational function fields and
//!   purely inseparable extensions, with polynomials and factorisation.
//! * [`linalg`]: dense exact matrices and subspaces.
//! * [`liealg`]: Lie algebras by structure constants, `p`-maps, Jacobson
//!   `p`-powers and `p`-closures.
//! * [`uea`]: PBW straightening and the `f`-reduced enveloping algebra.
//! * [`modules`]: representations, homomorphism spaces, spinning and an
//!   irreducibility test.
//! * [`induction`]: induced modules and the induction/restriction adjunction.
//! * [`characters`]: the `p`-semilinear map `phi`, characters, clusters and
//!   cluster decomposition.
//! * [`envelopes`]: `p`-envelopes for algebras without a `p`-map.

pub mod characters;
pub mod envelopes;
mod error;
pub mod fields;
pub mod induction;
pub mod liealg;
pub mod linalg;
pub mod modules;
pub mod uea;

pub use error::{Error, Result};
pub use fields::{Fe, Field, Poly};
pub use linalg::Matrix;
