//! Exact integral Chow-ring presentations built from torus weight data, and
//! degree-wise lattice comparison of homogeneous ideals over the integers.

pub mod equivariant;
pub mod error;
pub mod hyperelliptic;
pub mod ideal;
pub mod lattice;
pub mod poly;

pub use equivariant::{Parity, Presentation, WeightMatrix};
pub use error::{Error, Result};
pub use ideal::{DegreePiece, GradedIdeal, QuotientFactors};
pub use lattice::{IntMatrix, SmithDecomposition};
pub use poly::{Monomial, PolyRing, Polynomial, RingMap};
