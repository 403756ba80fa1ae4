//! Field arithmetic, dense matrices, exact linear algebra, and the commutative
//! rings used as coefficient carriers.

pub mod algebra;
pub mod det;
pub mod field;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod ring;

pub use algebra::FiniteAlgebra;
pub use field::{Elem, Field, FieldDesc};
pub use linalg::{kernel_basis, rank, rref, solve_affine, QuotientMap, Subspace};
pub use matrix::Matrix;
pub use poly::{Mono, Poly, PolyRing};
pub use ring::CommRing;
