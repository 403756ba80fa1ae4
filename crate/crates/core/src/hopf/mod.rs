//! Hopf algebras, finite group schemes, subgroups, quotients and components.

pub mod algebra;
pub mod builtin;
pub mod components;
pub mod scheme;
pub mod subgroup;

pub use algebra::{AxiomCheck, HopfAlgebra, HopfReport};
pub use builtin::GroupTable;
pub use scheme::GroupScheme;
