//! Exact linear algebra for finite group schemes over finite fields: Hopf
//! algebras, their modules, induction and coinduction, integrals and transfer,
//! Ext in low degrees, and norms on comodule algebras.

pub mod adjunction;
pub mod catalog;
pub mod error;
pub mod extcoh;
pub mod hopf;
pub mod norm;
pub mod repmod;
pub mod scalars;
pub mod suites;
pub mod transfer;

pub use error::{Error, Result};
