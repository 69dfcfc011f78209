//! Exact integral lattices, their discriminant forms, and the over-lattices
//! obtained from isotropic subgroups.

pub mod error;
pub mod exact;
pub mod kummer;
pub mod lattice;
pub mod overlat;
pub mod report;
pub mod torsion;

pub use error::{Error, Result};
