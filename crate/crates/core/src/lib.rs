//! Decides whether a bipartite density matrix admits a k-symmetric extension.
//!
//! The exponentially large feasibility problem over the full extension space
//! is compiled into a block-diagonal semidefinite program with one Hermitian
//! block per Young diagram, using the joint action of the unitary and
//! symmetric groups on the k-fold tensor power. A first-order projection
//! solver decides the reduced problem, and a brute-force full-space oracle
//! certifies the reduction at small scale.

pub mod error;
pub mod gt;
pub mod linalg;
pub mod partitions;
pub mod states;

pub use error::{Error, Result};
pub use partitions::{catalog, enumerate_partitions, multiplicity, weyl_dimension};
pub use partitions::{IrrepCatalog, Partition};
