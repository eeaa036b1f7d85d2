//! Exact verification of the finite computations behind the Weil
//! representation central extension: cyclotomic arithmetic and Gauss sums,
//! symplectic groups over Z/nZ, the Weil representation and its chain-relation
//! defect, coinvariants of the symplectic Lie algebra module, and the Witt
//! ring of Z/4Z.

pub mod arith;
pub mod coinvariants;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod symplectic;
pub mod weil;
pub mod witt;

pub use error::{Error, Result};
