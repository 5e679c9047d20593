//! Binomial edge ideals of Cohen-Macaulay graph families.
//!
//! Graph constructors for cones, the bipartite graphs `F_m`, fan graphs and
//! the two gluing operations, closed formulas for their homological
//! invariants, and an exact oracle (Gröbner basis, Hochster's formula,
//! Koszul homology) to check them against.

pub mod betti;
pub mod closed_form;
pub mod complex;
pub mod dsl;
pub mod error;
pub mod family;
pub mod field;
pub mod graph;
pub mod groebner;
pub mod hilbert;
pub mod linalg;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
pub use family::FamilyExpr;
pub use field::{Field, PrimeField, Rationals};
pub use graph::Graph;
