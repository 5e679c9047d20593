//! Graded Betti numbers: tables, Hochster's formula for `S/in(J)` and Koszul
//! homology for `S/J`.

pub mod hochster;
pub mod koszul;
mod table;

pub use hochster::{
    hochster_betti, hochster_corner, hochster_degrees, stanley_reisner, CornerReport,
};
pub use koszul::{koszul_betti, KoszulOptions};
pub use table::{
    extremal_corners, invariants_from_table, BettiTable, Corner, Coverage, ExtremalCorners,
    Subject, TableInvariants,
};
