//! Machine-checked proofs that no (6,4) net and no affine plane of order 6
//! exist, with an exhaustive orthogonal-mate search as an independent
//! cross-check.

pub mod affine;
pub mod case2222;
pub mod designs;
pub mod exact_cover;
pub mod gf2;
pub mod mols_search;
pub mod netcode;
pub mod parallax;
pub mod report;
pub mod verify;
