//! Orthogonal surfaces in `R^d`: characteristic points, syzygies, cp-orders,
//! Schnyder woods, and realizability of simplicial and polytopal balls.

#![allow(clippy::needless_range_loop)]

pub mod charpoint;
pub mod construct;
pub mod error;
pub mod homology;
pub mod io;
pub mod point;
pub mod poset;
pub mod realizer;
pub mod schnyder;
pub mod surface;

pub use charpoint::{
    characteristic_points, detect_degeneracy, is_characteristic, scarf_complex, CharPoint,
    DegeneracyWitness,
};
pub use error::{Error, Result};
pub use homology::{is_syzygy, syzygy_complex};
pub use point::{ColorSet, Point};
pub use poset::{build_cporder, is_rigid, matches_ball, Ball, CpOrder, FaceLattice, Poset};
pub use surface::OrthoSurface;
