//! nijkit-core: an exact symbolic toolkit for operator fields with vanishing
//! torsion and their compatible symplectic pairs.
//!
//! Everything is computed over arbitrary-precision rationals; identities such
//! as vanishing torsion or closedness of a form are decided exactly, never
//! numerically. All values are immutable after construction and freely
//! shareable across threads.

pub mod symkernel;

pub mod exterior;
pub mod nijenhuis;
pub mod pncompat;
pub mod turiel;

pub mod pdesolve;

pub mod samples;

pub use symkernel::{Chart, Coord, Poly, ScalarField, TruncatedSeries};
