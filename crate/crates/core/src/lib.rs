//! Potential theory and dynamics on the Berkovich projective line over the
//! p-adic completion of Q, with exact rational arithmetic throughout.

pub mod berk;
pub mod dot;
pub mod dynamics;
pub mod error;
pub mod io;
pub mod linalg;
pub mod measure;
pub mod poly;
pub mod potential;
pub mod skeleton;
pub mod valfield;

pub use berk::{BerkPoint, Direction, PointType};
pub use error::{Error, Result};
pub use measure::Measure;
pub use poly::{DegreeBudget, Poly, Var};
pub use skeleton::{PLFunc, Skeleton};
pub use valfield::{ExtRat, FieldCtx, LogAbs};
