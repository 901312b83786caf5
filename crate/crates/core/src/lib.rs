//! Exact rational implementations of the planar pentagram map, the
//! corrugated pentagram map in higher dimensions, the lower map on pairs of
//! tuples in P^1, the mirror pentagram map and cross-ratio frieze patterns,
//! together with checkers for their collapse behaviour and for the lifting
//! constructions used to explain it.

pub mod error;
pub mod linalg;
pub mod proj;
pub mod rational;
pub mod rng;

pub use error::{GeomError, Result};
pub use proj::{ProjLine2, ProjMap, ProjPoint};
pub use rational::Rational;
pub mod pentagram2d;
pub mod corrugated;
pub mod lower1d;
pub mod mirror;
pub mod frieze;
pub mod lifting;
pub mod format;
