//! Exact computation of ranks of companion-presented difference groups.
//!
//! The layers, bottom up: exact arithmetic ([`arith`]), dense polynomials
//! ([`poly`]), factorization over the rationals ([`factor`]) and over number
//! fields ([`numfield`]), hereditary factorization ([`hereditary`]), and the
//! rank rules for group presentations ([`groups`]) and fixed fields
//! ([`classify`]).

pub mod arith;
pub mod classify;
pub mod config;
pub mod error;
pub mod factor;
pub mod field;
pub mod groups;
pub mod hereditary;
pub mod numfield;
pub mod par;
pub mod poly;

pub use error::{Error, Result};
