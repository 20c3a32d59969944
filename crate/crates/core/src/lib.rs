//! Exact valued-field geometry over fields with finite residue field.
//!
//! The crate covers one chain of constructions in `F_p(t)` and `Q` with a
//! discrete place: ultrametric [`ball`]s, canonical Swiss cheese
//! decompositions ([`cheese`]), compilation of one-variable quantifier-free
//! formulas into cheeses ([`qf1`]), distal cell decompositions of ball
//! families ([`distal`]), and incidence counting with the associated
//! Szemerédi–Trotter style bounds ([`incidence`], [`bounds`]).
//!
//! The crate is `no_std` with `alloc`. The `parallel` feature pulls in `std`
//! and `rayon` and parallelizes the quadratic loops.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod ball;
pub mod bounds;
pub mod cheese;
pub mod distal;
pub mod ext_int;
pub mod field;
pub mod incidence;
pub mod qf1;

pub use ball::{Ball, BallKind};
pub use cheese::{BallFormula, SwissCheese};
pub use ext_int::ExtInt;
pub use field::{FieldContext, FieldElement, FieldError};
pub use qf1::{QfError, QfFormula};
