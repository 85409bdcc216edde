//! Pairs of triangles with two common integral sides `x`, `y` whose third
//! sides, opposite two prescribed angles, lie in ℚ or a real quadratic
//! field.
//!
//! The two cosine-law equations multiply to a genus-one quartic
//! ([`curvegen`]); that quartic is carried to a Weierstrass model where the
//! group law produces new points ([`elliptic`]); points with rational
//! abscissa pull back to triangle pairs, and a brute-force scan finds the
//! small ones independently ([`solver`]). [`tunnell`] implements Tunnell's
//! congruent-number test.
//!
//! Everything here is exact and allocation-only; the `bitri` crate adds
//! threads, files and the command line.

#![no_std]

extern crate alloc;

pub mod curvegen;
pub mod elliptic;
pub mod error;
pub mod field;
pub mod solver;
pub mod tunnell;

pub use curvegen::{
    build_quartic, cosine_law_values, eval_quartic, supplement_pair, AnglePair, NamedAngle, QuarticCurve,
};
pub use elliptic::{
    ec_add, ec_mul, is_on_curve, j_invariant, quartic_to_weierstrass, BirationalMap, EcPoint, WeierstrassCurve,
};
pub use error::Error;
pub use field::{FieldElement, Interval, Radicand, Rational};
pub use solver::{
    brute_force_search, generate_solutions, parametrize_single_angle, pullback, verify_triangle, ConicPoint,
    IntegerTriangle, Rejection, SearchReport, TrianglePair,
};
pub use tunnell::{count_representations, tunnell_test, ParityCase, TunnellVerdict};
