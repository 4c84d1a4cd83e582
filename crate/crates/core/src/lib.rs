//! Exact arithmetic for character matrices over finite fields.
//!
//! The crate builds `F_{p^s}`, evaluates the quadratic character and powers
//! of a generator character, and checks the determinant of
//! `A_k(t) = [t + φ(a_i + a_j) + φ(a_i − a_j)]` over the subgroup `D_k` of
//! nonzero `k`-th powers. Every proof-bearing computation is exact: field
//! arithmetic is table driven, character values are exponents of roots of
//! unity, eigenvalues live in `Z[ζ_n]`, and determinants are computed by
//! fraction-free elimination over arbitrary-precision integers.

pub mod arith;
pub mod char_sums;
pub mod characters;
pub mod cyclotomic;
pub mod error;
pub mod field;
mod fp_poly;
pub mod matrix;
pub mod selftest;
pub mod sweep;
pub mod verifier;

pub use char_sums::{char_sum_power, curve_count, jacobi_sum, lambda_m, CurveCount};
pub use characters::{chi_pow, phi, CharValue, QuadValue};
pub use cyclotomic::{cyclotomic_poly, CycInt, CyclotomicPoly};
pub use error::{Error, Result};
pub use field::{make_field, FieldCtx, FieldElement, FieldParams};
pub use matrix::{bareiss_det, det_linear, integer_sqrt_exact, BigIntMatrix, LinearPoly};
pub use verifier::{Branch, Check, VerificationReport};
