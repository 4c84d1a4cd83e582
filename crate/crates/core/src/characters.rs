//! Multiplicative characters of `F_q`, extended by zero at `0`.
//!
//! `χ` is the generator of the character group with `χ(g) = ζ_{q-1}`, where
//! `g` is the field's canonical generator. Values are exponents of roots of
//! unity, never complex numbers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// Value of the quadratic character: `-1`, `0` or `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuadValue(i8);

impl QuadValue {
    pub fn value(self) -> i8 {
        self.0
    }
}

impl From<QuadValue> for i64 {
    fn from(v: QuadValue) -> i64 {
        v.0 as i64
    }
}

/// A character value: zero, or `ζ_order^exp` with `exp < order`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CharValue {
    Zero,
    Root { exp: u64, order: u64 },
}

impl CharValue {
    /// Writes the value as `±ζ_n^f`, returning `(negated, f)`.
    ///
    /// `None` for [`CharValue::Zero`] or when the value is not in `±μ_n`.
    pub fn signed_root(self, n: u64) -> Option<(bool, u64)> {
        let CharValue::Root { exp, order } = self else {
            return None;
        };
        let (e, big_n, n128) = (exp as u128, order as u128, n as u128);
        if (n128 * e) % big_n == 0 {
            return Some((false, ((n128 * e / big_n) % n128) as u64));
        }
        // -ζ_n^f = ζ_{2N}^{N + 2N f / n}
        let shifted = (2 * e + big_n) % (2 * big_n);
        if (n128 * shifted) % (2 * big_n) == 0 {
            return Some((true, ((n128 * shifted / (2 * big_n)) % n128) as u64));
        }
        None
    }
}

/// The quadratic character `φ`, by parity of the discrete log.
pub fn phi(ctx: &FieldCtx, x: FieldElement) -> QuadValue {
    match ctx.dlog(x) {
        None => QuadValue(0),
        Some(l) if l % 2 == 0 => QuadValue(1),
        Some(_) => QuadValue(-1),
    }
}

/// `χ^m(x)` as a root of unity of order `order`.
///
/// Requires `order | q - 1` and that the value actually lies in `μ_order`,
/// i.e. `(q - 1) | m · dlog(x) · order`.
pub fn chi_pow(ctx: &FieldCtx, m: i64, x: FieldElement, order: u64) -> Result<CharValue> {
    let group = ctx.q() - 1;
    if order == 0 || group % order != 0 {
        return Err(Error::RootOrder { order, group });
    }
    let Some(l) = ctx.dlog(x) else {
        return Ok(CharValue::Zero);
    };
    let big_e = (m.rem_euclid(group as i64) as u128 * l as u128) % group as u128;
    let step = (group / order) as u128;
    if big_e % step != 0 {
        return Err(Error::CharacterOrder { order });
    }
    Ok(CharValue::Root {
        exp: (big_e / step) as u64 % order,
        order,
    })
}
