//! Jacobi sums, the eigenvalues `λ_m` of `A_k(0)`, and point counts of
//! `y^2 = x^k ± 1`.

use serde::Serialize;

use crate::characters::{chi_pow, phi, CharValue};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::field::FieldCtx;

/// `J(χ^i, χ^j) = Σ_x χ^i(x) χ^j(1 - x)` in `Z[ζ_order]`.
///
/// Each term must lie in `±μ_order`; in particular the quadratic character
/// embeds into odd orders through its sign.
pub fn jacobi_sum(ctx: &FieldCtx, i: i64, j: i64, order: u64) -> Result<CycInt> {
    let group = ctx.q() - 1;
    let mut acc = CycInt::zero(order as usize);
    let one = ctx.one();
    for x in ctx.elements() {
        let u = chi_pow(ctx, i, x, group)?;
        let v = chi_pow(ctx, j, ctx.sub(one, x), group)?;
        let (CharValue::Root { exp: eu, .. }, CharValue::Root { exp: ev, .. }) = (u, v) else {
            continue;
        };
        let value = CharValue::Root {
            exp: (eu + ev) % group,
            order: group,
        };
        let (neg, e) = value
            .signed_root(order)
            .ok_or(Error::CharacterOrder { order })?;
        acc.add_term(if neg { -1 } else { 1 }, e);
    }
    Ok(acc)
}

fn check_eigen_regime(ctx: &FieldCtx, k: u64) -> Result<u64> {
    let q = ctx.q();
    if k == 0 || (q - 1) % k != 0 {
        return Err(Error::KDoesNotDivide { k, q });
    }
    if (q - 1) % (2 * k) == 0 {
        return Err(Error::BranchMismatch {
            q,
            k,
            expected: "q != 1 (mod 2k)",
            found: "q == 1 (mod 2k)",
        });
    }
    Ok((q - 1) / k)
}

/// `w_j = φ(1 + a_j) + φ(1 - a_j)` for `a_j` in `D_k`.
pub fn eigen_weights(ctx: &FieldCtx, k: u64) -> Result<Vec<i64>> {
    let one = ctx.one();
    Ok(ctx
        .subgroup_dk(k)?
        .into_iter()
        .map(|a| i64::from(phi(ctx, ctx.add(one, a))) + i64::from(phi(ctx, ctx.sub(one, a))))
        .collect())
}

fn lambda_from_weights(ctx: &FieldCtx, k: u64, weights: &[i64], m: i64) -> Result<CycInt> {
    let n = weights.len() as u64;
    let mut acc = CycInt::zero(n as usize);
    for (a, &w) in ctx.subgroup_dk(k)?.into_iter().zip(weights) {
        match chi_pow(ctx, m, a, n)? {
            CharValue::Root { exp, .. } => acc.add_term(w, exp),
            CharValue::Zero => unreachable!("D_k excludes zero"),
        }
    }
    Ok(acc)
}

/// `λ_m = Σ_j (φ(1 + a_j) + φ(1 - a_j)) χ^m(a_j)` in `Z[ζ_n]`, `n = (q-1)/k`.
pub fn lambda_m(ctx: &FieldCtx, k: u64, m: i64) -> Result<CycInt> {
    check_eigen_regime(ctx, k)?;
    let weights = eigen_weights(ctx, k)?;
    lambda_from_weights(ctx, k, &weights, m)
}

/// `λ_0, …, λ_{n-1}`.
pub fn all_lambdas(ctx: &FieldCtx, k: u64) -> Result<Vec<CycInt>> {
    let n = check_eigen_regime(ctx, k)?;
    let weights = eigen_weights(ctx, k)?;
    (0..n as i64)
        .map(|m| lambda_from_weights(ctx, k, &weights, m))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveCount {
    pub k: u64,
    pub sign: i8,
    /// Points of `{∞} ∪ {(x, y) : y^2 = x^k + sign}`, one point at infinity.
    pub points: i64,
    /// `q + 1 - points`; this is `c_k` for `sign = 1` and `d_k` for `sign = -1`.
    pub trace: i64,
}

impl CurveCount {
    pub fn genus(&self) -> u64 {
        self.k.saturating_sub(1) / 2
    }

    /// Hasse–Weil sanity bound. The count above has a single point at
    /// infinity, while the smooth model of an even-degree curve has two, so
    /// for even `k` the bound applies to `trace - 1`.
    pub fn within_weil_bound(&self, q: u64) -> bool {
        let t = self.trace - if self.k % 2 == 0 { 1 } else { 0 };
        let g = self.genus() as i128;
        (t as i128) * (t as i128) <= 4 * g * g * q as i128
    }
}

fn check_sign(sign: i8) -> Result<()> {
    if sign == 1 || sign == -1 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("sign must be +1 or -1, got {sign}")))
    }
}

/// Point count of `y^2 = x^k + sign` using `#{y : y^2 = c} = 1 + φ(c)`.
pub fn curve_count(ctx: &FieldCtx, k: u64, sign: i8) -> Result<CurveCount> {
    check_sign(sign)?;
    let c = ctx.from_int(sign as i64);
    let affine: i64 = ctx
        .elements()
        .map(|x| {
            let xk = ctx.pow(x, k as i64).expect("non-negative exponent");
            1 + i64::from(phi(ctx, ctx.add(xk, c)))
        })
        .sum();
    let points = 1 + affine;
    Ok(CurveCount {
        k,
        sign,
        points,
        trace: ctx.q() as i64 + 1 - points,
    })
}

/// `Σ_{x ∈ F_q^×} φ(x^k + sign)`.
pub fn char_sum_power(ctx: &FieldCtx, k: u64, sign: i8) -> Result<i64> {
    check_sign(sign)?;
    let c = ctx.from_int(sign as i64);
    Ok(ctx
        .nonzero_elements()
        .map(|x| {
            let xk = ctx.pow(x, k as i64).expect("nonzero base");
            i64::from(phi(ctx, ctx.add(xk, c)))
        })
        .sum())
}
