//! Exact integer matrices: Bareiss determinants, the rank-one family
//! `M0 + t·J`, and circulants.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Square matrix of arbitrary-precision integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigIntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl BigIntMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        BigIntMatrix { n, entries }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape);
        }
        Ok(Self::from_fn(n, |i, j| BigInt::from(rows[i][j])))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { BigInt::one() } else { BigInt::zero() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    /// `self + t·J` where `J` is the all-ones matrix.
    pub fn plus_all_ones(&self, t: &BigInt) -> Self {
        BigIntMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e + t).collect(),
        }
    }

    /// `P M P^T` for the permutation sending index `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self::from_fn(self.n, |i, j| self.get(perm[i], perm[j]).clone())
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn determinant(&self) -> BigInt {
        bareiss_det(self)
    }
}

/// Determinant by fraction-free (Bareiss) elimination with column pivoting.
pub fn bareiss_det(m: &BigIntMatrix) -> BigInt {
    let n = m.n;
    if n == 0 {
        return BigInt::one();
    }
    if has_repeated_line(m) {
        return BigInt::zero();
    }
    bareiss_last_row(m.entries.clone(), n, 1).pop().expect("one trailing row")
}

/// Two equal rows or two equal columns. Adding `t·J` preserves both, so
/// this also settles `det(M + t·J) = 0` for every `t`.
pub fn has_repeated_line(m: &BigIntMatrix) -> bool {
    let n = m.n;
    let mut seen = HashSet::with_capacity(n);
    if !(0..n).all(|i| seen.insert(m.row(i))) {
        return true;
    }
    let cols: Vec<Vec<&BigInt>> = (0..n)
        .map(|j| (0..n).map(|i| &m.entries[i * n + j]).collect())
        .collect();
    let mut seen = HashSet::with_capacity(n);
    !cols.iter().all(|c| seen.insert(c))
}

// Fraction-free elimination of an `(n - 1 + extra) × n` matrix whose first
// `n - 1` rows serve as pivot rows. Returns, for each trailing row `r`, the
// determinant of the square matrix formed by the pivot rows followed by `r`.
fn bareiss_last_row(mut a: Vec<BigInt>, n: usize, extra: usize) -> Vec<BigInt> {
    let rows = n - 1 + extra;
    debug_assert_eq!(a.len(), rows * n);
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(col) = (k + 1..n).find(|&j| !a[k * n + j].is_zero()) else {
                return vec![BigInt::zero(); extra];
            };
            for r in k..rows {
                a.swap(r * n + k, r * n + col);
            }
            negate = !negate;
        }
        let (head, tail) = a.split_at_mut((k + 1) * n);
        let pivot_row = &head[k * n..];
        let pivot = &pivot_row[k];
        for row in tail.chunks_exact_mut(n) {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let v = &mut row[j];
                *v *= pivot;
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    *v -= &lead * &pivot_row[j];
                }
                if !prev.is_one() {
                    *v /= &prev;
                }
            }
        }
        prev = pivot.clone();
    }
    (0..extra)
        .map(|e| {
            let d = std::mem::take(&mut a[(n - 1 + e) * n + n - 1]);
            if negate {
                -d
            } else {
                d
            }
        })
        .collect()
}

/// Exact `a + b·t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LinearPoly {
    pub a: BigInt,
    pub b: BigInt,
}

impl LinearPoly {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        LinearPoly {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        &self.a + &self.b * t
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl fmt::Display for LinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let slope = if self.b.is_one() {
            "t".to_string()
        } else if self.b == -BigInt::one() {
            "-t".to_string()
        } else {
            format!("{}*t", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{slope}")
        } else if self.a.is_negative() {
            write!(f, "{slope} - {}", self.a.abs())
        } else {
            write!(f, "{slope} + {}", self.a)
        }
    }
}

impl Serialize for LinearPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("LinearPoly", 2)?;
        st.serialize_field("a", &self.a.to_string())?;
        st.serialize_field("b", &self.b.to_string())?;
        st.end()
    }
}

/// `det(M0 + t·J)` as a linear polynomial in `t`.
///
/// The all-ones update has rank one, so the determinant has degree at most
/// one; it is interpolated from `t = 0, 1` and the value at `t = 2` is
/// checked against the interpolant. The three determinants come out of a
/// single Bareiss pass.
pub fn det_linear(m0: &BigIntMatrix) -> Result<LinearPoly> {
    let n = m0.n;
    if n == 0 {
        return Ok(LinearPoly::new(1, 0));
    }
    if has_repeated_line(m0) {
        return Ok(LinearPoly::default());
    }
    // Subtracting the first row from the others leaves t in that row alone,
    // so the three evaluations share every elimination step.
    let first = m0.row(0);
    let mut a = Vec::with_capacity((n + 2) * n);
    for i in 1..n {
        a.extend(m0.row(i).iter().zip(first).map(|(x, y)| x - y));
    }
    for t in 0..3 {
        let t = BigInt::from(t);
        a.extend(first.iter().map(|x| x + &t));
    }
    let mut dets = bareiss_last_row(a, n, 3);
    // Moving the first row to the bottom is a cycle of length n.
    if n % 2 == 0 {
        for d in &mut dets {
            *d = -std::mem::take(d);
        }
    }
    let [d0, d1, d2]: [BigInt; 3] = dets.try_into().expect("three evaluations");
    let poly = LinearPoly {
        b: &d1 - &d0,
        a: d0,
    };
    if d2 != poly.eval(&BigInt::from(2)) {
        return Err(Error::InterpolationGuard);
    }
    Ok(poly)
}

/// `C(b_0, …, b_{n-1}) = [b_{(i - j) mod n}]`.
///
/// For a tuple of the form `b_i = c_i + t`, `C(b) = C(c) + t·J`, so
/// `det_linear(&circulant(c))` gives its determinant.
pub fn circulant(b: &[BigInt]) -> BigIntMatrix {
    let n = b.len();
    BigIntMatrix::from_fn(n, |i, j| b[(i + n - j) % n].clone())
}

/// Non-negative square root of a perfect square.
pub fn integer_sqrt_exact(x: &BigInt) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}
