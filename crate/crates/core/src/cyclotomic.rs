//! Exact arithmetic in `Z[ζ_n]`.
//!
//! A [`CycInt`] is a residue in `Z[x]/(x^n - 1)`. That ring is bigger than
//! `Z[ζ_n]`, so two different coefficient vectors can denote the same
//! cyclotomic integer; equality and integrality go through reduction modulo
//! the cyclotomic polynomial `Φ_n`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::divisors;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicPoly {
    pub n: usize,
    /// Coefficients, constant term first; monic of degree `totient(n)`.
    pub coeffs: Vec<BigInt>,
}

impl CyclotomicPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

// Exact quotient by a monic divisor.
fn poly_div_exact(a: &[BigInt], d: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let dd = d.len() - 1;
    let mut quo = vec![BigInt::zero(); a.len() - dd];
    for i in (0..quo.len()).rev() {
        let c = r[i + dd].clone();
        if !c.is_zero() {
            for (j, dj) in d.iter().enumerate() {
                r[i + j] -= &c * dj;
            }
        }
        quo[i] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero));
    quo
}

fn cache() -> &'static Mutex<HashMap<usize, Arc<CyclotomicPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CyclotomicPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Φ_n = (x^n - 1) / Π_{d | n, d < n} Φ_d`.
pub fn cyclotomic_poly(n: usize) -> Arc<CyclotomicPoly> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(hit) = cache().lock().unwrap().get(&n) {
        return hit.clone();
    }
    let mut num = vec![BigInt::zero(); n + 1];
    num[0] = -BigInt::one();
    num[n] = BigInt::one();
    let mut den = vec![BigInt::one()];
    for d in divisors(n as u64) {
        let d = d as usize;
        if d < n {
            den = poly_mul(&den, &cyclotomic_poly(d).coeffs);
        }
    }
    let poly = Arc::new(CyclotomicPoly {
        n,
        coeffs: poly_div_exact(&num, &den),
    });
    cache().lock().unwrap().insert(n, poly.clone());
    poly
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycInt {
    n: usize,
    coeffs: Vec<BigInt>,
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        let mut st = serializer.serialize_struct("CycInt", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl CycInt {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "root order must be positive");
        CycInt {
            n,
            coeffs: vec![BigInt::zero(); n],
        }
    }

    pub fn from_int(n: usize, c: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(n);
        out.coeffs[0] = c.into();
        out
    }

    pub fn one(n: usize) -> Self {
        Self::from_int(n, 1)
    }

    /// `ζ_n^e`.
    pub fn root(n: usize, e: u64) -> Self {
        let mut out = Self::zero(n);
        out.coeffs[(e % n as u64) as usize] = BigInt::one();
        out
    }

    /// Representative `Σ c_i ζ^i` of length `n`; shorter vectors are padded.
    pub fn from_coeffs(n: usize, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() > n {
            return Err(Error::OrderMismatch(coeffs.len(), n));
        }
        let mut c = coeffs;
        c.resize(n, BigInt::zero());
        Ok(CycInt { n, coeffs: c })
    }

    pub fn from_small(n: usize, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(n, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Adds `c · ζ^e` in place.
    pub fn add_term(&mut self, c: i64, e: u64) {
        if c != 0 {
            let i = (e % self.n as u64) as usize;
            self.coeffs[i] += c;
        }
    }

    fn same_order(&self, other: &CycInt) -> Result<()> {
        if self.n != other.n {
            Err(Error::OrderMismatch(self.n, other.n))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &CycInt) -> Result<CycInt> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycInt { n: self.n, coeffs })
    }

    pub fn sub(&self, other: &CycInt) -> Result<CycInt> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycInt { n: self.n, coeffs })
    }

    pub fn neg(&self) -> CycInt {
        CycInt {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Cyclic convolution.
    pub fn mul(&self, other: &CycInt) -> Result<CycInt> {
        self.same_order(other)?;
        let n = self.n;
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = if i + j >= n { i + j - n } else { i + j };
                out[k] += a * b;
            }
        }
        Ok(CycInt { n, coeffs: out })
    }

    /// Multiplication by `ζ^e`.
    pub fn shift(&self, e: u64) -> CycInt {
        let n = self.n;
        let e = (e % n as u64) as usize;
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(i + e) % n] = c.clone();
        }
        CycInt { n, coeffs: out }
    }

    /// Complex conjugation `ζ -> ζ^{-1}`.
    pub fn conj(&self) -> CycInt {
        let n = self.n;
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(n - i) % n] = c.clone();
        }
        CycInt { n, coeffs: out }
    }

    /// Galois automorphism `ζ -> ζ^t` for `t` coprime to `n`.
    pub fn galois(&self, t: i64) -> Result<CycInt> {
        let n = self.n;
        let tt = t.rem_euclid(n as i64) as usize;
        if (tt as u64).gcd(&(n as u64)) != 1 {
            return Err(Error::NotCoprime { t, n });
        }
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(i * tt) % n] = c.clone();
        }
        Ok(CycInt { n, coeffs: out })
    }

    /// Canonical form: the remainder modulo `Φ_n`, constant term first,
    /// trailing zeros removed.
    pub fn reduce(&self) -> Vec<BigInt> {
        let phi = cyclotomic_poly(self.n);
        let d = phi.degree();
        let mut r = self.coeffs.clone();
        for top in (d..r.len()).rev() {
            let c = std::mem::take(&mut r[top]);
            if c.is_zero() {
                continue;
            }
            let shift = top - d;
            for (j, pj) in phi.coeffs[..d].iter().enumerate() {
                if !pj.is_zero() {
                    r[shift + j] -= &c * pj;
                }
            }
        }
        r.truncate(d);
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        r
    }

    /// Replaces the representative with its reduction modulo `Φ_n`.
    pub fn normalized(&self) -> CycInt {
        let mut coeffs = self.reduce();
        coeffs.resize(self.n, BigInt::zero());
        CycInt { n: self.n, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero) || self.reduce().is_empty()
    }

    /// Equality as elements of `Z[ζ_n]`.
    pub fn equals(&self, other: &CycInt) -> Result<bool> {
        self.same_order(other)?;
        if self.coeffs == other.coeffs {
            return Ok(true);
        }
        Ok(self.sub(other)?.reduce().is_empty())
    }

    /// The rational integer this element equals, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        let r = self.reduce();
        match r.len() {
            0 => Some(BigInt::zero()),
            1 => Some(r[0].clone()),
            _ => None,
        }
    }

    /// Largest absolute coefficient of the current representative.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }
}
