//! Finite fields `F_{p^s}` for odd `p`.
//!
//! Elements are stored packed: the coefficient vector `[c0, c1, …, c_{s-1}]`
//! of the residue polynomial maps to the integer `Σ c_i p^i`. The packing is
//! also the canonical enumeration order used when searching for the modulus
//! and for the generator, so both choices are reproducible.
//!
//! Multiplication goes through full discrete-log / antilog tables built from
//! the canonical generator; [`FieldCtx::mul_poly`] keeps an independent
//! polynomial route for cross-checks and for construction itself.

use serde::Serialize;

use crate::arith::{gcd, is_prime, prime_divisors};
use crate::error::{Error, Result};
use crate::fp_poly;

/// Default upper bound on `q`; every field keeps two tables of about `q` words.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldParams {
    pub p: u64,
    pub s: u32,
    pub q: u64,
    /// Monic modulus, constant term first, length `s + 1`. For `s = 1` this
    /// is the sentinel `x`.
    pub modulus: Vec<u64>,
}

/// Packed field element; see the module docs for the encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u64 {
        self.0 as u64
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug)]
pub struct FieldCtx {
    params: FieldParams,
    generator: FieldElement,
    // log[x] for x != 0; log[0] is unused.
    log: Vec<u32>,
    // exp[e] = g^e for 0 <= e < q - 1.
    exp: Vec<u32>,
    group_primes: Vec<u64>,
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let s = f.len() - 1;
    if s == 1 {
        return true;
    }
    let x = [0u64, 1];
    // frob[i] = x^{p^i} mod f
    let mut frob = vec![fp_poly::rem_monic(&x, f, p)];
    for i in 0..s {
        let next = fp_poly::powmod(&frob[i], p as u128, f, p);
        frob.push(next);
    }
    if frob[s] != fp_poly::rem_monic(&x, f, p) {
        return false;
    }
    prime_divisors(s as u64).into_iter().all(|l| {
        let h = fp_poly::sub(&frob[s / l as usize], &x, p);
        fp_poly::gcd(&h, f, p) == vec![1]
    })
}

/// Least monic irreducible polynomial of degree `s` over `F_p` in packed order
/// of its lower coefficients. Returns the sentinel `x` for `s = 1`.
pub fn find_irreducible(p: u64, s: u32) -> Result<Vec<u64>> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if s == 0 {
        return Err(Error::ZeroDegree);
    }
    if s == 1 {
        return Ok(vec![0, 1]);
    }
    let count = (p as u128).pow(s);
    let mut idx: u128 = 0;
    while idx < count {
        let mut f = unpack(idx as u64, p, s as usize);
        f.push(1);
        if is_irreducible(&f, p) {
            return Ok(f);
        }
        idx += 1;
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

fn unpack(mut idx: u64, p: u64, s: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(s);
    for _ in 0..s {
        out.push(idx % p);
        idx /= p;
    }
    out
}

/// Builds `F_{p^s}` with the canonical modulus and generator.
pub fn make_field(p: u64, s: u32) -> Result<FieldCtx> {
    FieldCtx::new(p, s, DEFAULT_MAX_ORDER)
}

impl FieldCtx {
    pub fn new(p: u64, s: u32, max_order: u64) -> Result<Self> {
        if p % 2 == 0 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if s == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u128).checked_pow(s).unwrap_or(u128::MAX);
        if q > max_order as u128 {
            return Err(Error::FieldTooLarge { q, limit: max_order });
        }
        let q = q as u64;
        let modulus = find_irreducible(p, s)?;
        let params = FieldParams { p, s, q, modulus };
        let group_primes = prime_divisors(q - 1);

        let mut generator = None;
        for idx in 1..q {
            let x = FieldElement(idx as u32);
            if poly_is_generator(&params, &group_primes, x) {
                generator = Some(x);
                break;
            }
        }
        let generator = generator.expect("F_q^x is cyclic");
        Ok(Self::with_tables(params, group_primes, generator))
    }

    fn with_tables(params: FieldParams, group_primes: Vec<u64>, g: FieldElement) -> Self {
        let q = params.q as usize;
        let mut exp = Vec::with_capacity(q - 1);
        let mut log = vec![u32::MAX; q];
        let gpoly = unpack(g.index(), params.p, params.s as usize);
        let mut cur = vec![1u64];
        for e in 0..q - 1 {
            let idx = pack(&cur, params.p);
            exp.push(idx as u32);
            log[idx as usize] = e as u32;
            cur = fp_poly::mulmod(&cur, &gpoly, &params.modulus, params.p);
        }
        debug_assert!(log[1..].iter().all(|&l| l != u32::MAX));
        FieldCtx {
            params,
            generator: g,
            log,
            exp,
            group_primes,
        }
    }

    /// Same field, different generator of `F_q^×`.
    pub fn with_generator(&self, g: FieldElement) -> Result<Self> {
        if g.is_zero() || !self.order_check(g)? {
            return Err(Error::NotAGenerator);
        }
        Ok(Self::with_tables(
            self.params.clone(),
            self.group_primes.clone(),
            g,
        ))
    }

    /// First generator after the current one in enumeration order (wrapping).
    pub fn next_generator(&self) -> FieldElement {
        let q = self.params.q;
        let start = self.generator.index();
        (1..q)
            .map(|off| FieldElement((1 + (start - 1 + off) % (q - 1)) as u32))
            .find(|&x| gcd(self.dlog(x).unwrap(), q - 1) == 1)
            .unwrap_or(self.generator)
    }

    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    pub fn p(&self) -> u64 {
        self.params.p
    }

    pub fn s(&self) -> u32 {
        self.params.s
    }

    pub fn q(&self) -> u64 {
        self.params.q
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// All elements in enumeration order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.params.q as u32).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.params.q as u32).map(FieldElement)
    }

    /// Element with the given coefficients (constant term first, at most `s`).
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.params.s as usize {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients for a degree-{} extension",
                coeffs.len(),
                self.params.s
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.params.p) {
            return Err(Error::BadCoefficient {
                coeff: c,
                p: self.params.p,
            });
        }
        Ok(FieldElement(pack(coeffs, self.params.p) as u32))
    }

    /// Image of an integer under `Z -> F_p ⊂ F_q`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.params.p as i64) as u32)
    }

    pub fn from_index(&self, idx: u64) -> Result<FieldElement> {
        if idx >= self.params.q {
            return Err(Error::InvalidArgument(format!(
                "index {idx} out of range for q = {}",
                self.params.q
            )));
        }
        Ok(FieldElement(idx as u32))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        unpack(x.index(), self.params.p, self.params.s as usize)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let p = self.params.p;
        if self.params.s == 1 {
            return FieldElement(((x.index() + y.index()) % p) as u32);
        }
        let (mut a, mut b) = (x.index(), y.index());
        let (mut out, mut scale) = (0u64, 1u64);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        FieldElement(out as u32)
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        let p = self.params.p;
        if self.params.s == 1 {
            return FieldElement(((p - x.index()) % p) as u32);
        }
        let mut a = x.index();
        let (mut out, mut scale) = (0u64, 1u64);
        while a > 0 {
            out += ((p - a % p) % p) * scale;
            a /= p;
            scale *= p;
        }
        FieldElement(out as u32)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.is_zero() || y.is_zero() {
            return FieldElement::ZERO;
        }
        let n = self.params.q - 1;
        let e = (self.log[x.0 as usize] as u64 + self.log[y.0 as usize] as u64) % n;
        FieldElement(self.exp[e as usize])
    }

    /// Multiplication by polynomial arithmetic, bypassing the log tables.
    pub fn mul_poly(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let (p, s) = (self.params.p, self.params.s as usize);
        let prod = fp_poly::mulmod(
            &unpack(x.index(), p, s),
            &unpack(y.index(), p, s),
            &self.params.modulus,
            p,
        );
        FieldElement(pack(&prod, p) as u32)
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::InverseOfZero);
        }
        let n = self.params.q - 1;
        let e = (n - self.log[x.0 as usize] as u64) % n;
        Ok(FieldElement(self.exp[e as usize]))
    }

    /// `x^e` for any integer exponent; `0^0 = 1`, negative powers of zero fail.
    pub fn pow(&self, x: FieldElement, e: i64) -> Result<FieldElement> {
        if x.is_zero() {
            return match e {
                0 => Ok(FieldElement::ONE),
                e if e > 0 => Ok(FieldElement::ZERO),
                _ => Err(Error::InverseOfZero),
            };
        }
        let n = (self.params.q - 1) as i128;
        let l = self.log[x.0 as usize] as i128;
        let idx = (l * e as i128).rem_euclid(n);
        Ok(FieldElement(self.exp[idx as usize]))
    }

    /// Discrete logarithm to the base of the generator, in `[0, q - 2]`.
    pub fn dlog(&self, x: FieldElement) -> Option<u64> {
        if x.is_zero() {
            None
        } else {
            Some(self.log[x.0 as usize] as u64)
        }
    }

    /// `g^e` with `e` taken modulo `q - 1`.
    pub fn exp(&self, e: u64) -> FieldElement {
        FieldElement(self.exp[(e % (self.params.q - 1)) as usize])
    }

    /// True iff `x` generates `F_q^×`, decided by `x^{(q-1)/ℓ} != 1` for each
    /// prime `ℓ | q - 1` using polynomial arithmetic.
    pub fn order_check(&self, x: FieldElement) -> Result<bool> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(poly_is_generator(&self.params, &self.group_primes, x))
    }

    /// The subgroup `D_k` of nonzero `k`-th powers, ordered `a_i = g^{k i}`.
    pub fn subgroup_dk(&self, k: u64) -> Result<Vec<FieldElement>> {
        let q = self.params.q;
        if k == 0 || (q - 1) % k != 0 {
            return Err(Error::KDoesNotDivide { k, q });
        }
        let n = (q - 1) / k;
        Ok((0..n).map(|i| self.exp(k * i)).collect())
    }
}

fn pack(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c)
}

fn poly_is_generator(params: &FieldParams, primes: &[u64], x: FieldElement) -> bool {
    let (p, s, q) = (params.p, params.s as usize, params.q);
    let xp = unpack(x.index(), p, s);
    if q == 2 {
        return true;
    }
    primes.iter().all(|&l| {
        let r = fp_poly::powmod(&xp, ((q - 1) / l) as u128, &params.modulus, p);
        r != vec![1]
    })
}

/// Convenience subgroup accessor matching [`FieldCtx::subgroup_dk`].
pub fn subgroup_dk(ctx: &FieldCtx, k: u64) -> Result<Vec<FieldElement>> {
    ctx.subgroup_dk(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    // Oracle: a monic polynomial of degree 2 or 3 is irreducible iff it has
    // no root in F_p.
    fn has_root(f: &[u64], p: u64) -> bool {
        (0..p).any(|x| {
            f.iter()
                .rev()
                .fold(0u64, |acc, &c| (acc * x + c) % p)
                == 0
        })
    }

    fn first_rootless(p: u64, s: u32) -> Vec<u64> {
        (0..p.pow(s))
            .map(|idx| {
                let mut f = unpack(idx, p, s as usize);
                f.push(1);
                f
            })
            .find(|f| !has_root(f, p))
            .unwrap()
    }

    #[test]
    fn prime_field_sentinel() {
        assert_eq!(find_irreducible(7, 1).unwrap(), vec![0, 1]);
    }

    #[test]
    fn quadratic_over_f3() {
        assert_eq!(find_irreducible(3, 2).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn cubic_over_f3_matches_root_oracle() {
        let f = find_irreducible(3, 3).unwrap();
        assert_eq!(f, first_rootless(3, 3));
        assert_eq!(f, vec![1, 2, 0, 1]);
    }

    #[test]
    fn low_degree_moduli_match_root_oracle() {
        for p in [3u64, 5, 7, 11, 13] {
            for s in [2u32, 3] {
                assert_eq!(find_irreducible(p, s).unwrap(), first_rootless(p, s));
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(find_irreducible(4, 1), Err(Error::NotOddPrime(4)));
        assert_eq!(find_irreducible(2, 3), Err(Error::NotOddPrime(2)));
        assert_eq!(find_irreducible(3, 0), Err(Error::ZeroDegree));
        assert!(matches!(make_field(9, 1), Err(Error::NotOddPrime(9))));
        assert!(matches!(
            FieldCtx::new(3, 20, 1 << 24),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn canonical_generators() {
        assert_eq!(make_field(7, 1).unwrap().generator(), FieldElement(3));
        assert_eq!(make_field(3, 1).unwrap().generator(), FieldElement(2));
        let f9 = make_field(3, 2).unwrap();
        let g = f9.generator();
        assert_ne!(f9.pow(g, 4).unwrap(), f9.one());
        assert_eq!(f9.pow(g, 8).unwrap(), f9.one());
    }

    #[test]
    fn order_check_examples() {
        let f7 = make_field(7, 1).unwrap();
        assert!(f7.order_check(f7.from_int(3)).unwrap());
        assert!(!f7.order_check(f7.from_int(2)).unwrap());
        assert!(!f7.order_check(f7.one()).unwrap());
        assert_eq!(f7.order_check(f7.zero()), Err(Error::ZeroElement));
    }

    #[test]
    fn f9_product_example() {
        // (x+1)(x+2) = x^2 + 2 = 1 in F_3[x]/(x^2+1)
        let f9 = make_field(3, 2).unwrap();
        let a = f9.element(&[1, 1]).unwrap();
        let b = f9.element(&[2, 1]).unwrap();
        assert_eq!(f9.mul(a, b), f9.one());
        assert_eq!(f9.mul_poly(a, b), f9.one());
        assert_eq!(f9.inv(f9.one()).unwrap(), f9.one());
        assert_eq!(f9.neg(f9.zero()), f9.zero());
        assert_eq!(f9.inv(f9.zero()), Err(Error::InverseOfZero));
    }

    #[test]
    fn subgroup_examples() {
        let f7 = make_field(7, 1).unwrap();
        let d2: Vec<u64> = f7.subgroup_dk(2).unwrap().iter().map(|x| x.index()).collect();
        assert_eq!(d2, vec![1, 2, 4]);
        assert_eq!(f7.subgroup_dk(6).unwrap(), vec![f7.one()]);
        let d1 = f7.subgroup_dk(1).unwrap();
        assert_eq!(d1.len(), 6);
        assert_eq!(d1[1], f7.generator());
        assert!(matches!(
            f7.subgroup_dk(4),
            Err(Error::KDoesNotDivide { k: 4, q: 7 })
        ));
    }

    #[test]
    fn dlog_is_a_bijection() {
        for (p, s) in [(3, 1), (5, 2), (3, 4), (7, 2), (11, 1)] {
            let f = make_field(p, s).unwrap();
            let q = f.q();
            let logs: BTreeSet<u64> = f.nonzero_elements().map(|x| f.dlog(x).unwrap()).collect();
            assert_eq!(logs, (0..q - 1).collect());
            for e in 0..q - 1 {
                assert_eq!(f.dlog(f.exp(e)), Some(e));
            }
        }
    }

    #[test]
    fn table_and_polynomial_products_agree() {
        for (p, s) in [(3, 2), (3, 3), (5, 2), (7, 2)] {
            let f = make_field(p, s).unwrap();
            for x in f.elements() {
                for y in f.elements() {
                    assert_eq!(f.mul(x, y), f.mul_poly(x, y));
                }
            }
        }
    }

    #[test]
    fn next_generator_differs() {
        let f7 = make_field(7, 1).unwrap();
        let g2 = f7.next_generator();
        assert_eq!(g2, FieldElement(5));
        let f = f7.with_generator(g2).unwrap();
        assert_eq!(f.generator(), g2);
        assert_eq!(f7.with_generator(f7.from_int(2)).unwrap_err(), Error::NotAGenerator);
    }
}
