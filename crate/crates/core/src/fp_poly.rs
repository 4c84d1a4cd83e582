// Dense polynomials over F_p, coefficients constant term first.

pub(crate) fn trim(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo the monic polynomial `f`.
pub(crate) fn rem_monic(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let d = f.len() - 1;
    while r.len() > d {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - d;
        if c != 0 {
            for (j, &fj) in f.iter().enumerate() {
                r[shift + j] = (r[shift + j] + (p - c) * fj % p) % p;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

pub(crate) fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    rem_monic(&mul(a, b, p), f, p)
}

pub(crate) fn powmod(base: &[u64], mut e: u128, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem_monic(&[1], f, p);
    let mut b = rem_monic(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, f, p);
        }
        b = mulmod(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Monic gcd (empty vector for gcd(0, 0)).
pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let lead = inv_mod(*y.last().unwrap(), p);
        let monic: Vec<u64> = y.iter().map(|&c| c * lead % p).collect();
        let r = rem_monic(&x, &monic, p);
        x = monic;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let inv = inv_mod(lead, p);
        for c in x.iter_mut() {
            *c = *c * inv % p;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remainder_of_x_squared_mod_x2_plus_1() {
        // x^2 ≡ -1 mod (x^2 + 1) over F_3
        assert_eq!(rem_monic(&[0, 0, 1], &[1, 0, 1], 3), vec![2]);
    }

    #[test]
    fn gcd_of_coprime_linear_factors() {
        // (x + 1) and (x + 2) over F_5
        assert_eq!(gcd(&[1, 1], &[2, 1], 5), vec![1]);
        // (x+1)(x+2) and (x+1)
        let prod = mul(&[1, 1], &[2, 1], 5);
        assert_eq!(gcd(&prod, &[1, 1], 5), vec![1, 1]);
    }
}
