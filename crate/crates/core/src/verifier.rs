//! Checks of the determinant identities for `A_k(t)` and of every step used
//! to derive them, assembled into a [`VerificationReport`] per `(q, k)`.
//!
//! Routing depends only on `q mod 4` and `q mod 2k`:
//!
//! * `q ≡ 1 (mod 2k)`: `-1 ∈ D_k`, columns pair up, `det A_k(t) = 0`.
//! * `q ≡ 3 (mod 4)`, `k = 2`: `det A_2(t) = ((q-1)/2 · t - 1) q^{(q-3)/4}`.
//! * `q ≡ 1 (mod 4)`, `q ≢ 1 (mod 2k)`: `A_k(t)` is a palindromic circulant
//!   and `det A_k(t) = (n t - (c_k + d_k + 2)/k) u_k^2`.
//!
//! Anything else (`q ≡ 3 (mod 4)` with `k ≡ 2 (mod 4)`, `k > 2`) is reported
//! as unsupported but still gets the determinant and the eigenvalue checks.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::char_sums::{all_lambdas, char_sum_power, curve_count, jacobi_sum};
use crate::characters::{chi_pow, phi, CharValue};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::matrix::{bareiss_det, circulant, det_linear, integer_sqrt_exact, BigIntMatrix, LinearPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Branch {
    #[serde(rename = "part_i")]
    PartI,
    #[serde(rename = "part_ii")]
    PartII,
    #[serde(rename = "part_iii")]
    PartIII,
    #[serde(rename = "unsupported")]
    Unsupported,
}

impl Branch {
    /// Branch for `(q, k)`; assumes `k | q - 1`.
    pub fn classify(q: u64, k: u64) -> Branch {
        if (q - 1) % (2 * k) == 0 {
            Branch::PartI
        } else if q % 4 == 3 && k == 2 {
            Branch::PartII
        } else if q % 4 == 1 {
            Branch::PartIII
        } else {
            Branch::Unsupported
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::PartI => "part_i",
            Branch::PartII => "part_ii",
            Branch::PartIII => "part_iii",
            Branch::Unsupported => "unsupported",
        }
    }

    /// Short name used on the command line: `i`, `ii`, `iii`, `unsupported`.
    pub fn short_name(self) -> &'static str {
        match self {
            Branch::PartI => "i",
            Branch::PartII => "ii",
            Branch::PartIII => "iii",
            Branch::Unsupported => "unsupported",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub q: u64,
    pub p: u64,
    pub s: u32,
    pub k: u64,
    pub n: u64,
    pub branch: Branch,
    pub modulus: Vec<u64>,
    pub generator: Vec<u64>,
    pub det: LinearPoly,
    pub c_k: Option<i64>,
    pub d_k: Option<i64>,
    pub u_k: Option<BigInt>,
    /// Part (iii) with `det ≡ 0`; the factorization holds with `u_k = 0`.
    pub degenerate: bool,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn push_check(&mut self, check: Check) {
        self.checks.push(check);
    }
}

fn entry(ctx: &FieldCtx, x: FieldElement, y: FieldElement) -> i64 {
    i64::from(phi(ctx, ctx.add(x, y))) + i64::from(phi(ctx, ctx.sub(x, y)))
}

/// `A_k(0)` over the given enumeration of `D_k`.
pub fn build_ak_from(ctx: &FieldCtx, elements: &[FieldElement]) -> BigIntMatrix {
    BigIntMatrix::from_fn(elements.len(), |i, j| {
        BigInt::from(entry(ctx, elements[i], elements[j]))
    })
}

/// `A_k(0)` with `a_i = g^{k i}`; `A_k(t) = A_k(0) + t·J`.
pub fn build_ak(ctx: &FieldCtx, k: u64) -> Result<BigIntMatrix> {
    Ok(build_ak_from(ctx, &ctx.subgroup_dk(k)?))
}

fn skeleton(ctx: &FieldCtx, k: u64, branch: Branch) -> Result<VerificationReport> {
    let q = ctx.q();
    if k == 0 || (q - 1) % k != 0 {
        return Err(Error::KDoesNotDivide { k, q });
    }
    Ok(VerificationReport {
        q,
        p: ctx.p(),
        s: ctx.s(),
        k,
        n: (q - 1) / k,
        branch,
        modulus: ctx.params().modulus.clone(),
        generator: ctx.coeffs(ctx.generator()),
        det: LinearPoly::default(),
        c_k: None,
        d_k: None,
        u_k: None,
        degenerate: false,
        checks: Vec::new(),
        elapsed: Duration::ZERO,
    })
}

fn expect_branch(ctx: &FieldCtx, k: u64, expected: Branch) -> Result<()> {
    let q = ctx.q();
    if k == 0 || (q - 1) % k != 0 {
        return Err(Error::KDoesNotDivide { k, q });
    }
    let found = Branch::classify(q, k);
    if found != expected {
        return Err(Error::BranchMismatch {
            q,
            k,
            expected: expected.as_str(),
            found: found.as_str(),
        });
    }
    Ok(())
}

fn record_curves(ctx: &FieldCtx, report: &mut VerificationReport) -> Result<(i64, i64)> {
    let c = curve_count(ctx, report.k, 1)?.trace;
    let d = curve_count(ctx, report.k, -1)?.trace;
    report.c_k = Some(c);
    report.d_k = Some(d);
    Ok((c, d))
}

/// Routes `(q, k)` to its branch and runs every check for it.
pub fn verify(ctx: &FieldCtx, k: u64) -> Result<VerificationReport> {
    let q = ctx.q();
    if k == 0 || (q - 1) % k != 0 {
        return Err(Error::KDoesNotDivide { k, q });
    }
    match Branch::classify(q, k) {
        Branch::PartI => verify_part_i(ctx, k),
        Branch::PartII => verify_part_ii(ctx),
        Branch::PartIII => verify_part_iii(ctx, k),
        Branch::Unsupported => verify_unsupported(ctx, k),
    }
}

/// `q ≡ 1 (mod 2k)`: `det A_k(t) = 0` and every column has a twin.
pub fn verify_part_i(ctx: &FieldCtx, k: u64) -> Result<VerificationReport> {
    expect_branch(ctx, k, Branch::PartI)?;
    let start = Instant::now();
    let mut report = skeleton(ctx, k, Branch::PartI)?;
    record_curves(ctx, &mut report)?;
    let elems = ctx.subgroup_dk(k)?;
    let a0 = build_ak_from(ctx, &elems);
    report.det = det_linear(&a0)?;
    report.push_check(Check::new(
        "det_zero",
        report.det.is_zero(),
        format!("det A_k(t) = {}", report.det),
    ));

    let n = elems.len();
    let mut bad = Vec::new();
    if n % 2 != 0 {
        bad.push("n is odd".to_string());
    } else {
        for j in 0..n {
            let twin = (j + n / 2) % n;
            if twin == j || elems[twin] != ctx.neg(elems[j]) || a0.column(j) != a0.column(twin) {
                bad.push(format!("column {j}"));
            }
        }
    }
    report.push_check(Check::new(
        "column_witness",
        bad.is_empty(),
        if bad.is_empty() {
            format!("a_(j+{}) = -a_j and columns coincide for all {n} columns", n / 2)
        } else {
            format!("no twin for {}", bad.join(", "))
        },
    ));
    report.elapsed = start.elapsed();
    Ok(report)
}

/// `q ≡ 3 (mod 4)`, `k = 2`.
pub fn verify_part_ii(ctx: &FieldCtx) -> Result<VerificationReport> {
    let k = 2;
    expect_branch(ctx, k, Branch::PartII)?;
    let start = Instant::now();
    let q = ctx.q();
    let mut report = skeleton(ctx, k, Branch::PartII)?;
    record_curves(ctx, &mut report)?;
    let n = report.n;
    let a0 = build_ak(ctx, k)?;
    report.det = det_linear(&a0)?;

    let power = BigInt::from(q).pow(((q - 3) / 4) as u32);
    let expected = LinearPoly {
        a: -&power,
        b: &power * n,
    };
    report.push_check(Check::new(
        "det_closed_form",
        report.det == expected,
        format!("det A_2(t) = {}, expected {}", report.det, expected),
    ));
    report.push_check(Check::new(
        "det_at_zero",
        report.det.a == -&power,
        format!("det A_2(0) = {}", report.det.a),
    ));
    let sums = a0.row_sums();
    let rows_ok = sums.iter().all(|s| *s == BigInt::from(-1));
    report.push_check(Check::new(
        "row_sums",
        rows_ok,
        if rows_ok {
            format!("every row of A_2(t) sums to {n}*t - 1")
        } else {
            "row sum differs from n*t - 1".to_string()
        },
    ));

    let lambdas = all_lambdas(ctx, k)?;
    let checks = eigen_checks(ctx, k, &a0, &report.det.a, &lambdas)?;
    report.checks.extend(checks);
    report.checks.extend(jacobi_chain(ctx, &lambdas, &power)?);
    report.elapsed = start.elapsed();
    Ok(report)
}

// λ_0 = -1, λ_{2m} = J(φ, χ^{2m}), |λ_{2m}|^2 = q, and the product formula
// det A_2(0) = λ_0 Π_{m=1}^{(n-1)/2} |λ_{2m}|^2.
fn jacobi_chain(ctx: &FieldCtx, lambdas: &[CycInt], power: &BigInt) -> Result<Vec<Check>> {
    let q = ctx.q();
    let n = lambdas.len() as u64;
    let mut out = Vec::new();
    let l0 = lambdas[0].as_integer();
    out.push(Check::new(
        "lambda0",
        l0 == Some(BigInt::from(-1)),
        format!("lambda_0 = {}", fmt_opt(&l0)),
    ));

    let half = ((q - 1) / 2) as i64;
    let mut mismatch = Vec::new();
    let mut bad_norm = Vec::new();
    let mut product = l0.clone().unwrap_or_default();
    for m in 1..=(n - 1) / 2 {
        let lam = &lambdas[(2 * m) as usize];
        let jac = jacobi_sum(ctx, half, 2 * m as i64, n)?;
        if !lam.equals(&jac)? {
            mismatch.push(m);
        }
        let norm = lam.mul(&lam.conj())?.as_integer();
        if norm != Some(BigInt::from(q)) {
            bad_norm.push(m);
        }
        product *= norm.unwrap_or_default();
    }
    out.push(Check::new(
        "jacobi_identity",
        mismatch.is_empty(),
        if mismatch.is_empty() {
            format!("lambda_2m = J(phi, chi^2m) for 1 <= m <= {}", (n - 1) / 2)
        } else {
            format!("mismatch at m = {mismatch:?}")
        },
    ));
    out.push(Check::new(
        "jacobi_norm",
        bad_norm.is_empty(),
        if bad_norm.is_empty() {
            format!("|lambda_2m|^2 = {q} for all m")
        } else {
            format!("norm differs from q at m = {bad_norm:?}")
        },
    ));
    out.push(Check::new(
        "eigen_product_pairs",
        product == -power,
        format!("lambda_0 * prod |lambda_2m|^2 = {product}"),
    ));
    Ok(out)
}

fn fmt_opt(x: &Option<BigInt>) -> String {
    x.as_ref()
        .map(|v| v.to_string())
        .unwrap_or_else(|| "not an integer".to_string())
}

/// `q ≡ 1 (mod 4)`, `k | q - 1`, `q ≢ 1 (mod 2k)`.
pub fn verify_part_iii(ctx: &FieldCtx, k: u64) -> Result<VerificationReport> {
    expect_branch(ctx, k, Branch::PartIII)?;
    let start = Instant::now();
    let mut report = skeleton(ctx, k, Branch::PartIII)?;
    let (c, d) = record_curves(ctx, &mut report)?;
    let n = report.n as usize;
    let kk = BigInt::from(k);
    report.push_check(Check::new("k_even", k % 2 == 0, format!("k = {k}")));

    let a0 = build_ak(ctx, k)?;
    report.det = det_linear(&a0)?;

    let one = ctx.one();
    let b0: Vec<BigInt> = (0..n as u64)
        .map(|i| {
            let x = ctx.exp(k * i);
            BigInt::from(
                i64::from(phi(ctx, ctx.add(x, one))) + i64::from(phi(ctx, ctx.sub(x, one))),
            )
        })
        .collect();
    let circ = det_linear(&circulant(&b0))?;
    report.push_check(Check::new(
        "circulant_equivalence",
        circ == report.det,
        format!("det C(b) = {circ}"),
    ));
    let palindromic = (1..n).all(|i| b0[i] == b0[n - i]);
    report.push_check(Check::new(
        "palindrome",
        palindromic,
        if palindromic {
            "b_i = b_(n-i) for 1 <= i <= n-1"
        } else {
            "b is not palindromic"
        },
    ));

    let plus = char_sum_power(ctx, k, 1)?;
    let minus = char_sum_power(ctx, k, -1)?;
    report.push_check(Check::new(
        "curve_sums",
        plus == -c - 1 && minus == -d - 1,
        format!("sum phi(x^k+1) = {plus}, c_k = {c}; sum phi(x^k-1) = {minus}, d_k = {d}"),
    ));

    let total: BigInt = b0.iter().sum();
    let cd2 = BigInt::from(c + d + 2);
    let divisible = cd2.is_multiple_of(&kk);
    let identity = &total * &kk == -&cd2;
    let needs_integrality = !report.det.b.is_zero();
    report.push_check(Check::new(
        "sum_identity",
        identity && (divisible || !needs_integrality),
        format!(
            "sum b_i = {n}*t + {total}; (c_k+d_k+2)/k = {cd2}/{k}{}",
            if divisible { "" } else { " (not integral)" }
        ),
    ));

    let det = report.det.clone();
    if det.b.is_zero() {
        report.degenerate = true;
        report.u_k = Some(BigInt::zero());
        report.push_check(Check::new(
            "square_extraction",
            det.a.is_zero(),
            if det.a.is_zero() {
                "degenerate: det A_k(t) = 0, u_k = 0".to_string()
            } else {
                format!("t-coefficient vanishes but constant term is {}", det.a)
            },
        ));
    } else {
        let (quo, rem) = det.b.div_rem(&BigInt::from(n));
        let root = if rem.is_zero() { integer_sqrt_exact(&quo) } else { None };
        match root {
            Some(u) => {
                let expected_a = -(&cd2 / &kk) * &quo;
                let ok = divisible && det.a == expected_a;
                report.push_check(Check::new(
                    "square_extraction",
                    ok,
                    format!("u_k^2 = {quo}; constant term {} vs {}", det.a, expected_a),
                ));
                report.u_k = Some(u);
            }
            None => report.push_check(Check::new(
                "square_extraction",
                false,
                format!("t-coefficient / n = {quo} (remainder {rem}) is not a perfect square"),
            )),
        }
    }

    let lambdas = all_lambdas(ctx, k)?;
    report
        .checks
        .extend(eigen_checks(ctx, k, &a0, &det.a, &lambdas)?);
    report.elapsed = start.elapsed();
    Ok(report)
}

fn verify_unsupported(ctx: &FieldCtx, k: u64) -> Result<VerificationReport> {
    expect_branch(ctx, k, Branch::Unsupported)?;
    let start = Instant::now();
    let mut report = skeleton(ctx, k, Branch::Unsupported)?;
    record_curves(ctx, &mut report)?;
    let a0 = build_ak(ctx, k)?;
    report.det = det_linear(&a0)?;
    let lambdas = all_lambdas(ctx, k)?;
    let det0 = report.det.a.clone();
    report
        .checks
        .extend(eigen_checks(ctx, k, &a0, &det0, &lambdas)?);
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Eigenvector checks for `q ≢ 1 (mod 2k)`: `A_k(0) v_m = λ_m v_m` exactly in
/// `Z[ζ_n]`, distinct Vandermonde nodes, conjugate pairing, and
/// `Π λ_m = det A_k(0)`.
pub fn verify_eigen_general(ctx: &FieldCtx, k: u64) -> Result<Vec<Check>> {
    let a0 = build_ak(ctx, k)?;
    let det0 = bareiss_det(&a0);
    let lambdas = all_lambdas(ctx, k)?;
    eigen_checks(ctx, k, &a0, &det0, &lambdas)
}

fn eigen_checks(
    ctx: &FieldCtx,
    k: u64,
    a0: &BigIntMatrix,
    det0: &BigInt,
    lambdas: &[CycInt],
) -> Result<Vec<Check>> {
    let elems = ctx.subgroup_dk(k)?;
    let n = elems.len();
    let small: Vec<i64> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| i64::try_from(a0.get(i, j)).expect("entries lie in [-2, 2]"))
        .collect();
    let mut out = Vec::new();

    let mut failures = Vec::new();
    for (m, lam) in lambdas.iter().enumerate() {
        let exps = elems
            .iter()
            .map(|&a| match chi_pow(ctx, m as i64, a, n as u64)? {
                CharValue::Root { exp, .. } => Ok(exp),
                CharValue::Zero => unreachable!("D_k excludes zero"),
            })
            .collect::<Result<Vec<u64>>>()?;
        for i in 0..n {
            let mut lhs = vec![0i64; n];
            for j in 0..n {
                lhs[exps[j] as usize] += small[i * n + j];
            }
            let lhs = CycInt::from_small(n, &lhs)?;
            let rhs = lam.shift(exps[i]);
            if !lhs.equals(&rhs)? {
                failures.push((m, i));
                break;
            }
        }
    }
    out.push(Check::new(
        "eigenvectors",
        failures.is_empty(),
        if failures.is_empty() {
            format!("A_k(0) v_m = lambda_m v_m for all {n} characters")
        } else {
            format!("fails at (m, row) = {failures:?}")
        },
    ));

    let mut nodes = elems
        .iter()
        .map(|&a| match chi_pow(ctx, 1, a, n as u64)? {
            CharValue::Root { exp, .. } => Ok(exp),
            CharValue::Zero => unreachable!("D_k excludes zero"),
        })
        .collect::<Result<Vec<u64>>>()?;
    nodes.sort_unstable();
    nodes.dedup();
    out.push(Check::new(
        "vandermonde",
        nodes.len() == n,
        format!("{} distinct values chi(a_i) among {n}", nodes.len()),
    ));

    let mut unpaired = Vec::new();
    for m in 1..n {
        if !lambdas[m].conj().equals(&lambdas[n - m])? {
            unpaired.push(m);
        }
    }
    out.push(Check::new(
        "conj_pairing",
        unpaired.is_empty(),
        if unpaired.is_empty() {
            "conj(lambda_m) = lambda_(n-m)".to_string()
        } else {
            format!("pairing fails at m = {unpaired:?}")
        },
    ));

    let mut product = CycInt::one(n);
    for lam in lambdas {
        product = product.mul(lam)?.normalized();
    }
    let value = product.as_integer();
    out.push(Check::new(
        "eigen_product",
        value.as_ref() == Some(det0),
        format!("prod lambda_m = {}, det A_k(0) = {det0}", fmt_opt(&value)),
    ));
    Ok(out)
}

/// Recomputes `det A_k(t)` under the next generator and under random
/// reorderings of `D_k`; all results must coincide.
pub fn verify_generator_independence(
    ctx: &FieldCtx,
    k: u64,
    seed: u64,
    permutations: usize,
) -> Result<Check> {
    let elems = ctx.subgroup_dk(k)?;
    let base = det_linear(&build_ak_from(ctx, &elems))?;
    let mut diffs = Vec::new();

    let other = ctx.with_generator(ctx.next_generator())?;
    let alt = det_linear(&build_ak(&other, k)?)?;
    if alt != base {
        diffs.push(format!("generator {:?}: {alt}", other.coeffs(other.generator())));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..permutations {
        let mut shuffled = elems.clone();
        shuffled.shuffle(&mut rng);
        let d = det_linear(&build_ak_from(ctx, &shuffled))?;
        if d != base {
            diffs.push(format!("permutation: {d}"));
        }
    }
    Ok(Check::new(
        "generator_independence",
        diffs.is_empty(),
        if diffs.is_empty() {
            format!("det {base} under next generator and {permutations} random orders")
        } else {
            diffs.join("; ")
        },
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaOutcome {
    pub pass: bool,
    pub sum: BigInt,
    pub det: BigInt,
    /// Non-negative `u` with `det = sum · u^2`, when `sum != 0`.
    pub root: Option<BigInt>,
}

/// For odd `n` and palindromic `b`, `det C(b) = (Σ b_i) u^2` for some integer `u`.
pub fn verify_lemma_circulant_square(b: &[BigInt]) -> Result<LemmaOutcome> {
    let n = b.len();
    if n % 2 == 0 {
        return Err(Error::EvenDimension(n));
    }
    if (1..n).any(|i| b[i] != b[n - i]) {
        return Err(Error::NotPalindromic);
    }
    let det = bareiss_det(&circulant(b));
    let sum: BigInt = b.iter().sum();
    if sum.is_zero() {
        return Ok(LemmaOutcome {
            pass: det.is_zero(),
            sum,
            det,
            root: None,
        });
    }
    let (quo, rem) = det.div_rem(&sum);
    let root = if rem.is_zero() { integer_sqrt_exact(&quo) } else { None };
    Ok(LemmaOutcome {
        pass: root.is_some(),
        sum,
        det,
        root,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub p: u64,
    pub computed: LinearPoly,
    pub expected: LinearPoly,
}

impl CrossCheck {
    pub fn pass(&self) -> bool {
        self.computed == self.expected
    }
}

fn prime_field(p: u64) -> Result<FieldCtx> {
    crate::field::make_field(p, 1)
}

/// `det [t + (i - j | p)]_{1 <= i, j <= p-1}` against
/// `(-1)^{(p-1)/2} p^{(p-3)/2} ((p-1) t + (-1)^{(p-1)/2})`.
pub fn carlitz_cross_check(p: u64) -> Result<CrossCheck> {
    let ctx = prime_field(p)?;
    let m = BigIntMatrix::from_fn((p - 1) as usize, |i, j| {
        BigInt::from(phi(&ctx, ctx.from_int(i as i64 - j as i64)).value())
    });
    let computed = det_linear(&m)?;
    let eps = if (p - 1) / 2 % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let power = BigInt::from(p).pow(((p - 3) / 2) as u32);
    let lead = &eps * &power;
    let expected = LinearPoly {
        a: &lead * &eps,
        b: &lead * BigInt::from(p - 1),
    };
    Ok(CrossCheck {
        p,
        computed,
        expected,
    })
}

/// `det [t + (i + j - 1 | p)]_{1 <= i, j <= (p-1)/2}` against `-2^{(p-1)/2} t`
/// for `p ≡ 3 (mod 4)`.
pub fn chapman_cross_check(p: u64) -> Result<CrossCheck> {
    if p % 4 != 3 {
        return Err(Error::InvalidArgument(format!("{p} is not 3 mod 4")));
    }
    let ctx = prime_field(p)?;
    // zero-based i, j: (i + 1) + (j + 1) - 1 = i + j + 1
    let m = BigIntMatrix::from_fn(((p - 1) / 2) as usize, |i, j| {
        BigInt::from(phi(&ctx, ctx.from_int((i + j + 1) as i64)).value())
    });
    let computed = det_linear(&m)?;
    let expected = LinearPoly {
        a: BigInt::zero(),
        b: -BigInt::from(2).pow(((p - 1) / 2) as u32),
    };
    Ok(CrossCheck {
        p,
        computed,
        expected,
    })
}

/// Magnitude helper for logs.
pub fn bit_length(x: &BigInt) -> u64 {
    x.abs().bits()
}
