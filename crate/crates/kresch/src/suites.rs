//! Named verification suites.
//!
//! Each suite sweeps one identity over an exact grid and reports every
//! cell where the two sides differ. Suites never assert internally: a
//! broken identity produces a failing report with both sides verbatim,
//! so the report alone is enough to file a bug - or, for a conjecture,
//! to announce a counterexample.
//!
//! Stable suite names: `lemma340`, `c310a`, `c310b`, `kernel`, `c320`.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, Index, Rational};
use crate::racah::{corollary320_lhs, corollary320_rhs};
use crate::transforms::{
    inversion_kernel, tilde_fixed_point_forward_solve, tilde_transform, Sequence,
};

/// The stable suite identifiers, in the order `run_all` executes them.
pub const SUITE_NAMES: [&str; 5] = ["lemma340", "c310a", "c310b", "kernel", "c320"];

/// One cell where the checked identity did not hold, with both computed
/// sides verbatim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureCase {
    pub params: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteStatus {
    /// Every case checked and none failed.
    Pass,
    /// At least one case failed; see `failures`.
    Fail,
    /// The suite could not run (bad range); see `error`.
    Error,
}

impl std::fmt::Display for SuiteStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SuiteStatus::Pass => "pass",
            SuiteStatus::Fail => "fail",
            SuiteStatus::Error => "error",
        })
    }
}

/// Machine-readable outcome of one suite run.
///
/// Deterministic apart from `elapsed_ms`; serializes to JSON with
/// rationals in canonical text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub suite: String,
    pub parameter_range: String,
    pub status: SuiteStatus,
    pub cases_run: u64,
    /// Empty iff the suite passed.
    pub failures: Vec<FailureCase>,
    pub elapsed_ms: u64,
    /// Set iff `status` is `error`.
    pub error: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == SuiteStatus::Pass
    }

    fn errored(suite: &str, parameter_range: String, err: Error) -> Self {
        VerificationReport {
            schema_version: 1,
            suite: suite.to_owned(),
            parameter_range,
            status: SuiteStatus::Error,
            cases_run: 0,
            failures: Vec::new(),
            elapsed_ms: 0,
            error: Some(err.to_string()),
        }
    }
}

struct SuiteRun {
    suite: &'static str,
    parameter_range: String,
    started: Instant,
    cases_run: u64,
    failures: Vec<FailureCase>,
}

impl SuiteRun {
    fn new(suite: &'static str, parameter_range: String) -> Self {
        SuiteRun {
            suite,
            parameter_range,
            started: Instant::now(),
            cases_run: 0,
            failures: Vec::new(),
        }
    }

    /// Checks one grid cell: counts it and records a failure on mismatch.
    fn case(&mut self, params: impl FnOnce() -> String, lhs: &Rational, rhs: &Rational) {
        self.cases_run += 1;
        if lhs != rhs {
            self.failures.push(FailureCase {
                params: params(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }

    /// An additional assertion folded into an already-counted cell.
    fn extra_check(&mut self, params: impl FnOnce() -> String, lhs: &Rational, rhs: &Rational) {
        if lhs != rhs {
            self.failures.push(FailureCase {
                params: params(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }

    fn finish(self) -> VerificationReport {
        let status = if self.failures.is_empty() {
            SuiteStatus::Pass
        } else {
            SuiteStatus::Fail
        };
        VerificationReport {
            schema_version: 1,
            suite: self.suite.to_owned(),
            parameter_range: self.parameter_range,
            status,
            cases_run: self.cases_run,
            failures: self.failures,
            elapsed_ms: self.started.elapsed().as_millis() as u64,
            error: None,
        }
    }
}

/// `sum_{k=0}^{n-1} (-1)^k (2k+1) C(2n+1, n-k)`, maintained by the exact
/// ratio update `C(2n+1, n-k-1) = C(2n+1, n-k) (n-k) / (n+k+2)` so the
/// whole row costs O(n) big-integer steps.
fn lemma340_lhs(n: Index) -> Rational {
    let mut c = binomial(2 * n + 1, n).numer().clone();
    let mut acc = BigInt::zero();
    for k in 0..n {
        let term = BigInt::from(2 * k + 1) * &c;
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        c *= BigInt::from(n - k);
        c /= BigInt::from(n + k + 2);
    }
    Rational::from(acc)
}

fn lemma340_rhs(n: Index) -> Rational {
    let v = Rational::from(2 * n + 1);
    if n % 2 == 1 {
        v
    } else {
        -v
    }
}

/// Checks the alternating binomial row sum
/// `sum_{k=0}^{n-1} (-1)^k (2k+1) C(2n+1, n-k) = (-1)^(n-1) (2n+1)`
/// for every `1 <= n <= n_max`.
pub fn suite_lemma340(n_max: Index) -> Result<VerificationReport> {
    suite_lemma340_with_rhs(n_max, lemma340_rhs)
}

/// [`suite_lemma340`] against a caller-supplied right side. Exists so
/// tests can corrupt the oracle and watch the suite fail; anything but
/// the canonical right side is expected to produce failures.
pub fn suite_lemma340_with_rhs(
    n_max: Index,
    rhs: impl Fn(Index) -> Rational,
) -> Result<VerificationReport> {
    if n_max < 1 {
        return Err(Error::InvalidRange { lo: 1, hi: n_max });
    }
    let mut run = SuiteRun::new("lemma340", format!("1 <= n <= {n_max}"));
    for n in 1..=n_max {
        run.case(|| format!("n={n}"), &lemma340_lhs(n), &rhs(n));
    }
    Ok(run.finish())
}

/// All signed terms `(-1)^k (2k+1) C(n-m, k-m) / ((n+k+1) C(n+k, m+k))`
/// for `k = m..=n`, by a ratio recurrence costing O(1) per term.
fn c310a_terms(m: Index, n: Index) -> Vec<Rational> {
    // k = m: (2m+1) / ((n+m+1) C(n+m, 2m)), sign (-1)^m
    let mut coeff =
        Rational::from(2 * m + 1) / (Rational::from(n + m + 1) * binomial(n + m, 2 * m));
    if m % 2 == 1 {
        coeff = -coeff;
    }
    let mut terms = Vec::with_capacity((n - m + 1) as usize);
    terms.push(coeff.clone());
    for k in m..n {
        // signed ratio: -(2k+3)(n-k)(m+k+1) / ((2k+1)(k-m+1)(n+k+2))
        let num = Rational::from((2 * k + 3) * (n - k) * (m + k + 1));
        let den = Rational::from((2 * k + 1) * (k - m + 1) * (n + k + 2));
        coeff = -(coeff * num / den);
        terms.push(coeff.clone());
    }
    terms
}

fn c310a_lhs(m: Index, n: Index) -> Rational {
    let mut acc = Rational::zero();
    for t in c310a_terms(m, n) {
        acc += t;
    }
    acc
}

/// `sum_k (2k+1) (-n)_k / (n+1)_{k+1}`: the Pochhammer form of the `m=0`
/// row, via the same coefficient recurrence the inverse transform uses.
fn c310a_m0_pochhammer(n: Index) -> Rational {
    let mut coeff = Rational::from(n + 1).recip();
    let mut acc = coeff.clone();
    for k in 0..n {
        let num = Rational::from_integer((2 * k as i64 + 3) * (k as i64 - n as i64));
        let den = Rational::from((2 * k + 1) * (n + k + 2));
        coeff *= num / den;
        acc += &coeff;
    }
    acc
}

/// Checks the orthogonality-style sum
/// `sum_{k=m}^{n} (-1)^k (2k+1) C(n-m,k-m) / ((n+k+1) C(n+k,m+k)) = (-1)^n [m=n]`
/// over the triangle `0 <= m <= n <= n_max` - `(n_max+1)(n_max+2)/2`
/// cases. On the `m = 0` row the equivalent Pochhammer form is checked
/// against the binomial form as part of the same cell.
pub fn suite_c310a(n_max: Index) -> Result<VerificationReport> {
    let mut run = SuiteRun::new("c310a", format!("0 <= m <= n <= {n_max}"));
    for n in 0..=n_max {
        for m in 0..=n {
            let lhs = c310a_lhs(m, n);
            let rhs = if m == n {
                if n % 2 == 0 {
                    Rational::one()
                } else {
                    -Rational::one()
                }
            } else {
                Rational::zero()
            };
            run.case(|| format!("n={n}, m={m}"), &lhs, &rhs);
            if m == 0 {
                let poch = c310a_m0_pochhammer(n);
                run.extra_check(|| format!("n={n}, m=0, pochhammer form"), &poch, &lhs);
            }
        }
    }
    Ok(run.finish())
}

/// `sum_{k=0}^{n} (-1)^k C(n,k) C(n+k,k) / (2k+1)`, with both binomials
/// maintained incrementally.
fn c310b_lhs(n: Index) -> Rational {
    let mut c_n_k = BigInt::from(1u32);
    let mut c_nk_k = BigInt::from(1u32);
    let mut acc = Rational::zero();
    for k in 0..=n {
        let prod = Rational::from(&c_n_k * &c_nk_k) / Rational::from(2 * k + 1);
        if k % 2 == 0 {
            acc += prod;
        } else {
            acc -= prod;
        }
        if k < n {
            c_n_k *= BigInt::from(n - k);
            c_n_k /= BigInt::from(k + 1);
            c_nk_k *= BigInt::from(n + k + 1);
            c_nk_k /= BigInt::from(k + 1);
        }
    }
    acc
}

/// Checks that the sequence `1/(2n+1)` is fixed by the tilde transform,
/// term by term: `sum_k (-1)^k C(n,k) C(n+k,k) / (2k+1) = 1/(2n+1)` for
/// `0 <= n <= n_max`. Additionally re-derives the sequence by forward
/// substitution from `x_0 = 1` up to index `min(n_max, 32)`, confirming
/// it is the *only* fixed point with that leading entry. Runs
/// `(n_max+1) + (min(n_max,32)+1)` cases.
pub fn suite_c310b(n_max: Index) -> Result<VerificationReport> {
    let solve_max = n_max.min(32);
    let mut run = SuiteRun::new(
        "c310b",
        format!("0 <= n <= {n_max}; fixed-point solve to {solve_max}"),
    );
    for n in 0..=n_max {
        let rhs = Rational::from(2 * n + 1).recip();
        run.case(|| format!("n={n}"), &c310b_lhs(n), &rhs);
    }
    let solved = tilde_fixed_point_forward_solve(solve_max as usize + 1);
    for n in 0..=solve_max {
        let rhs = Rational::from(2 * n + 1).recip();
        run.case(|| format!("forward solve, n={n}"), &solved[n as usize], &rhs);
    }
    Ok(run.finish())
}

/// Checks that the tilde transform of each inversion-kernel column is a
/// delta sequence: column `m` (entries `a_{n,m}`, `0 <= n <= n_max`)
/// transforms to `[n=m]`. `(n_max+1)^2` cases.
pub fn suite_kernel_delta(n_max: Index) -> Result<VerificationReport> {
    let len = n_max as usize + 1;
    let mut run = SuiteRun::new("kernel", format!("0 <= n, m <= {n_max}"));
    for m in 0..=n_max {
        let column = Sequence::from_fn(len, |n| inversion_kernel(n, m));
        let transformed = tilde_transform(&column);
        for n in 0..=n_max {
            let rhs = if n == m {
                Rational::one()
            } else {
                Rational::zero()
            };
            run.case(|| format!("n={n}, m={m}"), &transformed[n as usize], &rhs);
        }
    }
    Ok(run.finish())
}

/// Checks the closed form of the partial inverse transform of a Racah row:
/// `corollary320_lhs(s, T, m) = corollary320_rhs(s, T, m)` for every
/// `1 <= T <= t_max`, `0 <= s, m <= T-1`, with the vanishing band
/// `s+1 <= m <= T-1` asserted to be exactly zero as part of each cell.
pub fn suite_c320(t_max: Index) -> Result<VerificationReport> {
    if t_max < 1 {
        return Err(Error::InvalidRange { lo: 1, hi: t_max });
    }
    let mut run = SuiteRun::new("c320", format!("1 <= T <= {t_max}; 0 <= s, m <= T-1"));
    let zero = Rational::zero();
    for t in 1..=t_max {
        for s in 0..t {
            for m in 0..t {
                let lhs = corollary320_lhs(s, t, m).expect("cell is inside the box");
                let rhs = corollary320_rhs(s, t, m).expect("cell is inside the box");
                run.case(|| format!("T={t}, s={s}, m={m}"), &lhs, &rhs);
                if m > s {
                    run.extra_check(|| format!("T={t}, s={s}, m={m}, vanishing band"), &lhs, &zero);
                }
            }
        }
    }
    Ok(run.finish())
}

/// Per-suite sweep limits (`n_max`, or `t_max` for `c320`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteLimits {
    pub lemma340: Index,
    pub c310a: Index,
    pub c310b: Index,
    pub kernel: Index,
    pub c320: Index,
}

impl Default for SuiteLimits {
    /// Ranges far past the small-case regime that still finish in
    /// seconds-to-minutes with exact arithmetic.
    fn default() -> Self {
        SuiteLimits {
            lemma340: 500,
            c310a: 64,
            c310b: 200,
            kernel: 48,
            c320: 60,
        }
    }
}

/// Runs every suite in the fixed [`SUITE_NAMES`] order. A suite that
/// cannot run (bad limit) yields an errored report; the rest of the
/// batch is unaffected. The batch passes iff every report passes.
pub fn run_all(limits: &SuiteLimits) -> Vec<VerificationReport> {
    vec![
        suite_lemma340(limits.lemma340).unwrap_or_else(|e| {
            VerificationReport::errored("lemma340", format!("1 <= n <= {}", limits.lemma340), e)
        }),
        suite_c310a(limits.c310a).unwrap_or_else(|e| {
            VerificationReport::errored("c310a", format!("0 <= m <= n <= {}", limits.c310a), e)
        }),
        suite_c310b(limits.c310b).unwrap_or_else(|e| {
            VerificationReport::errored("c310b", format!("0 <= n <= {}", limits.c310b), e)
        }),
        suite_kernel_delta(limits.kernel).unwrap_or_else(|e| {
            VerificationReport::errored("kernel", format!("0 <= n, m <= {}", limits.kernel), e)
        }),
        suite_c320(limits.c320).unwrap_or_else(|e| {
            VerificationReport::errored(
                "c320",
                format!("1 <= T <= {}; 0 <= s, m <= T-1", limits.c320),
                e,
            )
        }),
    ]
}

/// Dispatches by stable suite name; `"all"` runs the whole batch.
pub fn run_suite(name: &str, limits: &SuiteLimits) -> Result<Vec<VerificationReport>> {
    match name {
        "lemma340" => suite_lemma340(limits.lemma340).map(|r| vec![r]),
        "c310a" => suite_c310a(limits.c310a).map(|r| vec![r]),
        "c310b" => suite_c310b(limits.c310b).map(|r| vec![r]),
        "kernel" => suite_kernel_delta(limits.kernel).map(|r| vec![r]),
        "c320" => suite_c320(limits.c320).map(|r| vec![r]),
        "all" => Ok(run_all(limits)),
        _ => Err(Error::UnknownSuite {
            name: name.to_owned(),
        }),
    }
}
