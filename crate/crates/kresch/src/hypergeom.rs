//! Terminating generalized hypergeometric series, evaluated exactly.
//!
//! A `pFq` series with numerator parameters `a_1..a_p`, denominator
//! parameters `b_1..b_q` and argument `z` is the sum over `k >= 0` of
//!
//! ```text
//! (a_1)_k ... (a_p)_k
//! ------------------- z^k
//! k! (b_1)_k ... (b_q)_k
//! ```
//!
//! When some numerator parameter is a non-positive integer `-n` (taking the
//! largest such, i.e. the smallest magnitude), only the first `n + 1` terms
//! are nonzero and the series is a polynomial of degree `<= n` in `z`. That
//! is the only case this module evaluates; everything else is rejected.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{rising_factorial, Index, Rational};

/// Parameters of a `pFq` series: `numerator_params` are the `a_i`,
/// `denominator_params` the `b_j`, `argument` is `z`.
///
/// Lists may be empty. Order never affects the value but is preserved for
/// display.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypSeriesSpec {
    pub numerator_params: Vec<Rational>,
    pub denominator_params: Vec<Rational>,
    pub argument: Rational,
}

impl HypSeriesSpec {
    pub fn new(
        numerator_params: Vec<Rational>,
        denominator_params: Vec<Rational>,
        argument: Rational,
    ) -> Self {
        HypSeriesSpec {
            numerator_params,
            denominator_params,
            argument,
        }
    }

    /// Same parameters, different argument.
    pub fn with_argument(&self, argument: Rational) -> Self {
        HypSeriesSpec {
            numerator_params: self.numerator_params.clone(),
            denominator_params: self.denominator_params.clone(),
            argument,
        }
    }
}

impl fmt::Display for HypSeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ps: &[Rational]| {
            ps.iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "{}F{}({}; {}; {})",
            self.numerator_params.len(),
            self.denominator_params.len(),
            join(&self.numerator_params),
            join(&self.denominator_params),
            self.argument
        )
    }
}

/// What [`classify`] reports about a series.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SeriesClassification {
    /// Some numerator parameter is a non-positive integer.
    pub terminating: bool,
    /// The `n` such that exactly the first `n + 1` terms are nonzero;
    /// present iff `terminating`.
    pub truncation_index: Option<Index>,
    /// False iff terminating and some denominator parameter is an integer
    /// in `[-n+1, 0]`, which would zero a Pochhammer factor within range.
    pub denominator_valid: bool,
    /// Denominator-parameter sum exceeds numerator-parameter sum by
    /// exactly 1.
    pub saalschutzian: bool,
    /// `z = 1`.
    pub unit_argument: bool,
}

fn truncation_index(spec: &HypSeriesSpec) -> Option<Index> {
    spec.numerator_params
        .iter()
        .filter_map(|a| a.nonpositive_integer_magnitude())
        .min()
        .map(|m| {
            // A truncation index beyond machine range is not evaluatable
            // anyway; treat it like any other capacity limit.
            Index::try_from(&m).expect("truncation index exceeds machine range")
        })
}

/// First denominator parameter whose Pochhammer symbol vanishes at or
/// before term `n`, i.e. an integer in `[-n+1, 0]`.
fn first_denominator_pole(spec: &HypSeriesSpec, n: Index) -> Option<&Rational> {
    spec.denominator_params.iter().find(|b| {
        b.nonpositive_integer_magnitude()
            .is_some_and(|mag| mag < BigUint::from(n))
    })
}

/// Classifies a series: termination, truncation index, denominator
/// validity, Saalschutzian balance, unit argument. Total; never fails.
pub fn classify(spec: &HypSeriesSpec) -> SeriesClassification {
    let truncation = truncation_index(spec);
    let denominator_valid = match truncation {
        Some(n) => first_denominator_pole(spec, n).is_none(),
        None => true,
    };
    let sum = |ps: &[Rational]| {
        ps.iter()
            .fold(Rational::zero(), |acc, p| acc + p)
    };
    let saalschutzian =
        sum(&spec.denominator_params) - sum(&spec.numerator_params) == Rational::one();
    SeriesClassification {
        terminating: truncation.is_some(),
        truncation_index: truncation,
        denominator_valid,
        saalschutzian,
        unit_argument: spec.argument.is_one(),
    }
}

/// Evaluates a terminating series exactly.
///
/// Term `k` is obtained from term `k - 1` by one exact ratio update, so a
/// truncation index `n` costs `O(n)` big-integer steps. The whole loop
/// runs on unreduced integers - the running term as a raw fraction, the
/// partial sum carried over the same common denominator - and the single
/// gcd reduction happens at the end, which is far cheaper than reducing
/// every intermediate.
///
/// Rejects with [`Error::NonTerminating`] when no numerator parameter is a
/// non-positive integer, and with [`Error::DenominatorPole`] when a
/// denominator parameter zeroes a Pochhammer factor within range.
pub fn evaluate_terminating(spec: &HypSeriesSpec) -> Result<Rational> {
    let n = truncation_index(spec).ok_or(Error::NonTerminating)?;
    if let Some(b) = first_denominator_pole(spec, n) {
        return Err(Error::DenominatorPole {
            parameter: b.clone(),
        });
    }

    // Shifted parameter numerators: a + k - 1 = (p + (k-1)q) / q with the
    // original (coprime) denominator q, updated by += q per step.
    let mut num_shifts: Vec<BigInt> = spec
        .numerator_params
        .iter()
        .map(|a| a.numer().clone())
        .collect();
    let mut den_shifts: Vec<BigInt> = spec
        .denominator_params
        .iter()
        .map(|b| b.numer().clone())
        .collect();

    let mut acc = BigInt::one(); // partial sum times common_den
    let mut term_num = BigInt::one(); // term k as term_num / common_den
    let mut common_den = BigInt::one();

    for k in 1..=n {
        // term ratio e/d: numerators of shifted a's (and z) over k,
        // numerators of shifted b's (and z's denominator), with the
        // parameter denominators crossed over
        let mut e = spec.argument.numer().clone();
        for shift in &num_shifts {
            e *= shift;
        }
        if e.is_zero() {
            // within the truncation range no shifted numerator parameter
            // can vanish, so this is exactly the z = 0 case: every later
            // term vanishes too
            break;
        }
        for b in &spec.denominator_params {
            e *= b.denom();
        }
        let mut d = spec.argument.denom() * BigInt::from(k);
        for shift in &den_shifts {
            d *= shift;
        }
        for a in &spec.numerator_params {
            d *= a.denom();
        }

        term_num *= e;
        acc = acc * &d + &term_num;
        common_den *= d;

        for (shift, a) in num_shifts.iter_mut().zip(&spec.numerator_params) {
            *shift += a.denom();
        }
        for (shift, b) in den_shifts.iter_mut().zip(&spec.denominator_params) {
            *shift += b.denom();
        }
    }
    Ok(Rational::from_big(acc, common_den).expect("common denominator is a positive product"))
}

/// Chu-Vandermonde closed form for a terminating `2F1` at unit argument:
/// `2F1(-n, a; b; 1) = (b-a)_n / (b)_n`.
///
/// Serves as the independent oracle for [`evaluate_terminating`].
pub fn chu_vandermonde(n: Index, a: &Rational, b: &Rational) -> Result<Rational> {
    if b
        .nonpositive_integer_magnitude()
        .is_some_and(|mag| mag < BigUint::from(n))
    {
        return Err(Error::DenominatorPole {
            parameter: b.clone(),
        });
    }
    let num = rising_factorial(&(b - a), n);
    let den = rising_factorial(b, n);
    Ok(num / den)
}
