//! The tilde sequence transform, its inverse, and the classical binomial
//! transform.
//!
//! For a sequence `x_0, x_1, ...` the forward transform is
//!
//! ```text
//! xt_n = sum_{k=0}^{n} (-1)^k C(n,k) C(n+k,k) x_k
//! ```
//!
//! and the inverse recovers `x` from `xt` via
//!
//! ```text
//! x_n = sum_{k=0}^{n} (-1)^k (2k+1) C(n,k) / ((n+k+1) C(n+k,k)) xt_k .
//! ```
//!
//! Both maps are triangular (entry `n` depends only on entries `0..=n`), so
//! they act on finite prefixes without any padding convention. Each comes in
//! two algebraically equal forms, one written with binomial coefficients and
//! one with Pochhammer symbols; the secondary forms exist to cross-check the
//! primary ones and are exercised heavily by the test suites.

use crate::exact::{binomial, rising_factorial, Index, Rational};
use crate::error::{Error, Result};

/// A finite prefix `x_0 .. x_{L-1}` of a rational-valued sequence.
///
/// All transforms consume and produce prefixes of equal length; there is no
/// implicit zero-padding.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sequence(Vec<Rational>);

impl Sequence {
    pub fn new(entries: Vec<Rational>) -> Self {
        Sequence(entries)
    }

    /// Builds the length-`len` prefix of `n -> f(n)`.
    pub fn from_fn(len: usize, mut f: impl FnMut(Index) -> Rational) -> Self {
        Sequence((0..len).map(|n| f(n as Index)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }
}

impl From<Vec<Rational>> for Sequence {
    fn from(entries: Vec<Rational>) -> Self {
        Sequence(entries)
    }
}

impl FromIterator<Rational> for Sequence {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        Sequence(iter.into_iter().collect())
    }
}

impl std::ops::Index<usize> for Sequence {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl<'a> IntoIterator for &'a Sequence {
    type Item = &'a Rational;
    type IntoIter = std::slice::Iter<'a, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Puts every entry of `x` over the lcm of the entry denominators, returning
/// the adjusted numerators and that lcm. Lets the transforms accumulate each
/// output entry as a single big integer and reduce once at the end, instead
/// of reducing after every add.
fn scaled_numerators(x: &Sequence) -> (Vec<BigInt>, BigInt) {
    let mut common = BigInt::one();
    for e in x.iter() {
        common = common.lcm(e.denom());
    }
    let scaled = x.iter().map(|e| e.numer() * (&common / e.denom())).collect();
    (scaled, common)
}

/// Forward tilde transform, binomial form:
/// `xt_n = sum (-1)^k C(n,k) C(n+k,k) x_k`.
///
/// The two binomial coefficients are carried across `k` by exact integer
/// updates, so each output entry costs `O(n)` big-integer operations.
pub fn tilde_transform(x: &Sequence) -> Sequence {
    let (scaled, common) = scaled_numerators(x);
    Sequence(
        (0..x.len())
            .map(|n| {
                let nn = n as u64;
                let mut c_n_k = BigInt::one(); // C(n, k)
                let mut c_nk_k = BigInt::one(); // C(n+k, k)
                let mut acc = BigInt::zero();
                for k in 0..=nn {
                    let term = &c_n_k * &c_nk_k * &scaled[k as usize];
                    if k % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                    if k < nn {
                        // C(n,k+1) = C(n,k)(n-k)/(k+1); division is exact
                        c_n_k = c_n_k * BigInt::from(nn - k) / BigInt::from(k + 1);
                        // C(n+k+1,k+1) = C(n+k,k)(n+k+1)/(k+1)
                        c_nk_k = c_nk_k * BigInt::from(nn + k + 1) / BigInt::from(k + 1);
                    }
                }
                Rational::from_big(acc, common.clone())
                    .expect("denominator lcm is positive")
            })
            .collect(),
    )
}

/// Forward tilde transform, Pochhammer form:
/// `xt_n = sum (-n)_k (n+1)_k / (k! k!) x_k`.
///
/// Same map as [`tilde_transform`], computed through running Pochhammer and
/// factorial products instead of binomial coefficients; exists to
/// cross-check the two formulations against each other.
pub fn tilde_transform_pochhammer(x: &Sequence) -> Sequence {
    Sequence(
        (0..x.len())
            .map(|n| {
                let n = n as i64;
                let mut poch_neg = Rational::one(); // (-n)_k
                let mut poch_pos = Rational::one(); // (n+1)_k
                let mut fact = Rational::one(); // k!
                let mut acc = x[0].clone() * Rational::one();
                for k in 1..=n {
                    poch_neg *= Rational::from_integer(-n + k - 1);
                    poch_pos *= Rational::from_integer(n + k);
                    fact *= Rational::from_integer(k);
                    acc += &x[k as usize] * &poch_neg * &poch_pos / (&fact * &fact);
                }
                acc
            })
            .collect(),
    )
}

/// Inverse tilde transform, Pochhammer form:
/// `x_n = sum (2k+1) (-n)_k / (n+1)_{k+1} xt_k`.
///
/// Row `n` is accumulated over the shared denominator `(n+1)_{n+1}`: the
/// integer weight `(2k+1) (-n)_k (n+k+2)_{n-k}` for `k+1` follows from the
/// weight for `k` by an exact multiply-divide, so a length-`L` inversion
/// costs `O(L^2)` big-integer operations.
pub fn inverse_transform(xt: &Sequence) -> Sequence {
    let (scaled, common) = scaled_numerators(xt);
    let mut entries = Vec::with_capacity(xt.len());
    let mut row_den = BigInt::one(); // (n+1)_{n+1}
    for n in 0..xt.len() as u64 {
        if n > 0 {
            // (n+1)_{n+1} = (n)_n * 2 * (2n+1)
            row_den *= BigInt::from(2 * (2 * n + 1));
        }
        // k = 0 weight: (n+2)_n = (n+1)_{n+1} / (n+1); division is exact
        let mut weight = &row_den / BigInt::from(n + 1);
        let mut acc = &weight * &scaled[0];
        for k in 0..n {
            weight = weight * BigInt::from((2 * k as i64 + 3) * (k as i64 - n as i64))
                / BigInt::from((2 * k + 1) * (n + k + 2));
            acc += &weight * &scaled[(k + 1) as usize];
        }
        entries.push(
            Rational::from_big(acc, &common * &row_den)
                .expect("denominator product is positive"),
        );
    }
    Sequence(entries)
}

/// Inverse tilde transform, binomial form:
/// `x_n = sum (-1)^k (2k+1) C(n,k) / ((n+k+1) C(n+k,k)) xt_k`.
///
/// Cross-check counterpart of [`inverse_transform`]; every coefficient goes
/// through the [`binomial`] primitive.
pub fn inverse_transform_binomial(xt: &Sequence) -> Sequence {
    Sequence(
        (0..xt.len())
            .map(|n| {
                let nn = n as u64;
                let mut acc = Rational::zero();
                for k in 0..=nn {
                    let num = Rational::from(2 * k + 1) * binomial(nn, k);
                    let den = Rational::from(nn + k + 1) * binomial(nn + k, k);
                    let c = num / den;
                    let signed = if k % 2 == 0 { c } else { -c };
                    acc += signed * &xt[k as usize];
                }
                acc
            })
            .collect(),
    )
}

/// The inversion kernel `a_{n,m} = (2m+1) (-n)_m / (n+1)_{m+1}`.
///
/// Its tilde transform in `n` is the Kronecker delta at `m`, which is what
/// makes the inversion formula work. Zero for `m > n` since `(-n)_m = 0`.
pub fn inversion_kernel(n: Index, m: Index) -> Rational {
    let num = Rational::from(2 * m + 1)
        * rising_factorial(&Rational::from_integer(-(n as i64)), m);
    if num.is_zero() {
        return Rational::zero();
    }
    num / rising_factorial(&Rational::from(n + 1), m + 1)
}

fn signed_binomial_sum(x: &Sequence) -> Sequence {
    Sequence(
        (0..x.len())
            .map(|n| {
                let nn = n as u64;
                let mut c = BigInt::one(); // C(n, k)
                let mut acc = Rational::zero();
                for k in 0..=nn {
                    let coeff = Rational::from(c.clone());
                    let signed = if k % 2 == 0 { coeff } else { -coeff };
                    acc += signed * &x[k as usize];
                    if k < nn {
                        c = c * BigInt::from(nn - k) / BigInt::from(k + 1);
                    }
                }
                acc
            })
            .collect(),
    )
}

/// Binomial transform `xh_n = sum (-1)^k C(n,k) x_k`.
pub fn binomial_transform(x: &Sequence) -> Sequence {
    signed_binomial_sum(x)
}

/// Inverse of the binomial transform. The transform is an involution, so
/// this applies the identical formula; it exists so call sites can state
/// their intent.
pub fn binomial_inverse(xh: &Sequence) -> Sequence {
    signed_binomial_sum(xh)
}

/// Forward-solves the fixed-point equations `xt_n = x_n` with `x_0 = 1`.
///
/// Entry `n > 0` is determined uniquely because the diagonal coefficient
/// `(-1)^n C(2n,n)` differs from 1, so the solve pins down the only
/// sequence (up to scale) fixed by the transform.
pub fn tilde_fixed_point_forward_solve(len: usize) -> Sequence {
    let mut entries: Vec<Rational> = Vec::with_capacity(len);
    if len == 0 {
        return Sequence(entries);
    }
    entries.push(Rational::one());
    for n in 1..len as u64 {
        let mut partial = Rational::zero();
        for k in 0..n {
            let c = binomial(n, k) * binomial(n + k, k);
            let signed = if k % 2 == 0 { c } else { -c };
            partial += signed * &entries[k as usize];
        }
        let diag = binomial(2 * n, n);
        let diag_signed = if n % 2 == 0 { diag } else { -diag };
        entries.push(partial / (Rational::one() - diag_signed));
    }
    Sequence(entries)
}

/// Parses the line-oriented sequence format: one rational per line in
/// canonical text form; blank lines and `#` comment lines are ignored.
/// Data line `i` (0-based) becomes entry `x_i`.
pub fn parse_sequence(text: &str) -> Result<Sequence> {
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let r = Rational::parse(t).map_err(|_| Error::ParseSequence {
            line: i + 1,
            text: t.to_owned(),
        })?;
        entries.push(r);
    }
    Ok(Sequence(entries))
}

/// Renders a sequence in the same line-oriented format, one canonical
/// rational per line, LF endings. Empty sequences render as the empty
/// string.
pub fn render_sequence(x: &Sequence) -> String {
    let mut out = String::new();
    for r in x.iter() {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}
