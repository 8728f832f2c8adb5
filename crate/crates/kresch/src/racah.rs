//! Racah polynomials, exactly.
//!
//! The general polynomial `R_n(lambda(x); alpha, beta, gamma, delta)` is a
//! terminating Saalschutzian `4F3(1)`; the specialization used throughout
//! this crate is
//!
//! ```text
//! R_n(s, T) = 4F3(-n, n+1, -s, s+1; 1, 1-T, 1+T; 1),   0 <= n, s <= T-1,
//! ```
//!
//! together with the Kresch-Tamvakis conjecture that `|R_n(s, T)| <= 1` on
//! that whole box. [`kt_sweep`] checks the conjecture cell by cell with
//! exact rational comparisons; a violation is reported, never asserted
//! away.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, rising_factorial, Index, Rational};
use crate::hypergeom::{evaluate_terminating, HypSeriesSpec};

/// `lambda(x) = x (x + gamma + delta + 1)`, the quadratic argument lattice
/// of the general Racah polynomial.
pub fn lambda_of(x: &Rational, gamma: &Rational, delta: &Rational) -> Rational {
    x * &(x + gamma + delta + Rational::one())
}

/// Parameters `(alpha, beta, gamma, delta; N)` of a general Racah family.
///
/// Exactly one of `alpha + 1`, `beta + delta + 1`, `gamma + 1` must equal
/// `-N`; the constructor rejects anything else.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RacahParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub delta: Rational,
    /// The non-negative integer `N` bounding the degree.
    pub cap: Index,
}

impl RacahParams {
    pub fn new(
        alpha: Rational,
        beta: Rational,
        gamma: Rational,
        delta: Rational,
        cap: Index,
    ) -> Result<Self> {
        let neg_cap = -Rational::from(cap);
        let one = Rational::one();
        let hits = [
            &alpha + &one == neg_cap,
            &beta + &delta + &one == neg_cap,
            &gamma + &one == neg_cap,
        ]
        .iter()
        .filter(|&&h| h)
        .count();
        if hits != 1 {
            return Err(Error::InvalidParams(format!(
                "exactly one of alpha+1, beta+delta+1, gamma+1 must equal -N = {neg_cap} \
                 (got {hits} matches)"
            )));
        }
        Ok(RacahParams {
            alpha,
            beta,
            gamma,
            delta,
            cap,
        })
    }
}

/// General Racah polynomial `R_n(lambda(x); alpha, beta, gamma, delta)`:
/// the `4F3(1)` with numerator parameters
/// `(-n, n+alpha+beta+1, -x, x+gamma+delta+1)` and denominator parameters
/// `(alpha+1, beta+delta+1, gamma+1)`, evaluated through the hypergeometric
/// module (the single evaluation authority in this crate).
pub fn racah_general(params: &RacahParams, n: Index, x: Index) -> Result<Rational> {
    if n > params.cap {
        return Err(Error::IndexOutOfRange {
            index: n,
            max: params.cap,
        });
    }
    let one = Rational::one();
    let n_rat = Rational::from(n);
    let x_rat = Rational::from(x);
    let spec = HypSeriesSpec::new(
        vec![
            -&n_rat,
            &n_rat + &params.alpha + &params.beta + &one,
            -&x_rat,
            &x_rat + &params.gamma + &params.delta + &one,
        ],
        vec![
            &params.alpha + &one,
            &params.beta + &params.delta + &one,
            &params.gamma + &one,
        ],
        one,
    );
    evaluate_terminating(&spec)
}

/// The `(n, s, T)` box of the Kresch-Tamvakis specialization:
/// `T >= 1`, `0 <= n <= T-1`, `0 <= s <= T-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RacahSpecialParams {
    n: Index,
    s: Index,
    t: Index,
}

impl RacahSpecialParams {
    pub fn new(n: Index, s: Index, t: Index) -> Result<Self> {
        if t < 1 || i64::try_from(t).is_err() {
            return Err(Error::InvalidParams(format!(
                "T must be a positive machine-range integer (got {t})"
            )));
        }
        if n > t - 1 || s > t - 1 {
            return Err(Error::InvalidParams(format!(
                "need 0 <= n, s <= T-1 (got n={n}, s={s}, T={t})"
            )));
        }
        Ok(RacahSpecialParams { n, s, t })
    }

    pub fn n(&self) -> Index {
        self.n
    }

    pub fn s(&self) -> Index {
        self.s
    }

    pub fn t(&self) -> Index {
        self.t
    }
}

/// `R_n(s, T) = 4F3(-n, n+1, -s, s+1; 1, 1-T, 1+T; 1)`, exact.
///
/// Symmetric in `n <-> s`: the swap permutes the numerator parameter list,
/// which never changes the sum.
pub fn racah_special(p: &RacahSpecialParams) -> Rational {
    let n = p.n as i64;
    let s = p.s as i64;
    let t = p.t as i64;
    let spec = HypSeriesSpec::new(
        vec![
            Rational::from_integer(-n),
            Rational::from_integer(n + 1),
            Rational::from_integer(-s),
            Rational::from_integer(s + 1),
        ],
        vec![
            Rational::one(),
            Rational::from_integer(1 - t),
            Rational::from_integer(1 + t),
        ],
        Rational::one(),
    );
    // Inside the box the truncation index is min(n, s) <= T-1, so the
    // denominator parameter 1-T can never pole.
    evaluate_terminating(&spec).expect("series is valid on the (n, s, T) box")
}

/// Left side of the Racah summation identity: the inverse-transform
/// coefficients applied to `R_0(s,T) .. R_m(s,T)`,
///
/// ```text
/// sum_{n=0}^{m} (-1)^n (2n+1) C(m,n) / ((m+n+1) C(m+n,n)) R_n(s, T).
/// ```
///
/// Computed in both the binomial form above and the equivalent Pochhammer
/// form `sum (2n+1)(-m)_n / (m+1)_{n+1} R_n(s,T)`, with an internal
/// equality assertion between the two.
pub fn corollary320_lhs(s: Index, t: Index, m: Index) -> Result<Rational> {
    if t < 1 || s > t - 1 || m > t - 1 {
        return Err(Error::InvalidParams(format!(
            "need 0 <= s, m <= T-1 (got s={s}, m={m}, T={t})"
        )));
    }
    let racah: Vec<Rational> = (0..=m)
        .map(|n| racah_special(&RacahSpecialParams::new(n, s, t).expect("in box")))
        .collect();

    // binomial form
    let mut binomial_sum = Rational::zero();
    for n in 0..=m {
        let num = Rational::from(2 * n + 1) * binomial(m, n);
        let den = Rational::from(m + n + 1) * binomial(m + n, n);
        let c = num / den;
        let signed = if n % 2 == 0 { c } else { -c };
        binomial_sum += signed * &racah[n as usize];
    }

    // Pochhammer form, coefficients by ratio recurrence
    let mut coeff = Rational::from(m + 1).recip();
    let mut pochhammer_sum = &coeff * &racah[0];
    for n in 0..m {
        let num = Rational::from_integer((2 * n as i64 + 3) * (n as i64 - m as i64));
        let den = Rational::from((2 * n + 1) * (m + n + 2));
        coeff *= num / den;
        pochhammer_sum += &coeff * &racah[(n + 1) as usize];
    }

    assert_eq!(
        binomial_sum, pochhammer_sum,
        "the two summation forms disagree at s={s}, T={t}, m={m}"
    );
    Ok(binomial_sum)
}

/// Right side of the same identity:
/// `(-s)_m (s+1)_m / ((1-T)_m (1+T)_m)`.
///
/// Exactly zero on the band `s+1 <= m <= T-1`, where `(-s)_m` hits a zero
/// factor. Rejects `m >= T`, where `(1-T)_m` vanishes.
pub fn corollary320_rhs(s: Index, t: Index, m: Index) -> Result<Rational> {
    if t < 1 || m > t - 1 {
        return Err(Error::DenominatorPole {
            parameter: Rational::from_integer(1 - t as i64),
        });
    }
    let s_rat = Rational::from(s);
    let t_rat = Rational::from(t);
    let one = Rational::one();
    let num = rising_factorial(&-&s_rat, m) * rising_factorial(&(&s_rat + &one), m);
    if num.is_zero() {
        return Ok(Rational::zero());
    }
    let den = rising_factorial(&(&one - &t_rat), m) * rising_factorial(&(&one + &t_rat), m);
    Ok(num / den)
}

/// Inclusive `T` interval of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TRange {
    pub min: Index,
    pub max: Index,
}

/// A grid cell named by its coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRef {
    pub n: Index,
    pub s: Index,
    pub t: Index,
}

/// A conjecture violation: a cell whose value leaves `[-1, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub n: Index,
    pub s: Index,
    pub t: Index,
    pub value: Rational,
}

/// Outcome of a conjecture sweep. Serializes to JSON with rationals in
/// canonical text form; identical for any worker count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub t_range: TRange,
    /// `sum of T^2` over the range: every `(n, s)` cell counts, including
    /// the mirror of each computed `n <= s` cell.
    pub cells_checked: u64,
    pub max_abs_value: Rational,
    /// First cell attaining `max_abs_value` in `(T, n, s)` scan order.
    pub max_abs_witness: CellRef,
    /// All cells with `|value| > 1`, sorted by `(T, n, s)`. Expected empty;
    /// a non-empty list is the interesting outcome, not an error.
    pub violations: Vec<Violation>,
}

/// One full-grid cell value, for `--grid-dump`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridCell {
    pub t: Index,
    pub n: Index,
    pub s: Index,
    pub value: Rational,
}

struct TScan {
    t: Index,
    max_abs: Rational,
    witness: (Index, Index),
    violations: Vec<(Index, Index, Rational)>,
    grid: Vec<(Index, Index, Rational)>,
}

/// Scans the full `T x T` grid for one `T`, computing only `n <= s` and
/// mirroring. Scan order `(n, s)` ascending matches first occurrence in
/// full-grid lexicographic order, which keeps witnesses deterministic.
fn scan_t(t: Index, collect_grid: bool) -> TScan {
    let mut max_abs = Rational::zero() - Rational::one(); // below any |value|
    let mut witness = (0, 0);
    let mut violations = Vec::new();
    let mut grid = Vec::new();
    let one = Rational::one();
    for n in 0..t {
        for s in n..t {
            let p = RacahSpecialParams::new(n, s, t).expect("in box");
            let value = racah_special(&p);
            let abs = value.abs();
            if abs > max_abs {
                max_abs = abs.clone();
                witness = (n, s);
            }
            if abs > one {
                violations.push((n, s, value.clone()));
                if n != s {
                    violations.push((s, n, value.clone()));
                }
            }
            if collect_grid {
                grid.push((n, s, value.clone()));
                if n != s {
                    grid.push((s, n, value));
                }
            }
        }
    }
    violations.sort_by_key(|&(n, s, _)| (n, s));
    grid.sort_by_key(|&(n, s, _)| (n, s));
    TScan {
        t,
        max_abs,
        witness,
        violations,
        grid,
    }
}

fn sweep_impl(
    t_min: Index,
    t_max: Index,
    workers: usize,
    collect_grid: bool,
) -> Result<(SweepReport, Vec<GridCell>)> {
    if t_min < 1 || t_min > t_max {
        return Err(Error::InvalidRange {
            lo: t_min,
            hi: t_max,
        });
    }
    let workers = workers.max(1);

    // Per-T cost grows like T^3, so hand out large T first; the merge
    // below re-orders by T, keeping the report independent of scheduling.
    let todo: Vec<Index> = (t_min..=t_max).rev().collect();
    let cursor = AtomicUsize::new(0);
    let done: Mutex<Vec<TScan>> = Mutex::new(Vec::with_capacity(todo.len()));

    std::thread::scope(|scope| {
        for _ in 0..workers.min(todo.len()) {
            scope.spawn(|| loop {
                let i = cursor.fetch_add(1, Ordering::Relaxed);
                let Some(&t) = todo.get(i) else { break };
                let scan = scan_t(t, collect_grid);
                done.lock().unwrap().push(scan);
            });
        }
    });

    let mut scans = done.into_inner().unwrap();
    scans.sort_by_key(|scan| scan.t);

    let mut cells_checked = 0u64;
    let mut max_abs_value = Rational::zero() - Rational::one();
    let mut max_abs_witness = CellRef { n: 0, s: 0, t: t_min };
    let mut violations = Vec::new();
    let mut grid = Vec::new();
    for scan in scans {
        cells_checked += scan.t * scan.t;
        if scan.max_abs > max_abs_value {
            max_abs_value = scan.max_abs;
            max_abs_witness = CellRef {
                n: scan.witness.0,
                s: scan.witness.1,
                t: scan.t,
            };
        }
        violations.extend(scan.violations.into_iter().map(|(n, s, value)| Violation {
            n,
            s,
            t: scan.t,
            value,
        }));
        grid.extend(scan.grid.into_iter().map(|(n, s, value)| GridCell {
            t: scan.t,
            n,
            s,
            value,
        }));
    }

    Ok((
        SweepReport {
            schema_version: 1,
            t_range: TRange {
                min: t_min,
                max: t_max,
            },
            cells_checked,
            max_abs_value,
            max_abs_witness,
            violations,
        },
        grid,
    ))
}

/// Sweeps `|R_n(s,T)| <= 1` over every cell with `T` in `[t_min, t_max]`.
///
/// `workers` threads split the work by `T`; the report is byte-identical
/// for any worker count. Comparison is exact (`|p| <= q` on canonical
/// fractions) - no epsilon anywhere.
pub fn kt_sweep(t_min: Index, t_max: Index, workers: usize) -> Result<SweepReport> {
    sweep_impl(t_min, t_max, workers, false).map(|(report, _)| report)
}

/// Like [`kt_sweep`] but also returns every grid cell, full square per `T`
/// (mirrored cells included), sorted by `(T, n, s)`.
pub fn kt_sweep_with_grid(
    t_min: Index,
    t_max: Index,
    workers: usize,
) -> Result<(SweepReport, Vec<GridCell>)> {
    sweep_impl(t_min, t_max, workers, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::{inverse_transform, tilde_transform, Sequence};

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn special(n: Index, s: Index, t: Index) -> Rational {
        racah_special(&RacahSpecialParams::new(n, s, t).unwrap())
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_of(&rat(0, 1), &rat(5, 3), &rat(-9, 4)), Rational::zero());
        assert_eq!(lambda_of(&rat(2, 1), &rat(3, 1), &rat(-3, 1)), rat(6, 1));
        assert_eq!(lambda_of(&rat(1, 1), &rat(1, 2), &rat(1, 2)), rat(3, 1));
    }

    #[test]
    fn special_params_box() {
        assert!(RacahSpecialParams::new(0, 0, 1).is_ok());
        assert!(RacahSpecialParams::new(1, 1, 2).is_ok());
        assert!(RacahSpecialParams::new(0, 0, 0).is_err());
        assert!(RacahSpecialParams::new(2, 0, 2).is_err());
        assert!(RacahSpecialParams::new(0, 5, 5).is_err());
    }

    #[test]
    fn special_examples() {
        assert_eq!(special(0, 4, 9), Rational::one());
        assert_eq!(special(1, 1, 2), rat(-1, 3));
        // R_1(s, T) = 1 - 2 s (s+1) / (T^2 - 1)
        for t in 2..=20u64 {
            for s in 0..t {
                let closed = Rational::one()
                    - rat(2 * s as i64 * (s as i64 + 1), (t * t - 1) as i64);
                assert_eq!(special(1, s, t), closed, "closed form failed at s={s} T={t}");
            }
        }
    }

    #[test]
    fn special_symmetry_full_grid() {
        for t in 1..=40u64 {
            for n in 0..t {
                for s in n..t {
                    assert_eq!(special(n, s, t), special(s, n, t), "asymmetric at ({n},{s},{t})");
                }
            }
        }
    }

    #[test]
    fn boundary_rows_are_one() {
        for t in 1..=40u64 {
            for i in 0..t {
                assert_eq!(special(0, i, t), Rational::one());
                assert_eq!(special(i, 0, t), Rational::one());
            }
        }
    }

    #[test]
    fn general_params_side_condition() {
        // (0, 0, T, -T) activates beta+delta+1 = -(T-1), and only that
        for t in 1..=10i64 {
            assert!(RacahParams::new(
                Rational::zero(),
                Rational::zero(),
                Rational::from_integer(t),
                Rational::from_integer(-t),
                (t - 1) as u64
            )
            .is_ok());
        }
        // no condition matches
        assert!(RacahParams::new(rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 1), 4).is_err());
        // two conditions match: alpha+1 = beta+delta+1 = -2
        assert!(RacahParams::new(rat(-3, 1), rat(-1, 1), rat(1, 2), rat(-2, 1), 2).is_err());
    }

    #[test]
    fn general_matches_special_on_the_slice() {
        for t in 1..=20u64 {
            let params = RacahParams::new(
                Rational::zero(),
                Rational::zero(),
                Rational::from(t),
                -Rational::from(t),
                t - 1,
            )
            .unwrap();
            for n in 0..t {
                for s in 0..t {
                    assert_eq!(
                        racah_general(&params, n, s).unwrap(),
                        special(n, s, t),
                        "general/special mismatch at ({n},{s},{t})"
                    );
                }
            }
        }
    }

    #[test]
    fn general_edge_cases() {
        let params = RacahParams::new(
            Rational::zero(),
            Rational::zero(),
            rat(2, 1),
            rat(-2, 1),
            1,
        )
        .unwrap();
        assert_eq!(racah_general(&params, 0, 1).unwrap(), Rational::one());
        assert_eq!(racah_general(&params, 1, 0).unwrap(), Rational::one());
        assert_eq!(racah_general(&params, 1, 1).unwrap(), rat(-1, 3));
        assert_eq!(
            racah_general(&params, 2, 0),
            Err(Error::IndexOutOfRange { index: 2, max: 1 })
        );
    }

    #[test]
    fn corollary320_examples() {
        assert_eq!(corollary320_lhs(1, 2, 1).unwrap(), rat(2, 3));
        assert_eq!(corollary320_rhs(1, 2, 1).unwrap(), rat(2, 3));
        assert_eq!(corollary320_lhs(4, 7, 0).unwrap(), Rational::one());
        assert_eq!(corollary320_rhs(4, 7, 0).unwrap(), Rational::one());
        assert_eq!(corollary320_lhs(0, 3, 2).unwrap(), Rational::zero());
        assert_eq!(corollary320_rhs(0, 3, 2).unwrap(), Rational::zero());
        assert!(matches!(
            corollary320_rhs(0, 3, 3),
            Err(Error::DenominatorPole { .. })
        ));
        assert!(corollary320_lhs(3, 3, 0).is_err());
    }

    #[test]
    fn corollary320_identity_small() {
        // acceptance covers T <= 60
        for t in 1..=12u64 {
            for s in 0..t {
                for m in 0..t {
                    let lhs = corollary320_lhs(s, t, m).unwrap();
                    let rhs = corollary320_rhs(s, t, m).unwrap();
                    assert_eq!(lhs, rhs, "identity failed at s={s} T={t} m={m}");
                    if m > s {
                        assert!(lhs.is_zero(), "band not zero at s={s} T={t} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn racah_row_is_tilde_transform_of_rhs_row() {
        for t in 1..=15u64 {
            for s in 0..t {
                let rhs_row = Sequence::from_fn(t as usize, |m| {
                    corollary320_rhs(s, t, m).unwrap()
                });
                let racah_row = Sequence::from_fn(t as usize, |n| special(n, s, t));
                assert_eq!(tilde_transform(&rhs_row), racah_row, "forward failed s={s} T={t}");
                assert_eq!(inverse_transform(&racah_row), rhs_row, "inverse failed s={s} T={t}");
            }
        }
    }

    #[test]
    fn sweep_smallest_ranges() {
        let r = kt_sweep(1, 1, 1).unwrap();
        assert_eq!(r.cells_checked, 1);
        assert_eq!(r.max_abs_value, Rational::one());
        assert_eq!(r.max_abs_witness, CellRef { n: 0, s: 0, t: 1 });
        assert!(r.violations.is_empty());

        let r = kt_sweep(2, 2, 1).unwrap();
        assert_eq!(r.cells_checked, 4);
        assert_eq!(r.max_abs_value, Rational::one());
        assert!(r.violations.is_empty());
        // interior cell is -1/3; max is attained on the n=0 / s=0 border
        assert!(r.max_abs_witness.n == 0 || r.max_abs_witness.s == 0);
    }

    #[test]
    fn sweep_rejects_bad_range() {
        assert!(matches!(kt_sweep(5, 3, 1), Err(Error::InvalidRange { .. })));
        assert!(matches!(kt_sweep(0, 3, 1), Err(Error::InvalidRange { .. })));
    }

    #[test]
    fn sweep_worker_count_is_invisible() {
        let one = kt_sweep(1, 10, 1).unwrap();
        for workers in [2, 3, 8] {
            assert_eq!(kt_sweep(1, 10, workers).unwrap(), one);
        }
        assert_eq!(
            serde_json::to_string(&one).unwrap(),
            serde_json::to_string(&kt_sweep(1, 10, 4).unwrap()).unwrap()
        );
    }

    #[test]
    fn sweep_grid_dump_is_full_square() {
        let (report, grid) = kt_sweep_with_grid(1, 4, 2).unwrap();
        assert_eq!(grid.len() as u64, report.cells_checked);
        // sorted by (t, n, s), mirror cells present and equal
        let mut expected_order = grid.clone();
        expected_order.sort_by_key(|c| (c.t, c.n, c.s));
        assert_eq!(
            grid.iter().map(|c| (c.t, c.n, c.s)).collect::<Vec<_>>(),
            expected_order.iter().map(|c| (c.t, c.n, c.s)).collect::<Vec<_>>()
        );
        for cell in &grid {
            let mirror = grid
                .iter()
                .find(|c| c.t == cell.t && c.n == cell.s && c.s == cell.n)
                .unwrap();
            assert_eq!(mirror.value, cell.value);
        }
    }

    #[test]
    fn sweep_report_json_round_trip() {
        let report = kt_sweep(1, 5, 2).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let back: SweepReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}
