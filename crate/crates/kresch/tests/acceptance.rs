//! Acceptance gate: the properties this artifact must exhibit, each with
//! a wall-clock budget. Every test prints one `PASS <name>` line (visible
//! with `--nocapture`); a failing property or a blown budget fails the
//! test. Tests serialize on a global lock so budgets reflect a quiet
//! machine even when the harness runs threads.

use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kresch::hypergeom::{chu_vandermonde, evaluate_terminating, HypSeriesSpec};
use kresch::racah::kt_sweep;
use kresch::suites::{
    suite_c310a, suite_c310b, suite_c320, suite_kernel_delta, suite_lemma340,
    suite_lemma340_with_rhs,
};
use kresch::transforms::{
    inverse_transform, inverse_transform_binomial, tilde_transform, tilde_transform_pochhammer,
    Sequence,
};
use kresch::Rational;

static GATE: Mutex<()> = Mutex::new(());

fn timed(name: &str, budget: Duration, run: impl FnOnce()) {
    let _serial = GATE.lock().unwrap_or_else(|poisoned| poisoned.into_inner());
    let started = Instant::now();
    run();
    let elapsed = started.elapsed();
    assert!(
        elapsed <= budget,
        "{name} exceeded its budget: {} ms > {} ms",
        elapsed.as_millis(),
        budget.as_millis()
    );
    println!(
        "PASS {name} in {} ms (budget {} ms)",
        elapsed.as_millis(),
        budget.as_millis()
    );
}

/// 500 pseudorandom sequences, lengths up to 64, entries with numerators
/// and denominators up to 10^6. Fixed seed: the corpus is part of the
/// gate's definition.
fn random_corpus() -> Vec<Sequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b72_6573_6368_2031);
    (0..500)
        .map(|_| {
            let len = rng.gen_range(0..=64usize);
            Sequence::from_fn(len, |_| {
                let numder = rng.gen_range(-1_000_000i64..=1_000_000);
                let denom = rng.gen_range(1i64..=1_000_000);
                Rational::new(numder, denom)
            })
        })
        .collect()
}

#[test]
fn transform_round_trips_on_random_corpus() {
    timed(
        "transform round trip, 500 sequences (len <= 64)",
        Duration::from_secs(30),
        || {
            for x in &random_corpus() {
                assert_eq!(&inverse_transform(&tilde_transform(x)), x);
                assert_eq!(&tilde_transform(&inverse_transform(x)), x);
            }
        },
    );
}

#[test]
fn kernel_columns_transform_to_deltas_up_to_48() {
    timed("kernel delta grid, 0..=48", Duration::from_secs(10), || {
        let report = suite_kernel_delta(48).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert_eq!(report.cases_run, 49 * 49);
    });
}

#[test]
fn alternating_row_sum_holds_to_500() {
    timed(
        "alternating binomial row sum, n <= 500",
        Duration::from_secs(10),
        || {
            let report = suite_lemma340(500).unwrap();
            assert!(report.passed(), "failures: {:?}", report.failures);
            assert_eq!(report.cases_run, 500);
        },
    );
}

#[test]
fn triangle_and_fixed_point_identities_hold_to_200() {
    timed(
        "triangle identity (m <= n <= 200) and fixed point (n <= 200)",
        Duration::from_secs(60),
        || {
            let a = suite_c310a(200).unwrap();
            assert!(a.passed(), "failures: {:?}", a.failures);
            assert_eq!(a.cases_run, 201 * 202 / 2);

            let b = suite_c310b(200).unwrap();
            assert!(b.passed(), "failures: {:?}", b.failures);
            assert_eq!(b.cases_run, 201 + 33);
        },
    );
}

#[test]
fn partial_inverse_closed_form_holds_to_t_60() {
    timed(
        "partial inverse transform closed form, T <= 60",
        Duration::from_secs(300),
        || {
            let report = suite_c320(60).unwrap();
            assert!(report.passed(), "failures: {:?}", report.failures);
            // sum of T^2, T = 1..=60
            assert_eq!(report.cases_run, 60 * 61 * 121 / 6);
        },
    );
}

#[test]
fn series_evaluation_matches_closed_form_oracle() {
    timed(
        "series evaluation vs closed form, n <= 100 x 200 random (a, b)",
        Duration::from_secs(30),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x6b72_6573_6368_2036);
            for _ in 0..200 {
                let a = Rational::new(rng.gen_range(-1000i64..=1000), rng.gen_range(1i64..=50));
                // positive b can never hit a Pochhammer zero
                let b = Rational::new(rng.gen_range(1i64..=2000), rng.gen_range(1i64..=50));
                for n in 0..=100u64 {
                    let series = HypSeriesSpec::new(
                        vec![Rational::from_integer(-(n as i64)), a.clone()],
                        vec![b.clone()],
                        Rational::one(),
                    );
                    assert_eq!(
                        evaluate_terminating(&series).unwrap(),
                        chu_vandermonde(n, &a, &b).unwrap(),
                        "mismatch at n={n}, a={a}, b={b}"
                    );
                }
            }
        },
    );
}

#[test]
fn conjecture_sweep_to_40_is_clean_and_worker_invariant() {
    timed(
        "boundedness sweep T <= 40, workers 1/2/8",
        Duration::from_secs(300),
        || {
            let single = kt_sweep(1, 40, 1).unwrap();
            assert!(
                single.violations.is_empty(),
                "violations found: {:?}",
                single.violations
            );
            assert_eq!(single.max_abs_value, Rational::one());
            // the maximum is attained on a boundary cell (n = 0 or s = 0)
            assert!(
                single.max_abs_witness.n == 0 || single.max_abs_witness.s == 0,
                "witness off the boundary: {:?}",
                single.max_abs_witness
            );
            assert_eq!(single.cells_checked, (1..=40u64).map(|t| t * t).sum::<u64>());

            let reference = serde_json::to_string(&single).unwrap();
            for workers in [2, 8] {
                let report = kt_sweep(1, 40, workers).unwrap();
                assert_eq!(
                    serde_json::to_string(&report).unwrap(),
                    reference,
                    "output drifted with {workers} workers"
                );
            }
        },
    );
}

#[test]
fn transform_forms_agree_on_random_corpus() {
    timed(
        "binomial-sum vs Pochhammer forms on the random corpus",
        Duration::from_secs(60),
        || {
            for x in &random_corpus() {
                assert_eq!(tilde_transform(x), tilde_transform_pochhammer(x));
                assert_eq!(inverse_transform(x), inverse_transform_binomial(x));
            }
        },
    );
}

#[test]
fn suites_can_fail_when_the_oracle_is_corrupted() {
    timed(
        "mutation sensitivity of the row-sum suite",
        Duration::from_secs(10),
        || {
            // canonical right side: (-1)^(n-1) (2n+1); flip its sign
            let flipped = |n: u64| {
                let v = Rational::from(2 * n + 1);
                if n % 2 == 1 {
                    -v
                } else {
                    v
                }
            };
            let report = suite_lemma340_with_rhs(100, flipped).unwrap();
            assert!(!report.passed());
            assert_eq!(report.failures.len(), 100);
            assert_eq!(report.failures[0].lhs, "3");
            assert_eq!(report.failures[0].rhs, "-3");

            // and the uncorrupted oracle still passes
            assert!(suite_lemma340(100).unwrap().passed());
        },
    );
}
