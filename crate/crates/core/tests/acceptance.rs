//! Acceptance criteria, one line per criterion.

use std::process::{Command, ExitCode};
use std::time::Instant;

use num_traits::{One, Zero};
use qwhitney::identities::{hankel_probe, verify_grid, Bounds};
use qwhitney::qdist::{
    direct_moment_oracle, paper_form_moment, q_factorial_moment, sample, whitney_moment, QDistSpec, UpperLimit,
};
use qwhitney::ring::rational::{binomial, rat, ratio, rational_from_f64};
use qwhitney::ring::{BigRational, LaurentPoly, QMode, QRing, RationalQ, RingScalar, SymbolicQ};
use qwhitney::tableaux::{
    enumerate_distinct, enumerate_weak, first_kind_normalizer, tableau_sum_first, tableau_sum_second,
};
use qwhitney::whitney::{
    choose2, dowling_polynomial, first_elementary_in, first_rows, q_stirling_first, q_stirling_second,
    second_alternating_in, second_compositions_in, second_multisets_in, second_rows, WhitneyParams,
};
use qwhitney::IdentityId;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn grid(ms: &[BigRational], rs: &[BigRational]) -> Vec<(BigRational, BigRational)> {
    ms.iter()
        .flat_map(|m| rs.iter().map(move |r| (m.clone(), r.clone())))
        .collect()
}

fn algorithm_agreement() -> Outcome {
    let ring = SymbolicQ;
    let mut checked = 0usize;
    let mut bad = Vec::new();
    for (m, r) in grid(&[rat(1), rat(2), ratio(3, 2)], &[rat(0), rat(1), ratio(5, 2)]) {
        let (me, re) = (LaurentPoly::constant(m.clone()), LaurentPoly::constant(r.clone()));
        let first = first_rows(&ring, &me, &re, 12);
        let second = second_rows(&ring, &me, &re, 12);
        for n in 0..=12usize {
            for k in 0..=n as i64 {
                let w = &first[n][k as usize];
                let big_w = &second[n][k as usize];
                let ok = *w == first_elementary_in(&ring, &me, &re, n, k)
                    && *big_w == second_compositions_in(&ring, &me, &re, n, k)
                    && *big_w == second_multisets_in(&ring, &me, &re, n, k)
                    && *big_w == second_alternating_in(&ring, &me, &re, n, k).expect("m is nonzero");
                checked += 1;
                if !ok {
                    bad.push(format!("(m={m}, r={r}, n={n}, k={k})"));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} entries, mismatches: {bad:?}"))
}

fn tableau_oracle() -> Outcome {
    let ring = SymbolicQ;
    let mut checked = 0usize;
    let mut bad = Vec::new();
    for (m, r) in grid(&[rat(1), rat(2)], &[rat(0), rat(1)]) {
        let (me, re) = (LaurentPoly::constant(m.clone()), LaurentPoly::constant(r.clone()));
        let first = first_rows(&ring, &me, &re, 10);
        let second = second_rows(&ring, &me, &re, 10);
        for n in 0..=10usize {
            for k in 0..=n as i64 {
                let t1 = tableau_sum_first(&ring, &me, &re, n, k);
                let t2 = tableau_sum_second(&ring, &me, &re, n, k);
                let e1 = &first_kind_normalizer(&ring, n, k) * &first[n][k as usize];
                let e2 = &ring.q_pow(-choose2(k)) * &second[n][k as usize];
                checked += 1;
                if t1 != e1 || t2 != e2 {
                    bad.push(format!("(m={m}, r={r}, n={n}, k={k})"));
                }
            }
        }
    }
    let mut card_bad = Vec::new();
    for n in 0..=10i64 {
        for k in 0..=n {
            let c = BigRational::from_integer(binomial(n, k));
            let d = BigRational::from_integer(enumerate_distinct(n - 1, (n - k) as usize).count().into());
            let w = BigRational::from_integer(enumerate_weak(k, (n - k) as usize).count().into());
            if d != c || w != c {
                card_bad.push((n, k));
            }
        }
    }
    outcome(
        bad.is_empty() && card_bad.is_empty(),
        format!("{checked} weight sums, mismatches: {bad:?}, cardinality mismatches: {card_bad:?}"),
    )
}

fn identity_suite() -> Outcome {
    let status = Command::new(env!("CARGO_BIN_EXE_qwhitney"))
        .args(["verify", "--suite", "all", "--nmax", "10"])
        .output()
        .expect("binary runs");
    let summary = String::from_utf8_lossy(&status.stdout);
    let failing: Vec<&str> = summary.lines().filter(|l| !l.ends_with("pass")).collect();
    let cli_ok = status.status.code() == Some(0);

    // The generating-function check to degree 12.
    let reports = verify_grid(
        &[IdentityId::GenfuncSecond],
        &qwhitney::identities::default_grid(),
        &QMode::Symbolic,
        &Bounds::new(12),
    )
    .expect("genfunc runs");
    let genfunc_ok = reports.iter().all(|r| r.pass);
    let checks: usize = summary
        .lines()
        .filter_map(|l| l.split('\t').nth(1))
        .filter_map(|f| f.split('/').nth(1))
        .filter_map(|t| t.parse::<usize>().ok())
        .sum();
    outcome(
        cli_ok && failing.is_empty() && genfunc_ok,
        format!(
            "verify exit {:?}, {checks} checks, failing ids {failing:?}; genfunc degree 12: {} checks, all pass {genfunc_ok}",
            status.status.code(),
            reports.len()
        ),
    )
}

/// Classical Stirling numbers from their recurrences.
fn classical_stirling(n: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut first = vec![vec![0i64; n + 1]; n + 1];
    let mut second = vec![vec![0i64; n + 1]; n + 1];
    first[0][0] = 1;
    second[0][0] = 1;
    for i in 1..=n {
        for k in 1..=i {
            first[i][k] = first[i - 1][k - 1] + (i as i64 - 1) * first[i - 1][k];
            second[i][k] = second[i - 1][k - 1] + k as i64 * second[i - 1][k];
        }
    }
    (first, second)
}

/// `(-1)^(n-k) e_(n-k)(r, m+r, ..., (n-1)m+r)` by subset enumeration.
fn r_whitney_first_brute(m: i64, r: i64, n: usize, k: usize) -> BigRational {
    let size = n - k;
    let mut total = BigRational::zero();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != size {
            continue;
        }
        let prod = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .fold(BigRational::one(), |acc, i| acc * rat(m * i as i64 + r));
        total += prod;
    }
    if size % 2 == 1 {
        -total
    } else {
        total
    }
}

fn classical_limits() -> Outcome {
    let one = rat(1);
    let (c1, s2) = classical_stirling(4);
    let s42 = q_stirling_second(4, 2).eval(&one).unwrap();
    let c42 = q_stirling_first(4, 2).eval(&one).unwrap();
    let stirling_ok = s42 == rat(7) && c42 == rat(11) && rat(s2[4][2]) == s42 && rat(c1[4][2]) == c42;

    let ring = RationalQ::new(one.clone()).unwrap();
    let rows = first_rows(&ring, &rat(2), &rat(1), 8);
    let sym = first_rows(&SymbolicQ, &LaurentPoly::constant(rat(2)), &LaurentPoly::constant(rat(1)), 8);
    let mut bad = Vec::new();
    for n in 0..=8usize {
        for k in 0..=n {
            let oracle = r_whitney_first_brute(2, 1, n, k);
            if rows[n][k] != oracle || sym[n][k].eval(&one).unwrap() != oracle {
                bad.push((n, k));
            }
        }
    }
    outcome(
        stirling_ok && bad.is_empty(),
        format!("S(4,2)={s42}, unsigned first (4,2)={c42}; r-Whitney (2,1) n<=8 mismatches: {bad:?}"),
    )
}

fn hankel() -> Outcome {
    let mut bad = Vec::new();
    let mut rows = 0;
    for q in [QMode::Rational(rat(1)), QMode::Rational(ratio(1, 2))] {
        for (m, r) in grid(&[rat(1), rat(2)], &[rat(0), rat(1)]) {
            let probe = hankel_probe(&m, &[r.clone(), &r + rat(1)], &q, 4).expect("probe runs");
            rows += 1;
            if !probe.consistent() {
                bad.push(format!("({q}, m={m}, r={r})"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{rows} (q, m, r) probes at order 4, mismatches: {bad:?}"))
}

fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs().max(1.0)
}

fn q_int(x: u64, q: f64) -> f64 {
    (1.0 - q.powi(x as i32)) / (1.0 - q)
}

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn distributions() -> Outcome {
    let mut problems: Vec<String> = Vec::new();
    let mut specs = Vec::new();
    for q in [0.3, 0.5, 0.9] {
        for lambda in [0.1, 0.7] {
            specs.push(QDistSpec::heine(q, lambda).unwrap());
        }
        for lambda in [0.1, 0.7, 0.9 / (1.0 - q)] {
            specs.push(QDistSpec::euler(q, lambda).unwrap());
        }
    }
    for spec in &specs {
        let total = direct_moment_oracle(spec, |_| 1.0, spec.tol).unwrap();
        if (total - 1.0).abs() > 1e-10 {
            problems.push(format!("normalization {spec:?}: {total}"));
        }
        for r in 0..=5u64 {
            let closed = q_factorial_moment(spec, r).unwrap();
            let g = |x: u64| (0..r).map(|i| q_int(x.saturating_sub(i), spec.q)).product::<f64>();
            let oracle = direct_moment_oracle(spec, g, spec.tol).unwrap();
            if !rel_close(closed, oracle, 1e-9) {
                problems.push(format!("factorial moment {spec:?} r={r}: {closed} vs {oracle}"));
            }
            if spec.family == qwhitney::qdist::Family::Euler && closed != spec.lambda.powi(r as i32) {
                problems.push(format!("euler factorial moment not λ^r at {spec:?}"));
            }
        }
        for (m, r) in [(1.0, 0.0), (2.0, 1.0), (1.5, 2.5)] {
            for n in 0..=6u64 {
                let value = whitney_moment(spec, m, r, n).unwrap();
                let oracle = direct_moment_oracle(spec, |x| (m * q_int(x, spec.q) + r).powi(n as i32), spec.tol).unwrap();
                if !rel_close(value, oracle, 1e-9) {
                    problems.push(format!("whitney moment {spec:?} (m,r,n)=({m},{r},{n}): {value} vs {oracle}"));
                }
                if spec.family == qwhitney::qdist::Family::Euler {
                    let params = WhitneyParams::new(
                        rational_from_f64(m).unwrap(),
                        rational_from_f64(r).unwrap(),
                        QMode::Float(spec.q),
                    )
                    .unwrap();
                    let x = rational_from_f64(m * spec.lambda).unwrap();
                    let dowling = match dowling_polynomial(&params, n as usize, &x).unwrap() {
                        RingScalar::Float(v) => v,
                        other => panic!("float mode gave {other:?}"),
                    };
                    if !rel_close(value, dowling, 1e-9) {
                        problems.push(format!("dowling at x=mλ {spec:?} n={n}: {value} vs {dowling}"));
                    }
                }
            }
        }
    }

    // Finite upper limits, shown to differ.
    let euler = QDistSpec::euler(0.5, 0.4).unwrap();
    let heine = QDistSpec::heine(0.5, 0.7).unwrap();
    let e_fin = paper_form_moment(&euler, 1.0, 0.0, 1, UpperLimit::Finite).unwrap();
    let e_inf = paper_form_moment(&euler, 1.0, 0.0, 1, UpperLimit::TruncatedInfinite).unwrap();
    let h_fin = paper_form_moment(&heine, 2.0, 1.0, 3, UpperLimit::Finite).unwrap();
    let h_inf = paper_form_moment(&heine, 2.0, 1.0, 3, UpperLimit::TruncatedInfinite).unwrap();
    let h_oracle = direct_moment_oracle(&heine, |x| (2.0 * q_int(x, 0.5) + 1.0).powi(3), 1e-13).unwrap();
    if !rel_close(e_inf, 0.4, 1e-9) || !rel_close(h_inf, h_oracle, 1e-9) {
        problems.push(format!("extended closed forms: euler {e_inf}, heine {h_inf} vs {h_oracle}"));
    }

    // Sampler: the draw mean of [Y]_q is the closed-form mean; the raw
    // draw mean is checked against the series value of E[Y].
    let draws = sample(&heine, 1_000_000, 20_240_601).unwrap();
    let qvals: Vec<f64> = draws.iter().map(|&x| q_int(x, 0.5)).collect();
    let raw: Vec<f64> = draws.iter().map(|&x| x as f64).collect();
    let (qmean, qse) = mean_and_se(&qvals);
    let (rmean, rse) = mean_and_se(&raw);
    let raw_expected = direct_moment_oracle(&heine, |x| x as f64, 1e-13).unwrap();
    let phi = heine.mean();
    if (qmean - phi).abs() > 3.0 * qse {
        problems.push(format!("sampler [Y]_q mean {qmean} vs φ {phi} (se {qse})"));
    }
    if (rmean - raw_expected).abs() > 3.0 * rse {
        problems.push(format!("sampler raw mean {rmean} vs E[Y] {raw_expected} (se {rse})"));
    }

    outcome(
        problems.is_empty(),
        format!(
            "{} specs; finite-limit forms differ: euler n=1 {e_fin:.12} vs {e_inf:.12}, heine n=3 {h_fin:.6e} vs {h_inf:.12}; \
             sampler mean [Y]_q {qmean:.6} vs φ {phi:.6} (|z|={:.2}), raw mean {rmean:.6} vs E[Y] {raw_expected:.6} (|z|={:.2}), \
             raw mean vs φ |z|={:.1}; problems: {problems:?}",
            specs.len(),
            (qmean - phi).abs() / qse,
            (rmean - raw_expected).abs() / rse,
            (rmean - phi).abs() / rse,
        ),
    )
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let criteria: [(&str, f64, fn() -> Outcome); 6] = [
        ("1 ALGORITHM AGREEMENT", 60.0, algorithm_agreement),
        ("2 TABLEAU ORACLE", 120.0, tableau_oracle),
        ("3 IDENTITY SUITE", 300.0, identity_suite),
        ("4 CLASSICAL LIMITS", f64::INFINITY, classical_limits),
        ("5 HANKEL PROBE", 60.0, hankel),
        ("6 DISTRIBUTIONS", 120.0, distributions),
    ];
    let mut failed = 0;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        let pass = result.pass && secs <= budget;
        if !pass {
            failed += 1;
        }
        let budget = if budget.is_finite() { format!("{budget:.0}s") } else { "none".into() };
        println!(
            "[{}] {name} ({secs:.1}s, budget {budget}): {}",
            if pass { "PASS" } else { "FAIL" },
            result.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", 6 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
