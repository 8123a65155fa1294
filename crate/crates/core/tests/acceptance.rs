//! Acceptance criteria, one PASS/FAIL line each.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cesaro_ca::blocking::{
    certify_blocking, classify_equicontinuity, construct_f_periodic_point, falsify_blocking,
    BlockingCertificate, Certification, EquicontinuityClass, SearchParams,
};
use cesaro_ca::ca::{apply_periodic, is_surjective, orbit_periodic, LocalRule, SurjectivityMethod};
use cesaro_ca::catalog;
use cesaro_ca::measures::{
    build_rkm, cesaro_mean, convergence_diagnostic, equicontinuous_cesaro_limit, mu_c_estimate,
    pushforward_cylinder, support_tests, Convergence, MarkovMeasure,
};
use cesaro_ca::symbolic::{Alphabet, PeriodicConfig, Symbol, Word};
use cesaro_ca::Caps;
use num::{BigRational, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn walls_measure() -> MarkovMeasure {
    MarkovMeasure::bernoulli_ratios(Alphabet::with_size(3).unwrap(), &[(1, 2), (1, 4), (1, 4)]).unwrap()
}

fn wall_certificate(f: &LocalRule) -> BlockingCertificate {
    certify_blocking(f, &Word(vec![2]), 0, 1, 1, &Caps::default())
        .unwrap()
        .certificate()
        .expect("`2` certifies")
}

fn within(limit: Duration, started: Instant) {
    let t = started.elapsed();
    assert!(t < limit, "took {t:?}, limit {limit:?}");
}

fn wall_is_blocking() {
    let start = Instant::now();
    let f = catalog::walls_and_parity();
    let wall = Word(vec![2]);
    let Certification::Certified(c) = certify_blocking(&f, &wall, 0, 1, 1, &Caps::default()).unwrap() else {
        panic!("`2` not certified");
    };
    assert!(c.column.iter().all(|w| w.as_slice() == [2]));
    assert!(falsify_blocking(&f, &wall, 0, 1, 8, 0, &Caps::default()).unwrap().is_none());
    within(Duration::from_secs(1), start);
}

fn walls_rule_is_onto() {
    let start = Instant::now();
    let f = catalog::walls_and_parity();
    let v = is_surjective(&f, &Caps::default()).unwrap();
    assert!(v.surjective && v.method == SurjectivityMethod::Exact);
    for len in 1..=4 {
        let mut counts = vec![0usize; 3usize.pow(len as u32)];
        for w in f.alphabet().words(len + 2) {
            let image = f.apply_window(&w).unwrap();
            let code = image.iter().fold(0, |acc, &s| acc * 3 + s as usize);
            counts[code] += 1;
        }
        assert!(counts.iter().all(|&c| c == 9), "length {len}: {counts:?}");
    }
    within(Duration::from_secs(5), start);
}

fn raw_oscillates_means_settle() {
    let f = catalog::walls_and_parity();
    let mu = walls_measure();
    for u in ["2012", "2112"] {
        let w = f.alphabet().parse_word(u).unwrap();
        let s = cesaro_mean(&f, &mu, &w, 64, &Caps::default()).unwrap();
        assert_eq!(convergence_diagnostic(&s.raw[..=10], 5, 1e-3), Convergence::Oscillating, "{u} raw");
        assert_eq!(convergence_diagnostic(&s.means, 5, 1e-3), Convergence::CauchyLike, "{u} means");
    }
}

fn formula_against_cesaro() {
    let start = Instant::now();
    let f = catalog::walls_and_parity();
    let mu = walls_measure();
    let b = wall_certificate(&f);
    let n = 200;
    let rkm = build_rkm(&mu, &b.word, 0, 4, &Caps::default()).unwrap();
    let slack = r(1, 1) - &rkm.mass + r(5, n);
    for u in 0..3 as Symbol {
        let est = mu_c_estimate(&f, &mu, std::slice::from_ref(&b), &[u], &[1, 2, 3, 4], n as usize, &Caps::default())
            .unwrap();
        assert!(est.points.windows(2).all(|p| p[0].value <= p[1].value), "u={u} not monotone");
        assert_eq!(est.points.last().unwrap().mass, rkm.mass);
        let gap = (&est.points.last().unwrap().value - est.cesaro.last()).abs();
        assert!(gap <= slack, "u={u}: gap {gap} > {slack}");
    }
    within(Duration::from_secs(120), start);
}

fn equicontinuous_limit_is_exact() {
    let neg = catalog::negation();
    let mu = MarkovMeasure::bernoulli_ratios(Alphabet::with_size(2).unwrap(), &[(1, 3), (2, 3)]).unwrap();
    let s = cesaro_mean(&neg, &mu, &[0], 64, &Caps::default()).unwrap();
    for t in 1..=32 {
        assert_eq!(s.means[2 * t - 1], r(1, 2), "μ_{}", 2 * t);
    }
    assert!((s.last() - r(1, 2)).abs() <= r(1, 64));
    let verdict = classify_equicontinuity(&neg, &SearchParams::default(), &Caps::default()).unwrap();
    assert_eq!(verdict.class, EquicontinuityClass::E1);
    assert_eq!(equicontinuous_cesaro_limit(&neg, &mu, &verdict, &[0], &Caps::default()).unwrap(), r(1, 2));
}

fn periodic_points_are_dense() {
    let f = catalog::walls_and_parity();
    let b = wall_certificate(&f);
    for len in 0..=2 {
        for v in f.alphabet().words(len) {
            let (x, m) = construct_f_periodic_point(&f, &v, &b, 256).unwrap();
            assert!(m <= 256);
            assert!(x.generator.contains(&v));
            let mut y = x.clone();
            for _ in 0..m {
                y = apply_periodic(&f, &y).unwrap();
            }
            assert_eq!(y, x, "F^{m} does not fix the point through {v:?}");
        }
    }
}

fn negation_periodic_points() {
    let neg = catalog::negation();
    assert!(is_surjective(&neg, &Caps::default()).unwrap().surjective);
    let verdict = classify_equicontinuity(&neg, &SearchParams::default(), &Caps::default()).unwrap();
    assert_eq!(verdict.global, Some((2, 0)));
    for len in 1..=6 {
        for g in neg.alphabet().words(len) {
            let x = PeriodicConfig::new(g).unwrap();
            let twice = apply_periodic(&neg, &apply_periodic(&neg, &x).unwrap()).unwrap();
            assert_eq!(twice, x);
            let orbit = orbit_periodic(&neg, &x, 8).unwrap();
            assert_eq!(orbit.preperiod, 0);
            assert_eq!(2 % orbit.period, 0);
        }
    }
}

fn random_rational_row(rng: &mut ChaCha8Rng, q: usize, positive: bool) -> Vec<BigRational> {
    let lo = if positive { 1 } else { 0 };
    let weights: Vec<i64> = (0..q).map(|_| rng.gen_range(lo..=6)).collect();
    let total: i64 = weights.iter().sum::<i64>().max(1);
    let mut row: Vec<BigRational> = weights.iter().map(|&w| r(w, total)).collect();
    if weights.iter().all(|&w| w == 0) {
        row[0] = r(1, 1);
    }
    row
}

fn pushforward_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..200 {
        let q = rng.gen_range(2..=3usize);
        let a = Alphabet::with_size(q).unwrap();
        let table: Vec<Symbol> = (0..q.pow(3)).map(|_| rng.gen_range(0..q as Symbol)).collect();
        let rule = LocalRule::new(a.clone(), 1, table).unwrap();
        let mu = if rng.gen_bool(0.5) {
            MarkovMeasure::bernoulli(a.clone(), random_rational_row(&mut rng, q, false)).unwrap()
        } else {
            let rows = (0..q).map(|_| random_rational_row(&mut rng, q, true)).collect();
            MarkovMeasure::markov(a.clone(), rows).unwrap()
        };
        let n = rng.gen_range(0..=3usize);
        let len = rng.gen_range(1..=3usize);
        let u: Vec<Symbol> = (0..len).map(|_| rng.gen_range(0..q as Symbol)).collect();
        let exact = pushforward_cylinder(&rule, &mu, &u, n, &Caps::default()).unwrap();
        let brute: BigRational = a
            .words(len + 2 * n)
            .filter(|w| rule.apply_window_n(w, n).unwrap().as_slice() == u.as_slice())
            .map(|w| mu.cylinder_prob(&w))
            .sum();
        assert_eq!(exact, brute, "rule {:?} u {u:?} n {n}", rule.table());
    }
}

fn elementary_soundness() {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for number in 0..=255u8 {
        let rule = catalog::elementary(number);
        for len in 1..=4 {
            for word in rule.alphabet().words(len) {
                for offset in 0..len {
                    let first = if (len - 1) % 2 == 0 { len } else { len + 1 };
                    let cert = (first..=caps.strip_width).step_by(2).find_map(|strip| {
                        certify_blocking(&rule, &word, offset, 1, strip, &caps).unwrap().certificate()
                    });
                    let Some(c) = cert else { continue };
                    let witness = falsify_blocking(&rule, &word, offset, 1, 6, 0, &caps).unwrap();
                    assert!(witness.is_none(), "rule {number}: {word:?} certified and falsified");
                    replay(&rule, &c, &mut rng);
                }
            }
        }
    }
}

fn replay(rule: &LocalRule, c: &BlockingCertificate, rng: &mut ChaCha8Rng) {
    let steps = c.preperiod + 2 * c.period + 2;
    for _ in 0..50 {
        let mut y: Vec<Symbol> = (0..steps).map(|_| rng.gen_range(0..2)).collect();
        y.extend_from_slice(&c.word);
        y.extend((0..steps).map(|_| rng.gen_range(0..2)));
        for n in 0..=steps {
            let at = steps - n + c.offset;
            assert_eq!(&y[at..at + c.width], c.column_at(n).as_slice(), "step {n}");
            if n < steps {
                y = rule.apply_window(&y).unwrap().into_inner();
            }
        }
    }
}

fn support_inclusion() {
    let f = catalog::walls_and_parity();
    let mu = walls_measure();
    let report = support_tests(&f, &mu, &[wall_certificate(&f)], 2, &Caps::default()).unwrap();
    assert_eq!(report.entries.len(), 12);
    assert!(report.all_witnessed());
    assert!(report
        .entries
        .iter()
        .all(|e| e.witness.as_ref().is_some_and(|(_, v)| v.is_positive())));
}

fn main() {
    let criteria: [(&str, fn()); 10] = [
        ("walls-and-parity: `2` certified, no falsifier witness at horizon 8", wall_is_blocking),
        ("walls-and-parity is onto; every word of length <= 4 has 9 preimages", walls_rule_is_onto),
        ("raw pushforwards of 2012/2112 oscillate; Cesàro means at N=64 settle", raw_oscillates_means_settle),
        ("W_m(u) non-decreasing and within slack of the Cesàro mean at N=200", formula_against_cesaro),
        ("negation: μ_2t([0]) = 1/2 and the equicontinuous limit is 1/2", equicontinuous_limit_is_exact),
        ("F-periodic points through every word of length <= 2", periodic_points_are_dense),
        ("negation: every periodic point of period <= 6 satisfies F^2 x = x", negation_periodic_points),
        ("exact pushforward equals brute force on 200 random instances", pushforward_oracle),
        ("elementary rules: certificates never falsified and replay exactly", elementary_soundness),
        ("every word of length <= 2 in the support gets W_m > 0", support_inclusion),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2}  {name}  ({secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL {:>2}  {name}  ({secs:.2}s): {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
