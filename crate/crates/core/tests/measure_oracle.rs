use cesaro_ca::ca::LocalRule;
use cesaro_ca::measures::{pushforward_cylinder, MarkovMeasure, PreimageDiagram};
use cesaro_ca::symbolic::{Alphabet, Symbol};
use cesaro_ca::Caps;
use num::{BigRational, One};
use proptest::prelude::*;

fn measure(q: usize, weights: &[u32]) -> MarkovMeasure {
    let total: u32 = weights[..q].iter().sum();
    let probs = weights[..q]
        .iter()
        .map(|&w| BigRational::new(w.into(), total.into()))
        .collect();
    MarkovMeasure::bernoulli(Alphabet::with_size(q).unwrap(), probs).unwrap()
}

fn rule(q: usize, radius: usize, table: &[Symbol]) -> LocalRule {
    let size = q.pow(2 * radius as u32 + 1);
    let table = table[..size].iter().map(|&s| s % q as Symbol).collect();
    LocalRule::new(Alphabet::with_size(q).unwrap(), radius, table).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn diagram_counts_match_enumeration(
        q in 2usize..=3,
        table in prop::collection::vec(0u8..3, 27),
        u in prop::collection::vec(0u8..2, 1..=3),
        n in 1usize..=2,
    ) {
        let f = rule(q, 1, &table);
        let mut d = PreimageDiagram::word(&u, q);
        for _ in 0..n {
            d = d.preimage(&f, &Caps::default()).unwrap();
        }
        let brute = f
            .alphabet()
            .words(u.len() + 2 * n)
            .filter(|w| f.apply_window_n(w, n).unwrap().as_slice() == u.as_slice())
            .count();
        prop_assert_eq!(d.count(), brute.into());
    }

    #[test]
    fn pushforward_is_a_probability_on_each_length(
        q in 2usize..=3,
        radius in 0usize..=1,
        table in prop::collection::vec(0u8..3, 27),
        weights in prop::collection::vec(1u32..5, 3),
        n in 0usize..=3,
        len in 1usize..=2,
    ) {
        let f = rule(q, radius, &table);
        let mu = measure(q, &weights);
        let caps = Caps::default();
        let total: BigRational = f
            .alphabet()
            .words(len)
            .map(|u| pushforward_cylinder(&f, &mu, &u, n, &caps).unwrap())
            .sum();
        prop_assert!(total.is_one());
    }

    #[test]
    fn pushforward_is_consistent_under_extension(
        table in prop::collection::vec(0u8..3, 27),
        weights in prop::collection::vec(1u32..5, 3),
        u in prop::collection::vec(0u8..3, 1..=2),
        n in 0usize..=3,
    ) {
        let f = rule(3, 1, &table);
        let mu = measure(3, &weights);
        let caps = Caps::default();
        let whole = pushforward_cylinder(&f, &mu, &u, n, &caps).unwrap();
        let right: BigRational = (0..3u8)
            .map(|a| {
                let mut v = u.clone();
                v.push(a);
                pushforward_cylinder(&f, &mu, &v, n, &caps).unwrap()
            })
            .sum();
        let left: BigRational = (0..3u8)
            .map(|a| {
                let mut v = vec![a];
                v.extend_from_slice(&u);
                pushforward_cylinder(&f, &mu, &v, n, &caps).unwrap()
            })
            .sum();
        prop_assert_eq!(&whole, &right);
        prop_assert_eq!(&whole, &left);
    }
}
