use cesaro_ca::blocking::{classify_equicontinuity, search_blocking_words, EquicontinuityClass, SearchParams};
use cesaro_ca::ca::LocalRule;
use cesaro_ca::catalog;
use cesaro_ca::symbolic::Word;
use cesaro_ca::Caps;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Runs `rule` on `L B R` for random flanks and checks the window column
/// against the certificate for every step that the flanks can support.
fn replay_certificates(rule: &LocalRule, params: &SearchParams, rng: &mut ChaCha8Rng) -> usize {
    let certs = search_blocking_words(rule, params, &Caps::default()).unwrap();
    let q = rule.alphabet().len() as u8;
    let r = rule.radius();
    for c in &certs {
        let steps = c.preperiod + 2 * c.period + 3;
        for _ in 0..50 {
            let flank = |rng: &mut ChaCha8Rng| -> Vec<u8> { (0..r * steps).map(|_| rng.gen_range(0..q)).collect() };
            let mut y = flank(rng);
            y.extend_from_slice(&c.word);
            y.extend(flank(rng));
            for n in 0..=steps {
                let start = r * (steps - n) + c.offset;
                assert_eq!(
                    Word(y[start..start + c.width].to_vec()),
                    *c.column_at(n),
                    "certificate {:?} broken at step {n}",
                    c.word
                );
                if n < steps {
                    y = rule.apply_window(&y).unwrap().into_inner();
                }
            }
        }
    }
    certs.len()
}

#[test]
fn elementary_certificates_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let params = SearchParams { max_len: 3, ..Default::default() };
    let mut certified_rules = 0;
    for n in 0..=255u8 {
        if replay_certificates(&catalog::elementary(n), &params, &mut rng) > 0 {
            certified_rules += 1;
        }
    }
    assert!(certified_rules > 0);
}

#[test]
fn walls_rule_certificates_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let params = SearchParams { max_len: 3, ..Default::default() };
    assert!(replay_certificates(&catalog::walls_and_parity(), &params, &mut rng) > 0);
}

#[test]
fn shifts_and_xor_are_sensitive() {
    let params = SearchParams { max_len: 4, ..Default::default() };
    for rule in [catalog::left_shift(2), catalog::xor_right(), catalog::elementary(90)] {
        let v = classify_equicontinuity(&rule, &params, &Caps::default()).unwrap();
        assert_eq!(v.class, EquicontinuityClass::NoBlockingWordFound);
    }
}

#[test]
fn constant_and_identity_are_e1() {
    let params = SearchParams::default();
    for rule in [catalog::constant(3, 1), catalog::identity(3), catalog::elementary(204)] {
        let v = classify_equicontinuity(&rule, &params, &Caps::default()).unwrap();
        assert_eq!(v.class, EquicontinuityClass::E1);
    }
}
