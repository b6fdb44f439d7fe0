use primcycle::Permutation;
use proptest::prelude::*;

fn perm_of_degree(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn perm() -> impl Strategy<Value = Permutation> {
    (1usize..=64).prop_flat_map(perm_of_degree)
}

fn triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1usize..=20).prop_flat_map(|n| (perm_of_degree(n), perm_of_degree(n), perm_of_degree(n)))
}

fn single_cycle_len(p: &Permutation) -> Option<usize> {
    let moved: Vec<usize> = (0..p.degree()).filter(|&x| p.apply(x) != x).collect();
    let start = *moved.first()?;
    let mut len = 1;
    let mut x = p.apply(start);
    while x != start {
        len += 1;
        x = p.apply(x);
    }
    (len == moved.len()).then_some(len)
}

proptest! {
    #[test]
    fn composition_is_associative((a, b, c) in triple()) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn composition_applies_right_factor_first((a, b, _c) in triple()) {
        let ab = a.compose(&b).unwrap();
        for x in 0..a.degree() {
            prop_assert_eq!(ab.apply(x), a.apply(b.apply(x)));
        }
    }

    #[test]
    fn inverse_cancels(p in perm()) {
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
    }

    #[test]
    fn conjugation_preserves_cycle_type((g, x, _c) in triple()) {
        prop_assert_eq!(g.conjugate_by(&x).cycle_type(), g.cycle_type());
    }

    #[test]
    fn cycle_notation_round_trips(p in perm()) {
        let text = p.to_cycle_string();
        prop_assert_eq!(Permutation::parse_cycles(&text, p.degree()).unwrap(), p);
    }

    #[test]
    fn cycle_type_sums_to_degree(p in perm()) {
        let ct = p.cycle_type();
        prop_assert_eq!(ct.lengths().iter().sum::<usize>(), p.degree());
        prop_assert_eq!(ct.fixed_points(), p.fixed_points());
    }

    #[test]
    fn coprime_power_matches_brute_force(p in (1usize..=12).prop_flat_map(perm_of_degree)) {
        // every power that is a single cycle, by direct exponentiation
        let order = p.order();
        let mut best: Option<usize> = None;
        let mut power = Permutation::identity(p.degree());
        for _ in 1..=order {
            power = power.compose(&p).unwrap();
            if let Some(len) = single_cycle_len(&power) {
                best = best.max(Some(len));
            }
        }
        let got = p.coprime_cycle_power();
        prop_assert_eq!(got.as_ref().and_then(single_cycle_len), best);
        if let Some(q) = got {
            // the power lies in <p>
            let mut h = Permutation::identity(p.degree());
            let mut inside = false;
            for _ in 0..order {
                h = h.compose(&p).unwrap();
                inside |= h == q;
            }
            prop_assert!(inside);
        }
    }
}

#[test]
fn parse_rejects_malformed_text() {
    for bad in ["(1 2", "(0 1)", "(1 1)", "(1 2)(2 3)", "(1 9)", "1 2", "(a b)"] {
        assert!(Permutation::parse_cycles(bad, 8).is_err(), "{bad}");
    }
    assert!(Permutation::parse_cycles("()", 4).unwrap().is_identity());
    assert!(Permutation::parse_cycles("", 4).unwrap().is_identity());
    assert_eq!(
        Permutation::parse_cycles("(1,2,3)", 3).unwrap(),
        Permutation::parse_cycles("(1 2 3)", 3).unwrap()
    );
}
