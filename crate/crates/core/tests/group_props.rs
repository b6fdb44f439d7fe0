mod oracles;

use primcycle::families::{sporadic, SporadicName};
use primcycle::{GroupSpec, Permutation, StrongGeneratingSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_group(seed: u64) -> (usize, Vec<Permutation>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 + (seed % 9) as usize;
    let gens = oracles::random_generators(&mut rng, n)
        .into_iter()
        .map(|g| Permutation::from_images(g).unwrap())
        .collect();
    (n, gens)
}

fn shuffled_base(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xbad5eed);
    let mut pts: Vec<usize> = (0..n).collect();
    pts.shuffle(&mut rng);
    pts
}

proptest! {
    #[test]
    fn orbit_sizes_divide_the_order(seed in any::<u64>()) {
        let (n, gens) = random_group(seed);
        let g = GroupSpec::new(n, gens).unwrap();
        let order = g.order().unwrap();
        for orbit in g.orbits() {
            prop_assert_eq!(order % orbit.len() as u128, 0);
        }
        let sgs = g.build_sgs();
        let product: u128 = sgs.levels().iter().map(|l| l.orbit_len() as u128).product();
        prop_assert_eq!(product, order);
    }

    #[test]
    fn order_and_membership_do_not_depend_on_the_base(seed in any::<u64>()) {
        let (n, gens) = random_group(seed);
        let a = StrongGeneratingSet::new(n, &gens);
        let b = StrongGeneratingSet::with_base_prefix(n, &gens, &shuffled_base(n, seed));
        prop_assert_eq!(a.order(), b.order());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10 {
            let x = a.random_element(&mut rng);
            prop_assert!(b.contains(&x));
            let y = Permutation::from_images(oracles::random_images(&mut rng, n)).unwrap();
            prop_assert_eq!(a.contains(&y), b.contains(&y));
        }
    }

    #[test]
    fn orbit_stabilizer(seed in any::<u64>()) {
        let (n, gens) = random_group(seed);
        let g = GroupSpec::new(n, gens).unwrap();
        let x = (seed % n as u64) as usize;
        let orbit = g.orbits().into_iter().find(|o| o.contains(&x)).unwrap();
        let stab = g.stabilizer(&[x]).unwrap();
        prop_assert_eq!(stab.order().unwrap() * orbit.len() as u128, g.order().unwrap());
    }
}

#[test]
fn m12_order_with_a_reversed_base() {
    let m12 = sporadic(SporadicName::M12).unwrap();
    let base: Vec<usize> = (0..12).rev().collect();
    let again = StrongGeneratingSet::with_base_prefix(12, m12.spec.generators(), &base);
    assert_eq!(again.base()[..5], base[..5]);
    assert_eq!(again.order(), Some(95_040));
    assert_eq!(m12.spec.transitivity_degree(), 5);
}

#[test]
fn symmetric_and_alternating_orders() {
    let mut fact = 1u128;
    for n in 1..=20 {
        fact *= n as u128;
        assert_eq!(GroupSpec::symmetric(n).order().unwrap(), fact);
        if n >= 2 {
            assert_eq!(GroupSpec::alternating(n).order().unwrap(), (fact / 2).max(1));
        }
        if n >= 3 {
            assert!(GroupSpec::alternating(n).contains_alternating());
        }
    }
}

#[test]
fn stabilizer_rejects_bad_points() {
    let g = GroupSpec::symmetric(5);
    assert!(g.stabilizer(&[5]).is_err());
    assert!(g.stabilizer(&[1, 1]).is_err());
}
