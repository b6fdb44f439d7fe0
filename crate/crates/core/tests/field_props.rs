use std::collections::HashSet;

use primcycle::field::{singer_matrix, FieldElement, FiniteField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRIMES: [u64; 11] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

/// Every (p, e) with p^e <= 4096.
fn grid() -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in PRIMES.into_iter().chain([37, 41, 43, 47, 53, 59, 61, 67]) {
        let mut e = 1;
        while p.pow(e) <= 4096 {
            out.push((p, e));
            e += 1;
        }
    }
    out
}

/// Schoolbook product of coefficient vectors reduced by the monic modulus.
fn poly_mul(f: &FiniteField, a: FieldElement, b: FieldElement) -> FieldElement {
    let p = f.characteristic();
    let e = f.degree() as usize;
    let (ca, cb) = (f.coefficients(a), f.coefficients(b));
    let mut prod = vec![0u64; 2 * e];
    for i in 0..e {
        for j in 0..e {
            prod[i + j] = (prod[i + j] + ca[i] as u64 * cb[j] as u64) % p;
        }
    }
    let m = f.modulus();
    for top in (e..2 * e).rev() {
        let c = prod[top];
        if c != 0 {
            for (i, &mi) in m.iter().enumerate().take(e) {
                let k = top - e + i;
                prod[k] = (prod[k] + (p - c) * mi as u64 % p) % p;
            }
            prod[top] = 0;
        }
    }
    let coeffs: Vec<u32> = prod[..e].iter().map(|&c| c as u32).collect();
    f.from_coefficients(&coeffs)
}

#[test]
fn field_axioms_over_the_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, e) in grid() {
        let f = FiniteField::new(p, e).unwrap();
        let q = f.order() as u32;
        let pick = |rng: &mut ChaCha8Rng| f.element(rng.gen_range(0..q));
        let trials = if q <= 64 { (q * q) as usize } else { 3000 };
        for t in 0..trials {
            let (a, b) = if q <= 64 {
                (f.element(t as u32 / q), f.element(t as u32 % q))
            } else {
                (pick(&mut rng), pick(&mut rng))
            };
            let c = pick(&mut rng);
            assert_eq!(f.mul(a, b), poly_mul(&f, a, b), "GF({p}^{e})");
            assert_eq!(f.add(a, b), f.add(b, a));
            assert_eq!(f.mul(a, b), f.mul(b, a));
            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
        }
        assert!(f.inv(f.zero()).is_none());
    }
}

#[test]
fn every_nonzero_element_has_order_dividing_q_minus_one() {
    for (p, e) in grid().into_iter().filter(|&(p, e)| p.pow(e) <= 512) {
        let f = FiniteField::new(p, e).unwrap();
        let q = f.order();
        for x in f.nonzero_elements() {
            assert_eq!(f.pow(x, q - 1), f.one());
            assert_eq!(f.pow(x, q), x);
        }
        let g = f.primitive_element();
        let powers: HashSet<_> = (0..q - 1).map(|k| f.pow(g, k)).collect();
        assert_eq!(powers.len() as u64, q - 1, "primitive element of GF({q})");
    }
}

#[test]
fn squares_are_half_of_the_nonzero_elements() {
    for (p, e) in grid().into_iter().filter(|&(p, e)| p != 2 && p.pow(e) <= 2048) {
        let f = FiniteField::new(p, e).unwrap();
        let squares: HashSet<_> = f.nonzero_elements().map(|x| f.mul(x, x)).collect();
        for x in f.nonzero_elements() {
            assert_eq!(f.is_square(x).unwrap(), squares.contains(&x));
        }
        assert_eq!(squares.len() as u64, (f.order() - 1) / 2);
        assert!(f.is_square(f.zero()).is_err());
    }
    let f8 = FiniteField::new(2, 3).unwrap();
    assert!(f8.is_square(f8.one()).is_err());
}

#[test]
fn frobenius_fixes_exactly_the_prime_field() {
    for (p, e) in grid().into_iter().filter(|&(_, e)| e > 1) {
        let f = FiniteField::new(p, e).unwrap();
        let fixed: Vec<_> = f.elements().filter(|&x| f.frobenius(x, 1) == x).collect();
        let prime: Vec<_> = (0..p as i64).map(|i| f.from_int(i)).collect();
        assert_eq!(fixed.len() as u64, p);
        assert!(prime.iter().all(|x| fixed.contains(x)));
        // an automorphism: it respects products
        for x in f.elements().take(50) {
            for y in f.elements().skip(3).take(50) {
                assert_eq!(f.frobenius(f.mul(x, y), 1), f.mul(f.frobenius(x, 1), f.frobenius(y, 1)));
            }
        }
        for x in f.elements() {
            assert_eq!(f.frobenius(x, e), x);
        }
    }
}

#[test]
fn gf9_modulus_is_the_first_irreducible_in_constant_first_order() {
    let f = FiniteField::new(3, 2).unwrap();
    assert_eq!(f.modulus(), &[1, 0, 1]);
    // a monic quadratic is irreducible over GF(3) iff it has no root
    let has_root = |c0: u32, c1: u32| (0..3).any(|x| (x * x + c1 * x + c0) % 3 == 0);
    let first = (0..9).map(|i| (i / 3, i % 3)).find(|&(c0, c1)| !has_root(c0, c1)).unwrap();
    assert_eq!(first, (1, 0));
}

#[test]
fn gf7_primitive_element_is_three() {
    let f = FiniteField::new(7, 1).unwrap();
    assert_eq!(f.primitive_element(), f.from_int(3));
}

#[test]
fn singer_cycles_are_transitive_on_nonzero_vectors() {
    for (p, e, d) in [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 1, 2), (3, 1, 3), (2, 3, 2), (7, 1, 2)] {
        let f = FiniteField::new(p, e).unwrap();
        let q = f.order();
        let m = singer_matrix(&f, d).unwrap();
        let target = q.pow(d as u32) - 1;
        assert!(m.pow(&f, target).is_identity());
        let mut v = vec![f.zero(); d];
        v[0] = f.one();
        let start = v.clone();
        let mut orbit = HashSet::new();
        loop {
            orbit.insert(v.clone());
            v = m.apply(&f, &v);
            if v == start {
                break;
            }
        }
        assert_eq!(orbit.len() as u64, target, "GF({q})^{d}");
    }
}
