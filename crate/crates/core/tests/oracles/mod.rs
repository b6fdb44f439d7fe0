//! Brute-force reference computations for checking the engine. Nothing
//! here goes through stabilizer chains: permutations are plain image
//! vectors and groups are explicit element sets.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use primcycle::{GroupSpec, Permutation};
use rand::Rng;

pub type Images = Vec<usize>;

pub fn images(p: &Permutation) -> Images {
    p.images().collect()
}

/// `(a ∘ b)(x) = a(b(x))`.
pub fn mul(a: &[usize], b: &[usize]) -> Images {
    b.iter().map(|&x| a[x]).collect()
}

/// Every element of `<gens>`, or `None` once more than `cap` turn up.
pub fn closure(n: usize, gens: &[Images], cap: usize) -> Option<HashSet<Images>> {
    let id: Images = (0..n).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = mul(s, &g);
            if seen.insert(h.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(h);
            }
        }
    }
    Some(seen)
}

/// Orbit of the ordered tuple `0..t` under the generators.
pub fn tuple_orbit_len(gens: &[Images], t: usize) -> usize {
    let start: Images = (0..t).collect();
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(tuple) = queue.pop_front() {
        for s in gens {
            let next: Images = tuple.iter().map(|&x| s[x]).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.len()
}

fn falling(n: usize, t: usize) -> usize {
    (0..t).map(|i| n - i).product()
}

/// Largest `t <= t_max` with the group `t`-transitive.
pub fn transitivity_upto(n: usize, gens: &[Images], t_max: usize) -> usize {
    (1..=t_max.min(n))
        .take_while(|&t| tuple_orbit_len(gens, t) == falling(n, t))
        .count()
}

/// Calls `visit` with the block label of every point, for every set
/// partition of `0..n` (restricted growth strings).
pub fn for_each_partition(n: usize, mut visit: impl FnMut(&[usize])) {
    fn go(i: usize, max: usize, labels: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if i == labels.len() {
            visit(labels);
            return;
        }
        for l in 0..=max + 1 {
            labels[i] = l;
            go(i + 1, max.max(l), labels, visit);
        }
    }
    if n == 0 {
        return;
    }
    let mut labels = vec![0; n];
    go(1, 0, &mut labels, &mut visit);
}

fn preserves(labels: &[usize], g: &[usize]) -> bool {
    // the image of each block must lie inside a single block
    let blocks = labels.iter().max().map_or(0, |m| m + 1);
    let mut target = vec![usize::MAX; blocks];
    labels.iter().enumerate().all(|(x, &b)| {
        let img = labels[g[x]];
        if target[b] == usize::MAX {
            target[b] = img;
        }
        target[b] == img
    })
}

/// Primitivity by trying every nontrivial partition. Fine up to n = 9.
pub fn is_primitive(n: usize, gens: &[Images]) -> bool {
    if transitivity_upto(n, gens, 1) < 1 {
        return false;
    }
    let mut primitive = true;
    for_each_partition(n, |labels| {
        let blocks = labels.iter().max().unwrap() + 1;
        if primitive && blocks > 1 && blocks < n && gens.iter().all(|g| preserves(labels, g)) {
            primitive = false;
        }
    });
    primitive
}

pub fn random_images(rng: &mut impl Rng, n: usize) -> Images {
    let mut v: Images = (0..n).collect();
    for i in (1..n).rev() {
        v.swap(i, rng.gen_range(0..=i));
    }
    v
}

/// A few random generators on `n` points, biased towards small groups so
/// that the closure stays explicit: sometimes a generator is replaced by a
/// power or a conjugate of another.
pub fn random_generators(rng: &mut impl Rng, n: usize) -> Vec<Images> {
    let count = rng.gen_range(1..=3);
    let mut gens: Vec<Images> = Vec::new();
    for _ in 0..count {
        let g = match (gens.last(), rng.gen_range(0..4)) {
            (Some(prev), 0) => mul(prev, prev),
            (Some(prev), 1) => {
                let x = random_images(rng, n);
                let mut inv = vec![0; n];
                for (i, &y) in x.iter().enumerate() {
                    inv[y] = i;
                }
                mul(&mul(&x, prev), &inv)
            }
            _ => {
                // a random element of small support
                let support = rng.gen_range(2..=n.min(5));
                let mut pts: Images = (0..n).collect();
                for i in 0..support {
                    pts.swap(i, rng.gen_range(i..n));
                }
                let mut g: Images = (0..n).collect();
                let cyc = random_images(rng, support);
                for i in 0..support {
                    g[pts[i]] = pts[cyc[i]];
                }
                g
            }
        };
        gens.push(g);
    }
    gens
}

pub fn to_group(n: usize, gens: &[Images]) -> GroupSpec {
    let perms = gens
        .iter()
        .map(|g| Permutation::from_images(g.clone()).expect("valid images"))
        .collect();
    GroupSpec::new(n, perms).expect("consistent degree")
}

/// Compares order, membership, element enumeration, orbits, primitivity
/// and transitivity of the engine against brute force on random groups.
/// Returns the number of groups checked and the largest order seen.
pub fn engine_sweep(rng: &mut impl Rng, groups: usize, cap: usize) -> Result<(usize, usize), String> {
    let mut checked = 0;
    let mut largest = 0;
    while checked < groups {
        let n = rng.gen_range(2..=10);
        let gens = random_generators(rng, n);
        let Some(elements) = closure(n, &gens, cap) else { continue };
        let group = to_group(n, &gens);
        let sgs = group.build_sgs();
        let ctx = || format!("degree {n}, generators {gens:?}");

        if sgs.order() != Some(elements.len() as u128) {
            return Err(format!("order {:?} vs {} for {}", sgs.order(), elements.len(), ctx()));
        }
        let mut listed = HashSet::new();
        let _ = sgs.for_each_element(|g| {
            listed.insert(images(g));
            std::ops::ControlFlow::<()>::Continue(())
        });
        if listed != elements {
            return Err(format!("enumeration differs from closure for {}", ctx()));
        }
        for _ in 0..20 {
            let x = random_images(rng, n);
            let member = sgs.contains(&Permutation::from_images(x.clone()).unwrap());
            if member != elements.contains(&x) {
                return Err(format!("membership of {x:?} wrong for {}", ctx()));
            }
        }
        let mut orbit_of: Vec<usize> = (0..n).collect();
        for g in &elements {
            for x in 0..n {
                orbit_of[x] = orbit_of[x].min(g[x]);
            }
        }
        let mut expected: Vec<Vec<usize>> = Vec::new();
        for rep in 0..n {
            let orbit: Vec<usize> = (0..n).filter(|&x| orbit_of[x] == rep).collect();
            if !orbit.is_empty() {
                expected.push(orbit);
            }
        }
        let mut orbits = group.orbits();
        orbits.iter_mut().for_each(|o| o.sort_unstable());
        orbits.sort();
        if orbits != expected {
            return Err(format!("orbits {orbits:?} vs {expected:?} for {}", ctx()));
        }
        // Bell(9) partitions is already plenty
        if n <= 8 && group.is_primitive() != is_primitive(n, &gens) {
            return Err(format!("primitivity wrong for {}", ctx()));
        }
        let t = group.transitivity_degree().min(4);
        if t != transitivity_upto(n, &gens, 4) {
            return Err(format!("transitivity {t} wrong for {}", ctx()));
        }
        checked += 1;
        largest = largest.max(elements.len());
    }
    Ok((checked, largest))
}

/// |GL_d(q)| = prod_{i<d} (q^d - q^i).
pub fn gl_order(q: u128, d: u32) -> u128 {
    (0..d).map(|i| q.pow(d) - q.pow(i)).product()
}

pub fn trial_division(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        while n % f == 0 {
            out.push(f);
            n /= f;
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
