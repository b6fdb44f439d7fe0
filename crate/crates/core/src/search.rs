//! Element searches over a stabilizer chain: single cycles with a given
//! number of fixed points, and conjugacy of permutation groups inside S_n.

use std::ops::ControlFlow;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Config;
use crate::group::GroupSpec;
use crate::perm::Permutation;
use crate::sgs::StrongGeneratingSet;

/// Outcome of looking for an `(n-k)`-cycle fixing `k` points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleSearch {
    Found(Permutation),
    /// Every element was examined.
    CertifiedAbsent,
    /// Random sampling found nothing; absence is not certified.
    NotFound,
}

impl CycleSearch {
    pub fn found(&self) -> Option<&Permutation> {
        match self {
            CycleSearch::Found(p) => Some(p),
            _ => None,
        }
    }

    pub fn status(&self) -> CycleStatus {
        match self {
            CycleSearch::Found(_) => CycleStatus::Found,
            CycleSearch::CertifiedAbsent => CycleStatus::CertifiedAbsent,
            CycleSearch::NotFound => CycleStatus::Inconclusive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleStatus {
    Found,
    CertifiedAbsent,
    Inconclusive,
}

/// Searches `G` for an `(n-k)`-cycle fixing `k` points. Groups of order at
/// most `config.exhaustive_cap` are scanned completely in chain order and
/// the first hit is returned; larger groups are sampled uniformly with a
/// `config.sample_budget` attempt budget seeded by `config.seed`.
pub fn find_cycle_with_fixed(group: &GroupSpec, k: usize, config: &Config) -> CycleSearch {
    let sgs = group.build_sgs();
    find_cycle_in_chain(&sgs, k, config)
}

pub fn find_cycle_in_chain(sgs: &StrongGeneratingSet, k: usize, config: &Config) -> CycleSearch {
    let n = sgs.degree();
    if k + 2 > n {
        return CycleSearch::CertifiedAbsent;
    }
    let wanted = Some((n - k, k));
    let exhaustive = sgs.order().is_some_and(|o| o <= config.exhaustive_cap);
    if exhaustive {
        let hit = sgs.for_each_element(|g| {
            if g.as_single_cycle() == wanted {
                ControlFlow::Break(g.clone())
            } else {
                ControlFlow::Continue(())
            }
        });
        return match hit {
            ControlFlow::Break(g) => CycleSearch::Found(g),
            ControlFlow::Continue(()) => CycleSearch::CertifiedAbsent,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (k as u64).wrapping_mul(0x9e37_79b9));
    for _ in 0..config.sample_budget {
        let g = sgs.random_element(&mut rng);
        if g.as_single_cycle() == wanted {
            return CycleSearch::Found(g);
        }
    }
    CycleSearch::NotFound
}

/// The cycle search for every `k` in `0..=n-2` in a single pass.
pub fn cycle_census(sgs: &StrongGeneratingSet, config: &Config) -> Vec<CycleSearch> {
    let n = sgs.degree();
    let slots = n.saturating_sub(1);
    let mut found: Vec<Option<Permutation>> = vec![None; slots];
    let mut remaining = slots;
    let mut record = |g: &Permutation, found: &mut Vec<Option<Permutation>>| {
        if let Some((_, k)) = g.as_single_cycle() {
            if found[k].is_none() {
                found[k] = Some(g.clone());
                remaining -= 1;
            }
        }
        remaining == 0
    };
    let exhaustive = sgs.order().is_some_and(|o| o <= config.exhaustive_cap);
    if exhaustive {
        let _ = sgs.for_each_element(|g| {
            if record(g, &mut found) {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        for _ in 0..config.sample_budget {
            let g = sgs.random_element(&mut rng);
            if record(&g, &mut found) {
                break;
            }
        }
    }
    found
        .into_iter()
        .map(|f| match f {
            Some(g) => CycleSearch::Found(g),
            None if exhaustive => CycleSearch::CertifiedAbsent,
            None => CycleSearch::NotFound,
        })
        .collect()
}

/// Calls `visit` with every `x` such that `x ∘ a ∘ x⁻¹ = b`.
pub fn for_each_conjugator<B>(
    a: &Permutation,
    b: &Permutation,
    mut visit: impl FnMut(&Permutation) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let n = a.degree();
    if a.cycle_type() != b.cycle_type() {
        return ControlFlow::Continue(());
    }
    let ca = a.cycles();
    let cb = b.cycles();
    let mut used = vec![false; cb.len()];
    let mut images = vec![u32::MAX; n];
    fn recurse<B>(
        idx: usize,
        ca: &[Vec<usize>],
        cb: &[Vec<usize>],
        used: &mut [bool],
        images: &mut [u32],
        visit: &mut impl FnMut(&Permutation) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if idx == ca.len() {
            return visit(&Permutation::from_images_unchecked(images.to_vec()));
        }
        let cycle = &ca[idx];
        for j in 0..cb.len() {
            if used[j] || cb[j].len() != cycle.len() {
                continue;
            }
            used[j] = true;
            let len = cycle.len();
            for shift in 0..len {
                for (i, &x) in cycle.iter().enumerate() {
                    images[x] = cb[j][(i + shift) % len] as u32;
                }
                recurse(idx + 1, ca, cb, used, images, visit)?;
            }
            used[j] = false;
        }
        ControlFlow::Continue(())
    }
    recurse(0, &ca, &cb, &mut used, &mut images, &mut visit)
}

/// Finds `x ∈ S_n` with `x H x⁻¹ = K`, where `H = ⟨h_gens⟩` and `|H| = |K|`.
///
/// `pivot` must be an element of `H`, ideally with a small centralizer in
/// S_n; `k_elements` are the elements of `K` sharing its cycle type.
pub fn find_conjugator(
    h_gens: &[Permutation],
    pivot: &Permutation,
    k_chain: &StrongGeneratingSet,
    k_elements: &[Permutation],
) -> Option<Permutation> {
    for target in k_elements {
        let hit = for_each_conjugator(pivot, target, |x| {
            if h_gens.iter().all(|h| k_chain.contains(&h.conjugate_by(x))) {
                ControlFlow::Break(x.clone())
            } else {
                ControlFlow::Continue(())
            }
        });
        if let ControlFlow::Break(x) = hit {
            return Some(x);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn cyclic_group_contains_its_generator() {
        let c11 = GroupSpec::new(11, vec![Permutation::cycle(11, 11)]).unwrap();
        let found = find_cycle_with_fixed(&c11, 0, &Config::default());
        assert_eq!(found, CycleSearch::Found(Permutation::cycle(11, 11)));
        assert_eq!(
            find_cycle_with_fixed(&c11, 1, &Config::default()),
            CycleSearch::CertifiedAbsent
        );
    }

    #[test]
    fn sampling_regime_never_certifies() {
        let config = Config {
            exhaustive_cap: 10,
            sample_budget: 50,
            ..Config::default()
        };
        let c11 = GroupSpec::new(11, vec![Permutation::cycle(11, 11)]).unwrap();
        assert_eq!(find_cycle_with_fixed(&c11, 3, &config), CycleSearch::NotFound);
        assert!(find_cycle_with_fixed(&c11, 0, &config).found().is_some());
    }

    #[test]
    fn conjugators_conjugate() {
        let a = perm(6, "(1 2 3)(4 5)");
        let b = perm(6, "(2 6 4)(1 3)");
        let mut count = 0;
        let _ = for_each_conjugator(&a, &b, |x| {
            assert_eq!(a.conjugate_by(x), b);
            count += 1;
            ControlFlow::<()>::Continue(())
        });
        assert_eq!(count, a.cycle_type().centralizer_order());
    }

    #[test]
    fn census_of_s4() {
        let s4 = GroupSpec::symmetric(4).build_sgs();
        let census = cycle_census(&s4, &Config::default());
        assert_eq!(census.len(), 3);
        assert!(census.iter().all(|c| c.found().is_some()));
        let c4 = GroupSpec::new(4, vec![Permutation::cycle(4, 4)]).unwrap().build_sgs();
        let census = cycle_census(&c4, &Config::default());
        assert!(census[0].found().is_some());
        assert_eq!(census[1], CycleSearch::CertifiedAbsent);
        assert_eq!(census[2], CycleSearch::CertifiedAbsent);
    }
}
