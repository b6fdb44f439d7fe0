//! Stabilizer chains built by deterministic incremental Schreier–Sims.
//!
//! Level `i` stores the strong generators fixing `base[..i]`, the orbit of
//! `base[i]` under them, and one coset representative `u_β` per orbit point
//! with `u_β(base[i]) = β`. Every group element factors uniquely as
//! `u_0 ∘ u_1 ∘ .. ∘ u_{m-1}`.

use std::ops::ControlFlow;

use rand::Rng;

use crate::perm::Permutation;

const NOT_IN_ORBIT: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct Level {
    base_point: usize,
    generators: Vec<Permutation>,
    orbit: Vec<u32>,
    rep_index: Vec<u32>,
    reps: Vec<Permutation>,
    rep_inverses: Vec<Permutation>,
    // for generator s, orbit positions below checked[s] have sifted Schreier generators
    checked: Vec<usize>,
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Self {
        let mut rep_index = vec![NOT_IN_ORBIT; degree];
        rep_index[base_point] = 0;
        Level {
            base_point,
            generators: Vec::new(),
            orbit: vec![base_point as u32],
            rep_index,
            reps: vec![Permutation::identity(degree)],
            rep_inverses: vec![Permutation::identity(degree)],
            checked: Vec::new(),
        }
    }

    pub fn base_point(&self) -> usize {
        self.base_point
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Basic orbit in discovery order.
    pub fn orbit(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.orbit.iter().map(|&x| x as usize)
    }

    pub fn orbit_len(&self) -> usize {
        self.orbit.len()
    }

    pub fn transversal(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn representative(&self, point: usize) -> Option<&Permutation> {
        match self.rep_index[point] {
            NOT_IN_ORBIT => None,
            i => Some(&self.reps[i as usize]),
        }
    }

    fn add_generator(&mut self, g: Permutation) {
        self.generators.push(g);
        self.checked.push(0);
        // append-only orbit extension keeps existing representatives stable
        let mut idx = 0;
        while idx < self.orbit.len() {
            let beta = self.orbit[idx] as usize;
            for s in 0..self.generators.len() {
                let gamma = self.generators[s].apply(beta);
                if self.rep_index[gamma] == NOT_IN_ORBIT {
                    let rep = self.generators[s].after(&self.reps[idx]);
                    self.rep_index[gamma] = self.reps.len() as u32;
                    self.rep_inverses.push(rep.inverse());
                    self.reps.push(rep);
                    self.orbit.push(gamma as u32);
                }
            }
            idx += 1;
        }
    }
}

#[derive(Debug, Clone)]
pub struct StrongGeneratingSet {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

fn least_moved_point(g: &Permutation) -> Option<usize> {
    (0..g.degree()).find(|&x| g.apply(x) != x)
}

impl StrongGeneratingSet {
    /// Stabilizer chain with the base extended by least moved points.
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        Self::with_base_prefix(degree, generators, &[])
    }

    /// Stabilizer chain whose base starts with `prefix` (distinct points).
    pub fn with_base_prefix(degree: usize, generators: &[Permutation], prefix: &[usize]) -> Self {
        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
            if !g.is_identity() && !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        let mut sgs = StrongGeneratingSet {
            degree,
            generators: gens.clone(),
            levels: prefix.iter().map(|&b| Level::new(degree, b)).collect(),
        };
        for g in &gens {
            if sgs.levels.iter().all(|l| g.apply(l.base_point) == l.base_point) {
                let b = least_moved_point(g).unwrap();
                sgs.levels.push(Level::new(degree, b));
            }
        }
        for g in gens {
            for l in 0..sgs.levels.len() {
                sgs.levels[l].add_generator(g.clone());
                if g.apply(sgs.levels[l].base_point) != sgs.levels[l].base_point {
                    break;
                }
            }
        }
        sgs.complete();
        sgs
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let li = i as usize;
            let mut s = 0;
            while s < self.levels[li].generators.len() {
                while self.levels[li].checked[s] < self.levels[li].orbit.len() {
                    let level = &self.levels[li];
                    let idx = level.checked[s];
                    let gen = &level.generators[s];
                    let moved = gen.after(&level.reps[idx]);
                    let image = gen.apply(level.orbit[idx] as usize);
                    let target = level.rep_index[image] as usize;
                    if moved == level.reps[target] {
                        self.levels[li].checked[s] += 1;
                        continue;
                    }
                    let schreier = level.rep_inverses[target].after(&moved);
                    let (h, j) = self.strip(&schreier, li + 1);
                    if j == self.levels.len() && h.is_identity() {
                        self.levels[li].checked[s] += 1;
                        continue;
                    }
                    if j == self.levels.len() {
                        let b = least_moved_point(&h).unwrap();
                        self.levels.push(Level::new(self.degree, b));
                    }
                    for l in li + 1..=j {
                        self.levels[l].add_generator(h.clone());
                    }
                    i = j as isize;
                    continue 'outer;
                }
                s += 1;
            }
            i -= 1;
        }
    }

    /// Sifts `g` from `start`; returns the residue and the level where
    /// sifting stopped (`levels().len()` if it passed every level).
    pub fn strip(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let beta = h.apply(level.base_point);
            match level.rep_index[beta] {
                NOT_IN_ORBIT => return (h, l),
                idx => h = level.rep_inverses[idx as usize].after(&h),
            }
        }
        (h, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The non-identity input generators.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Group order, `None` on `u128` overflow.
    pub fn order(&self) -> Option<u128> {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.strip(g, 0);
        j == self.levels.len() && h.is_identity()
    }

    /// Strong generators of the pointwise stabilizer of `base[..depth]`.
    pub fn stabilizer_generators(&self, depth: usize) -> Vec<Permutation> {
        self.levels
            .get(depth)
            .map(|l| l.generators.clone())
            .unwrap_or_default()
    }

    /// Visits every element as `u_0 ∘ .. ∘ u_{m-1}`, varying the deepest
    /// level fastest; stops early on `Break`.
    pub fn for_each_element<B>(
        &self,
        mut visit: impl FnMut(&Permutation) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let id = Permutation::identity(self.degree);
        self.walk(0, &id, &mut visit)
    }

    /// Like [`for_each_element`](Self::for_each_element) restricted to the
    /// elements whose level-0 representative is `self.levels()[0].transversal()[top]`.
    pub fn for_each_element_in_branch<B>(
        &self,
        top: usize,
        mut visit: impl FnMut(&Permutation) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        match self.levels.first() {
            None => visit(&Permutation::identity(self.degree)),
            Some(level) => self.walk(1, &level.reps[top], &mut visit),
        }
    }

    fn walk<B>(
        &self,
        depth: usize,
        prefix: &Permutation,
        visit: &mut impl FnMut(&Permutation) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if depth == self.levels.len() {
            return visit(prefix);
        }
        for rep in &self.levels[depth].reps {
            let next = prefix.after(rep);
            self.walk(depth + 1, &next, visit)?;
        }
        ControlFlow::Continue(())
    }

    /// Uniformly random element.
    pub fn random_element(&self, rng: &mut impl Rng) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in &self.levels {
            let rep = &level.reps[rng.gen_range(0..level.reps.len())];
            g = g.after(rep);
        }
        g
    }
}
