//! Finitely generated permutation groups and the decision procedures run
//! on them.

use std::fmt;

use thiserror::Error;

use crate::arith::factorial;
use crate::perm::{PermError, Permutation};
use crate::sgs::StrongGeneratingSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("a group needs at least one generator")]
    NoGenerators,
    #[error("generator {index} has degree {found}, expected {expected}")]
    DegreeMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("group order overflows 128 bits")]
    Overflow,
    #[error("group is intransitive")]
    Intransitive,
    #[error("seed pair must be two distinct points below the degree")]
    BadSeedPair,
    #[error("point {0} out of range")]
    PointOutOfRange(usize),
    #[error("points must be distinct")]
    RepeatedPoint,
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Degree, generators and an optional label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    degree: usize,
    generators: Vec<Permutation>,
    label: Option<String>,
}

impl GroupSpec {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        if generators.is_empty() {
            return Err(GroupError::NoGenerators);
        }
        if let Some((index, g)) = generators.iter().enumerate().find(|(_, g)| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch {
                index,
                expected: degree,
                found: g.degree(),
            });
        }
        Ok(GroupSpec {
            degree,
            generators,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Parses 1-based cycle-notation generators.
    pub fn from_cycle_strings<S: AsRef<str>>(degree: usize, gens: &[S]) -> Result<Self, GroupError> {
        let perms = gens
            .iter()
            .map(|s| Permutation::parse_cycles(s.as_ref(), degree))
            .collect::<Result<Vec<_>, _>>()?;
        GroupSpec::new(degree, perms)
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = vec![Permutation::cycle(degree, degree)];
        if degree > 2 {
            gens.push(Permutation::cycle(degree, 2));
        }
        GroupSpec::new(degree, gens).unwrap().with_label(format!("S{degree}"))
    }

    /// A_n from the 3-cycles `(0 1 i)`.
    pub fn alternating(degree: usize) -> Self {
        let gens: Vec<Permutation> = if degree < 3 {
            vec![Permutation::identity(degree)]
        } else {
            (2..degree)
                .map(|i| Permutation::from_cycles(degree, &[&[0, 1, i]]).unwrap())
                .collect()
        };
        GroupSpec::new(degree, gens).unwrap().with_label(format!("A{degree}"))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn build_sgs(&self) -> StrongGeneratingSet {
        StrongGeneratingSet::new(self.degree, &self.generators)
    }

    pub fn order(&self) -> Result<u128, GroupError> {
        self.build_sgs().order().ok_or(GroupError::Overflow)
    }

    /// Orbits of `⟨generators⟩`, each sorted, listed by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.degree;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut idx = 0;
            while idx < orbit.len() {
                let x = orbit[idx];
                for g in &self.generators {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                idx += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    /// Finest block system in which `alpha` and `beta` share a block.
    pub fn minimal_blocks(&self, alpha: usize, beta: usize) -> Result<BlockSystem, GroupError> {
        let n = self.degree;
        if alpha == beta || alpha >= n || beta >= n {
            return Err(GroupError::BadSeedPair);
        }
        if !self.is_transitive() {
            return Err(GroupError::Intransitive);
        }
        Ok(BlockSystem::from_labels(&minimal_block_labels(self, alpha, beta)))
    }

    pub fn is_primitive(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        (1..self.degree).all(|beta| {
            let labels = minimal_block_labels(self, 0, beta);
            labels.iter().all(|&l| l == labels[0])
        })
    }

    /// True iff the group contains A_n. Uses the order when `n!` fits in
    /// 128 bits (index at most 2 in S_n forces A_n) and falls back to
    /// membership of the 3-cycles `(0 1 i)` otherwise.
    pub fn contains_alternating(&self) -> bool {
        self.contains_alternating_with(&self.build_sgs())
    }

    pub(crate) fn contains_alternating_with(&self, sgs: &StrongGeneratingSet) -> bool {
        let n = self.degree;
        match (factorial(n as u64), sgs.order()) {
            (Some(full), Some(order)) => order * 2 >= full,
            _ => GroupSpec::alternating(n).generators.iter().all(|c| sgs.contains(c)),
        }
    }

    /// Largest `t` such that the group is `t`-transitive (0 if
    /// intransitive). S_n gives `n`, A_n gives `n-2`.
    pub fn transitivity_degree(&self) -> usize {
        let n = self.degree;
        if !self.is_transitive() {
            return 0;
        }
        let probe = n.min(MAX_PROPER_TRANSITIVITY);
        let prefix: Vec<usize> = (0..probe).collect();
        let sgs = StrongGeneratingSet::with_base_prefix(n, &self.generators, &prefix);
        if self.contains_alternating_with(&sgs) {
            let symmetric = self.generators.iter().any(|g| !g.is_even());
            return if symmetric { n } else { n.saturating_sub(2) };
        }
        let t = sgs
            .levels()
            .iter()
            .take(probe)
            .enumerate()
            .take_while(|(i, level)| level.orbit_len() == n - i)
            .count();
        assert!(
            t < MAX_PROPER_TRANSITIVITY,
            "a group not containing A_{n} came out {t}-transitive"
        );
        t
    }

    /// Generators of the pointwise stabilizer of `points`.
    pub fn stabilizer(&self, points: &[usize]) -> Result<GroupSpec, GroupError> {
        let sgs = self.stabilizer_chain(points)?;
        Ok(stabilizer_spec(&sgs, points.len()))
    }

    pub(crate) fn stabilizer_chain(&self, points: &[usize]) -> Result<StrongGeneratingSet, GroupError> {
        for (i, &x) in points.iter().enumerate() {
            if x >= self.degree {
                return Err(GroupError::PointOutOfRange(x));
            }
            if points[..i].contains(&x) {
                return Err(GroupError::RepeatedPoint);
            }
        }
        Ok(StrongGeneratingSet::with_base_prefix(
            self.degree,
            &self.generators,
            points,
        ))
    }
}

pub(crate) fn stabilizer_spec(sgs: &StrongGeneratingSet, depth: usize) -> GroupSpec {
    let mut gens = sgs.stabilizer_generators(depth);
    if gens.is_empty() {
        gens.push(Permutation::identity(sgs.degree()));
    }
    GroupSpec::new(sgs.degree(), gens).unwrap()
}

/// No group other than A_n or S_n is 6-transitive.
pub const MAX_PROPER_TRANSITIVITY: usize = 6;

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(label) = &self.label {
            write!(f, "{label} ")?;
        }
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "> on {} points", self.degree)
    }
}

// Union–find merging of alpha and beta, closed under the generators.
fn minimal_block_labels(group: &GroupSpec, alpha: usize, beta: usize) -> Vec<usize> {
    let n = group.degree;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut queue = vec![(alpha, beta)];
    let (ra, rb) = (alpha.min(beta), alpha.max(beta));
    parent[rb] = ra;
    while let Some((x, y)) = queue.pop() {
        for g in &group.generators {
            let a = find(&mut parent, g.apply(x));
            let b = find(&mut parent, g.apply(y));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo;
                queue.push((a, b));
            }
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

/// Partition of the points into blocks permuted by the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSystem {
    blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    fn from_labels(labels: &[usize]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; labels.len()];
        for (x, &l) in labels.iter().enumerate() {
            if slot[l] == usize::MAX {
                slot[l] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[slot[l]].push(x);
        }
        BlockSystem { blocks }
    }

    /// Blocks sorted internally and by least point.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == 1 || self.block_size() == 1
    }

    /// Checks that every generator maps blocks onto blocks.
    pub fn is_preserved_by(&self, group: &GroupSpec) -> bool {
        let n = group.degree();
        let mut block_of = vec![0usize; n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                block_of[x] = i;
            }
        }
        group.generators().iter().all(|g| {
            self.blocks.iter().all(|b| {
                let target = block_of[g.apply(b[0])];
                b.iter().all(|&x| block_of[g.apply(x)] == target)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, gens: &[&str]) -> GroupSpec {
        GroupSpec::from_cycle_strings(n, gens).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(GroupSpec::new(3, vec![]).unwrap_err(), GroupError::NoGenerators);
        assert!(matches!(
            GroupSpec::new(3, vec![Permutation::identity(4)]),
            Err(GroupError::DegreeMismatch { index: 0, .. })
        ));
    }

    #[test]
    fn orbits_examples() {
        let trivial = GroupSpec::new(4, vec![Permutation::identity(4)]).unwrap();
        assert_eq!(trivial.orbits(), vec![vec![0], vec![1], vec![2], vec![3]]);
        let c = GroupSpec::new(6, vec![Permutation::cycle(6, 6)]).unwrap();
        assert_eq!(c.orbits().len(), 1);
    }

    #[test]
    fn minimal_blocks_examples() {
        let s5 = GroupSpec::symmetric(5);
        let b = s5.minimal_blocks(0, 3).unwrap();
        assert_eq!(b.blocks(), &[vec![0, 1, 2, 3, 4]]);

        let wreath = spec(4, &["(1 2)", "(1 3)(2 4)"]);
        let b = wreath.minimal_blocks(0, 1).unwrap();
        assert_eq!(b.blocks(), &[vec![0, 1], vec![2, 3]]);
        assert!(b.is_preserved_by(&wreath));

        let c4 = spec(4, &["(1 2 3 4)"]);
        let b = c4.minimal_blocks(0, 2).unwrap();
        assert_eq!(b.blocks(), &[vec![0, 2], vec![1, 3]]);
        assert!(!b.is_trivial());

        assert_eq!(spec(4, &["(1 2)"]).minimal_blocks(0, 1), Err(GroupError::Intransitive));
        assert_eq!(c4.minimal_blocks(1, 1), Err(GroupError::BadSeedPair));
    }

    #[test]
    fn primitivity_examples() {
        assert!(GroupSpec::symmetric(5).is_primitive());
        assert!(!spec(4, &["(1 2)", "(1 3)(2 4)"]).is_primitive());
        assert!(spec(7, &["(1 2 3 4 5 6 7)"]).is_primitive());
        assert!(!spec(6, &["(1 2 3 4 5 6)"]).is_primitive());
    }

    #[test]
    fn transitivity_examples() {
        assert_eq!(GroupSpec::symmetric(7).transitivity_degree(), 7);
        assert_eq!(GroupSpec::alternating(4).transitivity_degree(), 2);
        assert_eq!(GroupSpec::alternating(7).transitivity_degree(), 5);
        assert_eq!(spec(5, &["(1 2)"]).transitivity_degree(), 0);
        assert_eq!(spec(5, &["(1 2 3 4 5)"]).transitivity_degree(), 1);
    }

    #[test]
    fn alternating_detection() {
        assert!(GroupSpec::symmetric(6).contains_alternating());
        assert!(GroupSpec::alternating(7).contains_alternating());
        assert!(!spec(5, &["(1 2 3 4 5)", "(2 3 5 4)"]).contains_alternating());
        // the 3-cycle fallback agrees with the order test where both apply
        let a40 = GroupSpec::alternating(40);
        assert!(a40.contains_alternating());
        let c40 = GroupSpec::new(40, vec![Permutation::cycle(40, 40)]).unwrap();
        assert!(!c40.contains_alternating());
    }

    #[test]
    fn stabilizers() {
        let s4 = GroupSpec::symmetric(4);
        assert_eq!(s4.stabilizer(&[]).unwrap().order().unwrap(), 24);
        assert_eq!(s4.stabilizer(&[2]).unwrap().order().unwrap(), 6);
        assert_eq!(s4.stabilizer(&[2, 2]).unwrap_err(), GroupError::RepeatedPoint);
        assert_eq!(s4.stabilizer(&[7]).unwrap_err(), GroupError::PointOutOfRange(7));
    }
}
