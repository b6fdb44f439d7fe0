//! Which families can occur for a degree `n` and fixed-point count `k`, and
//! recognition of a concrete group against those lists.

use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{as_prime_power, divisors, factorial, is_prime};
use crate::config::Config;
use crate::families::{
    construct, expected_order, frobenius_divisors, CaseTag, ConstructedGroup, FamilyDescriptor, LineGroup,
    SporadicName, Variant,
};
use crate::group::GroupSpec;
use crate::perm::Permutation;
use crate::search::{cycle_census, find_conjugator, CycleSearch, CycleStatus};
use crate::sgs::StrongGeneratingSet;

/// Largest degree for which identification is confirmed by a conjugacy
/// search in S_n.
pub const CONJUGACY_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("fixed-point count {k} out of range 0..={max} for degree {n}")]
    FixedOutOfRange { n: usize, k: usize, max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassificationQuery {
    n: usize,
    k: usize,
}

impl ClassificationQuery {
    pub fn new(n: usize, k: usize) -> Result<Self, ClassifyError> {
        if n < 2 {
            return Err(ClassifyError::DegreeTooSmall(n));
        }
        if k > n - 2 {
            return Err(ClassifyError::FixedOutOfRange { n, k, max: n - 2 });
        }
        Ok(ClassificationQuery { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// One line of the case table: a single group, or a sandwich listed by its
/// members (one per divisor of `e`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseEntry {
    pub tag: CaseTag,
    pub p: Option<u64>,
    pub q: Option<u64>,
    pub d: Option<u32>,
    pub n: usize,
    pub note: String,
    pub members: Vec<FamilyDescriptor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseList {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "cases")]
    pub entries: Vec<CaseEntry>,
    /// A_n and S_n, which qualify for every `(n, k)`.
    pub unconditional: Vec<String>,
}

impl CaseList {
    pub fn descriptors(&self) -> impl Iterator<Item = &FamilyDescriptor> {
        self.entries.iter().flat_map(|e| e.members.iter())
    }
}

/// Prime-power solutions of the degree formulas at `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub n: usize,
    pub prime: bool,
    /// `(q, d)` with `d >= 2` and `(q^d - 1)/(q - 1) = n`.
    pub projective: Vec<(u64, u32)>,
    /// `(q, d)` with `d >= 1` and `q^d = n`.
    pub affine: Vec<(u64, u32)>,
    /// `q` with `q + 1 = n`.
    pub line: Option<u64>,
}

pub fn solve_degree_equations(n: usize) -> DegreeReport {
    let n64 = n as u64;
    let mut projective = Vec::new();
    if n64 >= 3 && as_prime_power(n64 - 1).is_some() {
        projective.push((n64 - 1, 2));
    }
    let mut q = 2u64;
    while 1 + q + q * q <= n64 {
        if as_prime_power(q).is_some() {
            let (mut sum, mut power, mut d) = (1 + q, q, 1u32);
            while sum < n64 {
                power *= q;
                sum += power;
                d += 1;
            }
            if sum == n64 && d >= 2 {
                projective.push((q, d + 1));
            }
        }
        q += 1;
    }
    projective.sort();
    projective.dedup();
    let mut affine = Vec::new();
    if let Some((p, a)) = as_prime_power(n64) {
        for d in divisors(a as u64) {
            affine.push((p.pow(a / d as u32), d as u32));
        }
        affine.sort();
    }
    DegreeReport {
        n,
        prime: is_prime(n64),
        projective,
        affine,
        line: n64.checked_sub(1).filter(|&q| as_prime_power(q).is_some()),
    }
}

fn descriptor(case: CaseTag, q: u64, d: u32, n: usize, variant: Variant) -> FamilyDescriptor {
    let (p, e) = as_prime_power(q).unwrap_or((q, 1));
    FamilyDescriptor {
        case,
        p: Some(p),
        e: Some(e),
        d: Some(d),
        n,
        variant,
    }
}

fn sporadic_entry(name: SporadicName) -> CaseEntry {
    let info = name.info();
    let (case, _) = info.case.unwrap();
    CaseEntry {
        tag: case,
        p: None,
        q: None,
        d: None,
        n: info.degree,
        note: info.label.to_string(),
        members: vec![FamilyDescriptor {
            case,
            p: None,
            e: None,
            d: None,
            n: info.degree,
            variant: Variant::Sporadic { name },
        }],
    }
}

fn sandwich_name(bottom: &str, top: &str, d: u32, q: u64, e: u32) -> String {
    if e == 1 {
        format!("{bottom}_{d}({q})")
    } else {
        format!("{bottom}_{d}({q}) <= G <= {top}_{d}({q})")
    }
}

fn sandwich_entry(
    tag: CaseTag,
    q: u64,
    d: u32,
    n: usize,
    name: String,
    members: Vec<FamilyDescriptor>,
) -> CaseEntry {
    let (p, _) = as_prime_power(q).unwrap_or((q, 1));
    let mut note = name;
    let half = factorial(n as u64).map(|f| f / 2);
    if members
        .iter()
        .any(|m| expected_order(m).zip(half).is_some_and(|(o, h)| o >= h))
    {
        note.push_str("; members of order >= n!/2 coincide with A_n or S_n");
    }
    CaseEntry {
        tag,
        p: Some(p),
        q: Some(q),
        d: Some(d),
        n,
        note,
        members,
    }
}

/// The families a primitive group of degree `n` not containing A_n can
/// belong to when it contains an `(n-k)`-cycle fixing `k` points.
pub fn classify(query: ClassificationQuery) -> CaseList {
    let ClassificationQuery { n, k } = query;
    let report = solve_degree_equations(n);
    let mut entries = Vec::new();
    match k {
        0 => {
            if report.prime {
                let p = n as u64;
                let members = divisors(p - 1)
                    .into_iter()
                    .map(|m| descriptor(CaseTag::OneA, p, 1, n, Variant::AffineLine { m }))
                    .collect();
                entries.push(sandwich_entry(
                    CaseTag::OneA,
                    p,
                    1,
                    n,
                    format!("C_{p} <= G <= AGL_1({p})"),
                    members,
                ));
            }
            for &(q, d) in &report.projective {
                let (_, e) = as_prime_power(q).unwrap();
                let members = frobenius_divisors(e)
                    .into_iter()
                    .map(|frobenius| descriptor(CaseTag::OneB, q, d, n, Variant::Projective { frobenius }))
                    .collect();
                let mut name = sandwich_name("PGL", "PGammaL", d, q, e);
                if d == 2 {
                    name.push_str("; the same groups form case 3 at k=2");
                }
                entries.push(sandwich_entry(CaseTag::OneB, q, d, n, name, members));
            }
            match n {
                11 => {
                    entries.push(sporadic_entry(SporadicName::L2_11At11));
                    entries.push(sporadic_entry(SporadicName::M11At11));
                }
                23 => entries.push(sporadic_entry(SporadicName::M23)),
                _ => {}
            }
        }
        1 => {
            for &(q, d) in &report.affine {
                let (_, e) = as_prime_power(q).unwrap();
                let members = frobenius_divisors(e)
                    .into_iter()
                    .map(|frobenius| descriptor(CaseTag::TwoA, q, d, n, Variant::Affine { frobenius }))
                    .collect();
                entries.push(sandwich_entry(
                    CaseTag::TwoA,
                    q,
                    d,
                    n,
                    sandwich_name("AGL", "AGammaL", d, q, e),
                    members,
                ));
            }
            let p = n as u64 - 1;
            if p >= 5 && is_prime(p) {
                for (variant, name) in [(Variant::Psl2, format!("L_2({p})")), (Variant::Pgl2, format!("PGL_2({p})"))] {
                    entries.push(sandwich_entry(
                        CaseTag::TwoB,
                        p,
                        2,
                        n,
                        name,
                        vec![descriptor(CaseTag::TwoB, p, 2, n, variant)],
                    ));
                }
            }
            match n {
                12 => {
                    entries.push(sporadic_entry(SporadicName::M11At12));
                    entries.push(sporadic_entry(SporadicName::M12));
                }
                24 => entries.push(sporadic_entry(SporadicName::M24)),
                _ => {}
            }
        }
        2 => {
            if let Some(q) = report.line {
                let (_, e) = as_prime_power(q).unwrap();
                let members = frobenius_divisors(e)
                    .into_iter()
                    .map(|frobenius| {
                        descriptor(CaseTag::Three, q, 2, n, Variant::Line(LineGroup::PGammaL { frobenius }))
                    })
                    .collect();
                let mut name = sandwich_name("PGL", "PGammaL", 2, q, e);
                name.push_str("; the same groups form case 1b at k=0");
                entries.push(sandwich_entry(CaseTag::Three, q, 2, n, name, members));
            }
        }
        _ => {}
    }
    CaseList {
        n,
        k,
        entries,
        unconditional: vec![format!("A_{n}"), format!("S_{n}")],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentifyError {
    #[error("group is intransitive; the classification does not apply")]
    Intransitive,
    #[error("group is imprimitive (blocks of size {block_size}); the classification does not apply")]
    Imprimitive { block_size: usize },
    #[error("group order exceeds 128 bits")]
    Overflow,
    #[error("{}", if *.certified { "group contains no single cycle; the classification does not apply" } else { "no single cycle found by sampling; cycle hypothesis unverified" })]
    NoCycle { certified: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleEvidence {
    pub k: usize,
    pub status: CycleStatus,
    pub witness: Option<Permutation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub degree: usize,
    pub order: u128,
    pub transitivity_degree: usize,
    pub primitive: bool,
    /// Cycle with the fewest fixed points found.
    pub witness_cycle: Option<Permutation>,
    pub witness_k: Option<usize>,
    /// One entry per `k` in `0..=n-2`.
    pub cycles: Vec<CycleEvidence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    ContainsAlternating,
    /// Every candidate the group matched, over all realized `k`.
    Matched { descriptors: Vec<FamilyDescriptor> },
    /// The group contains an `(n-k)`-cycle fixing `k` points but matches
    /// nothing in `classify(n, k)`.
    InconsistentWithTheorem { k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Identification {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub evidence: Evidence,
    /// `k` values whose cycle search was inconclusive.
    pub unverified: Vec<usize>,
}

impl Identification {
    pub fn is_inconsistent(&self) -> bool {
        matches!(self.verdict, Verdict::InconsistentWithTheorem { .. })
    }
}

struct Candidate {
    group: ConstructedGroup,
    transitivity: usize,
    /// Members that are `(n-k)`-cycles fixing `k` points.
    cycles: OnceLock<Vec<Permutation>>,
}

impl Candidate {
    fn cycles(&self, k: usize) -> &[Permutation] {
        self.cycles.get_or_init(|| {
            let n = self.group.degree();
            let mut out = Vec::new();
            let _ = self.group.sgs().for_each_element(|g| {
                if g.as_single_cycle() == Some((n - k, k)) {
                    out.push(g.clone());
                }
                ControlFlow::<()>::Continue(())
            });
            out
        })
    }
}

/// Identification at one degree, caching the constructed candidates.
pub struct Identifier {
    n: usize,
    config: Config,
    candidates: Vec<OnceLock<Vec<Candidate>>>,
}

impl Identifier {
    pub fn new(n: usize, config: &Config) -> Self {
        Identifier {
            n,
            config: config.clone(),
            candidates: (0..n.saturating_sub(1)).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    fn candidates(&self, k: usize) -> &[Candidate] {
        self.candidates[k].get_or_init(|| {
            let list = classify(ClassificationQuery::new(self.n, k).unwrap());
            list.descriptors()
                .map(|d| {
                    let group = construct(d, &self.config)
                        .unwrap_or_else(|e| panic!("classified descriptor {d} fails to construct: {e}"));
                    Candidate {
                        transitivity: group.spec.transitivity_degree(),
                        group,
                        cycles: OnceLock::new(),
                    }
                })
                .collect()
        })
    }

    pub fn identify(&self, group: &GroupSpec) -> Result<Identification, IdentifyError> {
        assert_eq!(group.degree(), self.n, "identifier built for another degree");
        if !group.is_transitive() {
            return Err(IdentifyError::Intransitive);
        }
        if self.n > 1 {
            for beta in 1..self.n {
                let blocks = group.minimal_blocks(0, beta).expect("transitive");
                if !blocks.is_trivial() {
                    return Err(IdentifyError::Imprimitive {
                        block_size: blocks.block_size(),
                    });
                }
            }
        }
        let sgs = group.build_sgs();
        let order = sgs.order().ok_or(IdentifyError::Overflow)?;
        let transitivity = group.transitivity_degree();
        let census = cycle_census(&sgs, &self.config);
        let cycles: Vec<CycleEvidence> = census
            .iter()
            .enumerate()
            .map(|(k, c)| CycleEvidence {
                k,
                status: c.status(),
                witness: c.found().cloned(),
            })
            .collect();
        let first = cycles.iter().find(|c| c.witness.is_some());
        let evidence = Evidence {
            degree: self.n,
            order,
            transitivity_degree: transitivity,
            primitive: true,
            witness_cycle: first.and_then(|c| c.witness.clone()),
            witness_k: first.map(|c| c.k),
            cycles,
        };
        let unverified: Vec<usize> = census
            .iter()
            .enumerate()
            .filter(|(_, c)| matches!(c, CycleSearch::NotFound))
            .map(|(k, _)| k)
            .collect();
        if group.contains_alternating_with(&sgs) {
            return Ok(Identification {
                verdict: Verdict::ContainsAlternating,
                evidence,
                unverified,
            });
        }
        if evidence.witness_cycle.is_none() {
            return Err(IdentifyError::NoCycle {
                certified: unverified.is_empty(),
            });
        }
        let mut matched = BTreeSet::new();
        for (k, found) in census.iter().enumerate() {
            let Some(witness) = found.found() else { continue };
            let hits: Vec<&FamilyDescriptor> = self
                .candidates(k)
                .iter()
                .filter(|c| c.group.order() == order && c.transitivity == transitivity)
                .filter(|c| self.n > CONJUGACY_BOUND || self.conjugate(group, &sgs, witness, c, k))
                .map(|c| &c.group.descriptor)
                .collect();
            if hits.is_empty() {
                return Ok(Identification {
                    verdict: Verdict::InconsistentWithTheorem { k },
                    evidence,
                    unverified,
                });
            }
            matched.extend(hits.into_iter().cloned());
        }
        Ok(Identification {
            verdict: Verdict::Matched {
                descriptors: matched.into_iter().collect(),
            },
            evidence,
            unverified,
        })
    }

    fn conjugate(
        &self,
        group: &GroupSpec,
        _sgs: &StrongGeneratingSet,
        witness: &Permutation,
        candidate: &Candidate,
        k: usize,
    ) -> bool {
        find_conjugator(group.generators(), witness, candidate.group.sgs(), candidate.cycles(k)).is_some()
    }
}

/// One-off identification; use an [`Identifier`] to classify many groups
/// of the same degree.
pub fn identify(group: &GroupSpec, config: &Config) -> Result<Identification, IdentifyError> {
    Identifier::new(group.degree(), config).identify(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tags(n: usize, k: usize) -> Vec<String> {
        classify(ClassificationQuery::new(n, k).unwrap())
            .entries
            .iter()
            .map(|e| e.tag.to_string())
            .collect()
    }

    #[test]
    fn query_range() {
        assert!(ClassificationQuery::new(1, 0).is_err());
        assert!(ClassificationQuery::new(5, 4).is_err());
        assert!(ClassificationQuery::new(5, 3).is_ok());
    }

    #[test]
    fn degree_equations() {
        let r = solve_degree_equations(31);
        assert_eq!(r.projective, [(2, 5), (5, 3)]);
        assert!(r.prime);
        let r = solve_degree_equations(7);
        assert_eq!(r.projective, [(2, 3)]);
        let r = solve_degree_equations(6);
        assert_eq!(r.projective, [(5, 2)]);
        assert!(r.affine.is_empty());
        assert_eq!(r.line, Some(5));
        assert_eq!(solve_degree_equations(8).affine, [(2, 3), (8, 1)]);
    }

    #[test]
    fn table_examples() {
        assert_eq!(tags(11, 0), ["1a", "1c", "1c"]);
        assert_eq!(tags(8, 1), ["2a", "2a", "2b", "2b"]);
        assert_eq!(tags(23, 0), ["1a", "1c"]);
        assert_eq!(tags(10, 2), ["3"]);
        assert!(tags(13, 2).is_empty());
        assert!(tags(9, 5).is_empty());
        assert_eq!(tags(12, 1), ["2b", "2b", "2c", "2c"]);
    }

    #[test]
    fn identify_small_groups() {
        let config = Config::default();
        let w = crate::families::wreath_imprimitive(2, 2).unwrap();
        assert!(matches!(identify(&w.spec, &config), Err(IdentifyError::Imprimitive { .. })));
        let a9 = GroupSpec::alternating(9);
        assert_eq!(identify(&a9, &config).unwrap().verdict, Verdict::ContainsAlternating);
        let pgl = crate::families::psl2_pgl2(7, true).unwrap();
        let id = identify(&pgl.spec, &config).unwrap();
        let Verdict::Matched { descriptors } = &id.verdict else { panic!("{id:?}") };
        assert!(descriptors.contains(&pgl.descriptor));
        assert!(descriptors.iter().any(|d| d.case == CaseTag::OneB));
    }
}
