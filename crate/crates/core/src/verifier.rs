//! Executable checks of the classification and of the computations used in
//! its proof. Every check returns a [`CheckReport`]; failures carry a
//! concrete counterexample.

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::{as_prime_power, factorial, factorize};
use crate::classifier::{classify, ClassificationQuery, Identifier, Verdict};
use crate::config::Config;
use crate::families::{
    construct, expected_order, projective_line_gamma_with_cap, wreath_imprimitive, ConstructedGroup,
    FamilyDescriptor, FamilyError, LineGroup, SporadicName,
};
use crate::field::{FieldElement, FiniteField};
use crate::group::GroupSpec;
use crate::perm::Permutation;
use crate::sgs::StrongGeneratingSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckVerdict {
    Pass,
    Inconclusive,
    Fail,
}

impl CheckVerdict {
    /// Fail dominates, then inconclusive, then pass.
    pub fn combine(self, other: CheckVerdict) -> CheckVerdict {
        self.max(other)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Value,
    pub verdict: CheckVerdict,
    pub witness: Value,
    pub seconds: Option<f64>,
}

impl CheckReport {
    fn new(check: &str, params: Value, verdict: CheckVerdict, witness: Value, started: Instant) -> Self {
        CheckReport {
            check: check.to_string(),
            params,
            verdict,
            witness,
            seconds: Some(started.elapsed().as_secs_f64()),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == CheckVerdict::Pass
    }

    /// Drops the wall-clock time so that reports compare byte for byte.
    pub fn without_timing(mut self) -> Self {
        self.seconds = None;
        self
    }
}

pub fn aggregate<'a>(reports: impl IntoIterator<Item = &'a CheckReport>) -> CheckVerdict {
    reports
        .into_iter()
        .fold(CheckVerdict::Pass, |acc, r| acc.combine(r.verdict))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("degree {n} exceeds the converse search bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("input group {label} is imprimitive")]
    Imprimitive { label: String },
    #[error(transparent)]
    Family(#[from] FamilyError),
}

struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    fn start(config: &Config) -> Self {
        Budget {
            deadline: config.time_budget().map(|d| Instant::now() + d),
        }
    }

    fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

/// Every descriptor of `classify(n, k)` for `2 <= n <= n_max`, `k <= 2`,
/// with the case's `k`.
pub fn instantiable_descriptors(n_max: usize) -> Vec<(usize, FamilyDescriptor)> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        for k in 0..=2.min(n - 2) {
            let list = classify(ClassificationQuery::new(n, k).unwrap());
            out.extend(list.descriptors().map(|d| (k, d.clone())));
        }
    }
    out
}

/// Constructs every instantiable descriptor up to `n_max`.
pub fn construction_sweep(
    n_max: usize,
    config: &Config,
) -> Vec<(usize, FamilyDescriptor, Result<ConstructedGroup, FamilyError>)> {
    sweep_with(n_max, &|d| construct(d, config))
}

fn sweep_with(
    n_max: usize,
    build: &(dyn Fn(&FamilyDescriptor) -> Result<ConstructedGroup, FamilyError> + Sync),
) -> Vec<(usize, FamilyDescriptor, Result<ConstructedGroup, FamilyError>)> {
    instantiable_descriptors(n_max)
        .into_par_iter()
        .map(|(k, d)| {
            let built = build(&d);
            (k, d, built)
        })
        .collect()
}

fn describe(d: &FamilyDescriptor) -> String {
    format!("{} {} n={}", d.case, d.group_name(), d.n)
}

/// Constructs every descriptor the classification lists at degree at most
/// `n_max` and checks it is primitive, avoids A_n unless its order forces
/// it, contains the case's cycle, and is `(k+1)`-transitive.
pub fn forward_check(n_max: usize, config: &Config) -> Result<CheckReport, VerifyError> {
    forward_check_with(n_max, config, |d| construct(d, config))
}

/// [`forward_check`] with a custom constructor, e.g. one reading altered
/// generator data.
pub fn forward_check_with(
    n_max: usize,
    config: &Config,
    build: impl Fn(&FamilyDescriptor) -> Result<ConstructedGroup, FamilyError> + Sync,
) -> Result<CheckReport, VerifyError> {
    if n_max < 5 {
        return Err(VerifyError::InvalidParameters("forward check needs n_max >= 5".into()));
    }
    let started = Instant::now();
    let budget = Budget::start(config);
    let params = json!({ "n_max": n_max });
    let sweep: Vec<_> = instantiable_descriptors(n_max)
        .into_par_iter()
        .map(|(k, d)| {
            if budget.expired() {
                return (d, None);
            }
            let outcome = match build(&d) {
                Err(e) => Err(format!("construction failed: {e}")),
                Ok(g) => forward_one(&g, k),
            };
            (d, Some(outcome))
        })
        .collect();
    let mut failures = Vec::new();
    let mut coincide = Vec::new();
    let mut by_case: BTreeMap<String, usize> = BTreeMap::new();
    let mut skipped = 0usize;
    for (d, outcome) in sweep {
        match outcome {
            None => skipped += 1,
            Some(Ok(alt)) => {
                *by_case.entry(d.case.to_string()).or_default() += 1;
                if alt {
                    coincide.push(describe(&d));
                }
            }
            Some(Err(reason)) => failures.push(json!({ "descriptor": describe(&d), "reason": reason })),
        }
    }
    let verdict = if !failures.is_empty() {
        CheckVerdict::Fail
    } else if skipped > 0 {
        CheckVerdict::Inconclusive
    } else {
        CheckVerdict::Pass
    };
    let witness = if failures.is_empty() {
        json!({ "groups": by_case, "coincide_with_alternating": coincide, "skipped_over_budget": skipped })
    } else {
        json!({ "failures": failures })
    };
    Ok(CheckReport::new("forward", params, verdict, witness, started))
}

/// Ok(true) when the group is A_n or S_n by its order.
fn forward_one(g: &ConstructedGroup, k: usize) -> Result<bool, String> {
    let n = g.degree();
    if !g.spec.is_primitive() {
        return Err("not primitive".into());
    }
    let Some(w) = &g.witness_cycle else {
        return Err("no witness cycle".into());
    };
    if !g.sgs().contains(w) {
        return Err(format!("witness {w} not in the group"));
    }
    if w.as_single_cycle() != Some((n - k, k)) {
        return Err(format!("witness {w} is not an ({})-cycle fixing {k} points", n - k));
    }
    let t = g.spec.transitivity_degree();
    if t < k + 1 {
        return Err(format!("transitivity degree {t} < {}", k + 1));
    }
    let alternating = g.spec.contains_alternating_with(g.sgs());
    if alternating {
        let forced = expected_order(&g.descriptor)
            .zip(factorial(n as u64))
            .is_some_and(|(o, f)| 2 * o >= f);
        if !forced {
            return Err("contains A_n".into());
        }
    }
    Ok(alternating)
}

/// A group, a label for reports, and a single cycle it contains.
#[derive(Debug, Clone)]
pub struct JordanInput {
    pub label: String,
    pub group: GroupSpec,
    pub cycle: Permutation,
}

impl JordanInput {
    pub fn from_constructed(g: &ConstructedGroup) -> Option<Self> {
        Some(JordanInput {
            label: describe(&g.descriptor),
            group: g.spec.clone(),
            cycle: g.witness_cycle.clone()?,
        })
    }
}

/// A primitive group containing a cycle with `k` fixed points is
/// `(k+1)`-transitive.
pub fn jordan_transitivity_check(groups: &[JordanInput]) -> Result<CheckReport, VerifyError> {
    let started = Instant::now();
    for g in groups {
        if !g.group.is_primitive() {
            return Err(VerifyError::Imprimitive { label: g.label.clone() });
        }
    }
    let rows: Vec<_> = groups
        .par_iter()
        .map(|g| {
            let sgs = g.group.build_sgs();
            let k = match g.cycle.as_single_cycle() {
                Some((_, k)) if sgs.contains(&g.cycle) => k,
                _ => return Err(json!({ "group": g.label, "reason": format!("{} is not a cycle in the group", g.cycle) })),
            };
            let t = g.group.transitivity_degree();
            if t < k + 1 {
                Err(json!({ "group": g.label, "k": k, "transitivity_degree": t }))
            } else {
                Ok(())
            }
        })
        .collect();
    let failures: Vec<Value> = rows.into_iter().filter_map(Result::err).collect();
    let params = json!({ "groups": groups.len() });
    Ok(if failures.is_empty() {
        CheckReport::new("jordan", params, CheckVerdict::Pass, json!({ "checked": groups.len() }), started)
    } else {
        CheckReport::new("jordan", params, CheckVerdict::Fail, json!({ "failures": failures }), started)
    })
}

fn factorial_usize(n: usize) -> usize {
    (1..=n).product()
}

/// Lehmer rank of a permutation of `0..n`.
fn perm_rank(images: &[u32]) -> usize {
    let n = images.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = images[i + 1..].iter().filter(|&&x| x < images[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

fn perm_unrank(n: usize, mut rank: usize) -> Permutation {
    let mut digits = vec![0; n];
    for i in (0..n).rev() {
        digits[i] = rank % (n - i);
        rank /= n - i;
    }
    let mut pool: Vec<usize> = (0..n).collect();
    let images = digits.into_iter().map(|d| pool.remove(d)).collect();
    Permutation::from_images(images).unwrap()
}

/// All permutations of `points`, as permutations of `0..n` fixing the rest.
fn symmetric_on(n: usize, points: &[usize]) -> Vec<Permutation> {
    let k = points.len();
    (0..factorial_usize(k))
        .map(|r| {
            let local = perm_unrank(k, r);
            let mut images: Vec<usize> = (0..n).collect();
            for (i, &x) in points.iter().enumerate() {
                images[x] = points[local.apply(i)];
            }
            Permutation::from_images(images).unwrap()
        })
        .collect()
}

/// Elements `σ` normalizing `⟨c⟩` for `c = (0 1 .. m-1)`: `i ↦ u i` on the
/// support for units `u`, times any permutation of the fixed points.
fn cycle_normalizer(n: usize, m: usize) -> Vec<Permutation> {
    let fixed: Vec<usize> = (m..n).collect();
    let sym = symmetric_on(n, &fixed);
    let mut out = Vec::new();
    for u in (1..m.max(2)).filter(|&u| num_integer::gcd(u, m) == 1) {
        let mult = Permutation::from_images((0..n).map(|x| if x < m { (u * x) % m } else { x }).collect())
            .unwrap();
        for s in &sym {
            out.push(mult.after(s));
        }
    }
    out
}

/// Representatives `g` of S_n such that every group `⟨c, g'⟩` is conjugate
/// to some `⟨c, g⟩`: orbits of `g ↦ c^x σ g^{±1} σ⁻¹ c^y` for `σ` in the
/// normalizer of `⟨c⟩`.
fn converse_representatives(n: usize, m: usize) -> Vec<Permutation> {
    let total = factorial_usize(n);
    let c = Permutation::cycle(n, m);
    let powers: Vec<Permutation> = (0..m as u64).map(|i| c.pow(i)).collect();
    let normalizer = cycle_normalizer(n, m);
    let mut seen = vec![0u64; total.div_ceil(64)];
    let mut reps = Vec::new();
    let mark = |seen: &mut [u64], p: &Permutation| {
        let images: Vec<u32> = p.images().map(|x| x as u32).collect();
        let r = perm_rank(&images);
        seen[r / 64] |= 1 << (r % 64);
    };
    for r in 0..total {
        if seen[r / 64] >> (r % 64) & 1 == 1 {
            continue;
        }
        let g = perm_unrank(n, r);
        let g_inv = g.inverse();
        for s in &normalizer {
            let s_inv = s.inverse();
            for h in [&g, &g_inv] {
                let conj = s.after(h).after(&s_inv);
                for x in &powers {
                    let left = x.after(&conj);
                    for y in &powers {
                        mark(&mut seen, &left.after(y));
                    }
                }
            }
        }
        reps.push(g);
    }
    reps
}

enum ConverseOutcome {
    Intransitive,
    Imprimitive,
    Alternating,
    Identified(Vec<String>),
    Inconsistent(Value),
    Skipped,
}

/// Sweeps all groups `⟨c, g⟩` with `c = (0 1 .. n-k-1)` and `g ∈ S_n` up to
/// conjugacy, and identifies every primitive one not containing A_n
/// against `classify(n, k)`.
pub fn converse_search(n: usize, k: usize, config: &Config) -> Result<CheckReport, VerifyError> {
    if n > config.converse_bound {
        return Err(VerifyError::BoundExceeded {
            n,
            bound: config.converse_bound,
        });
    }
    if n < 2 || k + 2 > n {
        return Err(VerifyError::InvalidParameters(format!("need 0 <= k <= n-2, got n={n} k={k}")));
    }
    let started = Instant::now();
    let budget = Budget::start(config);
    let m = n - k;
    let c = Permutation::cycle(n, m);
    let reps = converse_representatives(n, m);
    let identifier = Identifier::new(n, config);
    let outcomes: Vec<ConverseOutcome> = reps
        .par_iter()
        .map(|g| {
            if budget.expired() {
                return ConverseOutcome::Skipped;
            }
            let group = GroupSpec::new(n, vec![c.clone(), g.clone()]).unwrap();
            if !group.is_transitive() {
                return ConverseOutcome::Intransitive;
            }
            if !group.is_primitive() {
                return ConverseOutcome::Imprimitive;
            }
            if group.contains_alternating() {
                return ConverseOutcome::Alternating;
            }
            match identifier.identify(&group) {
                Ok(id) => match &id.verdict {
                    Verdict::Matched { descriptors } => {
                        ConverseOutcome::Identified(descriptors.iter().map(describe).collect())
                    }
                    Verdict::ContainsAlternating => ConverseOutcome::Alternating,
                    Verdict::InconsistentWithTheorem { .. } => ConverseOutcome::Inconsistent(json!({
                        "generators": [c.to_string(), g.to_string()],
                        "identification": id,
                    })),
                },
                Err(e) => ConverseOutcome::Inconsistent(json!({
                    "generators": [c.to_string(), g.to_string()],
                    "error": e.to_string(),
                })),
            }
        })
        .collect();
    let mut counts = BTreeMap::from([
        ("intransitive", 0usize),
        ("imprimitive", 0),
        ("alternating", 0),
        ("proper_primitive", 0),
        ("skipped_over_budget", 0),
    ]);
    let mut identified: BTreeMap<String, usize> = BTreeMap::new();
    let mut failures = Vec::new();
    for outcome in outcomes {
        let key = match outcome {
            ConverseOutcome::Intransitive => "intransitive",
            ConverseOutcome::Imprimitive => "imprimitive",
            ConverseOutcome::Alternating => "alternating",
            ConverseOutcome::Skipped => "skipped_over_budget",
            ConverseOutcome::Identified(names) => {
                for name in names {
                    *identified.entry(name).or_default() += 1;
                }
                "proper_primitive"
            }
            ConverseOutcome::Inconsistent(w) => {
                failures.push(w);
                "proper_primitive"
            }
        };
        *counts.get_mut(key).unwrap() += 1;
    }
    let params = json!({ "n": n, "k": k });
    let verdict = if !failures.is_empty() {
        CheckVerdict::Fail
    } else if counts["skipped_over_budget"] > 0 {
        CheckVerdict::Inconclusive
    } else {
        CheckVerdict::Pass
    };
    let witness = if failures.is_empty() {
        json!({
            "scope": "two-generated groups <c, g> containing the cycle c, up to conjugacy",
            "cycle": c.to_string(),
            "representatives": reps.len(),
            "counts": counts,
            "identified": identified,
        })
    } else {
        json!({ "failures": failures })
    };
    Ok(CheckReport::new("converse", params, verdict, witness, started))
}

/// Visits the elements of the pointwise stabilizer of `points`.
fn for_each_stabilizer_element<B>(
    group: &GroupSpec,
    points: &[usize],
    visit: impl FnMut(&Permutation) -> ControlFlow<B>,
) -> (u128, ControlFlow<B>) {
    let stab = group.stabilizer(points).expect("points in range");
    let sgs = stab.build_sgs();
    let order = sgs.order().unwrap_or(u128::MAX);
    (order, sgs.for_each_element(visit))
}

fn line_group(p: u64, e: u32, group: LineGroup, config: &Config) -> Result<ConstructedGroup, VerifyError> {
    Ok(projective_line_gamma_with_cap(p, e, group, config.degree_cap)?)
}

/// The `(q-1)`-cycles fixing `0` and `∞` in PΓL_2(q) all lie in PGL_2(q);
/// for odd `q`, PΣL_2(q) and (for even `e`) M_2(q) contain none.
pub fn gamma_cycle_check(p: u64, e: u32, config: &Config) -> Result<CheckReport, VerifyError> {
    let started = Instant::now();
    let params = json!({ "p": p, "e": e });
    let gamma = line_group(p, e, LineGroup::PGammaL { frobenius: 1 }, config)?;
    let pgl = line_group(p, e, LineGroup::PGammaL { frobenius: e }, config)?;
    let q = pgl.degree() - 1;
    let pair = [0, q];
    let wanted = Some((q - 1, 2));
    let mut cycles = 0usize;
    let mut stray = None;
    let (stab_order, _) = for_each_stabilizer_element(&gamma.spec, &pair, |g| {
        if g.as_single_cycle() == wanted {
            cycles += 1;
            if !pgl.sgs().contains(g) {
                stray = Some(g.clone());
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    if let Some(g) = stray {
        let witness = json!({ "cycle_outside_pgl": g, "group": gamma.descriptor.group_name() });
        return Ok(CheckReport::new("gamma_cycles", params, CheckVerdict::Fail, witness, started));
    }
    let mut cycle_free = Vec::new();
    if p != 2 {
        let mut others = vec![LineGroup::PSigmaL { frobenius: 1 }];
        if e % 2 == 0 {
            others.push(LineGroup::M2);
        }
        for group in others {
            let g = line_group(p, e, group, config)?;
            let (_, hit) = for_each_stabilizer_element(&g.spec, &pair, |x| {
                if x.as_single_cycle() == wanted {
                    ControlFlow::Break(x.clone())
                } else {
                    ControlFlow::Continue(())
                }
            });
            if let ControlFlow::Break(x) = hit {
                let witness = json!({ "group": g.descriptor.group_name(), "unexpected_cycle": x });
                return Ok(CheckReport::new("gamma_cycles", params, CheckVerdict::Fail, witness, started));
            }
            cycle_free.push(g.descriptor.group_name());
        }
    }
    let witness = json!({
        "stabilizer_order": stab_order,
        "cycles_in_stabilizer": cycles,
        "all_in": pgl.descriptor.group_name(),
        "without_cycles": cycle_free,
    });
    let verdict = if cycles > 0 { CheckVerdict::Pass } else { CheckVerdict::Fail };
    Ok(CheckReport::new("gamma_cycles", params, verdict, witness, started))
}

/// For `g: t ↦ a t^(p^f)` and `d = e/f`, `g^d` is multiplication by
/// `a^(1 + p^f + .. + p^((d-1)f))`, and its order divides `(q-1)` over that
/// exponent sum.
pub fn semilinear_order_identity_check(p: u64, e: u32, f: u32, a: u32, config: &Config) -> Result<CheckReport, VerifyError> {
    let started = Instant::now();
    let params = json!({ "p": p, "e": e, "f": f, "a": a });
    if f == 0 || e % f != 0 {
        return Err(VerifyError::InvalidParameters(format!("f={f} does not divide e={e}")));
    }
    let field = FiniteField::with_cap(p, e, config.degree_cap).map_err(FamilyError::from)?;
    let q = field.order();
    if a == 0 || u64::from(a) >= q {
        return Err(VerifyError::InvalidParameters(format!("a={a} must encode a nonzero element")));
    }
    let a = field.element(a);
    let d = e / f;
    let pf = p.pow(f);
    let exponent: u64 = (0..d).map(|i| pf.pow(i)).sum();
    let scale = field.pow(a, exponent);
    let g = |t: FieldElement| field.mul(a, field.frobenius(t, f));
    let mismatch = field.elements().find(|&t| {
        let mut x = t;
        for _ in 0..d {
            x = g(x);
        }
        x != field.mul(scale, t)
    });
    let order = field.multiplicative_order(scale).expect("nonzero");
    let divides = (q - 1) % exponent == 0 && ((q - 1) / exponent) % order == 0;
    let witness = json!({
        "exponent": exponent,
        "g_power_scale": scale.index(),
        "order": order,
        "bound": (q - 1) / exponent,
        "mismatch_at": mismatch.map(|t| t.index()),
    });
    let verdict = if mismatch.is_none() && divides { CheckVerdict::Pass } else { CheckVerdict::Fail };
    Ok(CheckReport::new("semilinear_order", params, verdict, witness, started))
}

/// The stabilizer of `0` and `∞` in PΣL_2(q) has exactly two orbits on the
/// nonzero field elements: the squares and the non-squares.
pub fn residue_orbit_check(p: u64, e: u32, config: &Config) -> Result<CheckReport, VerifyError> {
    let started = Instant::now();
    let params = json!({ "p": p, "e": e });
    if p == 2 {
        return Err(VerifyError::InvalidParameters("q must be odd".into()));
    }
    let psigma = line_group(p, e, LineGroup::PSigmaL { frobenius: 1 }, config)?;
    let field = FiniteField::with_cap(p, e, config.degree_cap).map_err(FamilyError::from)?;
    let q = field.size();
    let stab = psigma.spec.stabilizer(&[0, q]).expect("points in range");
    let mut orbits: Vec<Vec<usize>> = stab
        .orbits()
        .into_iter()
        .filter(|o| !o.contains(&0) && !o.contains(&q))
        .collect();
    orbits.sort();
    let squares: Vec<usize> = (1..q).filter(|&x| field.is_square(field.element(x as u32)).unwrap()).collect();
    let non_squares: Vec<usize> = (1..q).filter(|x| !squares.contains(x)).collect();
    let mut expected = vec![squares, non_squares];
    expected.sort();
    let verdict = if orbits == expected { CheckVerdict::Pass } else { CheckVerdict::Fail };
    let show = |sets: &[Vec<usize>]| -> Vec<Vec<usize>> { sets.iter().map(|s| s.iter().map(|x| x + 1).collect()).collect() };
    let witness = json!({
        "orbits": show(&orbits),
        "residue_classes": show(&expected),
        "point_base": 1,
    });
    Ok(CheckReport::new("residue_orbits", params, verdict, witness, started))
}

/// `(name, k)` pairs whose absence of `(n-k)`-cycles the elimination needs.
pub const MATHIEU_CASES: [(SporadicName, &[usize]); 7] = [
    (SporadicName::M11At11, &[2, 3]),
    (SporadicName::M11At12, &[2]),
    (SporadicName::M12, &[2, 3, 4]),
    (SporadicName::M22, &[2]),
    (SporadicName::AutM22, &[2]),
    (SporadicName::M23, &[2, 3]),
    (SporadicName::M24, &[2, 3, 4]),
];

/// Certifies that a sporadic group has no `(n-k)`-cycle for each `k` by
/// scanning the pointwise stabilizer of the first `k` points: the group is
/// `k`-transitive, so any such cycle is conjugate into it.
pub fn mathieu_elimination_check(name: SporadicName, ks: &[usize], config: &Config) -> Result<CheckReport, VerifyError> {
    let started = Instant::now();
    let budget = Budget::start(config);
    let params = json!({ "group": name.label(), "k": ks });
    let group = crate::families::sporadic_from_text(name, name.info().data, config)?;
    let n = group.degree();
    let t = group.spec.transitivity_degree();
    let mut rows = Vec::new();
    let mut verdict = CheckVerdict::Pass;
    for &k in ks {
        if k < 2 || k > t || k + 2 > n {
            return Err(VerifyError::InvalidParameters(format!(
                "k={k} outside 2..={} for {}",
                t.min(n - 2),
                name.label()
            )));
        }
        if budget.expired() {
            verdict = verdict.combine(CheckVerdict::Inconclusive);
            rows.push(json!({ "k": k, "status": "skipped_over_budget" }));
            continue;
        }
        let points: Vec<usize> = (0..k).collect();
        let stab = group.spec.stabilizer(&points).expect("points in range");
        let sgs: StrongGeneratingSet = stab.build_sgs();
        let order = sgs.order().unwrap_or(u128::MAX);
        if order > config.exhaustive_cap {
            verdict = verdict.combine(CheckVerdict::Inconclusive);
            rows.push(json!({ "k": k, "stabilizer_order": order, "status": "over_exhaustive_cap" }));
            continue;
        }
        let wanted = Some((n - k, k));
        let hit = sgs.for_each_element(|g| {
            if g.as_single_cycle() == wanted {
                ControlFlow::Break(g.clone())
            } else {
                ControlFlow::Continue(())
            }
        });
        match hit {
            ControlFlow::Break(g) => {
                verdict = CheckVerdict::Fail;
                rows.push(json!({ "k": k, "stabilizer_order": order, "cycle": g }));
            }
            ControlFlow::Continue(()) => {
                rows.push(json!({ "k": k, "stabilizer_order": order, "status": "certified_absent" }));
            }
        }
    }
    Ok(CheckReport::new(
        "mathieu_elimination",
        params,
        verdict,
        json!({ "transitivity_degree": t, "scans": rows }),
        started,
    ))
}

/// For `3 <= d <= d_max`: `2^d - 1` is not a prime power with exponent
/// above 1, and `2^d - 2` does not divide `d`.
pub fn agl2_elimination_check(d_max: u32) -> Result<CheckReport, VerifyError> {
    let started = Instant::now();
    if !(3..=60).contains(&d_max) {
        return Err(VerifyError::InvalidParameters("d_max must lie in 3..=60".into()));
    }
    let params = json!({ "d_max": d_max });
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for d in 3..=d_max {
        let m = (1u64 << d) - 1;
        let factors = factorize(m);
        let text = factors
            .iter()
            .map(|&(p, a)| if a == 1 { p.to_string() } else { format!("{p}^{a}") })
            .collect::<Vec<_>>()
            .join("*");
        let proper_power = as_prime_power(m).is_some_and(|(_, a)| a > 1);
        let divides = d as u64 % (m - 1) == 0;
        if proper_power || divides {
            bad.push(json!({ "d": d, "factors": text, "proper_prime_power": proper_power, "divides": divides }));
        }
        rows.push(json!({ "d": d, "factors": text, "prime": factors.len() == 1 && factors[0].1 == 1 }));
    }
    Ok(if bad.is_empty() {
        CheckReport::new("agl2_elimination", params, CheckVerdict::Pass, json!({ "rows": rows }), started)
    } else {
        CheckReport::new("agl2_elimination", params, CheckVerdict::Fail, json!({ "failures": bad }), started)
    })
}

/// Fixed-point counts `k` for which `S_m ≀ S_blocks` has a single cycle:
/// `m, 2m, .., n-2m` and `n-m, .., n-2`.
pub fn wreath_cycle_ks(m: usize, blocks: usize) -> Vec<usize> {
    let n = m * blocks;
    let mut ks: Vec<usize> = (1..=blocks.saturating_sub(2)).map(|j| j * m).collect();
    ks.extend(n - m..=n - 2);
    ks.sort();
    ks.dedup();
    ks
}

/// A single cycle with `k` fixed points in `S_m ≀ S_blocks`, built
/// explicitly.
pub fn wreath_cycle(m: usize, blocks: usize, k: usize) -> Option<Permutation> {
    let n = m * blocks;
    let mut images: Vec<usize> = (0..n).collect();
    if k >= n - m && k + 2 <= n {
        let len = n - k;
        for x in 0..len {
            images[x] = (x + 1) % len;
        }
    } else if k % m == 0 && k / m + 2 <= blocks {
        let r = blocks - k / m;
        let seq: Vec<usize> = (0..r * m).map(|i| (i % r) * m + i / r).collect();
        for i in 0..seq.len() {
            images[seq[i]] = seq[(i + 1) % seq.len()];
        }
    } else {
        return None;
    }
    Permutation::from_images(images).ok()
}

/// The imprimitive wreath product contains a cycle with `k` fixed points
/// for each listed `k`.
pub fn wreath_comment_check(m: usize, blocks: usize) -> Result<CheckReport, VerifyError> {
    let started = Instant::now();
    let params = json!({ "m": m, "blocks": blocks });
    if m * blocks > 24 {
        return Err(VerifyError::InvalidParameters("m * blocks must be at most 24".into()));
    }
    let w = wreath_imprimitive(m, blocks)?;
    let n = w.degree();
    let mut found = Vec::new();
    let mut failures = Vec::new();
    for k in wreath_cycle_ks(m, blocks) {
        match wreath_cycle(m, blocks, k) {
            Some(c) if w.sgs().contains(&c) && c.as_single_cycle() == Some((n - k, k)) => {
                found.push(json!({ "k": k, "cycle": c }))
            }
            other => failures.push(json!({ "k": k, "candidate": other })),
        }
    }
    if w.spec.is_primitive() {
        failures.push(json!({ "reason": "wreath product came out primitive" }));
    }
    Ok(if failures.is_empty() {
        CheckReport::new("wreath_comment", params, CheckVerdict::Pass, json!({ "cycles": found }), started)
    } else {
        CheckReport::new("wreath_comment", params, CheckVerdict::Fail, json!({ "failures": failures }), started)
    })
}

fn planted(cycle_lengths: &[usize], rng: &mut ChaCha8Rng) -> (Permutation, Vec<Vec<usize>>) {
    let n: usize = cycle_lengths.iter().sum();
    let mut points: Vec<usize> = (0..n).collect();
    points.shuffle(rng);
    let mut cycles = Vec::new();
    let mut start = 0;
    for &len in cycle_lengths {
        cycles.push(points[start..start + len].to_vec());
        start += len;
    }
    let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
    (Permutation::from_cycles(n, &refs).unwrap(), cycles)
}

/// Random permutations with a planted cycle whose length is coprime to the
/// others; some power must be exactly that cycle.
pub fn coprime_comment_check(trials: usize, config: &Config) -> Result<CheckReport, VerifyError> {
    let started = Instant::now();
    let params = json!({ "trials": trials, "seed": config.seed });
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut cases: Vec<(Vec<usize>, Option<usize>)> = vec![
        (vec![5, 2, 2], Some(5)),
        (vec![7, 3, 6], Some(7)),
        (vec![4, 2], None),
        (vec![6, 3, 2], None),
    ];
    const PRIMES: [usize; 5] = [5, 7, 11, 13, 17];
    for _ in 0..trials {
        let l = PRIMES[rng.gen_range(0..PRIMES.len())];
        let mut lengths = vec![l];
        for _ in 0..rng.gen_range(0..5) {
            lengths.push(rng.gen_range(1..l));
        }
        cases.push((lengths, Some(l)));
    }
    let mut failures = Vec::new();
    for (lengths, expected) in &cases {
        let (p, cycles) = planted(lengths, &mut rng);
        let got = p.coprime_cycle_power();
        let ok = match (got.as_ref(), expected) {
            (None, None) => true,
            (Some(c), Some(l)) => {
                let support = &cycles[0];
                let n = p.degree();
                let cyclic = StrongGeneratingSet::new(n, std::slice::from_ref(&p));
                c.as_single_cycle() == Some((*l, n - l))
                    && support.iter().all(|&x| c.apply(x) != x)
                    && cyclic.contains(c)
            }
            _ => false,
        };
        if !ok {
            failures.push(json!({ "permutation": p, "lengths": lengths, "result": got }));
        }
    }
    Ok(if failures.is_empty() {
        CheckReport::new("coprime_comment", params, CheckVerdict::Pass, json!({ "cases": cases.len() }), started)
    } else {
        CheckReport::new("coprime_comment", params, CheckVerdict::Fail, json!({ "failures": failures }), started)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_round_trip() {
        for r in 0..120 {
            let p = perm_unrank(5, r);
            let images: Vec<u32> = p.images().map(|x| x as u32).collect();
            assert_eq!(perm_rank(&images), r);
        }
    }

    #[test]
    fn representatives_cover_small_symmetric_groups() {
        // every g is reachable from some representative
        for (n, m) in [(4, 4), (5, 3), (5, 2)] {
            let reps = converse_representatives(n, m);
            assert!(reps.len() < factorial_usize(n));
            assert_eq!(reps[0], Permutation::identity(n));
        }
    }

    #[test]
    fn wreath_cycles_exist() {
        assert_eq!(wreath_cycle_ks(2, 3), [2, 4]);
        assert_eq!(wreath_cycle_ks(3, 2), [3, 4]);
        assert_eq!(wreath_cycle_ks(2, 2), [2]);
        for (m, b) in [(2, 2), (2, 3), (3, 2), (3, 4), (4, 3)] {
            assert!(wreath_comment_check(m, b).unwrap().passed());
        }
    }

    #[test]
    fn small_checks_pass() {
        let config = Config::default();
        assert!(agl2_elimination_check(12).unwrap().passed());
        assert!(residue_orbit_check(5, 1, &config).unwrap().passed());
        assert!(gamma_cycle_check(3, 2, &config).unwrap().passed());
        assert!(semilinear_order_identity_check(3, 2, 1, 2, &config).unwrap().passed());
        assert!(coprime_comment_check(20, &config).unwrap().passed());
    }

    #[test]
    fn verdicts_aggregate() {
        use CheckVerdict::*;
        assert_eq!(Pass.combine(Inconclusive), Inconclusive);
        assert_eq!(Fail.combine(Inconclusive), Fail);
        assert_eq!(Pass.combine(Pass), Pass);
    }

    #[test]
    fn converse_degree_five() {
        let config = Config::default();
        for k in 0..=3 {
            let r = converse_search(5, k, &config).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn budget_expiry_is_inconclusive() {
        let config = Config {
            time_budget_seconds: Some(0.0),
            ..Config::default()
        };
        let r = converse_search(6, 0, &config).unwrap();
        assert_eq!(r.verdict, CheckVerdict::Inconclusive);
    }
}
