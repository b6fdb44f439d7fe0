//! Concrete permutation groups for every family in the classification of
//! primitive groups containing a cycle, plus the auxiliary groups the
//! eliminations need.
//!
//! Point labels are fixed so generators serialize identically everywhere:
//!
//! * `GF(q)` and affine spaces: vectors `(x_0, .., x_{d-1})` numbered by
//!   `x_0 q^{d-1} + .. + x_{d-1}` with each `x_i` an element encoding, i.e.
//!   lexicographic order.
//! * projective spaces: representatives with last nonzero coordinate 1,
//!   in lexicographic order.
//! * the projective line `GF(q) ∪ {∞}`: field elements by encoding, then
//!   `∞` as point `q`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{as_prime_power, divisors, factorial, is_prime};
use crate::config::Config;
use crate::field::{gl_order, singer_matrix, FieldElement, FieldError, FiniteField, MatrixGL};
use crate::group::{GroupError, GroupSpec};
use crate::perm::Permutation;
use crate::search::{find_cycle_in_chain, CycleSearch};
use crate::sgs::StrongGeneratingSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("verification failed for {label}: {reason}")]
    VerificationFailed { label: String, reason: String },
    #[error("malformed generator data: {0}")]
    MalformedData(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn invalid(msg: impl Into<String>) -> FamilyError {
    FamilyError::InvalidParameters(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseTag {
    #[serde(rename = "1a")]
    OneA,
    #[serde(rename = "1b")]
    OneB,
    #[serde(rename = "1c")]
    OneC,
    #[serde(rename = "2a")]
    TwoA,
    #[serde(rename = "2b")]
    TwoB,
    #[serde(rename = "2c")]
    TwoC,
    #[serde(rename = "3")]
    Three,
    #[serde(rename = "aux")]
    Aux,
}

impl CaseTag {
    /// Fixed points of the cycle the case is about.
    pub fn fixed_points(self) -> Option<usize> {
        match self {
            CaseTag::OneA | CaseTag::OneB | CaseTag::OneC => Some(0),
            CaseTag::TwoA | CaseTag::TwoB | CaseTag::TwoC => Some(1),
            CaseTag::Three => Some(2),
            CaseTag::Aux => None,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::OneA => "1a",
            CaseTag::OneB => "1b",
            CaseTag::OneC => "1c",
            CaseTag::TwoA => "2a",
            CaseTag::TwoB => "2b",
            CaseTag::TwoC => "2c",
            CaseTag::Three => "3",
            CaseTag::Aux => "aux",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SporadicName {
    #[serde(rename = "L2_11@11")]
    L2_11At11,
    #[serde(rename = "M11@11")]
    M11At11,
    #[serde(rename = "M11@12")]
    M11At12,
    M12,
    M22,
    AutM22,
    M23,
    M24,
}

pub struct SporadicInfo {
    pub name: SporadicName,
    pub label: &'static str,
    pub degree: usize,
    pub order: u128,
    pub transitivity: usize,
    pub data: &'static str,
    /// Fixed points of the cycle the representation is listed for.
    pub case: Option<(CaseTag, usize)>,
}

const SPORADICS: [SporadicInfo; 8] = [
    SporadicInfo {
        name: SporadicName::L2_11At11,
        label: "L2_11@11",
        degree: 11,
        order: 660,
        transitivity: 2,
        data: include_str!("../data/L2_11_11.txt"),
        case: Some((CaseTag::OneC, 0)),
    },
    SporadicInfo {
        name: SporadicName::M11At11,
        label: "M11@11",
        degree: 11,
        order: 7920,
        transitivity: 4,
        data: include_str!("../data/M11_11.txt"),
        case: Some((CaseTag::OneC, 0)),
    },
    SporadicInfo {
        name: SporadicName::M11At12,
        label: "M11@12",
        degree: 12,
        order: 7920,
        transitivity: 3,
        data: include_str!("../data/M11_12.txt"),
        case: Some((CaseTag::TwoC, 1)),
    },
    SporadicInfo {
        name: SporadicName::M12,
        label: "M12",
        degree: 12,
        order: 95040,
        transitivity: 5,
        data: include_str!("../data/M12.txt"),
        case: Some((CaseTag::TwoC, 1)),
    },
    SporadicInfo {
        name: SporadicName::M22,
        label: "M22",
        degree: 22,
        order: 443520,
        transitivity: 3,
        data: include_str!("../data/M22.txt"),
        case: None,
    },
    SporadicInfo {
        name: SporadicName::AutM22,
        label: "AutM22",
        degree: 22,
        order: 887040,
        transitivity: 3,
        data: include_str!("../data/AutM22.txt"),
        case: None,
    },
    SporadicInfo {
        name: SporadicName::M23,
        label: "M23",
        degree: 23,
        order: 10200960,
        transitivity: 4,
        data: include_str!("../data/M23.txt"),
        case: Some((CaseTag::OneC, 0)),
    },
    SporadicInfo {
        name: SporadicName::M24,
        label: "M24",
        degree: 24,
        order: 244823040,
        transitivity: 5,
        data: include_str!("../data/M24.txt"),
        case: Some((CaseTag::TwoC, 1)),
    },
];

impl SporadicName {
    pub const ALL: [SporadicName; 8] = [
        SporadicName::L2_11At11,
        SporadicName::M11At11,
        SporadicName::M11At12,
        SporadicName::M12,
        SporadicName::M22,
        SporadicName::AutM22,
        SporadicName::M23,
        SporadicName::M24,
    ];

    pub fn info(self) -> &'static SporadicInfo {
        SPORADICS.iter().find(|s| s.name == self).unwrap()
    }

    pub fn label(self) -> &'static str {
        self.info().label
    }
}

impl fmt::Display for SporadicName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SporadicName {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SporadicName::ALL
            .into_iter()
            .find(|n| n.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| invalid(format!("unknown sporadic group {s:?}")))
    }
}

/// Groups on the projective line `GF(q) ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "group", rename_all = "lowercase")]
pub enum LineGroup {
    /// L_2(q) = PSL_2(q).
    Psl,
    /// PΣL_2(q) restricted to `L_2(q) ⋊ ⟨t ↦ t^(p^f)⟩`.
    PSigmaL { frobenius: u32 },
    /// `PGL_2(q) ⋊ ⟨t ↦ t^(p^f)⟩`; `f = e` is PGL_2(q), `f = 1` is PΓL_2(q).
    PGammaL { frobenius: u32 },
    /// `⟨L_2(q), t ↦ a t^(√q)⟩` with `a` a non-square; needs `q` an odd square.
    M2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Variant {
    /// `C_p ⋊ C_m` inside AGL_1(p).
    AffineLine { m: u64 },
    /// `PGL_d(q) ⋊ ⟨φ^f⟩` on projective points.
    Projective { frobenius: u32 },
    /// `AGL_d(q) ⋊ ⟨φ^f⟩` on `GF(q)^d`.
    Affine { frobenius: u32 },
    /// L_2(p) on `p + 1` points.
    Psl2,
    /// PGL_2(p) on `p + 1` points.
    Pgl2,
    Line(LineGroup),
    Sporadic { name: SporadicName },
    /// `S_m ≀ S_blocks` in its imprimitive action.
    Wreath { m: usize, blocks: usize },
}

/// One concrete group: the case it belongs to, its parameters and degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub case: CaseTag,
    pub p: Option<u64>,
    pub e: Option<u32>,
    pub d: Option<u32>,
    pub n: usize,
    pub variant: Variant,
}

impl FamilyDescriptor {
    pub fn q(&self) -> Option<u64> {
        Some(self.p?.pow(self.e?))
    }

    /// Human-readable group name, e.g. `PGammaL_2(9)` or `C_11:C_5`.
    pub fn group_name(&self) -> String {
        let p = self.p.unwrap_or(0);
        let e = self.e.unwrap_or(1);
        let q = self.q().unwrap_or(0);
        let d = self.d.unwrap_or(1);
        let ext = |f: u32, bottom: String, top: String| {
            if f == e {
                bottom
            } else if f == 1 {
                top
            } else {
                format!("{bottom}:<phi^{f}>")
            }
        };
        match self.variant {
            Variant::AffineLine { m } if m == 1 => format!("C_{p}"),
            Variant::AffineLine { m } if m == p - 1 => format!("AGL_1({p})"),
            Variant::AffineLine { m } => format!("C_{p}:C_{m}"),
            Variant::Projective { frobenius } => {
                ext(frobenius, format!("PGL_{d}({q})"), format!("PGammaL_{d}({q})"))
            }
            Variant::Affine { frobenius } => {
                ext(frobenius, format!("AGL_{d}({q})"), format!("AGammaL_{d}({q})"))
            }
            Variant::Psl2 => format!("L_2({p})"),
            Variant::Pgl2 => format!("PGL_2({p})"),
            Variant::Line(LineGroup::Psl) => format!("L_2({q})"),
            Variant::Line(LineGroup::M2) => format!("M_2({q})"),
            Variant::Line(LineGroup::PGammaL { frobenius }) => {
                ext(frobenius, format!("PGL_2({q})"), format!("PGammaL_2({q})"))
            }
            Variant::Line(LineGroup::PSigmaL { frobenius }) => {
                ext(frobenius, format!("L_2({q})"), format!("PSigmaL_2({q})"))
            }
            Variant::Sporadic { name } => name.label().to_string(),
            Variant::Wreath { m, blocks } => format!("S_{m} wr S_{blocks}"),
        }
    }

    /// Fixed points of the witness cycle for case groups.
    pub fn fixed_points(&self) -> Option<usize> {
        self.case.fixed_points()
    }
}

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} (n={})", self.case, self.group_name(), self.n)
    }
}

/// A group with its descriptor, its stabilizer chain and, for the
/// classification cases, a member that is a single cycle with the case's
/// number of fixed points.
#[derive(Debug, Clone)]
pub struct ConstructedGroup {
    pub spec: GroupSpec,
    pub descriptor: FamilyDescriptor,
    pub witness_cycle: Option<Permutation>,
    sgs: StrongGeneratingSet,
}

impl ConstructedGroup {
    pub fn sgs(&self) -> &StrongGeneratingSet {
        &self.sgs
    }

    pub fn order(&self) -> u128 {
        self.sgs.order().expect("constructed groups have representable order")
    }

    pub fn degree(&self) -> usize {
        self.spec.degree()
    }

    fn assemble(
        descriptor: FamilyDescriptor,
        generators: Vec<Permutation>,
        expected_order: Option<u128>,
        witness: Option<Permutation>,
    ) -> Result<Self, FamilyError> {
        let label = descriptor.group_name();
        let spec = GroupSpec::new(descriptor.n, generators)?.with_label(label.clone());
        let sgs = spec.build_sgs();
        let fail = |reason: String| FamilyError::VerificationFailed {
            label: label.clone(),
            reason,
        };
        if let Some(expected) = expected_order {
            let order = sgs.order().ok_or_else(|| fail("order overflow".into()))?;
            if order != expected {
                return Err(fail(format!("order {order}, expected {expected}")));
            }
        }
        if let Some(w) = &witness {
            if !sgs.contains(w) {
                return Err(fail(format!("witness {w} is not a member")));
            }
            let k = descriptor.fixed_points();
            if w.as_single_cycle().map(|(_, f)| f) != k {
                return Err(fail(format!("witness {w} is not a cycle with {k:?} fixed points")));
            }
        }
        Ok(ConstructedGroup {
            spec,
            descriptor,
            witness_cycle: witness,
            sgs,
        })
    }
}

fn check_prime(p: u64) -> Result<(), FamilyError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(invalid(format!("{p} is not prime")))
    }
}

fn check_frobenius(e: u32, f: u32) -> Result<(), FamilyError> {
    if f >= 1 && e % f == 0 {
        Ok(())
    } else {
        Err(invalid(format!("frobenius exponent {f} must divide {e}")))
    }
}

fn perm_from_fn(n: usize, f: impl Fn(usize) -> usize) -> Result<Permutation, FamilyError> {
    Permutation::from_images((0..n).map(f).collect())
        .map_err(|e| invalid(format!("generated map is not a permutation: {e}")))
}

/// Case 1(a): `⟨t ↦ t+1, t ↦ g^((p-1)/m) t⟩` on `Z_p`, of order `p m`.
pub fn affine_line(p: u64, m: u64) -> Result<ConstructedGroup, FamilyError> {
    check_prime(p)?;
    if m == 0 || (p - 1) % m != 0 {
        return Err(invalid(format!("{m} does not divide {}", p - 1)));
    }
    let field = FiniteField::new(p, 1)?;
    let n = p as usize;
    let a = field.pow(field.primitive_element(), (p - 1) / m);
    let shift = perm_from_fn(n, |t| (t + 1) % n)?;
    let scale = perm_from_fn(n, |t| field.mul(a, field.element(t as u32)).index())?;
    let descriptor = FamilyDescriptor {
        case: CaseTag::OneA,
        p: Some(p),
        e: Some(1),
        d: Some(1),
        n,
        variant: Variant::AffineLine { m },
    };
    ConstructedGroup::assemble(
        descriptor,
        vec![shift.clone(), scale],
        Some(p as u128 * m as u128),
        Some(shift),
    )
}

/// Vectors of `GF(q)^d` numbered lexicographically.
struct VectorSpace<'a> {
    field: &'a FiniteField,
    dim: usize,
    size: usize,
}

impl<'a> VectorSpace<'a> {
    fn new(field: &'a FiniteField, dim: usize, cap: u64) -> Result<Self, FamilyError> {
        let size = field
            .order()
            .checked_pow(dim as u32)
            .filter(|&s| s <= cap)
            .ok_or_else(|| invalid(format!("q^d exceeds the degree cap {cap}")))?;
        Ok(VectorSpace {
            field,
            dim,
            size: size as usize,
        })
    }

    fn vector(&self, mut index: usize) -> Vec<FieldElement> {
        let q = self.field.size();
        let mut v = vec![self.field.zero(); self.dim];
        for i in (0..self.dim).rev() {
            v[i] = self.field.element((index % q) as u32);
            index /= q;
        }
        v
    }

    fn index(&self, v: &[FieldElement]) -> usize {
        let q = self.field.size();
        v.iter().fold(0, |acc, x| acc * q + x.index())
    }

    fn frobenius(&self, v: &[FieldElement], f: u32) -> Vec<FieldElement> {
        v.iter().map(|&x| self.field.frobenius(x, f)).collect()
    }
}

/// Generators of GL_d(q): `diag(ω, 1, ..)`, the transvections
/// `I + ω^i E_{01}` for `i < e`, and the permutation matrices of the swap
/// `(0 1)` and of the coordinate cycle. Correctness is enforced by the
/// order checks of the callers.
fn gl_generators(field: &FiniteField, d: usize) -> Vec<MatrixGL> {
    let zero = field.zero();
    let one = field.one();
    let omega = field.primitive_element();
    let mut diag = MatrixGL::identity(d);
    let mut out = Vec::new();
    {
        let mut entries: Vec<FieldElement> = (0..d * d)
            .map(|i| if i % (d + 1) == 0 { one } else { zero })
            .collect();
        entries[0] = omega;
        diag = MatrixGL::new(field, d, entries).unwrap_or(diag);
        out.push(diag);
    }
    if d >= 2 {
        for i in 0..field.degree() {
            let mut entries: Vec<FieldElement> = (0..d * d)
                .map(|j| if j % (d + 1) == 0 { one } else { zero })
                .collect();
            entries[1] = field.primitive_power(i as u64);
            out.push(MatrixGL::new(field, d, entries).unwrap());
        }
        let perm_matrix = |sigma: &dyn Fn(usize) -> usize| {
            let mut entries = vec![zero; d * d];
            for col in 0..d {
                entries[sigma(col) * d + col] = one;
            }
            MatrixGL::new(field, d, entries).unwrap()
        };
        out.push(perm_matrix(&|c| match c {
            0 => 1,
            1 => 0,
            c => c,
        }));
        if d > 2 {
            out.push(perm_matrix(&|c| (c + 1) % d));
        }
    }
    out.retain(|m| !m.is_identity());
    out
}

/// Case 1(b): `PGL_d(q) ⋊ ⟨φ^f⟩` acting on the `(q^d-1)/(q-1)` points of
/// projective space, with a Singer cycle as witness.
pub fn projective(d: u32, p: u64, e: u32, frobenius: u32) -> Result<ConstructedGroup, FamilyError> {
    projective_with_cap(d, p, e, frobenius, Config::default().degree_cap)
}

pub fn projective_with_cap(
    d: u32,
    p: u64,
    e: u32,
    frobenius: u32,
    cap: u64,
) -> Result<ConstructedGroup, FamilyError> {
    if d < 2 {
        return Err(invalid("projective spaces need d >= 2"));
    }
    check_prime(p)?;
    check_frobenius(e, frobenius)?;
    let field = FiniteField::with_cap(p, e, cap)?;
    let space = VectorSpace::new(&field, d as usize, cap.saturating_mul(field.order()))?;
    let q = field.order();
    // normalized representatives, already in lexicographic order
    let mut reps: Vec<usize> = Vec::new();
    let mut point_of = vec![u32::MAX; space.size];
    for idx in 1..space.size {
        let v = space.vector(idx);
        let last = v.iter().rposition(|x| !x.is_zero()).unwrap();
        if v[last] == field.one() {
            point_of[idx] = reps.len() as u32;
            reps.push(idx);
        }
    }
    for idx in 1..space.size {
        if point_of[idx] != u32::MAX {
            continue;
        }
        let v = space.vector(idx);
        let last = v.iter().rposition(|x| !x.is_zero()).unwrap();
        let inv = field.inv(v[last]).unwrap();
        let w: Vec<FieldElement> = v.iter().map(|&x| field.mul(x, inv)).collect();
        point_of[idx] = point_of[space.index(&w)];
    }
    let n = reps.len();
    let act = |m: &MatrixGL| {
        perm_from_fn(n, |i| {
            let v = space.vector(reps[i]);
            point_of[space.index(&m.apply(&field, &v))] as usize
        })
    };
    let mut gens = gl_generators(&field, d as usize)
        .iter()
        .map(act)
        .collect::<Result<Vec<_>, _>>()?;
    if frobenius < e {
        gens.push(perm_from_fn(n, |i| {
            let v = space.vector(reps[i]);
            point_of[space.index(&space.frobenius(&v, frobenius))] as usize
        })?);
    }
    gens.retain(|g| !g.is_identity());
    let singer = act(&singer_matrix(&field, d as usize)?)?;
    let expected = gl_order(q, d).map(|o| o / (q as u128 - 1) * (e / frobenius) as u128);
    let descriptor = FamilyDescriptor {
        case: CaseTag::OneB,
        p: Some(p),
        e: Some(e),
        d: Some(d),
        n,
        variant: Variant::Projective { frobenius },
    };
    ConstructedGroup::assemble(descriptor, gens, expected, Some(singer))
}

/// Case 2(a): `AGL_d(q) ⋊ ⟨φ^f⟩` on the `q^d` vectors, with a Singer
/// cycle fixing the zero vector as witness.
pub fn affine_space(d: u32, p: u64, e: u32, frobenius: u32) -> Result<ConstructedGroup, FamilyError> {
    affine_space_with_cap(d, p, e, frobenius, Config::default().degree_cap)
}

pub fn affine_space_with_cap(
    d: u32,
    p: u64,
    e: u32,
    frobenius: u32,
    cap: u64,
) -> Result<ConstructedGroup, FamilyError> {
    if d < 1 {
        return Err(invalid("affine spaces need d >= 1"));
    }
    check_prime(p)?;
    check_frobenius(e, frobenius)?;
    let field = FiniteField::with_cap(p, e, cap)?;
    let space = VectorSpace::new(&field, d as usize, cap)?;
    let n = space.size;
    let act = |m: &MatrixGL| perm_from_fn(n, |i| space.index(&m.apply(&field, &space.vector(i))));
    let mut gens = gl_generators(&field, d as usize)
        .iter()
        .map(act)
        .collect::<Result<Vec<_>, _>>()?;
    let mut unit = vec![field.zero(); d as usize];
    unit[0] = field.one();
    gens.insert(
        0,
        perm_from_fn(n, |i| {
            let v = space.vector(i);
            let w: Vec<FieldElement> = v.iter().zip(&unit).map(|(&a, &b)| field.add(a, b)).collect();
            space.index(&w)
        })?,
    );
    if frobenius < e {
        gens.push(perm_from_fn(n, |i| space.index(&space.frobenius(&space.vector(i), frobenius)))?);
    }
    gens.retain(|g| !g.is_identity());
    let singer = act(&singer_matrix(&field, d as usize)?)?;
    let q = field.order();
    let expected = gl_order(q, d).and_then(|o| {
        (q as u128)
            .checked_pow(d)
            .and_then(|qd| qd.checked_mul(o))
            .map(|o| o * (e / frobenius) as u128)
    });
    let descriptor = FamilyDescriptor {
        case: CaseTag::TwoA,
        p: Some(p),
        e: Some(e),
        d: Some(d),
        n,
        variant: Variant::Affine { frobenius },
    };
    ConstructedGroup::assemble(descriptor, gens, expected, Some(singer))
}

/// Semilinear fractional map `t ↦ (a s + b)/(c s + d)` with `s = t^(p^f)`
/// on `GF(q) ∪ {∞}`, `∞` being point `q`.
fn line_map(field: &FiniteField, m: [FieldElement; 4], f: u32) -> Result<Permutation, FamilyError> {
    let q = field.size();
    let [a, b, c, d] = m;
    perm_from_fn(q + 1, |t| {
        if t == q {
            return match field.div(a, c) {
                Some(x) => x.index(),
                None => q,
            };
        }
        let s = field.frobenius(field.element(t as u32), f);
        let num = field.add(field.mul(a, s), b);
        let den = field.add(field.mul(c, s), d);
        match field.div(num, den) {
            Some(x) => x.index(),
            None => q,
        }
    })
}

fn line_base(field: &FiniteField, scalar: FieldElement) -> Result<Vec<Permutation>, FamilyError> {
    let (zero, one) = (field.zero(), field.one());
    let minus_one = field.neg(one);
    Ok(vec![
        line_map(field, [one, one, zero, one], 0)?,
        line_map(field, [scalar, zero, zero, one], 0)?,
        line_map(field, [zero, minus_one, one, zero], 0)?,
    ])
}

fn line_orders(q: u64) -> (u128, u128) {
    let pgl = q as u128 * (q as u128 * q as u128 - 1);
    let psl = if q % 2 == 0 { pgl } else { pgl / 2 };
    (psl, pgl)
}

/// Case 2(b): L_2(p) or PGL_2(p) on the `p+1` points of the projective
/// line, generated by `t ↦ t+1`, `t ↦ a t` and `t ↦ -1/t`; the witness is
/// the `p`-cycle `t ↦ t+1` fixing `∞`.
pub fn psl2_pgl2(p: u64, full: bool) -> Result<ConstructedGroup, FamilyError> {
    check_prime(p)?;
    if p < 5 {
        return Err(invalid("case 2(b) needs p >= 5"));
    }
    let field = FiniteField::new(p, 1)?;
    let omega = field.primitive_element();
    let scalar = if full { omega } else { field.mul(omega, omega) };
    let gens = line_base(&field, scalar)?;
    let witness = gens[0].clone();
    let (psl, pgl) = line_orders(p);
    let descriptor = FamilyDescriptor {
        case: CaseTag::TwoB,
        p: Some(p),
        e: Some(1),
        d: Some(2),
        n: p as usize + 1,
        variant: if full { Variant::Pgl2 } else { Variant::Psl2 },
    };
    ConstructedGroup::assemble(descriptor, gens, Some(if full { pgl } else { psl }), Some(witness))
}

/// Groups between L_2(q) and PΓL_2(q) on `GF(q) ∪ {∞}`. Groups containing
/// PGL_2(q) are case 3 and carry the `(q-1)`-cycle `t ↦ ωt` fixing `0` and
/// `∞`; the others are auxiliary.
pub fn projective_line_gamma(p: u64, e: u32, group: LineGroup) -> Result<ConstructedGroup, FamilyError> {
    projective_line_gamma_with_cap(p, e, group, Config::default().degree_cap)
}

pub fn projective_line_gamma_with_cap(
    p: u64,
    e: u32,
    group: LineGroup,
    cap: u64,
) -> Result<ConstructedGroup, FamilyError> {
    check_prime(p)?;
    let field = FiniteField::with_cap(p, e, cap)?;
    let q = field.order();
    let omega = field.primitive_element();
    let square = field.mul(omega, omega);
    let (psl, pgl) = line_orders(q);
    let frob = |f: u32| line_map(&field, [field.one(), field.zero(), field.zero(), field.one()], f);
    let (gens, expected, case) = match group {
        LineGroup::Psl => (line_base(&field, square)?, psl, CaseTag::Aux),
        LineGroup::PSigmaL { frobenius } => {
            check_frobenius(e, frobenius)?;
            let mut g = line_base(&field, square)?;
            g.push(frob(frobenius)?);
            (g, psl * (e / frobenius) as u128, CaseTag::Aux)
        }
        LineGroup::PGammaL { frobenius } => {
            check_frobenius(e, frobenius)?;
            let mut g = line_base(&field, omega)?;
            g.push(frob(frobenius)?);
            (g, pgl * (e / frobenius) as u128, CaseTag::Three)
        }
        LineGroup::M2 => {
            if p == 2 || e % 2 != 0 {
                return Err(invalid("M_2(q) needs q an odd square"));
            }
            let mut g = line_base(&field, square)?;
            g.push(line_map(&field, [omega, field.zero(), field.zero(), field.one()], e / 2)?);
            (g, pgl, CaseTag::Aux)
        }
    };
    let mut gens = gens;
    gens.retain(|g| !g.is_identity());
    if gens.is_empty() {
        gens.push(Permutation::identity(q as usize + 1));
    }
    let witness = if case == CaseTag::Three && q >= 3 {
        Some(line_map(&field, [omega, field.zero(), field.zero(), field.one()], 0)?)
    } else {
        None
    };
    let descriptor = FamilyDescriptor {
        case: if q < 3 { CaseTag::Aux } else { case },
        p: Some(p),
        e: Some(e),
        d: Some(2),
        n: q as usize + 1,
        variant: Variant::Line(group),
    };
    ConstructedGroup::assemble(descriptor, gens, Some(expected), witness)
}

/// Parses a generator data file (see `data/README.md`).
pub fn parse_generator_data(text: &str) -> Result<(usize, u128, usize, Vec<Permutation>), FamilyError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let bad = |m: &str| FamilyError::MalformedData(m.to_string());
    let degree: usize = lines
        .next()
        .and_then(|l| l.strip_prefix("degree "))
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| bad("first line must be `degree n`"))?;
    let expect = lines
        .next()
        .and_then(|l| l.strip_prefix("expect "))
        .ok_or_else(|| bad("second line must be `expect order=O transitivity=t`"))?;
    let mut order = None;
    let mut transitivity = None;
    for field in expect.split_whitespace() {
        match field.split_once('=') {
            Some(("order", v)) => order = v.parse::<u128>().ok(),
            Some(("transitivity", v)) => transitivity = v.parse::<usize>().ok(),
            _ => return Err(bad("unknown expect field")),
        }
    }
    let (order, transitivity) = order
        .zip(transitivity)
        .ok_or_else(|| bad("expect line needs order and transitivity"))?;
    let gens = lines
        .enumerate()
        .map(|(i, l)| {
            Permutation::parse_cycles(l, degree)
                .map_err(|e| FamilyError::MalformedData(format!("generator {}: {e}", i + 1)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if gens.is_empty() {
        return Err(bad("no generators"));
    }
    Ok((degree, order, transitivity, gens))
}

/// Sporadic representation from the embedded data, verified on load.
pub fn sporadic(name: SporadicName) -> Result<ConstructedGroup, FamilyError> {
    sporadic_from_text(name, name.info().data, &Config::default())
}

/// Like [`sporadic`] but reading generators from `text`.
pub fn sporadic_from_text(
    name: SporadicName,
    text: &str,
    config: &Config,
) -> Result<ConstructedGroup, FamilyError> {
    let info = name.info();
    let (degree, order, transitivity, gens) = parse_generator_data(text)?;
    let fail = |reason: String| FamilyError::VerificationFailed {
        label: info.label.to_string(),
        reason,
    };
    if (degree, order, transitivity) != (info.degree, info.order, info.transitivity) {
        return Err(fail(format!(
            "data header (degree {degree}, order {order}, transitivity {transitivity}) disagrees with table"
        )));
    }
    let (case, k) = match info.case {
        Some((case, k)) => (case, Some(k)),
        None => (CaseTag::Aux, None),
    };
    let descriptor = FamilyDescriptor {
        case,
        p: None,
        e: None,
        d: None,
        n: degree,
        variant: Variant::Sporadic { name },
    };
    let spec = GroupSpec::new(degree, gens.clone())?;
    let t = spec.transitivity_degree();
    if t != transitivity {
        return Err(fail(format!("transitivity degree {t}, expected {transitivity}")));
    }
    let mut built = ConstructedGroup::assemble(descriptor, gens, Some(order), None)?;
    if let Some(k) = k {
        match find_cycle_in_chain(&built.sgs, k, config) {
            CycleSearch::Found(w) => built.witness_cycle = Some(w),
            _ => return Err(fail(format!("no cycle with {k} fixed points found"))),
        }
    }
    Ok(built)
}

/// `S_m ≀ S_blocks` with block `i` on points `i m .. i m + m - 1`.
pub fn wreath_imprimitive(m: usize, blocks: usize) -> Result<ConstructedGroup, FamilyError> {
    if m < 2 || blocks < 2 {
        return Err(invalid("wreath product needs m >= 2 and at least 2 blocks"));
    }
    let n = m * blocks;
    let mut gens = vec![Permutation::from_cycles(n, &[&[0, 1]]).unwrap()];
    if m > 2 {
        gens.push(Permutation::cycle(n, m));
    }
    gens.push(perm_from_fn(n, |x| match x / m {
        0 => x + m,
        1 => x - m,
        _ => x,
    })?);
    if blocks > 2 {
        gens.push(perm_from_fn(n, |x| (x + m) % n)?);
    }
    let fm = factorial(m as u64).ok_or_else(|| invalid("m too large"))?;
    let expected = fm
        .checked_pow(blocks as u32)
        .and_then(|x| x.checked_mul(factorial(blocks as u64)?));
    let descriptor = FamilyDescriptor {
        case: CaseTag::Aux,
        p: None,
        e: None,
        d: None,
        n,
        variant: Variant::Wreath { m, blocks },
    };
    ConstructedGroup::assemble(descriptor, gens, expected, None)
}

/// Builds the group a descriptor names.
pub fn construct(descriptor: &FamilyDescriptor, config: &Config) -> Result<ConstructedGroup, FamilyError> {
    let need = |x: Option<u64>, what: &str| x.ok_or_else(|| invalid(format!("descriptor lacks {what}")));
    let cap = config.degree_cap;
    let p = descriptor.p;
    let e = descriptor.e.map(u64::from);
    let d = descriptor.d.map(u64::from);
    let built = match descriptor.variant {
        Variant::AffineLine { m } => affine_line(need(p, "p")?, m)?,
        Variant::Projective { frobenius } => projective_with_cap(
            need(d, "d")? as u32,
            need(p, "p")?,
            need(e, "e")? as u32,
            frobenius,
            cap,
        )?,
        Variant::Affine { frobenius } => affine_space_with_cap(
            need(d, "d")? as u32,
            need(p, "p")?,
            need(e, "e")? as u32,
            frobenius,
            cap,
        )?,
        Variant::Psl2 => psl2_pgl2(need(p, "p")?, false)?,
        Variant::Pgl2 => psl2_pgl2(need(p, "p")?, true)?,
        Variant::Line(group) => {
            projective_line_gamma_with_cap(need(p, "p")?, need(e, "e")? as u32, group, cap)?
        }
        Variant::Sporadic { name } => sporadic_from_text(name, name.info().data, config)?,
        Variant::Wreath { m, blocks } => wreath_imprimitive(m, blocks)?,
    };
    if built.descriptor != *descriptor {
        return Err(invalid(format!(
            "descriptor {descriptor} does not match the constructed {}",
            built.descriptor
        )));
    }
    Ok(built)
}

/// Order of the group a descriptor names, from closed formulas.
pub fn expected_order(descriptor: &FamilyDescriptor) -> Option<u128> {
    let p = descriptor.p.map(u128::from);
    let e = descriptor.e;
    let q = descriptor.q().map(u128::from);
    let d = descriptor.d;
    let ext = |f: u32| Some(u128::from(e? / f));
    match descriptor.variant {
        Variant::AffineLine { m } => Some(p? * u128::from(m)),
        Variant::Projective { frobenius } => {
            Some(gl_order(q? as u64, d?)? / (q? - 1) * ext(frobenius)?)
        }
        Variant::Affine { frobenius } => q?
            .checked_pow(d?)?
            .checked_mul(gl_order(q? as u64, d?)?)?
            .checked_mul(ext(frobenius)?),
        Variant::Psl2 => Some(line_orders(p? as u64).0),
        Variant::Pgl2 => Some(line_orders(p? as u64).1),
        Variant::Line(group) => {
            let (psl, pgl) = line_orders(q? as u64);
            match group {
                LineGroup::Psl => Some(psl),
                LineGroup::PSigmaL { frobenius } => Some(psl * ext(frobenius)?),
                LineGroup::PGammaL { frobenius } => Some(pgl * ext(frobenius)?),
                LineGroup::M2 => Some(pgl),
            }
        }
        Variant::Sporadic { name } => Some(name.info().order),
        Variant::Wreath { m, blocks } => factorial(m as u64)?
            .checked_pow(blocks as u32)?
            .checked_mul(factorial(blocks as u64)?),
    }
}

/// Frobenius exponents `f | e`, largest first, naming the groups of a
/// sandwich `bottom ≤ G ≤ top` with cyclic quotient of order `e`.
pub fn frobenius_divisors(e: u32) -> Vec<u32> {
    divisors(e as u64).into_iter().map(|f| f as u32).rev().collect()
}

/// `(p, e)` with `q = p^e`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    as_prime_power(q)
}
