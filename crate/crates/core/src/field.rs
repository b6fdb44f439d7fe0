//! Arithmetic in GF(p^e) over a polynomial basis, plus the small amount of
//! linear and semilinear algebra the group constructions need.
//!
//! An element is a coefficient vector `(c_0, .., c_{e-1})` over GF(p),
//! stored as its base-p encoding `c_0 + c_1 p + .. + c_{e-1} p^{e-1}`. The
//! encoding doubles as the element's index when field elements label
//! permutation points.

use std::fmt;

use thiserror::Error;

use crate::arith::{is_prime, prime_divisors};

/// Default bound on `p^e`.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroExtension,
    #[error("{p}^{e} exceeds the field size cap {cap}")]
    TooLarge { p: u64, e: u32, cap: u64 },
    #[error("quadratic residues need odd characteristic")]
    EvenOrder,
    #[error("zero has no residue class")]
    Zero,
    #[error("matrix is singular")]
    Singular,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FieldElement(u32);

impl FieldElement {
    pub fn encoding(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.e, self.modulus)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}
impl Eq for FiniteField {}

// Dense polynomials over GF(p), lowest degree first, no trailing zeros.
mod poly {
    use crate::arith::pow_mod;

    pub type Poly = Vec<u64>;

    pub fn trim(mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Poly {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = pow_mod(m[dm], p - 2, p);
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let factor = r[r.len() - 1] * lead_inv % p;
            for (i, &c) in m.iter().enumerate() {
                let idx = i + shift;
                r[idx] = (r[idx] + p - factor * c % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, m, p)
    }

    pub fn pow_mod_poly(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Poly {
        let mut acc = rem(&[1], m, p);
        let mut b = rem(base, m, p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_mod(&acc, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            exp >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }
}

/// Rabin's test: a monic `f` of degree `e` over GF(p) is irreducible iff
/// `x^(p^e) = x mod f` and `gcd(x^(p^(e/r)) - x, f) = 1` for every prime
/// `r | e`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() as u32 - 1;
    if e == 1 {
        return true;
    }
    let x = [0u64, 1];
    let frob = |k: u32| {
        let mut acc = poly::rem(&x, f, p);
        for _ in 0..k {
            acc = poly::pow_mod_poly(&acc, p, f, p);
        }
        acc
    };
    if poly::sub(&frob(e), &x, p) != poly::rem(&[], f, p) {
        return false;
    }
    prime_divisors(e as u64).into_iter().all(|r| {
        let h = poly::sub(&frob(e / r as u32), &x, p);
        let g = poly::gcd(f, &h, p);
        g.len() == 1
    })
}

impl FiniteField {
    pub fn new(p: u64, e: u32) -> Result<Self, FieldError> {
        Self::with_cap(p, e, DEFAULT_FIELD_CAP)
    }

    /// The field of order `p^e` whose modulus is the lexicographically
    /// smallest monic irreducible of degree `e`, comparing `(c_0, .., c_{e-1})`
    /// coefficientwise starting from the constant term.
    pub fn with_cap(p: u64, e: u32, cap: u64) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if e == 0 {
            return Err(FieldError::ZeroExtension);
        }
        let q = match p.checked_pow(e) {
            Some(q) if q <= cap && q <= u32::MAX as u64 => q,
            _ => return Err(FieldError::TooLarge { p, e, cap }),
        };
        let modulus = (0..q)
            .map(|index| {
                // c_0 is the most significant digit of the search index
                let mut coeffs = vec![0u64; e as usize + 1];
                let mut rest = index;
                for i in (0..e as usize).rev() {
                    coeffs[i] = rest % p;
                    rest /= p;
                }
                coeffs[e as usize] = 1;
                coeffs
            })
            .find(|f| is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");
        let modulus: Vec<u32> = modulus.into_iter().map(|c| c as u32).collect();

        let mut field = FiniteField {
            p: p as u32,
            e,
            q: q as u32,
            modulus,
            primitive: FieldElement(0),
            exp: Vec::new(),
            log: Vec::new(),
        };
        let order = q - 1;
        let primes = prime_divisors(order);
        let primitive = (1..q as u32)
            .map(FieldElement)
            .find(|&x| {
                field.slow_pow(x, order) == field.one()
                    && primes.iter().all(|&r| field.slow_pow(x, order / r) != field.one())
            })
            .expect("multiplicative group is cyclic");
        field.primitive = primitive;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = field.one();
        for i in 0..order as u32 {
            exp.push(x.0);
            log[x.0 as usize] = i;
            x = field.slow_mul(x, primitive);
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.q as u64
    }

    pub fn size(&self) -> usize {
        self.q as usize
    }

    /// Monic modulus, lowest coefficient first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn element(&self, encoding: u32) -> FieldElement {
        assert!(encoding < self.q, "encoding {encoding} out of range");
        FieldElement(encoding)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.q).map(FieldElement)
    }

    /// Image of the integer `n` in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn coefficients(&self, x: FieldElement) -> Vec<u32> {
        let mut rest = x.0;
        (0..self.e)
            .map(|_| {
                let c = rest % self.p;
                rest /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> FieldElement {
        assert_eq!(coeffs.len(), self.e as usize);
        FieldElement(coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.e == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        let n = self.q - 1;
        let s = (self.log[a.0 as usize] + self.log[b.0 as usize]) % n;
        FieldElement(self.exp[s as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(FieldElement(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        Some(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, exp: u64) -> FieldElement {
        if exp == 0 {
            return self.one();
        }
        if a.0 == 0 {
            return a;
        }
        let n = (self.q - 1) as u64;
        let s = (self.log[a.0 as usize] as u64 * (exp % n)) % n;
        FieldElement(self.exp[s as usize])
    }

    /// Discrete logarithm to the base of [`primitive_element`](Self::primitive_element).
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    pub fn primitive_power(&self, k: u64) -> FieldElement {
        FieldElement(self.exp[(k % (self.q as u64 - 1)) as usize])
    }

    /// Least encoding of multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> FieldElement {
        self.primitive
    }

    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n = self.q as u64 - 1;
        Some(n / num_integer::gcd(l, n))
    }

    /// `x^(p^f)`; an automorphism of order `e / gcd(e, f)`.
    pub fn frobenius(&self, x: FieldElement, f: u32) -> FieldElement {
        let f = f % self.e;
        self.pow(x, (self.p as u64).pow(f))
    }

    pub fn is_square(&self, x: FieldElement) -> Result<bool, FieldError> {
        if self.p == 2 {
            return Err(FieldError::EvenOrder);
        }
        if x.0 == 0 {
            return Err(FieldError::Zero);
        }
        Ok(self.log[x.0 as usize] % 2 == 0)
    }

    fn slow_mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p as u64;
        let to_poly = |x: FieldElement| -> Vec<u64> {
            poly::trim(self.coefficients(x).into_iter().map(u64::from).collect())
        };
        let m: Vec<u64> = self.modulus.iter().map(|&c| c as u64).collect();
        let r = poly::mul_mod(&to_poly(a), &to_poly(b), &m, p);
        let mut coeffs = vec![0u32; self.e as usize];
        for (i, c) in r.into_iter().enumerate() {
            coeffs[i] = c as u32;
        }
        self.from_coefficients(&coeffs)
    }

    fn slow_pow(&self, a: FieldElement, mut exp: u64) -> FieldElement {
        let mut acc = self.one();
        let mut b = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.slow_mul(acc, b);
            }
            b = self.slow_mul(b, b);
            exp >>= 1;
        }
        acc
    }
}

pub fn make_field(p: u64, e: u32) -> Result<FiniteField, FieldError> {
    FiniteField::new(p, e)
}

pub fn primitive_element(field: &FiniteField) -> FieldElement {
    field.primitive_element()
}

pub fn frobenius(field: &FiniteField, x: FieldElement, f: u32) -> FieldElement {
    field.frobenius(x, f)
}

pub fn is_square(field: &FiniteField, x: FieldElement) -> Result<bool, FieldError> {
    field.is_square(x)
}

/// `t ↦ scale · t^(p^frobenius) + translate`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SemilinearMap {
    scale: FieldElement,
    translate: FieldElement,
    frobenius: u32,
}

impl SemilinearMap {
    pub fn new(
        field: &FiniteField,
        scale: FieldElement,
        translate: FieldElement,
        frobenius: u32,
    ) -> Result<Self, FieldError> {
        if scale.is_zero() {
            return Err(FieldError::Singular);
        }
        Ok(SemilinearMap {
            scale,
            translate,
            frobenius: frobenius % field.degree(),
        })
    }

    pub fn scale(&self) -> FieldElement {
        self.scale
    }

    pub fn translate(&self) -> FieldElement {
        self.translate
    }

    pub fn frobenius(&self) -> u32 {
        self.frobenius
    }

    pub fn apply(&self, field: &FiniteField, t: FieldElement) -> FieldElement {
        field.add(
            field.mul(self.scale, field.frobenius(t, self.frobenius)),
            self.translate,
        )
    }
}

/// Invertible `d × d` matrix over a finite field, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixGL {
    dim: usize,
    entries: Vec<FieldElement>,
}

impl MatrixGL {
    pub fn new(field: &FiniteField, dim: usize, entries: Vec<FieldElement>) -> Result<Self, FieldError> {
        assert_eq!(entries.len(), dim * dim);
        let m = MatrixGL { dim, entries };
        if m.determinant(field).is_zero() {
            return Err(FieldError::Singular);
        }
        Ok(m)
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![FieldElement(0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = FieldElement(1);
        }
        MatrixGL { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> FieldElement {
        self.entries[row * self.dim + col]
    }

    pub fn mul(&self, field: &FiniteField, other: &MatrixGL) -> MatrixGL {
        let d = self.dim;
        let mut entries = vec![field.zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let idx = i * d + j;
                    entries[idx] = field.add(entries[idx], field.mul(a, other.get(k, j)));
                }
            }
        }
        MatrixGL { dim: d, entries }
    }

    pub fn pow(&self, field: &FiniteField, mut exp: u64) -> MatrixGL {
        let mut acc = MatrixGL::identity(self.dim);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(field, &base);
            }
            base = base.mul(field, &base);
            exp >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == MatrixGL::identity(self.dim)
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, field: &FiniteField, v: &[FieldElement]) -> Vec<FieldElement> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim).fold(field.zero(), |acc, j| {
                    field.add(acc, field.mul(self.get(i, j), v[j]))
                })
            })
            .collect()
    }

    pub fn determinant(&self, field: &FiniteField) -> FieldElement {
        let d = self.dim;
        let mut a = self.entries.clone();
        let mut det = field.one();
        for col in 0..d {
            let Some(pivot) = (col..d).find(|&r| !a[r * d + col].is_zero()) else {
                return field.zero();
            };
            if pivot != col {
                for j in 0..d {
                    a.swap(pivot * d + j, col * d + j);
                }
                det = field.neg(det);
            }
            let pv = a[col * d + col];
            det = field.mul(det, pv);
            let pv_inv = field.inv(pv).unwrap();
            for r in col + 1..d {
                let factor = field.mul(a[r * d + col], pv_inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..d {
                    let sub = field.mul(factor, a[col * d + j]);
                    a[r * d + j] = field.sub(a[r * d + j], sub);
                }
            }
        }
        det
    }

    /// Multiplicative order, given a multiple `bound` of it.
    pub fn order_dividing(&self, field: &FiniteField, bound: u64) -> u64 {
        let mut order = bound;
        for r in prime_divisors(bound) {
            while order % r == 0 && self.pow(field, order / r).is_identity() {
                order /= r;
            }
        }
        order
    }

    /// Companion matrix of the monic `x^d + c_{d-1} x^{d-1} + .. + c_0`,
    /// sending `e_i` to `e_{i+1}` and `e_{d-1}` to `-(c_0 e_0 + ..)`.
    pub fn companion(field: &FiniteField, coeffs: &[FieldElement]) -> Result<MatrixGL, FieldError> {
        let d = coeffs.len();
        let mut entries = vec![field.zero(); d * d];
        for i in 0..d.saturating_sub(1) {
            entries[(i + 1) * d + i] = field.one();
        }
        for (j, &c) in coeffs.iter().enumerate() {
            entries[j * d + (d - 1)] = field.neg(c);
        }
        MatrixGL::new(field, d, entries)
    }
}

/// Generator of a Singer cycle in GL_d(q): for `d = 1` the 1×1 matrix of the
/// primitive element, otherwise the companion matrix of the least monic
/// degree-`d` polynomial (coefficients compared constant term first, by
/// encoding) whose companion matrix has order `q^d - 1`.
pub fn singer_matrix(field: &FiniteField, d: usize) -> Result<MatrixGL, FieldError> {
    assert!(d >= 1);
    if d == 1 {
        return MatrixGL::new(field, 1, vec![field.primitive_element()]);
    }
    let q = field.order();
    let target = q
        .checked_pow(d as u32)
        .filter(|&n| n <= u32::MAX as u64)
        .ok_or(FieldError::TooLarge {
            p: field.characteristic(),
            e: field.degree() * d as u32,
            cap: u32::MAX as u64,
        })?
        - 1;
    let primes = prime_divisors(target);
    let total = q.pow(d as u32);
    for index in 0..total {
        let mut coeffs = vec![field.zero(); d];
        let mut rest = index;
        for i in (0..d).rev() {
            coeffs[i] = field.element((rest % q) as u32);
            rest /= q;
        }
        if coeffs[0].is_zero() {
            continue;
        }
        let m = MatrixGL::companion(field, &coeffs)?;
        if m.pow(field, target).is_identity()
            && primes.iter().all(|&r| !m.pow(field, target / r).is_identity())
        {
            return Ok(m);
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

/// `|GL_d(q)| = ∏ (q^d - q^i)`.
pub fn gl_order(q: u64, d: u32) -> Option<u128> {
    let qd = (q as u128).checked_pow(d)?;
    (0..d).try_fold(1u128, |acc, i| acc.checked_mul(qd - (q as u128).pow(i)))
}
