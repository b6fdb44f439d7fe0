//! Permutations of `{0, .., n-1}` stored as image tables.
//!
//! Composition applies the right factor first: `compose(p, q)` maps `x` to
//! `p(q(x))`. Text I/O uses 1-based disjoint cycle notation, internal points
//! are 0-based.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image table is not a bijection on 0..{0}")]
    NotBijective(usize),
    #[error("point {point} out of range 1..={degree} at position {position}")]
    PointOutOfRange {
        point: usize,
        degree: usize,
        position: usize,
    },
    #[error("point {point} repeated at position {position}")]
    RepeatedPoint { point: usize, position: usize },
    #[error("malformed cycle notation at position {position}: {reason}")]
    Malformed { position: usize, reason: &'static str },
}

/// A bijection on `{0, .., degree-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image table, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotBijective(n));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.iter().map(|&x| x as usize).collect()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of `degree` points from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        let mut position = 0;
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(PermError::PointOutOfRange {
                        point: x + 1,
                        degree,
                        position,
                    });
                }
                if seen[x] {
                    return Err(PermError::RepeatedPoint {
                        point: x + 1,
                        position,
                    });
                }
                seen[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
                position += 1;
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// The cycle `(0 1 .. len-1)` on `degree` points.
    pub fn cycle(degree: usize, len: usize) -> Self {
        assert!(len <= degree);
        let images = (0..degree)
            .map(|x| if x < len { ((x + 1) % len) as u32 } else { x as u32 })
            .collect();
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.after(other))
    }

    /// Unchecked `self ∘ other`; panics on degree mismatch.
    #[inline]
    pub fn after(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `x ∘ self ∘ x⁻¹`.
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &y) in self.images.iter().enumerate() {
            images[x.images[i] as usize] = x.images[y as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, exp: u64) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.after(&base);
            }
            base = base.after(&base);
            e >>= 1;
        }
        result
    }

    /// Disjoint cycles (0-based), each starting at its least point, sorted by
    /// that point. Fixed points are included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 == x)
            .count()
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::new(self.cycles().iter().map(Vec::len).collect())
    }

    /// `Some((n-k, k))` if this is a single `(n-k)`-cycle fixing the other
    /// `k` points, with `n-k >= 2`.
    pub fn as_single_cycle(&self) -> Option<(usize, usize)> {
        let n = self.degree();
        let start = self.images.iter().enumerate().position(|(i, &x)| i as u32 != x)?;
        let mut len = 1;
        let mut x = self.apply(start);
        while x != start {
            len += 1;
            x = self.apply(x);
        }
        let fixed = self.fixed_points();
        (len + fixed == n).then_some((len, fixed))
    }

    /// For a permutation with a cycle whose length `L` is coprime to every
    /// other cycle length, returns a power that is a single `L`-cycle fixing
    /// everything else. The longest such cycle is chosen; ties go to the one
    /// containing the least point.
    pub fn coprime_cycle_power(&self) -> Option<Permutation> {
        let cycles = self.cycles();
        let mut best: Option<(usize, usize)> = None;
        for (idx, cycle) in cycles.iter().enumerate() {
            let len = cycle.len();
            if len < 2 {
                continue;
            }
            let coprime = cycles
                .iter()
                .enumerate()
                .all(|(j, other)| j == idx || len.gcd(&other.len()) == 1);
            if coprime && best.map_or(true, |(_, l)| len > l) {
                best = Some((idx, len));
            }
        }
        let (idx, _) = best?;
        let m = cycles
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != idx)
            .fold(1u64, |acc, (_, c)| acc.lcm(&(c.len() as u64)));
        Some(self.pow(m))
    }

    /// Parses 1-based disjoint cycle notation such as `"(1 2 3)(5 6)"`.
    /// Points may be separated by spaces or commas. `""` and `"()"` give the
    /// identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, PermError> {
        let bytes = text.as_bytes();
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < bytes.len() && (bytes[*i].is_ascii_whitespace()) {
                *i += 1;
            }
        };
        loop {
            skip_ws(&mut i);
            if i >= bytes.len() {
                break;
            }
            if bytes[i] != b'(' {
                return Err(PermError::Malformed {
                    position: i,
                    reason: "expected '('",
                });
            }
            let open = i;
            i += 1;
            let mut cycle: Vec<usize> = Vec::new();
            loop {
                skip_ws(&mut i);
                if i >= bytes.len() {
                    return Err(PermError::Malformed {
                        position: open,
                        reason: "unclosed '('",
                    });
                }
                match bytes[i] {
                    b')' => {
                        i += 1;
                        break;
                    }
                    b',' if !cycle.is_empty() => {
                        i += 1;
                    }
                    b'0'..=b'9' => {
                        let start = i;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        let point: usize = text[start..i].parse().map_err(|_| PermError::Malformed {
                            position: start,
                            reason: "number too large",
                        })?;
                        if point == 0 || point > degree {
                            return Err(PermError::PointOutOfRange {
                                point,
                                degree,
                                position: start,
                            });
                        }
                        if seen[point - 1] {
                            return Err(PermError::RepeatedPoint {
                                point,
                                position: start,
                            });
                        }
                        seen[point - 1] = true;
                        cycle.push(point - 1);
                    }
                    _ => {
                        return Err(PermError::Malformed {
                            position: i,
                            reason: "unexpected character",
                        })
                    }
                }
            }
            for (j, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(j + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Canonical 1-based cycle notation; the identity prints as `"()"`.
    pub fn to_cycle_string(&self) -> String {
        let mut out = String::new();
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            out.push('(');
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(&(x + 1).to_string());
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

/// Serialized as its 1-based cycle string; the degree travels separately.
impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}; {}]", self.degree(), self.to_cycle_string())
    }
}

/// Free-function form of [`Permutation::compose`].
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation, PermError> {
    p.compose(q)
}

pub fn inverse(p: &Permutation) -> Permutation {
    p.inverse()
}

pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, PermError> {
    Permutation::parse_cycles(text, degree)
}

pub fn print_cycles(p: &Permutation) -> String {
    p.to_cycle_string()
}

pub fn cycle_type(p: &Permutation) -> CycleType {
    p.cycle_type()
}

pub fn as_single_cycle(p: &Permutation) -> Option<(usize, usize)> {
    p.as_single_cycle()
}

pub fn coprime_cycle_power(p: &Permutation) -> Option<Permutation> {
    p.coprime_cycle_power()
}

/// Multiset of cycle lengths, fixed points counted as 1s; stored sorted
/// in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut lengths: Vec<usize>) -> Self {
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(lengths)
    }

    pub fn lengths(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().filter(|&&l| l == 1).count()
    }

    /// Order of the centralizer in the symmetric group: `∏ l^m · m!`.
    pub fn centralizer_order(&self) -> u128 {
        let mut out: u128 = 1;
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut m = 0;
            while i < self.0.len() && self.0[i] == l {
                m += 1;
                out = out.saturating_mul(l as u128).saturating_mul(m as u128);
                i += 1;
            }
        }
        out
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}
