//! Permutations of `{1..n}` with cycle-notation I/O.
//!
//! Points are 1-based in all text I/O; programmatic APIs use 0-based points.
//! Composition reads left to right: `(a * b)(x) = b(a(x))`, i.e. `a` acts
//! first. This matches the convention used throughout the crate.

use crate::{Error, Result};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Build from an image table (`images[i]` is the image of point `i`, 0-based).
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n {
                return Err(Error::PointOutOfRange {
                    point: v + 1,
                    degree: n,
                });
            }
            if seen[v] {
                return Err(Error::Parse(format!("image {} repeated", v + 1)));
            }
            seen[v] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|v| v as u16).collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&v| v as usize)
    }

    pub(crate) fn raw(&self) -> &[u16] {
        &self.images
    }

    pub(crate) fn from_raw(images: Vec<u16>) -> Self {
        debug_assert!({
            let mut seen = vec![false; images.len()];
            images.iter().all(|&v| {
                let fresh = !seen[v as usize];
                seen[v as usize] = true;
                fresh
            })
        });
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// Left-to-right product: `self` acts first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        let mut out = Vec::with_capacity(self.images.len());
        for &v in &self.images {
            out.push(other.images[v as usize]);
        }
        Permutation { images: out }
    }

    #[inline]
    pub(crate) fn compose_into(&self, other: &Permutation, out: &mut Vec<u16>) {
        out.clear();
        for &v in &self.images {
            out.push(other.images[v as usize]);
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    /// Conjugate of `self` by `h`: the element `h^-1 * self * h`,
    /// i.e. `x -> h(self(h^-1(x)))`.
    pub fn conjugate_by(&self, h: &Permutation) -> Result<Permutation> {
        if self.degree() != h.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: h.degree(),
            });
        }
        let inv = h.inverse();
        Ok(inv.compose_unchecked(self).compose_unchecked(h))
    }

    /// Commutator `a^-1 b^-1 a b`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Result<Permutation> {
        if a.degree() != b.degree() {
            return Err(Error::DegreeMismatch {
                left: a.degree(),
                right: b.degree(),
            });
        }
        Ok(a.inverse()
            .compose_unchecked(&b.inverse())
            .compose_unchecked(a)
            .compose_unchecked(b))
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let n = self.degree();
        if exp == 0 || n == 0 {
            return Permutation::identity(n);
        }
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(n);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&sq);
            }
            sq = sq.compose_unchecked(&sq);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut order = 1u64;
        for cycle in self.cycles_with_fixed(false) {
            order = num_integer::lcm(order, cycle.len() as u64);
        }
        order
    }

    pub fn min_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &v)| *i != v as usize)
            .map(|(i, _)| i)
    }

    pub fn moved_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &v)| *i != v as usize)
            .map(|(i, _)| i)
            .collect()
    }

    /// Cycle decomposition, 0-based; cycles ordered by smallest member and
    /// each cycle starts at its smallest member.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles_with_fixed(false)
    }

    fn cycles_with_fixed(&self, include_fixed: bool) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            if cycle.len() > 1 || include_fixed {
                out.push(cycle);
            }
        }
        out
    }

    /// Parse cycle notation over `{1..degree}`. Cycles need not be disjoint
    /// and are multiplied left to right; both spaces and commas separate
    /// points; empty input (or `()`) is the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Permutation> {
        let mut result = Permutation::identity(degree);
        let mut chars = text.chars().peekable();
        loop {
            while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
                chars.next();
            }
            match chars.next() {
                None => break,
                Some('(') => {}
                Some(c) => {
                    return Err(Error::Parse(format!("expected '(' but found {c:?}")));
                }
            }
            let mut points: Vec<usize> = Vec::new();
            let mut cur = String::new();
            let mut closed = false;
            for c in chars.by_ref() {
                match c {
                    ')' => {
                        closed = true;
                        break;
                    }
                    ' ' | ',' | '\t' => {
                        if !cur.is_empty() {
                            points.push(parse_point(&cur, degree)?);
                            cur.clear();
                        }
                    }
                    d if d.is_ascii_digit() => cur.push(d),
                    other => {
                        return Err(Error::Parse(format!("unexpected character {other:?}")));
                    }
                }
            }
            if !closed {
                return Err(Error::Parse("unbalanced parenthesis".into()));
            }
            if !cur.is_empty() {
                points.push(parse_point(&cur, degree)?);
            }
            let mut in_cycle = vec![false; degree];
            for &p in &points {
                if in_cycle[p] {
                    return Err(Error::Parse(format!(
                        "point {} repeated within one cycle",
                        p + 1
                    )));
                }
                in_cycle[p] = true;
            }
            if points.len() > 1 {
                let mut images: Vec<usize> = (0..degree).collect();
                for w in points.windows(2) {
                    images[w[0]] = w[1];
                }
                images[*points.last().unwrap()] = points[0];
                let cycle = Permutation::from_images(images)?;
                result = result.compose_unchecked(&cycle);
            }
        }
        Ok(result)
    }
}

fn parse_point(token: &str, degree: usize) -> Result<usize> {
    let value: usize = token
        .parse()
        .map_err(|_| Error::Parse(format!("bad point {token:?}")))?;
    if value == 0 || value > degree {
        return Err(Error::PointOutOfRange {
            point: value,
            degree,
        });
    }
    Ok(value - 1)
}

impl fmt::Display for Permutation {
    /// Canonical cycle notation, 1-based, disjoint cycles sorted by smallest
    /// member; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse(text, degree).unwrap()
    }

    #[test]
    fn parse_seven_cycle() {
        let sigma = p("(1 2 3 4 5 6 7)", 7);
        for i in 0..7 {
            assert_eq!(sigma.apply(i), (i + 1) % 7);
        }
    }

    #[test]
    fn parse_empty_is_identity() {
        assert!(p("", 4).is_identity());
        assert!(p("()", 4).is_identity());
    }

    #[test]
    fn parse_overlapping_cycles_left_to_right() {
        // (1 2)(1 3) applied left to right sends 1->2, 2->3, 3->1.
        let g = p("(1 2)(1 3)", 3);
        assert_eq!(g.apply(0), 1);
        assert_eq!(g.apply(1), 2);
        assert_eq!(g.apply(2), 0);
    }

    #[test]
    fn parse_accepts_commas() {
        assert_eq!(p("(1,2,3)", 3), p("(1 2 3)", 3));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(Permutation::parse("(1 2", 3).is_err());
        assert!(Permutation::parse("(0 1)", 3).is_err());
        assert!(Permutation::parse("(1 4)", 3).is_err());
        assert!(Permutation::parse("(1 2 1)", 3).is_err());
        assert!(Permutation::parse("1 2 3", 3).is_err());
    }

    #[test]
    fn compose_left_to_right() {
        let a = p("(1 2)", 3);
        let b = p("(2 3)", 3);
        assert_eq!(a.compose(&b).unwrap(), p("(1 3 2)", 3));
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let s = p("(1 2 3 4 5)", 5);
        assert!(s.compose(&s.inverse()).unwrap().is_identity());
    }

    #[test]
    fn conjugate_five_cycle() {
        // Conjugating (1 2 3 4 5) by (2 3 5 4) gives the square (1 3 5 2 4).
        let s = p("(1 2 3 4 5)", 5);
        let h = p("(2 3 5 4)", 5);
        assert_eq!(s.conjugate_by(&h).unwrap(), p("(1 3 5 2 4)", 5));
        assert_eq!(s.conjugate_by(&h).unwrap(), s.compose(&s).unwrap());
    }

    #[test]
    fn order_is_cycle_lcm() {
        assert_eq!(p("(1 2)(3 4 5)", 5).order(), 6);
        assert_eq!(Permutation::identity(4).order(), 1);
    }

    #[test]
    fn display_roundtrip_canonical() {
        let g = p("(2 5)(1 3 4)", 5);
        let printed = g.to_string();
        assert_eq!(printed, "(1 3 4)(2 5)");
        assert_eq!(Permutation::parse(&printed, 5).unwrap(), g);
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn degree_mismatch_rejected() {
        let a = p("(1 2)", 3);
        let b = p("(1 2)", 4);
        assert!(a.compose(&b).is_err());
    }

    #[test]
    fn pow_matches_repeated_composition() {
        let s = p("(1 2 3 4 5)", 5);
        assert_eq!(s.pow(2), s.compose(&s).unwrap());
        assert_eq!(s.pow(-1), s.inverse());
        assert!(s.pow(5).is_identity());
    }
}
