//! Exact integer polynomials: arithmetic, fraction-free resultants and
//! discriminants, Newton polygons, Eisenstein/Dumas irreducibility
//! certificates, the `x^l - l(lp+1)x + (l-1)(lp+1)` family with its closed-form
//! discriminant, square-part witnesses, and a Bertrand prime helper.

use crate::{Error, Result};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Dense integer polynomial, constant term first, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn zero() -> Self {
        IntegerPolynomial { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(degree: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        IntegerPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn neg(&self) -> Self {
        IntegerPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntegerPolynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Exact coefficient-wise division.
    fn div_exact(&self, c: &BigInt) -> Self {
        IntegerPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| {
                    let (q, r) = a.div_rem(c);
                    debug_assert!(r.is_zero(), "inexact polynomial division");
                    q
                })
                .collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// The composite `f(x + a)`.
    pub fn shift(&self, a: &BigInt) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            // acc <- acc * (x + a) + c
            acc = acc.mul_by_x_plus(a).add(&Self::constant(c.clone()));
        }
        acc
    }

    fn mul_by_x_plus(&self, a: &BigInt) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] += c * a;
        }
        Self::from_coeffs(out)
    }

    /// Gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigUint {
        let mut g = BigUint::zero();
        for c in &self.coeffs {
            g = g.gcd(c.magnitude());
        }
        g
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Serialize as a JSON array of exact integers, constant term first.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| {
                    serde_json::Value::Number(serde_json::Number::from_string_unchecked(
                        c.to_string(),
                    ))
                })
                .collect(),
        )
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::Parse("polynomial JSON must be an array".into()))?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for v in arr {
            let n = v
                .as_number()
                .ok_or_else(|| Error::Parse("polynomial entries must be integers".into()))?;
            let c: BigInt = n
                .to_string()
                .parse()
                .map_err(|_| Error::Parse(format!("not an integer: {n}")))?;
            coeffs.push(c);
        }
        Ok(Self::from_coeffs(coeffs))
    }

    /// Parse human notation like `x^3 - 30x + 20`.
    pub fn parse(text: &str) -> Result<Self> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms: BTreeMap<usize, BigInt> = BTreeMap::new();
        let mut rest = cleaned.as_str();
        let mut sign = BigInt::one();
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        while !rest.is_empty() {
            let end = rest
                .char_indices()
                .find(|&(i, c)| i > 0 && (c == '+' || c == '-'))
                .map(|(i, _)| i)
                .unwrap_or(rest.len());
            let (degree, coeff) = parse_term(&rest[..end])?;
            *terms.entry(degree).or_insert_with(BigInt::zero) += &sign * coeff;
            if end == rest.len() {
                break;
            }
            sign = if rest.as_bytes()[end] == b'-' {
                -BigInt::one()
            } else {
                BigInt::one()
            };
            rest = &rest[end + 1..];
        }
        let max_deg = *terms.keys().max().unwrap_or(&0);
        let mut coeffs = vec![BigInt::zero(); max_deg + 1];
        for (d, c) in terms {
            coeffs[d] = c;
        }
        Ok(Self::from_coeffs(coeffs))
    }
}

fn parse_term(term: &str) -> Result<(usize, BigInt)> {
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    match term.find('x') {
        None => {
            let c: BigInt = term
                .parse()
                .map_err(|_| Error::Parse(format!("bad constant {term:?}")))?;
            Ok((0, c))
        }
        Some(pos) => {
            let coeff_text = term[..pos].trim_end_matches('*');
            let coeff: BigInt = if coeff_text.is_empty() {
                BigInt::one()
            } else {
                coeff_text
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient {coeff_text:?}")))?
            };
            let tail = &term[pos + 1..];
            let degree = if tail.is_empty() {
                1
            } else {
                let exp = tail
                    .strip_prefix('^')
                    .ok_or_else(|| Error::Parse(format!("bad exponent in {term:?}")))?;
                exp.parse()
                    .map_err(|_| Error::Parse(format!("bad exponent {exp:?}")))?
            };
            Ok((degree, coeff))
        }
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match d {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "x")?;
                    if d > 1 {
                        write!(f, "^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerPolynomial[{self}]")
    }
}

/// Pseudo-remainder: the R with `lc(B)^(deg A - deg B + 1) A = B Q + R`.
fn pseudo_rem(a: &IntegerPolynomial, b: &IntegerPolynomial) -> IntegerPolynomial {
    let deg_b = b.degree().expect("divisor nonzero");
    let d = b.leading_coefficient();
    let mut r = a.clone();
    let mut e = a.degree().expect("dividend nonzero") as i64 - deg_b as i64 + 1;
    while let Some(deg_r) = r.degree() {
        if deg_r < deg_b {
            break;
        }
        let lead = r.leading_coefficient();
        let shifted = b.mul(&IntegerPolynomial::monomial(deg_r - deg_b, lead));
        r = r.scale(&d).sub(&shifted);
        e -= 1;
    }
    while e > 0 {
        r = r.scale(&d);
        e -= 1;
    }
    r
}

/// Resultant via the subresultant polynomial remainder sequence
/// (fraction-free, exact over the integers).
pub fn resultant(a: &IntegerPolynomial, b: &IntegerPolynomial) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign = BigInt::one();
    if a.degree() < b.degree() {
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let cont_a = BigInt::from(a.content());
    let cont_b = BigInt::from(b.content());
    a = a.div_exact(&cont_a);
    b = b.div_exact(&cont_b);
    let scale = sign
        * cont_a.pow(b.degree().unwrap() as u32)
        * cont_b.pow(a.degree().unwrap() as u32);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    let mut s = BigInt::one();
    loop {
        let deg_a = a.degree().unwrap();
        let deg_b = match b.degree() {
            Some(d) => d,
            // Remainder collapsed to zero: common factor of positive degree.
            None => return BigInt::zero(),
        };
        if deg_b == 0 {
            let num = b.leading_coefficient().pow(deg_a as u32);
            let result = if deg_a == 0 {
                BigInt::one()
            } else {
                exact_div(&num, &h.pow(deg_a as u32 - 1))
            };
            return scale * s * result;
        }
        let delta = deg_a - deg_b;
        if deg_a % 2 == 1 && deg_b % 2 == 1 {
            s = -s;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        let divisor = &g * h.pow(delta as u32);
        b = r.div_exact(&divisor);
        g = a.leading_coefficient();
        h = if delta == 0 {
            h
        } else {
            exact_div(&g.pow(delta as u32), &h.pow(delta as u32 - 1))
        };
    }
}

fn exact_div(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    debug_assert!(r.is_zero(), "inexact scalar division in resultant");
    q
}

/// Discriminant `(-1)^(n(n-1)/2) Res(f, f') / lc(f)` for `deg f >= 2`.
pub fn discriminant(f: &IntegerPolynomial) -> Result<BigInt> {
    let n = f.degree().unwrap_or(0);
    if n < 2 {
        return Err(Error::DegreeTooSmall { need: 2, got: n });
    }
    let res = resultant(f, &f.derivative());
    let lc = f.leading_coefficient();
    let signed = if (n * (n - 1) / 2) % 2 == 1 { -res } else { res };
    Ok(exact_div(&signed, &lc))
}

// ---------------------------------------------------------------------------
// The one-parameter family and its closed-form discriminant
// ---------------------------------------------------------------------------

fn check_family_params(ell: u64, p: i64) -> Result<()> {
    if ell < 3 || !is_prime_u64(ell) {
        return Err(Error::InvalidParameter(format!(
            "ell must be an odd prime >= 3, got {ell}"
        )));
    }
    let abs = p.unsigned_abs();
    if abs != 1 && !is_prime_u64(abs) {
        return Err(Error::InvalidParameter(format!(
            "p must be prime or +-1, got {p}"
        )));
    }
    Ok(())
}

/// `f_p(x) = x^ell - ell(ell p + 1) x + (ell - 1)(ell p + 1)`.
pub fn fp_family(ell: u64, p: i64) -> Result<IntegerPolynomial> {
    check_family_params(ell, p)?;
    let ell_i = BigInt::from(ell);
    let m = &ell_i * BigInt::from(p) + BigInt::one();
    let mut coeffs = vec![BigInt::zero(); ell as usize + 1];
    coeffs[0] = (&ell_i - BigInt::one()) * &m;
    coeffs[1] = -(&ell_i * &m);
    coeffs[ell as usize] = BigInt::one();
    Ok(IntegerPolynomial::from_coeffs(coeffs))
}

/// Discriminant of `fp_family(ell, p)` in closed form:
/// `(-1)^((ell-1)(ell-2)/2) * -( (ell-1)^(ell-1) ell^(ell+1) (ell p+1)^(ell-1) p )`.
pub fn closed_form_discriminant(ell: u64, p: i64) -> Result<BigInt> {
    check_family_params(ell, p)?;
    let ell_i = BigInt::from(ell);
    let m = &ell_i * BigInt::from(p) + BigInt::one();
    let body = -((&ell_i - BigInt::one()).pow(ell as u32 - 1)
        * ell_i.pow(ell as u32 + 1)
        * m.pow(ell as u32 - 1)
        * BigInt::from(p));
    let exponent = (ell - 1) * (ell - 2) / 2;
    Ok(if exponent % 2 == 1 { -body } else { body })
}

// ---------------------------------------------------------------------------
// Newton polygons and irreducibility certificates
// ---------------------------------------------------------------------------

/// Exact slope as a reduced fraction `rise / run` with `run > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slope {
    pub rise: i64,
    pub run: i64,
}

impl Slope {
    fn new(rise: i64, run: i64) -> Self {
        debug_assert!(run > 0);
        let g = num_integer::gcd(rise.unsigned_abs(), run.unsigned_abs()) as i64;
        Slope {
            rise: rise / g,
            run: run / g,
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.rise as i128 * other.run as i128).cmp(&(other.rise as i128 * self.run as i128))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub start: (usize, u64),
    pub end: (usize, u64),
    pub slope: Slope,
}

/// Lower Newton polygon of `f` at the prime `q`.
#[derive(Clone, Debug)]
pub struct NewtonPolygon {
    pub prime: u64,
    /// `(i, v_q(a_i))` for each nonzero coefficient.
    pub points: Vec<(usize, u64)>,
    /// Lower convex hull vertices, left to right; slopes strictly increase.
    pub hull: Vec<(usize, u64)>,
    pub segments: Vec<Segment>,
}

pub fn newton_polygon(f: &IntegerPolynomial, q: u64) -> Result<NewtonPolygon> {
    if !is_prime_u64(q) {
        return Err(Error::InvalidParameter(format!("{q} is not prime")));
    }
    if f.coeff(0).is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let points: Vec<(usize, u64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, valuation(c, q)))
        .collect();
    let mut hull: Vec<(usize, u64)> = Vec::new();
    for &p in &points {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // Drop b unless it lies strictly below the segment a..p.
            let lhs = (b.1 as i128 - a.1 as i128) * (p.0 as i128 - a.0 as i128);
            let rhs = (p.1 as i128 - a.1 as i128) * (b.0 as i128 - a.0 as i128);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let segments = hull
        .windows(2)
        .map(|w| Segment {
            start: w[0],
            end: w[1],
            slope: Slope::new(w[1].1 as i64 - w[0].1 as i64, (w[1].0 - w[0].0) as i64),
        })
        .collect();
    Ok(NewtonPolygon {
        prime: q,
        points,
        hull,
        segments,
    })
}

fn valuation(c: &BigInt, q: u64) -> u64 {
    let q = BigInt::from(q);
    let mut v = 0;
    let mut c = c.clone();
    loop {
        let (quo, rem) = c.div_rem(&q);
        if !rem.is_zero() {
            return v;
        }
        v += 1;
        c = quo;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibilityCertificate {
    /// `f(x + shift)` satisfies the Eisenstein conditions at `prime`.
    Eisenstein { prime: u64, shift: i64 },
    /// Single-segment Newton polygon from `(0, v0)` to `(deg, 0)` with no
    /// interior lattice points (`gcd(deg, v0) = 1`).
    Dumas { prime: u64, segment: Segment },
    None,
}

impl IrreducibilityCertificate {
    pub fn is_some(&self) -> bool {
        !matches!(self, IrreducibilityCertificate::None)
    }

    pub fn describe(&self) -> String {
        match self {
            IrreducibilityCertificate::Eisenstein { prime, shift } => {
                format!("eisenstein at {prime} after shift x -> x+{shift}")
            }
            IrreducibilityCertificate::Dumas { prime, segment } => format!(
                "dumas at {prime}: single segment ({}, {}) -> ({}, {})",
                segment.start.0, segment.start.1, segment.end.0, segment.end.1
            ),
            IrreducibilityCertificate::None => "none".to_string(),
        }
    }
}

/// Eisenstein test at `q` for `f` itself (no shift).
pub fn is_eisenstein_at(f: &IntegerPolynomial, q: u64) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let q_big = BigInt::from(q);
    if (f.leading_coefficient() % &q_big).is_zero() {
        return false;
    }
    for i in 0..n {
        if !(f.coeff(i) % &q_big).is_zero() {
            return false;
        }
    }
    !(f.coeff(0) % (&q_big * &q_big)).is_zero()
}

/// Search shifts `a` in `-range..=range` (ascending) for `f(x+a)` Eisenstein
/// at `q`; first success wins.
pub fn eisenstein_shift_certificate(
    f: &IntegerPolynomial,
    q: u64,
    range: i64,
) -> IrreducibilityCertificate {
    for a in -range..=range {
        if is_eisenstein_at(&f.shift(&BigInt::from(a)), q) {
            return IrreducibilityCertificate::Eisenstein { prime: q, shift: a };
        }
    }
    IrreducibilityCertificate::None
}

/// Dumas single-segment certificate at `q`; implies irreducibility over the
/// rationals for primitive `f`.
pub fn dumas_certificate(f: &IntegerPolynomial, q: u64) -> Result<IrreducibilityCertificate> {
    if !f.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let polygon = newton_polygon(f, q)?;
    let deg = f.degree().expect("nonzero");
    if polygon.hull.len() == 2 && polygon.hull[0].0 == 0 && polygon.hull[1] == (deg, 0) {
        let v0 = polygon.hull[0].1;
        if num_integer::gcd(deg as u64, v0) == 1 {
            return Ok(IrreducibilityCertificate::Dumas {
                prime: q,
                segment: polygon.segments[0].clone(),
            });
        }
    }
    Ok(IrreducibilityCertificate::None)
}

/// Irreducibility certificate for the family member: Eisenstein at `ell`
/// after the shift `x -> x+1` when `ell != p`, otherwise a Dumas certificate
/// at an odd prime `q` with `q^m` exactly dividing `p^2 + 1`, `gcd(q, p-1)=1`
/// and `gcd(m, p)=1`. A `None` result signals a pipeline failure and is
/// reported as such by the checker, never swallowed.
pub fn certify_fp_irreducible(ell: u64, p: i64) -> Result<IrreducibilityCertificate> {
    check_family_params(ell, p)?;
    let f = fp_family(ell, p)?;
    if p != ell as i64 {
        return Ok(eisenstein_shift_certificate(&f, ell, 1));
    }
    let p_u = ell;
    let target = p_u * p_u + 1;
    for (&q, &m) in &factor_u64(target) {
        if q == 2 || (p_u - 1) % q == 0 || m as u64 % p_u == 0 {
            continue;
        }
        let cert = dumas_certificate(&f, q)?;
        if cert.is_some() {
            return Ok(cert);
        }
    }
    Ok(IrreducibilityCertificate::None)
}

// ---------------------------------------------------------------------------
// Square-part witnesses
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyBranch {
    /// The member built from `+p`.
    Plus,
    /// The member built from `-p`.
    Minus,
}

impl fmt::Display for FamilyBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyBranch::Plus => write!(f, "f_p"),
            FamilyBranch::Minus => write!(f, "f_-p"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SqrtEmbeddingWitness {
    pub branch: FamilyBranch,
    /// `k` with `discriminant = p * k^2`.
    pub square_root_of_square_part: BigUint,
    pub discriminant: BigInt,
}

/// Of the two family members at `+p` and `-p`, exactly one has discriminant
/// `p * (square)`; return that branch together with the square root.
pub fn sqrt_embedding_witness(ell: u64, p: u64) -> Result<SqrtEmbeddingWitness> {
    if !is_prime_u64(p) {
        return Err(Error::InvalidParameter(format!("p must be prime, got {p}")));
    }
    let mut found: Option<SqrtEmbeddingWitness> = None;
    for (branch, signed_p) in [
        (FamilyBranch::Plus, p as i64),
        (FamilyBranch::Minus, -(p as i64)),
    ] {
        let disc = discriminant(&fp_family(ell, signed_p)?)?;
        if disc.sign() != Sign::Plus {
            continue;
        }
        let (quo, rem) = disc.magnitude().div_rem(&BigUint::from(p));
        if !rem.is_zero() {
            continue;
        }
        let root = quo.sqrt();
        if &root * &root == quo {
            if found.is_some() {
                return Err(Error::InvalidParameter(
                    "both family members have discriminant p * square".into(),
                ));
            }
            found = Some(SqrtEmbeddingWitness {
                branch,
                square_root_of_square_part: root,
                discriminant: disc,
            });
        }
    }
    found.ok_or_else(|| {
        Error::InvalidParameter(format!(
            "no family member at ell={ell}, p={p} has discriminant p * square"
        ))
    })
}

// ---------------------------------------------------------------------------
// Prime utilities
// ---------------------------------------------------------------------------

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = 11u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division (desk-scale inputs).
pub fn factor_u64(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        while n % d == 0 {
            *out.entry(d).or_insert(0) += 1;
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

/// Prime factorization of a positive big integer: trial division up to 10^6,
/// then a deterministic Pollard rho on the (u64-sized) cofactor.
pub fn factor_biguint(n: &BigUint) -> Result<BTreeMap<BigUint, u32>> {
    let mut out = BTreeMap::new();
    let mut n = n.clone();
    if n.is_zero() {
        return Err(Error::InvalidParameter("cannot factor zero".into()));
    }
    let mut d = 2u64;
    while d <= 1_000_000 {
        let db = BigUint::from(d);
        if (&db * &db) > n {
            break;
        }
        loop {
            let (q, r) = n.div_rem(&db);
            if !r.is_zero() {
                break;
            }
            *out.entry(db.clone()).or_insert(0) += 1;
            n = q;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n.is_one() {
        return Ok(out);
    }
    match u64::try_from(&n) {
        Ok(small) => {
            for (q, e) in factor_rho_u64(small) {
                *out.entry(BigUint::from(q)).or_insert(0) += e;
            }
            Ok(out)
        }
        Err(_) => Err(Error::BudgetExceeded(format!(
            "factorization cofactor too large: {n}"
        ))),
    }
}

fn factor_rho_u64(n: u64) -> BTreeMap<u64, u32> {
    fn mulmod(a: u64, b: u64, m: u64) -> u64 {
        ((a as u128 * b as u128) % m as u128) as u64
    }
    fn rho(n: u64) -> u64 {
        for c in 1..40u64 {
            let f = |x: u64| (mulmod(x, x, n) + c) % n;
            let mut x = 2u64;
            let mut y = 2u64;
            loop {
                x = f(x);
                y = f(f(y));
                let d = num_integer::gcd(x.abs_diff(y), n);
                if d == n {
                    break;
                }
                if d > 1 {
                    return d;
                }
            }
        }
        n
    }
    let mut out = BTreeMap::new();
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let d = rho(m);
        assert!(d > 1 && d < m, "pollard rho failed on {m}");
        stack.push(d);
        stack.push(m / d);
    }
    out
}

/// Squarefree part and square root of the square part: `n = sf * k^2`.
pub fn square_decomposition(n: &BigUint) -> Result<(BigUint, BigUint)> {
    let factors = factor_biguint(n)?;
    let mut squarefree = BigUint::one();
    let mut root = BigUint::one();
    for (p, e) in factors {
        if e % 2 == 1 {
            squarefree *= &p;
        }
        root *= p.pow(e / 2);
    }
    Ok((squarefree, root))
}

/// Least prime strictly between `d/2` and `d-2`, for `d >= 8`.
pub fn bertrand_prime(d: u64) -> Result<u64> {
    if d < 8 {
        return Err(Error::InvalidParameter(format!(
            "bertrand_prime needs d >= 8, got {d}"
        )));
    }
    let mut n = d / 2 + 1;
    while n + 2 < d {
        if is_prime_u64(n) {
            return Ok(n);
        }
        n += 1;
    }
    Err(Error::InvalidParameter(format!(
        "no prime strictly between {d}/2 and {d}-2"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(text: &str) -> IntegerPolynomial {
        IntegerPolynomial::parse(text).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let f = poly("x^3 - 30x + 20");
        assert_eq!(f.coeff(0), BigInt::from(20));
        assert_eq!(f.coeff(1), BigInt::from(-30));
        assert_eq!(f.coeff(2), BigInt::from(0));
        assert_eq!(f.coeff(3), BigInt::from(1));
        assert_eq!(f.to_string(), "x^3 - 30x + 20");
        assert_eq!(poly("-x^2+1").to_string(), "-x^2 + 1");
        assert_eq!(IntegerPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn family_members() {
        assert_eq!(fp_family(3, 3).unwrap(), poly("x^3 - 30x + 20"));
        assert_eq!(fp_family(3, 2).unwrap(), poly("x^3 - 21x + 14"));
        assert_eq!(fp_family(5, 2).unwrap(), poly("x^5 - 55x + 44"));
        assert!(fp_family(4, 2).is_err());
        assert!(fp_family(3, 6).is_err());
    }

    #[test]
    fn cubic_discriminants_match_formula() {
        // Independent oracle for x^3 + px + q: -4p^3 - 27q^2.
        for (p, q) in [(-30i64, 20i64), (-21, 14), (1, 1), (0, -2), (5, -7)] {
            let f = IntegerPolynomial::from_i64(&[q, p, 0, 1]);
            let expected = BigInt::from(-4) * BigInt::from(p).pow(3)
                - BigInt::from(27) * BigInt::from(q).pow(2);
            assert_eq!(discriminant(&f).unwrap(), expected, "p={p}, q={q}");
        }
        assert_eq!(
            discriminant(&poly("x^3 - 30x + 20")).unwrap(),
            BigInt::from(97200)
        );
        assert_eq!(
            discriminant(&poly("x^3 - 21x + 14")).unwrap(),
            BigInt::from(31752)
        );
    }

    #[test]
    fn quadratic_discriminants() {
        assert_eq!(discriminant(&poly("x^2 - 1")).unwrap(), BigInt::from(4));
        assert_eq!(
            discriminant(&poly("2x^2 + 3x + 1")).unwrap(),
            BigInt::from(1)
        );
        assert!(discriminant(&poly("x + 1")).is_err());
    }

    #[test]
    fn discriminant_zero_iff_repeated_factor() {
        let sq = poly("x - 1").mul(&poly("x - 1")).mul(&poly("x + 2"));
        assert_eq!(discriminant(&sq).unwrap(), BigInt::zero());
        let sep = poly("x - 1").mul(&poly("x + 2"));
        assert_ne!(discriminant(&sep).unwrap(), BigInt::zero());
    }

    #[test]
    fn closed_form_matches_resultant_route() {
        for ell in [3u64, 5, 7] {
            for p in [-11i64, -7, -5, -3, -2, -1, 1, 2, 3, 5, 7, 11] {
                let f = fp_family(ell, p).unwrap();
                assert_eq!(
                    discriminant(&f).unwrap(),
                    closed_form_discriminant(ell, p).unwrap(),
                    "ell={ell}, p={p}"
                );
            }
        }
    }

    #[test]
    fn closed_form_sign_example() {
        // ell=5, p=2: negative of 4^4 * 5^6 * 11^4 * 2.
        let expected = -(BigInt::from(4).pow(4)
            * BigInt::from(5).pow(6)
            * BigInt::from(11).pow(4)
            * BigInt::from(2));
        assert_eq!(closed_form_discriminant(5, 2).unwrap(), expected);
    }

    #[test]
    fn eisenstein_shift_search() {
        let cert = eisenstein_shift_certificate(&poly("x^3 - 21x + 14"), 3, 1);
        assert_eq!(
            cert,
            IrreducibilityCertificate::Eisenstein { prime: 3, shift: 1 }
        );
        assert_eq!(
            poly("x^3 - 21x + 14").shift(&BigInt::one()),
            poly("x^3 + 3x^2 - 18x - 6")
        );
        assert_eq!(
            eisenstein_shift_certificate(&poly("x^2 - 2"), 2, 0),
            IrreducibilityCertificate::Eisenstein { prime: 2, shift: 0 }
        );
        assert_eq!(
            eisenstein_shift_certificate(&poly("x^2 - 1"), 3, 2),
            IrreducibilityCertificate::None
        );
    }

    #[test]
    fn newton_polygon_hulls() {
        let np = newton_polygon(&poly("x^3 - 30x + 20"), 5).unwrap();
        assert_eq!(np.hull, vec![(0, 1), (3, 0)]);
        let np = newton_polygon(&poly("x^3 + 9x + 3"), 3).unwrap();
        assert_eq!(np.hull, vec![(0, 1), (3, 0)]);
        let np = newton_polygon(&poly("x^2 - 4"), 2).unwrap();
        assert_eq!(np.hull, vec![(0, 2), (2, 0)]);
        assert!(newton_polygon(&poly("x^2 + x"), 2).is_err());
    }

    #[test]
    fn hull_slopes_increase_and_endpoints() {
        for f in [
            poly("x^4 + 2x^2 + 2"),
            poly("4x^5 + 6x^3 + 9"),
            poly("x^3 - 30x + 20"),
            poly("8x^6 + 2x^3 + 32x + 4"),
        ] {
            for q in [2u64, 3, 5] {
                let np = newton_polygon(&f, q).unwrap();
                assert_eq!(np.hull[0].0, 0);
                assert_eq!(np.hull.last().unwrap().0, f.degree().unwrap());
                for w in np.segments.windows(2) {
                    assert!(w[0].slope < w[1].slope);
                }
                for &(i, v) in &np.points {
                    // every point lies on or above the hull
                    for seg in &np.segments {
                        if i >= seg.start.0 && i <= seg.end.0 {
                            let lhs = (v as i128 - seg.start.1 as i128)
                                * (seg.end.0 as i128 - seg.start.0 as i128);
                            let rhs = (seg.end.1 as i128 - seg.start.1 as i128)
                                * (i as i128 - seg.start.0 as i128);
                            assert!(lhs >= rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dumas_certificates() {
        assert!(dumas_certificate(&poly("x^3 - 30x + 20"), 5)
            .unwrap()
            .is_some());
        assert!(!dumas_certificate(&poly("x^2 - 4"), 2).unwrap().is_some());
        assert!(dumas_certificate(&poly("x^4 + 2x^2 + 2"), 2)
            .unwrap()
            .is_some());
        assert!(dumas_certificate(&poly("2x^2 + 4"), 2).is_err());
    }

    #[test]
    fn fp_certificates() {
        assert_eq!(
            certify_fp_irreducible(3, 2).unwrap(),
            IrreducibilityCertificate::Eisenstein { prime: 3, shift: 1 }
        );
        match certify_fp_irreducible(3, 3).unwrap() {
            IrreducibilityCertificate::Dumas { prime, .. } => assert_eq!(prime, 5),
            other => panic!("expected dumas at 5, got {other:?}"),
        }
        match certify_fp_irreducible(5, 5).unwrap() {
            IrreducibilityCertificate::Dumas { prime, .. } => assert_eq!(prime, 13),
            other => panic!("expected dumas at 13, got {other:?}"),
        }
        assert_eq!(
            certify_fp_irreducible(3, -1).unwrap(),
            IrreducibilityCertificate::Eisenstein { prime: 3, shift: 1 }
        );
    }

    #[test]
    fn sqrt_witnesses() {
        let w = sqrt_embedding_witness(3, 3).unwrap();
        assert!(matches!(w.branch, FamilyBranch::Plus));
        assert_eq!(w.square_root_of_square_part, BigUint::from(180u32));
        assert_eq!(w.discriminant, BigInt::from(97200));
        let w = sqrt_embedding_witness(3, 2).unwrap();
        assert!(matches!(w.branch, FamilyBranch::Plus));
        assert_eq!(w.square_root_of_square_part, BigUint::from(126u32));
        let w = sqrt_embedding_witness(5, 2).unwrap();
        assert!(matches!(w.branch, FamilyBranch::Minus));
        let k = BigInt::from(w.square_root_of_square_part.clone());
        assert_eq!(BigInt::from(2) * &k * &k, w.discriminant);
    }

    #[test]
    fn bertrand_examples() {
        assert_eq!(bertrand_prime(8).unwrap(), 5);
        assert_eq!(bertrand_prime(13).unwrap(), 7);
        assert!(bertrand_prime(7).is_err());
        for d in 8..200 {
            let p = bertrand_prime(d).unwrap();
            assert!(is_prime_u64(p) && 2 * p > d && p + 2 < d);
        }
    }

    #[test]
    fn factorization_helpers() {
        assert_eq!(factor_u64(10), BTreeMap::from([(2, 1), (5, 1)]));
        let (sf, root) = square_decomposition(&BigUint::from(97200u32)).unwrap();
        assert_eq!(sf, BigUint::from(3u32));
        assert_eq!(root, BigUint::from(180u32));
        let big = BigUint::from(2u32).pow(4) * BigUint::from(1_000_003u64).pow(2);
        let (sf, root) = square_decomposition(&big).unwrap();
        assert_eq!(sf, BigUint::one());
        assert_eq!(root, BigUint::from(4u32) * BigUint::from(1_000_003u64));
    }

    #[test]
    fn poly_json_roundtrip() {
        let f = poly("x^3 - 30x + 20");
        let json = f.to_json();
        assert_eq!(serde_json::to_string(&json).unwrap(), "[20,-30,0,1]");
        assert_eq!(IntegerPolynomial::from_json(&json).unwrap(), f);
        let big = IntegerPolynomial::from_coeffs(vec![
            BigInt::parse_bytes(b"123456789012345678901234567890", 10).unwrap(),
            BigInt::one(),
        ]);
        let back = IntegerPolynomial::from_json(&big.to_json()).unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn shift_identity() {
        let f = poly("x^4 - 7x^2 + 3x - 1");
        let g = f.shift(&BigInt::from(2)).shift(&BigInt::from(-2));
        assert_eq!(f, g);
    }
}
