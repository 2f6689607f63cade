//! Exact sparse Laurent polynomials in `q` with exponents in `(1/8)·ℤ`.
//!
//! Terms are stored as a sorted vector of `(8·exponent, coefficient)` pairs.
//! The coefficient ring is generic: [`LaurentPoly`] defaults to arbitrary
//! precision rationals, and [`IntLaurent`] is the integer specialization used
//! on the hot paths of the colored Jones engine.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Small exact rationals used for degrees, slopes and fitted coefficients.
pub type Q = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("polynomial is not exactly divisible by the given divisor")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("malformed serialization at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// An exponent of `q`, stored as its numerator over 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(pub i64);

impl Exponent {
    pub fn from_ratio(r: Q) -> Option<Exponent> {
        let n = r * Q::from_integer(8);
        n.is_integer().then(|| Exponent(n.to_integer()))
    }

    pub fn to_ratio(self) -> Q {
        Q::new(self.0, 8)
    }

    pub fn is_integral(self) -> bool {
        self.0 % 8 == 0
    }
}

/// Coefficient ring of a [`LaurentPoly`].
pub trait Coeff:
    Clone
    + Eq
    + fmt::Debug
    + Signed
    + Send
    + Sync
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    fn mul_ref(a: &Self, b: &Self) -> Self;
    /// `a / b` when the quotient lies in the ring.
    fn div_exact(a: &Self, b: &Self) -> Option<Self>;
    fn to_rational(&self) -> BigRational;
    fn from_rational(r: &BigRational) -> Option<Self>;
}

impl Coeff for BigInt {
    fn mul_ref(a: &Self, b: &Self) -> Self {
        a * b
    }

    fn div_exact(a: &Self, b: &Self) -> Option<Self> {
        if b.is_zero() {
            return None;
        }
        let (d, r) = a.div_rem(b);
        r.is_zero().then_some(d)
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }

    fn from_rational(r: &BigRational) -> Option<Self> {
        r.is_integer().then(|| r.to_integer())
    }
}

impl Coeff for BigRational {
    fn mul_ref(a: &Self, b: &Self) -> Self {
        a * b
    }

    fn div_exact(a: &Self, b: &Self) -> Option<Self> {
        (!b.is_zero()).then(|| a / b)
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn from_rational(r: &BigRational) -> Option<Self> {
        Some(r.clone())
    }
}

/// Exact Laurent polynomial. Invariants: terms sorted by exponent, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<C = BigRational> {
    terms: Vec<(i64, C)>,
}

pub type IntLaurent = LaurentPoly<BigInt>;

/// Extreme degrees and the signs of the extreme coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeData {
    pub d_plus: Q,
    pub d_minus: Q,
    pub lead_sign: i8,
    pub trail_sign: i8,
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Exponent(0), C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(Exponent(0), c)
    }

    pub fn monomial(e: Exponent, c: C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: vec![(e.0, c)] }
    }

    /// `±q^e` as a signed monomial.
    pub fn signed_q_pow(sign: i32, e: Exponent) -> Self {
        let c = if sign < 0 { -C::one() } else { C::one() };
        Self::monomial(e, c)
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Exponent, C)>>(iter: I) -> Self {
        let mut v: Vec<(i64, C)> = iter.into_iter().map(|(e, c)| (e.0, c)).collect();
        v.sort_by_key(|t| t.0);
        let mut terms: Vec<(i64, C)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match terms.last_mut() {
                Some(last) if last.0 == e => last.1 += &c,
                _ => terms.push((e, c)),
            }
        }
        terms.retain(|t| !t.1.is_zero());
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &C)> + '_ {
        self.terms.iter().map(|(e, c)| (Exponent(*e), c))
    }

    pub fn coeff(&self, e: Exponent) -> C {
        match self.terms.binary_search_by_key(&e.0, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(),
        }
    }

    pub fn lead(&self) -> Option<(Exponent, &C)> {
        self.terms.last().map(|(e, c)| (Exponent(*e), c))
    }

    pub fn trail(&self) -> Option<(Exponent, &C)> {
        self.terms.first().map(|(e, c)| (Exponent(*e), c))
    }

    pub fn d_plus(&self) -> Option<Q> {
        self.lead().map(|(e, _)| e.to_ratio())
    }

    pub fn d_minus(&self) -> Option<Q> {
        self.trail().map(|(e, _)| e.to_ratio())
    }

    pub fn degree_data(&self) -> Result<DegreeData, LaurentError> {
        let (hi, hc) = self.lead().ok_or(LaurentError::ZeroPolynomial)?;
        let (lo, lc) = self.trail().ok_or(LaurentError::ZeroPolynomial)?;
        Ok(DegreeData {
            d_plus: hi.to_ratio(),
            d_minus: lo.to_ratio(),
            lead_sign: if hc.is_negative() { -1 } else { 1 },
            trail_sign: if lc.is_negative() { -1 } else { 1 },
        })
    }

    pub fn has_integral_exponents(&self) -> bool {
        self.terms.iter().all(|t| t.0 % 8 == 0)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, C::mul_ref(x, c))).collect(),
        }
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: Exponent) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(x, c)| (x + e.0, c.clone())).collect(),
        }
    }

    pub fn substitute_q_inverse(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> Option<D>) -> Option<LaurentPoly<D>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let d = f(c)?;
            if !d.is_zero() {
                terms.push((*e, d));
            }
        }
        Some(LaurentPoly { terms })
    }

    pub fn to_rational(&self) -> LaurentPoly<BigRational> {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.to_rational())).collect(),
        }
    }

    /// Exact quotient `self / den`, by leading-term elimination from the top exponent down.
    pub fn exact_div(&self, den: &Self) -> Result<Self, LaurentError> {
        if den.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if den.terms.len() == 1 {
            let (de, dc) = &den.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                terms.push((e - de, C::div_exact(c, dc).ok_or(LaurentError::NotDivisible)?));
            }
            return Ok(LaurentPoly { terms });
        }
        let g = gcd_i64(step_of(&self.terms), step_of(&den.terms));
        let nmin = self.terms[0].0;
        let dmin = den.terms[0].0;
        let mut r = densify(&self.terms, g);
        let d = densify(&den.terms, g);
        if r.len() < d.len() {
            return Err(LaurentError::NotDivisible);
        }
        let lead = d.last().unwrap().clone();
        let qlen = r.len() - d.len() + 1;
        let mut quot: Vec<C> = vec![C::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &r[i + d.len() - 1];
            if top.is_zero() {
                continue;
            }
            let c = C::div_exact(top, &lead).ok_or(LaurentError::NotDivisible)?;
            for (j, dj) in d.iter().enumerate() {
                if !dj.is_zero() {
                    let t = C::mul_ref(&c, dj);
                    r[i + j] -= &t;
                }
            }
            quot[i] = c;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return Err(LaurentError::NotDivisible);
        }
        let base = nmin - dmin;
        let terms = quot
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (base + i as i64 * g, c))
            .collect();
        Ok(LaurentPoly { terms })
    }

    /// Canonical text form: one `EXPNUM NUM DEN` line per term, ascending exponent.
    pub fn to_canonical_string(&self) -> String {
        let mut s = String::new();
        for (e, c) in &self.terms {
            let r = c.to_rational();
            s.push_str(&format!("{} {} {}\n", e, r.numer(), r.denom()));
        }
        s
    }

    pub fn parse_canonical(text: &str) -> Result<Self, LaurentError> {
        let mut terms: Vec<(i64, C)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let bad = |reason: &str| LaurentError::Parse { line: i + 1, reason: reason.to_string() };
            let f: Vec<&str> = line.split(' ').collect();
            if f.len() != 3 {
                return Err(bad("expected three fields"));
            }
            let e: i64 = f[0].parse().map_err(|_| bad("bad exponent"))?;
            let n: BigInt = f[1].parse().map_err(|_| bad("bad numerator"))?;
            let d: BigInt = f[2].parse().map_err(|_| bad("bad denominator"))?;
            if !d.is_positive() || n.is_zero() {
                return Err(bad("zero coefficient or nonpositive denominator"));
            }
            let r = BigRational::new(n.clone(), d.clone());
            if r.numer() != &n || r.denom() != &d {
                return Err(bad("fraction not reduced"));
            }
            if terms.last().is_some_and(|t| t.0 >= e) {
                return Err(bad("exponents not strictly ascending"));
            }
            terms.push((e, C::from_rational(&r).ok_or_else(|| bad("coefficient outside ring"))?));
        }
        Ok(LaurentPoly { terms })
    }
}

impl IntLaurent {
    pub fn from_rational_poly(p: &LaurentPoly<BigRational>) -> Option<Self> {
        p.map_coeffs(BigInt::from_rational)
    }
}

impl LaurentPoly<BigRational> {
    pub fn to_integer(&self) -> Option<IntLaurent> {
        IntLaurent::from_rational_poly(self)
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// gcd of exponent differences; 0 for a single term.
fn step_of<C>(terms: &[(i64, C)]) -> i64 {
    let base = terms[0].0;
    terms.iter().fold(0, |g, t| gcd_i64(g, t.0 - base))
}

fn densify<C: Coeff>(terms: &[(i64, C)], g: i64) -> Vec<C> {
    let base = terms[0].0;
    let len = ((terms.last().unwrap().0 - base) / g) as usize + 1;
    let mut v = vec![C::zero(); len];
    for (e, c) in terms {
        v[((e - base) / g) as usize] = c.clone();
    }
    v
}

fn merge<C: Coeff>(a: &[(i64, C)], b: &[(i64, C)], negate_b: bool) -> Vec<(i64, C)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let nb = |c: &C| if negate_b { -c.clone() } else { c.clone() };
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, nb(&b[j].1)));
            j += 1;
        } else {
            let mut c = a[i].1.clone();
            if negate_b {
                c -= &b[j].1;
            } else {
                c += &b[j].1;
            }
            if !c.is_zero() {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl<C: Coeff> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        LaurentPoly { terms: merge(&self.terms, &rhs.terms, false) }
    }
}

impl<C: Coeff> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        LaurentPoly { terms: merge(&self.terms, &rhs.terms, true) }
    }
}

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

impl<C: Coeff> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let (a, b) = (&self.terms, &rhs.terms);
        let g = gcd_i64(step_of(a), step_of(b));
        if g == 0 {
            return LaurentPoly::monomial(Exponent(a[0].0 + b[0].0), C::mul_ref(&a[0].1, &b[0].1));
        }
        let (amin, bmin) = (a[0].0, b[0].0);
        let len = ((a.last().unwrap().0 - amin) / g + (b.last().unwrap().0 - bmin) / g) as usize + 1;
        let mut acc = vec![C::zero(); len];
        for (ea, ca) in a {
            let ia = ((ea - amin) / g) as usize;
            for (eb, cb) in b {
                let t = C::mul_ref(ca, cb);
                acc[ia + ((eb - bmin) / g) as usize] += &t;
            }
        }
        let base = amin + bmin;
        let terms = acc
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (base + i as i64 * g, c))
            .collect();
        LaurentPoly { terms }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $m(self, rhs: Self) -> LaurentPoly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -&self
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    /// Human-readable form such as `q - 2*q^(1/2) + q^-1`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let r = c.to_rational();
            let neg = r.is_negative();
            let a = r.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let x = Q::new(*e, 8);
            let var = if x.is_zero() {
                String::new()
            } else if x.is_one() {
                "q".to_string()
            } else if x.is_integer() {
                format!("q^{}", x)
            } else {
                format!("q^({})", x)
            };
            if var.is_empty() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", var)?;
            } else {
                write!(f, "{}*{}", a, var)?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

/// A quotient of Laurent polynomials, never simplified until [`RationalLaurent::reduce`].
#[derive(Clone)]
pub struct RationalLaurent<C = BigRational> {
    pub num: LaurentPoly<C>,
    pub den: LaurentPoly<C>,
}

impl<C: Coeff> fmt::Debug for RationalLaurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl<C: Coeff> RationalLaurent<C> {
    pub fn new(num: LaurentPoly<C>, den: LaurentPoly<C>) -> Result<Self, LaurentError> {
        if den.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        Ok(RationalLaurent { num, den })
    }

    pub fn from_poly(p: LaurentPoly<C>) -> Self {
        RationalLaurent { num: p, den: LaurentPoly::one() }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RationalLaurent { num: &self.num + &o.num, den: self.den.clone() };
        }
        RationalLaurent {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalLaurent { num: &self.num * &o.num, den: &self.den * &o.den }
    }

    pub fn div(&self, o: &Self) -> Result<Self, LaurentError> {
        if o.num.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        Ok(RationalLaurent { num: &self.num * &o.den, den: &self.den * &o.num })
    }

    pub fn mul_poly(&self, p: &LaurentPoly<C>) -> Self {
        RationalLaurent { num: &self.num * p, den: self.den.clone() }
    }

    /// Equality as rational functions, by cross-multiplication.
    pub fn equals(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }

    /// Extended maximum degree `d_+[num] − d_+[den]`; `None` for the zero function.
    pub fn d_plus(&self) -> Option<Q> {
        Some(self.num.d_plus()? - self.den.d_plus()?)
    }

    pub fn d_minus(&self) -> Option<Q> {
        Some(self.num.d_minus()? - self.den.d_minus()?)
    }

    pub fn reduce(&self) -> Result<LaurentPoly<C>, LaurentError> {
        self.num.exact_div(&self.den)
    }
}
