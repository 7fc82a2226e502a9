//! Exact arithmetic in the field Q(q) of rational functions over the rationals.
//!
//! `LaurentPoly` is a Laurent polynomial in q with `BigRational` coefficients,
//! stored as an exponent -> coefficient map with no zero entries. `Scalar` is
//! a ratio of two Laurent polynomials kept in a canonical form, so structural
//! equality coincides with equality of values:
//!
//! * the denominator is never zero and its lowest exponent is 0;
//! * the denominator is monic (leading coefficient 1);
//! * gcd(numerator, denominator) = 1;
//! * the zero element is `0/1`.
//!
//! Signs and powers of q are pushed into the numerator by the normalization.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Laurent polynomial in q over the rationals. No stored coefficient is zero;
/// the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(0, c)
    }

    /// The monomial c * q^k.
    pub fn term(exp: i64, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    pub fn q() -> Self {
        Self::term(1, Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Lowest exponent; 0 for the zero polynomial.
    pub fn low(&self) -> i64 {
        self.terms.keys().next().copied().unwrap_or(0)
    }

    /// Highest exponent; 0 for the zero polynomial.
    pub fn high(&self) -> i64 {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }

    pub fn coeff(&self, exp: i64) -> Rat {
        self.terms.get(&exp).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient of the highest exponent; zero for the zero polynomial.
    pub fn leading(&self) -> Rat {
        self.terms.values().next_back().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> std::collections::btree_map::Iter<'_, i64, Rat> {
        self.terms.iter()
    }

    fn add_term(&mut self, exp: i64, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, &-c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }

    /// Multiply by q^k.
    pub fn shifted(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect() }
    }

    /// Division with remainder for ordinary polynomials (both lows >= 0
    /// after the caller strips units). Panics on zero divisor.
    fn div_rem_poly(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let dh = div.high();
        let dl = div.leading();
        while !rem.is_zero() && rem.high() >= dh && rem.low() >= div.low() {
            let e = rem.high() - dh;
            let c = rem.leading() / dl.clone();
            let t = LaurentPoly::term(e, c);
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(div));
        }
        (quot, rem)
    }

    /// Exact division; `None` when the remainder is nonzero. Works for
    /// Laurent operands since powers of q are units.
    pub fn div_exact(&self, div: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let shift = self.low() - div.low();
        let a = self.shifted(-self.low());
        let b = div.shifted(-div.low());
        let (q, r) = a.div_rem_poly(&b);
        if r.is_zero() {
            Some(q.shifted(shift))
        } else {
            None
        }
    }

    /// Monic gcd of the polynomial parts (powers of q are units, so the
    /// result always has lowest exponent 0). gcd(0, b) = monic b.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut x = a.shifted(-a.low());
        let mut y = b.shifted(-b.low());
        while !y.is_zero() {
            let (_, r) = x.div_rem_poly(&y);
            x = y;
            y = r.shifted(-r.low());
            if y.is_zero() {
                break;
            }
        }
        if x.is_zero() {
            return x;
        }
        let lc = x.leading();
        x.scale(&(Rat::one() / lc))
    }

    /// Evaluate at a nonzero rational point.
    pub fn eval(&self, q0: &Rat) -> Result<Rat> {
        if q0.is_zero() && self.low() < 0 {
            return Err(Error::EvalAtZero);
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut p = Rat::one();
            let n = e.unsigned_abs();
            for _ in 0..n {
                p *= q0;
            }
            if *e < 0 {
                p = p.recip();
            }
            acc += c * p;
        }
        Ok(acc)
    }
}

/// Element of Q(q) in canonical form. Equality of values is equality of
/// representations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Scalar { num: LaurentPoly::zero(), den: LaurentPoly::one() };
        }
        let nl = num.low();
        let dl = den.low();
        let mut n = num.shifted(-nl);
        let mut d = den.shifted(-dl);
        let g = LaurentPoly::gcd(&n, &d);
        if !g.is_one() {
            n = n.div_exact(&g).expect("gcd divides");
            d = d.div_exact(&g).expect("gcd divides");
        }
        let lc = d.leading();
        if !lc.is_one() {
            let inv = Rat::one() / lc;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Scalar { num: n.shifted(nl - dl), den: d }
    }

    pub fn zero() -> Self {
        Scalar { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Scalar { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { num: LaurentPoly::constant(int(n)), den: LaurentPoly::one() }
    }

    pub fn from_rat(r: Rat) -> Self {
        Scalar { num: LaurentPoly::constant(r), den: LaurentPoly::one() }
    }

    pub fn q() -> Self {
        Scalar { num: LaurentPoly::q(), den: LaurentPoly::one() }
    }

    /// q^k for any integer k.
    pub fn q_pow(k: i64) -> Self {
        Scalar { num: LaurentPoly::term(k, Rat::one()), den: LaurentPoly::one() }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// If this is a single monomial c*q^e with c = 1, return e.
    pub fn as_unit_monomial(&self) -> Option<i64> {
        if self.den.is_one() && self.num.num_terms() == 1 && self.num.leading().is_one() {
            Some(self.num.high())
        } else {
            None
        }
    }

    /// If this is a rational constant, return it.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.den.is_one() && (self.num.is_zero() || (self.num.low() == 0 && self.num.high() == 0)) {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// Value at q = q0. Common factors are already cancelled by the
    /// canonical form, so a vanishing denominator is a genuine pole.
    pub fn eval_at(&self, q0: &Rat) -> Result<Rat> {
        if q0.is_zero() {
            return Err(Error::EvalAtZero);
        }
        let d = self.den.eval(q0)?;
        if d.is_zero() {
            return Err(Error::Pole(q0.to_string()));
        }
        Ok(self.num.eval(q0)? / d)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Scalar::normalized(num, self.den.mul(&rhs.den))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let num = self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den));
        Scalar::normalized(num, self.den.mul(&rhs.den))
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        Scalar::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        if rhs.is_zero() {
            panic!("scalar division by zero; use checked_div");
        }
        Scalar::normalized(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }
}

impl Scalar {
    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self / rhs)
    }
}

macro_rules! impl_owned_ops {
    ($($trait:ident, $method:ident);*) => {$(
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    )*};
}
impl_owned_ops!(Add, add; Sub, sub; Mul, mul; Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.iter().rev().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let qpart = match *e {
            0 => None,
            1 => Some("q".to_string()),
            k => Some(format!("q^{}", k)),
        };
        match qpart {
            None => out.push_str(&fmt_rat(&mag)),
            Some(qs) => {
                if mag.is_one() {
                    out.push_str(&qs);
                } else {
                    out.push_str(&fmt_rat(&mag));
                    out.push('*');
                    out.push_str(&qs);
                }
            }
        }
    }
    out
}

impl fmt::Display for Scalar {
    /// Canonical string in the scalar grammar; parsing it back yields an
    /// equal scalar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", fmt_poly(&self.num));
        }
        let ns = fmt_poly(&self.num);
        let num_str = if self.num.num_terms() > 1 { format!("({})", ns) } else { ns };
        write!(f, "{}/({})", num_str, fmt_poly(&self.den))
    }
}

// ---- parser for the scalar grammar --------------------------------------
//
// expr   := term (('+'|'-') term)*
// term   := factor (('*'|'/') factor)*
// factor := '-' factor | atom ('^' int)?
// atom   := integer | 'q' | '(' expr ')'

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src: src.as_bytes(), pos: 0 }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn parse_int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| self.err("integer out of range"))
    }

    fn parse_atom(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(Scalar::q())
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.parse_expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_int()?;
                Ok(Scalar::from_int(n))
            }
            _ => Err(self.err("expected 'q', integer or '('")),
        }
    }

    fn parse_factor(&mut self) -> Result<Scalar> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.parse_factor()?);
        }
        let base = self.parse_atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.parse_int()?;
            if base.is_zero() && k < 0 {
                return Err(self.err("zero to a negative power"));
            }
            return base.pow(k);
        }
        Ok(base)
    }

    fn parse_term(&mut self) -> Result<Scalar> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.parse_factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.parse_factor()?;
                    if rhs.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = &acc / &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_expr(&mut self) -> Result<Scalar> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.parse_term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.parse_term()?;
                }
                _ => return Ok(acc),
            }
        }
    }
}

impl std::str::FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scalar> {
        let mut p = Parser::new(s);
        let e = p.parse_expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

/// Parse a scalar in the grammar `integers, q, q^k, + - * /, parentheses`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    s.parse()
}

/// The spec-file alias: binary scalar arithmetic as a single entry point.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        parse_scalar(text).unwrap()
    }

    #[test]
    fn cancellation_to_monomial() {
        // (q - q^-1) + q^-1 = q
        let r = &s("q - q^-1") + &s("q^-1");
        assert_eq!(r, Scalar::q());
        assert_eq!(r.to_string(), "q");
    }

    #[test]
    fn gcd_normalization() {
        // (q^2 - 1) / (q - 1) = q + 1
        let r = s("(q^2-1)/(q-1)");
        assert_eq!(r, s("q+1"));
        assert_eq!(r.to_string(), "q + 1");
    }

    #[test]
    fn division_by_zero_is_error() {
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(Error::DivisionByZero));
        assert!(matches!(parse_scalar("1/0"), Err(Error::Parse { .. })));
    }

    #[test]
    fn denominator_canonicalization() {
        // sign and q powers move into the numerator, denominator is monic
        let r = s("1/(2*q - 2*q^3)");
        assert_eq!(r.denominator().low(), 0);
        assert!(r.denominator().leading().is_one());
        assert_eq!(&r * &s("2*q - 2*q^3"), Scalar::one());
    }

    #[test]
    fn eval_at_points() {
        assert_eq!(s("q - q^-1").eval_at(&int(1)).unwrap(), int(0));
        assert_eq!(s("(q^2-1)/(q-1)").eval_at(&int(1)).unwrap(), int(2));
        assert!(matches!(s("1/(q-1)").eval_at(&int(1)), Err(Error::Pole(_))));
        assert!(matches!(s("q^-1").eval_at(&int(0)), Err(Error::EvalAtZero)));
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_scalar("q^") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("expected parse error, got {:?}", other),
        }
        assert!(parse_scalar("q + ").is_err());
        assert!(parse_scalar("(q").is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in ["q - q^-1", "(q^2 + 2*q + 1)/(q^3 - q)", "-3/2*q^-2 + 1", "0", "5"] {
            let v = s(text);
            assert_eq!(s(&v.to_string()), v, "round trip failed for {}", text);
        }
    }

    #[test]
    fn normalize_is_idempotent() {
        let v = s("(q^4 - 2*q^2 + 1)/(q^2 - 1)");
        let w = Scalar::new(v.numerator().clone(), v.denominator().clone()).unwrap();
        assert_eq!(v, w);
    }
}
