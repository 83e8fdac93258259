//! Exact coefficient arithmetic: cyclotomic rationals Q(zeta_N) for concrete
//! roots of unity, and the rational-function field Q(q) for generic q.
//!
//! Every value is kept in a unique canonical form so that equality of
//! representations is equality in the field:
//! - cyclotomic elements are reduced modulo the N-th cyclotomic polynomial,
//!   so they are polynomials in zeta of degree < phi(N);
//! - generic elements are fractions of integer-coefficient polynomials in q,
//!   coprime, content-free, with positive leading denominator coefficient.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly;
use crate::poly::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no multiplicative order")]
    ZeroOrder,
    #[error("operands belong to different scalar fields: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("the generic field Q(q) has no root of unity zeta")]
    NoZeta,
    #[error("the variable q only exists in the generic field")]
    NoGenericVariable,
    #[error("invalid scalar literal: {0}")]
    Parse(String),
}

/// Field mode: a fixed primitive N-th root of unity, or a transcendental q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldMode {
    Cyclotomic { order: u64 },
    Generic,
}

#[derive(Debug)]
struct FieldInner {
    mode: FieldMode,
    /// Modulus Phi_N for cyclotomic mode; empty in generic mode.
    modulus: Vec<Rat>,
    degree: usize,
}

/// A coefficient field handle. Cheap to clone; two handles are equal when
/// they denote the same field.
#[derive(Debug, Clone)]
pub struct ScalarField {
    inner: Arc<FieldInner>,
}

impl PartialEq for ScalarField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.mode == other.inner.mode
    }
}
impl Eq for ScalarField {}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.inner.mode {
            FieldMode::Cyclotomic { order } => write!(f, "Q(zeta_{order})"),
            FieldMode::Generic => write!(f, "Q(q)"),
        }
    }
}

impl ScalarField {
    /// The cyclotomic field Q(zeta_N). N = 1 gives the rationals.
    pub fn cyclotomic(order: u64) -> Self {
        assert!(order >= 1, "root order must be positive");
        let modulus = poly::cyclotomic(order);
        let degree = modulus.len() - 1;
        ScalarField {
            inner: Arc::new(FieldInner {
                mode: FieldMode::Cyclotomic { order },
                modulus,
                degree,
            }),
        }
    }

    /// The rational-function field Q(q).
    pub fn generic() -> Self {
        ScalarField {
            inner: Arc::new(FieldInner {
                mode: FieldMode::Generic,
                modulus: Vec::new(),
                degree: 0,
            }),
        }
    }

    pub fn mode(&self) -> FieldMode {
        self.inner.mode
    }

    /// Root order N in cyclotomic mode.
    pub fn root_order(&self) -> Option<u64> {
        match self.inner.mode {
            FieldMode::Cyclotomic { order } => Some(order),
            FieldMode::Generic => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar {
            field: self.clone(),
            repr: self.repr_zero(),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_integer(1)
    }

    pub fn from_integer(&self, n: i64) -> Scalar {
        self.from_rational(Rat::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(&self, r: Rat) -> Scalar {
        match self.inner.mode {
            FieldMode::Cyclotomic { .. } => {
                let mut v = vec![r];
                poly::trim(&mut v);
                Scalar {
                    field: self.clone(),
                    repr: Repr::Cyc(v),
                }
            }
            FieldMode::Generic => {
                let num = vec![r.numer().clone()];
                let den = vec![r.denom().clone()];
                Scalar {
                    field: self.clone(),
                    repr: Repr::Gen(Frac::normalized(num, den)),
                }
            }
        }
    }

    /// zeta^k, with k arbitrary (negative powers wrap around).
    pub fn zeta_power(&self, k: i64) -> Result<Scalar, ScalarError> {
        match self.inner.mode {
            FieldMode::Generic => Err(ScalarError::NoZeta),
            FieldMode::Cyclotomic { order } => {
                let e = k.rem_euclid(order as i64) as usize;
                let mut v = vec![Rat::zero(); e + 1];
                v[e] = Rat::one();
                Ok(Scalar {
                    field: self.clone(),
                    repr: Repr::Cyc(self.reduce(v)),
                })
            }
        }
    }

    pub fn zeta(&self) -> Result<Scalar, ScalarError> {
        self.zeta_power(1)
    }

    /// The transcendental generator q of Q(q).
    pub fn q_power(&self, k: i64) -> Result<Scalar, ScalarError> {
        match self.inner.mode {
            FieldMode::Cyclotomic { .. } => Err(ScalarError::NoGenericVariable),
            FieldMode::Generic => {
                let (mut num, mut den) = (vec![BigInt::one()], vec![BigInt::one()]);
                if k >= 0 {
                    let mut v = vec![BigInt::zero(); k as usize + 1];
                    v[k as usize] = BigInt::one();
                    num = v;
                } else {
                    let mut v = vec![BigInt::zero(); (-k) as usize + 1];
                    v[(-k) as usize] = BigInt::one();
                    den = v;
                }
                Ok(Scalar {
                    field: self.clone(),
                    repr: Repr::Gen(Frac::normalized(num, den)),
                })
            }
        }
    }

    fn repr_zero(&self) -> Repr {
        match self.inner.mode {
            FieldMode::Cyclotomic { .. } => Repr::Cyc(Vec::new()),
            FieldMode::Generic => Repr::Gen(Frac {
                num: Vec::new(),
                den: vec![BigInt::one()],
            }),
        }
    }

    fn reduce(&self, v: Vec<Rat>) -> Vec<Rat> {
        if v.len() > self.inner.degree {
            poly::rem(&v, &self.inner.modulus)
        } else {
            let mut v = v;
            poly::trim(&mut v);
            v
        }
    }

    /// Parses the scalar literal grammar: rationals `-3/2`, powers `z^3`
    /// (cyclotomic) or `q^-1` (generic), joined by `*`, `+`, `-`.
    pub fn parse(&self, text: &str) -> Result<Scalar, ScalarError> {
        let mut p = Lexer::new(text);
        let v = parse_sum(self, &mut p)?;
        p.skip_ws();
        if !p.at_end() {
            return Err(ScalarError::Parse(format!(
                "unexpected trailing input at byte {} in {text:?}",
                p.pos
            )));
        }
        Ok(v)
    }
}

/// Reduced fraction of integer polynomials in q.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Frac {
    num: Vec<BigInt>,
    den: Vec<BigInt>,
}

impl Frac {
    fn normalized(mut num: Vec<BigInt>, mut den: Vec<BigInt>) -> Frac {
        poly::ztrim(&mut num);
        poly::ztrim(&mut den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return Frac {
                num,
                den: vec![BigInt::one()],
            };
        }
        let g = poly::zgcd(&num, &den);
        if g.len() > 1 || g.first().map_or(false, |c| !c.is_one()) {
            num = poly::zdiv_exact(&num, &g);
            den = poly::zdiv_exact(&den, &g);
        }
        // Contents are coprime overall but may individually remain; split them.
        let cn = poly::zcontent(&num);
        let cd = poly::zcontent(&den);
        let g = num_integer::gcd(cn, cd);
        if !g.is_one() {
            for c in &mut num {
                *c /= &g;
            }
            for c in &mut den {
                *c /= &g;
            }
        }
        if den.last().unwrap().is_negative() {
            num = poly::zneg(&num);
            den = poly::zneg(&den);
        }
        Frac { num, den }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Cyc(Vec<Rat>),
    Gen(Frac),
}

/// An element of the coefficient field, always in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar {
    field: ScalarField,
    repr: Repr,
}

/// Multiplicative order of a nonzero scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MulOrder {
    Finite(u64),
    Infinite,
}

impl MulOrder {
    pub fn finite(&self) -> Option<u64> {
        match self {
            MulOrder::Finite(n) => Some(*n),
            MulOrder::Infinite => None,
        }
    }
}

impl Scalar {
    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Cyc(v) => v.is_empty(),
            Repr::Gen(f) => f.num.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Cyc(v) => v.len() == 1 && v[0].is_one(),
            Repr::Gen(f) => {
                f.num.len() == 1 && f.num[0].is_one() && f.den.len() == 1 && f.den[0].is_one()
            }
        }
    }

    fn assert_same_field(&self, other: &Scalar) {
        assert!(
            self.field == other.field,
            "scalar field mismatch: {} vs {}",
            self.field,
            other.field
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.assert_same_field(other);
        let repr = match (&self.repr, &other.repr) {
            (Repr::Cyc(a), Repr::Cyc(b)) => Repr::Cyc(poly::add(a, b)),
            (Repr::Gen(a), Repr::Gen(b)) => {
                let num = poly::zadd(&poly::zmul(&a.num, &b.den), &poly::zmul(&b.num, &a.den));
                let den = poly::zmul(&a.den, &b.den);
                Repr::Gen(Frac::normalized(num, den))
            }
            _ => unreachable!("field equality guarantees matching representations"),
        };
        Scalar {
            field: self.field.clone(),
            repr,
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        let repr = match &self.repr {
            Repr::Cyc(v) => Repr::Cyc(poly::neg(v)),
            Repr::Gen(f) => Repr::Gen(Frac {
                num: poly::zneg(&f.num),
                den: f.den.clone(),
            }),
        };
        Scalar {
            field: self.field.clone(),
            repr,
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.assert_same_field(other);
        let repr = match (&self.repr, &other.repr) {
            (Repr::Cyc(a), Repr::Cyc(b)) => Repr::Cyc(self.field.reduce(poly::mul(a, b))),
            (Repr::Gen(a), Repr::Gen(b)) => Repr::Gen(Frac::normalized(
                poly::zmul(&a.num, &b.num),
                poly::zmul(&a.den, &b.den),
            )),
            _ => unreachable!(),
        };
        Scalar {
            field: self.field.clone(),
            repr,
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Cyc(v) => {
                let u = poly::invert_mod(v, &self.field.inner.modulus)
                    .expect("nonzero element of a field is invertible");
                Repr::Cyc(u)
            }
            Repr::Gen(f) => Repr::Gen(Frac::normalized(f.den.clone(), f.num.clone())),
        };
        Ok(Scalar {
            field: self.field.clone(),
            repr,
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Scalar, ScalarError> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut acc = self.field.one();
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Smallest positive k with self^k = 1, if any. In Q(zeta_N) every root
    /// of unity has order dividing lcm(2, N); in Q(q) only +-1 have finite
    /// order.
    pub fn multiplicative_order(&self) -> Result<MulOrder, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::ZeroOrder);
        }
        match self.field.inner.mode {
            FieldMode::Cyclotomic { order } => {
                let bound = num_integer::lcm(2, order);
                let mut acc = self.clone();
                for k in 1..=bound {
                    if acc.is_one() {
                        return Ok(MulOrder::Finite(k));
                    }
                    acc = acc.mul(self);
                }
                Ok(MulOrder::Infinite)
            }
            FieldMode::Generic => {
                if self.is_one() {
                    Ok(MulOrder::Finite(1))
                } else if self.neg().is_one() {
                    Ok(MulOrder::Finite(2))
                } else {
                    Ok(MulOrder::Infinite)
                }
            }
        }
    }

    /// The rational value, when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        match &self.repr {
            Repr::Cyc(v) => match v.len() {
                0 => Some(Rat::zero()),
                1 => Some(v[0].clone()),
                _ => None,
            },
            Repr::Gen(f) => {
                if f.num.len() <= 1 && f.den.len() == 1 {
                    let n = f.num.first().cloned().unwrap_or_else(BigInt::zero);
                    Some(Rat::new(n, f.den[0].clone()))
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Cyc(v) => write_rat_poly(f, v, "z"),
            Repr::Gen(frac) => {
                if frac.den.len() == 1 && frac.den[0].is_one() {
                    write_int_poly(f, &frac.num, "q")
                } else {
                    write!(f, "(")?;
                    write_int_poly(f, &frac.num, "q")?;
                    write!(f, ")/(")?;
                    write_int_poly(f, &frac.den, "q")?;
                    write!(f, ")")
                }
            }
        }
    }
}

fn write_rat_poly(f: &mut fmt::Formatter<'_>, v: &[Rat], var: &str) -> fmt::Result {
    if v.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
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
        if k == 0 {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{var}^{k}")?;
        } else {
            write!(f, "{mag}*{var}^{k}")?;
        }
    }
    Ok(())
}

fn write_int_poly(f: &mut fmt::Formatter<'_>, v: &[BigInt], var: &str) -> fmt::Result {
    let rats: Vec<Rat> = v.iter().map(|c| Rat::from_integer(c.clone())).collect();
    write_rat_poly(f, &rats, var)
}

// ---- literal parser ----

pub(crate) struct Lexer<'a> {
    bytes: &'a [u8],
    pub(crate) pos: usize,
}

impl<'a> Lexer<'a> {
    pub(crate) fn new(s: &'a str) -> Self {
        Lexer {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }
    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }
    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }
    pub(crate) fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }
    pub(crate) fn peek2(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos + 1).copied()
    }
    pub(crate) fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }
    pub(crate) fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
    pub(crate) fn integer(&mut self) -> Result<i64, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        s.parse::<i64>()
            .map_err(|_| ScalarError::Parse(format!("expected integer at byte {start}")))
    }
}

fn parse_sum(field: &ScalarField, p: &mut Lexer) -> Result<Scalar, ScalarError> {
    let mut acc = parse_product(field, p)?;
    loop {
        match p.peek() {
            Some(b'+') => {
                p.bump();
                acc = acc.add(&parse_product(field, p)?);
            }
            Some(b'-') => {
                p.bump();
                acc = acc.sub(&parse_product(field, p)?);
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_product(field: &ScalarField, p: &mut Lexer) -> Result<Scalar, ScalarError> {
    let mut negate = false;
    while p.peek() == Some(b'-') {
        p.bump();
        negate = !negate;
    }
    let mut acc = parse_atom(field, p)?;
    while p.eat(b'*') {
        acc = acc.mul(&parse_atom(field, p)?);
    }
    Ok(if negate { acc.neg() } else { acc })
}

pub(crate) fn parse_scalar_atom(
    field: &ScalarField,
    p: &mut Lexer,
) -> Result<Scalar, ScalarError> {
    parse_atom(field, p)
}

fn parse_atom(field: &ScalarField, p: &mut Lexer) -> Result<Scalar, ScalarError> {
    match p.peek() {
        Some(b'(') => {
            p.bump();
            let v = parse_sum(field, p)?;
            if !p.eat(b')') {
                return Err(ScalarError::Parse("expected ')'".into()));
            }
            Ok(v)
        }
        Some(b'z') => {
            p.bump();
            let k = if p.eat(b'^') { p.integer()? } else { 1 };
            field.zeta_power(k)
        }
        Some(b'q') => {
            p.bump();
            let k = if p.eat(b'^') { p.integer()? } else { 1 };
            field.q_power(k)
        }
        Some(c) if c.is_ascii_digit() || c == b'-' => {
            let n = p.integer()?;
            if p.eat(b'/') {
                let d = p.integer()?;
                if d == 0 {
                    return Err(ScalarError::DivisionByZero);
                }
                Ok(field.from_rational(Rat::new(BigInt::from(n), BigInt::from(d))))
            } else {
                Ok(field.from_integer(n))
            }
        }
        other => Err(ScalarError::Parse(format!(
            "unexpected token {:?}",
            other.map(|c| c as char)
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta4_squares_to_minus_one() {
        let f = ScalarField::cyclotomic(4);
        let z = f.zeta().unwrap();
        assert_eq!(z.mul(&z), f.from_integer(-1));
    }

    #[test]
    fn zeta2_doubles_to_minus_two() {
        let f = ScalarField::cyclotomic(2);
        let z = f.zeta().unwrap();
        assert_eq!(z.add(&z), f.from_integer(-2));
    }

    #[test]
    fn generic_cancellation() {
        // (q - 1) / (q^2 - 1) = 1 / (q + 1)
        let f = ScalarField::generic();
        let q = f.q_power(1).unwrap();
        let one = f.one();
        let lhs = q.sub(&one).div(&q.mul(&q).sub(&one)).unwrap();
        let rhs = one.div(&q.add(&one)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn zeta_power_reduction() {
        let f = ScalarField::cyclotomic(4);
        assert_eq!(f.zeta_power(2).unwrap(), f.from_integer(-1));
        let f3 = ScalarField::cyclotomic(3);
        assert_eq!(f3.zeta_power(3).unwrap(), f3.one());
        let f6 = ScalarField::cyclotomic(6);
        assert_eq!(f6.zeta_power(-1).unwrap(), f6.zeta_power(5).unwrap());
    }

    #[test]
    fn multiplicative_orders() {
        let f = ScalarField::cyclotomic(4);
        assert_eq!(
            f.zeta().unwrap().multiplicative_order().unwrap(),
            MulOrder::Finite(4)
        );
        assert_eq!(f.one().multiplicative_order().unwrap(), MulOrder::Finite(1));
        assert_eq!(
            f.from_integer(-1).multiplicative_order().unwrap(),
            MulOrder::Finite(2)
        );
        assert_eq!(
            f.from_integer(2).multiplicative_order().unwrap(),
            MulOrder::Infinite
        );
        let g = ScalarField::generic();
        assert_eq!(
            g.q_power(1).unwrap().multiplicative_order().unwrap(),
            MulOrder::Infinite
        );
        assert!(f.zero().multiplicative_order().is_err());
    }

    #[test]
    fn cyclotomic_polynomial_kills_zeta() {
        // Phi_N(zeta) = 0, exactly.
        for n in [2u64, 3, 4, 5, 6, 8, 12] {
            let f = ScalarField::cyclotomic(n);
            let z = f.zeta().unwrap();
            let phi = poly::cyclotomic(n);
            let mut acc = f.zero();
            for (k, c) in phi.iter().enumerate() {
                acc = acc.add(&f.from_rational(c.clone()).mul(&z.pow(k as i64).unwrap()));
            }
            assert!(acc.is_zero(), "Phi_{n}(zeta) != 0");
        }
    }

    #[test]
    fn parse_literals() {
        let f = ScalarField::cyclotomic(6);
        assert_eq!(f.parse("-3/2").unwrap(), f.from_rational(Rat::new(BigInt::from(-3), BigInt::from(2))));
        assert_eq!(f.parse("z^2 * z^4").unwrap(), f.one());
        assert_eq!(
            f.parse("1/2 * z + 1/2 * z").unwrap(),
            f.zeta().unwrap()
        );
        assert_eq!(f.parse("2 - 2").unwrap(), f.zero());
        let g = ScalarField::generic();
        assert_eq!(g.parse("q^2 * q^-2").unwrap(), g.one());
        assert!(f.parse("q").is_err());
        assert!(f.parse("1 +").is_err());
    }

    #[test]
    fn display_roundtrip() {
        let f = ScalarField::cyclotomic(5);
        let x = f
            .parse("1/3 - 2*z^2 + z^3")
            .unwrap();
        let shown = x.to_string();
        assert_eq!(f.parse(&shown).unwrap(), x);
    }

    #[test]
    fn inverse_in_cyclotomic_field() {
        let f = ScalarField::cyclotomic(8);
        let x = f.parse("1 + z - 1/2 * z^3").unwrap();
        let y = x.inv().unwrap();
        assert!(x.mul(&y).is_one());
        assert!(f.zero().inv().is_err());
    }
}
