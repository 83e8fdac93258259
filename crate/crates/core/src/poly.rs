//! Dense univariate polynomial arithmetic over exact rationals and integers.
//!
//! Internal support for the scalar field: cyclotomic polynomials, reduction
//! modulo an irreducible modulus, and normalized integer-polynomial fractions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type Rat = BigRational;

/// Coefficients in ascending degree order; the zero polynomial is empty.
pub(crate) fn trim(v: &mut Vec<Rat>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|c| -c.clone()).collect()
}

pub(crate) fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    add(a, &neg(b))
}

pub(crate) fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    trim(&mut out);
    out
}

/// Euclidean division; panics if `b` is zero.
pub(crate) fn divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quo = vec![Rat::zero(); rem.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let coef = rem.last().unwrap() / &lead;
        quo[shift] = coef.clone();
        for (i, c) in b.iter().enumerate() {
            let v = rem[shift + i].clone() - &coef * c;
            rem[shift + i] = v;
        }
        trim(&mut rem);
        if rem.is_empty() {
            break;
        }
        if rem.len() < b.len() {
            break;
        }
    }
    trim(&mut quo);
    (quo, rem)
}

pub(crate) fn rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    divmod(a, b).1
}

/// Monic greatest common divisor via the Euclidean algorithm.
pub(crate) fn gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        for c in &mut x {
            *c /= &lead;
        }
    }
    x
}

/// Solves u*a + v*m = 1 for coprime a, m and returns u reduced mod m.
/// Used to invert nonzero elements modulo an irreducible modulus.
pub(crate) fn invert_mod(a: &[Rat], modulus: &[Rat]) -> Option<Vec<Rat>> {
    let mut r0 = modulus.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<Rat> = Vec::new();
    let mut s1: Vec<Rat> = vec![Rat::one()];
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    // r0 is the gcd; invertible iff it is a nonzero constant.
    if r0.len() != 1 {
        return None;
    }
    let inv_lead = Rat::one() / &r0[0];
    let mut out: Vec<Rat> = s0.iter().map(|c| c * &inv_lead).collect();
    out = rem(&out, modulus);
    Some(out)
}

/// The N-th cyclotomic polynomial, computed by dividing x^N - 1 by the
/// cyclotomic polynomials of the proper divisors of N.
pub(crate) fn cyclotomic(n: u64) -> Vec<Rat> {
    assert!(n >= 1);
    let mut num = vec![Rat::zero(); n as usize + 1];
    num[0] = -Rat::one();
    num[n as usize] = Rat::one();
    let mut den = vec![Rat::one()];
    for d in 1..n {
        if n % d == 0 {
            den = mul(&den, &cyclotomic(d));
        }
    }
    let (q, r) = divmod(&num, &den);
    debug_assert!(r.is_empty());
    q
}

// ---- integer polynomials (for the rational-function field) ----

pub(crate) fn ztrim(v: &mut Vec<BigInt>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn zcontent(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = num_integer::gcd(g, c.clone());
    }
    g
}

pub(crate) fn to_rat(a: &[BigInt]) -> Vec<Rat> {
    a.iter().map(|c| Rat::from_integer(c.clone())).collect()
}

/// Clears denominators and divides out the content, preserving sign of the
/// leading coefficient.
pub(crate) fn primitive_part(a: &[Rat]) -> Vec<BigInt> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut lcm = BigInt::one();
    for c in a {
        lcm = num_integer::lcm(lcm, c.denom().clone());
    }
    let mut ints: Vec<BigInt> = a.iter().map(|c| c.numer() * &lcm / c.denom()).collect();
    let content = zcontent(&ints);
    if !content.is_zero() {
        for c in &mut ints {
            *c /= &content;
        }
    }
    ints
}

pub(crate) fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    ztrim(&mut out);
    out
}

pub(crate) fn zadd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    ztrim(&mut out);
    out
}

pub(crate) fn zneg(a: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|c| -c.clone()).collect()
}

/// Primitive gcd of integer polynomials, with positive leading coefficient.
pub(crate) fn zgcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let g = gcd(&to_rat(a), &to_rat(b));
    let mut p = primitive_part(&g);
    if p.last().map_or(false, |c| c.is_negative()) {
        p = zneg(&p);
    }
    p
}

/// Exact division; panics if `b` does not divide `a`.
pub(crate) fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (q, r) = divmod(&to_rat(a), &to_rat(b));
    assert!(r.is_empty(), "inexact integer polynomial division");
    q.iter()
        .map(|c| {
            assert!(c.denom().is_one());
            c.numer().clone()
        })
        .collect()
}
