//! The crossed product of a polynomial algebra with a finite diagonal group,
//! twisted by a two-cocycle: basis (monomial, group element), multiplication
//! (r g)(s h) = alpha(g,h) r g(s) (gh), unit inverses, and the inner
//! conjugation action.
//!
//! Elements are sparse finite sums with a deterministic term order:
//! graded-lex on monomial exponents, then lex on group exponents. Nothing is
//! ever truncated; optional per-variable nilpotency bounds realize quotients
//! by x_i^{m_i}.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::group::{GroupElement, GroupSpec, TwoCocycle};
use crate::scalar::{Scalar, ScalarError, ScalarField};

/// Exponent vector of a commutative monomial. Ordered graded-lex so that
/// element printouts and sweeps are deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    /// Lowers the exponent of variable i, or returns None at zero.
    pub fn lower(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        Some(Monomial { exps })
    }

    pub fn raise(&self, i: usize, by: u32) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] += by;
        Monomial { exps }
    }

    /// All monomials in n variables of total degree <= d, graded-lex order.
    pub fn all_up_to_degree(n: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        collect_monomials(n, d, 0, &mut cur, &mut out);
        out.sort();
        out
    }
}

fn collect_monomials(n: usize, left: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if pos == n {
        out.push(Monomial { exps: cur.clone() });
        return;
    }
    for e in 0..=left {
        cur[pos] = e;
        collect_monomials(n, left - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// The algebra data shared by all elements: group, cocycle, and optional
/// nilpotency bounds (0 = free variable).
#[derive(Debug, Clone, PartialEq)]
pub struct CrossedAlgebra {
    group: GroupSpec,
    cocycle: TwoCocycle,
    bounds: Vec<u32>,
}

pub type AlgebraRef = Arc<CrossedAlgebra>;

impl CrossedAlgebra {
    pub fn new(group: GroupSpec, cocycle: TwoCocycle, bounds: Vec<u32>) -> AlgebraRef {
        assert_eq!(bounds.len(), group.dim(), "one bound per variable");
        Arc::new(CrossedAlgebra {
            group,
            cocycle,
            bounds,
        })
    }

    pub fn free(group: GroupSpec, cocycle: TwoCocycle) -> AlgebraRef {
        let n = group.dim();
        Self::new(group, cocycle, vec![0; n])
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn cocycle(&self) -> &TwoCocycle {
        &self.cocycle
    }

    pub fn field(&self) -> &ScalarField {
        self.group.field()
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn is_free(&self) -> bool {
        self.bounds.iter().all(|&b| b == 0)
    }

    /// A monomial is zero in the quotient when any exponent reaches its
    /// nilpotency bound.
    fn monomial_survives(&self, m: &Monomial) -> bool {
        self.bounds
            .iter()
            .zip(m.exponents())
            .all(|(&b, &e)| b == 0 || e < b)
    }
}

/// Element of the crossed product: finite sum of (monomial, group) basis
/// pairs with nonzero scalar coefficients.
#[derive(Debug, Clone)]
pub struct CPElement {
    algebra: AlgebraRef,
    terms: BTreeMap<(Monomial, GroupElement), Scalar>,
}

impl PartialEq for CPElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}
impl Eq for CPElement {}

impl CPElement {
    pub fn zero(algebra: &AlgebraRef) -> Self {
        CPElement {
            algebra: algebra.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(algebra: &AlgebraRef) -> Self {
        Self::group_unit(algebra, &algebra.group().identity())
    }

    /// The basis element 1 * gbar.
    pub fn group_unit(algebra: &AlgebraRef, g: &GroupElement) -> Self {
        Self::term(
            algebra,
            Monomial::one(algebra.dim()),
            g.clone(),
            algebra.field().one(),
        )
    }

    pub fn term(algebra: &AlgebraRef, m: Monomial, g: GroupElement, c: Scalar) -> Self {
        let mut out = Self::zero(algebra);
        out.add_term(m, g, c);
        out
    }

    /// The coordinate x_i (0-based) with trivial group part.
    pub fn variable(algebra: &AlgebraRef, i: usize) -> Self {
        Self::term(
            algebra,
            Monomial::var(algebra.dim(), i),
            algebra.group().identity(),
            algebra.field().one(),
        )
    }

    pub fn monomial(algebra: &AlgebraRef, m: Monomial) -> Self {
        Self::term(
            algebra,
            m,
            algebra.group().identity(),
            algebra.field().one(),
        )
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, GroupElement), &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum total degree among the terms; zero for the zero element.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, g: GroupElement, c: Scalar) {
        if c.is_zero() || !self.algebra.monomial_survives(&m) {
            return;
        }
        match self.terms.entry((m, g)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn assert_same_algebra(&self, other: &CPElement) {
        assert!(
            Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra,
            "crossed-product algebra mismatch"
        );
    }

    pub fn add(&self, other: &CPElement) -> CPElement {
        self.assert_same_algebra(other);
        let mut out = self.clone();
        for ((m, g), c) in &other.terms {
            out.add_term(m.clone(), g.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CPElement) -> CPElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CPElement {
        CPElement {
            algebra: self.algebra.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> CPElement {
        if s.is_zero() {
            return Self::zero(&self.algebra);
        }
        CPElement {
            algebra: self.algebra.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.mul(s)))
                .collect(),
        }
    }

    /// Crossed-product multiplication:
    /// (r g)(s h) = alpha(g,h) r g(s) (gh), extended bilinearly. The group
    /// acts on monomials through its character values.
    pub fn mul(&self, other: &CPElement) -> CPElement {
        self.assert_same_algebra(other);
        let alg = &self.algebra;
        let group = alg.group();
        let mut out = Self::zero(alg);
        for ((m1, g1), c1) in &self.terms {
            for ((m2, g2), c2) in &other.terms {
                let twist = alg.cocycle().value(group, g1, g2);
                let act = group.monomial_eigenvalue(g1, m2.exponents());
                let coef = c1.mul(c2).mul(&twist).mul(&act);
                out.add_term(m1.mul(m2), group.mul(g1, g2), coef);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> CPElement {
        let mut acc = Self::one(&self.algebra);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// The diagonal action of h on the polynomial part of every term; group
    /// parts are untouched. This is the module action of G on S(V), not the
    /// inner conjugation.
    pub fn act_diagonal(&self, h: &GroupElement) -> CPElement {
        let group = self.algebra.group();
        CPElement {
            algebra: self.algebra.clone(),
            terms: self
                .terms
                .iter()
                .map(|((m, g), c)| {
                    let eig = group.monomial_eigenvalue(h, m.exponents());
                    ((m.clone(), g.clone()), c.mul(&eig))
                })
                .collect(),
        }
    }
}

/// (gbar)^{-1} = alpha(g, g^{-1})^{-1} (g^{-1})bar, the two-sided inverse of
/// a group basis element.
pub fn group_unit_inverse(algebra: &AlgebraRef, g: &GroupElement) -> CPElement {
    let group = algebra.group();
    let gi = group.inverse(g);
    let a = algebra.cocycle().value(group, g, &gi);
    CPElement::term(
        algebra,
        Monomial::one(algebra.dim()),
        gi,
        a.inv().expect("cocycle values are nonzero"),
    )
}

/// The inner action g(a) = gbar a (gbar)^{-1}.
pub fn conjugate(algebra: &AlgebraRef, g: &GroupElement, a: &CPElement) -> CPElement {
    let gbar = CPElement::group_unit(algebra, g);
    gbar.mul(a).mul(&group_unit_inverse(algebra, g))
}

/// All basis pairs (monomial, group element) with monomial degree <= d,
/// respecting nilpotency bounds.
pub fn basis_up_to_degree(algebra: &AlgebraRef, d: u32) -> Vec<(Monomial, GroupElement)> {
    let mut out = Vec::new();
    for m in Monomial::all_up_to_degree(algebra.dim(), d) {
        if !algebra.monomial_survives(&m) {
            continue;
        }
        for g in algebra.group().elements() {
            out.push((m.clone(), g));
        }
    }
    out
}

impl fmt::Display for CPElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((m, g), c) in &self.terms {
            let (neg, mag) = match c.as_rational() {
                Some(r) if r < num_rational::BigRational::from_integer(0.into()) => {
                    (true, c.neg())
                }
                _ => (false, c.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coef_str = if mag.is_one() {
                None
            } else {
                let s = mag.to_string();
                Some(if s.contains(' ') { format!("({s})") } else { s })
            };
            let mono_str = if m.is_one() {
                None
            } else {
                let mut parts = Vec::new();
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e == 1 {
                        parts.push(format!("x{}", i + 1));
                    } else if e > 1 {
                        parts.push(format!("x{}^{}", i + 1, e));
                    }
                }
                Some(parts.join(" "))
            };
            let group_str = if g.is_identity() {
                None
            } else {
                Some(g.to_string())
            };
            let mut pieces: Vec<String> = Vec::new();
            if let Some(s) = coef_str {
                pieces.push(s);
            }
            if let Some(s) = mono_str {
                pieces.push(s);
            }
            if let Some(s) = group_str {
                pieces.push(s);
            }
            if pieces.is_empty() {
                write!(f, "1")?;
            } else {
                write!(f, "{}", pieces.join(" * "))?;
            }
        }
        Ok(())
    }
}

/// Parses the element literal grammar: terms `coef * x1^e1 x2^e2 * g(a,b)`
/// joined by `+`/`-`; the group tag may be omitted for the identity, the
/// coefficient may be any scalar literal factor (parenthesize sums).
pub fn parse_element(algebra: &AlgebraRef, text: &str) -> Result<CPElement, ScalarError> {
    let mut lx = crate::scalar::Lexer::new(text);
    let mut out = CPElement::zero(algebra);
    let mut sign_negative = false;
    loop {
        let term = parse_term(algebra, &mut lx)?;
        out = if sign_negative {
            out.sub(&term)
        } else {
            out.add(&term)
        };
        lx.skip_ws();
        match lx.peek() {
            None => break,
            Some(b'+') => {
                lx.bump();
                sign_negative = false;
            }
            Some(b'-') => {
                lx.bump();
                sign_negative = true;
            }
            Some(c) => {
                return Err(ScalarError::Parse(format!(
                    "unexpected {:?} in element literal",
                    c as char
                )))
            }
        }
    }
    Ok(out)
}

fn parse_term(algebra: &AlgebraRef, lx: &mut crate::scalar::Lexer) -> Result<CPElement, ScalarError> {
    let field = algebra.field().clone();
    let n = algebra.dim();
    let mut coef = field.one();
    let mut mono = Monomial::one(n);
    let mut gelt = algebra.group().identity();
    let mut negate = false;
    while lx.peek() == Some(b'-') {
        lx.bump();
        negate = !negate;
    }
    let mut want_chunk = true;
    while want_chunk {
        match lx.peek() {
            Some(b'x') => {
                // a run of variable powers: x1^2 x3 ...
                while lx.peek() == Some(b'x') {
                    lx.bump();
                    let idx = lx.integer()?;
                    if idx < 1 || idx as usize > n {
                        return Err(ScalarError::Parse(format!(
                            "variable x{idx} out of range 1..={n}"
                        )));
                    }
                    let e = if lx.eat(b'^') { lx.integer()? } else { 1 };
                    if e < 0 {
                        return Err(ScalarError::Parse("negative variable exponent".into()));
                    }
                    mono = mono.raise(idx as usize - 1, e as u32);
                }
            }
            Some(b'g') if lx.peek2() == Some(b'(') => {
                lx.bump();
                lx.bump();
                let mut exps = Vec::new();
                if !lx.eat(b')') {
                    loop {
                        exps.push(lx.integer()?);
                        if lx.eat(b')') {
                            break;
                        }
                        if !lx.eat(b',') {
                            return Err(ScalarError::Parse("expected ',' or ')' in group tag".into()));
                        }
                    }
                }
                if exps.len() != algebra.group().generator_count() {
                    return Err(ScalarError::Parse(format!(
                        "group tag has {} exponents, expected {}",
                        exps.len(),
                        algebra.group().generator_count()
                    )));
                }
                gelt = algebra.group().mul(&gelt, &algebra.group().element(&exps));
            }
            _ => {
                let s = crate::scalar::parse_scalar_atom(&field, lx)?;
                coef = coef.mul(&s);
            }
        }
        want_chunk = lx.eat(b'*');
        if !want_chunk {
            // variable runs may follow without a '*' (e.g. "2 x1" is not in
            // the grammar, but "x1 x2" is); stop unless another chunk starts
            match lx.peek() {
                Some(b'x') | Some(b'g') => {
                    want_chunk = true;
                }
                _ => {}
            }
        }
    }
    if negate {
        coef = coef.neg();
    }
    Ok(CPElement::term(algebra, mono, gelt, coef))
}
