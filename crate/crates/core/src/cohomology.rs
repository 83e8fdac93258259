//! Bar and Koszul complexes for the polynomial algebra, the explicit chain
//! maps between them in degrees one and two, conversion of cohomology
//! classes to Hochschild two-cocycles on the crossed product, the
//! invariance computation for those classes, and the degree-two component
//! counts with their necessary-condition filter (determinant one,
//! codimension of the fixed space in {0, 2}).
//!
//! Sign conventions: wedge indices are kept strictly increasing with
//! coefficient +1; the degree-two chain map is stated in exactly that
//! convention. For a class whose coordinate pair is reversed, the chain map
//! is computed in the relabeled variable order that lists the pair first,
//! which keeps the operator identity on the nose.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::action::DeformFactor;
use crate::check::{CheckResult, Counterexample};
use crate::crossed::{AlgebraRef, CPElement, Monomial};
use crate::group::{GroupElement, GroupSpec, TwoCocycle};
use crate::scalar::{Scalar, ScalarField};

#[derive(Debug, Error)]
pub enum CohomologyError {
    #[error("class needs codim V^g = 2 with the non-fixed coordinates equal to the pair; found fixed set {0:?}")]
    BadCodimension(Vec<usize>),
    #[error("class needs det(g) = 1 on V, found {0}")]
    BadDeterminant(Scalar),
    #[error("class coefficient must be a nonzero polynomial in the fixed coordinates with trivial group part")]
    BadCoefficientSupport,
    #[error("class coefficient is not invariant: {0}")]
    NotInvariant(Counterexample),
}

/// Chain in the bar resolution: degree k means k + 2 monomial slots, the
/// outer two being the bimodule coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarChain {
    field: ScalarField,
    n: usize,
    degree: usize,
    terms: BTreeMap<Vec<Monomial>, Scalar>,
}

impl BarChain {
    pub fn zero(field: &ScalarField, n: usize, degree: usize) -> Self {
        BarChain {
            field: field.clone(),
            n,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A single tensor with unit outer slots: 1 (x) m_1 (x) ... (x) m_k (x) 1.
    pub fn generator(field: &ScalarField, n: usize, inner: Vec<Monomial>) -> Self {
        let degree = inner.len();
        let mut slots = Vec::with_capacity(degree + 2);
        slots.push(Monomial::one(n));
        slots.extend(inner);
        slots.push(Monomial::one(n));
        let mut c = Self::zero(field, n, degree);
        c.add_term(slots, field.one());
        c
    }

    pub fn term(field: &ScalarField, n: usize, slots: Vec<Monomial>, coef: Scalar) -> Self {
        assert!(slots.len() >= 2);
        let degree = slots.len() - 2;
        let mut c = Self::zero(field, n, degree);
        c.add_term(slots, coef);
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, slots: Vec<Monomial>, coef: Scalar) {
        if coef.is_zero() {
            return;
        }
        debug_assert_eq!(slots.len(), self.degree + 2);
        match self.terms.entry(slots) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&coef);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &BarChain) -> BarChain {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &BarChain) -> BarChain {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }
}

impl fmt::Display for BarChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (slots, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let body: Vec<String> = slots.iter().map(|m| m.to_string()).collect();
            write!(f, "({c}) {}", body.join(" (x) "))?;
        }
        Ok(())
    }
}

/// Chain in the Koszul resolution: strictly increasing wedge indices and
/// the two bimodule slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulChain {
    field: ScalarField,
    n: usize,
    degree: usize,
    terms: BTreeMap<(Vec<usize>, Monomial, Monomial), Scalar>,
}

impl KoszulChain {
    pub fn zero(field: &ScalarField, n: usize, degree: usize) -> Self {
        KoszulChain {
            field: field.clone(),
            n,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn generator(field: &ScalarField, n: usize, wedge: Vec<usize>) -> Self {
        let degree = wedge.len();
        let mut c = Self::zero(field, n, degree);
        c.add_term(wedge, Monomial::one(n), Monomial::one(n), field.one());
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<usize>, Monomial, Monomial), &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds a term with an arbitrary (not necessarily sorted) wedge,
    /// normalizing to strictly increasing indices with the sign of the
    /// permutation; repeated indices vanish.
    pub fn add_term(&mut self, wedge: Vec<usize>, left: Monomial, right: Monomial, coef: Scalar) {
        if coef.is_zero() {
            return;
        }
        debug_assert_eq!(wedge.len(), self.degree);
        let mut wedge = wedge;
        let mut sign_flip = false;
        // insertion sort, tracking transpositions
        for i in 1..wedge.len() {
            let mut j = i;
            while j > 0 && wedge[j - 1] > wedge[j] {
                wedge.swap(j - 1, j);
                sign_flip = !sign_flip;
                j -= 1;
            }
        }
        if wedge.windows(2).any(|w| w[0] == w[1]) {
            return;
        }
        let coef = if sign_flip { coef.neg() } else { coef };
        match self.terms.entry((wedge, left, right)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&coef);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &KoszulChain) -> KoszulChain {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for ((w, l, r), c) in &other.terms {
            out.add_term(w.clone(), l.clone(), r.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &KoszulChain) -> KoszulChain {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for ((w, l, r), c) in &other.terms {
            out.add_term(w.clone(), l.clone(), r.clone(), c.neg());
        }
        out
    }
}

impl fmt::Display for KoszulChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((w, l, r), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let wedge: Vec<String> = w.iter().map(|i| format!("e{}", i + 1)).collect();
            write!(f, "({c}) {} (x) {l} (x) {r}", wedge.join("^"))?;
        }
        Ok(())
    }
}

/// The alternating contraction: merge adjacent slots j, j+1 with sign
/// (-1)^j, for j = 0..=degree.
pub fn bar_differential(c: &BarChain) -> BarChain {
    assert!(c.degree >= 1, "the bar differential needs degree >= 1");
    let mut out = BarChain::zero(&c.field, c.n, c.degree - 1);
    for (slots, coef) in &c.terms {
        for j in 0..=c.degree {
            let mut merged = Vec::with_capacity(slots.len() - 1);
            merged.extend_from_slice(&slots[..j]);
            merged.push(slots[j].mul(&slots[j + 1]));
            merged.extend_from_slice(&slots[j + 2..]);
            let signed = if j % 2 == 0 { coef.clone() } else { coef.neg() };
            out.add_term(merged, signed);
        }
    }
    out
}

/// Contracts each wedge slot against x (x) 1 - 1 (x) x with alternating
/// signs, extended bilinearly over the bimodule coefficients.
pub fn koszul_differential(c: &KoszulChain) -> KoszulChain {
    assert!(c.degree >= 1, "the Koszul differential needs degree >= 1");
    let mut out = KoszulChain::zero(&c.field, c.n, c.degree - 1);
    for ((wedge, left, right), coef) in &c.terms {
        for (pos, &var) in wedge.iter().enumerate() {
            let mut rest = wedge.clone();
            rest.remove(pos);
            let signed = if pos % 2 == 0 { coef.clone() } else { coef.neg() };
            out.add_term(rest.clone(), left.raise(var, 1), right.clone(), signed.clone());
            out.add_term(rest, left.clone(), right.raise(var, 1), signed.neg());
        }
    }
    out
}

/// Degree-one chain map into the Koszul complex, extended bilinearly over
/// the outer slots.
pub fn psi1(c: &BarChain) -> KoszulChain {
    assert_eq!(c.degree, 1);
    let mut out = KoszulChain::zero(&c.field, c.n, 1);
    for (slots, coef) in &c.terms {
        let (a0, u, a1) = (&slots[0], &slots[1], &slots[2]);
        for i in 0..c.n {
            let ki = u.exponent(i);
            for p in 1..=ki {
                let mut left = vec![0u32; c.n];
                let mut right = vec![0u32; c.n];
                for t in 0..c.n {
                    let kt = u.exponent(t);
                    if t < i {
                        right[t] = kt;
                    } else if t == i {
                        left[t] = ki - p;
                        right[t] = p - 1;
                    } else {
                        left[t] = kt;
                    }
                }
                out.add_term(
                    vec![i],
                    a0.mul(&Monomial::new(left)),
                    Monomial::new(right).mul(a1),
                    coef.clone(),
                );
            }
        }
    }
    out
}

/// Degree-two chain map, in the standard coordinate order.
pub fn psi2(c: &BarChain) -> KoszulChain {
    assert_eq!(c.degree, 2);
    let mut out = KoszulChain::zero(&c.field, c.n, 2);
    for (slots, coef) in &c.terms {
        let (a0, u, v, a1) = (&slots[0], &slots[1], &slots[2], &slots[3]);
        for i in 0..c.n {
            let ki = u.exponent(i);
            if ki == 0 {
                continue;
            }
            for j in (i + 1)..c.n {
                let mj = v.exponent(j);
                for r in 1..=mj {
                    for p in 1..=ki {
                        let (left, right) = psi2_sides(c.n, u, v, i, j, p, r);
                        out.add_term(
                            vec![i, j],
                            a0.mul(&left),
                            right.mul(a1),
                            coef.clone(),
                        );
                    }
                }
            }
        }
    }
    out
}

/// The two bimodule factors of one chain-map summand, for coordinates
/// playing the first and second roles (any relative order in t):
/// left picks up k_t + m_t on coordinates after the pair, right picks up
/// k_t + m_t before it.
fn psi2_sides(
    n: usize,
    u: &Monomial,
    v: &Monomial,
    i: usize,
    j: usize,
    p: u32,
    r: u32,
) -> (Monomial, Monomial) {
    let mut left = vec![0u32; n];
    let mut right = vec![0u32; n];
    for t in 0..n {
        let kt = u.exponent(t);
        let mt = v.exponent(t);
        if t == i {
            left[t] = kt - p;
            right[t] = mt + p - 1;
        } else if t == j {
            left[t] = kt + mt - r;
            right[t] = r - 1;
        } else if t < i {
            right[t] = kt + mt;
        } else if t > j {
            left[t] = kt + mt;
        } else {
            // strictly between the pair
            left[t] = kt;
            right[t] = mt;
        }
    }
    (Monomial::new(left), Monomial::new(right))
}

/// Converts a degree-zero bar chain (two slots) to the degree-zero Koszul
/// chain it is identified with.
pub fn koszul_from_bar0(c: &BarChain) -> KoszulChain {
    assert_eq!(c.degree, 0);
    let mut out = KoszulChain::zero(&c.field, c.n, 0);
    for (slots, coef) in &c.terms {
        out.add_term(Vec::new(), slots[0].clone(), slots[1].clone(), coef.clone());
    }
    out
}

/// The chain-map squares: d1 (psi1) = delta1 and d2 (psi2) = psi1 (delta2),
/// verified on all generator tensors with inner slots of degree <= d.
pub fn check_chain_map(field: &ScalarField, n: usize, d: u32) -> CheckResult {
    let monos = Monomial::all_up_to_degree(n, d);
    for m in &monos {
        let c = BarChain::generator(field, n, vec![m.clone()]);
        let lhs = koszul_differential(&psi1(&c));
        let rhs = koszul_from_bar0(&bar_differential(&c));
        if lhs != rhs {
            return Err(Counterexample::new(
                format!("degree-one chain square at {m}"),
                lhs,
                rhs,
            ));
        }
    }
    for m1 in &monos {
        for m2 in &monos {
            let c = BarChain::generator(field, n, vec![m1.clone(), m2.clone()]);
            let lhs = koszul_differential(&psi2(&c));
            let rhs = psi1(&bar_differential(&c));
            if lhs != rhs {
                return Err(Counterexample::new(
                    format!("degree-two chain square at ({m1}, {m2})"),
                    lhs,
                    rhs,
                ));
            }
        }
    }
    Ok(())
}

/// A degree-two class on the crossed product: the dual wedge of the two
/// non-fixed coordinates of g (in the given role order) tensored with a
/// polynomial coefficient s and the group component gbar.
#[derive(Debug, Clone)]
pub struct CohomologyClass {
    algebra: AlgebraRef,
    g: GroupElement,
    pair: (usize, usize),
    s: CPElement,
}

impl CohomologyClass {
    pub fn new(
        algebra: &AlgebraRef,
        g: GroupElement,
        pair: (usize, usize),
        s: CPElement,
    ) -> Result<Self, CohomologyError> {
        let group = algebra.group();
        let fixed = group.fixed_coordinates(&g);
        let non_fixed: Vec<usize> = (0..group.dim()).filter(|i| !fixed.contains(i)).collect();
        let mut pair_sorted = [pair.0, pair.1];
        pair_sorted.sort();
        if non_fixed != pair_sorted {
            return Err(CohomologyError::BadCodimension(fixed));
        }
        let det = group.determinant(&g);
        if !det.is_one() {
            return Err(CohomologyError::BadDeterminant(det));
        }
        if s.is_zero() {
            return Err(CohomologyError::BadCoefficientSupport);
        }
        for ((m, h), _) in s.terms() {
            if !h.is_identity() || m.exponent(pair.0) != 0 || m.exponent(pair.1) != 0 {
                return Err(CohomologyError::BadCoefficientSupport);
            }
        }
        let class = CohomologyClass {
            algebra: algebra.clone(),
            g,
            pair,
            s,
        };
        check_invariance(&class).map_err(CohomologyError::NotInvariant)?;
        Ok(class)
    }

    /// Builds the class attached to a deformation factor (same g, pair,
    /// and coefficient).
    pub fn from_factor(factor: &DeformFactor) -> Result<Self, CohomologyError> {
        Self::new(
            factor.algebra(),
            factor.group_element().clone(),
            factor.pair(),
            factor.semi_invariant().clone(),
        )
    }

    pub fn group_element(&self) -> &GroupElement {
        &self.g
    }

    pub fn pair(&self) -> (usize, usize) {
        self.pair
    }

    pub fn coefficient(&self) -> &CPElement {
        &self.s
    }

    /// The represented cochain value on a pair of basis-supported
    /// elements: apply the degree-two chain map to
    /// 1 (x) p1 (x) h(p2) (x) 1 in the variable order that lists the pair
    /// first, read off the pair's wedge coefficient, close it around
    /// s gbar, and right-multiply by the group parts.
    pub fn cocycle_value(&self, a: &CPElement, b: &CPElement) -> CPElement {
        let alg = &self.algebra;
        let group = alg.group();
        let (u, v) = self.pair;
        let n = alg.dim();
        let s_gbar = self.s.mul(&CPElement::group_unit(alg, &self.g));
        let mut out = CPElement::zero(alg);
        for ((ma, ha), ca) in a.terms() {
            for ((mb, hb), cb) in b.terms() {
                let chi = group.monomial_eigenvalue(ha, mb.exponents());
                let coef = ca.mul(cb).mul(&chi);
                let ku = ma.exponent(u);
                let mv = mb.exponent(v);
                let mut acc = CPElement::zero(alg);
                for r in 1..=mv {
                    for p in 1..=ku {
                        let (left, right) = psi2_sides(n, ma, mb, u, v, p, r);
                        let term = CPElement::monomial(alg, left)
                            .mul(&s_gbar)
                            .mul(&CPElement::monomial(alg, right));
                        acc = acc.add(&term);
                    }
                }
                let closed = acc
                    .mul(&CPElement::group_unit(alg, ha))
                    .mul(&CPElement::group_unit(alg, hb));
                out = out.add(&closed.scale(&coef));
            }
        }
        out
    }
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(e{}^e{})* (x) ({}) {}",
            self.pair.0 + 1,
            self.pair.1 + 1,
            self.s,
            self.g
        )
    }
}

/// The group action on the class: the dual wedge contributes
/// x_u(h^{-1}) x_v(h^{-1}), the coefficient transforms by the diagonal
/// action, and the group component is conjugated inside the crossed
/// product. The class must come back unchanged for every h.
pub fn check_invariance(class: &CohomologyClass) -> CheckResult {
    let alg = &class.algebra;
    let group = alg.group();
    let (u, v) = class.pair;
    let reference = class
        .s
        .mul(&CPElement::group_unit(alg, &class.g));
    for h in group.elements() {
        let hinv = group.inverse(&h);
        let wedge_twist = group
            .character_value(&hinv, u)
            .mul(&group.character_value(&hinv, v));
        let transformed = class
            .s
            .act_diagonal(&h)
            .mul(&crate::crossed::conjugate(alg, &h, &CPElement::group_unit(alg, &class.g)))
            .scale(&wedge_twist);
        if transformed != reference {
            return Err(Counterexample::new(
                format!("class invariance under {h}"),
                transformed,
                reference,
            ));
        }
    }
    Ok(())
}

/// The represented cochain agrees with the operator cocycle
/// m (D1 x D2) on all basis pairs of total degree <= d with all group
/// parts. This is the nontriviality certificate: the class is not a
/// coboundary, so neither is the infinitesimal.
pub fn check_class_equals_operator_cocycle(
    class: &CohomologyClass,
    factor: &std::sync::Arc<DeformFactor>,
    d: u32,
) -> CheckResult {
    assert_eq!(class.group_element(), factor.group_element());
    assert_eq!(class.pair(), factor.pair());
    assert_eq!(class.coefficient(), factor.semi_invariant());
    let alg = &class.algebra;
    let gs = alg.group().elements();
    let (d1, d2) = (factor.d1(), factor.d2());
    let monos = Monomial::all_up_to_degree(alg.dim(), d);
    for m1 in &monos {
        for m2 in Monomial::all_up_to_degree(alg.dim(), d - m1.degree()) {
            for g1 in &gs {
                let a = CPElement::term(alg, m1.clone(), g1.clone(), alg.field().one());
                for g2 in &gs {
                    let b = CPElement::term(alg, m2.clone(), g2.clone(), alg.field().one());
                    let lhs = class.cocycle_value(&a, &b);
                    let rhs = d1.apply(&a).mul(&d2.apply(&b));
                    if lhs != rhs {
                        return Err(Counterexample::new(
                            format!("class vs operator cocycle at ({a}, {b})"),
                            lhs,
                            rhs,
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Why a group element carries no degree-two component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hh2Exclusion {
    Determinant,
    Codimension,
}

impl fmt::Display for Hh2Exclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hh2Exclusion::Determinant => write!(f, "determinant"),
            Hh2Exclusion::Codimension => write!(f, "codimension"),
        }
    }
}

/// One basis vector of a degree-two component: the wedge pair and the
/// polynomial coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hh2BasisVector {
    pub wedge: (usize, usize),
    pub coefficient: Monomial,
}

impl fmt::Display for Hh2BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(e{}^e{})* (x) {}",
            self.wedge.0 + 1,
            self.wedge.1 + 1,
            self.coefficient
        )
    }
}

/// The degree-two component attached to one group element, with the
/// polynomial factor bounded in degree.
#[derive(Debug, Clone)]
pub struct Hh2Component {
    pub group_element: GroupElement,
    pub dimension: usize,
    pub basis: Vec<Hh2BasisVector>,
    pub exclusion: Option<Hh2Exclusion>,
}

/// Counts the invariant degree-two classes in the component of g, with the
/// polynomial factor filtered to degree <= d. Elements failing the
/// necessary conditions are excluded with a reason: fixed-space codimension
/// outside {0, 2} first, then determinant different from one.
pub fn hh2_component(
    group: &GroupSpec,
    cocycle: &TwoCocycle,
    g: &GroupElement,
    d: u32,
) -> Hh2Component {
    let algebra = crate::crossed::CrossedAlgebra::free(group.clone(), cocycle.clone());
    let n = group.dim();
    let fixed = group.fixed_coordinates(g);
    let codim = n - fixed.len();
    if codim != 0 && codim != 2 {
        return Hh2Component {
            group_element: g.clone(),
            dimension: 0,
            basis: Vec::new(),
            exclusion: Some(Hh2Exclusion::Codimension),
        };
    }
    if !group.determinant(g).is_one() {
        return Hh2Component {
            group_element: g.clone(),
            dimension: 0,
            basis: Vec::new(),
            exclusion: Some(Hh2Exclusion::Determinant),
        };
    }
    let mut basis = Vec::new();
    if codim == 2 {
        let non_fixed: Vec<usize> = (0..n).filter(|i| !fixed.contains(i)).collect();
        let (u, v) = (non_fixed[0], non_fixed[1]);
        for m in Monomial::all_up_to_degree(n, d) {
            if m.exponent(u) != 0 || m.exponent(v) != 0 {
                continue;
            }
            let candidate = CohomologyClass {
                algebra: algebra.clone(),
                g: g.clone(),
                pair: (u, v),
                s: CPElement::monomial(&algebra, m.clone()),
            };
            if check_invariance(&candidate).is_ok() {
                basis.push(Hh2BasisVector {
                    wedge: (u, v),
                    coefficient: m,
                });
            }
        }
    } else {
        // g acts trivially on V: every coordinate is fixed, all wedge pairs
        // are candidates
        for u in 0..n {
            for v in (u + 1)..n {
                for m in Monomial::all_up_to_degree(n, d) {
                    let candidate = CohomologyClass {
                        algebra: algebra.clone(),
                        g: g.clone(),
                        pair: (u, v),
                        s: CPElement::monomial(&algebra, m.clone()),
                    };
                    if check_invariance(&candidate).is_ok() {
                        basis.push(Hh2BasisVector {
                            wedge: (u, v),
                            coefficient: m,
                        });
                    }
                }
            }
        }
    }
    Hh2Component {
        group_element: g.clone(),
        dimension: basis.len(),
        basis,
        exclusion: None,
    }
}
