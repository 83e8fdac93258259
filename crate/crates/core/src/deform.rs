//! Star products built from deformation factors, associativity sweeps,
//! Hochschild two-cocycle checks, and graded Hecke relation extraction.
//!
//! A single factor contributes a * b = sum_i t^i / (i)_q! D1^i(a) D2^i(b),
//! truncating at i = ell - 1 when q is a primitive ell-th root of unity and
//! by operator nilpotency otherwise. Multiple factors compose in list
//! order; this is sound when distinct factors either commute as operators
//! or form a validated g / g^{-1} pair, which the constructor enforces.
//! The deformation parameter t is an exact polynomial variable, never
//! silently truncated.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::action::{
    check_commuting_factors, check_mixed_relations, DeformFactor, LinOperator,
};
use crate::check::{CheckResult, Counterexample};
use crate::crossed::{AlgebraRef, CPElement, Monomial};
use crate::group::GroupElement;
use crate::qcalc::q_factorial;
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum DeformError {
    #[error("factors {0} and {1} neither commute nor form a g/g^-1 pair: {2}")]
    IncompatibleFactors(usize, usize, Counterexample),
    #[error("star product needs at least one factor")]
    NoFactors,
}

/// Polynomial in t with crossed-product coefficients.
#[derive(Debug, Clone)]
pub struct TPoly {
    algebra: AlgebraRef,
    coeffs: BTreeMap<u32, CPElement>,
}

impl PartialEq for TPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}
impl Eq for TPoly {}

impl TPoly {
    pub fn zero(algebra: &AlgebraRef) -> Self {
        TPoly {
            algebra: algebra.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(value: CPElement) -> Self {
        Self::single(0, value)
    }

    pub fn single(degree: u32, value: CPElement) -> Self {
        let algebra = value.algebra().clone();
        let mut p = Self::zero(&algebra);
        p.add_coeff(degree, value);
        p
    }

    fn add_coeff(&mut self, degree: u32, value: CPElement) {
        if value.is_zero() {
            return;
        }
        match self.coeffs.entry(degree) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&value);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn coefficient(&self, degree: u32) -> CPElement {
        self.coeffs
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| CPElement::zero(&self.algebra))
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&u32, &CPElement)> {
        self.coeffs.iter()
    }

    /// Degree in t; None for the zero polynomial.
    pub fn t_degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &TPoly) -> TPoly {
        let mut out = self.clone();
        for (d, v) in &other.coeffs {
            out.add_coeff(*d, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &TPoly) -> TPoly {
        let mut out = self.clone();
        for (d, v) in &other.coeffs {
            out.add_coeff(*d, v.neg());
        }
        out
    }

    /// Specializes t to a scalar.
    pub fn evaluate(&self, t0: &Scalar) -> CPElement {
        let mut out = CPElement::zero(&self.algebra);
        for (d, v) in &self.coeffs {
            let c = t0.pow(*d as i64).expect("nonnegative power");
            out = out.add(&v.scale(&c));
        }
        out
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, v) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *d == 0 {
                write!(f, "{v}")?;
            } else {
                write!(f, "t^{d} * ({v})")?;
            }
        }
        Ok(())
    }
}

/// A validated multi-factor star product.
pub struct StarProduct {
    factors: Vec<Arc<DeformFactor>>,
    ops: Vec<(LinOperator, LinOperator)>,
}

impl StarProduct {
    /// Validates pairwise compatibility up to `guard_degree`: distinct
    /// factors must commute as operators, or be a g/g^{-1} pair on the same
    /// coordinates with inverse eigenvalues satisfying the mixed relations.
    pub fn new(factors: Vec<Arc<DeformFactor>>, guard_degree: u32) -> Result<Self, DeformError> {
        if factors.is_empty() {
            return Err(DeformError::NoFactors);
        }
        for i in 0..factors.len() {
            for j in (i + 1)..factors.len() {
                let pair = [factors[i].clone(), factors[j].clone()];
                if let Err(ce) = check_commuting_factors(&pair, guard_degree) {
                    let group = factors[i].algebra().group();
                    // g and g^{-1} must be distinct: the mixed construction
                    // needs an eigenvalue of order > 2
                    let inverse_pair = factors[j].group_element()
                        == &group.inverse(factors[i].group_element())
                        && factors[j].group_element() != factors[i].group_element()
                        && factors[j].pair() == factors[i].pair()
                        && factors[j].q()
                            == &factors[i].q().inv().expect("q nonzero");
                    let mixed_ok = inverse_pair
                        && check_mixed_relations(&factors[i], &factors[j], guard_degree).is_ok();
                    if !mixed_ok {
                        return Err(DeformError::IncompatibleFactors(i + 1, j + 1, ce));
                    }
                }
            }
        }
        let ops = factors.iter().map(|f| (f.d1(), f.d2())).collect();
        Ok(StarProduct { factors, ops })
    }

    pub fn single(factor: Arc<DeformFactor>) -> Self {
        let ops = vec![(factor.d1(), factor.d2())];
        StarProduct {
            factors: vec![factor],
            ops,
        }
    }

    pub fn factors(&self) -> &[Arc<DeformFactor>] {
        &self.factors
    }

    pub fn algebra(&self) -> &AlgebraRef {
        self.factors[0].algebra()
    }

    /// a * b = sum over multi-indices (i_1..i_m) of
    /// t^{sum i_f} prod_f 1/(i_f)_{q_f}! (prod_f D1^{f,i_f})(a) (prod_f D2^{f,i_f})(b),
    /// where the operator products compose in factor order (factor 1
    /// outermost). Each i_f stops at ell_f - 1 at a root of unity and at
    /// operator annihilation otherwise.
    pub fn star(&self, a: &CPElement, b: &CPElement) -> TPoly {
        let field = self.algebra().field().clone();
        // (left part, right part, t-degree, scalar)
        let mut states = vec![(a.clone(), b.clone(), 0u32, field.one())];
        // innermost operators come from the last factor
        for (f, (d1, d2)) in self.factors.iter().zip(&self.ops).rev() {
            let mut next = Vec::with_capacity(states.len() * 2);
            for (pa, pb, deg, coef) in states {
                let bound = f.series_order();
                let mut ia = pa.clone();
                let mut ib = pb.clone();
                let mut i: u64 = 0;
                loop {
                    if ia.is_zero() || ib.is_zero() {
                        break;
                    }
                    let inv_fact = q_factorial(f.ctx(), i)
                        .inv()
                        .expect("(i)_q! nonzero below the root order");
                    next.push((ia.clone(), ib.clone(), deg + i as u32, coef.mul(&inv_fact)));
                    i += 1;
                    if let Some(ell) = bound {
                        if i >= ell {
                            break;
                        }
                    }
                    ia = d1.apply(&ia);
                    ib = d2.apply(&ib);
                }
            }
            states = next;
        }
        let mut out = TPoly::zero(self.algebra());
        for (pa, pb, deg, coef) in states {
            out.add_coeff(deg, pa.mul(&pb).scale(&coef));
        }
        out
    }

    /// t-bilinear extensions used by the associativity sweep.
    pub fn star_left(&self, a: &TPoly, b: &CPElement) -> TPoly {
        let mut out = TPoly::zero(self.algebra());
        for (d, v) in a.coefficients() {
            for (dd, vv) in self.star(v, b).coefficients() {
                out.add_coeff(d + dd, vv.clone());
            }
        }
        out
    }

    pub fn star_right(&self, a: &CPElement, b: &TPoly) -> TPoly {
        let mut out = TPoly::zero(self.algebra());
        for (d, v) in b.coefficients() {
            for (dd, vv) in self.star(a, v).coefficients() {
                out.add_coeff(d + dd, vv.clone());
            }
        }
        out
    }
}

/// (a*b)*c = a*(b*c) as exact t-polynomials, for all monomial-basis triples
/// of total degree <= d with all group parts.
pub fn check_associativity(star: &StarProduct, d: u32) -> CheckResult {
    let alg = star.algebra();
    let gs = alg.group().elements();
    for m1 in Monomial::all_up_to_degree(alg.dim(), d) {
        for m2 in Monomial::all_up_to_degree(alg.dim(), d - m1.degree()) {
            for m3 in Monomial::all_up_to_degree(alg.dim(), d - m1.degree() - m2.degree()) {
                for g1 in &gs {
                    let a = CPElement::term(alg, m1.clone(), g1.clone(), alg.field().one());
                    for g2 in &gs {
                        let b = CPElement::term(alg, m2.clone(), g2.clone(), alg.field().one());
                        let ab = star.star(&a, &b);
                        for g3 in &gs {
                            let c =
                                CPElement::term(alg, m3.clone(), g3.clone(), alg.field().one());
                            let lhs = star.star_left(&ab, &c);
                            let rhs = star.star_right(&a, &star.star(&b, &c));
                            if lhs != rhs {
                                return Err(Counterexample::new(
                                    format!("star associativity at ({a}, {b}, {c})"),
                                    lhs,
                                    rhs,
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// The Hochschild two-cocycle condition
/// mu(a,b) c + mu(ab, c) = mu(a, bc) + a mu(b, c) for an arbitrary bilinear
/// rule, swept over basis triples of total degree <= d.
pub fn check_hochschild_cocycle(
    algebra: &AlgebraRef,
    mu: &dyn Fn(&CPElement, &CPElement) -> CPElement,
    d: u32,
) -> CheckResult {
    let gs = algebra.group().elements();
    for m1 in Monomial::all_up_to_degree(algebra.dim(), d) {
        for m2 in Monomial::all_up_to_degree(algebra.dim(), d - m1.degree()) {
            for m3 in Monomial::all_up_to_degree(algebra.dim(), d - m1.degree() - m2.degree()) {
                for g1 in &gs {
                    let a = CPElement::term(algebra, m1.clone(), g1.clone(), algebra.field().one());
                    for g2 in &gs {
                        let b =
                            CPElement::term(algebra, m2.clone(), g2.clone(), algebra.field().one());
                        for g3 in &gs {
                            let c = CPElement::term(
                                algebra,
                                m3.clone(),
                                g3.clone(),
                                algebra.field().one(),
                            );
                            let lhs = mu(&a, &b).mul(&c).add(&mu(&a.mul(&b), &c));
                            let rhs = mu(&a, &b.mul(&c)).add(&a.mul(&mu(&b, &c)));
                            if lhs != rhs {
                                return Err(Counterexample::new(
                                    format!("two-cocycle condition at ({a}, {b}, {c})"),
                                    lhs,
                                    rhs,
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// The first-order product m(D1 x D2) of a factor, as a bilinear rule.
pub fn infinitesimal(factor: &Arc<DeformFactor>) -> impl Fn(&CPElement, &CPElement) -> CPElement {
    let d1 = factor.d1();
    let d2 = factor.d2();
    move |a, b| d1.apply(a).mul(&d2.apply(b))
}

/// The t-linear part of v*w - w*v for a coordinate pair, split by group
/// element: the right-hand sides of the relations
/// vw - wv = sum_g a_g(v,w) t gbar.
#[derive(Debug, Clone)]
pub struct HeckeRelation {
    pub v: usize,
    pub w: usize,
    /// Polynomial coefficient a_g(v,w) for each contributing g (nonzero
    /// components only).
    pub components: BTreeMap<GroupElement, CPElement>,
    /// Degree -2 homogeneity holds only when every factor has a constant
    /// semi-invariant; otherwise the relation is labelled non-Hecke.
    pub graded: bool,
}

impl fmt::Display for HeckeRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{} x{} - x{} x{}", self.v + 1, self.w + 1, self.w + 1, self.v + 1)?;
        if self.components.is_empty() {
            return write!(f, " = 0");
        }
        write!(f, " =")?;
        for (i, (g, a)) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " +")?;
            }
            write!(f, " t * ({a}) * {g}")?;
        }
        if !self.graded {
            write!(f, "  [non-Hecke: nonconstant semi-invariant]")?;
        }
        Ok(())
    }
}

/// Extracts the Hecke-type relations for every coordinate pair v < w.
pub fn hecke_relations(star: &StarProduct) -> Vec<HeckeRelation> {
    let alg = star.algebra();
    let graded = star
        .factors()
        .iter()
        .all(|f| f.semi_invariant().degree() == 0);
    let mut out = Vec::new();
    for v in 0..alg.dim() {
        for w in (v + 1)..alg.dim() {
            let xv = CPElement::variable(alg, v);
            let xw = CPElement::variable(alg, w);
            let bracket = star.star(&xv, &xw).sub(&star.star(&xw, &xv));
            let linear = bracket.coefficient(1);
            let mut components: BTreeMap<GroupElement, CPElement> = BTreeMap::new();
            for ((m, g), c) in linear.terms() {
                let entry = components
                    .entry(g.clone())
                    .or_insert_with(|| CPElement::zero(alg));
                *entry = entry.add(&CPElement::term(
                    alg,
                    m.clone(),
                    alg.group().identity(),
                    c.clone(),
                ));
            }
            components.retain(|_, p| !p.is_zero());
            out.push(HeckeRelation {
                v,
                w,
                components,
                graded,
            });
        }
    }
    out
}
