//! The concrete Hopf action on the crossed product: for a central diagonal
//! element g scaling one coordinate by q and another by q^{-1}, the three
//! operators
//!
//!   D1(m hbar) = x_u(h^{-1}) d_{u,q}(m) hbar
//!   D2(m hbar) = q^{k_u} d_{v,q^{-1}}(m) s gbar hbar
//!   sigma(m hbar) = x_u(h^{-1}) q^{k_u} m hbar
//!
//! where d_{i,q} is q-differentiation, k_u the exponent of the q-scaled
//! coordinate, and s a semi-invariant polynomial in the remaining
//! coordinates. Everything a factor needs is validated at construction; the
//! relation and module-algebra sweeps are exact and degree-bounded.

use std::sync::Arc;

use thiserror::Error;

use crate::check::{CheckResult, Counterexample};
use crate::crossed::{basis_up_to_degree, AlgebraRef, CPElement, Monomial};
use crate::group::{GroupElement, GroupSpec, TwoCocycle};
use crate::qcalc::{q_integer, QContext};
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum ActionError {
    #[error("deformation factors need a free polynomial part (no nilpotency bounds)")]
    BoundedAlgebra,
    #[error("coordinate pair ({0}, {1}) invalid for dimension {2}")]
    BadPair(usize, usize, usize),
    #[error("q must be nonzero")]
    ZeroQ,
    #[error("eigenvalue pattern violated: {0} scales x{1} by {2}, expected {3}")]
    EigenvaluePattern(GroupElement, usize, Scalar, Scalar),
    #[error("semi-invariant must be a nonzero polynomial in the unpaired coordinates with trivial group part")]
    BadSemiInvariantSupport,
    #[error("semi-invariant fails its defining character equation at h = {0}: {1} != {2}")]
    NotSemiInvariant(GroupElement, Scalar, Scalar),
}

/// One deformation factor: the central element g, the ordered coordinate
/// pair (q-scaled, q^{-1}-scaled), the eigenvalue q, and the semi-invariant
/// s. Immutable once validated.
#[derive(Debug, Clone)]
pub struct DeformFactor {
    algebra: AlgebraRef,
    g: GroupElement,
    pair: (usize, usize),
    ctx: QContext,
    ctx_inv: QContext,
    s: CPElement,
    /// Cached s * gbar, the right factor of D2.
    s_gbar: CPElement,
}

impl DeformFactor {
    pub fn new(
        algebra: &AlgebraRef,
        g: GroupElement,
        pair: (usize, usize),
        q: Scalar,
        s: CPElement,
    ) -> Result<Arc<Self>, ActionError> {
        if !algebra.is_free() {
            return Err(ActionError::BoundedAlgebra);
        }
        let n = algebra.dim();
        let (u, v) = pair;
        if u >= n || v >= n || u == v {
            return Err(ActionError::BadPair(u, v, n));
        }
        if q.is_zero() {
            return Err(ActionError::ZeroQ);
        }
        let group = algebra.group();
        let q_inv = q.inv().expect("q nonzero");
        for i in 0..n {
            let expect = if i == u {
                q.clone()
            } else if i == v {
                q_inv.clone()
            } else {
                group.field().one()
            };
            let actual = group.character_value(&g, i);
            if actual != expect {
                return Err(ActionError::EigenvaluePattern(g.clone(), i + 1, actual, expect));
            }
        }
        if s.is_zero() {
            return Err(ActionError::BadSemiInvariantSupport);
        }
        for ((m, h), _) in s.terms() {
            if !h.is_identity() || m.exponent(u) != 0 || m.exponent(v) != 0 {
                return Err(ActionError::BadSemiInvariantSupport);
            }
        }
        // h(s) = x_u(h) x_v(h) alpha(g,h) alpha^{-1}(h,g) s, checked on each
        // monomial of s against every group element
        let required = required_character(group, algebra.cocycle(), &g, pair);
        for ((m, _), _) in s.terms() {
            for (h, want) in &required {
                let got = group.monomial_eigenvalue(h, m.exponents());
                if got != *want {
                    return Err(ActionError::NotSemiInvariant(h.clone(), got, want.clone()));
                }
            }
        }
        let s_gbar = s.mul(&CPElement::group_unit(algebra, &g));
        Ok(Arc::new(DeformFactor {
            algebra: algebra.clone(),
            g,
            pair,
            ctx: QContext::new(q),
            ctx_inv: QContext::new(q_inv),
            s,
            s_gbar,
        }))
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn group_element(&self) -> &GroupElement {
        &self.g
    }

    pub fn pair(&self) -> (usize, usize) {
        self.pair
    }

    pub fn q(&self) -> &Scalar {
        self.ctx.q()
    }

    pub fn ctx(&self) -> &QContext {
        &self.ctx
    }

    pub fn semi_invariant(&self) -> &CPElement {
        &self.s
    }

    /// Bound on exp_q exponents: ell - 1 at a primitive ell-th root of unity
    /// (ell >= 2), unbounded otherwise.
    pub fn series_order(&self) -> Option<u64> {
        self.ctx.root_of_unity_order()
    }

    pub fn d1(self: &Arc<Self>) -> LinOperator {
        LinOperator {
            factor: self.clone(),
            kind: OperatorKind::D1,
        }
    }

    pub fn d2(self: &Arc<Self>) -> LinOperator {
        LinOperator {
            factor: self.clone(),
            kind: OperatorKind::D2,
        }
    }

    pub fn sigma(self: &Arc<Self>) -> LinOperator {
        LinOperator {
            factor: self.clone(),
            kind: OperatorKind::Sigma,
        }
    }

    pub fn sigma_inverse(self: &Arc<Self>) -> LinOperator {
        LinOperator {
            factor: self.clone(),
            kind: OperatorKind::SigmaInv,
        }
    }
}

/// The character h -> x_u(h) x_v(h) alpha(g,h)/alpha(h,g) that a
/// semi-invariant must realize, tabulated over the group.
fn required_character(
    group: &GroupSpec,
    cocycle: &TwoCocycle,
    g: &GroupElement,
    pair: (usize, usize),
) -> Vec<(GroupElement, Scalar)> {
    group
        .elements()
        .into_iter()
        .map(|h| {
            let xu = group.character_value(&h, pair.0);
            let xv = group.character_value(&h, pair.1);
            let skew = cocycle.skew(group, g, &h);
            let val = xu.mul(&xv).mul(&skew);
            (h, val)
        })
        .collect()
}

/// The three operators of a factor, in the order (D1, D2, sigma).
pub fn make_operators(factor: &Arc<DeformFactor>) -> (LinOperator, LinOperator, LinOperator) {
    (factor.d1(), factor.d2(), factor.sigma())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OperatorKind {
    D1,
    D2,
    Sigma,
    SigmaInv,
}

/// A total linear operator on the crossed product, realized as a
/// closed-form rule on basis pairs.
#[derive(Debug, Clone)]
pub struct LinOperator {
    factor: Arc<DeformFactor>,
    kind: OperatorKind,
}

impl LinOperator {
    pub fn apply(&self, a: &CPElement) -> CPElement {
        let mut out = CPElement::zero(self.factor.algebra());
        for ((m, h), c) in a.terms() {
            out = out.add(&self.apply_term(m, h).scale(c));
        }
        out
    }

    pub fn apply_term(&self, m: &Monomial, h: &GroupElement) -> CPElement {
        let f = &*self.factor;
        let alg = &f.algebra;
        let group = alg.group();
        let (u, v) = f.pair;
        let ku = m.exponent(u) as i64;
        match self.kind {
            OperatorKind::D1 => match m.lower(u) {
                None => CPElement::zero(alg),
                Some(lowered) => {
                    let hinv = group.inverse(h);
                    let coef = group
                        .character_value(&hinv, u)
                        .mul(&q_integer(&f.ctx, ku as u64));
                    CPElement::term(alg, lowered, h.clone(), coef)
                }
            },
            OperatorKind::D2 => match m.lower(v) {
                None => CPElement::zero(alg),
                Some(lowered) => {
                    let kv = m.exponent(v) as u64;
                    let coef = f.ctx.q_pow(ku).mul(&q_integer(&f.ctx_inv, kv));
                    let poly = CPElement::term(alg, lowered, group.identity(), coef);
                    poly.mul(&f.s_gbar)
                        .mul(&CPElement::group_unit(alg, h))
                }
            },
            OperatorKind::Sigma => {
                let hinv = group.inverse(h);
                let coef = group.character_value(&hinv, u).mul(&f.ctx.q_pow(ku));
                CPElement::term(alg, m.clone(), h.clone(), coef)
            }
            OperatorKind::SigmaInv => {
                let coef = group.character_value(h, u).mul(&f.ctx.q_pow(-ku));
                CPElement::term(alg, m.clone(), h.clone(), coef)
            }
        }
    }
}

/// Basis pairs (a, b) with deg(a) + deg(b) <= d over all group parts.
fn basis_pairs(alg: &AlgebraRef, d: u32) -> Vec<((Monomial, GroupElement), (Monomial, GroupElement))> {
    let mut out = Vec::new();
    let gs = alg.group().elements();
    for m1 in Monomial::all_up_to_degree(alg.dim(), d) {
        for m2 in Monomial::all_up_to_degree(alg.dim(), d - m1.degree()) {
            for g1 in &gs {
                for g2 in &gs {
                    out.push(((m1.clone(), g1.clone()), (m2.clone(), g2.clone())));
                }
            }
        }
    }
    out
}

fn term(alg: &AlgebraRef, m: &Monomial, g: &GroupElement) -> CPElement {
    CPElement::term(alg, m.clone(), g.clone(), alg.field().one())
}

/// D1(ab) = D1(a) sigma(b) + a D1(b) and D2(ab) = D2(a) b + sigma(a) D2(b)
/// on all basis pairs of total degree <= d with all group parts.
pub fn check_skew_derivations(factor: &Arc<DeformFactor>, d: u32) -> CheckResult {
    let alg = factor.algebra();
    let (d1, d2, sigma) = make_operators(factor);
    for ((m1, g1), (m2, g2)) in basis_pairs(alg, d) {
        let a = term(alg, &m1, &g1);
        let b = term(alg, &m2, &g2);
        let ab = a.mul(&b);
        let lhs1 = d1.apply(&ab);
        let rhs1 = d1.apply(&a).mul(&sigma.apply(&b)).add(&a.mul(&d1.apply(&b)));
        if lhs1 != rhs1 {
            return Err(Counterexample::new(
                format!("D1 skew-derivation rule at a = {a}, b = {b}"),
                lhs1,
                rhs1,
            ));
        }
        let lhs2 = d2.apply(&ab);
        let rhs2 = d2.apply(&a).mul(&b).add(&sigma.apply(&a).mul(&d2.apply(&b)));
        if lhs2 != rhs2 {
            return Err(Counterexample::new(
                format!("D2 skew-derivation rule at a = {a}, b = {b}"),
                lhs2,
                rhs2,
            ));
        }
    }
    Ok(())
}

/// The generator relations as operator identities on basis elements of
/// degree <= d, plus the module-algebra law for all three generators on
/// basis pairs, plus the unit conditions.
pub fn check_module_algebra(factor: &Arc<DeformFactor>, d: u32) -> CheckResult {
    let alg = factor.algebra();
    let (d1, d2, sigma) = make_operators(factor);
    let sigma_inv = factor.sigma_inverse();
    let q = factor.q().clone();

    for (m, g) in basis_up_to_degree(alg, d) {
        let b = term(alg, &m, &g);
        let lhs = d1.apply(&d2.apply(&b));
        let rhs = d2.apply(&d1.apply(&b));
        if lhs != rhs {
            return Err(Counterexample::new(
                format!("D1 D2 = D2 D1 at {b}"),
                lhs,
                rhs,
            ));
        }
        for (name, di) in [("D1", &d1), ("D2", &d2)] {
            let lhs = sigma.apply(&di.apply(&b)).scale(&q);
            let rhs = di.apply(&sigma.apply(&b));
            if lhs != rhs {
                return Err(Counterexample::new(
                    format!("q sigma {name} = {name} sigma at {b}"),
                    lhs,
                    rhs,
                ));
            }
        }
        let round = sigma_inv.apply(&sigma.apply(&b));
        let round2 = sigma.apply(&sigma_inv.apply(&b));
        if round != b || round2 != b {
            return Err(Counterexample::new(
                format!("sigma invertibility at {b}"),
                round,
                round2,
            ));
        }
        if let Some(ell) = factor.series_order() {
            for (name, di) in [("D1", &d1), ("D2", &d2)] {
                let mut acc = b.clone();
                for _ in 0..ell {
                    acc = di.apply(&acc);
                }
                if !acc.is_zero() {
                    return Err(Counterexample::new(
                        format!("{name}^{ell} = 0 at {b}"),
                        acc,
                        "0",
                    ));
                }
            }
        }
    }

    check_skew_derivations(factor, d)?;

    for ((m1, g1), (m2, g2)) in basis_pairs(alg, d) {
        let a = term(alg, &m1, &g1);
        let b = term(alg, &m2, &g2);
        let lhs = sigma.apply(&a.mul(&b));
        let rhs = sigma.apply(&a).mul(&sigma.apply(&b));
        if lhs != rhs {
            return Err(Counterexample::new(
                format!("sigma multiplicativity at a = {a}, b = {b}"),
                lhs,
                rhs,
            ));
        }
    }

    let one = CPElement::one(alg);
    if !d1.apply(&one).is_zero() || !d2.apply(&one).is_zero() {
        return Err(Counterexample::new(
            "unit condition D1(1) = 0 = D2(1)",
            d1.apply(&one),
            d2.apply(&one),
        ));
    }
    if sigma.apply(&one) != one {
        return Err(Counterexample::new(
            "unit condition sigma(1) = 1",
            sigma.apply(&one),
            one,
        ));
    }
    Ok(())
}

/// All monomials of degree <= d in the coordinates outside the pair whose
/// group character matches the semi-invariance equation. Their span is the
/// space of admissible semi-invariants up to that degree.
pub fn solve_semi_invariants(
    group: &GroupSpec,
    cocycle: &TwoCocycle,
    g: &GroupElement,
    pair: (usize, usize),
    d: u32,
) -> Vec<Monomial> {
    let required = required_character(group, cocycle, g, pair);
    Monomial::all_up_to_degree(group.dim(), d)
        .into_iter()
        .filter(|m| m.exponent(pair.0) == 0 && m.exponent(pair.1) == 0)
        .filter(|m| {
            required
                .iter()
                .all(|(h, want)| group.monomial_eigenvalue(h, m.exponents()) == *want)
        })
        .collect()
}

/// The nine commutation relations between the operator triples of a factor
/// for g and a factor for g^{-1} sharing the same coordinate pair, checked
/// on basis elements of degree <= d with all group parts.
pub fn check_mixed_relations(
    factor: &Arc<DeformFactor>,
    factor_inv: &Arc<DeformFactor>,
    d: u32,
) -> CheckResult {
    let alg = factor.algebra();
    let group = alg.group();
    assert_eq!(
        factor_inv.group_element(),
        &group.inverse(factor.group_element()),
        "second factor must belong to the inverse group element"
    );
    assert_eq!(
        factor.pair(),
        factor_inv.pair(),
        "mixed factors share the coordinate pair"
    );
    let q = factor.q().clone();
    let qi = q.inv().expect("q nonzero");
    let one = alg.field().one();
    let (d1, d2, sg) = make_operators(factor);
    let (e1, e2, sgi) = make_operators(factor_inv);
    // (name, outer, inner, scalar, s_outer, s_inner): outer inner = scalar * inner outer
    let relations: [(&str, &LinOperator, &LinOperator, &Scalar); 9] = [
        ("D1' D1 = q D1 D1'", &e1, &d1, &q),
        ("D2' D2 = q^-1 D2 D2'", &e2, &d2, &qi),
        ("D1 D2' = D2' D1", &d1, &e2, &one),
        ("D1' D2 = D2 D1'", &e1, &d2, &one),
        ("s s' = s' s", &sg, &sgi, &one),
        ("s D1' = q^-1 D1' s", &sg, &e1, &qi),
        ("s D2' = q D2' s", &sg, &e2, &q),
        ("s' D1 = q D1 s'", &sgi, &d1, &q),
        ("s' D2 = q^-1 D2 s'", &sgi, &d2, &qi),
    ];
    for (m, g) in basis_up_to_degree(alg, d) {
        let b = term(alg, &m, &g);
        for (name, outer, inner, scalar) in &relations {
            let lhs = outer.apply(&inner.apply(&b));
            let rhs = inner.apply(&outer.apply(&b)).scale(scalar);
            if lhs != rhs {
                return Err(Counterexample::new(format!("{name} at {b}"), lhs, rhs));
            }
        }
    }
    Ok(())
}

/// Every operator of factor i commutes with every operator of factor j != i
/// on basis elements of degree <= d.
pub fn check_commuting_factors(factors: &[Arc<DeformFactor>], d: u32) -> CheckResult {
    if factors.len() < 2 {
        return Ok(());
    }
    let alg = factors[0].algebra();
    let basis = basis_up_to_degree(alg, d);
    for i in 0..factors.len() {
        for j in (i + 1)..factors.len() {
            let ops_i = [factors[i].d1(), factors[i].d2(), factors[i].sigma()];
            let ops_j = [factors[j].d1(), factors[j].d2(), factors[j].sigma()];
            let names = ["D1", "D2", "sigma"];
            for (a, op_a) in ops_i.iter().enumerate() {
                for (b, op_b) in ops_j.iter().enumerate() {
                    for (m, g) in &basis {
                        let x = term(alg, m, g);
                        let lhs = op_a.apply(&op_b.apply(&x));
                        let rhs = op_b.apply(&op_a.apply(&x));
                        if lhs != rhs {
                            return Err(Counterexample::new(
                                format!(
                                    "commutation of factor {}'s {} with factor {}'s {} at {x}",
                                    i + 1,
                                    names[a],
                                    j + 1,
                                    names[b]
                                ),
                                lhs,
                                rhs,
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Builds the factors of the adjacent-pair fixture with s = 1 everywhere.
pub fn fixture_factors(
    fx: &crate::group::DiagonalPairFixture,
    algebra: &AlgebraRef,
) -> Vec<Arc<DeformFactor>> {
    fx.seeds
        .iter()
        .map(|(g, pair, q)| {
            DeformFactor::new(
                algebra,
                g.clone(),
                *pair,
                q.clone(),
                CPElement::one(algebra),
            )
            .expect("fixture factors are valid")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::{parse_element, CrossedAlgebra};
    use crate::group::{example51_fixture, trivial_group};
    use crate::scalar::ScalarField;

    fn fixture(n: usize, ell: u64) -> (AlgebraRef, Vec<Arc<DeformFactor>>) {
        let fx = example51_fixture(n, ell);
        let alg = CrossedAlgebra::free(fx.group.clone(), fx.cocycle.clone());
        let factors = fixture_factors(&fx, &alg);
        (alg, factors)
    }

    fn weyl_factor() -> (AlgebraRef, Arc<DeformFactor>) {
        let (group, cocycle) = trivial_group(2);
        let alg = CrossedAlgebra::free(group, cocycle);
        let f = DeformFactor::new(
            &alg,
            alg.group().identity(),
            (0, 1),
            alg.field().one(),
            CPElement::one(&alg),
        )
        .unwrap();
        (alg, f)
    }

    #[test]
    fn operator_values_on_small_inputs() {
        let (alg, factors) = fixture(3, 2);
        let f = &factors[0];
        let (d1, d2, sigma) = make_operators(f);
        // D1(x1^2) = (2)_q x1 ; at ell = 2, (2)_q = 1 + (-1) = 0
        let x1sq = parse_element(&alg, "x1^2").unwrap();
        assert!(d1.apply(&x1sq).is_zero());
        // D2(x2) = g1bar
        let x2 = parse_element(&alg, "x2").unwrap();
        assert_eq!(d2.apply(&x2), parse_element(&alg, "g(1,0)").unwrap());
        // sigma(x1) = q x1
        let x1 = parse_element(&alg, "x1").unwrap();
        assert_eq!(sigma.apply(&x1), x1.scale(f.q()));
        // D1(1) = 0 = D2(1)
        let one = CPElement::one(&alg);
        assert!(d1.apply(&one).is_zero());
        assert!(d2.apply(&one).is_zero());
    }

    #[test]
    fn d1_value_at_higher_order() {
        // D1(x1^2 hbar) = x1(h^{-1}) (2)_q x1 hbar at ell = 3
        let (alg, factors) = fixture(3, 3);
        let f = &factors[0];
        let d1 = f.d1();
        let group = alg.group().clone();
        let h = group.generator(1);
        let m = Monomial::new(vec![2, 0, 0]);
        let got = d1.apply_term(&m, &h);
        let coef = group
            .character_value(&group.inverse(&h), 0)
            .mul(&q_integer(f.ctx(), 2));
        let expect = CPElement::term(&alg, Monomial::new(vec![1, 0, 0]), h, coef);
        assert_eq!(got, expect);
    }

    #[test]
    fn eigenvalue_pattern_is_enforced() {
        // at ell = 3, q != q^{-1}, so a swapped pair must be rejected
        let fx = example51_fixture(3, 3);
        let alg = CrossedAlgebra::free(fx.group.clone(), fx.cocycle.clone());
        let err = DeformFactor::new(
            &alg,
            fx.group.generator(0),
            (1, 0),
            alg.field().zeta().unwrap(),
            CPElement::one(&alg),
        );
        assert!(matches!(err, Err(ActionError::EigenvaluePattern(..))));
    }

    #[test]
    fn semi_invariant_support_is_enforced() {
        let (alg, _) = fixture(3, 2);
        let fx = example51_fixture(3, 2);
        let bad = parse_element(&alg, "x3").unwrap();
        let err = DeformFactor::new(
            &alg,
            fx.group.generator(0),
            (0, 1),
            alg.field().zeta().unwrap(),
            bad,
        );
        assert!(matches!(err, Err(ActionError::NotSemiInvariant(..))));
        let good = parse_element(&alg, "x3^2").unwrap();
        assert!(DeformFactor::new(
            &alg,
            fx.group.generator(0),
            (0, 1),
            alg.field().zeta().unwrap(),
            good,
        )
        .is_ok());
    }

    #[test]
    fn semi_invariant_solver_degrees() {
        let fx = example51_fixture(3, 2);
        let g1 = fx.group.generator(0);
        // degree <= 2: only 1 and x3^2
        let sols = solve_semi_invariants(&fx.group, &fx.cocycle, &g1, (0, 1), 2);
        assert_eq!(
            sols,
            vec![Monomial::new(vec![0, 0, 0]), Monomial::new(vec![0, 0, 2])]
        );
        // degree <= 1: x3 fails the second generator's character equation
        let sols = solve_semi_invariants(&fx.group, &fx.cocycle, &g1, (0, 1), 1);
        assert_eq!(sols, vec![Monomial::new(vec![0, 0, 0])]);
    }

    #[test]
    fn semi_invariants_unconstrained_for_trivial_group() {
        let (group, cocycle) = trivial_group(3);
        let id = group.identity();
        let sols = solve_semi_invariants(&group, &cocycle, &id, (0, 1), 2);
        // all monomials in x3 of degree <= 2
        assert_eq!(sols.len(), 3);
    }

    #[test]
    fn skew_derivations_on_fixture() {
        let (_, factors) = fixture(3, 2);
        for f in &factors {
            assert!(check_skew_derivations(f, 3).is_ok());
        }
    }

    #[test]
    fn skew_derivation_sweep_rejects_invalid_semi_invariant() {
        // bypass validation to plant an s that fails its character
        // equation; the sweep must then find a violating pair
        let (alg, factors) = fixture(3, 2);
        let valid = &factors[0];
        let bad_s = parse_element(&alg, "x3").unwrap();
        let bad = Arc::new(DeformFactor {
            algebra: alg.clone(),
            g: valid.g.clone(),
            pair: valid.pair,
            ctx: valid.ctx.clone(),
            ctx_inv: valid.ctx_inv.clone(),
            s_gbar: bad_s.mul(&CPElement::group_unit(&alg, &valid.g)),
            s: bad_s,
        });
        assert!(check_skew_derivations(&bad, 2).is_err());
        assert!(check_module_algebra(&bad, 2).is_err());
    }

    #[test]
    fn trivial_cocycle_needs_different_semi_invariants() {
        // with the trivial cocycle, s = 1 is not admissible for the first
        // fixture factor, but s = x3 is
        let fx = example51_fixture(3, 2);
        let alg = CrossedAlgebra::free(
            fx.group.clone(),
            crate::group::TwoCocycle::trivial(&fx.group),
        );
        let q = alg.field().zeta().unwrap();
        let g1 = fx.group.generator(0);
        assert!(matches!(
            DeformFactor::new(&alg, g1.clone(), (0, 1), q.clone(), CPElement::one(&alg)),
            Err(ActionError::NotSemiInvariant(..))
        ));
        let s = parse_element(&alg, "x3").unwrap();
        let f = DeformFactor::new(&alg, g1, (0, 1), q, s).unwrap();
        assert!(check_module_algebra(&f, 3).is_ok());
    }

    #[test]
    fn module_algebra_on_fixture_and_weyl() {
        let (_, factors) = fixture(3, 2);
        assert!(check_module_algebra(&factors[0], 3).is_ok());
        let (_, wf) = weyl_factor();
        assert!(check_module_algebra(&wf, 4).is_ok());
    }

    #[test]
    fn nilpotency_of_operators_at_roots_of_unity() {
        let (alg, factors) = fixture(3, 2);
        let f = &factors[1];
        let (d1, d2, _) = make_operators(f);
        for (m, g) in basis_up_to_degree(&alg, 4) {
            let b = term(&alg, &m, &g);
            assert!(d1.apply(&d1.apply(&b)).is_zero());
            assert!(d2.apply(&d2.apply(&b)).is_zero());
        }
    }

    #[test]
    fn commuting_factors_fixture() {
        let (_, factors) = fixture(3, 2);
        assert!(check_commuting_factors(&factors, 3).is_ok());
        assert!(check_commuting_factors(&factors[..1], 5).is_ok());
    }

    #[test]
    fn mixed_relations_inverse_pair() {
        // G = Z/3 acting on C^2 by diag(q, q^{-1}); factors for g and g^{-1}
        let field = ScalarField::cyclotomic(3);
        let group = crate::group::GroupSpec::new(
            vec![3],
            2,
            vec![vec![1, -1]],
            field.clone(),
        )
        .unwrap();
        let cocycle = crate::group::TwoCocycle::trivial(&group);
        let alg = CrossedAlgebra::free(group.clone(), cocycle);
        let q = field.zeta().unwrap();
        let f = DeformFactor::new(
            &alg,
            group.element(&[1]),
            (0, 1),
            q.clone(),
            CPElement::one(&alg),
        )
        .unwrap();
        let f_inv = DeformFactor::new(
            &alg,
            group.element(&[2]),
            (0, 1),
            q.inv().unwrap(),
            CPElement::one(&alg),
        )
        .unwrap();
        assert!(check_mixed_relations(&f, &f_inv, 3).is_ok());
        // the two factors genuinely do not commute
        assert!(check_commuting_factors(&[f, f_inv], 3).is_err());
    }

    #[test]
    fn weyl_specialization_collapses_to_derivations() {
        let (alg, f) = weyl_factor();
        let (d1, d2, sigma) = make_operators(&f);
        let a = parse_element(&alg, "x1^2 x2").unwrap();
        // sigma is the identity
        assert_eq!(sigma.apply(&a), a);
        // D1, D2 are plain partial derivatives
        assert_eq!(d1.apply(&a), parse_element(&alg, "2 * x1 x2").unwrap());
        assert_eq!(d2.apply(&a), parse_element(&alg, "x1^2").unwrap());
        assert!(check_module_algebra(&f, 4).is_ok());
    }
}
