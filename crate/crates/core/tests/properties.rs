//! Property tests over randomly generated exact scalars and algebra
//! elements.

use proptest::prelude::*;

use qdeform::crossed::{CPElement, CrossedAlgebra, Monomial};
use qdeform::group::example51_fixture;
use qdeform::hopf::{HopfAlgebra, HopfElement, HopfMono};
use qdeform::qcalc::QContext;
use qdeform::scalar::{Scalar, ScalarField};

fn rational(num: i32, den: u8) -> num_rational::BigRational {
    num_rational::BigRational::new((num as i64).into(), (den as i64 + 1).into())
}

/// A random element of Q(zeta_N): small rational coefficients on zeta
/// powers.
fn cyclotomic_scalar(order: u64) -> impl Strategy<Value = Scalar> {
    let field = ScalarField::cyclotomic(order);
    prop::collection::vec((any::<i32>(), any::<u8>()), 0..4).prop_map(move |coeffs| {
        let mut acc = field.zero();
        for (k, (num, den)) in coeffs.into_iter().enumerate() {
            let c = field.from_rational(rational(num % 1000, den));
            let z = field.zeta_power(k as i64).unwrap();
            acc = acc.add(&c.mul(&z));
        }
        acc
    })
}

fn generic_scalar() -> impl Strategy<Value = Scalar> {
    let field = ScalarField::generic();
    (
        prop::collection::vec(-50i64..50, 1..4),
        prop::collection::vec(-50i64..50, 1..4),
    )
        .prop_map(move |(num, den)| {
            let poly = |coeffs: &[i64]| {
                let mut acc = field.zero();
                for (k, &c) in coeffs.iter().enumerate() {
                    let term = field
                        .from_integer(c)
                        .mul(&field.q_power(k as i64).unwrap());
                    acc = acc.add(&term);
                }
                acc
            };
            let n = poly(&num);
            let mut d = poly(&den);
            if d.is_zero() {
                d = field.one();
            }
            n.div(&d).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms((a, b, c) in (2u64..9).prop_flat_map(|n| {
        (cyclotomic_scalar(n), cyclotomic_scalar(n), cyclotomic_scalar(n))
    })) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            let inv = a.inv().unwrap();
            prop_assert!(a.mul(&inv).is_one());
        }
    }

    #[test]
    fn generic_field_axioms((a, b) in (generic_scalar(), generic_scalar())) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        if !b.is_zero() {
            prop_assert_eq!(a.div(&b).unwrap().mul(&b), a);
        }
    }

    #[test]
    fn canonical_form_survives_display_roundtrip(a in cyclotomic_scalar(5)) {
        let field = ScalarField::cyclotomic(5);
        let shown = a.to_string();
        prop_assert_eq!(field.parse(&shown).unwrap(), a);
    }

    #[test]
    fn hopf_multiplication_associative(
        (xs, ys, zs) in (
            prop::collection::vec((0u32..3, 0u32..3, -2i64..3, -4i64..5), 1..3),
            prop::collection::vec((0u32..3, 0u32..3, -2i64..3, -4i64..5), 1..3),
            prop::collection::vec((0u32..3, 0u32..3, -2i64..3, -4i64..5), 1..3),
        )
    ) {
        let field = ScalarField::cyclotomic(4);
        let alg = HopfAlgebra::standard(QContext::new(field.zeta().unwrap()));
        let build = |spec: &[(u32, u32, i64, i64)]| {
            let mut acc = HopfElement::zero(&alg);
            for &(d1, d2, sigma, coef) in spec {
                let term = HopfElement::term(
                    &alg,
                    HopfMono { d1, d2, sigma },
                    field.from_integer(coef),
                );
                acc = acc.add(&term);
            }
            acc
        };
        let (a, b, c) = (build(&xs), build(&ys), build(&zs));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        // the coproduct is an algebra morphism
        prop_assert_eq!(a.mul(&b).coproduct(), a.coproduct().mul(&b.coproduct()));
    }

    #[test]
    fn crossed_product_unit_and_scaling(
        terms in prop::collection::vec(
            ((0u32..3, 0u32..3, 0u32..3), (0i64..2, 0i64..2), -5i64..6),
            1..5,
        )
    ) {
        let fx = example51_fixture(3, 2);
        let alg = CrossedAlgebra::free(fx.group.clone(), fx.cocycle.clone());
        let mut a = CPElement::zero(&alg);
        for ((e1, e2, e3), (g1, g2), coef) in terms {
            let t = CPElement::term(
                &alg,
                Monomial::new(vec![e1, e2, e3]),
                alg.group().element(&[g1, g2]),
                alg.field().from_integer(coef),
            );
            a = a.add(&t);
        }
        let one = CPElement::one(&alg);
        prop_assert_eq!(one.mul(&a), a.clone());
        prop_assert_eq!(a.mul(&one), a.clone());
        prop_assert_eq!(a.sub(&a), CPElement::zero(&alg));
        // conjugation preserves products
        let g = alg.group().generator(0);
        let conj = |x: &CPElement| qdeform::crossed::conjugate(&alg, &g, x);
        prop_assert_eq!(conj(&a.mul(&a)), conj(&a).mul(&conj(&a)));
    }
}
