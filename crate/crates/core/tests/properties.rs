use proptest::prelude::*;
use qseries::aeb;
use qseries::qobjects::{pochhammer, q_binomial, PochSpec};
use qseries::verify::assert_equal;
use qseries::{Monomial, TruncSeries};

prop_compose! {
    fn laurent(unit_lead: bool)(
        valuation in -3i64..=3,
        span in 0i64..=10,
        lead in prop_oneof![Just(1i64), Just(-1)],
        tail in proptest::collection::vec(-5i64..=5, 11),
    ) -> TruncSeries {
        let mut coeffs = vec![if unit_lead { lead } else { 2 * lead }];
        coeffs.extend_from_slice(&tail[..span as usize]);
        TruncSeries::from_i64s(valuation, valuation + span, &coeffs)
    }
}

proptest! {
    #[test]
    fn ring_axioms(a in laurent(true), b in laurent(true), c in laurent(true)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn division_inverts_multiplication(a in laurent(true), b in laurent(false)) {
        let back = (&a * &b).div(&b).unwrap();
        prop_assert!(back.eq_to_order(&a, back.order()));
        prop_assert!(back.order() >= a.valuation() - 1);
    }

    #[test]
    fn substitution_is_a_homomorphism(a in laurent(true), b in laurent(true), m in 1u32..=4) {
        prop_assert_eq!((&a + &b).substitute_power(m), &a.substitute_power(m) + &b.substitute_power(m));
        prop_assert_eq!((&a * &b).substitute_power(m), &a.substitute_power(m) * &b.substitute_power(m));
    }

    #[test]
    fn unitize_undoes_substitution(a in laurent(true), m in 1u32..=5) {
        let p = a.shift(3 - a.valuation());
        prop_assert_eq!(p.substitute_power(m).unitize(m).unwrap(), p);
    }

    #[test]
    fn negate_variable_is_an_involution(a in laurent(false)) {
        prop_assert_eq!(a.negate_variable().negate_variable(), a);
    }

    #[test]
    fn integer_pipelines_stay_integral(a in laurent(true), b in laurent(true), e in 1i64..=6) {
        let x = (&a * &b).div(&b).unwrap().div(&a).unwrap();
        let y = pochhammer(&PochSpec::finite(Monomial::neg_q(-e), 2, 3), 10).unwrap();
        prop_assert!(x.is_integral());
        prop_assert!((&x * &y).div(&y).unwrap().is_integral());
    }

    #[test]
    fn equality_reports_are_symmetric_and_transitive(a in laurent(true), order in 0i64..=6) {
        let a = a.shift(-a.valuation()).truncate(order);
        prop_assume!(a.order() == order);
        let b = a.mul_sparse(&qseries::SparsePoly::one_minus(Monomial::q(order + 1)));
        let c = &b + &TruncSeries::zero(order + 5);
        let ab = assert_equal(&a, &b, order).unwrap();
        prop_assert_eq!(ab.passed(), assert_equal(&b, &a, order).unwrap().passed());
        prop_assert!(ab.passed());
        prop_assert!(assert_equal(&b, &c, order).unwrap().passed());
        prop_assert!(assert_equal(&a, &c, order).unwrap().passed());
    }

    #[test]
    fn q_binomial_pascal(m in 2u64..=14, n in 1u64..=13, base in 1u32..=3) {
        prop_assume!(n < m);
        let order = 120;
        let pascal = &q_binomial(m - 1, n - 1, base, order)
            + &q_binomial(m - 1, n, base, order).shift(base as i64 * n as i64);
        prop_assert!(q_binomial(m, n, base, order).eq_to_order(&pascal, order));
    }

    #[test]
    fn one_substitution_sums_to_one(m in 0u64..=20) {
        let order = 4 * m as i64 + 10;
        let d = aeb::one_substitution(m, order).unwrap();
        prop_assert_eq!(d.sum(), TruncSeries::one(order));
    }
}
