use proptest::prelude::*;

use wpbailey::coeff::rational;
use wpbailey::mono::{poch_finite, HyperTerm};
use wpbailey::{CycNumber, LaurentSeries, Mono};

fn cyc() -> impl Strategy<Value = CycNumber> {
    prop::array::uniform4((-6i64..=6, 1i64..=5)).prop_map(|c| CycNumber::from_basis(c.map(|(n, d)| rational(n, d))))
}

fn nonzero_cyc() -> impl Strategy<Value = CycNumber> {
    cyc().prop_filter("nonzero", |c| !c.is_zero())
}

fn small_rat() -> impl Strategy<Value = CycNumber> {
    (-9i64..=9, 1i64..=9).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| CycNumber::from_ratio(n, d))
}

fn series() -> impl Strategy<Value = LaurentSeries> {
    (-3i64..=3, prop::collection::vec(-5i64..=5, 1..10), 0i64..4).prop_map(|(lower, cs, extra)| {
        let order = lower + cs.len() as i64 - 1 + extra;
        LaurentSeries::from_coeffs(lower, cs.into_iter().map(CycNumber::from_int).collect(), order)
    })
}

/// Nonzero leading coefficient inside the known window.
fn unit_led_series() -> impl Strategy<Value = LaurentSeries> {
    (-3i64..=3, nonzero_cyc(), prop::collection::vec(-5i64..=5, 0..9), 0i64..4).prop_map(|(lower, lead, rest, extra)| {
        let order = lower + rest.len() as i64 + extra;
        let coeffs = std::iter::once(lead).chain(rest.into_iter().map(CycNumber::from_int)).collect();
        LaurentSeries::from_coeffs(lower, coeffs, order)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_mul_associates(x in cyc(), y in cyc(), z in cyc()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn field_distributes(x in cyc(), y in cyc(), z in cyc()) {
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn field_inverse(x in nonzero_cyc()) {
        prop_assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn fast_path_matches_generic(x in cyc(), y in cyc()) {
        prop_assert_eq!(&x * &y, x.mul_generic(&y));
    }

    #[test]
    fn series_mul_commutes(a in series(), b in series()) {
        prop_assert!((&a * &b).agrees_with(&(&b * &a)));
    }

    #[test]
    fn series_mul_associates(a in series(), b in series(), c in series()) {
        prop_assert!((&(&a * &b) * &c).agrees_with(&(&a * &(&b * &c))));
    }

    #[test]
    fn series_inverse(a in unit_led_series()) {
        let inv = a.inv().unwrap();
        let p = &a * &inv;
        prop_assert!(p.agrees_with(&LaurentSeries::one(p.order())));
        prop_assert_eq!(p.order() - p.lower(), a.order() - a.lower());
    }

    #[test]
    fn binomial_roundtrip(a in series(), c in small_rat(), e in 1i64..4) {
        let back = a.mul_binomial(&c, e).div_binomial(&c, e).unwrap();
        prop_assert!(back.agrees_with(&a));
    }

    #[test]
    fn substitution_is_multiplicative(a in series(), b in series(), c in small_rat(), m in 1i64..4) {
        let lhs = (&a * &b).subst_monomial(&c, m).unwrap();
        let rhs = &a.subst_monomial(&c, m).unwrap() * &b.subst_monomial(&c, m).unwrap();
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn pochhammer_splits(c in small_rat(), e in -2i64..3, b in 1i64..3, n in 0i64..5, m in 0i64..5) {
        let q = Mono::var(b);
        let head = Mono::new(c, e).unwrap();
        let whole = poch_finite(&head, &q, n + m, 20).unwrap();
        let split = &poch_finite(&head, &q, n, 20).unwrap() * &poch_finite(&head.step(&q, n), &q, m, 20).unwrap();
        prop_assert!(whole.agrees_with(&split));
    }

    #[test]
    fn hyper_term_valuation_is_exact(x in small_rat(), y in small_rat(), e in -1i64..2, s in 0i64..3) {
        let q = Mono::var(1);
        let mut t = HyperTerm::new(15)
            .num(Mono::new(x, e).unwrap(), &q)
            .den_len(Mono::new(y, 1).unwrap(), &q, 2, 0)
            .den_linear(Mono::int(3), &Mono::var(2))
            .power(Mono::var(s));
        for n in 0..6 {
            let got = t.at(n).unwrap();
            prop_assert_eq!(got.valuation(), t.valuation(n));
        }
    }
}
