#![allow(clippy::needless_range_loop)]

use degen_core::document::{family_document, table_document, OutputDocument};
use degen_core::families::{self, FamilyKind};
use degen_core::poly::{deg_falling_factorial, lambda_shifted_falling};
use degen_core::rational::{parse_rational, rat, render_rational};
use degen_core::series::{deg_exp, deg_log, exp_classical, log_classical};
use degen_core::triangles::{self, TriangleKind};
use degen_core::umbral::{identity_seq, umbral_compose, ShefferSeq};
use degen_core::{Coeff, LambdaPoly, Rational, Series, XPoly};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| *r != rat(0))
}

fn lambda_poly() -> impl Strategy<Value = LambdaPoly> {
    prop::collection::vec(small_rational(), 0..5).prop_map(LambdaPoly::new)
}

fn x_poly() -> impl Strategy<Value = XPoly> {
    prop::collection::vec(lambda_poly(), 0..4).prop_map(XPoly::new)
}

/// Series over λ-polynomials of degree ≤ 1 with the given constant and
/// linear terms forced.
fn series_with(order: usize, c0: Option<Rational>, c1: Option<Rational>) -> impl Strategy<Value = Series<LambdaPoly>> {
    prop::collection::vec((small_rational(), small_rational()), order + 1).prop_map(move |cs| {
        let mut coeffs: Vec<LambdaPoly> = cs.into_iter().map(|(a, b)| LambdaPoly::new(vec![a, b])).collect();
        if let Some(c) = &c0 {
            coeffs[0] = LambdaPoly::constant(c.clone());
        }
        if let Some(c) = &c1 {
            coeffs[1] = LambdaPoly::constant(c.clone());
        }
        Series::new(coeffs)
    })
}

fn delta_series(order: usize) -> impl Strategy<Value = Series<LambdaPoly>> {
    nonzero_rational().prop_flat_map(move |f1| series_with(order, Some(rat(0)), Some(f1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lambda_poly_ring_axioms(a in lambda_poly(), b in lambda_poly(), c in lambda_poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, LambdaPoly::ZERO);
        prop_assert_eq!(&a * &LambdaPoly::one(), a.clone());
    }

    #[test]
    fn x_poly_ring_axioms(a in x_poly(), b in x_poly(), c in x_poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert!((&a - &a).coeffs().is_empty());
    }

    #[test]
    fn canonical_form_has_no_trailing_zeros(a in x_poly(), b in x_poly()) {
        for p in [&a + &b, &a - &b, &a * &b] {
            prop_assert!(p.leading().is_none_or(|c| !c.is_zero()));
            for c in p.coeffs() {
                prop_assert!(c.leading().is_none_or(|r| *r != rat(0)));
            }
        }
    }

    #[test]
    fn specialization_is_a_ring_map(a in x_poly(), b in x_poly(), l in small_rational(), x in small_rational()) {
        prop_assert_eq!((&a * &b).evaluate(&l, &x), a.evaluate(&l, &x) * b.evaluate(&l, &x));
        prop_assert_eq!((&a + &b).specialize_lambda(&l), &a.specialize_lambda(&l) + &b.specialize_lambda(&l));
        // both evaluation orders agree
        prop_assert_eq!(a.at_x(&x).specialize(&l), a.specialize_lambda(&l).at_x(&x).specialize(&l));
    }

    #[test]
    fn rationals_round_trip(r in small_rational()) {
        let text = render_rational(&r);
        prop_assert_eq!(parse_rational(&text).unwrap(), r.clone());
        prop_assert!(*r.denom() > 0.into());
    }

    #[test]
    fn composition_is_associative(f in delta_series(10), g in delta_series(10), h in delta_series(10)) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn compositional_inverse_round_trips(f in delta_series(8)) {
        let inv = f.comp_inverse().unwrap();
        prop_assert_eq!(f.compose(&inv).unwrap(), Series::identity(8));
        prop_assert_eq!(inv.compose(&f).unwrap(), Series::identity(8));
    }

    #[test]
    fn multiplicative_inverse(c0 in nonzero_rational(), s in series_with(8, None, None)) {
        let mut coeffs = s.coeffs().to_vec();
        coeffs[0] = LambdaPoly::constant(c0);
        let unit = Series::new(coeffs);
        prop_assert_eq!(&unit * &unit.mul_inverse().unwrap(), Series::one(8));
    }

    #[test]
    fn specialized_triangles_stay_orthogonal(l in small_rational()) {
        let s1 = triangles::stirling1_deg_series(8).specialize(&l);
        let s2 = triangles::stirling2_deg_series(8).specialize(&l);
        for n in 0..=8 {
            for k in 0..=n {
                let sum: Rational = (k..=n).map(|m| &s1[n][m] * &s2[m][k]).sum();
                prop_assert_eq!(sum, rat(i64::from(n == k)));
            }
        }
    }

    #[test]
    fn family_values_match_explicit_sums(l in small_rational(), x in small_rational()) {
        let s2 = triangles::stirling2_deg_series(7);
        let bell = families::deg_bell(7).unwrap();
        for n in 0..=7 {
            let direct: Rational = (0..=n)
                .map(|k| s2[(n, k)].specialize(&l) * deg_falling_factorial(k).evaluate(&l, &x))
                .sum();
            prop_assert_eq!(bell[n].evaluate(&l, &x), direct);
        }
    }

    #[test]
    fn documents_round_trip(
        kind in prop::sample::select(vec!["s1", "s2", "s1deg", "s2deg", "j1", "j2", "t", "korobov"]),
        family in prop::sample::select(vec!["degbell", "newtypebell", "jindalrae", "gaenari"]),
        order in 0usize..7,
        l in prop::option::of(small_rational()),
        x in prop::option::of(small_rational()),
    ) {
        let r = (kind == "korobov").then_some(2);
        for doc in [
            table_document(kind, order, l.as_ref(), r).unwrap(),
            family_document(family, order, l.as_ref(), x.as_ref()).unwrap(),
        ] {
            let text = doc.render_json();
            let back = OutputDocument::from_json(&text).unwrap();
            prop_assert_eq!(back.render_json(), text);
            prop_assert_eq!(back, doc);
        }
    }

    #[test]
    fn sheffer_inverse_pairs(f in delta_series(6), g in series_with(6, Some(rat(1)), None)) {
        let s = ShefferSeq::from_pair(&g, &f, 6).unwrap();
        let inv = s.inverse().unwrap();
        let id = identity_seq(6);
        let left = umbral_compose(&inv, &s).unwrap();
        let right = umbral_compose(&s, &inv).unwrap();
        prop_assert_eq!(left.matrix(), id.matrix());
        prop_assert_eq!(right.matrix(), id.matrix());
    }
}

#[test]
fn triangle_shape() {
    for kind in TriangleKind::ALL {
        let t = triangles::triangle(kind, 12).unwrap();
        for n in 0..=12 {
            assert_eq!(t[(n, n)], LambdaPoly::one(), "{kind} diagonal at {n}");
            assert_eq!(t[(n, 0)], LambdaPoly::from_ints(&[i64::from(n == 0)]), "{kind} column 0 at {n}");
            assert!(t.get(n, n + 1).unwrap().coeffs().is_empty());
            for k in 0..=n {
                // the degree bound holds for every kind built from S1deg / S2deg
                if let Some(d) = t[(n, k)].degree() {
                    assert!(d <= n - k, "{kind} degree at ({n},{k})");
                }
            }
        }
    }
}

#[test]
fn falling_factorials_degenerate() {
    for n in 0..=12 {
        assert_eq!(deg_falling_factorial(n).specialize_lambda(&rat(0)), XPoly::monomial(LambdaPoly::one(), n));
    }
    for m in 1..=12 {
        let p = lambda_shifted_falling(m);
        assert_eq!(p.degree(), Some(m - 1));
        assert_eq!(p.leading(), Some(&rat(1)));
    }
}

#[test]
fn degenerate_series_limits() {
    for order in [4, 9, 16] {
        assert_eq!(deg_log(order).specialize(&rat(0)), log_classical(order).specialize(&rat(0)));
        assert_eq!(deg_exp(order).specialize(&rat(0)), exp_classical(order).specialize(&rat(0)));
    }
}

#[test]
fn families_are_monic() {
    for kind in FamilyKind::ALL {
        let fam = families::family(kind, 10).unwrap();
        assert_eq!(fam[0], XPoly::one());
        for (n, p) in fam.polys().iter().enumerate() {
            assert_eq!(p.degree(), Some(n));
            assert_eq!(p.leading(), Some(&LambdaPoly::one()));
        }
    }
}
