use fricke_core::cosine_sums::canonicalize;
use fricke_core::fricke_action::{apply, fricke_residual, omega4_of, Generator, Omega, Point3};
use fricke_core::parameter_maps::{apply_bt, apply_bt_omega, omega_from_theta, xi_cubic, xi_roots, BtName, Theta};
use fricke_core::sl2_monodromy::{act, invariants, reconstruct, BraidMove, MonodromyError, SevenTuple, Triple};
use fricke_core::trig_field::{CosSum, RationalAngle};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 1000, ..ProptestConfig::default() }
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// `c + a * 2cos(pi k/N)` with `N` up to 6.
fn cos_value() -> impl Strategy<Value = CosSum> {
    (small_rational(), small_rational(), 1i64..=6, 0i64..=6).prop_map(|(c, a, den, num)| {
        let mut v = CosSum::rational(c);
        let term = CosSum::two_cos(RationalAngle::from_ratio(Rational64::new(num, den))).scale(&a);
        v = &v + &term;
        v
    })
}

fn point() -> impl Strategy<Value = Point3> {
    (cos_value(), cos_value(), cos_value()).prop_map(|(x, y, z)| Point3::new(x, y, z))
}

fn shear_params() -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(small_rational(), 1..=3)
}

fn triple() -> impl Strategy<Value = Triple> {
    (shear_params(), shear_params(), shear_params()).prop_map(|(a, b, c)| Triple::from_shears([&a, &b, &c]))
}

fn theta_entry() -> impl Strategy<Value = Rational64> {
    (-8i64..=8, 1i64..=6).prop_map(|(n, d)| Rational64::new(n, d))
}

fn theta() -> impl Strategy<Value = Theta> {
    [theta_entry(), theta_entry(), theta_entry(), theta_entry()].prop_map(Theta)
}

fn q(r: &BigRational) -> CosSum {
    CosSum::rational(r.clone())
}

fn omega_of(s: &SevenTuple) -> [CosSum; 3] {
    let [wx, wy, wz, _] = s.omega();
    [q(&wx), q(&wy), q(&wz)]
}

fn xyz(s: &SevenTuple) -> Point3 {
    Point3::new(q(&s.x), q(&s.y), q(&s.z))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn generators_are_involutions(p in point(), w in [cos_value(), cos_value(), cos_value()]) {
        for g in Generator::ALL {
            prop_assert!(apply(g, &apply(g, &p, &w), &w).exact_eq(&p));
        }
    }

    #[test]
    fn residual_is_invariant(p in point(), w in [cos_value(), cos_value(), cos_value()]) {
        let om = Omega::new(w.clone(), omega4_of(&p, &w));
        prop_assert!(fricke_residual(&p, &om).is_zero());
        for g in Generator::ALL {
            prop_assert!(fricke_residual(&apply(g, &p, &w), &om).is_zero());
        }
    }

    #[test]
    fn matrix_moves_induce_trace_moves(t in triple()) {
        let s = invariants(&t).unwrap();
        let w = omega_of(&s);
        for (m, g) in [(BraidMove::X, Generator::X), (BraidMove::Y, Generator::Y), (BraidMove::Z, Generator::Z)] {
            let s2 = invariants(&act(m, &t)).unwrap();
            prop_assert_eq!((&s2.px, &s2.py, &s2.pz, &s2.pinf), (&s.px, &s.py, &s.pz, &s.pinf));
            prop_assert!(xyz(&s2).exact_eq(&apply(g, &xyz(&s), &w)));
        }
    }

    #[test]
    fn invariants_satisfy_cubic(t in triple()) {
        let s = invariants(&t).unwrap();
        prop_assert_eq!(s.residual(), BigRational::from_integer(0.into()));
    }

    #[test]
    fn reconstruction_round_trip(t in triple()) {
        let s = invariants(&t).unwrap();
        match reconstruct(&s) {
            Ok(t2) => prop_assert_eq!(invariants(&t2).unwrap(), s),
            Err(MonodromyError::ReducibleLocus) | Err(MonodromyError::NoAnchor) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn omega_fixed_by_d4_generators(t in theta()) {
        let om = omega_from_theta(&t);
        for b in [BtName::Sx, BtName::Sy, BtName::Sz, BtName::Sinf, BtName::Sdelta] {
            prop_assert!(omega_from_theta(&apply_bt(b, &t)).exact_eq(&om));
        }
    }

    #[test]
    fn bt_columns_agree(t in theta()) {
        let om = omega_from_theta(&t);
        for b in BtName::ALL {
            let img = omega_from_theta(&apply_bt(b, &t));
            prop_assert!(img.w4.exact_eq(&om.w4));
            prop_assert!(img.exact_eq(&apply_bt_omega(b, &om)));
        }
    }

    #[test]
    fn r_twice_keeps_p(t in theta()) {
        for b in [BtName::Rx, BtName::Ry, BtName::Rz] {
            let t2 = apply_bt(b, &apply_bt(b, &t));
            let (p, p2) = (t.p(), t2.p());
            prop_assert!(p.iter().zip(&p2).all(|(a, b)| a.exact_eq(b)));
        }
    }

    #[test]
    fn cosine_canonical_form_is_class_invariant(
        phis in prop::collection::vec((0i64..60, 1i64..=12), 2..=6),
        flips in prop::collection::vec(any::<bool>(), 6),
        half in any::<bool>(),
        shift in prop::collection::vec(-2i64..=2, 6),
    ) {
        let t: Vec<Rational64> = phis.iter().map(|&(n, d)| Rational64::new(n, d)).collect();
        let c = canonicalize(&t);
        prop_assert_eq!(canonicalize(&c), c.clone());
        let mut img: Vec<Rational64> = t.iter().enumerate().map(|(i, &p)| {
            let p = if flips[i] { Rational64::from_integer(1) - p } else { p };
            p + Rational64::from_integer(shift[i])
        }).collect();
        if half {
            img = img.iter().map(|&p| Rational64::new(1, 2) - p).collect();
        }
        img.reverse();
        prop_assert_eq!(canonicalize(&img), c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn xi_roots_are_the_cubic_roots(t in theta()) {
        let om = omega_from_theta(&t);
        let [a, b, c] = xi_cubic(&om);
        let [r0, r1, r2] = xi_roots(&t);
        prop_assert!((&(&r0 + &r1) + &r2).exact_eq(&a));
        prop_assert!((&(&(&r0 * &r1) + &(&r0 * &r2)) + &(&r1 * &r2)).exact_eq(&b));
        prop_assert!((&(&r0 * &r1) * &r2).exact_eq(&c));
    }
}
