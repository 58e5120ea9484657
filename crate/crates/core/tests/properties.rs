use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use proptest::prelude::*;

use sedecim::classgroup::{check_fundamental, class_number, class_number_symmetric};
use sedecim::ideals::IdealLattice;
use sedecim::modular::is_prime;
use sedecim::sixteen::{normalize_u, q2_factor, solve_norm_equation};
use sedecim::symbols::jacobi;
use sedecim::{GaloisElement, MqElement, QContext, Subfield, SUPPORTED_Q};

fn element(bound: i64) -> impl Strategy<Value = MqElement> {
    prop::array::uniform4(-bound..=bound).prop_map(|[a, b, c, d]| MqElement::new(a, b, c, d))
}

fn ctx() -> impl Strategy<Value = QContext> {
    prop::sample::select(SUPPORTED_Q.to_vec()).prop_map(|q| QContext::new(q).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(c in ctx(), x in element(50), y in element(50), z in element(50)) {
        prop_assert_eq!(c.mul(&x, &y), c.mul(&y, &x));
        prop_assert_eq!(c.mul(&c.mul(&x, &y), &z), c.mul(&x, &c.mul(&y, &z)));
        prop_assert_eq!(c.mul(&x, &(&y + &z)), &c.mul(&x, &y) + &c.mul(&x, &z));
    }

    #[test]
    fn galois_is_multiplicative(c in ctx(), x in element(30), y in element(30)) {
        for g in GaloisElement::ALL {
            prop_assert_eq!(c.galois_apply(g, &c.mul(&x, &y)), c.mul(&c.galois_apply(g, &x), &c.galois_apply(g, &y)));
            prop_assert_eq!(c.galois_apply(g, &c.galois_apply(g, &x)), x.clone());
        }
    }

    #[test]
    fn norms_are_multiplicative(c in ctx(), x in element(20), y in element(20)) {
        prop_assert_eq!(c.norm_to_q(&c.mul(&x, &y)), c.norm_to_q(&x) * c.norm_to_q(&y));
        for sub in [Subfield::Gauss, Subfield::Real, Subfield::Imag] {
            let n = c.norm_to_subfield(&x, sub).to_mq();
            prop_assert_eq!(c.galois_apply(sub.relative_generator(), &n), n);
        }
    }

    #[test]
    fn principal_ideal_has_norm_of_generator(c in ctx(), x in element(15)) {
        prop_assume!(!x.is_zero());
        let ideal = IdealLattice::from_generators(&c, std::slice::from_ref(&x)).unwrap();
        prop_assert_eq!(ideal.norm(), c.norm_to_q(&x));
        prop_assert!(ideal.contains(&x));
        prop_assert!(ideal.contains(&c.mul(&x, &c.eps)));
    }

    #[test]
    fn jacobi_is_multiplicative(a in -10_000i128..10_000, b in -10_000i128..10_000, n in 0i128..5_000) {
        let n = 2 * n + 1;
        prop_assert_eq!(jacobi(a * b, n).unwrap(), jacobi(a, n).unwrap() * jacobi(b, n).unwrap());
    }

    #[test]
    fn class_number_boundary_convention(n in 3i64..200_000) {
        let d = -n;
        prop_assume!(check_fundamental(d).is_ok());
        prop_assert_eq!(class_number(d).unwrap(), class_number_symmetric(d).unwrap());
    }

    #[test]
    fn normalization_keeps_the_norm(c in ctx(), k in 0usize..2000) {
        let p = (5 + 4 * k as u64..).step_by(4).find(|&p| is_prime(p) && jacobi(c.q as i128, p as i128).unwrap() == 1).unwrap();
        let (u, v) = solve_norm_equation(&c, p).unwrap();
        let (u2, v2) = normalize_u(&c, (&u, &v)).unwrap();
        let q = BigInt::from(c.q);
        prop_assert_eq!(&u2 * &u2 - &q * &v2 * &v2, BigInt::from(p));
        prop_assert!(u2.mod_floor(&BigInt::from(4)).is_one());
        prop_assert!(v2 >= BigInt::from(0));
    }

    #[test]
    fn q2_depends_on_classes_mod_8(c in ctx(), w in element(10), z in element(10), dw in element(2), dz in element(2)) {
        let w2 = &w + &dw.scale(&BigInt::from(8));
        let z2 = &z + &dz.scale(&BigInt::from(8));
        let v = q2_factor(&c, &w, &z);
        prop_assert!((-1..=1).contains(&v));
        prop_assert_eq!(v, q2_factor(&c, &w2, &z2));
    }
}
