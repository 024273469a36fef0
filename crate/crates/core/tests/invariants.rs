use std::sync::Arc;

use proptest::prelude::*;
use rhoforms::sample;
use rhoforms::*;

fn z3() -> Arc<GradeGroup> {
    GradeGroup::free(3)
}

fn grade3() -> impl Strategy<Value = Grade> {
    prop::collection::vec(-6i64..=6, 3).prop_map(|c| z3().grade(&c).unwrap())
}

fn qplane_monomial(n: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0i64..=4, n).prop_map(Monomial::new)
}

fn clock_monomial(n: u32) -> impl Strategy<Value = Monomial> {
    (0..n as i64, 0..n as i64).prop_map(|(a, b)| Monomial::new(vec![a, b]))
}

fn qplane2() -> Arc<FormSpace> {
    FormSpace::trivial(&Presentation::quantum_plane(2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cocycle_is_an_antisymmetric_bicharacter(a in grade3(), b in grade3(), c in grade3()) {
        let rho = Cocycle::quantum_plane(3);
        prop_assert!((&rho.eval(&a, &b) * &rho.eval(&b, &a)).is_one());
        prop_assert_eq!(rho.eval(&(&a + &b), &c), &rho.eval(&a, &c) * &rho.eval(&b, &c));
        prop_assert!(rho.eval(&z3().zero(), &b).is_one());
    }

    #[test]
    fn quantum_plane_is_rho_commutative(a in qplane_monomial(3), b in qplane_monomial(3)) {
        let p = Presentation::quantum_plane(3);
        let u = AlgebraElement::monomial(&p, a);
        let v = AlgebraElement::monomial(&p, b);
        prop_assert!(u.rho_commutator(&v).unwrap().is_zero());
    }

    #[test]
    fn clock_shift_is_associative(a in clock_monomial(3), b in clock_monomial(3), c in clock_monomial(3)) {
        let p = Presentation::clock_shift(3).unwrap();
        let [u, v, w] = [a, b, c].map(|m| AlgebraElement::monomial(&p, m));
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
        prop_assert!(u.rho_commutator(&v).unwrap().is_zero());
    }

    #[test]
    fn products_add_grades(a in qplane_monomial(2), b in qplane_monomial(2)) {
        let p = Presentation::quantum_plane(2);
        let (c, m) = p.mul_monomials(&a, &b);
        prop_assert!(!c.is_zero());
        prop_assert_eq!(p.grade_of_monomial(&m), &p.grade_of_monomial(&a) + &p.grade_of_monomial(&b));
    }

    #[test]
    fn differential_squares_to_zero(seed in any::<u64>()) {
        let s = qplane2();
        let mut rng = sample::rng(seed);
        let w = sample::form(&mut rng, &s, 3, 3, 2);
        prop_assert!(w.differential().differential().is_zero());
    }

    #[test]
    fn graded_leibniz_rule(seed in any::<u64>()) {
        let s = qplane2();
        let mut rng = sample::rng(seed);
        let w = sample::homogeneous_form(&mut rng, &s, 2, 2);
        let t = sample::homogeneous_form(&mut rng, &s, 2, 2);
        prop_assert!(w.leibniz_check(&t).unwrap());
    }

    #[test]
    fn derivations_satisfy_the_twisted_leibniz_rule(seed in any::<u64>()) {
        let p = Presentation::quantum_plane(2);
        let mut rng = sample::rng(seed);
        let x = sample::derivation(&mut rng, &p, 2);
        let u = sample::homogeneous_element(&mut rng, &p, 3);
        let v = sample::element(&mut rng, &p, 2, 3);
        let t = p.cocycle().eval(x.degree(), &u.grade().unwrap());
        let rhs = &(&x.apply(&u).unwrap() * &v) + &(&u * &x.apply(&v).unwrap()).scale(&t);
        prop_assert_eq!(x.apply(&(&u * &v)).unwrap(), rhs);
    }

    #[test]
    fn decomposition_recovers_its_parts(seed in any::<u64>()) {
        let s = qplane2();
        let mut rng = sample::rng(seed);
        let g = sample::small_grade(&mut rng, s.presentation(), 2);
        let k = sample::field_valued_form(&mut rng, &s, 1, &g);
        let l = sample::field_valued_form(&mut rng, &s, 2, &g);
        let d = k.lie_derivation().checked_add(&l.contraction()).unwrap();
        let (k2, l2) = decompose(&d).unwrap();
        prop_assert_eq!(k2, k);
        prop_assert_eq!(l2, l);
    }

    #[test]
    fn contraction_extends_the_form(seed in any::<u64>()) {
        let s = qplane2();
        let mut rng = sample::rng(seed);
        let g = sample::small_grade(&mut rng, s.presentation(), 2);
        let k = sample::field_valued_form(&mut rng, &s, 1, &g);
        for (i, v) in k.values().iter().enumerate() {
            prop_assert_eq!(&k.contract(&Form::dgen(&s, i)).unwrap(), v);
        }
        let a = sample::element(&mut rng, s.presentation(), 2, 2);
        prop_assert!(k.contract(&Form::from_element(&s, &a).unwrap()).unwrap().is_zero());
    }
}
