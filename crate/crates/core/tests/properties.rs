use apncert_core::lalpha::{d_alpha, l_alpha, lift_through_t, scale_weighted, t_alpha};
use apncert_core::uniformity::{ddt_row, delta_exhaustive};
use apncert_core::{FieldCtx, FieldElem, UPoly};
use proptest::prelude::*;

fn ctx(n: u32) -> FieldCtx {
    FieldCtx::default_for(n).unwrap()
}

fn elem(k: &FieldCtx, bits: u64) -> FieldElem {
    FieldElem::from_bits(bits & k.mask())
}

fn poly(k: &FieldCtx, bits: &[u64]) -> UPoly {
    UPoly::new(k, bits.iter().map(|&b| elem(k, b)).collect())
}

proptest! {
    #[test]
    fn field_is_a_field(n in 1u32..=63, a: u64, b: u64, c: u64) {
        let k = ctx(n);
        let (a, b, c) = (elem(&k, a), elem(&k, b), elem(&k, c));
        prop_assert_eq!(k.mul(a, b + c), k.mul(a, b) + k.mul(a, c));
        prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
        prop_assert_eq!(k.sqr(a + b), k.sqr(a) + k.sqr(b));
        prop_assert_eq!(k.sqr(k.sqrt(a)), a);
        if !a.is_zero() {
            prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), FieldElem::ONE);
        }
        prop_assert_eq!(k.trace(a), k.trace_by_squaring(a));
    }

    #[test]
    fn artin_schreier_solutions_solve(n in 2u32..=40, a: u64, c: u64) {
        let k = ctx(n);
        let (a, c) = (elem(&k, a), elem(&k, c));
        prop_assume!(!a.is_zero());
        match k.solve_artin_schreier(a, c).unwrap() {
            Some(x) => prop_assert_eq!(k.sqr(x) + k.mul(a, x), c),
            // solvable exactly when Tr(c / a^2) = 0
            None => prop_assert_eq!(k.trace(k.div(c, k.sqr(a)).unwrap()), 1),
        }
    }

    #[test]
    fn division_and_gcd(f in prop::collection::vec(any::<u64>(), 1..12), g in prop::collection::vec(any::<u64>(), 1..8)) {
        let k = ctx(9);
        let (f, g) = (poly(&k, &f), poly(&k, &g));
        prop_assume!(!g.is_zero());
        let (q, r) = f.divrem(&g).unwrap();
        prop_assert_eq!(&(&q * &g) + &r, f.clone());
        prop_assert!(r.degree() < g.degree() || r.is_zero());
        let h = f.gcd(&g).unwrap();
        prop_assert!(f.rem(&h).unwrap().is_zero() && g.rem(&h).unwrap().is_zero());
        // resultant vanishes exactly when there is a common factor
        prop_assert_eq!(f.resultant(&g).unwrap().is_zero(), h.degree() != Some(0));
    }

    #[test]
    fn interpolation_reproduces_points(n in 6u32..=20, seed: u64, deg in 0usize..30) {
        let k = ctx(n);
        let f = poly(&k, &(0..=deg as u64).map(|i| seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).rotate_left(i as u32) ^ i).collect::<Vec<_>>());
        let pts: Vec<_> = (1..=deg as u64 + 1).map(|x| (FieldElem::from_bits(x), f.evaluate(FieldElem::from_bits(x)))).collect();
        prop_assert_eq!(UPoly::interpolate(&k, &pts).unwrap(), f);
    }

    #[test]
    fn even_polynomials_have_square_roots(n in 1u32..=30, c in prop::collection::vec(any::<u64>(), 1..10)) {
        let k = ctx(n);
        let s = poly(&k, &c);
        let sq = s.square();
        prop_assert_eq!(sq.sqrt_even().unwrap(), s.clone());
        // derivative of a square vanishes
        prop_assert!(sq.derivative().is_zero());
    }

    #[test]
    fn lift_inverts_composition(n in 1u32..=20, c in prop::collection::vec(any::<u64>(), 1..10), a: u64) {
        let k = ctx(n);
        let a = elem(&k, a);
        prop_assume!(!a.is_zero());
        let g = poly(&k, &c);
        let p = g.compose(&t_alpha(&k, a)).unwrap();
        prop_assert_eq!(lift_through_t(&p, a).unwrap(), g);
    }

    #[test]
    fn every_derivative_lifts(n in 1u32..=16, c in prop::collection::vec(any::<u64>(), 1..30), a: u64) {
        // D_a f is invariant under x -> x + a, so it is a polynomial in x(x + a)
        let k = ctx(n);
        let a = elem(&k, a);
        prop_assume!(!a.is_zero());
        let f = poly(&k, &c);
        let l = lift_through_t(&d_alpha(&f, a).unwrap(), a).unwrap();
        prop_assert_eq!(l.compose(&t_alpha(&k, a)).unwrap(), d_alpha(&f, a).unwrap());
    }

    #[test]
    fn b_coefficients_are_weighted_homogeneous(m in prop::sample::select(vec![12usize, 20, 24]), seed: u64, a: u64, lam: u64) {
        let k = ctx(14);
        let (a, lam) = (elem(&k, a), elem(&k, lam));
        prop_assume!(!a.is_zero() && !lam.is_zero());
        let f = poly(&k, &(0..=m as u64).map(|i| seed.rotate_left(i as u32) ^ (i + 1)).collect::<Vec<_>>());
        prop_assume!(f.degree() == Some(m));
        let b = l_alpha(&f, a).unwrap();
        let bl = l_alpha(&scale_weighted(&f, lam), k.mul(lam, a)).unwrap();
        for i in 0..=b.d {
            prop_assert_eq!(bl.b[i], k.mul(k.pow(lam, 2 * i as u128 + 2), b.b[i]));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ddt_rows_pair_up(n in 2u32..=10, c in prop::collection::vec(any::<u64>(), 1..14), a: u64) {
        let k = ctx(n);
        let a = elem(&k, a);
        prop_assume!(!a.is_zero());
        let row = ddt_row(&poly(&k, &c), a).unwrap();
        prop_assert!(row.counts.iter().all(|c| c % 2 == 0));
        prop_assert_eq!(row.counts.iter().map(|&c| c as u64).sum::<u64>(), 1u64 << n);
    }

    #[test]
    fn delta_ignores_constants_and_shifts(n in 2u32..=8, c in prop::collection::vec(any::<u64>(), 1..14), g: u64, t: u64) {
        let k = ctx(n);
        let f = poly(&k, &c);
        let base = delta_exhaustive(&f).unwrap().delta;
        prop_assert_eq!(delta_exhaustive(&f.add_constant(elem(&k, g))).unwrap().delta, base);
        prop_assert_eq!(delta_exhaustive(&f.shift(elem(&k, t))).unwrap().delta, base);
    }
}
