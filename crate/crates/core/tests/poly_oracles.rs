use apncert_core::{FieldCtx, FieldElem, UPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn square_roots_of_random_even_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(201);
    let k = FieldCtx::default_for(13).unwrap();
    for _ in 0..1000 {
        let s = UPoly::random(&k, rng.random_range(0..20), &mut rng);
        let f = s.square();
        let back = f.sqrt_even().unwrap();
        assert_eq!(back.square(), f);
        assert_eq!(back, s);
    }
    assert!(UPoly::zero(&k).sqrt_even().unwrap().is_zero());
    assert!(UPoly::x(&k).sqrt_even().is_err());
}

#[test]
fn sample_then_interpolate_degree_twenty() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let k = FieldCtx::default_for(8).unwrap();
    for _ in 0..100 {
        let f = UPoly::random(&k, 20, &mut rng);
        let mut xs: Vec<FieldElem> = k.elements().collect();
        // 21 distinct random abscissae
        for i in 0..21 {
            let j = rng.random_range(i..xs.len());
            xs.swap(i, j);
        }
        let pts: Vec<_> = xs[..21].iter().map(|&x| (x, f.evaluate(x))).collect();
        assert_eq!(UPoly::interpolate(&k, &pts).unwrap(), f);
    }
}

#[test]
fn root_counts_against_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(203);
    for trial in 0..1000 {
        let n = 1 + trial % 12;
        let k = FieldCtx::default_for(n).unwrap();
        let f = UPoly::random(&k, rng.random_range(1..12), &mut rng);
        let by_scan = k.elements().filter(|&x| f.evaluate(x).is_zero()).count();
        let c = f.count_roots_in_field().unwrap();
        assert_eq!(c, by_scan, "n={n} {f:?}");
        assert!(c <= f.degree().unwrap());
        // splits with distinct roots exactly when the count reaches the degree
        if c == f.degree().unwrap() {
            assert!(f.is_squarefree());
        }
    }
}

#[test]
fn small_root_count_examples() {
    let f2 = FieldCtx::gf2();
    let f4 = FieldCtx::default_for(2).unwrap();
    assert_eq!(UPoly::from_gf2_bits(&f4, 0b110).count_roots_in_field().unwrap(), 2);
    assert_eq!(UPoly::from_gf2_bits(&f2, 0b111).count_roots_in_field().unwrap(), 0);
    assert_eq!(UPoly::from_gf2_bits(&f4, 0b111).count_roots_in_field().unwrap(), 2);
    assert_eq!(UPoly::from_gf2_bits(&f2, 0b111).splitting_degree().unwrap(), 2);
    assert_eq!(UPoly::from_gf2_bits(&f4, 0b11).splitting_degree().unwrap(), 1);
}

#[test]
fn taylor_expansion_to_second_order() {
    // f(t + u) - f(t) - f'(t) u - f^[2](t) u^2 has no u-terms of degree <= 2
    let mut rng = ChaCha8Rng::seed_from_u64(204);
    let k = FieldCtx::default_for(11).unwrap();
    for _ in 0..50 {
        let f = UPoly::random(&k, rng.random_range(3..25), &mut rng);
        let t = k.random(&mut rng);
        // f(t + u) as a polynomial in u
        let g = f.shift(t);
        assert_eq!(g.coeff(0), f.evaluate(t));
        assert_eq!(g.coeff(1), f.derivative().evaluate(t));
        assert_eq!(g.coeff(2), f.hasse2().evaluate(t));
    }
}
