use genus4::cartier::{
    a_number, cartier_matrix, is_supersingular_genus2, reduced_system_holds, transform,
    CartierMatrix,
};
use genus4::{Elem, Field, UniPoly};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random quadruple; every other one is forced onto `M M^σ = 0` through a
/// rank-one `u w^T` with `w ⟂ u^σ`, so both truth values get exercised.
fn quadruple(f: &Field, rng: &mut ChaCha8Rng, structured: bool) -> [Elem; 4] {
    if !structured {
        return [0; 4].map(|_| f.random(rng));
    }
    let (u1, u2, t) = (f.random(rng), f.random(rng), f.random(rng));
    let w1 = f.mul(&t, &f.neg(&f.frobenius(&u2)));
    let w2 = f.mul(&t, &f.frobenius(&u1));
    [f.mul(&u1, &w1), f.mul(&u1, &w2), f.mul(&u2, &w1), f.mul(&u2, &w2)]
}

#[test]
fn supersingularity_matches_reduced_system() {
    for p in [5u64, 7, 11, 13] {
        let f = Field::build_extension(p, 2, p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        let (mut yes, mut disagreements) = (0, 0);
        for i in 0..1000 {
            let [a, b, c, d] = quadruple(&f, &mut rng, i % 2 == 1);
            let m = CartierMatrix::new(&f, a, b, c, d);
            let lhs = is_supersingular_genus2(&m);
            if lhs != reduced_system_holds(&f, &a, &b, &c, &d) {
                disagreements += 1;
            }
            yes += lhs as usize;
        }
        assert_eq!(disagreements, 0, "p = {p}");
        assert!(yes >= 500, "p = {p}: only {yes} supersingular samples");
    }
}

fn random_squarefree_sextic(f: &Field, rng: &mut ChaCha8Rng) -> UniPoly {
    loop {
        let mut c: Vec<Elem> = (0..6).map(|_| f.random(rng)).collect();
        c.push(f.one());
        let poly = UniPoly::new(f, c);
        if poly.is_squarefree() {
            return poly;
        }
    }
}

#[test]
fn substitution_acts_by_twisted_conjugation() {
    for p in [5u64, 7, 11] {
        let f = Field::build_extension(p, 2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(100 + p);
        for _ in 0..100 {
            let poly = random_squarefree_sextic(&f, &mut rng);
            let u = loop {
                let u = f.random(&mut rng);
                if !u.is_zero() {
                    break u;
                }
            };
            let v = f.random(&mut rng);
            let m = cartier_matrix(&poly).unwrap();
            let direct = cartier_matrix(&poly.compose_affine(&u, &v)).unwrap();
            let conj = transform(&m, &u, &v).unwrap();
            assert_eq!(direct, conj, "p = {p}");
            assert_eq!(is_supersingular_genus2(&m), is_supersingular_genus2(&conj));
            assert_eq!(a_number(&m), a_number(&conj));
        }
    }
}

#[test]
fn literature_genus2_example_at_three() {
    let f = Field::prime(3).unwrap();
    let m = cartier_matrix(&UniPoly::from_u64s(&f, &[1, 0, 0, 0, 0, 1])).unwrap();
    assert_eq!(m, CartierMatrix::new(&f, f.zero(), f.one(), f.zero(), f.zero()));
    assert!(is_supersingular_genus2(&m));
    assert_eq!(a_number(&m), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Entries read off a full power computed by repeated multiplication.
    #[test]
    fn entries_are_coefficients_of_the_power(raw in prop::collection::vec(any::<u64>(), 6), p in prop::sample::select(vec![5u64, 7, 11])) {
        let f = Field::prime(p).unwrap();
        let mut c: Vec<Elem> = raw.iter().map(|v| f.from_u64(v % p)).collect();
        c.push(f.one());
        let poly = UniPoly::new(&f, c);
        prop_assume!(poly.is_squarefree());
        let mut g = UniPoly::one(&f);
        for _ in 0..(p - 1) / 2 {
            g = &g * &poly;
        }
        let m = cartier_matrix(&poly).unwrap();
        let p = p as usize;
        prop_assert_eq!(m.entries(), [g.coeff(p - 1), g.coeff(2 * p - 1), g.coeff(p - 2), g.coeff(2 * p - 2)]);
    }

    #[test]
    fn transform_inverts(seed in any::<u64>()) {
        let f = Field::build_extension(7, 2, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = CartierMatrix::new(&f, f.random(&mut rng), f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
        let u = f.add(&f.mul(&f.random(&mut rng), &f.random(&mut rng)), &f.one());
        prop_assume!(!u.is_zero());
        let v = f.random(&mut rng);
        // x = uX + v inverts to X = u^{-1} x - u^{-1} v.
        let ui = f.inv(&u).unwrap();
        let back = transform(&transform(&m, &u, &v).unwrap(), &ui, &f.neg(&f.mul(&ui, &v))).unwrap();
        prop_assert_eq!(back, m);
    }
}
