use genus4::cartier::{a_number, cartier_matrix, cartier_matrix_unchecked, reduced_system_holds, CartierMatrix};
use genus4::howe::{
    build_pair, check_coprimality_lemma, check_order_lemmas, default_families, legendre_families,
    search_at_degree, search_families, symbolic_cartier, verify_certificate, HoweCertificate,
    HoweFamily, SearchConfig, Strategy, SymbolicCartier, DEFAULT_SYMBOLIC_CAP,
};
use genus4::upoly::Embedding;
use genus4::Field;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn check_certificate(c: &HoweCertificate) {
    assert!(c.flags.all(), "{c:?}");
    let f = Field::from_spec(&c.field).unwrap();
    let dec = |v: &Vec<u64>| f.from_coeffs(v).unwrap();
    let (l, m, n) = (dec(&c.point.lambda), dec(&c.point.mu), dec(&c.point.nu));
    assert!(!m.is_zero() && !n.is_zero());
    let fam = HoweFamily::new(
        &f,
        dec(&c.family.a1),
        dec(&c.family.b1),
        dec(&c.family.a2),
        dec(&c.family.b2),
    )
    .unwrap();
    let (f1, f2) = build_pair(&fam, &l, &m, &n);
    assert!(f1.gcd(&f2).unwrap().is_one());
    let mat = cartier_matrix(&(&f1 * &f2)).unwrap();
    assert!(reduced_system_holds(&f, &mat.a, &mat.b, &mat.c, &mat.d));
    assert_eq!(HoweCertificate::issue(&fam, &l, &m, &n), *c);
    let r = verify_certificate(c).unwrap();
    assert!(r.ok, "{r:?}");
    assert!(matches!(a_number(&mat), 1 | 2));
    assert_eq!(r.a_number_howe, 2 + a_number(&mat));
    let json = serde_json::to_string(c).unwrap();
    assert_eq!(&serde_json::from_str::<HoweCertificate>(&json).unwrap(), c);
}

#[test]
fn certificates_satisfy_every_condition() {
    for p in [5u64, 7, 17, 19, 23] {
        let out = search_families(&default_families(p).unwrap(), &SearchConfig::default()).unwrap();
        assert!(!out.certificates.is_empty(), "p = {p}");
        for c in &out.certificates {
            assert_eq!(Some(c.extension_degree()), out.k);
            check_certificate(c);
        }
    }
}

#[test]
fn strategies_agree_on_every_family() {
    for p in [5u64, 7] {
        for fam in default_families(p).unwrap() {
            for k in 1..=2 {
                let scan = SearchConfig {
                    strategy: Strategy::Scan,
                    ..SearchConfig::default()
                };
                let res = SearchConfig {
                    strategy: Strategy::Resultant,
                    ..SearchConfig::default()
                };
                let a = search_at_degree(&fam, k, &scan).unwrap().certificates;
                let b = search_at_degree(&fam, k, &res).unwrap().certificates;
                assert_eq!(a, b, "p = {p}, k = {k}");
            }
        }
    }
}

#[test]
fn strategies_agree_where_certificates_exist_at_k1() {
    // At p = 11 every default family has points over F_11 itself.
    let mut total = 0;
    for fam in default_families(11).unwrap() {
        let cfg = |strategy| SearchConfig {
            strategy,
            ..SearchConfig::default()
        };
        let a = search_at_degree(&fam, 1, &cfg(Strategy::Scan)).unwrap().certificates;
        let b = search_at_degree(&fam, 1, &cfg(Strategy::Resultant)).unwrap().certificates;
        assert_eq!(a, b);
        total += a.len();
    }
    assert!(total > 0);
}

fn lifted(sc: &SymbolicCartier, emb: &Embedding) -> SymbolicCartier {
    SymbolicCartier {
        field: emb.target().clone(),
        a: sc.a.embed(emb).unwrap(),
        b: sc.b.embed(emb).unwrap(),
        c: sc.c.embed(emb).unwrap(),
        d: sc.d.embed(emb).unwrap(),
        ..sc.clone()
    }
}

#[test]
fn specialization_agrees_with_numeric_matrix() {
    for p in [5u64, 7, 11] {
        for fam in default_families(p).unwrap() {
            let sc = symbolic_cartier(&fam, DEFAULT_SYMBOLIC_CAP).unwrap();
            let f2 = Field::build_extension(p, 2, 4).unwrap();
            let emb = Embedding::new(fam.field(), &f2).unwrap();
            let sc2 = lifted(&sc, &emb);
            let fam2 = fam.over(&f2).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p);
            for _ in 0..50 {
                let [l, m, n] = [0; 3].map(|_| f2.random(&mut rng));
                let (g1, g2) = build_pair(&fam2, &l, &m, &n);
                let numeric: CartierMatrix = cartier_matrix_unchecked(&(&g1 * &g2));
                assert_eq!(sc2.specialize(&l, &m, &n).unwrap(), numeric, "p = {p}");
            }
        }
    }
}

#[test]
fn order_and_coprimality_lemmas() {
    for p in [5u64, 7, 11] {
        for fam in default_families(p).unwrap() {
            let sc = symbolic_cartier(&fam, DEFAULT_SYMBOLIC_CAP).unwrap();
            let r = check_order_lemmas(&sc).unwrap();
            assert!(r.passed(), "p = {p}: {:?}", r.failures());
        }
        for fam in legendre_families(p).unwrap() {
            assert!(check_coprimality_lemma(&fam, DEFAULT_SYMBOLIC_CAP).unwrap(), "p = {p}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Any single-coordinate edit of a certificate is caught.
    #[test]
    fn edits_are_rejected(which in 0usize..3, shift in 1u64..5) {
        let out = search_families(&default_families(5).unwrap(), &SearchConfig::default()).unwrap();
        let mut c = out.certificates[0].clone();
        let slot = match which {
            0 => &mut c.point.lambda,
            1 => &mut c.point.mu,
            _ => &mut c.matrix.b,
        };
        slot[0] = (slot[0] + shift) % 5;
        let verdict = verify_certificate(&c);
        prop_assert!(verdict.map_or(true, |r| !r.ok));
    }
}
