use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zerolab::{GroupOracle, CATALOG};

fn oracles() -> Vec<GroupOracle> {
    CATALOG.iter().map(|s| GroupOracle::from_spec(s).unwrap()).collect()
}

#[test]
fn axioms_on_seeded_triples() {
    for o in oracles() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let e = o.identity().clone();
        for _ in 0..1000 {
            let g = o.random_element(&mut rng, 6);
            let h = o.random_element(&mut rng, 6);
            let k = o.random_element(&mut rng, 6);
            let name = o.name();
            assert_eq!(o.mul(&o.mul(&g, &h), &k), o.mul(&g, &o.mul(&h, &k)), "{name}: {g} {h} {k}");
            assert_eq!(o.mul(&e, &g), g, "{name}");
            assert_eq!(o.mul(&g, &e), g, "{name}");
            assert!(o.is_identity(&o.mul(&g, &o.inv(&g))), "{name}: {g}");
            assert!(o.is_identity(&o.mul(&o.inv(&g), &g)), "{name}: {g}");
            assert_eq!(o.inv(&o.mul(&g, &h)), o.mul(&o.inv(&h), &o.inv(&g)), "{name}");
            assert_eq!(o.conjugate(&g, &h), o.mul(&o.mul(&g, &h), &o.inv(&g)), "{name}");
            assert_eq!(o.pow(&g, 3), o.mul(&g, &o.mul(&g, &g)), "{name}");
            assert_eq!(o.pow(&g, -2), o.inv(&o.mul(&g, &g)), "{name}");
        }
    }
}

#[test]
fn abelian_entries_commute() {
    for spec in ["Z", "Z^3", "ZxC6", "C12", "DirSumC2"] {
        let o = GroupOracle::from_spec(spec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let g = o.random_element(&mut rng, 5);
            let h = o.random_element(&mut rng, 5);
            assert_eq!(o.mul(&g, &h), o.mul(&h, &g), "{spec}");
        }
    }
}

#[test]
fn generator_orders() {
    let cases = [("Dinf", "s", Some(2)), ("Dinf", "r", None), ("C12", "c", Some(12)), ("Sym5", "(1 2 3)", Some(3))];
    for (spec, g, order) in cases {
        let o = GroupOracle::from_spec(spec).unwrap();
        let g = o.parse_element(g).unwrap();
        assert_eq!(o.order_up_to(&g, 100), order, "{spec} {g}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn display_parse_round_trip(seed: u64, len in 0usize..12, which in 0usize..CATALOG.len()) {
        let o = GroupOracle::from_spec(CATALOG[which]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = o.random_element(&mut rng, len);
        let back = o.parse_element(&g.to_string()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn word_length_is_subadditive(seed: u64, which in 0usize..4) {
        let o = GroupOracle::from_spec(["Z^2", "F2", "Dinf", "ZxC6"][which]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = o.random_element(&mut rng, 8);
        let h = o.random_element(&mut rng, 8);
        prop_assert!(o.word_length(&o.mul(&g, &h)) <= o.word_length(&g) + o.word_length(&h));
        prop_assert_eq!(o.word_length(&o.inv(&g)), o.word_length(&g));
    }
}
