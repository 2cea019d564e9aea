use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zerolab::cayley::{Ball, DEFAULT_MEMORY_CAP};
use zerolab::ends::{end_descriptor, Side};
use zerolab::subset::SubsetSpec;
use zerolab::topology::{
    check_shift_continuity, classify_dichotomy, enumerate_z_topologies, is_hausdorff, is_locally_compact,
    Consistency, DichotomyClass, EndSet, ZeroTopologySpec,
};
use zerolab::GroupOracle;

fn seeded_family(o: &GroupOracle, rng: &mut ChaCha8Rng) -> Vec<SubsetSpec> {
    let ball = Ball::new(o, 3, DEFAULT_MEMORY_CAP).unwrap();
    let pick = |rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(0..4);
        (0..n)
            .map(|_| ball.elements()[rng.gen_range(0..ball.len())].clone())
            .collect::<Vec<_>>()
    };
    let count = rng.gen_range(1..=3);
    (0..count)
        .map(|_| match rng.gen_range(0..5) {
            0 => SubsetSpec::finite(pick(rng)),
            1 => SubsetSpec::cofinite(pick(rng)),
            2 => SubsetSpec::hashed(rng.gen()),
            3 => SubsetSpec::parse(&format!("wordlen:2:{}", rng.gen_range(0..2)), o).unwrap(),
            _ => SubsetSpec::finite([]),
        })
        .collect()
}

#[test]
fn flexible_groups_never_land_in_neither() {
    let mut classified = 0;
    for (spec, r) in [("Z^2", 8), ("F2", 5)] {
        let o = GroupOracle::from_spec(spec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..40 {
            let family = ZeroTopologySpec::explicit(&o, seeded_family(&o, &mut rng)).unwrap();
            let admissible = is_hausdorff(&family, r).unwrap().is_proven()
                && check_shift_continuity(&family, r).unwrap().is_proven()
                && is_locally_compact(&family, r).unwrap().is_proven();
            if !admissible {
                continue;
            }
            let report = classify_dichotomy(&family, r).unwrap();
            assert_ne!(report.class, DichotomyClass::Neither, "{spec}: {}", family.label());
            assert_eq!(report.consistency, Consistency::Consistent);
            classified += 1;
        }
    }
    assert!(classified >= 10, "only {classified} admissible families");
}

#[test]
fn end_base_is_closed_under_translation() {
    for spec in ["Z", "Dinf", "ZxC2", "ZxC6"] {
        let o = GroupOracle::from_spec(spec).unwrap();
        let ball = Ball::new(&o, 4, DEFAULT_MEMORY_CAP).unwrap();
        let test_points = Ball::new(&o, 7, DEFAULT_MEMORY_CAP).unwrap();
        for side in [Side::Positive, Side::Negative] {
            let end = end_descriptor(&o, side).unwrap();
            let dec = &end.decomposition;
            let k = EndSet::of_end(&end);
            for g in ball.elements() {
                for h in ball.elements().iter().step_by(3) {
                    let u = k.translate(&o, dec, g, h);
                    for (a, b) in [(g, h), (h, g)] {
                        // a·(g K h)·b is the base element (a g) K (h b)
                        let outer = u.translate(&o, dec, a, b);
                        let direct = k.translate(&o, dec, &o.mul(a, g), &o.mul(h, b));
                        assert_eq!(outer, direct, "{spec} {g} {h}");
                        let ai = o.inv(a);
                        let bi = o.inv(b);
                        for x in test_points.elements().iter().step_by(5) {
                            let pulled = o.mul(&o.mul(&ai, x), &bi);
                            assert_eq!(outer.contains(dec, x), u.contains(dec, &pulled));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn census_is_stable_across_radii() {
    let reference = enumerate_z_topologies(20).unwrap().summary();
    for r in [50, 100] {
        assert_eq!(enumerate_z_topologies(r).unwrap().summary(), reference, "radius {r}");
    }
    assert_eq!(enumerate_z_topologies(20).unwrap().summary(), reference);
}
