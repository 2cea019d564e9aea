//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use serde_json::Value;
use zerolab::cayley::DEFAULT_MEMORY_CAP;
use zerolab::electoral::{
    certificate_scaling, flexibility_consistency, seeded_partitions, witness_via_cyclic, CyclicBranch, Side,
};
use zerolab::ends::{ends_estimate, EndsClass, EndsParams, Side as EndSide};
use zerolab::stability::{
    classify_almost_stable, stable_partition_locally_finite, symdiff_profile, SetClass, StabilityVerdict,
};
use zerolab::subset::{check_partition, SubsetSpec};
use zerolab::topology::{enumerate_z_topologies, example15_bundle, Counterexample, DichotomyClass, Status};
use zerolab::window::Windows;
use zerolab::GroupOracle;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn g(spec: &str) -> GroupOracle {
    GroupOracle::from_spec(spec).unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn end_counts() -> Outcome {
    let start = Instant::now();
    let expected = [
        ("Z", EndsClass::TwoEnds),
        ("Dinf", EndsClass::TwoEnds),
        ("ZxC2", EndsClass::TwoEnds),
        ("ZxC6", EndsClass::TwoEnds),
        ("Z^2", EndsClass::OneEnd),
        ("Z^3", EndsClass::OneEnd),
        ("C12", EndsClass::ZeroEnds),
        ("Sym5", EndsClass::ZeroEnds),
    ];
    for (spec, class) in expected {
        let report = ends_estimate(&g(spec), EndsParams::default()).map_err(|e| e.to_string())?;
        ensure(report.classification == class, format!("{spec}: {:?}", report.classification))?;
    }
    let params = EndsParams {
        r_max: 5,
        window: 4,
        cap: DEFAULT_MEMORY_CAP,
    };
    let f2 = ends_estimate(&g("F2"), params).map_err(|e| e.to_string())?;
    ensure(f2.classification == EndsClass::ManyEndsGrowing, format!("F2: {:?}", f2.classification))?;
    for r in 1..=5 {
        let count = f2.counts_by_radius[&r];
        ensure(count == 4 * 3usize.pow(r as u32 - 1), format!("F2 r = {r}: {count}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), format!("took {elapsed:?}"))?;
    Ok(format!("eight groups classified, F2 growing, F2 counts 4·3^(r-1) for r = 1..5, {elapsed:.1?}"))
}

fn z_census() -> Outcome {
    for r in [20, 50] {
        let census = enumerate_z_topologies(r).map_err(|e| e.to_string())?;
        let classes = vec![
            DichotomyClass::Discrete,
            DichotomyClass::Compact,
            DichotomyClass::Neither,
            DichotomyClass::Neither,
        ];
        ensure(census.classes == classes, format!("R = {r}: {:?}", census.classes))?;
        for e in &census.entries {
            ensure(
                e.hausdorff.is_proven() && e.shift_continuous.is_proven() && e.locally_compact.is_proven(),
                format!("R = {r}: {} misses a basic property", e.label),
            )?;
        }
        ensure(census.semigroup_count == 3, format!("R = {r}: {} semigroup", census.semigroup_count))?;
        ensure(census.pairwise_distinct, "not pairwise distinct")?;
        let cofinite = &census.entries[1];
        match &cofinite.semigroup.status {
            Status::RefutedAtScale(Counterexample::ProductEscape { v, w, product, .. }) => {
                let z = g("Z");
                ensure(z.mul(v, w) == *product, "counterexample product does not multiply out")?;
            }
            other => return Err(format!("R = {r}: cofinite semigroup verdict {other:?}")),
        }
    }
    Ok("classes [Discrete, Compact, Neither, Neither], 3 semigroup, cofinite escape pair, R ∈ {20, 50}".into())
}

fn end_bases() -> Outcome {
    let mut failures = Vec::new();
    let mut passes = Vec::new();
    for spec in ["ZxC2", "Dinf"] {
        for side in [EndSide::Positive, EndSide::Negative] {
            let bundle = example15_bundle(&g(spec), side, 30).map_err(|e| e.to_string())?;
            let label = format!("{spec} {side:?}");
            if bundle.passes() {
                passes.push(label);
            } else {
                failures.push(format!(
                    "{label}: hausdorff {:?}, shift {:?}, locally compact {:?}, zero isolated {:?}, compact {:?}",
                    bundle.hausdorff.kind(),
                    bundle.shift_continuous.kind(),
                    bundle.locally_compact.kind(),
                    bundle.zero_isolated.kind(),
                    bundle.compact.kind()
                ));
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("bundles pass: {}", passes.join(", ")))
    } else {
        Err(format!("passing: {}; failing: {}", passes.join(", "), failures.join("; ")))
    }
}

fn stable_partition() -> Outcome {
    let o = g("DirSumC2");
    let p = stable_partition_locally_finite(&o).map_err(|e| e.to_string())?;
    let chain = o.chain().unwrap();
    for n in chain.base()..=chain.top() {
        check_partition(&o, &p.a, &p.b, chain.level(n).unwrap()).map_err(|e| format!("G_{n}: {e}"))?;
    }
    let g4 = chain.level(4).unwrap();
    let a4 = g4.iter().filter(|x| p.a.contains(&o, x)).count();
    let b4 = g4.iter().filter(|x| p.b.contains(&o, x)).count();
    ensure((a4, b4) == (6, 10), format!("|A ∩ G4| = {a4}, |B ∩ G4| = {b4}"))?;
    for x in g4 {
        let level = o.chain_level(x).unwrap();
        let counts: Vec<usize> = (level + 1..=8)
            .map(|r| {
                chain.level(r).unwrap().iter().filter(|y| {
                    // y ∈ A·x  iff  y·x⁻¹ ∈ A
                    p.b.contains(&o, y) && p.a.contains(&o, &o.mul(y, &o.inv(x)))
                }).count()
            })
            .collect();
        ensure(counts.windows(2).all(|w| w[0] == w[1]), format!("x = {x}: {counts:?}"))?;
    }
    let class = classify_almost_stable(&o, &p.a, 8, DEFAULT_MEMORY_CAP).map_err(|e| e.to_string())?;
    ensure(class.class == SetClass::AlmostStableProper, format!("{:?}", class.class))?;
    Ok("A ⊔ B partitions G_0..G_8, (6, 10) on G4, constant |(A·x) ∩ B ∩ G_R|, almost stable proper".into())
}

fn cyclic_witness() -> Outcome {
    let start = Instant::now();
    let o = g("Z^2");
    let a = SubsetSpec::parse("halfplane:m>=0", &o).unwrap();
    let b = a.complement();
    let z = o.vector(&[0, 1]).unwrap();
    let report = witness_via_cyclic(&o, &z, &a, &b, 25, 20, DEFAULT_MEMORY_CAP).map_err(|e| e.to_string())?;
    ensure(report.branch == CyclicBranch::CosetEscape, format!("branch {:?}", report.branch))?;
    let cert = report.certificate.as_ref().ok_or("no certificate")?;
    ensure(cert.side() == Side::Left, "certificate is not a left one")?;
    ensure(cert.size() >= 20, format!("size {}", cert.size()))?;
    let failures = cert
        .set()
        .iter()
        .filter(|i| !a.contains(&o, i) || !b.contains(&o, &o.mul(cert.translate(), i)))
        .count();
    ensure(failures == 0, format!("{failures} elements fail x·i ∈ B"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), format!("took {elapsed:?}"))?;
    Ok(format!("coset-escape Left certificate of size {} re-verified, {elapsed:.1?}", cert.size()))
}

fn property_suite() -> Outcome {
    let mut checked = 0;
    for (spec, r) in [("Z^2", 12), ("F2", 6)] {
        let o = g(spec);
        let partitions = seeded_partitions(&o, 50, 7, r);
        let report = flexibility_consistency(&o, &partitions, r, 20, DEFAULT_MEMORY_CAP).map_err(|e| e.to_string())?;
        ensure(report.rejected == 0, format!("{spec}: {} rejected", report.rejected))?;
        ensure(report.inconsistent == 0, format!("{spec}: {} inconsistent", report.inconsistent))?;
        for entry in &report.entries {
            let size = entry.best_certificate().map_or(0, |c| c.size());
            ensure(size >= 20, format!("{spec} {}: best certificate {size}", entry.a))?;
        }
        checked += report.entries.len();
    }
    let o = g("DirSumC2");
    let p = stable_partition_locally_finite(&o).map_err(|e| e.to_string())?;
    let mut partitions = vec![(p.a, p.b)];
    partitions.extend(seeded_partitions(&o, 20, 7, 8));
    let report = flexibility_consistency(&o, &partitions, 8, 20, DEFAULT_MEMORY_CAP).map_err(|e| e.to_string())?;
    ensure(report.inconsistent == 0, format!("DirSumC2: {} inconsistent", report.inconsistent))?;
    let windows = Windows::for_oracle(&o, 8, DEFAULT_MEMORY_CAP).map_err(|e| e.to_string())?;
    for (a, b) in &partitions {
        let evidence = certificate_scaling(&o, a, b, &windows);
        ensure(evidence.scaling.is_empty(), format!("DirSumC2 {}: certificates grow", a.name()))?;
    }
    checked += report.entries.len();
    Ok(format!("{checked} partitions, certificates >= 20 on Z^2 and F2, none scaling on DirSumC2, 0 inconsistent"))
}

fn almost_stability() -> Outcome {
    let z = g("Z");
    let nat = SubsetSpec::parse("nat", &z).unwrap();
    let even = SubsetSpec::parse("even", &z).unwrap();
    let bounded = symdiff_profile(&z, &nat, &z.vector(&[3]).unwrap(), 30, DEFAULT_MEMORY_CAP).map_err(|e| e.to_string())?;
    ensure(
        bounded.verdict == StabilityVerdict::BoundedAtScale { bound: 3 },
        format!("nat: {:?}", bounded.verdict),
    )?;
    let growing = symdiff_profile(&z, &even, &z.vector(&[1]).unwrap(), 30, DEFAULT_MEMORY_CAP).map_err(|e| e.to_string())?;
    match growing.verdict {
        StabilityVerdict::GrowingAtScale { slope } if (slope - 2.0).abs() <= 0.1 => {}
        other => return Err(format!("even: {other:?}")),
    }
    for r in [20, 50] {
        let census = enumerate_z_topologies(r).map_err(|e| e.to_string())?;
        for e in &census.entries {
            ensure(e.bridge.is_proven(), format!("R = {r}: bridge fails for {}", e.label))?;
        }
    }
    Ok("nat bounded by 3, even grows with slope 2, bridge holds on the census".into())
}

fn scale_limited_labels() -> Outcome {
    let run = |args: &[&str]| -> Result<Value, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_zerolab"))
            .args(args)
            .env_remove("ZEROLAB_MEMORY_CAP")
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), format!("{args:?} exited with {:?}", out.status.code()))?;
        serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
    };
    let census = run(&["census"])?;
    let consistency = run(&["consistency", "--group", "Z^2", "--count", "3", "--r", "10", "--m", "20"])?;
    for (name, report) in [("census", &census), ("consistency", &consistency)] {
        let label = report["evidence"].as_str().unwrap_or("");
        ensure(label.starts_with("scale-limited"), format!("{name} report lacks the label"))?;
    }
    let note = census["result"]["runs"][0]["exhaustiveness"].as_str().unwrap_or("");
    ensure(note.starts_with("scale-limited"), "census exhaustiveness is not labeled")?;
    Ok("census and consistency reports labeled scale-limited".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("end-count census", end_counts),
        ("integer topology census", z_census),
        ("end-base verdict bundles", end_bases),
        ("locally finite stable partition", stable_partition),
        ("cyclic constructive witness", cyclic_witness),
        ("flexibility property suite", property_suite),
        ("almost-stability anchors", almost_stability),
        ("scale-limited labeling", scale_limited_labels),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
