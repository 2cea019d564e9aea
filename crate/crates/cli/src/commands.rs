//! Runs one command against the library and collects its report body.

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};
use zerolab::electoral::{
    certificate_scaling, flexibility_consistency, seeded_partitions, witness_search, witness_via_cyclic, SearchOutcome,
    Side,
};
use zerolab::ends::{ends_estimate, EndsClass, EndsParams};
use zerolab::stability::{classify_almost_stable, stable_partition_locally_finite, symdiff_profile};
use zerolab::subset::SubsetSpec;
use zerolab::topology::{
    almost_stability_bridge, check_filter_base, check_semigroup_continuity, check_shift_continuity, classify_dichotomy,
    enumerate_z_topologies, is_compact, is_hausdorff, is_locally_compact, zero_ideal_check, zero_is_isolated,
    Consistency, Verdict, ZeroTopologySpec,
};
use zerolab::window::Windows;
use zerolab::{FlexibilityClass, GroupOracle};

use crate::config::{
    CensusArgs, Command, ConsistencyArgs, CyclicArgs, EndsArgs, Prop10Args, SideArg, Settings, StabilityArgs,
    TopologyArgs, WitnessArgs,
};

/// Universal statements only ever get finite-window evidence.
pub const SCALE_LIMITED: &str = "scale-limited evidence: universal statements are checked on finite windows only";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum RunStatus {
    Ok,
    Violation,
    Inconsistent,
}

/// One verdict in a report, tagged with the claim it bears on.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub claim: String,
    pub outcome: String,
    pub scale: Option<usize>,
}

impl Check {
    fn new(claim: &str, outcome: impl Into<String>, scale: Option<usize>) -> Self {
        Check {
            claim: claim.to_string(),
            outcome: outcome.into(),
            scale,
        }
    }

    fn verdict(claim: &str, verdict: &Verdict) -> Self {
        let outcome = match verdict.kind() {
            zerolab::topology::VerdictKind::Proven => "PROVEN",
            zerolab::topology::VerdictKind::RefutedAtScale => "REFUTED_AT_SCALE",
            zerolab::topology::VerdictKind::UnknownAtScale => "UNKNOWN_AT_SCALE",
        };
        Check::new(claim, outcome, Some(verdict.scale))
    }
}

pub struct Outcome {
    pub status: RunStatus,
    pub checks: Vec<Check>,
    pub evidence: Option<&'static str>,
    pub result: Value,
}

impl Outcome {
    fn ok(checks: Vec<Check>, result: Value) -> Self {
        Outcome {
            status: RunStatus::Ok,
            checks,
            evidence: None,
            result,
        }
    }
}

fn oracle(spec: &str, settings: &Settings) -> Result<GroupOracle> {
    GroupOracle::from_spec_with_depth(spec, settings.depth).with_context(|| format!("group `{spec}`"))
}

fn subset(literal: &str, o: &GroupOracle) -> Result<SubsetSpec> {
    SubsetSpec::parse(literal, o).with_context(|| format!("subset `{literal}`"))
}

/// `A` and `B`, with `B` defaulting to the complement of `A`.
fn parts(o: &GroupOracle, a: &str, b: Option<&str>) -> Result<(SubsetSpec, SubsetSpec)> {
    let a = subset(a, o)?;
    let b = match b {
        Some(lit) => subset(lit, o)?,
        None => a.complement(),
    };
    Ok((a, b))
}

/// The chain top for locally finite groups, else `word_default`.
fn default_radius(o: &GroupOracle, word_default: usize) -> usize {
    o.chain().map_or(word_default, |c| c.top())
}

fn to_value(v: &impl Serialize) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

pub fn execute(command: &Command, settings: &Settings) -> Result<Outcome> {
    match command {
        Command::Ends(args) => ends(args, settings),
        Command::Stability(args) => stability(args, settings),
        Command::Witness(args) => witness(args, settings),
        Command::WitnessCyclic(args) => witness_cyclic(args, settings),
        Command::Prop10(args) => prop10(args, settings),
        Command::Topology(args) => topology(args, settings),
        Command::Census(args) => census(args),
        Command::Consistency(args) => consistency(args, settings),
        Command::Run(_) => bail!("`run` configurations cannot nest"),
    }
}

fn ends(args: &EndsArgs, settings: &Settings) -> Result<Outcome> {
    let o = oracle(&args.group, settings)?;
    let report = ends_estimate(
        &o,
        EndsParams {
            r_max: args.rmax,
            window: args.window,
            cap: settings.memory_cap,
        },
    )?;
    let mut checks = vec![Check::new(
        "end-count",
        format!("{:?}", report.classification),
        Some(report.ball_radius),
    )];
    // cross-check only: flexible infinite groups are expected to be one-ended
    let one_end = report.classification == EndsClass::OneEnd;
    let hypothesis = match o.flexibility_class() {
        FlexibilityClass::Unknown => "NO_LABEL",
        FlexibilityClass::Flexible if one_end => "AGREES",
        FlexibilityClass::Stable if !one_end => "AGREES",
        _ => "DISAGREES",
    };
    checks.push(Check::new("hypothesis: flexible iff one end", hypothesis, Some(report.ball_radius)));
    Ok(Outcome::ok(checks, to_value(&report)?))
}

fn stability(args: &StabilityArgs, settings: &Settings) -> Result<Outcome> {
    let o = oracle(&args.group, settings)?;
    let a = subset(&args.a, &o)?;
    let r = args.rmax.unwrap_or_else(|| default_radius(&o, 12));
    let report = classify_almost_stable(&o, &a, r, settings.memory_cap)?;
    let mut checks = vec![Check::new("almost-stability", format!("{:?}", report.class), Some(r))];
    let profile = match &args.x {
        Some(x) => {
            let x = o.parse_element(x)?;
            let profile = symdiff_profile(&o, &a, &x, r, settings.memory_cap)?;
            checks.push(Check::new("symdiff-profile", format!("{:?}", profile.verdict), Some(r)));
            Some(profile)
        }
        None => None,
    };
    Ok(Outcome::ok(checks, json!({ "classification": report, "profile": profile })))
}

fn search_outcome(claim: &str, out: &SearchOutcome, r: usize) -> Check {
    match out {
        SearchOutcome::Found(c) => Check::new(claim, format!("FOUND size {} via {}", c.size(), c.translate()), Some(r)),
        SearchOutcome::NotFoundAtScale { best_size, .. } => {
            Check::new(claim, format!("NOT_FOUND_AT_SCALE best {best_size}"), Some(r))
        }
    }
}

fn witness(args: &WitnessArgs, settings: &Settings) -> Result<Outcome> {
    let o = oracle(&args.group, settings)?;
    let (a, b) = parts(&o, &args.a, args.b.as_deref())?;
    let r = args.r.unwrap_or_else(|| default_radius(&o, 20));
    let sides: &[Side] = match args.side {
        SideArg::Right => &[Side::Right],
        SideArg::Left => &[Side::Left],
        SideArg::Both => &[Side::Right, Side::Left],
    };
    let mut checks = Vec::new();
    let mut results = serde_json::Map::new();
    for &side in sides {
        let out = witness_search(&o, &a, &b, r, args.m, side, settings.memory_cap)?;
        let name = match side {
            Side::Right => "right",
            Side::Left => "left",
        };
        checks.push(search_outcome(&format!("witness-{name}"), &out, r));
        results.insert(name.into(), to_value(&out)?);
    }
    Ok(Outcome::ok(checks, Value::Object(results)))
}

fn witness_cyclic(args: &CyclicArgs, settings: &Settings) -> Result<Outcome> {
    let o = oracle(&args.group, settings)?;
    let (a, b) = parts(&o, &args.a, args.b.as_deref())?;
    let z = o.parse_element(&args.z)?;
    let report = witness_via_cyclic(&o, &z, &a, &b, args.r, args.m, settings.memory_cap)?;
    let outcome = match &report.certificate {
        Some(c) => format!("{:?}: {:?} certificate of size {}", report.branch, c.side(), c.size()),
        None => format!("{:?}: no certificate", report.branch),
    };
    let checks = vec![Check::new("cyclic-witness", outcome, Some(args.r))];
    Ok(Outcome::ok(checks, to_value(&report)?))
}

fn prop10(args: &Prop10Args, settings: &Settings) -> Result<Outcome> {
    let o = oracle(&args.group, settings)?;
    let partition = stable_partition_locally_finite(&o)?;
    let top = o.chain().map(|c| c.top()).ok_or_else(|| anyhow!("no chain"))?;
    let class = classify_almost_stable(&o, &partition.a, top, settings.memory_cap)?;
    let windows = Windows::for_oracle(&o, top, settings.memory_cap)?;
    let scaling = certificate_scaling(&o, &partition.a, &partition.b, &windows);
    let search = witness_search(&o, &partition.a, &partition.b, top, args.m, Side::Right, settings.memory_cap)?;
    let checks = vec![
        Check::new("stable-partition", "BUILT", Some(top)),
        Check::new("almost-stability", format!("{:?}", class.class), Some(top)),
        Check::new(
            "certificate-scaling",
            if scaling.scaling.is_empty() { "BOUNDED" } else { "GROWING" },
            Some(top),
        ),
        search_outcome("witness-right", &search, top),
    ];
    let status = if scaling.scaling.is_empty() {
        RunStatus::Ok
    } else {
        RunStatus::Inconsistent
    };
    Ok(Outcome {
        status,
        checks,
        evidence: Some(SCALE_LIMITED),
        result: json!({
            "a": partition.a,
            "b": partition.b,
            "sizes": partition.sizes,
            "transversals": partition.transversals,
            "classification": class,
            "scaling": scaling,
            "search": search,
        }),
    })
}

fn topology(args: &TopologyArgs, settings: &Settings) -> Result<Outcome> {
    let o = oracle(&args.group, settings)?;
    let spec = ZeroTopologySpec::parse(&args.spec, &o)?.with_cap(settings.memory_cap);
    let r = args.r;
    let hausdorff = is_hausdorff(&spec, r)?;
    let shift = check_shift_continuity(&spec, r)?;
    let locally_compact = is_locally_compact(&spec, r)?;
    let mut checks = vec![
        Check::verdict("hausdorff", &hausdorff),
        Check::verdict("shift-continuous", &shift),
        Check::verdict("locally-compact", &locally_compact),
    ];
    let semigroup = if shift.is_proven() {
        let v = check_semigroup_continuity(&spec, r)?;
        checks.push(Check::verdict("semigroup-continuous", &v));
        Some(v)
    } else {
        None
    };
    let filter_base = check_filter_base(&spec, r)?;
    let zero_isolated = zero_is_isolated(&spec, r)?;
    let compact = is_compact(&spec, r)?;
    let zero_ideal = zero_ideal_check(&o, r.min(default_radius(&o, r)), settings.memory_cap)?;
    let bridge = almost_stability_bridge(&spec, r)?;
    checks.push(Check::verdict("filter-base", &filter_base));
    checks.push(Check::verdict("zero-isolated", &zero_isolated));
    checks.push(Check::verdict("compact", &compact));
    checks.push(Check::verdict("zero-ideal", &zero_ideal));
    checks.push(Check::verdict("almost-stability-bridge", &bridge));
    let mut status = RunStatus::Ok;
    let dichotomy = match classify_dichotomy(&spec, r) {
        Ok(report) => {
            let consistency = match report.consistency {
                Consistency::Consistent => "CONSISTENT",
                Consistency::Violation => {
                    status = RunStatus::Violation;
                    "VIOLATION"
                }
            };
            checks.push(Check::new("dichotomy", format!("{:?} {consistency}", report.class), Some(r)));
            to_value(&report)?
        }
        Err(e) => {
            checks.push(Check::new("dichotomy", format!("NOT_CLASSIFIED: {e}"), Some(r)));
            json!({ "not_classified": e.to_string() })
        }
    };
    Ok(Outcome {
        status,
        checks,
        evidence: Some(SCALE_LIMITED),
        result: json!({
            "spec": spec,
            "hausdorff": hausdorff,
            "shift_continuous": shift,
            "locally_compact": locally_compact,
            "semigroup": semigroup,
            "filter_base": filter_base,
            "zero_isolated": zero_isolated,
            "compact": compact,
            "zero_ideal": zero_ideal,
            "bridge": bridge,
            "dichotomy": dichotomy,
        }),
    })
}

fn census(args: &CensusArgs) -> Result<Outcome> {
    if args.radii.is_empty() {
        bail!("census needs at least one radius");
    }
    let mut runs = Vec::new();
    for &r in &args.radii {
        runs.push(enumerate_z_topologies(r)?);
    }
    let reference = runs[0].summary();
    let stable = runs.iter().all(|c| c.summary() == reference);
    let mut checks = Vec::new();
    for run in &runs {
        for entry in &run.entries {
            checks.push(Check::verdict(&format!("{} semigroup-continuous", entry.label), &entry.semigroup));
            checks.push(Check::new(
                &format!("{} dichotomy", entry.label),
                format!("{:?}", entry.dichotomy.class),
                Some(run.radius),
            ));
        }
        checks.push(Check::new(
            "semigroup-count",
            run.semigroup_count.to_string(),
            Some(run.radius),
        ));
    }
    checks.push(Check::new("stable-across-radii", if stable { "PASS" } else { "FAIL" }, None));
    Ok(Outcome {
        status: if stable { RunStatus::Ok } else { RunStatus::Inconsistent },
        checks,
        evidence: Some(SCALE_LIMITED),
        result: json!({ "summary": reference, "stable_across_radii": stable, "runs": runs }),
    })
}

fn consistency(args: &ConsistencyArgs, settings: &Settings) -> Result<Outcome> {
    let o = oracle(&args.group, settings)?;
    let r = args.r.unwrap_or_else(|| default_radius(&o, 20));
    let mut partitions = Vec::new();
    if args.prop10 {
        let p = stable_partition_locally_finite(&o)?;
        partitions.push((p.a, p.b));
    }
    for lit in &args.partitions {
        partitions.push(parts(&o, lit, None)?);
    }
    partitions.extend(seeded_partitions(&o, args.count, settings.seed, r));
    let report = flexibility_consistency(&o, &partitions, r, args.m, settings.memory_cap)?;
    let status = if report.inconsistent == 0 {
        RunStatus::Ok
    } else {
        RunStatus::Inconsistent
    };
    let checks = vec![Check::new(
        "flexibility-consistency",
        if report.inconsistent == 0 {
            format!("CONSISTENT ({} checked, {} rejected)", report.entries.len(), report.rejected)
        } else {
            format!("INCONSISTENT ({} flagged)", report.inconsistent)
        },
        Some(r),
    )];
    Ok(Outcome {
        status,
        checks,
        evidence: Some(SCALE_LIMITED),
        result: to_value(&report)?,
    })
}
