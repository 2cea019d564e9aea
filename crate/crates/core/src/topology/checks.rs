use std::collections::BTreeMap;

use serde::Serialize;

use super::{
    BaseElement, BaseFamily, Counterexample, EndSet, Status, TranslationSide, Verdict, Witness, ZeroExt,
    ZeroTopologySpec,
};
use crate::ends::{EndDescriptor, Side};
use crate::error::{Error, Result};
use crate::group::{Element, FlexibilityClass, GroupOracle};
use crate::stability::{symdiff_profile_in, StabilityVerdict, PLATEAU};
use crate::subset::{SubsetSpec, SymbolicExtent};
use crate::window::Windows;

/// Exclusions or refinements echoed into a witness.
const EXAMPLES: usize = 4;

fn windows(spec: &ZeroTopologySpec, r: usize) -> Result<Windows> {
    if r < PLATEAU {
        return Err(Error::Precondition(format!("radius {r} is below {PLATEAU}")));
    }
    Windows::for_oracle(&spec.group, r, spec.cap)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Trend {
    Constant,
    Increasing,
    Mixed,
}

/// `k -> |{g ∈ W(k) : pred(g)}|` over the trailing radii.
fn trailing_counts(w: &Windows, pred: impl Fn(&Element) -> bool) -> BTreeMap<usize, usize> {
    let r = w.radius();
    let mut counts = BTreeMap::new();
    let mut total = 0;
    let mut seen = 0;
    for k in 0..=r {
        total += w.within(k)[seen..].iter().filter(|g| pred(g)).count();
        seen = w.size(k);
        if k + PLATEAU > r {
            counts.insert(k, total);
        }
    }
    counts
}

fn trend(counts: &BTreeMap<usize, usize>) -> Trend {
    let v: Vec<usize> = counts.values().copied().collect();
    if v.windows(2).all(|p| p[0] == p[1]) {
        Trend::Constant
    } else if v.windows(2).all(|p| p[0] < p[1]) {
        Trend::Increasing
    } else {
        Trend::Mixed
    }
}

fn end_of(spec: &ZeroTopologySpec) -> Option<&EndDescriptor> {
    match &spec.family {
        BaseFamily::EndBase(end) => Some(end),
        _ => None,
    }
}

/// Membership of a group point in a base element.
fn member(spec: &ZeroTopologySpec, base: &BaseElement, g: &Element) -> bool {
    let o = &spec.group;
    match base {
        BaseElement::Zero => false,
        BaseElement::Cofinite { excluded } => !excluded.contains(g),
        BaseElement::EndTranslate { left, right } => {
            let end = end_of(spec).expect("end translates need an end base");
            end.contains(&o.mul(&o.mul(&o.inv(left), g), &o.inv(right)))
        }
        BaseElement::Explicit { index, .. } => match &spec.family {
            BaseFamily::Explicit(sets) => sets[*index].contains(o, g),
            _ => panic!("explicit base element outside an explicit family"),
        },
    }
}

fn explicit(index: usize, set: &SubsetSpec) -> BaseElement {
    BaseElement::Explicit {
        index,
        name: set.name().to_string(),
    }
}

fn end_translate(o: &GroupOracle, left: Element) -> BaseElement {
    BaseElement::EndTranslate {
        left,
        right: o.identity().clone(),
    }
}

/// A generator reversing the axis, if any; then the family contains both
/// orientations.
fn flipping_generator(spec: &ZeroTopologySpec, end: &EndDescriptor) -> Option<Element> {
    spec.group
        .generator_elements()
        .find(|g| end.decomposition.orientation(&spec.group, g) == -1)
        .cloned()
}

/// Group points are isolated, so only `0` has to be separated from each
/// `g`: some base element must miss `g`.
pub fn is_hausdorff(spec: &ZeroTopologySpec, r: usize) -> Result<Verdict> {
    let w = windows(spec, r)?;
    let o = &spec.group;
    let mut examples = Vec::new();
    for g in w.all() {
        let base = match &spec.family {
            BaseFamily::Discrete => BaseElement::Zero,
            BaseFamily::Cofinite => BaseElement::Cofinite {
                excluded: vec![g.clone()],
            },
            BaseFamily::EndBase(end) => {
                // z^{σn}·K = {z^j t : σj >= n + 1} misses g once n >= σ·j(g)
                let sigma = end.side.sign();
                let (j, _) = end.decomposition.decompose(g);
                end_translate(o, o.pow(end.axis(), sigma * (sigma * j).max(0)))
            }
            BaseFamily::Explicit(sets) => match sets.iter().position(|u| !u.contains(o, g)) {
                Some(i) => explicit(i, &sets[i]),
                None => return Ok(Verdict::refuted(Counterexample::UnseparatedPoint(g.clone()), r)),
            },
        };
        if member(spec, &base, g) {
            return Ok(Verdict::unknown(format!("{base} was expected to miss {g}"), r));
        }
        if examples.len() < EXAMPLES {
            examples.push((g.clone(), base));
        }
    }
    Ok(Verdict::proven(
        Witness::Exclusions {
            checked: w.all().len(),
            examples,
        },
        r,
    ))
}

/// With isolated group points, `G⁰` is compact iff every neighborhood of `0`
/// is cofinite.
pub fn is_compact(spec: &ZeroTopologySpec, r: usize) -> Result<Verdict> {
    let w = windows(spec, r)?;
    let o = &spec.group;
    let growing_complement = |base: BaseElement| -> Verdict {
        let counts = trailing_counts(&w, |g| !member(spec, &base, g));
        match trend(&counts) {
            Trend::Increasing => Verdict::refuted(Counterexample::UnboundedComplement { base, counts }, r),
            _ => Verdict::unknown(format!("complement of {base} is not growing at scale"), r),
        }
    };
    Ok(match &spec.family {
        BaseFamily::Discrete if o.is_finite() => Verdict::proven(Witness::AllCofinite { checked: 1 }, r),
        BaseFamily::Discrete => growing_complement(BaseElement::Zero),
        BaseFamily::Cofinite => Verdict::proven(Witness::AllCofinite { checked: 0 }, r),
        BaseFamily::EndBase(_) => growing_complement(end_translate(o, o.identity().clone())),
        BaseFamily::Explicit(sets) => {
            let mut undecided = None;
            for (i, u) in sets.iter().enumerate() {
                if u.symbolic_extent() == Some(SymbolicExtent::Cofinite) {
                    continue;
                }
                let counts = trailing_counts(&w, |g| !u.contains(o, g));
                match trend(&counts) {
                    Trend::Constant => {}
                    Trend::Increasing => {
                        let base = explicit(i, u);
                        return Ok(Verdict::refuted(Counterexample::UnboundedComplement { base, counts }, r));
                    }
                    Trend::Mixed => undecided = undecided.or(Some(i)),
                }
            }
            match undecided {
                Some(i) => Verdict::unknown(format!("complement of U{i} neither constant nor growing"), r),
                None => Verdict::proven(Witness::AllCofinite { checked: sets.len() }, r),
            }
        }
    })
}

/// Looks for `U₀` with `U₀ \ V` finite for every base element `V`.
pub fn is_locally_compact(spec: &ZeroTopologySpec, r: usize) -> Result<Verdict> {
    let w = windows(spec, r)?;
    let o = &spec.group;
    Ok(match &spec.family {
        BaseFamily::Discrete => Verdict::proven(Witness::BaseElement(BaseElement::Zero), r),
        BaseFamily::Cofinite => Verdict::proven(Witness::BaseElement(BaseElement::Cofinite { excluded: vec![] }), r),
        BaseFamily::EndBase(end) => {
            let dec = &end.decomposition;
            let k = EndSet::of_end(end);
            let u0 = end_translate(o, o.identity().clone());
            if let Some(s) = flipping_generator(spec, end) {
                // every base element has a translate of the opposite orientation
                let v = end_translate(o, s);
                let counts = trailing_counts(&w, |g| member(spec, &u0, g) && !member(spec, &v, g));
                return Ok(match trend(&counts) {
                    Trend::Increasing => Verdict::refuted(Counterexample::InfiniteDifference { u0, v, counts }, r),
                    _ => Verdict::unknown("opposite translate does not separate at scale", r),
                });
            }
            // all translates share one orientation: K \ V is finite, and equals
            // {z^j t : 1 <= σj < n} for V = z^{σ(n-1)}·K
            let sigma = end.side.sign();
            for n in 1..=(r / 2).max(1) as i64 {
                let shift = o.pow(end.axis(), sigma * (n - 1));
                let v = k.left_translate(o, dec, &shift);
                let symbolic = k.difference_size(&v);
                let vb = end_translate(o, shift);
                let counted = w.all().iter().filter(|g| member(spec, &u0, g) && !member(spec, &vb, g)).count();
                let expected = (n as u64 - 1) * dec.transversal.len() as u64;
                if symbolic != Some(expected) || counted as u64 != expected {
                    return Ok(Verdict::unknown(format!("difference with {vb} disagrees with its symbolic size"), r));
                }
            }
            Verdict::proven(Witness::BaseElement(u0), r)
        }
        BaseFamily::Explicit(sets) => {
            let mut refutation = None;
            for (i, u) in sets.iter().enumerate() {
                let mut all_finite = true;
                let mut growing = None;
                for (j, v) in sets.iter().enumerate() {
                    if u.symbolic_extent() == Some(SymbolicExtent::Finite) {
                        break;
                    }
                    let counts = trailing_counts(&w, |g| u.contains(o, g) && !v.contains(o, g));
                    match trend(&counts) {
                        Trend::Constant => {}
                        Trend::Increasing => {
                            all_finite = false;
                            growing.get_or_insert((j, counts));
                        }
                        Trend::Mixed => all_finite = false,
                    }
                }
                if all_finite {
                    return Ok(Verdict::proven(Witness::BaseElement(explicit(i, u)), r));
                }
                match growing {
                    Some((j, counts)) => {
                        refutation.get_or_insert(Counterexample::InfiniteDifference {
                            u0: explicit(i, u),
                            v: explicit(j, &sets[j]),
                            counts,
                        });
                    }
                    None => return Ok(Verdict::unknown(format!("U{i} is undecided at scale"), r)),
                }
            }
            Verdict::refuted(refutation.expect("nonempty family"), r)
        }
    })
}

/// Separate continuity of the translations at `0`: for each generator `g`
/// and base element `U` there are base elements `V`, `V'` with `g·V ⊆ U` and
/// `V'·g ⊆ U`.
pub fn check_shift_continuity(spec: &ZeroTopologySpec, r: usize) -> Result<Verdict> {
    let w = windows(spec, r)?;
    let o = &spec.group;
    let gens: Vec<Element> = o.generator_elements().cloned().collect();
    let maps_into = |v: &BaseElement, g: &Element, side: TranslationSide, u: &BaseElement| {
        w.all().iter().filter(|x| member(spec, v, x)).all(|x| {
            let y = match side {
                TranslationSide::Left => o.mul(g, x),
                TranslationSide::Right => o.mul(x, g),
            };
            member(spec, u, &y)
        })
    };
    Ok(match &spec.family {
        BaseFamily::Discrete => Verdict::proven(Witness::BaseElement(BaseElement::Zero), r),
        BaseFamily::Cofinite => {
            // g·(G \ g⁻¹F) = G \ F and (G \ F·g⁻¹)·g = G \ F
            let u = BaseElement::Cofinite {
                excluded: vec![o.identity().clone()],
            };
            let mut examples = Vec::new();
            for g in &gens {
                let gi = o.inv(g);
                let vl = BaseElement::Cofinite { excluded: vec![gi.clone()] };
                let vr = BaseElement::Cofinite { excluded: vec![gi] };
                if !maps_into(&vl, g, TranslationSide::Left, &u) || !maps_into(&vr, g, TranslationSide::Right, &u) {
                    return Ok(Verdict::unknown(format!("cofinite translate by {g} failed"), r));
                }
                if examples.len() < EXAMPLES {
                    examples.push((g.clone(), u.clone(), vl, vr));
                }
            }
            Verdict::proven(
                Witness::TranslateRefinements {
                    checked: gens.len(),
                    examples,
                },
                r,
            )
        }
        BaseFamily::EndBase(end) => {
            let dec = &end.decomposition;
            let k = EndSet::of_end(end);
            let u = end_translate(o, o.identity().clone());
            let mut checked = 0;
            for g in &gens {
                let gi = o.inv(g);
                let vl = end_translate(o, gi.clone());
                let vr = BaseElement::EndTranslate {
                    left: o.identity().clone(),
                    right: gi.clone(),
                };
                let exact = k.left_translate(o, dec, &gi).left_translate(o, dec, g) == k
                    && k.right_translate(o, dec, &gi).right_translate(o, dec, g) == k;
                if !exact || !maps_into(&vl, g, TranslationSide::Left, &u) || !maps_into(&vr, g, TranslationSide::Right, &u) {
                    return Ok(Verdict::unknown(format!("translation closure failed for {g}"), r));
                }
                checked += 1;
            }
            Verdict::proven(Witness::TranslationClosure { checked }, r)
        }
        BaseFamily::Explicit(sets) => {
            let bases: Vec<BaseElement> = sets.iter().enumerate().map(|(i, s)| explicit(i, s)).collect();
            let mut examples = Vec::new();
            let mut checked = 0;
            for g in &gens {
                for u in &bases {
                    let mut found = Vec::new();
                    for side in [TranslationSide::Left, TranslationSide::Right] {
                        match bases.iter().find(|v| maps_into(v, g, side, u)) {
                            Some(v) => found.push(v.clone()),
                            None => {
                                return Ok(Verdict::refuted(
                                    Counterexample::NoTranslateRefinement {
                                        generator: g.clone(),
                                        side,
                                        target: u.clone(),
                                    },
                                    r,
                                ))
                            }
                        }
                    }
                    checked += 1;
                    if examples.len() < EXAMPLES {
                        examples.push((g.clone(), u.clone(), found[0].clone(), found[1].clone()));
                    }
                }
            }
            Verdict::proven(Witness::TranslateRefinements { checked, examples }, r)
        }
    })
}

fn ceil_half(a: i64) -> i64 {
    -((-a).div_euclid(2))
}

/// Joint continuity of multiplication. At `(g, 0)` and `(0, g)` it reduces to
/// shift continuity, which is required; at `(0, 0)` every base element `U`
/// needs base elements `V`, `W` with `(V \ {0})·(W \ {0}) ⊆ U`.
pub fn check_semigroup_continuity(spec: &ZeroTopologySpec, r: usize) -> Result<Verdict> {
    if !check_shift_continuity(spec, r)?.is_proven() {
        return Err(Error::Precondition(format!("{} is not shift-continuous at scale {r}", spec.label())));
    }
    let w = windows(spec, r)?;
    let o = &spec.group;
    let rho = r / 2;
    let products_into = |v: &BaseElement, wb: &BaseElement, u: &BaseElement| -> Option<usize> {
        let left: Vec<&Element> = w.within(rho).iter().filter(|x| member(spec, v, x)).collect();
        let right: Vec<&Element> = w.within(rho).iter().filter(|x| member(spec, wb, x)).collect();
        for x in &left {
            for y in &right {
                if !member(spec, u, &o.mul(x, y)) {
                    return None;
                }
            }
        }
        Some(left.len() * right.len())
    };
    let single = |target: BaseElement, left: BaseElement, right: BaseElement, checked: usize| {
        Witness::ProductRefinements {
            refinements: vec![(target, left, right)],
            checked_products: checked,
        }
    };
    Ok(match &spec.family {
        BaseFamily::Discrete => Verdict::proven(single(BaseElement::Zero, BaseElement::Zero, BaseElement::Zero, 0), r),
        BaseFamily::Cofinite if o.is_finite() => {
            let all = BaseElement::Cofinite {
                excluded: w.all().to_vec(),
            };
            Verdict::proven(single(BaseElement::Cofinite { excluded: vec![] }, all.clone(), all, 0), r)
        }
        BaseFamily::Cofinite => {
            // U = G \ {u}: v·w = u with both v, w outside Ball(ρ) shows that no
            // cofinite V, W removing only points of Ball(ρ) multiply into U
            let u = o.generator_elements().next().expect("infinite group has generators").clone();
            let pair = w.all().iter().filter(|x| o.scale_of(x) > rho).find_map(|x| {
                let v = o.mul(&u, &o.inv(x));
                let s = o.scale_of(&v);
                (s > rho && s <= r).then(|| (v, x.clone()))
            });
            match pair {
                Some((v, x)) => Verdict::refuted(
                    Counterexample::ProductEscape {
                        target: BaseElement::Cofinite { excluded: vec![u.clone()] },
                        product: o.mul(&v, &x),
                        v,
                        w: x,
                    },
                    r,
                ),
                None => Verdict::unknown("no escaping pair inside the window", r),
            }
        }
        BaseFamily::EndBase(end) => {
            let dec = &end.decomposition;
            let sigma = end.side.sign();
            let k = end_translate(o, o.identity().clone());
            let commuting = flipping_generator(spec, end).is_none()
                && dec.transversal.iter().all(|t| dec.orientation(o, t) == 1);
            if commuting {
                // z^a t_i · z^b t_k = z^{a+b+c_ik} t_m, so thresholds β with
                // 2β + σc_ik >= 1 for all i, k land in K; the same bookkeeping
                // works for any target thresholds
                let mut beta = i64::MIN;
                for ti in &dec.transversal {
                    for tk in &dec.transversal {
                        let (c, _) = dec.decompose(&o.mul(ti, tk));
                        beta = beta.max(ceil_half(end.n0 - sigma * c));
                    }
                }
                let v = end_translate(o, o.pow(end.axis(), sigma * (beta - end.n0)));
                match products_into(&v, &v, &k) {
                    Some(checked) => Verdict::proven(single(k, v.clone(), v, checked), r),
                    None => Verdict::unknown("symbolic product refinement failed on the window", r),
                }
            } else {
                let deep: Vec<&Element> = w.all().iter().filter(|x| o.scale_of(x) > rho && member(spec, &k, x)).collect();
                let escape = deep.iter().find_map(|x| {
                    deep.iter().find_map(|y| {
                        let p = o.mul(x, y);
                        (!member(spec, &k, &p)).then(|| ((*x).clone(), (*y).clone(), p))
                    })
                });
                match escape {
                    Some((v, x, p)) => Verdict::refuted(
                        Counterexample::ProductEscape {
                            target: k,
                            v,
                            w: x,
                            product: p,
                        },
                        r,
                    ),
                    None => Verdict::unknown("no escaping product inside the window", r),
                }
            }
        }
        BaseFamily::Explicit(sets) => {
            let bases: Vec<BaseElement> = sets.iter().enumerate().map(|(i, s)| explicit(i, s)).collect();
            let mut refinements = Vec::new();
            let mut checked_products = 0;
            for u in &bases {
                let found = bases.iter().find_map(|v| {
                    bases
                        .iter()
                        .find_map(|x| products_into(v, x, u).map(|n| (v.clone(), x.clone(), n)))
                });
                match found {
                    Some((v, x, n)) => {
                        checked_products += n;
                        refinements.push((u.clone(), v, x));
                    }
                    None => {
                        return Ok(Verdict::refuted(Counterexample::NoProductRefinement { target: u.clone() }, r));
                    }
                }
            }
            Verdict::proven(
                Witness::ProductRefinements {
                    refinements,
                    checked_products,
                },
                r,
            )
        }
    })
}

/// Whether `{0}` is open.
pub fn zero_is_isolated(spec: &ZeroTopologySpec, r: usize) -> Result<Verdict> {
    let w = windows(spec, r)?;
    let o = &spec.group;
    let infinite = |base: BaseElement| {
        let counts = trailing_counts(&w, |g| member(spec, &base, g));
        match trend(&counts) {
            Trend::Increasing => Verdict::refuted(Counterexample::InfiniteBaseElement { base, counts }, r),
            _ => Verdict::unknown(format!("{base} is not growing at scale"), r),
        }
    };
    Ok(match &spec.family {
        BaseFamily::Discrete => Verdict::proven(Witness::BaseElement(BaseElement::Zero), r),
        BaseFamily::Cofinite if o.is_finite() => Verdict::proven(
            Witness::BaseElement(BaseElement::Cofinite {
                excluded: w.all().to_vec(),
            }),
            r,
        ),
        BaseFamily::Cofinite => infinite(BaseElement::Cofinite { excluded: vec![] }),
        BaseFamily::EndBase(_) => infinite(end_translate(o, o.identity().clone())),
        BaseFamily::Explicit(sets) => {
            let mut first_growing = None;
            let mut undecided = false;
            for (i, u) in sets.iter().enumerate() {
                let base = explicit(i, u);
                let counts = trailing_counts(&w, |g| u.contains(o, g));
                match trend(&counts) {
                    Trend::Constant if counts.values().all(|&c| c == 0) => {
                        return Ok(Verdict::proven(Witness::BaseElement(base), r));
                    }
                    Trend::Constant => {
                        // a finite base element shrinks to {0} once its points
                        // are excluded and the family refines intersections
                        if is_hausdorff(spec, r)?.is_proven() && check_filter_base(spec, r)?.is_proven() {
                            return Ok(Verdict::proven(Witness::BaseElement(base), r));
                        }
                        undecided = true;
                    }
                    Trend::Increasing => {
                        first_growing.get_or_insert(Counterexample::InfiniteBaseElement { base, counts });
                    }
                    Trend::Mixed => undecided = true,
                }
            }
            match (undecided, first_growing) {
                (false, Some(c)) => Verdict::refuted(c, r),
                _ => Verdict::unknown("some base element is undecided at scale", r),
            }
        }
    })
}

/// Whether any two base elements contain a common base element.
pub fn check_filter_base(spec: &ZeroTopologySpec, r: usize) -> Result<Verdict> {
    let w = windows(spec, r)?;
    let o = &spec.group;
    Ok(match &spec.family {
        BaseFamily::Discrete | BaseFamily::Cofinite => Verdict::proven(Witness::CommonRefinement { checked: 0 }, r),
        BaseFamily::EndBase(end) => match flipping_generator(spec, end) {
            Some(s) => {
                let u = end_translate(o, o.identity().clone());
                let v = end_translate(o, s);
                let intersection_counts = trailing_counts(&w, |g| member(spec, &u, g) && member(spec, &v, g));
                if trend(&intersection_counts) == Trend::Constant {
                    Verdict::refuted(
                        Counterexample::NoCommonRefinement {
                            u,
                            v,
                            intersection_counts,
                        },
                        r,
                    )
                } else {
                    Verdict::unknown("opposite translates still meet at scale", r)
                }
            }
            // equal orientations: z^{σn}·K lies in both for large n
            None => Verdict::proven(Witness::CommonRefinement { checked: 0 }, r),
        },
        BaseFamily::Explicit(sets) => {
            let mut checked = 0;
            for i in 0..sets.len() {
                for j in i + 1..sets.len() {
                    let refined = sets.iter().any(|k| {
                        w.all()
                            .iter()
                            .filter(|g| k.contains(o, g))
                            .all(|g| sets[i].contains(o, g) && sets[j].contains(o, g))
                    });
                    if !refined {
                        let intersection_counts = trailing_counts(&w, |g| sets[i].contains(o, g) && sets[j].contains(o, g));
                        return Ok(Verdict::refuted(
                            Counterexample::NoCommonRefinement {
                                u: explicit(i, &sets[i]),
                                v: explicit(j, &sets[j]),
                                intersection_counts,
                            },
                            r,
                        ));
                    }
                    checked += 1;
                }
            }
            Verdict::proven(Witness::CommonRefinement { checked }, r)
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DichotomyClass {
    Discrete,
    Compact,
    Neither,
    /// Neither `{0}` open nor compactness could be settled at scale.
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Consistency {
    Consistent,
    /// A flexible group carrying a topology that is neither discrete nor
    /// compact.
    Violation,
}

#[derive(Clone, Debug, Serialize)]
pub struct DichotomyReport {
    pub class: DichotomyClass,
    pub consistency: Consistency,
    pub flexibility: FlexibilityClass,
    pub zero_isolated: Verdict,
    pub compact: Option<Verdict>,
    pub scale: usize,
}

/// Discrete if `{0}` is open, else compact if every base element is
/// cofinite, else neither; a flexible group landing in "neither" is flagged.
pub fn classify_dichotomy(spec: &ZeroTopologySpec, r: usize) -> Result<DichotomyReport> {
    for (name, verdict) in [
        ("Hausdorff", is_hausdorff(spec, r)?),
        ("shift-continuous", check_shift_continuity(spec, r)?),
        ("locally compact", is_locally_compact(spec, r)?),
    ] {
        if !verdict.is_proven() {
            return Err(Error::Precondition(format!("{} is not {name} at scale {r}", spec.label())));
        }
    }
    let zero_isolated = zero_is_isolated(spec, r)?;
    let (class, compact) = if zero_isolated.is_proven() {
        (DichotomyClass::Discrete, None)
    } else {
        let compact = is_compact(spec, r)?;
        let class = match compact.status {
            Status::Proven(_) => DichotomyClass::Compact,
            Status::RefutedAtScale(_) if zero_isolated.is_refuted() => DichotomyClass::Neither,
            _ => DichotomyClass::Undetermined,
        };
        (class, Some(compact))
    };
    let flexibility = spec.group.flexibility_class();
    let consistency = if flexibility == FlexibilityClass::Flexible && class == DichotomyClass::Neither {
        Consistency::Violation
    } else {
        Consistency::Consistent
    };
    Ok(DichotomyReport {
        class,
        consistency,
        flexibility,
        zero_isolated,
        compact,
        scale: r,
    })
}

/// The verdicts an end base of a virtually cyclic group is expected to meet:
/// Hausdorff, shift-continuous and locally compact, yet neither discrete nor
/// compact.
#[derive(Clone, Debug, Serialize)]
pub struct Example15Bundle {
    pub group: String,
    pub side: Side,
    pub hausdorff: Verdict,
    pub shift_continuous: Verdict,
    pub locally_compact: Verdict,
    pub zero_isolated: Verdict,
    pub compact: Verdict,
    pub filter_base: Verdict,
    pub scale: usize,
}

impl Example15Bundle {
    pub fn passes(&self) -> bool {
        self.hausdorff.is_proven()
            && self.shift_continuous.is_proven()
            && self.locally_compact.is_proven()
            && self.zero_isolated.is_refuted()
            && self.compact.is_refuted()
    }
}

pub fn example15_bundle(oracle: &GroupOracle, side: Side, r: usize) -> Result<Example15Bundle> {
    let spec = super::example15_base(oracle, side)?;
    Ok(Example15Bundle {
        group: oracle.name().to_string(),
        side,
        hausdorff: is_hausdorff(&spec, r)?,
        shift_continuous: check_shift_continuity(&spec, r)?,
        locally_compact: is_locally_compact(&spec, r)?,
        zero_isolated: zero_is_isolated(&spec, r)?,
        compact: is_compact(&spec, r)?,
        filter_base: check_filter_base(&spec, r)?,
        scale: r,
    })
}

/// `0·g = g·0 = 0·0 = 0` for every `g` in the window.
pub fn zero_ideal_check(oracle: &GroupOracle, r: usize, cap: usize) -> Result<Verdict> {
    let w = Windows::for_oracle(oracle, r, cap)?;
    let zero = ZeroExt::Zero;
    if zero.mul(oracle, &zero) != ZeroExt::Zero {
        return Ok(Verdict::refuted(Counterexample::NotAbsorbing(oracle.identity().clone()), r));
    }
    for g in w.all() {
        let p = ZeroExt::Point(g.clone());
        if p.mul(oracle, &zero) != ZeroExt::Zero || zero.mul(oracle, &p) != ZeroExt::Zero {
            return Ok(Verdict::refuted(Counterexample::NotAbsorbing(g.clone()), r));
        }
    }
    Ok(Verdict::proven(Witness::Absorbing { checked: w.all().len() }, r))
}

fn subset_of(spec: &ZeroTopologySpec, base: &BaseElement) -> SubsetSpec {
    match base {
        BaseElement::Zero => SubsetSpec::finite([]),
        BaseElement::Cofinite { excluded } => SubsetSpec::cofinite(excluded.iter().cloned()),
        BaseElement::Explicit { index, .. } => match &spec.family {
            BaseFamily::Explicit(sets) => sets[*index].clone(),
            _ => unreachable!("explicit base element outside an explicit family"),
        },
        BaseElement::EndTranslate { left, right } => {
            let end = end_of(spec).expect("end base").clone();
            let o = &spec.group;
            if o.is_identity(left) && o.is_identity(right) {
                SubsetSpec::ray(end)
            } else {
                let set = EndSet::of_end(&end).translate(o, &end.decomposition, left, right);
                let dec = end.decomposition.clone();
                SubsetSpec::custom(base.to_string(), move |_, g| set.contains(&dec, g))
            }
        }
    }
}

/// For a locally compact spec with witness `U₀`, every generator's profile
/// `|(U₀ Δ U₀·s) ∩ W(r)|` must be bounded.
pub fn almost_stability_bridge(spec: &ZeroTopologySpec, r: usize) -> Result<Verdict> {
    let base = match is_locally_compact(spec, r)?.status {
        Status::Proven(Witness::BaseElement(b)) => b,
        _ => return Ok(Verdict::unknown("no locally compact witness U₀ at scale", r)),
    };
    let w = windows(spec, r)?;
    let o = &spec.group;
    let u0 = subset_of(spec, &base);
    let mut bounds = Vec::new();
    for s in o.generator_elements().filter(|s| o.scale_of(s) + 2 <= r) {
        let profile = symdiff_profile_in(o, &u0, s, &w)?;
        match profile.verdict {
            StabilityVerdict::BoundedAtScale { bound } => bounds.push((s.clone(), bound)),
            StabilityVerdict::GrowingAtScale { .. } => {
                return Ok(Verdict::refuted(
                    Counterexample::GrowingProfile {
                        base,
                        generator: s.clone(),
                    },
                    r,
                ))
            }
        }
    }
    Ok(Verdict::proven(Witness::BoundedProfiles { base, bounds }, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(spec: &str) -> GroupOracle {
        GroupOracle::from_spec(spec).unwrap()
    }

    fn explicit_spec(o: &GroupOracle, lits: &[&str]) -> ZeroTopologySpec {
        let sets = lits.iter().map(|l| SubsetSpec::parse(l, o).unwrap()).collect();
        ZeroTopologySpec::explicit(o, sets).unwrap()
    }

    #[test]
    fn hausdorff_examples() {
        let z = g("Z");
        for spec in [
            ZeroTopologySpec::end_base(&z, Side::Positive).unwrap(),
            ZeroTopologySpec::cofinite(&z),
            ZeroTopologySpec::discrete(&z),
        ] {
            assert!(is_hausdorff(&spec, 30).unwrap().is_proven(), "{}", spec.label());
        }
        let whole = explicit_spec(&z, &["cofinite:[]"]);
        match is_hausdorff(&whole, 30).unwrap().status {
            Status::RefutedAtScale(Counterexample::UnseparatedPoint(p)) => assert_eq!(p, z.vector(&[0]).unwrap()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn end_exclusion_is_the_next_tail() {
        let z = g("Z");
        let spec = ZeroTopologySpec::end_base(&z, Side::Positive).unwrap();
        let v = is_hausdorff(&spec, 10).unwrap();
        let Status::Proven(Witness::Exclusions { examples, .. }) = v.status else {
            panic!()
        };
        for (p, base) in examples {
            // excluding p >= 1 takes the tail [p + 1, ∞)
            if let (Some(&[k]), BaseElement::EndTranslate { left, .. }) = (p.coordinates(), &base) {
                assert_eq!(left.coordinates().unwrap()[0], k.max(0));
            }
        }
    }

    #[test]
    fn compactness_examples() {
        let z = g("Z");
        assert!(is_compact(&ZeroTopologySpec::cofinite(&z), 20).unwrap().is_proven());
        assert!(is_compact(&ZeroTopologySpec::discrete(&z), 20).unwrap().is_refuted());
        assert!(is_compact(&ZeroTopologySpec::discrete(&g("Sym5")), 20).unwrap().is_proven());
        let end = ZeroTopologySpec::end_base(&z, Side::Positive).unwrap();
        match is_compact(&end, 20).unwrap().status {
            Status::RefutedAtScale(Counterexample::UnboundedComplement { counts, .. }) => {
                // complement of [1, ∞) in [-k, k] is [-k, 0]
                for (k, c) in counts {
                    assert_eq!(c, k + 1);
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn local_compactness_of_ends() {
        let z = g("Z");
        let end = ZeroTopologySpec::end_base(&z, Side::Positive).unwrap();
        let v = is_locally_compact(&end, 50).unwrap();
        assert!(matches!(
            v.status,
            Status::Proven(Witness::BaseElement(BaseElement::EndTranslate { .. }))
        ));
        let d = g("Dinf");
        let flip = ZeroTopologySpec::end_base(&d, Side::Negative).unwrap();
        assert!(matches!(
            is_locally_compact(&flip, 30).unwrap().status,
            Status::RefutedAtScale(Counterexample::InfiniteDifference { .. })
        ));
    }

    #[test]
    fn shift_continuity_examples() {
        let z = g("Z");
        for spec in [
            ZeroTopologySpec::end_base(&z, Side::Positive).unwrap(),
            ZeroTopologySpec::cofinite(&z),
            ZeroTopologySpec::end_base(&g("Dinf"), Side::Negative).unwrap(),
        ] {
            assert!(check_shift_continuity(&spec, 20).unwrap().is_proven(), "{}", spec.label());
        }
        let evens = explicit_spec(&z, &["even"]);
        match check_shift_continuity(&evens, 20).unwrap().status {
            Status::RefutedAtScale(Counterexample::NoTranslateRefinement { generator, .. }) => {
                assert_eq!(generator, z.vector(&[1]).unwrap())
            }
            other => panic!("{other:?}"),
        }
        let z2 = g("Z^2");
        let halves = explicit_spec(&z2, &["halfplane:m>=0", "halfplane:m>=1", "halfplane:m>=2"]);
        assert!(check_shift_continuity(&halves, 10).unwrap().is_refuted());
    }

    #[test]
    fn semigroup_examples() {
        let z = g("Z");
        let end = ZeroTopologySpec::end_base(&z, Side::Positive).unwrap();
        assert!(check_semigroup_continuity(&end, 50).unwrap().is_proven());
        assert!(check_semigroup_continuity(&ZeroTopologySpec::discrete(&z), 50).unwrap().is_proven());
        match check_semigroup_continuity(&ZeroTopologySpec::cofinite(&z), 50).unwrap().status {
            Status::RefutedAtScale(Counterexample::ProductEscape { v, w, product, .. }) => {
                assert_eq!(product, z.vector(&[1]).unwrap());
                assert_eq!(v, z.vector(&[27]).unwrap());
                assert_eq!(w, z.vector(&[-26]).unwrap());
            }
            other => panic!("{other:?}"),
        }
        let evens = explicit_spec(&z, &["even"]);
        assert!(matches!(
            check_semigroup_continuity(&evens, 20),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn dichotomy_examples() {
        let z = g("Z");
        let end = ZeroTopologySpec::end_base(&z, Side::Positive).unwrap();
        let report = classify_dichotomy(&end, 30).unwrap();
        assert_eq!(report.class, DichotomyClass::Neither);
        assert_eq!(report.consistency, Consistency::Consistent);
        for spec in ["Z^2", "F2", "Sym5"] {
            let o = g(spec);
            let report = classify_dichotomy(&ZeroTopologySpec::discrete(&o), 5).unwrap();
            assert_eq!(report.class, DichotomyClass::Discrete);
        }
        assert!(matches!(
            classify_dichotomy(&explicit_spec(&z, &["even"]), 10),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn explicit_discrete_family() {
        let z2 = g("Z^2");
        let spec = explicit_spec(&z2, &["finite:[]", "halfplane:m>=0"]);
        assert!(is_hausdorff(&spec, 8).unwrap().is_proven());
        assert!(check_shift_continuity(&spec, 8).unwrap().is_proven());
        assert!(is_locally_compact(&spec, 8).unwrap().is_proven());
        assert!(check_filter_base(&spec, 8).unwrap().is_proven());
        assert_eq!(classify_dichotomy(&spec, 8).unwrap().class, DichotomyClass::Discrete);
    }

    #[test]
    fn filter_base_fails_when_ends_are_swapped() {
        let d = g("Dinf");
        for side in [Side::Positive, Side::Negative] {
            let spec = ZeroTopologySpec::end_base(&d, side).unwrap();
            assert!(check_filter_base(&spec, 20).unwrap().is_refuted());
        }
        let zc = g("ZxC6");
        let spec = ZeroTopologySpec::end_base(&zc, Side::Positive).unwrap();
        assert!(check_filter_base(&spec, 20).unwrap().is_proven());
    }

    #[test]
    fn example15_bundles() {
        for spec in ["ZxC2", "ZxC6", "Z"] {
            for side in [Side::Positive, Side::Negative] {
                let bundle = example15_bundle(&g(spec), side, 30).unwrap();
                assert!(bundle.passes(), "{spec} {side:?}: {bundle:?}");
            }
        }
        // the reflection swaps the two ends of Dinf
        for side in [Side::Positive, Side::Negative] {
            let bundle = example15_bundle(&g("Dinf"), side, 30).unwrap();
            assert!(bundle.hausdorff.is_proven());
            assert!(bundle.shift_continuous.is_proven());
            assert!(bundle.locally_compact.is_refuted());
            assert!(!bundle.passes());
        }
        assert!(example15_bundle(&g("Z^2"), Side::Positive, 10).is_err());
    }

    #[test]
    fn zero_ideal() {
        for spec in ["Z", "F2", "DirSumC2"] {
            assert!(zero_ideal_check(&g(spec), 6, crate::cayley::DEFAULT_MEMORY_CAP).unwrap().is_proven());
        }
    }

    #[test]
    fn bridge_on_named_families() {
        let z = g("Z");
        for spec in [
            ZeroTopologySpec::discrete(&z),
            ZeroTopologySpec::cofinite(&z),
            ZeroTopologySpec::end_base(&z, Side::Positive).unwrap(),
            ZeroTopologySpec::end_base(&g("ZxC6"), Side::Negative).unwrap(),
        ] {
            assert!(almost_stability_bridge(&spec, 20).unwrap().is_proven(), "{}", spec.label());
        }
    }
}
