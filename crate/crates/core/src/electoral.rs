//! Witnesses for electoral flexibility.
//!
//! A group is electorally flexible when every partition `G = A ⊔ B` into two
//! infinite parts admits an infinite `I ⊆ A` and an `x` with `I·x ⊆ B`.
//! "Infinite" is read at scale as `|I| >= m` inside a window of radius `r`.
//!
//! The consistency checks rest on one equivalence: a partition admits no such
//! witness exactly when `A·x ∩ B` is finite for every `x`, i.e. when `A` is
//! almost stable. Searches run on both sides; right- and left-sided
//! flexibility are reported separately and never identified.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Element, FlexibilityClass, GroupKind, GroupOracle};
use crate::stability::{classify_almost_stable_in, SetClass, PLATEAU};
use crate::subset::{check_partition, SubsetKind, SubsetSpec};
use crate::window::Windows;

/// Powers checked before an element is accepted as having infinite order.
pub const ORDER_BOUND: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    /// `I·x ⊆ B`.
    Right,
    /// `x·I ⊆ B`.
    Left,
}

impl Side {
    fn apply(self, oracle: &GroupOracle, i: &Element, x: &Element) -> Element {
        match self {
            Side::Right => oracle.mul(i, x),
            Side::Left => oracle.mul(x, i),
        }
    }
}

/// A verified pair `(I, x)` with `I ⊆ A` and `I·x ⊆ B` (or `x·I ⊆ B`).
#[derive(Clone, Debug, Serialize)]
pub struct WitnessCertificate {
    set: Vec<Element>,
    translate: Element,
    side: Side,
    size: usize,
}

impl WitnessCertificate {
    /// Checks every member and translate; rejects on the first failure.
    pub fn new(
        oracle: &GroupOracle,
        a: &SubsetSpec,
        b: &SubsetSpec,
        set: Vec<Element>,
        translate: Element,
        side: Side,
    ) -> Result<Self> {
        let cert = WitnessCertificate {
            size: set.len(),
            set,
            translate,
            side,
        };
        cert.verify(oracle, a, b)?;
        Ok(cert)
    }

    pub fn verify(&self, oracle: &GroupOracle, a: &SubsetSpec, b: &SubsetSpec) -> Result<()> {
        let mut distinct = HashSet::new();
        for i in &self.set {
            if !distinct.insert(i) {
                return Err(Error::CertificateRejected(format!("{i} repeated")));
            }
            if !a.contains(oracle, i) {
                return Err(Error::CertificateRejected(format!("{i} is not in {a}")));
            }
            let y = self.side.apply(oracle, i, &self.translate);
            if !b.contains(oracle, &y) {
                return Err(Error::CertificateRejected(format!("translate {y} of {i} is not in {b}")));
            }
        }
        Ok(())
    }

    pub fn set(&self) -> &[Element] {
        &self.set
    }

    pub fn translate(&self) -> &Element {
        &self.translate
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

#[derive(Clone, Debug, Serialize)]
pub enum SearchOutcome {
    Found(WitnessCertificate),
    NotFoundAtScale {
        radius: usize,
        /// Largest `|I_x|` seen and the first `x` attaining it.
        best_size: usize,
        best_translate: Option<Element>,
    },
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&WitnessCertificate> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            SearchOutcome::NotFoundAtScale { .. } => None,
        }
    }
}

/// Scans `x ∈ W(r)` by scale, then canonical order, and returns the first
/// `I_x = {a ∈ A ∩ W(r) : a·x ∈ B}` (or `x·a ∈ B`) with `|I_x| >= m`.
pub fn witness_search(
    oracle: &GroupOracle,
    a: &SubsetSpec,
    b: &SubsetSpec,
    r: usize,
    m: usize,
    side: Side,
    cap: usize,
) -> Result<SearchOutcome> {
    let windows = Windows::for_oracle(oracle, r, cap)?;
    witness_search_in(oracle, a, b, m, side, &windows)
}

fn witness_search_in(
    oracle: &GroupOracle,
    a: &SubsetSpec,
    b: &SubsetSpec,
    m: usize,
    side: Side,
    windows: &Windows,
) -> Result<SearchOutcome> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    let window = windows.all();
    let mut members = Vec::new();
    for g in window {
        match (a.contains(oracle, g), b.contains(oracle, g)) {
            (true, true) => return Err(Error::NotDisjoint(g.to_string())),
            (true, false) => members.push(g.clone()),
            _ => {}
        }
    }
    let mut best: (usize, Option<Element>) = (0, None);
    for x in window {
        let set: Vec<Element> = members
            .iter()
            .filter(|i| b.contains(oracle, &side.apply(oracle, i, x)))
            .cloned()
            .collect();
        if set.len() >= m {
            return Ok(SearchOutcome::Found(WitnessCertificate::new(oracle, a, b, set, x.clone(), side)?));
        }
        if set.len() > best.0 {
            best = (set.len(), Some(x.clone()));
        }
    }
    Ok(SearchOutcome::NotFoundAtScale {
        radius: windows.radius(),
        best_size: best.0,
        best_translate: best.1,
    })
}

/// `|I_x ∩ W(R)|` for each radius `R` in `radii`.
pub fn certificate_sizes(
    oracle: &GroupOracle,
    a: &SubsetSpec,
    b: &SubsetSpec,
    x: &Element,
    side: Side,
    windows: &Windows,
    radii: &[usize],
) -> Vec<usize> {
    radii
        .iter()
        .map(|&r| {
            windows
                .within(r)
                .iter()
                .filter(|i| a.contains(oracle, i) && b.contains(oracle, &side.apply(oracle, i, x)))
                .count()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CyclicBranch {
    /// `|J₊| >= m` or `|J₋| >= m`: `x = z` or `z⁻¹`.
    DirectTranslate,
    /// Both `A` and `B` leave the orbit union `J·⟨z⟩`.
    CosetEscape,
    /// `A ⊆ J·⟨z⟩` at scale; the fullest orbit inside `A` is used.
    PigeonholeA,
    /// `B ⊆ J·⟨z⟩` at scale; the fullest orbit inside `B` is used.
    PigeonholeB,
    /// The window is covered by `J·⟨z⟩`; no certificate is produced.
    Exhausted,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub axis: Element,
    pub radius: usize,
    pub m: usize,
    pub branch: CyclicBranch,
    pub j_plus: usize,
    pub j_minus: usize,
    /// `|J·⟨z⟩ ∩ Ball(r)|`.
    pub orbit_union: usize,
    pub a: Option<Element>,
    pub b: Option<Element>,
    pub certificate: Option<WitnessCertificate>,
    /// Reason a constructed certificate failed verification.
    pub rejected: Option<String>,
    /// For the coset-escape branch: whether `x·I` equals the window slice
    /// `{b·z^k : a·z^k ∈ Ball(r)}` of `b·⟨z⟩` exactly.
    pub orbit_identity: Option<bool>,
}

impl CaseReport {
    pub fn meets_size(&self) -> bool {
        self.certificate.as_ref().is_some_and(|c| c.size() >= self.m)
    }
}

/// The case analysis that builds a witness from an element `z` of infinite
/// order: first `J₊ = {a ∈ A : a·z ∈ B}` and `J₋ = {a ∈ A : a·z⁻¹ ∈ B}`, then
/// translates between `⟨z⟩`-orbits that avoid `J·⟨z⟩`.
pub fn witness_via_cyclic(
    oracle: &GroupOracle,
    z: &Element,
    a: &SubsetSpec,
    b: &SubsetSpec,
    r: usize,
    m: usize,
    cap: usize,
) -> Result<CaseReport> {
    if let Some(order) = oracle.order_up_to(z, ORDER_BOUND) {
        return Err(Error::FiniteOrder {
            element: z.to_string(),
            order,
        });
    }
    if oracle.chain().is_some() {
        return Err(Error::NotFinitelyGenerated(oracle.name().to_string()));
    }
    let windows = Windows::for_oracle(oracle, r, cap)?;
    let window = windows.all();
    check_partition(oracle, a, b, window)?;
    let z_inv = oracle.inv(z);
    let in_a: Vec<&Element> = window.iter().filter(|g| a.contains(oracle, g)).collect();
    let j_plus: Vec<Element> = in_a
        .iter()
        .filter(|g| b.contains(oracle, &oracle.mul(g, z)))
        .map(|g| (*g).clone())
        .collect();
    let j_minus: Vec<Element> = in_a
        .iter()
        .filter(|g| b.contains(oracle, &oracle.mul(g, &z_inv)))
        .map(|g| (*g).clone())
        .collect();
    let mut report = CaseReport {
        axis: z.clone(),
        radius: r,
        m,
        branch: CyclicBranch::DirectTranslate,
        j_plus: j_plus.len(),
        j_minus: j_minus.len(),
        orbit_union: 0,
        a: None,
        b: None,
        certificate: None,
        rejected: None,
        orbit_identity: None,
    };
    for (set, x) in [(&j_plus, z), (&j_minus, &z_inv)] {
        if set.len() >= m {
            report.certificate = Some(WitnessCertificate::new(oracle, a, b, set.clone(), x.clone(), Side::Right)?);
            return Ok(report);
        }
    }

    // |z^k| >= |k| for every infinite-order element of the catalog, so
    // j·z^k ∈ Ball(r) forces |k| <= r + |j|
    let in_ball = |g: &Element| oracle.word_length(g) <= r;
    let orbit_slice = |g: &Element| -> Vec<(i64, Element)> {
        let reach = (r + oracle.word_length(g)) as i64;
        (-reach..=reach)
            .map(|k| (k, oracle.mul(g, &oracle.pow(z, k))))
            .filter(|(_, h)| in_ball(h))
            .collect()
    };
    let mut orbit_union: HashSet<Element> = HashSet::new();
    for j in j_plus.iter().chain(&j_minus) {
        orbit_union.extend(orbit_slice(j).into_iter().map(|(_, h)| h));
    }
    report.orbit_union = orbit_union.len();
    let first_outside = |set: &SubsetSpec| window.iter().find(|g| set.contains(oracle, g) && !orbit_union.contains(g)).cloned();
    let (a_free, b_free) = (first_outside(a), first_outside(b));

    let (branch, a0, b0, set) = match (a_free, b_free) {
        (Some(a0), Some(b0)) => {
            let slice = orbit_slice(&a0);
            let set: Vec<Element> = slice.iter().map(|(_, h)| h.clone()).filter(|h| a.contains(oracle, h)).collect();
            (CyclicBranch::CosetEscape, a0, b0, set)
        }
        (None, Some(b0)) => {
            let a0 = fullest_orbit(oracle, &in_a, a, &orbit_slice);
            let set = orbit_slice(&a0).into_iter().map(|(_, h)| h).filter(|h| a.contains(oracle, h)).collect();
            (CyclicBranch::PigeonholeA, a0, b0, set)
        }
        (Some(a0), None) => {
            let in_b: Vec<&Element> = window.iter().filter(|g| b.contains(oracle, g)).collect();
            let b0 = fullest_orbit(oracle, &in_b, b, &orbit_slice);
            let shift = oracle.mul(&a0, &oracle.inv(&b0));
            let set = orbit_slice(&b0)
                .into_iter()
                .map(|(_, h)| h)
                .filter(|h| b.contains(oracle, h))
                .map(|h| oracle.mul(&shift, &h))
                .collect();
            (CyclicBranch::PigeonholeB, a0, b0, set)
        }
        (None, None) => {
            report.branch = CyclicBranch::Exhausted;
            return Ok(report);
        }
    };
    report.branch = branch;
    let x = oracle.mul(&b0, &oracle.inv(&a0));
    if branch == CyclicBranch::CosetEscape {
        let image: BTreeSet<Element> = set.iter().map(|i| oracle.mul(&x, i)).collect();
        let expected: BTreeSet<Element> = orbit_slice(&a0)
            .into_iter()
            .map(|(k, _)| oracle.mul(&b0, &oracle.pow(z, k)))
            .collect();
        report.orbit_identity = Some(image == expected);
    }
    match WitnessCertificate::new(oracle, a, b, set, x, Side::Left) {
        Ok(cert) => report.certificate = Some(cert),
        Err(e) => report.rejected = Some(e.to_string()),
    }
    report.a = Some(a0);
    report.b = Some(b0);
    Ok(report)
}

/// The element of `members` whose orbit slice meets `part` most often; ties
/// go to the first in window order.
fn fullest_orbit(
    oracle: &GroupOracle,
    members: &[&Element],
    part: &SubsetSpec,
    orbit_slice: &dyn Fn(&Element) -> Vec<(i64, Element)>,
) -> Element {
    let mut best: Option<(usize, &Element)> = None;
    for g in members {
        let n = orbit_slice(g).iter().filter(|(_, h)| part.contains(oracle, h)).count();
        if best.is_none_or(|(m, _)| n > m) {
            best = Some((n, g));
        }
    }
    best.expect("part meets the window").1.clone()
}

/// Sizes of `I_x` across radii for translates of small scale.
#[derive(Clone, Debug, Serialize)]
pub struct ScalingEvidence {
    pub translates_checked: usize,
    /// `(x, side, sizes)` for every translate whose certificate kept growing.
    pub scaling: Vec<(Element, Side, Vec<usize>)>,
    pub max_size: usize,
}

/// For each small `x`, compares `|I_x ∩ W(R)|` over the last radii; a set
/// with bounded `(A·x) ∩ B` must give constant sizes.
pub fn certificate_scaling(
    oracle: &GroupOracle,
    a: &SubsetSpec,
    b: &SubsetSpec,
    windows: &Windows,
) -> ScalingEvidence {
    let r = windows.radius();
    let mut evidence = ScalingEvidence {
        translates_checked: 0,
        scaling: Vec::new(),
        max_size: 0,
    };
    let translates = if windows.is_chain() { windows.within(r.saturating_sub(2)) } else { windows.within(r / 2) };
    for x in translates {
        let radii: Vec<usize> = if windows.is_chain() {
            (oracle.scale_of(x) + 1..=r).collect()
        } else {
            (r + 1 - PLATEAU..=r).collect()
        };
        if radii.len() < 2 {
            continue;
        }
        evidence.translates_checked += 1;
        for side in [Side::Right, Side::Left] {
            let sizes = certificate_sizes(oracle, a, b, x, side, windows, &radii);
            evidence.max_size = evidence.max_size.max(*sizes.iter().max().unwrap_or(&0));
            if sizes.windows(2).any(|w| w[0] != w[1]) {
                evidence.scaling.push((x.clone(), side, sizes));
            }
        }
    }
    evidence
}

#[derive(Clone, Debug, Serialize)]
pub enum PartitionStatus {
    Checked,
    /// Not a valid instance: one part is bounded at the tested radii.
    Rejected(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionCheck {
    pub a: String,
    pub b: String,
    pub status: PartitionStatus,
    pub set_class: Option<SetClass>,
    pub right: Option<SearchOutcome>,
    pub left: Option<SearchOutcome>,
    pub scaling: Option<ScalingEvidence>,
    pub flags: Vec<String>,
}

impl PartitionCheck {
    pub fn consistent(&self) -> bool {
        self.flags.is_empty()
    }

    /// The largest certificate found on either side.
    pub fn best_certificate(&self) -> Option<&WitnessCertificate> {
        [&self.right, &self.left]
            .into_iter()
            .flatten()
            .filter_map(SearchOutcome::certificate)
            .max_by_key(|c| c.size())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub group: String,
    pub flexibility: FlexibilityClass,
    pub radius: usize,
    pub m: usize,
    pub entries: Vec<PartitionCheck>,
    pub inconsistent: usize,
    pub rejected: usize,
}

/// Runs both searches on every partition and cross-checks them against the
/// declared flexibility label and the almost-stability classification.
pub fn flexibility_consistency(
    oracle: &GroupOracle,
    partitions: &[(SubsetSpec, SubsetSpec)],
    r: usize,
    m: usize,
    cap: usize,
) -> Result<ConsistencyReport> {
    let windows = Windows::for_oracle(oracle, r, cap)?;
    let mut entries = Vec::new();
    for (a, b) in partitions {
        let mut entry = PartitionCheck {
            a: a.name().to_string(),
            b: b.name().to_string(),
            status: PartitionStatus::Checked,
            set_class: None,
            right: None,
            left: None,
            scaling: None,
            flags: Vec::new(),
        };
        if let Err(e) = check_partition(oracle, a, b, windows.all()) {
            entry.status = PartitionStatus::Rejected(e.to_string());
            entries.push(entry);
            continue;
        }
        let class = classify_almost_stable_in(oracle, a, &windows)?.class;
        entry.set_class = Some(class);
        if matches!(class, SetClass::FiniteAtScale | SetClass::CofiniteAtScale) {
            entry.status = PartitionStatus::Rejected(format!("{class:?}: both parts must be infinite"));
            entries.push(entry);
            continue;
        }
        entry.right = Some(witness_search_in(oracle, a, b, m, Side::Right, &windows)?);
        entry.left = Some(witness_search_in(oracle, a, b, m, Side::Left, &windows)?);
        if oracle.flexibility_class() == FlexibilityClass::Flexible && entry.best_certificate().is_none() {
            entry.flags.push(format!("flexible group without a certificate of size {m}"));
        }
        if class == SetClass::AlmostStableProper {
            if oracle.flexibility_class() == FlexibilityClass::Flexible {
                entry.flags.push("flexible group with an almost-stable proper part".into());
            }
            let evidence = certificate_scaling(oracle, a, b, &windows);
            if !evidence.scaling.is_empty() {
                entry.flags.push(format!(
                    "almost-stable part with {} growing certificates",
                    evidence.scaling.len()
                ));
            }
            entry.scaling = Some(evidence);
        }
        entries.push(entry);
    }
    Ok(ConsistencyReport {
        group: oracle.name().to_string(),
        flexibility: oracle.flexibility_class(),
        radius: r,
        m,
        inconsistent: entries.iter().filter(|e| !e.consistent()).count(),
        rejected: entries
            .iter()
            .filter(|e| matches!(e.status, PartitionStatus::Rejected(_)))
            .count(),
        entries,
    })
}

/// Reproducible partitions `(A, G \ A)` with both parts unbounded at radius
/// `r`, drawn from families suited to the group.
pub fn seeded_partitions(oracle: &GroupOracle, count: usize, seed: u64, r: usize) -> Vec<(SubsetSpec, SubsetSpec)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let a = match oracle.kind() {
                GroupKind::Lattice { rank } => lattice_partition(&mut rng, *rank, i),
                GroupKind::Free { .. } => match i % 3 {
                    2 => word_length_partition(&mut rng, r),
                    _ => SubsetSpec::hashed(rng.gen()),
                },
                GroupKind::DirectSumC2 { .. } | GroupKind::FinitarySymmetric { .. } => annulus_partition(oracle, &mut rng, r),
                _ => match i % 2 {
                    1 => word_length_set(2, vec![rng.gen_range(0..2)]),
                    _ => SubsetSpec::hashed(rng.gen()),
                },
            };
            let b = a.complement();
            (a, b)
        })
        .collect()
}

fn lattice_partition(rng: &mut ChaCha8Rng, rank: usize, i: usize) -> SubsetSpec {
    let list = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
    match i % 3 {
        0 => {
            let mut normal: Vec<i64> = (0..rank).map(|_| rng.gen_range(-3..=3)).collect();
            if normal.iter().all(|&w| w == 0) {
                normal[0] = 1;
            }
            let offset = rng.gen_range(-2..=2);
            SubsetSpec::new(
                format!("halfspace:{}>={offset}", list(&normal)),
                SubsetKind::HalfSpace { normal, offset },
            )
        }
        1 => {
            // a unit first weight makes every residue class occur
            let modulus = rng.gen_range(2..=4i64);
            let mut weights = vec![1];
            weights.extend((1..rank).map(|_| rng.gen_range(0..modulus)));
            let residues: Vec<i64> = proper_residues(rng, modulus as usize).into_iter().map(|x| x as i64).collect();
            SubsetSpec::new(
                format!("parity:{}:{modulus}:{}", list(&weights), list(&residues)),
                SubsetKind::ParityClass {
                    weights,
                    modulus,
                    residues,
                },
            )
        }
        _ => SubsetSpec::hashed(rng.gen()),
    }
}

fn word_length_set(modulus: usize, residues: Vec<usize>) -> SubsetSpec {
    let list = residues.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    SubsetSpec::new(
        format!("wordlen:{modulus}:{list}"),
        SubsetKind::WordLengthCondition { modulus, residues },
    )
}

/// Word-length classes whose two parts both gain a sphere among the top two
/// radii of the window.
fn word_length_partition(rng: &mut ChaCha8Rng, r: usize) -> SubsetSpec {
    loop {
        let q = rng.gen_range(2..=4usize);
        let residues = proper_residues(rng, q);
        let in_a = |k: usize| residues.contains(&(k % q));
        if r == 0 || in_a(r) != in_a(r - 1) {
            return word_length_set(q, residues);
        }
    }
}

/// A nonempty proper subset of `0..q`, sorted.
fn proper_residues(rng: &mut ChaCha8Rng, q: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..q).collect();
    all.shuffle(rng);
    let k = rng.gen_range(1..q);
    let mut picked = all[..k].to_vec();
    picked.sort_unstable();
    picked
}

/// Annulus unions whose two parts both gain elements in the top two levels
/// of the window, so neither is bounded at radius `r`.
fn annulus_partition(oracle: &GroupOracle, rng: &mut ChaCha8Rng, r: usize) -> SubsetSpec {
    let base = oracle.chain().expect("chain group").base();
    loop {
        let period = rng.gen_range(2..=4usize);
        let residues = proper_residues(rng, period);
        let in_a = |level: usize| residues.contains(&((level - base - 1) % period));
        if r >= base + 2 && in_a(r) != in_a(r - 1) {
            return SubsetSpec::annulus(rng.gen(), period, residues);
        }
        if r < base + 2 {
            return SubsetSpec::annulus(true, 2, vec![0]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::DEFAULT_MEMORY_CAP;
    use crate::stability::stable_partition_locally_finite;

    fn g(spec: &str) -> GroupOracle {
        GroupOracle::from_spec(spec).unwrap()
    }

    fn parts(o: &GroupOracle, lit: &str) -> (SubsetSpec, SubsetSpec) {
        let a = SubsetSpec::parse(lit, o).unwrap();
        let b = a.complement();
        (a, b)
    }

    #[test]
    fn parity_shift_in_z() {
        let z = g("Z");
        let (a, b) = parts(&z, "even");
        let out = witness_search(&z, &a, &b, 12, 10, Side::Right, DEFAULT_MEMORY_CAP).unwrap();
        let cert = out.certificate().unwrap();
        assert_eq!(cert.translate(), &z.vector(&[-1]).unwrap());
        assert_eq!(cert.size(), 13);
    }

    #[test]
    fn half_plane_search_at_two_radii() {
        let z2 = g("Z^2");
        let (a, b) = parts(&z2, "halfplane:m>=0");
        for r in [10, 25] {
            let out = witness_search(&z2, &a, &b, r, 15, Side::Right, DEFAULT_MEMORY_CAP).unwrap();
            let cert = out.certificate().unwrap();
            assert_eq!(cert.translate(), &z2.vector(&[-1, 0]).unwrap());
            assert_eq!(cert.size(), 2 * r + 1);
            cert.verify(&z2, &a, &b).unwrap();
        }
        // the best translate at r = 3 is (-3,0), covering the strip 0 <= m < 3
        let out = witness_search(&z2, &a, &b, 3, 16, Side::Right, DEFAULT_MEMORY_CAP).unwrap();
        match out {
            SearchOutcome::NotFoundAtScale {
                best_size,
                best_translate,
                ..
            } => {
                assert_eq!(best_size, 15);
                assert_eq!(best_translate, Some(z2.vector(&[-3, 0]).unwrap()));
            }
            found => panic!("{found:?}"),
        }
    }

    #[test]
    fn search_rejects_overlapping_parts() {
        let z = g("Z");
        let a = SubsetSpec::parse("nat", &z).unwrap();
        let b = SubsetSpec::parse("even", &z).unwrap();
        assert!(matches!(
            witness_search(&z, &a, &b, 5, 1, Side::Right, DEFAULT_MEMORY_CAP),
            Err(Error::NotDisjoint(_))
        ));
    }

    #[test]
    fn stable_partition_certificates_are_bounded_but_not_small() {
        let ds = g("DirSumC2");
        let p = stable_partition_locally_finite(&ds).unwrap();
        let out = witness_search(&ds, &p.a, &p.b, 8, 20, Side::Right, DEFAULT_MEMORY_CAP).unwrap();
        let cert = out.certificate().expect("bounded intersections still exceed 20");
        let level = ds.chain_level(cert.translate()).unwrap();
        let windows = Windows::for_oracle(&ds, 8, DEFAULT_MEMORY_CAP).unwrap();
        let radii: Vec<usize> = (level..=8).collect();
        let sizes = certificate_sizes(&ds, &p.a, &p.b, cert.translate(), Side::Right, &windows, &radii);
        assert!(sizes.iter().all(|&s| s == cert.size()), "{sizes:?}");
        let e7 = ds.parse_element("e7").unwrap();
        assert_eq!(certificate_sizes(&ds, &p.a, &p.b, &e7, Side::Right, &windows, &[8]), vec![86]);
        let evidence = certificate_scaling(&ds, &p.a, &p.b, &windows);
        assert!(evidence.scaling.is_empty());
        assert!(evidence.translates_checked > 0);
    }

    #[test]
    fn cyclic_branch_coset_escape() {
        let z2 = g("Z^2");
        let (a, b) = parts(&z2, "halfplane:m>=0");
        let z = z2.vector(&[0, 1]).unwrap();
        let report = witness_via_cyclic(&z2, &z, &a, &b, 25, 20, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(report.branch, CyclicBranch::CosetEscape);
        assert_eq!((report.j_plus, report.j_minus), (0, 0));
        assert_eq!(report.a, Some(z2.vector(&[0, 0]).unwrap()));
        assert_eq!(report.b, Some(z2.vector(&[-1, 0]).unwrap()));
        assert_eq!(report.orbit_identity, Some(true));
        let cert = report.certificate.as_ref().unwrap();
        assert_eq!(cert.side(), Side::Left);
        assert_eq!(cert.translate(), &z2.vector(&[-1, 0]).unwrap());
        assert_eq!(cert.size(), 51);
        assert!(report.meets_size());
    }

    #[test]
    fn cyclic_branch_direct_translates() {
        let z = g("Z");
        let (a, b) = parts(&z, "even");
        let one = z.vector(&[1]).unwrap();
        let report = witness_via_cyclic(&z, &one, &a, &b, 12, 5, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(report.branch, CyclicBranch::DirectTranslate);
        assert_eq!(report.certificate.unwrap().translate(), &one);

        let z2 = g("Z^2");
        let (a, b) = parts(&z2, "halfplane:n>=0");
        let up = z2.vector(&[0, 1]).unwrap();
        let report = witness_via_cyclic(&z2, &up, &a, &b, 25, 20, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(report.branch, CyclicBranch::DirectTranslate);
        assert_eq!(report.j_plus, 0);
        assert_eq!(report.j_minus, 51);
        assert_eq!(report.certificate.unwrap().translate(), &z2.vector(&[0, -1]).unwrap());
    }

    #[test]
    fn cyclic_pigeonhole_branch() {
        // A is the column m = 0 below n = 3; J₊ holds only (0,2)
        let z2 = g("Z^2");
        let a = SubsetSpec::custom("column", |_, g| {
            let v = g.coordinates().unwrap();
            v[0] == 0 && v[1] <= 2
        });
        let b = a.complement();
        let up = z2.vector(&[0, 1]).unwrap();
        let report = witness_via_cyclic(&z2, &up, &a, &b, 10, 5, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(report.branch, CyclicBranch::PigeonholeA);
        let cert = report.certificate.as_ref().unwrap();
        cert.verify(&z2, &a, &b).unwrap();
        assert_eq!(cert.size(), 13);
    }

    #[test]
    fn cyclic_rejects_torsion() {
        let zc = g("ZxC6");
        let c = zc.parse_element("c").unwrap();
        let (a, b) = parts(&zc, "even");
        assert!(matches!(
            witness_via_cyclic(&zc, &c, &a, &b, 5, 3, DEFAULT_MEMORY_CAP),
            Err(Error::FiniteOrder { order: 6, .. })
        ));
    }

    #[test]
    fn z_nat_is_consistent_with_stability() {
        let z = g("Z");
        let (a, b) = parts(&z, "nat");
        let report = flexibility_consistency(&z, &[(a.clone(), b.clone())], 20, 20, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(report.inconsistent, 0);
        let entry = &report.entries[0];
        assert_eq!(entry.set_class, Some(SetClass::AlmostStableProper));
        let windows = Windows::for_oracle(&z, 20, DEFAULT_MEMORY_CAP).unwrap();
        for k in 1..=10i64 {
            let x = z.vector(&[-k]).unwrap();
            let sizes = certificate_sizes(&z, &a, &b, &x, Side::Right, &windows, &[18, 19, 20]);
            assert_eq!(sizes, vec![k as usize; 3]);
        }
    }

    #[test]
    fn bounded_parts_are_rejected() {
        let z2 = g("Z^2");
        let (a, b) = parts(&z2, "finite:[(0,0), (1,0)]");
        let report = flexibility_consistency(&z2, &[(a, b)], 10, 5, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(report.rejected, 1);
        assert_eq!(report.inconsistent, 0);
    }

    #[test]
    fn seeded_partitions_are_reproducible() {
        for spec in ["Z^2", "F2", "DirSumC2", "FinSym", "Dinf"] {
            let o = g(spec);
            let names = |seed| {
                seeded_partitions(&o, 12, seed, 8)
                    .iter()
                    .map(|(a, _)| a.name().to_string())
                    .collect::<Vec<_>>()
            };
            assert_eq!(names(3), names(3), "{spec}");
            assert_ne!(names(3), names(4), "{spec}");
        }
    }

    #[test]
    fn seeded_parts_are_unbounded_at_the_window() {
        for (spec, r) in [("Z^2", 8), ("F2", 5), ("F2", 6), ("Dinf", 10), ("DirSumC2", 8), ("FinSym", 7)] {
            let o = g(spec);
            let windows = Windows::for_oracle(&o, r, DEFAULT_MEMORY_CAP).unwrap();
            for (a, _) in seeded_partitions(&o, 30, 5, r) {
                let class = classify_almost_stable_in(&o, &a, &windows).unwrap().class;
                assert!(
                    !matches!(class, SetClass::FiniteAtScale | SetClass::CofiniteAtScale),
                    "{spec} r = {r}: {} is {class:?}",
                    a.name()
                );
            }
        }
    }

    #[test]
    fn certificates_survive_larger_radii() {
        let z2 = g("Z^2");
        for (a, b) in seeded_partitions(&z2, 6, 11, 12) {
            let out = witness_search(&z2, &a, &b, 12, 10, Side::Right, DEFAULT_MEMORY_CAP).unwrap();
            let small = out.certificate().unwrap().clone();
            for r in [14, 18] {
                small.verify(&z2, &a, &b).unwrap();
                let big = witness_search(&z2, &a, &b, r, small.size(), Side::Right, DEFAULT_MEMORY_CAP).unwrap();
                assert!(big.certificate().unwrap().size() >= small.size());
            }
        }
    }
}
