//! Recursive constructions that grow designs from smaller ones.
//!
//! Five operations, each with exact block-count and excess postconditions:
//!
//! - [`extend_v1`]: one new point; a block `U union {new}` is inserted at
//!   every expansion location, giving `b + v/(k-1)` blocks and unchanged
//!   excess.
//! - [`extend_v2`]: two new points via an outer expansion set using `U_b`;
//!   `b + 2v/(k-1) + 1` blocks, excess grows by `k-2`.
//! - [`join_linear`]: glues a donor with an outer expansion set onto the
//!   host's last block; `v* = v + v' - k + 1`, excesses add.
//! - [`build_disjoint_capable`]: a join arranged so that, after reversing,
//!   the result carries a disjoint-capable outer expansion set.
//! - [`join_circular`]: closes a disjoint-capable host and a second linear
//!   design into a circular design; excesses add.
//!
//! All constructions are deterministic: given the same inputs and plan they
//! produce identical block sequences. Default plans glue onto the
//! lexicographically smallest feasible subsets, map glue elements in
//! ascending order, and allocate fresh labels ascending from one past the
//! host's largest label.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::design::{Design, Kind, Label};
use crate::expansion::{
    self, disjoint_capable_set, validate_expansion_set, ExpansionSet, Requirements,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("label {0} already occurs in the design")]
    LabelCollision(Label),
    #[error("the given member list is not an expansion set of this design")]
    NotExpansionSet,
    #[error("expansion set does not contain the last-block end choice U_b")]
    MissingUb,
    #[error("design has no outer expansion set")]
    NoOuterExpansionSet,
    #[error("block sizes differ: k={0} vs k={1}")]
    IncompatibleK(usize, usize),
    #[error("glue is not usable: {0}")]
    GlueMismatch(String),
    #[error("first design has no disjoint-capable expansion set")]
    NotDisjointCapable,
    #[error("no disjoint pair of glue subsets exists: {0}")]
    GlueInfeasible(String),
    #[error("constructed design failed the disjoint-capable check")]
    DisjointCapableCheckFailed,
    #[error("operation requires a {0} design")]
    WrongKind(Kind),
}

/// How a join relabels the donor.
#[derive(Debug, Clone, Default)]
pub struct JoinPlan {
    /// Explicit glue: donor label -> host label. When absent, the glue is
    /// chosen deterministically from the designs' expansion sets.
    pub glue_map: Option<BTreeMap<Label, Label>>,
    /// First label for the donor's non-glue elements. Defaults to one past
    /// the host's largest label.
    pub fresh_label_base: Option<Label>,
}

/// Adds one new point: inserts `U union {new_label}` at every location of
/// the expansion set. Works for linear and circular designs alike and
/// preserves the excess, so a tight input yields a tight output.
pub fn extend_v1(
    d: &Design,
    es: &ExpansionSet,
    new_label: Label,
) -> Result<Design, ConstructError> {
    if !validate_expansion_set(d, es) {
        return Err(ConstructError::NotExpansionSet);
    }
    if d.labels().contains(&new_label) {
        return Err(ConstructError::LabelCollision(new_label));
    }
    let mut insertions: BTreeMap<usize, Vec<Vec<Label>>> = BTreeMap::new();
    for m in &es.members {
        insertions
            .entry(m.index)
            .or_default()
            .push(sorted_with(&m.elements, &[new_label]));
    }
    Ok(Design::new(d.kind(), assemble(d, &insertions))
        .expect("expansion insertions preserve single change"))
}

/// Adds two new points to a linear design whose expansion set uses `U_b`:
/// each location receives `U union {y1}` then `U union {y2}`, and one extra
/// block `(U_b minus its smallest element) union {y1, y2}` closes the end.
pub fn extend_v2(
    d: &Design,
    es: &ExpansionSet,
    y1: Label,
    y2: Label,
) -> Result<Design, ConstructError> {
    if d.kind() != Kind::Linear {
        return Err(ConstructError::WrongKind(Kind::Linear));
    }
    if !validate_expansion_set(d, es) {
        return Err(ConstructError::NotExpansionSet);
    }
    let ub = es.member(d.b()).ok_or(ConstructError::MissingUb)?.elements.clone();
    for y in [y1, y2] {
        if d.labels().contains(&y) {
            return Err(ConstructError::LabelCollision(y));
        }
    }
    if y1 == y2 {
        return Err(ConstructError::LabelCollision(y2));
    }
    let mut insertions: BTreeMap<usize, Vec<Vec<Label>>> = BTreeMap::new();
    for m in &es.members {
        let at = insertions.entry(m.index).or_default();
        at.push(sorted_with(&m.elements, &[y1]));
        at.push(sorted_with(&m.elements, &[y2]));
    }
    let x = *ub.iter().next().expect("U_b is nonempty");
    let trimmed: BTreeSet<Label> = ub.iter().copied().filter(|&e| e != x).collect();
    insertions
        .get_mut(&d.b())
        .expect("U_b insertions exist")
        .push(sorted_with(&trimmed, &[y1, y2]));
    Ok(Design::new(Kind::Linear, assemble(d, &insertions))
        .expect("expansion insertions preserve single change"))
}

/// Joins two linear designs: the donor (reversed first if its outer
/// expansion set uses only `U_b`) is relabeled so its `U_0` lands inside
/// the host's last block, its blocks are appended, and every remaining
/// donor expansion location receives one block per host-only element.
pub fn join_linear(
    host: &Design,
    donor: &Design,
    plan: &JoinPlan,
) -> Result<Design, ConstructError> {
    check_linear_pair(host, donor)?;
    let (donor, es) = orient_donor(donor, plan)?;
    let glue_domain = es.member(0).expect("oriented set has U_0").elements.clone();
    // an explicit plan is honored verbatim; the default glues onto the
    // lexicographically smallest (k-1)-subset of the host's last block,
    // mapping the donor's glue elements in ascending order
    let glue: BTreeMap<Label, Label> = match &plan.glue_map {
        Some(map) => {
            let img: BTreeSet<Label> = map.values().copied().collect();
            if img.len() != map.len() {
                return Err(ConstructError::GlueMismatch(
                    "glue map values are not distinct".into(),
                ));
            }
            if !img.is_subset(&host.block_set(host.b() - 1)) {
                return Err(ConstructError::GlueMismatch(
                    "glue image is not inside the host's last block".into(),
                ));
            }
            map.clone()
        }
        None => {
            let image = host
                .end_candidates(host.b())
                .into_iter()
                .next()
                .expect("a linear design has end candidates");
            glue_pairs(&glue_domain, &image)
        }
    };
    join_core(host, &donor, &es, &glue, plan.fresh_label_base, None)
}

/// Builds a design with a disjoint-capable outer expansion set from two
/// linear designs that both have outer expansion sets using both ends. The
/// donor's `U_0` is glued onto the host's `U_b`; the blocks inserted at the
/// donor's final location are ordered so the last `k-1` introduced elements
/// are exactly the host's `U_0`; the result is reversed and the three
/// disjoint-capable conditions are re-checked on it.
pub fn build_disjoint_capable(
    a: &Design,
    b: &Design,
    plan: &JoinPlan,
) -> Result<Design, ConstructError> {
    check_linear_pair(a, b)?;
    let both_ends = Requirements {
        require_zero: true,
        require_end: true,
        ..Requirements::default()
    };
    let (es_a, es_b) = match &plan.glue_map {
        None => {
            let es_a = expansion::find_constrained(a, &both_ends, Some(1))
                .map_err(not_outer)?
                .into_iter()
                .next()
                .ok_or(ConstructError::NoOuterExpansionSet)?;
            let es_b = expansion::find_constrained(b, &both_ends, Some(1))
                .map_err(not_outer)?
                .into_iter()
                .next()
                .ok_or(ConstructError::NoOuterExpansionSet)?;
            (es_a, es_b)
        }
        Some(map) => {
            let domain: BTreeSet<Label> = map.keys().copied().collect();
            let image: BTreeSet<Label> = map.values().copied().collect();
            let req_a = Requirements {
                require_zero: true,
                force_end: Some(image),
                ..Requirements::default()
            };
            let req_b = Requirements {
                require_end: true,
                force_zero: Some(domain),
                ..Requirements::default()
            };
            let es_a = expansion::find_constrained(a, &req_a, Some(1))
                .map_err(not_outer)?
                .into_iter()
                .next()
                .ok_or_else(|| glue_mismatch("host U_b"))?;
            let es_b = expansion::find_constrained(b, &req_b, Some(1))
                .map_err(not_outer)?
                .into_iter()
                .next()
                .ok_or_else(|| glue_mismatch("donor U_0"))?;
            (es_a, es_b)
        }
    };
    let glue_image = es_a.member(a.b()).unwrap().elements.clone();
    let glue = match &plan.glue_map {
        Some(map) => map.clone(),
        None => {
            let glue_domain = es_b.member(0).unwrap().elements.clone();
            glue_pairs(&glue_domain, &glue_image)
        }
    };
    let u0_host = es_a.member(0).unwrap().elements.clone();

    // host-only elements, with the host's U_0 moved to the back
    let mut tail_order: Vec<Label> = a
        .labels()
        .iter()
        .filter(|x| !glue_image.contains(x) && !u0_host.contains(x))
        .copied()
        .collect();
    tail_order.extend(u0_host.iter().copied());

    let joined = join_core(a, b, &es_b, &glue, plan.fresh_label_base, Some(&tail_order))?;
    let result = joined.reverse();
    if disjoint_capable_set(&result).is_none() {
        return Err(ConstructError::DisjointCapableCheckFailed);
    }
    Ok(result)
}

/// Closes two linear designs into a circular one. The first must carry a
/// disjoint-capable expansion set; the second is relabeled so the host's
/// `U_b` sits inside its first block and the host's `U_0` inside its last.
/// The host's first `k-1` blocks are deleted, the donor is appended, and
/// every interior expansion location of the host receives one block per
/// donor-only element; the end of the donor then wraps back onto the
/// host's first remaining block.
pub fn join_circular(a: &Design, b: &Design, plan: &JoinPlan) -> Result<Design, ConstructError> {
    check_linear_pair(a, b)?;
    let es_a = disjoint_capable_set(a).ok_or(ConstructError::NotDisjointCapable)?;
    let u0 = es_a.member(0).unwrap().elements.clone();
    let ub = es_a.member(a.b()).unwrap().elements.clone();

    let mut map = circular_glue(b, plan, &u0, &ub)?;
    let fresh_base = plan
        .fresh_label_base
        .unwrap_or_else(|| a.labels().iter().max().unwrap() + 1);
    let mut next = fresh_base;
    for &x in b.labels() {
        if let std::collections::btree_map::Entry::Vacant(e) = map.entry(x) {
            if a.labels().contains(&next) {
                return Err(ConstructError::LabelCollision(next));
            }
            e.insert(next);
            next += 1;
        }
    }
    let b_rel = b.relabel(&map).expect("glue map extended to a bijection");
    let aliens: Vec<Label> = b_rel
        .labels()
        .iter()
        .filter(|x| !a.labels().contains(x))
        .copied()
        .collect();

    let k = a.k();
    let mut blocks: Vec<Vec<Label>> = Vec::new();
    let interior: Vec<_> = es_a
        .members
        .iter()
        .filter(|m| m.index != 0 && m.index != a.b())
        .collect();
    for i in k..=a.b() {
        blocks.push(a.block(i - 1).to_vec());
        if let Some(m) = interior.iter().find(|m| m.index == i) {
            for &x in &aliens {
                blocks.push(sorted_with(&m.elements, &[x]));
            }
        }
    }
    blocks.extend(b_rel.blocks().iter().cloned());
    Design::new(Kind::Circular, blocks)
        .map_err(|e| ConstructError::GlueInfeasible(format!("result is not single change: {e}")))
}

/// The relabeling core of the circular join: some (k-1)-subset of the
/// donor's first block maps onto the host's `U_b`, and a disjoint
/// (k-1)-subset of its last block onto the host's `U_0`. An explicit plan
/// is taken verbatim after validation; otherwise the donor's own
/// both-ends expansion set supplies the subsets (so the result keeps an
/// expansion set), falling back to the lexicographically first disjoint
/// pair, and glue elements map in ascending order.
fn circular_glue(
    b: &Design,
    plan: &JoinPlan,
    u0: &BTreeSet<Label>,
    ub: &BTreeSet<Label>,
) -> Result<BTreeMap<Label, Label>, ConstructError> {
    let first = b.block_set(0);
    let last = b.block_set(b.b() - 1);
    if let Some(map) = &plan.glue_map {
        let mut s1 = BTreeSet::new();
        let mut s2 = BTreeSet::new();
        for (&from, &to) in map {
            if ub.contains(&to) {
                s1.insert(from);
            } else if u0.contains(&to) {
                s2.insert(from);
            } else {
                return Err(glue_mismatch("image outside the host's U_0 and U_b"));
            }
        }
        if s1.len() != ub.len() || s2.len() != u0.len() || !s1.is_disjoint(&s2) {
            return Err(glue_mismatch("glue does not split into the two end subsets"));
        }
        if !s1.is_subset(&first) || !s2.is_subset(&last) {
            return Err(glue_mismatch(
                "U_b must glue into the donor's first block and U_0 into its last",
            ));
        }
        return Ok(map.clone());
    }
    // prefer the donor's own both-ends expansion set so the result keeps one
    let both_ends = Requirements {
        require_zero: true,
        require_end: true,
        ..Requirements::default()
    };
    let (s1, s2) = 'subsets: {
        if let Ok(sets) = expansion::find_constrained(b, &both_ends, Some(1)) {
            if let Some(es) = sets.into_iter().next() {
                break 'subsets (
                    es.member(0).unwrap().elements.clone(),
                    es.member(b.b()).unwrap().elements.clone(),
                );
            }
        }
        let mut fallback = None;
        'outer: for c1 in b.end_candidates(0) {
            for c2 in b.end_candidates(b.b()) {
                if c1.is_disjoint(&c2) {
                    fallback = Some((c1, c2));
                    break 'outer;
                }
            }
        }
        match fallback {
            Some(pair) => pair,
            None => {
                return Err(ConstructError::GlueInfeasible(format!(
                    "the donor's first and last blocks share {} elements",
                    first.intersection(&last).count()
                )))
            }
        }
    };
    let mut map = glue_pairs(&s1, ub);
    map.extend(glue_pairs(&s2, u0));
    Ok(map)
}

fn check_linear_pair(a: &Design, b: &Design) -> Result<(), ConstructError> {
    if a.kind() != Kind::Linear || b.kind() != Kind::Linear {
        return Err(ConstructError::WrongKind(Kind::Linear));
    }
    if a.k() != b.k() {
        return Err(ConstructError::IncompatibleK(a.k(), b.k()));
    }
    Ok(())
}

fn not_outer(_: expansion::ExpansionError) -> ConstructError {
    ConstructError::NoOuterExpansionSet
}

fn glue_mismatch(what: &str) -> ConstructError {
    ConstructError::GlueMismatch(what.into())
}

/// Returns the donor oriented so its expansion set contains `U_0`,
/// reversing it when only a `U_b`-using set exists.
fn orient_donor(
    donor: &Design,
    plan: &JoinPlan,
) -> Result<(Design, ExpansionSet), ConstructError> {
    if let Some(map) = &plan.glue_map {
        let domain: BTreeSet<Label> = map.keys().copied().collect();
        let req = Requirements {
            force_zero: Some(domain),
            require_zero: true,
            ..Requirements::default()
        };
        let es = expansion::find_constrained(donor, &req, Some(1))
            .map_err(not_outer)?
            .into_iter()
            .next()
            .ok_or_else(|| glue_mismatch("domain is not a usable U_0 choice of the donor"))?;
        return Ok((donor.clone(), es));
    }
    let with_zero = Requirements {
        require_zero: true,
        ..Requirements::default()
    };
    if let Some(es) = expansion::find_constrained(donor, &with_zero, Some(1))
        .map_err(not_outer)?
        .into_iter()
        .next()
    {
        return Ok((donor.clone(), es));
    }
    let with_end = Requirements {
        require_end: true,
        ..Requirements::default()
    };
    if !expansion::find_constrained(donor, &with_end, Some(1))
        .map_err(not_outer)?
        .is_empty()
    {
        let reversed = donor.reverse();
        let es = expansion::find_constrained(&reversed, &with_zero, Some(1))
            .map_err(not_outer)?
            .into_iter()
            .next()
            .expect("reversal mirrors a U_b-using set onto U_0");
        return Ok((reversed, es));
    }
    Err(ConstructError::NoOuterExpansionSet)
}

/// Shared assembly for the linear joins: relabel the donor, append it to
/// the host, and insert one block per host-only element at every donor
/// expansion location other than `U_0`. `final_order`, when given, fixes
/// the element order used at the donor's `U_b` location.
fn join_core(
    host: &Design,
    donor: &Design,
    es: &ExpansionSet,
    glue: &BTreeMap<Label, Label>,
    fresh_label_base: Option<Label>,
    final_order: Option<&[Label]>,
) -> Result<Design, ConstructError> {
    let glue_image: BTreeSet<Label> = glue.values().copied().collect();
    let fresh_base = fresh_label_base.unwrap_or_else(|| host.labels().iter().max().unwrap() + 1);
    let mut map = glue.clone();
    let mut next = fresh_base;
    for &x in donor.labels() {
        if let std::collections::btree_map::Entry::Vacant(e) = map.entry(x) {
            if host.labels().contains(&next) {
                return Err(ConstructError::LabelCollision(next));
            }
            e.insert(next);
            next += 1;
        }
    }
    let donor_rel = donor
        .relabel(&map)
        .map_err(|_| glue_mismatch("glue map does not extend to a bijection"))?;

    let aliens: Vec<Label> = host
        .labels()
        .iter()
        .filter(|x| !glue_image.contains(x))
        .copied()
        .collect();

    let mut insertions: BTreeMap<usize, Vec<Vec<Label>>> = BTreeMap::new();
    for m in &es.members {
        if m.index == 0 {
            continue;
        }
        let elements: BTreeSet<Label> = m.elements.iter().map(|x| map[x]).collect();
        let order: &[Label] = match final_order {
            Some(tail) if m.index == donor.b() => tail,
            _ => &aliens,
        };
        let at = insertions.entry(m.index).or_default();
        for &x in order {
            at.push(sorted_with(&elements, &[x]));
        }
    }

    let mut blocks = host.blocks().to_vec();
    blocks.extend(assemble(&donor_rel, &insertions));
    Ok(Design::new(Kind::Linear, blocks).expect("join seams are single change"))
}

/// Lays out a design's blocks with extra blocks spliced in after the given
/// between-block indices (index 0 = before the first block).
fn assemble(d: &Design, insertions: &BTreeMap<usize, Vec<Vec<Label>>>) -> Vec<Vec<Label>> {
    let mut blocks = Vec::with_capacity(d.b() + insertions.values().map(Vec::len).sum::<usize>());
    if let Some(ins) = insertions.get(&0) {
        blocks.extend(ins.iter().cloned());
    }
    for i in 1..=d.b() {
        blocks.push(d.block(i - 1).to_vec());
        if let Some(ins) = insertions.get(&i) {
            blocks.extend(ins.iter().cloned());
        }
    }
    blocks
}

fn glue_pairs(domain: &BTreeSet<Label>, image: &BTreeSet<Label>) -> BTreeMap<Label, Label> {
    domain.iter().copied().zip(image.iter().copied()).collect()
}

fn sorted_with(base: &BTreeSet<Label>, extra: &[Label]) -> Vec<Label> {
    let mut block: Vec<Label> = base.iter().copied().collect();
    block.extend_from_slice(extra);
    block.sort_unstable();
    block
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::expansion::Mode;
    use crate::verify;

    fn get(name: &str) -> Design {
        catalog::catalog_get(name).unwrap().design.clone()
    }

    fn first_any(d: &Design) -> ExpansionSet {
        expansion::find_expansion_sets(d, Mode::Any, Some(1))
            .unwrap()
            .into_iter()
            .next()
            .expect("expansion set exists")
    }

    #[test]
    fn v1_grows_the_12_point_design() {
        let d = get("tsccd_12_4_21");
        let grown = extend_v1(&d, &first_any(&d), 13).unwrap();
        let r = verify::verify(&grown);
        assert_eq!((r.v, r.k, r.b), (13, 4, 25));
        assert!(r.tight);
        assert_eq!(grown.b(), d.b() + d.v() / (d.k() - 1));
    }

    #[test]
    fn v1_on_a_circular_design() {
        let d = get("cscc_6_3_8");
        let grown = extend_v1(&d, &first_any(&d), 7).unwrap();
        assert_eq!(grown.kind(), Kind::Circular);
        let r = verify::verify(&grown);
        assert_eq!((r.v, r.b), (7, 11));
        assert_eq!(r.excess, 1); // 2*11 - 21
        assert!(r.covered_all_pairs);
    }

    #[test]
    fn v1_rejects_bad_inputs() {
        let d = get("tsccd_12_4_21");
        let es = first_any(&d);
        assert_eq!(extend_v1(&d, &es, 5), Err(ConstructError::LabelCollision(5)));
        let other = get("tsccd_6_3_7_a");
        assert_eq!(
            extend_v1(&other, &es, 99),
            Err(ConstructError::NotExpansionSet)
        );
    }

    #[test]
    fn v2_builds_the_14_point_design() {
        let d = get("tsccd_12_4_21");
        let es = expansion::expansion_using_end(&d).expect("U_b-using set exists");
        let grown = extend_v2(&d, &es, 13, 14).unwrap();
        let r = verify::verify(&grown);
        assert_eq!((r.v, r.k, r.b), (14, 4, 30));
        assert_eq!(r.excess, 2);
        assert!(r.economical && !r.tight);
        assert_eq!(grown.b(), d.b() + 2 * d.v() / (d.k() - 1) + 1);
    }

    #[test]
    fn v2_requires_the_end_choice() {
        let d = get("cscc_6_3_8");
        let es = first_any(&d);
        assert_eq!(
            extend_v2(&d, &es, 90, 91),
            Err(ConstructError::WrongKind(Kind::Linear))
        );
        let d = get("tsccd_12_4_21");
        // an inner or U_0-using set lacks U_b
        let sets = expansion::find_expansion_sets(&d, Mode::Any, None).unwrap();
        if let Some(es) = sets.iter().find(|es| !es.uses_index(d.b())) {
            assert_eq!(extend_v2(&d, es, 90, 91), Err(ConstructError::MissingUb));
        }
    }

    #[test]
    fn join_reproduces_the_10_point_table_up_to_relabeling() {
        let a = get("tsccd_6_3_7_a");
        let b = get("tsccd_6_3_7_b");
        let joined = join_linear(&a, &b, &JoinPlan::default()).unwrap();
        let r = verify::verify(&joined);
        assert_eq!((r.v, r.k, r.b), (10, 3, 22));
        assert!(r.tight);
        assert_eq!(r.excess, 0);
        // identical reruns produce identical block sequences
        assert_eq!(joined, join_linear(&a, &b, &JoinPlan::default()).unwrap());
    }

    #[test]
    fn join_is_excess_additive() {
        let a = get("esccd_4_3_3");
        let b = get("tsccd_6_3_7_a");
        let joined = join_linear(&a, &b, &JoinPlan::default()).unwrap();
        let r = verify::verify(&joined);
        assert_eq!((r.v, r.k, r.b), (8, 3, 14));
        assert_eq!(r.excess, 1);
        assert!(r.economical);
    }

    #[test]
    fn join_is_excess_additive_across_catalog_pairs() {
        // every linear k=3 host against every donor with an outer set
        let hosts = ["tsccd_6_3_7_a", "esccd_4_3_3", "esccd_8_3_14", "sccd_7_3_10",
                     "tsccd_10_3_22_join"];
        let donors = ["tsccd_6_3_7_a", "tsccd_6_3_7_b", "esccd_8_3_14", "tsccd_10_3_22_dc"];
        for host in hosts {
            for donor in donors {
                let a = get(host);
                let b = get(donor);
                let joined = join_linear(&a, &b, &JoinPlan::default()).unwrap();
                let r = verify::verify(&joined);
                assert!(r.covered_all_pairs, "{host}+{donor}");
                assert_eq!(
                    r.excess,
                    verify::excess(&a) + verify::excess(&b),
                    "{host}+{donor}"
                );
                assert_eq!(r.v as usize, a.v() + b.v() - a.k() + 1, "{host}+{donor}");
                let expected_b = a.b() + b.b()
                    + (a.v() - a.k() + 1) * (b.v() - b.k() + 1) / (a.k() - 1);
                assert_eq!(r.b as usize, expected_b, "{host}+{donor}");
            }
        }
    }

    #[test]
    fn join_rejects_mismatched_block_sizes() {
        let a = get("tsccd_6_3_7_a");
        let b = get("tsccd_12_4_21");
        assert_eq!(
            join_linear(&a, &b, &JoinPlan::default()),
            Err(ConstructError::IncompatibleK(3, 4))
        );
    }

    #[test]
    fn build_disjoint_capable_from_two_12_point_designs() {
        let d = get("tsccd_12_4_21");
        let built = build_disjoint_capable(&d, &d, &JoinPlan::default()).unwrap();
        let r = verify::verify(&built);
        assert_eq!((r.v, r.k, r.b), (21, 4, 69));
        assert!(r.tight);
        let es = disjoint_capable_set(&built).expect("disjoint-capable set");
        assert!(expansion::is_disjoint_capable(&built, &es).unwrap());
    }

    #[test]
    fn join_circular_closes_the_12_point_circular_design() {
        let a = get("tsccd_10_3_22_dc");
        let b = get("tsccd_6_3_7_relabelled");
        let closed = join_circular(&a, &b, &JoinPlan::default()).unwrap();
        let r = verify::verify(&closed);
        assert_eq!(r.kind, Kind::Circular);
        assert_eq!((r.v, r.k, r.b), (12, 3, 33));
        assert!(r.tight);
    }

    #[test]
    fn join_circular_requires_a_disjoint_capable_host() {
        let a = get("tsccd_6_3_7_a");
        let b = get("tsccd_6_3_7_b");
        assert_eq!(
            join_circular(&a, &b, &JoinPlan::default()),
            Err(ConstructError::NotDisjointCapable)
        );
    }

    #[test]
    fn join_circular_glue_infeasible_when_end_blocks_overlap() {
        // the donor's first and last blocks coincide, so no disjoint pair
        // of glue subsets exists
        let donor = Design::new(
            Kind::Linear,
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 2]],
        )
        .unwrap();
        let host = get("tsccd_10_3_22_dc");
        assert!(matches!(
            join_circular(&host, &donor, &JoinPlan::default()),
            Err(ConstructError::GlueInfeasible(_))
        ));
    }

    #[test]
    fn join_rejects_a_colliding_fresh_label_base() {
        let a = get("tsccd_6_3_7_a");
        let b = get("tsccd_6_3_7_b");
        let plan = JoinPlan {
            glue_map: None,
            fresh_label_base: Some(3), // collides with the host's labels
        };
        assert!(matches!(
            join_linear(&a, &b, &plan),
            Err(ConstructError::LabelCollision(_))
        ));
    }

    #[test]
    fn explicit_glue_reproduces_the_10_point_table_exactly() {
        let a = get("tsccd_6_3_7_a");
        let b = get("tsccd_6_3_7_b");
        let plan = JoinPlan {
            glue_map: Some(BTreeMap::from([(2, 2), (5, 5)])),
            fresh_label_base: Some(7),
        };
        let joined = join_linear(&a, &b, &plan).unwrap();
        let table = get("tsccd_10_3_22_join");
        assert!(crate::design::same_blocks(&joined, &table));
    }
}
