//! Expansion sets: collections of unchanged subsets at distinct indices
//! that partition the ground set.
//!
//! Finding one is an exact-cover problem: the universe is `X`, and the
//! candidate rows are the design's unchanged subsets (for linear designs,
//! also every (k-1)-subset of the first block as a `U_0` choice and of the
//! last block as a `U_b` choice). The solver enumerates partitions
//! lazily in lexicographic order of their sorted index tuples, ties broken
//! by the chosen end subsets, so results are deterministic and a `limit`
//! takes the first solutions of that order without enumerating the rest.
//!
//! A linear design's expansion set is outer when it uses `U_0` or `U_b`,
//! and disjoint-capable when it uses both, the first `k-1` unchanged
//! subsets all equal `U_0`, and `U_b` is exactly the union of the elements
//! removed by the first `k-1` changes. Circular designs have no free ends;
//! their expansion sets are all classified as inner.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::design::{Design, Kind, Label};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExpansionError {
    #[error("k-1 = {km1} does not divide v = {v}")]
    NotDivisible { v: usize, km1: usize },
    #[error("operation requires a linear design")]
    NotLinear,
}

/// Which expansion sets a query should return.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Any,
    Inner,
    Outer,
    /// Outer sets that use both `U_0` and `U_b`.
    BothEnds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Inner,
    Outer,
    DisjointCapable,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::Inner => write!(f, "inner"),
            Classification::Outer => write!(f, "outer"),
            Classification::DisjointCapable => write!(f, "disjoint-capable"),
        }
    }
}

/// One member of an expansion set: an unchanged-subset index and its
/// elements. Index 0 and index `b` members of a linear design carry the
/// chosen end subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionMember {
    pub index: usize,
    pub elements: BTreeSet<Label>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionSet {
    /// Members in increasing index order; their elements partition `X`.
    pub members: Vec<ExpansionMember>,
    pub classification: Classification,
}

impl ExpansionSet {
    pub fn indices(&self) -> Vec<usize> {
        self.members.iter().map(|m| m.index).collect()
    }

    pub fn member(&self, index: usize) -> Option<&ExpansionMember> {
        self.members.iter().find(|m| m.index == index)
    }

    pub fn uses_index(&self, index: usize) -> bool {
        self.member(index).is_some()
    }
}

/// Search constraints shared by the public modes and the construction
/// internals (which need to pin the end subsets a join glues onto).
#[derive(Debug, Clone, Default)]
pub(crate) struct Requirements {
    pub require_zero: bool,
    pub require_end: bool,
    pub forbid_ends: bool,
    /// Accept only this exact subset as the `U_0` choice.
    pub force_zero: Option<BTreeSet<Label>>,
    /// Accept only this exact subset as the `U_b` choice.
    pub force_end: Option<BTreeSet<Label>>,
}

impl Requirements {
    fn from_mode(mode: Mode) -> Requirements {
        Requirements {
            require_zero: mode == Mode::BothEnds,
            require_end: mode == Mode::BothEnds,
            forbid_ends: mode == Mode::Inner,
            ..Requirements::default()
        }
    }
}

/// Finds expansion sets of `d`, filtered by `mode`, at most `limit` of them
/// (`None` = all), in lexicographic order of sorted index tuples (ties
/// broken by the chosen end subsets).
pub fn find_expansion_sets(
    d: &Design,
    mode: Mode,
    limit: Option<usize>,
) -> Result<Vec<ExpansionSet>, ExpansionError> {
    if d.kind() == Kind::Circular && (mode == Mode::Outer || mode == Mode::BothEnds) {
        // circular designs have no ends to use
        return divisibility(d).map(|_| Vec::new());
    }
    // Outer is a post-filter inside the walk: lex order interleaves
    // U_0-using and U_b-using solutions, so it cannot be a row restriction
    let req = Requirements::from_mode(mode);
    solve(d, &req, limit, mode == Mode::Outer)
}

pub(crate) fn find_constrained(
    d: &Design,
    req: &Requirements,
    limit: Option<usize>,
) -> Result<Vec<ExpansionSet>, ExpansionError> {
    solve(d, req, limit, false)
}

fn divisibility(d: &Design) -> Result<usize, ExpansionError> {
    let (v, km1) = (d.v(), d.k() - 1);
    if v % km1 != 0 {
        return Err(ExpansionError::NotDivisible { v, km1 });
    }
    Ok(v / km1)
}

/// Candidate rows sharing one unchanged-subset index. Interior indices have
/// exactly one subset; the end indices of a linear design offer every
/// (k-1)-subset of the first or last block.
struct IndexGroup {
    index: usize,
    /// (elements, bitmask), sorted by elements.
    rows: Vec<(BTreeSet<Label>, u128)>,
}

/// One partial assignment for a fixed index prefix. Prefixes with end
/// indices can hold several assignments at once (one per compatible end
/// choice); interior indices never fork.
#[derive(Clone)]
struct Assignment {
    used: u128,
    rows: Vec<(usize, BTreeSet<Label>)>,
}

/// Enumerates expansion sets in lexicographic order of sorted index tuples
/// (ties broken by the chosen end subsets), lazily, so a `limit` returns
/// the true first solutions of that order. The walk picks the next index
/// in ascending order and carries every still-compatible end-subset
/// assignment along the shared index prefix.
fn solve(
    d: &Design,
    req: &Requirements,
    limit: Option<usize>,
    outer_only: bool,
) -> Result<Vec<ExpansionSet>, ExpansionError> {
    let parts = divisibility(d)?;
    let positions: std::collections::BTreeMap<Label, usize> = d
        .labels()
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, i))
        .collect();
    assert!(
        positions.len() <= 128,
        "ground sets beyond 128 labels are unsupported"
    );
    let mask_of =
        |s: &BTreeSet<Label>| -> u128 { s.iter().map(|x| 1u128 << positions[x]).sum() };
    let full: u128 = if positions.len() == 128 {
        u128::MAX
    } else {
        (1u128 << positions.len()) - 1
    };

    let b = d.b();
    let km1 = d.k() - 1;
    let mut groups: Vec<IndexGroup> = Vec::new();
    let end_rows = |forced: &Option<BTreeSet<Label>>, end: usize| -> Vec<(BTreeSet<Label>, u128)> {
        let candidates = match forced {
            Some(s) => vec![s.clone()],
            None => d.end_candidates(end),
        };
        let block = if end == 0 { d.block_set(0) } else { d.block_set(b - 1) };
        candidates
            .into_iter()
            .filter(|s| s.len() == km1 && s.is_subset(&block))
            .map(|s| {
                let m = mask_of(&s);
                (s, m)
            })
            .collect()
    };
    if d.kind() == Kind::Linear && !req.forbid_ends {
        let rows = end_rows(&req.force_zero, 0);
        if !rows.is_empty() {
            groups.push(IndexGroup { index: 0, rows });
        }
    }
    for u in d.unchanged_subsets() {
        let m = mask_of(&u.elements);
        groups.push(IndexGroup {
            index: u.index,
            rows: vec![(u.elements, m)],
        });
    }
    if d.kind() == Kind::Linear && !req.forbid_ends {
        let rows = end_rows(&req.force_end, b);
        if !rows.is_empty() {
            groups.push(IndexGroup { index: b, rows });
        }
    }

    // union of row masks from each group onward: a cheap reachability prune
    let mut suffix = vec![0u128; groups.len() + 1];
    for i in (0..groups.len()).rev() {
        suffix[i] = suffix[i + 1] | groups[i].rows.iter().fold(0, |acc, r| acc | r.1);
    }

    let mut search = Search {
        d,
        groups: &groups,
        suffix: &suffix,
        req,
        outer_only,
        parts,
        full,
        limit,
        found: Vec::new(),
    };
    let start = Assignment {
        used: 0,
        rows: Vec::new(),
    };
    search.walk(0, vec![start]);
    Ok(search.found)
}

struct Search<'a> {
    d: &'a Design,
    groups: &'a [IndexGroup],
    suffix: &'a [u128],
    req: &'a Requirements,
    outer_only: bool,
    parts: usize,
    full: u128,
    limit: Option<usize>,
    found: Vec<ExpansionSet>,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.limit.is_some_and(|n| self.found.len() >= n)
    }

    fn walk(&mut self, group_pos: usize, assignments: Vec<Assignment>) {
        if self.done() {
            return;
        }
        let depth = assignments
            .first()
            .map(|a| a.rows.len())
            .unwrap_or(self.parts);
        if depth == self.parts {
            for a in &assignments {
                debug_assert_eq!(a.used, self.full);
                self.emit(a);
                if self.done() {
                    return;
                }
            }
            return;
        }
        let remaining = self.parts - depth;
        for g in group_pos..self.groups.len() {
            if self.groups.len() - g < remaining {
                break;
            }
            let group = &self.groups[g];
            // assignments stay ordered: extending each, in order, with the
            // group's rows in element order preserves the output order
            let mut next: Vec<Assignment> = Vec::new();
            for a in &assignments {
                for (elements, mask) in &group.rows {
                    if mask & a.used != 0 {
                        continue;
                    }
                    let used = a.used | mask;
                    if remaining == 1 {
                        if used != self.full {
                            continue;
                        }
                    } else if (self.full & !used) & !self.suffix[g + 1] != 0 {
                        continue; // some element is no longer reachable
                    }
                    let mut rows = a.rows.clone();
                    rows.push((group.index, elements.clone()));
                    next.push(Assignment { used, rows });
                }
            }
            if !next.is_empty() {
                self.walk(g + 1, next);
                if self.done() {
                    return;
                }
            }
            // a required U_0 can only be picked as the very first member
            if depth == 0 && self.req.require_zero && group.index == 0 {
                break;
            }
        }
    }

    fn emit(&mut self, a: &Assignment) {
        let has_zero = a.rows.first().is_some_and(|(i, _)| *i == 0);
        let has_end = a.rows.last().is_some_and(|(i, _)| *i == self.d.b())
            && self.d.kind() == Kind::Linear;
        if self.req.require_zero && !has_zero {
            return;
        }
        if self.req.require_end && !has_end {
            return;
        }
        if self.outer_only && !(has_zero || has_end) {
            return;
        }
        let members: Vec<ExpansionMember> = a
            .rows
            .iter()
            .map(|(index, elements)| ExpansionMember {
                index: *index,
                elements: elements.clone(),
            })
            .collect();
        let classification = classify(self.d, &members);
        self.found.push(ExpansionSet {
            members,
            classification,
        });
    }
}

/// Builds an `ExpansionSet` from bare members, sorting them by index and
/// computing the classification. The members are not validated here.
pub(crate) fn attach_classification(
    d: &Design,
    mut members: Vec<ExpansionMember>,
) -> ExpansionSet {
    members.sort_by_key(|m| m.index);
    let classification = classify(d, &members);
    ExpansionSet {
        members,
        classification,
    }
}

fn classify(d: &Design, members: &[ExpansionMember]) -> Classification {
    if d.kind() == Kind::Circular {
        return Classification::Inner;
    }
    let has_zero = members.iter().any(|m| m.index == 0);
    let has_end = members.iter().any(|m| m.index == d.b());
    if !(has_zero || has_end) {
        return Classification::Inner;
    }
    if has_zero && has_end && disjoint_capable_ends(d, members) {
        Classification::DisjointCapable
    } else {
        Classification::Outer
    }
}

/// The two end conditions: `U_0 = U_1 = ... = U_{k-1}` and `U_b` equal to
/// the union of the first `k-1` removed elements.
fn disjoint_capable_ends(d: &Design, members: &[ExpansionMember]) -> bool {
    let k = d.k();
    if d.b() < k {
        return false;
    }
    let u1: BTreeSet<Label> = d
        .block_set(0)
        .intersection(&d.block_set(1))
        .copied()
        .collect();
    let zero_ok = members
        .iter()
        .any(|m| m.index == 0 && m.elements == u1);
    if !zero_ok {
        return false;
    }
    for i in 1..k - 1 {
        let ui: BTreeSet<Label> = d
            .block_set(i)
            .intersection(&d.block_set(i + 1))
            .copied()
            .collect();
        if ui != u1 {
            return false;
        }
    }
    let mut removed_union = BTreeSet::new();
    for i in 0..k - 1 {
        removed_union.extend(d.block_set(i).difference(&d.block_set(i + 1)).copied());
    }
    members
        .iter()
        .any(|m| m.index == d.b() && m.elements == removed_union)
}

/// The first expansion set whose members include the `U_b` end choice, as
/// the two-point extension requires.
pub fn expansion_using_end(d: &Design) -> Option<ExpansionSet> {
    let req = Requirements {
        require_end: true,
        ..Requirements::default()
    };
    find_constrained(d, &req, Some(1)).ok()?.into_iter().next()
}

/// The first disjoint-capable expansion set of a linear design, if any.
///
/// The two end conditions pin both end choices (`U_0` must equal
/// `B_1 /\ B_2` and `U_b` the union of the first `k-1` removed elements),
/// so the search only has to fill in the interior members.
pub fn disjoint_capable_set(d: &Design) -> Option<ExpansionSet> {
    if d.kind() != Kind::Linear || d.b() < d.k() {
        return None;
    }
    let k = d.k();
    let u1: BTreeSet<Label> = d
        .block_set(0)
        .intersection(&d.block_set(1))
        .copied()
        .collect();
    for i in 1..k - 1 {
        let ui: BTreeSet<Label> = d
            .block_set(i)
            .intersection(&d.block_set(i + 1))
            .copied()
            .collect();
        if ui != u1 {
            return None;
        }
    }
    let mut removed_union = BTreeSet::new();
    for i in 0..k - 1 {
        removed_union.extend(d.block_set(i).difference(&d.block_set(i + 1)).copied());
    }
    if removed_union.len() != k - 1 || !removed_union.is_subset(&d.block_set(d.b() - 1)) {
        return None;
    }
    let req = Requirements {
        require_zero: true,
        require_end: true,
        force_zero: Some(u1),
        force_end: Some(removed_union),
        ..Requirements::default()
    };
    find_constrained(d, &req, Some(1)).ok()?.into_iter().next()
}

/// True when `es` is a valid expansion set of `d` and satisfies all three
/// disjoint-capable conditions. Errors on circular designs.
pub fn is_disjoint_capable(d: &Design, es: &ExpansionSet) -> Result<bool, ExpansionError> {
    if d.kind() != Kind::Linear {
        return Err(ExpansionError::NotLinear);
    }
    if !validate_expansion_set(d, es) {
        return Ok(false);
    }
    Ok(es.uses_index(0) && es.uses_index(d.b()) && disjoint_capable_ends(d, &es.members))
}

/// Re-checks an expansion set from scratch: distinct indices, each member
/// matching the design's unchanged subset (or a legal end choice), pairwise
/// disjoint, union equal to the ground set.
pub fn validate_expansion_set(d: &Design, es: &ExpansionSet) -> bool {
    let b = d.b();
    let km1 = d.k() - 1;
    let mut seen_indices = BTreeSet::new();
    let mut union: BTreeSet<Label> = BTreeSet::new();
    for m in &es.members {
        if !seen_indices.insert(m.index) || m.elements.len() != km1 {
            return false;
        }
        let interior_max = match d.kind() {
            Kind::Linear => b - 1,
            Kind::Circular => b,
        };
        let ok = if (1..=interior_max).contains(&m.index) {
            let expected: BTreeSet<Label> = d
                .block_set(m.index - 1)
                .intersection(&d.block_set(m.index % b))
                .copied()
                .collect();
            expected == m.elements
        } else if d.kind() == Kind::Linear && m.index == 0 {
            m.elements.is_subset(&d.block_set(0))
        } else if d.kind() == Kind::Linear && m.index == b {
            m.elements.is_subset(&d.block_set(b - 1))
        } else {
            false
        };
        if !ok {
            return false;
        }
        let before = union.len();
        union.extend(m.elements.iter().copied());
        if union.len() != before + km1 {
            return false; // overlap
        }
    }
    union == *d.labels()
}
