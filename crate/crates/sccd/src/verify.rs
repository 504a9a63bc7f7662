//! Lower bounds, pair-coverage multiplicities, excess accounting, and the
//! tight/economical classification.
//!
//! A pair is covered on a block when the block contains it and one of its
//! two elements was just introduced there. The block count of any design is
//! bounded below by
//!
//! - linear: `(C(v,2) - C(k,2)) / (k-1) + 1`
//! - circular: `C(v,2) / (k-1)`
//!
//! A design is economical when it meets the ceiling of its bound with
//! complete coverage, and tight when additionally the bound is an integer
//! and the excess is zero. The excess has a closed form,
//! `(k-1)b + C(k-1,2) - C(v,2)` for linear designs and `(k-1)b - C(v,2)`
//! for circular ones, and equals the number of repeated pair coverings
//! whenever coverage is complete; a design is economical exactly when its
//! excess is at most `k-2`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::design::{Design, Kind, Label};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundError {
    #[error("need 2 <= k <= v, got v={v}, k={k}")]
    BadParameters { v: u64, k: u64 },
}

/// An exact rational, reduced, with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Fraction {
    pub num: i64,
    pub den: i64,
}

impl Fraction {
    pub fn new(num: i64, den: i64) -> Fraction {
        assert!(den != 0, "zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        Fraction {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn ceil(&self) -> i64 {
        self.num.div_euclid(self.den) + if self.num.rem_euclid(self.den) > 0 { 1 } else { 0 }
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

fn choose2(n: u64) -> i64 {
    (n as i64) * (n as i64 - 1) / 2
}

/// Exact lower bound on the block count of a (circular) design on `v`
/// points with blocks of size `k`.
pub fn lower_bound(v: u64, k: u64, kind: Kind) -> Result<Fraction, BoundError> {
    if k < 2 || k > v {
        return Err(BoundError::BadParameters { v, k });
    }
    let g = match kind {
        Kind::Linear => Fraction::new(choose2(v) - choose2(k) + (k as i64 - 1), k as i64 - 1),
        Kind::Circular => Fraction::new(choose2(v), k as i64 - 1),
    };
    Ok(g)
}

/// A bound compared against an achieved block count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub g: Fraction,
    pub g_ceiling: i64,
    pub achieved_b: i64,
    pub meets_bound: bool,
}

pub fn bound_report(v: u64, k: u64, kind: Kind, b: u64) -> Result<BoundReport, BoundError> {
    let g = lower_bound(v, k, kind)?;
    let g_ceiling = g.ceil();
    Ok(BoundReport {
        g,
        g_ceiling,
        achieved_b: b as i64,
        meets_bound: b as i64 >= g_ceiling,
    })
}

/// Multiplicity of every covered pair, keyed by `(min, max)` label.
///
/// Multiplicities do not depend on the choice of initial block for circular
/// designs: each block's introduced element is fixed by its predecessor.
pub fn coverage(d: &Design) -> BTreeMap<(Label, Label), u32> {
    let trace = d.trace();
    let mut cov = BTreeMap::new();
    for i in 0..d.b() {
        for pair in covered_pairs(d.block(i), &trace.introduced[i]) {
            *cov.entry(pair).or_insert(0) += 1;
        }
    }
    cov
}

/// Pairs covered on one block: every pair made of an introduced element and
/// another block element, deduplicated when the whole block is fresh.
fn covered_pairs(block: &[Label], introduced: &[Label]) -> Vec<(Label, Label)> {
    let mut pairs = Vec::new();
    for &y in introduced {
        for &u in block {
            if u != y {
                let p = (u.min(y), u.max(y));
                if !pairs.contains(&p) {
                    pairs.push(p);
                }
            }
        }
    }
    pairs
}

/// Closed-form excess. Equals the number of repeated coverings whenever
/// coverage is complete; may be negative for block counts below the bound.
pub fn excess(d: &Design) -> i64 {
    closed_form_excess(d.kind(), d.v() as u64, d.k() as u64, d.b() as u64)
}

pub(crate) fn closed_form_excess(kind: Kind, v: u64, k: u64, b: u64) -> i64 {
    let slots = (k as i64 - 1) * b as i64
        + match kind {
            Kind::Linear => choose2(k - 1),
            Kind::Circular => 0,
        };
    slots - choose2(v)
}

/// Per-block excesses: how many of each block's covered pairs were already
/// covered by an earlier block.
///
/// `start` is the 0-based position of the initial block; it matters only
/// for circular designs, where the notion of "earlier" depends on where the
/// cycle is cut. The returned vector follows that processing order, so
/// entry `j` belongs to block `(start + j) % b`. The sum is
/// start-independent and equals the closed-form excess whenever coverage is
/// complete.
pub fn block_excesses(d: &Design, start: usize) -> Vec<u64> {
    let b = d.b();
    let start = match d.kind() {
        Kind::Linear => 0,
        Kind::Circular => start % b,
    };
    let trace = d.trace();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::with_capacity(b);
    for j in 0..b {
        let i = (start + j) % b;
        let mut dup = 0u64;
        for pair in covered_pairs(d.block(i), &trace.introduced[i]) {
            if !seen.insert(pair) {
                dup += 1;
            }
        }
        out.push(dup);
    }
    out
}

/// Everything the checker can say about one design in a single report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub kind: Kind,
    pub v: u64,
    pub k: u64,
    pub b: u64,
    pub valid_single_change: bool,
    pub covered_all_pairs: bool,
    /// Uncovered pairs in lexicographic order.
    pub missing_pairs: Vec<(Label, Label)>,
    pub excess: i64,
    /// 0-based initial block used for the per-block excesses.
    pub start: usize,
    pub block_excesses: Vec<u64>,
    pub tight: bool,
    pub economical: bool,
    pub bound: BoundReport,
}

/// Full verification of a structurally valid design.
pub fn verify(d: &Design) -> VerificationReport {
    verify_with_start(d, 0)
}

pub fn verify_with_start(d: &Design, start: usize) -> VerificationReport {
    let start = match d.kind() {
        Kind::Linear => 0,
        Kind::Circular => start % d.b(),
    };
    let (v, k, b) = (d.v() as u64, d.k() as u64, d.b() as u64);
    let cov = coverage(d);
    let missing = missing_pairs(d.labels(), &cov);
    let covered_all = missing.is_empty();
    let e = excess(d);
    let bound = bound_report(v, k, d.kind(), b).expect("valid design has 2 <= k <= v");
    let economical = covered_all && (b as i64) == bound.g_ceiling;
    let tight = economical && bound.g.is_integer() && e == 0;
    VerificationReport {
        kind: d.kind(),
        v,
        k,
        b,
        valid_single_change: true,
        covered_all_pairs: covered_all,
        missing_pairs: missing,
        excess: e,
        start,
        block_excesses: block_excesses(d, start),
        tight,
        economical,
        bound,
    }
}

/// Verification of raw block data that may violate the structural
/// invariants. Single-change failures are reported rather than returned as
/// errors, and coverage is still analyzed with the generalized trace
/// `introduced(B_i) = B_i \ B_{i-1}`; tight/economical are forced false for
/// invalid structures.
pub fn verify_blocks(kind: Kind, blocks: &[Vec<Label>]) -> VerificationReport {
    if let Ok(d) = Design::new(kind, blocks.to_vec()) {
        return verify(&d);
    }
    let sets: Vec<std::collections::BTreeSet<Label>> = blocks
        .iter()
        .map(|bl| bl.iter().copied().collect())
        .collect();
    let labels: std::collections::BTreeSet<Label> = sets.iter().flatten().copied().collect();
    let b = sets.len();
    let k = sets.iter().map(|s| s.len()).max().unwrap_or(0);
    let mut cov = BTreeMap::new();
    for i in 0..b {
        let introduced: Vec<Label> = if i == 0 && kind == Kind::Linear {
            sets[0].iter().copied().collect()
        } else {
            let prev = if i == 0 { b - 1 } else { i - 1 };
            sets[i].difference(&sets[prev]).copied().collect()
        };
        let block: Vec<Label> = sets[i].iter().copied().collect();
        for pair in covered_pairs(&block, &introduced) {
            *cov.entry(pair).or_insert(0) += 1;
        }
    }
    let missing = missing_pairs(&labels, &cov);
    let v = labels.len() as u64;
    let bound = bound_report(v, k as u64, kind, b as u64).unwrap_or(BoundReport {
        g: Fraction::new(0, 1),
        g_ceiling: 0,
        achieved_b: b as i64,
        meets_bound: false,
    });
    VerificationReport {
        kind,
        v,
        k: k as u64,
        b: b as u64,
        valid_single_change: false,
        covered_all_pairs: missing.is_empty(),
        missing_pairs: missing,
        excess: closed_form_excess(kind, v, k as u64, b as u64),
        start: 0,
        block_excesses: Vec::new(),
        tight: false,
        economical: false,
        bound,
    }
}

fn missing_pairs(
    labels: &std::collections::BTreeSet<Label>,
    cov: &BTreeMap<(Label, Label), u32>,
) -> Vec<(Label, Label)> {
    let xs: Vec<Label> = labels.iter().copied().collect();
    let mut missing = Vec::new();
    for (i, &x) in xs.iter().enumerate() {
        for &y in &xs[i + 1..] {
            if !cov.contains_key(&(x, y)) {
                missing.push((x, y));
            }
        }
    }
    missing
}
