//! Core design types: blocks, single-change adjacency, change traces, and
//! the structure-preserving transforms (reverse, relabel, rotate).
//!
//! A single-change covering design over a ground set `X` is an ordered list
//! of `b` blocks of size `k` in which consecutive blocks share exactly `k-1`
//! elements and every pair of elements of `X` occurs in at least one block.
//! In a circular design the last and first blocks are also adjacent.
//!
//! This module enforces the structural invariants (block sizes, single
//! change between neighbours); pair coverage is the `verify` module's job.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

/// Element labels are arbitrary distinct non-negative integers. They are
/// deliberately not forced to `0..v`: joins glue two designs together and
/// need disjoint fresh labels on one side.
pub type Label = u32;

/// Whether the block list wraps around.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Linear,
    Circular,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kind::Linear => write!(f, "linear"),
            Kind::Circular => write!(f, "circular"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DesignError {
    #[error("a design needs at least one block")]
    Empty,
    #[error("block {index} has {got} elements, expected k={k}")]
    WrongBlockSize { index: usize, got: usize, k: usize },
    #[error("block {index} repeats label {label}")]
    DuplicateLabel { index: usize, label: Label },
    #[error("block size k={k} is below 2")]
    BlockTooSmall { k: usize },
    #[error("blocks {left} and {right} share {got} elements, expected {want}")]
    SingleChange {
        left: usize,
        right: usize,
        got: usize,
        want: usize,
    },
    #[error("relabeling map is not a bijection on the ground set")]
    NotBijective,
    #[error("operation requires a circular design")]
    NotCircular,
}

/// An ordered list of `k`-blocks in which consecutive blocks differ by a
/// single element. Immutable after construction; all transforms return a
/// new design.
///
/// Block indices are 1-based in error messages and reports to match the
/// usual `B_1 .. B_b` convention, but `block(i)` takes 0-based positions.
/// Element order inside a block is presentation order and is preserved
/// verbatim through parsing, serialization, and transforms; two designs
/// compare equal only if the presentation matches too (use [`same_blocks`]
/// for set-wise comparison).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    kind: Kind,
    k: usize,
    blocks: Vec<Vec<Label>>,
    labels: BTreeSet<Label>,
}

impl Design {
    /// Validates the structural invariants and builds a design.
    pub fn new(kind: Kind, blocks: Vec<Vec<Label>>) -> Result<Design, DesignError> {
        if blocks.is_empty() {
            return Err(DesignError::Empty);
        }
        let k = blocks[0].len();
        if k < 2 {
            return Err(DesignError::BlockTooSmall { k });
        }
        let mut labels = BTreeSet::new();
        for (i, block) in blocks.iter().enumerate() {
            if block.len() != k {
                return Err(DesignError::WrongBlockSize {
                    index: i + 1,
                    got: block.len(),
                    k,
                });
            }
            let mut seen = BTreeSet::new();
            for &x in block {
                if !seen.insert(x) {
                    return Err(DesignError::DuplicateLabel {
                        index: i + 1,
                        label: x,
                    });
                }
            }
            labels.extend(block.iter().copied());
        }
        let b = blocks.len();
        let adjacencies = match kind {
            Kind::Linear => b - 1,
            Kind::Circular => b,
        };
        for i in 0..adjacencies {
            let j = (i + 1) % b;
            let shared = intersect_count(&blocks[i], &blocks[j]);
            if shared != k - 1 {
                return Err(DesignError::SingleChange {
                    left: i + 1,
                    right: j + 1,
                    got: shared,
                    want: k - 1,
                });
            }
        }
        Ok(Design {
            kind,
            k,
            blocks,
            labels,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Ground-set size `v`.
    pub fn v(&self) -> usize {
        self.labels.len()
    }

    /// Block size `k`.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of blocks `b`.
    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    /// The ground set `X`.
    pub fn labels(&self) -> &BTreeSet<Label> {
        &self.labels
    }

    pub fn blocks(&self) -> &[Vec<Label>] {
        &self.blocks
    }

    /// 0-based block access.
    pub fn block(&self, i: usize) -> &[Label] {
        &self.blocks[i]
    }

    pub fn block_set(&self, i: usize) -> BTreeSet<Label> {
        self.blocks[i].iter().copied().collect()
    }

    /// Derives which element enters and which leaves at every block.
    pub fn trace(&self) -> ChangeTrace {
        let b = self.b();
        let mut introduced = Vec::with_capacity(b);
        let mut removed = Vec::with_capacity(b);
        for i in 0..b {
            if i == 0 && self.kind == Kind::Linear {
                let mut all: Vec<Label> = self.blocks[0].clone();
                all.sort_unstable();
                introduced.push(all);
            } else {
                let prev = if i == 0 { b - 1 } else { i - 1 };
                introduced.push(difference(&self.blocks[i], &self.blocks[prev]));
            }
            if i + 1 == b && self.kind == Kind::Linear {
                removed.push(None);
            } else {
                let next = (i + 1) % b;
                let out = difference(&self.blocks[i], &self.blocks[next]);
                removed.push(out.first().copied());
            }
        }
        ChangeTrace { introduced, removed }
    }

    /// The interior unchanged subsets `U_i = B_i /\ B_{i+1}`.
    ///
    /// Indices use the between-blocks numbering: `U_i` sits between `B_i`
    /// and `B_{i+1}`, so a linear design yields indices `1..b-1` and a
    /// circular one `1..=b` with `U_b = B_b /\ B_1`. The end choices `U_0`
    /// and `U_b` of a linear design are free (k-1)-subsets of the first and
    /// last block; enumerate them with [`Design::end_candidates`].
    pub fn unchanged_subsets(&self) -> Vec<UnchangedSubset> {
        let b = self.b();
        let last = match self.kind {
            Kind::Linear => b - 1,
            Kind::Circular => b,
        };
        (1..=last)
            .map(|i| UnchangedSubset {
                index: i,
                elements: self
                    .block_set(i - 1)
                    .intersection(&self.block_set(i % b))
                    .copied()
                    .collect(),
            })
            .collect()
    }

    /// All candidate choices for a linear design's `U_0` (`end = 0`) or
    /// `U_b` (`end = b`): the (k-1)-subsets of the first or last block, in
    /// lexicographic order.
    pub fn end_candidates(&self, end: usize) -> Vec<BTreeSet<Label>> {
        if self.kind != Kind::Linear || (end != 0 && end != self.b()) {
            return Vec::new();
        }
        let block = if end == 0 {
            self.block_set(0)
        } else {
            self.block_set(self.b() - 1)
        };
        let sorted: Vec<Label> = block.into_iter().collect();
        // (k-1)-subsets of a k-set: drop each element, largest dropped first
        // gives lexicographic order of the kept tuples.
        (0..sorted.len())
            .rev()
            .map(|skip| {
                sorted
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != skip)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect()
    }

    /// Reverses the block order. The reverse of a valid design is valid.
    pub fn reverse(&self) -> Design {
        let mut blocks = self.blocks.clone();
        blocks.reverse();
        Design {
            kind: self.kind,
            k: self.k,
            blocks,
            labels: self.labels.clone(),
        }
    }

    /// Applies a bijection on labels. The map must cover the whole ground
    /// set injectively.
    pub fn relabel(&self, map: &BTreeMap<Label, Label>) -> Result<Design, DesignError> {
        let mut image = BTreeSet::new();
        for &x in &self.labels {
            match map.get(&x) {
                Some(&y) => {
                    if !image.insert(y) {
                        return Err(DesignError::NotBijective);
                    }
                }
                None => return Err(DesignError::NotBijective),
            }
        }
        let blocks = self
            .blocks
            .iter()
            .map(|block| block.iter().map(|x| map[x]).collect())
            .collect();
        Ok(Design {
            kind: self.kind,
            k: self.k,
            blocks,
            labels: image,
        })
    }

    /// Cyclically shifts a circular design so the block at position `s`
    /// becomes first.
    pub fn rotate(&self, s: usize) -> Result<Design, DesignError> {
        if self.kind != Kind::Circular {
            return Err(DesignError::NotCircular);
        }
        let b = self.b();
        let s = s % b;
        let mut blocks = Vec::with_capacity(b);
        blocks.extend_from_slice(&self.blocks[s..]);
        blocks.extend_from_slice(&self.blocks[..s]);
        Ok(Design {
            kind: self.kind,
            k: self.k,
            blocks,
            labels: self.labels.clone(),
        })
    }
}

/// Set-wise positional equality: same kind and the same sequence of block
/// sets, ignoring the presentation order inside each block.
pub fn same_blocks(a: &Design, b: &Design) -> bool {
    a.kind() == b.kind()
        && a.b() == b.b()
        && (0..a.b()).all(|i| a.block_set(i) == b.block_set(i))
}

/// Relabels a design by first-introduction order. Two designs are
/// isomorphic as block sequences exactly when their canonical forms have
/// the same blocks, which is how table reproductions are checked.
pub fn canonical_by_introduction(d: &Design) -> Design {
    let trace = d.trace();
    let mut map = BTreeMap::new();
    let mut next: Label = 0;
    let mut assign = |x: Label, map: &mut BTreeMap<Label, Label>| {
        map.entry(x).or_insert_with(|| {
            let v = next;
            next += 1;
            v
        });
    };
    for intro in &trace.introduced {
        for &x in intro {
            assign(x, &mut map);
        }
    }
    // an element of a circular design may sit in every block and never be
    // introduced; order any such stragglers by label
    for &x in d.labels() {
        assign(x, &mut map);
    }
    d.relabel(&map).expect("first-introduction order is a bijection")
}

/// Per-block introduced elements and removed element.
///
/// `introduced[i] = B_i \ B_{i-1}` (the whole first block for a linear
/// design), `removed[i] = B_i \ B_{i+1}` (`None` for a linear design's last
/// block). Indices are 0-based block positions; circular designs take the
/// neighbours modulo `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChangeTrace {
    pub introduced: Vec<Vec<Label>>,
    pub removed: Vec<Option<Label>>,
}

/// The (k-1)-set shared by two consecutive blocks, carrying its
/// between-blocks index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnchangedSubset {
    pub index: usize,
    pub elements: BTreeSet<Label>,
}

fn intersect_count(a: &[Label], b: &[Label]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

fn difference(a: &[Label], b: &[Label]) -> Vec<Label> {
    let mut out: Vec<Label> = a.iter().filter(|x| !b.contains(x)).copied().collect();
    out.sort_unstable();
    out
}
