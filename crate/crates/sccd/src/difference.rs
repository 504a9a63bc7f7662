//! Cyclic difference-method generator for an infinite family of tight
//! circular designs.
//!
//! For `c >= 1` and `k >= 2`, take the base blocks
//! `B_i = {0, 1, ..., k-2, (i+1)(k-1)}` over `Z_v` with `v = 2c(k-1)+1`,
//! and develop the group `L_j = (B_1+j, ..., B_{c-1}+j, B_0+j)` through all
//! translates `j = 0..v-1`. The concatenation is a circular single-change
//! list with `b = v*c = c^2(2k-2)+c` blocks covering every pair exactly
//! once, which meets the circular bound with equality.

use thiserror::Error;

use crate::design::{Design, Kind, Label};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DifferenceError {
    #[error("need c >= 1 and k >= 2, got c={c}, k={k}")]
    BadParameters { c: u64, k: u64 },
}

/// Parameters of one difference family, with the derived design sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DifferenceFamilyParams {
    pub c: u64,
    pub k: u64,
}

impl DifferenceFamilyParams {
    pub fn new(c: u64, k: u64) -> Result<Self, DifferenceError> {
        if c < 1 || k < 2 {
            return Err(DifferenceError::BadParameters { c, k });
        }
        Ok(DifferenceFamilyParams { c, k })
    }

    /// Ground-set size `2c(k-1) + 1`; always odd.
    pub fn v(&self) -> u64 {
        2 * self.c * (self.k - 1) + 1
    }

    /// Block count `c^2(2k-2) + c`, which equals `v * c`.
    pub fn b(&self) -> u64 {
        self.c * self.c * (2 * self.k - 2) + self.c
    }

    /// The base blocks `B_0, ..., B_{c-1}`.
    pub fn base_blocks(&self) -> Vec<Vec<Label>> {
        let km1 = (self.k - 1) as Label;
        (0..self.c as Label)
            .map(|i| {
                let mut block: Vec<Label> = (0..km1).collect();
                block.push((i + 1) * km1);
                block
            })
            .collect()
    }
}

/// Generates the tight circular design for the given `c` and `k`.
pub fn difference_cscc(c: u64, k: u64) -> Result<Design, DifferenceError> {
    let params = DifferenceFamilyParams::new(c, k)?;
    let v = params.v() as Label;
    let base = params.base_blocks();
    let mut blocks: Vec<Vec<Label>> = Vec::with_capacity(params.b() as usize);
    for j in 0..v {
        // B_1, B_2, ..., B_{c-1}, then B_0 closes the group
        for i in (1..base.len()).chain([0]) {
            let mut block: Vec<Label> = base[i].iter().map(|&x| (x + j) % v).collect();
            block.sort_unstable();
            blocks.push(block);
        }
    }
    debug_assert_eq!(blocks.len() as u64, params.b());
    Ok(Design::new(Kind::Circular, blocks).expect("difference development is single change"))
}
