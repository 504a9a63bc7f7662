//! Bounded exhaustive backtracking: find a (circular) design with the
//! given parameters or certify that none exists at small scale.
//!
//! The search extends the block list one change at a time, choosing the
//! removed element and then the introduced one, both in ascending order.
//! Pruning rests on the excess budget `e = (k-1)b [+ C(k-1,2)] - C(v,2)`:
//! a negative budget means the block count is below the lower bound
//! (immediately infeasible), and any branch whose accumulated repeat
//! coverings exceed the budget is abandoned, since per-block excesses only
//! add up. Circular searches fix the first block and settle its own
//! introduced element (which depends on the last block) at full depth,
//! where the wrap adjacency is also checked.
//!
//! With symmetry breaking on (the default), the first block is pinned to
//! the `k` smallest labels and previously unseen labels must enter in
//! ascending order; both are safe for existence questions. The search is
//! entirely deterministic: equal configurations yield equal outcomes and
//! identical first-found designs.

use std::time::{Duration, Instant};

use crate::design::{Design, Kind, Label};
use crate::verify;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub v: usize,
    pub k: usize,
    pub b: usize,
    pub kind: Kind,
    pub time_limit: Option<Duration>,
    pub node_limit: Option<u64>,
    pub symmetry_breaking: bool,
}

impl SearchConfig {
    pub fn new(v: usize, k: usize, b: usize, kind: Kind) -> SearchConfig {
        SearchConfig {
            v,
            k,
            b,
            kind,
            time_limit: None,
            node_limit: None,
            symmetry_breaking: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A design with the requested parameters; it verifies.
    Found(Design),
    /// The block count is below the lower bound; nothing was searched.
    Infeasible,
    /// The whole (canonical) tree was traversed without finding a design.
    Exhausted,
    /// A time or node limit stopped the search before it finished.
    Timeout,
}

impl SearchOutcome {
    pub fn name(&self) -> &'static str {
        match self {
            SearchOutcome::Found(_) => "Found",
            SearchOutcome::Infeasible => "Infeasible",
            SearchOutcome::Exhausted => "Exhausted",
            SearchOutcome::Timeout => "Timeout",
        }
    }
}

pub fn search(cfg: &SearchConfig) -> SearchOutcome {
    let (v, k, b) = (cfg.v, cfg.k, cfg.b);
    if k < 2 || k > v || b == 0 {
        // no such design exists for degenerate parameters
        return SearchOutcome::Infeasible;
    }
    let budget = verify::closed_form_excess(cfg.kind, v as u64, k as u64, b as u64);
    if budget < 0 {
        return SearchOutcome::Infeasible;
    }
    let mut state = State::new(cfg, budget as u32);
    let result = if cfg.symmetry_breaking || cfg.kind == Kind::Circular {
        // rotating and relabeling lets any circular design start with the
        // k smallest labels, so the canonical first block is safe there
        // even without the ascending-introductions rule
        state.start_with(&(0..k as Label).collect::<Vec<_>>())
    } else {
        state.enumerate_first_blocks()
    };
    match result {
        Walk::Found => {
            let design = Design::new(cfg.kind, state.solution.clone())
                .expect("search emits structurally valid designs");
            SearchOutcome::Found(design)
        }
        Walk::Exhausted => SearchOutcome::Exhausted,
        Walk::Stopped => SearchOutcome::Timeout,
    }
}

#[derive(PartialEq)]
enum Walk {
    Found,
    Exhausted,
    Stopped,
}

struct State<'a> {
    cfg: &'a SearchConfig,
    budget: u32,
    /// pair id -> multiplicity
    covered: Vec<u32>,
    excess: u32,
    blocks: Vec<Vec<Label>>,
    solution: Vec<Vec<Label>>,
    max_seen: Label,
    nodes: u64,
    started: Instant,
    deadline_hit: bool,
}

impl<'a> State<'a> {
    fn new(cfg: &'a SearchConfig, budget: u32) -> State<'a> {
        State {
            cfg,
            budget,
            covered: vec![0; cfg.v * cfg.v],
            excess: 0,
            blocks: Vec::with_capacity(cfg.b),
            solution: Vec::new(),
            max_seen: 0,
            nodes: 0,
            started: Instant::now(),
            deadline_hit: false,
        }
    }

    fn pair(&self, x: Label, y: Label) -> usize {
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        a as usize * self.cfg.v + b as usize
    }

    fn out_of_steam(&mut self) -> bool {
        if self.deadline_hit {
            return true;
        }
        if let Some(limit) = self.cfg.node_limit {
            if self.nodes >= limit {
                self.deadline_hit = true;
                return true;
            }
        }
        if let Some(limit) = self.cfg.time_limit {
            if self.nodes.is_multiple_of(4096) && self.started.elapsed() >= limit {
                self.deadline_hit = true;
                return true;
            }
        }
        false
    }

    fn enumerate_first_blocks(&mut self) -> Walk {
        let v = self.cfg.v as Label;
        let k = self.cfg.k;
        let mut block: Vec<Label> = (0..k as Label).collect();
        loop {
            let first = block.clone();
            match self.start_with(&first) {
                Walk::Exhausted => {}
                other => return other,
            }
            // next k-combination of 0..v in lexicographic order
            let mut i = k;
            loop {
                if i == 0 {
                    return Walk::Exhausted;
                }
                i -= 1;
                if block[i] < v - (k - i) as Label {
                    block[i] += 1;
                    for j in i + 1..k {
                        block[j] = block[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn start_with(&mut self, first: &[Label]) -> Walk {
        self.nodes += 1;
        self.blocks.push(first.to_vec());
        self.max_seen = *first.iter().max().unwrap();
        let walk = if self.cfg.kind == Kind::Linear {
            // the first block of a linear design covers all its pairs
            let mut touched = Vec::new();
            for (i, &x) in first.iter().enumerate() {
                for &y in &first[i + 1..] {
                    let p = self.pair(x, y);
                    self.covered[p] += 1;
                    touched.push(p);
                }
            }
            let walk = self.extend();
            for p in touched {
                self.covered[p] -= 1;
            }
            walk
        } else {
            // a circular first block covers pairs only at wrap time
            self.extend()
        };
        self.blocks.pop();
        walk
    }

    fn extend(&mut self) -> Walk {
        if self.blocks.len() == self.cfg.b {
            return self.close();
        }
        if self.out_of_steam() {
            return Walk::Stopped;
        }
        let current = self.blocks.last().unwrap().clone();
        let v = self.cfg.v as Label;
        for slot in 0..current.len() {
            for y in 0..v {
                if current.contains(&y) {
                    continue;
                }
                if self.cfg.symmetry_breaking && y > self.max_seen && y != self.max_seen + 1 {
                    continue; // unseen labels enter in ascending order
                }
                self.nodes += 1;
                let mut next = current.clone();
                next[slot] = y;
                // coverage of the introduced element against the kept ones
                let mut dups = 0u32;
                for (i, &u) in next.iter().enumerate() {
                    if i != slot && self.covered[self.pair(u, y)] > 0 {
                        dups += 1;
                    }
                }
                if self.excess + dups > self.budget {
                    continue;
                }
                for (i, &u) in next.iter().enumerate() {
                    if i != slot {
                        let p = self.pair(u, y);
                        self.covered[p] += 1;
                    }
                }
                self.excess += dups;
                let old_max = self.max_seen;
                self.max_seen = self.max_seen.max(y);
                self.blocks.push(next.clone());

                let walk = self.extend();

                self.blocks.pop();
                self.max_seen = old_max;
                self.excess -= dups;
                for (i, &u) in next.iter().enumerate() {
                    if i != slot {
                        let p = self.pair(u, y);
                        self.covered[p] -= 1;
                    }
                }
                if walk != Walk::Exhausted {
                    return walk;
                }
            }
        }
        Walk::Exhausted
    }

    /// Full depth reached: settle the wrap (circular) and check that the
    /// excess budget is exactly spent, which by slot conservation is
    /// equivalent to complete coverage.
    fn close(&mut self) -> Walk {
        match self.cfg.kind {
            Kind::Linear => {
                if self.excess == self.budget {
                    self.solution = self.blocks.clone();
                    return Walk::Found;
                }
                Walk::Exhausted
            }
            Kind::Circular => {
                let first = &self.blocks[0];
                let last = self.blocks.last().unwrap();
                let fresh: Vec<Label> = first
                    .iter()
                    .copied()
                    .filter(|x| !last.contains(x))
                    .collect();
                if fresh.len() != 1 {
                    return Walk::Exhausted;
                }
                let y = fresh[0];
                let mut dups = 0u32;
                for &u in first.iter() {
                    if u != y && self.covered[self.pair(u, y)] > 0 {
                        dups += 1;
                    }
                }
                if self.excess + dups == self.budget {
                    self.solution = self.blocks.clone();
                    return Walk::Found;
                }
                Walk::Exhausted
            }
        }
    }
}
