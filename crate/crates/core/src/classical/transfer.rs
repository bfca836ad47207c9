//! Row-by-row transfer counting of zero-energy configurations.
//!
//! Every interaction vector has `|dx2| <= 2`, so a configuration is
//! interaction-free iff each row is internally free of nearest-neighbor
//! pairs and compatible with the next two rows. The state of the transfer
//! matrix is therefore a pair of consecutive rows, and the periodic count
//! is the trace of its `H`-th power, resolved by particle number.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::TorusLattice;

/// Widest row the counter accepts.
pub const MAX_DP_WIDTH: usize = 12;

fn rotate(row: u32, by: i64, width: usize) -> u32 {
    let mask = (1u32 << width) - 1;
    let by = by.rem_euclid(width as i64) as usize;
    if by == 0 {
        return row;
    }
    ((row << by) | (row >> (width - by))) & mask
}

struct RowRules {
    width: usize,
}

impl RowRules {
    fn spread(&self, row: u32, shifts: &[i64]) -> u32 {
        shifts
            .iter()
            .fold(0, |acc, &s| acc | rotate(row, s, self.width))
    }

    /// No `(±1, 0)` pair inside the row.
    fn valid(&self, row: u32) -> bool {
        row & self.spread(row, &[1, -1]) == 0
    }

    /// Rows one apart: forbidden `dx1` in `{0, ±1, ±2}`.
    fn adjacent(&self, lower: u32, upper: u32) -> bool {
        upper & self.spread(lower, &[0, 1, -1, 2, -2]) == 0
    }

    /// Rows two apart: forbidden `dx1 = ±1`.
    fn second(&self, lower: u32, upper: u32) -> bool {
        upper & self.spread(lower, &[1, -1]) == 0
    }
}

/// Number of `n`-particle configurations with zero pair counts.
pub fn count_min_energy_configs_dp(lattice: &TorusLattice, n: usize) -> Result<u128> {
    let width = lattice.width();
    let height = lattice.height();
    if width > MAX_DP_WIDTH {
        return Err(Error::WidthExceeded {
            width,
            max: MAX_DP_WIDTH,
        });
    }
    if n > lattice.num_sites() {
        return Ok(0);
    }
    let rules = RowRules { width };
    let rows: Vec<u32> = (0..1u32 << width).filter(|&r| rules.valid(r)).collect();
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for &a in &rows {
        for &b in &rows {
            if rules.adjacent(a, b) {
                pairs.push((a, b));
            }
        }
    }
    // generated in sorted order
    let index_of = |a: u32, b: u32| -> Option<usize> { pairs.binary_search(&(a, b)).ok() };
    let steps = |&(a, b): &(u32, u32)| -> Vec<usize> {
        rows.iter()
            .filter(|&&c| rules.adjacent(b, c) && rules.second(a, c))
            .map(|&c| index_of(b, c).expect("adjacent pair present"))
            .collect()
    };
    let successors: Vec<Vec<usize>> = pairs.iter().map(steps).collect();
    let weight: Vec<usize> = pairs.iter().map(|&(_, b)| b.count_ones() as usize).collect();
    let closes = |end: (u32, u32), start: (u32, u32)| -> bool {
        let (x, y) = end;
        let (r0, r1) = start;
        rules.adjacent(y, r0) && rules.second(x, r0) && rules.second(y, r1)
    };

    let per_start: Vec<u128> = (0..pairs.len())
        .into_par_iter()
        .map(|s| {
            let (r0, r1) = pairs[s];
            let start_weight = (r0.count_ones() + r1.count_ones()) as usize;
            if start_weight > n {
                return 0;
            }
            let mut dp = vec![vec![0u128; n + 1]; pairs.len()];
            dp[s][start_weight] = 1;
            for _ in 0..height - 2 {
                let mut next = vec![vec![0u128; n + 1]; pairs.len()];
                for (p, poly) in dp.iter().enumerate() {
                    if poly.iter().all(|&c| c == 0) {
                        continue;
                    }
                    for &q in &successors[p] {
                        let w = weight[q];
                        if w > n {
                            continue;
                        }
                        for k in 0..=n - w {
                            next[q][k + w] += poly[k];
                        }
                    }
                }
                dp = next;
            }
            dp.iter()
                .enumerate()
                .filter(|(p, _)| closes(pairs[*p], (r0, r1)))
                .map(|(_, poly)| poly[n])
                .sum()
        })
        .collect();
    Ok(per_start.into_iter().sum())
}
