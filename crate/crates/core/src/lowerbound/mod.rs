//! The counting certificate that no graph of bounded degree contains every
//! connected graph with degrees below 4.
//!
//! A bijection `s` of the positive integers that preserves every `[2^k]` is
//! coded by the graph `G_s` on the integers: a two-way infinite path plus
//! chords `2n -- -2s(n)`. Its finite piece `G_s(i)` on `[-2^(i+1), 2^(i+1)]`
//! only depends on `s` restricted to `[2^i]`, which is given level by level:
//! level 0 permutes `{1, 2}`, level `k >= 1` permutes `[2^k + 1, 2^(k+1)]`.

mod classify;
mod gs;
mod table;

pub use classify::{
    count_nvi, iso_classify, summand_census, IsoClassification, NviCounter, NviReport,
    SummandCensus, MAX_CLASSIFY_LEVEL,
};
pub use gs::{build_gs, spanning_path_uniqueness, GsGraph, PathDegree, PathUniqueness};
pub use table::{contradiction_table, least_contradiction, ContradictionRow, EXACT_LEVEL_LIMIT};

use std::ops::RangeInclusive;

use itertools::Itertools;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rooted_graph::GraphError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LowerBoundError {
    #[error("level {level} is not a permutation of {start}..={end}")]
    NotABijection { level: usize, start: u64, end: u64 },
    #[error("G_s(i) needs i >= 1 levels, got {0}")]
    NoLevels(usize),
    #[error("level {i} exceeds the supported maximum {max}")]
    TooLarge { i: usize, max: usize },
    #[error("delta must be at least 2, got {0}")]
    BadDelta(u64),
    #[error("epsilon must lie in (0, 1], got {0}")]
    BadEpsilon(BigRational),
    #[error("vertex {vertex} is not in the host (n = {vertex_count})")]
    HostVertex { vertex: usize, vertex_count: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The integers permuted at a level.
pub fn block(level: usize) -> RangeInclusive<u64> {
    if level == 0 {
        1..=2
    } else {
        (1u64 << level) + 1..=1u64 << (level + 1)
    }
}

fn block_len(level: usize) -> usize {
    let b = block(level);
    (b.end() - b.start() + 1) as usize
}

/// The levels `0..len` of a block-respecting permutation. Level `k` is
/// stored as the images of its block in order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PermutationPrefix {
    blocks: Vec<Vec<u64>>,
}

impl PermutationPrefix {
    pub fn new(blocks: Vec<Vec<u64>>) -> Result<Self, LowerBoundError> {
        for (level, images) in blocks.iter().enumerate() {
            let range = block(level);
            let mut sorted = images.clone();
            sorted.sort_unstable();
            if !sorted.iter().copied().eq(range.clone()) {
                return Err(LowerBoundError::NotABijection {
                    level,
                    start: *range.start(),
                    end: *range.end(),
                });
            }
        }
        Ok(PermutationPrefix { blocks })
    }

    pub fn identity(levels: usize) -> Self {
        PermutationPrefix {
            blocks: (0..levels).map(|l| block(l).collect()).collect(),
        }
    }

    /// Builds the prefix from `s` on `[2^levels]`, given as `s[n - 1]`.
    pub fn from_restriction(s: &[u64]) -> Result<Self, LowerBoundError> {
        let mut blocks = Vec::new();
        let mut level = 0;
        while (*block(level).end() as usize) <= s.len() {
            let range = block(level);
            blocks.push(s[*range.start() as usize - 1..*range.end() as usize].to_vec());
            level += 1;
        }
        let covered = blocks.iter().map(Vec::len).sum::<usize>();
        if covered != s.len() || blocks.is_empty() {
            return Err(LowerBoundError::NoLevels(blocks.len()));
        }
        PermutationPrefix::new(blocks)
    }

    /// Every prefix with the given number of levels, in lexicographic order.
    pub fn all(levels: usize) -> Vec<Self> {
        (0..levels)
            .map(|l| {
                let items: Vec<u64> = block(l).collect();
                items
                    .clone()
                    .into_iter()
                    .permutations(items.len())
                    .collect::<Vec<_>>()
            })
            .multi_cartesian_product()
            .map(|blocks| PermutationPrefix { blocks })
            .collect()
    }

    pub fn levels(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<u64>] {
        &self.blocks
    }

    /// `s` on `[2^levels]`, as `s[n - 1]`.
    pub fn restriction(&self) -> Vec<u64> {
        self.blocks.concat()
    }

    pub fn inverse(&self) -> Self {
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(level, images)| {
                let start = *block(level).start();
                let mut inv = vec![0; images.len()];
                for (j, &img) in images.iter().enumerate() {
                    inv[(img - start) as usize] = start + j as u64;
                }
                inv
            })
            .collect();
        PermutationPrefix { blocks }
    }
}

/// Product measure of the set of `s` matching the given levels. `None`
/// leaves a level free.
pub fn prefix_measure(constraints: &[Option<Vec<u64>>]) -> Result<BigRational, LowerBoundError> {
    let mut measure = BigRational::one();
    for (level, c) in constraints.iter().enumerate() {
        let Some(images) = c else { continue };
        let mut padded: Vec<Vec<u64>> = (0..level).map(|l| block(l).collect()).collect();
        padded.push(images.clone());
        PermutationPrefix::new(padded)?;
        measure /= BigRational::from_integer(factorial(block_len(level) as u64).into());
    }
    Ok(measure)
}

/// Measure of one full assignment of levels `0..levels`.
pub fn cylinder_measure(levels: usize) -> BigRational {
    let denominator: BigUint = (0..levels)
        .map(|l| factorial(block_len(l) as u64))
        .product();
    BigRational::new(One::one(), denominator.into())
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Sum of measures of all full constraints at one level.
pub fn level_partition_sum(level: usize) -> BigRational {
    let count = factorial(block_len(level) as u64);
    let each = prefix_measure(
        &(0..=level)
            .map(|l| (l == level).then(|| block(l).collect()))
            .collect::<Vec<_>>(),
    )
    .expect("identity is a bijection");
    let total = each * BigRational::from_integer(count.into());
    debug_assert!(!total.is_zero());
    total
}
