//! Cost comparison of essential-irreducibility checks.
//!
//! Three strategies answer the same question:
//!
//! * `naive-power-sum`: lift to `A^m`, then look for an all-ones column in
//!   the dense reachability sum of the lifted matrix;
//! * `tarjan-lift`: lift to `A^m`, then count closed classes with Tarjan;
//! * `skeleton-tarjan`: extract the skeleton, build the matrix on `A^K`,
//!   then count its closed classes with Tarjan.
//!
//! Each run reports wall-clock time and operation counts.

use std::time::{Duration, Instant};

use crate::binmat::{decompose_counted, OpCount};
use crate::error::Result;
use crate::kernel::SupportKernel;
use crate::oracle::{lift_with_cap, prop4_check_counted, LIFT_CAP};
use crate::skeleton::{skeleton_pruned_with, PruneOptions};
use crate::skeleton_matrix::build_counted;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    NaivePowerSum,
    TarjanLift,
    SkeletonTarjan,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [
        Strategy::NaivePowerSum,
        Strategy::TarjanLift,
        Strategy::SkeletonTarjan,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::NaivePowerSum => "naive-power-sum",
            Strategy::TarjanLift => "tarjan-lift",
            Strategy::SkeletonTarjan => "skeleton-tarjan",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct StrategyRun {
    pub strategy: Strategy,
    pub essentially_irreducible: bool,
    /// States of the matrix the strategy analyses.
    pub states: usize,
    pub ops: OpCount,
    pub elapsed: Duration,
}

pub fn run_strategy(kernel: &SupportKernel, strategy: Strategy) -> Result<StrategyRun> {
    let mut ops = OpCount::default();
    let start = Instant::now();
    let (answer, states) = match strategy {
        Strategy::NaivePowerSum => {
            let chain = lift_with_cap(kernel, LIFT_CAP, &mut ops)?;
            (prop4_check_counted(&chain, &mut ops)?, chain.state_count())
        }
        Strategy::TarjanLift => {
            let chain = lift_with_cap(kernel, LIFT_CAP, &mut ops)?;
            let dec = decompose_counted(chain.graph(), &mut ops);
            (dec.closed_count() == 1, chain.state_count())
        }
        Strategy::SkeletonTarjan => {
            let skel = skeleton_pruned_with(kernel, PruneOptions::default(), &mut ops);
            let matrix = build_counted(kernel, &skel, &mut ops)?;
            let dec = decompose_counted(matrix.graph(), &mut ops);
            (dec.closed_count() == 1, matrix.space().count())
        }
    };
    Ok(StrategyRun {
        strategy,
        essentially_irreducible: answer,
        states,
        ops,
        elapsed: start.elapsed(),
    })
}
