//! Brute-force ground truth on the first-order lift.
//!
//! The chain is rewritten as a first-order chain on `A^m` with an edge
//! `x -> (x_2, ..., x_m, a)` whenever `p(x, a) > 0`, and classified with
//! the plain graph machinery. Nothing here goes through the skeleton.

use crate::binmat::{decompose_counted, BinaryMatrix, OpCount, ShiftGraph};
use crate::error::{Error, Result};
use crate::kernel::SupportKernel;
use crate::word::StateSpace;

/// Default cap on `|A|^m` for the lift.
pub const LIFT_CAP: usize = 1 << 22;

/// Cap on `|A|^m` for the dense power-sum check.
pub const PROP4_CAP: usize = 1 << 14;

/// Support pattern of the lifted first-order chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedChain {
    graph: ShiftGraph,
}

impl LiftedChain {
    pub fn graph(&self) -> &ShiftGraph {
        &self.graph
    }

    pub fn space(&self) -> StateSpace {
        self.graph.space()
    }

    pub fn state_count(&self) -> usize {
        self.graph.space().count()
    }

    /// Number of positive entries in row `x`.
    pub fn row_ones(&self, x: usize) -> usize {
        self.graph.allowed_count(x)
    }

    pub fn adjacency(&self) -> BinaryMatrix {
        self.graph.to_dense()
    }
}

pub fn lift(kernel: &SupportKernel) -> Result<LiftedChain> {
    lift_with_cap(kernel, LIFT_CAP, &mut OpCount::default())
}

pub fn lift_with_cap(kernel: &SupportKernel, cap: usize, ops: &mut OpCount) -> Result<LiftedChain> {
    let space = StateSpace::new(kernel.alphabet_size(), kernel.order(), cap)?;
    let mut x = vec![0; kernel.order()];
    let mut current = usize::MAX;
    let mut row = kernel.default_support().clone();
    let graph = ShiftGraph::from_fn(space, |state, a| {
        if state != current {
            current = state;
            x.copy_from_slice(space.word_at(state).symbols());
            row = kernel.effective_support(&x).clone();
        }
        row.allows(a)
    });
    ops.steps += (space.count() * kernel.alphabet_size()) as u64;
    Ok(LiftedChain { graph })
}

/// A recurrent class of the lifted chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedClass {
    /// Sorted `A^m` indices.
    pub members: Vec<usize>,
    pub period: usize,
}

/// Classification of the lifted chain by first-order means.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceClassification {
    pub state_count: usize,
    /// Recurrent (closed) classes ordered by smallest member.
    pub classes: Vec<LiftedClass>,
    /// Transient states, ascending.
    pub transient: Vec<usize>,
    /// Number of communicating classes, transient ones included.
    pub communicating_classes: usize,
}

impl BruteForceClassification {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn essentially_irreducible(&self) -> bool {
        self.classes.len() == 1
    }

    pub fn irreducible(&self) -> bool {
        self.communicating_classes == 1
    }
}

pub fn classify_brute_force(chain: &LiftedChain) -> BruteForceClassification {
    classify_brute_force_counted(chain, &mut OpCount::default())
}

pub fn classify_brute_force_counted(chain: &LiftedChain, ops: &mut OpCount) -> BruteForceClassification {
    let dec = decompose_counted(chain.graph(), ops);
    let classes = dec
        .closed_classes()
        .zip(&dec.periods)
        .map(|(c, &period)| LiftedClass {
            members: c.to_vec(),
            period,
        })
        .collect();
    BruteForceClassification {
        state_count: chain.state_count(),
        classes,
        transient: dec.transient,
        communicating_classes: dec.sccs.len(),
    }
}

/// Essential irreducibility by the power-sum criterion: some column of
/// `sum_{n >= 1} P^n` is entirely positive. Works on the support pattern.
pub fn prop4_check(chain: &LiftedChain) -> Result<bool> {
    prop4_check_counted(chain, &mut OpCount::default())
}

pub fn prop4_check_counted(chain: &LiftedChain, ops: &mut OpCount) -> Result<bool> {
    if chain.state_count() > PROP4_CAP {
        return Err(Error::StateSpaceTooLarge {
            states: chain.state_count().to_string(),
            cap: PROP4_CAP,
        });
    }
    Ok(chain.adjacency().reach_sum_counted(ops).has_all_ones_column())
}
