//! Classification of the chain from its skeleton matrix.
//!
//! Each closed class `C` of the skeleton matrix gives one recurrent class of
//! the chain: the admissible m-words whose oldest `K` symbols lie in `C`.
//! The two classes share their period. A word is admissible when each of
//! its length-`K` windows allows the symbol that follows it.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::binmat::{decompose_counted, ClassDecomposition, OpCount};
use crate::error::{Error, Result};
use crate::kernel::SupportKernel;
use crate::skeleton::{skeleton_pruned_with, PruneOptions, Skeleton};
use crate::skeleton_matrix::{build_counted, SkeletonMatrix};
use crate::word::{StateSpace, Word};

/// Default `|A|^m` up to which recurrent classes are listed explicitly.
pub const DEFAULT_ENUMERATE_CAP: usize = 1 << 20;

/// Membership test for the admissible set of m-words.
#[derive(Debug, Clone, Copy)]
pub struct AdmissibleSet<'a> {
    matrix: &'a SkeletonMatrix,
    order: usize,
}

impl<'a> AdmissibleSet<'a> {
    pub fn new(matrix: &'a SkeletonMatrix, order: usize) -> Self {
        AdmissibleSet { matrix, order }
    }

    /// Evaluates the window product along `w`.
    pub fn is_admissible(&self, w: &Word) -> Result<bool> {
        if w.len() != self.order {
            return Err(Error::WordLength {
                expected: self.order,
                got: w.len(),
            });
        }
        Ok(self.check(w.symbols()))
    }

    fn check(&self, w: &[usize]) -> bool {
        let k = self.matrix.order();
        let space = self.matrix.space();
        (k..w.len()).all(|i| self.matrix.allows(space.index_of(&w[i - k..i]), w[i]))
    }
}

/// One recurrent class of the chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrentClass {
    /// The closed class of the skeleton matrix, as sorted `A^K` indices.
    pub closed_class: Vec<usize>,
    pub period: usize,
    /// Number of m-words in the class.
    pub size: BigUint,
    /// Sorted `A^m` indices, when the state space is small enough to list.
    pub members: Option<Vec<usize>>,
}

/// Why a chain is or is not irreducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrreducibleReason {
    /// `K = 0` and every symbol is allowed everywhere.
    FullSupport,
    /// `0 < K < m`: an irreducible chain has `K = 0` or `K = m`.
    Prop2Contraposition,
    /// A skeleton word shorter than `m` prohibits a symbol, so some m-word
    /// can never be entered.
    Prop3,
    /// `K = m` and the skeleton matrix is one class covering `A^m`.
    SingleClass,
    /// `K = m` and the skeleton matrix is not strongly connected.
    NotStronglyConnected,
}

impl IrreducibleReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            IrreducibleReason::FullSupport => "K = 0: full support",
            IrreducibleReason::Prop2Contraposition => "Prop 2 contraposition",
            IrreducibleReason::Prop3 => "Prop 3",
            IrreducibleReason::SingleClass => "K = m: single communicating class",
            IrreducibleReason::NotStronglyConnected => "K = m: several communicating classes",
        }
    }
}

impl std::fmt::Display for IrreducibleReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Irreducibility {
    pub irreducible: bool,
    pub reason: IrreducibleReason,
}

/// Full structural classification of a kernel.
#[derive(Debug, Clone)]
pub struct Classification {
    pub order: usize,
    pub skeleton: Skeleton,
    pub matrix: SkeletonMatrix,
    pub decomposition: ClassDecomposition,
    pub classes: Vec<RecurrentClass>,
    /// `|A|^m` minus the recurrent states.
    pub transient_count: BigUint,
    pub essentially_irreducible: bool,
    pub irreducibility: Irreducibility,
}

impl Classification {
    pub fn skeleton_order(&self) -> usize {
        self.skeleton.order()
    }

    /// Number of recurrent classes `N`.
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn admissible(&self) -> AdmissibleSet<'_> {
        AdmissibleSet::new(&self.matrix, self.order)
    }

    /// Whether `w` belongs to recurrent class `class`.
    pub fn contains(&self, class: usize, w: &Word) -> Result<bool> {
        if !self.admissible().is_admissible(w)? {
            return Ok(false);
        }
        let k = self.skeleton_order();
        let prefix = self.matrix.space().index_of(&w.symbols()[..k]);
        Ok(self.classes[class].closed_class.binary_search(&prefix).is_ok())
    }

    /// Recurrent class containing `w`, if any.
    pub fn class_of(&self, w: &Word) -> Result<Option<usize>> {
        for i in 0..self.classes.len() {
            if self.contains(i, w)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub enumerate_cap: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            enumerate_cap: DEFAULT_ENUMERATE_CAP,
        }
    }
}

pub fn classify(kernel: &SupportKernel) -> Result<Classification> {
    classify_with(kernel, ClassifyOptions::default())
}

pub fn classify_with(kernel: &SupportKernel, options: ClassifyOptions) -> Result<Classification> {
    let mut ops = OpCount::default();
    let skeleton = skeleton_pruned_with(kernel, PruneOptions::default(), &mut ops);
    let matrix = build_counted(kernel, &skeleton, &mut ops)?;
    let decomposition = decompose_counted(matrix.graph(), &mut ops);

    let m = kernel.order();
    let k = skeleton.order();
    let size = kernel.alphabet_size();
    let listable = StateSpace::new(size, m, options.enumerate_cap).is_ok();

    let mut classes = Vec::with_capacity(decomposition.closed_count());
    let mut recurrent_total = BigUint::zero();
    for (closed, &period) in decomposition.closed_classes().zip(&decomposition.periods) {
        let count = count_walks(&matrix, closed, m - k);
        let members = listable.then(|| enumerate_members(&matrix, closed, m));
        if let Some(list) = &members {
            debug_assert_eq!(BigUint::from(list.len()), count);
        }
        recurrent_total += &count;
        classes.push(RecurrentClass {
            closed_class: closed.to_vec(),
            period,
            size: count,
            members,
        });
    }
    let transient_count = BigUint::from(size).pow(m as u32) - recurrent_total;
    let irreducibility = irreducibility_of(&skeleton, &decomposition, m);
    Ok(Classification {
        order: m,
        essentially_irreducible: classes.len() == 1,
        skeleton,
        matrix,
        decomposition,
        classes,
        transient_count,
        irreducibility,
    })
}

/// Number of skeleton-matrix walks of `steps` symbols starting in `class`,
/// i.e. the number of admissible m-words with oldest window in `class`.
pub fn count_walks(matrix: &SkeletonMatrix, class: &[usize], steps: usize) -> BigUint {
    let space = matrix.space();
    let size = space.alphabet_size();
    let mut counts = vec![BigUint::zero(); space.count()];
    for &c in class {
        counts[c] = BigUint::one();
    }
    for _ in 0..steps {
        let mut next = vec![BigUint::zero(); space.count()];
        for (u, cu) in counts.iter().enumerate() {
            if cu.is_zero() {
                continue;
            }
            for a in 0..size {
                if matrix.allows(u, a) {
                    next[space.shift(u, a)] += cu;
                }
            }
        }
        counts = next;
    }
    counts.into_iter().sum()
}

fn enumerate_members(matrix: &SkeletonMatrix, class: &[usize], m: usize) -> Vec<usize> {
    let space = matrix.space();
    let size = space.alphabet_size();
    let steps = m - space.word_len();
    let mut out = Vec::new();
    // (window, word index so far, symbols appended)
    let mut stack: Vec<(usize, usize, usize)> = class.iter().map(|&c| (c, c, 0)).collect();
    while let Some((u, idx, depth)) = stack.pop() {
        if depth == steps {
            out.push(idx);
            continue;
        }
        for a in 0..size {
            if matrix.allows(u, a) {
                stack.push((space.shift(u, a), idx * size + a, depth + 1));
            }
        }
    }
    out.sort_unstable();
    out
}

fn irreducibility_of(skel: &Skeleton, dec: &ClassDecomposition, m: usize) -> Irreducibility {
    let k = skel.order();
    let prohibiting_short_word = skel
        .words()
        .iter()
        .any(|w| w.word.len() < m && !w.support.is_full());
    let (irreducible, reason) = if k == 0 && !prohibiting_short_word {
        (true, IrreducibleReason::FullSupport)
    } else if k == 0 {
        // the empty word itself prohibits a symbol
        (false, IrreducibleReason::Prop3)
    } else if k < m {
        (false, IrreducibleReason::Prop2Contraposition)
    } else if prohibiting_short_word {
        (false, IrreducibleReason::Prop3)
    } else if dec.sccs.len() == 1 {
        (true, IrreducibleReason::SingleClass)
    } else {
        (false, IrreducibleReason::NotStronglyConnected)
    };
    Irreducibility {
        irreducible,
        reason,
    }
}

/// Decision procedure for irreducibility from the skeleton.
pub fn is_irreducible(kernel: &SupportKernel) -> Result<Irreducibility> {
    let mut ops = OpCount::default();
    let skel = skeleton_pruned_with(kernel, PruneOptions::default(), &mut ops);
    let m = kernel.order();
    let needs_matrix = skel.order() == m
        && skel
            .words()
            .iter()
            .all(|w| w.word.len() == m || w.support.is_full());
    let dec = if needs_matrix {
        let matrix = build_counted(kernel, &skel, &mut ops)?;
        decompose_counted(matrix.graph(), &mut ops)
    } else {
        ClassDecomposition::default()
    };
    Ok(irreducibility_of(&skel, &dec, m))
}

/// How to decide whether the skeleton matrix has a unique closed class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EssentialMethod {
    /// Count closed classes from the strongly connected components.
    Scc,
    /// Look for an all-ones column in the reachability sum.
    MatrixSum,
}

pub fn is_essentially_irreducible(kernel: &SupportKernel, method: EssentialMethod) -> Result<bool> {
    essential_counted(kernel, method, &mut OpCount::default())
}

pub fn essential_counted(
    kernel: &SupportKernel,
    method: EssentialMethod,
    ops: &mut OpCount,
) -> Result<bool> {
    let skel = skeleton_pruned_with(kernel, PruneOptions::default(), ops);
    let matrix = build_counted(kernel, &skel, ops)?;
    Ok(match method {
        EssentialMethod::Scc => decompose_counted(matrix.graph(), ops).closed_count() == 1,
        EssentialMethod::MatrixSum => matrix.dense().reach_sum_counted(ops).has_all_ones_column(),
    })
}
