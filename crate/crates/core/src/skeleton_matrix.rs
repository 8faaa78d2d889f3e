//! The skeleton matrix: boolean matrix on `A^K` with an edge
//! `u -> (drop oldest of u) . a` iff `a` is allowed after every context
//! ending in `u`.

use crate::binmat::{BinaryMatrix, OpCount, ShiftGraph};
use crate::error::{Error, Result};
use crate::kernel::SupportKernel;
use crate::skeleton::Skeleton;
use crate::word::{Alphabet, StateSpace, Symbol};

/// Largest `|A|^K` for which a skeleton matrix is built.
pub const MATRIX_CAP: usize = 1 << 26;

/// Skeleton matrix, stored as a shift graph on `A^K`.
///
/// For `K = 0` the matrix is `[1]`; the single state still remembers which
/// symbols the empty context allows, which admissibility needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonMatrix {
    graph: ShiftGraph,
}

impl SkeletonMatrix {
    pub fn order(&self) -> usize {
        self.graph.space().word_len()
    }

    pub fn space(&self) -> StateSpace {
        self.graph.space()
    }

    pub fn graph(&self) -> &ShiftGraph {
        &self.graph
    }

    /// Whether symbol `a` may follow the window `u` (a state of `A^K`).
    pub fn allows(&self, u: usize, a: Symbol) -> bool {
        self.graph.allows(u, a)
    }

    pub fn dense(&self) -> BinaryMatrix {
        self.graph.to_dense()
    }

    /// State labels in index order.
    pub fn labels(&self, alphabet: &Alphabet) -> Vec<String> {
        let space = self.space();
        (0..space.count())
            .map(|i| alphabet.render(space.word_at(i).symbols()))
            .collect()
    }

    /// 0/1 grid with a header row of state labels.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let labels = self.labels(alphabet);
        let width = labels.iter().map(String::len).max().unwrap_or(1).max(1);
        let dense = self.dense();
        let mut out = format!("{:width$} ", "");
        out.push_str(&labels.iter().map(|l| format!("{l:>width$}")).collect::<Vec<_>>().join(" "));
        out.push('\n');
        for (i, l) in labels.iter().enumerate() {
            out.push_str(&format!("{l:>width$} "));
            let row: Vec<String> = (0..dense.dim())
                .map(|j| format!("{:>width$}", u8::from(dense.get(i, j))))
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Builds the skeleton matrix of `kernel` from its skeleton.
pub fn build_skeleton_matrix(kernel: &SupportKernel, skel: &Skeleton) -> Result<SkeletonMatrix> {
    build_counted(kernel, skel, &mut OpCount::default())
}

pub(crate) fn build_counted(
    kernel: &SupportKernel,
    skel: &Skeleton,
    ops: &mut OpCount,
) -> Result<SkeletonMatrix> {
    let size = kernel.alphabet_size();
    let space = StateSpace::new(size, skel.order(), MATRIX_CAP)?;
    let mut rows = Vec::with_capacity(space.count());
    for u in 0..space.count() {
        let word = space.word_at(u);
        let sw = skel.word_for(word.symbols()).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "skeleton has no word that is a suffix of `{}`",
                kernel.alphabet().render(word.symbols())
            ))
        })?;
        rows.push(sw.support.clone());
    }
    ops.steps += (space.count() * size) as u64;
    let graph = ShiftGraph::from_fn(space, |u, a| rows[u].allows(a));
    Ok(SkeletonMatrix { graph })
}
