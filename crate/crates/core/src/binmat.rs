//! Boolean matrices and class structure of directed graphs.
//!
//! Sums and products are boolean (`1 + 1 = 1`). Rows are packed into `u64`
//! words and products are computed by OR-accumulating rows. Class analysis
//! (strongly connected components, closed classes, periods) works on any
//! [`Digraph`], so the same code serves dense matrices and the sparse
//! shift-structured graphs of skeleton matrices and lifted chains.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::word::{StateSpace, Symbol};

/// Operation counters for cost comparisons.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct OpCount {
    /// Boolean row OR operations.
    pub row_ops: u64,
    /// 64-bit word operations performed by those row operations.
    pub word_ops: u64,
    /// Edges inspected by graph traversals.
    pub edge_visits: u64,
    /// Other unit steps (tree nodes, table entries).
    pub steps: u64,
}

impl OpCount {
    pub fn total(&self) -> u64 {
        self.word_ops + self.edge_visits + self.steps
    }
}

impl std::ops::AddAssign for OpCount {
    fn add_assign(&mut self, rhs: Self) {
        self.row_ops += rhs.row_ops;
        self.word_ops += rhs.word_ops;
        self.edge_visits += rhs.edge_visits;
        self.steps += rhs.steps;
    }
}

/// A directed graph on nodes `0..node_count()`.
pub trait Digraph {
    type Successors<'a>: Iterator<Item = usize>
    where
        Self: 'a;

    fn node_count(&self) -> usize;

    fn successors(&self, node: usize) -> Self::Successors<'_>;
}

/// Square boolean matrix with bit-packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BinaryMatrix({}x{})", self.n, self.n)?;
        for i in 0..self.n {
            let row: String = (0..self.n)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

impl BinaryMatrix {
    pub fn zeros(n: usize) -> Self {
        let stride = n.div_ceil(64);
        BinaryMatrix {
            n,
            stride,
            bits: vec![0; n * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BinaryMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from 0/1 rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let n = rows.len();
        let mut m = BinaryMatrix::zeros(n);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), n, "row {i} has length {} in a {n}x{n} matrix", r.len());
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v != 0);
            }
        }
        m
    }

    /// Dense adjacency matrix of a graph.
    pub fn from_graph<G: Digraph>(graph: &G) -> Self {
        let n = graph.node_count();
        let mut m = BinaryMatrix::zeros(n);
        for i in 0..n {
            for j in graph.successors(i) {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.bits[i * self.stride + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_ones(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| u8::from(self.get(i, j))).collect())
            .collect()
    }

    /// Boolean sum (entrywise OR).
    pub fn or(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        self.check_dim(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect();
        Ok(BinaryMatrix { bits, ..*self })
    }

    fn check_dim(&self, other: &BinaryMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Boolean product `self * other`.
    pub fn bool_multiply(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        self.multiply_counted(other, &mut OpCount::default())
    }

    pub fn multiply_counted(&self, other: &BinaryMatrix, ops: &mut OpCount) -> Result<BinaryMatrix> {
        self.check_dim(other)?;
        let mut out = BinaryMatrix::zeros(self.n);
        let stride = self.stride;
        for i in 0..self.n {
            let dst = &mut out.bits[i * stride..(i + 1) * stride];
            for (wi, &word) in self.row(i).iter().enumerate() {
                let mut w = word;
                while w != 0 {
                    let k = wi * 64 + w.trailing_zeros() as usize;
                    w &= w - 1;
                    for (d, s) in dst.iter_mut().zip(other.row(k)) {
                        *d |= s;
                    }
                    ops.row_ops += 1;
                    ops.word_ops += stride as u64;
                }
            }
        }
        Ok(out)
    }

    /// Boolean power `self^exp`; `self^0` is the identity.
    pub fn pow(&self, exp: usize) -> BinaryMatrix {
        let mut result = BinaryMatrix::identity(self.n);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.bool_multiply(&base).expect("same dimension");
            }
            e >>= 1;
            if e > 0 {
                base = base.bool_multiply(&base).expect("same dimension");
            }
        }
        result
    }

    /// `sum_{n >= 1} M^n`: entry `(i, j)` is set iff `j` is reachable from
    /// `i` in at least one step. Iterates `R <- R + R M` to its fixpoint,
    /// which is reached within `dim` rounds.
    pub fn reach_sum(&self) -> BinaryMatrix {
        self.reach_sum_counted(&mut OpCount::default())
    }

    pub fn reach_sum_counted(&self, ops: &mut OpCount) -> BinaryMatrix {
        let mut r = self.clone();
        loop {
            let step = r.multiply_counted(self, ops).expect("same dimension");
            let next = r.or(&step).expect("same dimension");
            ops.word_ops += next.bits.len() as u64;
            if next == r {
                return r;
            }
            r = next;
        }
    }

    /// True iff some column has every entry set.
    pub fn has_all_ones_column(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut acc = vec![u64::MAX; self.stride];
        for i in 0..self.n {
            for (a, r) in acc.iter_mut().zip(self.row(i)) {
                *a &= r;
            }
        }
        let tail = self.n % 64;
        if tail != 0 {
            *acc.last_mut().expect("n > 0") &= (1u64 << tail) - 1;
        }
        acc.iter().any(|&w| w != 0)
    }
}

pub struct RowBits<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for RowBits<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl Digraph for BinaryMatrix {
    type Successors<'a> = RowBits<'a>;

    fn node_count(&self) -> usize {
        self.n
    }

    fn successors(&self, node: usize) -> RowBits<'_> {
        let words = self.row(node);
        RowBits {
            words,
            index: 0,
            current: words.first().copied().unwrap_or(0),
        }
    }
}

/// Graph on `A^L` whose edges follow the shift `u -> (drop oldest) . a`,
/// each state carrying the set of symbols `a` it may append.
///
/// Skeleton matrices (`L = K`) and lifted chains (`L = m`) both have this
/// form, so they are stored as one bit per (state, symbol) rather than as a
/// dense `|A|^L x |A|^L` matrix. For `L = 0` the single state has a
/// self-loop whenever any symbol is allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftGraph {
    space: StateSpace,
    allowed: Vec<u64>,
}

impl ShiftGraph {
    /// Builds the graph from a per-state support function.
    pub fn from_fn(space: StateSpace, mut allows: impl FnMut(usize, Symbol) -> bool) -> Self {
        let a = space.alphabet_size();
        let total = space.count() * a;
        let mut allowed = vec![0u64; total.div_ceil(64)];
        for u in 0..space.count() {
            for s in 0..a {
                if allows(u, s) {
                    let bit = u * a + s;
                    allowed[bit / 64] |= 1 << (bit % 64);
                }
            }
        }
        ShiftGraph { space, allowed }
    }

    pub fn space(&self) -> StateSpace {
        self.space
    }

    pub fn allows(&self, state: usize, symbol: Symbol) -> bool {
        let bit = state * self.space.alphabet_size() + symbol;
        self.allowed[bit / 64] >> (bit % 64) & 1 == 1
    }

    pub fn allowed_count(&self, state: usize) -> usize {
        (0..self.space.alphabet_size())
            .filter(|&s| self.allows(state, s))
            .count()
    }

    /// Dense adjacency matrix; `|A|^L` squared bits.
    pub fn to_dense(&self) -> BinaryMatrix {
        BinaryMatrix::from_graph(self)
    }
}

pub struct ShiftSuccessors<'a> {
    graph: &'a ShiftGraph,
    state: usize,
    next_symbol: Symbol,
}

impl Iterator for ShiftSuccessors<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        let space = self.graph.space;
        let a = space.alphabet_size();
        while self.next_symbol < a {
            let s = self.next_symbol;
            self.next_symbol += 1;
            if self.graph.allows(self.state, s) {
                if space.word_len() == 0 {
                    // one self-loop, however many symbols are allowed
                    self.next_symbol = a;
                }
                return Some(space.shift(self.state, s));
            }
        }
        None
    }
}

impl Digraph for ShiftGraph {
    type Successors<'a> = ShiftSuccessors<'a>;

    fn node_count(&self) -> usize {
        self.space.count()
    }

    fn successors(&self, node: usize) -> ShiftSuccessors<'_> {
        ShiftSuccessors {
            graph: self,
            state: node,
            next_symbol: 0,
        }
    }
}

/// Strongly connected components of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// Components, each sorted ascending, ordered by smallest member.
    pub sccs: Vec<Vec<usize>>,
    /// Component index of every node.
    pub component_of: Vec<usize>,
}

/// Partition of the state set into closed classes and the transient part.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClassDecomposition {
    pub sccs: Vec<Vec<usize>>,
    pub component_of: Vec<usize>,
    /// Indices into `sccs` of the closed components, ascending.
    pub closed: Vec<usize>,
    /// Nodes outside every closed class, ascending.
    pub transient: Vec<usize>,
    /// Period of each closed class, aligned with `closed`.
    pub periods: Vec<usize>,
}

impl ClassDecomposition {
    pub fn closed_classes(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.closed.iter().map(|&c| self.sccs[c].as_slice())
    }

    pub fn closed_count(&self) -> usize {
        self.closed.len()
    }
}

/// Tarjan's algorithm, iterative so deep graphs do not exhaust the stack.
pub fn strongly_connected_components<G: Digraph>(graph: &G) -> Components {
    scc_counted(graph, &mut OpCount::default())
}

pub fn scc_counted<G: Digraph>(graph: &G, ops: &mut OpCount) -> Components {
    const UNVISITED: usize = usize::MAX;
    let n = graph.node_count();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut raw: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0usize;
    let mut frames: Vec<(usize, G::Successors<'_>)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        frames.push((root, graph.successors(root)));

        while let Some((v, succ)) = frames.last_mut() {
            let v = *v;
            if let Some(w) = succ.next() {
                ops.edge_visits += 1;
                if index[w] == UNVISITED {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, graph.successors(w)));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some((parent, _)) = frames.last() {
                let p = *parent;
                low[p] = low[p].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack holds the component");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                raw.push(comp);
            }
        }
    }

    raw.sort_by_key(|c| c[0]);
    let mut component_of = vec![0; n];
    for (ci, comp) in raw.iter().enumerate() {
        for &v in comp {
            component_of[v] = ci;
        }
    }
    Components {
        sccs: raw,
        component_of,
    }
}

/// Marks the components no edge leaves, computes their periods and collects
/// the remaining nodes as the transient part.
pub fn closed_classes<G: Digraph>(graph: &G, comps: Components) -> ClassDecomposition {
    closed_classes_counted(graph, comps, &mut OpCount::default())
}

pub fn closed_classes_counted<G: Digraph>(
    graph: &G,
    comps: Components,
    ops: &mut OpCount,
) -> ClassDecomposition {
    let mut is_closed = vec![true; comps.sccs.len()];
    for v in 0..graph.node_count() {
        let cv = comps.component_of[v];
        if !is_closed[cv] {
            continue;
        }
        for w in graph.successors(v) {
            ops.edge_visits += 1;
            if comps.component_of[w] != cv {
                is_closed[cv] = false;
                break;
            }
        }
    }
    let closed: Vec<usize> = (0..comps.sccs.len()).filter(|&c| is_closed[c]).collect();
    let mut transient: Vec<usize> = comps
        .sccs
        .iter()
        .enumerate()
        .filter(|(c, _)| !is_closed[*c])
        .flat_map(|(_, comp)| comp.iter().copied())
        .collect();
    transient.sort_unstable();

    let mut level = vec![usize::MAX; graph.node_count()];
    let periods = closed
        .iter()
        .map(|&c| bfs_period(graph, &comps.sccs[c], &comps.component_of, c, &mut level, ops))
        .collect();

    ClassDecomposition {
        sccs: comps.sccs,
        component_of: comps.component_of,
        closed,
        transient,
        periods,
    }
}

/// Full class decomposition of a graph.
pub fn decompose<G: Digraph>(graph: &G) -> ClassDecomposition {
    decompose_counted(graph, &mut OpCount::default())
}

pub fn decompose_counted<G: Digraph>(graph: &G, ops: &mut OpCount) -> ClassDecomposition {
    let comps = scc_counted(graph, ops);
    closed_classes_counted(graph, comps, ops)
}

// gcd over intra-class edges u -> v of level(u) + 1 - level(v)
fn bfs_period<G: Digraph>(
    graph: &G,
    class: &[usize],
    component_of: &[usize],
    cid: usize,
    level: &mut [usize],
    ops: &mut OpCount,
) -> usize {
    let root = class[0];
    level[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    let mut d = 0usize;
    while let Some(u) = queue.pop_front() {
        for v in graph.successors(u) {
            ops.edge_visits += 1;
            if component_of[v] != cid {
                continue;
            }
            if level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            } else {
                let diff = (level[u] + 1).abs_diff(level[v]);
                d = d.gcd(&diff);
            }
        }
    }
    d
}

/// Period of a closed class of `graph`: the gcd of the lengths of all cycles
/// through any of its states.
pub fn class_period<G: Digraph>(graph: &G, class: &[usize]) -> Result<usize> {
    if class.is_empty() {
        return Err(Error::NotClosedClass("empty state set".into()));
    }
    let n = graph.node_count();
    let mut member = vec![false; n];
    for &v in class {
        if v >= n {
            return Err(Error::NotClosedClass(format!("state {v} out of range")));
        }
        member[v] = true;
    }
    for &v in class {
        if let Some(w) = graph.successors(v).find(|&w| !member[w]) {
            return Err(Error::NotClosedClass(format!("edge {v} -> {w} leaves the set")));
        }
    }
    // strongly connected iff the root reaches every member and every member
    // reaches the root
    let root = class[0];
    let mut level = vec![usize::MAX; n];
    let mut reverse: std::collections::HashMap<usize, Vec<usize>> = Default::default();
    level[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    let mut d = 0usize;
    let mut seen = 1usize;
    while let Some(u) = queue.pop_front() {
        for v in graph.successors(u) {
            reverse.entry(v).or_default().push(u);
            if level[v] == usize::MAX {
                level[v] = level[u] + 1;
                seen += 1;
                queue.push_back(v);
            } else {
                d = d.gcd(&(level[u] + 1).abs_diff(level[v]));
            }
        }
    }
    let mut distinct = class.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let mut back = vec![false; n];
    back[root] = true;
    let mut stack = vec![root];
    let mut reached = 1usize;
    while let Some(v) = stack.pop() {
        for &u in reverse.get(&v).into_iter().flatten() {
            if !back[u] {
                back[u] = true;
                reached += 1;
                stack.push(u);
            }
        }
    }
    if seen != distinct.len() || reached != distinct.len() || d == 0 {
        return Err(Error::NotClosedClass("set is not strongly connected".into()));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u8]]) -> BinaryMatrix {
        BinaryMatrix::from_rows(rows)
    }

    #[test]
    fn multiply_examples() {
        let a = m(&[&[1, 1], &[1, 0]]);
        assert_eq!(a.bool_multiply(&BinaryMatrix::identity(2)).unwrap(), a);
        let swap = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.bool_multiply(&swap).unwrap(), BinaryMatrix::identity(2));
        assert_eq!(a.bool_multiply(&a).unwrap(), m(&[&[1, 1], &[1, 1]]));
        assert!(matches!(
            a.bool_multiply(&BinaryMatrix::identity(3)),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn multiply_wide_matrices() {
        // crosses the 64-bit word boundary
        let n = 130;
        let mut cycle = BinaryMatrix::zeros(n);
        for i in 0..n {
            cycle.set(i, (i + 1) % n, true);
        }
        let p = cycle.pow(n);
        assert_eq!(p, BinaryMatrix::identity(n));
        let p2 = cycle.pow(2);
        assert!(p2.get(128, 0) && p2.get(129, 1) && p2.get(0, 2));
        assert_eq!(p2.count_ones(), n);
    }

    #[test]
    fn reach_sum_examples() {
        let swap = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.reach_sum(), m(&[&[1, 1], &[1, 1]]));
        let id = BinaryMatrix::identity(2);
        assert_eq!(id.reach_sum(), id);
        assert!(!id.reach_sum().has_all_ones_column());
        assert!(m(&[&[1]]).has_all_ones_column());
        assert!(!BinaryMatrix::zeros(1).has_all_ones_column());
    }

    #[test]
    fn all_ones_column_ignores_padding_bits() {
        let mut a = BinaryMatrix::zeros(3);
        for i in 0..3 {
            a.set(i, 0, i != 1);
        }
        assert!(!a.has_all_ones_column());
        a.set(1, 0, true);
        assert!(a.has_all_ones_column());
    }

    #[test]
    fn scc_examples() {
        let swap = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(strongly_connected_components(&swap).sccs, vec![vec![0, 1]]);
        let upper = m(&[&[1, 1], &[0, 1]]);
        assert_eq!(strongly_connected_components(&upper).sccs, vec![vec![0], vec![1]]);
    }

    #[test]
    fn closed_class_examples() {
        let upper = m(&[&[1, 1], &[0, 1]]);
        let d = decompose(&upper);
        assert_eq!(d.closed_classes().collect::<Vec<_>>(), vec![&[1][..]]);
        assert_eq!(d.transient, vec![0]);

        let id = BinaryMatrix::identity(2);
        let d = decompose(&id);
        assert_eq!(d.closed_count(), 2);
        assert!(d.transient.is_empty());
        assert_eq!(d.periods, vec![1, 1]);
    }

    #[test]
    fn period_examples() {
        let swap = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(class_period(&swap, &[0, 1]).unwrap(), 2);
        let tri = m(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert_eq!(class_period(&tri, &[0, 1, 2]).unwrap(), 3);
        assert_eq!(decompose(&tri).periods, vec![3]);
        // 2-cycle and 3-cycle sharing a node
        let mixed = m(&[&[0, 1, 1], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(class_period(&mixed, &[0, 1, 2]).unwrap(), 1);
    }

    #[test]
    fn period_rejects_non_classes() {
        let upper = m(&[&[1, 1], &[0, 1]]);
        assert!(class_period(&upper, &[0]).is_err());
        assert!(class_period(&upper, &[0, 1]).is_err());
        assert_eq!(class_period(&upper, &[1]).unwrap(), 1);
        assert!(class_period(&BinaryMatrix::identity(2), &[]).is_err());
    }

    #[test]
    fn shift_graph_edges() {
        let space = StateSpace::new(2, 2, usize::MAX).unwrap();
        // golden mean: after a 1 only 0 may follow
        let g = ShiftGraph::from_fn(space, |u, a| space.newest(u) == 0 || a == 0);
        assert_eq!(
            g.to_dense(),
            m(&[&[1, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 0, 0], &[0, 0, 1, 0]])
        );
        let e = StateSpace::new(2, 0, usize::MAX).unwrap();
        let g = ShiftGraph::from_fn(e, |_, _| true);
        assert_eq!(g.successors(0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(g.to_dense(), m(&[&[1]]));
    }

    #[test]
    fn deep_path_does_not_overflow() {
        let n = 200_000;
        struct Path(usize);
        impl Digraph for Path {
            type Successors<'a> = std::option::IntoIter<usize>;
            fn node_count(&self) -> usize {
                self.0
            }
            fn successors(&self, v: usize) -> Self::Successors<'_> {
                Some((v + 1) % self.0).into_iter()
            }
        }
        let d = decompose(&Path(n));
        assert_eq!(d.sccs.len(), 1);
        assert_eq!(d.periods, vec![n]);
    }
}
