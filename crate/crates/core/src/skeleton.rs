//! Skeleton of a kernel: the minimal suffixes that determine the support
//! vector regardless of older history.
//!
//! For a context `x` and symbol `a`, `tau(x, a)` is the shortest suffix
//! length `l` such that `p(y . x[m-l..], a) > 0` has the same truth value
//! for every completion `y`. The skeleton word of `x` is its suffix of
//! length `max_a tau(x, a)`, and the skeleton order `K` is the longest
//! skeleton word. A kernel with one support vector for every context has the
//! empty word as its only skeleton word and `K = 0`.
//!
//! Two routes compute the skeleton: [`skeleton_direct`] enumerates contexts
//! straight from the definition, [`skeleton_pruned`] collapses a context
//! tree level by level. They must agree.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::binmat::OpCount;
use crate::error::Result;
use crate::kernel::{Support, SupportKernel};
use crate::word::{Alphabet, StateSpace, Symbol, Word};

/// Largest `|A|^m` the brute-force routes will enumerate.
pub const ENUMERATION_CAP: usize = 1 << 24;

/// One skeleton word with its (constant) support vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkeletonWord {
    pub word: Word,
    pub support: Support,
}

const NONE: u32 = u32::MAX;

/// The set of minimal determining suffixes and the skeleton order.
///
/// Words are kept sorted, so two skeletons compare equal iff they hold the
/// same (word, support) pairs.
#[derive(Debug, Clone)]
pub struct Skeleton {
    alphabet_size: usize,
    words: Vec<SkeletonWord>,
    order: usize,
    // newest-first trie over the words
    trie: Vec<TrieNode>,
}

#[derive(Debug, Clone)]
struct TrieNode {
    children: Vec<u32>,
    word: Option<usize>,
}

impl TrieNode {
    fn new(size: usize) -> Self {
        TrieNode {
            children: vec![NONE; size],
            word: None,
        }
    }
}

impl PartialEq for Skeleton {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet_size == other.alphabet_size
            && self.order == other.order
            && self.words == other.words
    }
}

impl Eq for Skeleton {}

impl Skeleton {
    pub fn new(alphabet_size: usize, mut words: Vec<SkeletonWord>) -> Self {
        words.sort();
        words.dedup();
        let order = words.iter().map(|w| w.word.len()).max().unwrap_or(0);
        let mut trie = vec![TrieNode::new(alphabet_size)];
        for (i, sw) in words.iter().enumerate() {
            let mut node = 0usize;
            for &s in sw.word.symbols().iter().rev() {
                let next = trie[node].children[s];
                node = if next == NONE {
                    trie.push(TrieNode::new(alphabet_size));
                    let id = trie.len() - 1;
                    trie[node].children[s] = id as u32;
                    id
                } else {
                    next as usize
                };
            }
            trie[node].word = Some(i);
        }
        Skeleton {
            alphabet_size,
            words,
            order,
            trie,
        }
    }

    pub fn words(&self) -> &[SkeletonWord] {
        &self.words
    }

    /// Skeleton order `K`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// The shortest skeleton word that is a suffix of `x`. For `|x| >= K`
    /// and a valid skeleton this is the unique such word.
    pub fn word_for(&self, x: &[Symbol]) -> Option<&SkeletonWord> {
        let mut node = 0usize;
        if let Some(i) = self.trie[0].word {
            return Some(&self.words[i]);
        }
        for &s in x.iter().rev() {
            let next = self.trie[node].children[s];
            if next == NONE {
                return None;
            }
            node = next as usize;
            if let Some(i) = self.trie[node].word {
                return Some(&self.words[i]);
            }
        }
        None
    }

    /// Text table, one word per line.
    pub fn render_table(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        let width = self.order.max(1);
        for sw in &self.words {
            let w = if sw.word.is_empty() {
                "e".to_string()
            } else {
                alphabet.render(sw.word.symbols())
            };
            let _ = writeln!(out, "{w:>width$}  {}", sw.support);
        }
        out
    }

    /// Indented context tree, newest symbol at the top level.
    pub fn render_tree(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        self.render_node(alphabet, 0, 0, &mut Vec::new(), &mut out);
        out
    }

    fn render_node(
        &self,
        alphabet: &Alphabet,
        node: usize,
        depth: usize,
        path: &mut Vec<Symbol>,
        out: &mut String,
    ) {
        let label = if depth == 0 {
            "(root)".to_string()
        } else {
            let mut w = path.clone();
            w.reverse();
            alphabet.render(&w)
        };
        let _ = write!(out, "{}{}", "  ".repeat(depth), label);
        if let Some(i) = self.trie[node].word {
            let _ = write!(out, "  {}", self.words[i].support);
        }
        out.push('\n');
        for s in 0..self.alphabet_size {
            let child = self.trie[node].children[s];
            if child != NONE {
                path.push(s);
                self.render_node(alphabet, child as usize, depth + 1, path, out);
                path.pop();
            }
        }
    }
}

/// Shortest suffix length of `x` whose completions all agree on whether
/// `a` is allowed. Straight from the definition: enumerates completions.
pub fn tau(kernel: &SupportKernel, x: &Word, a: Symbol) -> usize {
    let mut memo = DeterminismMemo::new(kernel);
    memo.tau(x.symbols(), a)
}

struct DeterminismMemo<'k> {
    kernel: &'k SupportKernel,
    // (suffix length, suffix index) -> per-symbol "constant over completions"
    constant: HashMap<(usize, usize), Vec<bool>>,
}

impl<'k> DeterminismMemo<'k> {
    fn new(kernel: &'k SupportKernel) -> Self {
        DeterminismMemo {
            kernel,
            constant: HashMap::new(),
        }
    }

    fn constant_for(&mut self, suffix: &[Symbol]) -> &Vec<bool> {
        let k = self.kernel;
        let size = k.alphabet_size();
        let m = k.order();
        let key_space = StateSpace::new(size, suffix.len(), usize::MAX).expect("suffix space fits");
        let key = (suffix.len(), key_space.index_of(suffix));
        self.constant.entry(key).or_insert_with(|| {
            let completions =
                StateSpace::new(size, m - suffix.len(), usize::MAX).expect("completion space fits");
            let mut x = vec![0; m];
            x[m - suffix.len()..].copy_from_slice(suffix);
            let mut first: Option<Support> = None;
            let mut constant = vec![true; size];
            for y in 0..completions.count() {
                let yw = completions.word_at(y);
                x[..m - suffix.len()].copy_from_slice(yw.symbols());
                let s = k.effective_support(&x);
                match &first {
                    None => first = Some(s.clone()),
                    Some(f) => {
                        for a in 0..size {
                            if f.allows(a) != s.allows(a) {
                                constant[a] = false;
                            }
                        }
                    }
                }
            }
            constant
        })
    }

    fn tau(&mut self, x: &[Symbol], a: Symbol) -> usize {
        let m = x.len();
        (0..=m)
            .find(|&l| self.constant_for(&x[m - l..])[a])
            .expect("the full context is always determining")
    }
}

/// Skeleton by direct enumeration of all `|A|^m` contexts.
pub fn skeleton_direct(kernel: &SupportKernel) -> Result<Skeleton> {
    let size = kernel.alphabet_size();
    let m = kernel.order();
    let space = StateSpace::new(size, m, ENUMERATION_CAP)?;
    let mut memo = DeterminismMemo::new(kernel);
    let mut seen: HashMap<Word, Support> = HashMap::new();
    for xi in 0..space.count() {
        let x = space.word_at(xi);
        let tau_x = (0..size)
            .map(|a| memo.tau(x.symbols(), a))
            .max()
            .unwrap_or(0);
        let word = x.suffix(tau_x);
        seen.entry(word)
            .or_insert_with(|| kernel.effective_support(x.symbols()).clone());
    }
    let words = seen
        .into_iter()
        .map(|(word, support)| SkeletonWord { word, support })
        .collect();
    Ok(Skeleton::new(size, words))
}

/// Options for [`skeleton_pruned_with`].
#[derive(Debug, Clone, Copy)]
pub struct PruneOptions {
    /// Stop as soon as a level removes nothing.
    pub early_stop: bool,
    /// Collapse subtrees the context tree already shows to be constant
    /// instead of materializing them down to depth `m`.
    pub lazy: bool,
}

impl Default for PruneOptions {
    fn default() -> Self {
        PruneOptions {
            early_stop: true,
            lazy: true,
        }
    }
}

#[derive(Debug, Clone)]
struct Node {
    /// Suffix this node stands for, oldest first.
    word: Word,
    depth: usize,
    /// Child `i` is `i . word`.
    children: Option<Vec<usize>>,
    /// Transition vector; set on leaves.
    vector: Option<Support>,
}

/// Context tree of depth at most `m` with transition vectors on its leaves.
///
/// The children of node `w` are the one-symbol-older extensions `a . w`, so
/// a sibling set is complete by construction.
#[derive(Debug, Clone)]
pub struct KernelTree {
    alphabet_size: usize,
    order: usize,
    nodes: Vec<Node>,
    by_depth: Vec<Vec<usize>>,
    /// Smallest depth `< m` of a leaf that stands for a collapsed constant
    /// subtree. Such a leaf means the full tree would still be cutting at
    /// every level below it.
    collapsed_depth: Option<usize>,
}

impl KernelTree {
    pub fn build(kernel: &SupportKernel, lazy: bool, ops: &mut OpCount) -> KernelTree {
        let m = kernel.order();
        let mut tree = KernelTree {
            alphabet_size: kernel.alphabet_size(),
            order: m,
            nodes: Vec::new(),
            by_depth: vec![Vec::new(); m + 1],
            collapsed_depth: None,
        };
        let mut stack = vec![(None::<(usize, usize)>, Word::empty())];
        while let Some((parent, word)) = stack.pop() {
            ops.steps += 1;
            let depth = word.len();
            let res = kernel.resolve(word.symbols());
            let id = tree.nodes.len();
            let expand = depth < m && !(lazy && res.constant);
            tree.nodes.push(Node {
                word: word.clone(),
                depth,
                children: expand.then(|| vec![usize::MAX; tree.alphabet_size]),
                vector: (!expand).then(|| res.support.clone()),
            });
            tree.by_depth[depth].push(id);
            if let Some((p, slot)) = parent {
                tree.nodes[p].children.as_mut().expect("parent is internal")[slot] = id;
            }
            if expand {
                for a in (0..tree.alphabet_size).rev() {
                    stack.push((Some((id, a)), word.prepend(a)));
                }
            } else if depth < m {
                tree.collapsed_depth = Some(tree.collapsed_depth.map_or(depth, |d| d.min(depth)));
            }
        }
        tree
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Nodes currently in the tree.
    pub fn node_count(&self) -> usize {
        self.by_depth.iter().map(Vec::len).sum()
    }

    /// One pass at depth `level`: every complete sibling set of leaves at
    /// that depth whose transition vectors coincide is removed and its
    /// parent becomes a leaf carrying the shared vector. Returns the number
    /// of sibling sets removed.
    pub fn prune_level(&mut self, level: usize, ops: &mut OpCount) -> usize {
        assert!(level >= 1 && level <= self.order);
        let mut removed = 0;
        let parents = self.by_depth[level - 1].clone();
        let mut gone: Vec<usize> = Vec::new();
        for p in parents {
            let Some(children) = self.nodes[p].children.clone() else {
                continue;
            };
            ops.steps += children.len() as u64;
            let first = match &self.nodes[children[0]].vector {
                Some(v) => v.clone(),
                None => continue,
            };
            let all_equal = children[1..]
                .iter()
                .all(|&c| self.nodes[c].vector.as_ref() == Some(&first));
            if all_equal {
                self.nodes[p].children = None;
                self.nodes[p].vector = Some(first);
                gone.extend(children);
                removed += 1;
            }
        }
        if !gone.is_empty() {
            gone.sort_unstable();
            self.by_depth[level].retain(|id| gone.binary_search(id).is_err());
        }
        removed
    }

    /// Runs the pruning passes from depth `m` up to depth 1.
    pub fn prune(&mut self, early_stop: bool, ops: &mut OpCount) {
        for level in (1..=self.order).rev() {
            let removed = self.prune_level(level, ops);
            // a collapsed leaf at depth d < level stands for cuts the full
            // tree would make at this level
            let implicit = self.collapsed_depth.is_some_and(|d| d < level);
            if early_stop && removed == 0 && !implicit {
                break;
            }
        }
    }

    /// Current leaves with their transition vectors.
    pub fn leaves(&self) -> Vec<SkeletonWord> {
        let mut out = Vec::new();
        for ids in &self.by_depth {
            for &id in ids {
                let n = &self.nodes[id];
                if let Some(v) = &n.vector {
                    out.push(SkeletonWord {
                        word: n.word.clone(),
                        support: v.clone(),
                    });
                }
            }
        }
        out.sort();
        out
    }

    pub fn to_skeleton(&self) -> Skeleton {
        Skeleton::new(self.alphabet_size, self.leaves())
    }

    /// DOT rendering of the current tree; leaves carry their vectors and
    /// leaves with a prohibited symbol are circled.
    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut out = String::from("digraph context_tree {\n  rankdir=LR;\n  node [shape=box];\n");
        for ids in &self.by_depth {
            for &id in ids {
                let n = &self.nodes[id];
                let name = if n.depth == 0 {
                    "root".to_string()
                } else {
                    alphabet.render(n.word.symbols())
                };
                match &n.vector {
                    Some(v) => {
                        let shape = if v.is_full() { "box" } else { "ellipse" };
                        let _ = writeln!(
                            out,
                            "  n{id} [label=\"{} {}\", shape={shape}];",
                            escape(&name),
                            v
                        );
                    }
                    None => {
                        let _ = writeln!(out, "  n{id} [label=\"{}\"];", escape(&name));
                    }
                }
                if let Some(children) = &n.children {
                    for (a, &c) in children.iter().enumerate() {
                        let _ = writeln!(
                            out,
                            "  n{id} -> n{c} [label=\"{}\"];",
                            escape(alphabet.label(a))
                        );
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Skeleton by tree pruning, with early stop and lazy materialization.
pub fn skeleton_pruned(kernel: &SupportKernel) -> Skeleton {
    skeleton_pruned_with(kernel, PruneOptions::default(), &mut OpCount::default())
}

pub fn skeleton_pruned_with(
    kernel: &SupportKernel,
    options: PruneOptions,
    ops: &mut OpCount,
) -> Skeleton {
    pruned_tree(kernel, options, ops).to_skeleton()
}

/// The pruned tree itself, e.g. for DOT export.
pub fn pruned_tree(kernel: &SupportKernel, options: PruneOptions, ops: &mut OpCount) -> KernelTree {
    let mut tree = KernelTree::build(kernel, options.lazy, ops);
    tree.prune(options.early_stop, ops);
    tree
}
