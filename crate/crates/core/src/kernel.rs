//! The m-th order transition kernel, stored as a suffix context tree.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::word::{Alphabet, StateSpace, Symbol, Word};

/// Largest full table `random_kernel` will generate.
pub const RANDOM_KERNEL_CAP: usize = 1 << 22;

/// Zero/positive pattern of one row of the kernel: `allows(a)` iff `p(x, a) > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Support(Vec<bool>);

impl Support {
    pub fn new(bits: Vec<bool>) -> Self {
        Support(bits)
    }

    pub fn full(size: usize) -> Self {
        Support(vec![true; size])
    }

    pub fn allows(&self, symbol: Symbol) -> bool {
        self.0[symbol]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn any(&self) -> bool {
        self.0.iter().any(|&b| b)
    }

    pub fn is_full(&self) -> bool {
        self.0.iter().all(|&b| b)
    }

    /// Symbols with a positive transition probability.
    pub fn allowed(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.0.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn as_ints(&self) -> Vec<u8> {
        self.0.iter().map(|&b| u8::from(b)).collect()
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, &b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(if b { "1" } else { "0" })?;
        }
        f.write_str("]")
    }
}

/// A listed context of the kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct Context {
    pub suffix: Word,
    pub support: Support,
    pub probs: Option<Vec<f64>>,
}

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct TrieNode {
    children: Vec<u32>,
    context: Option<usize>,
}

impl TrieNode {
    fn new(size: usize) -> Self {
        TrieNode {
            children: vec![NONE; size],
            context: None,
        }
    }

    fn is_leaf(&self) -> bool {
        self.children.iter().all(|&c| c == NONE)
    }
}

/// How the kernel looks from a partial past `w` (a suffix of the context).
#[derive(Debug, Clone, Copy)]
pub struct SuffixResolution<'a> {
    /// Support of the longest listed suffix of `w`, or the default.
    pub support: &'a Support,
    /// True when no listed context strictly extends `w`, so every context
    /// ending in `w` resolves to `support`.
    pub constant: bool,
}

/// Transition kernel of an m-th order chain, reduced to its support.
///
/// The effective support of `x` is the support of the longest listed suffix
/// of `x`, falling back to `default_support`. Probabilities are carried
/// along when supplied but classification only reads the support.
#[derive(Debug, Clone)]
pub struct SupportKernel {
    alphabet: Alphabet,
    order: usize,
    contexts: Vec<Context>,
    default_support: Support,
    // suffix trie, newest symbol at depth 1
    trie: Vec<TrieNode>,
}

impl SupportKernel {
    pub fn new(
        alphabet: Alphabet,
        order: usize,
        contexts: Vec<Context>,
        default_support: Support,
    ) -> Result<Self> {
        let size = alphabet.size();
        if order == 0 {
            return Err(Error::InvalidParameter("order must be at least 1".into()));
        }
        if default_support.len() != size {
            return Err(Error::VectorLength {
                context: "default".into(),
                expected: size,
                got: default_support.len(),
            });
        }
        let mut trie = vec![TrieNode::new(size)];
        for (ci, ctx) in contexts.iter().enumerate() {
            let name = alphabet.render(ctx.suffix.symbols());
            let len = ctx.suffix.len();
            if len == 0 || len > order {
                return Err(Error::SuffixLength {
                    suffix: name,
                    len,
                    order,
                });
            }
            if let Some(&bad) = ctx.suffix.symbols().iter().find(|&&s| s >= size) {
                return Err(Error::SymbolIndex { index: bad, size });
            }
            if ctx.support.len() != size {
                return Err(Error::VectorLength {
                    context: name,
                    expected: size,
                    got: ctx.support.len(),
                });
            }
            if !ctx.support.any() {
                return Err(Error::AllFalseSupport(name));
            }
            if let Some(probs) = &ctx.probs {
                check_probs(&name, probs, &ctx.support)?;
            }
            let mut node = 0usize;
            for &s in ctx.suffix.symbols().iter().rev() {
                let next = trie[node].children[s];
                node = if next == NONE {
                    trie.push(TrieNode::new(size));
                    let id = trie.len() - 1;
                    trie[node].children[s] = id as u32;
                    id
                } else {
                    next as usize
                };
            }
            if trie[node].context.is_some() {
                return Err(Error::DuplicateSuffix(name));
            }
            trie[node].context = Some(ci);
        }
        let kernel = SupportKernel {
            alphabet,
            order,
            contexts,
            default_support,
            trie,
        };
        if !kernel.default_support.any() {
            if let Some(witness) = kernel.default_witness() {
                return Err(Error::AllFalseSupport(
                    kernel.alphabet.render(witness.symbols()),
                ));
            }
        }
        Ok(kernel)
    }

    /// Kernel with the same support for every context.
    pub fn constant(alphabet: Alphabet, order: usize, support: Support) -> Result<Self> {
        SupportKernel::new(alphabet, order, Vec::new(), support)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet.size()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn default_support(&self) -> &Support {
        &self.default_support
    }

    /// Length of the longest listed context.
    pub fn max_context_len(&self) -> usize {
        self.contexts.iter().map(|c| c.suffix.len()).max().unwrap_or(0)
    }

    /// Whether `p(x, a) > 0`.
    pub fn support(&self, x: &Word, a: Symbol) -> Result<bool> {
        if x.len() != self.order {
            return Err(Error::WordLength {
                expected: self.order,
                got: x.len(),
            });
        }
        if a >= self.alphabet.size() {
            return Err(Error::SymbolIndex {
                index: a,
                size: self.alphabet.size(),
            });
        }
        Ok(self.effective_support(x.symbols()).allows(a))
    }

    /// Effective support of a full context `x`, `|x| = m`.
    pub fn effective_support(&self, x: &[Symbol]) -> &Support {
        debug_assert_eq!(x.len(), self.order);
        self.resolve(x).support
    }

    /// Resolves a partial past `w` with `|w| <= m`.
    pub fn resolve(&self, w: &[Symbol]) -> SuffixResolution<'_> {
        let mut node = 0usize;
        let mut best: Option<usize> = None;
        let mut on_path = true;
        for &s in w.iter().rev() {
            let next = self.trie[node].children[s];
            if next == NONE {
                on_path = false;
                break;
            }
            node = next as usize;
            if let Some(c) = self.trie[node].context {
                best = Some(c);
            }
        }
        let support = match best {
            Some(c) => &self.contexts[c].support,
            None => &self.default_support,
        };
        let constant = !on_path || w.len() >= self.order || self.trie[node].is_leaf();
        SuffixResolution { support, constant }
    }

    /// A context that resolves to the default support, if any.
    fn default_witness(&self) -> Option<Word> {
        // depth-first over unlisted trie nodes, newest symbol first
        let mut stack: Vec<(usize, Vec<Symbol>)> = vec![(0, Vec::new())];
        while let Some((node, path)) = stack.pop() {
            if path.len() >= self.order {
                continue;
            }
            for s in 0..self.alphabet.size() {
                let child = self.trie[node].children[s];
                let mut p = path.clone();
                p.push(s);
                if child == NONE {
                    let mut x = vec![0; self.order - p.len()];
                    x.extend(p.iter().rev());
                    return Some(Word::from(x));
                }
                if self.trie[child as usize].context.is_none() {
                    stack.push((child as usize, p));
                }
            }
        }
        None
    }

    /// Kernel with probabilities below `eps` coerced to zero.
    pub fn with_zero_tolerance(mut self, eps: f64) -> Result<Self> {
        for ctx in &mut self.contexts {
            if let Some(probs) = &mut ctx.probs {
                for (a, p) in probs.iter_mut().enumerate() {
                    if *p < eps {
                        *p = 0.0;
                        ctx.support.0[a] = false;
                    }
                }
            }
        }
        SupportKernel::new(
            self.alphabet,
            self.order,
            self.contexts,
            self.default_support,
        )
    }
}

fn check_probs(name: &str, probs: &[f64], support: &Support) -> Result<()> {
    let mismatch = |reason: String| Error::ProbsMismatch {
        context: name.to_string(),
        reason,
    };
    if probs.len() != support.len() {
        return Err(Error::VectorLength {
            context: name.to_string(),
            expected: support.len(),
            got: probs.len(),
        });
    }
    if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
        return Err(mismatch(format!("invalid probability {p}")));
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(mismatch(format!("probabilities sum to {sum}")));
    }
    for (a, (&p, &s)) in probs.iter().zip(support.bits()).enumerate() {
        if (p > 0.0) != s {
            return Err(mismatch(format!(
                "probability {p} disagrees with support bit {} at symbol {a}",
                u8::from(s)
            )));
        }
    }
    Ok(())
}

/// Generates a full-table kernel: every entry is prohibited independently
/// with probability `prohibition_rate`, then each all-false row gets one
/// uniformly chosen symbol re-enabled.
pub fn random_kernel(
    alphabet_size: usize,
    order: usize,
    prohibition_rate: f64,
    seed: u64,
) -> Result<SupportKernel> {
    if alphabet_size < 2 {
        return Err(Error::InvalidParameter("alphabet size must be at least 2".into()));
    }
    if order < 1 {
        return Err(Error::InvalidParameter("order must be at least 1".into()));
    }
    if !(0.0..1.0).contains(&prohibition_rate) {
        return Err(Error::InvalidParameter(format!(
            "prohibition rate {prohibition_rate} outside [0, 1)"
        )));
    }
    let space = StateSpace::new(alphabet_size, order, RANDOM_KERNEL_CAP)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut contexts = Vec::with_capacity(space.count());
    for x in 0..space.count() {
        let mut bits: Vec<bool> = (0..alphabet_size)
            .map(|_| !rng.gen_bool(prohibition_rate))
            .collect();
        if !bits.iter().any(|&b| b) {
            bits[rng.gen_range(0..alphabet_size)] = true;
        }
        contexts.push(Context {
            suffix: space.word_at(x),
            support: Support::new(bits),
            probs: None,
        });
    }
    SupportKernel::new(
        Alphabet::numeric(alphabet_size)?,
        order,
        contexts,
        Support::full(alphabet_size),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(a: &Alphabet, s: &str, bits: &[bool]) -> Context {
        Context {
            suffix: a.parse_word(s).unwrap(),
            support: Support::new(bits.to_vec()),
            probs: None,
        }
    }

    fn section4() -> SupportKernel {
        let a = Alphabet::numeric(2).unwrap();
        let contexts = vec![ctx(&a, "10", &[true, false]), ctx(&a, "111", &[true, false])];
        SupportKernel::new(a, 10, contexts, Support::full(2)).unwrap()
    }

    #[test]
    fn longest_suffix_wins() {
        let a = Alphabet::numeric(2).unwrap();
        let contexts = vec![ctx(&a, "1", &[true, false]), ctx(&a, "01", &[false, true])];
        let k = SupportKernel::new(a.clone(), 3, contexts, Support::full(2)).unwrap();
        assert_eq!(k.effective_support(&[1, 0, 1]).bits(), &[false, true]);
        assert_eq!(k.effective_support(&[0, 1, 1]).bits(), &[true, false]);
        assert_eq!(k.effective_support(&[1, 1, 0]).bits(), &[true, true]);
    }

    #[test]
    fn section4_support_values() {
        let k = section4();
        let a = k.alphabet().clone();
        assert!(!k.support(&a.parse_word("0000000010").unwrap(), 1).unwrap());
        assert!(k.support(&a.parse_word("0000000000").unwrap(), 1).unwrap());
        assert!(!k.support(&a.parse_word("0001110111").unwrap(), 1).unwrap());
        assert!(k.support(&a.parse_word("0001110011").unwrap(), 1).unwrap());
        assert!(matches!(
            k.support(&a.parse_word("10").unwrap(), 0),
            Err(Error::WordLength { expected: 10, got: 2 })
        ));
    }

    #[test]
    fn resolution_constant_flag() {
        let k = section4();
        assert!(!k.resolve(&[]).constant);
        assert!(!k.resolve(&[0]).constant);
        assert!(k.resolve(&[0, 0]).constant);
        assert!(!k.resolve(&[1]).constant);
        assert!(k.resolve(&[1, 0]).constant);
        assert!(!k.resolve(&[1, 1]).constant);
        assert!(k.resolve(&[0, 1, 1]).constant);
    }

    #[test]
    fn validation_errors() {
        let a = Alphabet::numeric(2).unwrap();
        let r = SupportKernel::new(a.clone(), 2, vec![ctx(&a, "1", &[false, false])], Support::full(2));
        assert_eq!(r.unwrap_err(), Error::AllFalseSupport("1".into()));

        let dup = vec![ctx(&a, "1", &[true, false]), ctx(&a, "1", &[true, true])];
        assert!(matches!(
            SupportKernel::new(a.clone(), 2, dup, Support::full(2)),
            Err(Error::DuplicateSuffix(_))
        ));

        let long = vec![ctx(&a, "011", &[true, false])];
        assert!(matches!(
            SupportKernel::new(a.clone(), 2, long, Support::full(2)),
            Err(Error::SuffixLength { len: 3, .. })
        ));

        // all-false default only matters when some context falls through to it
        let covered = vec![ctx(&a, "0", &[true, false]), ctx(&a, "1", &[false, true])];
        assert!(SupportKernel::new(a.clone(), 2, covered, Support::new(vec![false, false])).is_ok());
        let uncovered = vec![ctx(&a, "01", &[true, false])];
        assert_eq!(
            SupportKernel::new(a, 2, uncovered, Support::new(vec![false, false])).unwrap_err(),
            Error::AllFalseSupport("00".into())
        );
    }

    #[test]
    fn probs_must_match_support() {
        let a = Alphabet::numeric(2).unwrap();
        let mut c = ctx(&a, "1", &[true, false]);
        c.probs = Some(vec![0.5, 0.5]);
        assert!(matches!(
            SupportKernel::new(a.clone(), 2, vec![c.clone()], Support::full(2)),
            Err(Error::ProbsMismatch { .. })
        ));
        c.probs = Some(vec![0.9, 0.0]);
        assert!(SupportKernel::new(a.clone(), 2, vec![c.clone()], Support::full(2)).is_err());
        c.probs = Some(vec![1.0, 0.0]);
        assert!(SupportKernel::new(a, 2, vec![c], Support::full(2)).is_ok());
    }

    #[test]
    fn zero_tolerance_coerces_small_entries() {
        let a = Alphabet::numeric(2).unwrap();
        let mut c = ctx(&a, "1", &[true, true]);
        c.probs = Some(vec![1.0 - 1e-12, 1e-12]);
        let k = SupportKernel::new(a, 2, vec![c], Support::full(2)).unwrap();
        assert!(k.effective_support(&[0, 1]).allows(1));
        let k = k.with_zero_tolerance(1e-9).unwrap();
        assert!(!k.effective_support(&[0, 1]).allows(1));
    }

    #[test]
    fn random_kernel_basics() {
        let k = random_kernel(2, 3, 0.0, 11).unwrap();
        assert_eq!(k.contexts().len(), 8);
        assert!(k.contexts().iter().all(|c| c.support.is_full()));

        let k = random_kernel(2, 2, 0.5, 7).unwrap();
        assert!(k.contexts().iter().all(|c| c.support.any()));

        let a = random_kernel(3, 4, 0.3, 1).unwrap();
        let b = random_kernel(3, 4, 0.3, 1).unwrap();
        assert_eq!(a.contexts(), b.contexts());

        assert!(random_kernel(1, 3, 0.1, 0).is_err());
        assert!(random_kernel(2, 3, 1.0, 0).is_err());
    }

    #[test]
    fn random_kernel_rows_never_empty() {
        for seed in 0..1000 {
            let k = random_kernel(2, 3, 0.9, seed).unwrap();
            assert!(k.contexts().iter().all(|c| c.support.any()), "seed {seed}");
        }
    }
}
