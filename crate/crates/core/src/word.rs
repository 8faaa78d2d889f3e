//! Alphabets, words and fixed-length state spaces.
//!
//! Words are stored oldest symbol first: for a context `x = (x_1, ..., x_m)`
//! the last element is the most recently emitted symbol. State spaces index
//! the words of a fixed length lexicographically with the oldest symbol most
//! significant, so that the shift `u -> (drop oldest) . a` is arithmetic.

use std::fmt;

use crate::error::{Error, Result};

/// Symbol index into an [`Alphabet`].
pub type Symbol = usize;

/// An ordered set of distinct symbol labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = labels.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::InvalidAlphabet(format!("label {i} is empty")));
            }
            if symbols[..i].contains(s) {
                return Err(Error::InvalidAlphabet(format!("duplicate label `{s}`")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// The alphabet `{"0", "1", ..., "n-1"}`.
    pub fn numeric(size: usize) -> Result<Self> {
        Alphabet::new((0..size).map(|i| i.to_string()))
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.symbols
    }

    pub fn label(&self, symbol: Symbol) -> &str {
        &self.symbols[symbol]
    }

    pub fn index_of(&self, label: &str) -> Option<Symbol> {
        self.symbols.iter().position(|s| s == label)
    }

    /// True when every label is a single character, so words can be written
    /// as plain concatenations.
    pub fn single_char_labels(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a concatenated word such as `"0110"`. Only valid when all
    /// labels are single characters.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        if !self.single_char_labels() {
            return Err(Error::Malformed(format!(
                "word `{text}` must use the list form: alphabet has multi-character labels"
            )));
        }
        let mut symbols = Vec::with_capacity(text.len());
        for ch in text.chars() {
            let mut buf = [0u8; 4];
            let label = ch.encode_utf8(&mut buf);
            let idx = self.index_of(label).ok_or_else(|| Error::UnknownSymbol {
                label: label.to_string(),
                context: text.to_string(),
            })?;
            symbols.push(idx);
        }
        Ok(Word::from(symbols))
    }

    /// Renders a word with these labels. Multi-character labels are joined
    /// with a single space.
    pub fn render(&self, word: &[Symbol]) -> String {
        let sep = if self.single_char_labels() { "" } else { " " };
        word.iter()
            .map(|&s| self.symbols[s].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

/// A finite sequence of symbols, oldest first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    /// The empty word `e`.
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    /// The last `k` symbols. Panics if `k > len`.
    pub fn suffix(&self, k: usize) -> Word {
        Word(self.0[self.0.len() - k..].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.ends_with(&suffix.0)
    }

    /// Drops the oldest symbol. The empty word stays empty.
    pub fn drop_oldest(&self) -> Word {
        Word(self.0.iter().skip(1).copied().collect())
    }

    /// Prepends an older symbol.
    pub fn prepend(&self, symbol: Symbol) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(symbol);
        v.extend_from_slice(&self.0);
        Word(v)
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let sep = if self.0.iter().any(|&x| x > 9) { "." } else { "" };
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// The set `A^len` of words of a fixed length, indexed lexicographically
/// with the oldest symbol most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateSpace {
    alphabet_size: usize,
    word_len: usize,
    count: usize,
    /// `alphabet_size^(word_len - 1)`, the weight of the oldest symbol.
    top: usize,
}

impl StateSpace {
    /// Fails when `alphabet_size^word_len` exceeds `cap`.
    pub fn new(alphabet_size: usize, word_len: usize, cap: usize) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::InvalidParameter("alphabet size must be positive".into()));
        }
        let mut count: usize = 1;
        for _ in 0..word_len {
            count = match count.checked_mul(alphabet_size) {
                Some(c) if c <= cap => c,
                _ => {
                    return Err(Error::StateSpaceTooLarge {
                        states: format!("{alphabet_size}^{word_len}"),
                        cap,
                    })
                }
            };
        }
        if count > cap {
            return Err(Error::StateSpaceTooLarge {
                states: format!("{alphabet_size}^{word_len}"),
                cap,
            });
        }
        let top = if word_len == 0 { 1 } else { count / alphabet_size };
        Ok(StateSpace {
            alphabet_size,
            word_len,
            count,
            top,
        })
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn word_len(&self) -> usize {
        self.word_len
    }

    /// Number of states, `|A|^len`.
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn index_of(&self, word: &[Symbol]) -> usize {
        debug_assert_eq!(word.len(), self.word_len);
        word.iter().fold(0, |acc, &s| acc * self.alphabet_size + s)
    }

    pub fn word_at(&self, mut index: usize) -> Word {
        let mut v = vec![0; self.word_len];
        for slot in v.iter_mut().rev() {
            *slot = index % self.alphabet_size;
            index /= self.alphabet_size;
        }
        Word(v)
    }

    /// Successor of `index` under the shift: drop the oldest symbol, append
    /// `symbol`. For the empty word space this is the identity.
    pub fn shift(&self, index: usize, symbol: Symbol) -> usize {
        if self.word_len == 0 {
            return 0;
        }
        (index % self.top) * self.alphabet_size + symbol
    }

    /// Oldest symbol of the word at `index`.
    pub fn oldest(&self, index: usize) -> Symbol {
        if self.word_len == 0 {
            return 0;
        }
        index / self.top
    }

    /// Most recent symbol of the word at `index`.
    pub fn newest(&self, index: usize) -> Symbol {
        index % self.alphabet_size
    }
}
