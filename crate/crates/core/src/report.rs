//! Structured reports shared by the skeleton route and the oracle, so the
//! two can be diffed field by field.
//!
//! ```json
//! {
//!   "source": "skeleton",
//!   "order": 10,
//!   "skeleton_order": 3,
//!   "skeleton": [{"word": "00", "support": [1, 1]}, ...],
//!   "N": 1,
//!   "classes": [
//!     {"closed_class": ["000", ...], "period": 1, "recurrent_size": 640,
//!      "recurrent_members": ["0000000000", ...]}
//!   ],
//!   "transient_count": 384,
//!   "essentially_irreducible": true,
//!   "irreducible": false,
//!   "irreducible_reason": "Prop 2 contraposition"
//! }
//! ```
//!
//! Counts that do not fit in a `u64` are written as decimal strings. The
//! empty word is written `""`.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::classify::Classification;
use crate::oracle::BruteForceClassification;
use crate::word::{Alphabet, StateSpace};

/// Exact state count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Count(pub BigUint);

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl std::fmt::Display for Count {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkeletonEntry {
    pub word: String,
    pub support: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_class: Option<Vec<String>>,
    pub period: usize,
    pub recurrent_size: Count,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recurrent_members: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    /// `"skeleton"` or `"oracle"`.
    pub source: &'static str,
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skeleton_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skeleton: Option<Vec<SkeletonEntry>>,
    #[serde(rename = "N")]
    pub class_count: usize,
    pub classes: Vec<ClassReport>,
    pub transient_count: Count,
    pub essentially_irreducible: bool,
    pub irreducible: bool,
    pub irreducible_reason: String,
}

fn words(alphabet: &Alphabet, space: StateSpace, indices: &[usize]) -> Vec<String> {
    indices
        .iter()
        .map(|&i| alphabet.render(space.word_at(i).symbols()))
        .collect()
}

impl Report {
    pub fn from_classification(c: &Classification, alphabet: &Alphabet) -> Report {
        let kspace = c.matrix.space();
        let mspace = StateSpace::new(alphabet.size(), c.order, usize::MAX).ok();
        let classes = c
            .classes
            .iter()
            .map(|rc| ClassReport {
                closed_class: Some(words(alphabet, kspace, &rc.closed_class)),
                period: rc.period,
                recurrent_size: Count(rc.size.clone()),
                recurrent_members: rc
                    .members
                    .as_ref()
                    .zip(mspace)
                    .map(|(m, space)| words(alphabet, space, m)),
            })
            .collect();
        Report {
            source: "skeleton",
            order: c.order,
            skeleton_order: Some(c.skeleton_order()),
            skeleton: Some(
                c.skeleton
                    .words()
                    .iter()
                    .map(|w| SkeletonEntry {
                        word: alphabet.render(w.word.symbols()),
                        support: w.support.as_ints(),
                    })
                    .collect(),
            ),
            class_count: c.class_count(),
            classes,
            transient_count: Count(c.transient_count.clone()),
            essentially_irreducible: c.essentially_irreducible,
            irreducible: c.irreducibility.irreducible,
            irreducible_reason: c.irreducibility.reason.to_string(),
        }
    }

    pub fn from_brute_force(
        bf: &BruteForceClassification,
        alphabet: &Alphabet,
        order: usize,
        enumerate_cap: usize,
    ) -> Report {
        let space = StateSpace::new(alphabet.size(), order, usize::MAX).expect("lifted space fits");
        let listable = bf.state_count <= enumerate_cap;
        let classes = bf
            .classes
            .iter()
            .map(|lc| ClassReport {
                closed_class: None,
                period: lc.period,
                recurrent_size: Count(BigUint::from(lc.members.len())),
                recurrent_members: listable.then(|| words(alphabet, space, &lc.members)),
            })
            .collect();
        let irreducible = bf.irreducible();
        Report {
            source: "oracle",
            order,
            skeleton_order: None,
            skeleton: None,
            class_count: bf.class_count(),
            classes,
            transient_count: Count(BigUint::from(bf.transient.len())),
            essentially_irreducible: bf.essentially_irreducible(),
            irreducible,
            irreducible_reason: if irreducible {
                "lifted chain: single communicating class".into()
            } else {
                format!(
                    "lifted chain: {} communicating classes",
                    bf.communicating_classes
                )
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "source: {}", self.source);
        let _ = writeln!(out, "order m: {}", self.order);
        if let Some(k) = self.skeleton_order {
            let _ = writeln!(out, "skeleton order K: {k}");
        }
        if let Some(words) = &self.skeleton {
            let list: Vec<String> = words
                .iter()
                .map(|w| {
                    let name = if w.word.is_empty() { "e" } else { &w.word };
                    let bits: String = w.support.iter().map(|b| b.to_string()).collect();
                    format!("{name}:{bits}")
                })
                .collect();
            let _ = writeln!(out, "skeleton: {}", list.join(" "));
        }
        let _ = writeln!(out, "recurrent classes N: {}", self.class_count);
        for (i, c) in self.classes.iter().enumerate() {
            let _ = write!(
                out,
                "  class {}: period {}, {} states",
                i + 1,
                c.period,
                c.recurrent_size
            );
            if let Some(cc) = &c.closed_class {
                let shown: Vec<&str> = cc
                    .iter()
                    .map(|w| if w.is_empty() { "e" } else { w.as_str() })
                    .collect();
                let _ = write!(out, ", closed class {{{}}}", shown.join(", "));
            }
            out.push('\n');
        }
        let _ = writeln!(out, "transient states: {}", self.transient_count);
        let _ = writeln!(out, "essentially irreducible: {}", self.essentially_irreducible);
        let _ = writeln!(
            out,
            "irreducible: {} ({})",
            self.irreducible, self.irreducible_reason
        );
        out
    }
}
