//! Kernel file format.
//!
//! ```json
//! {
//!   "alphabet": ["0", "1"],
//!   "order": 10,
//!   "default_support": [1, 1],
//!   "contexts": [
//!     {"suffix": "10",  "support": [1, 0]},
//!     {"suffix": "111", "support": [1, 0], "probs": [1.0, 0.0]}
//!   ]
//! }
//! ```
//!
//! Suffixes are written oldest to newest. With multi-character labels the
//! suffix must be a list of labels, e.g. `["up", "down"]`. Support entries
//! accept `0`/`1` or `false`/`true`. When `probs` is given without
//! `support`, the support is the positive pattern of `probs`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{Context, Support, SupportKernel};
use crate::word::{Alphabet, Word};

/// Options applied while loading a kernel.
#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// Coerce probabilities strictly below this value to zero.
    pub zero_tol: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct KernelDoc {
    alphabet: Vec<String>,
    order: usize,
    #[serde(default)]
    default_support: Option<Vec<Bit>>,
    #[serde(default)]
    contexts: Vec<ContextDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ContextDoc {
    suffix: SuffixDoc,
    #[serde(default)]
    support: Option<Vec<Bit>>,
    #[serde(default)]
    probs: Option<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SuffixDoc {
    Text(String),
    Labels(Vec<String>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Bit {
    Bool(bool),
    Int(u64),
}

fn bits(values: &[Bit], context: &str) -> Result<Vec<bool>> {
    values
        .iter()
        .map(|b| match *b {
            Bit::Bool(v) => Ok(v),
            Bit::Int(0) => Ok(false),
            Bit::Int(1) => Ok(true),
            Bit::Int(other) => Err(Error::Malformed(format!(
                "support entry {other} in context `{context}` is not 0 or 1"
            ))),
        })
        .collect()
}

/// Parses and validates a kernel document.
pub fn parse_kernel(text: &str) -> Result<SupportKernel> {
    parse_kernel_with(text, LoadOptions::default())
}

pub fn parse_kernel_with(text: &str, options: LoadOptions) -> Result<SupportKernel> {
    let doc: KernelDoc =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let alphabet = Alphabet::new(doc.alphabet)?;
    let size = alphabet.size();
    let default_support = match &doc.default_support {
        Some(v) => Support::new(bits(v, "default")?),
        None => Support::full(size),
    };

    let mut contexts = Vec::with_capacity(doc.contexts.len());
    for c in doc.contexts {
        let (suffix, name) = match c.suffix {
            SuffixDoc::Text(s) => (alphabet.parse_word(&s)?, s),
            SuffixDoc::Labels(labels) => {
                let name = labels.join(" ");
                let mut symbols = Vec::with_capacity(labels.len());
                for l in &labels {
                    let idx = alphabet.index_of(l).ok_or_else(|| Error::UnknownSymbol {
                        label: l.clone(),
                        context: name.clone(),
                    })?;
                    symbols.push(idx);
                }
                (Word::from(symbols), name)
            }
        };
        let support = match (&c.support, &c.probs) {
            (Some(s), _) => Support::new(bits(s, &name)?),
            (None, Some(p)) => Support::new(p.iter().map(|&x| x > 0.0).collect()),
            (None, None) => {
                return Err(Error::Malformed(format!(
                    "context `{name}` has neither support nor probs"
                )))
            }
        };
        contexts.push(Context {
            suffix,
            support,
            probs: c.probs,
        });
    }

    let kernel = SupportKernel::new(alphabet, doc.order, contexts, default_support)?;
    match options.zero_tol {
        Some(eps) if eps > 0.0 => kernel.with_zero_tolerance(eps),
        _ => Ok(kernel),
    }
}

/// Serializes a kernel to the document format, one context per line.
/// Output is deterministic for a given kernel.
pub fn to_document(kernel: &SupportKernel) -> String {
    let alphabet = kernel.alphabet();
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"alphabet\": {},\n", json(alphabet.labels())));
    out.push_str(&format!("  \"order\": {},\n", kernel.order()));
    out.push_str(&format!(
        "  \"default_support\": {},\n",
        json(&kernel.default_support().as_ints())
    ));
    out.push_str("  \"contexts\": [");
    for (i, c) in kernel.contexts().iter().enumerate() {
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        let suffix = if alphabet.single_char_labels() {
            json(&alphabet.render(c.suffix.symbols()))
        } else {
            let labels: Vec<String> = c
                .suffix
                .symbols()
                .iter()
                .map(|&s| alphabet.label(s).to_string())
                .collect();
            json(&labels)
        };
        out.push_str(&format!(
            "    {{\"suffix\": {}, \"support\": {}",
            suffix,
            json(&c.support.as_ints())
        ));
        if let Some(p) = &c.probs {
            out.push_str(&format!(", \"probs\": {}", json(p)));
        }
        out.push('}');
    }
    if !kernel.contexts().is_empty() {
        out.push_str("\n  ");
    }
    out.push_str("]\n}\n");
    out
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SECTION4: &str = r#"{
        "alphabet": ["0", "1"],
        "order": 10,
        "default_support": [1, 1],
        "contexts": [
            {"suffix": "10", "support": [1, 0]},
            {"suffix": "111", "support": [1, 0], "probs": [1.0, 0.0]}
        ]
    }"#;

    #[test]
    fn parses_section4_kernel() {
        let k = parse_kernel(SECTION4).unwrap();
        assert_eq!(k.order(), 10);
        assert_eq!(k.contexts().len(), 2);
        assert_eq!(k.contexts()[0].suffix.symbols(), &[1, 0]);
        assert!(!k.effective_support(&[0, 0, 0, 0, 0, 0, 0, 0, 1, 0]).allows(1));
    }

    #[test]
    fn empty_context_list_is_full_support() {
        let k = parse_kernel(r#"{"alphabet": ["0","1"], "order": 3, "contexts": [], "default_support": [1,1]}"#)
            .unwrap();
        assert!(k.effective_support(&[1, 0, 1]).is_full());
        let k = parse_kernel(r#"{"alphabet": ["0","1"], "order": 3}"#).unwrap();
        assert!(k.default_support().is_full());
    }

    #[test]
    fn all_false_row_is_rejected() {
        let err = parse_kernel(
            r#"{"alphabet": ["0","1"], "order": 2, "contexts": [{"suffix": "1", "support": [0,0]}]}"#,
        )
        .unwrap_err();
        assert_eq!(err, Error::AllFalseSupport("1".into()));
        assert_eq!(err.to_string(), "all-false support row at context `1`");
    }

    #[test]
    fn reports_bad_documents() {
        assert!(matches!(parse_kernel("{"), Err(Error::Malformed(_))));
        assert!(matches!(
            parse_kernel(r#"{"alphabet": ["0","1"], "order": 2, "contexts": [{"suffix": "2", "support": [1,0]}]}"#),
            Err(Error::UnknownSymbol { .. })
        ));
        assert!(matches!(
            parse_kernel(r#"{"alphabet": ["0","1"], "order": 2, "contexts": [{"suffix": "1", "support": [1,2]}]}"#),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            parse_kernel(r#"{"alphabet": ["0","1"], "order": 2, "contexts": [{"suffix": "1"}]}"#),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            parse_kernel(r#"{"alphabet": ["0","1"], "order": 2, "extra": 1}"#),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn list_form_suffixes() {
        let text = r#"{"alphabet": ["up","down"], "order": 2,
            "contexts": [{"suffix": ["down","up"], "support": [false, true]}]}"#;
        let k = parse_kernel(text).unwrap();
        assert_eq!(k.contexts()[0].suffix.symbols(), &[1, 0]);
        let again = parse_kernel(&to_document(&k)).unwrap();
        assert_eq!(again.contexts(), k.contexts());
        assert!(parse_kernel(
            r#"{"alphabet": ["up","down"], "order": 2, "contexts": [{"suffix": "downup", "support": [0,1]}]}"#
        )
        .is_err());
    }

    #[test]
    fn probs_only_context_derives_support() {
        let k = parse_kernel(
            r#"{"alphabet": ["0","1"], "order": 2, "contexts": [{"suffix": "1", "probs": [0.0, 1.0]}]}"#,
        )
        .unwrap();
        assert_eq!(k.contexts()[0].support.bits(), &[false, true]);
    }

    #[test]
    fn zero_tol_option() {
        let text = r#"{"alphabet": ["0","1"], "order": 2,
            "contexts": [{"suffix": "1", "probs": [0.9999999999, 0.0000000001]}]}"#;
        let k = parse_kernel_with(text, LoadOptions { zero_tol: Some(1e-6) }).unwrap();
        assert_eq!(k.contexts()[0].support.bits(), &[true, false]);
        let k = parse_kernel(text).unwrap();
        assert!(k.contexts()[0].support.is_full());
    }

    #[test]
    fn document_roundtrip() {
        let k = parse_kernel(SECTION4).unwrap();
        let doc = to_document(&k);
        let again = parse_kernel(&doc).unwrap();
        assert_eq!(again.contexts(), k.contexts());
        assert_eq!(again.order(), 10);
        assert_eq!(to_document(&again), doc);
    }
}
