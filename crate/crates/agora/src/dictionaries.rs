//! Modality dictionaries: finite partially ordered label sets for claims,
//! grounds, consequences and inference rules, plus the built-in defaults.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Outcome of comparing two labels under a dictionary's partial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LabelOrdering {
    Greater,
    Lesser,
    Equal,
    Incomparable,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DictionaryError {
    #[error("unknown label '{0}' in dictionary '{1}'")]
    UnknownLabel(String, String),
    #[error("order cycle involving label '{0}' in dictionary '{1}'")]
    Cycle(String, String),
    #[error("order pair references label '{0}' not in dictionary '{1}'")]
    OrphanPair(String, String),
    #[error("duplicate label '{0}' in dictionary '{1}'")]
    DuplicateLabel(String, String),
}

/// A finite set of modality labels with a strict partial order.
///
/// The order is given as cover pairs (greater, lesser); the transitive
/// closure is taken at construction and checked acyclic. Labels may carry
/// an abbreviation used for trace rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModalityDictionary {
    name: String,
    labels: Vec<String>,
    abbrevs: BTreeMap<String, String>,
    // transitive closure: greater -> set of strictly lesser labels
    below: BTreeMap<String, BTreeSet<String>>,
}

impl ModalityDictionary {
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        pairs: Vec<(String, String)>,
    ) -> Result<Self, DictionaryError> {
        let name = name.into();
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(DictionaryError::DuplicateLabel(l.clone(), name));
            }
        }
        for (g, l) in &pairs {
            for label in [g, l] {
                if !seen.contains(label) {
                    return Err(DictionaryError::OrphanPair(label.clone(), name));
                }
            }
        }
        let mut below: BTreeMap<String, BTreeSet<String>> = labels
            .iter()
            .map(|l| (l.clone(), BTreeSet::new()))
            .collect();
        for (g, l) in &pairs {
            below.get_mut(g).unwrap().insert(l.clone());
        }
        // transitive closure by iteration to fixpoint
        loop {
            let mut changed = false;
            for label in &labels {
                let reachable: BTreeSet<String> = below[label]
                    .iter()
                    .flat_map(|mid| below[mid].iter().cloned())
                    .collect();
                let entry = below.get_mut(label).unwrap();
                for r in reachable {
                    changed |= entry.insert(r);
                }
            }
            if !changed {
                break;
            }
        }
        for label in &labels {
            if below[label].contains(label) {
                return Err(DictionaryError::Cycle(label.clone(), name));
            }
        }
        Ok(ModalityDictionary {
            name,
            labels,
            abbrevs: BTreeMap::new(),
            below,
        })
    }

    /// A total order: labels listed in descending order.
    pub fn descending_chain(
        name: impl Into<String>,
        labels: &[&str],
    ) -> Result<Self, DictionaryError> {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let pairs = labels
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        Self::new(name, labels, pairs)
    }

    pub fn with_abbrevs(mut self, pairs: &[(&str, &str)]) -> Self {
        for (full, short) in pairs {
            self.abbrevs.insert(full.to_string(), short.to_string());
        }
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Resolves a label given either its canonical spelling or abbreviation.
    pub fn resolve(&self, text: &str) -> Option<&str> {
        if self.labels.iter().any(|l| l == text) {
            return self.labels.iter().find(|l| l.as_str() == text).map(|s| s.as_str());
        }
        self.abbrevs
            .iter()
            .find(|(_, short)| short.as_str() == text)
            .map(|(full, _)| full.as_str())
    }

    pub fn contains(&self, label: &str) -> bool {
        self.resolve(label).is_some()
    }

    /// Rendering spelling: abbreviation when one is declared.
    pub fn display<'a>(&'a self, label: &'a str) -> &'a str {
        let canonical = self.resolve(label).unwrap_or(label);
        self.abbrevs
            .get(canonical)
            .map(|s| s.as_str())
            .unwrap_or(canonical)
    }

    pub fn compare(&self, a: &str, b: &str) -> Result<LabelOrdering, DictionaryError> {
        let a = self
            .resolve(a)
            .ok_or_else(|| DictionaryError::UnknownLabel(a.to_string(), self.name.clone()))?;
        let b = self
            .resolve(b)
            .ok_or_else(|| DictionaryError::UnknownLabel(b.to_string(), self.name.clone()))?;
        if a == b {
            Ok(LabelOrdering::Equal)
        } else if self.below[a].contains(b) {
            Ok(LabelOrdering::Greater)
        } else if self.below[b].contains(a) {
            Ok(LabelOrdering::Lesser)
        } else {
            Ok(LabelOrdering::Incomparable)
        }
    }
}

/// The six-label claims dictionary, total order Certain > Confirmed >
/// Probable > Plausible > Supported > Open, with the usual abbreviations.
pub fn krause_claims_dictionary() -> ModalityDictionary {
    ModalityDictionary::descending_chain(
        "claims",
        &[
            "Certain",
            "Confirmed",
            "Probable",
            "Plausible",
            "Supported",
            "Open",
        ],
    )
    .expect("built-in claims dictionary is valid")
    .with_abbrevs(&[
        ("Certain", "Cert"),
        ("Confirmed", "Conf"),
        ("Probable", "Prob"),
        ("Plausible", "Plaus"),
        ("Supported", "Supp"),
        ("Open", "Open"),
    ])
}

/// Two-element inference dictionary, Valid > Invalid.
pub fn default_inference_dictionary() -> ModalityDictionary {
    ModalityDictionary::descending_chain("inference", &["Valid", "Invalid"])
        .expect("built-in inference dictionary is valid")
        .with_abbrevs(&[("Valid", "Val"), ("Invalid", "Inval")])
}

/// Four-element inference dictionary alternative.
pub fn acceptability_inference_dictionary() -> ModalityDictionary {
    ModalityDictionary::descending_chain(
        "inference",
        &["Acceptable", "SometimesAcceptable", "Open", "NotAcceptable"],
    )
    .expect("built-in inference dictionary is valid")
}

/// Per-argument modality labels: one vector per inference step (one label
/// per premise of that step), a conclusion label from the claims
/// dictionary, and one inference label per step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueAssignment {
    pub ground_labels: Vec<Vec<String>>,
    pub claim_label: String,
    pub inference_labels: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn krause_order_confirmed_above_plausible() {
        let d = krause_claims_dictionary();
        assert_eq!(
            d.compare("Confirmed", "Plausible").unwrap(),
            LabelOrdering::Greater
        );
    }

    #[test]
    fn reflexive_equality() {
        let d = krause_claims_dictionary();
        assert_eq!(d.compare("Open", "Open").unwrap(), LabelOrdering::Equal);
    }

    #[test]
    fn inference_valid_above_invalid() {
        let d = default_inference_dictionary();
        assert_eq!(
            d.compare("Valid", "Invalid").unwrap(),
            LabelOrdering::Greater
        );
    }

    #[test]
    fn abbreviations_resolve_and_display() {
        let d = krause_claims_dictionary();
        assert_eq!(d.resolve("Conf"), Some("Confirmed"));
        assert_eq!(d.display("Confirmed"), "Conf");
        assert_eq!(d.display("Conf"), "Conf");
    }

    #[test]
    fn unknown_label_rejected() {
        let d = krause_claims_dictionary();
        assert!(matches!(
            d.compare("Confirmed", "Maybe"),
            Err(DictionaryError::UnknownLabel(..))
        ));
    }

    #[test]
    fn cycle_rejected() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let pairs = vec![
            ("a".to_string(), "b".to_string()),
            ("b".to_string(), "a".to_string()),
        ];
        assert!(matches!(
            ModalityDictionary::new("bad", labels, pairs),
            Err(DictionaryError::Cycle(..))
        ));
    }

    #[test]
    fn orphan_pair_rejected() {
        let labels = vec!["a".to_string()];
        let pairs = vec![("a".to_string(), "z".to_string())];
        assert!(matches!(
            ModalityDictionary::new("bad", labels, pairs),
            Err(DictionaryError::OrphanPair(..))
        ));
    }

    #[test]
    fn incomparable_in_genuine_partial_order() {
        let labels: Vec<String> = ["top", "left", "right"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let pairs = vec![
            ("top".to_string(), "left".to_string()),
            ("top".to_string(), "right".to_string()),
        ];
        let d = ModalityDictionary::new("diamond", labels, pairs).unwrap();
        assert_eq!(
            d.compare("left", "right").unwrap(),
            LabelOrdering::Incomparable
        );
    }

    // antisymmetry and transitivity over every built-in dictionary
    #[test]
    fn builtin_orders_are_strict_partial_orders() {
        for d in [
            krause_claims_dictionary(),
            default_inference_dictionary(),
            acceptability_inference_dictionary(),
        ] {
            let labels = d.labels().to_vec();
            for a in &labels {
                for b in &labels {
                    let ab = d.compare(a, b).unwrap();
                    let ba = d.compare(b, a).unwrap();
                    match ab {
                        LabelOrdering::Greater => assert_eq!(ba, LabelOrdering::Lesser),
                        LabelOrdering::Lesser => assert_eq!(ba, LabelOrdering::Greater),
                        LabelOrdering::Equal => {
                            assert_eq!(a, b);
                            assert_eq!(ba, LabelOrdering::Equal);
                        }
                        LabelOrdering::Incomparable => {
                            assert_eq!(ba, LabelOrdering::Incomparable)
                        }
                    }
                    for c in &labels {
                        if ab == LabelOrdering::Greater
                            && d.compare(b, c).unwrap() == LabelOrdering::Greater
                        {
                            assert_eq!(d.compare(a, c).unwrap(), LabelOrdering::Greater);
                        }
                    }
                }
            }
        }
    }
}
