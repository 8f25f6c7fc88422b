//! The activity-equivalence dictionary.
//!
//! A dictionary is an ordered list of rewrite rules. Each rule maps a pattern
//! of one or more activity names onto a meta action, e.g. `SendOutlookMail`
//! onto `Send Mail`. Applying it to a sequence yields a [`MetaProcess`].

mod builtin;
mod normalize;

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use self::builtin::builtin_dictionary;
pub use self::normalize::{normalize, normalize_corpus, LookupCase, MetaProcess, Normalizer};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DictionaryRule {
    #[serde(rename = "meta")]
    pub meta_action: String,
    pub pattern: Vec<String>,
}

impl DictionaryRule {
    pub fn new<I, S>(meta_action: impl Into<String>, pattern: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        DictionaryRule {
            meta_action: meta_action.into(),
            pattern: pattern.into_iter().map(Into::into).collect(),
        }
    }

    pub fn is_sequence_rule(&self) -> bool {
        self.pattern.len() > 1
    }
}

/// A validated, immutable dictionary. Rule order is significant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActivityDictionary {
    pub name: String,
    pub version: String,
    rules: Vec<DictionaryRule>,
}

/// One broken dictionary invariant. Rule indices are zero-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyMetaAction {
        rule: usize,
    },
    EmptyPattern {
        rule: usize,
        meta_action: String,
    },
    EmptyPatternElement {
        rule: usize,
        meta_action: String,
    },
    MetaActionIsActivity {
        meta_action: String,
        rule: usize,
        activity: String,
        activity_rule: usize,
    },
    DuplicateRule {
        rule: usize,
        first: usize,
        meta_action: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyMetaAction { rule } => write!(f, "rule {rule}: empty meta action"),
            Violation::EmptyPattern { rule, meta_action } => {
                write!(f, "rule {rule} ({meta_action:?}): empty pattern")
            }
            Violation::EmptyPatternElement { rule, meta_action } => {
                write!(f, "rule {rule} ({meta_action:?}): empty activity name in pattern")
            }
            Violation::MetaActionIsActivity {
                meta_action,
                rule,
                activity,
                activity_rule,
            } => write!(
                f,
                "meta action {meta_action:?} of rule {rule} collides with activity {activity:?} in rule {activity_rule}"
            ),
            Violation::DuplicateRule {
                rule,
                first,
                meta_action,
            } => write!(f, "rule {rule} ({meta_action:?}) duplicates rule {first}"),
        }
    }
}

impl ActivityDictionary {
    pub fn new(name: impl Into<String>, version: impl Into<String>, rules: Vec<DictionaryRule>) -> Result<Self> {
        let dictionary = ActivityDictionary {
            name: name.into(),
            version: version.into(),
            rules,
        };
        let violations = dictionary.violations();
        if violations.is_empty() {
            Ok(dictionary)
        } else {
            Err(Error::InvalidDictionary(violations))
        }
    }

    pub fn rules(&self) -> &[DictionaryRule] {
        &self.rules
    }

    /// Distinct meta actions in first-appearance order.
    pub fn meta_actions(&self) -> Vec<&str> {
        let mut seen = Vec::new();
        for rule in &self.rules {
            if !seen.contains(&rule.meta_action.as_str()) {
                seen.push(rule.meta_action.as_str());
            }
        }
        seen
    }

    /// Every invariant the rules break, in rule order.
    ///
    /// Meta actions are compared against activity names case-insensitively so
    /// that normalization stays idempotent under either lookup mode.
    pub fn violations(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        let mut activities: HashMap<String, (usize, &str)> = HashMap::new();
        for (idx, rule) in self.rules.iter().enumerate() {
            for name in &rule.pattern {
                activities.entry(name.to_lowercase()).or_insert((idx, name));
            }
        }
        let mut first_seen: HashMap<&DictionaryRule, usize> = HashMap::new();

        for (idx, rule) in self.rules.iter().enumerate() {
            let meta_empty = rule.meta_action.trim().is_empty();
            if meta_empty {
                violations.push(Violation::EmptyMetaAction { rule: idx });
            }
            if rule.pattern.is_empty() {
                violations.push(Violation::EmptyPattern {
                    rule: idx,
                    meta_action: rule.meta_action.clone(),
                });
            }
            if rule.pattern.iter().any(|p| p.trim().is_empty()) {
                violations.push(Violation::EmptyPatternElement {
                    rule: idx,
                    meta_action: rule.meta_action.clone(),
                });
            }
            let collision = activities.get(&rule.meta_action.to_lowercase()).filter(|_| !meta_empty);
            if let Some(&(activity_rule, activity)) = collision {
                violations.push(Violation::MetaActionIsActivity {
                    meta_action: rule.meta_action.clone(),
                    rule: idx,
                    activity: activity.to_string(),
                    activity_rule,
                });
            }
            match first_seen.get(rule) {
                Some(&first) => violations.push(Violation::DuplicateRule {
                    rule: idx,
                    first,
                    meta_action: rule.meta_action.clone(),
                }),
                None => {
                    first_seen.insert(rule, idx);
                }
            }
        }
        violations
    }

    /// Parses the JSON dictionary format
    /// `{"name", "version", "rules": [{"meta", "pattern": [..]}]}`.
    pub fn from_json(text: &str, context: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct File {
            name: String,
            version: String,
            rules: Vec<DictionaryRule>,
        }
        let file: File = serde_json::from_str(text).map_err(|e| Error::json(context, &e))?;
        ActivityDictionary::new(file.name, file.version, file.rules)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("dictionary serialization is infallible");
        out.push('\n');
        out
    }
}

pub fn load_dictionary(path: &Path) -> Result<ActivityDictionary> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    ActivityDictionary::from_json(&text, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_preserves_order() {
        let dict = builtin_dictionary();
        let back = ActivityDictionary::from_json(&dict.to_json(), "mem").unwrap();
        assert_eq!(back, dict);
    }

    #[test]
    fn empty_pattern_is_rejected() {
        let text = r#"{"name":"d","version":"1","rules":[{"meta":"M","pattern":[]}]}"#;
        let err = ActivityDictionary::from_json(text, "d.json").unwrap_err();
        match err {
            Error::InvalidDictionary(v) => {
                assert_eq!(
                    v,
                    [Violation::EmptyPattern {
                        rule: 0,
                        meta_action: "M".into()
                    }]
                )
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn meta_action_colliding_with_activity_names_both() {
        let text = r#"{"name":"d","version":"1","rules":[
            {"meta":"Click","pattern":["NClick"]},
            {"meta":"Tap","pattern":["click"]}
        ]}"#;
        let err = ActivityDictionary::from_json(text, "d.json").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("\"Click\""), "{msg}");
        assert!(msg.contains("\"click\""), "{msg}");
    }

    #[test]
    fn every_violation_is_listed() {
        let dict = ActivityDictionary::new(
            "d",
            "1",
            vec![
                DictionaryRule::new("", ["A"]),
                DictionaryRule::new("M", [""]),
                DictionaryRule::new("N", ["B"]),
                DictionaryRule::new("N", ["B"]),
            ],
        );
        match dict.unwrap_err() {
            Error::InvalidDictionary(v) => {
                assert_eq!(v.len(), 3);
                assert!(matches!(v[2], Violation::DuplicateRule { rule: 3, first: 2, .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_error_has_position() {
        let err = ActivityDictionary::from_json("{\n  \"name\": 1", "d.json").unwrap_err();
        match err {
            Error::Json { line, context, .. } => {
                assert_eq!(line, 2);
                assert_eq!(context, "d.json");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"name":"d","version":"1","rules":[],"extra":true}"#;
        assert!(ActivityDictionary::from_json(text, "d").is_err());
    }
}
