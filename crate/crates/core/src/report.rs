//! Named pass/fail check results with witnesses.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// The first offending input of a failed check, with both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Basis multi-index of the offending input (meaning depends on the check).
    pub indices: Vec<usize>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl Witness {
    pub fn new(indices: Vec<usize>, lhs: &[Scalar], rhs: &[Scalar]) -> Witness {
        Witness {
            indices,
            lhs: lhs.iter().map(ToString::to_string).collect(),
            rhs: rhs.iter().map(ToString::to_string).collect(),
            note: String::new(),
        }
    }

    pub fn note(indices: Vec<usize>, note: impl Into<String>) -> Witness {
        Witness {
            indices,
            lhs: Vec::new(),
            rhs: Vec::new(),
            note: note.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckItem {
    pub fn pass(name: impl Into<String>) -> CheckItem {
        CheckItem {
            name: name.into(),
            passed: true,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: Witness) -> CheckItem {
        CheckItem {
            name: name.into(),
            passed: false,
            witness: Some(witness),
        }
    }

    /// Builds an item from the first failing witness, if any.
    pub fn from_witness(name: impl Into<String>, witness: Option<Witness>) -> CheckItem {
        match witness {
            None => CheckItem::pass(name),
            Some(w) => CheckItem::fail(name, w),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new(items: Vec<CheckItem>) -> CheckReport {
        CheckReport { items }
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn item(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.name == name)
    }

    pub fn passed(&self, name: &str) -> Option<bool> {
        self.item(name).map(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            write!(
                f,
                "{} {}",
                if item.passed { "PASS" } else { "FAIL" },
                item.name
            )?;
            if let Some(w) = &item.witness {
                write!(f, "  witness {:?}", w.indices)?;
                if !w.note.is_empty() {
                    write!(f, " ({})", w.note)?;
                }
                if !w.lhs.is_empty() || !w.rhs.is_empty() {
                    write!(f, "  lhs [{}] rhs [{}]", w.lhs.join(", "), w.rhs.join(", "))?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
