use std::fmt;

use crate::Element;

/// Offending data attached to a failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Counterexample {
    Elements(Vec<Element>),
    Text(String),
}

impl Counterexample {
    pub fn render(&self, labels: &[String]) -> String {
        match self {
            Counterexample::Elements(es) => {
                let parts: Vec<&str> = es
                    .iter()
                    .map(|&e| labels.get(e).map(String::as_str).unwrap_or("?"))
                    .collect();
                format!("({})", parts.join(", "))
            }
            Counterexample::Text(t) => t.clone(),
        }
    }
}

/// One named check: passes iff it carries no counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub counterexample: Option<Counterexample>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            counterexample: None,
        }
    }

    pub fn fail(name: impl Into<String>, cx: Counterexample) -> Self {
        Check {
            name: name.into(),
            counterexample: Some(cx),
        }
    }

    pub fn from_elements(name: impl Into<String>, cx: Option<Vec<Element>>) -> Self {
        Check {
            name: name.into(),
            counterexample: cx.map(Counterexample::Elements),
        }
    }

    pub fn expect(name: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) -> Self {
        if ok {
            Check::pass(name)
        } else {
            Check::fail(name, Counterexample::Text(detail()))
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Ordered list of checks; every axiom is evaluated even after a failure.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Appends `other` with every check name prefixed by `prefix: `.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        self.checks.extend(other.checks.into_iter().map(|mut c| {
            c.name = format!("{prefix}: {}", c.name);
            c
        }));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self, labels: &[String]) -> String {
        let mut out = String::new();
        for c in &self.checks {
            match &c.counterexample {
                None => out.push_str(&format!("[pass] {}\n", c.name)),
                Some(cx) => out.push_str(&format!("[fail] {}: {}\n", c.name, cx.render(labels))),
            }
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self
            .checks
            .iter()
            .filter_map(|c| match &c.counterexample {
                Some(Counterexample::Elements(es)) => es.iter().max().map(|m| m + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        f.write_str(&self.render(&crate::default_labels(n)))
    }
}
