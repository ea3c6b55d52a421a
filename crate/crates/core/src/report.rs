use std::fmt;

use serde::Serialize;

/// Outcome of a law check: empty means the law holds.
///
/// Every violation carries enough data to replay the failure through the
/// operation that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report<V> {
    pub violations: Vec<V>,
}

impl<V> Report<V> {
    pub fn ok() -> Self {
        Report {
            violations: Vec::new(),
        }
    }

    pub fn from_violations(violations: Vec<V>) -> Self {
        Report { violations }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: V) {
        self.violations.push(v);
    }

    pub fn first(&self) -> Option<&V> {
        self.violations.first()
    }

    pub fn map<W>(self, f: impl FnMut(V) -> W) -> Report<W> {
        Report {
            violations: self.violations.into_iter().map(f).collect(),
        }
    }

    pub fn extend(&mut self, other: Report<V>) {
        self.violations.extend(other.violations);
    }
}

impl<V> Default for Report<V> {
    fn default() -> Self {
        Report::ok()
    }
}

impl<V: fmt::Display> fmt::Display for Report<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
