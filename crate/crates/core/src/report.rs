//! Machine-readable `key=value` validation reports.

use std::fmt::Write;

/// Validators render their findings as ordered `key=value` lines.
pub trait KeyValueReport {
    fn entries(&self) -> Vec<(String, String)>;

    fn is_valid(&self) -> bool;

    fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.entries() {
            let _ = writeln!(out, "{k}={v}");
        }
        out
    }
}

/// Cap on recorded violation messages; the count is always exact.
pub(crate) const MAX_VIOLATIONS: usize = 16;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Violations {
    pub count: usize,
    pub messages: Vec<String>,
}

impl Violations {
    pub fn push(&mut self, msg: impl Into<String>) {
        self.count += 1;
        if self.messages.len() < MAX_VIOLATIONS {
            self.messages.push(msg.into());
        }
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub(crate) fn append_entries(&self, out: &mut Vec<(String, String)>) {
        out.push(("violations".into(), self.count.to_string()));
        for (i, msg) in self.messages.iter().enumerate() {
            out.push((format!("violation.{i}"), msg.clone()));
        }
    }
}

pub(crate) fn fmt_list<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}
