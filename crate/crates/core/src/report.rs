//! Condition reports: one verdict per checked identity, with a witness for
//! every failure.

use std::fmt::Write as _;

use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    NotChecked,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::NotChecked => "SKIP",
        }
    }
}

/// Whether a verdict counts toward the summary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Required,
    /// Recorded for information only (e.g. `dim H^L = dim H^R`).
    Observational,
}

/// One argument of a witness tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WitnessArg {
    /// Variable name in the identity (`h`, `k`, `l`, `a`, ...).
    pub role: String,
    /// Index token: a basis index (`5`) or a sub-basis reference (`HL0`).
    pub token: String,
    /// Human-readable element.
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub args: Vec<WitnessArg>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

impl Witness {
    pub fn indices(&self) -> String {
        self.args
            .iter()
            .map(|a| format!("{}:{}", a.role, a.token))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn describe(&self) -> String {
        let args: Vec<String> = self
            .args
            .iter()
            .map(|a| format!("{} = {}", a.role, a.label))
            .collect();
        format!(
            "{}; lhs = {}, rhs = {}",
            if args.is_empty() { "(no arguments)".to_string() } else { args.join(", ") },
            fmt_coords(&self.lhs),
            fmt_coords(&self.rhs)
        )
    }
}

/// Dense `(a,b,...)` for short vectors, `{i:a, ...}` (nonzero entries only)
/// for long ones.
fn fmt_coords(v: &[Scalar]) -> String {
    if v.len() <= 16 {
        let inner: Vec<String> = v.iter().map(|c| c.to_string()).collect();
        return format!("({})", inner.join(","));
    }
    let inner: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("{i}:{c}"))
        .collect();
    format!("{{{}}}", inner.join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConditionEntry {
    pub id: String,
    pub verdict: Verdict,
    pub kind: Kind,
    /// Number of tuples evaluated.
    pub checked: usize,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

impl ConditionEntry {
    pub fn pass(id: impl Into<String>, checked: usize) -> Self {
        ConditionEntry {
            id: id.into(),
            verdict: Verdict::Pass,
            kind: Kind::Required,
            checked,
            witness: None,
            note: None,
        }
    }

    pub fn fail(id: impl Into<String>, checked: usize, witness: Witness) -> Self {
        ConditionEntry {
            id: id.into(),
            verdict: Verdict::Fail,
            kind: Kind::Required,
            checked,
            witness: Some(witness),
            note: None,
        }
    }

    pub fn not_checked(id: impl Into<String>, note: impl Into<String>) -> Self {
        ConditionEntry {
            id: id.into(),
            verdict: Verdict::NotChecked,
            kind: Kind::Required,
            checked: 0,
            witness: None,
            note: Some(note.into()),
        }
    }

    pub fn flag(id: impl Into<String>, ok: bool, note: impl Into<String>) -> Self {
        ConditionEntry {
            id: id.into(),
            verdict: Verdict::from_bool(ok),
            kind: Kind::Required,
            checked: 1,
            witness: None,
            note: Some(note.into()),
        }
    }

    pub fn observational(mut self) -> Self {
        self.kind = Kind::Observational;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Ordered list of verdicts; each id appears at most once.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ConditionReport {
    entries: Vec<ConditionEntry>,
}

impl ConditionReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends an entry, replacing an earlier entry with the same id.
    pub fn push(&mut self, entry: ConditionEntry) {
        if let Some(old) = self.entries.iter_mut().find(|e| e.id == entry.id) {
            *old = entry;
        } else {
            self.entries.push(entry);
        }
    }

    pub fn extend(&mut self, other: ConditionReport) {
        for e in other.entries {
            self.push(e);
        }
    }

    pub fn entries(&self) -> &[ConditionEntry] {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Option<&ConditionEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn verdict(&self, id: &str) -> Option<Verdict> {
        self.get(id).map(|e| e.verdict)
    }

    pub fn passed(&self, id: &str) -> bool {
        self.verdict(id) == Some(Verdict::Pass)
    }

    /// True when every listed id is present and passes.
    pub fn all_pass(&self, ids: &[&str]) -> bool {
        ids.iter().all(|id| self.passed(id))
    }

    /// True when no required entry fails.
    pub fn ok(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.kind == Kind::Observational || e.verdict != Verdict::Fail)
    }

    pub fn failed_ids(&self) -> Vec<String> {
        self.entries
            .iter()
            .filter(|e| e.kind == Kind::Required && e.verdict == Verdict::Fail)
            .map(|e| e.id.clone())
            .collect()
    }

    /// Line-oriented records: `COND <id> PASS|FAIL|SKIP [witness=<indices>]`.
    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let _ = write!(out, "COND {} {}", e.id, e.verdict.as_str());
            if let Some(w) = &e.witness {
                let _ = write!(out, " witness={}", w.indices());
            }
            out.push('\n');
        }
        out
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let width = self.entries.iter().map(|e| e.id.len()).max().unwrap_or(0);
        for e in &self.entries {
            let tag = match (e.verdict, e.kind) {
                (v, Kind::Required) => v.as_str().to_string(),
                (v, Kind::Observational) => format!("{} (observational)", v.as_str()),
            };
            let _ = write!(out, "  [{:<width$}] {tag}", e.id, width = width);
            if e.checked > 1 {
                let _ = write!(out, "  ({} cases)", e.checked);
            }
            if let Some(n) = &e.note {
                let _ = write!(out, "  -- {n}");
            }
            out.push('\n');
            if let Some(w) = &e.witness {
                let _ = writeln!(out, "      witness [{}]: {}", w.indices(), w.describe());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    #[test]
    fn machine_lines_are_stable() {
        let f = Field::Rational;
        let mut r = ConditionReport::new();
        r.push(ConditionEntry::pass("1", 8));
        r.push(ConditionEntry::fail(
            "10",
            16,
            Witness {
                args: vec![
                    WitnessArg { role: "h".into(), token: "5".into(), label: "G".into() },
                    WitnessArg { role: "l".into(), token: "HL0".into(), label: "l".into() },
                ],
                lhs: vec![f.one(), f.zero()],
                rhs: vec![f.zero(), f.zero()],
            },
        ));
        r.push(ConditionEntry::not_checked("13", "no cocycle"));
        assert_eq!(
            r.render_machine(),
            "COND 1 PASS\nCOND 10 FAIL witness=h:5,l:HL0\nCOND 13 SKIP\n"
        );
        assert!(!r.ok());
        assert_eq!(r.failed_ids(), vec!["10".to_string()]);
    }

    #[test]
    fn observational_failures_do_not_count() {
        let mut r = ConditionReport::new();
        r.push(ConditionEntry::flag("dim", false, "x").observational());
        assert!(r.ok());
    }

    #[test]
    fn push_replaces_same_id() {
        let mut r = ConditionReport::new();
        r.push(ConditionEntry::flag("x", false, ""));
        r.push(ConditionEntry::pass("x", 1));
        assert_eq!(r.entries().len(), 1);
        assert!(r.passed("x"));
    }
}
