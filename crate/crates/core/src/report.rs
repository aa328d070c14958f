use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Maximum number of witnesses retained per check.
pub const MAX_WITNESSES: usize = 16;

/// One axiom evaluated over a family of instances.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Check {
    pub axiom: String,
    pub checked: u64,
    pub violations: u64,
    pub witnesses: Vec<String>,
}

impl Check {
    pub fn new(axiom: impl Into<String>) -> Self {
        Check {
            axiom: axiom.into(),
            checked: 0,
            violations: 0,
            witnesses: Vec::new(),
        }
    }

    pub fn pass(&mut self) {
        self.checked += 1;
    }

    pub fn fail(&mut self, witness: impl FnOnce() -> String) {
        self.checked += 1;
        self.violations += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness());
        }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.pass()
        } else {
            self.fail(witness)
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// The outcome of an axiom suite. Checks appear in a fixed order so that the
/// rendered output is reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Report {
    pub category: String,
    pub checks: Vec<Check>,
    /// Free-form `key=value` facts (seeds, bounds, counts).
    pub notes: Vec<(String, String)>,
}

impl Report {
    pub fn new(category: impl Into<String>) -> Self {
        Report {
            category: category.into(),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.notes.push((key.into(), format!("{value}")));
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn violations(&self) -> u64 {
        self.checks.iter().map(|c| c.violations).sum()
    }

    pub fn checked(&self) -> u64 {
        self.checks.iter().map(|c| c.checked).sum()
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, axiom: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

/// Line-oriented rendering: `PASS|FAIL <category> <axiom> <witness?>`.
impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.notes {
            writeln!(f, "# {k}={v}")?;
        }
        for c in &self.checks {
            if c.passed() {
                writeln!(f, "PASS {} {} checked={}", self.category, c.axiom, c.checked)?;
            } else {
                writeln!(
                    f,
                    "FAIL {} {} violations={}/{}",
                    self.category, c.axiom, c.violations, c.checked
                )?;
                for w in &c.witnesses {
                    writeln!(f, "FAIL {} {} {}", self.category, c.axiom, w)?;
                }
            }
        }
        Ok(())
    }
}
