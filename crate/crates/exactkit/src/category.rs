//! Category names accepted on the command line.

use std::fmt;
use std::path::Path;

use exactkit_core::category::FiniteCategory;
use exactkit_core::closures::closure_category;
use exactkit_core::cmon::{cmon_category, semiring_module_category, FinSemiring};
use exactkit_core::diagrams::{gset_category, precrystal_category, quiver_rep_category, Quiver};
use exactkit_core::groups::groups_category;
use exactkit_core::psets::{pset_category, PointedMonoid};

use crate::formats;

#[derive(Debug, Clone)]
pub enum CategorySpec {
    Psets { strict: bool },
    GSet { monoid: PointedMonoid, label: String },
    Quiver { quiver: Quiver, label: String },
    PreCrystal { index: usize },
    Closure { matroids: bool },
    Cmon,
    Module { semiring: FinSemiring, label: String },
    Polynorm,
    Groups,
}

#[derive(Debug)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn pointed_monoid(spec: &str) -> Result<PointedMonoid, ParseError> {
    if spec == "trivial" {
        return Ok(PointedMonoid::trivial());
    }
    match spec.strip_prefix("mu").map(str::parse::<usize>) {
        Some(Ok(r)) if r >= 1 => Ok(PointedMonoid::mu(r)),
        _ => Err(ParseError(format!("unknown monoid {spec:?}; expected trivial or mu<r>"))),
    }
}

fn semiring(spec: &str) -> Result<FinSemiring, ParseError> {
    match spec.to_ascii_lowercase().as_str() {
        "b" | "boolean" => Ok(FinSemiring::boolean()),
        "f2" => Ok(FinSemiring::f2()),
        "trivial" => Ok(FinSemiring::trivial()),
        _ => Err(ParseError(format!("unknown semiring {spec:?}; expected B, F2 or trivial"))),
    }
}

impl CategorySpec {
    pub fn parse(name: &str) -> Result<Self, ParseError> {
        let (head, arg) = match name.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (name, None),
        };
        let spec = match (head, arg) {
            ("psets", None) => CategorySpec::Psets { strict: false },
            ("psets-strict", None) => CategorySpec::Psets { strict: true },
            ("gset", Some(m)) => CategorySpec::GSet {
                monoid: pointed_monoid(m)?,
                label: m.to_string(),
            },
            ("quiver", Some(path)) => {
                let quiver = formats::read_quiver(Path::new(path)).map_err(|e| ParseError(e.to_string()))?;
                CategorySpec::Quiver {
                    quiver,
                    label: path.to_string(),
                }
            }
            ("precrystal", None) => CategorySpec::PreCrystal { index: 1 },
            ("precrystal", Some(k)) => CategorySpec::PreCrystal {
                index: k.parse().map_err(|_| ParseError(format!("bad operator count {k:?}")))?,
            },
            ("closure", None) => CategorySpec::Closure { matroids: false },
            ("matroid", None) => CategorySpec::Closure { matroids: true },
            ("cmon", None) => CategorySpec::Cmon,
            ("mod", Some(s)) => CategorySpec::Module {
                semiring: semiring(s)?,
                label: s.to_string(),
            },
            ("polynorm", None) => CategorySpec::Polynorm,
            ("groups-demo", None) => CategorySpec::Groups,
            _ => return Err(ParseError(format!("unknown category {name:?}"))),
        };
        Ok(spec)
    }

    /// Runs `visitor` on the finite category, or returns `None` for
    /// categories without finite enumeration.
    pub fn visit<V: Visitor>(&self, visitor: V) -> Option<V::Out> {
        Some(match self {
            CategorySpec::Psets { strict } => visitor.visit(&pset_category(*strict)),
            CategorySpec::GSet { monoid, label } => visitor.visit(&gset_category(monoid, label)),
            CategorySpec::Quiver { quiver, label } => visitor.visit(&quiver_rep_category(quiver, label)),
            CategorySpec::PreCrystal { index } => visitor.visit(&precrystal_category(*index)),
            CategorySpec::Closure { matroids } => visitor.visit(&closure_category(*matroids)),
            CategorySpec::Cmon => visitor.visit(&cmon_category()),
            CategorySpec::Module { semiring, label } => visitor.visit(&semiring_module_category(semiring.clone(), label)),
            CategorySpec::Groups => visitor.visit(&groups_category()),
            CategorySpec::Polynorm => return None,
        })
    }
}

pub trait Visitor {
    type Out;
    fn visit<C: FiniteCategory>(self, cat: &C) -> Self::Out;
}
