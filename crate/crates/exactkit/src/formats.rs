//! The versioned JSON text format for objects.

use std::fs;
use std::path::Path;

use exactkit_core::closures::{check_exchange, ClosureSpace};
use exactkit_core::cmon::FinCommMonoid;
use exactkit_core::diagrams::Quiver;
use exactkit_core::linalg::Q;
use exactkit_core::monadcalc::{membership, parse_coeffs, Coeffs, MonadTag};
use exactkit_core::polynorm::PolyNormedSpace;
use exactkit_core::psets::{pset_map, FinPointedSet};
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Envelope {
    pub schema: u32,
    #[serde(flatten)]
    pub object: Object,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Object {
    /// Size counts the base point `0`.
    PointedSet { size: usize },
    PointedMap { dom: usize, cod: usize, table: Vec<usize> },
    CommMonoid { add: Vec<Vec<usize>> },
    /// Flats as element lists; the base point `0` lies in every flat.
    ClosureSpace {
        size: usize,
        flats: Vec<Vec<usize>>,
        #[serde(default, skip_deserializing)]
        matroid: bool,
    },
    NormedSpace { dim: usize, generators: Vec<Vec<String>> },
    Quiver { vertices: usize, arrows: Vec<(usize, usize)> },
    MonadElement {
        tag: String,
        t: Vec<String>,
        #[serde(default, skip_deserializing)]
        member: bool,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema {0}; expected {SCHEMA}")]
    Schema(u32),
    #[error("invalid object: {0}")]
    Invalid(String),
}

fn invalid(e: impl std::fmt::Display) -> FormatError {
    FormatError::Invalid(e.to_string())
}

pub fn read_envelope(text: &str) -> Result<Envelope, FormatError> {
    let env: Envelope = serde_json::from_str(text)?;
    if env.schema != SCHEMA {
        return Err(FormatError::Schema(env.schema));
    }
    Ok(env)
}

pub fn read_quiver(path: &Path) -> Result<Quiver, FormatError> {
    let text = fs::read_to_string(path).map_err(|e| FormatError::Io(path.display().to_string(), e))?;
    match read_envelope(&text)?.object {
        Object::Quiver { vertices, arrows } => Quiver::new(vertices, arrows).map_err(invalid),
        other => Err(invalid(format!("expected a quiver, found {}", kind(&other)))),
    }
}

fn kind(o: &Object) -> &'static str {
    match o {
        Object::PointedSet { .. } => "pointed-set",
        Object::PointedMap { .. } => "pointed-map",
        Object::CommMonoid { .. } => "comm-monoid",
        Object::ClosureSpace { .. } => "closure-space",
        Object::NormedSpace { .. } => "normed-space",
        Object::Quiver { .. } => "quiver",
        Object::MonadElement { .. } => "monad-element",
    }
}

fn rationals(v: &[String]) -> Result<Vec<Q>, FormatError> {
    v.iter()
        .map(|s| s.trim().parse::<Q>().map_err(|_| invalid(format!("not a rational: {s:?}"))))
        .collect()
}

/// Validates `o` and returns its canonical form.
pub fn canonicalize(o: Object) -> Result<Object, FormatError> {
    Ok(match o {
        Object::PointedSet { size } => {
            if size == 0 {
                return Err(invalid("a pointed set has at least its base point"));
            }
            Object::PointedSet { size }
        }
        Object::PointedMap { dom, cod, table } => {
            if dom == 0 || cod == 0 {
                return Err(invalid("a pointed set has at least its base point"));
            }
            pset_map(FinPointedSet::of_size(dom), FinPointedSet::of_size(cod), table.clone()).map_err(invalid)?;
            Object::PointedMap { dom, cod, table }
        }
        Object::CommMonoid { add } => {
            FinCommMonoid::new(add.clone()).map_err(invalid)?;
            Object::CommMonoid { add }
        }
        Object::ClosureSpace { size, flats, .. } => {
            if size == 0 || size > 16 {
                return Err(invalid("closure spaces have between 1 and 16 points"));
            }
            let mut masks = Vec::new();
            for flat in &flats {
                let mut m = 0;
                for &e in flat {
                    if e >= size {
                        return Err(invalid(format!("element {e} outside 0..{size}")));
                    }
                    m |= 1 << e;
                }
                masks.push(m);
            }
            let space = ClosureSpace::pointed(size, masks).map_err(invalid)?;
            let flats = space
                .flats
                .iter()
                .map(|&m| (0..size).filter(|&e| m >> e & 1 == 1).collect())
                .collect();
            Object::ClosureSpace {
                size,
                flats,
                matroid: check_exchange(&space),
            }
        }
        Object::NormedSpace { dim, generators } => {
            let gens = generators.iter().map(|g| rationals(g)).collect::<Result<Vec<_>, _>>()?;
            let space = PolyNormedSpace::from_generators(dim, &gens).map_err(invalid)?;
            Object::NormedSpace {
                dim,
                generators: space
                    .vertices()
                    .iter()
                    .map(|v| v.iter().map(|x| x.to_string()).collect())
                    .collect(),
            }
        }
        Object::Quiver { vertices, arrows } => {
            Quiver::new(vertices, arrows.clone()).map_err(invalid)?;
            Object::Quiver { vertices, arrows }
        }
        Object::MonadElement { tag, t, .. } => {
            let parsed = MonadTag::parse(&tag).map_err(invalid)?;
            let coeffs = parse_coeffs(&parsed, &t.join(",")).map_err(invalid)?;
            let member = membership(&parsed, &coeffs).map_err(invalid)?.member;
            let t = match coeffs {
                Coeffs::Rational(v) => v.iter().map(|x| x.to_string()).collect(),
                Coeffs::Finite(v) => v.iter().map(|x| x.to_string()).collect(),
            };
            Object::MonadElement { tag, t, member }
        }
    })
}

/// Canonical pretty JSON for a document.
pub fn format_document(text: &str) -> Result<String, FormatError> {
    let env = read_envelope(text)?;
    let out = Envelope {
        schema: SCHEMA,
        object: canonicalize(env.object)?,
    };
    Ok(serde_json::to_string_pretty(&out)? + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_is_reduced_to_vertices() {
        let doc = r#"{"schema":1,"kind":"normed-space","dim":1,"generators":[["1"],["-1"],["1/2"]]}"#;
        let out = format_document(doc).unwrap();
        assert!(out.contains("\"-1\"") && !out.contains("1/2"));
        assert_eq!(format_document(&out).unwrap(), out);
    }

    #[test]
    fn schema_is_checked() {
        let doc = r#"{"schema":2,"kind":"pointed-set","size":3}"#;
        assert!(matches!(format_document(doc), Err(FormatError::Schema(2))));
        assert!(format_document(r#"{"kind":"pointed-set","size":3}"#).is_err());
    }

    #[test]
    fn invalid_objects_rejected() {
        let bad_map = r#"{"schema":1,"kind":"pointed-map","dom":2,"cod":2,"table":[1,0]}"#;
        assert!(matches!(format_document(bad_map), Err(FormatError::Invalid(_))));
        let bad_monoid = r#"{"schema":1,"kind":"comm-monoid","add":[[0,1],[0,1]]}"#;
        assert!(format_document(bad_monoid).is_err());
    }

    #[test]
    fn monad_membership_is_reported() {
        let doc = r#"{"schema":1,"kind":"monad-element","tag":"zinf","t":["3/4","1/2"]}"#;
        assert!(format_document(doc).unwrap().contains("\"member\": false"));
        let doc = r#"{"schema":1,"kind":"closure-space","size":3,"flats":[[0],[0,1,2]]}"#;
        assert!(format_document(doc).unwrap().contains("\"matroid\": true"));
    }
}
