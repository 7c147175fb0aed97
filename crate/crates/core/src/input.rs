//! JSON input for a metaplectic datum, validated as a whole.
//!
//! ```json
//! {"rank": 1, "simple_coroots": [[1]], "simple_roots": [[2]], "B": [[2]], "n": 3, "q": 7}
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ArithError, PrimeField};
use crate::metalattice::{MetaError, MetaplecticDatum};
use crate::rootdata::{build_root_datum, BilinearForm, InvarianceError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumSpec {
    pub rank: usize,
    pub simple_coroots: Vec<Vec<i64>>,
    pub simple_roots: Vec<Vec<i64>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
    pub n: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
}

/// One failed constraint, named.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub constraint: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.constraint, self.detail)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),
}

impl InputError {
    pub fn violations(&self) -> &[Violation] {
        match self {
            InputError::Invalid(v) => v,
            _ => &[],
        }
    }
}

/// Parses and validates a datum.
pub fn parse_input(text: &str) -> Result<(DatumSpec, MetaplecticDatum), InputError> {
    let spec: DatumSpec = serde_json::from_str(text)
        .map_err(|e| InputError::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    let md = spec.validate()?;
    Ok((spec, md))
}

fn v(constraint: &'static str, detail: impl Into<String>) -> Violation {
    Violation { constraint, detail: detail.into() }
}

impl DatumSpec {
    /// Checks every cross-field constraint and reports all failures together.
    pub fn validate(&self) -> Result<MetaplecticDatum, InputError> {
        let mut out = Vec::new();
        let r = self.rank;
        if r == 0 {
            out.push(v("rank is positive", "rank = 0"));
        }
        if self.n < 1 {
            out.push(v("n is positive", format!("n = {}", self.n)));
        }
        let square = self.b.len() == r && self.b.iter().all(|row| row.len() == r);
        if !square {
            out.push(v("B is rank x rank", format!("B has {} rows for rank {r}", self.b.len())));
        } else {
            for i in 0..r {
                for j in i + 1..r {
                    if self.b[i][j] != self.b[j][i] {
                        out.push(v("B is symmetric", format!("B[{i}][{j}] = {} but B[{j}][{i}] = {}", self.b[i][j], self.b[j][i])));
                    }
                }
            }
        }
        if let Some(q) = self.q {
            match PrimeField::new(q) {
                Err(e) => out.push(v("q is a supported prime", e.to_string())),
                Ok(f) if self.n >= 1 => {
                    if let Err(ArithError::CoverDegree { q, n }) = f.check_cover_degree(self.n as u64) {
                        out.push(v("2n divides q-1", format!("{} ∤ {}", 2 * n, q - 1)));
                    }
                }
                Ok(_) => {}
            }
        }
        let root = match build_root_datum(r, self.simple_coroots.clone(), self.simple_roots.clone()) {
            Ok(root) => Some(root),
            Err(e) => {
                out.push(v("root datum axioms", e.to_string()));
                None
            }
        };
        if let (Some(root), true, true) = (root, out.is_empty(), square) {
            match MetaplecticDatum::new(root, BilinearForm::new(self.b.clone()), self.n) {
                Ok(md) => return Ok(md),
                Err(e) => out.push(match &e {
                    MetaError::Form(InvarianceError::NotInvariant { .. }) => v("B is Weyl-invariant", e.to_string()),
                    MetaError::Form(InvarianceError::QNotIntegral { .. }) => v("Q is integral on coroots", e.to_string()),
                    MetaError::DegenerateCoroot(..) => v("Q is positive on coroots", e.to_string()),
                    _ => v("metaplectic datum", e.to_string()),
                }),
            }
        }
        Err(InputError::Invalid(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_the_triple_cover() {
        let (spec, md) = parse_input(r#"{"rank": 1, "simple_coroots": [[1]], "simple_roots": [[2]], "B": [[2]], "n": 3, "q": 7}"#).unwrap();
        assert_eq!(spec.q, Some(7));
        assert_eq!(md.n_alphas(), &[3, 3]);
    }

    #[test]
    fn reports_every_violation() {
        let e = parse_input(r#"{"rank": 2, "simple_coroots": [[1,0],[0,1]], "simple_roots": [[2,-1],[-1,2]], "B": [[2,-1],[0,2]], "n": 3, "q": 11}"#)
            .unwrap_err();
        let names: Vec<_> = e.violations().iter().map(|v| v.constraint).collect();
        assert_eq!(names, ["B is symmetric", "2n divides q-1"]);
        assert_eq!(e.violations()[1].detail, "6 ∤ 10");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_input("{\n  \"rank\": 1,\n  \"n\": ,\n}").unwrap_err();
        assert!(matches!(e, InputError::Parse { line: 3, .. }), "{e:?}");
        let e = parse_input(r#"{"rank": 1, "simple_coroots": [[1]], "simple_roots": [[2]], "B": [[2]], "n": 3, "extra": 1}"#).unwrap_err();
        assert!(matches!(e, InputError::Parse { .. }));
    }

    #[test]
    fn invariance_and_integrality() {
        let e = parse_input(r#"{"rank": 2, "simple_coroots": [[1,0],[0,1]], "simple_roots": [[2,-1],[-1,2]], "B": [[2,0],[0,2]], "n": 2}"#).unwrap_err();
        assert_eq!(e.violations()[0].constraint, "B is Weyl-invariant");
        let e = parse_input(r#"{"rank": 1, "simple_coroots": [[1]], "simple_roots": [[2]], "B": [[3]], "n": 2}"#).unwrap_err();
        assert_eq!(e.violations()[0].constraint, "Q is integral on coroots");
    }
}
