//! JSON input documents.
//!
//! ```json
//! {"unnormalized": [[2, 1], [3, -1], [7, -1]]}
//! {"normalized": {"b": -2, "pairs": [[2, 1], [2, 1], [2, 1]]}}
//! {"brieskorn": [2, 3, 7]}
//! ```
//!
//! Integers may be JSON numbers or decimal strings (for values beyond 64
//! bits). The shape is checked before any mathematical validation, and
//! shape errors name the offending field.

use num_bigint::BigInt;
use serde_json::Value;
use thiserror::Error;

use seifert_core::seifert::brieskorn;
use seifert_core::{normalize, SeifertData, UnnormalizedSeifert};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error(transparent)]
    Math(#[from] seifert_core::Error),
}

fn schema(path: &str, message: impl Into<String>) -> InputError {
    InputError::Schema { path: path.to_string(), message: message.into() }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Unnormalized(Vec<(BigInt, BigInt)>),
    Normalized { b: BigInt, pairs: Vec<(BigInt, BigInt)> },
    Brieskorn([BigInt; 3]),
}

fn integer(v: &Value, path: &str) -> Result<BigInt, InputError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(schema(path, format!("expected an integer, found {n}")))
            }
        }
        Value::String(s) => s.trim().parse().map_err(|_| schema(path, format!("expected an integer, found \"{s}\""))),
        other => Err(schema(path, format!("expected an integer, found {}", kind(other)))),
    }
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a [Value], InputError> {
    v.as_array().map(Vec::as_slice).ok_or_else(|| schema(path, format!("expected an array, found {}", kind(v))))
}

fn pairs(v: &Value, path: &str) -> Result<Vec<(BigInt, BigInt)>, InputError> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let here = format!("{path}[{i}]");
            match array(p, &here)? {
                [a, b] => Ok((integer(a, &format!("{here}[0]"))?, integer(b, &format!("{here}[1]"))?)),
                other => Err(schema(&here, format!("expected a pair, found {} entries", other.len()))),
            }
        })
        .collect()
}

pub fn parse_document(text: &str) -> Result<Document, InputError> {
    let root: Value = serde_json::from_str(text)?;
    let obj = root.as_object().ok_or_else(|| schema("$", format!("expected an object, found {}", kind(&root))))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "unnormalized" | "normalized" | "brieskorn") {
            return Err(schema(&format!("$.{key}"), "unknown field"));
        }
    }
    if obj.len() != 1 {
        return Err(schema("$", "expected exactly one of unnormalized, normalized, brieskorn"));
    }
    let (key, v) = obj.iter().next().expect("one entry");
    let path = format!("$.{key}");
    match key.as_str() {
        "unnormalized" => Ok(Document::Unnormalized(pairs(v, &path)?)),
        "normalized" => {
            let inner = v.as_object().ok_or_else(|| schema(&path, format!("expected an object, found {}", kind(v))))?;
            for k in inner.keys() {
                if k != "b" && k != "pairs" {
                    return Err(schema(&format!("{path}.{k}"), "unknown field"));
                }
            }
            let b = inner.get("b").ok_or_else(|| schema(&format!("{path}.b"), "missing"))?;
            let p = inner.get("pairs").ok_or_else(|| schema(&format!("{path}.pairs"), "missing"))?;
            Ok(Document::Normalized {
                b: integer(b, &format!("{path}.b"))?,
                pairs: pairs(p, &format!("{path}.pairs"))?,
            })
        }
        _ => match array(v, &path)? {
            [a, b, c] => Ok(Document::Brieskorn([
                integer(a, &format!("{path}[0]"))?,
                integer(b, &format!("{path}[1]"))?,
                integer(c, &format!("{path}[2]"))?,
            ])),
            other => Err(schema(&path, format!("expected three exponents, found {}", other.len()))),
        },
    }
}

impl Document {
    pub fn into_seifert(self) -> Result<SeifertData, InputError> {
        Ok(match self {
            Document::Unnormalized(p) => normalize(&UnnormalizedSeifert::new(p)?)?,
            Document::Normalized { b, pairs } => SeifertData::new(b, pairs)?,
            Document::Brieskorn([a1, a2, a3]) => normalize(&brieskorn(&a1, &a2, &a3)?)?,
        })
    }
}

pub fn parse_input(text: &str) -> Result<SeifertData, InputError> {
    parse_document(text)?.into_seifert()
}
