//! JSON formats for fields, codes, patterns, vectors and decoding outcomes.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::Pattern;
use crate::code::CodeSpec;
use crate::decoder::DecodeOutcome;
use crate::gf::{Automorphism, Elem, Field};
use crate::linalg::Mat;
use crate::skew::SkewPoly;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub m: u32,
    /// Hexadecimal bit vector, bit i the coefficient of x^i.
    pub modulus: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HJson {
    List(Vec<String>),
    /// (α, σ(α), .., σ^(|σ|-1)(α)).
    Normal { normal_from: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub field: FieldJson,
    #[serde(default = "one")]
    pub sigma_power: u32,
    pub h: HJson,
    #[serde(rename = "T")]
    pub t: Vec<i64>,
}

fn one() -> u32 {
    1
}

fn parse_hex(text: &str) -> Result<u64> {
    let digits = text
        .strip_prefix("0x")
        .or_else(|| text.strip_prefix("0X"))
        .ok_or_else(|| Error::Parse(text.into()))?;
    u64::from_str_radix(digits, 16).map_err(|_| Error::Parse(text.into()))
}

impl FieldJson {
    pub fn build(&self) -> Result<Arc<Field>> {
        Field::new(self.m, parse_hex(&self.modulus)?)
    }

    pub fn of(field: &Field) -> Self {
        FieldJson {
            m: field.m(),
            modulus: format!("0x{:X}", field.modulus()),
        }
    }
}

impl CodeJson {
    pub fn build(&self) -> Result<CodeSpec> {
        let field = self.field.build()?;
        let aut = Automorphism::new(field.clone(), self.sigma_power)?;
        let h = match &self.h {
            HJson::List(items) => vector_from_json(&field, items)?,
            HJson::Normal { normal_from } => {
                let alpha = field.parse(normal_from)?;
                (0..aut.order() as i64).map(|i| aut.apply(alpha, i)).collect()
            }
        };
        CodeSpec::new(aut, h, &self.t)
    }

    pub fn of(spec: &CodeSpec) -> Self {
        CodeJson {
            field: FieldJson::of(spec.field()),
            sigma_power: spec.aut().s(),
            h: HJson::List(vector_to_json(spec.field(), spec.h())),
            t: spec.t().iter().map(|&i| i as i64).collect(),
        }
    }
}

pub fn parse_code(text: &str) -> Result<CodeSpec> {
    serde_json::from_str::<CodeJson>(text)?.build()
}

pub fn parse_pattern(text: &str) -> Result<Pattern> {
    let p: Pattern = serde_json::from_str(text)?;
    p.validate()?;
    Ok(p)
}

pub fn read_code(path: &Path) -> Result<CodeSpec> {
    parse_code(&fs::read_to_string(path)?)
}

pub fn read_pattern(path: &Path) -> Result<Pattern> {
    parse_pattern(&fs::read_to_string(path)?)
}

pub fn read_vector(field: &Field, path: &Path) -> Result<Vec<Elem>> {
    let items: Vec<String> = serde_json::from_str(&fs::read_to_string(path)?)?;
    vector_from_json(field, &items)
}

pub fn vector_to_json(field: &Field, v: &[Elem]) -> Vec<String> {
    v.iter().map(|&x| field.format(x)).collect()
}

pub fn vector_from_json(field: &Field, items: &[String]) -> Result<Vec<Elem>> {
    items.iter().map(|s| field.parse(s)).collect()
}

pub fn matrix_to_json(m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| vector_to_json(m.field(), m.row(r))).collect()
}

pub fn skew_to_json(p: &SkewPoly) -> Value {
    let tw = p.twist();
    json!({
        "twist": {"s": tw.aut().s(), "t": tw.step()},
        "coeffs": vector_to_json(tw.field(), p.coeffs()),
    })
}

pub fn outcome_to_json(field: &Field, out: &DecodeOutcome) -> Value {
    match out {
        DecodeOutcome::Success(s) => json!({
            "status": "success",
            "nu": s.nu,
            "codeword": vector_to_json(field, &s.codeword),
            "error": vector_to_json(field, &s.error),
            "sfsr": vector_to_json(field, &s.sfsr),
            "eps": vector_to_json(field, &s.eps),
            "eta": s.eta.iter().map(|e| vector_to_json(field, e)).collect::<Vec<_>>(),
            "B": s.b.iter().map(matrix_to_json).collect::<Vec<_>>(),
        }),
        DecodeOutcome::Failure(f) => json!({
            "status": "failure",
            "kind": f.kind,
            "ell": f.ell,
            "kernel_dim": f.kernel_dim,
            "block": f.block,
        }),
    }
}
