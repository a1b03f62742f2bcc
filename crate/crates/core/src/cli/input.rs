//! JSON input documents. Complex numbers are `[re, im]` pairs throughout.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::{CMat2, CMat4, Complex};
use crate::structured::{from_reciprocal, normalize_block, BlockForm, ReciprocalForm, SpecialForm};

/// One matrix, in any of the accepted parametrizations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "lowercase")]
pub enum MatrixSpec {
    Raw { matrix: CMat4 },
    Block { alpha: Complex, beta: Complex, c: CMat2, d: CMat2 },
    Special { u: f64, v: f64, b1: Complex, b2: Complex, b: f64 },
    Reciprocal { a1: f64, a2: f64, a3: f64 },
}

/// A parsed matrix together with every structured view that applies to it.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub spec: MatrixSpec,
    pub matrix: CMat4,
    /// `None` for raw matrices whose diagonal blocks are not scalar.
    pub block: Option<BlockForm>,
    pub special: Option<SpecialForm>,
    pub reciprocal: Option<ReciprocalForm>,
    /// Why `block` is absent.
    pub block_error: Option<Error>,
}

impl MatrixSpec {
    pub fn form(&self) -> &'static str {
        match self {
            MatrixSpec::Raw { .. } => "raw",
            MatrixSpec::Block { .. } => "block",
            MatrixSpec::Special { .. } => "special",
            MatrixSpec::Reciprocal { .. } => "reciprocal",
        }
    }

    pub fn resolve(&self) -> Result<Resolved, Error> {
        let (matrix, block, special, reciprocal, block_error) = match *self {
            MatrixSpec::Raw { matrix } => {
                if !matrix.is_finite() {
                    return Err(Error::NonFinite);
                }
                match BlockForm::from_matrix(&matrix) {
                    Ok(bf) => (matrix, Some(bf), None, None, None),
                    Err(e) => (matrix, None, None, None, Some(e)),
                }
            }
            MatrixSpec::Block { alpha, beta, c, d } => {
                if !(alpha.is_finite() && beta.is_finite() && c.is_finite() && d.is_finite()) {
                    return Err(Error::NonFinite);
                }
                let bf = normalize_block(alpha, beta, c, d);
                (bf.assemble(), Some(bf), None, None, None)
            }
            MatrixSpec::Special { u, v, b1, b2, b } => {
                if ![u, v, b, b1.re, b1.im, b2.re, b2.im].iter().all(|x| x.is_finite()) {
                    return Err(Error::NonFinite);
                }
                let sf = SpecialForm::new(u, v, b1, b2, b.abs());
                (sf.matrix(), Some(sf.to_block_form()), Some(sf), None, None)
            }
            MatrixSpec::Reciprocal { a1, a2, a3 } => {
                let r = ReciprocalForm::new(a1, a2, a3)?;
                (r.matrix(), Some(from_reciprocal(&r)?), None, Some(r), None)
            }
        };
        Ok(Resolved { spec: self.clone(), matrix, block, special, reciprocal, block_error })
    }
}

#[derive(Deserialize)]
struct Tag {
    form: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    #[allow(dead_code)]
    form: String,
    matrix: CMat4,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockDoc {
    #[allow(dead_code)]
    form: String,
    alpha: Complex,
    beta: Complex,
    c: CMat2,
    d: CMat2,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecialDoc {
    #[allow(dead_code)]
    form: String,
    u: f64,
    v: f64,
    b1: Complex,
    b2: Complex,
    b: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ReciprocalDoc {
    #[allow(dead_code)]
    form: String,
    a1: f64,
    a2: f64,
    a3: f64,
}

/// `(line, column)` of byte `offset` in `text`, both 1-based.
fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(offset, |k| offset - k - 1) + 1;
    (line, col)
}

/// Error message with the position translated from `item` (a slice of
/// `whole`) to `whole`. Tagged-enum decoding would lose the position, so each
/// item is decoded by its own form-specific struct straight from its text.
fn located(e: serde_json::Error, item: &str, whole: &str) -> String {
    let msg = e.to_string();
    let msg = msg.split(" at line ").next().unwrap_or(&msg).to_string();
    if e.line() == 0 {
        return msg;
    }
    let start = item.as_ptr() as usize - whole.as_ptr() as usize;
    let (l0, c0) = position(whole, start);
    let (line, col) = if e.line() == 1 { (l0, c0 + e.column() - 1) } else { (l0 + e.line() - 1, e.column()) };
    format!("{msg} at line {line} column {col}")
}

fn parse_item(item: &str, whole: &str) -> Result<MatrixSpec, String> {
    let loc = |e| located(e, item, whole);
    let tag: Tag = serde_json::from_str(item).map_err(loc)?;
    match tag.form.as_str() {
        "raw" => serde_json::from_str::<RawDoc>(item).map(|d| MatrixSpec::Raw { matrix: d.matrix }),
        "block" => serde_json::from_str::<BlockDoc>(item)
            .map(|d| MatrixSpec::Block { alpha: d.alpha, beta: d.beta, c: d.c, d: d.d }),
        "special" => serde_json::from_str::<SpecialDoc>(item)
            .map(|d| MatrixSpec::Special { u: d.u, v: d.v, b1: d.b1, b2: d.b2, b: d.b }),
        "reciprocal" => serde_json::from_str::<ReciprocalDoc>(item)
            .map(|d| MatrixSpec::Reciprocal { a1: d.a1, a2: d.a2, a3: d.a3 }),
        other => {
            let (line, col) = position(whole, item.as_ptr() as usize - whole.as_ptr() as usize);
            return Err(format!(
                "unknown form `{other}`, expected one of raw, block, special, reciprocal (item at line {line} column {col})"
            ));
        }
    }
    .map_err(loc)
}

/// Parses a single document or a batch (a JSON array). Errors name the field
/// and the line/column in `text`; batch errors also give the item index.
pub fn parse_document(text: &str) -> Result<Vec<MatrixSpec>, String> {
    if text.trim_start().starts_with('[') {
        let items: Vec<&serde_json::value::RawValue> =
            serde_json::from_str(text).map_err(|e| located(e, text, text))?;
        items
            .iter()
            .enumerate()
            .map(|(k, raw)| parse_item(raw.get(), text).map_err(|e| format!("item {k}: {e}")))
            .collect()
    } else {
        parse_item(text, text).map(|s| vec![s])
    }
}

/// Parses `re,im` (or a bare real) as a complex number.
pub fn parse_complex(s: &str) -> Result<Complex, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex::real(num(re)?)),
        [re, im] => Ok(Complex::new(num(re)?, num(im)?)),
        _ => Err(format!("expected `re,im`, got `{s}`")),
    }
}
