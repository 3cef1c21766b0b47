//! Matrix fixtures: named 3×3 complex generator matrices read from JSON, and
//! evaluation of words in them up to scalars.

use std::collections::BTreeMap;

use nalgebra::Matrix3;
use num_complex::Complex64;
use serde_json::Value;
use thiserror::Error;

pub type Mat3 = Matrix3<Complex64>;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FixtureError {
    #[error("fixture is not valid JSON: {0}")]
    Json(String),
    #[error("fixture entry `{0}`: {1}")]
    Malformed(String, String),
    #[error("generator `{0}` is singular")]
    Singular(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("cannot parse word `{word}` at byte {at}")]
    WordSyntax { word: String, at: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFixture {
    pub generators: BTreeMap<String, Mat3>,
    pub tolerance: f64,
}

fn parse_matrix(name: &str, v: &Value) -> Result<Mat3, FixtureError> {
    let bad = |m: &str| FixtureError::Malformed(name.to_string(), m.to_string());
    let rows = v
        .as_array()
        .filter(|r| r.len() == 3)
        .ok_or_else(|| bad("expected 3 rows"))?;
    let mut m = Mat3::zeros();
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|r| r.len() == 3)
            .ok_or_else(|| bad("expected 3 columns"))?;
        for (j, entry) in row.iter().enumerate() {
            let pair = entry
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| bad("entries are [re, im] pairs"))?;
            let re = pair[0].as_f64().ok_or_else(|| bad("non-numeric entry"))?;
            let im = pair[1].as_f64().ok_or_else(|| bad("non-numeric entry"))?;
            m[(i, j)] = Complex64::new(re, im);
        }
    }
    Ok(m)
}

impl MatrixFixture {
    pub fn new(generators: BTreeMap<String, Mat3>, tolerance: f64) -> Result<Self, FixtureError> {
        for (name, m) in &generators {
            if m.determinant().norm() <= tolerance {
                return Err(FixtureError::Singular(name.clone()));
            }
        }
        Ok(MatrixFixture {
            generators,
            tolerance,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, FixtureError> {
        let v: Value = serde_json::from_str(text).map_err(|e| FixtureError::Json(e.to_string()))?;
        let obj = v
            .as_object()
            .ok_or_else(|| FixtureError::Malformed("<root>".into(), "expected an object".into()))?;
        let mut tolerance = DEFAULT_TOLERANCE;
        let mut generators = BTreeMap::new();
        for (k, val) in obj {
            if k == "tolerance" {
                tolerance = val.as_f64().filter(|t| *t > 0.0).ok_or_else(|| {
                    FixtureError::Malformed(k.clone(), "must be a positive number".into())
                })?;
            } else {
                generators.insert(k.clone(), parse_matrix(k, val)?);
            }
        }
        Self::new(generators, tolerance)
    }

    pub fn to_json(&self) -> String {
        let mut obj = serde_json::Map::new();
        obj.insert("tolerance".into(), self.tolerance.into());
        for (name, m) in &self.generators {
            let rows: Vec<Value> = (0..3)
                .map(|i| {
                    (0..3)
                        .map(|j| serde_json::json!([m[(i, j)].re, m[(i, j)].im]))
                        .collect()
                })
                .collect();
            obj.insert(name.clone(), Value::Array(rows));
        }
        serde_json::to_string_pretty(&Value::Object(obj)).unwrap()
    }

    /// Generator by name; `P` falls back to `R1·R2` when not supplied.
    pub fn generator(&self, name: &str) -> Result<Mat3, FixtureError> {
        if let Some(m) = self.generators.get(name) {
            return Ok(*m);
        }
        if name == "P" {
            if let (Some(r1), Some(r2)) = (self.generators.get("R1"), self.generators.get("R2")) {
                return Ok(r1 * r2);
            }
        }
        Err(FixtureError::UnknownGenerator(name.to_string()))
    }

    pub fn eval(&self, word: &MatrixWord) -> Result<Mat3, FixtureError> {
        let mut acc = Mat3::identity();
        for (name, e) in &word.letters {
            let g = self.generator(name)?;
            let g = if *e < 0 {
                g.try_inverse()
                    .ok_or_else(|| FixtureError::Singular(name.clone()))?
            } else {
                g
            };
            for _ in 0..e.unsigned_abs() {
                acc *= g;
            }
        }
        Ok(acc)
    }

    pub fn eval_str(&self, word: &str) -> Result<Mat3, FixtureError> {
        self.eval(&MatrixWord::parse(word)?)
    }
}

/// A product of named generators with integer exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixWord {
    pub letters: Vec<(String, i32)>,
}

fn subscript_digit(c: char) -> Option<char> {
    let n = (c as u32).checked_sub('₀' as u32)?;
    (n < 10).then(|| char::from_digit(n, 10).unwrap())
}

fn superscript_value(c: char) -> Option<i32> {
    match c {
        '⁰' => Some(0),
        '¹' => Some(1),
        '²' => Some(2),
        '³' => Some(3),
        '⁴'..='⁹' => Some(c as i32 - '⁴' as i32 + 4),
        _ => None,
    }
}

impl MatrixWord {
    /// Accepts `R1R2`, `R0·B2·R0⁻¹`, `R1 * R2^-1`, `P^3`, `A_1^{-1}`, `R₁`
    /// and similar spellings. A name is one letter followed by digits.
    pub fn parse(word: &str) -> Result<Self, FixtureError> {
        let chars: Vec<(usize, char)> = word.char_indices().collect();
        let err = |i: usize| FixtureError::WordSyntax {
            word: word.to_string(),
            at: chars.get(i).map_or(word.len(), |c| c.0),
        };
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i].1;
            if c.is_whitespace() || matches!(c, '·' | '*' | '.' | '⋅') {
                i += 1;
                continue;
            }
            if !c.is_alphabetic() {
                return Err(err(i));
            }
            let mut name = c.to_string();
            i += 1;
            if i < chars.len() && chars[i].1 == '_' {
                i += 1;
            }
            while i < chars.len() {
                let d = chars[i].1;
                if d.is_ascii_digit() {
                    name.push(d);
                } else if let Some(d) = subscript_digit(d) {
                    name.push(d);
                } else {
                    break;
                }
                i += 1;
            }
            let mut exp = 1i32;
            if i < chars.len() && chars[i].1 == '^' {
                i += 1;
                let braced = i < chars.len() && chars[i].1 == '{';
                if braced {
                    i += 1;
                }
                let start = i;
                if i < chars.len() && matches!(chars[i].1, '-' | '+') {
                    i += 1;
                }
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().map(|c| c.1).collect();
                exp = text.parse().map_err(|_| err(start))?;
                if braced {
                    if i < chars.len() && chars[i].1 == '}' {
                        i += 1;
                    } else {
                        return Err(err(i));
                    }
                }
            } else if i < chars.len()
                && (chars[i].1 == '⁻' || superscript_value(chars[i].1).is_some())
            {
                let neg = chars[i].1 == '⁻';
                if neg {
                    i += 1;
                }
                let mut v = 0i32;
                let start = i;
                while i < chars.len() {
                    match superscript_value(chars[i].1) {
                        Some(d) => v = v * 10 + d,
                        None => break,
                    }
                    i += 1;
                }
                if i == start {
                    return Err(err(i));
                }
                exp = if neg { -v } else { v };
            }
            letters.push((name, exp));
        }
        Ok(MatrixWord { letters })
    }
}

fn frob(a: &Mat3, b: &Mat3) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Distance between the lines spanned by `a` and `b` in matrix space:
/// `‖â − λ b̂‖` with unit-norm representatives and the optimal scalar `λ`.
pub fn projective_distance(a: &Mat3, b: &Mat3) -> f64 {
    let an = a / Complex64::from(a.norm());
    let bn = b / Complex64::from(b.norm());
    let lambda = frob(&bn, &an) / frob(&bn, &bn);
    (an - bn * lambda).norm()
}

pub fn projectively_equal(a: &Mat3, b: &Mat3, tol: f64) -> bool {
    projective_distance(a, b) < tol
}

pub fn verify_word_identity(
    fx: &MatrixFixture,
    lhs: &str,
    rhs: &str,
) -> Result<bool, FixtureError> {
    let a = fx.eval_str(lhs)?;
    let b = fx.eval_str(rhs)?;
    Ok(projectively_equal(&a, &b, fx.tolerance))
}

pub fn diag(a: Complex64, b: Complex64, c: Complex64) -> Mat3 {
    Mat3::from_diagonal(&nalgebra::Vector3::new(a, b, c))
}

/// `e^{2πi/n}`.
pub fn root_of_unity(n: u32) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU / n as f64)
}
