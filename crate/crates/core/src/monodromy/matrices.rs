use rayon::prelude::*;

use super::word::{parse_word, Word};
use super::MonodromyError;
use crate::fixture::{projectively_equal, Mat3, MatrixFixture};
use crate::lattice_params::derived_params;
use crate::{ExtOrder, LatticeSpec};

pub const DEFAULT_ORDER_CAP: u32 = 1000;

/// Least `n ≤ cap` with `Mⁿ` a scalar matrix, or `∞`.
pub fn elliptic_order(m: &Mat3, tol: f64, cap: u32) -> ExtOrder {
    let id = Mat3::identity();
    let mut acc = *m;
    for n in 1..=cap {
        if projectively_equal(&acc, &id, tol) {
            return ExtOrder::int(n as i64);
        }
        acc *= m;
        acc /= num_complex::Complex64::from(acc.norm());
    }
    ExtOrder::Infinite
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    P,
    K,
    L,
    D,
}

impl Target {
    pub fn name(&self) -> &'static str {
        match self {
            Target::P => "p",
            Target::K => "k",
            Target::L => "l",
            Target::D => "d",
        }
    }
}

/// The ten words and the parameter giving their expected order.
pub const ORDER_TABLE: [(&str, Target); 10] = [
    ("R2", Target::P),
    ("R1 R2 R1^-1", Target::P),
    ("R1", Target::P),
    ("P^3", Target::D),
    ("A1", Target::K),
    ("R2 A1 R2^-1", Target::K),
    ("R1 R2 A1 R2^-1 R1^-1", Target::K),
    ("R2 R1 J", Target::L),
    ("R1 J R2", Target::L),
    ("J R2 R1", Target::L),
];

pub const MATRIX_NAMES: [&str; 4] = ["R1", "R2", "J", "A1"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordStatus {
    Pass,
    Fail { found: ExtOrder },
    Skipped(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordCheck {
    pub word: &'static str,
    pub target: Target,
    pub expected: ExtOrder,
    pub status: WordStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixReport {
    pub spec: LatticeSpec,
    pub checks: Vec<WordCheck>,
}

impl MatrixReport {
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| !matches!(c.status, WordStatus::Fail { .. }))
    }
}

pub fn target_orders(spec: &LatticeSpec) -> Result<[(Target, ExtOrder); 4], MonodromyError> {
    if !spec.is_three_fold() {
        return Err(MonodromyError::NotThreeFold(*spec));
    }
    let d = derived_params(spec);
    Ok([
        (Target::P, ExtOrder::int(spec.p())),
        (Target::K, ExtOrder::int(spec.k())),
        (Target::L, d.l()),
        (Target::D, d.d()),
    ])
}

pub fn verify_matrix_assignment(
    fx: &MatrixFixture,
    spec: &LatticeSpec,
) -> Result<MatrixReport, MonodromyError> {
    let targets = target_orders(spec)?;
    let expected = |t: Target| targets.iter().find(|(x, _)| *x == t).unwrap().1;
    let checks = ORDER_TABLE
        .par_iter()
        .map(|&(word, target)| {
            let e = expected(target);
            let status = if e.is_negative() {
                WordStatus::Skipped("collapsed")
            } else if e.is_infinite() {
                WordStatus::Skipped("cusp")
            } else if let Some(n) = e.as_integer() {
                let m = fx.eval_str(word)?;
                let found = elliptic_order(&m, fx.tolerance, DEFAULT_ORDER_CAP.max(n as u32));
                if found == e {
                    WordStatus::Pass
                } else {
                    WordStatus::Fail { found }
                }
            } else {
                WordStatus::Skipped("non-integral")
            };
            Ok(WordCheck {
                word,
                target,
                expected: e,
                status,
            })
        })
        .collect::<Result<Vec<_>, MonodromyError>>()?;
    Ok(MatrixReport {
        spec: *spec,
        checks,
    })
}

/// The ten words in the free group on `R1, R2, J, A1`, with `P = R1 R2`.
pub fn symbolic_words() -> Vec<(Word, Target)> {
    ORDER_TABLE
        .iter()
        .map(|(w, t)| {
            let w = w.replace("P", "R1 R2");
            (
                parse_word(&w, &MATRIX_NAMES).expect("table words parse"),
                *t,
            )
        })
        .collect()
}

/// Pairs of words sharing a target that are conjugate in the free group.
pub fn conjugate_pairs() -> Vec<(usize, usize)> {
    let words = symbolic_words();
    let mut out = Vec::new();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            if words[i].1 == words[j].1 && words[i].0.is_conjugate(&words[j].0) {
                out.push((i, j));
            }
        }
    }
    out
}
