//! Parameter algebra of the Deligne–Mostow lattices with 2- and 3-fold
//! symmetry: μ-vectors, the derived orders, the ten branched weights on the
//! blown-up quadrilateral, and an exact replay of the shipped ramification
//! table.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::arrangement::DivisorId;
use crate::data::{self, DataError, Dataset};
use crate::order::ExtOrder;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("cannot parse lattice `{0}` (expected `p,k` or `p,k,p'`)")]
    Syntax(String),
    #[error("lattice parameters must be positive, got `{0}`")]
    NonPositive(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LatticeSpec {
    ThreeFold { p: i64, k: i64 },
    TwoFold { p: i64, k: i64, pp: i64 },
}

impl LatticeSpec {
    pub fn three(p: i64, k: i64) -> Self {
        LatticeSpec::ThreeFold { p, k }
    }

    pub fn two(p: i64, k: i64, pp: i64) -> Self {
        LatticeSpec::TwoFold { p, k, pp }
    }

    pub fn p(&self) -> i64 {
        match *self {
            LatticeSpec::ThreeFold { p, .. } | LatticeSpec::TwoFold { p, .. } => p,
        }
    }

    pub fn k(&self) -> i64 {
        match *self {
            LatticeSpec::ThreeFold { k, .. } | LatticeSpec::TwoFold { k, .. } => k,
        }
    }

    pub fn is_three_fold(&self) -> bool {
        matches!(self, LatticeSpec::ThreeFold { .. })
    }

    /// Indices carrying equal μ by construction.
    pub fn equal_indices(&self) -> &'static [u8] {
        match self {
            LatticeSpec::ThreeFold { .. } => &[1, 2, 3],
            LatticeSpec::TwoFold { .. } => &[1, 2],
        }
    }

    /// Permutations of {0,1,2,3} generated by the equal-μ indices.
    pub fn symmetry_group(&self) -> Vec<[u8; 4]> {
        match self {
            LatticeSpec::ThreeFold { .. } => vec![
                [0, 1, 2, 3],
                [0, 2, 1, 3],
                [0, 3, 2, 1],
                [0, 1, 3, 2],
                [0, 2, 3, 1],
                [0, 3, 1, 2],
            ],
            LatticeSpec::TwoFold { .. } => vec![[0, 1, 2, 3], [0, 2, 1, 3]],
        }
    }

    /// Relabeling from canonical subscripts to the shipped table's columns.
    pub fn table_labeling(&self) -> [u8; 4] {
        match self {
            LatticeSpec::ThreeFold { .. } => IDENTITY,
            LatticeSpec::TwoFold { .. } => SIGMA_13,
        }
    }
}

pub const IDENTITY: [u8; 4] = [0, 1, 2, 3];
pub const SIGMA_13: [u8; 4] = [0, 3, 2, 1];

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeSpec::ThreeFold { p, k } => write!(f, "{p},{k}"),
            LatticeSpec::TwoFold { p, k, pp } => write!(f, "{p},{k},{pp}"),
        }
    }
}

impl FromStr for LatticeSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Result<Vec<i64>, _> = trimmed
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect();
        let parts = parts.map_err(|_| SpecError::Syntax(s.to_string()))?;
        if parts.iter().any(|&x| x <= 0) {
            return Err(SpecError::NonPositive(s.to_string()));
        }
        match parts[..] {
            [p, k] => Ok(LatticeSpec::three(p, k)),
            [p, k, pp] => Ok(LatticeSpec::two(p, k, pp)),
            _ => Err(SpecError::Syntax(s.to_string())),
        }
    }
}

fn r(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn inv(n: i64) -> Rational64 {
    Rational64::new(1, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MuVector {
    pub mu: [Rational64; 5],
    pub valid: bool,
}

impl MuVector {
    pub fn sum(&self) -> Rational64 {
        self.mu.iter().sum()
    }

    /// `μ_*`, the weight of the blown-up point.
    pub fn star(&self) -> Rational64 {
        self.mu[4]
    }
}

pub fn mu_from_spec(spec: &LatticeSpec) -> MuVector {
    let half = Rational64::new(1, 2);
    let mu = match *spec {
        LatticeSpec::ThreeFold { p, k } => {
            let m = half - inv(p);
            [half + inv(p) - inv(k), m, m, m, r(2) * inv(p) + inv(k)]
        }
        LatticeSpec::TwoFold { p, k, pp } => {
            let m = half - inv(pp);
            [
                half + inv(pp) - inv(k),
                m,
                m,
                half + inv(pp) - inv(p),
                inv(p) + inv(k),
            ]
        }
    };
    let valid = mu.iter().all(|m| m.is_positive() && *m < Rational64::one());
    MuVector { mu, valid }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivedParams {
    ThreeFold {
        l: ExtOrder,
        d: ExtOrder,
    },
    TwoFold {
        l: ExtOrder,
        kp: ExtOrder,
        lp: ExtOrder,
        d: ExtOrder,
    },
}

impl DerivedParams {
    pub fn l(&self) -> ExtOrder {
        match *self {
            DerivedParams::ThreeFold { l, .. } | DerivedParams::TwoFold { l, .. } => l,
        }
    }

    pub fn d(&self) -> ExtOrder {
        match *self {
            DerivedParams::ThreeFold { d, .. } | DerivedParams::TwoFold { d, .. } => d,
        }
    }
}

pub fn derived_params(spec: &LatticeSpec) -> DerivedParams {
    let half = Rational64::new(1, 2);
    let o = ExtOrder::from_reciprocal;
    match *spec {
        LatticeSpec::ThreeFold { p, k } => DerivedParams::ThreeFold {
            l: o(half - inv(p) - inv(k)),
            d: o(half - r(3) * inv(p)),
        },
        LatticeSpec::TwoFold { p, k, pp } => DerivedParams::TwoFold {
            l: o(half + inv(pp) - inv(p) - inv(k)),
            kp: o(inv(p) + inv(k) - r(2) * inv(pp)),
            lp: o(half - inv(pp) - inv(k)),
            d: o(half - inv(pp) - inv(p)),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightAssignment {
    pub branched: BTreeMap<DivisorId, ExtOrder>,
    pub reflection: BTreeMap<DivisorId, ExtOrder>,
    pub derived: DerivedParams,
}

impl WeightAssignment {
    pub fn branched(&self, d: DivisorId) -> ExtOrder {
        self.branched[&d]
    }

    pub fn reflection(&self, d: DivisorId) -> ExtOrder {
        self.reflection[&d]
    }
}

/// Branched weight of a divisor straight from the μ-vector.
pub fn weight_from_mu(mu: &MuVector, d: DivisorId) -> ExtOrder {
    let one = Rational64::one();
    match (d.line_indices(), d.point_index()) {
        (Some((a, b)), _) => ExtOrder::from_reciprocal(one - mu.mu[a as usize] - mu.mu[b as usize]),
        (_, Some(b)) => ExtOrder::from_reciprocal(one - mu.star() - mu.mu[b as usize]),
        _ => unreachable!(),
    }
}

pub fn weights_from_spec(spec: &LatticeSpec) -> WeightAssignment {
    let mu = mu_from_spec(spec);
    let eq = spec.equal_indices();
    let mut branched = BTreeMap::new();
    let mut reflection = BTreeMap::new();
    for d in DivisorId::ALL {
        let n = weight_from_mu(&mu, d);
        let swapped =
            matches!(d.line_indices(), Some((a, b)) if eq.contains(&a) && eq.contains(&b));
        branched.insert(d, n);
        reflection.insert(d, if swapped { n.doubled() } else { n });
    }
    WeightAssignment {
        branched,
        reflection,
        derived: derived_params(spec),
    }
}

/// Table column order.
pub const TABLE_COLUMNS: [DivisorId; 10] = [
    DivisorId::E0,
    DivisorId::E1,
    DivisorId::E2,
    DivisorId::E3,
    DivisorId::D01,
    DivisorId::D02,
    DivisorId::D03,
    DivisorId::D12,
    DivisorId::D23,
    DivisorId::D13,
];

pub fn column_name(d: DivisorId) -> String {
    match (d.line_indices(), d.point_index()) {
        (Some((a, b)), _) => format!("n{a}{b}"),
        (_, Some(b)) => format!("n*{b}"),
        _ => unreachable!(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub spec: LatticeSpec,
    pub weights: [ExtOrder; 10],
}

impl TableRow {
    pub fn entry(&self, column: DivisorId) -> ExtOrder {
        let i = TABLE_COLUMNS.iter().position(|c| *c == column).unwrap();
        self.weights[i]
    }
}

pub fn parse_table(text: &str) -> Result<Vec<TableRow>, DataError> {
    let file = Dataset::Table.file_name();
    let mut rows = Vec::new();
    for (line, rec) in data::records(text) {
        let fields: Vec<&str> = rec.split_whitespace().collect();
        if fields.len() != 12 {
            return Err(DataError::parse(
                file,
                line,
                format!("expected 12 fields, found {}", fields.len()),
            ));
        }
        let spec: LatticeSpec = fields[1]
            .parse()
            .map_err(|e: SpecError| DataError::parse(file, line, e.to_string()))?;
        let family_ok = match fields[0] {
            "3fold" => spec.is_three_fold(),
            "2fold" => !spec.is_three_fold(),
            other => {
                return Err(DataError::parse(
                    file,
                    line,
                    format!("unknown family `{other}`"),
                ))
            }
        };
        if !family_ok {
            return Err(DataError::parse(
                file,
                line,
                "family tag does not match parameter count",
            ));
        }
        let mut weights = [ExtOrder::Infinite; 10];
        for (w, f) in weights.iter_mut().zip(&fields[2..]) {
            *w = f.parse().map_err(|e: crate::order::OrderError| {
                DataError::parse(file, line, e.to_string())
            })?;
        }
        rows.push(TableRow { spec, weights });
    }
    Ok(rows)
}

pub fn load_table() -> Result<Vec<TableRow>, DataError> {
    parse_table(&data::load(Dataset::Table)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub column: DivisorId,
    pub expected: ExtOrder,
    pub computed: ExtOrder,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowReport {
    pub spec: LatticeSpec,
    pub permutation: [u8; 4],
    pub mismatches: Vec<Mismatch>,
    /// Blow-up points whose table entry disagrees with the value forced by
    /// the three incident line orders.
    pub blowup_mismatches: Vec<Mismatch>,
}

impl RowReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.blowup_mismatches.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub rows: Vec<RowReport>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(RowReport::passed)
    }

    pub fn pass_count(&self) -> usize {
        self.rows.iter().filter(|r| r.passed()).count()
    }
}

/// Compare computed weights with a row, reading table column `X` as the
/// canonical divisor `X.permute(perm)`.
pub fn compare_row(row: &TableRow, perm: &[u8; 4]) -> Vec<Mismatch> {
    let w = weights_from_spec(&row.spec);
    TABLE_COLUMNS
        .iter()
        .zip(row.weights)
        .filter_map(|(&column, expected)| {
            let computed = w.branched(column.permute(perm));
            (computed != expected).then_some(Mismatch {
                column,
                expected,
                computed,
            })
        })
        .collect()
}

/// Blow-up consistency of a row with itself.
pub fn blowup_roundtrip(row: &TableRow) -> Vec<Mismatch> {
    DivisorId::EXCEPTIONAL
        .iter()
        .filter_map(|&e| {
            let lines = e.incident_by_rule().map(|d| row.entry(d));
            let computed = blowup_weight(lines);
            let expected = row.entry(e);
            (computed != expected).then_some(Mismatch {
                column: e,
                expected,
                computed,
            })
        })
        .collect()
}

pub fn validate_row(row: &TableRow) -> RowReport {
    let permutation = row.spec.table_labeling();
    RowReport {
        spec: row.spec,
        permutation,
        mismatches: compare_row(row, &permutation),
        blowup_mismatches: blowup_roundtrip(row),
    }
}

pub fn validate_rows(rows: &[TableRow]) -> ValidationReport {
    ValidationReport {
        rows: rows.iter().map(validate_row).collect(),
    }
}

pub fn validate_rows_par(rows: &[TableRow]) -> ValidationReport {
    ValidationReport {
        rows: rows.par_iter().map(validate_row).collect(),
    }
}

pub fn validate_table() -> Result<ValidationReport, DataError> {
    Ok(validate_rows(&load_table()?))
}

pub fn all_permutations() -> Vec<[u8; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                for d in 0..4u8 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| p[i + 1..].iter().all(|x| *x != p[i])) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Every relabeling of subscripts under which the row is reproduced.
pub fn find_labelings(row: &TableRow) -> Vec<[u8; 4]> {
    all_permutations()
        .into_iter()
        .filter(|p| compare_row(row, p).is_empty())
        .collect()
}

/// The order `m` at a point where three lines of orders `n_i` meet, from
/// `2/m = 1 - Σ 1/n_i`.
pub fn blowup_weight(orders: [ExtOrder; 3]) -> ExtOrder {
    let rhs = Rational64::one() - orders.iter().map(ExtOrder::reciprocal).sum::<Rational64>();
    if rhs.is_zero() {
        ExtOrder::Infinite
    } else {
        ExtOrder::from_reciprocal(rhs / r(2))
    }
}
