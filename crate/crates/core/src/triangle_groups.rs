//! Triangle groups stabilising divisors of the arrangement, and the
//! arithmetic classification they are looked up in.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::One;
use thiserror::Error;

use crate::arrangement::DivisorId;
use crate::data::{self, DataError, Dataset};
use crate::lattice_params::{weights_from_spec, LatticeSpec, WeightAssignment};
use crate::order::ExtOrder;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangleError {
    #[error(
        "invalid triangle signature ({0}, {1}, {2}): entries must be positive integers or inf"
    )]
    InvalidSignature(ExtOrder, ExtOrder, ExtOrder),
    #[error("signature {0} is not hyperbolic")]
    NotHyperbolic(TriangleSignature),
    #[error("{0} is not in the arithmetic classification")]
    Unclassified(TriangleSignature),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilizerError {
    #[error("{divisor} has order {order} and is blown down to a point")]
    CollapsedDivisor { divisor: DivisorId, order: ExtOrder },
    #[error("{divisor} has neighbour orders ({}, {}, {}) that name no triangle group", .entries[0], .entries[1], .entries[2])]
    Undefined {
        divisor: DivisorId,
        entries: [ExtOrder; 3],
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignatureFlag {
    Plain,
    Doubled,
    ExtendedSymmetry,
}

impl SignatureFlag {
    pub fn name(&self) -> &'static str {
        match self {
            SignatureFlag::Plain => "plain",
            SignatureFlag::Doubled => "doubled",
            SignatureFlag::ExtendedSymmetry => "extended-symmetry",
        }
    }
}

/// `Δ(a,b,c)` with entries sorted ascending, ∞ last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangleSignature {
    entries: [ExtOrder; 3],
    pub flag: SignatureFlag,
}

impl TriangleSignature {
    pub fn entries(&self) -> [ExtOrder; 3] {
        self.entries
    }

    pub fn with_flag(mut self, flag: SignatureFlag) -> Self {
        self.flag = flag;
        self
    }

    /// Same entries, ignoring the flag.
    pub fn same_group(&self, other: &TriangleSignature) -> bool {
        self.entries == other.entries
    }

    pub fn has_cusp(&self) -> bool {
        self.entries.iter().any(ExtOrder::is_infinite)
    }
}

impl fmt::Display for TriangleSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.entries;
        write!(f, "Δ({},{},{})", a.symbol(), b.symbol(), c.symbol())
    }
}

pub fn normalize(
    a: ExtOrder,
    b: ExtOrder,
    c: ExtOrder,
) -> Result<TriangleSignature, TriangleError> {
    if ![a, b, c].iter().all(ExtOrder::is_admissible_vertex) {
        return Err(TriangleError::InvalidSignature(a, b, c));
    }
    let mut entries = [a, b, c];
    entries.sort();
    Ok(TriangleSignature {
        entries,
        flag: SignatureFlag::Plain,
    })
}

pub fn sig(a: i64, b: i64, c: i64) -> TriangleSignature {
    let e = |n: i64| {
        if n == 0 {
            ExtOrder::Infinite
        } else {
            ExtOrder::int(n)
        }
    };
    normalize(e(a), e(b), e(c)).expect("valid literal signature")
}

pub fn is_hyperbolic(s: &TriangleSignature) -> bool {
    s.entries
        .iter()
        .map(ExtOrder::reciprocal)
        .sum::<Rational64>()
        < Rational64::one()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stabilizer {
    pub divisor: DivisorId,
    pub signature: TriangleSignature,
    /// The divisor itself has infinite order.
    pub cusp: bool,
}

pub fn stabilizer(x: DivisorId, spec: &LatticeSpec) -> Result<Stabilizer, StabilizerError> {
    stabilizer_with(x, spec, &weights_from_spec(spec))
}

pub fn stabilizer_with(
    x: DivisorId,
    spec: &LatticeSpec,
    w: &WeightAssignment,
) -> Result<Stabilizer, StabilizerError> {
    let order = w.branched(x);
    if order.is_negative() {
        return Err(StabilizerError::CollapsedDivisor { divisor: x, order });
    }
    let incident = x.incident_by_rule();
    let fixing: Vec<[u8; 4]> = spec
        .symmetry_group()
        .into_iter()
        .filter(|g| x.permute(g) == x)
        .collect();

    let (entries, flag) = if fixing.len() > 2 {
        (
            incident.map(|d| w.reflection(d)),
            SignatureFlag::ExtendedSymmetry,
        )
    } else {
        let swap = fixing.iter().filter(|g| **g != [0, 1, 2, 3]).find_map(|g| {
            let moved: Vec<usize> = (0..3)
                .filter(|&i| incident[i].permute(g) != incident[i])
                .collect();
            match moved[..] {
                [i, j] if incident[i].permute(g) == incident[j] => {
                    let fixed = 3 - i - j;
                    Some((i, fixed))
                }
                _ => None,
            }
        });
        match swap {
            Some((i, fixed)) => (
                [
                    ExtOrder::int(2),
                    w.reflection(incident[i]),
                    w.reflection(incident[fixed]),
                ],
                SignatureFlag::Doubled,
            ),
            None => (incident.map(|d| w.reflection(d)), SignatureFlag::Plain),
        }
    };
    let signature = normalize(entries[0], entries[1], entries[2])
        .map_err(|_| StabilizerError::Undefined {
            divisor: x,
            entries,
        })?
        .with_flag(flag);
    Ok(Stabilizer {
        divisor: x,
        signature,
        cusp: order.is_infinite(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithmeticClassEntry {
    pub signature: TriangleSignature,
    pub class_id: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    entries: BTreeMap<[ExtOrder; 3], u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArithmeticVerdict {
    pub arithmetic: bool,
    pub class_id: Option<u32>,
}

impl Classification {
    pub fn parse(text: &str) -> Result<Self, DataError> {
        let file = Dataset::TriangleClasses.file_name();
        let mut entries = BTreeMap::new();
        for (line, rec) in data::records(text) {
            let f: Vec<&str> = rec.split_whitespace().collect();
            if f.len() != 4 {
                return Err(DataError::parse(file, line, "expected `a b c class_id`"));
            }
            let mut o = [ExtOrder::Infinite; 3];
            for (slot, s) in o.iter_mut().zip(&f[..3]) {
                *slot = s.parse().map_err(|e: crate::order::OrderError| {
                    DataError::parse(file, line, e.to_string())
                })?;
            }
            let s = normalize(o[0], o[1], o[2])
                .map_err(|e| DataError::parse(file, line, e.to_string()))?;
            if !is_hyperbolic(&s) {
                return Err(DataError::parse(
                    file,
                    line,
                    format!("{s} is not hyperbolic"),
                ));
            }
            let id: u32 = f[3]
                .parse()
                .map_err(|_| DataError::parse(file, line, "bad class id"))?;
            if entries.insert(s.entries, id).is_some() {
                return Err(DataError::parse(file, line, format!("{s} listed twice")));
            }
        }
        Ok(Classification { entries })
    }

    pub fn load() -> Result<Self, DataError> {
        Self::parse(&data::load(Dataset::TriangleClasses)?)
    }

    /// The shipped classification, loaded on first use.
    pub fn shipped() -> &'static Classification {
        static CELL: OnceLock<Classification> = OnceLock::new();
        CELL.get_or_init(|| {
            Classification::parse(Dataset::TriangleClasses.embedded())
                .expect("shipped classification parses")
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = ArithmeticClassEntry> + '_ {
        self.entries.iter().map(|(e, id)| ArithmeticClassEntry {
            signature: TriangleSignature {
                entries: *e,
                flag: SignatureFlag::Plain,
            },
            class_id: *id,
        })
    }

    pub fn classify(&self, s: &TriangleSignature) -> Result<ArithmeticVerdict, TriangleError> {
        if !is_hyperbolic(s) {
            return Err(TriangleError::NotHyperbolic(*s));
        }
        let class_id = self.entries.get(&s.entries).copied();
        Ok(ArithmeticVerdict {
            arithmetic: class_id.is_some(),
            class_id,
        })
    }

    pub fn commensurable(
        &self,
        a: &TriangleSignature,
        b: &TriangleSignature,
    ) -> Result<bool, TriangleError> {
        let id = |s: &TriangleSignature| {
            self.classify(s)?
                .class_id
                .ok_or(TriangleError::Unclassified(*s))
        };
        Ok(id(a)? == id(b)?)
    }
}

pub fn classify_arithmetic(s: &TriangleSignature) -> Result<ArithmeticVerdict, TriangleError> {
    Classification::shipped().classify(s)
}

pub fn commensurable(a: &TriangleSignature, b: &TriangleSignature) -> Result<bool, TriangleError> {
    Classification::shipped().commensurable(a, b)
}

/// Arithmeticity decided from the Gram matrix: the group is arithmetic iff
/// every Galois conjugate of the Gram matrix that moves the field generated by
/// `cos²(π/a)`, `cos²(π/b)`, `cos²(π/c)` and `cos(π/a)cos(π/b)cos(π/c)` is
/// positive definite.
pub fn arithmetic_by_gram_criterion(s: &TriangleSignature) -> bool {
    let finite: Vec<i64> = s.entries.iter().filter_map(ExtOrder::as_integer).collect();
    let m = finite.iter().fold(1i64, |acc, &x| acc.lcm(&x));
    let n = 2 * m;
    let conj = |j: i64| -> [f64; 3] {
        s.entries.map(|e| match e.as_integer() {
            Some(a) => (std::f64::consts::PI * j as f64 / a as f64).cos(),
            None => 1.0,
        })
    };
    let gens = |c: [f64; 3]| [c[0] * c[0], c[1] * c[1], c[2] * c[2], c[0] * c[1] * c[2]];
    let base = gens(conj(1));
    (1..n).filter(|j| j.gcd(&n) == 1).all(|j| {
        let c = conj(j);
        let moved = gens(c).iter().zip(&base).any(|(x, y)| (x - y).abs() > 1e-9);
        let det = 1.0 - c.iter().map(|x| x * x).sum::<f64>() - 2.0 * c[0] * c[1] * c[2];
        !moved || det > 1e-12
    })
}
