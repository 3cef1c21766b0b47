//! The hybridisation trichotomy for orthogonal pairs of divisors.
//!
//! For each incident pair the two stabiliser triangle groups are computed and
//! compared through the arithmetic classification: both arithmetic and
//! commensurable, both arithmetic and not (a hybrid), or at least one not
//! arithmetic.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::arrangement::{build_quadrilateral, orthogonal_pairs, DivisorId};
use crate::data::{self, DataError, Dataset};
use crate::lattice_params::{weights_from_spec, LatticeSpec, SpecError};
use crate::order::ExtOrder;
use crate::triangle_groups::{
    is_hyperbolic, stabilizer_with, Classification, StabilizerError, TriangleSignature,
};

pub use crate::fixture::verify_word_identity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LatticeFlag {
    Arithmetic,
    NonArithmetic,
    Unasserted,
}

impl LatticeFlag {
    pub fn name(&self) -> &'static str {
        match self {
            LatticeFlag::Arithmetic => "arithmetic",
            LatticeFlag::NonArithmetic => "nonarithmetic",
            LatticeFlag::Unasserted => "unasserted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeFlags {
    flags: BTreeMap<LatticeSpec, LatticeFlag>,
}

impl LatticeFlags {
    pub fn parse(text: &str) -> Result<Self, DataError> {
        let file = Dataset::LatticeFlags.file_name();
        let mut flags = BTreeMap::new();
        for (line, rec) in data::records(text) {
            let f: Vec<&str> = rec.split_whitespace().collect();
            let [spec, flag] = f[..] else {
                return Err(DataError::parse(file, line, "expected `spec flag`"));
            };
            let spec: LatticeSpec = spec
                .parse()
                .map_err(|e: SpecError| DataError::parse(file, line, e.to_string()))?;
            let flag = match flag {
                "arithmetic" => LatticeFlag::Arithmetic,
                "nonarithmetic" => LatticeFlag::NonArithmetic,
                "unasserted" => LatticeFlag::Unasserted,
                other => {
                    return Err(DataError::parse(
                        file,
                        line,
                        format!("unknown flag `{other}`"),
                    ))
                }
            };
            flags.insert(spec, flag);
        }
        Ok(LatticeFlags { flags })
    }

    pub fn load() -> Result<Self, DataError> {
        Self::parse(&data::load(Dataset::LatticeFlags)?)
    }

    pub fn shipped() -> &'static LatticeFlags {
        static CELL: OnceLock<LatticeFlags> = OnceLock::new();
        CELL.get_or_init(|| {
            LatticeFlags::parse(Dataset::LatticeFlags.embedded()).expect("shipped flags parse")
        })
    }

    /// Lattices not listed are unasserted.
    pub fn get(&self, spec: &LatticeSpec) -> LatticeFlag {
        self.flags
            .get(spec)
            .copied()
            .unwrap_or(LatticeFlag::Unasserted)
    }

    pub fn specs(&self) -> impl Iterator<Item = (&LatticeSpec, &LatticeFlag)> {
        self.flags.iter()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Group {
        signature: TriangleSignature,
        class_id: Option<u32>,
        hyperbolic: bool,
    },
    Collapsed {
        order: ExtOrder,
    },
    Undefined {
        entries: [ExtOrder; 3],
    },
}

impl Side {
    pub fn signature(&self) -> Option<TriangleSignature> {
        match self {
            Side::Group { signature, .. } => Some(*signature),
            _ => None,
        }
    }

    fn usable(&self) -> bool {
        matches!(self, Side::Group { signature, hyperbolic: true, .. } if !signature.has_cusp())
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Group { signature, .. } => write!(f, "{signature}"),
            Side::Collapsed { order } => write!(f, "collapsed({order})"),
            Side::Undefined { .. } => f.write_str("undefined"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Case1ArithmeticCommensurable,
    Case2Hybrid,
    Case3NonArithmeticStabilizer,
    NotApplicable,
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::Case1ArithmeticCommensurable => "Case1-ArithmeticCommensurable",
            Outcome::Case2Hybrid => "Case2-Hybrid",
            Outcome::Case3NonArithmeticStabilizer => "Case3-NonArithmeticStabilizer",
            Outcome::NotApplicable => "NotApplicable",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HybridVerdict {
    pub spec: LatticeSpec,
    pub pair: (DivisorId, DivisorId),
    pub sides: [Side; 2],
    pub outcome: Outcome,
    pub lattice_flag: LatticeFlag,
    pub theorem_scope: bool,
}

pub fn designated_pair(spec: &LatticeSpec) -> (DivisorId, DivisorId) {
    match spec {
        LatticeSpec::ThreeFold { .. } => (DivisorId::D01, DivisorId::E3),
        LatticeSpec::TwoFold { .. } => (DivisorId::D03, DivisorId::E1),
    }
}

fn side(
    x: DivisorId,
    spec: &LatticeSpec,
    w: &crate::lattice_params::WeightAssignment,
    classes: &Classification,
) -> Side {
    match stabilizer_with(x, spec, w) {
        Ok(s) => {
            let hyperbolic = is_hyperbolic(&s.signature);
            let class_id = if hyperbolic {
                classes.classify(&s.signature).ok().and_then(|v| v.class_id)
            } else {
                None
            };
            Side::Group {
                signature: s.signature,
                class_id,
                hyperbolic,
            }
        }
        Err(StabilizerError::CollapsedDivisor { order, .. }) => Side::Collapsed { order },
        Err(StabilizerError::Undefined { entries, .. }) => Side::Undefined { entries },
    }
}

pub struct HybridContext<'a> {
    pub classes: &'a Classification,
    pub flags: &'a LatticeFlags,
}

impl Default for HybridContext<'static> {
    fn default() -> Self {
        HybridContext {
            classes: Classification::shipped(),
            flags: LatticeFlags::shipped(),
        }
    }
}

impl HybridContext<'_> {
    pub fn classify_pair(&self, spec: &LatticeSpec, pair: (DivisorId, DivisorId)) -> HybridVerdict {
        let pair = if pair.0 <= pair.1 {
            pair
        } else {
            (pair.1, pair.0)
        };
        let w = weights_from_spec(spec);
        let sides = [
            side(pair.0, spec, &w, self.classes),
            side(pair.1, spec, &w, self.classes),
        ];
        let outcome = if !sides.iter().all(Side::usable) {
            Outcome::NotApplicable
        } else {
            let ids = sides.map(|s| match s {
                Side::Group { class_id, .. } => class_id,
                _ => unreachable!(),
            });
            match ids {
                [Some(a), Some(b)] if a == b => Outcome::Case1ArithmeticCommensurable,
                [Some(_), Some(_)] => Outcome::Case2Hybrid,
                _ => Outcome::Case3NonArithmeticStabilizer,
            }
        };
        let lattice_flag = self.flags.get(spec);
        HybridVerdict {
            spec: *spec,
            pair,
            sides,
            outcome,
            lattice_flag,
            theorem_scope: lattice_flag == LatticeFlag::NonArithmetic,
        }
    }

    pub fn scan_pairs(&self, spec: &LatticeSpec) -> Vec<HybridVerdict> {
        let arr = build_quadrilateral();
        orthogonal_pairs(&arr)
            .into_iter()
            .map(|p| self.classify_pair(spec, p))
            .collect()
    }

    pub fn scan_lattices(&self, specs: &[LatticeSpec]) -> Vec<HybridVerdict> {
        specs
            .par_iter()
            .map(|s| self.classify_pair(s, designated_pair(s)))
            .collect()
    }
}

pub fn classify_pair(spec: &LatticeSpec, pair: (DivisorId, DivisorId)) -> HybridVerdict {
    HybridContext::default().classify_pair(spec, pair)
}

pub fn scan_pairs(spec: &LatticeSpec) -> Vec<HybridVerdict> {
    HybridContext::default().scan_pairs(spec)
}
