//! The complete quadrilateral in the projective plane and the ten divisors of
//! its blow-up at the four triple points.
//!
//! Everything here is exact: points and lines carry arbitrary-precision
//! rational coordinates and incidence is a zero test.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

use crate::order::ExtOrder;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("a projective point needs at least one nonzero coordinate")]
    ZeroPoint,
    #[error("a line needs a nonzero linear form")]
    ZeroLine,
    #[error("lines coincide, they have no unique meet")]
    CoincidentLines,
    #[error("points coincide, they span no unique line")]
    CoincidentPoints,
    #[error("unknown divisor `{0}`")]
    UnknownDivisor(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("cover degree must be at least 1")]
    ZeroDegree,
    #[error("order at {0} is zero")]
    ZeroOrder(DivisorId),
    #[error("order {0} has no preimage count (negative or infinite)")]
    NonPositiveOrder(ExtOrder),
    #[error("{given} orders listed but the point lies on {stated} divisors")]
    LocusMismatch { given: usize, stated: usize },
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A point of projective space with exact rational coordinates.
///
/// The stored representative is scaled so that its first nonzero coordinate
/// is 1, which makes derived equality coincide with projective equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<BigRational>,
}

impl ProjPoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self, ArrangementError> {
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .ok_or(ArrangementError::ZeroPoint)?;
        Ok(ProjPoint {
            coords: coords.into_iter().map(|c| c / &lead).collect(),
        })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self, ArrangementError> {
        Self::new(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// Projective dimension (number of coordinates minus one).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Projective equality through vanishing of all 2×2 minors.
    pub fn same_point(&self, other: &ProjPoint) -> bool {
        if self.coords.len() != other.coords.len() {
            return false;
        }
        let n = self.coords.len();
        (0..n).all(|i| {
            (i + 1..n)
                .all(|j| &self.coords[i] * &other.coords[j] == &self.coords[j] * &other.coords[i])
        })
    }

    fn as_triple(&self) -> [&BigRational; 3] {
        assert_eq!(
            self.coords.len(),
            3,
            "expected a point of the projective plane"
        );
        [&self.coords[0], &self.coords[1], &self.coords[2]]
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(":")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// A line of the projective plane, stored as the coefficients of its linear
/// form. Equality is projective.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjLine {
    form: ProjPoint,
}

fn cross(a: [&BigRational; 3], b: [&BigRational; 3]) -> Vec<BigRational> {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

impl ProjLine {
    pub fn new(form: [BigRational; 3]) -> Result<Self, ArrangementError> {
        ProjPoint::new(form.to_vec())
            .map(|form| ProjLine { form })
            .map_err(|_| ArrangementError::ZeroLine)
    }

    pub fn from_ints(form: [i64; 3]) -> Result<Self, ArrangementError> {
        Self::new(form.map(rat))
    }

    /// The line `z_i - z_j = 0` in the convention `z_0 = 0`.
    pub fn difference(i: u8, j: u8) -> Self {
        let mut form = [0i64; 3];
        if i > 0 {
            form[i as usize - 1] += 1;
        }
        if j > 0 {
            form[j as usize - 1] -= 1;
        }
        Self::from_ints(form).expect("distinct indices give a nonzero form")
    }

    pub fn form(&self) -> &[BigRational] {
        self.form.coords()
    }

    pub fn eval(&self, p: &ProjPoint) -> BigRational {
        self.form
            .as_triple()
            .iter()
            .zip(p.as_triple())
            .map(|(a, b)| *a * b)
            .sum()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.eval(p).is_zero()
    }

    pub fn meet(&self, other: &ProjLine) -> Result<ProjPoint, ArrangementError> {
        ProjPoint::new(cross(self.form.as_triple(), other.form.as_triple()))
            .map_err(|_| ArrangementError::CoincidentLines)
    }

    pub fn through(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine, ArrangementError> {
        ProjPoint::new(cross(p.as_triple(), q.as_triple()))
            .map(|form| ProjLine { form })
            .map_err(|_| ArrangementError::CoincidentPoints)
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form)
    }
}

/// The ten divisors of the blown-up quadrilateral.
///
/// `Dab` is the proper transform of the line `z_a = z_b`; `Eb` is the
/// exceptional curve over the triple point lying on every `l_ac` with
/// `a, c != b` (so `E0` sits over `[1:1:1]`, `E1` over `[1:0:0]`, ...).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DivisorId {
    D01,
    D02,
    D03,
    D12,
    D13,
    D23,
    E0,
    E1,
    E2,
    E3,
}

impl DivisorId {
    pub const ALL: [DivisorId; 10] = [
        DivisorId::D01,
        DivisorId::D02,
        DivisorId::D03,
        DivisorId::D12,
        DivisorId::D13,
        DivisorId::D23,
        DivisorId::E0,
        DivisorId::E1,
        DivisorId::E2,
        DivisorId::E3,
    ];

    pub const LINES: [DivisorId; 6] = [
        DivisorId::D01,
        DivisorId::D02,
        DivisorId::D03,
        DivisorId::D12,
        DivisorId::D13,
        DivisorId::D23,
    ];

    pub const EXCEPTIONAL: [DivisorId; 4] =
        [DivisorId::E0, DivisorId::E1, DivisorId::E2, DivisorId::E3];

    /// Proper transform of `l_ab`; the indices may come in either order.
    pub fn line(a: u8, b: u8) -> DivisorId {
        match (a.min(b), a.max(b)) {
            (0, 1) => DivisorId::D01,
            (0, 2) => DivisorId::D02,
            (0, 3) => DivisorId::D03,
            (1, 2) => DivisorId::D12,
            (1, 3) => DivisorId::D13,
            (2, 3) => DivisorId::D23,
            _ => panic!("no line l_{a}{b}"),
        }
    }

    pub fn exceptional(b: u8) -> DivisorId {
        match b {
            0 => DivisorId::E0,
            1 => DivisorId::E1,
            2 => DivisorId::E2,
            3 => DivisorId::E3,
            _ => panic!("no exceptional divisor E{b}"),
        }
    }

    pub fn is_line(&self) -> bool {
        self.line_indices().is_some()
    }

    pub fn line_indices(&self) -> Option<(u8, u8)> {
        Some(match self {
            DivisorId::D01 => (0, 1),
            DivisorId::D02 => (0, 2),
            DivisorId::D03 => (0, 3),
            DivisorId::D12 => (1, 2),
            DivisorId::D13 => (1, 3),
            DivisorId::D23 => (2, 3),
            _ => return None,
        })
    }

    pub fn point_index(&self) -> Option<u8> {
        Some(match self {
            DivisorId::E0 => 0,
            DivisorId::E1 => 1,
            DivisorId::E2 => 2,
            DivisorId::E3 => 3,
            _ => return None,
        })
    }

    /// Relabel subscripts by a permutation of {0,1,2,3} (`*` is fixed).
    pub fn permute(&self, perm: &[u8; 4]) -> DivisorId {
        match (self.line_indices(), self.point_index()) {
            (Some((a, b)), _) => DivisorId::line(perm[a as usize], perm[b as usize]),
            (_, Some(b)) => DivisorId::exceptional(perm[b as usize]),
            _ => unreachable!(),
        }
    }

    /// Incident divisors from the complement rule:
    /// `Dab ~ {Ec, Ed, Dcd}` and `Eb ~ {Dac : a, c != b}`.
    pub fn incident_by_rule(&self) -> [DivisorId; 3] {
        if let Some((a, b)) = self.line_indices() {
            let rest: Vec<u8> = (0..4).filter(|&i| i != a && i != b).collect();
            [
                DivisorId::exceptional(rest[0]),
                DivisorId::exceptional(rest[1]),
                DivisorId::line(rest[0], rest[1]),
            ]
        } else {
            let b = self.point_index().unwrap();
            let rest: Vec<u8> = (0..4).filter(|&i| i != b).collect();
            [
                DivisorId::line(rest[0], rest[1]),
                DivisorId::line(rest[0], rest[2]),
                DivisorId::line(rest[1], rest[2]),
            ]
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DivisorId::D01 => "D01",
            DivisorId::D02 => "D02",
            DivisorId::D03 => "D03",
            DivisorId::D12 => "D12",
            DivisorId::D13 => "D13",
            DivisorId::D23 => "D23",
            DivisorId::E0 => "E0",
            DivisorId::E1 => "E1",
            DivisorId::E2 => "E2",
            DivisorId::E3 => "E3",
        }
    }
}

impl fmt::Display for DivisorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DivisorId {
    type Err = ArrangementError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DivisorId::ALL
            .into_iter()
            .find(|d| d.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| ArrangementError::UnknownDivisor(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Carrier {
    /// Proper transform of a line of the plane.
    Line(ProjLine),
    /// Exceptional curve over a blown-up point.
    Point(ProjPoint),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorData {
    pub carrier: Carrier,
    pub self_intersection: i32,
    pub incident: BTreeSet<DivisorId>,
}

/// An intersection point of the plane arrangement with the lines through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplePoint {
    pub point: ProjPoint,
    pub lines: Vec<DivisorId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlownArrangement {
    /// `p1..p4` in order.
    pub base_points: [ProjPoint; 4],
    pub base_lines: Vec<(DivisorId, ProjLine)>,
    pub triple_points: Vec<MultiplePoint>,
    pub double_points: Vec<MultiplePoint>,
    pub divisors: BTreeMap<DivisorId, DivisorData>,
}

impl BlownArrangement {
    pub fn divisor(&self, id: DivisorId) -> &DivisorData {
        &self.divisors[&id]
    }

    pub fn incident(&self, id: DivisorId) -> &BTreeSet<DivisorId> {
        &self.divisor(id).incident
    }

    pub fn is_incident(&self, a: DivisorId, b: DivisorId) -> bool {
        self.incident(a).contains(&b)
    }

    pub fn line(&self, id: DivisorId) -> Option<&ProjLine> {
        self.base_lines
            .iter()
            .find(|(d, _)| *d == id)
            .map(|(_, l)| l)
    }
}

/// Builds the blown-up complete quadrilateral `z1 z2 z3 (z2-z1)(z3-z2)(z1-z3) = 0`.
///
/// Multiple points are found by intersecting all pairs of lines and counting
/// the lines through each meet; the triple points get blown up.
pub fn build_quadrilateral() -> BlownArrangement {
    let base_points = [
        ProjPoint::from_ints(&[1, 0, 0]).unwrap(),
        ProjPoint::from_ints(&[0, 1, 0]).unwrap(),
        ProjPoint::from_ints(&[0, 0, 1]).unwrap(),
        ProjPoint::from_ints(&[1, 1, 1]).unwrap(),
    ];
    let base_lines: Vec<(DivisorId, ProjLine)> = DivisorId::LINES
        .iter()
        .map(|&d| {
            let (a, b) = d.line_indices().unwrap();
            (d, ProjLine::difference(a, b))
        })
        .collect();

    let mut meets: Vec<ProjPoint> = Vec::new();
    for (i, (_, l)) in base_lines.iter().enumerate() {
        for (_, m) in &base_lines[i + 1..] {
            let p = l.meet(m).expect("the six lines are distinct");
            if !meets.iter().any(|q| q.same_point(&p)) {
                meets.push(p);
            }
        }
    }
    let mut triple_points = Vec::new();
    let mut double_points = Vec::new();
    for point in meets {
        let lines: Vec<DivisorId> = base_lines
            .iter()
            .filter(|(_, l)| l.contains(&point))
            .map(|(d, _)| *d)
            .collect();
        let mp = MultiplePoint { point, lines };
        match mp.lines.len() {
            2 => double_points.push(mp),
            n if n >= 3 => triple_points.push(mp),
            _ => unreachable!("a pairwise meet lies on at least two lines"),
        }
    }

    let mut divisors = BTreeMap::new();
    // The blown-up point of Eb is the one whose lines avoid the subscript b.
    for tp in &triple_points {
        let mut used = [false; 4];
        for d in &tp.lines {
            let (a, b) = d.line_indices().unwrap();
            used[a as usize] = true;
            used[b as usize] = true;
        }
        let missing = (0..4u8)
            .find(|&i| !used[i as usize])
            .expect("three lines use three indices");
        divisors.insert(
            DivisorId::exceptional(missing),
            DivisorData {
                carrier: Carrier::Point(tp.point.clone()),
                self_intersection: -1,
                incident: tp.lines.iter().copied().collect(),
            },
        );
    }
    for (d, l) in &base_lines {
        let mut incident = BTreeSet::new();
        let mut blown_up = 0;
        for (e, data) in &divisors {
            if let Carrier::Point(p) = &data.carrier {
                if l.contains(p) {
                    incident.insert(*e);
                    blown_up += 1;
                }
            }
        }
        for dp in &double_points {
            if dp.lines.contains(d) {
                incident.extend(dp.lines.iter().filter(|x| *x != d));
            }
        }
        divisors.insert(
            *d,
            DivisorData {
                carrier: Carrier::Line(l.clone()),
                self_intersection: 1 - blown_up,
                incident,
            },
        );
    }

    BlownArrangement {
        base_points,
        base_lines,
        triple_points,
        double_points,
        divisors,
    }
}

/// All unordered pairs of incident divisors, smaller id first, sorted.
pub fn orthogonal_pairs(arr: &BlownArrangement) -> Vec<(DivisorId, DivisorId)> {
    let mut pairs = Vec::new();
    for (a, data) in &arr.divisors {
        for b in &data.incident {
            if a < b {
                pairs.push((*a, *b));
            }
        }
    }
    pairs.sort();
    pairs
}

/// Coordinate-wise n-th power of a coordinate vector.
pub fn power_coords<T>(n: u32, coords: &[T]) -> Vec<T>
where
    T: Clone + One + std::ops::Mul<Output = T>,
{
    coords
        .iter()
        .map(|c| (0..n).fold(T::one(), |acc, _| acc * c.clone()))
        .collect()
}

/// The branched covering `[u_1 : ... : u_k] ↦ [u_1^n : ... : u_k^n]`.
pub fn power_map(n: u32, u: &ProjPoint) -> ProjPoint {
    assert!(n >= 1, "power map needs n >= 1");
    ProjPoint::new(power_coords(n, u.coords())).expect("powers of a nonzero vector are nonzero")
}

/// Degree `n^(k-1)` of the power map on a projective space of dimension `k-1`.
pub fn power_map_degree(n: u32, dim: usize) -> BigInt {
    BigInt::from(n).pow(dim as u32)
}

/// Number of preimages `n^(k-1-r)` of a point on exactly `r` coordinate
/// hyperplanes under the power map.
pub fn model_preimage_count(n: u32, dim: usize, r: usize) -> BigInt {
    assert!(
        r <= dim,
        "a point lies on at most k-1 coordinate hyperplanes"
    );
    BigInt::from(n).pow((dim - r) as u32)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSpec {
    pub degree: u64,
    pub orders: BTreeMap<DivisorId, ExtOrder>,
}

impl CoverSpec {
    pub fn new(degree: u64, orders: BTreeMap<DivisorId, ExtOrder>) -> Result<Self, CoverError> {
        if degree == 0 {
            return Err(CoverError::ZeroDegree);
        }
        for (d, o) in &orders {
            if let ExtOrder::Finite(q) = o {
                if q.is_zero() {
                    return Err(CoverError::ZeroOrder(*d));
                }
            }
        }
        Ok(CoverSpec { degree, orders })
    }

    pub fn unramified(degree: u64) -> Result<Self, CoverError> {
        Self::new(degree, BTreeMap::new())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreimageCount {
    pub value: Rational64,
    /// False when the count is not an integer, i.e. the cover data cannot
    /// come from an actual branched cover.
    pub consistent: bool,
}

/// Fibre cardinality `N / (n_1 ... n_r)` over a point lying on exactly `r`
/// divisors with the listed orders.
pub fn preimage_count(
    cover: &CoverSpec,
    locus_orders: &[ExtOrder],
    r: usize,
) -> Result<PreimageCount, CoverError> {
    if locus_orders.len() != r {
        return Err(CoverError::LocusMismatch {
            given: locus_orders.len(),
            stated: r,
        });
    }
    let mut value = Rational64::from_integer(cover.degree as i64);
    for o in locus_orders {
        match o {
            ExtOrder::Finite(q) if q.is_positive() && q.is_integer() => value /= q,
            _ => return Err(CoverError::NonPositiveOrder(*o)),
        }
    }
    Ok(PreimageCount {
        consistent: value.is_integer(),
        value,
    })
}
