//! Where the vertices and boundary edges of the fundamental polyhedron go
//! under the fibration.

use std::fmt;

use super::MarkedPoint;

/// The three boundary curves of the image, named by the marked points they join.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Curve {
    OneInfinity,
    ZeroOne,
    ZeroInfinity,
}

impl Curve {
    pub const ALL: [Curve; 3] = [Curve::OneInfinity, Curve::ZeroOne, Curve::ZeroInfinity];

    pub fn endpoints(&self) -> [MarkedPoint; 2] {
        match self {
            Curve::OneInfinity => [MarkedPoint::One, MarkedPoint::Infinity],
            Curve::ZeroOne => [MarkedPoint::Zero, MarkedPoint::One],
            Curve::ZeroInfinity => [MarkedPoint::Zero, MarkedPoint::Infinity],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Curve::OneInfinity => "1-inf",
            Curve::ZeroOne => "0-1",
            Curve::ZeroInfinity => "0-inf",
        }
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionTables {
    /// Vertex index `i` of `z_i` and its image.
    pub vertices: Vec<(u8, MarkedPoint)>,
    /// Edge `γ_{i,j}` and the boundary curve containing its image.
    pub edges: Vec<((u8, u8), Curve)>,
}

impl ProjectionTables {
    pub fn vertex(&self, i: u8) -> Option<MarkedPoint> {
        self.vertices.iter().find(|(v, _)| *v == i).map(|(_, m)| *m)
    }

    pub fn edge(&self, i: u8, j: u8) -> Option<Curve> {
        let key = (i.min(j), i.max(j));
        self.edges.iter().find(|(e, _)| *e == key).map(|(_, c)| *c)
    }

    pub fn edges_on(&self, curve: Curve) -> impl Iterator<Item = (u8, u8)> + '_ {
        self.edges
            .iter()
            .filter(move |(_, c)| *c == curve)
            .map(|(e, _)| *e)
    }

    /// Edges whose endpoint images are not the two ends of their curve.
    pub fn inconsistent_edges(&self) -> Vec<(u8, u8)> {
        self.edges
            .iter()
            .filter(|((i, j), curve)| {
                let mut ends = [self.vertex(*i), self.vertex(*j)];
                let mut want = curve.endpoints().map(Some);
                ends.sort();
                want.sort();
                ends != want
            })
            .map(|(e, _)| *e)
            .collect()
    }
}

pub fn projection_tables() -> ProjectionTables {
    use MarkedPoint::*;
    let mut vertices: Vec<(u8, MarkedPoint)> = [1, 3, 6, 9, 12]
        .map(|i| (i, Infinity))
        .into_iter()
        .chain([2, 4, 8, 10, 14].map(|i| (i, One)))
        .chain([5, 7, 11, 13].map(|i| (i, Zero)))
        .collect();
    vertices.sort_unstable_by_key(|(i, _)| *i);
    let edges = [(3, 4), (6, 8), (9, 10), (12, 14)]
        .map(|e| (e, Curve::OneInfinity))
        .into_iter()
        .chain([(4, 5), (7, 8), (10, 11), (13, 14)].map(|e| (e, Curve::ZeroOne)))
        .chain([(3, 5), (6, 7), (9, 11), (12, 13)].map(|e| (e, Curve::ZeroInfinity)))
        .collect();
    ProjectionTables { vertices, edges }
}
