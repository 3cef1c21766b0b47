use num_traits::Zero;

use super::{c, ComplexProjPoint, FibrationError, C64};
use crate::arrangement::{ArrangementError, DivisorId, ProjLine, ProjPoint};

/// A quadratic form in `z1, z2, z3`, as a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticForm {
    pub m: [[C64; 3]; 3],
}

impl QuadraticForm {
    /// From monomial coefficients of `z1², z2², z3², z1z2, z1z3, z2z3`.
    pub fn from_monomials(k: [C64; 6]) -> Self {
        let h = |x: C64| x * 0.5;
        QuadraticForm {
            m: [
                [k[0], h(k[3]), h(k[4])],
                [h(k[3]), k[1], h(k[5])],
                [h(k[4]), h(k[5]), k[2]],
            ],
        }
    }

    pub fn eval(&self, z: &[C64]) -> C64 {
        let mut s = C64::zero();
        for i in 0..3 {
            for j in 0..3 {
                s += self.m[i][j] * z[i] * z[j];
            }
        }
        s
    }

    pub fn det(&self) -> C64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Whether the form vanishes identically on the line with the given
    /// linear form, tested at three points of it.
    pub fn vanishes_on_line(&self, line: [C64; 3], tol: f64) -> bool {
        let [p, q] = line_basis(line);
        let scale = self
            .m
            .iter()
            .flatten()
            .map(|x| x.norm())
            .fold(0.0, f64::max)
            .max(1.0);
        [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)].iter().all(|&(a, b)| {
            let z: Vec<C64> = (0..3).map(|i| p[i] * a + q[i] * b).collect();
            self.eval(&z).norm() <= tol * scale
        })
    }

    pub fn sub(&self, other: &QuadraticForm) -> QuadraticForm {
        let mut m = self.m;
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x -= other.m[i][j];
            }
        }
        QuadraticForm { m }
    }

    /// The two lines of a rank-2 form: lines through the singular point and
    /// the two zeros on an auxiliary line.
    pub fn factor_lines(&self) -> Option<[[C64; 3]; 2]> {
        let m = &self.m;
        let rows = [m[0], m[1], m[2]];
        let candidates = [
            cross(rows[0], rows[1]),
            cross(rows[0], rows[2]),
            cross(rows[1], rows[2]),
        ];
        let sing = candidates
            .into_iter()
            .max_by(|a, b| vnorm(a).partial_cmp(&vnorm(b)).unwrap())
            .filter(|v| vnorm(v) > 0.0)?;
        let k = (0..3)
            .max_by(|&i, &j| sing[i].norm().partial_cmp(&sing[j].norm()).unwrap())
            .unwrap();
        let mut aux = [C64::zero(); 3];
        aux[k] = c(1.0);
        let [p, q] = line_basis(aux);
        // Q(p + t q) = A t² + B t + C
        let a = self.eval(&q);
        let cc = self.eval(&p);
        let pq: Vec<C64> = (0..3).map(|i| p[i] + q[i]).collect();
        let b = self.eval(&pq) - a - cc;
        let points: [[C64; 3]; 2] = if a.norm() < 1e-14 * (b.norm() + cc.norm()) {
            let t = -cc / b;
            [q, [p[0] + q[0] * t, p[1] + q[1] * t, p[2] + q[2] * t]]
        } else {
            let disc = (b * b - a * cc * 4.0).sqrt();
            let t1 = (-b + disc) / (a * 2.0);
            let t2 = (-b - disc) / (a * 2.0);
            let pt = |t: C64| [p[0] + q[0] * t, p[1] + q[1] * t, p[2] + q[2] * t];
            [pt(t1), pt(t2)]
        };
        Some([cross(sing, points[0]), cross(sing, points[1])])
    }
}

pub(crate) fn cross(a: [C64; 3], b: [C64; 3]) -> [C64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn vnorm(v: &[C64; 3]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Two points spanning the line `l·z = 0`.
pub fn line_basis(l: [C64; 3]) -> [[C64; 3]; 2] {
    let k = (0..3)
        .max_by(|&i, &j| l[i].norm().partial_cmp(&l[j].norm()).unwrap())
        .unwrap();
    let (i, j) = ((k + 1) % 3, (k + 2) % 3);
    let mut p = [C64::zero(); 3];
    let mut q = [C64::zero(); 3];
    p[i] = c(1.0);
    p[k] = -l[i] / l[k];
    q[j] = c(1.0);
    q[k] = -l[j] / l[k];
    [p, q]
}

/// The conic `c(z1z3 − z1z2) + e(z2z3 − z1z2)` of the pencil.
pub fn conic_coeffs(param: &ComplexProjPoint) -> QuadraticForm {
    let (cp, e) = (param.coords()[0], param.coords()[1]);
    let zero = C64::zero();
    QuadraticForm::from_monomials([zero, zero, zero, -(cp + e), cp, e])
}

/// The pencil member containing the fibre over `value`.
pub fn conic_of_fiber(value: &ComplexProjPoint) -> QuadraticForm {
    let v = value.coords();
    conic_coeffs(&ComplexProjPoint::new(vec![v[0], -v[1]]).expect("nonzero"))
}

pub fn base_points() -> [ComplexProjPoint; 4] {
    [
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [1.0, 1.0, 1.0],
    ]
    .map(|p| ComplexProjPoint::from_reals(&p).unwrap())
}

/// `[z2(z1−z3) : z1(z2−z3)]`.
pub fn eval_fibration(z: &ComplexProjPoint, tol: f64) -> Result<ComplexProjPoint, FibrationError> {
    let [z1, z2, z3] = [z.coords()[0], z.coords()[1], z.coords()[2]];
    let a = z2 * (z1 - z3);
    let b = z1 * (z2 - z3);
    if a.norm() <= tol && b.norm() <= tol {
        return Err(FibrationError::BasePoint(z.clone()));
    }
    ComplexProjPoint::new(vec![a, b])
}

pub fn eval_fibration_exact(z: &ProjPoint) -> Result<ProjPoint, ArrangementError> {
    let x = z.coords();
    ProjPoint::new(vec![&x[1] * (&x[0] - &x[2]), &x[0] * (&x[1] - &x[2])])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    /// `(w1, w2|1)` with `z = [1 + w1 : 1 + w1·w2|1 : 1]`.
    A,
    /// `(w1|2, w2)` with `z = [1 + w1|2·w2 : 1 + w2 : 1]`.
    B,
}

/// The fibration in the blow-up charts over `p4`.
pub fn eval_fibration_chart_p4(
    chart: Chart,
    w: [C64; 2],
) -> Result<ComplexProjPoint, FibrationError> {
    let one = c(1.0);
    let coords = match chart {
        Chart::A => vec![w[0] * w[1] + one, w[1] * (w[0] + one)],
        Chart::B => vec![w[0] * (w[1] + one), w[0] * w[1] + one],
    };
    ComplexProjPoint::new(coords)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MarkedPoint {
    /// `[1:0]`
    Infinity,
    /// `[0:1]`
    Zero,
    /// `[1:1]`
    One,
}

impl MarkedPoint {
    pub const ALL: [MarkedPoint; 3] = [MarkedPoint::Infinity, MarkedPoint::Zero, MarkedPoint::One];

    pub fn point(&self) -> ComplexProjPoint {
        let v = match self {
            MarkedPoint::Infinity => [1.0, 0.0],
            MarkedPoint::Zero => [0.0, 1.0],
            MarkedPoint::One => [1.0, 1.0],
        };
        ComplexProjPoint::from_reals(&v).unwrap()
    }

    pub fn exact(&self) -> ProjPoint {
        match self {
            MarkedPoint::Infinity => ProjPoint::from_ints(&[1, 0]),
            MarkedPoint::Zero => ProjPoint::from_ints(&[0, 1]),
            MarkedPoint::One => ProjPoint::from_ints(&[1, 1]),
        }
        .unwrap()
    }

    pub fn identify(p: &ComplexProjPoint, tol: f64) -> Option<MarkedPoint> {
        MarkedPoint::ALL
            .into_iter()
            .find(|m| m.point().approx_eq(p, tol))
    }

    pub fn name(&self) -> &'static str {
        match self {
            MarkedPoint::Infinity => "[1:0]",
            MarkedPoint::Zero => "[0:1]",
            MarkedPoint::One => "[1:1]",
        }
    }

    /// The two lines of the arrangement forming the fibre.
    pub fn fiber_lines(&self) -> [DivisorId; 2] {
        match self {
            MarkedPoint::Infinity => [DivisorId::D01, DivisorId::D23],
            MarkedPoint::Zero => [DivisorId::D02, DivisorId::D13],
            MarkedPoint::One => [DivisorId::D12, DivisorId::D03],
        }
    }
}

pub fn singular_fiber(
    marked: &ComplexProjPoint,
    tol: f64,
) -> Result<[(DivisorId, ProjLine); 2], FibrationError> {
    let m = MarkedPoint::identify(marked, tol)
        .ok_or_else(|| FibrationError::NotMarkedPoint(marked.clone()))?;
    Ok(m.fiber_lines().map(|d| {
        let (a, b) = d.line_indices().unwrap();
        (d, ProjLine::difference(a, b))
    }))
}
