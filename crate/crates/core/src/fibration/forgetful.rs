use super::{ComplexProjPoint, FibrationError, C64};

fn det(a: &ComplexProjPoint, b: &ComplexProjPoint) -> C64 {
    let (a, b) = (a.coords(), b.coords());
    a[0] * b[1] - a[1] * b[0]
}

fn check_distinct(points: &[ComplexProjPoint], tol: f64) -> Result<(), FibrationError> {
    for i in 0..points.len() {
        assert_eq!(
            points[i].dim(),
            1,
            "configurations live on the projective line"
        );
        for j in i + 1..points.len() {
            if points[i].distance(&points[j]) <= tol {
                return Err(FibrationError::DegenerateConfig(i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// Five pairwise distinct points of the projective line.
#[derive(Debug, Clone, PartialEq)]
pub struct FiveConfig {
    points: [ComplexProjPoint; 5],
}

impl FiveConfig {
    pub fn new(points: [ComplexProjPoint; 5], tol: f64) -> Result<Self, FibrationError> {
        check_distinct(&points, tol)?;
        Ok(FiveConfig { points })
    }

    pub fn from_affine(x: [C64; 5], tol: f64) -> Result<Self, FibrationError> {
        Self::new(
            x.map(|x| ComplexProjPoint::new(vec![x, C64::new(1.0, 0.0)]).unwrap()),
            tol,
        )
    }

    pub fn points(&self) -> &[ComplexProjPoint; 5] {
        &self.points
    }

    pub fn first_four(&self) -> [ComplexProjPoint; 4] {
        [0, 1, 2, 3].map(|i| self.points[i].clone())
    }

    /// Apply `[x:y] ↦ [ax+by : cx+dy]` to every point.
    pub fn moebius(&self, m: [[C64; 2]; 2]) -> Self {
        let points = self.points.clone().map(|p| {
            let v = p.coords();
            ComplexProjPoint::new(vec![
                m[0][0] * v[0] + m[0][1] * v[1],
                m[1][0] * v[0] + m[1][1] * v[1],
            ])
            .expect("invertible map")
        });
        FiveConfig { points }
    }
}

/// `[det(v1,v4)/det(v1,v5) : det(v2,v4)/det(v2,v5) : det(v3,v4)/det(v3,v5)]`.
pub fn forgetful_top(cfg: &FiveConfig) -> Result<ComplexProjPoint, FibrationError> {
    let v = &cfg.points;
    let coords = (0..3)
        .map(|i| det(&v[i], &v[3]) / det(&v[i], &v[4]))
        .collect();
    ComplexProjPoint::new(coords)
}

/// `[det(v1,v3)/det(v1,v4) : det(v2,v3)/det(v2,v4)]`.
pub fn forgetful_bottom(
    v: &[ComplexProjPoint; 4],
    tol: f64,
) -> Result<ComplexProjPoint, FibrationError> {
    check_distinct(v, tol)?;
    let coords = (0..2)
        .map(|i| det(&v[i], &v[2]) / det(&v[i], &v[3]))
        .collect();
    ComplexProjPoint::new(coords)
}
