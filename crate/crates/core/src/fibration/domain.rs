//! The fibration expressed in the coordinates of the fundamental polyhedron,
//! which depend on two cone angles `θ`, `φ`.

use std::f64::consts::FRAC_PI_2;

use super::pencil::{cross, QuadraticForm};
use super::{c, expi, ComplexProjPoint, ExtComplex, FibrationError, C64};

const ANGLE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeParams {
    pub theta: f64,
    pub phi: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl ConeParams {
    /// The angles with `α = β = π/2 + θ/2`, the values for which the
    /// v-coordinates reproduce the closed-form z′ and the composite `f`.
    pub fn new(theta: f64, phi: f64) -> Self {
        let a = FRAC_PI_2 + theta / 2.0;
        ConeParams {
            theta,
            phi,
            alpha: a,
            beta: a,
        }
    }

    pub fn with_angles(theta: f64, phi: f64, alpha: f64, beta: f64) -> Self {
        ConeParams {
            theta,
            phi,
            alpha,
            beta,
        }
    }

    /// `sin φ + sin(θ − φ)`.
    pub fn s(&self) -> f64 {
        s_of(self.theta, self.phi)
    }
}

fn s_of(theta: f64, phi: f64) -> f64 {
    phi.sin() + (theta - phi).sin()
}

fn nonzero(x: f64, what: &'static str) -> Result<f64, FibrationError> {
    if x.abs() < ANGLE_EPS {
        Err(FibrationError::DegenerateAngles(what))
    } else {
        Ok(x)
    }
}

/// `(v_*, v0, v1, v2, v3)`.
pub fn v_coords(z: [C64; 3], p: &ConeParams) -> Result<[C64; 5], FibrationError> {
    let (t, f) = (p.theta, p.phi);
    let stf = nonzero((t + f).sin(), "sin(θ+φ)")?;
    let sa = nonzero((p.alpha - f).sin(), "sin(α−φ)")?;
    let sb = nonzero((p.beta - t).sin(), "sin(β−θ)")?;
    let i = C64::i();
    let [z1, z2, z3] = z;
    let e_tf = expi(-(t + f));
    let common13 = -i * (t.sin() / stf) * z3;
    let common23 = i * e_tf * (f.sin() / stf) * z3;
    Ok([
        C64::new(0.0, 0.0),
        common13 + i * (p.alpha.sin() / sa) * z1,
        common13 + i * expi(-f) * z1,
        -i * expi(-f) * z2 + common23,
        -i * e_tf * (p.beta.sin() / sb) * z2 + common23,
    ])
}

/// `z′_j = (v_j − v0)/(v_j − v_*)`.
pub fn zprime_from_v(v: &[C64; 5], tol: f64) -> Result<[C64; 3], FibrationError> {
    let mut out = [C64::new(0.0, 0.0); 3];
    for j in 0..3 {
        let den = v[j + 2] - v[0];
        if den.norm() <= tol {
            return Err(FibrationError::DegenerateDenominator(j + 1));
        }
        out[j] = (v[j + 2] - v[1]) / den;
    }
    Ok(out)
}

/// Closed forms of `z′1, z′2, z′3`. The `z1` coefficient in the numerator of
/// `z′3` is `−sin θ`, which is what the v-coordinates give.
pub fn zprime_coords(
    z: [C64; 3],
    theta: f64,
    phi: f64,
    tol: f64,
) -> Result<[C64; 3], FibrationError> {
    let (t, f) = (theta, phi);
    let s = s_of(t, f);
    let stf = (t + f).sin();
    let [z1, z2, z3] = z;
    let (ef, etf) = (expi(-f), expi(-(t + f)));
    let num = [
        stf * f.sin() * (c(1.0) - expi(t)) * ef * z1,
        stf * (-t.sin() * z1 - s * ef * z2 + s * ef * z3),
        stf * (-t.sin() * z1 - s * etf * z2 + s * ef * z3),
    ];
    let den = [
        s * (stf * ef * z1 - t.sin() * z3),
        s * (-stf * ef * z2 + f.sin() * etf * z3),
        s * (-stf * etf * z2 + f.sin() * etf * z3),
    ];
    let scale = z
        .iter()
        .map(|x| x.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut out = [C64::new(0.0, 0.0); 3];
    for j in 0..3 {
        if den[j].norm() <= tol * scale {
            return Err(FibrationError::DegenerateDenominator(j + 1));
        }
        out[j] = num[j] / den[j];
    }
    Ok(out)
}

/// `[(v1 − v3)/(v1 − v0) : (v2 − v3)/(v2 − v0)]`.
pub fn fibration_from_v(v: &[C64; 5]) -> Result<ComplexProjPoint, FibrationError> {
    ComplexProjPoint::new(vec![
        (v[2] - v[4]) / (v[2] - v[1]),
        (v[3] - v[4]) / (v[3] - v[1]),
    ])
}

fn normalized(z: [C64; 3]) -> [C64; 3] {
    let m = z.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if m > 0.0 {
        z.map(|x| x / m)
    } else {
        z
    }
}

/// The two linear factors of the numerator of `f_z`.
pub fn fz_numerator_lines(theta: f64, phi: f64) -> [[C64; 3]; 2] {
    let s = c(s_of(theta, phi));
    [
        [-theta.sin() * expi(phi), -s, s],
        [c(1.0), expi(-theta), c(-1.0)],
    ]
}

/// Coefficient `D` of the denominator `D·z1·z2` of `f_z`.
pub fn fz_denominator_coeff(theta: f64, phi: f64) -> C64 {
    -phi.sin() * (c(1.0) - expi(theta)) * (c(1.0) - expi(-theta))
}

fn dot(l: &[C64; 3], z: &[C64; 3]) -> C64 {
    l[0] * z[0] + l[1] * z[1] + l[2] * z[2]
}

/// The fibre parameter as a rational function of the z-coordinates.
pub fn f_z(z: [C64; 3], theta: f64, phi: f64, tol: f64) -> Result<ExtComplex, FibrationError> {
    let z = normalized(z);
    let [la, lb] = fz_numerator_lines(theta, phi);
    let num = dot(&la, &z) * dot(&lb, &z);
    let den = fz_denominator_coeff(theta, phi) * z[0] * z[1];
    ExtComplex::ratio(num, den, tol)
}

/// The fibre parameter in the w-coordinates, as displayed. Not cross-checked
/// against `f_z`: no change of coordinates between the two is available here.
pub fn f_w(w: [C64; 3], theta: f64, phi: f64, tol: f64) -> Result<ExtComplex, FibrationError> {
    let w = normalized(w);
    let s = c(s_of(theta, phi));
    let a = -theta.sin() * expi(-phi);
    let [w1, w2, w3] = w;
    let num = (a * w1 - expi(-theta) * s * w2 + s * w3) * (w1 + w2 - w3);
    let den = (a * w1 - s * w2 + s * w3) * (w1 + expi(-theta) * w2 - w3);
    ExtComplex::ratio(num, den, tol)
}

fn line_form_product(a: &[C64; 3], b: &[C64; 3]) -> QuadraticForm {
    let mut m = [[c(0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = (a[i] * b[j] + a[j] * b[i]) * 0.5;
        }
    }
    QuadraticForm { m }
}

/// Quadratic forms cutting out `f_z = 0`, `f_z = 1` and `f_z = ∞`.
pub fn fz_level_forms(theta: f64, phi: f64) -> [QuadraticForm; 3] {
    let [la, lb] = fz_numerator_lines(theta, phi);
    let zero = line_form_product(&la, &lb);
    let d = fz_denominator_coeff(theta, phi);
    let z1z2 = QuadraticForm::from_monomials([c(0.0), c(0.0), c(0.0), d, c(0.0), c(0.0)]);
    let one = zero.sub(&z1z2);
    let inf = line_form_product(&[c(1.0), c(0.0), c(0.0)], &[c(0.0), c(1.0), c(0.0)]);
    [zero, one, inf]
}

/// The six lines making up the 0, 1 and ∞ fibres of `f_z`, in that order.
pub fn fz_level_lines(theta: f64, phi: f64) -> Option<[[C64; 3]; 6]> {
    let [la, lb] = fz_numerator_lines(theta, phi);
    let [m1, m2] = fz_level_forms(theta, phi)[1].factor_lines()?;
    Some([
        la,
        lb,
        m1,
        m2,
        [c(1.0), c(0.0), c(0.0)],
        [c(0.0), c(1.0), c(0.0)],
    ])
}

#[derive(Debug, Clone, PartialEq)]
pub struct LineCombinatorics {
    /// Number of lines through each multiple point, sorted descending.
    pub multiplicities: Vec<usize>,
}

impl LineCombinatorics {
    pub fn is_complete_quadrilateral(&self) -> bool {
        self.multiplicities == [3, 3, 3, 3, 2, 2, 2]
    }
}

/// Multiple points of a line arrangement, clustered with projective tolerance.
pub fn line_combinatorics(lines: &[[C64; 3]], tol: f64) -> LineCombinatorics {
    let unit = |l: &[C64; 3]| {
        let n = l.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        l.map(|x| x / n)
    };
    let lines: Vec<[C64; 3]> = lines.iter().map(unit).collect();
    let mut points: Vec<ComplexProjPoint> = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = ComplexProjPoint::new(cross(lines[i], lines[j]).to_vec());
            if let Ok(p) = p {
                if !points.iter().any(|q| q.approx_eq(&p, tol)) {
                    points.push(p);
                }
            }
        }
    }
    let mut multiplicities: Vec<usize> = points
        .iter()
        .map(|p| {
            let v = p.coords();
            let v = [v[0], v[1], v[2]];
            lines.iter().filter(|l| dot(l, &v).norm() < tol).count()
        })
        .collect();
    multiplicities.sort_unstable_by(|a, b| b.cmp(a));
    LineCombinatorics { multiplicities }
}

pub fn gamma34_u_max(theta: f64, phi: f64) -> f64 {
    phi.sin() * (2.0 * theta.cos() - 1.0) / (theta + phi).sin()
}

/// The point `(S/sin(θ+φ), u, 1)` of the edge γ₃,₄.
pub fn gamma34_point(u: f64, theta: f64, phi: f64) -> [C64; 3] {
    [c(s_of(theta, phi) / (theta + phi).sin()), c(u), c(1.0)]
}

/// Image of the edge γ₃,₄ under the fibration. `u` must lie strictly
/// between 0 and `u_max` or equal `u_max`, whichever sign `u_max` has.
pub fn gamma34_projection(u: f64, theta: f64, phi: f64) -> Result<ExtComplex, FibrationError> {
    let u_max = gamma34_u_max(theta, phi);
    let inside = u_max != 0.0 && u / u_max > 0.0 && u / u_max <= 1.0;
    if !inside || !u.is_finite() {
        return Err(FibrationError::OutOfRange { u, u_max });
    }
    let (sf, stf) = (phi.sin(), (theta + phi).sin());
    let num =
        (sf * expi(-theta) - stf * u) * (sf * (1.0 - 2.0 * theta.cos()) + stf * expi(-theta) * u);
    let den = -sf * stf * (c(1.0) - expi(-theta)) * (c(1.0) - expi(theta)) * u;
    ExtComplex::ratio(num, den, 0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gamma34Endpoints {
    pub u_max: f64,
    /// `|γ(u)|` at `u = u_max·10^{-k}`, `k = 2..=10`.
    pub near_zero: Vec<(f64, f64)>,
    pub at_u_max: C64,
}

impl Gamma34Endpoints {
    /// The modulus grows without bound, at least like `1/u`.
    pub fn diverges_at_zero(&self) -> bool {
        self.near_zero.windows(2).all(|w| w[1].1 > 5.0 * w[0].1)
            && self.near_zero.last().is_some_and(|(_, m)| *m > 1e6)
    }
}

pub fn gamma34_endpoints(theta: f64, phi: f64) -> Result<Gamma34Endpoints, FibrationError> {
    let u_max = gamma34_u_max(theta, phi);
    let mut near_zero = Vec::new();
    for k in 2..=10 {
        let u = u_max * 10f64.powi(-k);
        let m = match gamma34_projection(u, theta, phi)? {
            ExtComplex::Finite(z) => z.norm(),
            ExtComplex::Infinity => f64::INFINITY,
        };
        near_zero.push((u, m));
    }
    let at_u_max = gamma34_projection(u_max, theta, phi)?
        .finite()
        .ok_or(FibrationError::OutOfRange { u: u_max, u_max })?;
    Ok(Gamma34Endpoints {
        u_max,
        near_zero,
        at_u_max,
    })
}

/// Solve `sin x / sin(x − δ) = r` for `x ∈ (0, π)`.
fn solve_sine_ratio(r: f64, delta: f64) -> f64 {
    let x = (-r * delta.sin()).atan2(1.0 - r * delta.cos());
    x.rem_euclid(std::f64::consts::PI)
}

/// The angle `α` for which `v0` reproduces the closed-form `z′1` at `z`.
pub fn locate_alpha(z: [C64; 3], theta: f64, phi: f64, tol: f64) -> Option<f64> {
    let zp = zprime_coords(z, theta, phi, tol).ok()?;
    let v = v_coords(z, &ConeParams::new(theta, phi)).ok()?;
    let v0 = v[2] * (c(1.0) - zp[0]);
    let i = C64::i();
    let r = (v0 + i * (theta.sin() / (theta + phi).sin()) * z[2]) / (i * z[0]);
    (r.im.abs() < 1e-6 * r.norm().max(1.0)).then(|| solve_sine_ratio(r.re, phi))
}

/// The angle `β` for which `v3` reproduces the closed-form `z′3` at `z`.
pub fn locate_beta(z: [C64; 3], theta: f64, phi: f64, tol: f64) -> Option<f64> {
    let zp = zprime_coords(z, theta, phi, tol).ok()?;
    let v = v_coords(z, &ConeParams::new(theta, phi)).ok()?;
    let v3 = v[1] / (c(1.0) - zp[2]);
    let i = C64::i();
    let e = expi(-(theta + phi));
    let r = (v3 - i * e * (phi.sin() / (theta + phi).sin()) * z[2]) / (-i * e * z[1]);
    (r.im.abs() < 1e-6 * r.norm().max(1.0)).then(|| solve_sine_ratio(r.re, theta))
}

/// Relative distance between two points of the Riemann sphere.
pub fn relative_error(a: ExtComplex, b: ExtComplex) -> f64 {
    match (a, b) {
        (ExtComplex::Infinity, ExtComplex::Infinity) => 0.0,
        (ExtComplex::Finite(x), ExtComplex::Finite(y)) => {
            (x - y).norm() / x.norm().max(y.norm()).max(1e-300)
        }
        _ => f64::INFINITY,
    }
}
