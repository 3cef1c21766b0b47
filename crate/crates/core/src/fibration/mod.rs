//! The pencil of conics through the four base points and the fibration it
//! defines, in arrangement coordinates and in the cone-angle coordinates of
//! the fundamental domain.

mod domain;
mod forgetful;
mod pencil;
pub mod sweep;
mod tables;

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

pub use domain::*;
pub use forgetful::*;
pub use pencil::*;
pub use tables::*;

pub type C64 = Complex64;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FibrationError {
    #[error("a projective point needs a nonzero coordinate")]
    ZeroPoint,
    #[error("{0} is a base point of the pencil")]
    BasePoint(ComplexProjPoint),
    #[error("{0} is not one of the marked points [1:0], [0:1], [1:1]")]
    NotMarkedPoint(ComplexProjPoint),
    #[error("points {0} and {1} of the configuration coincide")]
    DegenerateConfig(usize, usize),
    #[error("angles make `{0}` vanish")]
    DegenerateAngles(&'static str),
    #[error("denominator of z'{0} vanishes")]
    DegenerateDenominator(usize),
    #[error("numerator and denominator both vanish")]
    Indeterminate,
    #[error("u = {u} lies outside the edge parameter range (0, {u_max}]")]
    OutOfRange { u: f64, u_max: f64 },
}

/// A point of complex projective space, stored with its largest-modulus
/// coordinate scaled to exactly 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexProjPoint {
    coords: Vec<C64>,
}

impl ComplexProjPoint {
    pub fn new(coords: Vec<C64>) -> Result<Self, FibrationError> {
        let (imax, _) =
            coords
                .iter()
                .enumerate()
                .map(|(i, c)| (i, c.norm()))
                .fold(
                    (0, 0.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        let lead = coords.get(imax).copied().unwrap_or_default();
        if lead.norm() == 0.0 || !lead.norm().is_finite() {
            return Err(FibrationError::ZeroPoint);
        }
        let mut coords: Vec<C64> = coords.into_iter().map(|c| c / lead).collect();
        coords[imax] = C64::new(1.0, 0.0);
        Ok(ComplexProjPoint { coords })
    }

    pub fn from_reals(coords: &[f64]) -> Result<Self, FibrationError> {
        Self::new(coords.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// `[a:1]`, or `[1:0]` for infinity.
    pub fn from_affine(a: ExtComplex) -> Self {
        match a {
            ExtComplex::Finite(a) => Self::new(vec![a, C64::new(1.0, 0.0)]).unwrap(),
            ExtComplex::Infinity => Self::from_reals(&[1.0, 0.0]).unwrap(),
        }
    }

    pub fn coords(&self) -> &[C64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Norm of the 2×2 minors of the normalized representatives.
    pub fn distance(&self, other: &ComplexProjPoint) -> f64 {
        assert_eq!(
            self.coords.len(),
            other.coords.len(),
            "points of different dimension"
        );
        let (x, y) = (&self.coords, &other.coords);
        let mut s = 0.0;
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                s += (x[i] * y[j] - x[j] * y[i]).norm_sqr();
            }
        }
        s.sqrt()
    }

    pub fn approx_eq(&self, other: &ComplexProjPoint, tol: f64) -> bool {
        self.distance(other) < tol
    }

    /// First coordinate over second, for points of the projective line.
    pub fn affine(&self) -> ExtComplex {
        assert_eq!(self.coords.len(), 2, "affine value of a point of P^1");
        ExtComplex::ratio(self.coords[0], self.coords[1], 0.0).unwrap_or(ExtComplex::Infinity)
    }
}

impl fmt::Display for ComplexProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(":")?;
            }
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "{}{:+}i", c.re, c.im)?;
            }
        }
        f.write_str("]")
    }
}

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtComplex {
    Finite(C64),
    Infinity,
}

impl ExtComplex {
    /// `num / den`, with `∞` for a vanishing denominator and an error when
    /// both sides are below `tol`.
    pub fn ratio(num: C64, den: C64, tol: f64) -> Result<Self, FibrationError> {
        match (num.norm() <= tol, den.norm() <= tol) {
            (true, true) => Err(FibrationError::Indeterminate),
            (false, true) => Ok(ExtComplex::Infinity),
            _ => Ok(ExtComplex::Finite(num / den)),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtComplex::Infinity)
    }

    pub fn finite(&self) -> Option<C64> {
        match self {
            ExtComplex::Finite(z) => Some(*z),
            ExtComplex::Infinity => None,
        }
    }
}

impl fmt::Display for ExtComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtComplex::Finite(z) => write!(f, "{}{:+}i", z.re, z.im),
            ExtComplex::Infinity => f.write_str("inf"),
        }
    }
}

pub(crate) fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub(crate) fn expi(t: f64) -> C64 {
    C64::from_polar(1.0, t)
}
