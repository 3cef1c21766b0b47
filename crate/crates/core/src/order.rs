//! Extended ramification orders: nonzero rationals together with the symbol ∞.
//!
//! A negative order marks a divisor that is blown down to a point, ∞ marks a
//! cusp divisor. The reciprocal map sends ∞ to 0 and is otherwise `q ↦ 1/q`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("an order may not be zero")]
    Zero,
    #[error("cannot parse `{0}` as an order (expected an integer, a fraction or `inf`)")]
    Parse(String),
}

/// A ramification or reflection order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtOrder {
    Finite(Rational64),
    Infinite,
}

impl ExtOrder {
    pub fn int(n: i64) -> Self {
        assert!(n != 0, "an order may not be zero");
        ExtOrder::Finite(Rational64::from_integer(n))
    }

    pub fn finite(q: Rational64) -> Result<Self, OrderError> {
        if q.is_zero() {
            Err(OrderError::Zero)
        } else {
            Ok(ExtOrder::Finite(q))
        }
    }

    /// The order whose reciprocal is `q`; an exact zero yields ∞.
    pub fn from_reciprocal(q: Rational64) -> Self {
        if q.is_zero() {
            ExtOrder::Infinite
        } else {
            ExtOrder::Finite(q.recip())
        }
    }

    pub fn reciprocal(&self) -> Rational64 {
        match self {
            ExtOrder::Finite(q) => q.recip(),
            ExtOrder::Infinite => Rational64::zero(),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtOrder::Infinite)
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, ExtOrder::Finite(q) if q.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        !self.is_negative()
    }

    /// The integer value, if this is a finite integral order.
    pub fn as_integer(&self) -> Option<i64> {
        match self {
            ExtOrder::Finite(q) if q.is_integer() => Some(q.to_integer()),
            _ => None,
        }
    }

    pub fn is_positive_integer(&self) -> bool {
        matches!(self.as_integer(), Some(n) if n > 0)
    }

    /// Positive integer or ∞: the values allowed as triangle-group vertices
    /// and as cone orders of the fibre orbifold.
    pub fn is_admissible_vertex(&self) -> bool {
        self.is_infinite() || self.is_positive_integer()
    }

    pub fn doubled(&self) -> Self {
        match self {
            ExtOrder::Finite(q) => ExtOrder::Finite(q * Rational64::from_integer(2)),
            ExtOrder::Infinite => ExtOrder::Infinite,
        }
    }

    /// Ratio `self / other` for finite orders, `Some(1)` for ∞/∞.
    pub fn ratio(&self, other: &ExtOrder) -> Option<Rational64> {
        match (self, other) {
            (ExtOrder::Finite(a), ExtOrder::Finite(b)) => Some(a / b),
            (ExtOrder::Infinite, ExtOrder::Infinite) => Some(Rational64::one()),
            _ => None,
        }
    }

    /// Spelling with the ∞ glyph, used in human-facing reports.
    pub fn symbol(&self) -> String {
        match self {
            ExtOrder::Finite(_) => self.to_string(),
            ExtOrder::Infinite => "∞".to_string(),
        }
    }
}

impl From<i64> for ExtOrder {
    fn from(n: i64) -> Self {
        ExtOrder::int(n)
    }
}

impl Ord for ExtOrder {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtOrder::Finite(a), ExtOrder::Finite(b)) => a.cmp(b),
            (ExtOrder::Finite(_), ExtOrder::Infinite) => Ordering::Less,
            (ExtOrder::Infinite, ExtOrder::Finite(_)) => Ordering::Greater,
            (ExtOrder::Infinite, ExtOrder::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtOrder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtOrder::Finite(q) if q.is_integer() => write!(f, "{}", q.to_integer()),
            ExtOrder::Finite(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            ExtOrder::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtOrder {
    type Err = OrderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t {
            "inf" | "∞" | "infinity" | "Inf" => return Ok(ExtOrder::Infinite),
            _ => {}
        }
        let q = match t.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| OrderError::Parse(t.into()))?;
                let d: i64 = d.trim().parse().map_err(|_| OrderError::Parse(t.into()))?;
                if d == 0 {
                    return Err(OrderError::Parse(t.into()));
                }
                Rational64::new(n, d)
            }
            None => Rational64::from_integer(t.parse().map_err(|_| OrderError::Parse(t.into()))?),
        };
        ExtOrder::finite(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reciprocal_of_infinity_is_zero() {
        assert_eq!(ExtOrder::Infinite.reciprocal(), Rational64::zero());
        assert_eq!(
            ExtOrder::from_reciprocal(Rational64::zero()),
            ExtOrder::Infinite
        );
        assert_eq!(
            ExtOrder::from_reciprocal(Rational64::new(-1, 4)),
            ExtOrder::int(-4)
        );
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(ExtOrder::finite(Rational64::zero()), Err(OrderError::Zero));
        assert_eq!("0".parse::<ExtOrder>(), Err(OrderError::Zero));
    }

    #[test]
    fn parse_and_display() {
        for s in ["5", "-12", "5/2", "inf"] {
            assert_eq!(s.parse::<ExtOrder>().unwrap().to_string(), s);
        }
        assert_eq!("∞".parse::<ExtOrder>().unwrap(), ExtOrder::Infinite);
        assert!("five".parse::<ExtOrder>().is_err());
        assert!("1/0".parse::<ExtOrder>().is_err());
    }

    #[test]
    fn infinity_sorts_last() {
        let mut v = vec![
            ExtOrder::Infinite,
            ExtOrder::int(3),
            ExtOrder::int(-4),
            ExtOrder::int(2),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                ExtOrder::int(-4),
                ExtOrder::int(2),
                ExtOrder::int(3),
                ExtOrder::Infinite
            ]
        );
    }

    proptest! {
        #[test]
        fn reciprocal_is_an_involution(n in -500i64..500, d in 1i64..500) {
            let q = Rational64::new(n, d);
            let o = ExtOrder::from_reciprocal(q);
            prop_assert_eq!(o.reciprocal(), q);
            if let ExtOrder::Finite(v) = o {
                prop_assert_eq!(ExtOrder::from_reciprocal(v.recip()), o);
            }
        }
    }
}
