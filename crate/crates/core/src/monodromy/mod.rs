//! The fibre orbifold group, mapping classes of the four-punctured sphere,
//! mapping-torus presentations and checks of matrix representations.

mod abelian;
mod group;
mod matrices;
mod word;

use thiserror::Error;

pub use abelian::*;
pub use group::*;
pub use matrices::*;
pub use word::*;

use crate::fixture::FixtureError;
use crate::{DivisorId, ExtOrder, LatticeSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MonodromyError {
    #[error("cone point on {divisor} has order {order}: the divisor is blown down")]
    CollapsedFiberPoint { divisor: DivisorId, order: ExtOrder },
    #[error("a{generator} has order {order}, expected a positive integer or inf")]
    InvalidOrder { generator: usize, order: ExtOrder },
    #[error("invalid mapping class: {0}")]
    InvalidMappingClass(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("the order table is stated for 3-fold lattices, got {0}")]
    NotThreeFold(LatticeSpec),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
}
