pub mod arrangement;
pub mod data;
pub mod fibration;
pub mod fixture;
pub mod hybrid;
pub mod lattice_params;
pub mod monodromy;
pub mod order;
pub mod triangle_groups;

pub use arrangement::DivisorId;
pub use lattice_params::LatticeSpec;
pub use order::ExtOrder;
