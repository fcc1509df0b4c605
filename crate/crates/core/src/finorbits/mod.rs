//! Finite-field group computations: root-group elements, orbits of the
//! unipotent radical, centralizers, and rational nilpotent orbits.

mod checks;
mod group;

pub use checks::{
    centralizer_levi_check, count_rational_nilpotent_orbits, lambda_check, u_orbit_check, CentralizerReport,
    LambdaReport, OrbitPartition, RationalOrbit, UOrbitReport,
};
pub use group::{FiniteGroup, GroupElement, Provenance, RepKind, MAX_GROUP_ORDER};
