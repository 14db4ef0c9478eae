//! Maximal commuting sets of Pauli operators as points of the binary
//! Lagrangian Grassmannian, and their projection to principal-minor
//! coordinates.
//!
//! ```
//! use pauli_lgr::{generator_from_operators, parse_label, point_of, to_observable};
//!
//! let ops: Vec<_> = ["ZX", "XZ"].iter().map(|s| parse_label(s).unwrap()).collect();
//! let g = generator_from_operators(&ops).unwrap();
//! let p = point_of(&g).unwrap();
//! assert_eq!(p.to_string(), "[1:0:1:0]");
//! assert_eq!(to_observable(&p).label(), "YI");
//! ```

pub mod catalog;
mod error;
pub mod gf2;
pub mod ideal;
pub mod orbits;
pub mod par;
pub mod pauli;
pub mod pluecker;
pub mod projection;
pub mod verify;

pub use error::{Error, Result};
pub use gf2::{BinMat, BinVec};
pub use ideal::{
    cayley_quadric, defining_quadrics, hyperbolic_pairing, named_quadrics, quadric_orbit,
    vanishing_quadrics, verify_variety, zero_set, QuadForm, VarietyReport,
};
pub use orbits::{
    e_rank, group_generators, is_separable, orbit_of, orbit_table, GroupElem, Sl2, Stratification,
    TRankTable, TableRow,
};
pub use pauli::{
    enumerate_generators, generator_count, generator_from_operators, parse_label, Generator,
    PauliPoint, MAX_ENUM_QUBITS,
};
pub use pluecker::{
    all_pluecker_relations, eliminated_indices, embed, lagrangian_constraints, pluecker_relations,
    LinearConstraint, PlueckerRelation, PlueckerVec, SubsetIndex,
};
pub use projection::{
    image, lift_chart, point_of, principal_index, project, to_observable, ChartMatrix,
    Correspondence, ProjPoint,
};
