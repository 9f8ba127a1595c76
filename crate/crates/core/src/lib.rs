pub mod class_ops;
pub mod coupling;
pub mod error;
pub mod export;
pub mod group;
pub mod linalg;
pub mod perm;
pub mod quadrature;
pub mod repr;
pub mod su2;
pub mod verify;

pub use error::{Error, Result};
pub use group::{build_group, CatalogSpec, ConjugacyClass, FiniteGroup, GroupAlgebraElement, GroupSpec};
pub use linalg::{CMatrix, CVector};
pub use repr::{CharacterTable, Irrep, Representation};
pub use su2::{SU2Element, SphereQuadrature};
pub use verify::{CheckRecord, FiniteContext, Tolerances};
