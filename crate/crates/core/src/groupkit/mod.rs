//! Enumerated finite groups: closure, wreath products, semilinear groups.

mod constructions;
mod element;
mod genfile;
mod group;
mod perm;

pub use constructions::{semilinear_group, semilinear_scalars, wreath};
pub use element::{GroupElement, Module, Semilinear};
pub use genfile::{parse_generators, GeneratorFile};
pub use group::{normal_test, Coset, FiniteGroup, DEFAULT_CAP};
pub use perm::{perm_closure, NamedPermGroup, Perm};
