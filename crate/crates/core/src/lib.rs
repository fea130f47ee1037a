//! Finite groups as Cayley tables, their subgroup lattices, and
//! Chermak–Delgado measures and lattices.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`]: validated Cayley tables and constructors (cyclic,
//!   dihedral, dicyclic, direct and semidirect products, quotients).
//! * [`lattice`]: subgroup enumeration, centralizers, centre, Ω₁,
//!   meet/join and the Hasse diagram.
//! * [`cd`]: measures `|H|·|C_G(H)|`, the lattice of maximal-measure
//!   subgroups and its structural checks.
//! * [`theorem`]: decides the equal-cyclic-measure hypothesis and checks
//!   its consequences for p-groups.
//! * [`spec`], [`catalog`], [`report`], [`dot`]: the group-spec
//!   language, the small-group catalog, JSON reports and DOT export used
//!   by the `cdlattice` binary.

pub mod arith;
pub mod bitset;
pub mod catalog;
pub mod cd;
pub mod dot;
pub mod error;
pub mod group;
pub mod lattice;
pub mod report;
pub mod spec;
pub mod theorem;

pub use bitset::ElementSet;
pub use error::{Error, Result};
pub use group::{
    direct_product, make_cyclic, make_dicyclic, make_dihedral, quotient, semidirect_cyclic,
    semidirect_general, ElementInfo, Group,
};
pub use lattice::{
    all_subgroups, all_subgroups_with, center, centralizer, exponent, omega1, subgroup_generated,
    LatticeOptions, Subgroup, SubgroupLattice,
};
