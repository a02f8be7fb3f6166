//! Finite orthomodular lattices, their spectral presheaves and the algebra
//! of clopen subobjects, with daseinisation, the quotient `E ≅ L`, the star
//! negation, an algebraic model checker, exact-rational spectral families and
//! the bridge between operators and real-number names.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod bridge;
pub mod caps;
pub mod daseinisation;
pub mod generated;
pub mod lattice;
pub mod laws;
pub mod linalg;
pub mod logic;
pub mod presheaf;
pub mod spectral;
pub mod subalgebra;

pub use caps::{CapExceeded, Caps};
pub use daseinisation::{daseinise_at, Daseinisation, EQuotient, EpsilonClass};
pub use lattice::{
    build_lattice, build_lattice_with_caps, build_oml, build_oml_with_caps, make_boolean,
    make_boolean_with_caps, make_mo, make_mo_with_caps, Elem, Lattice, LatticeError, LatticeSpec,
    OrthomodularLattice,
};
pub use logic::{
    parse_formula, Checker, Formula, LogicError, Profile, SearchMode, Status, ValidationReport,
};
pub use presheaf::{
    stone_iso, stone_iso_inv, stone_space, ClopenSubobject, PresheafError, SpectralPresheaf,
};
pub use subalgebra::{enumerate_boolean_subalgebras, BooleanSubalgebra, SubalgebraPoset};
