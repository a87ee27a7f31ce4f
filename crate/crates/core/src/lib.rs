//! Exact computations in rings of the form
//! `R = K + V_1 X + ... + V_{n-1} X^{n-1} + F[[X]] X^n`
//! over a finite field tower K ⊆ F: atoms up to associates, ideal powers,
//! universality, the multiplier ring and the unit group quotient V.

pub mod atoms;
pub mod caps;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod oracle;
pub mod ring;
pub mod search;
pub mod structure;
pub mod verify;

pub use caps::Caps;
pub use error::{Error, Result};
pub use gf::{field_make, tower_make, Elem, Field, FieldTower};
pub use linalg::Subspace;
pub use ring::{associates, class_enumerate, spec_validate, NormalForm, RingElem, RingSpec};
pub use atoms::{enumerate_atoms, is_atom, AtomClass, AtomInventory, AtomVerdict};
pub use oracle::brute_force_atoms;
pub use ring::graded_specs;
pub use structure::{
    ideal_power, is_universal, is_weakly_universal, least_universal_power,
    least_weakly_universal_power, multiplier_ring, structure_report, v_group, v_order, v_orbits,
    DivisibilityInvariants, IdealPower, MultiplierRing, PowerChain, PowerProfile,
    StructureReport, VGroup,
};
pub use search::{
    achievable, battery, compose_nonlocal, find_with_atom_count, predict, sweep, FamilyPoint,
    FindOutcome, Prediction, SweepBounds, SweepResult,
};
pub use verify::{closed_forms, verify, ClosedForm, PropertyCheck};
