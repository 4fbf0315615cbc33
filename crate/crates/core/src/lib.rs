//! A workbench for finite lattices with a designated complementation,
//! i.e. algebras `(L, ∨, ∧, ′, 0, 1)` where every `a′` is a complement of `a`.
//!
//! The crate checks identities and quasi-identities on such algebras by
//! exhaustive enumeration and computes their congruence lattices. It also
//! implements the constructions used to study the quasivariety defined by
//! `(x′∧y ≈ 0 & x∧y′ ≈ 0) ⇒ x ≈ y` and the varieties generated by the cyclically complemented lattices `M_n′`.
//!
//! Elements are plain indices into a carrier; index 0 is always the bottom
//! and index `n − 1` the top.

pub mod algebra;
pub mod cli;
pub mod congruence;
pub mod construct;
pub mod error;
pub mod fixtures;
pub mod json;
pub mod lattice;
pub mod morphism;
pub mod term;
pub mod verify;

pub use algebra::{Algebra, ClassReport, CompFilters};
pub use congruence::{Congruence, CongruenceLattice, Subject};
pub use error::{Error, Result};
pub use lattice::{ElementProfile, Lattice, LatticeProfile};
pub use morphism::Isomorphism;
pub use term::{Equation, Formula, Term};

/// Index of an element in a carrier.
pub type Elem = usize;

/// Outcome of an exhaustive check: either the property holds, or it fails
/// with the first counterexample in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub fn from_witness(w: Option<W>) -> Self {
        match w {
            None => Verdict::Holds,
            Some(w) => Verdict::Fails(w),
        }
    }
}
