//! Kneser, odd and middle levels graphs as a verification laboratory.
//!
//! Graphs are built from bitmask blocks ([`setcore`]), split by deleting edge
//! colors ([`decompose`]), related by explicit vertex maps ([`morphisms`]),
//! organized into component meta-graphs ([`superstructure`]), counted against
//! Catalan identities ([`catalan`]) and searched for Hamiltonian cycles
//! ([`hamilton`]). [`io`] serializes graphs and [`suite`] bundles every check
//! into named verification suites.

pub mod catalan;
pub mod decompose;
pub mod error;
pub mod graphs;
pub mod hamilton;
pub mod io;
pub mod morphisms;
pub mod setcore;
pub mod suite;
pub mod superstructure;

pub use error::{Error, Result};
pub use graphs::{Color, DegreeClass, DegreeProfile, FamilyId, LabelKind, LabeledGraph, Neighbor};
pub use setcore::{Block, GroundSize, Perm};
