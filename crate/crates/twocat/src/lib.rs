//! Finite strict 2-categories and the simplicial machinery around them: nerves,
//! the Artin–Mazur codiagonal, Grothendieck constructions, homotopy colimits,
//! homotopy-fibre 2-categories and truncated integral homology.

pub mod category;
pub mod comma;
pub mod corpus;
pub mod grothendieck;
pub mod hocolim;
pub mod homology;
pub mod nerves;
pub mod report;
pub mod simplicial;

pub use report::{ValidationReport, Violation};
