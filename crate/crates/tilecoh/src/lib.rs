//! Exact cohomology of cubical substitution tilings.
//!
//! The pipeline: a [`substitution::SubstitutionRule`] yields its legal window
//! language ([`patches`]), from which a cell complex and the substitution's
//! chain map are built ([`complexes`]). Cohomology of the tiling space is the
//! direct limit of the complex's cohomology under that map ([`cohomology`]),
//! with cup products ([`ring`]) and frequency modules ([`frequency`]) on top.
//! [`report`] strings the stages together.

pub mod error;
pub mod fixtures;
pub mod frequency;
pub mod grid;
pub mod linalg;
pub mod patches;
pub mod report;
pub mod ring;
pub mod substitution;
pub mod cohomology;
pub mod complexes;

pub use error::{Error, Result};
