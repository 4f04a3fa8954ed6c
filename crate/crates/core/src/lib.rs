//! Wedge decompositions of the single and double suspension of orientable
//! closed 5-manifolds (and 5-dimensional Poincare duality complexes), with
//! their homology sections, reduced K- and KO-groups and third cohomotopy
//! group.
//!
//! The pipeline is [`cli::parse_descriptor`] -> [`decompose::resolve`] ->
//! [`decompose::suspension_decomposition`] /
//! [`decompose::double_suspension_decomposition`] -> [`invariants`].

pub mod abelian;
pub mod cli;
pub mod decompose;
pub mod invariants;
pub mod maps;
pub mod reduction;
pub mod spaces;
