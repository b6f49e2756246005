//! Finite simplicial and bisimplicial sets, the ordinal-sum adjunctions
//! between them, and desk-scale machine verification of the categorical
//! identities they satisfy.
//!
//! The crate is organized around five pieces:
//!
//! * [`ordinal`] — the simplex category `Δ` and its augmentation `Δ_a`:
//!   monotone maps, ordinal sum, and the unique block-splitting construction.
//! * [`sset`] — finite (bi)simplicial sets presented by nondegenerate cells
//!   in Eilenberg–Zilber normal form, with products, quotients, `π₀`,
//!   exhaustive mapping-space enumeration, and a text file format.
//! * [`kan`] — décalage `Dec = σ*`, its left adjoint `σ_!` (computed two
//!   ways), its right adjoint `T = σ_*` (the total simplicial set), and the
//!   unit/counit comparisons between them.
//! * [`homology`] — exact integer chain complexes, Smith normal form, and
//!   homology-level verification of weak equivalences.
//! * [`cli`] — the check runner behind the `declab` binary: a builder DSL
//!   for corpus spaces, named checks, and machine-readable reports.

pub mod cli;
pub mod homology;
pub mod kan;
pub mod ordinal;
pub mod sset;
