//! Exact workbench for counting problems on Boolean tensor networks.
//!
//! Networks carry complex-valued vertex functions with exact cyclotomic
//! entries; the crate evaluates closed networks, contracts open gadgets to
//! their functions, enumerates the binary functions a function set can
//! realize, classifies the resulting projective matrix group against the
//! finite rotation groups, and provides the structural analyses used for
//! arity reduction (support patterns, basis expansions, ratio conditions).
//!
//! Layers, bottom up:
//!
//! - [`field`]: exact arithmetic in Q(zeta_n) with an expression grammar.
//! - [`matrix`]: small dense matrices over the field.
//! - [`tensor`]: function tables, gadgets, exact contraction.
//! - [`files`]: JSON formats for functions, networks and bases.
//! - [`reduction`]: holographic transforms, interpolation helpers, named
//!   gadget constructions.
//! - [`group`]: realizable binaries, projective closure, classification and
//!   canonical forms.
//! - [`structure`]: decomposability, membership certificates, parity/
//!   support analyses, arity reduction.
//! - [`verify`]: registry of exact identities runnable as one suite.

pub mod error;
pub mod field;
pub mod matrix;
pub mod tensor;
pub mod files;
pub mod reduction;
pub mod group;
pub mod structure;
pub mod netgen;
pub mod verify;

pub use error::{Error, Result};
pub use field::{parse_scalar, sqrt_if_simple, FieldCtx, Scalar};
pub use matrix::ScalarMatrix;
pub use tensor::{Func, Gadget};
