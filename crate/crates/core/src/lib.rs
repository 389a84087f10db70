//! Exact torus-localization engine for the genus-0 Gromov–Witten invariants
//! of the Hilbert scheme of three points on the projective plane.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalars`]: exact rationals, equivariant weights and rational specializations.
//! * [`geometry`]: torus-fixed points, tangent characters, tautological classes
//!   and the fifteen contracted invariant curves.
//! * [`graphs`]: stable-graph enumeration with canonical forms and automorphisms.
//! * [`localization`]: edge/vertex/flag Euler factors and graph sums.
//! * [`invariants`]: assembly of the two-point invariant `<A, B>_{0,d}`.
//! * [`closed_forms`]: reference closed forms for `d <= 4`.
//! * [`fock`]: Nakajima bases, pairings and the two-/three-point tables.
//! * [`cli`]: the command-line driver used by the `hilb3` binary.

pub mod cli;
pub mod closed_forms;
pub mod error;
pub mod fock;
pub mod geometry;
pub mod graphs;
pub mod invariants;
pub mod localization;
pub mod scalars;

pub use error::{Error, Result};
pub use scalars::{Rational, Specialization, VirtualCharacter, Weight};
