//! Computational semigroup theory at desk scale.
//!
//! The crate is organized around five families of objects:
//!
//! * [`words`] — finite alphabets, involutive letters, free reduction and
//!   shortlex comparison; the substrate for everything else.
//! * [`stallings`] — edge-labelled automata over `A ∪ A⁻¹`, Stallings
//!   foldings, and the rank machinery for finitely generated subgroups of
//!   free groups.
//! * [`numeric`] — subsemigroups of `(ℕ, +)` and `(ℤ, +)`: eventual-segment
//!   profiles, classification of integer subsemigroups, and a strictly
//!   ascending chain in `ℤ²` witnessing failure of chain stabilization.
//! * [`groups`], [`rees`], [`clifford`] — finite groups given by
//!   multiplication tables, completely simple semigroups in Rees matrix
//!   coordinates, and Clifford semigroups as strong semilattices of groups,
//!   with rank and index computations for their subobjects.
//! * [`presentations`] — balanced (length-preserving) monoid and semigroup
//!   presentations: the word problem by congruence-class search, fixed and
//!   periodic points of endomorphisms, and a small string-rewriting checker.
//!
//! [`oracles`] holds independent reference implementations (Nielsen
//! reduction, brute-force segment tables, a union-find word-problem solver)
//! that the test suite and the [`experiments`] drivers compare against the
//! main code paths. [`experiments`] packages the acceptance sweeps run by the
//! CLI and by `tests/acceptance.rs`.

pub mod caps;
pub mod clifford;
pub mod experiments;
pub mod groups;
pub mod numeric;
pub mod oracles;
pub mod orbit;
pub mod presentations;
pub mod rees;
pub mod stallings;
pub mod words;

mod uf;
mod util;
