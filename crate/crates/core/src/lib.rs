//! Concept-wise multipreference semantics for weighted defeasible knowledge
//! bases, with a bridge to multilayer perceptrons.
//!
//! The crate is organised bottom-up:
//!
//! - [`syntax`]: concept and axiom AST, the `.wkb` text grammar, fragment
//!   classification.
//! - [`fuzzy`]: combination-function families, finite fuzzy (and crisp)
//!   interpretations, degree evaluation and axiom satisfaction.
//! - [`kb`]: weighted knowledge bases, validation and file IO.
//! - [`preference`]: element weights, concept-wise preferences, the Pareto
//!   global preference, typicality, model checking, coherence, and
//!   brute-force entailment over canonical models of role-free KBs.
//! - [`mlp`]: networks, forward evaluation, the interpretations a network
//!   induces over a set of stimuli, KB extraction and the coherence checks
//!   that tie a network to its extracted KB.
//! - [`prob`]: probability of fuzzy events, conditional constraints,
//!   subsethood, nominal conditionals and the network's probabilistic ABox.
//! - [`gen`]: seeded random generators for networks, KBs and
//!   interpretations.
//! - [`cli`]: the `prefnet` command-line front end.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod cli;
pub mod fuzzy;
pub mod gen;
pub mod kb;
pub mod mlp;
pub mod preference;
pub mod prob;
pub mod syntax;

pub use fuzzy::{CrispInterpretation, FuzzyInterpretation, LogicFamily};
pub use kb::WeightedKb;
pub use syntax::{Axiom, Concept, Signature, Theta};

/// Numeric tolerances shared across modules.
pub mod tol {
    /// Slack for `>=` / `<=` comparisons against parsed thresholds.
    pub const CMP: f64 = 1e-9;
    /// Agreement of two numeric routes to the same quantity.
    pub const NUM: f64 = 1e-9;
    /// Normalisation slack for probability distributions.
    pub const PROB: f64 = 1e-9;
    /// Convergence threshold for recurrent fixed-point evaluation.
    pub const FIX: f64 = 1e-9;
    /// Iteration cap for recurrent fixed-point evaluation.
    pub const FIX_MAX_ITERS: usize = 10_000;
}
