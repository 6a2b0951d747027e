//! Combination-function families, finite interpretations and degree
//! evaluation.
//!
//! A [`FuzzyInterpretation`] assigns every concept name a membership degree
//! per domain element. Complex concepts are evaluated by structural
//! recursion under a [`LogicFamily`]; existential and universal restrictions
//! are maxima and minima over the (finite) domain. Crisp interpretations
//! are the `{0,1}`-valued special case, on which every family agrees with
//! two-valued semantics.

mod eval;
mod interp;
mod logic;

pub use eval::{check_axiom, eval_concept, eval_inclusion, EvalError, Semantics};
pub use interp::{CrispInterpretation, FuzzyInterpretation, InterpError, InterpretationBuilder};
pub use logic::{LogicFamily, UnknownFamily};
