//! Exact calculus for virtual and welded braids.
//!
//! The crate provides, over plain data types with no shared mutable state:
//!
//! - braid words on the generators `σ_i`, `σ_i^{-1}`, `τ_i` with the defining
//!   relations of the virtual, welded and welded-star braid groups as
//!   explicit rewrites ([`word`], [`rewrite`]);
//! - the Markov move calculus — conjugation, right stabilization of
//!   positive/negative/virtual type, left stabilization, and the virtual
//!   exchange move — with machine-checkable move sequences and bounded
//!   bidirectional search ([`moves`], [`search`]);
//! - Gauss data of braid closures and its comparison up to relabeling
//!   ([`gauss`]), together with the braiding construction that turns any
//!   Gauss data back into a braid ([`braiding`]);
//! - the state-sum invariant `Q` over exact integer Laurent polynomials,
//!   driven by an explicit crossing weight table ([`laurent`], [`weights`],
//!   [`invariant`]).
//!
//! ```
//! use vbraid::prelude::*;
//!
//! let word: BraidWord = "degree 2; t1 S1".parse()?;
//! assert_eq!(word.writhe(), -1);
//! assert_eq!(q_invariant(&word, 2, 0)?.to_string(), "-q^-2 + 1");
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! The `vbraid` binary exposes the same operations as batch subcommands; see
//! the guide in `book/` for a walkthrough.

pub mod braiding;
pub mod gauss;
pub mod invariant;
pub mod laurent;
pub mod moves;
pub mod rewrite;
pub mod search;
pub mod weights;
pub mod word;

/// The common imports: every public type and operation under one roof.
pub mod prelude {
    pub use crate::braiding::braid_from_gauss;
    pub use crate::gauss::{gauss_of_closure, EndpointRef, GaussData};
    pub use crate::invariant::{
        admissible_states, arcs_of_closure, h_factor, q_invariant, q_invariant_with_table,
        q_invariant_workers, smooth_components, state_weight, ClosureArcs, StateAssignment,
    };
    pub use crate::laurent::LaurentPoly;
    pub use crate::moves::{
        apply_step, conjugate, destabilize_left, destabilize_right, exchange, match_exchange,
        stabilize_left, stabilize_right, verify_witness, verify_witness_in,
        welded_exchange_witness, ExchangeDir, ExchangeSide, MoveSet, MoveStep, StabDir, StabKind,
        Witness,
    };
    pub use crate::rewrite::{
        applicable_rewrites, apply_rewrite, Direction, GroupFlavor, RelationId, RelationRewrite,
    };
    pub use crate::search::{equiv_search, SearchLimits};
    pub use crate::weights::{Smoothing, WeightEntry, WeightTable};
    pub use crate::word::{BraidWord, Generator, Permutation, Sign};
}

#[cfg(doctest)]
mod book;
