//! Runs the guide's code listings as doc-tests, keeping `book/` and the
//! crate in sync. One module per chapter so a failure names its source.

#[doc = include_str!("../../../book/src/braid-words.md")]
pub mod braid_words {}

#[doc = include_str!("../../../book/src/relations-and-rewriting.md")]
pub mod relations_and_rewriting {}

#[doc = include_str!("../../../book/src/markov-moves.md")]
pub mod markov_moves {}

#[doc = include_str!("../../../book/src/gauss-data.md")]
pub mod gauss_data {}

#[doc = include_str!("../../../book/src/braiding.md")]
pub mod braiding {}

#[doc = include_str!("../../../book/src/state-sum.md")]
pub mod state_sum {}

#[doc = include_str!("../../../book/src/search-and-witnesses.md")]
pub mod search_and_witnesses {}
