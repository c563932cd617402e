//! Rule-based generation and analysis of German word-order NLI challenge sets.
//!
//! Every sentence is a declarative present-tense main clause built from a
//! small lexicon. Premises are SVO; hypotheses either swap the arguments
//! (non-entailed) or only reorder them while keeping case and number
//! marking (entailed). The crate is `no_std` and needs only `alloc`; file
//! formats, parallel generation and the command line live in the `wogli`
//! crate.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod augment;
pub mod generator;
pub mod lexicon;
pub mod morphology;
pub mod patterns;
pub mod record;

pub use generator::{GeneratedSet, GenerationConfig, PremiseInstance, SetName};
pub use lexicon::{Lexicon, ValidationProfile};
pub use patterns::{NpClass, Pattern};
pub use record::{HypKind, Label, PairRecord};
