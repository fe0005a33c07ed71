//! Finite loops given by Cayley tables, with exhaustive checkers for the
//! Smarandache Bol identities and their autotopism theory.
//!
//! Maps act on the right throughout: `x·f` is written `f.apply(x)` and
//! `f.then(g)` is `x ↦ g(f(x))`.

pub mod autotopy;
pub mod commands;
pub mod elements;
pub mod enumerate;
pub mod error;
pub mod harness;
pub mod identities;
pub mod io;
pub mod magma;
pub mod subloop;

pub use autotopy::{AutotopismTriple, TripleKind};
pub use elements::ElementSet;
pub use error::{Error, Result};
pub use harness::{Bounds, TheoremId, Verdict};
pub use identities::{check, CheckResult, PropertyId, Witness};
pub use magma::{CayleyTable, Loop, Permutation};
pub use subloop::{make_special, SpecialLoop};
