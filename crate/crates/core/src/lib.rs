//! Deciding whether two term rewriting systems are equal up to renaming of
//! function symbols and variables.

pub mod deciders;
pub mod graphs;
pub mod iso;
pub mod random;
pub mod rewriting;
pub mod syntax;
pub mod templates;
pub mod term;
pub mod trs;

pub use iso::{apply_term_iso, compose_iso, invert_iso, is_normal_form, rule_equivalent, IsoError, Kind, TermIso};
pub use syntax::{parse_term, parse_trs, print_trs, ParseError, ParseErrorKind};
pub use term::{Rule, Symbol, Term};
pub use trs::{Signature, Trs, TrsError, TrsMode, VarSet};
