//! # llgames
//!
//! A proof-theory engine for four sequent calculi and their game semantics:
//!
//! | Calculus | Logic | Language |
//! |----------|-------|----------|
//! | `llk-`   | linear logic negative (LL⁻) | ⊤ ⊥ 1 0 ⊗ ⅋ & ⊕ ⊸ ! ? |
//! | `lk-`    | classical logic (CL)        | ⊤ ⊥ ∧ ∨ ⇒ |
//! | `llj`    | intuitionistic linear logic (ILL) | ⊤ ⊥ 1 0 ⊗ & ⊕ ⊸ ! |
//! | `lj`     | intuitionistic logic (IL)   | ⊤ ⊥ ∧ ∨ ⇒ |
//!
//! The crate provides:
//!
//! - rule-schema proof checking for all four calculi ([`logic`]);
//! - the formula/proof translations from the classical calculi into the
//!   linear ones ([`translate`]);
//! - games and legal positions over atom-free formulas ([`game`]);
//! - strategies as next-move oracles, with composition, (co)pairing,
//!   exponential combinators and bounded bisimulation ([`strat`]);
//! - property checkers: innocence, totality, linearity, strictness,
//!   winning, validity and friends ([`props`]);
//! - the interpretation of proofs as strategies ([`interp`]);
//! - cut elimination by normalization-by-evaluation: interpret the proof,
//!   then extract a cut-free proof from the strategy ([`nbe`]).

pub mod game;
pub mod interp;
pub mod logic;
pub mod nbe;
pub mod props;
pub mod strat;
pub mod translate;
