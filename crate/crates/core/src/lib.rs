//! Finite 2-category toolkit.
//!
//! Finite categories and the pasting calculus of `Cat` ([`fincat`]), free
//! 2-categories on computads ([`freegen`]), diagrams over the descent
//! computads ([`deltadiag`]) and their lax descent objects ([`descent`]),
//! lax algebras of strict 2-monads ([`laxalg`]) and lax codescent objects
//! computed through presented categories ([`codescent`]).

pub mod fincat;
pub mod freegen;
pub mod deltadiag;
pub mod descent;
pub mod laxalg;
pub mod codescent;
