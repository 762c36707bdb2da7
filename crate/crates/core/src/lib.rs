//! Exact arithmetic for non-signalling correlation boxes.
//!
//! Boxes are conditional probability tables with rational entries. The
//! crate covers the bipartite polytope (locality, CHSH, quantum tests,
//! depolarization), wirings and distillation, non-local games, distributed
//! computation with PR boxes, PR-box cryptographic protocols, and
//! tripartite / d-output generalizations.
#![no_std]

extern crate alloc;

pub mod boxes;
pub mod crypto;
pub mod distcomp;
pub mod games;
pub mod linalg;
pub mod lp;
pub mod multigen;
pub mod polytope;
pub mod rat;
pub mod sample;
pub mod wiring;

pub use boxes::{CorrBox, Relabel};
pub use rat::Rat;
