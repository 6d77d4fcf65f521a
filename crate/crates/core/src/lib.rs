//! Control schemes built from Hadamard and generalized Hadamard matrices
//! that decouple, selectively couple, or time-reverse pairwise `n`-qubit
//! Hamiltonians using only single-qubit Pauli conjugations.
//!
//! The pipeline is: pick a Hadamard matrix ([`hadamard`]), group its rows
//! into Schur triples where needed ([`schur`], [`gh`]), cut out a sign
//! matrix or sign triple for the task ([`scheme`]), lower it to a pulse
//! schedule ([`pulse`]) and check it against concrete Hamiltonians
//! ([`sim`]). [`text`] holds the line-based file formats shared with the
//! command-line tool.

pub mod analyze;
pub mod error;
pub mod gh;
pub mod hadamard;
pub mod matrix;
pub mod pauli;
pub mod pulse;
pub mod scheme;
pub mod schur;
pub mod sim;
pub mod text;

pub use error::{Error, PaleyVariant, Result};
pub use hadamard::{HadamardMatrix, Recipe, SizeCap};
pub use matrix::PmMatrix;
pub use pauli::Pauli;
