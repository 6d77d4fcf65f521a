//! Dense state-space simulation of schedules against Pauli Hamiltonians.
//!
//! Qubit 1 is the leftmost letter of a Pauli word and the most significant
//! bit of a basis index. Time evolution is `e^{-iHt}`; products are written
//! with later operations on the left.

mod dense;
mod verify;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use dense::{distance, evolve, is_unitary, pauli_word_matrix, run_schedule, Unitary, C64};
pub use verify::{scheme_unitary, target_unitary, verify, VerificationResult, VerifyOptions};

use crate::error::{Error, Result};
use crate::pauli::{word_string, Pauli};
use crate::scheme::Framework;

/// Largest qubit count for Hamiltonians with off-diagonal terms.
pub const MAX_DENSE_QUBITS: usize = 8;
/// Largest qubit count for diagonal (`I`/`Z` only) Hamiltonians.
pub const MAX_DIAGONAL_QUBITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: f64,
    pub word: Vec<Pauli>,
}

impl Term {
    /// Qubits the word acts on non-trivially.
    pub fn support(&self) -> Vec<usize> {
        self.word
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != Pauli::I)
            .map(|(q, _)| q)
            .collect()
    }
}

/// Real combination of Pauli words with at most two non-identity letters.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliHamiltonian {
    qubits: usize,
    terms: Vec<Term>,
}

impl PauliHamiltonian {
    pub fn new(qubits: usize, terms: Vec<Term>) -> Result<Self> {
        if qubits == 0 {
            return Err(Error::InvalidArgument(
                "a Hamiltonian needs at least one qubit".into(),
            ));
        }
        for t in &terms {
            if !t.coeff.is_finite() {
                return Err(Error::NonFinite(t.coeff));
            }
            if t.word.len() != qubits {
                return Err(Error::Shape(format!(
                    "word {} has length {}, expected {qubits}",
                    word_string(&t.word),
                    t.word.len()
                )));
            }
            if t.support().len() > 2 {
                return Err(Error::InvalidArgument(format!(
                    "word {} acts on more than two qubits",
                    word_string(&t.word)
                )));
            }
        }
        let limit = if terms
            .iter()
            .all(|t| t.word.iter().all(|&p| matches!(p, Pauli::I | Pauli::Z)))
        {
            MAX_DIAGONAL_QUBITS
        } else {
            MAX_DENSE_QUBITS
        };
        if qubits > limit {
            return Err(Error::Capacity(format!(
                "simulation of {qubits} qubits (limit {limit})"
            )));
        }
        Ok(PauliHamiltonian { qubits, terms })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Sum of coefficients of terms equal to `word`.
    pub fn coefficient(&self, word: &[Pauli]) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.word == word)
            .map(|t| t.coeff)
            .sum()
    }

    /// Only `I` and `Z` letters.
    pub fn is_diagonal(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.word.iter().all(|&p| matches!(p, Pauli::I | Pauli::Z)))
    }

    /// The terms for which `keep` holds.
    pub fn filtered(&self, keep: impl Fn(&Term) -> bool) -> PauliHamiltonian {
        PauliHamiltonian {
            qubits: self.qubits,
            terms: self.terms.iter().filter(|t| keep(t)).cloned().collect(),
        }
    }

    pub fn scaled(&self, s: f64) -> PauliHamiltonian {
        PauliHamiltonian {
            qubits: self.qubits,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff * s,
                    word: t.word.clone(),
                })
                .collect(),
        }
    }
}

impl fmt::Display for PauliHamiltonian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{} {}", t.coeff, word_string(&t.word))?;
        }
        Ok(())
    }
}

/// Seeded Hamiltonian with coefficients uniform in `[-1, 1]`.
///
/// Pair terms come first, pairs in lexicographic order: `ZZ` only for the
/// ZZ framework, all nine `σ_α σ_β` (α outer) for the general one. Local
/// terms follow per qubit: `Z`, or `X, Y, Z`.
pub fn random_hamiltonian(
    n: usize,
    seed: u64,
    kind: Framework,
    with_local: bool,
) -> Result<PauliHamiltonian> {
    let limit = match kind {
        Framework::Zz => 10,
        Framework::General => 6,
    };
    if n == 0 || n > limit {
        return Err(Error::Capacity(format!(
            "random {kind} Hamiltonian on {n} qubits (1..={limit})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let axes: &[Pauli] = match kind {
        Framework::Zz => &[Pauli::Z],
        Framework::General => &Pauli::XYZ,
    };
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for &a in axes {
                for &b in axes {
                    let mut word = vec![Pauli::I; n];
                    word[i] = a;
                    word[j] = b;
                    terms.push(Term {
                        coeff: rng.random_range(-1.0..=1.0),
                        word,
                    });
                }
            }
        }
    }
    if with_local {
        for i in 0..n {
            for &a in axes {
                let mut word = vec![Pauli::I; n];
                word[i] = a;
                terms.push(Term {
                    coeff: rng.random_range(-1.0..=1.0),
                    word,
                });
            }
        }
    }
    PauliHamiltonian::new(n, terms)
}
