use nalgebra::{DMatrix, SymmetricEigen};

use super::PauliHamiltonian;
use crate::error::{Error, Result};
use crate::pauli::Pauli;
use crate::pulse::{PulseSchedule, Step};

pub type C64 = nalgebra::Complex<f64>;
pub type Unitary = DMatrix<C64>;

const I: C64 = C64::new(0.0, 1.0);

/// Bit masks and phase of a Pauli word: `P|b⟩ = i^{ny} (-1)^{|b & z|} |b ⊕ x⟩`.
struct WordAction {
    x: usize,
    z: usize,
    ny: u32,
}

impl WordAction {
    fn new(word: &[Pauli]) -> Self {
        let n = word.len();
        let (mut x, mut z, mut ny) = (0, 0, 0);
        for (q, &p) in word.iter().enumerate() {
            let bit = 1usize << (n - 1 - q);
            match p {
                Pauli::I => {}
                Pauli::X => x |= bit,
                Pauli::Z => z |= bit,
                Pauli::Y => {
                    x |= bit;
                    z |= bit;
                    ny += 1;
                }
            }
        }
        WordAction { x, z, ny }
    }

    fn phase(&self, b: usize) -> C64 {
        let base = I.powu(self.ny % 4);
        if (b & self.z).count_ones() % 2 == 1 {
            -base
        } else {
            base
        }
    }
}

pub fn pauli_word_matrix(word: &[Pauli]) -> Unitary {
    let d = 1usize << word.len();
    let act = WordAction::new(word);
    let mut m = DMatrix::zeros(d, d);
    for b in 0..d {
        m[(b ^ act.x, b)] = act.phase(b);
    }
    m
}

/// `P · u` for a Pauli word `P`, in `O(d²)`.
fn apply_word_left(word: &[Pauli], u: &Unitary) -> Unitary {
    let act = WordAction::new(word);
    if act.x == 0 && act.z == 0 {
        return u.clone();
    }
    let mut out = DMatrix::zeros(u.nrows(), u.ncols());
    for b in 0..u.nrows() {
        let ph = act.phase(b);
        let target = b ^ act.x;
        for c in 0..u.ncols() {
            out[(target, c)] = ph * u[(b, c)];
        }
    }
    out
}

fn dense_hamiltonian(h: &PauliHamiltonian) -> DMatrix<C64> {
    let d = 1usize << h.qubits();
    let mut m = DMatrix::zeros(d, d);
    for t in h.terms() {
        let act = WordAction::new(&t.word);
        for b in 0..d {
            m[(b ^ act.x, b)] += act.phase(b) * t.coeff;
        }
    }
    m
}

/// Diagonal of a Hamiltonian with only `I`/`Z` letters.
fn diagonal(h: &PauliHamiltonian) -> Vec<f64> {
    let d = 1usize << h.qubits();
    let mut diag = vec![0.0; d];
    for t in h.terms() {
        let act = WordAction::new(&t.word);
        for (b, v) in diag.iter_mut().enumerate() {
            *v += t.coeff * act.phase(b).re;
        }
    }
    diag
}

/// Free evolution over one interval, kept diagonal when possible.
enum Propagator {
    Diagonal(Vec<C64>),
    Dense(Unitary),
}

impl Propagator {
    fn new(h: &PauliHamiltonian, t: f64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::NonFinite(t));
        }
        if h.is_diagonal() {
            return Ok(Propagator::Diagonal(
                diagonal(h)
                    .into_iter()
                    .map(|e| (-I * e * t).exp())
                    .collect(),
            ));
        }
        let m = dense_hamiltonian(h);
        let skew = (&m - m.adjoint())
            .iter()
            .fold(0.0f64, |acc, z| acc.max(z.norm()));
        if skew > 1e-12 {
            return Err(Error::Internal(format!(
                "assembled Hamiltonian is not Hermitian (skew {skew:e})"
            )));
        }
        let eig = SymmetricEigen::new(m);
        let q = eig.eigenvectors;
        let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|e| (-I * e * t).exp()));
        Ok(Propagator::Dense(&q * phases * q.adjoint()))
    }

    fn apply_left(&self, u: &Unitary) -> Unitary {
        match self {
            Propagator::Diagonal(d) => {
                let mut out = u.clone();
                for (r, &ph) in d.iter().enumerate() {
                    for c in 0..out.ncols() {
                        out[(r, c)] *= ph;
                    }
                }
                out
            }
            Propagator::Dense(m) => m * u,
        }
    }

    fn into_matrix(self) -> Unitary {
        match self {
            Propagator::Diagonal(d) => DMatrix::from_diagonal(&nalgebra::DVector::from_vec(d)),
            Propagator::Dense(m) => m,
        }
    }
}

/// `e^{-iHt}` by Hermitian eigendecomposition (diagonal shortcut for
/// `I`/`Z`-only Hamiltonians).
pub fn evolve(h: &PauliHamiltonian, t: f64) -> Result<Unitary> {
    Ok(Propagator::new(h, t)?.into_matrix())
}

/// Executes the schedule step by step; each free interval lasts `tau`.
pub fn run_schedule(p: &PulseSchedule, h: &PauliHamiltonian, tau: f64) -> Result<Unitary> {
    if p.qubits() != h.qubits() {
        return Err(Error::Shape(format!(
            "schedule has {} qubits, Hamiltonian has {}",
            p.qubits(),
            h.qubits()
        )));
    }
    let d = 1usize << h.qubits();
    let free = Propagator::new(h, tau)?;
    let mut u = Unitary::identity(d, d);
    for step in p.steps() {
        u = match step {
            Step::Gates(layer) => apply_word_left(layer, &u),
            Step::Free => free.apply_left(&u),
        };
    }
    Ok(u)
}

pub fn is_unitary(u: &Unitary, tol: f64) -> bool {
    u.is_square() && (u.adjoint() * u - Unitary::identity(u.nrows(), u.ncols())).norm() <= tol
}

/// `min_φ ‖u - e^{iφ} v‖₂` for unitaries `u`, `v`.
///
/// The spectral norm is unitarily invariant, so this is
/// `min_φ max_k |λ_k - e^{iφ}|` over the eigenvalues of `v†u`, attained at
/// the midpoint of the shortest arc covering all eigenphases.
pub fn distance(u: &Unitary, v: &Unitary) -> Result<f64> {
    if u.shape() != v.shape() || !u.is_square() {
        return Err(Error::Shape(format!(
            "cannot compare {:?} with {:?}",
            u.shape(),
            v.shape()
        )));
    }
    let w = v.adjoint() * u;
    let d = w.nrows();
    let off_diagonal = (0..d)
        .flat_map(|r| (0..d).filter(move |&c| c != r).map(move |c| (r, c)))
        .fold(0.0f64, |acc, (r, c)| acc.max(w[(r, c)].norm()));
    let eigenvalues: Vec<C64> = if off_diagonal < 1e-14 {
        w.diagonal().iter().copied().collect()
    } else {
        let schur = nalgebra::linalg::Schur::try_new(w, 1e-15, 10_000)
            .ok_or_else(|| Error::Internal("Schur decomposition did not converge".into()))?;
        let (_, t) = schur.unpack();
        t.diagonal().iter().copied().collect()
    };
    let mut phases: Vec<f64> = eigenvalues.iter().map(|z| z.arg()).collect();
    phases.sort_by(f64::total_cmp);
    let Some(&first) = phases.first() else {
        return Ok(0.0);
    };
    let last = *phases.last().unwrap();
    let mut gap = first + 2.0 * std::f64::consts::PI - last;
    for w in phases.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    let arc = (2.0 * std::f64::consts::PI - gap).max(0.0);
    // Eigenvalues of a numerically unitary product sit slightly off the unit
    // circle; add the worst radial error.
    let radial = eigenvalues
        .iter()
        .fold(0.0f64, |acc, z| acc.max((z.norm() - 1.0).abs()));
    Ok(2.0 * (arc / 4.0).sin() + radial)
}
