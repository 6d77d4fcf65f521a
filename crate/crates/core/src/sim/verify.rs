use std::fmt;

use super::dense::{distance, evolve, run_schedule, Unitary};
use super::{PauliHamiltonian, Term};
use crate::error::{Error, Result};
use crate::pauli::Pauli;
use crate::pulse;
use crate::scheme::{check_scheme, Framework, Scheme, SchemeBody, TaskKind, TaskSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Total evolution time `T`.
    pub time: f64,
    /// Repetitions of the whole schedule; each interval lasts `T / (m·reps)`.
    pub reps: usize,
    /// Defaults to `1e-10` for ZZ schemes and `2e-2` for general ones.
    pub tolerance: Option<f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            time: 1.0,
            reps: 1,
            tolerance: None,
        }
    }
}

impl VerifyOptions {
    pub fn tolerance_for(&self, framework: Framework) -> f64 {
        self.tolerance.unwrap_or(match framework {
            Framework::Zz => 1e-10,
            Framework::General => 2e-2,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationResult {
    pub task: TaskSpec,
    pub distance: f64,
    pub reps: usize,
    pub trotter_steps: usize,
    pub tau: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl fmt::Display for VerificationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "task={}", self.task.kind)?;
        writeln!(f, "framework={}", self.task.framework)?;
        writeln!(f, "reps={}", self.reps)?;
        writeln!(f, "steps={}", self.trotter_steps)?;
        writeln!(f, "tau={:e}", self.tau)?;
        writeln!(f, "distance={:e}", self.distance)?;
        writeln!(f, "tolerance={:e}", self.tolerance)?;
        write!(f, "result={}", if self.passed { "pass" } else { "fail" })
    }
}

/// Sign row of qubit `q` along Pauli `p` (`Z` only in the ZZ framework).
fn sign_row(scheme: &Scheme, q: usize, p: Pauli) -> Result<&[i8]> {
    match (&scheme.body, p) {
        (SchemeBody::Zz(s), Pauli::Z) => Ok(s.row(q)),
        (SchemeBody::Zz(_), _) => Err(Error::InvalidArgument(format!(
            "ZZ scheme cannot act on a {p} term (qubit {})",
            q + 1
        ))),
        (SchemeBody::General(t), _) => Ok(t.axis(p.axis().expect("non-identity letter")).row(q)),
    }
}

/// Factor the task applies to one Hamiltonian term. Local terms the task
/// leaves unconstrained keep the factor the scheme happens to give them.
fn term_factor(scheme: &Scheme, term: &Term) -> Result<f64> {
    let task = scheme.task;
    let m = scheme.intervals() as f64;
    let support = term.support();
    match support[..] {
        [] => Ok(1.0),
        [q] => {
            let p = term.word[q];
            let row = sign_row(scheme, q, p)?;
            Ok(match task.kind {
                TaskKind::Reverse => -1.0 / m,
                TaskKind::SelectPair { i, j } if q == i || q == j => 1.0,
                _ if task.remove_local => 0.0,
                _ => row.iter().map(|&v| v as f64).sum::<f64>() / m,
            })
        }
        [a, b] => {
            let (pa, pb) = (term.word[a], term.word[b]);
            // Both rows exist for the scheme's framework.
            sign_row(scheme, a, pa)?;
            sign_row(scheme, b, pb)?;
            Ok(match task.kind {
                TaskKind::Decouple => 0.0,
                TaskKind::Reverse => -1.0 / m,
                TaskKind::Select { l, k, gamma, eta } => {
                    let hit = (a == l && pa == gamma && b == k && pb == eta)
                        || (a == k && pa == eta && b == l && pb == gamma);
                    if hit {
                        1.0
                    } else {
                        0.0
                    }
                }
                TaskKind::SelectPair { i, j } => {
                    if (a, b) == (i.min(j), i.max(j)) {
                        1.0
                    } else {
                        0.0
                    }
                }
            })
        }
        _ => unreachable!("Hamiltonian terms act on at most two qubits"),
    }
}

/// The ideal evolution for the scheme's task: `e^{-i H_target T}`, where
/// each term of `h` is scaled as the task prescribes.
pub fn target_unitary(scheme: &Scheme, h: &PauliHamiltonian, time: f64) -> Result<Unitary> {
    check_sizes(scheme, h)?;
    let mut terms = Vec::with_capacity(h.terms().len());
    for t in h.terms() {
        let f = term_factor(scheme, t)?;
        if f != 0.0 {
            terms.push(Term {
                coeff: t.coeff * f,
                word: t.word.clone(),
            });
        }
    }
    evolve(&PauliHamiltonian::new(h.qubits(), terms)?, time)
}

fn check_sizes(scheme: &Scheme, h: &PauliHamiltonian) -> Result<()> {
    if scheme.qubits() != h.qubits() {
        return Err(Error::Shape(format!(
            "scheme has {} qubits, Hamiltonian has {}",
            scheme.qubits(),
            h.qubits()
        )));
    }
    Ok(())
}

/// Simulated evolution: the simplified schedule, intervals of length
/// `T / (m·reps)`, repeated `reps` times.
pub fn scheme_unitary(
    scheme: &Scheme,
    h: &PauliHamiltonian,
    opts: &VerifyOptions,
) -> Result<Unitary> {
    check_sizes(scheme, h)?;
    if opts.reps == 0 {
        return Err(Error::InvalidArgument("reps must be at least 1".into()));
    }
    if !opts.time.is_finite() {
        return Err(Error::NonFinite(opts.time));
    }
    for t in h.terms() {
        for q in t.support() {
            sign_row(scheme, q, t.word[q])?;
        }
    }
    let tau = opts.time / (scheme.intervals() * opts.reps) as f64;
    let schedule = match &scheme.body {
        SchemeBody::Zz(s) => pulse::compile_zz(s, tau),
        SchemeBody::General(t) => pulse::compile_general(t, tau)?,
    };
    let once = run_schedule(&pulse::simplify(&schedule), h, tau)?;
    let mut u = once.clone();
    for _ in 1..opts.reps {
        u = &once * u;
    }
    Ok(u)
}

/// Simulates the scheme and compares against the task's ideal evolution,
/// up to global phase. Schemes that fail the combinatorial check are
/// rejected before simulation.
pub fn verify(
    scheme: &Scheme,
    h: &PauliHamiltonian,
    opts: &VerifyOptions,
) -> Result<VerificationResult> {
    let report = check_scheme(scheme)?;
    if !report.passed() {
        return Err(Error::InvalidArgument(format!(
            "scheme fails its combinatorial check\n{report}"
        )));
    }
    let tolerance = opts.tolerance_for(scheme.framework());
    if !(tolerance.is_finite() && tolerance >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance {tolerance} must be finite and >= 0"
        )));
    }
    let u = scheme_unitary(scheme, h, opts)?;
    let v = target_unitary(scheme, h, opts.time)?;
    let d = distance(&u, &v)?;
    Ok(VerificationResult {
        task: scheme.task,
        distance: d,
        reps: opts.reps,
        trotter_steps: scheme.intervals() * opts.reps,
        tau: opts.time / (scheme.intervals() * opts.reps) as f64,
        tolerance,
        passed: d <= tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::super::random_hamiltonian;
    use super::*;
    use crate::hadamard::SizeCap;
    use crate::scheme::synth;

    fn run(task: TaskSpec, n: usize, seed: u64, reps: usize) -> VerificationResult {
        let s = synth(&task, n, SizeCap::default()).unwrap();
        let h = random_hamiltonian(n, seed, task.framework, task.remove_local).unwrap();
        verify(
            &s,
            &h,
            &VerifyOptions {
                time: 1.0,
                reps,
                tolerance: None,
            },
        )
        .unwrap()
    }

    #[test]
    fn zz_decoupling_is_exact() {
        for n in 2..=6 {
            let r = run(
                TaskSpec::new(TaskKind::Decouple, Framework::Zz),
                n,
                n as u64,
                1,
            );
            assert!(r.passed, "n={n}: {r}");
        }
    }

    #[test]
    fn zz_reverse_and_select_are_exact() {
        let r = run(TaskSpec::new(TaskKind::Reverse, Framework::Zz), 4, 3, 1);
        assert!(r.distance < 1e-10, "{r}");
        let sel = TaskKind::Select {
            l: 0,
            k: 2,
            gamma: Pauli::Z,
            eta: Pauli::Z,
        };
        let r = run(TaskSpec::new(sel, Framework::Zz), 4, 5, 1);
        assert!(r.distance < 1e-10, "{r}");
    }

    #[test]
    fn general_error_shrinks_with_reps() {
        let task = TaskSpec::new(TaskKind::Decouple, Framework::General);
        let coarse = run(task, 3, 11, 1).distance;
        let fine = run(task, 3, 11, 8).distance;
        assert!(fine < coarse / 4.0, "{coarse} -> {fine}");
    }

    #[test]
    fn wrong_target_is_far() {
        let s = synth(
            &TaskSpec::new(TaskKind::Decouple, Framework::Zz),
            3,
            SizeCap::default(),
        )
        .unwrap();
        let h = random_hamiltonian(3, 9, Framework::Zz, true).unwrap();
        let u = scheme_unitary(&s, &h, &VerifyOptions::default()).unwrap();
        let free = evolve(&h, 1.0).unwrap();
        assert!(distance(&u, &free).unwrap() > 1e-2);
    }

    #[test]
    fn zz_scheme_rejects_x_terms() {
        let s = synth(
            &TaskSpec::new(TaskKind::Decouple, Framework::Zz),
            2,
            SizeCap::default(),
        )
        .unwrap();
        let h = random_hamiltonian(2, 1, Framework::General, false).unwrap();
        assert!(verify(&s, &h, &VerifyOptions::default()).is_err());
    }
}
