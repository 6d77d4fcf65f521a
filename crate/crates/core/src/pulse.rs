//! Lowering sign matrices to schedules of Pauli layers and free evolution.
//!
//! A `-` in row `i`, column `a` becomes a gate on qubit `i` just before and
//! just after interval `a`; the gate conjugates the free evolution so the
//! affected terms flip sign. Neighbouring gate layers are then multiplied
//! together, dropping phases, since only conjugation matters.

use crate::error::{Error, Result};
use crate::pauli::Pauli;
use crate::scheme::{SignMatrix, SignTriple};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// One Pauli per qubit, applied simultaneously.
    Gates(Vec<Pauli>),
    /// Free evolution for one interval of length `tau`.
    Free,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PulseSchedule {
    qubits: usize,
    tau: f64,
    steps: Vec<Step>,
}

impl PulseSchedule {
    pub fn new(qubits: usize, tau: f64, steps: Vec<Step>) -> Result<Self> {
        if !tau.is_finite() || tau < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "interval length {tau} must be finite and >= 0"
            )));
        }
        for s in &steps {
            if let Step::Gates(layer) = s {
                if layer.len() != qubits {
                    return Err(Error::Shape(format!(
                        "gate layer has {} entries for {qubits} qubits",
                        layer.len()
                    )));
                }
            }
        }
        Ok(PulseSchedule { qubits, tau, steps })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of free-evolution segments.
    pub fn intervals(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, Step::Free))
            .count()
    }

    pub fn layers(&self) -> impl Iterator<Item = &[Pauli]> + '_ {
        self.steps.iter().filter_map(|s| match s {
            Step::Gates(l) => Some(l.as_slice()),
            Step::Free => None,
        })
    }
}

/// Schedule with each interval wrapped in its own conjugating layer, before
/// any merging.
fn wrap(qubits: usize, tau: f64, layers: Vec<Vec<Pauli>>) -> PulseSchedule {
    let mut steps = Vec::with_capacity(3 * layers.len());
    for layer in layers {
        steps.push(Step::Gates(layer.clone()));
        steps.push(Step::Free);
        steps.push(Step::Gates(layer));
    }
    PulseSchedule { qubits, tau, steps }
}

/// ZZ framework: `X` on qubit `i` around interval `a` iff entry `(i, a)` is `-`.
pub fn compile_zz(s: &SignMatrix, tau: f64) -> PulseSchedule {
    let layers = (0..s.intervals())
        .map(|a| {
            (0..s.qubits())
                .map(|i| if s.get(i, a) < 0 { Pauli::X } else { Pauli::I })
                .collect()
        })
        .collect();
    wrap(s.qubits(), tau, layers)
}

/// General framework: sign column `(+,+,+)`, `(+,-,-)`, `(-,+,-)`, `(-,-,+)`
/// becomes `I`, `X`, `Y`, `Z`.
pub fn compile_general(t: &SignTriple, tau: f64) -> Result<PulseSchedule> {
    let mut layers = Vec::with_capacity(t.intervals());
    for a in 0..t.intervals() {
        let layer = (0..t.qubits())
            .map(|i| {
                Pauli::from_signs(t.column(i, a)).map_err(|_| {
                    Error::InvalidArgument(format!(
                        "sign column {:?} at qubit {}, interval {} is not a Pauli conjugation",
                        t.column(i, a),
                        i + 1,
                        a + 1
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        layers.push(layer);
    }
    Ok(wrap(t.qubits(), tau, layers))
}

/// Merges runs of gate layers into one layer per gap, so the result strictly
/// alternates gate layer / free interval and starts and ends with a gate
/// layer (identity if nothing is left).
pub fn simplify(p: &PulseSchedule) -> PulseSchedule {
    let identity = vec![Pauli::I; p.qubits];
    let mut steps = Vec::with_capacity(2 * p.intervals() + 1);
    let mut pending = identity.clone();
    for s in &p.steps {
        match s {
            Step::Gates(layer) => {
                // Later gates act after earlier ones; modulo phase the
                // product order does not matter for Paulis.
                for (acc, g) in pending.iter_mut().zip(layer) {
                    *acc = *acc * *g;
                }
            }
            Step::Free => {
                steps.push(Step::Gates(std::mem::replace(
                    &mut pending,
                    identity.clone(),
                )));
                steps.push(Step::Free);
            }
        }
    }
    steps.push(Step::Gates(pending));
    PulseSchedule {
        qubits: p.qubits,
        tau: p.tau,
        steps,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GateCount {
    pub single_qubit_gates: usize,
}

pub fn gate_count(p: &PulseSchedule) -> GateCount {
    GateCount {
        single_qubit_gates: p.layers().flatten().filter(|&&g| g != Pauli::I).count(),
    }
}
