use std::fmt;

use super::{Scheme, SchemeBody, TaskKind, TaskSpec};
use crate::error::Result;
use crate::matrix::dot;
use crate::pauli::Pauli;
use crate::pulse;

/// Failure messages kept per check; the count is always exact.
const MAX_DETAILS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub failures: usize,
    /// The first few failures, human readable.
    pub details: Vec<String>,
}

impl CheckOutcome {
    fn new(name: &'static str) -> Self {
        CheckOutcome {
            name,
            failures: 0,
            details: Vec::new(),
        }
    }

    fn fail(&mut self, msg: impl FnOnce() -> String) {
        self.failures += 1;
        if self.details.len() < MAX_DETAILS {
            self.details.push(msg());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeReport {
    pub task: TaskSpec,
    pub qubits: usize,
    pub intervals: usize,
    pub overhead: f64,
    /// Non-identity gates in the simplified schedule.
    pub gate_count: usize,
    pub checks: Vec<CheckOutcome>,
}

impl SchemeReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }
}

impl fmt::Display for SchemeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "task={}", self.task.kind)?;
        writeln!(f, "framework={}", self.task.framework)?;
        writeln!(f, "n={}", self.qubits)?;
        writeln!(f, "m={}", self.intervals)?;
        writeln!(f, "c={:.6}", self.overhead)?;
        writeln!(f, "gates={}", self.gate_count)?;
        for c in &self.checks {
            if c.passed() {
                writeln!(f, "check.{}=pass", c.name)?;
            } else {
                writeln!(f, "check.{}=fail ({} violations)", c.name, c.failures)?;
                for d in &c.details {
                    writeln!(f, "  {d}")?;
                }
            }
        }
        write!(f, "result={}", if self.passed() { "pass" } else { "fail" })
    }
}

/// One sign row: qubit, Pauli axis, entries.
struct Row<'a> {
    qubit: usize,
    label: Pauli,
    signs: &'a [i8],
}

fn rows(scheme: &Scheme) -> Vec<Row<'_>> {
    match &scheme.body {
        SchemeBody::Zz(s) => (0..s.qubits())
            .map(|q| Row {
                qubit: q,
                label: Pauli::Z,
                signs: s.row(q),
            })
            .collect(),
        SchemeBody::General(t) => (0..t.qubits())
            .flat_map(|q| {
                Pauli::XYZ.map(|p| Row {
                    qubit: q,
                    label: p,
                    signs: t.axis(p.axis().unwrap()).row(q),
                })
            })
            .collect(),
    }
}

/// Required inner product of two rows on different qubits.
fn expected_cross(kind: TaskKind, m: i64, a: &Row, b: &Row) -> i64 {
    match kind {
        TaskKind::Decouple => 0,
        TaskKind::Reverse => -1,
        TaskKind::Select { l, k, gamma, eta } => {
            let hit = |x: &Row, y: &Row| {
                x.qubit == l && x.label == gamma && y.qubit == k && y.label == eta
            };
            if hit(a, b) || hit(b, a) {
                m
            } else {
                0
            }
        }
        TaskKind::SelectPair { i, j } => {
            if (a.qubit == i && b.qubit == j) || (a.qubit == j && b.qubit == i) {
                m
            } else {
                0
            }
        }
    }
}

/// Required row sum, or `None` if the task leaves that local term alone.
fn expected_sum(task: &TaskSpec, row: &Row) -> Option<i64> {
    match task.kind {
        TaskKind::Reverse => Some(-1),
        TaskKind::SelectPair { i, j } if row.qubit == i || row.qubit == j => None,
        _ if task.remove_local => Some(0),
        _ => None,
    }
}

/// Evaluates every criterion that applies to the scheme's task with exact
/// integer arithmetic.
pub fn check_scheme(scheme: &Scheme) -> Result<SchemeReport> {
    let task = scheme.task;
    task.validate(scheme.qubits())?;
    let m = scheme.intervals() as i64;
    let rows = rows(scheme);
    let mut checks = Vec::new();

    if let SchemeBody::General(t) = &scheme.body {
        let mut c = CheckOutcome::new("schur");
        for (i, a) in t.schur_violations() {
            c.fail(|| format!("sx∘sy != sz at qubit {}, interval {}", i + 1, a + 1));
        }
        checks.push(c);
    }

    let mut cross = CheckOutcome::new("cross");
    for (x, a) in rows.iter().enumerate() {
        for b in &rows[x + 1..] {
            if a.qubit == b.qubit {
                continue;
            }
            let want = expected_cross(task.kind, m, a, b);
            let got = dot(a.signs, b.signs);
            if got != want {
                cross.fail(|| {
                    format!(
                        "rows {}{} and {}{}: inner product {got}, expected {want}",
                        a.label,
                        a.qubit + 1,
                        b.label,
                        b.qubit + 1
                    )
                });
            }
        }
    }
    checks.push(cross);

    let mut sums = CheckOutcome::new("row_sums");
    for r in &rows {
        if let Some(want) = expected_sum(&task, r) {
            let got: i64 = r.signs.iter().map(|&v| v as i64).sum();
            if got != want {
                sums.fail(|| format!("row {}{}: sum {got}, expected {want}", r.label, r.qubit + 1));
            }
        }
    }
    checks.push(sums);

    let gate_count = match &scheme.body {
        SchemeBody::Zz(s) => {
            pulse::gate_count(&pulse::simplify(&pulse::compile_zz(s, 1.0))).single_qubit_gates
        }
        SchemeBody::General(t) => match pulse::compile_general(t, 1.0) {
            Ok(p) => pulse::gate_count(&pulse::simplify(&p)).single_qubit_gates,
            Err(_) => 0,
        },
    };

    Ok(SchemeReport {
        task,
        qubits: scheme.qubits(),
        intervals: scheme.intervals(),
        overhead: scheme.overhead(),
        gate_count,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{Framework, SignMatrix, SignTriple};
    use super::*;
    use crate::hadamard::{sylvester, SizeCap};

    fn zz(rows: &[&str], kind: TaskKind, remove_local: bool) -> Scheme {
        let rows: Vec<Vec<i8>> = rows
            .iter()
            .map(|r| r.chars().map(|c| if c == '+' { 1 } else { -1 }).collect())
            .collect();
        let mut task = TaskSpec::new(kind, Framework::Zz);
        task.remove_local = remove_local;
        Scheme::new(
            task,
            SchemeBody::Zz(SignMatrix::from_rows(&rows).unwrap()),
            None,
        )
        .unwrap()
    }

    #[test]
    fn four_qubit_decoupling_passes() {
        let s = zz(&["++++", "++--", "+--+", "+-+-"], TaskKind::Decouple, false);
        let r = check_scheme(&s).unwrap();
        assert!(r.passed(), "{r}");
        // The first row is all +, so local terms survive.
        let s = zz(&["++++", "++--", "+--+", "+-+-"], TaskKind::Decouple, true);
        assert!(!check_scheme(&s).unwrap().passed());
    }

    #[test]
    fn two_qubit_flip_is_reported() {
        assert!(check_scheme(&zz(&["++", "+-"], TaskKind::Decouple, false))
            .unwrap()
            .passed());
        let r = check_scheme(&zz(&["++", "++"], TaskKind::Decouple, false)).unwrap();
        assert!(!r.passed());
        let cross = r.checks.iter().find(|c| c.name == "cross").unwrap();
        assert_eq!(cross.failures, 1);
        assert!(
            cross.details[0].contains("Z1 and Z2"),
            "{}",
            cross.details[0]
        );
    }

    #[test]
    fn corrupted_triple_reports_cell() {
        let h = sylvester(3, SizeCap::default()).unwrap();
        let pick = |i: usize| SignMatrix::new(h.matrix().select_rows(&[i]));
        let mut sz = h.matrix().select_rows(&[5]);
        sz.negate_col(2);
        let t = SignTriple::from_parts(pick(1), pick(4), SignMatrix::new(sz)).unwrap();
        let s = Scheme::new(
            TaskSpec::new(TaskKind::Decouple, Framework::General),
            SchemeBody::General(t),
            None,
        )
        .unwrap();
        let r = check_scheme(&s).unwrap();
        let schur = &r.checks[0];
        assert_eq!(schur.failures, 1);
        assert!(schur.details[0].contains("interval 3"));
    }
}
