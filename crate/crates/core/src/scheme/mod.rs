//! Sign matrices and sign triples for each task, and the exact checker.
//!
//! A sign matrix has one row per qubit and one column per interval. In the
//! ZZ framework a coupling `Z_i Z_j` survives in proportion to the inner
//! product of rows `i` and `j`; in the general framework each qubit carries
//! three rows, one per Pauli axis, and the term `σ_α^{(i)} σ_β^{(j)}`
//! survives in proportion to the inner product of row `i` of `S_α` with row
//! `j` of `S_β`.

mod check;
mod hosts;
mod synth;

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

pub use check::{check_scheme, CheckOutcome, SchemeReport};
pub use hosts::{schur_capacity, HostPlan};
pub use synth::{
    synth, synth_decouple_general, synth_decouple_zz, synth_reverse, synth_select_general,
    synth_select_pair, synth_select_zz,
};

use crate::error::{Error, Result};
use crate::matrix::PmMatrix;
use crate::pauli::Pauli;

/// `n × m` sign matrix: rows are qubits, columns are intervals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignMatrix(PmMatrix);

impl SignMatrix {
    pub fn new(m: PmMatrix) -> Self {
        SignMatrix(m)
    }

    pub fn from_rows<R: AsRef<[i8]>>(rows: &[R]) -> Result<Self> {
        Ok(SignMatrix(PmMatrix::from_rows(rows)?))
    }

    pub fn qubits(&self) -> usize {
        self.0.rows()
    }

    pub fn intervals(&self) -> usize {
        self.0.cols()
    }

    pub fn matrix(&self) -> &PmMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> PmMatrix {
        self.0
    }
}

impl Deref for SignMatrix {
    type Target = PmMatrix;

    fn deref(&self) -> &PmMatrix {
        &self.0
    }
}

/// Three sign matrices of equal shape, one per Pauli axis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignTriple {
    pub sx: SignMatrix,
    pub sy: SignMatrix,
    pub sz: SignMatrix,
}

impl SignTriple {
    /// Checks shapes and `sx ∘ sy = sz` cell by cell.
    pub fn new(sx: SignMatrix, sy: SignMatrix, sz: SignMatrix) -> Result<Self> {
        let t = SignTriple::from_parts(sx, sy, sz)?;
        if let Some(&(i, a)) = t.schur_violations().first() {
            return Err(Error::InvalidArgument(format!(
                "sx∘sy != sz at qubit {i}, interval {a}"
            )));
        }
        Ok(t)
    }

    /// Checks shapes only; the checker reports Schur violations.
    pub fn from_parts(sx: SignMatrix, sy: SignMatrix, sz: SignMatrix) -> Result<Self> {
        let shape = |s: &SignMatrix| (s.qubits(), s.intervals());
        if shape(&sx) != shape(&sy) || shape(&sx) != shape(&sz) {
            return Err(Error::Shape(format!(
                "sign triple shapes differ: {:?}, {:?}, {:?}",
                shape(&sx),
                shape(&sy),
                shape(&sz)
            )));
        }
        Ok(SignTriple { sx, sy, sz })
    }

    pub fn qubits(&self) -> usize {
        self.sx.qubits()
    }

    pub fn intervals(&self) -> usize {
        self.sx.intervals()
    }

    /// Matrix for axis 0, 1, 2 = x, y, z.
    pub fn axis(&self, axis: usize) -> &SignMatrix {
        match axis {
            0 => &self.sx,
            1 => &self.sy,
            2 => &self.sz,
            _ => panic!("axis {axis} out of range"),
        }
    }

    /// Signs `(sx, sy, sz)` at qubit `i`, interval `a`.
    pub fn column(&self, i: usize, a: usize) -> [i8; 3] {
        [self.sx.get(i, a), self.sy.get(i, a), self.sz.get(i, a)]
    }

    /// Cells `(qubit, interval)` where `sx ∘ sy != sz`.
    pub fn schur_violations(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for i in 0..self.qubits() {
            for a in 0..self.intervals() {
                let [x, y, z] = self.column(i, a);
                if x * y != z {
                    bad.push((i, a));
                }
            }
        }
        bad
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Framework {
    /// Only `Z_i Z_j` couplings and `Z_i` fields; gates are `X` flips.
    Zz,
    /// All nine pairwise Pauli products and arbitrary local fields.
    General,
}

impl fmt::Display for Framework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Framework::Zz => "zz",
            Framework::General => "general",
        })
    }
}

impl FromStr for Framework {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zz" => Ok(Framework::Zz),
            "general" => Ok(Framework::General),
            _ => Err(Error::InvalidArgument(format!("unknown framework `{s}`"))),
        }
    }
}

/// What the scheme should do to the pairwise Hamiltonian. Qubit indices are
/// 0-based here and 1-based in text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TaskKind {
    Decouple,
    /// Keep only `σ_γ^{(l)} σ_η^{(k)}`.
    Select {
        l: usize,
        k: usize,
        gamma: Pauli,
        eta: Pauli,
    },
    /// Keep every term acting only on qubits `i` and `j`.
    SelectPair {
        i: usize,
        j: usize,
    },
    /// Run the Hamiltonian backwards.
    Reverse,
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lower = |p: Pauli| p.to_char().to_ascii_lowercase();
        match *self {
            TaskKind::Decouple => f.write_str("decouple"),
            TaskKind::Select { l, k, gamma, eta } => {
                write!(
                    f,
                    "select:{},{},{},{}",
                    l + 1,
                    k + 1,
                    lower(gamma),
                    lower(eta)
                )
            }
            TaskKind::SelectPair { i, j } => write!(f, "pair:{},{}", i + 1, j + 1),
            TaskKind::Reverse => f.write_str("reverse"),
        }
    }
}

impl FromStr for TaskKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown task `{s}`"));
        let index = |t: &str| -> Result<usize> {
            match t.trim().parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(Error::InvalidArgument(format!(
                    "qubit index `{t}` must be a positive integer"
                ))),
            }
        };
        let label = |t: &str| -> Result<Pauli> {
            let mut cs = t.trim().chars();
            match (cs.next().and_then(Pauli::from_char), cs.next()) {
                (Some(p), None) if p != Pauli::I => Ok(p),
                _ => Err(Error::InvalidArgument(format!(
                    "Pauli label `{t}` must be x, y or z"
                ))),
            }
        };
        match s.split_once(':') {
            None if s == "decouple" => Ok(TaskKind::Decouple),
            None if s == "reverse" => Ok(TaskKind::Reverse),
            Some(("select", rest)) => {
                let parts: Vec<&str> = rest.split(',').collect();
                match parts.as_slice() {
                    [l, k] => Ok(TaskKind::Select {
                        l: index(l)?,
                        k: index(k)?,
                        gamma: Pauli::Z,
                        eta: Pauli::Z,
                    }),
                    [l, k, g, e] => Ok(TaskKind::Select {
                        l: index(l)?,
                        k: index(k)?,
                        gamma: label(g)?,
                        eta: label(e)?,
                    }),
                    _ => Err(bad()),
                }
            }
            Some(("pair", rest)) => match rest.split(',').collect::<Vec<_>>().as_slice() {
                [i, j] => Ok(TaskKind::SelectPair {
                    i: index(i)?,
                    j: index(j)?,
                }),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TaskSpec {
    pub kind: TaskKind,
    pub framework: Framework,
    /// Require zero row sums so single-qubit terms cancel too.
    pub remove_local: bool,
}

impl TaskSpec {
    pub fn new(kind: TaskKind, framework: Framework) -> Self {
        TaskSpec {
            kind,
            framework,
            remove_local: true,
        }
    }

    pub fn keep_local(mut self) -> Self {
        self.remove_local = false;
        self
    }

    /// Checks qubit indices against `n` and labels against the framework.
    pub fn validate(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidArgument("need at least one qubit".into()));
        }
        let in_range = |q: usize| {
            if q < n {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!(
                    "qubit {} out of range for n = {n}",
                    q + 1
                )))
            }
        };
        match self.kind {
            TaskKind::Decouple | TaskKind::Reverse => Ok(()),
            TaskKind::Select { l, k, gamma, eta } => {
                in_range(l)?;
                in_range(k)?;
                if l == k {
                    return Err(Error::InvalidArgument("selected qubits must differ".into()));
                }
                if gamma == Pauli::I || eta == Pauli::I {
                    return Err(Error::InvalidArgument(
                        "selected labels must be x, y or z".into(),
                    ));
                }
                if self.framework == Framework::Zz && (gamma != Pauli::Z || eta != Pauli::Z) {
                    return Err(Error::InvalidArgument(
                        "the zz framework can only select z,z".into(),
                    ));
                }
                Ok(())
            }
            TaskKind::SelectPair { i, j } => {
                in_range(i)?;
                in_range(j)?;
                if i == j {
                    return Err(Error::InvalidArgument("selected qubits must differ".into()));
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SchemeBody {
    Zz(SignMatrix),
    General(SignTriple),
}

/// A synthesized (or loaded) scheme with the task it claims to solve.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scheme {
    pub task: TaskSpec,
    pub body: SchemeBody,
    /// Recipe of the Hadamard matrix the rows came from, if known.
    pub construction: Option<String>,
}

impl Scheme {
    /// Pairs a body with a task whose framework matches.
    pub fn new(task: TaskSpec, body: SchemeBody, construction: Option<String>) -> Result<Self> {
        let fw = match body {
            SchemeBody::Zz(_) => Framework::Zz,
            SchemeBody::General(_) => Framework::General,
        };
        if fw != task.framework {
            return Err(Error::Shape(format!(
                "a {fw} body cannot carry a {} task",
                task.framework
            )));
        }
        let s = Scheme {
            task,
            body,
            construction,
        };
        task.validate(s.qubits())?;
        Ok(s)
    }

    pub fn qubits(&self) -> usize {
        match &self.body {
            SchemeBody::Zz(s) => s.qubits(),
            SchemeBody::General(t) => t.qubits(),
        }
    }

    pub fn intervals(&self) -> usize {
        match &self.body {
            SchemeBody::Zz(s) => s.intervals(),
            SchemeBody::General(t) => t.intervals(),
        }
    }

    pub fn framework(&self) -> Framework {
        self.task.framework
    }

    /// `m / n` for ZZ, `m / 3n` for the general framework.
    pub fn overhead(&self) -> f64 {
        let n = self.qubits() as f64;
        match self.framework() {
            Framework::Zz => self.intervals() as f64 / n,
            Framework::General => self.intervals() as f64 / (3.0 * n),
        }
    }
}
