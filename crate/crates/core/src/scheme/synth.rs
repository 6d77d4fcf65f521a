use super::check::check_scheme;
use super::hosts::HostPlan;
use super::{Framework, Scheme, SchemeBody, SignMatrix, SignTriple, TaskKind, TaskSpec};
use crate::error::{Error, Result};
use crate::gh::Host;
use crate::hadamard::{best_order, normalize, HadamardMatrix, SizeCap};
use crate::matrix::PmMatrix;
use crate::pauli::Pauli;

/// Builds a scheme for `task` on `n` qubits.
pub fn synth(task: &TaskSpec, n: usize, cap: SizeCap) -> Result<Scheme> {
    task.validate(n)?;
    match (task.framework, task.kind) {
        (Framework::Zz, TaskKind::Decouple) => synth_decouple_zz(n, task.remove_local, cap),
        (Framework::Zz, TaskKind::Select { l, k, .. }) => {
            synth_select_zz(n, l, k, task.remove_local, cap)
        }
        // With only ZZ couplings, keeping a pair is keeping its one term.
        (Framework::Zz, TaskKind::SelectPair { i, j }) => {
            synth_select_zz(n, i, j, task.remove_local, cap)
        }
        (fw, TaskKind::Reverse) => synth_reverse(n, fw, cap),
        (Framework::General, TaskKind::Decouple) => {
            let mut s = synth_decouple_general(n, cap)?;
            s.task.remove_local = task.remove_local;
            Ok(s)
        }
        (Framework::General, TaskKind::Select { l, k, gamma, eta }) => {
            let mut s = synth_select_general(n, l, k, gamma, eta, cap)?;
            s.task.remove_local = task.remove_local;
            Ok(s)
        }
        (Framework::General, TaskKind::SelectPair { i, j }) => {
            let mut s = synth_select_pair(n, i, j, cap)?;
            s.task.remove_local = task.remove_local;
            Ok(s)
        }
    }
}

/// Normalized Hadamard matrix of the smallest catalogued order `>= n`.
fn normalized_at_least(n: usize, cap: SizeCap) -> Result<HadamardMatrix> {
    let entry = best_order(n)?;
    cap.check(entry.achieved)?;
    Ok(normalize(&entry.recipe.build(cap)?))
}

fn construction(h: &HadamardMatrix) -> Option<String> {
    Some(h.recipe().to_string())
}

/// `n` pairwise-orthogonal rows. With `remove_local` the all-ones first row
/// is skipped so every row sums to zero.
pub fn synth_decouple_zz(n: usize, remove_local: bool, cap: SizeCap) -> Result<Scheme> {
    let mut task = TaskSpec::new(TaskKind::Decouple, Framework::Zz);
    task.remove_local = remove_local;
    task.validate(n)?;
    let skip = usize::from(remove_local);
    let h = normalized_at_least(n + skip, cap)?;
    let idx: Vec<usize> = (skip..skip + n).collect();
    let body = SchemeBody::Zz(SignMatrix::new(h.matrix().select_rows(&idx)));
    Scheme::new(task, body, construction(&h))
}

/// Orthogonal rows except that qubit `j` repeats qubit `i`'s row.
pub fn synth_select_zz(
    n: usize,
    i: usize,
    j: usize,
    remove_local: bool,
    cap: SizeCap,
) -> Result<Scheme> {
    let mut task = TaskSpec::new(
        TaskKind::Select {
            l: i,
            k: j,
            gamma: Pauli::Z,
            eta: Pauli::Z,
        },
        Framework::Zz,
    );
    task.remove_local = remove_local;
    task.validate(n)?;
    let skip = usize::from(remove_local);
    let h = normalized_at_least(n - 1 + skip, cap)?;
    let mut next = skip;
    let mut idx = vec![0; n];
    for (q, slot) in idx.iter_mut().enumerate() {
        if q != j {
            *slot = next;
            next += 1;
        }
    }
    idx[j] = idx[i];
    let body = SchemeBody::Zz(SignMatrix::new(h.matrix().select_rows(&idx)));
    Scheme::new(task, body, construction(&h))
}

/// Assigns the host's Schur triples to qubits in order: a triple `(a, b, c)`
/// becomes rows `S_x = a`, `S_y = b`, `S_z = c` of one qubit.
fn triple_body(host: &Host, per_qubit: &[[usize; 3]]) -> Result<SignTriple> {
    let m = host.matrix.matrix();
    let pick = |axis: usize| {
        SignMatrix::new(m.select_rows(&per_qubit.iter().map(|t| t[axis]).collect::<Vec<_>>()))
    };
    SignTriple::new(pick(0), pick(1), pick(2))
}

/// Rows of `n` disjoint Schur triples from the smallest host that has them.
pub fn synth_decouple_general(n: usize, cap: SizeCap) -> Result<Scheme> {
    let task = TaskSpec::new(TaskKind::Decouple, Framework::General);
    task.validate(n)?;
    let plan = HostPlan::for_decoupling(n, cap, false)?;
    let host = plan.build(cap)?;
    let body = triple_body(&host, &host.triples[..n])?;
    Scheme::new(task, SchemeBody::General(body), Some(plan.to_string()))
}

/// Keeps `σ_γ^{(l)} σ_η^{(k)}`: qubit `l` gets `f5` on axis γ and `f1, f2` on
/// the other two axes, qubit `k` gets `f5` on axis η and `f3, f4` on the
/// others, and the remaining qubits take Schur triples that avoid all five
/// rows. Hosts are tried from the smallest up; the first one whose result
/// passes the checker wins.
pub fn synth_select_general(
    n: usize,
    l: usize,
    k: usize,
    gamma: Pauli,
    eta: Pauli,
    cap: SizeCap,
) -> Result<Scheme> {
    let task = TaskSpec::new(TaskKind::Select { l, k, gamma, eta }, Framework::General);
    task.validate(n)?;
    for plan in HostPlan::all(cap, false) {
        // Cheap pre-filter: the host must at least have n - 2 spare triples.
        if plan.triples() + 2 < n || matches!(plan, HostPlan::Sylvester(r) if r < 3) {
            continue;
        }
        if let HostPlan::Composed { r, .. } = plan {
            if r < 3 {
                continue;
            }
        }
        let host = plan.build(cap)?;
        let Some(five) = host.five else { continue };
        let spare: Vec<[usize; 3]> = host
            .triples
            .iter()
            .copied()
            .filter(|t| t.iter().all(|i| !five.contains(i)))
            .collect();
        if spare.len() + 2 < n {
            continue;
        }
        let [f1, f2, f3, f4, f5] = five;
        let around = |label: Pauli, a: usize, b: usize| -> [usize; 3] {
            let g = label.axis().expect("validated label");
            let mut rows = [0; 3];
            rows[g] = f5;
            let others: Vec<usize> = (0..3).filter(|&x| x != g).collect();
            rows[others[0]] = a;
            rows[others[1]] = b;
            rows
        };
        let mut spare = spare.into_iter();
        let per_qubit: Vec<[usize; 3]> = (0..n)
            .map(|q| match q {
                q if q == l => around(gamma, f1, f2),
                q if q == k => around(eta, f3, f4),
                _ => spare.next().expect("counted above"),
            })
            .collect();
        let body = triple_body(&host, &per_qubit)?;
        let scheme = Scheme::new(task, SchemeBody::General(body), Some(plan.to_string()))?;
        if check_scheme(&scheme)?.passed() {
            return Ok(scheme);
        }
    }
    Err(Error::Capacity(format!(
        "a selective-coupling scheme for {n} qubits"
    )))
}

/// Keeps every term on qubits `i, j` by giving both all-ones rows on every
/// axis; the other `n - 2` qubits are decoupled.
pub fn synth_select_pair(n: usize, i: usize, j: usize, cap: SizeCap) -> Result<Scheme> {
    let task = TaskSpec::new(TaskKind::SelectPair { i, j }, Framework::General);
    task.validate(n)?;
    let rest = n - 2;
    let (m, rows, name) = if rest == 0 {
        (PmMatrix::ones(1, 1), Vec::new(), None)
    } else {
        let plan = HostPlan::for_decoupling(rest, cap, false)?;
        let host = plan.build(cap)?;
        (
            host.matrix.matrix().clone(),
            host.triples[..rest].to_vec(),
            Some(plan.to_string()),
        )
    };
    let cols = m.cols();
    let mut others = rows.into_iter();
    let mut axes: [Vec<Vec<i8>>; 3] = Default::default();
    for q in 0..n {
        let t = if q == i || q == j {
            None
        } else {
            others.next()
        };
        for (axis, rows) in axes.iter_mut().enumerate() {
            rows.push(match t {
                Some(t) => m.row(t[axis]).to_vec(),
                None => vec![1; cols],
            });
        }
    }
    let [sx, sy, sz] = axes.map(|rows| SignMatrix::from_rows(&rows));
    let body = SignTriple::new(sx?, sy?, sz?)?;
    Scheme::new(task, SchemeBody::General(body), name)
}

/// Decoupling rows whose first column is all `+`, with that column dropped:
/// every pair of rows then has inner product `-1` and every row sums to `-1`.
pub fn synth_reverse(n: usize, framework: Framework, cap: SizeCap) -> Result<Scheme> {
    let task = TaskSpec::new(TaskKind::Reverse, framework);
    task.validate(n)?;
    let first_col_plus = |m: &PmMatrix| (0..m.rows()).all(|i| m.get(i, 0) == 1);
    let (body, name) = match framework {
        Framework::Zz => {
            let h = normalized_at_least(n + 1, cap)?;
            let idx: Vec<usize> = (1..=n).collect();
            let rows = h.matrix().select_rows(&idx);
            if !first_col_plus(&rows) {
                return Err(Error::Internal("normalized rows must start with +".into()));
            }
            (
                SchemeBody::Zz(SignMatrix::new(rows.without_col(0))),
                construction(&h),
            )
        }
        Framework::General => {
            let dec = synth_decouple_general(n, cap)?;
            let SchemeBody::General(t) = dec.body else {
                unreachable!("general synthesis")
            };
            for s in [&t.sx, &t.sy, &t.sz] {
                if !first_col_plus(s) {
                    return Err(Error::Internal("host rows must start with +".into()));
                }
            }
            let cut = |s: &SignMatrix| SignMatrix::new(s.without_col(0));
            (
                SchemeBody::General(SignTriple::new(cut(&t.sx), cut(&t.sy), cut(&t.sz))?),
                dec.construction,
            )
        }
    };
    Scheme::new(task, body, name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cap() -> SizeCap {
        SizeCap::default()
    }

    fn rows(s: &Scheme) -> Vec<String> {
        match &s.body {
            SchemeBody::Zz(m) => (0..m.qubits()).map(|i| m.row_string(i)).collect(),
            SchemeBody::General(_) => panic!("zz expected"),
        }
    }

    #[test]
    fn zz_decouple_nine_uses_h12() {
        let s = synth_decouple_zz(9, false, cap()).unwrap();
        assert_eq!(s.intervals(), 12);
        assert!(check_scheme(&s).unwrap().passed());
        let s = synth_decouple_zz(9, true, cap()).unwrap();
        assert_eq!(s.intervals(), 12);
        assert!(check_scheme(&s).unwrap().passed());
    }

    #[test]
    fn zz_select_repeats_row() {
        let s = synth_select_zz(9, 7, 8, true, cap()).unwrap();
        assert_eq!(s.intervals(), 12);
        let r = rows(&s);
        assert_eq!(r[7], r[8]);
        assert!(check_scheme(&s).unwrap().passed());

        let s = synth_select_zz(3, 0, 1, false, cap()).unwrap();
        let r = rows(&s);
        assert_eq!(r[0], r[1]);
        assert_ne!(r[0], r[2]);
    }

    #[test]
    fn zz_reverse_small() {
        let s = synth_reverse(2, Framework::Zz, cap()).unwrap();
        assert_eq!(s.intervals(), 3);
        assert!(check_scheme(&s).unwrap().passed());
        assert_eq!(
            synth_reverse(3, Framework::Zz, cap()).unwrap().intervals(),
            3
        );
    }

    #[test]
    fn general_decouple_examples() {
        let s = synth_decouple_general(1, cap()).unwrap();
        let SchemeBody::General(t) = &s.body else {
            panic!()
        };
        assert_eq!(t.sx.row_string(0), "+-+-");
        assert_eq!(t.sy.row_string(0), "++--");
        assert_eq!(t.sz.row_string(0), "+--+");
        assert_eq!(synth_decouple_general(5, cap()).unwrap().intervals(), 16);
        assert_eq!(synth_decouple_general(9, cap()).unwrap().intervals(), 32);
    }

    #[test]
    fn general_select_all_labels() {
        for g in Pauli::XYZ {
            for e in Pauli::XYZ {
                let s = synth_select_general(4, 0, 2, g, e, cap()).unwrap();
                assert!(check_scheme(&s).unwrap().passed(), "{g}{e}");
            }
        }
        assert!(synth_select_general(2, 1, 1, Pauli::Z, Pauli::Z, cap()).is_err());
        assert_eq!(
            synth_select_general(2, 0, 1, Pauli::Z, Pauli::Z, cap())
                .unwrap()
                .intervals(),
            8
        );
    }

    #[test]
    fn pair_examples() {
        let s = synth_select_pair(2, 0, 1, cap()).unwrap();
        assert_eq!(s.intervals(), 1);
        assert!(check_scheme(&s).unwrap().passed());
        let s = synth_select_pair(3, 0, 1, cap()).unwrap();
        assert!(check_scheme(&s).unwrap().passed());
        assert_eq!(
            synth_select_pair(7, 2, 5, cap()).unwrap().intervals(),
            synth_decouple_general(5, cap()).unwrap().intervals()
        );
    }

    #[test]
    fn general_reverse_small() {
        let s = synth_reverse(1, Framework::General, cap()).unwrap();
        assert_eq!(s.intervals(), 3);
        assert!(check_scheme(&s).unwrap().passed());
        assert!(
            check_scheme(&synth_reverse(3, Framework::General, cap()).unwrap())
                .unwrap()
                .passed()
        );
    }
}
