use decoupler::gh::{gh4_base, gh_for_lambda, gh_kron, GhMatrix};
use decoupler::hadamard::{kron, normalize, paley, sylvester};
use decoupler::pauli::Pauli;
use decoupler::pulse::{compile_general, compile_zz, simplify, PulseSchedule, Step};
use decoupler::scheme::{SignMatrix, SignTriple};
use decoupler::schur::{partition_sylvester, BitString};
use decoupler::sim::{distance, random_hamiltonian, run_schedule};
use decoupler::text;
use decoupler::{HadamardMatrix, PaleyVariant, SizeCap};
use proptest::prelude::*;

/// Largest number of pairwise disjoint XOR-zero triples of nonzero `r`-bit
/// strings, by exhaustive search.
fn max_packing(r: u32) -> usize {
    let n = 1usize << r;
    fn go(n: usize, used: &mut Vec<bool>, from: usize, count: usize, best: &mut usize) {
        let free = (1..n).filter(|&s| !used[s]).count();
        if count + free / 3 <= *best {
            return;
        }
        let Some(a) = (from..n).find(|&s| !used[s]) else {
            *best = (*best).max(count);
            return;
        };
        used[a] = true;
        for b in a + 1..n {
            let c = a ^ b;
            if c > b && !used[b] && !used[c] {
                used[b] = true;
                used[c] = true;
                go(n, used, a + 1, count + 1, best);
                used[b] = false;
                used[c] = false;
            }
        }
        // `a` left uncovered.
        go(n, used, a + 1, count, best);
        used[a] = false;
    }
    let mut used = vec![false; n];
    used[0] = true;
    let mut best = 0;
    go(n, &mut used, 1, 0, &mut best);
    best
}

#[test]
fn partition_is_a_maximum_packing_for_small_r() {
    for r in 2..=5 {
        assert_eq!(
            partition_sylvester(r).unwrap().triples.len(),
            max_packing(r),
            "r={r}"
        );
    }
}

fn base_matrices() -> Vec<HadamardMatrix> {
    let cap = SizeCap::default();
    let mut v: Vec<HadamardMatrix> = (0..=4).map(|r| sylvester(r, cap).unwrap()).collect();
    v.push(paley(3, PaleyVariant::One, cap).unwrap());
    v.push(paley(7, PaleyVariant::One, cap).unwrap());
    v.push(paley(5, PaleyVariant::Two, cap).unwrap());
    v.push(paley(11, PaleyVariant::One, cap).unwrap());
    v
}

fn orthogonal(h: &HadamardMatrix) -> bool {
    let m = h.matrix();
    let n = m.rows();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let s: i32 = m
                .row(i)
                .iter()
                .zip(m.row(j))
                .map(|(&a, &b)| (a * b) as i32)
                .sum();
            s == if i == j { n as i32 } else { 0 }
        })
    })
}

fn gh_balanced(g: &GhMatrix) -> bool {
    let n = g.order();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let mut counts = [0; 4];
            for c in 0..n {
                counts[g.get(i, c).index() ^ g.get(j, c).index()] += 1;
            }
            counts.iter().all(|&k| k == g.lambda())
        })
    })
}

fn random_schedule_matrix() -> impl Strategy<Value = Vec<Vec<i8>>> {
    (1usize..=3, 1usize..=6).prop_flat_map(|(n, m)| {
        prop::collection::vec(
            prop::collection::vec(prop::sample::select(vec![1i8, -1]), m),
            n,
        )
    })
}

fn random_paulis() -> impl Strategy<Value = Vec<Vec<Pauli>>> {
    (1usize..=3, 1usize..=6).prop_flat_map(|(n, m)| {
        prop::collection::vec(
            prop::collection::vec(
                prop::sample::select(vec![Pauli::I, Pauli::X, Pauli::Y, Pauli::Z]),
                m,
            ),
            n,
        )
    })
}

fn triple_from(cells: &[Vec<Pauli>]) -> SignTriple {
    let axis = |a: Pauli| {
        let rows: Vec<Vec<i8>> = cells
            .iter()
            .map(|r| r.iter().map(|p| p.conjugation_sign(a)).collect())
            .collect();
        SignMatrix::from_rows(&rows).unwrap()
    };
    SignTriple::new(axis(Pauli::X), axis(Pauli::Y), axis(Pauli::Z)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sylvester_entries_follow_parity(r in 0u32..=7, i in 0usize..128, j in 0usize..128) {
        let h = sylvester(r, SizeCap::default()).unwrap();
        let (i, j) = (i % h.order(), j % h.order());
        let want = if (i & j).count_ones() % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(h.get(i, j), want);
    }

    #[test]
    fn normalize_is_idempotent_and_valid(k in 0usize..9, flips in prop::collection::vec(any::<bool>(), 24)) {
        let h = &base_matrices()[k];
        let mut m = h.matrix().clone();
        for (i, &f) in flips.iter().enumerate().take(m.rows()) {
            if f {
                m.negate_row(i);
            }
        }
        for (j, &f) in flips.iter().rev().enumerate().take(m.cols()) {
            if f {
                m.negate_col(j);
            }
        }
        let signed = HadamardMatrix::new(m, h.recipe().clone()).unwrap();
        let once = normalize(&signed);
        prop_assert!(once.is_normalized());
        prop_assert!(orthogonal(&once));
        let twice = normalize(&once);
        prop_assert_eq!(twice.matrix(), once.matrix());
    }

    #[test]
    fn kronecker_products_stay_hadamard(a in 0usize..9, b in 0usize..9) {
        let base = base_matrices();
        let k = kron(&base[a], &base[b], SizeCap::default()).unwrap();
        prop_assert_eq!(k.order(), base[a].order() * base[b].order());
        prop_assert!(orthogonal(&k));
    }

    #[test]
    fn gh_kronecker_products_stay_balanced(a in 1usize..=3, b in 1usize..=3) {
        let cap = SizeCap::default();
        let (ga, gb) = (gh_for_lambda(a, cap).unwrap(), gh_for_lambda(b, cap).unwrap());
        let g = gh_kron(&ga, &gb, cap).unwrap();
        prop_assert_eq!(g.lambda(), 4 * a * b);
        prop_assert!(gh_balanced(&g));
        prop_assert!(gh_balanced(&gh_kron(&gh4_base(), &ga, cap).unwrap()));
    }

    #[test]
    fn bitstrings_round_trip(width in 1u8..=16, value in any::<u32>()) {
        let b = BitString::new(value & ((1u32 << width) - 1), width);
        let back = BitString::parse(&b.to_string()).unwrap();
        prop_assert_eq!(back, b);
    }

    #[test]
    fn sign_matrix_text_round_trips(rows in random_schedule_matrix()) {
        let s = SignMatrix::from_rows(&rows).unwrap();
        let t = text::write_sign_matrix(&s);
        prop_assert_eq!(text::parse_sign_matrix(&t).unwrap(), s);
    }

    #[test]
    fn pauli_product_is_associative_up_to_phase(a in 0u8..4, b in 0u8..4, c in 0u8..4) {
        let (a, b, c) = (Pauli::from_xz(a), Pauli::from_xz(b), Pauli::from_xz(c));
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * a, Pauli::I);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn simplified_zz_schedules_match_raw(rows in random_schedule_matrix(), seed in any::<u64>(), tau in 0.01f64..1.0) {
        let s = SignMatrix::from_rows(&rows).unwrap();
        let raw = compile_zz(&s, tau);
        let h = random_hamiltonian(s.qubits(), seed, decoupler::scheme::Framework::Zz, true).unwrap();
        let d = distance(&run_schedule(&raw, &h, tau).unwrap(), &run_schedule(&simplify(&raw), &h, tau).unwrap()).unwrap();
        prop_assert!(d < 1e-10, "{}", d);
    }

    #[test]
    fn simplified_general_schedules_match_raw(cells in random_paulis(), seed in any::<u64>(), tau in 0.01f64..1.0) {
        let raw = compile_general(&triple_from(&cells), tau).unwrap();
        let h = random_hamiltonian(cells.len(), seed, decoupler::scheme::Framework::General, true).unwrap();
        let d = distance(&run_schedule(&raw, &h, tau).unwrap(), &run_schedule(&simplify(&raw), &h, tau).unwrap()).unwrap();
        prop_assert!(d < 1e-10, "{}", d);
    }

    #[test]
    fn schedule_text_round_trips(cells in random_paulis(), tau in 0.001f64..10.0) {
        let p = simplify(&compile_general(&triple_from(&cells), tau).unwrap());
        prop_assert_eq!(text::parse_schedule(&text::write_schedule(&p)).unwrap(), p);
    }

    #[test]
    fn arbitrary_gate_runs_simplify_soundly(layers in prop::collection::vec(prop::option::of(prop::collection::vec(0u8..4, 2)), 0..10)) {
        let steps: Vec<Step> = layers
            .into_iter()
            .map(|l| match l {
                Some(g) => Step::Gates(g.into_iter().map(Pauli::from_xz).collect()),
                None => Step::Free,
            })
            .collect();
        let p = PulseSchedule::new(2, 0.3, steps).unwrap();
        let h = random_hamiltonian(2, 5, decoupler::scheme::Framework::General, true).unwrap();
        let q = simplify(&p);
        prop_assert_eq!(q.intervals(), p.intervals());
        let d = distance(&run_schedule(&p, &h, 0.3).unwrap(), &run_schedule(&q, &h, 0.3).unwrap()).unwrap();
        prop_assert!(d < 1e-10, "{}", d);
    }
}
