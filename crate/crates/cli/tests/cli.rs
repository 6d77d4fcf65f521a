use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use decoupler::text;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_decoupler"))
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn temp_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("decoupler-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

#[test]
fn four_qubit_fixture_passes() {
    let o = run(&["check", &fixture("four_qubit.scheme")]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("check.cross=pass"));
    assert!(out.contains("gates=8"));
    assert!(out.ends_with("result=pass\n"));
}

#[test]
fn corrupted_fixture_fails_with_status_one() {
    let o = run(&["check", &fixture("four_qubit_corrupted.scheme")]);
    assert_eq!(code(&o), 1);
    assert!(
        stdout(&o).contains("rows Z3 and Z4: inner product 4, expected 0"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn synth_pipes_into_check() {
    let s = run(&[
        "synth",
        "--task",
        "decouple",
        "--framework",
        "general",
        "--n",
        "5",
    ]);
    assert_eq!(code(&s), 0);
    let c = run_with_stdin(&["check"], &s.stdout);
    assert_eq!(code(&c), 0, "{}", stdout(&c));
    assert!(stdout(&c).contains("m=16"));
}

#[test]
fn every_synthesized_task_checks_and_verifies() {
    let cases: &[&[&str]] = &[
        &["--framework", "zz", "--n", "5"],
        &["--framework", "zz", "--n", "4", "--keep-local"],
        &["--framework", "zz", "--n", "4", "--task", "reverse"],
        &["--framework", "zz", "--n", "5", "--select", "2,4"],
        &["--framework", "general", "--n", "3", "--select", "1,3,x,z"],
        &["--framework", "general", "--n", "3", "--task", "pair:1,2"],
        &["--framework", "general", "--n", "2", "--task", "reverse"],
    ];
    for args in cases {
        let mut full = vec!["synth"];
        full.extend_from_slice(args);
        let s = run(&full);
        assert_eq!(code(&s), 0, "{args:?}");
        let scheme = text::parse_scheme(&stdout(&s)).unwrap();
        let path = temp_file("scheme.txt", &stdout(&s));
        assert_eq!(code(&run(&["check", &path])), 0, "{args:?}");
        let v = run(&[
            "verify", &path, "--ham", "random:3", "--time", "0.1", "--reps", "16",
        ]);
        assert_eq!(code(&v), 0, "{args:?}: {}", stdout(&v));
        let c = run(&["compile", &path, "--tau", "0.25"]);
        let p = text::parse_schedule(&stdout(&c)).unwrap();
        assert_eq!(p.intervals(), scheme.intervals());
        assert_eq!(p.qubits(), scheme.qubits());
    }
}

#[test]
fn out_flag_writes_the_same_scheme() {
    let path = temp_file("out.scheme", "");
    let a = run(&[
        "synth",
        "--framework",
        "general",
        "--n",
        "4",
        "--out",
        &path,
    ]);
    assert_eq!(code(&a), 0);
    assert!(a.stdout.is_empty());
    let b = run(&["synth", "--framework", "general", "--n", "4"]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&b));
}

#[test]
fn verify_reads_hamiltonian_files() {
    let o = run(&[
        "verify",
        &fixture("four_qubit.scheme"),
        "--ham",
        &fixture("two_spins.ham"),
    ]);
    assert_eq!(code(&o), 2, "qubit count mismatch is an input error");
    let s = run(&["synth", "--framework", "zz", "--n", "2"]);
    let scheme = temp_file("zz2.scheme", &stdout(&s));
    let o = run(&[
        "verify",
        &scheme,
        "--ham",
        &fixture("two_spins.ham"),
        "--time",
        "2.0",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("steps=4"));
}

#[test]
fn generated_hamiltonians_round_trip_through_files() {
    let h = decoupler::sim::random_hamiltonian(3, 8, decoupler::scheme::Framework::General, true)
        .unwrap();
    let path = temp_file("h3.ham", &text::write_hamiltonian(&h));
    let s = run(&["synth", "--framework", "general", "--n", "3"]);
    let scheme = temp_file("g3.scheme", &stdout(&s));
    let from_file = run(&[
        "verify", &scheme, "--ham", &path, "--reps", "4", "--time", "0.1",
    ]);
    let from_seed = run(&[
        "verify", &scheme, "--ham", "random:8", "--reps", "4", "--time", "0.1",
    ]);
    assert_eq!(code(&from_file), 0);
    assert_eq!(stdout(&from_file), stdout(&from_seed));
    let global = run(&[
        "--seed", "8", "verify", &scheme, "--reps", "4", "--time", "0.1",
    ]);
    assert_eq!(stdout(&global), stdout(&from_seed));
}

#[test]
fn loose_tolerance_failure_is_a_criterion_failure() {
    let s = run(&["synth", "--framework", "general", "--n", "2"]);
    let o = run_with_stdin(
        &["verify", "--reps", "1", "--time", "1.0", "--tol", "1e-12"],
        &s.stdout,
    );
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).ends_with("result=fail\n"));
}

#[test]
fn compose_partition_and_catalog_outputs_parse() {
    let h = text::parse_hadamard(&stdout(&run(&["compose", "--r", "2", "--lambda", "1"]))).unwrap();
    assert_eq!(h.order(), 16);
    let h = text::parse_hadamard(&stdout(&run(&["compose", "--r", "3", "--lambda", "3"]))).unwrap();
    assert_eq!(h.order(), 96);
    let g = text::parse_gh(&stdout(&run(&[
        "compose", "--r", "2", "--lambda", "2", "--gh",
    ])))
    .unwrap();
    assert_eq!(g.lambda(), 2);
    let p = text::parse_partition(&stdout(&run(&["partition", "--r", "6"]))).unwrap();
    assert_eq!(p.triples.len(), 21);
    let c = run(&["catalog", "--n", "9", "--matrix"]);
    let out = stdout(&c);
    let (first, rest) = out.split_once('\n').unwrap();
    assert_eq!(first, "requested=9 achieved=12 recipe=paley1(11)");
    assert_eq!(text::parse_hadamard(rest).unwrap().order(), 12);
}

#[test]
fn analyze_emits_csv() {
    let o = run(&[
        "analyze",
        "--n-max",
        "6",
        "--framework",
        "general",
        "--sylvester-only",
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,framework,intervals,c,construction");
    assert_eq!(lines[5], "5,general,16,1.066667,sylvester(4)");
    assert_eq!(lines.len(), 7);
    assert_eq!(
        stdout(&run(&[
            "analyze",
            "--n-max",
            "6",
            "--framework",
            "general",
            "--sylvester-only"
        ])),
        out
    );
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["synth"])), 2);
    assert_eq!(code(&run(&["synth", "--n", "3", "--framework", "xy"])), 2);
    assert_eq!(
        code(&run(&["synth", "--n", "3", "--task", "select:1,1"])),
        2
    );
    assert_eq!(code(&run(&["check", "/nonexistent/scheme"])), 2);
    assert_eq!(code(&run_with_stdin(&["check"], b"order 2\n++\n+-\n")), 2);
    assert_eq!(code(&run(&["compose", "--r", "2", "--lambda", "5"])), 2);
    assert_eq!(code(&run(&["--cap", "8", "catalog", "--n", "9"])), 2);
    assert_eq!(code(&run(&["analyze", "--n-max", "0"])), 2);
    assert_eq!(code(&run(&["partition", "--r", "40"])), 2);
}
