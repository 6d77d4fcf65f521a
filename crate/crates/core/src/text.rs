//! Line-oriented text formats for every artifact the tools exchange.
//!
//! Writers and readers round-trip exactly. Readers report the 1-based line
//! of the first problem. Blank lines are ignored everywhere; `#` comments
//! are accepted in Hamiltonian files only.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gh::{Gf4, GhMatrix};
use crate::hadamard::{HadamardMatrix, Recipe};
use crate::matrix::PmMatrix;
use crate::pauli::{parse_word, word_string, Pauli};
use crate::pulse::{PulseSchedule, Step};
use crate::scheme::{Framework, Scheme, SchemeBody, SignMatrix, SignTriple, TaskKind, TaskSpec};
use crate::schur::{BitString, SchurPartition, SchurTriple};
use crate::sim::{PauliHamiltonian, Term};

/// Widest partition accepted on input; coverage checking allocates `2^r`.
pub const MAX_PARTITION_BITS: u32 = 20;

/// Non-blank lines with their 1-based numbers.
struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(s: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            s.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty()),
        );
        Lines {
            inner: it.peekable(),
            last: 0,
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.inner.next() {
            Some((n, l)) => {
                self.last = n;
                Ok((n, l))
            }
            None => Err(Error::parse(
                self.last + 1,
                format!("unexpected end of input, expected {what}"),
            )),
        }
    }

    fn peek(&mut self) -> Option<&(usize, &'a str)> {
        self.inner.peek()
    }

    fn finish(mut self) -> Result<()> {
        match self.inner.next() {
            Some((n, l)) => Err(Error::parse(n, format!("unexpected trailing line {l:?}"))),
            None => Ok(()),
        }
    }
}

fn number<T: FromStr>(line: usize, s: &str, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} {s:?}")))
}

/// Splits `key=value`, requiring the given key.
fn field<'a>(line: usize, tok: Option<&'a str>, key: &str) -> Result<&'a str> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {key}=")))?;
    tok.strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| Error::parse(line, format!("expected {key}=..., found {tok:?}")))
}

fn sign_row(line: usize, s: &str, width: usize) -> Result<Vec<i8>> {
    let row: Vec<i8> = s
        .chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            _ => Err(Error::parse(line, format!("invalid sign character {c:?}"))),
        })
        .collect::<Result<_>>()?;
    if row.len() != width {
        return Err(Error::parse(
            line,
            format!("row has {} entries, expected {width}", row.len()),
        ));
    }
    Ok(row)
}

fn rows_block(lines: &mut Lines, count: usize, width: usize) -> Result<Vec<Vec<i8>>> {
    let mut rows = Vec::with_capacity(count.min(4096));
    for _ in 0..count {
        let (n, l) = lines.next("a row of + and -")?;
        rows.push(sign_row(n, l, width)?);
    }
    Ok(rows)
}

fn write_rows(out: &mut String, m: &PmMatrix) {
    for r in 0..m.rows() {
        out.push_str(&m.row_string(r));
        out.push('\n');
    }
}

// Hadamard matrices: "order m", then m rows.

pub fn write_hadamard(h: &HadamardMatrix) -> String {
    let mut out = format!("order {}\n", h.order());
    write_rows(&mut out, h.matrix());
    out
}

/// Reads and validates a Hadamard matrix; the recipe is `literal(file)`.
pub fn parse_hadamard(s: &str) -> Result<HadamardMatrix> {
    let mut lines = Lines::new(s);
    let (n, head) = lines.next("header")?;
    let m: usize = match head.split_whitespace().collect::<Vec<_>>()[..] {
        ["order", m] => number(n, m, "order")?,
        _ => {
            return Err(Error::parse(
                n,
                format!("expected \"order <m>\", found {head:?}"),
            ))
        }
    };
    if m == 0 {
        return Err(Error::parse(n, "order must be positive"));
    }
    let rows = rows_block(&mut lines, m, m)?;
    lines.finish()?;
    HadamardMatrix::new(PmMatrix::from_rows(&rows)?, Recipe::Literal("file".into()))
}

// Sign matrices: "matrix <rows> <cols>", then the rows.

pub fn write_sign_matrix(s: &SignMatrix) -> String {
    let mut out = format!("matrix {} {}\n", s.qubits(), s.intervals());
    write_rows(&mut out, s.matrix());
    out
}

fn sign_matrix_block(lines: &mut Lines) -> Result<SignMatrix> {
    let (n, head) = lines.next("matrix header")?;
    let (rows, cols): (usize, usize) = match head.split_whitespace().collect::<Vec<_>>()[..] {
        ["matrix", r, c] => (number(n, r, "row count")?, number(n, c, "column count")?),
        _ => {
            return Err(Error::parse(
                n,
                format!("expected \"matrix <rows> <cols>\", found {head:?}"),
            ))
        }
    };
    if rows == 0 || cols == 0 {
        return Err(Error::parse(n, "sign matrices must be non-empty"));
    }
    SignMatrix::from_rows(&rows_block(lines, rows, cols)?)
}

pub fn parse_sign_matrix(s: &str) -> Result<SignMatrix> {
    let mut lines = Lines::new(s);
    let m = sign_matrix_block(&mut lines)?;
    lines.finish()?;
    Ok(m)
}

// Schemes: header line, then one (zz) or three (general: x, y, z) blocks.

pub fn write_scheme(s: &Scheme) -> String {
    let mut out = format!(
        "scheme {} n={} m={} task={} local={}",
        s.framework(),
        s.qubits(),
        s.intervals(),
        s.task.kind,
        if s.task.remove_local {
            "removed"
        } else {
            "kept"
        }
    );
    if let Some(c) = s
        .construction
        .as_deref()
        .filter(|c| !c.is_empty() && !c.contains(char::is_whitespace))
    {
        out.push_str(" from=");
        out.push_str(c);
    }
    out.push('\n');
    match &s.body {
        SchemeBody::Zz(m) => out.push_str(&write_sign_matrix(m)),
        SchemeBody::General(t) => {
            for m in [&t.sx, &t.sy, &t.sz] {
                out.push_str(&write_sign_matrix(m));
            }
        }
    }
    out
}

/// Reads a scheme. Shapes and labels are validated; the combinatorial
/// criteria are left to the checker so that broken schemes can be loaded
/// and diagnosed.
pub fn parse_scheme(s: &str) -> Result<Scheme> {
    let mut lines = Lines::new(s);
    let (n, head) = lines.next("scheme header")?;
    let mut toks = head.split_whitespace();
    if toks.next() != Some("scheme") {
        return Err(Error::parse(
            n,
            format!("expected \"scheme ...\", found {head:?}"),
        ));
    }
    let framework: Framework = toks
        .next()
        .ok_or_else(|| Error::parse(n, "missing framework"))?
        .parse()
        .map_err(|e: Error| Error::parse(n, e.to_string()))?;
    let qubits: usize = number(n, field(n, toks.next(), "n")?, "qubit count")?;
    let intervals: usize = number(n, field(n, toks.next(), "m")?, "interval count")?;
    let kind: TaskKind = field(n, toks.next(), "task")?
        .parse()
        .map_err(|e: Error| Error::parse(n, e.to_string()))?;
    let remove_local = match field(n, toks.next(), "local")? {
        "removed" => true,
        "kept" => false,
        other => {
            return Err(Error::parse(
                n,
                format!("local must be removed or kept, found {other:?}"),
            ))
        }
    };
    let construction = match toks.next() {
        Some(t) => match field(n, Some(t), "from")? {
            "" => return Err(Error::parse(n, "empty from=")),
            c => Some(c.to_string()),
        },
        None => None,
    };
    if let Some(extra) = toks.next() {
        return Err(Error::parse(
            n,
            format!("unexpected header field {extra:?}"),
        ));
    }
    let mut task = TaskSpec::new(kind, framework);
    task.remove_local = remove_local;

    let body_line = lines.peek().map(|&(l, _)| l).unwrap_or(n + 1);
    let body = match framework {
        Framework::Zz => SchemeBody::Zz(sign_matrix_block(&mut lines)?),
        Framework::General => {
            let sx = sign_matrix_block(&mut lines)?;
            let sy = sign_matrix_block(&mut lines)?;
            let sz = sign_matrix_block(&mut lines)?;
            SchemeBody::General(
                SignTriple::from_parts(sx, sy, sz)
                    .map_err(|e| Error::parse(body_line, e.to_string()))?,
            )
        }
    };
    lines.finish()?;
    let scheme =
        Scheme::new(task, body, construction).map_err(|e| Error::parse(n, e.to_string()))?;
    if scheme.qubits() != qubits || scheme.intervals() != intervals {
        return Err(Error::parse(
            n,
            format!(
                "header says n={qubits} m={intervals}, blocks are {}x{}",
                scheme.qubits(),
                scheme.intervals()
            ),
        ));
    }
    Ok(scheme)
}

// Schur partitions: "partition r=<r>", then `T b1 b2 b3` and `R b` lines.

pub fn write_partition(p: &SchurPartition) -> String {
    let mut out = format!("partition r={}\n", p.r);
    for t in &p.triples {
        out.push_str(&format!("T {} {} {}\n", t.0[0], t.0[1], t.0[2]));
    }
    for b in &p.remainder {
        out.push_str(&format!("R {b}\n"));
    }
    out
}

/// Reads a partition and checks width, coverage, disjointness and XOR-zero.
pub fn parse_partition(s: &str) -> Result<SchurPartition> {
    let mut lines = Lines::new(s);
    let (n, head) = lines.next("partition header")?;
    let r: u32 = match head.split_whitespace().collect::<Vec<_>>()[..] {
        ["partition", r] => number(n, field(n, Some(r), "r")?, "width")?,
        _ => {
            return Err(Error::parse(
                n,
                format!("expected \"partition r=<r>\", found {head:?}"),
            ))
        }
    };
    if r == 0 || r > MAX_PARTITION_BITS {
        return Err(Error::parse(
            n,
            format!("width {r} outside 1..={MAX_PARTITION_BITS}"),
        ));
    }
    let bits = |line: usize, s: &str| -> Result<BitString> {
        let b = BitString::parse(s).map_err(|e| Error::parse(line, e.to_string()))?;
        if b.width() as u32 != r {
            return Err(Error::parse(
                line,
                format!("{s} has width {}, expected {r}", b.width()),
            ));
        }
        Ok(b)
    };
    let mut triples = Vec::new();
    let mut remainder = Vec::new();
    while let Some(&(ln, l)) = lines.peek() {
        lines.next("entry")?;
        match l.split_whitespace().collect::<Vec<_>>()[..] {
            ["T", a, b, c] => triples.push(
                SchurTriple::new(bits(ln, a)?, bits(ln, b)?, bits(ln, c)?)
                    .map_err(|e| Error::parse(ln, e.to_string()))?,
            ),
            ["R", b] => remainder.push(bits(ln, b)?),
            _ => {
                return Err(Error::parse(
                    ln,
                    format!("expected \"T a b c\" or \"R b\", found {l:?}"),
                ))
            }
        }
        if triples.len() * 3 + remainder.len() > 1usize << r {
            return Err(Error::parse(
                ln,
                format!("more entries than the {} strings of width {r}", 1u64 << r),
            ));
        }
    }
    let p = SchurPartition {
        r,
        triples,
        remainder,
        distinguished: None,
    };
    p.validate().map_err(|e| Error::parse(n, e.to_string()))?;
    Ok(p)
}

// Generalized Hadamard matrices over GF(4): "gh 4 <lambda>", then rows of
// e/x/y/z.

pub fn write_gh(g: &GhMatrix) -> String {
    let mut out = format!("gh 4 {}\n", g.lambda());
    for r in 0..g.order() {
        out.push_str(&g.row_string(r));
        out.push('\n');
    }
    out
}

/// Largest `λ` accepted on input.
pub const MAX_GH_LAMBDA: usize = 1024;

pub fn parse_gh(s: &str) -> Result<GhMatrix> {
    let mut lines = Lines::new(s);
    let (n, head) = lines.next("gh header")?;
    let lambda: usize = match head.split_whitespace().collect::<Vec<_>>()[..] {
        ["gh", "4", l] => number(n, l, "lambda")?,
        _ => {
            return Err(Error::parse(
                n,
                format!("expected \"gh 4 <lambda>\", found {head:?}"),
            ))
        }
    };
    if lambda == 0 || lambda > MAX_GH_LAMBDA {
        return Err(Error::parse(
            n,
            format!("lambda {lambda} outside 1..={MAX_GH_LAMBDA}"),
        ));
    }
    let order = 4 * lambda;
    let mut rows = Vec::with_capacity(order);
    for _ in 0..order {
        let (ln, l) = lines.next("a row of e/x/y/z")?;
        let row: Vec<Gf4> = l
            .chars()
            .map(|c| {
                Gf4::from_char(c)
                    .ok_or_else(|| Error::parse(ln, format!("invalid GF(4) letter {c:?}")))
            })
            .collect::<Result<_>>()?;
        if row.len() != order {
            return Err(Error::parse(
                ln,
                format!("row has {} entries, expected {order}", row.len()),
            ));
        }
        rows.push(row);
    }
    lines.finish()?;
    GhMatrix::new(lambda, rows).map_err(|e| Error::parse(n, e.to_string()))
}

// Pulse schedules: "pulses n=<n> m=<m> tau=<τ>", then alternating `G <word>`
// and `F <τ>` lines.

pub fn write_schedule(p: &PulseSchedule) -> String {
    let mut out = format!(
        "pulses n={} m={} tau={}\n",
        p.qubits(),
        p.intervals(),
        p.tau()
    );
    for s in p.steps() {
        match s {
            Step::Gates(layer) => out.push_str(&format!("G {}\n", word_string(layer))),
            Step::Free => out.push_str(&format!("F {}\n", p.tau())),
        }
    }
    out
}

pub fn parse_schedule(s: &str) -> Result<PulseSchedule> {
    let mut lines = Lines::new(s);
    let (n, head) = lines.next("pulses header")?;
    let mut toks = head.split_whitespace();
    if toks.next() != Some("pulses") {
        return Err(Error::parse(
            n,
            format!("expected \"pulses ...\", found {head:?}"),
        ));
    }
    let qubits: usize = number(n, field(n, toks.next(), "n")?, "qubit count")?;
    let intervals: usize = number(n, field(n, toks.next(), "m")?, "interval count")?;
    let tau: f64 = number(n, field(n, toks.next(), "tau")?, "interval length")?;
    if let Some(extra) = toks.next() {
        return Err(Error::parse(
            n,
            format!("unexpected header field {extra:?}"),
        ));
    }
    let mut steps = Vec::new();
    while let Some(&(ln, l)) = lines.peek() {
        lines.next("step")?;
        let (kind, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        match kind {
            "G" => {
                let w = parse_word(rest)
                    .ok_or_else(|| Error::parse(ln, format!("invalid Pauli word {rest:?}")))?;
                if w.len() != qubits {
                    return Err(Error::parse(
                        ln,
                        format!("layer has {} letters, expected {qubits}", w.len()),
                    ));
                }
                steps.push(Step::Gates(w));
            }
            "F" => {
                let t: f64 = number(ln, rest, "interval length")?;
                if t != tau {
                    return Err(Error::parse(
                        ln,
                        format!("interval length {t} differs from tau={tau}"),
                    ));
                }
                steps.push(Step::Free);
            }
            _ => {
                return Err(Error::parse(
                    ln,
                    format!("expected \"G <word>\" or \"F <tau>\", found {l:?}"),
                ))
            }
        }
    }
    let p = PulseSchedule::new(qubits, tau, steps).map_err(|e| Error::parse(n, e.to_string()))?;
    if p.intervals() != intervals {
        return Err(Error::parse(
            n,
            format!("header says m={intervals}, found {} F lines", p.intervals()),
        ));
    }
    Ok(p)
}

// Hamiltonians: one `<coeff> <word>` per line.

pub fn write_hamiltonian(h: &PauliHamiltonian) -> String {
    let mut out = String::new();
    for t in h.terms() {
        // `{:?}` prints the shortest string that reads back to the same f64.
        out.push_str(&format!("{:?} {}\n", t.coeff, word_string(&t.word)));
    }
    out
}

/// Reads a Hamiltonian; all words must have the same length. Words with
/// only identity letters are accepted and contribute a global phase.
pub fn parse_hamiltonian(s: &str) -> Result<PauliHamiltonian> {
    let mut qubits = None;
    let mut terms = Vec::new();
    let mut last = 0;
    for (i, raw) in s.lines().enumerate() {
        let ln = i + 1;
        last = ln;
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let (c, w) = match l.split_whitespace().collect::<Vec<_>>()[..] {
            [c, w] => (c, w),
            _ => {
                return Err(Error::parse(
                    ln,
                    format!("expected \"<coeff> <word>\", found {l:?}"),
                ))
            }
        };
        let coeff: f64 = number(ln, c, "coefficient")?;
        if !coeff.is_finite() {
            return Err(Error::parse(ln, format!("non-finite coefficient {c}")));
        }
        let word =
            parse_word(w).ok_or_else(|| Error::parse(ln, format!("invalid Pauli word {w:?}")))?;
        match qubits {
            None => qubits = Some(word.len()),
            Some(q) if q != word.len() => {
                return Err(Error::parse(
                    ln,
                    format!("word has {} letters, expected {q}", word.len()),
                ))
            }
            _ => {}
        }
        if word.iter().filter(|&&p| p != Pauli::I).count() > 2 {
            return Err(Error::parse(
                ln,
                format!("word {w} acts on more than two qubits"),
            ));
        }
        terms.push(Term { coeff, word });
    }
    let qubits = qubits.ok_or_else(|| Error::parse(last.max(1), "no terms"))?;
    PauliHamiltonian::new(qubits, terms).map_err(|e| Error::parse(1, e.to_string()))
}
