//! Generalized Hadamard matrices GH(4, λ) over GF(4), with the field's
//! additive group written as sign triples under entry-wise product, and the
//! composition that turns a Sylvester host plus a GH(4, λ) into a larger
//! Hadamard matrix that keeps its Schur triples.

mod compose;
mod search;

use std::fmt;
use std::sync::OnceLock;

pub use compose::{compose, interval_bound, sylvester_host, CompositionResult, Host, RowOrigin};
pub use search::{gh_search, SearchOutcome};

use crate::error::{Error, Result};
use crate::hadamard::SizeCap;

/// One of `(+,+,+)`, `(+,-,-)`, `(-,+,-)`, `(-,-,+)`.
///
/// The discriminants make the group law an XOR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gf4 {
    E = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

/// Entry-wise product of the sign triples. Every element is its own
/// inverse, so this is also "division".
impl std::ops::Mul for Gf4 {
    type Output = Gf4;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, other: Gf4) -> Gf4 {
        Gf4::from_index(self as u8 ^ other as u8)
    }
}

impl Gf4 {
    pub const ALL: [Gf4; 4] = [Gf4::E, Gf4::X, Gf4::Y, Gf4::Z];

    pub fn from_index(i: u8) -> Gf4 {
        Gf4::ALL[(i & 3) as usize]
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn signs(self) -> [i8; 3] {
        match self {
            Gf4::E => [1, 1, 1],
            Gf4::X => [1, -1, -1],
            Gf4::Y => [-1, 1, -1],
            Gf4::Z => [-1, -1, 1],
        }
    }

    pub fn from_signs(s: [i8; 3]) -> Option<Gf4> {
        Gf4::ALL.into_iter().find(|g| g.signs() == s)
    }

    pub fn to_char(self) -> char {
        match self {
            Gf4::E => 'e',
            Gf4::X => 'x',
            Gf4::Y => 'y',
            Gf4::Z => 'z',
        }
    }

    pub fn from_char(c: char) -> Option<Gf4> {
        match c {
            'e' => Some(Gf4::E),
            'x' => Some(Gf4::X),
            'y' => Some(Gf4::Y),
            'z' => Some(Gf4::Z),
            _ => None,
        }
    }
}

/// A `4λ × 4λ` array over GF(4) in which every pair of distinct rows has
/// entry-wise quotient containing each element exactly `λ` times.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GhMatrix {
    lambda: usize,
    data: Vec<Gf4>,
}

impl GhMatrix {
    /// Wraps `rows` after checking shape and the GH property.
    pub fn new(lambda: usize, rows: Vec<Vec<Gf4>>) -> Result<Self> {
        let g = GhMatrix::from_rows_unchecked(lambda, rows)?;
        let report = verify_gh(&g);
        if !report.is_valid() {
            return Err(Error::InvalidArgument(format!(
                "not a GH(4, {lambda}): rows {:?} are unbalanced",
                report.offending[0]
            )));
        }
        Ok(g)
    }

    /// Checks only the `4λ × 4λ` shape.
    pub fn from_rows_unchecked(lambda: usize, rows: Vec<Vec<Gf4>>) -> Result<Self> {
        if lambda == 0 {
            return Err(Error::InvalidArgument("λ must be at least 1".into()));
        }
        let order = 4 * lambda;
        if rows.len() != order || rows.iter().any(|r| r.len() != order) {
            return Err(Error::Shape(format!(
                "GH(4, {lambda}) must be {order}x{order}"
            )));
        }
        Ok(GhMatrix {
            lambda,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn order(&self) -> usize {
        4 * self.lambda
    }

    pub fn get(&self, i: usize, j: usize) -> Gf4 {
        self.data[i * self.order() + j]
    }

    pub fn row(&self, i: usize) -> &[Gf4] {
        let n = self.order();
        &self.data[i * n..(i + 1) * n]
    }

    /// First row and first column all identity.
    pub fn is_normalized(&self) -> bool {
        let n = self.order();
        (0..n).all(|j| self.get(0, j) == Gf4::E) && (0..n).all(|i| self.get(i, 0) == Gf4::E)
    }

    pub fn row_string(&self, i: usize) -> String {
        self.row(i).iter().map(|g| g.to_char()).collect()
    }
}

impl fmt::Debug for GhMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GH(4, {})", self.lambda)?;
        for i in 0..self.order() {
            writeln!(f, "  {}", self.row_string(i))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhReport {
    pub lambda: usize,
    /// Row pairs `(i, j)`, `i < j`, whose quotient is unbalanced.
    pub offending: Vec<(usize, usize)>,
}

impl GhReport {
    pub fn is_valid(&self) -> bool {
        self.offending.is_empty()
    }
}

pub fn verify_gh(g: &GhMatrix) -> GhReport {
    let n = g.order();
    let mut offending = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut counts = [0usize; 4];
            for k in 0..n {
                counts[(g.get(i, k) * g.get(j, k)).index()] += 1;
            }
            if counts.iter().any(|&c| c != g.lambda) {
                offending.push((i, j));
            }
        }
    }
    GhReport {
        lambda: g.lambda,
        offending,
    }
}

/// The normalized GH(4, 1).
pub fn gh4_base() -> GhMatrix {
    use Gf4::*;
    GhMatrix {
        lambda: 1,
        data: vec![E, E, E, E, E, Z, X, Y, E, Y, Z, X, E, X, Y, Z],
    }
}

/// Kronecker product under `∘`; a GH(4, λa) ⊗ GH(4, λb) is a GH(4, 4·λa·λb).
pub fn gh_kron(a: &GhMatrix, b: &GhMatrix, cap: SizeCap) -> Result<GhMatrix> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    cap.check(n)?;
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            data.push(a.get(i / nb, j / nb) * b.get(i % nb, j % nb));
        }
    }
    Ok(GhMatrix {
        lambda: 4 * a.lambda * b.lambda,
        data,
    })
}

/// Node budget used when a GH(4, 2) or GH(4, 3) is found by search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// Searched GH(4, λ) for `λ ∈ {2, 3}`, found once and cached.
fn searched(lambda: usize) -> Result<GhMatrix> {
    static CACHE: [OnceLock<Option<GhMatrix>>; 2] = [OnceLock::new(), OnceLock::new()];
    CACHE[lambda - 2]
        .get_or_init(|| match gh_search(lambda, DEFAULT_SEARCH_BUDGET) {
            Ok(SearchOutcome::Found(g)) => Some(g),
            _ => None,
        })
        .clone()
        .ok_or_else(|| Error::Capacity(format!("a GH(4, {lambda}) within the search budget")))
}

/// Whether [`gh_for_lambda`] knows how to build GH(4, λ):
/// `λ ∈ {1, 2, 3} · 4^k`.
pub fn lambda_supported(lambda: usize) -> bool {
    let mut l = lambda;
    while l > 3 && l.is_multiple_of(4) {
        l /= 4;
    }
    (1..=3).contains(&l)
}

/// A normalized GH(4, λ) for supported `λ`: the base matrix, a searched
/// GH(4, 2) or GH(4, 3), or Kronecker products of the base with a smaller
/// one.
pub fn gh_for_lambda(lambda: usize, cap: SizeCap) -> Result<GhMatrix> {
    if !lambda_supported(lambda) {
        return Err(Error::InvalidArgument(format!(
            "GH(4, {lambda}) is not constructible here; λ must be 1, 2 or 3 times a power of 4"
        )));
    }
    cap.check(4 * lambda)?;
    match lambda {
        1 => Ok(gh4_base()),
        2 | 3 => searched(lambda),
        _ => gh_kron(&gh4_base(), &gh_for_lambda(lambda / 4, cap)?, cap),
    }
}
