//! Hadamard matrices: Sylvester, Paley and Kronecker constructions,
//! normalization, exact orthogonality checks and an order catalog.
//!
//! Everything here is exact integer arithmetic. A matrix `H` of order `m` is
//! Hadamard iff `H·Hᵀ = m·I`; [`is_hadamard`] reports every row pair that
//! breaks this.

mod catalog;
mod paley;

use std::fmt;

pub use catalog::{best_order, Catalog, CatalogOptions, OrderCatalogEntry};
pub use paley::{paley, prime_power};

use crate::error::{Error, Result};
use crate::matrix::PmMatrix;

/// Largest matrix order any construction will produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SizeCap(pub usize);

impl Default for SizeCap {
    fn default() -> Self {
        SizeCap(4096)
    }
}

impl SizeCap {
    pub fn check(self, order: usize) -> Result<()> {
        if order > self.0 {
            Err(Error::SizeCap { order, cap: self.0 })
        } else {
            Ok(())
        }
    }
}

/// How a Hadamard matrix was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Recipe {
    Sylvester(u32),
    Paley1(u64),
    Paley2(u64),
    Kron(Box<Recipe>, Box<Recipe>),
    /// Generalized-Hadamard composition of a Sylvester host with a GH(4, λ).
    Composed {
        r: u32,
        lambda: usize,
    },
    Literal(String),
}

impl Recipe {
    /// Materializes the matrix this recipe describes.
    pub fn build(&self, cap: SizeCap) -> Result<HadamardMatrix> {
        match self {
            Recipe::Sylvester(r) => sylvester(*r, cap),
            Recipe::Paley1(q) => paley(*q, crate::error::PaleyVariant::One, cap),
            Recipe::Paley2(q) => paley(*q, crate::error::PaleyVariant::Two, cap),
            Recipe::Kron(a, b) => kron(&a.build(cap)?, &b.build(cap)?, cap),
            Recipe::Composed { r, lambda } => {
                let gamma = crate::gh::gh_for_lambda(*lambda, cap)?;
                let host = crate::gh::sylvester_host(*r, cap)?;
                Ok(crate::gh::compose(&host, &gamma, cap)?.hprime)
            }
            Recipe::Literal(name) => Err(Error::InvalidArgument(format!(
                "literal matrix `{name}` has no construction to replay"
            ))),
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Sylvester(r) => write!(f, "sylvester({r})"),
            Recipe::Paley1(q) => write!(f, "paley1({q})"),
            Recipe::Paley2(q) => write!(f, "paley2({q})"),
            Recipe::Kron(a, b) => write!(f, "kron({a},{b})"),
            Recipe::Composed { r, lambda } => write!(f, "composed(sylvester({r}),gh4({lambda}))"),
            Recipe::Literal(name) => write!(f, "literal({name})"),
        }
    }
}

/// A square `±1` matrix with pairwise-orthogonal rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HadamardMatrix {
    matrix: PmMatrix,
    recipe: Recipe,
}

impl HadamardMatrix {
    /// Wraps `matrix` after checking `H·Hᵀ = m·I`.
    pub fn new(matrix: PmMatrix, recipe: Recipe) -> Result<Self> {
        let report = check(&matrix)?;
        if !report.is_valid() {
            return Err(Error::Internal(format!(
                "{recipe} is not Hadamard: {} offending row pairs, first {:?}",
                report.offending.len(),
                report.offending[0]
            )));
        }
        Ok(HadamardMatrix { matrix, recipe })
    }

    pub fn order(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &PmMatrix {
        &self.matrix
    }

    pub fn recipe(&self) -> &Recipe {
        &self.recipe
    }

    pub fn into_matrix(self) -> PmMatrix {
        self.matrix
    }

    pub fn row(&self, i: usize) -> &[i8] {
        self.matrix.row(i)
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.matrix.get(i, j)
    }

    /// First row and first column all `+1`.
    pub fn is_normalized(&self) -> bool {
        let m = self.order();
        (0..m).all(|j| self.matrix.get(0, j) == 1) && (0..m).all(|i| self.matrix.get(i, 0) == 1)
    }
}

/// Result of an orthogonality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HadamardReport {
    pub order: usize,
    /// Row pairs `(i, j)`, `i < j`, with nonzero inner product.
    pub offending: Vec<(usize, usize)>,
}

impl HadamardReport {
    pub fn is_valid(&self) -> bool {
        self.offending.is_empty()
    }
}

/// Checks `M·Mᵀ = m·I` for arbitrary integer input.
///
/// Errors on a non-square matrix or an entry outside `{+1, -1}`.
pub fn is_hadamard<R: AsRef<[i8]>>(rows: &[R]) -> Result<HadamardReport> {
    let m = PmMatrix::from_rows(rows)?;
    if rows.iter().any(|r| r.as_ref().len() != rows.len()) {
        return Err(Error::NotSquare {
            rows: rows.len(),
            cols: m.cols(),
        });
    }
    check(&m)
}

pub(crate) fn check(m: &PmMatrix) -> Result<HadamardReport> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let mut offending = Vec::new();
    for i in 0..m.rows() {
        for j in i + 1..m.rows() {
            if m.dot(i, j) != 0 {
                offending.push((i, j));
            }
        }
    }
    Ok(HadamardReport {
        order: m.rows(),
        offending,
    })
}

/// `H(2)^{⊗r}`; entry `(i, j)` is `(-1)^{popcount(i & j)}`.
pub fn sylvester(r: u32, cap: SizeCap) -> Result<HadamardMatrix> {
    if r >= usize::BITS - 1 {
        return Err(Error::SizeCap {
            order: usize::MAX,
            cap: cap.0,
        });
    }
    let order = 1usize << r;
    cap.check(order)?;
    let matrix = PmMatrix::from_fn(order, order, |i, j| {
        if (i & j).count_ones() % 2 == 0 {
            1
        } else {
            -1
        }
    });
    Ok(HadamardMatrix {
        matrix,
        recipe: Recipe::Sylvester(r),
    })
}

pub fn kron(a: &HadamardMatrix, b: &HadamardMatrix, cap: SizeCap) -> Result<HadamardMatrix> {
    cap.check(a.order() * b.order())?;
    // Rows of a Kronecker product of orthogonal matrices stay orthogonal;
    // no re-check needed.
    Ok(HadamardMatrix {
        matrix: a.matrix.kron(&b.matrix),
        recipe: Recipe::Kron(Box::new(a.recipe.clone()), Box::new(b.recipe.clone())),
    })
}

/// Negates rows, then columns, so the first row and column are all `+1`.
pub fn normalize(h: &HadamardMatrix) -> HadamardMatrix {
    let mut m = h.matrix.clone();
    for i in 0..m.rows() {
        if m.get(i, 0) < 0 {
            m.negate_row(i);
        }
    }
    for j in 0..m.cols() {
        if m.get(0, j) < 0 {
            m.negate_col(j);
        }
    }
    HadamardMatrix {
        matrix: m,
        recipe: h.recipe.clone(),
    }
}

/// The order-12 matrix printed alongside the Paley construction, kept as a
/// fixture.
pub fn h12_literal() -> HadamardMatrix {
    const ROWS: [&str; 12] = [
        "++++++++++++",
        "+++--+--+--+",
        "++++---+-+--",
        "+-+++---+-+-",
        "+--+++---+-+",
        "++--++-+--+-",
        "+------+++++",
        "+-+--++--++-",
        "++-+--+---++",
        "+-+-+-++---+",
        "+--+-++++---",
        "++--+-+-++--",
    ];
    let rows: Vec<Vec<i8>> = ROWS
        .iter()
        .map(|r| r.chars().map(|c| if c == '+' { 1 } else { -1 }).collect())
        .collect();
    let matrix = PmMatrix::from_rows(&rows).expect("literal is a sign matrix");
    HadamardMatrix::new(matrix, Recipe::Literal("h12".into())).expect("literal is Hadamard")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cap() -> SizeCap {
        SizeCap::default()
    }

    #[test]
    fn sylvester_small_orders() {
        assert_eq!(sylvester(0, cap()).unwrap().row(0), &[1]);
        let h2 = sylvester(1, cap()).unwrap();
        assert_eq!(h2.matrix().row_string(0), "++");
        assert_eq!(h2.matrix().row_string(1), "+-");
    }

    #[test]
    fn sylvester_r2_matches_four_qubit_sign_pattern() {
        // H(2)⊗H(2) by hand: ++++ / +-+- / ++-- / +--+. Reordering rows
        // (0, 2, 3, 1) gives the four-qubit decoupling sign matrix.
        let h4 = sylvester(2, cap()).unwrap();
        let rows: Vec<String> = (0..4).map(|i| h4.matrix().row_string(i)).collect();
        assert_eq!(rows, ["++++", "+-+-", "++--", "+--+"]);
        let reordered = h4.matrix().select_rows(&[0, 2, 3, 1]);
        let expect = ["++++", "++--", "+--+", "+-+-"];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(&reordered.row_string(i), e);
        }
    }

    #[test]
    fn sylvester_respects_cap() {
        assert_eq!(
            sylvester(13, cap()).unwrap_err(),
            Error::SizeCap {
                order: 8192,
                cap: 4096
            }
        );
        assert!(sylvester(3, SizeCap(4)).is_err());
    }

    #[test]
    fn kron_identity_and_h24() {
        let h1 = sylvester(0, cap()).unwrap();
        let h12 = h12_literal();
        assert_eq!(kron(&h1, &h12, cap()).unwrap().matrix(), h12.matrix());
        let h24 = kron(&sylvester(1, cap()).unwrap(), &h12, cap()).unwrap();
        assert_eq!(h24.order(), 24);
        assert!(check(h24.matrix()).unwrap().is_valid());
    }

    #[test]
    fn is_hadamard_reports_pairs() {
        assert!(is_hadamard(&[[1i8, 1], [1, -1]]).unwrap().is_valid());
        let r = is_hadamard(&[[1i8, 1], [1, 1]]).unwrap();
        assert_eq!(r.offending, vec![(0, 1)]);
        assert!(matches!(
            is_hadamard(&[vec![1i8, 1, 1], vec![1, -1, 1]]),
            Err(Error::NotSquare { .. })
        ));
        assert!(matches!(
            is_hadamard(&[[1i8, 2], [1, -1]]),
            Err(Error::NotSign { .. })
        ));
    }

    #[test]
    fn literal_h12_is_valid_and_normalized() {
        let h = h12_literal();
        assert!(h.is_normalized());
        for i in 1..12 {
            assert_eq!(h.matrix().row_sum(i), 0);
        }
    }

    #[test]
    fn normalize_flips_signs() {
        let h2 = sylvester(1, cap()).unwrap();
        let mut m = h2.matrix().clone();
        m.negate_row(1);
        let flipped = HadamardMatrix::new(m, Recipe::Literal("t".into())).unwrap();
        assert_eq!(normalize(&flipped).matrix(), h2.matrix());
        assert_eq!(normalize(&h2), h2);
    }
}
