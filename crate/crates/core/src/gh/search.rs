use super::{Gf4, GhMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(GhMatrix),
    /// The whole (symmetry-reduced) space was explored without a hit.
    Nonexistent,
}

/// Backtracking search for a normalized GH(4, λ).
///
/// Cells are filled row by row. Every row pair and every column pair keeps
/// per-element quotient counts, which may never exceed `λ` (the transpose
/// of a GH over an abelian group is again a GH). Row and column
/// permutations are broken by keeping row 1 sorted, rows strictly
/// increasing and columns non-decreasing lexicographically. Each value
/// tried at a cell counts as one node against `budget`.
pub fn gh_search(lambda: usize, budget: u64) -> Result<SearchOutcome> {
    if lambda == 0 {
        return Err(Error::InvalidArgument("λ must be at least 1".into()));
    }
    if lambda > 8 {
        return Err(Error::InvalidArgument(format!(
            "λ = {lambda} is too large to search"
        )));
    }
    let mut s = State::new(lambda, budget);
    if s.fill(2, 1)? {
        let n = s.n;
        let rows = (0..n)
            .map(|i| (0..n).map(|j| Gf4::from_index(s.grid[i * n + j])).collect())
            .collect();
        let g = GhMatrix::new(lambda, rows)?;
        Ok(SearchOutcome::Found(g))
    } else {
        Ok(SearchOutcome::Nonexistent)
    }
}

struct State {
    n: usize,
    lambda: u8,
    grid: Vec<u8>,
    /// Quotient counts of the current row against each earlier row.
    row_counts: Vec<[u8; 4]>,
    /// `col_counts[j * n + k]` for `k < j`.
    col_counts: Vec<[u8; 4]>,
    /// Column `j` equals column `j - 1` on all completed rows.
    col_tied: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl State {
    fn new(lambda: usize, budget: u64) -> Self {
        let n = 4 * lambda;
        let mut s = State {
            n,
            lambda: lambda as u8,
            grid: vec![0; n * n],
            row_counts: vec![[0; 4]; n],
            col_counts: vec![[0; 4]; n * n],
            col_tied: vec![true; n],
            nodes: 0,
            budget,
        };
        for j in 0..n {
            s.grid[n + j] = (j / lambda) as u8;
        }
        for i in 0..2 {
            for j in 0..n {
                for k in 0..j {
                    let d = s.grid[i * n + j] ^ s.grid[i * n + k];
                    s.col_counts[j * n + k][d as usize] += 1;
                }
            }
        }
        for j in 1..n {
            s.col_tied[j] = s.grid[n + j] == s.grid[n + j - 1];
        }
        s
    }

    /// Fills cell `(i, j)` and everything after it in row-major order.
    fn fill(&mut self, i: usize, j: usize) -> Result<bool> {
        let n = self.n;
        if i == n {
            return Ok(true);
        }
        if j == n {
            if self.is_tight(i) {
                return Ok(false);
            }
            let tied: Vec<bool> = (0..n)
                .map(|c| {
                    c > 0 && self.col_tied[c] && self.grid[i * n + c] == self.grid[i * n + c - 1]
                })
                .collect();
            let saved = std::mem::replace(&mut self.col_tied, tied);
            let saved_rows = self.row_counts.clone();
            let found = self.fill(i + 1, 1)?;
            self.row_counts = saved_rows;
            self.col_tied = saved;
            return Ok(found);
        }
        if j == 1 {
            // Column 0 is the identity everywhere; count it against every
            // earlier row.
            for p in 0..i {
                self.row_counts[p] = [1, 0, 0, 0];
            }
        }

        let low = {
            let mut low = 0u8;
            if self.col_tied[j] {
                low = low.max(self.grid[i * n + j - 1]);
            }
            if self.is_tight_prefix(i, j) {
                low = low.max(self.grid[(i - 1) * n + j]);
            }
            low
        };
        for v in low..4 {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExhausted {
                    budget: self.budget,
                });
            }
            if self.place(i, j, v) && self.fill(i, j + 1)? {
                return Ok(true);
            }
            self.unplace(i, j, v);
        }
        Ok(false)
    }

    fn is_tight_prefix(&self, i: usize, j: usize) -> bool {
        let n = self.n;
        i >= 2 && (1..j).all(|c| self.grid[i * n + c] == self.grid[(i - 1) * n + c])
    }

    fn is_tight(&self, i: usize) -> bool {
        self.is_tight_prefix(i, self.n)
    }

    /// Sets the cell and updates counters; returns false (with counters
    /// still updated) if some count exceeds λ.
    fn place(&mut self, i: usize, j: usize, v: u8) -> bool {
        let n = self.n;
        self.grid[i * n + j] = v;
        let mut ok = true;
        for p in 0..i {
            let d = (v ^ self.grid[p * n + j]) as usize;
            self.row_counts[p][d] += 1;
            ok &= self.row_counts[p][d] <= self.lambda;
        }
        for k in 0..j {
            let d = (v ^ self.grid[i * n + k]) as usize;
            self.col_counts[j * n + k][d] += 1;
            ok &= self.col_counts[j * n + k][d] <= self.lambda;
        }
        ok
    }

    fn unplace(&mut self, i: usize, j: usize, v: u8) {
        let n = self.n;
        for p in 0..i {
            let d = (v ^ self.grid[p * n + j]) as usize;
            self.row_counts[p][d] -= 1;
        }
        for k in 0..j {
            let d = (v ^ self.grid[i * n + k]) as usize;
            self.col_counts[j * n + k][d] -= 1;
        }
        self.grid[i * n + j] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::super::verify_gh;
    use super::*;

    #[test]
    fn finds_gh4_1() {
        let SearchOutcome::Found(g) = gh_search(1, 1000).unwrap() else {
            panic!("no GH(4,1)")
        };
        assert!(verify_gh(&g).is_valid());
        assert!(g.is_normalized());
    }

    #[test]
    fn finds_gh4_2() {
        let SearchOutcome::Found(g) = gh_search(2, 10_000_000).unwrap() else {
            panic!("no GH(4,2)")
        };
        assert_eq!(g.order(), 8);
        assert!(verify_gh(&g).is_valid());
        assert!(g.is_normalized());
    }

    #[test]
    fn tiny_budget_is_reported() {
        assert_eq!(
            gh_search(2, 3).unwrap_err(),
            Error::BudgetExhausted { budget: 3 }
        );
    }
}
