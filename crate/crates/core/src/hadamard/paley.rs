//! Paley constructions over GF(q) via the quadratic character.

use super::{HadamardMatrix, Recipe, SizeCap};
use crate::error::{Error, PaleyVariant, Result};
use crate::matrix::PmMatrix;

/// `Some((p, k))` with `q = p^k` for prime `p`, else `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..)
        .take_while(|d| d * d <= q)
        .find(|d| q.is_multiple_of(*d))
        .unwrap_or(q);
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Paley construction for an odd prime power `q`.
///
/// Variant one needs `q = 3 mod 4` and yields `H(q+1)`; variant two needs
/// `q = 1 mod 4` and yields `H(2(q+1))`.
pub fn paley(q: u64, variant: PaleyVariant, cap: SizeCap) -> Result<HadamardMatrix> {
    let (p, k) = match prime_power(q) {
        Some((p, k)) if p != 2 => (p, k),
        _ => return Err(Error::NotPrimePower { q }),
    };
    let (expected, order) = match variant {
        PaleyVariant::One => (3, q + 1),
        PaleyVariant::Two => (1, 2 * (q + 1)),
    };
    if q % 4 != expected {
        return Err(Error::InvalidResidue {
            q,
            variant,
            expected,
        });
    }
    cap.check(order as usize)?;

    let field = Field::new(p, k);
    let chi = field.quadratic_character();
    let q = q as usize;
    // Jacobsthal matrix Q[a][b] = χ(a - b).
    let jacobsthal = |a: usize, b: usize| chi[field.sub(a, b)];

    let (matrix, recipe) = match variant {
        PaleyVariant::One => {
            // H = I + [[0, 1ᵀ], [-1, Q]]
            let m = PmMatrix::from_fn(q + 1, q + 1, |i, j| match (i, j) {
                (i, j) if i == j => 1,
                (0, _) => 1,
                (_, 0) => -1,
                (i, j) => jacobsthal(i - 1, j - 1),
            });
            (m, Recipe::Paley1(q as u64))
        }
        PaleyVariant::Two => {
            // C = [[0, 1ᵀ], [1, Q]], H = C ⊗ [[1,1],[1,-1]] + I ⊗ [[1,-1],[-1,-1]]
            let conference = |i: usize, j: usize| -> i8 {
                match (i, j) {
                    (i, j) if i == j => 0,
                    (0, _) | (_, 0) => 1,
                    (i, j) => jacobsthal(i - 1, j - 1),
                }
            };
            let m = PmMatrix::from_fn(2 * (q + 1), 2 * (q + 1), |i, j| {
                let (bi, bj, si, sj) = (i / 2, j / 2, i % 2, j % 2);
                let c = conference(bi, bj);
                if c == 0 {
                    if si == 0 && sj == 0 {
                        1
                    } else {
                        -1
                    }
                } else if si == 1 && sj == 1 {
                    -c
                } else {
                    c
                }
            });
            (m, Recipe::Paley2(q as u64))
        }
    };
    HadamardMatrix::new(matrix, recipe)
}

/// GF(p^k) with elements encoded as base-`p` digit strings (digit `i` is the
/// coefficient of `x^i`).
struct Field {
    p: usize,
    k: usize,
    q: usize,
    /// Monic irreducible modulus, low coefficient first, length `k + 1`.
    modulus: Vec<usize>,
}

impl Field {
    fn new(p: u64, k: u32) -> Self {
        let p = p as usize;
        let k = k as usize;
        let q = p.pow(k as u32);
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            (0..q)
                .map(|low| {
                    let mut f = digits(low, p, k);
                    f.push(1);
                    f
                })
                .find(|f| is_irreducible(f, p))
                .expect("an irreducible polynomial exists for every degree")
        };
        Field { p, k, q, modulus }
    }

    fn sub(&self, a: usize, b: usize) -> usize {
        if self.k == 1 {
            return (a + self.p - b) % self.p;
        }
        let (da, db) = (digits(a, self.p, self.k), digits(b, self.p, self.k));
        let diff: Vec<usize> = da
            .iter()
            .zip(&db)
            .map(|(x, y)| (x + self.p - y) % self.p)
            .collect();
        undigits(&diff, self.p)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        if self.k == 1 {
            return a * b % self.p;
        }
        let (da, db) = (digits(a, self.p, self.k), digits(b, self.p, self.k));
        let mut prod = vec![0usize; 2 * self.k - 1];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        poly_rem(&mut prod, &self.modulus, self.p);
        prod.truncate(self.k);
        prod.resize(self.k, 0);
        undigits(&prod, self.p)
    }

    /// χ(a): 0 at zero, +1 on nonzero squares, -1 otherwise.
    fn quadratic_character(&self) -> Vec<i8> {
        let mut chi = vec![-1i8; self.q];
        chi[0] = 0;
        for x in 1..self.q {
            chi[self.mul(x, x)] = 1;
        }
        chi
    }
}

fn digits(mut v: usize, p: usize, k: usize) -> Vec<usize> {
    let mut d = Vec::with_capacity(k);
    for _ in 0..k {
        d.push(v % p);
        v /= p;
    }
    d
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn inv_mod(a: usize, p: usize) -> usize {
    (1..p).find(|x| a * x % p == 1).expect("p is prime")
}

/// Reduces `a` modulo `m` in place (coefficients mod `p`).
fn poly_rem(a: &mut Vec<usize>, m: &[usize], p: usize) {
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while a.len() > dm {
        let top = a.len() - 1;
        let c = a[top] * lead_inv % p;
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = top - dm + i;
                a[idx] = (a[idx] + p * p - c * mi % p) % p;
            }
        }
        a.pop();
    }
}

fn is_irreducible(f: &[usize], p: usize) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = digits(low, p, d);
            g.push(1);
            let mut r = f.to_vec();
            poly_rem(&mut r, &g, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}
