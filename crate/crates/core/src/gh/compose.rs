use super::{Gf4, GhMatrix};
use crate::error::{Error, Result};
use crate::hadamard::{sylvester, HadamardMatrix, Recipe, SizeCap};
use crate::matrix::PmMatrix;
use crate::schur::{five_rows_bits, partition_sylvester, FiveRows};

/// A normalized Hadamard matrix with its rows split into Schur triples and
/// leftovers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Host {
    pub matrix: HadamardMatrix,
    pub triples: Vec<[usize; 3]>,
    pub leftover: Vec<usize>,
    /// Row indices of `f1..f5`, if the host has the five-row structure.
    pub five: Option<[usize; 5]>,
}

impl Host {
    pub fn validate(&self) -> Result<()> {
        let m = self.matrix.order();
        if !self.matrix.is_normalized() {
            return Err(Error::InvalidArgument(
                "host matrix must be normalized".into(),
            ));
        }
        let mut seen = vec![false; m];
        for &i in self.triples.iter().flatten().chain(&self.leftover) {
            if i >= m || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument(format!(
                    "host row {i} is out of range or repeated"
                )));
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidArgument(
                "host rows do not cover the matrix".into(),
            ));
        }
        for (t, &[a, b, c]) in self.triples.iter().enumerate() {
            let prod = crate::matrix::schur(self.matrix.row(a), self.matrix.row(b));
            if crate::matrix::schur(&prod, self.matrix.row(c))
                .iter()
                .any(|&v| v != 1)
            {
                return Err(Error::InvalidArgument(format!(
                    "host triple {t} (rows {a}, {b}, {c}) is not a Schur set"
                )));
            }
        }
        Ok(())
    }
}

/// `sylvester(r)` with its deterministic Schur partition and five rows.
pub fn sylvester_host(r: u32, cap: SizeCap) -> Result<Host> {
    let matrix = sylvester(r, cap)?;
    let partition = partition_sylvester(r)?;
    let five = if r >= 3 {
        Some(five_rows_bits(r)?.map(|b| b.index()))
    } else {
        None
    };
    Ok(Host {
        matrix,
        triples: partition
            .triples
            .iter()
            .map(|t| t.0.map(|b| b.index()))
            .collect(),
        leftover: partition.remainder.iter().map(|b| b.index()).collect(),
        five,
    })
}

/// Where a composed row comes from: host row `⊗` a row derived from γ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RowOrigin {
    pub host_row: usize,
    pub gamma_row: usize,
    /// Which sign of the γ-row's triples was taken; `None` for rows built
    /// from host leftovers, which use the first sign.
    pub component: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionResult {
    pub hprime: HadamardMatrix,
    /// Row indices into `hprime`, each triple a Schur set.
    pub triples: Vec<[usize; 3]>,
    pub leftover: Vec<usize>,
    pub five: Option<FiveRows>,
    /// Host triples.
    pub n: usize,
    /// Host order.
    pub m: usize,
    pub lambda: usize,
    pub origins: Vec<RowOrigin>,
}

impl CompositionResult {
    /// The result as a host for further synthesis.
    pub fn into_host(self) -> Host {
        Host {
            five: self.five.as_ref().map(|f| f.indices),
            matrix: self.hprime,
            triples: self.triples,
            leftover: self.leftover,
        }
    }
}

/// Composes a host Hadamard matrix with a normalized GH(4, λ).
///
/// Host triple `t` becomes a row of GF(4) triples; its Kronecker product
/// with γ is leveled back into `3·4λ` sign rows, row `(t, s, c)` being
/// `h_{3t+c} ⊗ (sign c of γ row s)`. Leftover host row `u` contributes
/// `h_u ⊗ (first sign of γ row s)` for every `s`. Rows come out triple-major:
/// all leveled rows first, then the leftover rows.
pub fn compose(host: &Host, gamma: &GhMatrix, cap: SizeCap) -> Result<CompositionResult> {
    host.validate()?;
    if !gamma.is_normalized() {
        return Err(Error::InvalidArgument("γ must be normalized".into()));
    }
    let m = host.matrix.order();
    let g = gamma.order();
    let order = m.checked_mul(g).ok_or(Error::SizeCap {
        order: usize::MAX,
        cap: cap.0,
    })?;
    cap.check(order)?;

    let level = |s: usize, c: usize| -> Vec<i8> {
        gamma.row(s).iter().map(|e: &Gf4| e.signs()[c]).collect()
    };
    let tensor = |a: &[i8], b: &[i8]| -> Vec<i8> {
        a.iter()
            .flat_map(|&x| b.iter().map(move |&y| x * y))
            .collect()
    };

    let mut rows = Vec::with_capacity(order);
    let mut origins = Vec::with_capacity(order);
    let mut triples = Vec::new();
    for t in &host.triples {
        for s in 0..g {
            let base = rows.len();
            for (c, &h) in t.iter().enumerate() {
                rows.push(tensor(host.matrix.row(h), &level(s, c)));
                origins.push(RowOrigin {
                    host_row: h,
                    gamma_row: s,
                    component: Some(c),
                });
            }
            triples.push([base, base + 1, base + 2]);
        }
    }
    let mut leftover = Vec::new();
    for &u in &host.leftover {
        for s in 0..g {
            leftover.push(rows.len());
            rows.push(tensor(host.matrix.row(u), &level(s, 0)));
            origins.push(RowOrigin {
                host_row: u,
                gamma_row: s,
                component: None,
            });
        }
    }

    let recipe = match host.matrix.recipe() {
        Recipe::Sylvester(r) => Recipe::Composed {
            r: *r,
            lambda: gamma.lambda(),
        },
        other => Recipe::Literal(format!("composed({other},gh4({}))", gamma.lambda())),
    };
    let hprime = HadamardMatrix::new(PmMatrix::from_rows(&rows)?, recipe)?;

    // f_i ⊗ (all ones) sits at γ row 0, whose triples are all identity.
    let five = host.five.map(|idx| {
        let indices = idx.map(|h| {
            origins
                .iter()
                .position(|o| o.host_row == h && o.gamma_row == 0)
                .expect("every host row appears with γ row 0")
        });
        FiveRows {
            indices,
            rows: indices.map(|i| hprime.row(i).to_vec()),
        }
    });
    if let Some(f) = &five {
        if !f.holds() {
            return Err(Error::Internal(
                "composed five rows break f1∘f2 = f3∘f4 = f5".into(),
            ));
        }
    }

    Ok(CompositionResult {
        hprime,
        triples,
        leftover,
        five,
        n: host.triples.len(),
        m,
        lambda: gamma.lambda(),
        origins,
    })
}

/// Planning bound for composing `H(2)^{⊗(r-2)}` with a GH(4, 3^{t+1}):
/// `((2^r - 20)·3^t qubits, 2^r·3^{t+1} intervals)`.
pub fn interval_bound(r: u32, t: u32) -> Result<(u64, u64)> {
    if !(5..=40).contains(&r) || t > 20 {
        return Err(Error::InvalidArgument(format!(
            "interval bound needs 5 <= r <= 40, t <= 20; got r={r}, t={t}"
        )));
    }
    let p = 1u64 << r;
    Ok(((p - 20) * 3u64.pow(t), p * 3u64.pow(t + 1)))
}

#[cfg(test)]
mod tests {
    use super::super::{gh4_base, gh_for_lambda};
    use super::*;

    fn cap() -> SizeCap {
        SizeCap::default()
    }

    #[test]
    fn worked_example_r2() {
        let host = sylvester_host(2, cap()).unwrap();
        assert_eq!(host.triples, vec![[1, 2, 3]]);
        assert_eq!(host.leftover, vec![0]);
        let res = compose(&host, &gh4_base(), cap()).unwrap();
        assert_eq!(res.hprime.order(), 16);
        assert_eq!(res.triples.len(), 4);
        assert_eq!(res.leftover.len(), 4);
        assert_eq!(res.five, None);
        let ones = (0..16)
            .filter(|&i| res.hprime.matrix().row_sum(i) == 16)
            .count();
        assert_eq!(ones, 1);
    }

    #[test]
    fn r4_host_gives_20_triples() {
        let res = compose(&sylvester_host(4, cap()).unwrap(), &gh4_base(), cap()).unwrap();
        assert_eq!(res.hprime.order(), 64);
        assert_eq!(res.triples.len(), 20);
        assert_eq!(res.leftover.len(), 4);
        assert!(res.five.as_ref().unwrap().holds());
        assert_eq!(res.hprime.recipe(), &Recipe::Composed { r: 4, lambda: 1 });
    }

    #[test]
    fn triples_are_schur_sets_with_zero_sums() {
        let res = compose(
            &sylvester_host(3, cap()).unwrap(),
            &gh_for_lambda(2, cap()).unwrap(),
            cap(),
        )
        .unwrap();
        let h = res.hprime.matrix();
        for &[a, b, c] in &res.triples {
            let p = crate::matrix::schur(&crate::matrix::schur(h.row(a), h.row(b)), h.row(c));
            assert!(p.iter().all(|&v| v == 1));
            for i in [a, b, c] {
                assert_eq!(h.row_sum(i), 0);
            }
        }
    }

    #[test]
    fn unnormalized_gamma_is_rejected() {
        let base = gh4_base();
        let rows: Vec<Vec<Gf4>> = (0..4).rev().map(|i| base.row(i).to_vec()).collect();
        let swapped = GhMatrix::new(1, rows).unwrap();
        let host = sylvester_host(2, cap()).unwrap();
        assert!(compose(&host, &swapped, cap()).is_err());
    }

    #[test]
    fn non_schur_host_is_rejected() {
        let mut host = sylvester_host(2, cap()).unwrap();
        host.triples = vec![[0, 1, 2]];
        host.leftover = vec![3];
        assert!(compose(&host, &gh4_base(), cap()).is_err());
    }

    #[test]
    fn bounds() {
        assert_eq!(interval_bound(7, 0).unwrap(), (108, 384));
        assert_eq!(interval_bound(5, 0).unwrap(), (12, 96));
        assert!(interval_bound(4, 0).is_err());
        let a = interval_bound(6, 1).unwrap();
        let b = interval_bound(7, 1).unwrap();
        assert!(b.0 > a.0 && b.1 > a.1);
    }
}
