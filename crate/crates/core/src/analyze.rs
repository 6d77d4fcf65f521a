//! Overhead of the cheapest available decoupling scheme as a function of the
//! number of qubits.

use std::fmt;

use crate::error::{Error, Result};
use crate::hadamard::{Catalog, CatalogOptions, SizeCap};
use crate::scheme::{Framework, HostPlan};

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyzerRow {
    pub n: usize,
    pub framework: Framework,
    pub intervals: usize,
    /// `m / n` (ZZ) or `m / 3n` (general).
    pub c: f64,
    pub construction: String,
}

pub const CSV_HEADER: &str = "n,framework,intervals,c,construction";

impl fmt::Display for AnalyzerRow {
    /// One CSV record, fixed six decimals for `c`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{:.6},{}",
            self.n, self.framework, self.intervals, self.c, self.construction
        )
    }
}

/// Rows for `n = 1..=n_max`.
///
/// ZZ: `m` is the smallest catalogued Hadamard order `>= n` (local terms
/// kept). General: `m` is the order of the smallest host with at least `n`
/// Schur triples, over Sylvester hosts and, unless `sylvester_only`,
/// Sylvester hosts composed with a GH(4, λ).
pub fn analyze(
    n_max: usize,
    framework: Framework,
    sylvester_only: bool,
    cap: SizeCap,
) -> Result<Vec<AnalyzerRow>> {
    let limit = match framework {
        Framework::Zz => cap.0,
        Framework::General => cap.0 / 3,
    };
    if n_max == 0 || n_max > limit {
        return Err(Error::InvalidArgument(format!(
            "n_max {n_max} outside 1..={limit} for the {framework} framework"
        )));
    }
    match framework {
        Framework::Zz => {
            let catalog = if cap == SizeCap::default() {
                Catalog::standard().clone()
            } else {
                Catalog::new(CatalogOptions {
                    cap,
                    ..CatalogOptions::default()
                })
            };
            (1..=n_max)
                .map(|n| {
                    let e = catalog.best(n)?;
                    Ok(AnalyzerRow {
                        n,
                        framework,
                        intervals: e.achieved,
                        c: e.achieved as f64 / n as f64,
                        construction: e.recipe.to_string(),
                    })
                })
                .collect()
        }
        Framework::General => {
            let plans = HostPlan::all(cap, sylvester_only);
            (1..=n_max)
                .map(|n| {
                    let p = plans.iter().find(|p| p.triples() >= n).ok_or_else(|| {
                        Error::Capacity(format!("{n} Schur triples within order {}", cap.0))
                    })?;
                    Ok(AnalyzerRow {
                        n,
                        framework,
                        intervals: p.order(),
                        c: p.order() as f64 / (3 * n) as f64,
                        construction: p.to_string(),
                    })
                })
                .collect()
        }
    }
}

pub fn to_csv(rows: &[AnalyzerRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let cap = SizeCap::default();
        let zz = analyze(12, Framework::Zz, false, cap).unwrap();
        assert_eq!(zz[3].intervals, 4);
        assert_eq!(zz[3].c, 1.0);
        assert_eq!(zz[8].intervals, 12);
        let g = analyze(12, Framework::General, true, cap).unwrap();
        assert_eq!(g[4].intervals, 16);
        assert_eq!(g[4].c, 16.0 / 15.0);
        assert_eq!(g[9].construction, "sylvester(6)");
        let g = analyze(12, Framework::General, false, cap).unwrap();
        assert_eq!(g[9].intervals, 48);
    }

    #[test]
    fn composition_never_costs_more() {
        let cap = SizeCap::default();
        let syl = analyze(300, Framework::General, true, cap).unwrap();
        let all = analyze(300, Framework::General, false, cap).unwrap();
        for (a, b) in syl.iter().zip(&all) {
            assert!(b.intervals <= a.intervals, "n={}", a.n);
        }
    }

    #[test]
    fn csv_shape() {
        let csv = to_csv(&analyze(2, Framework::Zz, false, SizeCap::default()).unwrap());
        assert_eq!(csv, "n,framework,intervals,c,construction\n1,zz,1,1.000000,sylvester(0)\n2,zz,2,1.000000,sylvester(1)\n");
    }

    #[test]
    fn limits() {
        let cap = SizeCap::default();
        assert!(analyze(0, Framework::Zz, false, cap).is_err());
        assert!(analyze(1366, Framework::General, false, cap).is_err());
        assert!(analyze(1365, Framework::General, false, cap).is_ok());
    }
}
