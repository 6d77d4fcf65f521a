use std::fmt;

use crate::error::{Error, Result};
use crate::gh::{compose, gh_for_lambda, lambda_supported, sylvester_host, Host};
use crate::hadamard::{Recipe, SizeCap};

/// Number of Schur triples in the deterministic partition of `sylvester(r)`.
pub fn schur_capacity(r: u32) -> usize {
    match r {
        0 | 1 => 0,
        r if r % 2 == 0 => ((1usize << r) - 1) / 3,
        r => ((1usize << r) - 5) / 3,
    }
}

/// A Hadamard matrix with Schur-grouped rows that general-framework schemes
/// can be cut from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HostPlan {
    Sylvester(u32),
    /// `sylvester(r)` composed with a GH(4, λ).
    Composed {
        r: u32,
        lambda: usize,
    },
}

impl HostPlan {
    pub fn order(&self) -> usize {
        match *self {
            HostPlan::Sylvester(r) => 1 << r,
            HostPlan::Composed { r, lambda } => (1 << r) * 4 * lambda,
        }
    }

    /// Schur triples available for decoupling.
    pub fn triples(&self) -> usize {
        match *self {
            HostPlan::Sylvester(r) => schur_capacity(r),
            HostPlan::Composed { r, lambda } => schur_capacity(r) * 4 * lambda,
        }
    }

    pub fn recipe(&self) -> Recipe {
        match *self {
            HostPlan::Sylvester(r) => Recipe::Sylvester(r),
            HostPlan::Composed { r, lambda } => Recipe::Composed { r, lambda },
        }
    }

    pub fn build(&self, cap: SizeCap) -> Result<Host> {
        cap.check(self.order())?;
        match *self {
            HostPlan::Sylvester(r) => sylvester_host(r, cap),
            HostPlan::Composed { r, lambda } => {
                let gamma = gh_for_lambda(lambda, cap)?;
                Ok(compose(&sylvester_host(r, cap)?, &gamma, cap)?.into_host())
            }
        }
    }

    /// Every usable host up to the cap, by increasing order; Sylvester
    /// first among equal orders, then smaller λ.
    pub fn all(cap: SizeCap, sylvester_only: bool) -> Vec<HostPlan> {
        let mut plans = Vec::new();
        let mut r = 2;
        while r < usize::BITS - 1 && (1usize << r) <= cap.0 {
            plans.push(HostPlan::Sylvester(r));
            if !sylvester_only {
                let mut lambda = 1;
                while (1usize << r) * 4 * lambda <= cap.0 {
                    if lambda_supported(lambda) && gh_for_lambda(lambda, cap).is_ok() {
                        plans.push(HostPlan::Composed { r, lambda });
                    }
                    lambda += 1;
                }
            }
            r += 1;
        }
        plans.sort_by_key(|p| {
            (
                p.order(),
                matches!(p, HostPlan::Composed { .. }),
                p.lambda(),
            )
        });
        plans
    }

    fn lambda(&self) -> usize {
        match *self {
            HostPlan::Sylvester(_) => 0,
            HostPlan::Composed { lambda, .. } => lambda,
        }
    }

    /// Smallest host with at least `n` Schur triples.
    pub fn for_decoupling(n: usize, cap: SizeCap, sylvester_only: bool) -> Result<HostPlan> {
        HostPlan::all(cap, sylvester_only)
            .into_iter()
            .find(|p| p.triples() >= n)
            .ok_or_else(|| Error::Capacity(format!("{n} Schur triples")))
    }
}

impl fmt::Display for HostPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.recipe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capacities() {
        assert_eq!(schur_capacity(2), 1);
        assert_eq!(schur_capacity(3), 1);
        assert_eq!(schur_capacity(4), 5);
        assert_eq!(schur_capacity(5), 9);
        assert_eq!(HostPlan::Composed { r: 2, lambda: 3 }.triples(), 12);
    }

    #[test]
    fn picks_smallest_host() {
        let cap = SizeCap::default();
        assert_eq!(
            HostPlan::for_decoupling(1, cap, false).unwrap(),
            HostPlan::Sylvester(2)
        );
        assert_eq!(
            HostPlan::for_decoupling(5, cap, false).unwrap(),
            HostPlan::Sylvester(4)
        );
        assert_eq!(
            HostPlan::for_decoupling(9, cap, false).unwrap(),
            HostPlan::Sylvester(5)
        );
        assert_eq!(
            HostPlan::for_decoupling(10, cap, false).unwrap(),
            HostPlan::Composed { r: 2, lambda: 3 }
        );
        assert_eq!(
            HostPlan::for_decoupling(10, cap, true).unwrap(),
            HostPlan::Sylvester(6)
        );
        assert!(HostPlan::for_decoupling(2000, cap, false).is_err());
    }

    #[test]
    fn built_hosts_match_plans() {
        let cap = SizeCap::default();
        for p in [
            HostPlan::Sylvester(3),
            HostPlan::Composed { r: 2, lambda: 3 },
            HostPlan::Composed { r: 3, lambda: 2 },
        ] {
            let h = p.build(cap).unwrap();
            assert_eq!(h.matrix.order(), p.order());
            assert_eq!(h.triples.len(), p.triples());
        }
    }
}
