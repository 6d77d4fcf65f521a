use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use super::{prime_power, Recipe, SizeCap};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CatalogOptions {
    pub cap: SizeCap,
    /// Also use Paley over GF(p^k) for k > 1. Off by default.
    pub prime_powers: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderCatalogEntry {
    pub requested: usize,
    pub achieved: usize,
    pub recipe: Recipe,
}

impl fmt::Display for OrderCatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "requested={} achieved={} recipe={}",
            self.requested, self.achieved, self.recipe
        )
    }
}

/// Every Hadamard order reachable by Sylvester, Paley and Kronecker closure
/// up to the size cap, with one recipe per order.
#[derive(Debug, Clone)]
pub struct Catalog {
    options: CatalogOptions,
    recipes: BTreeMap<usize, Recipe>,
}

impl Catalog {
    pub fn new(options: CatalogOptions) -> Self {
        let cap = options.cap.0;
        let mut recipes = BTreeMap::new();

        let mut r = 0u32;
        while r < usize::BITS - 1 && (1usize << r) <= cap {
            recipes.insert(1usize << r, Recipe::Sylvester(r));
            r += 1;
        }

        let usable = |q: u64| match prime_power(q) {
            Some((p, k)) => p != 2 && (k == 1 || options.prime_powers),
            None => false,
        };
        for q in (3..cap as u64).filter(|q| q % 4 == 3) {
            if (q as usize) < cap && usable(q) {
                recipes.entry(q as usize + 1).or_insert(Recipe::Paley1(q));
            }
        }
        for q in (5..cap as u64).filter(|q| q % 4 == 1) {
            if 2 * (q as usize + 1) <= cap && usable(q) {
                recipes
                    .entry(2 * (q as usize + 1))
                    .or_insert(Recipe::Paley2(q));
            }
        }

        loop {
            let orders: Vec<usize> = recipes.keys().copied().filter(|&o| o > 1).collect();
            let mut added = Vec::new();
            for (ai, &a) in orders.iter().enumerate() {
                for &b in &orders[ai..] {
                    let Some(prod) = a.checked_mul(b) else { break };
                    if prod > cap {
                        break;
                    }
                    if !recipes.contains_key(&prod) && !added.iter().any(|(o, _)| *o == prod) {
                        added.push((
                            prod,
                            Recipe::Kron(
                                Box::new(recipes[&a].clone()),
                                Box::new(recipes[&b].clone()),
                            ),
                        ));
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            recipes.extend(added);
        }

        Catalog { options, recipes }
    }

    /// Shared catalog for [`CatalogOptions::default`].
    pub fn standard() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::new(CatalogOptions::default()))
    }

    pub fn options(&self) -> CatalogOptions {
        self.options
    }

    pub fn contains(&self, order: usize) -> bool {
        self.recipes.contains_key(&order)
    }

    pub fn orders(&self) -> impl Iterator<Item = usize> + '_ {
        self.recipes.keys().copied()
    }

    /// Smallest catalogued order `n̄ ≥ n`.
    pub fn best(&self, n: usize) -> Result<OrderCatalogEntry> {
        let n = n.max(1);
        self.recipes
            .range(n..)
            .next()
            .map(|(&achieved, recipe)| OrderCatalogEntry {
                requested: n,
                achieved,
                recipe: recipe.clone(),
            })
            .ok_or_else(|| Error::Capacity(format!("a Hadamard order >= {n}")))
    }

    /// `(n, n̄ - n)` for every `n <= limit` whose gap exceeds `max_gap`.
    pub fn gaps_above(&self, limit: usize, max_gap: usize) -> Vec<(usize, usize)> {
        (1..=limit)
            .filter_map(|n| {
                let best = self.best(n).ok()?;
                (best.achieved - n > max_gap).then_some((n, best.achieved - n))
            })
            .collect()
    }
}

/// Smallest constructible Hadamard order `n̄ ≥ n` under the default catalog.
pub fn best_order(n: usize) -> Result<OrderCatalogEntry> {
    Catalog::standard().best(n)
}
