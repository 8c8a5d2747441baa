//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{smith_invariants, Matrix};

/// `ℤ^free_rank ⊕ ℤ/t_1 ⊕ … ⊕ ℤ/t_k` with `2 ≤ t_1 | t_2 | … | t_k`.
///
/// Generators are ordered free ones first, then one per torsion factor;
/// restriction matrices act on generators in that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGroup")]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

#[derive(Deserialize)]
struct RawGroup {
    #[serde(default)]
    free_rank: usize,
    #[serde(default)]
    torsion: Vec<u64>,
}

impl TryFrom<RawGroup> for FgAbGroup {
    type Error = Error;

    fn try_from(raw: RawGroup) -> Result<Self> {
        FgAbGroup::new(raw.free_rank, raw.torsion)
    }
}

impl FgAbGroup {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self> {
        for (i, &t) in torsion.iter().enumerate() {
            if t < 2 {
                return Err(Error::InvalidGroup(format!("torsion coefficient {t} is below 2")));
            }
            if i + 1 < torsion.len() && !torsion[i + 1].is_multiple_of(t) {
                return Err(Error::InvalidGroup(format!(
                    "torsion coefficients {t} and {} break the divisibility chain",
                    torsion[i + 1]
                )));
            }
        }
        Ok(FgAbGroup { free_rank, torsion })
    }

    /// Normalizes an arbitrary direct sum of cyclic groups; order 0 is `ℤ`, order 1 is trivial.
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<Self> {
        let free_rank = orders.iter().filter(|&&o| o == 0).count();
        let finite: Vec<i64> = orders
            .iter()
            .filter(|&&o| o > 1)
            .map(|&o| i64::try_from(o).map_err(|_| Error::Overflow("group order")))
            .collect::<Result<_>>()?;
        let mut diag = Matrix::<i64>::zeros(finite.len(), finite.len());
        for (i, &o) in finite.iter().enumerate() {
            diag[(i, i)] = o;
        }
        let inv = smith_invariants(&diag)?;
        Self::new(free_rank, inv.into_iter().filter(|&d| d > 1).map(|d| d as u64).collect())
    }

    pub fn zero() -> Self {
        FgAbGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn integers() -> Self {
        Self::free(1)
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// `ℤ/k`; `k = 0` gives `ℤ` and `k = 1` the trivial group.
    pub fn cyclic(k: u64) -> Self {
        match k {
            0 => Self::integers(),
            1 => Self::zero(),
            k => FgAbGroup { free_rank: 0, torsion: vec![k] },
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Order of each generator, 0 for free ones.
    pub fn generator_orders(&self) -> Vec<u64> {
        std::iter::repeat_n(0, self.free_rank).chain(self.torsion.iter().copied()).collect()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let mut orders = self.generator_orders();
        orders.extend(other.generator_orders());
        Self::from_cyclic_orders(&orders)
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for FgAbGroup {
    type Err = Error;

    /// Accepts sums such as `Z`, `Z^2 + Z/2`, `Z/6`, or `0`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGroup(format!("cannot parse group {s:?}"));
        let mut orders = Vec::new();
        for term in s.split(['+', '⊕']) {
            let term = term.trim();
            if term == "0" {
                continue;
            }
            let rest = term.strip_prefix('Z').or_else(|| term.strip_prefix('ℤ')).ok_or_else(bad)?;
            if rest.is_empty() {
                orders.push(0);
            } else if let Some(k) = rest.strip_prefix('^') {
                let k: usize = k.trim().parse().map_err(|_| bad())?;
                orders.extend(std::iter::repeat_n(0, k));
            } else if let Some(k) = rest.strip_prefix('/') {
                let k: u64 = k.trim().parse().map_err(|_| bad())?;
                if k == 0 {
                    return Err(bad());
                }
                orders.push(k);
            } else {
                return Err(bad());
            }
        }
        Self::from_cyclic_orders(&orders)
    }
}
