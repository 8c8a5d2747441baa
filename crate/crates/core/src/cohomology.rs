//! Cohomology of Čech complexes over ℤ, ℚ or a prime field, and the Čech
//! cohomology of a finite closure space.
//!
//! The canonical cover `{V_x}` refines every interior cover: if `𝒰` is an
//! interior cover then each `x` lies in `i(U)` for some `U ∈ 𝒰`, i.e.
//! `V_x ⊆ U`. It is therefore terminal among interior covers and the direct
//! limit over covers is attained there.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::complex::{cech_complex_alternating, CochainComplex};
use crate::cover::canonical_cover;
use crate::error::{Error, Result};
use crate::linalg::{is_prime, rank_mod_p, rank_over_field, Matrix};
use crate::presented::subquotient;
use crate::presheaf::Coefficients;
use crate::space::FiniteClosureSpace;

/// Coefficient ring for cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Ring::PrimeField(p))
        } else {
            Err(Error::InvalidRing(format!("{p} is not prime")))
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Integers)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    /// `Z`, `Q`, `F2`, `F_3`, `Fp(5)` or `GF(7)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Z" | "ZZ" | "ℤ" => return Ok(Ring::Integers),
            "Q" | "QQ" | "ℚ" => return Ok(Ring::Rationals),
            _ => {}
        }
        let digits = t
            .strip_prefix("Fp(")
            .or_else(|| t.strip_prefix("GF("))
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("F_"))
            .or_else(|| t.strip_prefix('F'))
            .ok_or_else(|| Error::InvalidRing(format!("unknown ring {s:?}")))?;
        let p: u64 = digits.parse().map_err(|_| Error::InvalidRing(format!("unknown ring {s:?}")))?;
        Ring::prime_field(p)
    }
}

impl From<Ring> for String {
    fn from(r: Ring) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for Ring {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub q: usize,
    pub betti: usize,
    pub torsion: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub ring: Ring,
    pub degrees: Vec<DegreeReport>,
    pub cover: String,
    /// Degrees up to this one agree with sheaf cohomology when the coefficients form a sheaf.
    pub sheaf_valid_upto: usize,
    /// In this degree the Čech group only injects into sheaf cohomology (a lower bound).
    pub sheaf_injective_at: usize,
}

impl CohomologyReport {
    pub fn bettis(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn has_torsion(&self) -> bool {
        self.degrees.iter().any(|d| !d.torsion.is_empty())
    }
}

fn surviving_generators(orders: &[u64], ring: Ring) -> Vec<usize> {
    orders
        .iter()
        .enumerate()
        .filter(|&(_, &o)| match ring {
            Ring::Integers => true,
            Ring::Rationals => o == 0,
            Ring::PrimeField(p) => o == 0 || o % p == 0,
        })
        .map(|(i, _)| i)
        .collect()
}

fn field_rank(m: &Matrix<i64>, ring: Ring) -> usize {
    match ring {
        Ring::Rationals => rank_over_field(&m.map(|&v| BigRational::from_integer(BigInt::from(v)))),
        Ring::PrimeField(p) => rank_mod_p(m, p),
        Ring::Integers => unreachable!("integer cohomology goes through Smith normal form"),
    }
}

/// Cohomology in degrees `0 ..= cx.q_max()`.
pub fn cohomology(cx: &CochainComplex, ring: Ring) -> Result<CohomologyReport> {
    if let Ring::PrimeField(p) = ring {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
    }
    let q_max = cx.q_max();
    let mut degrees = Vec::with_capacity(q_max + 1);
    if cx.differentials.is_empty() {
        return Ok(report(ring, degrees, &cx.cover));
    }
    if ring == Ring::Integers {
        for q in 0..=q_max {
            let h = subquotient(&cx.groups[q].orders, &cx.groups[q + 1].orders, &cx.incoming(q), &cx.differentials[q])?;
            degrees.push(DegreeReport { q, betti: h.free_rank(), torsion: h.torsion().to_vec() });
        }
    } else {
        let keep: Vec<Vec<usize>> = cx.groups.iter().map(|g| surviving_generators(&g.orders, ring)).collect();
        let ranks: Vec<usize> =
            (0..=q_max).map(|q| field_rank(&cx.differentials[q].submatrix(&keep[q + 1], &keep[q]), ring)).collect();
        for q in 0..=q_max {
            let incoming = if q == 0 { 0 } else { ranks[q - 1] };
            degrees.push(DegreeReport { q, betti: keep[q].len() - ranks[q] - incoming, torsion: Vec::new() });
        }
    }
    Ok(report(ring, degrees, &cx.cover))
}

fn report(ring: Ring, degrees: Vec<DegreeReport>, cover: &str) -> CohomologyReport {
    CohomologyReport { ring, degrees, cover: cover.to_string(), sheaf_valid_upto: 1, sheaf_injective_at: 2 }
}

/// Čech cohomology of the space, evaluated at the canonical cover.
pub fn cech_cohomology_space(
    space: &FiniteClosureSpace,
    coefficients: &dyn Coefficients,
    ring: Ring,
    q_max: usize,
) -> Result<CohomologyReport> {
    let mut cx = cech_complex_alternating(&canonical_cover(space), coefficients, q_max)?;
    cx.cover = "canonical".into();
    cohomology(&cx, ring)
}
