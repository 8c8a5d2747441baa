//! Čech cochain complexes of a cover with presheaf coefficients.
//!
//! `C^q = ∏ F(U_{α_0 … α_q})` and
//! `(d s)_{i_0 … i_{q+1}} = Σ_k (-1)^k ρ(s_{i_0 … î_k … i_{q+1}})`,
//! the restriction going from the face intersection to the full one.

use std::collections::HashMap;

use serde::Serialize;

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::pointset::PointSet;
use crate::presented::{compose, congruent, widen};
use crate::presheaf::Coefficients;

pub const DEFAULT_Q_MAX: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexKind {
    /// Every tuple in `A^{q+1}`, repetitions and all orders included.
    FullProduct,
    /// Strictly increasing tuples of a deduplicated cover.
    Alternating,
}

/// One cochain group: a product of presented groups, one block per tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainGroup {
    /// Tuples that contribute at least one generator.
    pub tuples: Vec<Vec<usize>>,
    /// First generator of each tuple's block.
    pub offsets: Vec<usize>,
    /// Order of every generator, 0 for free ones.
    pub orders: Vec<u64>,
}

impl CochainGroup {
    pub fn generators(&self) -> usize {
        self.orders.len()
    }
}

#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub kind: ComplexKind,
    pub cover: String,
    /// Degrees `0 ..= q_max + 1`.
    pub groups: Vec<CochainGroup>,
    /// `d^q : C^q → C^{q+1}` for `q = 0 ..= q_max`.
    pub differentials: Vec<Matrix<i64>>,
}

impl CochainComplex {
    /// Highest degree whose cohomology is determined.
    pub fn q_max(&self) -> usize {
        self.differentials.len().saturating_sub(1)
    }

    /// `d^{q-1}`, or the empty map into `C^0`.
    pub fn incoming(&self, q: usize) -> Matrix<i64> {
        if q == 0 {
            Matrix::zeros(self.groups[0].generators(), 0)
        } else {
            self.differentials[q - 1].clone()
        }
    }

    /// Checks `d^{q+1} ∘ d^q = 0` modulo the relations of `C^{q+2}`.
    pub fn verify(&self) -> Result<()> {
        for q in 0..self.differentials.len().saturating_sub(1) {
            let prod = compose(&widen(&self.differentials[q + 1]), &widen(&self.differentials[q]))
                .ok_or(Error::Overflow("d∘d check"))?;
            let zero = Matrix::zeros(prod.rows(), prod.cols());
            if !congruent(&prod, &zero, &self.groups[q + 2].orders) {
                return Err(Error::NotAComplex(q));
            }
        }
        Ok(())
    }
}

fn tuple_intersection(elements: &[PointSet], tuple: &[usize], n: usize) -> PointSet {
    let mut s = PointSet::full(n);
    for &i in tuple {
        s.intersect_with(&elements[i]);
    }
    s
}

fn all_tuples(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..k).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

fn increasing_tuples(k: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            go(i + 1, k, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, len, &mut Vec::new(), &mut out);
    out
}

fn build(
    kind: ComplexKind,
    cov: &Cover,
    coeffs: &dyn Coefficients,
    q_max: usize,
    provenance: String,
) -> Result<CochainComplex> {
    let n = cov.base().universe();
    let elements = cov.elements();
    let k = elements.len();
    let empty_is_zero = coeffs.value_on(&PointSet::empty(n))?.is_zero();

    let mut groups = Vec::with_capacity(q_max + 2);
    let mut sets: Vec<Vec<PointSet>> = Vec::with_capacity(q_max + 2);
    let mut lookup: Vec<HashMap<Vec<usize>, usize>> = Vec::with_capacity(q_max + 2);
    for q in 0..=(q_max + 1) {
        let candidates = match kind {
            ComplexKind::FullProduct => all_tuples(k, q + 1),
            ComplexKind::Alternating => increasing_tuples(k, q + 1),
        };
        let mut group = CochainGroup { tuples: Vec::new(), offsets: Vec::new(), orders: Vec::new() };
        let mut group_sets = Vec::new();
        let mut index = HashMap::new();
        for t in candidates {
            let s = tuple_intersection(elements, &t, n);
            if s.is_empty() && empty_is_zero {
                continue;
            }
            let value = coeffs.value_on(&s)?;
            if value.is_zero() {
                continue;
            }
            index.insert(t.clone(), group.tuples.len());
            group.offsets.push(group.orders.len());
            group.orders.extend(value.generator_orders());
            group.tuples.push(t);
            group_sets.push(s);
        }
        groups.push(group);
        sets.push(group_sets);
        lookup.push(index);
    }

    let mut differentials = Vec::with_capacity(q_max + 1);
    for q in 0..=q_max {
        let (src, dst) = (&groups[q], &groups[q + 1]);
        let mut d = Matrix::<i64>::zeros(dst.generators(), src.generators());
        for (row_block, tuple) in dst.tuples.iter().enumerate() {
            let target = &sets[q + 1][row_block];
            for skip in 0..tuple.len() {
                let face: Vec<usize> = tuple.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                let Some(&col_block) = lookup[q].get(&face) else { continue };
                let rho = coeffs.restriction_on(&sets[q][col_block], target)?;
                let sign: i64 = if skip % 2 == 0 { 1 } else { -1 };
                let (r0, c0) = (dst.offsets[row_block], src.offsets[col_block]);
                for i in 0..rho.rows() {
                    for j in 0..rho.cols() {
                        let v = rho[(i, j)].checked_mul(sign).ok_or(Error::Overflow("codifferential"))?;
                        let cell = &mut d[(r0 + i, c0 + j)];
                        *cell = cell.checked_add(v).ok_or(Error::Overflow("codifferential"))?;
                    }
                }
            }
        }
        differentials.push(d);
    }
    let cx = CochainComplex { kind, cover: provenance, groups, differentials };
    cx.verify()?;
    Ok(cx)
}

/// Complex indexed by all of `A^{q+1}`; the cover is used as given.
pub fn cech_complex_full(cov: &Cover, coeffs: &dyn Coefficients, q_max: usize) -> Result<CochainComplex> {
    build(ComplexKind::FullProduct, cov, coeffs, q_max, format!("{} elements", cov.len()))
}

/// Complex indexed by strictly increasing tuples of the deduplicated cover.
pub fn cech_complex_alternating(cov: &Cover, coeffs: &dyn Coefficients, q_max: usize) -> Result<CochainComplex> {
    let cov = cov.dedup();
    build(ComplexKind::Alternating, &cov, coeffs, q_max, format!("{} elements", cov.len()))
}
