//! Smith normal form over integer scalars.
//!
//! Everything here is generic over [`IntegerScalar`]. Machine integers use
//! checked arithmetic and report [`Error::Overflow`]; callers retry with
//! `BigInt`, which never overflows.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed};

use super::Matrix;
use crate::error::{Error, Result};

pub trait IntegerScalar:
    Clone + Debug + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + From<i64> + Into<BigInt>
{
}

impl<T> IntegerScalar for T where
    T: Clone + Debug + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + From<i64> + Into<BigInt>
{
}

fn overflow() -> Error {
    Error::Overflow("Smith normal form")
}

/// `left · A · right` is diagonal with `pivots` (all positive) in its leading
/// positions. Pivots are not normalized to a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithDecomposition<T> {
    pub pivots: Vec<T>,
    pub left: Matrix<T>,
    pub right: Matrix<T>,
}

impl<T> SmithDecomposition<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

struct Reducer<T> {
    a: Matrix<T>,
    left: Option<Matrix<T>>,
    right: Option<Matrix<T>>,
}

/// `target -= q * src` over `cols from..`, skipping zero source entries.
fn axpy_row<T: IntegerScalar>(m: &mut Matrix<T>, target: usize, src: usize, q: &T, from: usize) -> Result<()> {
    let (dst, s) = m.row_pair_mut(target, src);
    for j in from..s.len() {
        if s[j].is_zero() {
            continue;
        }
        let prod = q.checked_mul(&s[j]).ok_or_else(overflow)?;
        dst[j] = dst[j].checked_sub(&prod).ok_or_else(overflow)?;
    }
    Ok(())
}

fn axpy_col<T: IntegerScalar>(m: &mut Matrix<T>, target: usize, src: usize, q: &T, from: usize) -> Result<()> {
    for i in from..m.rows() {
        if m[(i, src)].is_zero() {
            continue;
        }
        let prod = q.checked_mul(&m[(i, src)]).ok_or_else(overflow)?;
        m[(i, target)] = m[(i, target)].checked_sub(&prod).ok_or_else(overflow)?;
    }
    Ok(())
}

impl<T: IntegerScalar> Reducer<T> {
    fn new(a: Matrix<T>, track: bool) -> Self {
        let (r, c) = a.shape();
        let (left, right) =
            if track { (Some(Matrix::identity(r)), Some(Matrix::identity(c))) } else { (None, None) };
        Reducer { a, left, right }
    }

    fn row_op(&mut self, target: usize, src: usize, q: &T, from: usize) -> Result<()> {
        axpy_row(&mut self.a, target, src, q, from)?;
        if let Some(u) = self.left.as_mut() {
            axpy_row(u, target, src, q, 0)?;
        }
        Ok(())
    }

    fn col_op(&mut self, target: usize, src: usize, q: &T, from: usize) -> Result<()> {
        axpy_col(&mut self.a, target, src, q, from)?;
        if let Some(v) = self.right.as_mut() {
            axpy_col(v, target, src, q, 0)?;
        }
        Ok(())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = self.left.as_mut() {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = self.right.as_mut() {
            v.swap_cols(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.a.cols() {
            self.a[(i, j)] = -self.a[(i, j)].clone();
        }
        if let Some(u) = self.left.as_mut() {
            for j in 0..u.cols() {
                u[(i, j)] = -u[(i, j)].clone();
            }
        }
    }

    fn smallest_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), T)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                let abs = v.abs();
                if abs.is_one() {
                    return Some((i, j));
                }
                if best.as_ref().is_none_or(|(_, b)| abs < *b) {
                    best = Some(((i, j), abs));
                }
            }
        }
        best.map(|(pos, _)| pos)
    }

    fn run(&mut self) -> Result<Vec<T>> {
        let (rows, cols) = self.a.shape();
        let mut pivots = Vec::new();
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = self.smallest_entry(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.a[(t, t)].clone();
                let mut dirty = false;
                for i in (t + 1)..rows {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.a[(i, t)].clone() / p.clone();
                    if !q.is_zero() {
                        self.row_op(i, t, &q, t)?;
                    }
                    dirty |= !self.a[(i, t)].is_zero();
                }
                for j in (t + 1)..cols {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.a[(t, j)].clone() / p.clone();
                    if !q.is_zero() {
                        self.col_op(j, t, &q, t)?;
                    }
                    dirty |= !self.a[(t, j)].is_zero();
                }
                if !dirty {
                    break;
                }
                // Move the smallest leftover of the pivot row/column into the pivot.
                let mut best: Option<(bool, usize, T)> = None;
                for i in (t + 1)..rows {
                    let v = &self.a[(i, t)];
                    if !v.is_zero() && best.as_ref().is_none_or(|b| v.abs() < b.2) {
                        best = Some((true, i, v.abs()));
                    }
                }
                for j in (t + 1)..cols {
                    let v = &self.a[(t, j)];
                    if !v.is_zero() && best.as_ref().is_none_or(|b| v.abs() < b.2) {
                        best = Some((false, j, v.abs()));
                    }
                }
                match best {
                    Some((true, i, _)) => self.swap_rows(t, i),
                    Some((false, j, _)) => self.swap_cols(t, j),
                    None => unreachable!("dirty pivot line without entries"),
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
            pivots.push(self.a[(t, t)].clone());
            t += 1;
        }
        Ok(pivots)
    }
}

/// Full decomposition with unimodular transforms.
pub fn smith_decompose<T: IntegerScalar>(m: &Matrix<T>) -> Result<SmithDecomposition<T>> {
    let mut r = Reducer::new(m.clone(), true);
    let pivots = r.run()?;
    Ok(SmithDecomposition { pivots, left: r.left.unwrap(), right: r.right.unwrap() })
}

/// Nonzero invariant factors `d_1 | d_2 | ... | d_rank`, all positive.
pub fn smith_invariants<T: IntegerScalar>(m: &Matrix<T>) -> Result<Vec<T>> {
    let mut r = Reducer::new(m.clone(), false);
    let pivots = r.run()?;
    normalize_chain(pivots)
}

fn normalize_chain<T: IntegerScalar>(mut d: Vec<T>) -> Result<Vec<T>> {
    // Units first; they never change under gcd/lcm with anything.
    d.sort_by_key(|x| !x.is_one());
    let start = d.iter().take_while(|x| x.is_one()).count();
    for i in start..d.len() {
        for j in (i + 1)..d.len() {
            if d[j].is_multiple_of(&d[i]) {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = (d[i].clone() / g.clone()).checked_mul(&d[j]).ok_or_else(overflow)?;
            d[i] = g;
            d[j] = l;
        }
    }
    Ok(d)
}

/// Basis of the integer kernel `{x : m·x = 0}`, one vector per column.
pub fn integer_kernel<T: IntegerScalar>(m: &Matrix<T>) -> Result<Matrix<T>> {
    let dec = smith_decompose(m)?;
    let cols: Vec<usize> = (dec.rank()..m.cols()).collect();
    let rows: Vec<usize> = (0..m.cols()).collect();
    Ok(dec.right.submatrix(&rows, &cols))
}

/// Structure of `L(z) / L(b)` where `L(·)` is the column lattice and
/// `L(b) ⊆ L(z)`. Returns `(free rank, torsion invariant factors > 1)`.
pub fn lattice_quotient<T: IntegerScalar>(z: &Matrix<T>, b: &Matrix<T>) -> Result<(usize, Vec<T>)> {
    assert_eq!(z.rows(), b.rows(), "lattices in different ambient ranks");
    let dec = smith_decompose(z)?;
    let r = dec.rank();
    let mut coords = Matrix::<T>::zeros(r, b.cols());
    for col in 0..b.cols() {
        for i in 0..z.rows() {
            // w_i = (left · y)_i
            let mut w = T::zero();
            for k in 0..z.rows() {
                let y = &b[(k, col)];
                if y.is_zero() || dec.left[(i, k)].is_zero() {
                    continue;
                }
                let prod = dec.left[(i, k)].checked_mul(y).ok_or_else(overflow)?;
                w = w.checked_add(&prod).ok_or_else(overflow)?;
            }
            if i < r {
                let (q, rem) = w.div_rem(&dec.pivots[i]);
                if !rem.is_zero() {
                    return Err(Error::Invalid("sub-lattice is not contained in the lattice".into()));
                }
                coords[(i, col)] = q;
            } else if !w.is_zero() {
                return Err(Error::Invalid("sub-lattice is not contained in the lattice".into()));
            }
        }
    }
    let inv = smith_invariants(&coords)?;
    let free = r - inv.len();
    Ok((free, inv.into_iter().filter(|d| !d.is_one()).collect()))
}

fn relation_matrix<T: IntegerScalar>(orders: &[u64]) -> Result<Matrix<T>> {
    let torsion: Vec<(usize, u64)> = orders.iter().copied().enumerate().filter(|&(_, o)| o != 0).collect();
    let mut r = Matrix::<T>::zeros(orders.len(), torsion.len());
    for (c, &(i, o)) in torsion.iter().enumerate() {
        let o = i64::try_from(o).map_err(|_| Error::Overflow("generator order"))?;
        r[(i, c)] = T::from(o);
    }
    Ok(r)
}

/// Homology `ker(outgoing) / im(incoming)` at a middle term
/// `⊕ ℤ/orders_mid[i]` (order 0 means a free generator), where `outgoing`
/// lands in `⊕ ℤ/orders_next[j]`. Both maps are given on generators and must
/// be well defined on the presentations. Returns `(free rank, torsion)`.
pub fn homology_at<T: IntegerScalar>(
    orders_mid: &[u64],
    orders_next: &[u64],
    incoming: &Matrix<T>,
    outgoing: &Matrix<T>,
) -> Result<(usize, Vec<T>)> {
    let mid = orders_mid.len();
    assert_eq!(incoming.rows(), mid);
    assert_eq!(outgoing.cols(), mid);
    assert_eq!(outgoing.rows(), orders_next.len());

    if orders_mid.iter().chain(orders_next).all(|&o| o == 0) {
        let out_rank = smith_invariants(outgoing)?.len();
        let inv = smith_invariants(incoming)?;
        let free = mid - out_rank - inv.len();
        return Ok((free, inv.into_iter().filter(|d| !d.is_one()).collect()));
    }

    // Cycles: x with outgoing·x ∈ relations of the next term.
    let rel_next = relation_matrix::<T>(orders_next)?;
    let neg_rel = rel_next.map(|v| -v.clone());
    let kernel = integer_kernel(&outgoing.hcat(&neg_rel))?;
    let rows: Vec<usize> = (0..mid).collect();
    let cols: Vec<usize> = (0..kernel.cols()).collect();
    let cycles = kernel.submatrix(&rows, &cols);
    // Boundaries plus the relations of the middle term.
    let boundaries = incoming.hcat(&relation_matrix::<T>(orders_mid)?);
    lattice_quotient(&cycles, &boundaries)
}
