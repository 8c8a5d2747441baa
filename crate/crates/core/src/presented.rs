//! Homomorphisms between groups in invariant-factor presentation, given as
//! integer matrices on generators.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::group::FgAbGroup;
use crate::linalg::{homology_at, IntegerScalar, Matrix};

fn to_u64<T: IntegerScalar>(v: T) -> Result<u64> {
    let big: BigInt = v.into();
    big.to_u64().ok_or(Error::Overflow("torsion coefficient"))
}

fn homology_generic<T: IntegerScalar>(
    mid: &[u64],
    next: &[u64],
    incoming: &Matrix<i64>,
    outgoing: &Matrix<i64>,
) -> Result<FgAbGroup> {
    let inc = incoming.map(|&v| T::from(v));
    let out = outgoing.map(|&v| T::from(v));
    let (free, torsion) = homology_at(mid, next, &inc, &out)?;
    let mut orders = vec![0u64; free];
    for t in torsion {
        orders.push(to_u64(t)?);
    }
    FgAbGroup::from_cyclic_orders(&orders)
}

/// `ker(outgoing) / im(incoming)` at a term with generator orders `mid`.
/// Runs on `i64` and retries with `BigInt` on overflow.
pub fn subquotient(mid: &[u64], next: &[u64], incoming: &Matrix<i64>, outgoing: &Matrix<i64>) -> Result<FgAbGroup> {
    match homology_generic::<i64>(mid, next, incoming, outgoing) {
        Err(Error::Overflow(_)) => homology_generic::<BigInt>(mid, next, incoming, outgoing),
        other => other,
    }
}

/// Whether two maps into a group with generator orders `target` agree.
pub fn congruent(a: &Matrix<i128>, b: &Matrix<i128>, target: &[u64]) -> bool {
    assert_eq!(a.shape(), b.shape());
    (0..a.rows()).all(|i| {
        let t = target[i] as i128;
        (0..a.cols()).all(|j| {
            let d = a[(i, j)] - b[(i, j)];
            if t == 0 {
                d == 0
            } else {
                d % t == 0
            }
        })
    })
}

/// Whether a generator matrix sends every relation of the source into the relations of the target.
pub fn is_well_defined(m: &Matrix<i64>, source: &[u64], target: &[u64]) -> bool {
    (0..m.cols()).all(|j| {
        let s = source[j] as i128;
        if s == 0 {
            return true;
        }
        (0..m.rows()).all(|i| {
            let v = s * m[(i, j)] as i128;
            match target[i] {
                0 => v == 0,
                t => v % t as i128 == 0,
            }
        })
    })
}

/// Exact product in `i128`; `None` on overflow.
pub fn compose(outer: &Matrix<i128>, inner: &Matrix<i128>) -> Option<Matrix<i128>> {
    assert_eq!(outer.cols(), inner.rows());
    let mut out = Matrix::<i128>::zeros(outer.rows(), inner.cols());
    for i in 0..outer.rows() {
        for k in 0..outer.cols() {
            let a = outer[(i, k)];
            if a == 0 {
                continue;
            }
            for j in 0..inner.cols() {
                out[(i, j)] = out[(i, j)].checked_add(a.checked_mul(inner[(k, j)])?)?;
            }
        }
    }
    Some(out)
}

pub fn widen(m: &Matrix<i64>) -> Matrix<i128> {
    m.map(|&v| v as i128)
}
