use num_traits::Num;

use super::Matrix;

/// Rank by exact Gaussian elimination over a field such as `BigRational`.
pub fn rank_over_field<F: Num + Clone>(m: &Matrix<F>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[(i, c)].is_zero()) else { continue };
        a.swap_rows(rank, p);
        let pivot = a[(rank, c)].clone();
        for i in (rank + 1)..rows {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone() / pivot.clone();
            for j in c..cols {
                let v = a[(i, j)].clone() - f.clone() * a[(rank, j)].clone();
                a[(i, j)] = v;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rank over the prime field `F_p`. `p` must be prime.
pub fn rank_mod_p(m: &Matrix<i64>, p: u64) -> usize {
    debug_assert!(is_prime(p));
    let mut a = m.map(|&v| v.rem_euclid(p as i64) as u64);
    let (rows, cols) = a.shape();
    let mulmod = |x: u64, y: u64| (x as u128 * y as u128 % p as u128) as u64;
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| a[(i, c)] != 0) else { continue };
        a.swap_rows(rank, piv);
        let inv = pow_mod(a[(rank, c)], p - 2, p);
        for i in (rank + 1)..rows {
            if a[(i, c)] == 0 {
                continue;
            }
            let f = mulmod(a[(i, c)], inv);
            for j in c..cols {
                let sub = mulmod(f, a[(rank, j)]);
                a[(i, j)] = (a[(i, j)] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
