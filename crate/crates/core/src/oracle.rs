//! Dense ground-truth determinants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::model::DenseMatrix;
use crate::scalar::{LogDet, Rational};

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Each row is first multiplied by the lcm of its denominators so the
/// elimination runs over integers; every Bareiss division is then exact.
pub fn det_exact_dense(m: &DenseMatrix<Rational>) -> Rational {
    let n = m.order();
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let row = m.row(i);
        let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        a.push(row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect());
        scale *= lcm;
    }
    let det = bareiss(&mut a);
    BigRational::new(det, scale)
}

/// Determinant of an integer matrix; `a` is overwritten.
pub fn bareiss(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for c in 0..n {
        if a[c][c].is_zero() {
            match (c + 1..n).find(|&r| !a[r][c].is_zero()) {
                Some(r) => {
                    a.swap(c, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, bottom) = a.split_at_mut(c + 1);
        let pivot_row = &top[c];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..n {
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[c] = BigInt::zero();
        }
        prev = pivot.clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Sign and log-magnitude by LU with partial pivoting.
///
/// Pivot ties go to the lowest row index. An exactly zero pivot column yields
/// [`LogDet::ZERO`].
pub fn det_float_dense(m: &DenseMatrix<f64>) -> LogDet {
    let n = m.order();
    let mut a: Vec<f64> = (0..n).flat_map(|i| m.row(i).to_vec()).collect();
    let mut sign: i8 = 1;
    let mut log_abs = 0.0;
    for c in 0..n {
        let mut best = c;
        let mut best_abs = a[c * n + c].abs();
        for r in c + 1..n {
            let v = a[r * n + c].abs();
            if v > best_abs {
                best = r;
                best_abs = v;
            }
        }
        if best_abs == 0.0 || !best_abs.is_finite() {
            return LogDet::ZERO;
        }
        if best != c {
            for j in 0..n {
                a.swap(c * n + j, best * n + j);
            }
            sign = -sign;
        }
        let pivot = a[c * n + c];
        if pivot < 0.0 {
            sign = -sign;
        }
        log_abs += best_abs.ln();
        for r in c + 1..n {
            let factor = a[r * n + c] / pivot;
            if factor == 0.0 {
                continue;
            }
            for j in c + 1..n {
                a[r * n + j] -= factor * a[c * n + j];
            }
        }
    }
    LogDet { sign, log_abs }
}
