//! Band elimination on the diagonal vectors, and the closed forms for `q = 2`
//! and `q = 3`.
//!
//! Eliminating row and column `i` with pivot `d_i` only touches positions
//! `i + k` and `i + 2k`:
//!
//! ```text
//! d[i+k]  -= l[i] * r[i] / d[i]
//! r[i+k]  -= l[i] * R[i] / d[i]
//! l[i+k]  -= L[i] * r[i] / d[i]
//! d[i+2k] -= L[i] * R[i] / d[i]
//! ```
//!
//! Step `s` (1-based) finalizes the pivots at positions `(s-1)k .. sk-1`. Updates
//! whose target lies beyond the end of a diagonal are dropped, which is exactly
//! the truncation of the index groups in the last two or three steps.

use crate::error::{DetError, Result};
use crate::model::{validate_shape, PentaSpec, Shape};
use crate::scalar::{product, Scalar};

/// Iterated diagonals after `steps_done()` elimination steps.
#[derive(Debug, Clone)]
pub struct IterationState<'a, S> {
    spec: &'a PentaSpec<S>,
    step: usize,
    near_lower: Vec<S>,
    near_upper: Vec<S>,
    diag: Vec<S>,
    pivots: Vec<S>,
}

impl<'a, S: Scalar> IterationState<'a, S> {
    pub fn new(spec: &'a PentaSpec<S>) -> Result<Self> {
        validate_shape(spec)?;
        Ok(IterationState {
            spec,
            step: 0,
            near_lower: spec.near_lower.clone(),
            near_upper: spec.near_upper.clone(),
            diag: spec.diag.clone(),
            pivots: Vec::with_capacity(spec.n + 1),
        })
    }

    pub fn steps_done(&self) -> usize {
        self.step
    }

    pub fn is_finished(&self) -> bool {
        self.pivots.len() == self.spec.n + 1
    }

    /// Finalized pivots in position order.
    pub fn pivots(&self) -> &[S] {
        &self.pivots
    }

    /// Runs one elimination step over the next `k` positions.
    pub fn step(&mut self) -> Result<()> {
        let k = self.spec.k;
        let n = self.spec.n;
        let s = self.step + 1;
        let start = self.step * k;
        let end = ((self.step + 1) * k).min(n + 1);
        for i in start..end {
            let pivot = self.diag[i].clone();
            if i + k <= n {
                if pivot.is_zero() {
                    return Err(DetError::PivotZero { j: i, s });
                }
                let l_i = self.near_lower[i].clone();
                let r_i = self.near_upper[i].clone();
                let t = self.diag[i + k].clone() - l_i.clone() * r_i.clone() / pivot.clone();
                self.diag[i + k] = t;
                if i + 2 * k <= n {
                    let big_l = self.spec.far_lower[i].clone();
                    let big_r = self.spec.far_upper[i].clone();
                    let t = self.near_upper[i + k].clone() - l_i * big_r.clone() / pivot.clone();
                    self.near_upper[i + k] = t;
                    let t = self.near_lower[i + k].clone() - big_l.clone() * r_i / pivot.clone();
                    self.near_lower[i + k] = t;
                    let t = self.diag[i + 2 * k].clone() - big_l * big_r / pivot.clone();
                    self.diag[i + 2 * k] = t;
                }
            }
            self.pivots.push(pivot);
        }
        self.step += 1;
        Ok(())
    }

    /// The trailing k,2k-pentadiagonal block left after the steps done so far.
    pub fn remaining_spec(&self) -> Result<PentaSpec<S>> {
        let skip = self.step * self.spec.k;
        let n = self.spec.n;
        if skip > n {
            return Err(DetError::Shape("elimination already finished".into()));
        }
        let tail = |v: &[S]| v.get(skip..).map(<[S]>::to_vec).unwrap_or_default();
        PentaSpec::new(
            n - skip,
            self.spec.k,
            tail(&self.spec.far_lower),
            tail(&self.near_lower),
            tail(&self.diag),
            tail(&self.near_upper),
            tail(&self.spec.far_upper),
        )
    }
}

fn check_reduction_hypothesis(shape: Shape) -> Result<()> {
    if (shape.q == 3 && shape.p > 0) || shape.q > 3 {
        Ok(())
    } else {
        Err(DetError::Hypothesis(format!(
            "elimination route needs q > 3 or (q = 3, p > 0), got q={}, p={}",
            shape.q, shape.p
        )))
    }
}

/// All `n+1` pivots of the elimination, in position order.
pub fn iterate_diagonals<S: Scalar>(spec: &PentaSpec<S>) -> Result<Vec<S>> {
    check_reduction_hypothesis(validate_shape(spec)?)?;
    let mut state = IterationState::new(spec)?;
    while !state.is_finished() {
        state.step()?;
    }
    Ok(state.pivots)
}

/// Product of the elimination pivots.
pub fn det_via_reduction<S: Scalar>(spec: &PentaSpec<S>) -> Result<S> {
    let pivots = iterate_diagonals(spec)?;
    let k = spec.k;
    // chain d_j d_{j+k}^(1) d_{j+2k}^(2) ... for each residue class j
    Ok(product((0..k).map(|j| product(pivots.iter().skip(j).step_by(k).cloned()))))
}

/// The six-term factor `N_j`, the determinant of the order-3 block on positions
/// `j, j+k, j+2k`.
pub fn n_factor<S: Scalar>(spec: &PentaSpec<S>, j: usize) -> S {
    n_factor_impl(spec, j, false)
}

fn n_factor_impl<S: Scalar>(spec: &PentaSpec<S>, j: usize, flip_last: bool) -> S {
    let k = spec.k;
    let d = |i: usize| spec.diag[i].clone();
    let l = |i: usize| spec.near_lower[i].clone();
    let r = |i: usize| spec.near_upper[i].clone();
    let big_l = spec.far_lower[j].clone();
    let big_r = spec.far_upper[j].clone();
    let last = big_l.clone() * r(j) * r(j + k);
    let head = d(j) * d(j + k) * d(j + 2 * k)
        - d(j + 2 * k) * l(j) * r(j)
        - d(j + k) * big_l * big_r.clone()
        - d(j) * l(j + k) * r(j + k)
        + big_r * l(j) * l(j + k);
    if flip_last {
        head - last
    } else {
        head + last
    }
}

/// The fourteen-term factor `M_j`, the determinant of the order-4 block on
/// positions `j, j+k, j+2k, j+3k`.
pub fn m_factor<S: Scalar>(spec: &PentaSpec<S>, j: usize) -> S {
    let k = spec.k;
    let d = |t: usize| spec.diag[j + t * k].clone();
    let l = |t: usize| spec.near_lower[j + t * k].clone();
    let r = |t: usize| spec.near_upper[j + t * k].clone();
    let big_l = |t: usize| spec.far_lower[j + t * k].clone();
    let big_r = |t: usize| spec.far_upper[j + t * k].clone();
    d(0) * d(1) * d(2) * d(3)
        - d(0) * d(1) * l(2) * r(2)
        - d(0) * d(2) * big_l(1) * big_r(1)
        - d(0) * d(3) * l(1) * r(1)
        - d(1) * d(3) * big_l(0) * big_r(0)
        - d(2) * d(3) * l(0) * r(0)
        + d(0) * big_l(1) * r(1) * r(2)
        + d(0) * big_r(1) * l(1) * l(2)
        + d(3) * big_l(0) * r(0) * r(1)
        + d(3) * big_r(0) * l(0) * l(1)
        + big_l(0) * big_l(1) * big_r(0) * big_r(1)
        - big_l(0) * big_r(1) * l(2) * r(0)
        - big_l(1) * big_r(0) * l(0) * r(2)
        + l(0) * l(2) * r(0) * r(2)
}

/// Factors of the closed form valid for `(n+1)/3 <= k <= n/2`.
pub fn short_band_factors<S: Scalar>(spec: &PentaSpec<S>) -> Result<Vec<S>> {
    let shape = validate_shape(spec)?;
    if !(shape.q == 2 || (shape.q == 3 && shape.p == 0)) {
        return Err(DetError::Hypothesis(format!(
            "short-band closed form needs (n+1)/3 <= k <= n/2, got n={}, k={}",
            spec.n, spec.k
        )));
    }
    let (n, k) = (spec.n, spec.k);
    let mut factors: Vec<S> = (0..=n - 2 * k).map(|j| n_factor(spec, j)).collect();
    for j in n + 1 - 2 * k..k {
        factors.push(
            spec.diag[j].clone() * spec.diag[j + k].clone() - spec.near_lower[j].clone() * spec.near_upper[j].clone(),
        );
    }
    Ok(factors)
}

pub fn det_short_band<S: Scalar>(spec: &PentaSpec<S>) -> Result<S> {
    Ok(product(short_band_factors(spec)?))
}

/// `M_0 .. M_{p-1}` followed by `N_p .. N_{k-1}`; requires `q = 3`.
pub fn q3_factors<S: Scalar>(spec: &PentaSpec<S>) -> Result<Vec<S>> {
    q3_factors_impl(spec, false)
}

fn q3_factors_impl<S: Scalar>(spec: &PentaSpec<S>, flip: bool) -> Result<Vec<S>> {
    let shape = validate_shape(spec)?;
    if shape.q != 3 {
        return Err(DetError::Hypothesis(format!("q = 3 closed form, got q={}", shape.q)));
    }
    Ok((0..spec.k).map(|j| if j < shape.p { m_factor(spec, j) } else { n_factor_impl(spec, j, flip) }).collect())
}

pub fn det_q3_general<S: Scalar>(spec: &PentaSpec<S>) -> Result<S> {
    Ok(product(q3_factors(spec)?))
}

/// `det_q3_general` with the sign of one term of `N_j` flipped. Exists only as
/// a negative control for verification campaigns.
#[doc(hidden)]
pub fn det_q3_general_with_flipped_term<S: Scalar>(spec: &PentaSpec<S>) -> Result<S> {
    Ok(product(q3_factors_impl(spec, true)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::assemble_dense;
    use crate::oracle::det_exact_dense;
    use crate::scalar::{int, rat, Rational};

    fn uniform(n: usize, k: usize, big_l: i64, l: i64, d: i64, r: i64, big_r: i64) -> PentaSpec<Rational> {
        let o = n + 1;
        PentaSpec::new(
            n,
            k,
            vec![int(big_l); o - 2 * k],
            vec![int(l); o - k],
            vec![int(d); o],
            vec![int(r); o - k],
            vec![int(big_r); o - 2 * k],
        )
        .unwrap()
    }

    // small deterministic integer spec without relying on an RNG crate
    fn scrambled(n: usize, k: usize, seed: i64) -> PentaSpec<Rational> {
        let mut x = seed;
        let mut next = || {
            x = (x * 1103515245 + 12345) % 2147483648;
            int(x / 65536 % 7 - 3)
        };
        let o = n + 1;
        let mut v = |len: usize| (0..len).map(|_| next()).collect::<Vec<_>>();
        let far_lower = v(o - 2 * k);
        let near_lower = v(o - k);
        let diag = v(o);
        let near_upper = v(o - k);
        let far_upper = v(o - 2 * k);
        PentaSpec::new(n, k, far_lower, near_lower, diag, near_upper, far_upper).unwrap()
    }

    #[test]
    fn worked_pivots() {
        let spec = uniform(6, 2, 1, 1, 2, 1, 1);
        let pivots = iterate_diagonals(&spec).unwrap();
        assert_eq!(pivots, vec![int(2), int(2), rat(3, 2), rat(3, 2), rat(4, 3), rat(4, 3), int(1)]);
        assert_eq!(det_via_reduction(&spec).unwrap(), int(16));
        assert_eq!(det_q3_general(&spec).unwrap(), int(16));
    }

    #[test]
    fn diagonal_only_pivots_unchanged() {
        let d: Vec<Rational> = (1..=7).map(int).collect();
        let spec = PentaSpec::diagonal(2, d.clone()).unwrap();
        assert_eq!(iterate_diagonals(&spec).unwrap(), d);
        assert_eq!(det_via_reduction(&spec).unwrap(), int(5040));
    }

    #[test]
    fn zero_first_pivot() {
        let mut spec = uniform(6, 2, 1, 1, 2, 1, 1);
        spec.diag[0] = int(0);
        assert_eq!(iterate_diagonals(&spec), Err(DetError::PivotZero { j: 0, s: 1 }));
        assert_eq!(det_via_reduction(&spec), Err(DetError::PivotZero { j: 0, s: 1 }));
    }

    #[test]
    fn hypothesis_rejections() {
        assert!(matches!(iterate_diagonals(&uniform(8, 3, 1, 1, 1, 1, 1)), Err(DetError::Hypothesis(_))));
        assert!(matches!(iterate_diagonals(&uniform(6, 3, 1, 1, 1, 1, 1)), Err(DetError::Hypothesis(_))));
        assert!(matches!(det_short_band(&uniform(9, 2, 1, 1, 1, 1, 1)), Err(DetError::Hypothesis(_))));
        assert!(matches!(det_q3_general(&uniform(8, 2, 1, 1, 1, 1, 1)), Err(DetError::Hypothesis(_))));
    }

    #[test]
    fn short_band_examples() {
        assert_eq!(det_short_band(&uniform(8, 3, 1, 1, 1, 1, 1)).unwrap(), int(0));
        assert_eq!(det_q3_general(&uniform(8, 3, 1, 1, 1, 1, 1)).unwrap(), int(0));
        let d: Vec<Rational> = (2..=8).map(int).collect();
        let spec = PentaSpec::diagonal(3, d).unwrap();
        assert_eq!(det_short_band(&spec).unwrap(), int(2 * 3 * 4 * 5 * 6 * 7 * 8));
        for seed in 1..20 {
            let spec = scrambled(5, 2, seed);
            let dense = det_exact_dense(&assemble_dense(&spec).unwrap());
            assert_eq!(det_short_band(&spec).unwrap(), dense);
            assert_eq!(det_q3_general(&spec).unwrap(), dense);
        }
    }

    #[test]
    fn q3_diagonal_collapse() {
        let d: Vec<Rational> = (1..=10).map(int).collect();
        let spec = PentaSpec::diagonal(3, d).unwrap();
        assert_eq!(det_q3_general(&spec).unwrap(), int(3628800));
    }

    #[test]
    fn reduction_matches_dense_q4() {
        let mut checked = 0;
        for seed in 1..40 {
            let spec = scrambled(8, 2, seed);
            let dense = det_exact_dense(&assemble_dense(&spec).unwrap());
            match det_via_reduction(&spec) {
                Ok(v) => {
                    assert_eq!(v, dense);
                    checked += 1;
                }
                Err(DetError::PivotZero { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
        assert!(checked > 5);
    }

    #[test]
    fn remaining_spec_after_one_step() {
        let spec = uniform(6, 2, 1, 1, 2, 1, 1);
        let mut st = IterationState::new(&spec).unwrap();
        st.step().unwrap();
        let rest = st.remaining_spec().unwrap();
        assert_eq!(rest.n, 4);
        assert_eq!(rest.diag, vec![rat(3, 2), rat(3, 2), rat(3, 2), rat(3, 2), int(2)]);
        assert_eq!(rest.near_lower, vec![rat(1, 2), rat(1, 2), int(1)]);
        assert_eq!(st.pivots(), &[int(2), int(2)]);
    }

    #[test]
    fn flipped_term_changes_value() {
        let spec = uniform(8, 3, 1, 1, 2, 1, 1);
        assert_ne!(det_q3_general(&spec).unwrap(), det_q3_general_with_flipped_term(&spec).unwrap());
    }
}
