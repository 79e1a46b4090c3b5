//! Banded Toeplitz and imperfect Toeplitz determinants.
//!
//! Write `D(m)` for the determinant of the order-`m` 1,2-pentadiagonal Toeplitz
//! matrix with band values `(L, l, d, r, R)`. Then
//!
//! ```text
//! D(-2) = D(-1) = 0, D(0) = 1, D(1) = d, D(2) = d^2 - lr,
//! D(3)  = d^3 - d(LR + 2lr) + Lr^2 + Rl^2,
//! D(m)  = d D(m-1) + (LR - lr) D(m-2) + (Lr^2 + Rl^2 - 2dLR) D(m-3)
//!       + LR(LR - lr) D(m-4) + d L^2 R^2 D(m-5) - L^3 R^3 D(m-6),   m >= 4
//! ```
//!
//! A k,2k-pentadiagonal Toeplitz matrix with `n+1 = kq + p` has determinant
//! `D(q+1)^p D(q)^(k-p)`. Perturbing the first and last diagonal entry of each
//! block by `alpha` and `beta` gives `D(m) - (alpha+beta) D(m-1) + alpha beta D(m-2)`.

use crate::error::{DetError, Result};
use crate::model::{BandParams, ImperfectSpec, ToeplitzSpec};
use crate::scalar::{LogDet, Scalar};

/// `D(-2) ..= D(max_order)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DSequence<S> {
    values: Vec<S>,
}

impl<S: Scalar> DSequence<S> {
    /// `D(m)` for `-2 <= m <= max_order()`.
    pub fn get(&self, m: isize) -> &S {
        &self.values[(m + 2) as usize]
    }

    pub fn max_order(&self) -> usize {
        self.values.len() - 3
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }
}

/// Recursion coefficients multiplying `D(m-1) .. D(m-6)`.
fn coefficients<S: Scalar>(p: &BandParams<S>) -> [S; 6] {
    let (big_l, l, d, r, big_r) =
        (p.far_lower.clone(), p.near_lower.clone(), p.diag.clone(), p.near_upper.clone(), p.far_upper.clone());
    let lr_big = big_l.clone() * big_r.clone();
    let lr = l.clone() * r.clone();
    let two = S::from_i64(2);
    [
        d.clone(),
        lr_big.clone() - lr.clone(),
        big_l * r.clone() * r + big_r * l.clone() * l - two * d.clone() * lr_big.clone(),
        lr_big.clone() * (lr_big.clone() - lr),
        d * lr_big.clone() * lr_big.clone(),
        -(lr_big.clone() * lr_big.clone() * lr_big),
    ]
}

fn third<S: Scalar>(p: &BandParams<S>) -> S {
    let d = p.diag.clone();
    let two = S::from_i64(2);
    d.clone() * d.clone() * d.clone()
        - d * (p.far_lower.clone() * p.far_upper.clone() + two * p.near_lower.clone() * p.near_upper.clone())
        + p.far_lower.clone() * p.near_upper.clone() * p.near_upper.clone()
        + p.far_upper.clone() * p.near_lower.clone() * p.near_lower.clone()
}

/// Runs the seven-term recursion up to order `max_order`.
pub fn d_sequence<S: Scalar>(params: &BandParams<S>, max_order: usize) -> DSequence<S> {
    let d = params.diag.clone();
    let mut values = vec![
        S::zero(),
        S::zero(),
        S::one(),
        d.clone(),
        d.clone() * d - params.near_lower.clone() * params.near_upper.clone(),
    ];
    if max_order >= 3 {
        values.push(third(params));
    }
    let c = coefficients(params);
    for m in 4..=max_order {
        let i = m + 2;
        let next = (0..6).fold(S::zero(), |acc, t| acc + c[t].clone() * values[i - 1 - t].clone());
        values.push(next);
    }
    values.truncate(max_order + 3);
    DSequence { values }
}

/// `D^(alpha,beta)(m) = D(m) - (alpha+beta) D(m-1) + alpha beta D(m-2)` for all
/// `m >= 0`; the two leading zeros are kept.
pub fn imperfect_sequence<S: Scalar>(seq: &DSequence<S>, alpha: &S, beta: &S) -> DSequence<S> {
    let mut values = vec![S::zero(), S::zero()];
    for m in 0..=seq.max_order() {
        values.push(imperfect_value(seq, alpha, beta, m));
    }
    DSequence { values }
}

/// A single term of [`imperfect_sequence`].
pub fn imperfect_value<S: Scalar>(seq: &DSequence<S>, alpha: &S, beta: &S, m: usize) -> S {
    let m = m as isize;
    seq.get(m).clone() - (alpha.clone() + beta.clone()) * seq.get(m - 1).clone()
        + alpha.clone() * beta.clone() * seq.get(m - 2).clone()
}

/// `D(q+1)^p D(q)^(k-p)`.
pub fn det_toeplitz<S: Scalar>(spec: &ToeplitzSpec<S>) -> Result<S> {
    let shape = spec.shape()?;
    let seq = d_sequence(&spec.params, shape.q + 1);
    let long = seq.get(shape.q as isize + 1).pow_u(shape.p);
    let short = seq.get(shape.q as isize).pow_u(spec.k - shape.p);
    Ok(long * short)
}

/// `D^(alpha,beta)(q+1)^p D^(alpha,beta)(q)^(k-p)`.
pub fn det_imperfect<S: Scalar>(spec: &ImperfectSpec<S>) -> Result<S> {
    let shape = spec.shape()?;
    let seq = d_sequence(&spec.base.params, shape.q + 1);
    let long = imperfect_value(&seq, &spec.alpha, &spec.beta, shape.q + 1).pow_u(shape.p);
    let short = imperfect_value(&seq, &spec.alpha, &spec.beta, shape.q).pow_u(spec.base.k - shape.p);
    Ok(long * short)
}

/// Closed-form order-4 and order-3 block determinants for a given perturbation.
pub fn q3_closed_factors<S: Scalar>(p: &BandParams<S>, alpha: &S, beta: &S) -> (S, S) {
    let (big_l, l, d, r, big_r) =
        (p.far_lower.clone(), p.near_lower.clone(), p.diag.clone(), p.near_upper.clone(), p.far_upper.clone());
    let s = alpha.clone() + beta.clone();
    let t = alpha.clone() * beta.clone();
    let lr = l.clone() * r.clone();
    let lr_big = big_l.clone() * big_r.clone();
    let cross = big_l * r.clone() * r + big_r * l.clone() * l;
    let c = S::from_i64;
    let d2 = d.clone() * d.clone();
    let d3 = d2.clone() * d.clone();
    let d4 = d3.clone() * d.clone();

    let quartic = d4 - s.clone() * d3.clone() - (c(3) * lr.clone() + c(2) * lr_big.clone() - t.clone()) * d2.clone()
        + (c(2) * cross.clone() + s.clone() * (c(2) * lr.clone() + lr_big.clone())) * d.clone()
        + lr_big.clone() * lr_big.clone()
        - c(2) * lr_big.clone() * lr.clone()
        + lr.clone() * lr.clone()
        - s.clone() * cross.clone()
        - t.clone() * lr.clone();
    let cubic = d3 - s.clone() * d2 - (c(2) * lr.clone() + lr_big - t) * d + cross + s * lr;
    (quartic, cubic)
}

fn require_q3(q: usize) -> Result<()> {
    if q == 3 {
        Ok(())
    } else {
        Err(DetError::Hypothesis(format!("q = 3 closed form, got q={q}")))
    }
}

/// Closed form for the Toeplitz case with `q = 3`.
pub fn det_q3_toeplitz_closed<S: Scalar>(spec: &ToeplitzSpec<S>) -> Result<S> {
    let shape = spec.shape()?;
    require_q3(shape.q)?;
    let (quartic, cubic) = q3_closed_factors(&spec.params, &S::zero(), &S::zero());
    Ok(quartic.pow_u(shape.p) * cubic.pow_u(spec.k - shape.p))
}

/// Closed form for the imperfect Toeplitz case with `q = 3`.
///
/// The order-4 factor is
/// `d^4 - (a+b)d^3 - (3lr + 2LR - ab)d^2 + (2Lr^2 + 2Rl^2 + (a+b)(2lr + LR))d
///  + L^2R^2 - 2LRlr + l^2r^2 - (a+b)(Lr^2 + Rl^2) - ab lr`
/// and the order-3 factor is
/// `d^3 - (a+b)d^2 - (2lr + LR - ab)d + Lr^2 + Rl^2 + (a+b) lr`.
pub fn det_q3_imperfect_closed<S: Scalar>(spec: &ImperfectSpec<S>) -> Result<S> {
    let shape = spec.shape()?;
    require_q3(shape.q)?;
    let (quartic, cubic) = q3_closed_factors(&spec.base.params, &spec.alpha, &spec.beta);
    Ok(quartic.pow_u(shape.p) * cubic.pow_u(spec.base.k - shape.p))
}

/// `D(m-2), D(m-1), D(m)` divided by `exp(log_scale)`. The window is rescaled
/// whenever it grows large so orders in the millions stay finite.
fn scaled_tail(params: &BandParams<f64>, m: usize) -> ([f64; 3], f64) {
    let seq = d_sequence(params, m.min(3));
    // window holds D(j-5) ..= D(j) for the current j
    let mut window = [0.0f64; 6];
    let start = m.min(3);
    for (slot, t) in window.iter_mut().zip(start as isize - 5..=start as isize) {
        *slot = if t < -2 { 0.0 } else { *seq.get(t) };
    }
    let c = coefficients(params);
    let mut log_scale = 0.0;
    for _ in start + 1..=m {
        let next = (0..6).map(|t| c[t] * window[5 - t]).sum::<f64>();
        window.rotate_left(1);
        window[5] = next;
        let peak = window.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if peak > 1e150 || (peak < 1e-150 && peak > 0.0) {
            for v in window.iter_mut() {
                *v /= peak;
            }
            log_scale += peak.ln();
        }
    }
    ([window[3], window[4], window[5]], log_scale)
}

/// Sign/log of `D^(alpha,beta)(m)` computed without overflow.
pub fn block_logdet(params: &BandParams<f64>, alpha: f64, beta: f64, m: usize) -> LogDet {
    let ([dm2, dm1, dm], log_scale) = scaled_tail(params, m);
    let v = if m >= 2 {
        dm - (alpha + beta) * dm1 + alpha * beta * dm2
    } else if m == 1 {
        dm - (alpha + beta) * dm1
    } else {
        dm
    };
    LogDet::from_scaled(v, log_scale)
}

/// Float-mode Toeplitz determinant as sign/log.
pub fn logdet_toeplitz(spec: &ToeplitzSpec<f64>) -> Result<LogDet> {
    logdet_perturbed(spec, 0.0, 0.0)
}

pub fn logdet_imperfect(spec: &ImperfectSpec<f64>) -> Result<LogDet> {
    logdet_perturbed(&spec.base, spec.alpha, spec.beta)
}

fn logdet_perturbed(spec: &ToeplitzSpec<f64>, alpha: f64, beta: f64) -> Result<LogDet> {
    let shape = spec.shape()?;
    let long = block_logdet(&spec.params, alpha, beta, shape.q + 1).powu(shape.p);
    let short = block_logdet(&spec.params, alpha, beta, shape.q).powu(spec.k - shape.p);
    Ok(long * short)
}
