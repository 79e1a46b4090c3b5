#![allow(dead_code)]

use pentadet::scalar::{int, rat, Rational};
use pentadet::{BandParams, PentaSpec, ToeplitzSpec};
use rand::Rng;

pub fn small_int(rng: &mut impl Rng) -> Rational {
    int(rng.gen_range(-3..=3))
}

/// Random rational with numerator in `-5..=5` and denominator in `1..=4`.
pub fn small_rat(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

/// Random general spec; entries are small integers, or small fractions when
/// `fractions` is set.
pub fn general_spec(rng: &mut impl Rng, n: usize, k: usize, fractions: bool) -> PentaSpec<Rational> {
    let o = n + 1;
    let mut v =
        |len: usize| (0..len).map(|_| if fractions { small_rat(rng) } else { small_int(rng) }).collect::<Vec<_>>();
    let (fl, nl, d, nu, fu) = (v(o - 2 * k), v(o - k), v(o), v(o - k), v(o - 2 * k));
    PentaSpec::new(n, k, fl, nl, d, nu, fu).unwrap()
}

pub fn random_params(rng: &mut impl Rng) -> BandParams<Rational> {
    BandParams::new(small_rat(rng), small_rat(rng), small_rat(rng), small_rat(rng), small_rat(rng))
}

/// Toeplitz spec with `n + 1 = k*q + p`.
pub fn toeplitz_with_shape(k: usize, q: usize, p: usize, params: BandParams<Rational>) -> ToeplitzSpec<Rational> {
    ToeplitzSpec::new(k * q + p - 1, k, params).unwrap()
}

pub fn uniform_spec(n: usize, k: usize, big_l: i64, l: i64, d: i64, r: i64, big_r: i64) -> PentaSpec<Rational> {
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
