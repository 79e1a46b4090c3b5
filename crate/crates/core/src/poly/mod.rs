//! Sparse polynomials over exact rationals in the five band symbols, used to
//! regenerate the Toeplitz block determinants `D(m)` symbolically and check
//! them against the hard-coded reference tables.

mod reference;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{DetError, Result};
use crate::model::{BandParams, ToeplitzSpec};
use crate::scalar::{format_rational, Rational, Scalar};

pub use reference::reference_pn;

/// Largest order [`symbolic_d_polynomial`] will build.
pub const MAX_SYMBOLIC_ORDER: usize = 12;

/// Band symbol, in exponent-slot order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// `L`
    FarLower = 0,
    /// `l`
    NearLower = 1,
    /// `d`
    Diag = 2,
    /// `r`
    NearUpper = 3,
    /// `R`
    FarUpper = 4,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::FarLower, Var::NearLower, Var::Diag, Var::NearUpper, Var::FarUpper];

    pub fn symbol(self) -> char {
        match self {
            Var::FarLower => 'L',
            Var::NearLower => 'l',
            Var::Diag => 'd',
            Var::NearUpper => 'r',
            Var::FarUpper => 'R',
        }
    }

    pub fn from_symbol(c: char) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.symbol() == c)
    }
}

/// Exponents of `(L, l, d, r, R)`.
pub type Monomial = [u16; 5];

/// Polynomial stored as monomial -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, [0; 5])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 5];
        e[v as usize] = 1;
        Self::term(Rational::one(), e)
    }

    pub fn term(coeff: Rational, exponents: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(exponents, coeff);
        p
    }

    fn add_term(&mut self, e: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Monomial) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn degree_in(&self, v: Var) -> Option<u16> {
        self.terms.keys().map(|e| e[v as usize]).max()
    }

    /// The coefficient polynomial of `d^j`, itself free of `d`.
    pub fn coefficient_of_diag_power(&self, j: u16) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            if e[Var::Diag as usize] == j {
                let mut e = *e;
                e[Var::Diag as usize] = 0;
                out.add_term(e, c.clone());
            }
        }
        out
    }

    /// Exchanges `L <-> R` and `l <-> r`.
    pub fn swap_roles(&self) -> Self {
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            out.add_term([e[4], e[3], e[2], e[1], e[0]], c.clone());
        }
        out
    }

    pub fn eval<S: Scalar>(&self, at: &BandParams<S>, coeff: impl Fn(&Rational) -> S) -> S {
        let vals =
            [at.far_lower.clone(), at.near_lower.clone(), at.diag.clone(), at.near_upper.clone(), at.far_upper.clone()];
        self.terms.iter().fold(S::zero(), |acc, (e, c)| {
            let mono = vals.iter().zip(e.iter()).fold(coeff(c), |m, (v, &p)| m * v.pow_u(p as usize));
            acc + mono
        })
    }

    pub fn eval_exact(&self, at: &BandParams<Rational>) -> Rational {
        self.eval(at, Rational::clone)
    }

    /// Terms in canonical print order: descending power of `d`, then descending
    /// lexicographic on the exponents of `(L, l, r, R)`.
    pub fn canonical_terms(&self) -> Vec<(Monomial, Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        v.sort_by(|(a, _), (b, _)| {
            let key = |e: &Monomial| (e[2], e[0], e[1], e[3], e[4]);
            key(b).cmp(&key(a))
        });
        v
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical text, e.g. `d^3 - 1*L*R*d - 2*l*r*d + 1*L*r^2 + 1*R*l^2`.
    ///
    /// Symbols in a term are written in the order `L, R, l, r, d`. The
    /// coefficient is always written, except for a unit coefficient on a pure
    /// power of `d`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        const PRINT_ORDER: [Var; 5] = [Var::FarLower, Var::FarUpper, Var::NearLower, Var::NearUpper, Var::Diag];
        for (idx, (e, c)) in self.canonical_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let magnitude = c.abs();
            let factors: Vec<String> = PRINT_ORDER
                .iter()
                .filter(|v| e[**v as usize] > 0)
                .map(|v| match e[*v as usize] {
                    1 => v.symbol().to_string(),
                    p => format!("{}^{}", v.symbol(), p),
                })
                .collect();
            let pure_diag = e[0] == 0 && e[1] == 0 && e[3] == 0 && e[4] == 0;
            if factors.is_empty() {
                write!(f, "{}", format_rational(&magnitude))?;
            } else if pure_diag && magnitude.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&magnitude), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb) {
                    *x += y;
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

fn symbolic_params() -> BandParams<MultiPoly> {
    BandParams {
        far_lower: MultiPoly::var(Var::FarLower),
        near_lower: MultiPoly::var(Var::NearLower),
        diag: MultiPoly::var(Var::Diag),
        near_upper: MultiPoly::var(Var::NearUpper),
        far_upper: MultiPoly::var(Var::FarUpper),
    }
}

/// `D(0) ..= D(max_order)` with the band values as indeterminates.
pub fn symbolic_d_sequence(max_order: usize) -> Result<Vec<MultiPoly>> {
    if max_order > MAX_SYMBOLIC_ORDER {
        return Err(DetError::Range(format!("symbolic order {max_order} exceeds {MAX_SYMBOLIC_ORDER}")));
    }
    let p = symbolic_params();
    let (big_l, l, d, r, big_r) = (&p.far_lower, &p.near_lower, &p.diag, &p.near_upper, &p.far_upper);
    let two = MultiPoly::constant(Rational::from_i64(2));
    let lr_big = big_l * big_r;
    let lr = l * r;
    let cross = &(&(big_l * r) * r) + &(&(big_r * l) * l);
    let c = [
        d.clone(),
        &lr_big - &lr,
        &cross - &(&(&two * d) * &lr_big),
        &lr_big * &(&lr_big - &lr),
        &(d * &lr_big) * &lr_big,
        -&(&(&lr_big * &lr_big) * &lr_big),
    ];
    // values[i] = D(i - 2)
    let mut values = vec![MultiPoly::zero(), MultiPoly::zero(), MultiPoly::one(), d.clone(), &(d * d) - &lr];
    values.push(&(&(&(d * d) * d) - &(d * &(&lr_big + &(&two * &lr)))) + &cross);
    for m in 4..=max_order {
        let i = m + 2;
        let next = (0..6).fold(MultiPoly::zero(), |acc, t| &acc + &(&c[t] * &values[i - 1 - t]));
        values.push(next);
    }
    values.truncate(max_order + 3);
    Ok(values.split_off(2))
}

/// `D(n)` as a polynomial in `L, l, d, r, R`, for `n <= 12`.
pub fn symbolic_d_polynomial(n: usize) -> Result<MultiPoly> {
    Ok(symbolic_d_sequence(n)?.pop().expect("sequence is non-empty"))
}

/// Outcome of comparing a regenerated polynomial against a reference.
#[derive(Debug, Clone, PartialEq)]
pub struct PnReport {
    pub n: usize,
    pub equal: bool,
    /// `regenerated - reference`.
    pub diff: MultiPoly,
}

/// Regenerates `D(n)` and compares with the stored table for `3 <= n <= 9`.
pub fn verify_pn(n: usize) -> Result<PnReport> {
    let reference = reference_pn(n)?;
    verify_against(n, &reference)
}

/// Regenerates `D(n)` and compares with an arbitrary reference polynomial.
pub fn verify_against(n: usize, reference: &MultiPoly) -> Result<PnReport> {
    let diff = &symbolic_d_polynomial(n)? - reference;
    Ok(PnReport { n, equal: diff.is_zero(), diff })
}

/// `p_(q+1)^p * p_q^(k-p)` from the reference tables, for `3 <= q <= 8`.
pub fn det_via_reference_tables(spec: &ToeplitzSpec<Rational>) -> Result<Rational> {
    let shape = spec.shape()?;
    if !(3..=8).contains(&shape.q) {
        return Err(DetError::Hypothesis(format!("reference tables cover 3 <= q <= 8, got q={}", shape.q)));
    }
    let long = reference_pn(shape.q + 1)?.eval_exact(&spec.params);
    let short = reference_pn(shape.q)?.eval_exact(&spec.params);
    Ok(long.pow_u(shape.p) * short.pow_u(spec.k - shape.p))
}
