//! Matrix specifications, shape validation, dense assembly and lowering of
//! constant-diagonal specs to the general form.
//!
//! Indices start at zero. A spec of index bound `n` describes an `(n+1)x(n+1)`
//! matrix `a` with
//!
//! ```text
//! a[i][j] = far_lower[j]   if j - i == -2k
//!         = near_lower[j]  if j - i == -k
//!         = diag[i]        if j == i
//!         = near_upper[i]  if j - i == k
//!         = far_upper[i]   if j - i == 2k
//!         = 0              otherwise
//! ```

use crate::error::{DetError, Result};
use crate::scalar::Scalar;

/// General k,2k-pentadiagonal matrix given by its five diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct PentaSpec<S> {
    pub n: usize,
    pub k: usize,
    /// Length `n+1-2k`.
    pub far_lower: Vec<S>,
    /// Length `n+1-k`.
    pub near_lower: Vec<S>,
    /// Length `n+1`.
    pub diag: Vec<S>,
    /// Length `n+1-k`.
    pub near_upper: Vec<S>,
    /// Length `n+1-2k`.
    pub far_upper: Vec<S>,
}

/// `n+1 = k*q + p` with `0 <= p < k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub q: usize,
    pub p: usize,
}

impl Shape {
    /// Checks `1 <= k` and `2k <= n` and splits the order into `(q, p)`.
    pub fn of(n: usize, k: usize) -> Result<Shape> {
        if k == 0 {
            return Err(DetError::Shape("band offset k must be at least 1".into()));
        }
        if 2 * k > n {
            return Err(DetError::Shape(format!("need 2k <= n, got k={k}, n={n}")));
        }
        let order = n + 1;
        Ok(Shape { q: order / k, p: order % k })
    }
}

impl<S: Scalar> PentaSpec<S> {
    pub fn new(
        n: usize,
        k: usize,
        far_lower: Vec<S>,
        near_lower: Vec<S>,
        diag: Vec<S>,
        near_upper: Vec<S>,
        far_upper: Vec<S>,
    ) -> Result<Self> {
        let spec = PentaSpec { n, k, far_lower, near_lower, diag, near_upper, far_upper };
        validate_shape(&spec)?;
        Ok(spec)
    }

    /// Spec whose off-diagonal bands are all zero.
    pub fn diagonal(k: usize, diag: Vec<S>) -> Result<Self> {
        let order = diag.len();
        if order == 0 {
            return Err(DetError::Shape("empty diagonal".into()));
        }
        let n = order - 1;
        Shape::of(n, k)?;
        Self::new(
            n,
            k,
            vec![S::zero(); order - 2 * k],
            vec![S::zero(); order - k],
            diag,
            vec![S::zero(); order - k],
            vec![S::zero(); order - 2 * k],
        )
    }

    pub fn order(&self) -> usize {
        self.n + 1
    }

    pub fn shape(&self) -> Result<Shape> {
        validate_shape(self)
    }

    /// The spec of the transposed matrix.
    pub fn transposed(&self) -> Self {
        PentaSpec {
            n: self.n,
            k: self.k,
            far_lower: self.far_upper.clone(),
            near_lower: self.near_upper.clone(),
            diag: self.diag.clone(),
            near_upper: self.near_lower.clone(),
            far_upper: self.far_lower.clone(),
        }
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> PentaSpec<T> {
        let m = |v: &Vec<S>| v.iter().map(&f).collect();
        PentaSpec {
            n: self.n,
            k: self.k,
            far_lower: m(&self.far_lower),
            near_lower: m(&self.near_lower),
            diag: m(&self.diag),
            near_upper: m(&self.near_upper),
            far_upper: m(&self.far_upper),
        }
    }
}

/// Validates the band offset and every diagonal length, returning `(q, p)`.
pub fn validate_shape<S>(spec: &PentaSpec<S>) -> Result<Shape> {
    let shape = Shape::of(spec.n, spec.k)?;
    let order = spec.n + 1;
    let expected = [
        ("L", spec.far_lower.len(), order - 2 * spec.k),
        ("l", spec.near_lower.len(), order - spec.k),
        ("d", spec.diag.len(), order),
        ("r", spec.near_upper.len(), order - spec.k),
        ("R", spec.far_upper.len(), order - 2 * spec.k),
    ];
    for (name, got, want) in expected {
        if got != want {
            return Err(DetError::Shape(format!(
                "diagonal {name} has length {got}, expected {want} for n={}, k={}",
                spec.n, spec.k
            )));
        }
    }
    Ok(shape)
}

/// Square matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<S> {
    order: usize,
    entries: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(order: usize) -> Self {
        DenseMatrix { order, entries: vec![S::zero(); order * order] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(DetError::Shape("matrix rows must form a square grid".into()));
        }
        Ok(DenseMatrix { order, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i, j));
            }
        }
        DenseMatrix { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.entries[i * self.order + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, |i, j| self.get(j, i).clone())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "order mismatch");
        let n = self.order;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for t in 0..n {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(t, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).clone() + a.clone() * b.clone();
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn count_nonzero(&self) -> usize {
        self.entries.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> DenseMatrix<T> {
        DenseMatrix { order: self.order, entries: self.entries.iter().map(f).collect() }
    }

    /// Block-diagonal composition of `blocks` in order.
    pub fn direct_sum(blocks: &[DenseMatrix<S>]) -> Self {
        let order = blocks.iter().map(|b| b.order).sum();
        let mut out = Self::zeros(order);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.order {
                for j in 0..b.order {
                    out.set(offset + i, offset + j, b.get(i, j).clone());
                }
            }
            offset += b.order;
        }
        out
    }
}

/// Dense form of a general spec.
pub fn assemble_dense<S: Scalar>(spec: &PentaSpec<S>) -> Result<DenseMatrix<S>> {
    validate_shape(spec)?;
    Ok(assemble_unchecked(spec))
}

pub(crate) fn assemble_unchecked<S: Scalar>(spec: &PentaSpec<S>) -> DenseMatrix<S> {
    let order = spec.n + 1;
    let k = spec.k;
    let mut m = DenseMatrix::zeros(order);
    for (i, v) in spec.diag.iter().enumerate() {
        m.set(i, i, v.clone());
    }
    for (j, v) in spec.near_lower.iter().enumerate() {
        m.set(j + k, j, v.clone());
    }
    for (i, v) in spec.near_upper.iter().enumerate() {
        m.set(i, i + k, v.clone());
    }
    for (j, v) in spec.far_lower.iter().enumerate() {
        m.set(j + 2 * k, j, v.clone());
    }
    for (i, v) in spec.far_upper.iter().enumerate() {
        m.set(i, i + 2 * k, v.clone());
    }
    m
}

/// The five constant diagonal values of a banded Toeplitz matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct BandParams<S> {
    pub far_lower: S,
    pub near_lower: S,
    pub diag: S,
    pub near_upper: S,
    pub far_upper: S,
}

impl<S: Scalar> BandParams<S> {
    pub fn new(far_lower: S, near_lower: S, diag: S, near_upper: S, far_upper: S) -> Self {
        BandParams { far_lower, near_lower, diag, near_upper, far_upper }
    }

    pub fn swapped(&self) -> Self {
        BandParams {
            far_lower: self.far_upper.clone(),
            near_lower: self.near_upper.clone(),
            diag: self.diag.clone(),
            near_upper: self.near_lower.clone(),
            far_upper: self.far_lower.clone(),
        }
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> BandParams<T> {
        BandParams {
            far_lower: f(&self.far_lower),
            near_lower: f(&self.near_lower),
            diag: f(&self.diag),
            near_upper: f(&self.near_upper),
            far_upper: f(&self.far_upper),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzSpec<S> {
    pub n: usize,
    pub k: usize,
    pub params: BandParams<S>,
}

impl<S: Scalar> ToeplitzSpec<S> {
    pub fn new(n: usize, k: usize, params: BandParams<S>) -> Result<Self> {
        Shape::of(n, k)?;
        Ok(ToeplitzSpec { n, k, params })
    }

    pub fn shape(&self) -> Result<Shape> {
        Shape::of(self.n, self.k)
    }

    pub fn to_general(&self) -> Result<PentaSpec<S>> {
        let order = self.n + 1;
        let k = self.k;
        let p = &self.params;
        PentaSpec::new(
            self.n,
            k,
            vec![p.far_lower.clone(); order.saturating_sub(2 * k)],
            vec![p.near_lower.clone(); order.saturating_sub(k)],
            vec![p.diag.clone(); order],
            vec![p.near_upper.clone(); order.saturating_sub(k)],
            vec![p.far_upper.clone(); order.saturating_sub(2 * k)],
        )
    }
}

/// Toeplitz spec whose first `k` diagonal entries are `d - alpha` and last `k`
/// are `d - beta`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImperfectSpec<S> {
    pub base: ToeplitzSpec<S>,
    pub alpha: S,
    pub beta: S,
}

impl<S: Scalar> ImperfectSpec<S> {
    pub fn new(base: ToeplitzSpec<S>, alpha: S, beta: S) -> Result<Self> {
        base.shape()?;
        Ok(ImperfectSpec { base, alpha, beta })
    }

    pub fn shape(&self) -> Result<Shape> {
        self.base.shape()
    }

    pub fn to_general(&self) -> Result<PentaSpec<S>> {
        let mut spec = self.base.to_general()?;
        let k = self.base.k;
        let order = spec.diag.len();
        let d = self.base.params.diag.clone();
        for (i, v) in spec.diag.iter_mut().enumerate() {
            if i < k {
                *v = d.clone() - self.alpha.clone();
            } else if i >= order - k {
                *v = d.clone() - self.beta.clone();
            }
        }
        Ok(spec)
    }
}

/// Any of the three spec kinds.
#[derive(Debug, Clone, PartialEq)]
pub enum StructuredSpec<S> {
    General(PentaSpec<S>),
    Toeplitz(ToeplitzSpec<S>),
    Imperfect(ImperfectSpec<S>),
}

impl<S: Scalar> StructuredSpec<S> {
    pub fn shape(&self) -> Result<Shape> {
        match self {
            StructuredSpec::General(s) => s.shape(),
            StructuredSpec::Toeplitz(s) => s.shape(),
            StructuredSpec::Imperfect(s) => s.shape(),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> StructuredSpec<T> {
        match self {
            StructuredSpec::General(s) => StructuredSpec::General(s.map(f)),
            StructuredSpec::Toeplitz(s) => {
                StructuredSpec::Toeplitz(ToeplitzSpec { n: s.n, k: s.k, params: s.params.map(f) })
            }
            StructuredSpec::Imperfect(s) => StructuredSpec::Imperfect(ImperfectSpec {
                base: ToeplitzSpec { n: s.base.n, k: s.base.k, params: s.base.params.map(&f) },
                alpha: f(&s.alpha),
                beta: f(&s.beta),
            }),
        }
    }
}

/// Lowers any spec kind to its general five-vector form.
pub fn lower_to_general<S: Scalar>(spec: &StructuredSpec<S>) -> Result<PentaSpec<S>> {
    match spec {
        StructuredSpec::General(s) => {
            validate_shape(s)?;
            Ok(s.clone())
        }
        StructuredSpec::Toeplitz(s) => s.to_general(),
        StructuredSpec::Imperfect(s) => s.to_general(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn spec_with_lengths(n: usize, k: usize) -> PentaSpec<Rational> {
        let o = n + 1;
        PentaSpec {
            n,
            k,
            far_lower: vec![int(1); o - 2 * k],
            near_lower: vec![int(2); o - k],
            diag: vec![int(3); o],
            near_upper: vec![int(4); o - k],
            far_upper: vec![int(5); o - 2 * k],
        }
    }

    #[test]
    fn shape_examples() {
        assert_eq!(validate_shape(&spec_with_lengths(8, 3)).unwrap(), Shape { q: 3, p: 0 });
        assert_eq!(validate_shape(&spec_with_lengths(9, 3)).unwrap(), Shape { q: 3, p: 1 });
        assert!(matches!(Shape::of(5, 3), Err(DetError::Shape(_))));
        assert!(matches!(Shape::of(5, 0), Err(DetError::Shape(_))));
    }

    #[test]
    fn rejects_length_mismatch() {
        let mut s = spec_with_lengths(9, 3);
        s.near_upper.pop();
        assert!(matches!(validate_shape(&s), Err(DetError::Shape(_))));
        let mut s = spec_with_lengths(9, 3);
        s.far_lower.push(int(0));
        assert!(matches!(assemble_dense(&s), Err(DetError::Shape(_))));
    }

    #[test]
    fn diagonal_only_assembles_to_diagonal_matrix() {
        let spec = PentaSpec::diagonal(2, ints(&[1, 2, 3, 4, 5])).unwrap();
        let m = assemble_dense(&spec).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let want = if i == j { int(i as i64 + 1) } else { int(0) };
                assert_eq!(m.get(i, j), &want);
            }
        }
    }

    #[test]
    fn small_entry_rule() {
        let spec =
            PentaSpec::new(2, 1, ints(&[7]), ints(&[1, 2]), ints(&[3, 4, 5]), ints(&[6, 8]), ints(&[9])).unwrap();
        let m = assemble_dense(&spec).unwrap();
        assert_eq!(m.get(2, 0), &int(7));
        assert_eq!(m.get(0, 2), &int(9));
        assert_eq!(m.get(1, 0), &int(1));
        assert_eq!(m.get(2, 1), &int(2));
        assert_eq!(m.get(0, 1), &int(6));
        assert_eq!(m.get(1, 2), &int(8));
        assert_eq!(m.get(1, 1), &int(4));
    }

    #[test]
    fn transpose_swaps_roles() {
        let spec = PentaSpec::new(
            6,
            2,
            ints(&[1, 2, 3]),
            ints(&[4, 5, 6, 7, 8]),
            ints(&[9, 10, 11, 12, 13, 14, 15]),
            ints(&[16, 17, 18, 19, 20]),
            ints(&[21, 22, 23]),
        )
        .unwrap();
        let a = assemble_dense(&spec).unwrap();
        let b = assemble_dense(&spec.transposed()).unwrap();
        assert_eq!(a.transpose(), b);
        assert!(a.count_nonzero() <= 5 * spec.order());
    }

    #[test]
    fn lowering_toeplitz_and_imperfect() {
        let base = ToeplitzSpec::new(9, 3, BandParams::new(int(1), int(1), int(2), int(1), int(1))).unwrap();
        let g = base.to_general().unwrap();
        assert_eq!(g.diag, vec![int(2); 10]);
        assert_eq!(g.far_lower.len(), 4);
        assert_eq!(g.near_upper.len(), 7);

        let imp = ImperfectSpec::new(base.clone(), int(1), int(3)).unwrap();
        assert_eq!(imp.to_general().unwrap().diag, ints(&[1, 1, 1, 2, 2, 2, 2, -1, -1, -1]));

        let zero = ImperfectSpec::new(base.clone(), int(0), int(0)).unwrap();
        assert_eq!(
            lower_to_general(&StructuredSpec::Imperfect(zero)).unwrap(),
            lower_to_general(&StructuredSpec::Toeplitz(base)).unwrap()
        );
    }

    #[test]
    fn toeplitz_rejects_bad_offsets() {
        let p = BandParams::new(int(1), int(1), int(1), int(1), int(1));
        assert!(ToeplitzSpec::new(5, 3, p.clone()).is_err());
        assert!(ToeplitzSpec::new(5, 0, p).is_err());
    }
}
