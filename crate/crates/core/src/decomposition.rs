//! Stride-k permutation similarity splitting a k,2k-pentadiagonal matrix into
//! `k` independent 1,2-pentadiagonal blocks.
//!
//! Block `s` collects positions `s, s+k, s+2k, ...`. The first `p` blocks have
//! order `q+1`, the remaining `k-p` have order `q`.

use crate::error::{DetError, Result};
use crate::model::{validate_shape, BandParams, DenseMatrix, PentaSpec, Shape};
use crate::oracle::det_exact_dense;
use crate::scalar::{LogDet, Rational, Scalar};
use crate::toeplitz::{self, DSequence};

/// Image of position `i` under the rearrangement; `P A P^T` has
/// `(a, b)` entry `A[sigma(a)][sigma(b)]`.
pub fn sigma(n: usize, k: usize, i: usize) -> Result<usize> {
    let Shape { q, p } = Shape::of(n, k)?;
    if i > n {
        return Err(DetError::Index { index: i, max: n });
    }
    let long = p * (q + 1);
    let (s, j) = if i < long {
        (i % (q + 1), i / (q + 1))
    } else {
        let rest = i - long;
        (rest % q, p + rest / q)
    };
    Ok(s * k + j)
}

/// A 1,2-pentadiagonal block. Unlike [`PentaSpec`] it may have order 2, where
/// the far bands are empty.
#[derive(Debug, Clone, PartialEq)]
pub struct Block<S> {
    /// Residue class `s` of the positions this block collects.
    pub offset: usize,
    pub far_lower: Vec<S>,
    pub near_lower: Vec<S>,
    pub diag: Vec<S>,
    pub near_upper: Vec<S>,
    pub far_upper: Vec<S>,
}

impl<S: Scalar> Block<S> {
    pub fn order(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> DenseMatrix<S> {
        let mut m = DenseMatrix::zeros(self.order());
        for (i, v) in self.diag.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        for (i, v) in self.near_lower.iter().enumerate() {
            m.set(i + 1, i, v.clone());
        }
        for (i, v) in self.near_upper.iter().enumerate() {
            m.set(i, i + 1, v.clone());
        }
        for (i, v) in self.far_lower.iter().enumerate() {
            m.set(i + 2, i, v.clone());
        }
        for (i, v) in self.far_upper.iter().enumerate() {
            m.set(i, i + 2, v.clone());
        }
        m
    }

    /// The block as a general spec with `k = 1`; needs order at least 3.
    pub fn to_spec(&self) -> Result<PentaSpec<S>> {
        if self.order() < 3 {
            return Err(DetError::Shape(format!("block of order {} has no far bands", self.order())));
        }
        PentaSpec::new(
            self.order() - 1,
            1,
            self.far_lower.clone(),
            self.near_lower.clone(),
            self.diag.clone(),
            self.near_upper.clone(),
            self.far_upper.clone(),
        )
    }

    /// Constant band values when every diagonal is constant, ignoring the first
    /// and last main-diagonal entries.
    fn toeplitz_interior(&self) -> Option<(BandParams<S>, S, S)> {
        fn constant<S: PartialEq + Clone>(v: &[S]) -> Option<Option<S>> {
            match v.first() {
                None => Some(None),
                Some(x) if v.iter().all(|y| y == x) => Some(Some(x.clone())),
                Some(_) => None,
            }
        }
        let order = self.order();
        let interior = if order > 2 { &self.diag[1..order - 1] } else { &self.diag[..0] };
        let d = constant(interior)?.unwrap_or_else(|| self.diag[0].clone());
        let l = constant(&self.near_lower)?.unwrap_or_else(S::zero);
        let r = constant(&self.near_upper)?.unwrap_or_else(S::zero);
        let big_l = constant(&self.far_lower)?.unwrap_or_else(S::zero);
        let big_r = constant(&self.far_upper)?.unwrap_or_else(S::zero);
        let alpha = d.clone() - self.diag[0].clone();
        let beta = d.clone() - self.diag[order - 1].clone();
        Some((BandParams::new(big_l, l, d, r, big_r), alpha, beta))
    }
}

/// The `k` blocks in order: `p` of order `q+1`, then `k-p` of order `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSet<S> {
    pub shape: Shape,
    pub blocks: Vec<Block<S>>,
}

impl<S: Scalar> BlockSet<S> {
    pub fn total_order(&self) -> usize {
        self.blocks.iter().map(Block::order).sum()
    }

    pub fn to_dense(&self) -> DenseMatrix<S> {
        let dense: Vec<_> = self.blocks.iter().map(Block::to_dense).collect();
        DenseMatrix::direct_sum(&dense)
    }
}

/// Reads the strided diagonals of each block straight from the spec.
pub fn split_blocks<S: Scalar>(spec: &PentaSpec<S>) -> Result<BlockSet<S>> {
    let shape = validate_shape(spec)?;
    let k = spec.k;
    let blocks = (0..k)
        .map(|s| {
            let order = if s < shape.p { shape.q + 1 } else { shape.q };
            let take = |v: &[S], len: usize| -> Vec<S> { v.iter().skip(s).step_by(k).take(len).cloned().collect() };
            Block {
                offset: s,
                far_lower: take(&spec.far_lower, order - 2),
                near_lower: take(&spec.near_lower, order - 1),
                diag: take(&spec.diag, order),
                near_upper: take(&spec.near_upper, order - 1),
                far_upper: take(&spec.far_upper, order - 2),
            }
        })
        .collect();
    Ok(BlockSet { shape, blocks })
}

/// How each block determinant is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockMethod {
    /// Fraction-free elimination on the dense block.
    DenseExact,
    /// Toeplitz (or head/tail-perturbed Toeplitz) blocks use the seven-term
    /// recursion; all others fall back to dense elimination.
    RecursionIfToeplitz,
}

/// Product of the block determinants. Total over exact scalars.
pub fn det_via_blocks(spec: &PentaSpec<Rational>, method: BlockMethod) -> Result<Rational> {
    Ok(block_determinants(spec, method)?.into_iter().fold(Rational::from_i64(1), |a, b| a * b))
}

/// One determinant per block, in block order.
pub fn block_determinants(spec: &PentaSpec<Rational>, method: BlockMethod) -> Result<Vec<Rational>> {
    let set = split_blocks(spec)?;
    let mut cache: Vec<(BandParams<Rational>, DSequence<Rational>)> = Vec::new();
    Ok(set
        .blocks
        .iter()
        .map(|b| match method {
            BlockMethod::DenseExact => det_exact_dense(&b.to_dense()),
            BlockMethod::RecursionIfToeplitz => match b.toeplitz_interior() {
                Some((params, alpha, beta)) => {
                    let m = b.order();
                    let idx = match cache.iter().position(|(p, _)| *p == params) {
                        Some(i) => i,
                        None => {
                            let seq = toeplitz::d_sequence(&params, set.shape.q + 1);
                            cache.push((params, seq));
                            cache.len() - 1
                        }
                    };
                    let seq = &cache[idx].1;
                    toeplitz::imperfect_value(seq, &alpha, &beta, m)
                }
                None => det_exact_dense(&b.to_dense()),
            },
        })
        .collect())
}

impl Block<f64> {
    /// Banded LU with partial pivoting, `O(order)` time and memory. Pivots are
    /// chosen exactly as dense partial pivoting would choose them.
    pub fn logdet(&self) -> LogDet {
        const W: usize = 7;
        let m = self.order();
        // row i holds columns i-2 ..= i+4; pivoting fills up to two extra superdiagonals
        let at = |i: usize, j: usize| i * W + j + 2 - i;
        let mut a = vec![0.0; m * W];
        for i in 0..m {
            a[at(i, i)] = self.diag[i];
        }
        for (i, v) in self.near_lower.iter().enumerate() {
            a[at(i + 1, i)] = *v;
        }
        for (i, v) in self.far_lower.iter().enumerate() {
            a[at(i + 2, i)] = *v;
        }
        for (i, v) in self.near_upper.iter().enumerate() {
            a[at(i, i + 1)] = *v;
        }
        for (i, v) in self.far_upper.iter().enumerate() {
            a[at(i, i + 2)] = *v;
        }
        let mut sign: i8 = 1;
        let mut log_abs = 0.0;
        for c in 0..m {
            let last_row = (c + 2).min(m - 1);
            let last_col = (c + 4).min(m - 1);
            let mut best = c;
            let mut best_abs = a[at(c, c)].abs();
            for r in c + 1..=last_row {
                let v = a[at(r, c)].abs();
                if v > best_abs {
                    best = r;
                    best_abs = v;
                }
            }
            if best_abs == 0.0 || !best_abs.is_finite() {
                return LogDet::ZERO;
            }
            if best != c {
                for j in c..=last_col {
                    a.swap(at(c, j), at(best, j));
                }
                sign = -sign;
            }
            let pivot = a[at(c, c)];
            if pivot < 0.0 {
                sign = -sign;
            }
            log_abs += best_abs.ln();
            for r in c + 1..=last_row {
                let factor = a[at(r, c)] / pivot;
                if factor == 0.0 {
                    continue;
                }
                for j in c + 1..=last_col {
                    a[at(r, j)] -= factor * a[at(c, j)];
                }
            }
        }
        LogDet { sign, log_abs }
    }
}

/// Sign/log determinant as the product of banded block LUs.
pub fn logdet_via_blocks(spec: &PentaSpec<f64>) -> Result<LogDet> {
    let set = split_blocks(spec)?;
    Ok(LogDet::product(set.blocks.iter().map(Block::logdet)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::assemble_dense;
    use crate::scalar::int;

    #[test]
    fn sigma_example() {
        let got: Vec<usize> = (0..=9).map(|i| sigma(9, 3, i).unwrap()).collect();
        assert_eq!(got, vec![0, 3, 6, 9, 1, 4, 7, 2, 5, 8]);
    }

    #[test]
    fn sigma_identity_for_k1() {
        for i in 0..=7 {
            assert_eq!(sigma(7, 1, i).unwrap(), i);
        }
    }

    #[test]
    fn sigma_errors() {
        assert!(matches!(sigma(9, 3, 10), Err(DetError::Index { index: 10, max: 9 })));
        assert!(matches!(sigma(4, 3, 0), Err(DetError::Shape(_))));
    }

    #[test]
    fn sigma_is_bijective() {
        for n in 2..30 {
            for k in 1..=n / 2 {
                let mut seen = vec![false; n + 1];
                for i in 0..=n {
                    let v = sigma(n, k, i).unwrap();
                    assert!(!seen[v], "n={n} k={k}");
                    seen[v] = true;
                }
            }
        }
    }

    #[test]
    fn block_orders() {
        let spec = PentaSpec::diagonal(3, (0..10).map(int).collect()).unwrap();
        let set = split_blocks(&spec).unwrap();
        let orders: Vec<usize> = set.blocks.iter().map(Block::order).collect();
        assert_eq!(orders, vec![4, 3, 3]);
        assert_eq!(set.blocks[1].diag, vec![int(1), int(4), int(7)]);
        assert_eq!(set.total_order(), 10);
    }

    #[test]
    fn diagonal_product() {
        let spec = PentaSpec::diagonal(2, (1..=7).map(int).collect()).unwrap();
        assert_eq!(det_via_blocks(&spec, BlockMethod::DenseExact).unwrap(), int(5040));
        assert_eq!(det_via_blocks(&spec, BlockMethod::RecursionIfToeplitz).unwrap(), int(5040));
    }

    #[test]
    fn permuted_dense_matches_direct_sum() {
        let o = 10;
        let k = 3;
        let v = |len: usize, base: i64| (0..len).map(|i| int(base + i as i64)).collect::<Vec<_>>();
        let spec =
            PentaSpec::new(9, k, v(o - 2 * k, 1), v(o - k, 20), v(o, 40), v(o - k, 60), v(o - 2 * k, 80)).unwrap();
        let a = assemble_dense(&spec).unwrap();
        let perm: Vec<usize> = (0..o).map(|i| sigma(9, k, i).unwrap()).collect();
        let permuted = DenseMatrix::from_fn(o, |x, y| a.get(perm[x], perm[y]).clone());
        assert_eq!(split_blocks(&spec).unwrap().to_dense(), permuted);
    }

    #[test]
    fn banded_lu_matches_dense_lu() {
        use crate::oracle::det_float_dense;
        let o = 23;
        let k = 2;
        // small values on the diagonal force row swaps
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut v = |len: usize| (0..len).map(|_| rng.gen_range(-3..=3) as f64).collect::<Vec<_>>();
        let spec = PentaSpec::new(o - 1, k, v(o - 2 * k), v(o - k), v(o), v(o - k), v(o - 2 * k)).unwrap();
        let exact = det_exact_dense(&assemble_dense(&spec.map(|x| int(*x as i64))).unwrap());
        assert_ne!(exact, int(0));
        for b in &split_blocks(&spec).unwrap().blocks {
            let (x, y) = (b.logdet(), det_float_dense(&b.to_dense()));
            assert_eq!(x.sign, y.sign);
            assert!((x.log_abs - y.log_abs).abs() < 1e-12 || x.is_zero());
        }
        let dense = det_float_dense(&assemble_dense(&spec).unwrap());
        let blocks = logdet_via_blocks(&spec).unwrap();
        assert_eq!(blocks.sign, dense.sign);
        assert!((blocks.log_abs - dense.log_abs).abs() < 1e-9);
        assert!((blocks.log_abs - LogDet::from_rational(&exact).log_abs).abs() < 1e-9);
    }

    #[test]
    fn order_two_blocks() {
        // q = 2: blocks of order 2 have empty far bands
        let spec = PentaSpec::new(6, 3, vec![int(1)], vec![int(1); 4], vec![int(2); 7], vec![int(1); 4], vec![int(1)])
            .unwrap();
        let set = split_blocks(&spec).unwrap();
        assert_eq!(set.blocks.iter().map(Block::order).collect::<Vec<_>>(), vec![3, 2, 2]);
        assert!(set.blocks[1].to_spec().is_err());
        assert!(set.blocks[0].to_spec().is_ok());
        let dense = det_exact_dense(&assemble_dense(&spec).unwrap());
        assert_eq!(det_via_blocks(&spec, BlockMethod::DenseExact).unwrap(), dense);
        assert_eq!(det_via_blocks(&spec, BlockMethod::RecursionIfToeplitz).unwrap(), dense);
    }
}
