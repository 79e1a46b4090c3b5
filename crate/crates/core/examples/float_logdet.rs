//! Sign and log-magnitude of determinants far beyond f64 range.

use std::time::Instant;

use pentadet::decomposition::logdet_via_blocks;
use pentadet::toeplitz::logdet_toeplitz;
use pentadet::{assemble_dense, det_float_dense, BandParams, DetError, ToeplitzSpec};

fn main() -> Result<(), DetError> {
    let params = BandParams::new(1.0, -1.0, 4.0, 1.0, 0.5);
    for order in [500, 10_000, 1_000_000] {
        let spec = ToeplitzSpec::new(order - 1, 3, params.clone())?;
        let start = Instant::now();
        let v = logdet_toeplitz(&spec)?;
        println!("order {order:>7}: sign {:+}, ln|det| = {:.6} ({:.2?})", v.sign, v.log_abs, start.elapsed());
    }

    let spec = ToeplitzSpec::new(499, 3, params)?;
    let general = spec.to_general()?;
    let recursion = logdet_toeplitz(&spec)?;
    let blocks = logdet_via_blocks(&general)?;
    let dense = det_float_dense(&assemble_dense(&general)?);
    for (name, v) in [("blocks", blocks), ("dense", dense)] {
        assert_eq!(v.sign, recursion.sign);
        assert!((v.log_abs - recursion.log_abs).abs() < 1e-9 * recursion.log_abs.abs());
        println!("order 500 via {name}: ln|det| = {:.9}", v.log_abs);
    }
    Ok(())
}
