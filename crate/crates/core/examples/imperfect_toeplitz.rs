//! Toeplitz matrices whose first and last k diagonal entries are shifted by
//! alpha and beta.

use pentadet::scalar::{format_rational, int, rat};
use pentadet::toeplitz::{det_imperfect, det_q3_imperfect_closed};
use pentadet::{assemble_dense, det_exact_dense, BandParams, DetError, ImperfectSpec, ToeplitzSpec};

fn main() -> Result<(), DetError> {
    let base = ToeplitzSpec::new(6, 2, BandParams::new(int(1), int(1), int(2), int(1), int(1)))?;
    for (alpha, beta) in [(int(0), int(0)), (rat(1, 2), int(0)), (int(1), int(-1)), (rat(2, 3), rat(5, 7))] {
        let spec = ImperfectSpec::new(base.clone(), alpha.clone(), beta.clone())?;
        let recursion = det_imperfect(&spec)?;
        let closed = det_q3_imperfect_closed(&spec)?;
        let dense = det_exact_dense(&assemble_dense(&spec.to_general()?)?);
        assert_eq!(recursion, dense);
        assert_eq!(closed, dense);
        println!(
            "alpha = {:>4}, beta = {:>4}: det = {}",
            format_rational(&alpha),
            format_rational(&beta),
            format_rational(&recursion)
        );
    }
    Ok(())
}
