//! Constant-diagonal matrices: the seven-term recursion, the power formula and
//! the closed form for q = 3.

use pentadet::scalar::{format_rational, rat};
use pentadet::toeplitz::{d_sequence, det_q3_toeplitz_closed, det_toeplitz};
use pentadet::{assemble_dense, det_exact_dense, BandParams, DetError, ToeplitzSpec};

fn main() -> Result<(), DetError> {
    let params = BandParams::new(rat(1, 2), rat(-1, 1), rat(3, 1), rat(2, 1), rat(-1, 3));
    let seq = d_sequence(&params, 8);
    for m in 0..=8 {
        println!("D({m}) = {}", format_rational(seq.get(m)));
    }

    // n + 1 = 11 = 3*3 + 2: two blocks of order 4 and one of order 3
    let spec = ToeplitzSpec::new(10, 3, params)?;
    let det = det_toeplitz(&spec)?;
    let expected = seq.get(4).clone() * seq.get(4) * seq.get(3);
    assert_eq!(det, expected);
    let closed = det_q3_toeplitz_closed(&spec)?;
    let dense = det_exact_dense(&assemble_dense(&spec.to_general()?)?);
    assert_eq!(det, closed);
    assert_eq!(det, dense);
    println!("det = D(4)^2 * D(3) = {}", format_rational(&det));
    Ok(())
}
