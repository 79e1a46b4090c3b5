//! Exact determinant of a general k,2k-pentadiagonal matrix by every route
//! that applies to its shape.

use pentadet::scalar::{format_rational, int};
use pentadet::{
    assemble_dense, det_exact_dense, det_q3_general, det_short_band, det_via_blocks, det_via_reduction, BlockMethod,
    PentaSpec,
};

fn main() -> Result<(), pentadet::DetError> {
    // order 10 with k = 3, so n + 1 = 3*3 + 1
    let diag = (1..=10).map(int).collect::<Vec<_>>();
    let spec = PentaSpec::new(
        9,
        3,
        vec![int(1), int(-1), int(2), int(1)],
        vec![int(2); 7],
        diag,
        vec![int(-1); 7],
        vec![int(3), int(0), int(1), int(1)],
    )?;
    let shape = spec.shape()?;
    println!("n = {}, k = {}, q = {}, p = {}", spec.n, spec.k, shape.q, shape.p);

    let dense = det_exact_dense(&assemble_dense(&spec)?);
    println!("dense oracle : {}", format_rational(&dense));

    let routes = [
        ("reduction", det_via_reduction(&spec)),
        ("blocks", det_via_blocks(&spec, BlockMethod::DenseExact)),
        ("q = 3 form", det_q3_general(&spec)),
        ("short band", det_short_band(&spec)),
    ];
    for (name, value) in routes {
        match value {
            Ok(v) => {
                assert_eq!(v, dense);
                println!("{name:<13}: {}", format_rational(&v));
            }
            Err(e) => println!("{name:<13}: not applicable ({e})"),
        }
    }
    Ok(())
}
