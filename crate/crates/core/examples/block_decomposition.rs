//! The stride-k permutation that turns a k,2k-pentadiagonal matrix into a
//! direct sum of k small blocks.

use pentadet::decomposition::{block_determinants, sigma, split_blocks, BlockMethod};
use pentadet::scalar::{format_rational, int};
use pentadet::{assemble_dense, det_exact_dense, DetError, PentaSpec};

fn main() -> Result<(), DetError> {
    let (n, k) = (9, 3);
    let perm: Vec<usize> = (0..=n).map(|i| sigma(n, k, i)).collect::<Result<_, _>>()?;
    println!("sigma = {perm:?}");

    let o = n + 1;
    let v = |len: usize, base: i64| (0..len as i64).map(|i| int((base + i) % 5 - 2)).collect::<Vec<_>>();
    let spec = PentaSpec::new(n, k, v(o - 2 * k, 1), v(o - k, 2), v(o, 4), v(o - k, 3), v(o - 2 * k, 0))?;

    let set = split_blocks(&spec)?;
    for b in &set.blocks {
        let diag: Vec<String> = b.diag.iter().map(format_rational).collect();
        println!("block {} (order {}): diagonal [{}]", b.offset, b.order(), diag.join(", "));
    }

    let dets = block_determinants(&spec, BlockMethod::DenseExact)?;
    let product = dets.iter().fold(int(1), |acc, d| acc * d);
    let dense = det_exact_dense(&assemble_dense(&spec)?);
    println!(
        "block determinants [{}], product {} = dense {}",
        dets.iter().map(format_rational).collect::<Vec<_>>().join(", "),
        format_rational(&product),
        format_rational(&dense)
    );
    assert_eq!(product, dense);
    assert_eq!(set.to_dense().order(), o);
    Ok(())
}
