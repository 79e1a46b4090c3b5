//! Symbolic block determinants: regenerate p_n from the recursion and compare
//! with the stored tables.

use pentadet::poly::{reference_pn, symbolic_d_polynomial, verify_pn, Var};
use pentadet::DetError;

fn main() -> Result<(), DetError> {
    for n in 3..=9 {
        let report = verify_pn(n)?;
        let p = symbolic_d_polynomial(n)?;
        println!(
            "p_{n}: {} terms, degree {} in d, matches table: {}",
            p.len(),
            p.degree_in(Var::Diag).unwrap_or(0),
            report.equal
        );
        assert!(report.equal);
    }
    println!("p_4 = {}", reference_pn(4)?);
    println!("p_9, coefficient of d^7: {}", reference_pn(9)?.coefficient_of_diag_power(7));
    Ok(())
}
