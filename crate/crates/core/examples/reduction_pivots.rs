//! Step-by-step band elimination, printing the pivots each step finalizes and
//! the trailing block that remains.

use pentadet::reduction::IterationState;
use pentadet::scalar::{format_rational, int, Rational};
use pentadet::{DetError, PentaSpec};

fn show(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

fn main() -> Result<(), DetError> {
    let o = 7;
    let k = 2;
    let spec = PentaSpec::new(
        6,
        k,
        vec![int(1); o - 2 * k],
        vec![int(1); o - k],
        vec![int(2); o],
        vec![int(1); o - k],
        vec![int(1); o - 2 * k],
    )?;

    let mut state = IterationState::new(&spec)?;
    while !state.is_finished() {
        state.step()?;
        println!("after step {}: pivots [{}]", state.steps_done(), show(state.pivots()));
        if let Ok(rest) = state.remaining_spec() {
            println!("  remaining diagonal [{}]", show(&rest.diag));
        }
    }
    let det = state.pivots().iter().fold(int(1), |acc, p| acc * p);
    println!("determinant = {}", format_rational(&det));
    assert_eq!(det, int(16));

    // a zero leading pivot stops the elimination with its location
    let mut singular = spec.clone();
    singular.diag[0] = int(0);
    match pentadet::det_via_reduction(&singular) {
        Err(DetError::PivotZero { j, s }) => println!("zero pivot d_{j} at step {s}"),
        other => panic!("expected a zero pivot, got {other:?}"),
    }
    Ok(())
}
