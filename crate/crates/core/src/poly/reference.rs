//! Stored tables of the order-3 ..= order-9 Toeplitz block determinants.
//!
//! Each row is `(power of d, coefficient polynomial)`. Coefficients are written
//! as signed sums of monomials such as `-16L^3R^2lr^3`; a leading `-(...)`
//! negates the whole group.

use num_bigint::BigInt;

use super::{Monomial, MultiPoly, Var};
use crate::error::{DetError, Result};
use crate::scalar::Rational;

type Table = &'static [(u16, &'static str)];

const P3: Table = &[(3, "1"), (1, "-(LR+2lr)"), (0, "Lr^2+Rl^2")];

const P4: Table = &[(4, "1"), (2, "-(2LR+3lr)"), (1, "2Lr^2+2Rl^2"), (0, "L^2R^2-2LRlr+l^2r^2")];

const P5: Table = &[
    (5, "1"),
    (3, "-(3LR+4lr)"),
    (2, "3Lr^2+3Rl^2"),
    (1, "2L^2R^2-2LRlr+3l^2r^2"),
    (0, "L^2Rr^2+R^2Ll^2-2Llr^3-2Rrl^3"),
];

const P6: Table = &[
    (6, "1"),
    (4, "-(4LR+5lr)"),
    (3, "4Lr^2+4Rl^2"),
    (2, "4L^2R^2+6l^2r^2"),
    (1, "-6Llr^3-6Rl^3r"),
    (0, "-4L^2R^2lr+L^2r^4+6LRl^2r^2+R^2l^4-l^3r^3"),
];

const P7: Table = &[
    (7, "1"),
    (5, "-(5LR+6lr)"),
    (4, "5Lr^2+5Rl^2"),
    (3, "7L^2R^2+4LRlr+10l^2r^2"),
    (2, "-(3L^2Rr^2+3R^2Ll^2+12Llr^3+12Rrl^3)"),
    (1, "-(2L^3R^3+6L^2R^2lr-3L^2r^4-3R^2l^4-15LRl^2r^2+4l^3r^3)"),
    (0, "3L^3R^2r^2+3R^3L^2l^2-6L^2Rlr^3-6R^2Lrl^3+3Ll^2r^4+3Rr^2l^4"),
];

const P8: Table = &[
    (8, "1"),
    (6, "-(6LR+7lr)"),
    (5, "6Lr^2+6Rl^2"),
    (4, "11L^2R^2+10LRlr+15l^2r^2"),
    (3, "-8L^2Rr^2-8LR^2l^2-20Llr^3-20Rl^3r"),
    (2, "-6L^3R^3-9L^2R^2lr+6L^2r^4+24LRl^2r^2+6R^2l^4-10l^3r^3"),
    (1, "6L^3R^2r^2+6L^2R^3l^2-12L^2Rlr^3-12LR^2l^3r+12Ll^2r^4+12Rl^4r^2"),
    (0, "R^4L^4-6L^3R^3lr+2L^3Rr^4+15L^2R^2l^2r^2-3L^2lr^5+2LR^3l^4-12LRl^3r^3-3R^2l^5r+l^4r^4"),
];

const P9: Table = &[
    (9, "1"),
    (7, "-7LR-8lr"),
    (6, "7Lr^2+7Rl^2"),
    (5, "16L^2R^2+18LRlr+21l^2r^2"),
    (4, "-15L^2Rr^2-15LR^2l^2-30Llr^3-30Rl^3r"),
    (3, "-13L^3R^3-16L^2R^2lr+10L^2r^4+30LRl^2r^2+10R^2l^4-20l^3r^3"),
    (2, "12L^3R^2r^2+12L^2R^3l^2-12L^2Rlr^3-12LR^2l^3r+30Ll^2r^4+30Rl^4r^2"),
    (1, "3L^4R^4-6L^3R^3lr+3L^3Rr^4+30L^2R^2l^2r^2-12L^2lr^5+3LR^3l^4-44LRl^3r^3-12R^2l^5r+5l^4r^4"),
    (0, "3L^4R^3r^2+3L^3R^4l^2-16L^3R^2lr^3+L^3r^6-16L^2R^3l^3r+18L^2Rl^2r^4+18LR^2l^4r^2-4Ll^3r^5+R^3l^6-4Rl^5r^3"),
];

/// The stored polynomial for order `n`, `3 <= n <= 9`.
pub fn reference_pn(n: usize) -> Result<MultiPoly> {
    let table = match n {
        3 => P3,
        4 => P4,
        5 => P5,
        6 => P6,
        7 => P7,
        8 => P8,
        9 => P9,
        _ => return Err(DetError::Range(format!("reference tables cover 3..=9, got {n}"))),
    };
    let mut out = MultiPoly::zero();
    for &(power, text) in table {
        let coeff = parse_group(text);
        let mut shift = [0u16; 5];
        shift[Var::Diag as usize] = power;
        out = &out + &(&coeff * &MultiPoly::term(Rational::from_integer(1.into()), shift));
    }
    Ok(out)
}

fn parse_group(text: &str) -> MultiPoly {
    if let Some(inner) = text.strip_prefix("-(").and_then(|t| t.strip_suffix(')')) {
        return -parse_sum(inner);
    }
    parse_sum(text)
}

fn parse_sum(text: &str) -> MultiPoly {
    let mut out = MultiPoly::zero();
    let mut start = 0;
    let bytes = text.as_bytes();
    for i in 1..=bytes.len() {
        if i == bytes.len() || bytes[i] == b'+' || bytes[i] == b'-' {
            out = &out + &parse_monomial(&text[start..i]);
            start = i;
        }
    }
    out
}

fn parse_monomial(text: &str) -> MultiPoly {
    let (negative, rest) = match text.as_bytes()[0] {
        b'-' => (true, &text[1..]),
        b'+' => (false, &text[1..]),
        _ => (false, text),
    };
    let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
    let mut coeff: BigInt = if digits.is_empty() { 1.into() } else { digits.parse().expect("digits") };
    if negative {
        coeff = -coeff;
    }
    let mut exps: Monomial = [0; 5];
    let mut chars = rest[digits.len()..].chars().peekable();
    while let Some(c) = chars.next() {
        let var = Var::from_symbol(c).unwrap_or_else(|| panic!("bad symbol {c:?} in {text:?}"));
        let mut power = 1;
        if chars.peek() == Some(&'^') {
            chars.next();
            let d = chars.next().and_then(|c| c.to_digit(10)).expect("exponent digit");
            power = d as u16;
        }
        exps[var as usize] += power;
    }
    MultiPoly::term(Rational::from_integer(coeff), exps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn parses_monomials() {
        let m = parse_monomial("-16L^3R^2lr^3");
        assert_eq!(m.coefficient(&[3, 1, 0, 3, 2]), int(-16));
        assert_eq!(m.len(), 1);
        let g = parse_group("-(LR+2lr)");
        assert_eq!(g.coefficient(&[1, 0, 0, 0, 1]), int(-1));
        assert_eq!(g.coefficient(&[0, 1, 0, 1, 0]), int(-2));
    }

    #[test]
    fn spot_values() {
        let p9 = reference_pn(9).unwrap();
        let d7 = p9.coefficient_of_diag_power(7);
        assert_eq!(d7.to_string(), "-7*L*R - 8*l*r");
        let p6 = reference_pn(6).unwrap();
        let c0 = p6.coefficient_of_diag_power(0);
        let expected = parse_sum("-4L^2R^2lr+L^2r^4+6LRl^2r^2+R^2l^4-l^3r^3");
        assert_eq!(c0, expected);
        assert!(matches!(reference_pn(12), Err(DetError::Range(_))));
    }
}
