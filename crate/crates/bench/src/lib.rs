//! Shared fixtures for the benchmarks.

use certipoly::{parse_poly, MultiPoly, RationalMatrix, UniPoly};

fn ring(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

pub fn polys(vars: &[&str], src: &[&str]) -> Vec<MultiPoly> {
    let r = ring(vars);
    src.iter().map(|s| parse_poly(s, &r).unwrap()).collect()
}

/// Wilkinson-like product (x - 1)(x - 2)...(x - n) perturbed by x^(n-1)/7.
pub fn clustered(n: i64) -> UniPoly {
    let mut p = UniPoly::one();
    for k in 1..=n {
        p = &p * &UniPoly::from_ints(&[-k, 1]);
    }
    let bump = UniPoly::monomial((n - 1) as usize).scale(&certipoly::rat(1, 7));
    &p + &bump
}

pub fn three_quadrics() -> Vec<MultiPoly> {
    polys(&["x", "y", "z"], &["x^2 + y + z - 1", "x + y^2 + z - 1", "x + y + z^2 - 1"])
}

pub fn cyclic3() -> Vec<MultiPoly> {
    polys(&["x", "y", "z"], &["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"])
}

pub fn stability_example() -> MultiPoly {
    polys(&["z1", "z2", "u1", "u2"], &["u2*z1*z2 - u1*z2 - u2*z1 + z1*z2 - z1 + 1"]).remove(0)
}

pub fn hinf_example() -> RationalMatrix {
    let rows = [["s/(s+1)", "-s/(s+1)"], ["-s/(s+1)", "1/(s+1)"]];
    let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
    RationalMatrix::parse(&rows, "s").unwrap()
}
