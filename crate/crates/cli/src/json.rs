//! Output shapes. Field order is fixed by declaration, so the JSON text is
//! deterministic for a given input. See `docs/cli-json.md`.

use certipoly::{MPInterval, Rational, SolutionBox};
use serde::Serialize;

/// Exact dyadic endpoints `m*2^e` plus an outward-rounded decimal rendering.
#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct Interval {
    pub lo: String,
    pub hi: String,
    pub decimal: String,
}

impl Interval {
    pub fn new(iv: &MPInterval) -> Self {
        let digits = ((iv.precision() as f64) * std::f64::consts::LOG10_2).ceil() as usize + 2;
        Interval {
            lo: iv.lo().to_string(),
            hi: iv.hi().to_string(),
            decimal: iv.to_decimal_string(digits.max(6)),
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct Coordinate {
    pub var: String,
    #[serde(flatten)]
    pub interval: Interval,
}

pub fn coordinates(names: &[String], ivs: &[MPInterval]) -> Vec<Coordinate> {
    names
        .iter()
        .zip(ivs)
        .map(|(n, iv)| Coordinate {
            var: n.clone(),
            interval: Interval::new(iv),
        })
        .collect()
}

pub fn solution(names: &[String], b: &SolutionBox) -> Vec<Coordinate> {
    coordinates(names, &b.coords)
}

pub fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(|q| q.to_string()).collect()
}

#[derive(Serialize, Debug)]
pub struct Refined {
    pub certified: bool,
    #[serde(rename = "box")]
    pub coords: Vec<Coordinate>,
}

#[derive(Serialize, Debug)]
pub struct RurOut {
    pub vars: Vec<String>,
    pub separating_form: Vec<String>,
    pub f_t: String,
    pub f_bar: String,
    /// Each coordinate is `poly(T) / denominator(T)` at a root `T` of `f_bar`.
    pub denominator: String,
    pub coords: Vec<NamedPoly>,
}

#[derive(Serialize, Debug)]
pub struct NamedPoly {
    pub var: String,
    pub poly: String,
}

#[derive(Serialize, Debug)]
pub struct DvOut {
    pub params: Vec<String>,
    pub polys: Vec<String>,
}

#[derive(Serialize, Debug)]
pub struct CadOut {
    pub params: Vec<String>,
    /// `projections[k]` holds the polynomials in the first `k + 1` parameters.
    pub projections: Vec<Vec<String>>,
    pub samples: Vec<Vec<String>>,
}

#[derive(Serialize, Debug)]
pub struct StabilityOut {
    pub stable: bool,
}

#[derive(Serialize, Debug)]
pub struct ParametricOut {
    pub params: Vec<String>,
    pub stable: Vec<Vec<String>>,
    pub unstable: Vec<Vec<String>>,
}

#[derive(Serialize, Debug)]
pub struct HinfOut {
    pub hinf: Interval,
}

#[derive(Serialize, Debug)]
pub struct CandidateOut {
    pub params: Vec<Coordinate>,
    pub initial_state: Vec<Coordinate>,
    pub residual: Option<f64>,
    pub nonnegative: bool,
}

#[derive(Serialize, Debug)]
pub struct IdentifyOut {
    pub candidates: Vec<CandidateOut>,
}
