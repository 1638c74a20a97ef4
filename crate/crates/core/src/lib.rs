//! Certified symbolic-numeric solving of polynomial systems over Q.
//!
//! The kernel (exact rationals, outward-rounded intervals, univariate and
//! multivariate polynomials, subresultants, Gröbner bases, rational
//! univariate representations, discriminant varieties and open-cell CAD)
//! backs three control pipelines: ODE parameter identification, stability
//! of 2-D discrete systems and H-infinity norm enclosure.

pub mod arith;
pub mod control;
pub mod error;
pub mod groebner;
mod linalg;
pub mod multipoly;
pub mod paramspace;
mod prs;
pub mod text;
pub mod unipoly;
pub mod zdsolve;

pub use arith::{
    format_decimal, iv_arith, iv_eval_poly, iv_refine, parse_rational, rat, rat_arith, rat_int, ArithOp,
    Dyadic, MPInterval, Rational, SolutionBox, DEFAULT_PRECISION,
};
pub use control::{
    hinf_norm, identify_from_derivatives, identify_parameters, rank_candidates, DEFAULT_HINF_PRECISION, moebius_split, prolong_ode, stability_2d, stability_parametric,
    unit_disk_stability_1d, Candidate, CellVerdict, OdeModel, RationalMatrix, StabilityVerdict, TimeSeries,
};
pub use error::{Error, Result};
pub use groebner::{buchberger, elimination_ideal, is_zero_dimensional, normal_form, quotient_basis, GroebnerBasis, MonomialOrder};
pub use multipoly::{
    discriminant, partial_derivative, resultant, specialize, sturm_habicht_sequence, subresultant_sequence,
    tarski_query, Monomial, MultiPoly, Specialization, SturmHabichtSequence, SubresSequence,
};
pub use paramspace::{discriminant_variety, open_cad, sample_points, CadTree, DiscriminantVariety};
pub use text::{parse_poly, parse_unipoly};
pub use unipoly::{IsolatingInterval, UniPoly};
pub use zdsolve::{compute_rur, interval_newton, isolate_system, separating_element, solve, Rur};
