//! Application pipelines: parameter identification for polynomial ODE
//! models, structural stability of 2-D discrete systems, and H-infinity norms
//! of rational transfer matrices.

use num_traits::{One, Signed, Zero};

use crate::arith::{rat_int, rational_to_f64, MPInterval, Rational, SolutionBox};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, is_zero_dimensional, MonomialOrder};
use crate::linalg;
use crate::multipoly::{sturm_habicht_sequence, tarski_query, MultiPoly, Specialization};
use crate::paramspace::{discriminant_variety, open_cad, sample_points};
use crate::prs::{pmv, rational_sign, signed_subresultants};
use crate::text::parse_rational_function;
use crate::unipoly::UniPoly;
use crate::zdsolve::solve;

// ---------------------------------------------------------------------------
// Identification

/// `x' = f(x, mu)`, `y = g(x, mu)`, all polynomials over `states ++ params`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdeModel {
    pub states: Vec<String>,
    pub params: Vec<String>,
    /// `dynamics[i]` is the derivative of `states[i]`.
    pub dynamics: Vec<MultiPoly>,
    pub output: MultiPoly,
}

/// Name of the output symbol in prolonged systems (`y__0`, `y__1`, ..).
pub const OUTPUT_NAME: &str = "y";

/// Largest prolonged system (total number of terms) we agree to build.
const PROLONG_TERM_BUDGET: usize = 200_000;

/// Order of the Taylor expansion used to compare candidates with data.
const FIT_ORDER: usize = 10;

/// Binary precision of the identification boxes.
const IDENTIFY_PRECISION: u32 = 64;

pub fn derivative_name(base: &str, k: usize) -> String {
    format!("{base}__{k}")
}

impl OdeModel {
    pub fn new(states: Vec<String>, params: Vec<String>, dynamics: Vec<MultiPoly>, output: MultiPoly) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::invalid("model without states"));
        }
        if dynamics.len() != states.len() {
            return Err(Error::invalid(format!(
                "{} states but {} dynamics equations",
                states.len(),
                dynamics.len()
            )));
        }
        if states.iter().any(|s| s == OUTPUT_NAME) || params.iter().any(|s| s == OUTPUT_NAME) {
            return Err(Error::invalid(format!("'{OUTPUT_NAME}' is reserved for the output")));
        }
        let mut ring = states.clone();
        ring.extend(params.iter().cloned());
        let lift = |p: &MultiPoly| -> Result<MultiPoly> {
            match p.used_vars().into_iter().find(|v| !ring.contains(v)) {
                Some(v) => Err(Error::invalid(format!("undeclared variable {v}"))),
                None => Ok(p.with_vars(&ring)),
            }
        };
        let dynamics = dynamics.iter().map(lift).collect::<Result<_>>()?;
        let output = lift(&output)?;
        Ok(OdeModel {
            states,
            params,
            dynamics,
            output,
        })
    }

    pub fn ring(&self) -> Vec<String> {
        let mut r = self.states.clone();
        r.extend(self.params.iter().cloned());
        r
    }

    /// Derivative of `p` along the flow.
    pub fn lie_derivative(&self, p: &MultiPoly) -> MultiPoly {
        let mut acc = MultiPoly::zero(p.vars());
        for (i, f) in self.dynamics.iter().enumerate() {
            if p.degree_in(i) > 0 {
                acc = &acc + &(&p.derivative_in(i) * f);
            }
        }
        acc
    }

    /// Smallest prolongation order giving a square system in the
    /// parameters and initial states.
    pub fn square_order(&self) -> usize {
        self.params.len() + self.states.len() - 1
    }
}

/// Prolonged system of order `h`: `y__j - g^(j)` for `j = 0..=h` followed by
/// `x__(k+1) - f^(k)` for `k = 0..h`. The ring is the parameters, then
/// `x__k` for `k = 0..=h`, then `y__0..y__h`.
pub fn prolong_ode(model: &OdeModel, h: usize) -> Result<Vec<MultiPoly>> {
    let n = model.states.len();
    let mut ring: Vec<String> = model.params.clone();
    for k in 0..=h {
        ring.extend(model.states.iter().map(|s| derivative_name(s, k)));
    }
    ring.extend((0..=h).map(|j| derivative_name(OUTPUT_NAME, j)));
    let p0 = model.params.len();
    let state_idx = |i: usize, k: usize| p0 + k * n + i;
    // states -> x__0, params -> params
    let map: Vec<usize> = (0..n).map(|i| state_idx(i, 0)).chain(0..p0).collect();
    let remap = |p: &MultiPoly| {
        MultiPoly::from_terms(
            &ring,
            p.terms().map(|(e, c)| {
                let mut ne = vec![0; ring.len()];
                for (j, &x) in e.iter().enumerate() {
                    ne[map[j]] += x;
                }
                (ne, c.clone())
            }),
        )
    };
    let total_derivative = |p: &MultiPoly| {
        let mut acc = MultiPoly::zero(&ring);
        for k in 0..h {
            for i in 0..n {
                let idx = state_idx(i, k);
                if p.degree_in(idx) > 0 {
                    let next = MultiPoly::var(&ring[state_idx(i, k + 1)], &ring);
                    acc = &acc + &(&p.derivative_in(idx) * &next);
                }
            }
        }
        acc
    };
    let mut out = Vec::with_capacity(h + 1 + n * h);
    let mut terms = 0usize;
    let mut check = |p: &MultiPoly| -> Result<()> {
        terms += p.num_terms();
        if terms > PROLONG_TERM_BUDGET {
            return Err(Error::Unsupported(format!("prolongation of order {h} exceeds the size budget")));
        }
        Ok(())
    };
    let mut g = remap(&model.output);
    for j in 0..=h {
        let y = MultiPoly::var(&derivative_name(OUTPUT_NAME, j), &ring);
        let eq = &y - &g;
        check(&eq)?;
        out.push(eq);
        if j < h {
            g = total_derivative(&g);
        }
    }
    let mut fs: Vec<MultiPoly> = model.dynamics.iter().map(remap).collect();
    for k in 0..h {
        for (i, f) in fs.iter_mut().enumerate() {
            let x = MultiPoly::var(&ring[state_idx(i, k + 1)], &ring);
            let eq = &x - &*f;
            check(&eq)?;
            out.push(eq);
            *f = total_derivative(f);
        }
    }
    Ok(out)
}

/// Samples `(t_i, y_i)` of the output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimeSeries {
    pub points: Vec<(Rational, Rational)>,
}

impl TimeSeries {
    pub fn new(points: Vec<(Rational, Rational)>) -> Self {
        TimeSeries { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Interpolating polynomial through all points (Newton divided differences).
    pub fn interpolate(&self) -> Result<UniPoly> {
        let n = self.points.len();
        if n == 0 {
            return Err(Error::invalid("no data points"));
        }
        let ts: Vec<&Rational> = self.points.iter().map(|(t, _)| t).collect();
        let mut dd: Vec<Rational> = self.points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let den = ts[i] - ts[i - level];
                if den.is_zero() {
                    return Err(Error::invalid("repeated abscissa in data"));
                }
                dd[i] = (&dd[i] - &dd[i - 1]) / den;
            }
        }
        let mut acc = UniPoly::constant(dd[n - 1].clone());
        for i in (0..n - 1).rev() {
            let lin = UniPoly::from_coeffs(vec![-ts[i].clone(), Rational::one()]);
            acc = &(&acc * &lin) + &UniPoly::constant(dd[i].clone());
        }
        Ok(acc)
    }
}

/// One real solution of the identification system.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub params: Vec<(String, MPInterval)>,
    pub initial_state: Vec<(String, MPInterval)>,
    /// Box over all unknowns of the square subsystem.
    pub solution: SolutionBox,
    /// Sum of squared output residuals over the data, once ranked.
    pub residual: Option<f64>,
}

impl Candidate {
    /// Parameters and initial states all certainly nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.params
            .iter()
            .chain(&self.initial_state)
            .all(|(_, iv)| !iv.lo().to_rational().is_negative())
    }

    fn point(&self) -> (Vec<Rational>, Vec<Rational>) {
        let mid = |v: &[(String, MPInterval)]| v.iter().map(|(_, iv)| iv.mid().to_rational()).collect();
        (mid(&self.initial_state), mid(&self.params))
    }
}

/// Solves the square subsystem after substituting the output derivatives
/// `derivs[j] = y^(j)(t0)`. Candidates come back unranked, ordered by the
/// separating form.
pub fn identify_from_derivatives(model: &OdeModel, derivs: &[Rational]) -> Result<Vec<Candidate>> {
    let hs = model.square_order();
    if derivs.len() < hs + 1 {
        return Err(Error::invalid(format!(
            "{} output derivatives given, the square subsystem needs {}",
            derivs.len(),
            hs + 1
        )));
    }
    let sys = prolong_ode(model, hs)?;
    let sp: Specialization = (0..=hs)
        .map(|j| (derivative_name(OUTPUT_NAME, j), derivs[j].clone()))
        .collect();
    let mut unknowns = model.params.clone();
    for k in 0..=hs {
        unknowns.extend(model.states.iter().map(|s| derivative_name(s, k)));
    }
    let polys: Vec<MultiPoly> = sys.iter().map(|p| p.specialize(&sp).with_vars(&unknowns)).collect();
    let (_, boxes) = solve(&polys, IDENTIFY_PRECISION)?;
    let p = model.params.len();
    let n = model.states.len();
    Ok(boxes
        .into_iter()
        .map(|b| Candidate {
            params: model.params.iter().cloned().zip(b.coords[..p].iter().cloned()).collect(),
            initial_state: model.states.iter().cloned().zip(b.coords[p..p + n].iter().cloned()).collect(),
            solution: b,
            residual: None,
        })
        .collect())
}

/// Fills in residuals and sorts best first. The model output is expanded
/// as a Taylor series at `t0` for each candidate and compared with the data.
pub fn rank_candidates(model: &OdeModel, candidates: &mut [Candidate], data: &TimeSeries, t0: &Rational) {
    let mut series = vec![model.output.clone()];
    for k in 1..=FIT_ORDER {
        let next = model.lie_derivative(&series[k - 1]);
        series.push(next);
    }
    let mut fact = Rational::one();
    let mut inv_fact = vec![Rational::one()];
    for k in 1..=FIT_ORDER {
        fact *= rat_int(k as i64);
        inv_fact.push(fact.recip());
    }
    for c in candidates.iter_mut() {
        let (x, mu) = c.point();
        let mut pt = x;
        pt.extend(mu);
        let coeffs: Vec<f64> = series
            .iter()
            .zip(&inv_fact)
            .map(|(s, f)| rational_to_f64(&(s.eval(&pt) * f)))
            .collect();
        let mut res = 0.0;
        for (t, y) in &data.points {
            let dt = rational_to_f64(&(t - t0));
            let model_y = coeffs.iter().rev().fold(0.0, |acc, c| acc * dt + c);
            let e = rational_to_f64(y) - model_y;
            res += e * e;
        }
        c.residual = Some(res);
    }
    candidates.sort_by(|a, b| {
        let (ra, rb) = (a.residual.unwrap_or(f64::INFINITY), b.residual.unwrap_or(f64::INFINITY));
        ra.partial_cmp(&rb).unwrap_or(std::cmp::Ordering::Equal)
    });
}

/// Interpolates the data, evaluates the output derivatives at `t0`, solves
/// the square subsystem and ranks the real candidates by fit.
pub fn identify_parameters(model: &OdeModel, data: &TimeSeries, h: usize, t0: &Rational) -> Result<Vec<Candidate>> {
    if data.len() < h + 1 {
        return Err(Error::invalid(format!("order {h} needs at least {} data points", h + 1)));
    }
    if h < model.square_order() {
        return Err(Error::invalid(format!(
            "order {h} is below the square order {}",
            model.square_order()
        )));
    }
    let yhat = data.interpolate()?;
    let mut derivs = Vec::with_capacity(h + 1);
    let mut d = yhat;
    for _ in 0..=h {
        derivs.push(d.eval(t0));
        d = d.derivative();
    }
    let mut cands = identify_from_derivatives(model, &derivs)?;
    rank_candidates(model, &mut cands, data, t0);
    Ok(cands)
}

// ---------------------------------------------------------------------------
// Stability

/// Complex polynomial as a (real, imaginary) pair.
type CPoly = (MultiPoly, MultiPoly);

fn cmul(a: &CPoly, b: &CPoly) -> CPoly {
    (&(&a.0 * &b.0) - &(&a.1 * &b.1), &(&a.0 * &b.1) + &(&a.1 * &b.0))
}

/// Real and imaginary parts of the numerator of `D((x-i)/(x+i), ..)` for
/// the listed variables. Each `z_k` is reused as the name of `x_k`; other
/// variables are untouched.
pub fn moebius_split(d: &MultiPoly, zvars: &[String]) -> Result<(MultiPoly, MultiPoly)> {
    let vars = d.vars().to_vec();
    let idx: Vec<usize> = zvars
        .iter()
        .map(|z| d.var_index(z).ok_or_else(|| Error::invalid(format!("variable {z} not in ring"))))
        .collect::<Result<_>>()?;
    let zero = MultiPoly::zero(&vars);
    let one = MultiPoly::one(&vars);
    let degs: Vec<usize> = idx.iter().map(|&i| d.degree_in(i) as usize).collect();
    // plus[k][m] = (x_k + i)^m; (x_k - i)^m is its conjugate
    let plus: Vec<Vec<CPoly>> = idx
        .iter()
        .zip(&degs)
        .map(|(&i, &n)| {
            let base = (MultiPoly::var(&vars[i], &vars), one.clone());
            let mut v = vec![(one.clone(), zero.clone())];
            for m in 1..=n {
                let next = cmul(&v[m - 1], &base);
                v.push(next);
            }
            v
        })
        .collect();
    let mut acc: CPoly = (zero.clone(), zero.clone());
    for (e, c) in d.terms() {
        let mut rest = e.clone();
        for &i in &idx {
            rest[i] = 0;
        }
        let mut t: CPoly = (MultiPoly::from_terms(&vars, [(rest, c.clone())]), zero.clone());
        for (k, _) in idx.iter().enumerate() {
            let ek = e[idx[k]] as usize;
            let minus = &plus[k][ek];
            t = cmul(&t, &(minus.0.clone(), -&minus.1));
            t = cmul(&t, &plus[k][degs[k] - ek]);
        }
        acc = (&acc.0 + &t.0, &acc.1 + &t.1);
    }
    Ok(acc)
}

/// For `h(s) = (1+s)^n d((1-s)/(1+s))`, the parts of `h(i w)` in the
/// variable at index `i` (reused for `w`), and `n`.
fn bilinear_parts(d: &MultiPoly, i: usize) -> (MultiPoly, MultiPoly, usize) {
    let vars = d.vars().to_vec();
    let n = d.degree_in(i) as usize;
    let c = d.coeffs_in(i);
    let zero = MultiPoly::zero(&vars);
    let mut h = vec![zero.clone(); n + 1];
    let minus = UniPoly::from_ints(&[1, -1]);
    let plus = UniPoly::from_ints(&[1, 1]);
    for (k, ck) in c.iter().enumerate() {
        if ck.is_zero() {
            continue;
        }
        let basis = &minus.pow(k as u32) * &plus.pow((n - k) as u32);
        for (j, b) in basis.coeffs().iter().enumerate() {
            if !b.is_zero() {
                h[j] = &h[j] + &ck.scale(b);
            }
        }
    }
    let mut re = vec![zero.clone(); n + 1];
    let mut im = vec![zero; n + 1];
    for (j, hj) in h.into_iter().enumerate() {
        let s = if (j / 2) % 2 == 0 { Rational::one() } else { -Rational::one() };
        if j % 2 == 0 {
            re[j] = hj.scale(&s);
        } else {
            im[j] = hj.scale(&s);
        }
    }
    (
        MultiPoly::from_coeffs_in(i, &re, &vars),
        MultiPoly::from_coeffs_in(i, &im, &vars),
        n,
    )
}

/// `Ind(num/den)` over the real line.
fn cauchy_index(num: &UniPoly, den: &UniPoly) -> i64 {
    let r = num.rem(den);
    let (_, principal) = signed_subresultants(den.coeffs(), r.coeffs());
    let signs: Vec<i32> = principal.iter().rev().map(rational_sign).collect();
    pmv(&signs)
}

/// True iff `d` has no root in the closed unit disk.
pub fn unit_disk_stability_1d(d: &UniPoly) -> Result<bool> {
    let Some(n) = d.degree() else {
        return Err(Error::invalid("stability of the zero polynomial"));
    };
    if n == 0 {
        return Ok(true);
    }
    if d.eval(&rat_int(1)).is_zero() || d.eval(&rat_int(-1)).is_zero() {
        return Ok(false);
    }
    let vars = vec!["z".to_string()];
    let (re, im, _) = bilinear_parts(&MultiPoly::from_unipoly(d, "z", &vars), 0);
    let (re, im) = (re.to_unipoly_in(0), im.to_unipoly_in(0));
    let g = re.gcd(&im);
    if !g.is_constant() && g.count_real_roots()? > 0 {
        return Ok(false);
    }
    // Left-minus-right root count of h; stable iff every root is on the left.
    let lmr = if n % 2 == 0 { -cauchy_index(&im, &re) } else { cauchy_index(&re, &im) };
    Ok(lmr == n as i64)
}

/// No zero on the unit circle except possibly at `z = 1`.
fn circle_free(d: &UniPoly) -> Result<bool> {
    if d.is_constant() {
        return Ok(true);
    }
    let vars = vec!["z".to_string()];
    let (re, im) = moebius_split(&MultiPoly::from_unipoly(d, "z", &vars), &vars)?;
    let g = re.to_unipoly_in(0).gcd(&im.to_unipoly_in(0));
    Ok(g.is_constant() || g.count_real_roots()? == 0)
}

/// Structural stability of `1/D(z1, z2)`: no zero of `D` in the closed
/// unit bidisk.
pub fn stability_2d(d: &MultiPoly, zvars: &[String]) -> Result<bool> {
    if zvars.len() != 2 {
        return Err(Error::invalid("two-variable stability needs exactly two variables"));
    }
    if let Some(v) = d.used_vars().into_iter().find(|v| !zvars.contains(v)) {
        return Err(Error::invalid(format!("free parameter {v} in stability test")));
    }
    let d = d.with_vars(zvars);
    if d.is_zero() {
        return Err(Error::invalid("stability of the zero polynomial"));
    }
    let one = MultiPoly::one(zvars);
    if d.eval(&[rat_int(1), rat_int(1)]).is_zero() {
        return Ok(false);
    }
    let e1 = d.substitute(1, &one).to_unipoly_in(0);
    let e2 = d.substitute(0, &one).to_unipoly_in(1);
    if !unit_disk_stability_1d(&e1)? || !unit_disk_stability_1d(&e2)? {
        return Ok(false);
    }
    let (re, im) = moebius_split(&d, zvars)?;
    let sys: Vec<MultiPoly> = [re, im].into_iter().filter(|p| !p.is_zero()).collect();
    let gb = buchberger(&sys, MonomialOrder::DegRevLex);
    if !gb.is_one() {
        if !is_zero_dimensional(&gb) {
            return Err(Error::Unsupported("torus system is not zero-dimensional".into()));
        }
        let (_, boxes) = solve(&sys, 16)?;
        if !boxes.is_empty() {
            return Ok(false);
        }
    }
    // Torus points with a coordinate equal to 1 lie outside the chart.
    Ok(circle_free(&e1)? && circle_free(&e2)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellVerdict {
    pub point: Vec<Rational>,
    pub stable: bool,
}

/// One verdict per top-dimensional cell sample of the parameter space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub params: Vec<String>,
    pub cells: Vec<CellVerdict>,
}

impl StabilityVerdict {
    pub fn stable_points(&self) -> Vec<&[Rational]> {
        self.cells.iter().filter(|c| c.stable).map(|c| c.point.as_slice()).collect()
    }

    pub fn unstable_points(&self) -> Vec<&[Rational]> {
        self.cells.iter().filter(|c| !c.stable).map(|c| c.point.as_slice()).collect()
    }
}

/// Parameter polynomials across which the disk stability of an edge
/// polynomial (variable at index `i`) can change.
fn edge_conditions(e: &MultiPoly, i: usize) -> Vec<MultiPoly> {
    let (re, im, n) = bilinear_parts(e, i);
    if n == 0 {
        return vec![e.clone()];
    }
    let (big, small) = if n % 2 == 0 { (re, im) } else { (im, re) };
    let (_, principal) = signed_subresultants(&big.coeffs_in(i), &small.coeffs_in(i));
    principal.into_iter().filter(|p| !p.is_constant()).collect()
}

/// Splits the parameter space into open cells on which the stability of
/// `D(z1, z2; U)` is constant, and classifies one sample per cell.
pub fn stability_parametric(d: &MultiPoly, zvars: &[String], params: &[String]) -> Result<StabilityVerdict> {
    if zvars.len() != 2 {
        return Err(Error::invalid("two-variable stability needs exactly two variables"));
    }
    if params.is_empty() {
        return Err(Error::invalid("no parameters"));
    }
    let mut ring = zvars.to_vec();
    ring.extend(params.iter().cloned());
    if let Some(v) = d.used_vars().into_iter().find(|v| !ring.contains(v)) {
        return Err(Error::invalid(format!("undeclared variable {v}")));
    }
    let d = d.with_vars(&ring);
    let one = MultiPoly::one(&ring);
    let mut conditions: Vec<MultiPoly> = Vec::new();
    if d.degree_in(0) > 0 || d.degree_in(1) > 0 {
        let (re, im) = moebius_split(&d, zvars)?;
        let sys: Vec<MultiPoly> = [re, im].into_iter().filter(|p| !p.is_zero()).collect();
        conditions.extend(discriminant_variety(&sys, zvars, params)?.polys);
    }
    for (i, other) in [(0usize, 1usize), (1, 0)] {
        let e = d.substitute(other, &one);
        conditions.extend(edge_conditions(&e, i).into_iter().map(|p| p.with_vars(params)));
    }
    let cad = open_cad(&conditions, params)?;
    let mut cells = Vec::new();
    for pt in sample_points(&cad) {
        let sp: Specialization = params.iter().cloned().zip(pt.iter().cloned()).collect();
        let dz = d.specialize(&sp).with_vars(zvars);
        let stable = !dz.is_zero() && stability_2d(&dz, zvars)?;
        cells.push(CellVerdict { point: pt, stable });
    }
    Ok(StabilityVerdict {
        params: params.to_vec(),
        cells,
    })
}

// ---------------------------------------------------------------------------
// H-infinity norm

/// Matrix of rational functions in one variable, stored as reduced
/// (numerator, denominator) pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    entries: Vec<Vec<(UniPoly, UniPoly)>>,
}

/// Default binary precision of `hinf_norm`.
pub const DEFAULT_HINF_PRECISION: u32 = 2;

impl RationalMatrix {
    pub fn new(entries: Vec<Vec<(UniPoly, UniPoly)>>) -> Result<Self> {
        let cols = entries.first().map_or(0, |r| r.len());
        if entries.is_empty() || cols == 0 || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("transfer matrix must be a nonempty rectangle"));
        }
        let mut out = Vec::with_capacity(entries.len());
        for row in entries {
            let mut r = Vec::with_capacity(cols);
            for (n, d) in row {
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let g = n.gcd(&d);
                let (n, d) = if n.is_zero() {
                    (n, UniPoly::one())
                } else {
                    (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
                };
                let lc = d.lc();
                r.push((n.scale(&lc.recip()), d.monic()));
            }
            out.push(r);
        }
        Ok(RationalMatrix { entries: out })
    }

    /// Entries as infix rational-function text in `var`.
    pub fn parse(rows: &[Vec<String>], var: &str) -> Result<Self> {
        let vars = vec![var.to_string()];
        let entries = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| {
                        let (n, d) = parse_rational_function(s, &vars)?;
                        Ok((n.to_unipoly_in(0), d.to_unipoly_in(0)))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        RationalMatrix::new(entries)
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries[0].len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &(UniPoly, UniPoly) {
        &self.entries[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|(n, _)| n.is_zero())
    }
}

fn lcm(a: &UniPoly, b: &UniPoly) -> UniPoly {
    (a * b).div_exact(&a.gcd(b)).unwrap().monic()
}

fn reflect(p: &UniPoly) -> UniPoly {
    p.compose(&UniPoly::from_ints(&[0, -1]))
}

/// `p(i w)` for `p` even in variable 0, as a real polynomial in `w`
/// (reusing variable 0).
fn at_imaginary_axis(p: &MultiPoly) -> Result<MultiPoly> {
    let mut wc = Vec::new();
    for (j, c) in p.coeffs_in(0).into_iter().enumerate() {
        if j % 2 == 1 && !c.is_zero() {
            return Err(Error::Internal("polynomial is not even in s".into()));
        }
        wc.push(if j % 4 == 2 { -&c } else { c });
    }
    Ok(MultiPoly::from_coeffs_in(0, &wc, p.vars()))
}

/// Enclosure of the H-infinity norm, of width `2^-(p+3)` where `p` is the
/// starting precision (default 2); exact when the norm is rational.
pub fn hinf_norm(g: &RationalMatrix, starting_precision: Option<u32>) -> Result<MPInterval> {
    let k = starting_precision.unwrap_or(DEFAULT_HINF_PRECISION) + 3;
    for row in &g.entries {
        for (n, d) in row {
            if n.degree() > d.degree() {
                return Err(Error::invalid("transfer matrix entry is not proper"));
            }
        }
    }
    let den = g.entries.iter().flatten().fold(UniPoly::one(), |acc, (_, d)| lcm(&acc, d));
    let on_axis = &den * &reflect(&den);
    let uv = vec!["s".to_string()];
    let on_axis_w = at_imaginary_axis(&MultiPoly::from_unipoly(&on_axis, "s", &uv))?.to_unipoly_in(0);
    if !on_axis_w.is_constant() && on_axis_w.count_real_roots()? > 0 {
        return Err(Error::invalid("pole on the imaginary axis"));
    }
    if g.is_zero() {
        return Ok(MPInterval::from_rational(&Rational::zero(), 64));
    }
    let vars = vec!["s".to_string(), "g".to_string()];
    let lift = |p: &UniPoly| MultiPoly::from_unipoly(p, "s", &vars);
    let num: Vec<Vec<UniPoly>> = g
        .entries
        .iter()
        .map(|r| r.iter().map(|(n, d)| n * &den.div_exact(d).unwrap()).collect())
        .collect();
    let gamma2 = MultiPoly::var("g", &vars).pow(2);
    let dd = &gamma2 * &lift(&on_axis);
    let v = g.cols();
    let m: Vec<Vec<MultiPoly>> = (0..v)
        .map(|j| {
            (0..v)
                .map(|l| {
                    let mut acc = if j == l { dd.clone() } else { MultiPoly::zero(&vars) };
                    for row in &num {
                        acc = &acc - &lift(&(&reflect(&row[j]) * &row[l]));
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let det = linalg::det(&m);
    // s = i w; variable 0 now stands for w
    let n = at_imaginary_axis(&det)?;
    let nt = n.squarefree_part();
    hinf_from_curve(&nt, k)
}

/// Largest `g >= 0` on the real curve `nt(w, g) = 0` or among the roots of
/// `lc_w(nt)`, enclosed in a dyadic cell of width `2^-k`.
fn hinf_from_curve(nt: &MultiPoly, k: u32) -> Result<MPInterval> {
    let lc = nt.lc_in(0).to_unipoly_in(1);
    let seq = if nt.degree_in(0) > 0 {
        Some(sturm_habicht_sequence(nt, &MultiPoly::one(nt.vars()), &nt.vars()[0])?)
    } else {
        None
    };
    let mut cand = lc.clone();
    if let Some(s) = &seq {
        let sth0 = s.entries[0].to_unipoly_in(1);
        if !sth0.is_zero() {
            cand = &cand * &sth0;
        }
    }
    let cand = cand.squarefree_part()?;
    let lc_part = lc.gcd(&cand);
    let mut roots = cand.isolate_real_roots()?;
    // separate the candidates from zero so only nonnegative ones remain
    for r in roots.iter_mut() {
        while !r.is_point() && r.lo.is_negative() && r.hi.is_positive() {
            let w = r.width() / rat_int(4);
            *r = r.refine(&w);
        }
    }
    let roots: Vec<_> = roots.into_iter().filter(|r| !r.hi.is_negative() && !(r.is_point() && r.lo.is_negative())).collect();
    for idx in (0..roots.len()).rev() {
        let r = &roots[idx];
        let on_lc = if r.is_point() {
            lc_part.eval(&r.lo).is_zero()
        } else {
            lc_part.sign_at(&r.lo) * lc_part.sign_at(&r.hi) < 0
        };
        let accept = on_lc
            || match &seq {
                None => false,
                Some(s) => {
                    let below = if !r.is_point() {
                        r.lo.clone()
                    } else if idx > 0 {
                        (&roots[idx - 1].hi + &r.lo) / rat_int(2)
                    } else {
                        &r.lo - Rational::one()
                    };
                    let sp: Specialization = [("g".to_string(), below)].into_iter().collect();
                    tarski_query(s, &sp)? > 0
                }
            };
        if accept {
            let (lo, hi) = r.dyadic_cell(k);
            let bits = lo.numer().bits().max(hi.numer().bits()) as u32;
            return Ok(MPInterval::from_rationals(&lo, &hi, bits + k + 8));
        }
    }
    Err(Error::Internal("no admissible norm candidate".into()))
}
