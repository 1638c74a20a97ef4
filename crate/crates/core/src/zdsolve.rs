//! Zero-dimensional solving: separating forms, rational univariate
//! representations, certified boxes and Krawczyk refinement.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::arith::{iv_eval_poly, pow2, rat_int, Dyadic, MPInterval, Rational, SolutionBox};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, is_zero_dimensional, quotient_basis, GroebnerBasis, MonomialOrder};
use crate::linalg::{self, Mat};
use crate::multipoly::{Monomial, MultiPoly};
use crate::unipoly::{IsolatingInterval, UniPoly};

/// `X_i = coords[i](T) / f_bar'(T)` at the roots `T` of `f_bar`, where
/// `T = sum sep[i] X_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rur {
    pub vars: Vec<String>,
    pub sep: Vec<Rational>,
    /// Characteristic polynomial of multiplication by `T` (degree = quotient dimension).
    pub f_t: UniPoly,
    /// Square-free part of `f_t`, primitive with positive leading coefficient.
    pub f_bar: UniPoly,
    pub coords: Vec<UniPoly>,
}

impl Rur {
    /// Coordinates of the solution attached to a root `beta` of `f_bar`
    /// given exactly.
    pub fn point_at(&self, beta: &Rational) -> Vec<Rational> {
        let d = self.f_bar.derivative().eval(beta);
        self.coords.iter().map(|f| f.eval(beta) / &d).collect()
    }
}

/// Candidate linear forms: `X_1, .., X_n`, then `sum i^j X_i` for `j = 1, 2, ..`.
pub fn separating_candidates(n: usize) -> impl Iterator<Item = Vec<Rational>> {
    let units = (0..n).map(move |k| (0..n).map(|i| if i == k { Rational::one() } else { Rational::zero() }).collect());
    let powers = (1u32..).map(move |j| (1..=n).map(|i| rat_int((i as i64).pow(j))).collect());
    units.chain(powers)
}

/// First separating form from the candidate schedule.
pub fn separating_element(gb: &GroebnerBasis) -> Result<Vec<Rational>> {
    let ctx = QuotientRing::new(gb)?;
    let n = gb.vars().len();
    let d = ctx.basis.len();
    let bound = n + (n.saturating_sub(1)) * d * d.saturating_sub(1) / 2 + 1;
    for sep in separating_candidates(n).take(bound) {
        match ctx.rur(&sep) {
            Ok(_) => return Ok(sep),
            Err(Error::NotSeparating) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Internal("separating-form schedule exhausted".into()))
}

pub fn compute_rur(gb: &GroebnerBasis, sep: &[Rational]) -> Result<Rur> {
    QuotientRing::new(gb)?.rur(sep)
}

/// Quotient algebra with its multiplication matrices.
struct QuotientRing {
    vars: Vec<String>,
    basis: Vec<Monomial>,
    mult: Vec<Mat>,
}

impl QuotientRing {
    fn new(gb: &GroebnerBasis) -> Result<QuotientRing> {
        if !is_zero_dimensional(gb) {
            return Err(Error::NotZeroDimensional);
        }
        let basis = quotient_basis(gb)?;
        let vars = gb.vars().to_vec();
        let index: BTreeMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let d = basis.len();
        let mut mult = Vec::with_capacity(vars.len());
        for v in 0..vars.len() {
            let mut m = linalg::zeros(d);
            for (k, b) in basis.iter().enumerate() {
                let mut e = b.clone();
                e[v] += 1;
                let col = if let Some(&j) = index.get(&e) {
                    vec![(j, Rational::one())]
                } else {
                    let mono = MultiPoly::from_terms(&vars, [(e, Rational::one())]);
                    let nf = gb.normal_form(&mono);
                    nf.terms()
                        .map(|(t, c)| (index[t], c.clone()))
                        .collect()
                };
                for (j, c) in col {
                    m[j][k] = c;
                }
            }
            mult.push(m);
        }
        Ok(QuotientRing { vars, basis, mult })
    }

    fn rur(&self, sep: &[Rational]) -> Result<Rur> {
        let n = self.vars.len();
        let d = self.basis.len();
        if sep.len() != n {
            return Err(Error::invalid("separating form has the wrong length"));
        }
        if d == 0 {
            return Ok(Rur {
                vars: self.vars.clone(),
                sep: sep.to_vec(),
                f_t: UniPoly::one(),
                f_bar: UniPoly::one(),
                coords: vec![UniPoly::zero(); n],
            });
        }
        let mut mt = linalg::zeros(d);
        for (a, m) in sep.iter().zip(&self.mult) {
            if !a.is_zero() {
                linalg::add_scaled(&mut mt, m, a);
            }
        }
        let f_t = linalg::charpoly(&mt);
        let f_bar = f_t.squarefree_part()?;
        let fm = f_bar.monic();
        let deg = fm.degree().unwrap();
        // Powers M_t^j for the trace sums.
        let mut powers: Vec<Mat> = vec![linalg::identity(d)];
        for j in 1..deg {
            powers.push(linalg::mul(&powers[j - 1], &mt));
        }
        let g_of = |mv: Option<&Mat>| -> UniPoly {
            let s: Vec<Rational> = powers
                .iter()
                .map(|p| match mv {
                    None => linalg::trace(p),
                    Some(m) => linalg::trace(&linalg::mul(m, p)),
                })
                .collect();
            let a = fm.coeffs();
            let c: Vec<Rational> = (0..deg)
                .map(|i| (0..deg - i).map(|j| &a[i + j + 1] * &s[j]).sum())
                .collect();
            UniPoly::from_coeffs(c)
        };
        let g1 = g_of(None);
        let g1_inv = g1.inverse_mod(&fm).ok_or(Error::NotSeparating)?;
        let dfm = fm.derivative();
        // f_bar = scale * fm, so its derivative carries the same scale.
        let scale = f_bar.lc();
        let mut coords = Vec::with_capacity(n);
        for v in 0..n {
            let h = (&g_of(Some(&self.mult[v])) * &g1_inv).rem(&fm);
            let mut check = self.mult[v].clone();
            let hm = linalg::eval_poly(&h, &mt);
            linalg::add_scaled(&mut check, &hm, &-Rational::one());
            if !linalg::is_nilpotent(&check) {
                return Err(Error::NotSeparating);
            }
            coords.push((&h * &dfm).rem(&fm).scale(&scale));
        }
        Ok(Rur {
            vars: self.vars.clone(),
            sep: sep.to_vec(),
            f_t,
            f_bar,
            coords,
        })
    }
}

/// Absolute-width enclosure of a rational at `2^-prec` resolution.
fn enclose(q: &Rational, prec: u32) -> MPInterval {
    let mag = if q.is_zero() {
        0
    } else {
        (q.numer().bits() as i64 - q.denom().bits() as i64 + 1).max(0) as u32
    };
    MPInterval::from_rational(q, prec + mag + 2)
}

/// One certified box per real root of `f_bar`, sorted by the value of the
/// separating form; every coordinate width is at most `2^-output_precision`.
pub fn isolate_system(rur: &Rur, output_precision: u32) -> Result<Vec<SolutionBox>> {
    if rur.f_bar.is_constant() {
        return Ok(Vec::new());
    }
    let roots = rur.f_bar.isolate_real_roots()?;
    let df = rur.f_bar.derivative();
    let target = pow2(-(output_precision as i64));
    let mut out = Vec::with_capacity(roots.len());
    for root in roots {
        if root.is_point() {
            let pt = rur.point_at(&root.lo);
            out.push(SolutionBox::new(
                pt.iter().map(|x| enclose(x, output_precision)).collect(),
                true,
            ));
            continue;
        }
        out.push(box_for_root(rur, &df, root, &target, output_precision)?);
    }
    Ok(out)
}

fn box_for_root(
    rur: &Rur,
    df: &UniPoly,
    mut root: IsolatingInterval,
    target: &Rational,
    output_precision: u32,
) -> Result<SolutionBox> {
    let mut wp = output_precision + 32;
    for _ in 0..200 {
        if root.is_point() {
            let pt = rur.point_at(&root.lo);
            return Ok(SolutionBox::new(pt.iter().map(|x| enclose(x, output_precision)).collect(), true));
        }
        let x = root.to_interval(wp);
        let den = iv_eval_poly(df, &x);
        let mut coords = Vec::with_capacity(rur.coords.len());
        let mut ok = !den.contains_zero();
        if ok {
            for f in &rur.coords {
                let c = iv_eval_poly(f, &x).div(&den)?;
                if &c.width() > target {
                    ok = false;
                    break;
                }
                coords.push(c);
            }
        }
        if ok {
            return Ok(SolutionBox::new(coords, true));
        }
        let w = root.width() / pow2(8);
        root = root.refine(&w);
        wp += 8;
    }
    Err(Error::Internal("root boxing did not converge".into()))
}

/// Gröbner basis, separating form, RUR and boxes in one call.
pub fn solve(system: &[MultiPoly], output_precision: u32) -> Result<(Rur, Vec<SolutionBox>)> {
    let gb = buchberger(system, MonomialOrder::DegRevLex);
    if !is_zero_dimensional(&gb) {
        return Err(Error::NotZeroDimensional);
    }
    let sep = separating_element(&gb)?;
    let rur = compute_rur(&gb, &sep)?;
    let boxes = isolate_system(&rur, output_precision)?;
    Ok((rur, boxes))
}

/// Krawczyk-certified box around a solution of a square system near
/// `initial_point`, refined to width `<= 2^-precision`. When the
/// contraction cannot be established the returned box is flagged uncertified.
pub fn interval_newton(system: &[MultiPoly], initial_point: &[Rational], precision: u32) -> Result<SolutionBox> {
    let vars: Vec<String> = {
        let mut v: Vec<String> = Vec::new();
        for p in system {
            for x in p.vars() {
                if !v.contains(x) {
                    v.push(x.clone());
                }
            }
        }
        v
    };
    let n = vars.len();
    if system.len() != n || initial_point.len() != n || n == 0 {
        return Err(Error::invalid("interval Newton needs a square system and a matching point"));
    }
    let f: Vec<MultiPoly> = system.iter().map(|p| p.with_vars(&vars)).collect();
    let jac: Vec<Vec<MultiPoly>> = f.iter().map(|p| (0..n).map(|j| p.derivative_in(j)).collect()).collect();
    let wp = precision + 64;

    // Point Newton iterations to sharpen the start.
    let mut x: Vec<Rational> = initial_point.to_vec();
    for _ in 0..200 {
        let fx: Vec<Rational> = f.iter().map(|p| p.eval(&x)).collect();
        if fx.iter().all(|v| v.is_zero()) {
            break;
        }
        let jm: Mat = jac.iter().map(|r| r.iter().map(|p| p.eval(&x)).collect()).collect();
        let Some(inv) = linalg::inverse(&jm) else {
            break;
        };
        let step: Vec<Rational> = inv.iter().map(|r| r.iter().zip(&fx).map(|(a, b)| a * b).sum()).collect();
        let small = step.iter().all(|s| s.abs() < pow2(-(precision as i64) - 8));
        x = x
            .iter()
            .zip(&step)
            .map(|(a, s)| round_dyadic(&(a - s), wp))
            .collect();
        if small {
            break;
        }
    }

    if f.iter().all(|p| p.eval(&x).is_zero()) {
        let jm: Mat = jac.iter().map(|r| r.iter().map(|p| p.eval(&x)).collect()).collect();
        if linalg::inverse(&jm).is_some() {
            return Ok(SolutionBox::new(x.iter().map(|v| enclose(v, precision)).collect(), true));
        }
    }

    let target = pow2(-(precision as i64));
    let mut radius = pow2(-(precision as i64) - 4);
    for _ in 0..40 {
        let bx: Vec<MPInterval> = x
            .iter()
            .map(|c| MPInterval::from_rationals(&(c - &radius), &(c + &radius), wp))
            .collect();
        if let Some(b) = krawczyk_contract(&f, &jac, bx, &target, wp) {
            return Ok(SolutionBox::new(b, true));
        }
        radius *= rat_int(16);
    }
    let bx = x
        .iter()
        .map(|c| MPInterval::from_rationals(&(c - &target / rat_int(2)), &(c + &target / rat_int(2)), wp))
        .collect();
    Ok(SolutionBox::new(bx, false))
}

fn round_dyadic(q: &Rational, prec: u32) -> Rational {
    Dyadic::from_rational_floor(q, prec).to_rational()
}

/// Verifies `K(X) ⊂ int(X)` and then iterates `X <- K(X) ∩ X` to the target width.
fn krawczyk_contract(
    f: &[MultiPoly],
    jac: &[Vec<MultiPoly>],
    mut bx: Vec<MPInterval>,
    target: &Rational,
    wp: u32,
) -> Option<Vec<MPInterval>> {
    let mut verified = false;
    for _ in 0..100 {
        let k = krawczyk_image(f, jac, &bx, wp)?;
        if !verified {
            if !bx.iter().zip(&k).all(|(b, kk)| b.strictly_contains(kk)) {
                return None;
            }
            verified = true;
        }
        let next: Vec<MPInterval> = bx
            .iter()
            .zip(&k)
            .map(|(b, kk)| b.intersect(kk))
            .collect::<Option<_>>()?;
        let done = next.iter().all(|c| &c.width() <= target);
        let stalled = next.iter().zip(&bx).all(|(a, b)| a == b);
        bx = next;
        if done {
            return Some(bx);
        }
        if stalled {
            return None;
        }
    }
    None
}

fn krawczyk_image(f: &[MultiPoly], jac: &[Vec<MultiPoly>], bx: &[MPInterval], wp: u32) -> Option<Vec<MPInterval>> {
    let n = bx.len();
    let m: Vec<Rational> = bx.iter().map(|c| c.mid().to_rational()).collect();
    let jm: Mat = jac.iter().map(|r| r.iter().map(|p| p.eval(&m)).collect()).collect();
    let y = linalg::inverse(&jm)?;
    let y: Vec<Vec<MPInterval>> = y
        .iter()
        .map(|r| r.iter().map(|v| MPInterval::point(Dyadic::from_rational_floor(v, wp), wp)).collect())
        .collect();
    let fm: Vec<MPInterval> = f.iter().map(|p| MPInterval::from_rational(&p.eval(&m), wp)).collect();
    let jx: Vec<Vec<MPInterval>> = jac
        .iter()
        .map(|r| r.iter().map(|p| p.eval_interval(bx, wp)).collect())
        .collect();
    let zero = MPInterval::from_rational(&Rational::zero(), wp);
    let one = MPInterval::from_rational(&Rational::one(), wp);
    let mpt: Vec<MPInterval> = m.iter().map(|v| MPInterval::from_rational(v, wp)).collect();
    let dx: Vec<MPInterval> = bx.iter().zip(&mpt).map(|(b, c)| b.sub(c)).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // m_i - (Y f(m))_i + sum_j (I - Y J(X))_ij (X - m)_j
        let mut yf = zero.clone();
        for j in 0..n {
            yf = yf.add(&y[i][j].mul(&fm[j]));
        }
        let mut acc = mpt[i].sub(&yf);
        for j in 0..n {
            let mut yj = zero.clone();
            for l in 0..n {
                yj = yj.add(&y[i][l].mul(&jx[l][j]));
            }
            let e = if i == j { one.sub(&yj) } else { yj.neg() };
            acc = acc.add(&e.mul(&dx[j]));
        }
        out.push(acc);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{format_decimal, rat};
    use crate::text::parse_poly;

    fn sys(eqs: &[&str], vars: &[&str]) -> Vec<MultiPoly> {
        let v: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        eqs.iter().map(|e| parse_poly(e, &v).unwrap()).collect()
    }

    #[test]
    fn separating_forms() {
        let gb = buchberger(&sys(&["x^2 - 1", "y - x"], &["x", "y"]), MonomialOrder::DegRevLex);
        assert_eq!(separating_element(&gb).unwrap(), vec![rat_int(1), rat_int(0)]);
        let gb = buchberger(&sys(&["x^2 - 1", "y^2 - 1"], &["x", "y"]), MonomialOrder::DegRevLex);
        assert_eq!(compute_rur(&gb, &[rat_int(1), rat_int(0)]), Err(Error::NotSeparating));
        assert_eq!(separating_element(&gb).unwrap(), vec![rat_int(1), rat_int(2)]);
        let gb = buchberger(&sys(&["x - 1", "y - 2"], &["x", "y"]), MonomialOrder::DegRevLex);
        assert_eq!(separating_element(&gb).unwrap(), vec![rat_int(1), rat_int(0)]);
    }

    #[test]
    fn rur_examples() {
        let gb = buchberger(&sys(&["x^2 - 1", "y - x"], &["x", "y"]), MonomialOrder::DegRevLex);
        let r = compute_rur(&gb, &[rat_int(1), rat_int(0)]).unwrap();
        assert_eq!(r.f_t, UniPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(r.f_bar.derivative(), UniPoly::from_ints(&[0, 2]));
        assert_eq!(r.coords, vec![UniPoly::from_ints(&[2]), UniPoly::from_ints(&[2])]);
        let gb = buchberger(&sys(&["x - 1"], &["x"]), MonomialOrder::DegRevLex);
        let r = compute_rur(&gb, &[rat_int(1)]).unwrap();
        assert_eq!(r.f_t, UniPoly::from_ints(&[-1, 1]));
        assert_eq!(r.coords, vec![UniPoly::from_ints(&[1])]);
    }

    #[test]
    fn multiplicities_kept() {
        // (x-1)^2 and y - x: f_t has a double root
        let gb = buchberger(&sys(&["(x - 1)^2", "y - x"], &["x", "y"]), MonomialOrder::DegRevLex);
        let r = compute_rur(&gb, &separating_element(&gb).unwrap()).unwrap();
        assert_eq!(r.f_t.degree(), Some(2));
        assert_eq!(r.f_bar.degree(), Some(1));
        assert_eq!(r.point_at(&rat_int(1)), vec![rat_int(1), rat_int(1)]);
    }

    #[test]
    fn boxes() {
        let s = sys(&["x^2 - 1", "y - x"], &["x", "y"]);
        let (_, b) = solve(&s, 20).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b[0].coords[0].contains_rational(&rat_int(-1)));
        assert!(b[1].coords[1].contains_rational(&rat_int(1)));
        let s = sys(&["x^2 - 2", "y^2 - 3"], &["x", "y"]);
        let (r, b) = solve(&s, 30).unwrap();
        assert_eq!(r.f_t.degree(), Some(4));
        assert_eq!(b.len(), 4);
        for bx in &b {
            assert!(bx.certified);
            assert!(bx.max_width() <= pow2(-30));
            for p in &s {
                assert!(p.eval_interval(&bx.coords, 80).contains_zero());
            }
        }
        let rur = Rur {
            vars: vec!["x".into()],
            sep: vec![rat_int(1)],
            f_t: UniPoly::from_ints(&[1, 0, 1]),
            f_bar: UniPoly::from_ints(&[1, 0, 1]),
            coords: vec![UniPoly::from_ints(&[0, 2])],
        };
        assert!(isolate_system(&rur, 10).unwrap().is_empty());
        assert_eq!(solve(&sys(&["x*y - 1"], &["x", "y"]), 10).unwrap_err(), Error::NotZeroDimensional);
        assert!(solve(&sys(&["x", "x + 1"], &["x"]), 10).unwrap().1.is_empty());
    }

    #[test]
    fn newton_sqrt2() {
        let s = sys(&["x^2 - 2"], &["x"]);
        let b = interval_newton(&s, &[rat(14, 10)], 40).unwrap();
        assert!(b.certified);
        assert!(b.max_width() <= pow2(-40));
        let lo = b.coords[0].lo().to_rational();
        assert_eq!(format_decimal(&lo, 11, false), "1.4142135623");
        let b = interval_newton(&sys(&["x - 1"], &["x"]), &[rat_int(1)], 10).unwrap();
        assert!(b.certified && b.coords[0].is_point());
        let s = sys(&["x^2 + y^2 - 4", "x*y - 1"], &["x", "y"]);
        let b = interval_newton(&s, &[rat(19, 10), rat(5, 10)], 60).unwrap();
        assert!(b.certified);
        for p in &s {
            assert!(p.eval_interval(&b.coords, 120).contains_zero());
        }
    }
}
