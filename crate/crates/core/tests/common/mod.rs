//! Independent oracles and fixtures shared by the integration tests and the
//! acceptance harness. Every check returns `Err(msg)` on the first mismatch.
#![allow(dead_code)]

use certipoly::groebner::buchberger_in;
use certipoly::{
    discriminant_variety, interval_newton, iv_arith, parse_poly, rat, rat_int, solve, sturm_habicht_sequence,
    subresultant_sequence, tarski_query, ArithOp, GroebnerBasis, MPInterval, MonomialOrder, MultiPoly, RationalMatrix,
    Rational, Specialization, UniPoly,
};
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

pub fn vs(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

pub fn poly(s: &str, vars: &[&str]) -> MultiPoly {
    parse_poly(s, &vs(vars)).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rational(r: &mut ChaCha8Rng) -> Rational {
    rat(r.gen_range(-40..=40), r.gen_range(1..=12))
}

// ---------------------------------------------------------------------------
// Interval containment

/// Random interval operations; the exact result at random points of the
/// operands must land inside the computed interval.
pub fn interval_fuzz(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..cases {
        let prec = r.gen_range(2..=80u32);
        let operand = |r: &mut ChaCha8Rng| {
            let a = small_rational(r);
            let b = small_rational(r);
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let t = rat(r.gen_range(0..=16), 16);
            let x = &lo + &(&(&hi - &lo) * &t);
            (MPInterval::from_rationals(&lo, &hi, prec), x)
        };
        let (ia, xa) = operand(&mut r);
        let (ib, xb) = operand(&mut r);
        let op = r.gen_range(0..6);
        let (got, exact) = match op {
            0 => (iv_arith(&ia, &ib, ArithOp::Add), &xa + &xb),
            1 => (iv_arith(&ia, &ib, ArithOp::Sub), &xa - &xb),
            2 => (iv_arith(&ia, &ib, ArithOp::Mul), &xa * &xb),
            3 => {
                if ib.contains_zero() {
                    if iv_arith(&ia, &ib, ArithOp::Div).is_ok() {
                        return Err(format!("case {case}: division by an interval containing zero succeeded"));
                    }
                    continue;
                }
                (iv_arith(&ia, &ib, ArithOp::Div), &xa / &xb)
            }
            4 => (Ok(ia.sqr()), &xa * &xa),
            _ => {
                let n = r.gen_range(0..=5u32);
                let mut e = Rational::one();
                for _ in 0..n {
                    e *= &xa;
                }
                (Ok(ia.powi(n)), e)
            }
        };
        let got = got.map_err(|e| format!("case {case}: {e}"))?;
        if !got.contains_rational(&exact) {
            return Err(format!("case {case}: op {op} result {got:?} misses {exact}"));
        }
        if got.lo() > got.hi() {
            return Err(format!("case {case}: inverted interval"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Univariate roots: Sturm bisection oracle

/// Degree <= 8 integer polynomials; every other one is built from planted
/// rational roots (with repeats) so multiple and exact roots are exercised.
pub fn random_polys(seed: u64, count: usize) -> Vec<UniPoly> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = if out.len() % 2 == 0 {
            let deg = r.gen_range(1..=8usize);
            let mut c: Vec<i64> = (0..=deg).map(|_| r.gen_range(-10..=10)).collect();
            if c[deg] == 0 {
                c[deg] = 1;
            }
            UniPoly::from_ints(&c)
        } else {
            let mut p = UniPoly::constant(rat_int(r.gen_range(1..=3)));
            let roots = r.gen_range(1..=6usize);
            for _ in 0..roots {
                let root = rat(r.gen_range(-8..=8), r.gen_range(1..=3));
                let times = if r.gen_bool(0.25) { 2 } else { 1 };
                for _ in 0..times {
                    if p.degree().unwrap() < 8 {
                        p = &p * &UniPoly::from_coeffs(vec![-root.clone(), Rational::one()]);
                    }
                }
            }
            if p.degree().unwrap() <= 6 && r.gen_bool(0.5) {
                p = &p * &UniPoly::from_ints(&[r.gen_range(1..=5), 0, 1]);
            }
            p
        };
        if p.degree().unwrap_or(0) >= 1 {
            out.push(p);
        }
    }
    out
}

fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn variations(chain: &[UniPoly], x: &Rational) -> i64 {
    let signs: Vec<i32> = chain.iter().map(|q| q.sign_at(x)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count() as i64
}

/// Real roots in `(a, b]`.
fn sturm_count(chain: &[UniPoly], a: &Rational, b: &Rational) -> i64 {
    variations(chain, a) - variations(chain, b)
}

fn squarefree(p: &UniPoly) -> UniPoly {
    let g = p.gcd(&p.derivative());
    p.div_exact(&g).unwrap()
}

/// Half-open intervals `(a, b]` of width <= 2^-20, one per distinct real root,
/// found by bisection on Sturm counts.
pub fn sturm_roots(p: &UniPoly) -> Vec<(Rational, Rational)> {
    let q = squarefree(p);
    let chain = sturm_chain(&q);
    let lc = q.lc().abs();
    let bound = q.coeffs().iter().map(|c| c.abs() / &lc).fold(Rational::zero(), |m, c| m.max(c)) + Rational::one();
    let tol = rat(1, 1 << 20);
    let mut todo = vec![(-bound.clone(), bound)];
    let mut out = Vec::new();
    while let Some((a, b)) = todo.pop() {
        let n = sturm_count(&chain, &a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 && &b - &a <= tol {
            out.push((a, b));
            continue;
        }
        let m = (&a + &b) / rat_int(2);
        todo.push((a, m.clone()));
        todo.push((m, b));
    }
    out.sort();
    out
}

/// Isolation agrees with the Sturm oracle: same count, each returned interval
/// holds exactly one root, and the k-th intervals overlap.
pub fn isolation_matches_oracle(p: &UniPoly) -> Check {
    let got = p.isolate_real_roots().map_err(|e| e.to_string())?;
    let want = sturm_roots(p);
    if got.len() != want.len() {
        return Err(format!("{}: isolated {} roots, oracle {}", p.to_string_with("x"), got.len(), want.len()));
    }
    let q = squarefree(p);
    let chain = sturm_chain(&q);
    for (iv, (a, b)) in got.iter().zip(&want) {
        if iv.lo == iv.hi {
            if !q.eval(&iv.lo).is_zero() {
                return Err(format!("point {} is not a root", iv.lo));
            }
        } else {
            if q.eval(&iv.lo).is_zero() || q.eval(&iv.hi).is_zero() {
                return Err(format!("root on the boundary of ({}, {})", iv.lo, iv.hi));
            }
            if sturm_count(&chain, &iv.lo, &iv.hi) != 1 {
                return Err(format!("({}, {}) does not isolate one root", iv.lo, iv.hi));
            }
        }
        if iv.hi < *a || iv.lo > *b {
            return Err(format!("({}, {}) misses oracle root in ({a}, {b}]", iv.lo, iv.hi));
        }
    }
    Ok(())
}

pub fn sturm_habicht_count_matches(p: &UniPoly) -> Check {
    let x = vs(&["x"]);
    let mp = MultiPoly::from_unipoly(p, "x", &x);
    let seq = sturm_habicht_sequence(&mp, &MultiPoly::one(&x), "x").map_err(|e| e.to_string())?;
    let count = tarski_query(&seq, &Specialization::new()).map_err(|e| e.to_string())?;
    let isolated = p.isolate_real_roots().map_err(|e| e.to_string())?.len() as i64;
    if count != isolated {
        return Err(format!("{}: Sturm-Habicht {count}, isolation {isolated}", p.to_string_with("x")));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Subresultants

fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if piv != c {
            m.swap(piv, c);
            d = -d;
        }
        d *= &m[c][c];
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let v = &m[c][k] * &f;
                m[r][k] -= v;
            }
        }
    }
    d
}

/// Principal subresultant coefficient `j` of `(p, q)` from the Sylvester
/// submatrix on the top `deg p + deg q - 2j` columns.
pub fn sylvester_psc(p: &UniPoly, q: &UniPoly, j: usize) -> Rational {
    let (dp, dq) = (p.degree().unwrap(), q.degree().unwrap());
    let top = dp + dq - j - 1;
    let size = dp + dq - 2 * j;
    let row = |f: &UniPoly, shift: usize| -> Vec<Rational> {
        (0..size)
            .map(|c| {
                let e = top - c;
                if e >= shift {
                    f.coeff(e - shift)
                } else {
                    Rational::zero()
                }
            })
            .collect()
    };
    let mut m = Vec::with_capacity(size);
    for k in 0..dq - j {
        m.push(row(p, dq - j - 1 - k));
    }
    for k in 0..dp - j {
        m.push(row(q, dp - j - 1 - k));
    }
    det(m)
}

fn random_param_poly(r: &mut ChaCha8Rng, deg_x: usize, vars: &[String]) -> MultiPoly {
    let mut terms = Vec::new();
    for i in 0..=deg_x {
        for k in 0..=2u32 {
            let c: i64 = r.gen_range(-4..=4);
            if c != 0 || (i == deg_x && k == 0) {
                terms.push((vec![i as u32, k], rat_int(if c == 0 { 1 } else { c })));
            }
        }
    }
    MultiPoly::from_terms(vars, terms)
}

/// Random pairs in `Q[u][x]`; at random `u = a` keeping both leading
/// coefficients alive, the generic sequence specializes to the sequence of
/// the specialized pair and matches the Sylvester determinants.
pub fn subresultant_specialization(seed: u64, pairs: usize, points: usize) -> Check {
    let mut r = rng(seed);
    let vars = vs(&["x", "u"]);
    for pair in 0..pairs {
        let dp = r.gen_range(2..=4usize);
        let dq = r.gen_range(1..=dp);
        let p = random_param_poly(&mut r, dp, &vars);
        let q = random_param_poly(&mut r, dq, &vars);
        let seq = subresultant_sequence(&p, &q, "x").map_err(|e| e.to_string())?;
        let psc = seq.principal_coefficients();
        let mut done = 0;
        while done < points {
            let a = small_rational(&mut r);
            let sp: Specialization = [("u".to_string(), a.clone())].into_iter().collect();
            let (ps, qs) = (p.specialize(&sp), q.specialize(&sp));
            if ps.degree_in(0) as usize != dp || qs.degree_in(0) as usize != dq {
                continue;
            }
            done += 1;
            let direct = subresultant_sequence(&ps, &qs, "x").map_err(|e| e.to_string())?;
            let (pu, qu) = (ps.to_unipoly_in(0), qs.to_unipoly_in(0));
            for j in 0..dq {
                if seq.entries[j].specialize(&sp) != direct.entries[j] {
                    return Err(format!("pair {pair}, u = {a}: Sres_{j} does not specialize"));
                }
                let oracle = sylvester_psc(&pu, &qu, j);
                let got = psc[j].specialize(&sp).constant_value().unwrap();
                if got != oracle {
                    return Err(format!("pair {pair}, u = {a}: psc_{j} = {got}, Sylvester {oracle}"));
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Gröbner bases and zero-dimensional solving

pub struct Fixture {
    pub name: &'static str,
    pub vars: &'static [&'static str],
    pub polys: &'static [&'static str],
}

pub const FIXTURES: &[Fixture] = &[
    Fixture { name: "circle-line", vars: &["x", "y"], polys: &["x^2 + y^2 - 1", "x - y"] },
    Fixture { name: "sqrt2-sqrt3", vars: &["x", "y"], polys: &["x^2 - 2", "y^2 - 3"] },
    Fixture { name: "hyperbola-parabola", vars: &["x", "y"], polys: &["x*y - 1", "y^2 - x"] },
    Fixture { name: "cox", vars: &["x", "y"], polys: &["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"] },
    Fixture { name: "cyclic3", vars: &["x", "y", "z"], polys: &["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"] },
    Fixture {
        name: "three-quadrics",
        vars: &["x", "y", "z"],
        polys: &["x^2 + y + z - 1", "x + y^2 + z - 1", "x + y + z^2 - 1"],
    },
    Fixture {
        name: "identification",
        vars: &["mu", "x0", "x1"],
        polys: &["x0^2 + x0 - 2", "2*x0*x1 + x1 - 3/4", "x1 - mu^2*x0"],
    },
    Fixture { name: "double-root", vars: &["x", "y"], polys: &["x^2", "y - x - 1"] },
    Fixture { name: "inconsistent", vars: &["x"], polys: &["x", "x + 1"] },
];

impl Fixture {
    pub fn system(&self) -> Vec<MultiPoly> {
        self.polys.iter().map(|s| poly(s, self.vars)).collect()
    }
}

fn lead(gb: &GroebnerBasis, p: &MultiPoly) -> (Vec<u32>, Rational) {
    let m = gb.leading_monomial(p).unwrap();
    let c = p.terms().find(|(e, _)| **e == m).unwrap().1.clone();
    (m, c)
}

fn s_poly(gb: &GroebnerBasis, f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (mf, cf) = lead(gb, f);
    let (mg, cg) = lead(gb, g);
    let l: Vec<u32> = mf.iter().zip(&mg).map(|(a, b)| *a.max(b)).collect();
    let vars = gb.vars();
    let shift = |m: &[u32], c: &Rational| {
        let e: Vec<u32> = l.iter().zip(m).map(|(a, b)| a - b).collect();
        MultiPoly::from_terms(vars, [(e, c.recip())])
    };
    &(&shift(&mf, &cf) * f) - &(&shift(&mg, &cg) * g)
}

/// Every S-polynomial reduces to zero and every input reduces to zero.
pub fn groebner_checks(fx: &Fixture, order: MonomialOrder) -> Check {
    let sys = fx.system();
    let gb = buchberger_in(&sys, &vs(fx.vars), order);
    let g = gb.generators();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let s = s_poly(&gb, &g[i], &g[j]);
            if !gb.normal_form(&s).is_zero() {
                return Err(format!("{} {order:?}: S({i}, {j}) does not reduce to zero", fx.name));
            }
        }
    }
    for f in &sys {
        if !gb.normal_form(f).is_zero() {
            return Err(format!("{} {order:?}: input {f} not in the ideal", fx.name));
        }
    }
    Ok(())
}

/// Each box of each fixture makes every input polynomial's interval value
/// contain zero.
pub fn rur_residuals(fx: &Fixture, prec: u32) -> Check {
    let sys = fx.system();
    let (rur, boxes) = solve(&sys, prec).map_err(|e| format!("{}: {e}", fx.name))?;
    for b in &boxes {
        for f in &sys {
            let v = f.with_vars(&rur.vars).eval_interval(&b.coords, prec + 16);
            if !v.contains_zero() {
                return Err(format!("{}: residual {v:?} of {f} excludes zero", fx.name));
            }
        }
    }
    Ok(())
}

pub fn dv_of_square_plus_u() -> Check {
    let dv = discriminant_variety(&[poly("x^2 + u", &["x", "u"])], &vs(&["x"]), &vs(&["u"]))
        .map_err(|e| e.to_string())?;
    let want = vec![poly("u", &["u"])];
    if dv.polys != want {
        return Err(format!("DV = {:?}", dv.polys.iter().map(|p| p.to_text()).collect::<Vec<_>>()));
    }
    Ok(())
}

pub fn newton_sqrt2() -> Check {
    let b = interval_newton(&[poly("x^2 - 2", &["x"])], &[rat(3, 2)], 40).map_err(|e| e.to_string())?;
    if !b.certified {
        return Err("box not certified".into());
    }
    let iv = &b.coords[0];
    if iv.width() > rat(1, 1 << 40) {
        return Err(format!("width {} above 2^-40", iv.width()));
    }
    let (lo, hi) = (iv.lo().to_rational(), iv.hi().to_rational());
    if &lo * &lo > rat_int(2) || &hi * &hi < rat_int(2) {
        return Err("box misses sqrt 2".into());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Numeric oracles for the control pipelines

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap()
}

fn eval_complex(p: &UniPoly, s: Complex64) -> Complex64 {
    p.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * s + to_f64(c))
}

/// Largest singular value of `G(iω)` via power iteration on `GᴴG`.
pub fn sigma_max(g: &RationalMatrix, w: f64) -> f64 {
    let s = Complex64::new(0.0, w);
    let (m, n) = (g.rows(), g.cols());
    let a: Vec<Vec<Complex64>> = (0..m)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (num, den) = g.entry(i, j);
                    eval_complex(num, s) / eval_complex(den, s)
                })
                .collect()
        })
        .collect();
    let mut h = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (i, hi) in h.iter_mut().enumerate() {
        for (j, hij) in hi.iter_mut().enumerate() {
            *hij = (0..m).map(|k| a[k][i].conj() * a[k][j]).sum();
        }
    }
    let mut v: Vec<Complex64> = (0..n).map(|i| Complex64::new(1.0 + i as f64 * 0.1, 0.3)).collect();
    let mut lambda = 0.0;
    for _ in 0..500 {
        let next: Vec<Complex64> = (0..n).map(|i| (0..n).map(|j| h[i][j] * v[j]).sum()).collect();
        let norm = next.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        let vn = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let l = norm / vn;
        v = next.into_iter().map(|z| z / norm).collect();
        if (l - lambda).abs() <= 1e-15 * l {
            lambda = l;
            break;
        }
        lambda = l;
    }
    lambda.sqrt()
}

/// Max of σ_max over `points` log-spaced frequencies in [1e-4, 1e4], plus ω = 0.
pub fn hinf_grid(g: &RationalMatrix, points: usize) -> f64 {
    let mut best = sigma_max(g, 0.0);
    for k in 0..points {
        let e = -4.0 + 8.0 * k as f64 / (points - 1) as f64;
        best = best.max(sigma_max(g, 10f64.powf(e)));
    }
    best
}

/// Signed distance from the unit circle of the z2-roots of `D(z1, .)`,
/// minimized over a polar grid of the closed unit disk in z1. Positive means
/// every sampled root lies outside; `D` must have degree 1 or 2 in z2.
pub fn bidisk_margin(d: &MultiPoly, grid: usize) -> f64 {
    let terms: Vec<(Vec<u32>, f64)> = d.terms().map(|(e, c)| (e.clone(), to_f64(c))).collect();
    let coeff = |z1: Complex64, k: u32| -> Complex64 {
        terms.iter().filter(|(e, _)| e[1] == k).map(|(e, c)| z1.powu(e[0]) * c).sum()
    };
    let mut best = f64::INFINITY;
    for ri in 0..=grid {
        let r = ri as f64 / grid as f64;
        let spokes = if ri == 0 { 1 } else { 4 * grid };
        for a in 0..spokes {
            let z1 = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * a as f64 / spokes as f64);
            let (c0, c1, c2) = (coeff(z1, 0), coeff(z1, 1), coeff(z1, 2));
            let roots: Vec<Complex64> = if c2.norm() > 1e-12 {
                let disc = (c1 * c1 - c0 * c2 * 4.0).sqrt();
                vec![(-c1 + disc) / (c2 * 2.0), (-c1 - disc) / (c2 * 2.0)]
            } else if c1.norm() > 1e-12 {
                vec![-c0 / c1]
            } else {
                vec![]
            };
            for z2 in roots {
                best = best.min(z2.norm() - 1.0);
            }
        }
    }
    best
}
