//! Dense univariate polynomials over Q with certified real-root isolation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{pow2, rat_int, simplest_between, Dyadic, MPInterval, Rational};
use crate::error::{Error, Result};
use crate::prs::{self, pmv, rational_sign};

/// `sum coeffs[i] * X^i`; the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    /// The monomial `X^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        UniPoly { coeffs: c }
    }

    pub fn x() -> Self {
        UniPoly::monomial(1)
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        UniPoly {
            coeffs: prs::trim(coeffs),
        }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UniPoly::from_coeffs(c.iter().map(|&v| rat_int(v)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> i32 {
        rational_sign(&self.eval(x))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use crate::arith::rational_to_f64;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + rational_to_f64(c))
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let ints = self.integer_coeffs();
        UniPoly::from_coeffs(ints.into_iter().map(Rational::from_integer).collect())
    }

    /// Coefficients of the primitive integer multiple (positive leading coefficient).
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let den_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den_lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let neg = ints.last().unwrap().is_negative();
        for c in ints.iter_mut() {
            *c = &*c / &g;
            if neg {
                *c = -&*c;
            }
        }
        ints
    }

    /// Euclidean division over Q. Panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let Some(dr) = self.degree() else {
            return (UniPoly::zero(), UniPoly::zero());
        };
        if dr < dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); dr - dd + 1];
        let inv = d.lc().recip();
        for k in (0..=dr - dd).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::from_coeffs(q), UniPoly::from_coeffs(r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g` and `g` monic.
    pub fn ext_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `self` modulo `m`, if they are coprime.
    pub fn inverse_mod(&self, m: &UniPoly) -> Option<UniPoly> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        (g.degree() == Some(0)).then(|| s.rem(m))
    }

    pub fn pow(&self, n: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `self(q(X))`.
    pub fn compose(&self, q: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// `P / gcd(P, P')`, made primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> Result<UniPoly> {
        if self.is_zero() {
            return Err(Error::invalid("square-free part of the zero polynomial"));
        }
        if self.is_constant() {
            return Ok(UniPoly::one());
        }
        let g = self.gcd(&self.derivative());
        let q = self.div_exact(&g).expect("gcd divides its argument");
        Ok(q.primitive())
    }

    /// Yun's decomposition: pairs `(f_i, i)` with `P = c * prod f_i^i`, the
    /// `f_i` primitive, square-free, pairwise coprime and nonconstant.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(UniPoly, usize)>> {
        if self.is_zero() {
            return Err(Error::invalid("square-free decomposition of the zero polynomial"));
        }
        let mut out = Vec::new();
        if self.is_constant() {
            return Ok(out);
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).unwrap();
        let c = df.div_exact(&a0).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            let nb = b.div_exact(&a).unwrap();
            let nc = d.div_exact(&a).unwrap();
            d = &nc - &nb.derivative();
            if !a.is_constant() {
                out.push((a.primitive(), i));
            }
            b = nb;
            i += 1;
        }
        Ok(out)
    }

    /// Number of distinct real roots from the sign variations of the
    /// Sturm-Habicht principal coefficients of `(P, 1)`.
    pub fn count_real_roots(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::invalid("root count of the zero polynomial"));
        }
        let q = tarski_query(self, &UniPoly::one())?;
        Ok(q as usize)
    }

    /// Real roots of `self`: sorted, pairwise disjoint isolating intervals
    /// with multiplicities. Rational roots come back as point intervals.
    pub fn isolate_real_roots(&self) -> Result<Vec<IsolatingInterval>> {
        if self.is_zero() {
            return Err(Error::invalid("root isolation of the zero polynomial"));
        }
        if self.is_constant() {
            return Ok(Vec::new());
        }
        let factors = self.squarefree_decomposition()?;
        let witness = Arc::new(self.squarefree_part()?);
        let raw = isolate_squarefree(&witness);
        let mut out = Vec::with_capacity(raw.len());
        for (lo, hi) in raw {
            let multiplicity = if lo == hi {
                factors
                    .iter()
                    .find(|(f, _)| f.eval(&lo).is_zero())
                    .map(|(_, m)| *m)
                    .unwrap_or(1)
            } else {
                factors
                    .iter()
                    .find(|(f, _)| f.sign_at(&lo) * f.sign_at(&hi) < 0)
                    .map(|(_, m)| *m)
                    .unwrap_or(1)
            };
            let iv = IsolatingInterval {
                lo,
                hi,
                poly: witness.clone(),
                multiplicity,
            };
            out.push(detect_rational_root(iv));
        }
        Ok(out)
    }

    /// Renders with the given variable name, highest degree first.
    pub fn to_string_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            crate::text::push_term(&mut s, c, &mono);
        }
        s
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with("x"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(c)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, o: UniPoly) -> UniPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `#{x : P(x) = 0, Q(x) > 0} - #{x : P(x) = 0, Q(x) < 0}` over the reals,
/// via the signed subresultants of `P` and `Rem(P'Q, P)`.
pub fn tarski_query(p: &UniPoly, q: &UniPoly) -> Result<i64> {
    let Some(d) = p.degree() else {
        return Err(Error::invalid("Tarski query with P = 0"));
    };
    if d == 0 {
        return Ok(0);
    }
    let r = (&p.derivative() * q).rem(p);
    let (_, principal) = prs::signed_subresultants(p.coeffs(), r.coeffs());
    let signs: Vec<i32> = principal.iter().rev().map(rational_sign).collect();
    Ok(pmv(&signs))
}

/// A rational interval holding exactly one real root of the square-free
/// witness `poly`. When `lo == hi` the root is exactly that rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub poly: Arc<UniPoly>,
    pub multiplicity: usize,
}

impl IsolatingInterval {
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rat_int(2)
    }

    /// Enclosure of the root as a multi-precision interval.
    pub fn to_interval(&self, prec: u32) -> MPInterval {
        MPInterval::from_rationals(&self.lo, &self.hi, prec)
    }

    pub fn to_f64(&self) -> f64 {
        crate::arith::rational_to_f64(&self.midpoint())
    }

    /// Narrows the interval until its width is at most `target_width`.
    pub fn refine(&self, target_width: &Rational) -> IsolatingInterval {
        refine_root(self, target_width)
    }

    /// Halves-until-done bisection only; keeps endpoints on the dyadic grid
    /// generated by the current endpoints.
    pub fn refine_bisect(&self, target_width: &Rational) -> IsolatingInterval {
        let mut cur = self.clone();
        while !cur.is_point() && &cur.width() > target_width {
            cur = bisect_once(&cur);
        }
        cur
    }

    /// Smallest interval `[m/2^k, (m+1)/2^k]` containing the root (a point
    /// interval if the root is exactly on the grid or rational).
    pub fn dyadic_cell(&self, k: u32) -> (Rational, Rational) {
        if self.is_point() {
            return (self.lo.clone(), self.lo.clone());
        }
        let scale = pow2(k as i64);
        let step = pow2(-(k as i64));
        let mut cur = self.clone();
        loop {
            if cur.is_point() {
                return (cur.lo.clone(), cur.lo.clone());
            }
            let a = crate::arith::floor_int(&(&cur.lo * &scale));
            let b = crate::arith::ceil_int(&(&cur.hi * &scale));
            if &b - &a <= BigInt::one() {
                let lo = Rational::from_integer(a) * &step;
                return (lo.clone(), lo + &step);
            }
            if &b - &a == BigInt::from(2) {
                // One grid point strictly inside: decide the side exactly.
                let g = Rational::from_integer(&a + 1) * &step;
                let s = cur.poly.sign_at(&g);
                if s == 0 {
                    return (g.clone(), g);
                }
                if s == cur.poly.sign_at(&cur.lo) {
                    return (g.clone(), g + &step);
                }
                return (&g - &step, g);
            }
            cur = bisect_once(&cur);
        }
    }
}

fn bisect_once(iv: &IsolatingInterval) -> IsolatingInterval {
    let m = iv.midpoint();
    let s = iv.poly.sign_at(&m);
    let mut out = iv.clone();
    if s == 0 {
        out.lo = m.clone();
        out.hi = m;
    } else if s == iv.poly.sign_at(&iv.lo) {
        out.lo = m;
    } else {
        out.hi = m;
    }
    out
}

/// Bisection with exact signs, accelerated by interval-Newton steps whenever
/// the derivative enclosure excludes zero.
pub fn refine_root(iv: &IsolatingInterval, target_width: &Rational) -> IsolatingInterval {
    let mut cur = iv.clone();
    if cur.is_point() {
        return cur;
    }
    let dp = cur.poly.derivative();
    while !cur.is_point() && &cur.width() > target_width {
        let width = cur.width();
        if let Some(next) = newton_step(&cur, &dp) {
            if next.is_point() || next.width() * rat_int(2) <= width {
                cur = next;
                continue;
            }
        }
        cur = bisect_once(&cur);
    }
    cur
}

fn newton_step(iv: &IsolatingInterval, dp: &UniPoly) -> Option<IsolatingInterval> {
    let p = &iv.poly;
    let width = iv.width();
    let wbits = (width.denom().bits() as i64 - width.numer().bits() as i64).max(0) as u32;
    let mag = iv.lo.abs().max(iv.hi.abs());
    let mbits = (mag.numer().bits() as i64 - mag.denom().bits() as i64).max(0) as u32;
    let prec = 2 * wbits + mbits + 64;
    let x = MPInterval::from_rationals(&iv.lo, &iv.hi, prec);
    let dx = crate::arith::iv_eval_poly(dp, &x);
    if dx.contains_zero() {
        return None;
    }
    let m = Dyadic::from_rational_floor(&iv.midpoint(), prec);
    let mq = m.to_rational();
    let fm = MPInterval::from_rational(&p.eval(&mq), prec);
    let n = MPInterval::point(m, prec).sub(&fm.div(&dx).ok()?);
    let (nlo, nhi) = (n.lo().to_rational(), n.hi().to_rational());
    let lo = nlo.max(iv.lo.clone());
    let hi = nhi.min(iv.hi.clone());
    if lo > hi {
        return None;
    }
    let slo = p.sign_at(&lo);
    let shi = p.sign_at(&hi);
    let mut out = iv.clone();
    if slo == 0 {
        out.lo = lo.clone();
        out.hi = lo;
        return Some(out);
    }
    if shi == 0 {
        out.lo = hi.clone();
        out.hi = hi;
        return Some(out);
    }
    if slo * shi > 0 {
        return None;
    }
    out.lo = lo;
    out.hi = hi;
    Some(out)
}

/// Replaces the interval by a point when the root is rational. A rational
/// root of a primitive integer polynomial has a denominator dividing the
/// leading coefficient `a`, so once the width is below `1/a^2` it is the
/// simplest rational in the interval.
fn detect_rational_root(iv: IsolatingInterval) -> IsolatingInterval {
    if iv.is_point() {
        return iv;
    }
    let lc = iv.poly.integer_coeffs().last().cloned().unwrap_or_else(BigInt::one);
    let bound = Rational::new(BigInt::one(), &lc * &lc * 2);
    let narrow = refine_root(&iv, &bound);
    if narrow.is_point() {
        return narrow;
    }
    let cand = simplest_between(&narrow.lo, &narrow.hi);
    if iv.poly.eval(&cand).is_zero() {
        let mut out = iv;
        out.lo = cand.clone();
        out.hi = cand;
        return out;
    }
    iv
}

/// Descartes / bisection isolation of the real roots of a square-free
/// polynomial. Returns sorted pairs `(lo, hi)`: open intervals with a sign
/// change, or `lo == hi` for roots hit exactly by a bisection point.
fn isolate_squarefree(p: &UniPoly) -> Vec<(Rational, Rational)> {
    let coeffs = p.integer_coeffs();
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    // Cauchy bound rounded up to a power of two.
    let lc = coeffs[n].abs();
    let mut max_ratio = Rational::zero();
    for c in &coeffs[..n] {
        let r = Rational::new(c.abs(), lc.clone());
        if r > max_ratio {
            max_ratio = r;
        }
    }
    let bound = max_ratio + Rational::one();
    let mut k: i64 = 0;
    while pow2(k) <= bound {
        k += 1;
    }
    let big_b = pow2(k);

    // q(y) = P(-B + 2B y) on (0, 1).
    let shifted = scale_var(&taylor_shift(&coeffs, &-(BigInt::one() << k as usize)), k + 1);
    let mut out: Vec<(Rational, Rational)> = Vec::new();
    let mut stack: Vec<(Vec<BigInt>, Rational, Rational)> = vec![(shifted, -big_b.clone(), big_b)];
    while let Some((q, lo, hi)) = stack.pop() {
        match descartes_bound(&q) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / rat_int(2);
                // left half: 2^n q(y/2)
                let left: Vec<BigInt> = q
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c << (n - i))
                    .collect();
                let at_mid: BigInt = left.iter().sum();
                if at_mid.is_zero() {
                    out.push((mid.clone(), mid.clone()));
                }
                let right = taylor_shift(&left, &BigInt::one());
                stack.push((right, mid.clone(), hi));
                stack.push((left, lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(lo, hi)| clear_endpoint_roots(p, lo, hi)).collect()
}

/// An open interval found next to an exact midpoint root can have that root
/// as an endpoint. Bisects until neither endpoint is a root, using the sign
/// of `p'` as the one-sided sign of `p` at a simple root.
fn clear_endpoint_roots(p: &UniPoly, mut lo: Rational, mut hi: Rational) -> (Rational, Rational) {
    if lo == hi {
        return (lo, hi);
    }
    let dp = p.derivative();
    loop {
        let slo = p.sign_at(&lo);
        let shi = p.sign_at(&hi);
        if slo != 0 && shi != 0 {
            return (lo, hi);
        }
        let left_sign = if slo != 0 { slo } else { dp.sign_at(&lo) };
        let m = (&lo + &hi) / rat_int(2);
        let sm = p.sign_at(&m);
        if sm == 0 {
            return (m.clone(), m);
        }
        if sm == left_sign {
            lo = m;
        } else {
            hi = m;
        }
    }
}

/// Coefficients of `P(2^k * y)`.
fn scale_var(c: &[BigInt], k: i64) -> Vec<BigInt> {
    c.iter()
        .enumerate()
        .map(|(i, a)| a << (i as i64 * k) as usize)
        .collect()
}

/// Coefficients of `P(y + s)`.
fn taylor_shift(c: &[BigInt], s: &BigInt) -> Vec<BigInt> {
    let mut a = c.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = &a[j + 1] * s;
            a[j] += t;
        }
    }
    a
}

/// Sign variations of `(y+1)^n q(1/(y+1))`: an upper bound, with the right
/// parity, on the number of roots of `q` in `(0, 1)`.
fn descartes_bound(q: &[BigInt]) -> usize {
    let rev: Vec<BigInt> = q.iter().rev().cloned().collect();
    let t = taylor_shift(&rev, &BigInt::one());
    let mut count = 0;
    let mut last = 0i32;
    for c in &t {
        let s = if c.is_positive() {
            1
        } else if c.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}
