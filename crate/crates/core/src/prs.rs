//! Subresultant chains over an integral domain.
//!
//! Polynomials are dense coefficient slices (index = degree) over any
//! [`Coeff`] ring that supports exact division. The same code serves the
//! univariate case (coefficients in Q) and the parametric case (coefficients
//! in Q[U1..Ul]).

use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

/// Integral-domain element with exact division.
pub trait Coeff: Clone + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// `self / o`, which must be exact.
    fn exact_div(&self, o: &Self) -> Self;

    fn pow_u(&self, n: usize) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

impl Coeff for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Self {
        self / o
    }
}

pub(crate) fn trim<C: Coeff>(mut v: Vec<C>) -> Vec<C> {
    while v.last().is_some_and(|c| c.is_zero_elem()) {
        v.pop();
    }
    v
}

pub(crate) fn degree<C: Coeff>(a: &[C]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero_elem())
}

fn scale<C: Coeff>(a: &[C], c: &C) -> Vec<C> {
    a.iter().map(|x| x.mul_ref(c)).collect()
}

fn div_scalar<C: Coeff>(a: &[C], c: &C) -> Vec<C> {
    a.iter().map(|x| if x.is_zero_elem() { x.clone() } else { x.exact_div(c) }).collect()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
pub(crate) fn prem<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    let db = degree(b).expect("pseudo-remainder by zero");
    let mut r = trim(a.to_vec());
    let Some(da) = degree(&r) else {
        return r;
    };
    if da < db {
        return r;
    }
    let lb = b[db].clone();
    let mut e = da - db + 1;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let t = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<C> = r.iter().map(|x| x.mul_ref(&lb)).collect();
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            next[i + shift] = next[i + shift].sub_ref(&t.mul_ref(bc));
        }
        next.truncate(dr);
        r = trim(next);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow_u(e);
        r = scale(&r, &f);
    }
    r
}

/// Subresultants `S_0 .. S_q` of `a` (degree p) and `b` (degree q <= p), in
/// the Sylvester-matrix convention so that `S_0` is the textbook resultant.
///
/// Entry `j` is a coefficient vector of length `j + 1` (all zero when the
/// subresultant vanishes). For `p > q`, `S_q = lc(b)^(p-q-1) * b`; for
/// `p = q` entry `q` holds `b` unscaled and carries no determinantal meaning.
///
/// Computed with the Brown–Collins subresultant PRS plus Lazard's formula
/// for the lower ends of defective blocks; no fraction-field arithmetic.
pub(crate) fn subresultants<C: Coeff>(a: &[C], b: &[C]) -> Vec<Vec<C>> {
    let p = degree(a).expect("first polynomial must be nonzero");
    let q = degree(b).expect("second polynomial must be nonzero");
    assert!(p >= q, "subresultants need deg a >= deg b");
    let zero = a[p].zero_like();
    let one = a[p].one_like();
    let mut s: Vec<Vec<C>> = (0..=q).map(|j| vec![zero.clone(); j + 1]).collect();
    let b_trim: Vec<C> = b[..=q].to_vec();
    s[q] = if p > q {
        scale(&b_trim, &b[q].pow_u(p - q - 1))
    } else {
        b_trim.clone()
    };
    if q == 0 {
        return s;
    }

    let mut f_prev: Vec<C> = a[..=p].to_vec();
    let mut f_cur: Vec<C> = b_trim;
    let delta = p - q;
    let minus_one = one.neg_ref();
    let mut beta = if (delta + 1) % 2 == 0 { one.clone() } else { minus_one.clone() };
    // psi for `a` is -1 (virtual leading coefficient 1).
    let mut psi = minus_one.clone();
    psi = next_psi(&psi, &f_cur[q], delta);

    loop {
        let d = degree(&f_cur).unwrap();
        let r = prem(&f_prev, &f_cur);
        let f_next = div_scalar(&r, &beta);
        let Some(e) = degree(&f_next) else {
            break;
        };
        let mut entry = f_next[..=e].to_vec();
        entry.resize(d, zero.clone());
        s[d - 1] = entry;
        let delta2 = d - e;
        if delta2 > 1 {
            let s_d = psi.neg_ref();
            let lc = &f_next[e];
            let num = scale(&f_next[..=e], &lc.pow_u(delta2 - 1));
            s[e] = div_scalar(&num, &s_d.pow_u(delta2 - 1));
        }
        if e == 0 {
            break;
        }
        beta = f_cur[d].neg_ref().mul_ref(&psi.pow_u(delta2));
        psi = next_psi(&psi, &f_next[e], delta2);
        f_prev = f_cur;
        f_cur = trim(f_next);
    }
    s
}

/// `(-lc)^delta / psi^(delta - 1)`.
fn next_psi<C: Coeff>(psi: &C, lc: &C, delta: usize) -> C {
    match delta {
        0 => psi.clone(),
        1 => lc.neg_ref(),
        _ => lc.neg_ref().pow_u(delta).exact_div(&psi.pow_u(delta - 1)),
    }
}

/// `(-1)^(k(k-1)/2)`.
pub(crate) fn eps_sign(k: usize) -> i32 {
    if (k * k.saturating_sub(1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Signed subresultant sequence of `p` (degree d >= 1) and `q` (degree < d,
/// possibly zero), returned as polynomials indexed `0..=d` together with the
/// principal coefficients `sRes_j` (coefficient of `X^j` in entry `j`, with
/// `sRes_d = lc(p)`).
pub(crate) fn signed_subresultants<C: Coeff>(p: &[C], q: &[C]) -> (Vec<Vec<C>>, Vec<C>) {
    let d = degree(p).expect("leading polynomial must be nonzero");
    assert!(d >= 1, "signed subresultants need a positive-degree polynomial");
    let zero = p[d].zero_like();
    let mut polys: Vec<Vec<C>> = (0..=d).map(|j| vec![zero.clone(); j + 1]).collect();
    polys[d] = p[..=d].to_vec();
    let mut qv: Vec<C> = q.to_vec();
    qv.resize(d, zero.clone());
    qv.truncate(d);
    if let Some(qd) = degree(&qv) {
        polys[d - 1] = qv.clone();
        if qd < d - 1 {
            let chain = subresultants(&p[..=d], &qv[..=qd]);
            for (j, sj) in chain.into_iter().enumerate() {
                let sign = eps_sign(d - j);
                polys[j] = if sign > 0 { sj } else { sj.iter().map(|c| c.neg_ref()).collect() };
            }
        } else {
            let chain = subresultants(&p[..=d], &qv[..=qd]);
            for (j, sj) in chain.into_iter().enumerate().take(qd) {
                let sign = eps_sign(d - j);
                polys[j] = if sign > 0 { sj } else { sj.iter().map(|c| c.neg_ref()).collect() };
            }
        }
    }
    let principal = (0..=d).map(|j| polys[j][j].clone()).collect();
    (polys, principal)
}

/// Generalized permanences minus variations of a sequence given from the
/// highest index down (`signs[0]` is the top entry). Gaps of odd length `k`
/// between nonzero entries contribute `eps(k) * sign(a_i * a_j)`; even gaps
/// contribute nothing.
pub(crate) fn pmv(signs_top_down: &[i32]) -> i64 {
    let mut total = 0i64;
    let mut last: Option<(usize, i32)> = None;
    for (i, &s) in signs_top_down.iter().enumerate() {
        if s == 0 {
            continue;
        }
        if let Some((li, ls)) = last {
            let gap = i - li;
            if gap % 2 == 1 {
                total += (eps_sign(gap) * ls * s) as i64;
            }
        }
        last = Some((i, s));
    }
    total
}

pub(crate) fn rational_sign(q: &Rational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
pub(crate) mod oracle {
    //! Determinant definitions used to cross-check the PRS route.
    use super::*;

    /// Fraction-free (Bareiss) determinant over an integral domain.
    pub fn det<C: Coeff>(m: &[Vec<C>]) -> C {
        let n = m.len();
        let one = m[0][0].one_like();
        if n == 0 {
            return one;
        }
        let mut a: Vec<Vec<C>> = m.to_vec();
        let mut sign_neg = false;
        let mut prev = one;
        for k in 0..n - 1 {
            if a[k][k].is_zero_elem() {
                let Some(sw) = (k + 1..n).find(|&i| !a[i][k].is_zero_elem()) else {
                    return m[0][0].zero_like();
                };
                a.swap(k, sw);
                sign_neg = !sign_neg;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i][j].mul_ref(&a[k][k]).sub_ref(&a[i][k].mul_ref(&a[k][j]));
                    a[i][j] = v.exact_div(&prev);
                }
            }
            prev = a[k][k].clone();
        }
        let r = a[n - 1][n - 1].clone();
        if sign_neg {
            r.neg_ref()
        } else {
            r
        }
    }

    /// `S_j` from the determinant-polynomial definition with rows
    /// `X^(q-j-1) a, .., a, X^(p-j-1) b, .., b`.
    pub fn subresultant_det<C: Coeff>(a: &[C], b: &[C], j: usize) -> Vec<C> {
        let p = degree(a).unwrap();
        let q = degree(b).unwrap();
        let zero = a[p].zero_like();
        let cols = p + q - j;
        let mut rows: Vec<Vec<C>> = Vec::new();
        // Column c holds the coefficient of X^(cols - 1 - c).
        let mut push_row = |poly: &[C], deg: usize, shift: usize| {
            let mut row = vec![zero.clone(); cols];
            for k in 0..=deg {
                let power = k + shift;
                row[cols - 1 - power] = poly[k].clone();
            }
            rows.push(row);
        };
        for s in (0..q - j).rev() {
            push_row(a, p, s);
        }
        for s in (0..p - j).rev() {
            push_row(b, q, s);
        }
        let n = rows.len();
        let mut out = Vec::with_capacity(j + 1);
        for k in 0..=j {
            let col = cols - 1 - k;
            let m: Vec<Vec<C>> = rows
                .iter()
                .map(|r| {
                    let mut v: Vec<C> = r[..n - 1].to_vec();
                    v.push(r[col].clone());
                    v
                })
                .collect();
            out.push(det(&m));
        }
        out
    }
}
