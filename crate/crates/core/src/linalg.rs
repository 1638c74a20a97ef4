//! Dense exact linear algebra over Q and fraction-free determinants.

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::prs::Coeff;
use crate::unipoly::UniPoly;

pub(crate) type Mat = Vec<Vec<Rational>>;

pub(crate) fn zeros(n: usize) -> Mat {
    vec![vec![Rational::zero(); n]; n]
}

pub(crate) fn identity(n: usize) -> Mat {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub(crate) fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut c = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            let x = &a[i][l];
            if x.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    c[i][j] += x * &b[l][j];
                }
            }
        }
    }
    c
}

pub(crate) fn add_scaled(a: &mut Mat, b: &Mat, s: &Rational) {
    for (ra, rb) in a.iter_mut().zip(b) {
        for (x, y) in ra.iter_mut().zip(rb) {
            if !y.is_zero() {
                *x += y * s;
            }
        }
    }
}

pub(crate) fn trace(a: &Mat) -> Rational {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

pub(crate) fn is_zero(a: &Mat) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

/// `p(A)` by Horner's rule.
pub(crate) fn eval_poly(p: &UniPoly, a: &Mat) -> Mat {
    let n = a.len();
    let mut acc = zeros(n);
    for c in p.coeffs().iter().rev() {
        acc = mul(&acc, a);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += c;
        }
    }
    acc
}

/// `A^k = 0` for some `k`, tested as `A^(2^m) = 0` with `2^m >= n`.
pub(crate) fn is_nilpotent(a: &Mat) -> bool {
    let n = a.len();
    let mut p = a.clone();
    let mut k = 1;
    while k < n {
        if is_zero(&p) {
            return true;
        }
        p = mul(&p, &p);
        k *= 2;
    }
    is_zero(&p)
}

/// Characteristic polynomial `det(T I - A)` via reduction to Hessenberg form.
pub(crate) fn charpoly(a: &Mat) -> UniPoly {
    let n = a.len();
    let mut h = a.clone();
    // Similarity transforms to upper Hessenberg form.
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let piv = h[m][m - 1].clone();
        for i in m + 1..n {
            if h[i][m - 1].is_zero() {
                continue;
            }
            let u = &h[i][m - 1] / &piv;
            for j in 0..n {
                let t = &u * &h[m][j];
                h[i][j] -= t;
            }
            for row in h.iter_mut() {
                let t = &u * &row[i];
                row[m] += t;
            }
        }
    }
    // Recurrence on leading principal submatrices.
    let mut p: Vec<UniPoly> = vec![UniPoly::one()];
    for m in 1..=n {
        let lin = UniPoly::from_coeffs(vec![-h[m - 1][m - 1].clone(), Rational::one()]);
        let mut pm = &lin * &p[m - 1];
        let mut prod = Rational::one();
        for i in 1..m {
            prod *= &h[m - i][m - i - 1];
            if prod.is_zero() {
                break;
            }
            let c = &prod * &h[m - i - 1][m - 1];
            pm = &pm - &p[m - i - 1].scale(&c);
        }
        p.push(pm);
    }
    p.pop().unwrap()
}

/// Inverse by Gauss-Jordan elimination; `None` when singular.
pub(crate) fn inverse(a: &Mat) -> Option<Mat> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(p, c);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in 0..2 * n {
                    let t = &f * &m[c][j];
                    m[r][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Fraction-free (Bareiss) determinant over an integral domain.
pub(crate) fn det<C: Coeff>(m: &[Vec<C>]) -> C {
    let n = m.len();
    assert!(n > 0, "determinant of an empty matrix");
    let mut a: Vec<Vec<C>> = m.to_vec();
    let mut negate = false;
    let mut prev = m[0][0].one_like();
    for k in 0..n - 1 {
        if a[k][k].is_zero_elem() {
            let Some(sw) = (k + 1..n).find(|&i| !a[i][k].is_zero_elem()) else {
                return m[0][0].zero_like();
            };
            a.swap(k, sw);
            negate = !negate;
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
    if negate {
        r.neg_ref()
    } else {
        r
    }
}
