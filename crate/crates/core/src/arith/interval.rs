use std::fmt;

use num_traits::{Signed, Zero};

use super::{format_decimal, ArithOp, Dyadic, Rational};
use crate::error::{Error, Result};
use crate::unipoly::UniPoly;

/// Working precision (mantissa bits) used when callers do not choose one.
pub const DEFAULT_PRECISION: u32 = 53;

/// Closed interval with dyadic endpoints representable at `prec` bits.
///
/// Every operation rounds its endpoints outward, so the result always
/// encloses the exact image of the operands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPInterval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl MPInterval {
    /// Builds `[lo, hi]`, rounding outward to `prec` bits. Panics if `lo > hi`.
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        let prec = prec.max(2);
        MPInterval {
            lo: lo.round_floor(prec),
            hi: hi.round_ceil(prec),
            prec,
        }
    }

    pub fn point(x: Dyadic, prec: u32) -> Self {
        MPInterval::new(x.clone(), x, prec)
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        MPInterval::from_rationals(q, q, prec)
    }

    pub fn from_rationals(lo: &Rational, hi: &Rational, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        let prec = prec.max(2);
        MPInterval {
            lo: Dyadic::from_rational_floor(lo, prec),
            hi: Dyadic::from_rational_ceil(hi, prec),
            prec,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn width(&self) -> Rational {
        self.hi.sub(&self.lo).to_rational()
    }

    pub fn mid(&self) -> Dyadic {
        Dyadic::midpoint(&self.lo, &self.hi)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.mantissa().is_positive() && !self.hi.mantissa().is_negative()
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn contains(&self, other: &MPInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// `other` lies in the interior of `self`.
    pub fn strictly_contains(&self, other: &MPInterval) -> bool {
        self.lo < other.lo && other.hi < self.hi
    }

    pub fn intersect(&self, other: &MPInterval) -> Option<MPInterval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then(|| MPInterval {
            lo,
            hi,
            prec: self.prec.max(other.prec),
        })
    }

    /// Convex hull.
    pub fn hull(&self, other: &MPInterval) -> MPInterval {
        MPInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn with_precision(&self, prec: u32) -> MPInterval {
        MPInterval::new(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn neg(&self) -> MPInterval {
        MPInterval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }

    pub fn add(&self, o: &MPInterval) -> MPInterval {
        MPInterval::new(self.lo.add(&o.lo), self.hi.add(&o.hi), self.prec.max(o.prec))
    }

    pub fn sub(&self, o: &MPInterval) -> MPInterval {
        MPInterval::new(self.lo.sub(&o.hi), self.hi.sub(&o.lo), self.prec.max(o.prec))
    }

    pub fn mul(&self, o: &MPInterval) -> MPInterval {
        let c = [
            self.lo.mul(&o.lo),
            self.lo.mul(&o.hi),
            self.hi.mul(&o.lo),
            self.hi.mul(&o.hi),
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        MPInterval::new(lo, hi, self.prec.max(o.prec))
    }

    /// Square, tighter than `x.mul(x)` when `x` straddles zero.
    pub fn sqr(&self) -> MPInterval {
        let a = self.lo.mul(&self.lo);
        let b = self.hi.mul(&self.hi);
        let hi = a.clone().max(b.clone());
        let lo = if self.contains_zero() { Dyadic::zero() } else { a.min(b) };
        MPInterval::new(lo, hi, self.prec)
    }

    pub fn powi(&self, n: u32) -> MPInterval {
        match n {
            0 => MPInterval::point(Dyadic::from_int(1), self.prec),
            1 => self.clone(),
            _ if n % 2 == 0 => self.powi(n / 2).sqr(),
            _ => self.powi(n - 1).mul(self),
        }
    }

    pub fn div(&self, o: &MPInterval) -> Result<MPInterval> {
        if o.contains_zero() {
            return Err(Error::PossibleSingularity);
        }
        let prec = self.prec.max(o.prec);
        let (a0, a1) = (self.lo.to_rational(), self.hi.to_rational());
        let (b0, b1) = (o.lo.to_rational(), o.hi.to_rational());
        let c = [&a0 / &b0, &a0 / &b1, &a1 / &b0, &a1 / &b1];
        let lo = c.iter().min().unwrap();
        let hi = c.iter().max().unwrap();
        Ok(MPInterval::from_rationals(lo, hi, prec))
    }

    /// Decimal rendering `"[lo, hi]"` with `digits` significant digits, rounded outward.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        format!(
            "[{}, {}]",
            format_decimal(&self.lo.to_rational(), digits, false),
            format_decimal(&self.hi.to_rational(), digits, true)
        )
    }

    pub fn to_f64_bounds(&self) -> (f64, f64) {
        (self.lo.to_f64(), self.hi.to_f64())
    }
}

/// Exact rendering `"[m*2^e, m*2^e]"`.
impl fmt::Display for MPInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

pub fn iv_arith(a: &MPInterval, b: &MPInterval, op: ArithOp) -> Result<MPInterval> {
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b)?,
    })
}

/// Re-rounds `x` at a higher precision. The enclosure is unchanged; only the
/// representation precision grows.
pub fn iv_refine(x: &MPInterval, new_precision: u32) -> MPInterval {
    x.with_precision(new_precision.max(x.prec))
}

/// Horner evaluation of `p` over `x` with outward rounding at `x`'s precision.
pub fn iv_eval_poly(p: &UniPoly, x: &MPInterval) -> MPInterval {
    let prec = x.prec;
    let coeffs = p.coeffs();
    if coeffs.is_empty() {
        return MPInterval::point(Dyadic::zero(), prec);
    }
    let mut acc = MPInterval::from_rational(coeffs.last().unwrap(), prec);
    for c in coeffs.iter().rev().skip(1) {
        acc = acc.mul(x);
        if !c.is_zero() {
            acc = acc.add(&MPInterval::from_rational(c, prec));
        }
    }
    acc
}

/// One interval per variable enclosing a real solution of a polynomial system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionBox {
    pub coords: Vec<MPInterval>,
    /// Set only by routines that proved the box isolates exactly one solution.
    pub certified: bool,
}

impl SolutionBox {
    pub fn new(coords: Vec<MPInterval>, certified: bool) -> Self {
        assert!(!coords.is_empty(), "solution box needs at least one coordinate");
        SolutionBox { coords, certified }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Largest coordinate width.
    pub fn max_width(&self) -> Rational {
        self.coords.iter().map(|c| c.width()).max().unwrap_or_else(Rational::zero)
    }

    pub fn midpoint(&self) -> Vec<Dyadic> {
        self.coords.iter().map(|c| c.mid()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{pow2, rat, rat_int};

    fn iv(a: i64, b: i64) -> MPInterval {
        MPInterval::from_rationals(&rat_int(a), &rat_int(b), DEFAULT_PRECISION)
    }

    #[test]
    fn basic_ops() {
        let s = iv_arith(&iv(1, 2), &iv(3, 4), ArithOp::Add).unwrap();
        assert!(s.contains(&iv(4, 6)));
        let p = iv_arith(&iv(-1, 1), &iv(-1, 1), ArithOp::Mul).unwrap();
        assert!(p.contains(&iv(-1, 1)));
        let one = MPInterval::from_rational(&rat_int(1), 8);
        let three = MPInterval::from_rational(&rat_int(3), 8);
        let q = iv_arith(&one, &three, ArithOp::Div).unwrap();
        assert!(q.contains_rational(&rat(1, 3)));
        assert!(q.width() <= pow2(-6));
        assert_eq!(
            iv_arith(&one, &iv(-1, 1), ArithOp::Div),
            Err(Error::PossibleSingularity)
        );
    }

    #[test]
    fn refine_keeps_content() {
        let x = iv(1, 2);
        let r = iv_refine(&x, 100);
        assert_eq!(r.precision(), 100);
        assert_eq!(r.lo().to_rational(), rat_int(1));
        let third = MPInterval::from_rational(&rat(1, 3), 8);
        let r = iv_refine(&third, 53);
        assert!(r.contains(&third) && third.contains(&r));
        let five = MPInterval::from_rational(&rat_int(5), 4);
        assert!(iv_refine(&five, 300).is_point());
    }

    #[test]
    fn poly_eval() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let at1 = iv_eval_poly(&p, &iv(1, 1));
        assert!(at1.contains_rational(&rat_int(-1)));
        let range = iv_eval_poly(&p, &iv(1, 2));
        assert!(range.contains(&iv(-1, 2)));
        let c = UniPoly::constant(rat_int(7));
        assert_eq!(iv_eval_poly(&c, &iv(-100, 100)), iv(7, 7));
    }

    #[test]
    fn decimal_display() {
        let x = MPInterval::from_rationals(&rat(51, 32), &rat(13, 8), 64);
        assert_eq!(x.to_decimal_string(6), "[1.59375, 1.625]");
        let third = MPInterval::from_rational(&rat(1, 3), 64);
        assert_eq!(third.to_decimal_string(4), "[0.3333, 0.3334]");
        assert_eq!(iv(1, 2).to_string(), "[1*2^0, 1*2^1]");
    }
}
