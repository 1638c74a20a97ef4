//! Exact rationals, dyadic numbers and outward-rounded multi-precision intervals.
//!
//! Every certified statement made elsewhere in the crate reduces to sign
//! computations on [`Rational`] values or to containment of exact values in
//! [`MPInterval`] enclosures.

mod dyadic;
mod interval;

pub use dyadic::Dyadic;
pub use interval::{iv_arith, iv_eval_poly, iv_refine, MPInterval, SolutionBox, DEFAULT_PRECISION};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// The four field operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat_arith(a: &Rational, b: &Rational, op: ArithOp) -> Result<Rational> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => {
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            a / b
        }
    })
}

/// Shorthand constructor; panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"-12"`, `"3/4"`, `"0.608"` or `"1.5e-3"` exactly.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if d.is_zero() {
            return None;
        }
        return Some(n / d);
    }
    let (mantissa, exp10) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut num: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().ok()? };
    if neg {
        num = -num;
    }
    let scale = exp10 - frac_part.len() as i64;
    let mut q = Rational::from_integer(num);
    if scale >= 0 {
        q *= Rational::from_integer(BigInt::from(10).pow(scale as u32));
    } else {
        q /= Rational::from_integer(BigInt::from(10).pow((-scale) as u32));
    }
    Some(q)
}

pub(crate) fn pow2(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(BigInt::one() << (e as usize))
    } else {
        Rational::new(BigInt::one(), BigInt::one() << ((-e) as usize))
    }
}

pub(crate) fn floor_int(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub(crate) fn ceil_int(q: &Rational) -> BigInt {
    -((-q.numer()).div_floor(q.denom()))
}

/// Smallest-denominator rational in the closed interval `[lo, hi]`.
pub(crate) fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    // Continued-fraction descent on 0 < lo <= hi.
    let fl = floor_int(lo);
    let fl_q = Rational::from_integer(fl.clone());
    if fl_q == *lo {
        return lo.clone();
    }
    if Rational::from_integer(&fl + 1) <= *hi {
        return Rational::from_integer(fl + 1);
    }
    let lo_f = lo - &fl_q;
    let hi_f = hi - &fl_q;
    let inner = simplest_between(&hi_f.recip(), &lo_f.recip());
    fl_q + inner.recip()
}

/// Decimal rendering of `q` with `digits` significant digits, rounded toward
/// `-inf` (`round_up = false`) or `+inf` (`round_up = true`).
pub fn format_decimal(q: &Rational, digits: usize, round_up: bool) -> String {
    let digits = digits.max(1);
    if q.is_zero() {
        return "0".to_string();
    }
    let a = q.abs();
    // 10^k <= a < 10^(k+1)
    let mut k = ((a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2).floor() as i64;
    loop {
        let lower = pow10(k);
        if a < lower {
            k -= 1;
            continue;
        }
        if a >= pow10(k + 1) {
            k += 1;
            continue;
        }
        break;
    }
    let shift = digits as i64 - 1 - k;
    let scaled = q * pow10(shift);
    let m = if round_up { ceil_int(&scaled) } else { floor_int(&scaled) };
    render_scaled(&m, -shift)
}

fn pow10(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(BigInt::from(10).pow(e as u32))
    } else {
        Rational::new(BigInt::one(), BigInt::from(10).pow((-e) as u32))
    }
}

/// Renders `m * 10^exp10` in positional notation.
fn render_scaled(m: &BigInt, exp10: i64) -> String {
    let neg = m.sign() == Sign::Minus;
    let digits = m.abs().to_string();
    let body = if exp10 >= 0 {
        if digits == "0" {
            "0".to_string()
        } else {
            format!("{digits}{}", "0".repeat(exp10 as usize))
        }
    } else {
        let frac_len = (-exp10) as usize;
        let padded = if digits.len() <= frac_len {
            format!("{}{}", "0".repeat(frac_len - digits.len() + 1), digits)
        } else {
            digits
        };
        let (i, f) = padded.split_at(padded.len() - frac_len);
        let f = f.trim_end_matches('0');
        if f.is_empty() {
            i.to_string()
        } else {
            format!("{i}.{f}")
        }
    };
    if neg && body != "0" {
        format!("-{body}")
    } else {
        body
    }
}

pub(crate) fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        // Fall back to a dyadic approximation for huge numerators/denominators.
        Dyadic::from_rational_floor(q, 60).to_f64()
    })
}
