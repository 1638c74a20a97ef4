use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{pow2, Rational};

/// A number `mantissa * 2^exponent`, normalized so the mantissa is odd (or the
/// whole value is `0 * 2^0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic::new(n.into(), 0)
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz as usize;
            self.exp += tz as i64;
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    /// Number of significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    pub fn to_rational(&self) -> Rational {
        Rational::from_integer(self.mant.clone()) * pow2(self.exp)
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.mant.bits() as i64;
        if bits <= 60 {
            return self.mant.to_f64().unwrap_or(0.0) * 2f64.powi(self.exp.clamp(-2000, 2000) as i32);
        }
        let shift = bits - 60;
        let m = (&self.mant >> shift as usize).to_f64().unwrap_or(0.0);
        m * 2f64.powf((self.exp + shift) as f64)
    }

    /// Exact conversion when `x` is finite; `None` for NaN or infinities.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Dyadic::zero());
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Some(Dyadic::new(BigInt::from(mant) * sign, exp))
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &o.mant << (o.exp - e) as usize;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &o.mant, self.exp + o.exp)
    }

    /// Halves the value exactly.
    pub fn half(&self) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp - 1,
        }
    }

    /// Largest dyadic with at most `prec` mantissa bits that is `<= self`.
    pub fn round_floor(&self, prec: u32) -> Dyadic {
        self.round(prec, false)
    }

    /// Smallest dyadic with at most `prec` mantissa bits that is `>= self`.
    pub fn round_ceil(&self, prec: u32) -> Dyadic {
        self.round(prec, true)
    }

    fn round(&self, prec: u32, up: bool) -> Dyadic {
        let prec = prec.max(1) as u64;
        let bits = self.mant.bits();
        if bits <= prec {
            return self.clone();
        }
        let shift = (bits - prec) as usize;
        let div = BigInt::one() << shift;
        let m = if up {
            -((-&self.mant).div_floor(&div))
        } else {
            self.mant.div_floor(&div)
        };
        Dyadic::new(m, self.exp + shift as i64)
    }

    /// Largest `prec`-bit dyadic not exceeding `q`.
    pub fn from_rational_floor(q: &Rational, prec: u32) -> Dyadic {
        Self::from_rational(q, prec, false)
    }

    /// Smallest `prec`-bit dyadic not below `q`.
    pub fn from_rational_ceil(q: &Rational, prec: u32) -> Dyadic {
        Self::from_rational(q, prec, true)
    }

    fn from_rational(q: &Rational, prec: u32, up: bool) -> Dyadic {
        if q.is_zero() {
            return Dyadic::zero();
        }
        // Exact when the denominator is a power of two.
        if q.denom().magnitude().count_ones() == 1 {
            let e = -(q.denom().trailing_zeros().unwrap_or(0) as i64);
            return Dyadic::new(q.numer().clone(), e).round(prec, up);
        }
        let prec = prec.max(1) as i64;
        let e = q.numer().bits() as i64 - q.denom().bits() as i64 - prec - 2;
        // m = round(q * 2^-e)
        let (num, den) = if e >= 0 {
            (q.numer().clone(), q.denom() << e as usize)
        } else {
            (q.numer() << (-e) as usize, q.denom().clone())
        };
        let m = if up {
            -((-num).div_floor(&den))
        } else {
            num.div_floor(&den)
        };
        Dyadic::new(m, e).round(prec as u32, up)
    }

    /// Midpoint of two dyadics (exact).
    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        a.add(b).half()
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        a.cmp(&b)
    }
}

/// Exact rendering as `m*2^e`.
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

impl std::str::FromStr for Dyadic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (m, e) = s
            .split_once("*2^")
            .ok_or_else(|| format!("expected m*2^e, got {s:?}"))?;
        let m: BigInt = m.trim().parse().map_err(|_| format!("bad mantissa in {s:?}"))?;
        let e: i64 = e.trim().parse().map_err(|_| format!("bad exponent in {s:?}"))?;
        Ok(Dyadic::new(m, e))
    }
}
