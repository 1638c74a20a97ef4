//! Sparse multivariate polynomials over Q, with subresultant and
//! Sturm-Habicht sequences whose coefficients live in the polynomial ring of
//! the remaining variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{rat_int, MPInterval, Rational};
use crate::error::{Error, Result};
use crate::prs::{self, pmv, rational_sign, Coeff};
use crate::unipoly::{self, UniPoly};

/// Exponent vector, one entry per variable of the owning polynomial.
pub type Monomial = Vec<u32>;

/// Parameter values used by [`specialize`] and [`tarski_query`].
pub type Specialization = BTreeMap<String, Rational>;

/// Terms keyed by exponent vector. The map order is lexicographic with the
/// first variable most significant, so the last entry is the lex-leading term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &[String]) -> Self {
        MultiPoly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational, vars: &[String]) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &[String]) -> Self {
        MultiPoly::constant(Rational::one(), vars)
    }

    /// The variable `name`, which must be in `vars`.
    pub fn var(name: &str, vars: &[String]) -> Self {
        let i = vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        MultiPoly::from_terms(vars, [(e, Rational::one())])
    }

    pub fn from_terms(vars: &[String], terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = MultiPoly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn from_unipoly(p: &UniPoly, var: &str, vars: &[String]) -> Self {
        let i = vars.iter().position(|v| v == var).expect("unknown variable");
        MultiPoly::from_terms(
            vars,
            p.coeffs().iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; vars.len()];
                e[i] = k as u32;
                (e, c.clone())
            }),
        )
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Degree in the named variable (0 when the variable is absent).
    pub fn degree_of(&self, name: &str) -> u32 {
        self.var_index(name).map_or(0, |i| self.degree_in(i))
    }

    /// Names of the variables that actually occur.
    pub fn used_vars(&self) -> Vec<String> {
        (0..self.vars.len())
            .filter(|&i| self.degree_in(i) > 0)
            .map(|i| self.vars[i].clone())
            .collect()
    }

    /// Lex-leading term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Re-expresses the polynomial over `vars`, which must contain every
    /// variable that occurs.
    pub fn with_vars(&self, vars: &[String]) -> MultiPoly {
        if self.vars == vars {
            return self.clone();
        }
        let map: Vec<Option<usize>> = self.vars.iter().map(|v| vars.iter().position(|w| w == v)).collect();
        let mut out = MultiPoly::zero(vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let j = map[i].unwrap_or_else(|| panic!("variable {} missing from target ring", self.vars[i]));
                ne[j] = k;
            }
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// Brings two polynomials into a common ring (the variables of `self`
    /// followed by the new ones of `other`).
    pub fn align(&self, other: &MultiPoly) -> (MultiPoly, MultiPoly) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let vars = merge_vars(&self.vars, &other.vars);
        (self.with_vars(&vars), other.with_vars(&vars))
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (mut p, d) = self.align(d);
        let (de, dc) = d.leading_term().map(|(e, c)| (e.clone(), c.clone()))?;
        let vars = p.vars.clone();
        let mut q = MultiPoly::zero(&vars);
        while let Some((pe, pc)) = p.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
            if pe.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let me: Monomial = pe.iter().zip(&de).map(|(a, b)| a - b).collect();
            let mc = pc / &dc;
            for (e, c) in &d.terms {
                let ne: Monomial = e.iter().zip(&me).map(|(a, b)| a + b).collect();
                p.add_term(ne, -(c * &mc));
            }
            q.add_term(me, mc);
        }
        Some(q)
    }

    /// Coefficients with respect to variable `i` (index = power), each a
    /// polynomial over the same variable list that is free of variable `i`.
    pub fn coeffs_in(&self, i: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![MultiPoly::zero(&self.vars); if self.is_zero() { 0 } else { d + 1 }];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne[i] as usize;
            ne[i] = 0;
            out[k].terms.insert(ne, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(i: usize, coeffs: &[MultiPoly], vars: &[String]) -> MultiPoly {
        let mut out = MultiPoly::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            let c = c.with_vars(vars);
            for (e, v) in c.terms {
                let mut ne = e;
                ne[i] += k as u32;
                out.add_term(ne, v);
            }
        }
        out
    }

    /// Leading coefficient with respect to variable `i`.
    pub fn lc_in(&self, i: usize) -> MultiPoly {
        self.coeffs_in(i).pop().unwrap_or_else(|| MultiPoly::zero(&self.vars))
    }

    pub fn derivative_in(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.add_term(ne, c * rat_int(e[i] as i64));
        }
        out
    }

    /// Substitutes rational values; the variable list is unchanged.
    pub fn specialize(&self, values: &Specialization) -> MultiPoly {
        let idx: Vec<(usize, &Rational)> = values
            .iter()
            .filter_map(|(k, v)| self.var_index(k).map(|i| (i, v)))
            .collect();
        if idx.is_empty() {
            return self.clone();
        }
        let mut out = MultiPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let mut cc = c.clone();
            for &(i, v) in &idx {
                if ne[i] > 0 {
                    cc *= num_traits::pow::pow(v.clone(), ne[i] as usize);
                    ne[i] = 0;
                }
            }
            out.add_term(ne, cc);
        }
        out
    }

    /// Substitutes `value` for variable `i`.
    pub fn substitute(&self, i: usize, value: &MultiPoly) -> MultiPoly {
        let value = value.with_vars(&self.vars);
        let coeffs = self.coeffs_in(i);
        let mut acc = MultiPoly::zero(&self.vars);
        for c in coeffs.iter().rev() {
            acc = &(&acc * &value) + c;
        }
        acc
    }

    /// Evaluates at a full point (one value per variable).
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Interval enclosure of the range over a box (one interval per variable).
    pub fn eval_interval(&self, point: &[MPInterval], prec: u32) -> MPInterval {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = MPInterval::from_rational(&Rational::zero(), prec);
        for (e, c) in &self.terms {
            let mut t = MPInterval::from_rational(c, prec);
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&x.powi(k));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Univariate view when at most one variable occurs.
    pub fn to_unipoly(&self) -> Option<UniPoly> {
        let used: Vec<usize> = (0..self.vars.len()).filter(|&i| self.degree_in(i) > 0).collect();
        match used.len() {
            0 => Some(UniPoly::constant(self.constant_value().unwrap())),
            1 => Some(self.to_unipoly_in(used[0])),
            _ => None,
        }
    }

    /// Univariate view in variable `i`; panics if other variables occur.
    pub fn to_unipoly_in(&self, i: usize) -> UniPoly {
        let coeffs = self.coeffs_in(i);
        UniPoly::from_coeffs(
            coeffs
                .iter()
                .map(|c| c.constant_value().expect("other variables occur"))
                .collect(),
        )
    }

    /// Integer coefficients with content 1 and positive lex-leading
    /// coefficient (zero stays zero).
    pub fn normalized(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let den = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = self.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
        let mut s = Rational::new(den, num);
        if self.leading_term().unwrap().1.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// `self / gcd(self, all partial derivatives)`, normalized.
    pub fn squarefree_part(&self) -> MultiPoly {
        if self.is_constant() {
            return if self.is_zero() { self.clone() } else { MultiPoly::one(&self.vars) };
        }
        let mut g = self.clone();
        for i in 0..self.vars.len() {
            if self.degree_in(i) > 0 {
                g = gcd(&g, &self.derivative_in(i));
                if g.is_constant() {
                    return self.normalized();
                }
            }
        }
        self.div_exact(&g).expect("gcd divides").normalized()
    }

    /// Renders highest terms first (lex order).
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.vars[i].clone() } else { format!("{}^{k}", self.vars[i]) })
                .collect();
            crate::text::push_term(&mut s, c, &mono.join("*"));
        }
        s
    }
}

fn merge_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut v = a.to_vec();
    for x in b {
        if !v.contains(x) {
            v.push(x.clone());
        }
    }
    v
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        let (mut a, b) = self.align(o);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        let (mut a, b) = self.align(o);
        for (e, c) in b.terms {
            a.add_term(e, -c);
        }
        a
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        let (a, b) = self.align(o);
        let mut out = MultiPoly::zero(&a.vars);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Coeff for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(&self.vars)
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(&self.vars)
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
        self.div_exact(o).expect("inexact division in subresultant chain")
    }
}

/// Normalized gcd (integer content 1, positive lex-leading coefficient).
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let (a, b) = a.align(b);
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    gcd_rec(&a, &b)
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    let n = a.vars.len();
    let Some(i) = (0..n).find(|&i| a.degree_in(i) > 0 || b.degree_in(i) > 0) else {
        return MultiPoly::one(&a.vars);
    };
    if a.degree_in(i) == 0 {
        return gcd_rec(a, &content_in(b, i));
    }
    if b.degree_in(i) == 0 {
        return gcd_rec(&content_in(a, i), b);
    }
    let ca = content_in(a, i);
    let cb = content_in(b, i);
    let g = gcd_rec(&ca, &cb);
    let pa: Vec<MultiPoly> = a.coeffs_in(i).iter().map(|c| c.div_exact(&ca).unwrap()).collect();
    let pb: Vec<MultiPoly> = b.coeffs_in(i).iter().map(|c| c.div_exact(&cb).unwrap()).collect();
    let (mut f, mut h) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
    loop {
        let r = prs::prem(&f, &h);
        let Some(dr) = prs::degree(&r) else {
            break;
        };
        if dr == 0 {
            h = vec![MultiPoly::one(&a.vars)];
            break;
        }
        let r = MultiPoly::from_coeffs_in(i, &r, &a.vars);
        let rp = primitive_in(&r, i);
        f = h;
        h = rp.coeffs_in(i);
    }
    let hp = primitive_in(&MultiPoly::from_coeffs_in(i, &h, &a.vars), i);
    (&g * &hp).normalized()
}

/// Gcd of the coefficients with respect to variable `i`.
fn content_in(p: &MultiPoly, i: usize) -> MultiPoly {
    let mut g = MultiPoly::zero(&p.vars);
    for c in p.coeffs_in(i) {
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(&g, &c);
        if g.is_constant() {
            return MultiPoly::one(&p.vars);
        }
    }
    g
}

fn primitive_in(p: &MultiPoly, i: usize) -> MultiPoly {
    let c = content_in(p, i);
    p.div_exact(&c).unwrap().normalized()
}

/// Subresultants of two polynomials with respect to a main variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubresSequence {
    pub var: String,
    /// `entries[i]` is `Sres_i`; entry 0 is the resultant.
    pub entries: Vec<MultiPoly>,
}

impl SubresSequence {
    pub fn resultant(&self) -> &MultiPoly {
        &self.entries[0]
    }

    /// Principal subresultant coefficients: coefficient of `var^i` in entry `i`.
    pub fn principal_coefficients(&self) -> Vec<MultiPoly> {
        let vars = self.entries[0].vars().to_vec();
        let i = vars.iter().position(|v| *v == self.var).unwrap();
        self.entries
            .iter()
            .enumerate()
            .map(|(k, e)| e.coeffs_in(i).get(k).cloned().unwrap_or_else(|| MultiPoly::zero(&vars)))
            .collect()
    }
}

/// Sturm-Habicht sequence of `(p1, p2)`: the signed subresultants of `p1`
/// and `lc(p1)^(2k) * Rem(p1' p2, p1)` (pseudo-remainder, even power).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmHabichtSequence {
    pub var: String,
    /// `entries[j]` is `StHa_j`.
    pub entries: Vec<MultiPoly>,
    /// `principal[j]` is the coefficient of `var^j` in `entries[j]`.
    pub principal: Vec<MultiPoly>,
    p1: MultiPoly,
    p2: MultiPoly,
    /// Leading coefficient of the second sequence input at its generic degree.
    second_lc: MultiPoly,
}

impl SturmHabichtSequence {
    pub fn p1(&self) -> &MultiPoly {
        &self.p1
    }

    pub fn p2(&self) -> &MultiPoly {
        &self.p2
    }
}

fn main_index(p1: &MultiPoly, p2: &MultiPoly, var: &str) -> Result<(MultiPoly, MultiPoly, usize)> {
    let (a, b) = p1.align(p2);
    let i = a.var_index(var);
    match i {
        Some(i) if a.degree_in(i) > 0 || b.degree_in(i) > 0 => Ok((a, b, i)),
        _ => Err(Error::invalid(format!("variable {var} occurs in neither polynomial"))),
    }
}

fn negate_all(v: &[MultiPoly]) -> Vec<MultiPoly> {
    v.iter().map(|c| -c).collect()
}

/// Subresultant sequence with respect to `var`, in the Sylvester-matrix
/// convention (`Sres_0` is the textbook resultant, including its sign).
pub fn subresultant_sequence(p1: &MultiPoly, p2: &MultiPoly, var: &str) -> Result<SubresSequence> {
    let (a, b, i) = main_index(p1, p2, var)?;
    let vars = a.vars.clone();
    if a.is_zero() || b.is_zero() {
        return Err(Error::invalid("subresultants of a zero polynomial"));
    }
    let (p, q) = (a.degree_in(i) as usize, b.degree_in(i) as usize);
    let top = p.max(q);
    let mut entries = vec![MultiPoly::zero(&vars); top + 1];
    if p == 0 || q == 0 {
        // One side constant in var: the chain collapses to Sres_0 = c^deg.
        entries[0] = if p == 0 { a.pow(q as u32) } else { b.pow(p as u32) };
        entries[top] = if p >= q { a } else { b };
        return Ok(SubresSequence {
            var: var.to_string(),
            entries,
        });
    }
    let (big, small, swap) = if p >= q { (&a, &b, false) } else { (&b, &a, true) };
    let (dp, dq) = if swap { (q, p) } else { (p, q) };
    let chain = prs::subresultants(&big.coeffs_in(i), &small.coeffs_in(i));
    for (j, sj) in chain.into_iter().enumerate() {
        if j == dq && dp == dq {
            continue;
        }
        // S_j(b, a) = (-1)^((p-j)(q-j)) S_j(a, b)
        let flip = swap && ((dp - j) * (dq - j)) % 2 == 1;
        let sj = if flip { negate_all(&sj) } else { sj };
        entries[j] = MultiPoly::from_coeffs_in(i, &sj, &vars);
    }
    entries[top] = big.clone();
    Ok(SubresSequence {
        var: var.to_string(),
        entries,
    })
}

pub fn sturm_habicht_sequence(p1: &MultiPoly, p2: &MultiPoly, var: &str) -> Result<SturmHabichtSequence> {
    let (a, b) = p1.align(p2);
    let i = a
        .var_index(var)
        .filter(|&i| a.degree_in(i) > 0)
        .ok_or_else(|| Error::invalid(format!("first polynomial has degree 0 in {var}")))?;
    let vars = a.vars.clone();
    let d = a.degree_in(i) as usize;
    let da = a.derivative_in(i);
    let prod = &da * &b;
    let pc = a.coeffs_in(i);
    let mut r = if prod.is_zero() {
        Vec::new()
    } else {
        prs::prem(&prod.coeffs_in(i), &pc)
    };
    let dprod = prod.degree_in(i) as usize;
    if !prod.is_zero() && dprod >= d && (dprod - d + 1) % 2 == 1 {
        let lc = &pc[d];
        r = r.iter().map(|c| c * lc).collect();
    }
    let r = prs::trim(r);
    let second_lc = r.last().cloned().unwrap_or_else(|| MultiPoly::zero(&vars));
    let (polys, principal) = prs::signed_subresultants(&pc, &r);
    Ok(SturmHabichtSequence {
        var: var.to_string(),
        entries: polys.iter().map(|c| MultiPoly::from_coeffs_in(i, c, &vars)).collect(),
        principal,
        p1: a,
        p2: b,
        second_lc,
    })
}

/// `#{x : P1(x) = 0, P2(x) > 0} - #{x : P1(x) = 0, P2(x) < 0}` after
/// substituting the parameter values.
pub fn tarski_query(seq: &SturmHabichtSequence, specialization: &Specialization) -> Result<i64> {
    let i = seq.p1.var_index(&seq.var).unwrap();
    let lc1 = seq.p1.lc_in(i).specialize(specialization);
    let lc2 = seq.second_lc.specialize(specialization);
    let to_const = |p: &MultiPoly| {
        p.constant_value()
            .ok_or_else(|| Error::invalid("specialization leaves free parameters"))
    };
    let c1 = to_const(&lc1)?;
    let c2 = to_const(&lc2)?;
    let degenerate = c1.is_zero() || (c2.is_zero() && !seq.second_lc.is_zero());
    if degenerate {
        let sp1 = seq.p1.specialize(specialization);
        let sp2 = seq.p2.specialize(specialization);
        if sp1.is_zero() {
            return Err(Error::invalid("first polynomial vanishes under the specialization"));
        }
        let u1 = sp1.to_unipoly_in(i);
        let u2 = sp2.to_unipoly_in(i);
        return unipoly::tarski_query(&u1, &u2);
    }
    let signs: Vec<i32> = seq
        .principal
        .iter()
        .rev()
        .map(|c| to_const(&c.specialize(specialization)).map(|v| rational_sign(&v)))
        .collect::<Result<_>>()?;
    Ok(pmv(&signs))
}

pub fn resultant(p1: &MultiPoly, p2: &MultiPoly, var: &str) -> Result<MultiPoly> {
    Ok(subresultant_sequence(p1, p2, var)?.entries[0].clone())
}

/// `(-1)^(d(d-1)/2) * Res(p, dp/dvar) / lc(p)`.
pub fn discriminant(p: &MultiPoly, var: &str) -> Result<MultiPoly> {
    let i = p
        .var_index(var)
        .filter(|&i| p.degree_in(i) > 0)
        .ok_or_else(|| Error::invalid(format!("variable {var} does not occur")))?;
    let d = p.degree_in(i) as usize;
    if d == 1 {
        return Ok(MultiPoly::one(&p.vars));
    }
    let r = resultant(p, &p.derivative_in(i), var)?;
    let q = r.div_exact(&p.lc_in(i)).ok_or_else(|| Error::Internal("lc does not divide resultant".into()))?;
    Ok(if prs::eps_sign(d) < 0 { -&q } else { q })
}

pub fn partial_derivative(p: &MultiPoly, var: &str) -> Result<MultiPoly> {
    let i = p
        .var_index(var)
        .ok_or_else(|| Error::invalid(format!("variable {var} not in ring")))?;
    Ok(p.derivative_in(i))
}

pub fn specialize(p: &MultiPoly, values: &Specialization) -> MultiPoly {
    p.specialize(values)
}
