//! Buchberger's algorithm over Q: reduced Gröbner bases, normal forms,
//! zero-dimensionality, quotient bases and elimination ideals.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::multipoly::{Monomial, MultiPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    /// Degrevlex on the first `k` variables, ties broken by degrevlex on the
    /// rest. Eliminates the first block.
    Block(usize),
}

impl MonomialOrder {
    /// Sort key whose lexicographic order is the monomial order.
    fn key(&self, e: &[u32]) -> Vec<i64> {
        fn drl(e: &[u32], out: &mut Vec<i64>) {
            out.push(e.iter().map(|&x| x as i64).sum());
            out.extend(e.iter().rev().map(|&x| -(x as i64)));
        }
        let mut k = Vec::with_capacity(e.len() + 2);
        match *self {
            MonomialOrder::Lex => k.extend(e.iter().map(|&x| x as i64)),
            MonomialOrder::DegRevLex => drl(e, &mut k),
            MonomialOrder::Block(s) => {
                let s = s.min(e.len());
                drl(&e[..s], &mut k);
                drl(&e[s..], &mut k);
            }
        }
        k
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> std::cmp::Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

type Key = Vec<i64>;

/// Polynomial with terms keyed by the order; the last entry is the leading term.
#[derive(Clone, Debug)]
struct OPoly {
    terms: BTreeMap<Key, (Monomial, Rational)>,
}

impl OPoly {
    fn from_multi(p: &MultiPoly, ord: MonomialOrder) -> OPoly {
        OPoly {
            terms: p
                .terms()
                .map(|(e, c)| (ord.key(e), (e.clone(), c.clone())))
                .collect(),
        }
    }

    fn to_multi(&self, vars: &[String]) -> MultiPoly {
        MultiPoly::from_terms(vars, self.terms.values().map(|(e, c)| (e.clone(), c.clone())))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> Option<&(Monomial, Rational)> {
        self.terms.values().next_back()
    }

    fn lm(&self) -> &Monomial {
        &self.lead().unwrap().0
    }

    fn monic(mut self) -> OPoly {
        if let Some((_, c)) = self.lead() {
            let inv = c.recip();
            if !inv.is_one() {
                for (_, v) in self.terms.values_mut() {
                    *v *= &inv;
                }
            }
        }
        self
    }

    /// `self -= c * x^m * g`.
    fn sub_mul(&mut self, c: &Rational, m: &[u32], g: &OPoly, ord: MonomialOrder) {
        for (e, v) in g.terms.values() {
            let ne: Monomial = e.iter().zip(m).map(|(a, b)| a + b).collect();
            let k = ord.key(&ne);
            let delta = v * c;
            match self.terms.entry(k) {
                std::collections::btree_map::Entry::Vacant(slot) => {
                    slot.insert((ne, -delta));
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    o.get_mut().1 -= delta;
                    if o.get().1.is_zero() {
                        o.remove();
                    }
                }
            }
        }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(b: &[u32], a: &[u32]) -> Monomial {
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

/// Full reduction of `p` by `g` (every term, not just the leading one).
fn reduce(p: &OPoly, g: &[OPoly], ord: MonomialOrder) -> OPoly {
    let mut p = p.clone();
    let mut r = OPoly { terms: BTreeMap::new() };
    while let Some((k, (e, c))) = p.terms.iter().next_back().map(|(k, v)| (k.clone(), v.clone())) {
        match g.iter().find(|gi| divides(gi.lm(), &e)) {
            Some(gi) => {
                let m = quotient(&e, gi.lm());
                let lc = &gi.lead().unwrap().1;
                let f = &c / lc;
                p.sub_mul(&f, &m, gi, ord);
            }
            None => {
                p.terms.remove(&k);
                r.terms.insert(k, (e, c));
            }
        }
    }
    r
}

fn spoly(a: &OPoly, b: &OPoly, ord: MonomialOrder) -> OPoly {
    let l = lcm(a.lm(), b.lm());
    let mut s = OPoly { terms: BTreeMap::new() };
    let ca = &a.lead().unwrap().1;
    let cb = &b.lead().unwrap().1;
    s.sub_mul(&-ca.recip(), &quotient(&l, a.lm()), a, ord);
    s.sub_mul(&cb.recip(), &quotient(&l, b.lm()), b, ord);
    s
}

/// Reduced, monic Gröbner basis sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    vars: Vec<String>,
    order: MonomialOrder,
    generators: Vec<MultiPoly>,
    polys: Vec<OPoly>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, o: &Self) -> bool {
        self.vars == o.vars && self.order == o.order && self.generators == o.generators
    }
}

impl GroebnerBasis {
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// True for the unit ideal.
    pub fn is_one(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| p.lm().clone()).collect()
    }

    /// Leading monomial of `p` in this basis' order and ring.
    pub fn leading_monomial(&self, p: &MultiPoly) -> Option<Monomial> {
        let p = p.with_vars(&self.vars);
        let o = OPoly::from_multi(&p, self.order);
        o.lead().map(|(e, _)| e.clone())
    }

    pub fn normal_form(&self, p: &MultiPoly) -> MultiPoly {
        normal_form(p, self)
    }
}

/// Reduced Gröbner basis of the ideal generated by `system` over the union
/// of its variable lists.
pub fn buchberger(system: &[MultiPoly], order: MonomialOrder) -> GroebnerBasis {
    let mut vars: Vec<String> = Vec::new();
    for p in system {
        for v in p.vars() {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
    }
    buchberger_in(system, &vars, order)
}

/// As [`buchberger`], over an explicit variable list.
pub fn buchberger_in(system: &[MultiPoly], vars: &[String], order: MonomialOrder) -> GroebnerBasis {
    let mut g: Vec<OPoly> = Vec::new();
    for p in system {
        let o = OPoly::from_multi(&p.with_vars(vars), order);
        if !o.is_zero() {
            g.push(o.monic());
        }
    }
    // Pairs keyed by (lcm degree, lcm order key, i, j) for the normal strategy.
    let mut queue: BTreeSet<(u32, Key, usize, usize)> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let push_pair = |queue: &mut BTreeSet<(u32, Key, usize, usize)>, g: &[OPoly], i: usize, j: usize| {
        let l = lcm(g[i].lm(), g[j].lm());
        queue.insert((l.iter().sum(), order.key(&l), i, j));
    };
    for j in 0..g.len() {
        for i in 0..j {
            push_pair(&mut queue, &g, i, j);
        }
    }
    while let Some(item) = queue.pop_first() {
        let (_, _, i, j) = item;
        done.insert((i, j));
        let (li, lj) = (g[i].lm().clone(), g[j].lm().clone());
        let l = lcm(&li, &lj);
        // Product criterion.
        if li.iter().zip(&lj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        // Chain criterion.
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && divides(g[k].lm(), &l)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let r = reduce(&spoly(&g[i], &g[j], order), &g, order);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        let n = g.len();
        if r.lm().iter().all(|&x| x == 0) {
            return finish(vec![r], vars, order);
        }
        g.push(r);
        for k in 0..n {
            push_pair(&mut queue, &g, k, n);
        }
    }
    finish(g, vars, order)
}

/// Minimalizes, inter-reduces, normalizes and sorts.
fn finish(g: Vec<OPoly>, vars: &[String], order: MonomialOrder) -> GroebnerBasis {
    if let Some(unit) = g.iter().find(|p| p.lm().iter().all(|&x| x == 0)) {
        let unit = unit.clone().monic();
        return GroebnerBasis {
            vars: vars.to_vec(),
            order,
            generators: vec![unit.to_multi(vars)],
            polys: vec![unit],
        };
    }
    // Drop elements whose leading monomial is divisible by another's.
    let mut minimal: Vec<OPoly> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let redundant = g.iter().enumerate().any(|(j, q)| {
            j != i && divides(q.lm(), p.lm()) && (q.lm() != p.lm() || j < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut reduced: Vec<OPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<OPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        reduced.push(reduce(&minimal[i], &others, order).monic());
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    GroebnerBasis {
        vars: vars.to_vec(),
        order,
        generators: reduced.iter().map(|p| p.to_multi(vars)).collect(),
        polys: reduced,
    }
}

/// Remainder of `p` on division by the basis; zero iff `p` is in the ideal.
pub fn normal_form(p: &MultiPoly, gb: &GroebnerBasis) -> MultiPoly {
    let o = OPoly::from_multi(&p.with_vars(&gb.vars), gb.order);
    reduce(&o, &gb.polys, gb.order).to_multi(&gb.vars)
}

/// Every variable has a pure power among the leading monomials.
pub fn is_zero_dimensional(gb: &GroebnerBasis) -> bool {
    if gb.is_one() {
        return true;
    }
    let lms = gb.leading_monomials();
    (0..gb.vars.len()).all(|i| {
        lms.iter()
            .any(|m| m[i] > 0 && m.iter().enumerate().all(|(j, &x)| j == i || x == 0))
    })
}

/// Standard monomials (not divisible by any leading monomial), increasing
/// in the basis order.
pub fn quotient_basis(gb: &GroebnerBasis) -> Result<Vec<Monomial>> {
    if !is_zero_dimensional(gb) {
        return Err(Error::NotZeroDimensional);
    }
    if gb.is_one() {
        return Ok(Vec::new());
    }
    let n = gb.vars.len();
    let lms = gb.leading_monomials();
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut stack = vec![vec![0u32; n]];
    while let Some(m) = stack.pop() {
        if seen.contains(&m) || lms.iter().any(|l| divides(l, &m)) {
            continue;
        }
        for i in 0..n {
            let mut next = m.clone();
            next[i] += 1;
            stack.push(next);
        }
        seen.insert(m);
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort_by(|a, b| gb.order.cmp(a, b));
    Ok(out)
}

/// Generators of `I ∩ Q[keep]`, via a block order eliminating the other
/// variables. Results are expressed over the original variable list.
pub fn elimination_ideal(system: &[MultiPoly], keep: &[String]) -> Vec<MultiPoly> {
    let mut vars: Vec<String> = Vec::new();
    for p in system {
        for v in p.vars() {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
    }
    let elim: Vec<String> = vars.iter().filter(|v| !keep.contains(v)).cloned().collect();
    let kept: Vec<String> = vars.iter().filter(|v| keep.contains(v)).cloned().collect();
    let mut order_vars = elim.clone();
    order_vars.extend(kept);
    let gb = buchberger_in(system, &order_vars, MonomialOrder::Block(elim.len()));
    gb.generators
        .iter()
        .filter(|p| p.terms().all(|(e, _)| e[..elim.len()].iter().all(|&x| x == 0)))
        .filter(|p| !p.is_zero())
        .map(|p| p.with_vars(&vars))
        .collect()
}
