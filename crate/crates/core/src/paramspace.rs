//! Parameter-space machinery: discriminant varieties and the open-cell
//! cylindrical decomposition with rational sample points.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{rat, rat_int, Rational};
use crate::error::{Error, Result};
use crate::groebner::{buchberger_in, elimination_ideal, is_zero_dimensional, MonomialOrder};
use crate::linalg;
use crate::multipoly::{gcd, resultant, MultiPoly, Specialization};
use crate::unipoly::UniPoly;

/// Polynomials in the parameters only. Over any connected open set avoiding
/// all of them, the real solutions vary analytically and keep their count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantVariety {
    pub params: Vec<String>,
    pub polys: Vec<MultiPoly>,
}

impl DiscriminantVariety {
    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// True when the rational point lies on none of the defining polynomials.
    pub fn avoids(&self, point: &[Rational]) -> bool {
        self.polys.iter().all(|p| !p.eval(point).is_zero())
    }
}

const SEED: u64 = 0x5eed_d15c;

fn lift_to(p: &MultiPoly, ring: &[String]) -> Result<MultiPoly> {
    if let Some(v) = p.used_vars().into_iter().find(|v| !ring.contains(v)) {
        return Err(Error::invalid(format!("undeclared variable {v}")));
    }
    Ok(p.with_vars(ring))
}

/// Discriminant variety of `system` for the projection onto `params`.
///
/// The result is the hypersurface part of: the projection of the critical
/// locus, the leading coefficients (in the parameters) of a block-order
/// basis, and the parameter-only consequences of the system. It may be a
/// superset of the minimal variety.
pub fn discriminant_variety(system: &[MultiPoly], vars: &[String], params: &[String]) -> Result<DiscriminantVariety> {
    if vars.is_empty() {
        return Err(Error::invalid("no main variables"));
    }
    let mut ring: Vec<String> = vars.to_vec();
    ring.extend(params.iter().cloned());
    let sys: Vec<MultiPoly> = system
        .iter()
        .map(|p| lift_to(p, &ring))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|p| !p.is_zero())
        .collect();
    if sys.is_empty() {
        return Err(Error::Unsupported("empty system".into()));
    }
    generic_check(&sys, vars, params)?;

    let n = vars.len();
    let mut found: Vec<MultiPoly> = Vec::new();

    // Critical locus: system plus the maximal Jacobian minors.
    let jac: Vec<Vec<MultiPoly>> = sys.iter().map(|p| (0..n).map(|j| p.derivative_in(j)).collect()).collect();
    let mut crit = Vec::new();
    for rows in subsets(sys.len(), n) {
        let m: Vec<Vec<MultiPoly>> = rows.iter().map(|&r| jac[r].clone()).collect();
        let d = linalg::det(&m);
        if !d.is_zero() {
            crit.push(d);
        }
    }
    if !crit.is_empty() {
        let mut ext = sys.clone();
        ext.extend(crit);
        let elim = elimination_ideal(&ext, params);
        let g = elim.iter().fold(MultiPoly::zero(&ring), |acc, p| gcd(&acc, p));
        if g.is_zero() {
            return Err(Error::Unsupported("generic solutions are singular".into()));
        }
        found.push(g);
    }

    // Non-properness: under the degree-compatible block order, variable i
    // stays bounded wherever some basis element with leading monomial a
    // pure power of it keeps a nonzero leading coefficient. Parameter-only
    // basis elements are kept as well.
    let gb = buchberger_in(&sys, &ring, MonomialOrder::Block(n));
    let mut elim = MultiPoly::zero(&ring);
    let mut per_var = vec![MultiPoly::zero(&ring); n];
    for g in gb.generators() {
        let lm = gb.leading_monomial(g).expect("nonzero basis element");
        let support: Vec<usize> = (0..n).filter(|&i| lm[i] > 0).collect();
        match support.as_slice() {
            [] => elim = gcd(&elim, g),
            &[i] => {
                let lc = MultiPoly::from_terms(
                    &ring,
                    g.terms().filter(|(e, _)| e[..n] == lm[..n]).map(|(e, c)| {
                        let mut e = e.clone();
                        e[i] = 0;
                        (e, c.clone())
                    }),
                );
                per_var[i] = gcd(&per_var[i], &lc);
            }
            _ => {}
        }
    }
    found.extend(per_var);
    if !elim.is_zero() {
        found.push(elim);
    }
    let polys = reduce_set(found.iter().map(|p| p.with_vars(params)).collect());
    Ok(DiscriminantVariety {
        params: params.to_vec(),
        polys,
    })
}

/// Zero-dimensionality at seeded random parameter values.
fn generic_check(sys: &[MultiPoly], vars: &[String], params: &[String]) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..3 {
        let sp: Specialization = params
            .iter()
            .map(|p| (p.clone(), rat(rng.gen_range(-97..=97), rng.gen_range(1..=13))))
            .collect();
        let spec: Vec<MultiPoly> = sys.iter().map(|p| p.specialize(&sp).with_vars(vars)).collect();
        let gb = buchberger_in(&spec, vars, MonomialOrder::DegRevLex);
        if is_zero_dimensional(&gb) {
            return Ok(());
        }
    }
    Err(Error::Unsupported("system is not zero-dimensional for generic parameters".into()))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Square-free, pairwise coprime, nonconstant, deduplicated and sorted.
pub(crate) fn reduce_set(polys: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let mut work: Vec<MultiPoly> = polys
        .into_iter()
        .filter(|p| !p.is_constant())
        .map(|p| p.squarefree_part())
        .collect();
    // gcd-free basis by repeated splitting
    let mut basis: Vec<MultiPoly> = Vec::new();
    while let Some(p) = work.pop() {
        if p.is_constant() {
            continue;
        }
        let mut split = None;
        for (k, b) in basis.iter().enumerate() {
            let g = gcd(&p, b);
            if !g.is_constant() {
                split = Some((k, g));
                break;
            }
        }
        match split {
            None => basis.push(p),
            Some((k, g)) => {
                let b = basis.swap_remove(k);
                work.push(p.div_exact(&g).unwrap().normalized());
                work.push(b.div_exact(&g).unwrap().normalized());
                work.push(g);
            }
        }
    }
    basis.sort_by(|a, b| (a.total_degree(), a.to_text()).cmp(&(b.total_degree(), b.to_text())));
    basis.dedup();
    basis
}

/// Projection sets and sample points of an open-cell decomposition of
/// parameter space. Level `k` (1-based) lives in the first `k` parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CadTree {
    pub params: Vec<String>,
    /// `projections[k-1]` is `Po_k`.
    pub projections: Vec<Vec<MultiPoly>>,
    /// `samples[k-1]` is `Pt_k`; each point has `k` coordinates.
    pub samples: Vec<Vec<Vec<Rational>>>,
}

/// Open CAD adapted to `polys` over the ordered parameter list.
pub fn open_cad(polys: &[MultiPoly], params: &[String]) -> Result<CadTree> {
    let l = params.len();
    if l == 0 {
        return Err(Error::invalid("open CAD needs at least one parameter"));
    }
    let top: Vec<MultiPoly> = polys.iter().map(|p| lift_to(p, params)).collect::<Result<_>>()?;
    let mut projections = vec![Vec::new(); l];
    projections[l - 1] = reduce_set(top);
    for k in (1..l).rev() {
        projections[k - 1] = project(&projections[k], params, k)?;
    }

    let mut samples: Vec<Vec<Vec<Rational>>> = Vec::with_capacity(l);
    let mut base: Vec<Vec<Rational>> = vec![Vec::new()];
    for (k, level) in projections.iter().enumerate() {
        let mut next = Vec::new();
        for b in &base {
            let sp: Specialization = params.iter().cloned().zip(b.iter().cloned()).collect();
            let mut prod = UniPoly::one();
            for p in level {
                let u = p.specialize(&sp).to_unipoly_in(k);
                if u.is_zero() {
                    return Err(Error::Internal("projection polynomial vanishes over a sample".into()));
                }
                prod = &prod * &u;
            }
            for v in interleave(&prod)? {
                let mut pt = b.clone();
                pt.push(v);
                next.push(pt);
            }
        }
        samples.push(next.clone());
        base = next;
    }
    Ok(CadTree {
        params: params.to_vec(),
        projections,
        samples,
    })
}

/// `Po_k` from `Po_{k+1}`: discriminants, leading coefficients and pairwise
/// resultants in the parameter at index `k`; polynomials free of it pass down.
fn project(level: &[MultiPoly], params: &[String], k: usize) -> Result<Vec<MultiPoly>> {
    let var = &params[k];
    let mut out = Vec::new();
    let with_var: Vec<&MultiPoly> = level.iter().filter(|p| p.degree_in(k) > 0).collect();
    for p in level.iter().filter(|p| p.degree_in(k) == 0) {
        out.push(p.clone());
    }
    for (a, p) in with_var.iter().enumerate() {
        out.push(p.lc_in(k));
        if p.degree_in(k) > 1 {
            out.push(resultant(p, &p.derivative_in(k), var)?);
        }
        for q in &with_var[a + 1..] {
            out.push(resultant(p, q, var)?);
        }
    }
    Ok(reduce_set(out))
}

/// One rational point in each open interval cut out by the real roots.
fn interleave(p: &UniPoly) -> Result<Vec<Rational>> {
    if p.is_constant() {
        return Ok(vec![Rational::zero()]);
    }
    let roots = p.squarefree_part()?.isolate_real_roots()?;
    if roots.is_empty() {
        return Ok(vec![Rational::zero()]);
    }
    let mut out = Vec::with_capacity(roots.len() + 1);
    out.push(&roots[0].lo - Rational::one());
    for w in roots.windows(2) {
        let (a, b) = (&w[0].hi, &w[1].lo);
        out.push(if a == b { a.clone() } else { (a + b) / rat_int(2) });
    }
    out.push(&roots[roots.len() - 1].hi + Rational::one());
    Ok(out)
}

/// Top-dimension sample points.
pub fn sample_points(cad: &CadTree) -> Vec<Vec<Rational>> {
    cad.samples.last().cloned().unwrap_or_default()
}
