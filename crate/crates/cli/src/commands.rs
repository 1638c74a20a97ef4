use std::fmt::Write as _;

use certipoly::{
    compute_rur, discriminant_variety, hinf_norm, identify_parameters, interval_newton, open_cad, parse_rational,
    separating_element, solve, stability_2d, stability_parametric, unit_disk_stability_1d, Candidate, MonomialOrder,
    MultiPoly, OdeModel, Rational, StabilityVerdict, TimeSeries, DEFAULT_PRECISION,
};
use num_traits::ToPrimitive;

use crate::json::*;
use crate::{CliError, SystemFile};

type Out<T> = Result<T, CliError>;

fn unsupported(msg: impl Into<String>) -> CliError {
    CliError::Unsupported(msg.into())
}

fn no_params(sf: &SystemFile, cmd: &str) -> Out<()> {
    if sf.params.is_empty() {
        Ok(())
    } else {
        Err(unsupported(format!("{cmd} takes no parameters; use dv, cad or stability --parametric")))
    }
}

fn over_vars(sf: &SystemFile) -> Vec<MultiPoly> {
    sf.eqs.iter().map(|p| p.with_vars(&sf.vars)).collect()
}

pub fn cmd_solve(sf: &SystemFile, precision: Option<u32>) -> Out<Vec<Vec<Coordinate>>> {
    no_params(sf, "solve")?;
    let prec = precision.or(sf.precision).unwrap_or(DEFAULT_PRECISION);
    let (rur, boxes) = solve(&over_vars(sf), prec)?;
    Ok(boxes.iter().map(|b| solution(&rur.vars, b)).collect())
}

pub fn cmd_rur(sf: &SystemFile) -> Out<RurOut> {
    no_params(sf, "rur")?;
    let gb = certipoly::buchberger(&over_vars(sf), MonomialOrder::DegRevLex);
    let sep = separating_element(&gb)?;
    let rur = compute_rur(&gb, &sep)?;
    Ok(RurOut {
        vars: rur.vars.clone(),
        separating_form: rationals(&rur.sep),
        f_t: rur.f_t.to_string_with("T"),
        f_bar: rur.f_bar.to_string_with("T"),
        denominator: rur.f_bar.derivative().to_string_with("T"),
        coords: rur
            .vars
            .iter()
            .zip(&rur.coords)
            .map(|(v, p)| NamedPoly {
                var: v.clone(),
                poly: p.to_string_with("T"),
            })
            .collect(),
    })
}

pub fn cmd_dv(sf: &SystemFile) -> Out<DvOut> {
    let dv = discriminant_variety(&sf.eqs, &sf.vars, &sf.params)?;
    Ok(DvOut {
        params: dv.params.clone(),
        polys: dv.polys.iter().map(|p| p.to_text()).collect(),
    })
}

pub fn cmd_cad(sf: &SystemFile) -> Out<CadOut> {
    if !sf.vars.is_empty() {
        return Err(unsupported("cad works on parameters only; declare them under params"));
    }
    let polys: Vec<MultiPoly> = sf.eqs.iter().map(|p| p.with_vars(&sf.params)).collect();
    let cad = open_cad(&polys, &sf.params)?;
    Ok(CadOut {
        params: cad.params.clone(),
        projections: cad.projections.iter().map(|l| l.iter().map(|p| p.to_text()).collect()).collect(),
        samples: certipoly::sample_points(&cad).iter().map(|p| rationals(p)).collect(),
    })
}

fn denominator(sf: &SystemFile) -> Out<&MultiPoly> {
    match sf.eqs.as_slice() {
        [d] => Ok(d),
        _ => Err(unsupported("stability expects exactly one polynomial D under eqs")),
    }
}

pub fn cmd_stability(sf: &SystemFile) -> Out<StabilityOut> {
    no_params(sf, "stability without --parametric")?;
    let d = denominator(sf)?.with_vars(&sf.vars);
    let stable = match sf.vars.len() {
        1 => unit_disk_stability_1d(&d.to_unipoly_in(0))?,
        2 => stability_2d(&d, &sf.vars)?,
        n => return Err(unsupported(format!("stability handles 1 or 2 variables, got {n}"))),
    };
    Ok(StabilityOut { stable })
}

pub fn cmd_stability_parametric(sf: &SystemFile) -> Out<(ParametricOut, StabilityVerdict)> {
    if sf.params.is_empty() {
        return Err(unsupported("--parametric needs params"));
    }
    let d = denominator(sf)?;
    let v = stability_parametric(d, &sf.vars, &sf.params)?;
    let out = ParametricOut {
        params: v.params.clone(),
        stable: v.stable_points().into_iter().map(rationals).collect(),
        unstable: v.unstable_points().into_iter().map(rationals).collect(),
    };
    Ok((out, v))
}

/// One line per sample: parameter values then `stable` or `unstable`.
pub fn plot_data(v: &StabilityVerdict) -> String {
    let mut s = format!("# {} verdict\n", v.params.join(" "));
    for c in &v.cells {
        for q in &c.point {
            let _ = write!(s, "{} ", q.to_f64().unwrap_or(f64::NAN));
        }
        s.push_str(if c.stable { "stable\n" } else { "unstable\n" });
    }
    s
}

pub fn cmd_hinf(sf: &SystemFile, starting_precision: Option<u32>) -> Out<HinfOut> {
    let g = sf.matrix.as_ref().ok_or_else(|| unsupported("hinf needs a matrix: section"))?;
    let iv = hinf_norm(g, starting_precision.or(sf.precision))?;
    Ok(HinfOut { hinf: Interval::new(&iv) })
}

pub fn parse_point(text: &str) -> Out<Vec<Rational>> {
    text.split(',')
        .map(|c| parse_rational(c.trim()).ok_or_else(|| CliError::Parse(format!("bad coordinate {c:?}"))))
        .collect()
}

pub fn cmd_refine(sf: &SystemFile, point: &[Rational], precision: Option<u32>) -> Out<Refined> {
    no_params(sf, "refine")?;
    if point.len() != sf.vars.len() {
        return Err(unsupported(format!("point has {} coordinates, system has {} variables", point.len(), sf.vars.len())));
    }
    let prec = precision.or(sf.precision).unwrap_or(DEFAULT_PRECISION);
    let b = interval_newton(&over_vars(sf), point, prec)?;
    Ok(Refined {
        certified: b.certified,
        coords: solution(&sf.vars, &b),
    })
}

fn candidate(c: &Candidate) -> CandidateOut {
    let split = |v: &[(String, certipoly::MPInterval)]| {
        let (n, i): (Vec<String>, Vec<_>) = v.iter().cloned().unzip();
        coordinates(&n, &i)
    };
    CandidateOut {
        params: split(&c.params),
        initial_state: split(&c.initial_state),
        residual: c.residual,
        nonnegative: c.is_nonnegative(),
    }
}

pub fn cmd_identify(sf: &SystemFile) -> Out<IdentifyOut> {
    let output = sf.output.clone().ok_or_else(|| unsupported("identify needs an output: header"))?;
    let mut dynamics = Vec::with_capacity(sf.vars.len());
    for x in &sf.vars {
        let f = sf
            .dynamics
            .iter()
            .find(|(s, _)| s == x)
            .ok_or_else(|| unsupported(format!("no dynamics for {x}")))?;
        dynamics.push(f.1.clone());
    }
    let model = OdeModel::new(sf.vars.clone(), sf.params.clone(), dynamics, output)?;
    let h = sf.h.unwrap_or_else(|| model.square_order());
    let t0 = sf.t0.clone().unwrap_or_default();
    let cands = identify_parameters(&model, &TimeSeries::new(sf.data.clone()), h, &t0)?;
    Ok(IdentifyOut {
        candidates: cands.iter().map(candidate).collect(),
    })
}
