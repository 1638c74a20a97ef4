//! The plain-text system file read by every subcommand.
//!
//! ```text
//! # toy system
//! vars: x, y
//! params: u
//! precision: 64
//! eqs:
//! x^2 - 2
//! y^2 - u
//! ```
//!
//! Headers take a value on the same line (`vars`, `params`, `precision`,
//! `h`, `t0`, `var`, `output`). Sections (`eqs`, `data`, `matrix`,
//! `dynamics`) take the following lines until the next header or section.

use std::fmt;

use certipoly::{parse_poly, parse_rational, MultiPoly, Rational, RationalMatrix, UniPoly};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SystemFile {
    pub vars: Vec<String>,
    pub params: Vec<String>,
    pub precision: Option<u32>,
    /// Prolongation order for identification.
    pub h: Option<usize>,
    pub t0: Option<Rational>,
    /// Variable of the transfer matrix, `s` when absent.
    pub var: Option<String>,
    pub output: Option<MultiPoly>,
    pub eqs: Vec<MultiPoly>,
    /// `x' = f` lines, in file order.
    pub dynamics: Vec<(String, MultiPoly)>,
    /// `t y` samples.
    pub data: Vec<(Rational, Rational)>,
    pub matrix: Option<RationalMatrix>,
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Eqs,
    Data,
    Matrix,
    Dynamics,
}

fn perr(line: usize, msg: impl fmt::Display) -> CliError {
    CliError::Parse(format!("line {line}: {msg}"))
}

fn names(value: &str, line: usize) -> Result<Vec<String>, CliError> {
    let out: Vec<String> = value.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    for n in &out {
        let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(perr(line, format!("bad identifier {n:?}")));
        }
    }
    Ok(out)
}

fn number<T: std::str::FromStr>(value: &str, line: usize, key: &str) -> Result<T, CliError> {
    value.parse().map_err(|_| perr(line, format!("{key} expects a nonnegative integer")))
}

impl SystemFile {
    /// Variables followed by parameters.
    pub fn ring(&self) -> Vec<String> {
        self.vars.iter().chain(&self.params).cloned().collect()
    }

    pub fn transfer_var(&self) -> &str {
        self.var.as_deref().unwrap_or("s")
    }

    pub fn parse(text: &str) -> Result<SystemFile, CliError> {
        let mut sf = SystemFile::default();
        let mut section = Section::None;
        let mut eqs = Vec::new();
        let mut dynamics = Vec::new();
        let mut matrix = Vec::new();
        let mut output = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            if let Some((key, value)) = body.split_once(':') {
                let key = key.trim();
                let value = value.trim();
                let next = match key {
                    "eqs" => Some(Section::Eqs),
                    "data" => Some(Section::Data),
                    "matrix" => Some(Section::Matrix),
                    "dynamics" => Some(Section::Dynamics),
                    _ => None,
                };
                if let Some(next) = next {
                    if !value.is_empty() {
                        return Err(perr(line, format!("section {key}: takes its entries on the following lines")));
                    }
                    section = next;
                    continue;
                }
                section = Section::None;
                match key {
                    "vars" => sf.vars = names(value, line)?,
                    "params" => sf.params = names(value, line)?,
                    "precision" => sf.precision = Some(number(value, line, key)?),
                    "h" => sf.h = Some(number(value, line, key)?),
                    "t0" => {
                        sf.t0 = Some(parse_rational(value).ok_or_else(|| perr(line, "t0 expects a rational"))?)
                    }
                    "var" => {
                        let mut v = names(value, line)?;
                        if v.len() != 1 {
                            return Err(perr(line, "var expects one name"));
                        }
                        sf.var = v.pop();
                    }
                    "output" => output = Some((line, value.to_string())),
                    _ => return Err(perr(line, format!("unknown header {key:?}"))),
                }
                continue;
            }
            match section {
                Section::None => return Err(perr(line, "text outside any section")),
                Section::Eqs => eqs.push((line, body.to_string())),
                Section::Dynamics => dynamics.push((line, body.to_string())),
                Section::Matrix => matrix.push((line, body.to_string())),
                Section::Data => {
                    let cols: Vec<&str> = body.split_whitespace().collect();
                    let vals: Option<Vec<Rational>> = cols.iter().map(|c| parse_rational(c)).collect();
                    match vals.as_deref() {
                        Some([t, y]) => sf.data.push((t.clone(), y.clone())),
                        _ => return Err(perr(line, "data rows are `t y` with rational entries")),
                    }
                }
            }
        }
        let ring = sf.ring();
        let mut seen = std::collections::BTreeSet::new();
        for n in &ring {
            if !seen.insert(n) {
                return Err(CliError::Parse(format!("{n} declared twice")));
            }
        }
        let poly = |line: usize, s: &str| parse_poly(s, &ring).map_err(|e| perr(line, e));
        sf.eqs = eqs.iter().map(|(l, s)| poly(*l, s)).collect::<Result<_, _>>()?;
        if let Some((l, s)) = output {
            sf.output = Some(poly(l, &s)?);
        }
        for (l, s) in dynamics {
            let (lhs, rhs) = s.split_once('=').ok_or_else(|| perr(l, "dynamics lines read `x' = f`"))?;
            let state = lhs.trim().strip_suffix('\'').ok_or_else(|| perr(l, "left side must be `x'`"))?.trim();
            if !sf.vars.iter().any(|v| v == state) {
                return Err(perr(l, format!("{state} is not a declared variable")));
            }
            sf.dynamics.push((state.to_string(), poly(l, rhs)?));
        }
        if !matrix.is_empty() {
            let rows: Vec<Vec<String>> = matrix
                .iter()
                .map(|(_, r)| r.split(',').map(|e| e.trim().to_string()).collect())
                .collect();
            let first = matrix[0].0;
            sf.matrix = Some(RationalMatrix::parse(&rows, sf.transfer_var()).map_err(|e| perr(first, e))?);
        }
        Ok(sf)
    }
}

fn rational_function(n: &UniPoly, d: &UniPoly, var: &str) -> String {
    if d.is_constant() && d.lc() == Rational::from_integer(1.into()) {
        return format!("({})", n.to_string_with(var));
    }
    format!("({})/({})", n.to_string_with(var), d.to_string_with(var))
}

/// Prints a file that parses back to the same content.
impl fmt::Display for SystemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.vars.is_empty() {
            writeln!(f, "vars: {}", self.vars.join(", "))?;
        }
        if !self.params.is_empty() {
            writeln!(f, "params: {}", self.params.join(", "))?;
        }
        if let Some(p) = self.precision {
            writeln!(f, "precision: {p}")?;
        }
        if let Some(h) = self.h {
            writeln!(f, "h: {h}")?;
        }
        if let Some(t0) = &self.t0 {
            writeln!(f, "t0: {t0}")?;
        }
        if let Some(v) = &self.var {
            writeln!(f, "var: {v}")?;
        }
        if let Some(o) = &self.output {
            writeln!(f, "output: {}", o.to_text())?;
        }
        if !self.eqs.is_empty() {
            writeln!(f, "eqs:")?;
            for e in &self.eqs {
                writeln!(f, "{}", e.to_text())?;
            }
        }
        if !self.dynamics.is_empty() {
            writeln!(f, "dynamics:")?;
            for (x, rhs) in &self.dynamics {
                writeln!(f, "{x}' = {}", rhs.to_text())?;
            }
        }
        if !self.data.is_empty() {
            writeln!(f, "data:")?;
            for (t, y) in &self.data {
                writeln!(f, "{t} {y}")?;
            }
        }
        if let Some(m) = &self.matrix {
            writeln!(f, "matrix:")?;
            let var = self.transfer_var();
            for i in 0..m.rows() {
                let row: Vec<String> = (0..m.cols())
                    .map(|j| {
                        let (n, d) = m.entry(i, j);
                        rational_function(n, d, var)
                    })
                    .collect();
                writeln!(f, "{}", row.join(", "))?;
            }
        }
        Ok(())
    }
}
