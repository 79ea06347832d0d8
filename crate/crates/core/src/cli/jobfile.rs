//! Line-oriented job files:
//!
//! ```text
//! ring GF(65521)[x,y,z]
//! hypersurface X1 = y^2*z - x^2*z - x^3
//! ci X = [X1]            # ordered; last entry is the distinguished X_m
//! ideal P = [x, y]
//! ```

use std::path::Path;

use crate::classes::CompleteIntersection;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{is_valid_identifier, parse_poly, Field, Poly, PrimeField, Rationals, Ring};

#[derive(Clone, Debug)]
pub enum DeclKind<F: Field> {
    Hypersurface(Poly<F>),
    Ci(Vec<String>),
    Ideal(Vec<Poly<F>>),
}

#[derive(Clone, Debug)]
pub struct Decl<F: Field> {
    pub name: String,
    pub line: usize,
    pub kind: DeclKind<F>,
}

#[derive(Clone, Debug)]
pub struct JobSpec<F: Field> {
    pub ring: Ring<F>,
    pub decls: Vec<Decl<F>>,
}

/// A job over whichever field its ring line names.
#[derive(Clone, Debug)]
pub enum AnyJob {
    Rational(JobSpec<Rationals>),
    Prime(JobSpec<PrimeField>),
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_jobfile(path: &Path) -> Result<AnyJob> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_job(&text)
}

pub fn parse_job(text: &str) -> Result<AnyJob> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap()))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    let mut ring_line = None;
    for &(no, l) in &lines {
        if keyword(l) == "ring" {
            if ring_line.is_some() {
                return Err(err(no, indent(l) + 1, "ring declared more than once"));
            }
            ring_line = Some((no, l));
        }
    }
    let (no, l) = ring_line.ok_or_else(|| err(1, 1, "no ring declared"))?;
    let body = &l[indent(l) + 4..];
    let offset = indent(l) + 4 + indent(body);
    let body = body.trim();
    if let Some(rest) = body.strip_prefix("QQ") {
        let ring = parse_vars(Rationals, rest, no, offset + 2)?;
        Ok(AnyJob::Rational(parse_decls(ring, &lines)?))
    } else if let Some(rest) = body.strip_prefix("GF(") {
        let close = rest.find(')').ok_or_else(|| err(no, offset + 1, "expected `GF(p)`"))?;
        let p: u32 = rest[..close]
            .trim()
            .parse()
            .map_err(|_| err(no, offset + 4, "expected a prime"))?;
        let field = PrimeField::new(p).map_err(|e| err(no, offset + 4, e.to_string()))?;
        let ring = parse_vars(field, &rest[close + 1..], no, offset + 4 + close)?;
        Ok(AnyJob::Prime(parse_decls(ring, &lines)?))
    } else {
        Err(err(no, offset + 1, "expected `QQ[...]` or `GF(p)[...]`"))
    }
}

fn indent(s: &str) -> usize {
    s.len() - s.trim_start().len()
}

fn keyword(l: &str) -> &str {
    l.split_whitespace().next().unwrap_or("")
}

fn parse_vars<F: Field>(field: F, text: &str, line: usize, column: usize) -> Result<Ring<F>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| err(line, column + 1, "expected `[variables]`"))?;
    let vars: Vec<&str> = inner.split(',').map(str::trim).collect();
    Ring::grevlex(field, &vars).map_err(|e| err(line, column + 1, e.to_string()))
}

/// `[a, b, c]` split into items with their starting columns (1-based).
fn bracket_items(text: &str, line: usize, column: usize) -> Result<Vec<(usize, &str)>> {
    let start = indent(text);
    let t = text.trim_end();
    if !t[start..].starts_with('[') || !t.ends_with(']') {
        return Err(err(line, column + start, "expected `[...]`"));
    }
    let inner = &t[start + 1..t.len() - 1];
    let mut out = Vec::new();
    let mut pos = 0;
    for item in inner.split(',') {
        let col = column + start + 1 + pos + indent(item);
        pos += item.len() + 1;
        if item.trim().is_empty() {
            if inner.trim().is_empty() {
                break;
            }
            return Err(err(line, col, "empty list entry"));
        }
        out.push((col, item.trim()));
    }
    Ok(out)
}

fn parse_decls<F: Field>(ring: Ring<F>, lines: &[(usize, &str)]) -> Result<JobSpec<F>> {
    let mut decls: Vec<Decl<F>> = Vec::new();
    for &(no, l) in lines {
        let kw = keyword(l);
        if kw == "ring" {
            continue;
        }
        let kw_col = indent(l) + 1;
        if !matches!(kw, "hypersurface" | "ci" | "ideal") {
            return Err(err(no, kw_col, format!("unknown declaration `{kw}`")));
        }
        let after = &l[kw_col - 1 + kw.len()..];
        let eq = after.find('=').ok_or_else(|| err(no, kw_col, "expected `NAME = ...`"))?;
        let name = after[..eq].trim();
        let name_col = kw_col + kw.len() + indent(after);
        if !is_valid_identifier(name) {
            return Err(err(no, name_col, format!("invalid name `{name}`")));
        }
        if decls.iter().any(|d| d.name == name) {
            return Err(err(no, name_col, format!("`{name}` declared twice")));
        }
        if ring.var_index(name).is_some() {
            return Err(err(no, name_col, format!("`{name}` is a ring variable")));
        }
        let rhs = &after[eq + 1..];
        let rhs_col = kw_col + kw.len() + eq + 1;
        let poly = |text: &str, col: usize| parse_poly(text, &ring).map_err(|e| e.relocate(no, col - 1));
        let kind = match kw {
            "hypersurface" => {
                let p = poly(rhs, rhs_col)?;
                if p.is_zero() || !p.is_homogeneous() {
                    return Err(err(no, rhs_col + indent(rhs), "hypersurface must be a nonzero form"));
                }
                DeclKind::Hypersurface(p)
            }
            "ideal" => DeclKind::Ideal(
                bracket_items(rhs, no, rhs_col)?
                    .into_iter()
                    .map(|(c, t)| poly(t, c))
                    .collect::<Result<_>>()?,
            ),
            _ => {
                let mut names = Vec::new();
                for (c, t) in bracket_items(rhs, no, rhs_col)? {
                    match decls.iter().find(|d| d.name == t) {
                        Some(Decl {
                            kind: DeclKind::Hypersurface(_),
                            ..
                        }) => names.push(t.to_string()),
                        Some(_) => return Err(err(no, c, format!("`{t}` is not a hypersurface"))),
                        None => return Err(err(no, c, format!("undeclared name `{t}`"))),
                    }
                }
                if names.is_empty() {
                    return Err(err(no, rhs_col, "empty complete intersection"));
                }
                DeclKind::Ci(names)
            }
        };
        decls.push(Decl {
            name: name.to_string(),
            line: no,
            kind,
        });
    }
    Ok(JobSpec { ring, decls })
}

impl<F: Field> JobSpec<F> {
    fn find(&self, name: &str) -> Result<&Decl<F>> {
        self.decls
            .iter()
            .find(|d| d.name == name)
            .ok_or_else(|| err(1, 1, format!("undeclared name `{name}`")))
    }

    fn hypersurface(&self, name: &str) -> Poly<F> {
        match &self.find(name).expect("checked at parse time").kind {
            DeclKind::Hypersurface(p) => p.clone(),
            _ => unreachable!("checked at parse time"),
        }
    }

    /// Ideal of any declaration.
    pub fn ideal(&self, name: &str) -> Result<Ideal<F>> {
        let d = self.find(name)?;
        let gens = match &d.kind {
            DeclKind::Hypersurface(p) => vec![p.clone()],
            DeclKind::Ideal(gens) => gens.clone(),
            DeclKind::Ci(names) => names.iter().map(|n| self.hypersurface(n)).collect(),
        };
        Ideal::new(&self.ring, gens).map(|i| i.with_name(name))
    }

    /// A `ci` declaration, or a hypersurface read as one.
    pub fn ci(&self, name: &str) -> Result<CompleteIntersection<F>> {
        let d = self.find(name)?;
        let polys = match &d.kind {
            DeclKind::Hypersurface(p) => vec![p.clone()],
            DeclKind::Ci(names) => names.iter().map(|n| self.hypersurface(n)).collect(),
            DeclKind::Ideal(_) => {
                return Err(err(d.line, 1, format!("`{name}` is an ideal, not a complete intersection")))
            }
        };
        let ci = CompleteIntersection::new(&self.ring, polys)?.with_name(name);
        ci.check_codimension()?;
        Ok(ci)
    }

    /// Last `ci`, else last hypersurface.
    pub fn default_ci(&self) -> Result<String> {
        self.last(|k| matches!(k, DeclKind::Ci(_)))
            .or_else(|| self.last(|k| matches!(k, DeclKind::Hypersurface(_))))
            .ok_or_else(|| err(1, 1, "no complete intersection declared"))
    }

    /// Last ideal, else the default complete intersection.
    pub fn default_ideal(&self) -> Result<String> {
        match self.last(|k| matches!(k, DeclKind::Ideal(_))) {
            Some(n) => Ok(n),
            None => self.default_ci(),
        }
    }

    fn last(&self, pred: impl Fn(&DeclKind<F>) -> bool) -> Option<String> {
        self.decls.iter().rev().find(|d| pred(&d.kind)).map(|d| d.name.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(text: &str) -> Result<AnyJob> {
        parse_job(text)
    }

    fn position(e: Error) -> (usize, usize) {
        match e {
            Error::Parse { line, column, .. } | Error::UnknownVariable { line, column, .. } => (line, column),
            other => panic!("not a positioned error: {other}"),
        }
    }

    #[test]
    fn minimal_file() {
        let j = job("ring GF(65521)[x,y,z]\nhypersurface X1 = y^2*z - x^2*z - x^3\nci X = [X1]   # comment\n").unwrap();
        let AnyJob::Prime(j) = j else { panic!() };
        assert_eq!(j.default_ci().unwrap(), "X");
        assert_eq!(j.ci("X").unwrap().degrees(), vec![3]);
        let j = job("ring QQ[x,y,z]\nideal P = [x, y]\n").unwrap();
        let AnyJob::Rational(j) = j else { panic!() };
        assert_eq!(j.ideal(&j.default_ideal().unwrap()).unwrap().generators().len(), 2);
    }

    #[test]
    fn undeclared_name_at_use_site() {
        let e = job("ring QQ[x,y,z]\nhypersurface A = x\nci X = [A, B]\n").unwrap_err();
        assert_eq!(position(e), (3, 12));
    }

    #[test]
    fn duplicate_ring() {
        let e = job("ring QQ[x,y]\nring QQ[x,y]\n").unwrap_err();
        assert_eq!(position(e).0, 2);
    }

    #[test]
    fn diagnostics_carry_positions() {
        assert_eq!(position(job("ring QQ[x,y,z]\nhypersurface A = x + q\n").unwrap_err()), (2, 22));
        assert_eq!(position(job("ring QQ[x,y,z]\nhypersurface A = x + 1\n").unwrap_err()).0, 2);
        assert_eq!(position(job("ring QQ[x,y,z]\nwidget A = x\n").unwrap_err()), (2, 1));
        assert_eq!(position(job("hypersurface A = x\n").unwrap_err()).0, 1);
        assert!(job("ring GF(12)[x]\n").is_err());
        assert_eq!(position(job("ring QQ[x,y]\nideal I = [x, y]\nideal I = [x]\n").unwrap_err()), (3, 7));
    }
}
