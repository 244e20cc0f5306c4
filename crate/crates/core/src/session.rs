//! Session files: a ring declaration followed by named derivations, maps and
//! polynomials.
//!
//! ```text
//! # comment
//! ring Q[X,Y,Z]
//! order grlex
//! relation X^2*Y + X + Z^2
//! derivation D1 { Y -> 2*Z ; Z -> -X^2 }
//! auto U { X -> X + 1 }
//! poly f = Z
//! ```
//!
//! `ring` comes first; `order` and `relation` must precede every named item. Blocks
//! may span several lines; every other statement ends at its line break.

use std::collections::HashSet;
use std::sync::Arc;

use crate::algebra::{is_identifier, parse_poly, MonomialOrder, Poly, RingSpec};
use crate::derivations::Derivation;
use crate::error::{Error, Result};
use crate::expmap::PolyAuto;

#[derive(Debug, Clone)]
pub struct Session {
    pub ring: Arc<RingSpec>,
    pub derivations: Vec<(String, Derivation)>,
    pub autos: Vec<(String, PolyAuto)>,
    pub polys: Vec<(String, Poly)>,
}

fn lookup<'a, T>(items: &'a [(String, T)], name: &str) -> Result<&'a T> {
    items
        .iter()
        .find(|(n, _)| n == name)
        .map(|(_, v)| v)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

impl Session {
    pub fn derivation(&self, name: &str) -> Result<&Derivation> {
        lookup(&self.derivations, name)
    }

    pub fn auto(&self, name: &str) -> Result<&PolyAuto> {
        lookup(&self.autos, name)
    }

    /// A named polynomial, or failing that an expression parsed in the session ring.
    pub fn poly_or_expr(&self, text: &str) -> Result<Poly> {
        match lookup(&self.polys, text) {
            Ok(p) => Ok(p.clone()),
            Err(_) => parse_poly(text, &self.ring),
        }
    }

    pub fn parse(text: &str) -> Result<Session> {
        Parser::new(text).run()
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn at_line(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Session { .. } => e,
        other => Error::Session {
            line,
            msg: other.to_string(),
        },
    }
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn line(&self) -> usize {
        self.src[..self.pos].matches('\n').count() + 1
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Session {
            line: self.line(),
            msg: msg.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    /// Skip whitespace (including newlines) and comments.
    fn skip_blank(&mut self) {
        loop {
            let r = self.rest();
            let t = r.trim_start();
            self.pos += r.len() - t.len();
            if t.starts_with('#') {
                self.pos += t.find('\n').unwrap_or(t.len());
            } else {
                break;
            }
        }
    }

    fn word(&mut self) -> Option<&'a str> {
        let r = self.rest();
        let end = r
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(r.len());
        if end == 0 {
            return None;
        }
        self.pos += end;
        Some(&r[..end])
    }

    /// Remainder of the current line without its comment, trimmed.
    fn line_text(&mut self) -> &'a str {
        let r = self.rest();
        let end = r.find('\n').unwrap_or(r.len());
        self.pos += end;
        let line = &r[..end];
        line.split('#').next().unwrap().trim()
    }

    /// Contents between `{` and the matching `}` with comments removed.
    fn block(&mut self) -> Result<String> {
        self.skip_blank();
        if !self.rest().starts_with('{') {
            return self.fail("expected `{`");
        }
        self.pos += 1;
        let mut body = String::new();
        loop {
            let r = self.rest();
            let Some(c) = r.chars().next() else {
                return self.fail("unterminated block: missing `}`");
            };
            match c {
                '}' => {
                    self.pos += 1;
                    return Ok(body);
                }
                '{' => return self.fail("nested `{` inside a block"),
                '#' => {
                    self.pos += r.find('\n').unwrap_or(r.len());
                }
                _ => {
                    body.push(c);
                    self.pos += c.len_utf8();
                }
            }
        }
    }

    fn name(&mut self, seen: &mut HashSet<String>) -> Result<String> {
        self.skip_blank();
        let Some(name) = self.word() else {
            return self.fail("expected a name");
        };
        if !is_identifier(name) {
            return self.fail(format!("`{name}` is not a valid name"));
        }
        if !seen.insert(name.to_string()) {
            return self.fail(format!("name `{name}` defined twice"));
        }
        Ok(name.to_string())
    }

    fn ring_decl(&mut self) -> Result<Vec<String>> {
        let text = self.line_text();
        let inner = text
            .strip_prefix("Q[")
            .and_then(|t| t.strip_suffix(']'))
            .map(str::trim);
        let Some(inner) = inner else {
            return self.fail(format!("expected `Q[vars]`, got `{text}`"));
        };
        if inner.is_empty() {
            return self.fail("ring needs at least one variable");
        }
        Ok(inner.split(',').map(|v| v.trim().to_string()).collect())
    }

    fn assignments(
        &self,
        body: &str,
        ring: &Arc<RingSpec>,
        line: usize,
    ) -> Result<Vec<(String, Poly)>> {
        let mut out: Vec<(String, Poly)> = Vec::new();
        for item in body.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let Some((var, expr)) = item.split_once("->") else {
                return Err(Error::Session {
                    line,
                    msg: format!("expected `VAR -> expr`, got `{item}`"),
                });
            };
            let var = var.trim();
            if ring.var_index(var).is_none() {
                return Err(Error::Session {
                    line,
                    msg: format!("`{var}` is not a ring variable"),
                });
            }
            if out.iter().any(|(v, _)| v == var) {
                return Err(Error::Session {
                    line,
                    msg: format!("variable `{var}` assigned twice"),
                });
            }
            let p = parse_poly(expr.trim(), ring).map_err(at_line(line))?;
            out.push((var.to_string(), p));
        }
        Ok(out)
    }

    fn run(mut self) -> Result<Session> {
        self.skip_blank();
        match self.word() {
            Some("ring") => {}
            _ => return self.fail("session must start with `ring Q[...]`"),
        }
        self.skip_blank();
        let vars = self.ring_decl()?;
        let mut order = MonomialOrder::default();
        let mut relation: Option<(usize, String)> = None;
        let mut ring: Option<Arc<RingSpec>> = None;
        let mut seen = HashSet::new();
        let mut session = Session {
            ring: RingSpec::free(&vars, order).map_err(at_line(1))?,
            derivations: Vec::new(),
            autos: Vec::new(),
            polys: Vec::new(),
        };

        loop {
            self.skip_blank();
            if self.rest().is_empty() {
                break;
            }
            let line = self.line();
            let Some(kw) = self.word() else {
                return self.fail(format!(
                    "unexpected `{}`",
                    self.rest().chars().next().unwrap()
                ));
            };
            let header = matches!(kw, "order" | "relation");
            if header && ring.is_some() {
                return self.fail(format!("`{kw}` must come before named items"));
            }
            match kw {
                "order" => {
                    let name = self.line_text();
                    order = MonomialOrder::from_name(name).ok_or_else(|| Error::Session {
                        line,
                        msg: format!("unknown monomial order `{name}`"),
                    })?;
                }
                "relation" => {
                    if relation.is_some() {
                        return self.fail("at most one relation is allowed");
                    }
                    relation = Some((line, self.line_text().to_string()));
                }
                "derivation" | "auto" | "poly" => {
                    let r = match &ring {
                        Some(r) => r.clone(),
                        None => {
                            let built = build_ring(&vars, order, relation.as_ref())?;
                            ring = Some(built.clone());
                            built
                        }
                    };
                    let name = self.name(&mut seen)?;
                    match kw {
                        "poly" => {
                            self.skip_blank();
                            if !self.rest().starts_with('=') {
                                return self.fail("expected `=` after the polynomial name");
                            }
                            self.pos += 1;
                            let expr = self.line_text();
                            let p = parse_poly(expr, &r).map_err(at_line(line))?;
                            session.polys.push((name, p));
                        }
                        "derivation" => {
                            let body = self.block()?;
                            let pairs = self.assignments(&body, &r, line)?;
                            let refs: Vec<(&str, Poly)> =
                                pairs.iter().map(|(v, p)| (v.as_str(), p.clone())).collect();
                            let d = Derivation::from_named(&r, &refs).map_err(at_line(line))?;
                            session.derivations.push((name, d));
                        }
                        _ => {
                            let body = self.block()?;
                            let pairs = self.assignments(&body, &r, line)?;
                            let refs: Vec<(&str, Poly)> =
                                pairs.iter().map(|(v, p)| (v.as_str(), p.clone())).collect();
                            let u = PolyAuto::from_named(&r, &refs).map_err(at_line(line))?;
                            session.autos.push((name, u));
                        }
                    }
                }
                other => return self.fail(format!("unknown statement `{other}`")),
            }
        }
        session.ring = match ring {
            Some(r) => r,
            None => build_ring(&vars, order, relation.as_ref())?,
        };
        Ok(session)
    }
}

fn build_ring(
    vars: &[String],
    order: MonomialOrder,
    relation: Option<&(usize, String)>,
) -> Result<Arc<RingSpec>> {
    let free = RingSpec::free(vars, order).map_err(at_line(1))?;
    match relation {
        None => Ok(free),
        Some((line, text)) => {
            let p = parse_poly(text, &free).map_err(at_line(*line))?;
            free.with_relation(&p).map_err(at_line(*line))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_statement_kinds() {
        let s = Session::parse(
            "# demo\nring Q[X, Y, Z]\norder lex\nrelation X*Y - 1 # units\n\
             derivation D { X -> X ;\n  Y -> -Y }\nauto U { Z -> Z + 1 }\npoly f = X + Z\n",
        )
        .unwrap();
        assert_eq!(s.ring.order(), MonomialOrder::Lex);
        assert!(s.ring.has_relation());
        assert_eq!(
            s.derivation("D").unwrap().to_string(),
            "{ X -> X ; Y -> -Y }"
        );
        assert_eq!(s.auto("U").unwrap().image(2).to_string(), "Z + 1");
        assert_eq!(s.poly_or_expr("f").unwrap().to_string(), "X + Z");
        assert_eq!(s.poly_or_expr("Y^2").unwrap().to_string(), "Y^2");
    }

    fn err_line(text: &str) -> usize {
        match Session::parse(text) {
            Err(Error::Session { line, .. }) => line,
            other => panic!("expected a session error, got {other:?}"),
        }
    }

    #[test]
    fn reports_lines() {
        assert_eq!(err_line("ring Q[X]\npoly f = X +\n"), 2);
        assert_eq!(err_line("ring Q[X]\npoly f = X\npoly f = 1\n"), 3);
        assert_eq!(err_line("ring Q[X]\nderivation D { W -> 1 }"), 2);
        assert_eq!(err_line("ring Q[X]\nderivation D { X -> 1 "), 2);
        assert_eq!(err_line("ring Q[X]\npoly f = X\norder lex"), 3);
        assert_eq!(err_line("ring Q[X]\nrelation X\nrelation X"), 3);
        assert_eq!(err_line("poly f = 1"), 1);
        assert_eq!(err_line("ring Q[X]\nfoo"), 2);
        assert_eq!(err_line("ring Q[X,X]"), 1);
    }

    #[test]
    fn quotient_condition_is_enforced() {
        let text = "ring Q[X,Y]\nrelation X*Y - 1\nderivation D { X -> 1 }\n";
        assert_eq!(err_line(text), 3);
    }

    #[test]
    fn unknown_names() {
        let s = Session::parse("ring Q[X]").unwrap();
        assert!(matches!(s.derivation("D"), Err(Error::UnknownName(_))));
    }
}
