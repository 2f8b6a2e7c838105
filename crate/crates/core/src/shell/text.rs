//! Line-oriented map format.
//!
//! ```text
//! # comment
//! vars x y
//! meta source = handwritten
//! let t = x*y - 1
//! poly p = x + t^2
//! poly q = 3/2*y
//! ```
//!
//! `let` names are expanded at parse time and are not kept in the document.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::document::MapDocument;
use crate::error::{Error, ParseErrorKind, Result};
use crate::{Poly, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Eq,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    col: usize,
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> Error {
    Error::Parse { line, column, kind }
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> Error {
    err(line, column, ParseErrorKind::Syntax(msg.into()))
}

fn lex(line: usize, text: &str, col0: usize) -> Result<(Vec<Spanned>, usize)> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Spanned { tok, col });
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: BigInt = chars[start..i].iter().collect::<String>().parse().expect("digits");
            let mut value = Rational::from_integer(num);
            if i < chars.len() && chars[i] == '/' {
                let dstart = i + 1;
                let mut j = dstart;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == dstart {
                    return Err(syntax(line, col0 + i, "`/` must be followed by a denominator"));
                }
                let den: BigInt = chars[dstart..j].iter().collect::<String>().parse().expect("digits");
                if den.is_zero() {
                    return Err(syntax(line, col0 + dstart, "zero denominator"));
                }
                value /= Rational::from_integer(den);
                i = j;
            }
            out.push(Spanned { tok: Tok::Num(value), col });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Spanned {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
        } else {
            return Err(err(line, col, ParseErrorKind::Lexical(c)));
        }
    }
    Ok((out, col0 + chars.len()))
}

struct ExprParser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    line: usize,
    end_col: usize,
    vars: &'a [String],
    lets: &'a BTreeMap<String, Poly>,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |s| s.col)
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let col = self.col();
            match self.peek().cloned() {
                Some(Tok::Minus) => return Err(err(self.line, col, ParseErrorKind::NegativeExponent)),
                Some(Tok::Num(e)) if e.is_integer() => {
                    self.pos += 1;
                    let e = u32::try_from(e.to_integer())
                        .map_err(|_| syntax(self.line, col, "exponent too large"))?;
                    if let Some(Tok::Caret) = self.peek() {
                        return Err(syntax(self.line, self.col(), "chained exponents need parentheses"));
                    }
                    return Ok(base.pow(e));
                }
                _ => return Err(syntax(self.line, col, "exponent must be a nonnegative integer")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let n = self.vars.len();
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(c)) => {
                self.pos += 1;
                Ok(Poly::constant(n, c))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    Ok(Poly::var(n, i))
                } else if let Some(p) = self.lets.get(&name) {
                    Ok(p.clone())
                } else {
                    Err(err(self.line, col, ParseErrorKind::UndeclaredVariable(name)))
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(syntax(self.line, self.col(), "expected `)`")),
                }
            }
            Some(t) => Err(syntax(self.line, col, format!("unexpected {}", describe(&t)))),
            None => Err(syntax(self.line, col, "unexpected end of line")),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(c) => format!("number `{c}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Eq => "`=`".into(),
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_') && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Parses `name = expr` after a `poly`/`let` keyword.
fn parse_binding(
    line: usize,
    rest: &str,
    col0: usize,
    vars: &[String],
    lets: &BTreeMap<String, Poly>,
) -> Result<(String, Poly)> {
    let (toks, end_col) = lex(line, rest, col0)?;
    let name = match toks.first() {
        Some(Spanned { tok: Tok::Ident(s), .. }) => s.clone(),
        Some(s) => return Err(syntax(line, s.col, "expected a name")),
        None => return Err(syntax(line, end_col, "expected a name")),
    };
    match toks.get(1) {
        Some(Spanned { tok: Tok::Eq, .. }) => {}
        Some(s) => return Err(syntax(line, s.col, "expected `=`")),
        None => return Err(syntax(line, end_col, "expected `=`")),
    }
    let mut p = ExprParser {
        toks: &toks[2..],
        pos: 0,
        line,
        end_col,
        vars,
        lets,
    };
    let value = p.expr()?;
    if p.pos < p.toks.len() {
        let t = &p.toks[p.pos];
        return Err(syntax(line, t.col, format!("unexpected {}", describe(&t.tok))));
    }
    Ok((name, value))
}

/// Parses a single expression over the given variable names.
pub fn parse_poly(text: &str, vars: &[String]) -> Result<Poly> {
    let (toks, end_col) = lex(1, text, 1)?;
    let lets = BTreeMap::new();
    let mut p = ExprParser {
        toks: &toks,
        pos: 0,
        line: 1,
        end_col,
        vars,
        lets: &lets,
    };
    let value = p.expr()?;
    if let Some(t) = p.toks.get(p.pos) {
        return Err(syntax(1, t.col, format!("unexpected {}", describe(&t.tok))));
    }
    Ok(value)
}

/// Parses a document in the line format.
pub fn parse_map(text: &str) -> Result<MapDocument> {
    let mut vars: Option<Vec<String>> = None;
    let mut lets: BTreeMap<String, Poly> = BTreeMap::new();
    let mut components: Vec<(String, Poly)> = Vec::new();
    let mut metadata = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = content.chars().count() - trimmed.chars().count();
        let keyword: String = trimmed.chars().take_while(|c| !c.is_whitespace()).collect();
        let kw_len = keyword.chars().count();
        let rest: String = trimmed.chars().skip(kw_len).collect();
        let rest_col = indent + kw_len + 1;
        match keyword.as_str() {
            "vars" => {
                if vars.is_some() {
                    return Err(syntax(line, indent + 1, "`vars` declared twice"));
                }
                let mut names: Vec<String> = Vec::new();
                let mut col = rest_col;
                for piece in rest.split(' ') {
                    if !piece.is_empty() {
                        if !is_ident(piece) {
                            return Err(syntax(line, col, format!("`{piece}` is not a variable name")));
                        }
                        if names.iter().any(|n| n == piece) {
                            return Err(err(line, col, ParseErrorKind::Duplicate(piece.to_string())));
                        }
                        names.push(piece.to_string());
                    }
                    col += piece.chars().count() + 1;
                }
                vars = Some(names);
            }
            "meta" => {
                let Some((key, value)) = rest.split_once('=') else {
                    return Err(syntax(line, rest_col, "expected `meta key = value`"));
                };
                let key = key.trim();
                if !is_ident(key) {
                    return Err(syntax(line, rest_col, "metadata key must be an identifier"));
                }
                if metadata.insert(key.to_string(), value.trim().to_string()).is_some() {
                    return Err(err(line, rest_col, ParseErrorKind::Duplicate(key.to_string())));
                }
            }
            "poly" | "let" => {
                let Some(vs) = vars.as_deref() else {
                    return Err(syntax(line, indent + 1, "`vars` must come first"));
                };
                let (name, value) = parse_binding(line, &rest, rest_col, vs, &lets)?;
                if keyword == "let" {
                    if vs.contains(&name) || lets.insert(name.clone(), value).is_some() {
                        return Err(err(line, rest_col, ParseErrorKind::Duplicate(name)));
                    }
                } else {
                    if components.iter().any(|(n, _)| *n == name) {
                        return Err(err(line, rest_col, ParseErrorKind::Duplicate(name)));
                    }
                    components.push((name, value));
                }
            }
            other => {
                return Err(syntax(line, indent + 1, format!("unknown statement `{other}`")));
            }
        }
    }
    let vars = vars.ok_or_else(|| syntax(1, 1, "missing `vars` line"))?;
    MapDocument::new(vars, components, metadata)
}

fn print_coeff_abs(c: &Rational) -> String {
    c.abs().to_string()
}

/// Canonical text of one polynomial: graded-lex descending terms.
pub fn print_poly(p: &Poly, vars: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        out.push_str(match (k, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        let factors: Vec<String> = m
            .factors()
            .map(|(v, e)| if e == 1 { vars[v].clone() } else { format!("{}^{e}", vars[v]) })
            .collect();
        let unit = c.abs().is_one();
        if factors.is_empty() {
            out.push_str(&print_coeff_abs(c));
        } else if unit {
            out.push_str(&factors.join("*"));
        } else {
            out.push_str(&print_coeff_abs(c));
            out.push('*');
            out.push_str(&factors.join("*"));
        }
    }
    out
}

/// Canonical text of a document; `parse_map(print_map(d)) == d`.
pub fn print_map(doc: &MapDocument) -> String {
    let mut out = String::new();
    out.push_str("vars");
    for v in doc.vars() {
        out.push(' ');
        out.push_str(v);
    }
    out.push('\n');
    for (k, v) in doc.metadata() {
        out.push_str(&format!("meta {k} = {v}\n"));
    }
    for (name, p) in doc.components() {
        out.push_str(&format!("poly {name} = {}\n", print_poly(p, doc.vars())));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn parses_examples() {
        let d = parse_map("vars x y\npoly p = x + (x*y - 1)^2").unwrap();
        assert_eq!((d.vars().len(), d.components().len()), (2, 1));
        let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
        assert_eq!(d.components()[0].1, &x + &(&(&x * &y) - &Poly::one(2)).pow(2));

        let d = parse_map("vars x\npoly p = 3/2*x^2").unwrap();
        assert_eq!(d.components()[0].1, Poly::var(1, 0).pow(2).scale(&rat(3, 2)));

        let e = parse_map("vars x y\npoly p = x*z").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                column: 12,
                kind: ParseErrorKind::UndeclaredVariable("z".into())
            }
        );
    }

    #[test]
    fn rejects_bad_input() {
        let kind = |s: &str| match parse_map(s).unwrap_err() {
            Error::Parse { kind, .. } => kind,
            e => panic!("{e}"),
        };
        assert_eq!(kind("vars x\npoly p = x^-2"), ParseErrorKind::NegativeExponent);
        assert_eq!(kind("vars x\npoly p = 2x"), ParseErrorKind::Syntax("unexpected `x`".into()));
        assert_eq!(kind("vars x\npoly p = x $ 1"), ParseErrorKind::Lexical('$'));
        assert_eq!(kind("vars x x"), ParseErrorKind::Duplicate("x".into()));
        assert!(matches!(kind("vars x\npoly p = (x"), ParseErrorKind::Syntax(_)));
        assert!(matches!(kind("vars x\npoly p = x^2^2"), ParseErrorKind::Syntax(_)));
        assert!(matches!(kind("poly p = 1"), ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn lets_and_printing() {
        let d = parse_map("vars x y\nlet t = x*y - 1 # comment\npoly p = -t^2\npoly q = 0").unwrap();
        assert_eq!(print_poly(&d.components()[1].1, d.vars()), "0");
        assert_eq!(print_poly(&d.components()[0].1, d.vars()), "-x^2*y^2 + 2*x*y - 1");
        let p = &Poly::var(2, 1).scale(&rat(-3, 4)) + &Poly::constant(2, int(5));
        assert_eq!(print_poly(&p, d.vars()), "-3/4*y + 5");
        assert_eq!(parse_map(&print_map(&d)).unwrap(), d);
    }
}
