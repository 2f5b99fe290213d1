//! The `.trs` text format.
//!
//! ```text
//! (VAR x y)            ; optional
//! (SIG (f 2) (c 0))    ; optional
//! (RULES
//!   f(x,y) -> c
//!   g(x) -> x
//! )
//! ```

use std::collections::HashMap;
use std::fmt::{self, Write};

use thiserror::Error;

use crate::term::{is_identifier, Rule, Symbol, Term};
use crate::trs::{Signature, Trs, TrsError, TrsMode, VarSet};

/// Identifiers with this prefix are reserved for generated dummy symbols.
pub const RESERVED_PREFIX: &str = "_pad";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("identifier `{0}` uses the reserved prefix `_pad`")]
    Reserved(String),
    #[error("arity conflict for `{symbol}`: {declared} vs {used}")]
    ArityConflict { symbol: String, declared: usize, used: usize },
    #[error("left-hand side is a variable")]
    VariableLhs,
    #[error("variable `{0}` of the right-hand side does not occur on the left")]
    UnboundRhsVar(String),
    #[error("duplicate rule (same as rule {0})")]
    DuplicateRule(usize),
    #[error("`{0}` is declared both as variable and function symbol")]
    VarFuncClash(String),
    #[error("variable `{0}` applied to arguments")]
    VariableApplied(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LParen,
    RParen,
    Comma,
    Arrow,
    Ident(String),
    Num(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Pos {
    line: usize,
    col: usize,
}

fn err(pos: Pos, kind: ParseErrorKind) -> ParseError {
    ParseError { line: pos.line, col: pos.col, kind }
}

fn syntax(pos: Pos, msg: impl Into<String>) -> ParseError {
    err(pos, ParseErrorKind::Syntax(msg.into()))
}

fn lex(text: &str) -> Result<(Vec<(Tok, Pos)>, Pos), ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut pos = Pos { line: 1, col: 1 };
    let advance = |c: char, pos: &mut Pos| {
        if c == '\n' {
            pos.line += 1;
            pos.col = 1;
        } else {
            pos.col += 1;
        }
    };
    while let Some(&c) = chars.peek() {
        let start = pos;
        match c {
            ';' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    advance(c, &mut pos);
                    chars.next();
                }
            }
            c if c.is_whitespace() => {
                advance(c, &mut pos);
                chars.next();
            }
            '(' | ')' | ',' => {
                advance(c, &mut pos);
                chars.next();
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    _ => Tok::Comma,
                };
                out.push((tok, start));
            }
            '-' => {
                advance(c, &mut pos);
                chars.next();
                if chars.peek() == Some(&'>') {
                    advance('>', &mut pos);
                    chars.next();
                    out.push((Tok::Arrow, start));
                } else {
                    return Err(syntax(start, "expected `->`"));
                }
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    s.push(c);
                    advance(c, &mut pos);
                    chars.next();
                }
                let n = s.parse().map_err(|_| syntax(start, "number out of range"))?;
                out.push((Tok::Num(n), start));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if !(c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
                        break;
                    }
                    s.push(c);
                    advance(c, &mut pos);
                    chars.next();
                }
                out.push((Tok::Ident(s), start));
            }
            other => return Err(syntax(start, format!("unexpected character `{other}`"))),
        }
    }
    Ok((out, pos))
}

#[derive(Debug, Clone)]
struct RawTerm {
    name: String,
    args: Option<Vec<RawTerm>>,
    pos: Pos,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.i).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.i).cloned();
        self.i += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Pos, ParseError> {
        let pos = self.pos();
        match self.next() {
            Some((t, p)) if t == want => Ok(p),
            _ => Err(syntax(pos, format!("expected {what}"))),
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), ParseError> {
        let pos = self.pos();
        match self.next() {
            Some((Tok::Ident(s), p)) => {
                if s.starts_with(RESERVED_PREFIX) {
                    return Err(err(p, ParseErrorKind::Reserved(s)));
                }
                Ok((s, p))
            }
            _ => Err(syntax(pos, "expected identifier")),
        }
    }

    fn term(&mut self) -> Result<RawTerm, ParseError> {
        let (name, pos) = self.ident()?;
        if self.peek() != Some(&Tok::LParen) {
            return Ok(RawTerm { name, args: None, pos });
        }
        self.next();
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::RParen) {
            self.next();
            return Ok(RawTerm { name, args: Some(args), pos });
        }
        loop {
            args.push(self.term()?);
            match self.next() {
                Some((Tok::Comma, _)) => continue,
                Some((Tok::RParen, _)) => break,
                Some((_, p)) => return Err(syntax(p, "expected `,` or `)`")),
                None => return Err(syntax(self.end, "unterminated argument list")),
            }
        }
        Ok(RawTerm { name, args: Some(args), pos })
    }
}

struct Resolver<'a> {
    vars: &'a VarSet,
    sig: Signature,
    first_use: HashMap<Symbol, Pos>,
}

impl Resolver<'_> {
    fn resolve(&mut self, raw: &RawTerm) -> Result<Term, ParseError> {
        let sym = Symbol::new(&raw.name).map_err(|e| syntax(raw.pos, e.to_string()))?;
        if self.vars.contains(&sym) {
            if raw.args.is_some() {
                return Err(err(raw.pos, ParseErrorKind::VariableApplied(raw.name.clone())));
            }
            self.first_use.entry(sym.clone()).or_insert(raw.pos);
            return Ok(Term::Var(sym));
        }
        let args = raw.args.as_deref().unwrap_or(&[]);
        self.sig.declare(sym.clone(), args.len()).map_err(|declared| {
            err(
                raw.pos,
                ParseErrorKind::ArityConflict { symbol: raw.name.clone(), declared, used: args.len() },
            )
        })?;
        self.first_use.entry(sym.clone()).or_insert(raw.pos);
        let args = args.iter().map(|a| self.resolve(a)).collect::<Result<_, _>>()?;
        Ok(Term::App(sym, args))
    }
}

/// Parses a complete `.trs` document.
pub fn parse_trs(text: &str, mode: TrsMode) -> Result<Trs, ParseError> {
    let (toks, end) = lex(text)?;
    let mut p = Parser { toks, i: 0, end };
    let mut var_block: Option<Vec<(String, Pos)>> = None;
    let mut sig_block: Option<Vec<(String, usize, Pos)>> = None;
    let mut rule_block: Option<Vec<(RawTerm, RawTerm, Pos)>> = None;

    while p.peek().is_some() {
        p.expect(Tok::LParen, "`(`")?;
        let (kw, kw_pos) = match p.next() {
            Some((Tok::Ident(s), pos)) => (s, pos),
            _ => return Err(syntax(p.pos(), "expected block keyword")),
        };
        match kw.as_str() {
            "VAR" => {
                if var_block.is_some() {
                    return Err(syntax(kw_pos, "duplicate VAR block"));
                }
                let mut names = Vec::new();
                while p.peek() != Some(&Tok::RParen) {
                    names.push(p.ident()?);
                }
                p.next();
                var_block = Some(names);
            }
            "SIG" => {
                if sig_block.is_some() {
                    return Err(syntax(kw_pos, "duplicate SIG block"));
                }
                let mut decls = Vec::new();
                while p.peek() != Some(&Tok::RParen) {
                    p.expect(Tok::LParen, "`(` or `)`")?;
                    let (name, pos) = p.ident()?;
                    let arity = match p.next() {
                        Some((Tok::Num(n), _)) => n,
                        _ => return Err(syntax(pos, "expected arity")),
                    };
                    p.expect(Tok::RParen, "`)`")?;
                    decls.push((name, arity, pos));
                }
                p.next();
                sig_block = Some(decls);
            }
            "RULES" => {
                if rule_block.is_some() {
                    return Err(syntax(kw_pos, "duplicate RULES block"));
                }
                let mut rules = Vec::new();
                loop {
                    match p.peek() {
                        Some(Tok::RParen) => {
                            p.next();
                            break;
                        }
                        None => return Err(syntax(end, "unterminated RULES block")),
                        _ => {}
                    }
                    let pos = p.pos();
                    let lhs = p.term()?;
                    p.expect(Tok::Arrow, "`->`")?;
                    let rhs = p.term()?;
                    rules.push((lhs, rhs, pos));
                }
                rule_block = Some(rules);
            }
            other => return Err(syntax(kw_pos, format!("unknown block `{other}`"))),
        }
    }
    let raw_rules = rule_block.ok_or_else(|| syntax(end, "missing RULES block"))?;

    let mut vars = VarSet::new();
    let mut var_pos = HashMap::new();
    for (name, pos) in var_block.unwrap_or_default() {
        let x = Symbol::new(&name).map_err(|e| syntax(pos, e.to_string()))?;
        var_pos.entry(x.clone()).or_insert(pos);
        vars.insert(x);
    }
    let mut sig = Signature::new();
    for (name, arity, pos) in sig_block.unwrap_or_default() {
        let f = Symbol::new(&name).map_err(|e| syntax(pos, e.to_string()))?;
        if vars.contains(&f) {
            return Err(err(pos, ParseErrorKind::VarFuncClash(name)));
        }
        sig.declare(f, arity).map_err(|declared| {
            err(pos, ParseErrorKind::ArityConflict { symbol: name.clone(), declared, used: arity })
        })?;
    }

    let mut res = Resolver { vars: &vars, sig, first_use: HashMap::new() };
    let mut rules = Vec::new();
    let mut rule_pos = Vec::new();
    for (l, r, pos) in &raw_rules {
        let lhs = res.resolve(l)?;
        let rhs = res.resolve(r)?;
        rules.push(Rule::new(lhs, rhs));
        rule_pos.push(*pos);
    }
    let sig = res.sig;
    let first_use = res.first_use;
    Trs::new(sig, vars, rules, mode).map_err(|e| {
        let at_rule = |i: usize| rule_pos[i];
        let at_sym = |s: &Symbol| first_use.get(s).or(var_pos.get(s)).copied().unwrap_or_default();
        match e {
            TrsError::VariableLhs { rule } => err(at_rule(rule), ParseErrorKind::VariableLhs),
            TrsError::UnboundRhsVar { rule, var } => {
                err(at_rule(rule), ParseErrorKind::UnboundRhsVar(var.to_string()))
            }
            TrsError::DuplicateRule { first, second } => {
                err(at_rule(second), ParseErrorKind::DuplicateRule(first + 1))
            }
            TrsError::VarFuncClash(s) => err(at_sym(&s), ParseErrorKind::VarFuncClash(s.to_string())),
            TrsError::ArityConflict { symbol, declared, used } => err(
                at_sym(&symbol),
                ParseErrorKind::ArityConflict { symbol: symbol.to_string(), declared, used },
            ),
            TrsError::Undeclared(s) => err(at_sym(&s), ParseErrorKind::Syntax(format!("undeclared `{s}`"))),
        }
    })
}

/// Parses a single term; identifiers in `vars` are variables.
pub fn parse_term(text: &str, vars: &VarSet) -> Result<Term, ParseError> {
    let (toks, end) = lex(text)?;
    let mut p = Parser { toks, i: 0, end };
    let raw = p.term()?;
    if p.peek().is_some() {
        return Err(syntax(p.pos(), "trailing input"));
    }
    let mut res = Resolver { vars, sig: Signature::new(), first_use: HashMap::new() };
    res.resolve(&raw)
}

/// Prints a TRS in the `.trs` format.
///
/// A SIG block is emitted only when the signature declares symbols that no
/// rule uses, so parsing the output reproduces the same TRS.
pub fn print_trs(trs: &Trs) -> String {
    let mut out = String::new();
    if !trs.vars().is_empty() {
        out.push_str("(VAR");
        for x in trs.vars() {
            write!(out, " {x}").unwrap();
        }
        out.push_str(")\n");
    }
    if trs.used_funcs().len() != trs.sig().len() {
        out.push_str("(SIG");
        for (f, a) in trs.sig().iter() {
            write!(out, " ({f} {a})").unwrap();
        }
        out.push_str(")\n");
    }
    if trs.rules().is_empty() {
        out.push_str("(RULES )\n");
    } else {
        out.push_str("(RULES\n");
        for rule in trs.rules() {
            writeln!(out, "  {rule}").unwrap();
        }
        out.push_str(")\n");
    }
    out
}

/// Display adapter printing a TRS in the `.trs` format.
pub struct TrsText<'a>(pub &'a Trs);

impl fmt::Display for TrsText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_trs(self.0))
    }
}

/// True if `name` would be accepted as a user identifier.
pub fn is_user_identifier(name: &str) -> bool {
    is_identifier(name) && !name.starts_with(RESERVED_PREFIX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<Trs, ParseError> {
        parse_trs(s, TrsMode::Strict)
    }

    #[test]
    fn basic_document() {
        let t = parse("(VAR x y)(RULES f(x,y) -> c  g(x) -> x)").unwrap();
        assert_eq!(t.sig().len(), 3);
        assert_eq!(t.sig().arity(&Symbol::from_static("f")), Some(2));
        assert_eq!(t.sig().arity(&Symbol::from_static("c")), Some(0));
        assert_eq!(t.vars().len(), 2);
        assert_eq!(t.rules().len(), 2);
        assert!(t.minimal());
    }

    #[test]
    fn variable_lhs_rejected() {
        let e = parse("(VAR x)(RULES x -> f(x))").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::VariableLhs);
        assert_eq!((e.line, e.col), (1, 15));
    }

    #[test]
    fn unbound_rhs_var() {
        let e = parse("(VAR x y)(RULES g(x) -> h(y))").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnboundRhsVar("y".into()));
        assert!(parse_trs("(VAR x y)(RULES g(x) -> h(y))", TrsMode::Permissive).is_ok());
    }

    #[test]
    fn duplicates_and_arity() {
        let e = parse("(VAR x)(RULES f(x) -> x\n f(x) -> x)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DuplicateRule(1));
        assert_eq!(e.line, 2);
        let e = parse("(VAR x)(RULES f(x) -> f(x,x))").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::ArityConflict { .. }));
        let e = parse("(VAR x)(SIG (f 2))(RULES f(x) -> x)").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::ArityConflict { .. }));
    }

    #[test]
    fn syntax_errors_have_positions() {
        let e = parse("(VAR x)\n(RULES f(x -> x)").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        assert!(parse("(VAR x)").is_err());
        assert!(parse("(FOO)(RULES )").is_err());
        let e = parse("(RULES _pad_1_0 -> c)").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Reserved(_)));
    }

    #[test]
    fn comments_and_whitespace() {
        let t = parse("; header\n(VAR x) ; vars\n(RULES\n  f(x) -> x ; identity\n)\n").unwrap();
        assert_eq!(t.rules().len(), 1);
    }

    #[test]
    fn empty_rules_print() {
        let t = parse("(RULES )").unwrap();
        assert_eq!(print_trs(&t), "(RULES )\n");
        assert_eq!(parse(&print_trs(&t)).unwrap(), t);
    }

    #[test]
    fn extra_constant_survives_round_trip() {
        let t = parse("(VAR x y)(SIG (f 2) (g 1) (c 0) (d 0))(RULES f(x,y) -> c g(x) -> c)").unwrap();
        assert!(!t.minimal());
        let text = print_trs(&t);
        assert!(text.contains("(d 0)"));
        let back = parse(&text).unwrap();
        assert_eq!(back, t);
        assert!(!back.minimal());
    }

    #[test]
    fn unused_var_is_not_minimal() {
        let t = parse("(VAR x y z)(RULES f(x,y) -> c g(x) -> x)").unwrap();
        assert!(!t.minimal());
        assert_eq!(parse(&print_trs(&t)).unwrap(), t);
    }

    #[test]
    fn single_term() {
        let vars: VarSet = [Symbol::from_static("x")].into_iter().collect();
        let t = parse_term("f(x, g(a))", &vars).unwrap();
        assert_eq!(t.to_string(), "f(x,g(a))");
        assert!(parse_term("f(x) y", &vars).is_err());
    }
}
