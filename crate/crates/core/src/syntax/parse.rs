//! Recursive-descent parser for the ASCII grammar.
//!
//! ```text
//! sequent  := cedent '=>' cedent
//! cedent   := [ formula (',' formula)* ]
//! formula  := or ( ('>' formula) | ('<->' formula) )?      -- sugar, right assoc
//! or       := and ('|' and)*
//! and      := unary ('&' unary)*
//! unary    := '~' unary | ('EX'|'ALL') binder '.' unary | primary
//! binder   := lower | UPPER ':' nat
//! primary  := atom | '(' formula ')' | term '=' term
//! atom     := UPPER [ '(' term (',' term)* ')' ]
//! term     := lower [ '(' term (',' term)* ')' ]           -- App iff declared
//! abstract := '\' lower+ '.' unary
//! ```
//!
//! `A > B` desugars to `~A | B` and `A <-> B` to `(~A | B) & (~B | A)`.
//! Lowercase identifiers are variables unless the signature declares them
//! as constants or function symbols; uppercase heads are relation constants
//! when declared, second-order variables otherwise. The arity of a free
//! second-order variable is fixed by its first occurrence. `#` starts a
//! line comment.

use std::collections::BTreeMap;

use super::{Abstract, AtomHead, Formula, SecVar, Signature, SyntaxError, Term0};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LIdent(String),
    UIdent(String),
    Nat(usize),
    LParen,
    RParen,
    Comma,
    Dot,
    Colon,
    Tilde,
    Amp,
    Bar,
    Gt,
    Iff,
    Backslash,
    Arrow,
    Equals,
    KwEx,
    KwAll,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::LIdent(s) | Tok::UIdent(s) => format!("`{s}`"),
            Tok::Nat(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Gt => "`>`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::Backslash => "`\\`".into(),
            Tok::Arrow => "`=>`".into(),
            Tok::Equals => "`=`".into(),
            Tok::KwEx => "`EX`".into(),
            Tok::KwAll => "`ALL`".into(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, SyntaxError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        let bump = |chars: &mut std::iter::Peekable<std::str::Chars>, col: &mut usize| {
            chars.next();
            *col += 1;
        };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => bump(&mut chars, &mut col),
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            '(' => {
                bump(&mut chars, &mut col);
                out.push((Tok::LParen, pos));
            }
            ')' => {
                bump(&mut chars, &mut col);
                out.push((Tok::RParen, pos));
            }
            ',' => {
                bump(&mut chars, &mut col);
                out.push((Tok::Comma, pos));
            }
            '.' => {
                bump(&mut chars, &mut col);
                out.push((Tok::Dot, pos));
            }
            ':' => {
                bump(&mut chars, &mut col);
                out.push((Tok::Colon, pos));
            }
            '~' => {
                bump(&mut chars, &mut col);
                out.push((Tok::Tilde, pos));
            }
            '&' => {
                bump(&mut chars, &mut col);
                out.push((Tok::Amp, pos));
            }
            '|' => {
                bump(&mut chars, &mut col);
                out.push((Tok::Bar, pos));
            }
            '>' => {
                bump(&mut chars, &mut col);
                out.push((Tok::Gt, pos));
            }
            '\\' => {
                bump(&mut chars, &mut col);
                out.push((Tok::Backslash, pos));
            }
            '=' => {
                bump(&mut chars, &mut col);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars, &mut col);
                    out.push((Tok::Arrow, pos));
                } else {
                    out.push((Tok::Equals, pos));
                }
            }
            '<' => {
                bump(&mut chars, &mut col);
                if chars.peek() == Some(&'-') {
                    bump(&mut chars, &mut col);
                    if chars.peek() == Some(&'>') {
                        bump(&mut chars, &mut col);
                        out.push((Tok::Iff, pos));
                    } else {
                        return Err(err(pos, "expected `<->`"));
                    }
                } else {
                    return Err(err(pos, "expected `<->`"));
                }
            }
            c if c.is_ascii_digit() => {
                let mut n = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        n.push(c);
                        bump(&mut chars, &mut col);
                    } else {
                        break;
                    }
                }
                let v: usize = n
                    .parse()
                    .map_err(|_| err(pos, "number out of range"))?;
                out.push((Tok::Nat(v), pos));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        bump(&mut chars, &mut col);
                    } else {
                        break;
                    }
                }
                let tok = match s.as_str() {
                    "EX" => Tok::KwEx,
                    "ALL" => Tok::KwAll,
                    _ if s.chars().next().unwrap().is_ascii_uppercase() => Tok::UIdent(s),
                    _ => Tok::LIdent(s),
                };
                out.push((tok, pos));
            }
            _ => return Err(err(pos, &format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

fn err(pos: Pos, msg: &str) -> SyntaxError {
    SyntaxError::Parse {
        line: pos.line,
        col: pos.col,
        msg: msg.to_string(),
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    sig: &'a Signature,
    bound0: Vec<String>,
    bound1: Vec<SecVar>,
    free1: BTreeMap<String, usize>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, sig: &'a Signature) -> Result<Self, SyntaxError> {
        Ok(Parser {
            toks: lex(text)?,
            i: 0,
            sig,
            bound0: Vec::new(),
            bound1: Vec::new(),
            free1: BTreeMap::new(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks
            .get(self.i)
            .or_else(|| self.toks.last())
            .map(|(_, p)| *p)
            .unwrap_or(Pos { line: 1, col: 1 })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|(t, _)| t.clone());
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), SyntaxError> {
        let pos = self.pos();
        match self.next() {
            Some(got) if got == t => Ok(()),
            Some(got) => Err(err(
                pos,
                &format!("expected {}, found {}", t.describe(), got.describe()),
            )),
            None => Err(err(pos, &format!("expected {}, found end of input", t.describe()))),
        }
    }

    fn eof(&self) -> bool {
        self.i >= self.toks.len()
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.or_expr()?;
        match self.peek() {
            Some(Tok::Gt) => {
                self.next();
                let rhs = self.formula()?;
                Ok(Formula::imp(lhs, rhs))
            }
            Some(Tok::Iff) => {
                self.next();
                let rhs = self.formula()?;
                Ok(Formula::and(
                    Formula::imp(lhs.clone(), rhs.clone()),
                    Formula::imp(rhs, lhs),
                ))
            }
            _ => Ok(lhs),
        }
    }

    fn or_expr(&mut self) -> Result<Formula, SyntaxError> {
        let mut acc = self.and_expr()?;
        while self.peek() == Some(&Tok::Bar) {
            self.next();
            let rhs = self.and_expr()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn and_expr(&mut self) -> Result<Formula, SyntaxError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.next();
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Tilde) => {
                self.next();
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::KwEx) | Some(Tok::KwAll) => {
                let existential = self.peek() == Some(&Tok::KwEx);
                self.next();
                match self.next() {
                    Some(Tok::LIdent(x)) => {
                        if self.sig.consts.contains(&x) || self.sig.funcs.contains_key(&x) {
                            return Err(err(
                                pos,
                                &format!("cannot bind `{x}`: declared in the signature"),
                            ));
                        }
                        self.expect(Tok::Dot)?;
                        self.bound0.push(x.clone());
                        let body = self.unary()?;
                        self.bound0.pop();
                        Ok(if existential {
                            Formula::Exists0(x, Box::new(body))
                        } else {
                            Formula::Forall0(x, Box::new(body))
                        })
                    }
                    Some(Tok::UIdent(name)) => {
                        self.expect(Tok::Colon)?;
                        let arity = match self.next() {
                            Some(Tok::Nat(n)) if n >= 1 => n,
                            Some(Tok::Nat(_)) => {
                                return Err(err(pos, "second-order binder arity must be >= 1"))
                            }
                            _ => return Err(err(pos, "expected arity after `:`")),
                        };
                        if self.sig.rels.contains_key(&name) {
                            return Err(err(
                                pos,
                                &format!("cannot bind `{name}`: declared relation constant"),
                            ));
                        }
                        self.expect(Tok::Dot)?;
                        let sv = SecVar::new(name, arity);
                        self.bound1.push(sv.clone());
                        let body = self.unary()?;
                        self.bound1.pop();
                        Ok(if existential {
                            Formula::Exists1(sv, Box::new(body))
                        } else {
                            Formula::Forall1(sv, Box::new(body))
                        })
                    }
                    _ => Err(err(pos, "expected a variable after the quantifier")),
                }
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, SyntaxError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.next();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::UIdent(name)) => {
                self.next();
                let args = if self.peek() == Some(&Tok::LParen) {
                    self.next();
                    let mut args = vec![self.term()?];
                    while self.peek() == Some(&Tok::Comma) {
                        self.next();
                        args.push(self.term()?);
                    }
                    self.expect(Tok::RParen)?;
                    args
                } else {
                    vec![]
                };
                self.atom(name, args, pos)
            }
            Some(Tok::LIdent(_)) => {
                // only `t = u` starts with a lowercase identifier
                let lhs = self.term()?;
                self.expect(Tok::Equals)?;
                let rhs = self.term()?;
                self.eq_atom(lhs, rhs, pos)
            }
            Some(t) => Err(err(pos, &format!("unexpected {}", t.describe()))),
            None => Err(err(pos, "unexpected end of input")),
        }
    }

    fn eq_atom(&mut self, lhs: Term0, rhs: Term0, pos: Pos) -> Result<Formula, SyntaxError> {
        match self.sig.rels.get("=") {
            Some(&2) => Ok(Formula::Atom(AtomHead::Rel("=".into(), 2), vec![lhs, rhs])),
            Some(_) => Err(err(pos, "`=` must be declared with arity 2")),
            None => Err(err(pos, "`=` is not declared in the signature")),
        }
    }

    fn atom(&mut self, name: String, args: Vec<Term0>, _pos: Pos) -> Result<Formula, SyntaxError> {
        if let Some(&arity) = self.sig.rels.get(&name) {
            if args.len() != arity {
                return Err(SyntaxError::ArityMismatch {
                    name,
                    expected: arity,
                    got: args.len(),
                });
            }
            return Ok(Formula::Atom(AtomHead::Rel(name, arity), args));
        }
        // innermost binder wins
        if let Some(sv) = self.bound1.iter().rev().find(|sv| sv.name == name) {
            if args.len() != sv.arity {
                return Err(SyntaxError::ArityMismatch {
                    name,
                    expected: sv.arity,
                    got: args.len(),
                });
            }
            return Ok(Formula::Atom(AtomHead::Var(sv.clone()), args));
        }
        let arity = *self.free1.entry(name.clone()).or_insert(args.len());
        if args.len() != arity {
            return Err(SyntaxError::ArityMismatch {
                name,
                expected: arity,
                got: args.len(),
            });
        }
        Ok(Formula::Atom(AtomHead::Var(SecVar::new(name, arity)), args))
    }

    fn term(&mut self) -> Result<Term0, SyntaxError> {
        let pos = self.pos();
        match self.next() {
            Some(Tok::LIdent(name)) => {
                if self.peek() == Some(&Tok::LParen) {
                    let Some(&arity) = self.sig.funcs.get(&name) else {
                        return Err(SyntaxError::UnknownSymbol(name));
                    };
                    self.next();
                    let mut args = vec![self.term()?];
                    while self.peek() == Some(&Tok::Comma) {
                        self.next();
                        args.push(self.term()?);
                    }
                    self.expect(Tok::RParen)?;
                    if args.len() != arity {
                        return Err(SyntaxError::ArityMismatch {
                            name,
                            expected: arity,
                            got: args.len(),
                        });
                    }
                    Ok(Term0::App(name, args))
                } else if self.bound0.iter().any(|b| *b == name) {
                    Ok(Term0::Var(name))
                } else if self.sig.consts.contains(&name) {
                    Ok(Term0::Const(name))
                } else if self.sig.funcs.contains_key(&name) {
                    Err(err(pos, &format!("function symbol `{name}` needs arguments")))
                } else {
                    Ok(Term0::Var(name))
                }
            }
            Some(t) => Err(err(pos, &format!("expected a term, found {}", t.describe()))),
            None => Err(err(pos, "expected a term, found end of input")),
        }
    }

    fn abstract_expr(&mut self) -> Result<Abstract, SyntaxError> {
        let pos = self.pos();
        self.expect(Tok::Backslash)?;
        let mut params = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::LIdent(_)) => {
                    if let Some(Tok::LIdent(x)) = self.next() {
                        if self.sig.consts.contains(&x) || self.sig.funcs.contains_key(&x) {
                            return Err(err(
                                pos,
                                &format!("cannot bind `{x}`: declared in the signature"),
                            ));
                        }
                        params.push(x);
                    }
                }
                Some(Tok::Dot) => break,
                _ => return Err(err(self.pos(), "expected parameter or `.`")),
            }
        }
        self.expect(Tok::Dot)?;
        let depth = self.bound0.len();
        self.bound0.extend(params.iter().cloned());
        let body = self.unary()?;
        self.bound0.truncate(depth);
        Abstract::new(params, body)
    }

    fn cedent(&mut self, stop_at_arrow: bool) -> Result<Vec<Formula>, SyntaxError> {
        let mut out = Vec::new();
        if self.eof() || (stop_at_arrow && self.peek() == Some(&Tok::Arrow)) {
            return Ok(out);
        }
        out.push(self.formula()?);
        while self.peek() == Some(&Tok::Comma) {
            self.next();
            out.push(self.formula()?);
        }
        Ok(out)
    }

    fn finish(&self) -> Result<(), SyntaxError> {
        if self.eof() {
            Ok(())
        } else {
            Err(err(
                self.pos(),
                &format!("trailing input: {}", self.toks[self.i].0.describe()),
            ))
        }
    }
}

/// Parse a single formula.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, SyntaxError> {
    let mut p = Parser::new(text, sig)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Parse a first-order term.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term0, SyntaxError> {
    let mut p = Parser::new(text, sig)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parse an abstract `\x1 ... xn. F`.
pub fn parse_abstract(text: &str, sig: &Signature) -> Result<Abstract, SyntaxError> {
    let mut p = Parser::new(text, sig)?;
    let t = p.abstract_expr()?;
    p.finish()?;
    Ok(t)
}

/// Parse `Gamma => Delta` into raw cedent lists. Free second-order
/// variable arities are shared across the whole sequent.
pub fn parse_cedents(text: &str, sig: &Signature) -> Result<(Vec<Formula>, Vec<Formula>), SyntaxError> {
    let mut p = Parser::new(text, sig)?;
    let ant = p.cedent(true)?;
    p.expect(Tok::Arrow)?;
    let suc = p.cedent(false)?;
    p.finish()?;
    Ok((ant, suc))
}

/// Split a problem file into its signature header and body. Header lines
/// are `const <names...>`, `fun <name> <arity>` and `rel <name> <arity>`;
/// the body is everything from the first non-header line on.
pub fn parse_problem(text: &str) -> Result<(Signature, String), SyntaxError> {
    let mut sig = Signature::default();
    let mut body_lines: Vec<&str> = Vec::new();
    let mut in_header = true;
    for line in text.lines() {
        let trimmed = line.trim();
        let stripped = trimmed.split('#').next().unwrap_or("").trim();
        if in_header {
            if stripped.is_empty() {
                continue;
            }
            let mut words = stripped.split_whitespace();
            match words.next() {
                Some("const") => {
                    for w in words {
                        sig.consts.insert(w.to_string());
                    }
                    continue;
                }
                Some(kw @ ("fun" | "rel")) => {
                    let name = words
                        .next()
                        .ok_or_else(|| SyntaxError::BadSignature(format!("`{kw}` needs a name")))?;
                    let arity: usize = words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| {
                            SyntaxError::BadSignature(format!("`{kw} {name}` needs an arity"))
                        })?;
                    if kw == "fun" {
                        sig.funcs.insert(name.to_string(), arity);
                    } else {
                        sig.rels.insert(name.to_string(), arity);
                    }
                    continue;
                }
                _ => in_header = false,
            }
        }
        body_lines.push(line);
    }
    sig.validate()?;
    Ok((sig, body_lines.join("\n")))
}
