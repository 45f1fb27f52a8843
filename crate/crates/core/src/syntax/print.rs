//! Display impls producing the ASCII grammar the parser reads back.
//! Printing is minimal-parenthesis with precedence `~` > `&` > `|`;
//! quantifier and abstract bodies are parenthesized unless they are atoms,
//! negations or further quantifiers, matching how tightly the parser binds
//! them.

use std::fmt;

use super::{Abstract, AtomHead, Formula, Term0};

impl fmt::Display for Term0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term0::Var(v) => write!(f, "{v}"),
            Term0::Const(c) => write!(f, "{c}"),
            Term0::App(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

// precedence levels: Or = 1, And = 2, unary (atom / ~ / quantifier) = 3;
// infix `=` atoms get level 0 so they are always parenthesized as operands
fn level(f: &Formula) -> u8 {
    match f {
        Formula::Atom(AtomHead::Rel(name, 2), args) if name == "=" && args.len() == 2 => 0,
        Formula::Atom(_, _) | Formula::Not(_) => 3,
        Formula::Exists0(_, _)
        | Formula::Forall0(_, _)
        | Formula::Exists1(_, _)
        | Formula::Forall1(_, _) => 3,
        Formula::And(_, _) => 2,
        Formula::Or(_, _) => 1,
    }
}

fn write_at(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if level(f) < min {
        write!(out, "(")?;
        write_bare(f, out)?;
        write!(out, ")")
    } else {
        write_bare(f, out)
    }
}

fn write_bare(f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match f {
        Formula::Atom(AtomHead::Rel(name, 2), args) if name == "=" && args.len() == 2 => {
            write!(out, "{} = {}", args[0], args[1])
        }
        Formula::Atom(head, args) => {
            write!(out, "{}", head.name())?;
            if !args.is_empty() {
                write!(out, "(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(out, ",")?;
                    }
                    write!(out, "{a}")?;
                }
                write!(out, ")")?;
            }
            Ok(())
        }
        Formula::Not(g) => {
            write!(out, "~")?;
            write_at(g, 3, out)
        }
        Formula::Or(a, b) => {
            write_at(a, 1, out)?;
            write!(out, " | ")?;
            write_at(b, 2, out)
        }
        Formula::And(a, b) => {
            write_at(a, 2, out)?;
            write!(out, " & ")?;
            write_at(b, 3, out)
        }
        Formula::Exists0(x, g) => {
            write!(out, "EX {x}. ")?;
            write_at(g, 3, out)
        }
        Formula::Forall0(x, g) => {
            write!(out, "ALL {x}. ")?;
            write_at(g, 3, out)
        }
        Formula::Exists1(sv, g) => {
            write!(out, "EX {}:{}. ", sv.name, sv.arity)?;
            write_at(g, 3, out)
        }
        Formula::Forall1(sv, g) => {
            write!(out, "ALL {}:{}. ", sv.name, sv.arity)?;
            write_at(g, 3, out)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bare(self, f)
    }
}

impl fmt::Display for Abstract {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\\")?;
        for (i, p) in self.params.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ". ")?;
        write_at(&self.body, 3, f)
    }
}
