//! ASCII rendering in the surface syntax accepted by the parser.
//!
//! Bound variables are printed under their hints, freshened against the
//! free names of the whole entity and against enclosing binders, so the
//! output re-parses to an alpha-equal value.

use std::collections::BTreeSet;
use std::fmt;

use super::context::{Context, Judgment};
use super::name::{fresh, Name};
use super::term::Term;
use super::types::RelType;

struct Scope {
    avoid: BTreeSet<Name>,
    names: Vec<Name>,
}

impl Scope {
    fn new(avoid: BTreeSet<Name>) -> Self {
        Scope { avoid, names: Vec::new() }
    }

    fn bind(&mut self, hint: &str) -> Name {
        let mut taken = self.avoid.clone();
        taken.extend(self.names.iter().cloned());
        let n = fresh(hint, &taken);
        self.names.push(n.clone());
        n
    }

    fn unbind(&mut self) {
        self.names.pop();
    }

    fn lookup(&self, i: usize) -> Option<&Name> {
        self.names.len().checked_sub(i + 1).map(|k| &self.names[k])
    }
}

pub fn render_term(t: &Term) -> String {
    let mut out = String::new();
    let mut scope = Scope::new(t.free_vars());
    write_term(&mut out, t, &mut scope, Prec::Top);
    out
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Top,
    AppHead,
    Atom,
}

fn write_term(out: &mut String, t: &Term, scope: &mut Scope, prec: Prec) {
    match t {
        Term::Free(n) => out.push_str(n),
        Term::Bound(i) => match scope.lookup(*i) {
            Some(n) => out.push_str(n),
            None => out.push_str(&format!("#{i}")),
        },
        Term::Lam(h, body) => {
            let paren = prec > Prec::Top;
            if paren {
                out.push('(');
            }
            let n = scope.bind(h);
            out.push('\\');
            out.push_str(&n);
            out.push_str(". ");
            write_term(out, body, scope, Prec::Top);
            scope.unbind();
            if paren {
                out.push(')');
            }
        }
        Term::App(f, a) => {
            let paren = prec == Prec::Atom;
            if paren {
                out.push('(');
            }
            write_term(out, f, scope, Prec::AppHead);
            out.push(' ');
            write_term(out, a, scope, Prec::Atom);
            if paren {
                out.push(')');
            }
        }
    }
}

pub fn render_type(r: &RelType) -> String {
    let mut out = String::new();
    let mut scope = Scope::new(r.free_tvars());
    write_type(&mut out, r, &mut scope, TPrec::Top);
    out
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum TPrec {
    Top,
    ArrowLeft,
    Comp,
    CompLeft,
    Atom,
}

fn write_type(out: &mut String, r: &RelType, scope: &mut Scope, prec: TPrec) {
    use RelType::*;
    match r {
        Free(n) => out.push_str(n),
        Bound(i) => match scope.lookup(*i) {
            Some(n) => out.push_str(n),
            None => out.push_str(&format!("#{i}")),
        },
        Promote(t) => {
            out.push('{');
            out.push_str(&render_term(t));
            out.push('}');
        }
        Conv(a) => {
            write_type(out, a, scope, TPrec::Atom);
            out.push('^');
        }
        All(h, body) => {
            let paren = prec > TPrec::Top;
            if paren {
                out.push('(');
            }
            let n = scope.bind(h);
            out.push_str("all ");
            out.push_str(&n);
            out.push_str(". ");
            write_type(out, body, scope, TPrec::Top);
            scope.unbind();
            if paren {
                out.push(')');
            }
        }
        Arrow(a, b) => {
            let paren = prec > TPrec::Top;
            if paren {
                out.push('(');
            }
            write_type(out, a, scope, TPrec::ArrowLeft);
            out.push_str(" -> ");
            write_type(out, b, scope, TPrec::Top);
            if paren {
                out.push(')');
            }
        }
        Comp(a, b) => {
            let paren = prec > TPrec::Comp;
            if paren {
                out.push('(');
            }
            write_type(out, a, scope, TPrec::CompLeft);
            out.push_str(" * ");
            write_type(out, b, scope, TPrec::Comp);
            if paren {
                out.push(')');
            }
        }
    }
}

pub fn render_judgment(j: &Judgment) -> String {
    format!(
        "{} [{}] {}",
        render_term(&j.left),
        render_type(&j.ty),
        render_term(&j.right)
    )
}

pub fn render_context(ctx: &Context) -> String {
    if ctx.is_empty() {
        return ".".to_string();
    }
    ctx.entries()
        .iter()
        .map(|e| format!("{} : {}", e.var, render_judgment(&e.judgment)))
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_term(self))
    }
}

impl fmt::Display for RelType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_type(self))
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_judgment(self))
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_context(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::term::combinators::*;

    #[test]
    fn renders_terms() {
        assert_eq!(render_term(&id()), "\\x. x");
        assert_eq!(render_term(&Term::app(konst(), id())), "(\\x. \\y. x) (\\x. x)");
        let t = Term::apps(Term::var("f"), [Term::var("a"), Term::app(Term::var("g"), Term::var("b"))]);
        assert_eq!(render_term(&t), "f a (g b)");
    }

    #[test]
    fn renders_fresh_binder_on_clash() {
        // \x. y with y := x must not print as \x. x
        let t = Term::lam("x", Term::var("y")).subst("y", &Term::var("x"));
        assert_eq!(render_term(&t), "\\x1. x");
    }

    #[test]
    fn renders_types() {
        let x = RelType::var("X");
        let id_ty = RelType::all("X", RelType::arrow(x.clone(), x.clone()));
        assert_eq!(render_type(&id_ty), "all X. X -> X");
        let c = RelType::comp(RelType::comp(x.clone(), x.clone()), RelType::conv(RelType::arrow(x.clone(), x.clone())));
        assert_eq!(render_type(&c), "(X * X) * (X -> X)^");
        let a = RelType::arrow(id_ty.clone(), x.clone());
        assert_eq!(render_type(&a), "(all X1. X1 -> X1) -> X");
        let p = RelType::comp(RelType::promote(Term::app(konst(), Term::var("t"))), x);
        assert_eq!(render_type(&p), "{(\\x. \\y. x) t} * X");
    }
}
