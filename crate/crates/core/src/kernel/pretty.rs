//! Surface rendering of proof terms.

use std::fmt;

use super::proof::Proof;
use crate::syntax::{render_term, render_type};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Top,
    App,
    Atom,
}

pub fn render_proof(p: &Proof) -> String {
    let mut out = String::new();
    write_proof(&mut out, p, Prec::Top);
    out
}

fn write_proof(out: &mut String, p: &Proof, prec: Prec) {
    let level = match p {
        Proof::Var(_) | Proof::Iota(..) | Proof::Pair { .. } => Prec::Atom,
        Proof::App(..) | Proof::TyApp(..) | Proof::ConvI(_) | Proof::ConvE(_) => Prec::App,
        _ => Prec::Top,
    };
    let paren = level < prec;
    if paren {
        out.push('(');
    }
    match p {
        Proof::Var(u) => out.push_str(u),
        Proof::Lam {
            var,
            left,
            ty,
            right,
            body,
        } => {
            out.push_str(&format!("fun ({var} : {left} [{}] {right}) => ", render_type(ty)));
            write_proof(out, body, Prec::Top);
        }
        Proof::App(f, a) => {
            write_proof(out, f, Prec::App);
            out.push(' ');
            write_proof(out, a, Prec::Atom);
        }
        Proof::TyApp(f, r) => {
            write_proof(out, f, Prec::App);
            out.push_str(&format!(" {{{}}}", render_type(r)));
        }
        Proof::TyLam(x, body) => {
            out.push_str(&format!("Fun {x} => "));
            write_proof(out, body, Prec::Top);
        }
        Proof::Conv { left, proof, right } => {
            out.push_str(&render_term(left));
            out.push_str(" <| ");
            write_proof(out, proof, Prec::Top);
            out.push_str(" |> ");
            out.push_str(&render_term(right));
        }
        Proof::ConvI(q) | Proof::ConvE(q) => {
            out.push_str(if matches!(p, Proof::ConvI(_)) { "conv_i " } else { "conv_e " });
            write_proof(out, q, Prec::Atom);
        }
        Proof::Iota(t, u) => out.push_str(&format!("iota {{{}, {}}}", render_term(t), render_term(u))),
        Proof::Rho {
            var,
            left,
            right,
            eq,
            body,
        } => {
            out.push_str(&format!("rho {{{var}. {}, {}}} ", render_term(left), render_term(right)));
            write_proof(out, eq, Prec::App);
            out.push_str(" - ");
            write_proof(out, body, Prec::Top);
        }
        Proof::Pair { first, second, mid } => {
            out.push('(');
            write_proof(out, first, Prec::Top);
            out.push_str(", ");
            write_proof(out, second, Prec::Top);
            out.push_str(&format!(" via {})", render_term(mid)));
        }
        Proof::Pi {
            scrutinee,
            var,
            left_proof,
            right_proof,
            body,
        } => {
            out.push_str("pi ");
            write_proof(out, scrutinee, Prec::App);
            out.push_str(&format!(" - {var} {left_proof} {right_proof}. "));
            write_proof(out, body, Prec::Top);
        }
    }
    if paren {
        out.push(')');
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_proof(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{RelType, Term};

    #[test]
    fn renders_collapse_shape() {
        let r = RelType::var("R");
        let inner = Proof::app(
            Proof::app(Proof::ty_app(Proof::var("u"), r), Proof::var("v")),
            Proof::var("w"),
        );
        let p = Proof::conv(Term::var("x"), inner, Term::var("y'"));
        assert_eq!(render_proof(&p), "x <| u {R} v w |> y'");
    }

    #[test]
    fn parenthesizes_arguments() {
        let lam = Proof::lam("u", "x", RelType::var("X"), "x'", Proof::var("u"));
        let p = Proof::app(Proof::var("f"), Proof::conv_i(lam));
        assert_eq!(render_proof(&p), "f (conv_i (fun (u : x [X] x') => u))");
    }
}
