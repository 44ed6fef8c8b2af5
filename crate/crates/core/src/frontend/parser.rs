//! Recursive-descent parser for scripts.
//!
//! Definitions are expanded while parsing: an identifier that names an
//! earlier `def` or `type` is replaced by its body unless a binder in scope
//! shadows it. Derived type formers are expanded on the spot.

use std::collections::{BTreeMap, BTreeSet};

use super::diag::{Diagnostic, ParseError, Span};
use super::lexer::{is_keyword, lex, Tok, Token};
use crate::kernel::Proof;
use crate::prelude::{DerivedForm, PreludeError};
use crate::syntax::{name, Judgment, Name, RelType, Term};

/// Definitions visible to a script.
#[derive(Debug, Clone, Default)]
pub struct Defs {
    pub terms: BTreeMap<Name, Term>,
    pub types: BTreeMap<Name, RelType>,
    pub proofs: BTreeSet<Name>,
}

/// Spans of a proof and its subproofs, numbered like kernel proof paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanTree {
    pub span: Span,
    pub children: Vec<SpanTree>,
}

impl SpanTree {
    fn leaf(span: Span) -> Self {
        SpanTree { span, children: vec![] }
    }

    /// The span of the subproof at `path`, or the deepest one that exists.
    pub fn lookup(&self, path: &[usize]) -> Span {
        match path.split_first() {
            Some((i, rest)) => match self.children.get(*i) {
                Some(c) => c.lookup(rest),
                None => self.span,
            },
            None => self.span,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DumpKind {
    Judgment,
    Relpf,
    Erasure,
    Systemf,
    Witness,
}

impl DumpKind {
    fn parse(s: &str) -> Option<DumpKind> {
        Some(match s {
            "judgment" => DumpKind::Judgment,
            "relpf" => DumpKind::Relpf,
            "erasure" => DumpKind::Erasure,
            "systemf" => DumpKind::Systemf,
            "witness" => DumpKind::Witness,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone)]
pub enum Stmt {
    Fuel(usize),
    TermDef(Name, Term),
    TypeDef(Name, RelType),
    ProofDef {
        name: Name,
        context: Vec<(Name, Judgment)>,
        declared: Judgment,
        proof: Proof,
        spans: SpanTree,
    },
    Check(Proof, SpanTree),
    Normalize(Term),
    Analyze(RelType),
    Dump(DumpKind, Name),
}

#[derive(Debug, Clone)]
pub struct Statement {
    pub span: Span,
    pub stmt: Stmt,
}

#[derive(Debug, Clone, Default)]
pub struct Script {
    pub statements: Vec<Statement>,
}

/// Result of parsing a source file.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub script: Script,
    /// Definitions after the script, for later files.
    pub defs: Defs,
    pub diagnostics: Vec<Diagnostic>,
}

type PResult<T> = Result<T, ParseError>;

const STATEMENT_STARTS: &[&str] = &["def", "type", "proof", "check", "normalize", "analyze", "dump"];

/// Parses a script against existing definitions. Statements that fail to
/// parse are reported and skipped; parsing resumes at the next statement.
pub fn parse(src: &str, defs: &Defs, allow_dotted: bool) -> Parsed {
    let toks = match lex(src, allow_dotted) {
        Ok(t) => t,
        Err(e) => {
            return Parsed {
                script: Script::default(),
                defs: defs.clone(),
                diagnostics: vec![e.into()],
            }
        }
    };
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        defs: defs.clone(),
        terms: Vec::new(),
        tvars: Vec::new(),
    };
    let mut script = Script::default();
    let mut diagnostics = Vec::new();
    while !p.at(&Tok::Eof) {
        let start = p.pos;
        match p.statement() {
            Ok(stmt) => script.statements.push(Statement {
                span: p.span_from(start),
                stmt,
            }),
            Err(e) => {
                diagnostics.push(e.into());
                p.terms.clear();
                p.tvars.clear();
                p.pos = start + 1;
                p.recover();
            }
        }
    }
    Parsed {
        script,
        defs: p.defs,
        diagnostics,
    }
}

/// Parses a single term with no definitions in scope.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    parse_term_with(src, &Defs::default())
}

pub fn parse_term_with(src: &str, defs: &Defs) -> Result<Term, ParseError> {
    let toks = lex(src, false)?;
    let mut p = Parser::new(&toks, defs);
    let t = p.term()?;
    p.expect_eof()?;
    Ok(t)
}

/// Parses a single type with no definitions in scope.
pub fn parse_type(src: &str) -> Result<RelType, ParseError> {
    parse_type_with(src, &Defs::default())
}

pub fn parse_type_with(src: &str, defs: &Defs) -> Result<RelType, ParseError> {
    let toks = lex(src, false)?;
    let mut p = Parser::new(&toks, defs);
    let t = p.ty()?;
    p.expect_eof()?;
    Ok(t)
}

/// Parses a single proof term.
pub fn parse_proof(src: &str, defs: &Defs, allow_dotted: bool) -> Result<(Proof, SpanTree), ParseError> {
    let toks = lex(src, allow_dotted)?;
    let mut p = Parser::new(&toks, defs);
    let r = p.proof()?;
    p.expect_eof()?;
    Ok(r)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    defs: Defs,
    /// Term names bound by enclosing binders.
    terms: Vec<Name>,
    /// Type variables bound by enclosing binders.
    tvars: Vec<Name>,
}

impl<'a> Parser<'a> {
    fn new(toks: &'a [Token], defs: &Defs) -> Self {
        Parser {
            toks,
            pos: 0,
            defs: defs.clone(),
            terms: Vec::new(),
            tvars: Vec::new(),
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn span_from(&self, start: usize) -> Span {
        let end = if self.pos > start { self.pos - 1 } else { start };
        self.toks[start].span.to(self.toks[end].span)
    }

    fn at(&self, t: &Tok) -> bool {
        self.peek() == t
    }

    fn at_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == w)
    }

    fn bump(&mut self) -> &Token {
        let t = &self.toks[self.pos];
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.at(t) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if self.at_word(w) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::new(
            "syntax",
            self.span(),
            format!("expected {wanted}, found {}", self.peek().describe()),
        )
    }

    fn expect(&mut self, t: &Tok, wanted: &str) -> PResult<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn expect_word(&mut self, w: &str) -> PResult<()> {
        if self.eat_word(w) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{w}`")))
        }
    }

    fn expect_eof(&mut self) -> PResult<()> {
        if self.at(&Tok::Eof) {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn ident(&mut self) -> PResult<Name> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => {
                self.bump();
                Ok(name(&s))
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn at_ident(&self) -> bool {
        matches!(self.peek(), Tok::Ident(s) if !is_keyword(s))
    }

    /// Runs `f`, rewinding position and scopes if it fails.
    fn attempt<T>(&mut self, f: impl FnOnce(&mut Self) -> PResult<T>) -> Option<T> {
        let (pos, nt, nv) = (self.pos, self.terms.len(), self.tvars.len());
        match f(self) {
            Ok(v) => Some(v),
            Err(_) => {
                self.pos = pos;
                self.terms.truncate(nt);
                self.tvars.truncate(nv);
                None
            }
        }
    }

    fn recover(&mut self) {
        loop {
            match self.peek() {
                Tok::Eof | Tok::Fuel => return,
                Tok::Ident(s) if STATEMENT_STARTS.contains(&s.as_str()) => return,
                _ => {
                    self.bump();
                }
            }
        }
    }

    // statements

    fn statement(&mut self) -> PResult<Stmt> {
        if self.eat(&Tok::Fuel) {
            return match self.peek().clone() {
                Tok::Num(n) => {
                    self.bump();
                    Ok(Stmt::Fuel(n as usize))
                }
                _ => Err(self.unexpected("a step count")),
            };
        }
        let kw = match self.peek() {
            Tok::Ident(s) if STATEMENT_STARTS.contains(&s.as_str()) => s.clone(),
            _ => return Err(self.unexpected("a statement")),
        };
        self.bump();
        match kw.as_str() {
            "def" => {
                let span = self.span();
                let n = self.ident()?;
                self.expect(&Tok::Define, "`:=`")?;
                let t = self.term()?;
                if self.defs.terms.contains_key(&n) {
                    return Err(ParseError::new("redefinition", span, format!("term `{n}` is already defined")));
                }
                self.defs.terms.insert(n.clone(), t.clone());
                Ok(Stmt::TermDef(n, t))
            }
            "type" => {
                let span = self.span();
                let n = self.ident()?;
                self.expect(&Tok::Define, "`:=`")?;
                let r = self.ty()?;
                if self.defs.types.contains_key(&n) {
                    return Err(ParseError::new("redefinition", span, format!("type `{n}` is already defined")));
                }
                self.defs.types.insert(n.clone(), r.clone());
                Ok(Stmt::TypeDef(n, r))
            }
            "proof" => {
                let span = self.span();
                let n = self.ident()?;
                let mut context = Vec::new();
                while self.eat(&Tok::LParen) {
                    let u = self.ident()?;
                    self.expect(&Tok::Colon, "`:`")?;
                    let j = self.judgment()?;
                    self.expect(&Tok::RParen, "`)`")?;
                    context.push((u, j));
                }
                self.expect(&Tok::Colon, "`:`")?;
                let declared = self.judgment()?;
                self.expect(&Tok::Define, "`:=`")?;
                let (proof, spans) = self.proof()?;
                if !self.defs.proofs.insert(n.clone()) {
                    return Err(ParseError::new("redefinition", span, format!("proof `{n}` is already defined")));
                }
                Ok(Stmt::ProofDef {
                    name: n,
                    context,
                    declared,
                    proof,
                    spans,
                })
            }
            "check" => {
                let (p, s) = self.proof()?;
                Ok(Stmt::Check(p, s))
            }
            "normalize" => Ok(Stmt::Normalize(self.term()?)),
            "analyze" => Ok(Stmt::Analyze(self.ty()?)),
            "dump" => {
                let kind = match self.peek() {
                    Tok::Ident(s) => DumpKind::parse(s),
                    _ => None,
                }
                .ok_or_else(|| self.unexpected("one of judgment, relpf, erasure, systemf, witness"))?;
                self.bump();
                Ok(Stmt::Dump(kind, self.ident()?))
            }
            _ => unreachable!("statement keyword"),
        }
    }

    fn judgment(&mut self) -> PResult<Judgment> {
        let left = self.term()?;
        self.expect(&Tok::LBracket, "`[`")?;
        let ty = self.ty()?;
        self.expect(&Tok::RBracket, "`]`")?;
        let right = self.term()?;
        Ok(Judgment::new(left, ty, right))
    }

    // terms

    fn term(&mut self) -> PResult<Term> {
        if self.eat(&Tok::Backslash) {
            let mut names = vec![self.ident()?];
            while self.at_ident() {
                names.push(self.ident()?);
            }
            self.expect(&Tok::Dot, "`.`")?;
            let n = self.terms.len();
            self.terms.extend(names.iter().cloned());
            let body = self.term();
            self.terms.truncate(n);
            let body = body?;
            return Ok(names.iter().rev().fold(body, |acc, x| Term::lam_named(x, acc)));
        }
        let mut t = self.term_atom()?;
        loop {
            if self.at_ident() || self.at(&Tok::LParen) {
                let a = self.term_atom()?;
                t = Term::app(t, a);
            } else if self.at(&Tok::Backslash) {
                let a = self.term()?;
                t = Term::app(t, a);
                break;
            } else {
                break;
            }
        }
        Ok(t)
    }

    fn term_atom(&mut self) -> PResult<Term> {
        if self.eat(&Tok::LParen) {
            let t = self.term()?;
            self.expect(&Tok::RParen, "`)`")?;
            return Ok(t);
        }
        let x = self.ident()?;
        Ok(self.resolve_term(x))
    }

    fn resolve_term(&self, x: Name) -> Term {
        if self.terms.contains(&x) {
            return Term::Free(x);
        }
        self.defs.terms.get(&x).cloned().unwrap_or(Term::Free(x))
    }

    // types

    fn derived(&self, span: Span, form: DerivedForm) -> PResult<RelType> {
        form.expand().map_err(|e| match e {
            PreludeError::MalformedParameter(m) => ParseError::new("malformed-parameter", span, m),
            other => ParseError::new("malformed-parameter", span, other.to_string()),
        })
    }

    fn bound_tvar<T>(&mut self, f: impl FnOnce(&mut Self) -> PResult<T>) -> PResult<(Name, T)> {
        let x = self.ident()?;
        self.tvars.push(x.clone());
        let r = f(self);
        self.tvars.pop();
        Ok((x, r?))
    }

    fn ty(&mut self) -> PResult<RelType> {
        let span = self.span();
        if self.eat_word("all") {
            let (x, body) = self.bound_tvar(|p| {
                p.expect(&Tok::Dot, "`.`")?;
                p.ty()
            })?;
            return Ok(RelType::all_named(&x, body));
        }
        if self.eat_word("rec") {
            let (x, body) = self.bound_tvar(|p| {
                p.expect(&Tok::Dot, "`.`")?;
                p.ty()
            })?;
            return self.derived(span, DerivedForm::Rec(x, body));
        }
        let left = self.comp_ty()?;
        let op = self.peek().clone();
        match op {
            Tok::Arrow | Tok::Subset | Tok::Implies | Tok::RelEq => {
                self.bump();
                let right = self.ty()?;
                Ok(match op {
                    Tok::Arrow => RelType::arrow(left, right),
                    Tok::Subset => self.derived(span, DerivedForm::Subset(left, right))?,
                    Tok::Implies => self.derived(span, DerivedForm::ImpProd(left, right))?,
                    _ => self.derived(span, DerivedForm::RelEq(left, right))?,
                })
            }
            _ => Ok(left),
        }
    }

    fn comp_ty(&mut self) -> PResult<RelType> {
        let left = self.post_ty()?;
        if self.eat(&Tok::Star) {
            let right = self.comp_ty()?;
            return Ok(RelType::comp(left, right));
        }
        Ok(left)
    }

    fn post_ty(&mut self) -> PResult<RelType> {
        let span = self.span();
        let mut r = if self.eat(&Tok::LBracket) {
            let t = self.term()?;
            self.expect(&Tok::RBracket, "`]`")?;
            let body = self.post_ty()?;
            self.derived(span, DerivedForm::IntTypeL(t, body))?
        } else {
            self.atom_ty()?
        };
        loop {
            if self.eat(&Tok::Caret) {
                r = RelType::conv(r);
            } else if self.at(&Tok::LBracket) {
                self.bump();
                let t = self.term()?;
                self.expect(&Tok::RBracket, "`]`")?;
                r = self.derived(span, DerivedForm::IntTypeR(r, t))?;
            } else {
                return Ok(r);
            }
        }
    }

    fn two_types(&mut self) -> PResult<(RelType, RelType)> {
        self.expect(&Tok::LParen, "`(`")?;
        let a = self.ty()?;
        self.expect(&Tok::Comma, "`,`")?;
        let b = self.ty()?;
        self.expect(&Tok::RParen, "`)`")?;
        Ok((a, b))
    }

    fn atom_ty(&mut self) -> PResult<RelType> {
        let span = self.span();
        if let Some(r) = self.attempt(|p| {
            let t = p.term()?;
            p.expect(&Tok::DotDot, "`..`")?;
            Ok(t)
        }) {
            let body = self.post_ty()?;
            return self.derived(span, DerivedForm::DConj(r, body));
        }
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let r = self.ty()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(r)
            }
            Tok::LBrace => {
                self.bump();
                let t = self.term()?;
                self.expect(&Tok::RBrace, "`}`")?;
                Ok(RelType::promote(t))
            }
            Tok::Num(1) => {
                self.bump();
                self.derived(span, DerivedForm::Unit)
            }
            Tok::Ident(w) if w == "Sum" || w == "Prod" => {
                self.bump();
                let (a, b) = self.two_types()?;
                let form = if w == "Sum" { DerivedForm::Sum(a, b) } else { DerivedForm::Prod(a, b) };
                self.derived(span, form)
            }
            Tok::Ident(w) if w == "Dparam" || w == "Dind" => {
                self.bump();
                self.expect(&Tok::LParen, "`(`")?;
                let (x, r) = self.bound_tvar(|p| {
                    p.expect(&Tok::Comma, "`,`")?;
                    p.ty()
                })?;
                self.expect(&Tok::RParen, "`)`")?;
                let form = if w == "Dparam" { DerivedForm::DParam(x, r) } else { DerivedForm::DInd(x, r) };
                self.derived(span.to(self.span_from(self.pos - 1)), form)
            }
            Tok::Ident(_) if self.at_ident() => {
                let x = self.ident()?;
                if self.tvars.contains(&x) {
                    return Ok(RelType::Free(x));
                }
                Ok(self.defs.types.get(&x).cloned().unwrap_or(RelType::Free(x)))
            }
            _ => Err(self.unexpected("a type")),
        }
    }

    // proofs

    fn proof(&mut self) -> PResult<(Proof, SpanTree)> {
        let start = self.pos;
        if self.eat_word("fun") {
            self.expect(&Tok::LParen, "`(`")?;
            let u = self.ident()?;
            self.expect(&Tok::Colon, "`:`")?;
            let x = self.ident()?;
            self.expect(&Tok::LBracket, "`[`")?;
            let ty = self.ty()?;
            self.expect(&Tok::RBracket, "`]`")?;
            let x_ = self.ident()?;
            self.expect(&Tok::RParen, "`)`")?;
            self.expect(&Tok::Implies, "`=>`")?;
            let (body, bs) = self.scoped_terms(&[x.clone(), x_.clone()], |p| p.proof())?;
            let p = Proof::Lam {
                var: u,
                left: x,
                ty,
                right: x_,
                body: Box::new(body),
            };
            return Ok((p, self.node(start, vec![bs])));
        }
        if self.eat_word("Fun") {
            let (x, (body, bs)) = self.bound_tvar(|p| {
                p.expect(&Tok::Implies, "`=>`")?;
                p.proof()
            })?;
            return Ok((Proof::TyLam(x, Box::new(body)), self.node(start, vec![bs])));
        }
        if self.eat_word("rho") {
            self.expect(&Tok::LBrace, "`{`")?;
            let x = self.ident()?;
            self.expect(&Tok::Dot, "`.`")?;
            let (left, right) = self.scoped_terms(&[x.clone()], |p| {
                let l = p.term()?;
                p.expect(&Tok::Comma, "`,`")?;
                let r = p.term()?;
                Ok((l, r))
            })?;
            self.expect(&Tok::RBrace, "`}`")?;
            let (eq, es) = self.proof_app()?;
            self.expect(&Tok::Minus, "`-`")?;
            let (body, bs) = self.proof()?;
            let p = Proof::Rho {
                var: x,
                left,
                right,
                eq: Box::new(eq),
                body: Box::new(body),
            };
            return Ok((p, self.node(start, vec![es, bs])));
        }
        if self.eat_word("pi") {
            let (s, ss) = self.proof_app()?;
            self.expect(&Tok::Minus, "`-`")?;
            let x = self.ident()?;
            let u = self.ident()?;
            let v = self.ident()?;
            self.expect(&Tok::Dot, "`.`")?;
            let (body, bs) = self.scoped_terms(&[x.clone()], |p| p.proof())?;
            let p = Proof::Pi {
                scrutinee: Box::new(s),
                var: x,
                left_proof: u,
                right_proof: v,
                body: Box::new(body),
            };
            return Ok((p, self.node(start, vec![ss, bs])));
        }
        if let Some(left) = self.attempt(|p| {
            let t = p.term()?;
            p.expect(&Tok::ConvL, "`<|`")?;
            Ok(t)
        }) {
            let (inner, is) = self.proof()?;
            self.expect(&Tok::ConvR, "`|>`")?;
            let right = self.term()?;
            return Ok((Proof::conv(left, inner, right), self.node(start, vec![is])));
        }
        self.proof_app()
    }

    fn scoped_terms<T>(&mut self, names: &[Name], f: impl FnOnce(&mut Self) -> PResult<T>) -> PResult<T> {
        let n = self.terms.len();
        self.terms.extend(names.iter().cloned());
        let r = f(self);
        self.terms.truncate(n);
        r
    }

    fn node(&self, start: usize, children: Vec<SpanTree>) -> SpanTree {
        SpanTree {
            span: self.span_from(start),
            children,
        }
    }

    fn at_proof_atom(&self) -> bool {
        self.at_ident() || self.at(&Tok::LParen) || self.at_word("iota")
    }

    fn proof_app(&mut self) -> PResult<(Proof, SpanTree)> {
        let start = self.pos;
        let (mut p, mut s) = if self.at_word("conv_i") || self.at_word("conv_e") {
            let intro = self.at_word("conv_i");
            self.bump();
            let (q, qs) = self.proof_atom()?;
            let p = if intro { Proof::conv_i(q) } else { Proof::conv_e(q) };
            (p, self.node(start, vec![qs]))
        } else {
            self.proof_atom()?
        };
        loop {
            if self.eat(&Tok::LBrace) {
                let r = self.ty()?;
                self.expect(&Tok::RBrace, "`}`")?;
                p = Proof::ty_app(p, r);
                s = self.node(start, vec![s]);
            } else if self.at_proof_atom() {
                let (a, as_) = self.proof_atom()?;
                p = Proof::app(p, a);
                s = self.node(start, vec![s, as_]);
            } else {
                return Ok((p, s));
            }
        }
    }

    fn proof_atom(&mut self) -> PResult<(Proof, SpanTree)> {
        let start = self.pos;
        if self.eat_word("iota") {
            self.expect(&Tok::LBrace, "`{`")?;
            let t = self.term()?;
            self.expect(&Tok::Comma, "`,`")?;
            let u = self.term()?;
            self.expect(&Tok::RBrace, "`}`")?;
            return Ok((Proof::Iota(t, u), SpanTree::leaf(self.span_from(start))));
        }
        if self.eat(&Tok::LParen) {
            let (first, fs) = self.proof()?;
            if self.eat(&Tok::Comma) {
                let (second, ss) = self.proof()?;
                self.expect_word("via")?;
                let mid = self.term()?;
                self.expect(&Tok::RParen, "`)`")?;
                return Ok((Proof::pair(first, second, mid), self.node(start, vec![fs, ss])));
            }
            self.expect(&Tok::RParen, "`)` or `,`")?;
            return Ok((first, fs));
        }
        let u = self.ident()?;
        Ok((Proof::Var(u), SpanTree::leaf(self.span_from(start))))
    }
}
