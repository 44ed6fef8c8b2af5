//! Syntactic classifiers over relational types.

use thiserror::Error;

use crate::reduction::{conv_check, ConvResult};
use crate::syntax::combinators::id;
use crate::syntax::{RelType, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Polarity {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Plus => Polarity::Minus,
            Polarity::Minus => Polarity::Plus,
        }
    }
}

impl std::fmt::Display for Polarity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Polarity::Plus => "+",
            Polarity::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ForallClass {
    PosOnly,
    NegOnly,
    Both,
    Neither,
}

impl ForallClass {
    fn from_pair(pos: bool, neg: bool) -> Self {
        match (pos, neg) {
            (true, true) => ForallClass::Both,
            (true, false) => ForallClass::PosOnly,
            (false, true) => ForallClass::NegOnly,
            (false, false) => ForallClass::Neither,
        }
    }

    pub fn is_pos(self) -> bool {
        matches!(self, ForallClass::PosOnly | ForallClass::Both)
    }

    pub fn is_neg(self) -> bool {
        matches!(self, ForallClass::NegOnly | ForallClass::Both)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("promotion convertibility undecided for {{{0}}}")]
    PromotionUndecided(String),
}

/// `X ∈^p R`: `x` occurs in `r` only with polarity `p`.
pub fn polarity_holds(x: &str, p: Polarity, r: &RelType) -> bool {
    match r {
        RelType::Free(n) => &**n != x || p == Polarity::Plus,
        RelType::Bound(_) | RelType::Promote(_) => true,
        RelType::Arrow(a, b) => polarity_holds(x, p.flip(), a) && polarity_holds(x, p, b),
        RelType::All(_, b) | RelType::Conv(b) => polarity_holds(x, p, b),
        RelType::Comp(a, b) => polarity_holds(x, p, a) && polarity_holds(x, p, b),
    }
}

fn is_identity(t: &Term, fuel: usize) -> Result<bool, AnalysisError> {
    match conv_check(t, &id(), fuel) {
        ConvResult::Equal => Ok(true),
        ConvResult::Distinct => Ok(false),
        ConvResult::Undecided => Err(AnalysisError::PromotionUndecided(t.to_string())),
    }
}

/// Computes whether `r` is ∀⁺ and whether it is ∀⁻. The universal clause
/// only ever yields ∀⁺, and no clause covers composition.
pub fn forall_class(r: &RelType, fuel: usize) -> Result<ForallClass, AnalysisError> {
    fn go(r: &RelType, fuel: usize) -> Result<(bool, bool), AnalysisError> {
        Ok(match r {
            RelType::Free(_) | RelType::Bound(_) => (true, true),
            RelType::Arrow(a, b) => {
                let (ap, an) = go(a, fuel)?;
                let (bp, bn) = go(b, fuel)?;
                (an && bp, ap && bn)
            }
            RelType::All(_, b) => (go(b, fuel)?.0, false),
            RelType::Conv(b) => go(b, fuel)?,
            RelType::Comp(..) => (false, false),
            RelType::Promote(t) => {
                let i = is_identity(t, fuel)?;
                (i, i)
            }
        })
    }
    let (pos, neg) = go(r, fuel)?;
    Ok(ForallClass::from_pair(pos, neg))
}

/// Recognizes `t..S`, the composition `{t} * S * {t}^`, in either
/// association order. Returns `(t, S)`.
pub fn match_dconj(r: &RelType) -> Option<(&Term, &RelType)> {
    let RelType::Comp(l, rest) = r else { return None };
    // {t} * (S * {t}^)
    if let (RelType::Promote(t), RelType::Comp(s, tail)) = (&**l, &**rest) {
        if let RelType::Conv(c) = &**tail {
            if let RelType::Promote(t2) = &**c {
                if t == t2 {
                    return Some((t, s));
                }
            }
        }
    }
    // ({t} * S) * {t}^
    if let (RelType::Comp(head, s), RelType::Conv(c)) = (&**l, &**rest) {
        if let (RelType::Promote(t), RelType::Promote(t2)) = (&**head, &**c) {
            if t == t2 {
                return Some((t, s));
            }
        }
    }
    None
}

/// Symmetric types: no composition outside the `t..S` pattern, and every
/// other promotion is convertible with the identity.
pub fn is_symmetric(r: &RelType, fuel: usize) -> Result<bool, AnalysisError> {
    if let Some((_, s)) = match_dconj(r) {
        return is_symmetric(s, fuel);
    }
    match r {
        RelType::Free(_) | RelType::Bound(_) => Ok(true),
        RelType::Arrow(a, b) => Ok(is_symmetric(a, fuel)? && is_symmetric(b, fuel)?),
        RelType::All(_, b) | RelType::Conv(b) => is_symmetric(b, fuel),
        RelType::Comp(..) => Ok(false),
        RelType::Promote(t) => is_identity(t, fuel),
    }
}

/// `T ::= P | P -> T | N -> T | t..T`
pub fn is_simple_transitive(r: &RelType, fuel: usize) -> Result<bool, AnalysisError> {
    if forall_class(r, fuel)?.is_pos() {
        return Ok(true);
    }
    if let Some((_, t)) = match_dconj(r) {
        return is_simple_transitive(t, fuel);
    }
    match r {
        RelType::Arrow(a, b) => {
            let ca = forall_class(a, fuel)?;
            Ok((ca.is_pos() || ca.is_neg()) && is_simple_transitive(b, fuel)?)
        }
        _ => Ok(false),
    }
}

/// One line of an `analyze` report.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct TypeReport {
    pub forall_class: ForallClass,
    pub symmetric: bool,
    pub simple_transitive: bool,
    /// For each free type variable, the polarities it satisfies.
    pub polarities: Vec<(String, Vec<Polarity>)>,
}

pub fn analyze_type(r: &RelType, fuel: usize) -> Result<TypeReport, AnalysisError> {
    let polarities = r
        .free_tvars()
        .into_iter()
        .map(|x| {
            let ps = [Polarity::Plus, Polarity::Minus]
                .into_iter()
                .filter(|p| polarity_holds(&x, *p, r))
                .collect();
            (x.to_string(), ps)
        })
        .collect();
    Ok(TypeReport {
        forall_class: forall_class(r, fuel)?,
        symmetric: is_symmetric(r, fuel)?,
        simple_transitive: is_simple_transitive(r, fuel)?,
        polarities,
    })
}
