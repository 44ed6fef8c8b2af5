use std::collections::BTreeSet;
use std::sync::Arc;

/// Variable names. Shared so that cloning terms stays cheap.
pub type Name = Arc<str>;

/// Combining dot above. Appended to a name to form its dotted copy; never
/// accepted in user-written scripts.
pub const DOT_MARK: char = '\u{0307}';

pub fn name(s: &str) -> Name {
    Arc::from(s)
}

pub fn is_dotted(n: &str) -> bool {
    n.contains(DOT_MARK)
}

/// The injective dotted renaming of a single variable name.
pub fn dotted(n: &str) -> Name {
    let mut s = String::with_capacity(n.len() + 2);
    let mut chars = n.chars();
    if let Some(c) = chars.next() {
        s.push(c);
        s.push(DOT_MARK);
    }
    s.extend(chars);
    Arc::from(s)
}

/// Returns `base` itself if it is not in `avoid`, otherwise the first
/// `base1`, `base2`, ... that is not. Deterministic in its inputs.
pub fn fresh(base: &str, avoid: &BTreeSet<Name>) -> Name {
    if !avoid.contains(base) {
        return name(base);
    }
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { base } else { stem };
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|cand| !avoid.contains(cand.as_str()))
        .map(|s| name(&s))
        .expect("infinite candidate supply")
}

/// A stateful supply of fresh names, for builders that generate many
/// binders and need them globally distinct.
#[derive(Debug, Clone, Default)]
pub struct NameSupply {
    used: BTreeSet<Name>,
}

impl NameSupply {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn avoiding<I: IntoIterator<Item = Name>>(names: I) -> Self {
        NameSupply {
            used: names.into_iter().collect(),
        }
    }

    pub fn reserve<I: IntoIterator<Item = Name>>(&mut self, names: I) {
        self.used.extend(names);
    }

    pub fn fresh(&mut self, base: &str) -> Name {
        let n = fresh(base, &self.used);
        self.used.insert(n.clone());
        n
    }
}
