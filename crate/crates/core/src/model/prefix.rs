use std::collections::BTreeMap;

use super::{Iri, ModelError};

/// Prefix label to namespace IRI. The empty label is allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixMap {
    entries: BTreeMap<String, Iri>,
}

impl PrefixMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `label`, returning the namespace it replaced, if any.
    pub fn insert(&mut self, label: impl Into<String>, namespace: Iri) -> Option<Iri> {
        self.entries.insert(label.into(), namespace)
    }

    pub fn get(&self, label: &str) -> Option<&Iri> {
        self.entries.get(label)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Iri)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds every entry of `other`, overriding labels already present.
    pub fn extend(&mut self, other: &PrefixMap) {
        for (label, ns) in other.iter() {
            self.insert(label, ns.clone());
        }
    }

    /// Resolves `pfx:local` against the registered namespaces.
    pub fn expand(&self, prefixed_name: &str) -> Result<Iri, ModelError> {
        let (label, local) = prefixed_name
            .split_once(':')
            .ok_or_else(|| ModelError::MalformedName(prefixed_name.to_string()))?;
        if !is_pn_prefix(label) || !is_pn_local(local) {
            return Err(ModelError::MalformedName(prefixed_name.to_string()));
        }
        let namespace = self
            .entries
            .get(label)
            .ok_or_else(|| ModelError::UnknownPrefix(label.to_string()))?;
        Iri::new(format!("{}{}", namespace.as_str(), local))
    }

    /// Shortest readable form: `pfx:local` using the longest matching
    /// namespace whose remainder is a legal local name, else `<iri>`.
    pub fn compact(&self, iri: &Iri) -> String {
        self.try_compact(iri).unwrap_or_else(|| iri.to_string())
    }

    pub fn try_compact(&self, iri: &Iri) -> Option<String> {
        let value = iri.as_str();
        let mut candidates: Vec<(&String, &Iri)> = self
            .entries
            .iter()
            .filter(|(_, ns)| value.starts_with(ns.as_str()))
            .collect();
        candidates.sort_by(|a, b| b.1.as_str().len().cmp(&a.1.as_str().len()).then(a.0.cmp(b.0)));
        candidates.into_iter().find_map(|(label, ns)| {
            let local = &value[ns.as_str().len()..];
            is_pn_local(local).then(|| format!("{label}:{local}"))
        })
    }
}

pub fn is_pn_chars_base(c: char) -> bool {
    c.is_ascii_alphabetic()
        || matches!(c,
            '\u{00C0}'..='\u{00D6}'
            | '\u{00D8}'..='\u{00F6}'
            | '\u{00F8}'..='\u{02FF}'
            | '\u{0370}'..='\u{037D}'
            | '\u{037F}'..='\u{1FFF}'
            | '\u{200C}'..='\u{200D}'
            | '\u{2070}'..='\u{218F}'
            | '\u{2C00}'..='\u{2FEF}'
            | '\u{3001}'..='\u{D7FF}'
            | '\u{F900}'..='\u{FDCF}'
            | '\u{FDF0}'..='\u{FFFD}'
            | '\u{10000}'..='\u{EFFFF}')
}

pub fn is_pn_chars_u(c: char) -> bool {
    is_pn_chars_base(c) || c == '_'
}

pub fn is_pn_chars(c: char) -> bool {
    is_pn_chars_u(c)
        || c == '-'
        || c.is_ascii_digit()
        || matches!(c, '\u{00B7}' | '\u{0300}'..='\u{036F}' | '\u{203F}'..='\u{2040}')
}

/// Prefix label; may be empty.
pub fn is_pn_prefix(label: &str) -> bool {
    let chars: Vec<char> = label.chars().collect();
    match chars.as_slice() {
        [] => true,
        [first] => is_pn_chars_base(*first),
        [first, middle @ .., last] => {
            is_pn_chars_base(*first) && middle.iter().all(|&c| is_pn_chars(c) || c == '.') && is_pn_chars(*last)
        }
    }
}

/// Local part of a prefixed name. Leading digits and interior `:` are
/// legal, so `2:50` is a valid local name. Escapes are not supported.
pub fn is_pn_local(local: &str) -> bool {
    let chars: Vec<char> = local.chars().collect();
    let first_ok = |c: char| is_pn_chars_u(c) || c == ':' || c.is_ascii_digit();
    let mid_ok = |c: char| is_pn_chars(c) || c == '.' || c == ':';
    let last_ok = |c: char| is_pn_chars(c) || c == ':';
    match chars.as_slice() {
        [] => true,
        [only] => first_ok(*only),
        [first, middle @ .., last] => first_ok(*first) && middle.iter().all(|&c| mid_ok(c)) && last_ok(*last),
    }
}
