use crate::model::{PrefixMap, TriplePattern, Variable};

/// A parsed `SELECT` query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryAst {
    /// Base prefixes plus every `PREFIX` declared in the query.
    pub prefixes: PrefixMap,
    pub projection: Projection,
    pub pattern: GroupPattern,
    /// Non-fatal diagnostics, e.g. a projected variable that never occurs.
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projection {
    Star,
    Vars(Vec<Variable>),
}

/// `{ … }`: triple patterns, nested groups and `OPTIONAL` blocks, in
/// source order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupPattern {
    pub elements: Vec<PatternElement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternElement {
    Triple(TriplePattern),
    Group(GroupPattern),
    Optional(GroupPattern),
}

impl GroupPattern {
    /// Every variable mentioned anywhere in the group, in order of first
    /// appearance.
    pub fn variables(&self) -> Vec<Variable> {
        let mut out = Vec::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut Vec<Variable>) {
        for element in &self.elements {
            match element {
                PatternElement::Triple(tp) => {
                    for v in tp.variables() {
                        if !out.contains(v) {
                            out.push(v.clone());
                        }
                    }
                }
                PatternElement::Group(g) | PatternElement::Optional(g) => g.collect_variables(out),
            }
        }
    }
}

impl QueryAst {
    /// Result columns: the listed variables, or every pattern variable for `*`.
    pub fn result_variables(&self) -> Vec<Variable> {
        match &self.projection {
            Projection::Star => self.pattern.variables(),
            Projection::Vars(vars) => vars.clone(),
        }
    }
}
