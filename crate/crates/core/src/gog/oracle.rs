use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::model::GraphOfGroups;
use super::table::TableOracle;
use super::EndRef;
use crate::exactlin::RationalSubspace;

/// A commensurability class of a subgroup of some vertex group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassToken {
    Span(RationalSubspace),
    Label(String),
}

impl ClassToken {
    pub fn span(&self) -> Option<&RationalSubspace> {
        match self {
            ClassToken::Span(s) => Some(s),
            ClassToken::Label(_) => None,
        }
    }
}

impl fmt::Display for ClassToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassToken::Span(s) => write!(f, "{s}"),
            ClassToken::Label(l) => write!(f, "{l}"),
        }
    }
}

impl Serialize for ClassToken {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ClassToken::Span(s) => s.serialize(serializer),
            ClassToken::Label(l) => serializer.serialize_str(l),
        }
    }
}

/// Index of an edge group's image in a vertex group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Index {
    Finite(BigInt),
    Infinite,
}

impl Index {
    pub fn is_finite(&self) -> bool {
        matches!(self, Index::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Index::Finite(n) => Some(n),
            Index::Infinite => None,
        }
    }

    pub fn mul(&self, other: &Index) -> Index {
        match (self, other) {
            (Index::Finite(a), Index::Finite(b)) => Index::Finite(a * b),
            _ => Index::Infinite,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Index {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Index::Finite(n) => crate::exactlin::int_to_json(n).serialize(serializer),
            Index::Infinite => serializer.serialize_str("infinite"),
        }
    }
}

/// Decides coarse containment between commensurability classes of subgroups
/// at a vertex, and moves classes across edges.
pub trait CommOracle {
    fn name(&self) -> &'static str;

    /// Class of the whole vertex group.
    fn top_class(&self, vertex: usize) -> ClassToken;

    /// Class of the image of the edge group at the given end.
    fn class_of(&self, end: EndRef) -> ClassToken;

    /// Coarse containment `a ⊆_c b` of classes at the same vertex, conjugates included.
    fn leq(&self, vertex: usize, a: &ClassToken, b: &ClassToken) -> bool;

    fn strictly_less(&self, vertex: usize, a: &ClassToken, b: &ClassToken) -> bool {
        self.leq(vertex, a, b) && !self.leq(vertex, b, a)
    }

    fn equivalent(&self, vertex: usize, a: &ClassToken, b: &ClassToken) -> bool {
        self.leq(vertex, a, b) && self.leq(vertex, b, a)
    }

    /// Moves a class at the vertex of `end` across the edge to the opposite
    /// vertex. `None` when the oracle has no answer.
    fn transport(&self, class: &ClassToken, end: EndRef) -> Option<ClassToken>;

    fn finite_index_end(&self, end: EndRef) -> bool;

    fn index(&self, end: EndRef) -> Index;

    /// Index of the image, defined when [`CommOracle::finite_index_end`] holds.
    fn index_value(&self, end: EndRef) -> Option<BigInt> {
        self.index(end).finite().cloned()
    }

    /// Surjective edge-to-vertex injection.
    fn is_surjective(&self, end: EndRef) -> bool {
        self.index_value(end).is_some_and(|n| n.is_one())
    }
}

/// Oracle for graphs of finitely generated abelian groups: a class is the
/// rational span of a subgroup.
pub struct AbelianOracle<'g> {
    g: &'g GraphOfGroups,
}

impl<'g> AbelianOracle<'g> {
    pub fn new(g: &'g GraphOfGroups) -> Self {
        AbelianOracle { g }
    }
}

impl CommOracle for AbelianOracle<'_> {
    fn name(&self) -> &'static str {
        "abelian"
    }

    fn top_class(&self, vertex: usize) -> ClassToken {
        ClassToken::Span(RationalSubspace::full(self.g.vertices()[vertex].rank))
    }

    fn class_of(&self, end: EndRef) -> ClassToken {
        ClassToken::Span(self.g.end(end).matrix.column_span())
    }

    fn leq(&self, _vertex: usize, a: &ClassToken, b: &ClassToken) -> bool {
        match (a, b) {
            (ClassToken::Span(a), ClassToken::Span(b)) => b.contains(a).unwrap_or(false),
            _ => false,
        }
    }

    fn transport(&self, class: &ClassToken, end: EndRef) -> Option<ClassToken> {
        let span = class.span()?;
        let here = &self.g.end(end).matrix;
        let there = &self.g.end(end.opposite()).matrix;
        let pulled = span.preimage(here).ok()?;
        pulled.image(there).ok().map(ClassToken::Span)
    }

    fn finite_index_end(&self, end: EndRef) -> bool {
        self.index(end).is_finite()
    }

    fn index(&self, end: EndRef) -> Index {
        let m = &self.g.end(end).matrix;
        if !m.is_square() {
            return Index::Infinite;
        }
        match m.determinant() {
            Ok(d) if !d.is_zero() && d.is_integer() => Index::Finite(d.to_integer().abs()),
            _ => Index::Infinite,
        }
    }
}

/// A [`TableOracle`] bound to its graph.
pub struct TableView<'g> {
    g: &'g GraphOfGroups,
    table: &'g TableOracle,
}

impl<'g> TableView<'g> {
    pub fn new(g: &'g GraphOfGroups, table: &'g TableOracle) -> Self {
        TableView { g, table }
    }

    fn label<'a>(&self, c: &'a ClassToken) -> Option<&'a str> {
        match c {
            ClassToken::Label(l) => Some(l),
            ClassToken::Span(_) => None,
        }
    }
}

impl CommOracle for TableView<'_> {
    fn name(&self) -> &'static str {
        "table"
    }

    fn top_class(&self, vertex: usize) -> ClassToken {
        let id = &self.g.vertices()[vertex].id;
        ClassToken::Label(self.table.tops.get(id).cloned().unwrap_or_else(|| id.clone()))
    }

    fn class_of(&self, end: EndRef) -> ClassToken {
        let id = &self.g.edges()[end.edge].id;
        ClassToken::Label(
            self.table
                .classes
                .get(id)
                .map(|c| c[end.end].clone())
                .unwrap_or_else(|| format!("{id}#{}", end.end)),
        )
    }

    fn leq(&self, vertex: usize, a: &ClassToken, b: &ClassToken) -> bool {
        match (self.label(a), self.label(b)) {
            (Some(a), Some(b)) => self.table.leq(&self.g.vertices()[vertex].id, a, b),
            _ => false,
        }
    }

    fn transport(&self, class: &ClassToken, end: EndRef) -> Option<ClassToken> {
        let label = self.label(class)?;
        let id = &self.g.edges()[end.edge].id;
        self.table
            .transport_label(id, end.end, label)
            .map(ClassToken::Label)
    }

    fn finite_index_end(&self, end: EndRef) -> bool {
        self.index(end).is_finite()
    }

    fn index(&self, end: EndRef) -> Index {
        let id = &self.g.edges()[end.edge].id;
        self.table
            .indices
            .get(id)
            .map(|ix| ix[end.end].clone())
            .unwrap_or(Index::Infinite)
    }
}
