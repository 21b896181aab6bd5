//! The `.hvs` text format.
//!
//! ```text
//! # comment
//! field Z2
//!   elements 0 1
//!   zero 0
//!   one 1
//!   0 + 1 = 1        # every a + b and a * b cell
//!   1 * 1 = 1
//! end
//!
//! space Z4 over Z2
//!   elements 0 1 2 3
//!   zero 0
//!   1 + 3 = 0        # every y + z cell
//!   1 o 1 = {1,2,3}  # every scalar-vector cell
//! end
//!
//! bfs G on Z4
//!   params c d
//!   c 0 = (1/2, -2/5)  # every parameter-vector cell
//! end
//! ```
//!
//! Sections may appear in any order and reference each other forward.
//! Grades are fractions or exact decimals.

mod parse;
mod write;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use parse::{parse_document, ParseError};
pub use write::serialize_document;

use crate::{BipolarFuzzySoftSet, Error, FiniteField, HyperVectorSpace, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DefKind {
    Field,
    Space,
    Bfs,
}

impl DefKind {
    pub fn keyword(self) -> &'static str {
        match self {
            DefKind::Field => "field",
            DefKind::Space => "space",
            DefKind::Bfs => "bfs",
        }
    }
}

/// 1-based source position of a definition header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

/// Named fields, spaces and bfs sets. Equality ignores source spans.
#[derive(Debug, Clone, Default)]
pub struct Document {
    fields: BTreeMap<String, Arc<FiniteField>>,
    spaces: BTreeMap<String, Arc<HyperVectorSpace>>,
    bfs_sets: BTreeMap<String, BipolarFuzzySoftSet>,
    spans: BTreeMap<(DefKind, String), Span>,
}

impl PartialEq for Document {
    fn eq(&self, other: &Self) -> bool {
        self.fields == other.fields
            && self.spaces == other.spaces
            && self.bfs_sets == other.bfs_sets
    }
}

impl Eq for Document {}

impl Document {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty() && self.spaces.is_empty() && self.bfs_sets.is_empty()
    }

    pub fn fields(&self) -> &BTreeMap<String, Arc<FiniteField>> {
        &self.fields
    }

    pub fn spaces(&self) -> &BTreeMap<String, Arc<HyperVectorSpace>> {
        &self.spaces
    }

    pub fn bfs_sets(&self) -> &BTreeMap<String, BipolarFuzzySoftSet> {
        &self.bfs_sets
    }

    pub fn field(&self, name: &str) -> Option<&Arc<FiniteField>> {
        self.fields.get(name)
    }

    pub fn space(&self, name: &str) -> Option<&Arc<HyperVectorSpace>> {
        self.spaces.get(name)
    }

    pub fn bfs(&self, name: &str) -> Option<&BipolarFuzzySoftSet> {
        self.bfs_sets.get(name)
    }

    pub fn span(&self, kind: DefKind, name: &str) -> Option<Span> {
        self.spans.get(&(kind, name.to_string())).copied()
    }

    /// Adds a field under its own name. Re-adding an identical field is a
    /// no-op.
    pub fn insert_field(&mut self, field: Arc<FiniteField>) -> Result<()> {
        let name = field.name().to_string();
        check_names(&name, field.labels())?;
        match self.fields.get(&name) {
            Some(old) if **old != *field => Err(Error::Structure(format!(
                "a different field `{name}` already exists"
            ))),
            Some(_) => Ok(()),
            None => {
                self.fields.insert(name, field);
                Ok(())
            }
        }
    }

    /// Adds a space under its own name, together with its field.
    pub fn insert_space(&mut self, space: Arc<HyperVectorSpace>) -> Result<()> {
        let name = space.name().to_string();
        check_names(&name, space.labels())?;
        if let Some(old) = self.spaces.get(&name) {
            return if **old != *space {
                Err(Error::Structure(format!(
                    "a different space `{name}` already exists"
                )))
            } else {
                Ok(())
            };
        }
        self.insert_field(space.field_arc().clone())?;
        self.spaces.insert(name, space);
        Ok(())
    }

    /// Adds (or replaces) a bfs set, together with its space and field.
    pub fn insert_bfs(&mut self, name: impl Into<String>, g: BipolarFuzzySoftSet) -> Result<()> {
        let name = name.into();
        check_names(&name, g.params())?;
        self.insert_space(g.space_arc().clone())?;
        self.bfs_sets.insert(name, g);
        Ok(())
    }

    pub(crate) fn record_span(&mut self, kind: DefKind, name: &str, span: Span) {
        self.spans.insert((kind, name.to_string()), span);
    }
}

fn check_names(name: &str, labels: &[String]) -> Result<()> {
    parse::check_name(name).map_err(Error::Structure)?;
    labels
        .iter()
        .try_for_each(|l| parse::check_name(l))
        .map_err(Error::Structure)
}
