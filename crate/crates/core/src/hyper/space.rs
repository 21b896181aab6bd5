use std::sync::Arc;

use crate::{Error, Result};

use super::field::abelian_group;
use super::{check_table, FiniteField, VectorSubset};

/// A finite hypervector space `(V, +, o, K)` held as explicit tables.
///
/// Construction checks only structure: `(V, +)` is an abelian group and
/// every hyperoperation cell is a non-empty subset of `V`. Whether the
/// axioms H1–H5 hold is a question answered by
/// [`check_hvs_axioms`](super::check_hvs_axioms), not a construction gate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperVectorSpace {
    name: String,
    labels: Vec<String>,
    add: Vec<Vec<usize>>,
    zero: usize,
    neg: Vec<usize>,
    field: Arc<FiniteField>,
    /// `hyperop[b][y]` is `b o y`.
    hyperop: Vec<Vec<VectorSubset>>,
}

impl HyperVectorSpace {
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        add: Vec<Vec<usize>>,
        zero: usize,
        field: Arc<FiniteField>,
        hyperop: Vec<Vec<VectorSubset>>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Structure("empty carrier".into()));
        }
        check_table("vector addition", &add, n, n, n)?;
        if zero >= n {
            return Err(Error::Structure("zero vector id out of range".into()));
        }
        let label = |i: usize| labels[i].as_str();
        let all: Vec<usize> = (0..n).collect();
        abelian_group("vector addition", &add, &all, zero, &label)?;

        if hyperop.len() != field.len() {
            return Err(Error::Structure(format!(
                "hyperoperation table has {} scalar rows, field has {} elements",
                hyperop.len(),
                field.len()
            )));
        }
        for (b, row) in hyperop.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Structure(format!(
                    "hyperoperation row {} has {} cells, expected {n}",
                    field.label(b),
                    row.len()
                )));
            }
            for (y, cell) in row.iter().enumerate() {
                if cell.is_empty() {
                    return Err(Error::Structure(format!(
                        "hyperoperation cell {} o {} is empty",
                        field.label(b),
                        label(y)
                    )));
                }
                if let Some(bad) = cell.iter().find(|&v| v >= n) {
                    return Err(Error::Structure(format!(
                        "hyperoperation cell {} o {} holds id {bad}, out of range 0..{n}",
                        field.label(b),
                        label(y)
                    )));
                }
            }
        }
        let neg = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| add[a][b] == zero)
                    .expect("group inverse exists")
            })
            .collect();
        Ok(Self {
            name: name.into(),
            labels,
            add,
            zero,
            neg,
            field,
            hyperop,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FiniteField> {
        &self.field
    }

    /// Number of vectors.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn carrier(&self) -> std::ops::Range<usize> {
        0..self.labels.len()
    }

    pub fn carrier_set(&self) -> VectorSubset {
        self.carrier().collect()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn add(&self, y: usize, z: usize) -> usize {
        self.add[y][z]
    }

    pub fn neg(&self, y: usize) -> usize {
        self.neg[y]
    }

    pub fn sub(&self, y: usize, z: usize) -> usize {
        self.add[y][self.neg[z]]
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    /// `b o y`.
    pub fn hyper(&self, b: usize, y: usize) -> &VectorSubset {
        &self.hyperop[b][y]
    }

    /// `b o S`, the union of `b o s` over `s` in `set`.
    pub fn hyper_set(&self, b: usize, set: &VectorSubset) -> VectorSubset {
        set.iter().flat_map(|s| self.hyperop[b][s].iter()).collect()
    }

    /// Elementwise sum `A + B = {a + b}`.
    pub fn set_sum(&self, a: &VectorSubset, b: &VectorSubset) -> VectorSubset {
        a.iter()
            .flat_map(|x| b.iter().map(move |y| self.add[x][y]))
            .collect()
    }

    /// Elementwise negation `-A`.
    pub fn set_neg(&self, a: &VectorSubset) -> VectorSubset {
        a.iter().map(|x| self.neg[x]).collect()
    }

    pub fn format_set(&self, set: &VectorSubset) -> String {
        let items: Vec<&str> = set.iter().map(|v| self.label(v)).collect();
        format!("{{{}}}", items.join(","))
    }
}

/// The classical space `K` over itself, with `b o x = {b x}`.
pub fn classical_hvs_from_field(field: &FiniteField) -> Result<HyperVectorSpace> {
    let hyperop = field
        .elements()
        .map(|b| {
            field
                .elements()
                .map(|x| VectorSubset::singleton(field.mul(b, x)))
                .collect()
        })
        .collect();
    HyperVectorSpace::new(
        field.name(),
        field.labels().to_vec(),
        field.add_table().to_vec(),
        field.zero(),
        Arc::new(field.clone()),
        hyperop,
    )
}
