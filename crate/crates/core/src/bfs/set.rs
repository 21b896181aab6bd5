use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::rational::{format_rational, in_neg_unit, in_unit};
use crate::{Error, HyperVectorSpace, Rational, Result, VectorSubset};

/// A pair of total grade maps, indexed by vector: `pos` into `[0, 1]`,
/// `neg` into `[-1, 0]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BipolarFuzzySet {
    pos: Vec<Rational>,
    neg: Vec<Rational>,
}

impl BipolarFuzzySet {
    pub fn new(pos: Vec<Rational>, neg: Vec<Rational>) -> Result<Self> {
        if pos.len() != neg.len() {
            return Err(Error::Structure(format!(
                "grade maps have different lengths ({} vs {})",
                pos.len(),
                neg.len()
            )));
        }
        if let Some((i, g)) = pos.iter().enumerate().find(|(_, g)| !in_unit(g)) {
            return Err(Error::Domain(format!(
                "positive grade {} at index {i} is outside [0,1]",
                format_rational(g)
            )));
        }
        if let Some((i, g)) = neg.iter().enumerate().find(|(_, g)| !in_neg_unit(g)) {
            return Err(Error::Domain(format!(
                "negative grade {} at index {i} is outside [-1,0]",
                format_rational(g)
            )));
        }
        Ok(Self { pos, neg })
    }

    pub fn constant(len: usize, pos: Rational, neg: Rational) -> Result<Self> {
        Self::new(vec![pos; len], vec![neg; len])
    }

    pub fn len(&self) -> usize {
        self.pos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pos.is_empty()
    }

    pub fn pos(&self, v: usize) -> Rational {
        self.pos[v]
    }

    pub fn neg(&self, v: usize) -> Rational {
        self.neg[v]
    }

    pub fn pos_grades(&self) -> &[Rational] {
        &self.pos
    }

    pub fn neg_grades(&self) -> &[Rational] {
        &self.neg
    }

    /// Realized positive grades, ascending.
    pub fn pos_image(&self) -> Vec<Rational> {
        self.pos
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Realized negative grades, ascending.
    pub fn neg_image(&self) -> Vec<Rational> {
        self.neg
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }
}

/// A parameter-indexed family of bipolar fuzzy sets over one space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipolarFuzzySoftSet {
    space: Arc<HyperVectorSpace>,
    params: Vec<String>,
    table: Vec<BipolarFuzzySet>,
}

impl BipolarFuzzySoftSet {
    pub fn new(
        space: Arc<HyperVectorSpace>,
        params: Vec<String>,
        table: Vec<BipolarFuzzySet>,
    ) -> Result<Self> {
        if params.len() != table.len() {
            return Err(Error::Structure(format!(
                "{} parameters but {} grade tables",
                params.len(),
                table.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for p in &params {
            if !seen.insert(p.as_str()) {
                return Err(Error::Structure(format!("duplicate parameter `{p}`")));
            }
        }
        if let Some((p, _)) = params
            .iter()
            .zip(&table)
            .find(|(_, g)| g.len() != space.len())
        {
            return Err(Error::Structure(format!(
                "grades for parameter `{p}` do not cover the carrier of `{}`",
                space.name()
            )));
        }
        Ok(Self {
            space,
            params,
            table,
        })
    }

    /// Every parameter gets the same `(pos, neg)` grade everywhere.
    pub fn constant(
        space: Arc<HyperVectorSpace>,
        params: Vec<String>,
        pos: Rational,
        neg: Rational,
    ) -> Result<Self> {
        let n = space.len();
        let table = params
            .iter()
            .map(|_| BipolarFuzzySet::constant(n, pos, neg))
            .collect::<Result<_>>()?;
        Self::new(space, params, table)
    }

    /// The constant `(1, -1)` set, the top of the containment order.
    pub fn top(space: Arc<HyperVectorSpace>, params: Vec<String>) -> Result<Self> {
        Self::constant(space, params, Rational::one(), -Rational::one())
    }

    pub fn zero(space: Arc<HyperVectorSpace>, params: Vec<String>) -> Result<Self> {
        Self::constant(space, params, Rational::zero(), Rational::zero())
    }

    pub fn space(&self) -> &HyperVectorSpace {
        &self.space
    }

    pub fn space_arc(&self) -> &Arc<HyperVectorSpace> {
        &self.space
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn table(&self) -> &[BipolarFuzzySet] {
        &self.table
    }

    pub fn param_index(&self, param: &str) -> Option<usize> {
        self.params.iter().position(|p| p == param)
    }

    pub fn grades(&self, param: &str) -> Option<&BipolarFuzzySet> {
        self.param_index(param).map(|i| &self.table[i])
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &BipolarFuzzySet)> {
        self.params.iter().map(String::as_str).zip(&self.table)
    }

    pub(crate) fn same_space(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || self.space == other.space
    }

    /// Rebuilds over the same space with new tables. Tables produced by the
    /// crate's operations are range-checked here as well.
    pub(crate) fn with_table(&self, params: Vec<String>, table: Vec<BipolarFuzzySet>) -> Self {
        Self::new(self.space.clone(), params, table).expect("operation preserved the shape")
    }
}

/// An `(alpha, beta)`-level soft subset: one cut per parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSoftSet {
    pub alpha: Rational,
    pub beta: Rational,
    pub cuts: Vec<(String, VectorSubset)>,
}

impl LevelSoftSet {
    pub fn cut(&self, param: &str) -> Option<&VectorSubset> {
        self.cuts.iter().find(|(p, _)| p == param).map(|(_, c)| c)
    }
}
