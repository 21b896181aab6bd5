use crate::{Error, Result};

use super::check_table;

/// A finite field given by its addition and multiplication tables.
///
/// Elements are indexed `0..len()`; `labels` carries the ids used in source
/// files and in every printed witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    name: String,
    labels: Vec<String>,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    zero: usize,
    one: usize,
    neg: Vec<usize>,
    inv: Vec<Option<usize>>,
}

impl FiniteField {
    /// Validates totality and the field axioms by exhaustion.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let n = labels.len();
        if n < 2 {
            return Err(Error::Structure(
                "a field needs at least two elements".into(),
            ));
        }
        check_table("field addition", &add, n, n, n)?;
        check_table("field multiplication", &mul, n, n, n)?;
        if zero >= n || one >= n {
            return Err(Error::Structure("zero/one id out of range".into()));
        }
        if zero == one {
            return Err(Error::Structure("zero and one coincide".into()));
        }
        let label = |i: usize| labels[i].as_str();

        let all: Vec<usize> = (0..n).collect();
        let units: Vec<usize> = (0..n).filter(|&i| i != zero).collect();
        abelian_group("field addition", &add, &all, zero, &label)?;
        for &a in &units {
            for &b in &units {
                if mul[a][b] == zero {
                    return Err(Error::Structure(format!(
                        "field multiplication: {} * {} = zero, so non-zero elements are not closed",
                        label(a),
                        label(b)
                    )));
                }
            }
        }
        abelian_group("field multiplication", &mul, &units, one, &label)?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] {
                        return Err(Error::Structure(format!(
                            "field: {a} * ({b} + {c}) != {a} * {b} + {a} * {c}",
                            a = label(a),
                            b = label(b),
                            c = label(c)
                        )));
                    }
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
        let inv = (0..n)
            .map(|a| (a != zero).then(|| (0..n).find(|&b| mul[a][b] == one).expect("unit inverse")))
            .collect();
        Ok(Self {
            name: name.into(),
            labels,
            add,
            mul,
            zero,
            one,
            neg,
            inv,
        })
    }

    /// The prime field ℤ_p with labels `0..p-1`.
    pub fn prime(name: impl Into<String>, p: usize) -> Result<Self> {
        if p < 2 || (2..p).any(|d| d * d <= p && p.is_multiple_of(d)) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        let labels = (0..p).map(|i| i.to_string()).collect();
        let add = (0..p)
            .map(|a| (0..p).map(|b| (a + b) % p).collect())
            .collect();
        let mul = (0..p)
            .map(|a| (0..p).map(|b| (a * b) % p).collect())
            .collect();
        Self::new(name, labels, add, mul, 0, 1)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.labels.len()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: usize) -> Option<usize> {
        self.inv[a]
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }
}

/// Exhaustive abelian-group check of `table` restricted to `elems`.
pub(crate) fn abelian_group<'a>(
    what: &str,
    table: &[Vec<usize>],
    elems: &[usize],
    identity: usize,
    label: &dyn Fn(usize) -> &'a str,
) -> Result<()> {
    let member = |x: usize| elems.contains(&x);
    for &a in elems {
        for &b in elems {
            let ab = table[a][b];
            if !member(ab) {
                return Err(Error::Structure(format!(
                    "{what}: {} . {} leaves the set",
                    label(a),
                    label(b)
                )));
            }
            if ab != table[b][a] {
                return Err(Error::Structure(format!(
                    "{what}: not commutative at ({}, {})",
                    label(a),
                    label(b)
                )));
            }
            for &c in elems {
                if table[ab][c] != table[a][table[b][c]] {
                    return Err(Error::Structure(format!(
                        "{what}: not associative at ({}, {}, {})",
                        label(a),
                        label(b),
                        label(c)
                    )));
                }
            }
        }
        if table[identity][a] != a {
            return Err(Error::Structure(format!(
                "{what}: {} is not an identity ({} . {} != {})",
                label(identity),
                label(identity),
                label(a),
                label(a)
            )));
        }
        if !elems.iter().any(|&b| table[a][b] == identity) {
            return Err(Error::Structure(format!(
                "{what}: {} has no inverse",
                label(a)
            )));
        }
    }
    Ok(())
}
