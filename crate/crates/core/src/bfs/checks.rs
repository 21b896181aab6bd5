//! The five equivalent characterizations of a bfs-hvs.

use num_traits::Zero;

use super::ops::{bfs_negate, bfs_scalar, bfs_sum, containment_witness, cut, ContainmentWitness};
use super::BipolarFuzzySoftSet;
use crate::hyper::{check_hvs_axioms, subspace::witness_unchecked, SubspaceWitness};
use crate::rational::format_rational;
use crate::{Error, Rational, Result, VectorSubset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pole {
    Positive,
    Negative,
}

impl Pole {
    pub fn sign(self) -> &'static str {
        match self {
            Pole::Positive => "+",
            Pole::Negative => "-",
        }
    }
}

/// Which inclusion of a containment-style characterization failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContainmentLaw {
    /// `G + G ⊑ G`
    SumSelf,
    /// `-G ⊑ G`
    Negation,
    /// `b∘G ⊑ G`
    Scalar(usize),
    /// `b∘G + c∘G ⊑ G`
    ScalarSum(usize, usize),
}

/// A concrete refutation, reported with internal indices. Use
/// [`BfsWitness::describe`] for labels from the source file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BfsWitness {
    /// `G(y - z)` is worse than `G(y) ∧ G(z)` on `pole`.
    Difference {
        param: String,
        y: usize,
        z: usize,
        pole: Pole,
    },
    /// Some `r ∈ b∘y` has a grade worse than `G(y)` on `pole`.
    Hyper {
        param: String,
        b: usize,
        y: usize,
        pole: Pole,
    },
    Containment {
        law: ContainmentLaw,
        detail: ContainmentWitness,
    },
    /// A non-empty level cut that is not a subhyperspace.
    Level {
        param: String,
        alpha: Rational,
        beta: Rational,
        cut: VectorSubset,
        reason: SubspaceWitness,
    },
    /// Some `t ∈ a∘x + b∘y` has a grade worse than `G(x) ∧ G(y)`.
    Combo {
        param: String,
        a: usize,
        x: usize,
        b: usize,
        y: usize,
        pole: Pole,
    },
}

impl BfsWitness {
    pub fn describe(&self, g: &BipolarFuzzySoftSet) -> String {
        let v = g.space();
        let k = v.field();
        match self {
            BfsWitness::Difference { param, y, z, pole } => format!(
                "{param}{}: grade of {} - {} = {} is below the meet of the grades of {} and {}",
                pole.sign(),
                v.label(*y),
                v.label(*z),
                v.label(v.sub(*y, *z)),
                v.label(*y),
                v.label(*z)
            ),
            BfsWitness::Hyper { param, b, y, pole } => format!(
                "{param}{}: some element of {} o {} = {} has a grade below that of {}",
                pole.sign(),
                k.label(*b),
                v.label(*y),
                v.format_set(v.hyper(*b, *y)),
                v.label(*y)
            ),
            BfsWitness::Containment { law, detail } => {
                let lhs = match law {
                    ContainmentLaw::SumSelf => "G + G".to_string(),
                    ContainmentLaw::Negation => "-G".to_string(),
                    ContainmentLaw::Scalar(b) => format!("{} o G", k.label(*b)),
                    ContainmentLaw::ScalarSum(b, c) => {
                        format!("{} o G + {} o G", k.label(*b), k.label(*c))
                    }
                };
                match detail {
                    ContainmentWitness::MissingParameter(p) => {
                        format!("{lhs} is not contained in G: parameter {p} missing")
                    }
                    ContainmentWitness::Grade {
                        param,
                        vector,
                        pole,
                    } => format!(
                        "{lhs} is not contained in G: {param}{} exceeds at {}",
                        pole.sign(),
                        v.label(*vector)
                    ),
                }
            }
            BfsWitness::Level {
                param,
                alpha,
                beta,
                cut,
                reason,
            } => format!(
                "{param} at ({}, {}): cut {} is not a subhyperspace ({})",
                format_rational(alpha),
                format_rational(beta),
                v.format_set(cut),
                reason.describe(v)
            ),
            BfsWitness::Combo {
                param,
                a,
                x,
                b,
                y,
                pole,
            } => format!(
                "{param}{}: some element of {} o {} + {} o {} has a grade below the meet of the grades of {} and {}",
                pole.sign(),
                k.label(*a),
                v.label(*x),
                k.label(*b),
                v.label(*y),
                v.label(*x),
                v.label(*y)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<BfsWitness>,
}

impl Verdict {
    fn from_witness(witness: Option<BfsWitness>) -> Self {
        Self {
            holds: witness.is_none(),
            witness,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Direct,
    Iff1,
    Levels,
    Combo,
    ScalarSum,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Direct,
        Method::Iff1,
        Method::Levels,
        Method::Combo,
        Method::ScalarSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Iff1 => "iff1",
            Method::Levels => "levels",
            Method::Combo => "combo",
            Method::ScalarSum => "scalarsum",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Method::ALL.into_iter().find(|m| m.name() == name)
    }

    /// Whether the characterization needs an sld hvs.
    pub fn needs_sld(self) -> bool {
        matches!(self, Method::Combo | Method::ScalarSum)
    }
}

pub fn check_bfs(g: &BipolarFuzzySoftSet, method: Method) -> Result<Verdict> {
    match method {
        Method::Direct => Ok(is_bfs_hvs_direct(g)),
        Method::Iff1 => is_bfs_hvs_iff1(g),
        Method::Levels => Ok(is_bfs_hvs_levels(g)),
        Method::Combo => is_bfs_hvs_combo(g),
        Method::ScalarSum => is_bfs_hvs_scalarsum(g),
    }
}

/// The defining conditions: for every parameter `e`, vectors `y, z` and
/// scalar `b`,
///
/// - `G⁺(y-z) ≥ G⁺(y) ∧ G⁺(z)` and `G⁻(y-z) ≤ G⁻(y) ∨ G⁻(z)`;
/// - `⋀_{r∈b∘y} G⁺(r) ≥ G⁺(y)` and `⋁_{r∈b∘y} G⁻(r) ≤ G⁻(y)`.
pub fn is_bfs_hvs_direct(g: &BipolarFuzzySoftSet) -> Verdict {
    let v = g.space();
    for (param, ge) in g.entries() {
        for y in v.carrier() {
            for z in v.carrier() {
                let d = v.sub(y, z);
                let pole = if ge.pos(d) < ge.pos(y).min(ge.pos(z)) {
                    Pole::Positive
                } else if ge.neg(d) > ge.neg(y).max(ge.neg(z)) {
                    Pole::Negative
                } else {
                    continue;
                };
                return Verdict::from_witness(Some(BfsWitness::Difference {
                    param: param.to_string(),
                    y,
                    z,
                    pole,
                }));
            }
        }
        for b in v.field().elements() {
            for y in v.carrier() {
                let cell = v.hyper(b, y);
                let pole = if cell.iter().any(|r| ge.pos(r) < ge.pos(y)) {
                    Pole::Positive
                } else if cell.iter().any(|r| ge.neg(r) > ge.neg(y)) {
                    Pole::Negative
                } else {
                    continue;
                };
                return Verdict::from_witness(Some(BfsWitness::Hyper {
                    param: param.to_string(),
                    b,
                    y,
                    pole,
                }));
            }
        }
    }
    Verdict::from_witness(None)
}

/// `G + G ⊑ G`, `-G ⊑ G` and `b∘G ⊑ G` for every scalar `b`.
pub fn is_bfs_hvs_iff1(g: &BipolarFuzzySoftSet) -> Result<Verdict> {
    let fail = |law, detail| {
        Ok(Verdict::from_witness(Some(BfsWitness::Containment {
            law,
            detail,
        })))
    };
    if let Some(w) = containment_witness(&bfs_sum(g, g)?, g)? {
        return fail(ContainmentLaw::SumSelf, w);
    }
    if let Some(w) = containment_witness(&bfs_negate(g), g)? {
        return fail(ContainmentLaw::Negation, w);
    }
    for b in g.space().field().elements() {
        if let Some(w) = containment_witness(&bfs_scalar(b, g)?, g)? {
            return fail(ContainmentLaw::Scalar(b), w);
        }
    }
    Ok(Verdict::from_witness(None))
}

/// Which thresholds the level characterization quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThresholdRange {
    /// `alpha ∈ [0,1]`, `beta ∈ [-1,0]`. Sound and complete.
    #[default]
    Closed,
    /// `alpha ∈ (0,1]`, `beta ∈ [-1,0)`, the range of the level soft subset.
    /// Misses violations hiding at grade 0, e.g. `G⁺ ≡ 0` with an
    /// unbalanced negative pole.
    Open,
}

/// Every non-empty level cut is a subhyperspace.
pub fn is_bfs_hvs_levels(g: &BipolarFuzzySoftSet) -> Verdict {
    is_bfs_hvs_levels_with(g, ThresholdRange::Closed)
}

/// Level characterization over the chosen threshold range.
///
/// Cuts only change at realized grades, so the thresholds tested are the
/// realized images: `alpha` descending through `Im(G⁺)`, `beta` ascending
/// through `Im(G⁻)`, strictest cut first. Empty cuts are accepted.
pub fn is_bfs_hvs_levels_with(g: &BipolarFuzzySoftSet, range: ThresholdRange) -> Verdict {
    let v = g.space();
    let zero = Rational::zero();
    for (param, ge) in g.entries() {
        let alphas = ge
            .pos_image()
            .into_iter()
            .rev()
            .filter(|a| range == ThresholdRange::Closed || *a > zero);
        let betas: Vec<Rational> = ge
            .neg_image()
            .into_iter()
            .filter(|b| range == ThresholdRange::Closed || *b < zero)
            .collect();
        for alpha in alphas {
            for &beta in &betas {
                let level = cut(ge, alpha, beta);
                if level.is_empty() {
                    continue;
                }
                if let Some(reason) = witness_unchecked(v, &level) {
                    return Verdict::from_witness(Some(BfsWitness::Level {
                        param: param.to_string(),
                        alpha,
                        beta,
                        cut: level,
                        reason,
                    }));
                }
            }
        }
    }
    Verdict::from_witness(None)
}

fn require_sld_hvs(g: &BipolarFuzzySoftSet, method: Method) -> Result<()> {
    let report = check_hvs_axioms(g.space());
    if !report.is_hvs() {
        return Err(Error::Hypothesis(format!(
            "{} needs an sld hypervector space; `{}` fails H1-H5",
            method.name(),
            g.space().name()
        )));
    }
    if !report.is_sld() {
        return Err(Error::Hypothesis(format!(
            "{} needs an sld hypervector space; `{}` is not sld",
            method.name(),
            g.space().name()
        )));
    }
    Ok(())
}

/// `⋀_{t∈a∘x+b∘y} G⁺(t) ≥ G⁺(x) ∧ G⁺(y)` and dually, for all `a, b, x, y`.
/// Only certified on sld spaces.
pub fn is_bfs_hvs_combo(g: &BipolarFuzzySoftSet) -> Result<Verdict> {
    require_sld_hvs(g, Method::Combo)?;
    let v = g.space();
    let k = v.field();
    for (param, ge) in g.entries() {
        for x in v.carrier() {
            for y in v.carrier() {
                let lo = ge.pos(x).min(ge.pos(y));
                let hi = ge.neg(x).max(ge.neg(y));
                for a in k.elements() {
                    for b in k.elements() {
                        let combo = v.set_sum(v.hyper(a, x), v.hyper(b, y));
                        let pole = if combo.iter().any(|t| ge.pos(t) < lo) {
                            Pole::Positive
                        } else if combo.iter().any(|t| ge.neg(t) > hi) {
                            Pole::Negative
                        } else {
                            continue;
                        };
                        return Ok(Verdict::from_witness(Some(BfsWitness::Combo {
                            param: param.to_string(),
                            a,
                            x,
                            b,
                            y,
                            pole,
                        })));
                    }
                }
            }
        }
    }
    Ok(Verdict::from_witness(None))
}

/// `b∘G + c∘G ⊑ G` for all scalars `b, c`. Only certified on sld spaces.
pub fn is_bfs_hvs_scalarsum(g: &BipolarFuzzySoftSet) -> Result<Verdict> {
    require_sld_hvs(g, Method::ScalarSum)?;
    let k = g.space().field();
    let scaled: Vec<BipolarFuzzySoftSet> = k
        .elements()
        .map(|b| bfs_scalar(b, g))
        .collect::<Result<_>>()?;
    for b in k.elements() {
        for c in k.elements() {
            let sum = bfs_sum(&scaled[b], &scaled[c])?;
            if let Some(detail) = containment_witness(&sum, g)? {
                return Ok(Verdict::from_witness(Some(BfsWitness::Containment {
                    law: ContainmentLaw::ScalarSum(b, c),
                    detail,
                })));
            }
        }
    }
    Ok(Verdict::from_witness(None))
}
