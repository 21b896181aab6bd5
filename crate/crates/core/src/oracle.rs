//! Independent oracles: seeded generation, brute-force minimality and the
//! checker-agreement suite.
//!
//! # Generator
//!
//! Random bfs sets come from ChaCha8 (`rand_chacha::ChaCha8Rng`) keyed by
//! the 64-bit seed written little-endian into key bytes 0..8, with the other
//! 24 key bytes zero, on stream `s` (stream 0 unless stated). Grades are
//! drawn parameter by parameter, vector by vector in carrier order, positive
//! grade first, each as `levels[(u * len) >> 64]` for the next 64-bit output
//! `u`. Any ChaCha8 implementation with the same keying reproduces the sets.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::bfs::{
    bfs_contains, bfs_negate, bfs_scalar, bfs_sum, check_bfs, is_bfs_hvs_direct, Method,
};
use crate::construct::{generate_bfs_hvs, is_normal, normalize_scale, normalize_shift};
use crate::hyper::check_hvs_axioms;
use crate::{
    format_rational, BipolarFuzzySet, BipolarFuzzySoftSet, Error, HyperVectorSpace, Rational,
    Result,
};

/// Finite grade levels for random generation and brute-force search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradeGrid {
    pos: Vec<Rational>,
    neg: Vec<Rational>,
}

impl GradeGrid {
    /// Both lists must be non-empty, strictly ascending and in range.
    pub fn new(pos: Vec<Rational>, neg: Vec<Rational>) -> Result<Self> {
        for (what, levels, lo, hi) in [
            ("positive", &pos, Rational::zero(), Rational::one()),
            ("negative", &neg, -Rational::one(), Rational::zero()),
        ] {
            if levels.is_empty() {
                return Err(Error::Domain(format!("{what} levels are empty")));
            }
            if let Some(q) = levels.iter().find(|q| **q < lo || **q > hi) {
                return Err(Error::Domain(format!(
                    "{what} level {} is out of range",
                    format_rational(q)
                )));
            }
            if levels.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Domain(format!(
                    "{what} levels must be strictly ascending"
                )));
            }
        }
        Ok(Self { pos, neg })
    }

    /// `{0, 1/2, 1} × {-1, -1/2, 0}`.
    pub fn three_by_three() -> Self {
        let h = Rational::new(1, 2);
        Self::new(
            vec![Rational::zero(), h, Rational::one()],
            vec![-Rational::one(), -h, Rational::zero()],
        )
        .expect("valid levels")
    }

    pub fn pos_levels(&self) -> &[Rational] {
        &self.pos
    }

    pub fn neg_levels(&self) -> &[Rational] {
        &self.neg
    }

    /// The grid extended by every grade realized in `f`.
    pub fn with_grades_of(&self, f: &BipolarFuzzySoftSet) -> Self {
        let mut pos = self.pos.clone();
        let mut neg = self.neg.clone();
        for (_, fe) in f.entries() {
            pos.extend_from_slice(fe.pos_grades());
            neg.extend_from_slice(fe.neg_grades());
        }
        pos.sort();
        pos.dedup();
        neg.sort();
        neg.dedup();
        Self { pos, neg }
    }

    pub fn contains(&self, f: &BipolarFuzzySoftSet) -> bool {
        f.entries().all(|(_, fe)| {
            fe.pos_grades()
                .iter()
                .all(|q| self.pos.binary_search(q).is_ok())
                && fe
                    .neg_grades()
                    .iter()
                    .all(|q| self.neg.binary_search(q).is_ok())
        })
    }
}

/// The keyed generator described in the module docs.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(stream);
    rng
}

fn pick<'a>(rng: &mut impl RngCore, levels: &'a [Rational]) -> &'a Rational {
    let i = ((rng.next_u64() as u128 * levels.len() as u128) >> 64) as usize;
    &levels[i]
}

/// Draws one bfs set from `rng`.
pub fn random_bfs_from(
    rng: &mut impl RngCore,
    space: &Arc<HyperVectorSpace>,
    params: &[String],
    grid: &GradeGrid,
) -> BipolarFuzzySoftSet {
    let n = space.len();
    let table = params
        .iter()
        .map(|_| {
            let mut pos = Vec::with_capacity(n);
            let mut neg = Vec::with_capacity(n);
            for _ in 0..n {
                pos.push(*pick(rng, &grid.pos));
                neg.push(*pick(rng, &grid.neg));
            }
            BipolarFuzzySet::new(pos, neg).expect("grid levels are in range")
        })
        .collect();
    BipolarFuzzySoftSet::new(space.clone(), params.to_vec(), table)
        .expect("one grade table per parameter")
}

/// Deterministic in `(space, params, grid, seed)`; stream 0.
pub fn random_bfs(
    space: &Arc<HyperVectorSpace>,
    params: &[String],
    grid: &GradeGrid,
    seed: u64,
) -> BipolarFuzzySoftSet {
    random_bfs_from(&mut seeded_rng(seed, 0), space, params, grid)
}

/// Upper bound on grid candidates per parameter, `(|pos|·|neg|)^|V|`.
pub const CANDIDATE_LIMIT: u128 = 1 << 20;

/// The ⊑-least grid-valued bfs-hvs containing `f`, by exhaustive search.
///
/// Both the bfs-hvs conditions and containment are checked parameter by
/// parameter, so the search runs over each parameter's candidates
/// separately and the minimum is assembled from the per-parameter minima.
pub fn brute_force_min_bfs_hvs(
    space: &Arc<HyperVectorSpace>,
    f: &BipolarFuzzySoftSet,
    grid: &GradeGrid,
) -> Result<BipolarFuzzySoftSet> {
    if !Arc::ptr_eq(space, f.space_arc()) && **space != *f.space() {
        return Err(Error::SpaceMismatch);
    }
    let n = space.len();
    let per_vector = (grid.pos.len() * grid.neg.len()) as u128;
    let size = per_vector.checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > CANDIDATE_LIMIT {
        return Err(Error::Capacity {
            what: "grid candidates per parameter",
            size,
            limit: CANDIDATE_LIMIT,
        });
    }
    let table = f
        .entries()
        .map(|(param, fe)| min_for_parameter(space, param, fe, grid))
        .collect::<Result<_>>()?;
    BipolarFuzzySoftSet::new(space.clone(), f.params().to_vec(), table)
}

fn below(a: &BipolarFuzzySet, b: &BipolarFuzzySet) -> bool {
    (0..a.len()).all(|x| a.pos(x) <= b.pos(x) && a.neg(x) >= b.neg(x))
}

fn min_for_parameter(
    space: &Arc<HyperVectorSpace>,
    param: &str,
    fe: &BipolarFuzzySet,
    grid: &GradeGrid,
) -> Result<BipolarFuzzySet> {
    let n = space.len();
    // Containment of F is imposed up front by restricting each coordinate.
    let choices: Vec<Vec<(Rational, Rational)>> = (0..n)
        .map(|x| {
            let mut c = Vec::new();
            for p in grid.pos.iter().filter(|p| **p >= fe.pos(x)) {
                for q in grid.neg.iter().filter(|q| **q <= fe.neg(x)) {
                    c.push((*p, *q));
                }
            }
            c
        })
        .collect();
    if choices.iter().any(Vec::is_empty) {
        return Err(Error::Oracle(format!(
            "no grid candidate contains parameter {param}"
        )));
    }
    let mut valid: Vec<BipolarFuzzySet> = Vec::new();
    let mut odometer = vec![0usize; n];
    loop {
        let cand = BipolarFuzzySet::new(
            (0..n).map(|x| choices[x][odometer[x]].0).collect(),
            (0..n).map(|x| choices[x][odometer[x]].1).collect(),
        )?;
        let one = BipolarFuzzySoftSet::new(space.clone(), vec![param.to_string()], vec![cand])?;
        if is_bfs_hvs_direct(&one).holds {
            valid.push(one.table()[0].clone());
        }
        let mut i = 0;
        while i < n {
            odometer[i] += 1;
            if odometer[i] < choices[i].len() {
                break;
            }
            odometer[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    if valid.is_empty() {
        return Err(Error::Oracle(format!(
            "no grid-valued bfs-hvs contains parameter {param}"
        )));
    }
    let minimal: Vec<&BipolarFuzzySet> = valid
        .iter()
        .filter(|h| !valid.iter().any(|k| k != *h && below(k, h)))
        .collect();
    match minimal.as_slice() {
        [m] => Ok((*m).clone()),
        many => Err(Error::Oracle(format!(
            "parameter {param}: {} incomparable minimal candidates: {}",
            many.len(),
            many.iter()
                .map(|m| describe_grades(space, m))
                .collect::<Vec<_>>()
                .join("; ")
        ))),
    }
}

fn describe_grades(space: &HyperVectorSpace, g: &BipolarFuzzySet) -> String {
    space
        .carrier()
        .map(|x| {
            format!(
                "{}:({}, {})",
                space.label(x),
                format_rational(&g.pos(x)),
                format_rational(&g.neg(x))
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parameters of every suite sample.
pub const SUITE_PARAMS: [&str; 2] = ["p", "q"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub seed: u64,
    pub instance: usize,
    /// `raw` for the drawn set, `generated` for its generated bfs-hvs.
    pub sample: &'static str,
    pub verdicts: BTreeMap<&'static str, bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionFailure {
    pub instance: usize,
    pub step: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub instance: usize,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PropertyTally {
    pub passed: usize,
    pub violations: Vec<Violation>,
}

impl PropertyTally {
    pub fn checked(&self) -> usize {
        self.passed + self.violations.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub space: String,
    pub seed: u64,
    pub instances: usize,
    pub grid_pos: Vec<String>,
    pub grid_neg: Vec<String>,
    pub methods: Vec<&'static str>,
    /// Bfs sets checked: one drawn set per instance plus its generated
    /// bfs-hvs when the construction succeeds.
    pub samples: usize,
    pub bfs_hvs_samples: usize,
    /// Per method pair `a~b`, samples where both verdicts agree.
    pub agreements: BTreeMap<String, usize>,
    pub disagreements: Vec<Disagreement>,
    pub construction_failures: Vec<ConstructionFailure>,
    pub properties: BTreeMap<&'static str, PropertyTally>,
}

impl SuiteReport {
    pub fn disagreement_count(&self) -> usize {
        self.disagreements.len()
    }

    pub fn violation_count(&self) -> usize {
        self.properties.values().map(|t| t.violations.len()).sum()
    }
}

#[derive(Debug, Clone, Copy)]
struct SpaceTraits {
    sld_hvs: bool,
    unit_laws: bool,
    invertible_hvs: bool,
    invertible_srd_hvs: bool,
}

#[derive(Default)]
struct InstanceResult {
    samples: Vec<(&'static str, BTreeMap<&'static str, bool>)>,
    failure: Option<ConstructionFailure>,
    properties: BTreeMap<&'static str, PropertyTally>,
}

impl InstanceResult {
    fn record(
        &mut self,
        property: &'static str,
        instance: usize,
        outcome: std::result::Result<(), String>,
    ) {
        let tally = self.properties.entry(property).or_default();
        match outcome {
            Ok(()) => tally.passed += 1,
            Err(detail) => tally.violations.push(Violation { instance, detail }),
        }
    }
}

fn first_failure(
    space: &HyperVectorSpace,
    g: &BipolarFuzzySoftSet,
    mut bad: impl FnMut(&str, usize) -> Option<String>,
) -> std::result::Result<(), String> {
    for param in g.params() {
        for x in space.carrier() {
            if let Some(d) = bad(param, x) {
                return Err(format!("{param} at {}: {d}", space.label(x)));
            }
        }
    }
    Ok(())
}

fn sum_lower_bound(
    v: &HyperVectorSpace,
    f: &BipolarFuzzySoftSet,
    h: &BipolarFuzzySoftSet,
) -> std::result::Result<(), String> {
    let s = bfs_sum(f, h).map_err(|e| e.to_string())?;
    for (param, se) in s.entries() {
        let fe = f.grades(param).expect("sum keeps shared parameters");
        let he = h.grades(param).expect("sum keeps shared parameters");
        for y in v.carrier() {
            for z in v.carrier() {
                let x = v.add(y, z);
                if se.pos(x) < fe.pos(y).min(he.pos(z)) || se.neg(x) > fe.neg(y).max(he.neg(z)) {
                    return Err(format!("{param} at {} + {}", v.label(y), v.label(z)));
                }
            }
        }
    }
    Ok(())
}

fn containment(
    g: &BipolarFuzzySoftSet,
    h: &BipolarFuzzySoftSet,
    what: &str,
) -> std::result::Result<(), String> {
    match bfs_contains(g, h) {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("{what} fails")),
        Err(e) => Err(e.to_string()),
    }
}

fn check_normalization(
    g: &BipolarFuzzySoftSet,
    normalize: fn(&BipolarFuzzySoftSet) -> Result<BipolarFuzzySoftSet>,
) -> std::result::Result<(), String> {
    let n = normalize(g).map_err(|e| e.to_string())?;
    if !is_normal(&n).map_err(|e| e.to_string())? {
        return Err("result is not normal".into());
    }
    containment(g, &n, "input ⊑ result")?;
    if normalize(&n).map_err(|e| e.to_string())? != n {
        return Err("not idempotent".into());
    }
    Ok(())
}

fn bfs_hvs_laws(
    out: &mut InstanceResult,
    instance: usize,
    traits: SpaceTraits,
    g: &BipolarFuzzySoftSet,
) {
    let v = g.space();
    let zero = v.zero();
    out.record(
        "origin_bound",
        instance,
        first_failure(v, g, |p, x| {
            let ge = g.grades(p).unwrap();
            (ge.pos(x) > ge.pos(zero) || ge.neg(x) < ge.neg(zero))
                .then(|| "grade beats the origin".to_string())
        }),
    );
    out.record(
        "normalize_shift",
        instance,
        check_normalization(g, normalize_shift),
    );
    let nonzero_origin = g
        .entries()
        .all(|(_, ge)| !ge.pos(zero).is_zero() && !ge.neg(zero).is_zero());
    if nonzero_origin {
        out.record(
            "normalize_scale",
            instance,
            check_normalization(g, normalize_scale),
        );
    }
    if traits.invertible_hvs {
        let k = v.field();
        for b in k.elements().filter(|&b| b != k.zero()) {
            let outcome = bfs_scalar(b, g).map_err(|e| e.to_string()).and_then(|s| {
                first_failure(v, g, |p, x| {
                    let (se, ge) = (s.grades(p).unwrap(), g.grades(p).unwrap());
                    (se.pos(x) < ge.pos(x) || se.neg(x) > ge.neg(x))
                        .then(|| format!("{} o G is below G", k.label(b)))
                })
            });
            out.record("nonzero_scalar_dominates", instance, outcome);
        }
    }
}

fn run_instance(
    space: &Arc<HyperVectorSpace>,
    seed: u64,
    instance: usize,
    grid: &GradeGrid,
    methods: &[Method],
    traits: SpaceTraits,
) -> InstanceResult {
    let params: Vec<String> = SUITE_PARAMS.iter().map(|p| p.to_string()).collect();
    let mut rng = seeded_rng(seed, instance as u64);
    let f = random_bfs_from(&mut rng, space, &params, grid);
    let h = random_bfs_from(&mut rng, space, &params, grid);
    let mut out = InstanceResult::default();

    let verdicts = |g: &BipolarFuzzySoftSet| -> BTreeMap<&'static str, bool> {
        methods
            .iter()
            .map(|&m| {
                let holds = check_bfs(g, m).expect("methods are applicable").holds;
                (m.name(), holds)
            })
            .collect()
    };

    out.record("sum_lower_bound", instance, sum_lower_bound(space, &f, &h));
    if traits.unit_laws {
        let k = space.field();
        let unit = bfs_scalar(k.one(), &f).map_err(|e| e.to_string());
        out.record(
            "unit_scalar_contains",
            instance,
            unit.and_then(|u| containment(&f, &u, "G ⊑ 1 o G")),
        );
        let minus = bfs_scalar(k.neg(k.one()), &f).map_err(|e| e.to_string());
        out.record(
            "negation_in_minus_one",
            instance,
            minus.and_then(|m| containment(&bfs_negate(&f), &m, "-G ⊑ (-1) o G")),
        );
    }

    let raw = verdicts(&f);
    let raw_holds = raw["direct"];
    out.samples.push(("raw", raw));
    if raw_holds {
        bfs_hvs_laws(&mut out, instance, traits, &f);
    }

    let generated = match generate_bfs_hvs(&f) {
        Ok((g, _)) => {
            out.record(
                "generated_contains_input",
                instance,
                containment(&f, &g, "F ⊑ G"),
            );
            let v = verdicts(&g);
            let holds = v["direct"];
            out.record(
                "generated_is_bfs_hvs",
                instance,
                if holds {
                    Ok(())
                } else {
                    Err("generated set is not a bfs-hvs".into())
                },
            );
            out.samples.push(("generated", v));
            if holds {
                bfs_hvs_laws(&mut out, instance, traits, &g);
            }
            Some(g)
        }
        Err(Error::ConstructionStuck { step, detail }) => {
            out.failure = Some(ConstructionFailure {
                instance,
                step,
                detail,
            });
            None
        }
        Err(e) => {
            out.failure = Some(ConstructionFailure {
                instance,
                step: 0,
                detail: e.to_string(),
            });
            None
        }
    };

    if traits.invertible_srd_hvs {
        if let (Some(g1), Ok((g2, _))) = (generated, generate_bfs_hvs(&h)) {
            let k = space.field();
            for b in k.elements().filter(|&b| b != k.zero()) {
                let outcome = (|| -> Result<bool> {
                    let left = bfs_scalar(b, &bfs_sum(&g1, &g2)?)?;
                    let right = bfs_sum(&bfs_scalar(b, &g1)?, &bfs_scalar(b, &g2)?)?;
                    Ok(left == right)
                })();
                out.record(
                    "scalar_distributes_over_sum",
                    instance,
                    match outcome {
                        Ok(true) => Ok(()),
                        Ok(false) => Err(format!("b = {}", k.label(b))),
                        Err(e) => Err(e.to_string()),
                    },
                );
            }
        }
    }
    out
}

/// Runs `n` seeded instances and cross-checks every applicable checker.
///
/// direct, iff1 and levels always run; combo and scalarsum also run when
/// the space is an sld hvs. Instance `i` draws from stream `i`, so results
/// do not depend on scheduling.
pub fn equivalence_suite(
    space: &Arc<HyperVectorSpace>,
    n: usize,
    seed: u64,
    grid: &GradeGrid,
) -> SuiteReport {
    let axioms = check_hvs_axioms(space);
    let hvs = axioms.is_hvs();
    let traits = SpaceTraits {
        sld_hvs: hvs && axioms.is_sld(),
        unit_laws: axioms.h4.holds() && axioms.h5.holds(),
        invertible_hvs: hvs && axioms.is_invertible(),
        invertible_srd_hvs: hvs && axioms.is_invertible() && axioms.is_srd(),
    };
    let methods: Vec<Method> = Method::ALL
        .into_iter()
        .filter(|m| !m.needs_sld() || traits.sld_hvs)
        .collect();

    let results: Vec<InstanceResult> = (0..n)
        .into_par_iter()
        .map(|i| run_instance(space, seed, i, grid, &methods, traits))
        .collect();

    let mut report = SuiteReport {
        space: space.name().to_string(),
        seed,
        instances: n,
        grid_pos: grid.pos.iter().map(format_rational).collect(),
        grid_neg: grid.neg.iter().map(format_rational).collect(),
        methods: methods.iter().map(|m| m.name()).collect(),
        samples: 0,
        bfs_hvs_samples: 0,
        agreements: BTreeMap::new(),
        disagreements: Vec::new(),
        construction_failures: Vec::new(),
        properties: BTreeMap::new(),
    };
    let pairs: Vec<(&'static str, &'static str)> = methods
        .iter()
        .enumerate()
        .flat_map(|(i, a)| methods[i + 1..].iter().map(move |b| (a.name(), b.name())))
        .collect();
    for (a, b) in &pairs {
        report.agreements.insert(format!("{a}~{b}"), 0);
    }
    for (instance, result) in results.into_iter().enumerate() {
        for (sample, verdicts) in result.samples {
            report.samples += 1;
            if verdicts["direct"] {
                report.bfs_hvs_samples += 1;
            }
            let mut split = false;
            for (a, b) in &pairs {
                if verdicts[a] == verdicts[b] {
                    *report.agreements.get_mut(&format!("{a}~{b}")).unwrap() += 1;
                } else {
                    split = true;
                }
            }
            if split {
                report.disagreements.push(Disagreement {
                    seed,
                    instance,
                    sample,
                    verdicts,
                });
            }
        }
        report.construction_failures.extend(result.failure);
        for (name, tally) in result.properties {
            let merged = report.properties.entry(name).or_default();
            merged.passed += tally.passed;
            merged.violations.extend(tally.violations);
        }
    }
    report
}
