//! Constructions producing new bfs-hvs's.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::bfs::{cut, is_bfs_hvs_direct, BipolarFuzzySet, BipolarFuzzySoftSet};
use crate::hyper::span;
use crate::rational::format_rational;
use crate::{Error, HyperVectorSpace, Rational, Result, VectorSubset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// `G⁺ = χ_X`, `G⁻ = 0`.
    Pos,
    /// `G⁺ = 0`, `G⁻ = -χ_X`.
    Neg,
}

/// Characteristic bfs set of `set`, identical for every parameter.
///
/// For a non-empty `set` the result is a bfs-hvs exactly when `set` is a
/// subhyperspace. The empty set yields an all-zero bfs set, which is a
/// bfs-hvs even though the empty set is not a subhyperspace.
pub fn characteristic_bfs(
    space: Arc<HyperVectorSpace>,
    set: &VectorSubset,
    params: Vec<String>,
    variant: Variant,
) -> Result<BipolarFuzzySoftSet> {
    if let Some(v) = set.max_index().filter(|&v| v >= space.len()) {
        return Err(Error::Domain(format!(
            "vector index {v} is outside the carrier"
        )));
    }
    let chi: Vec<Rational> = space
        .carrier()
        .map(|v| {
            if set.contains(v) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let zeros = vec![Rational::zero(); space.len()];
    let grades = match variant {
        Variant::Pos => BipolarFuzzySet::new(chi, zeros)?,
        Variant::Neg => BipolarFuzzySet::new(zeros, chi.iter().map(|c| -c).collect())?,
    };
    let table = vec![grades; params.len()];
    BipolarFuzzySoftSet::new(space, params, table)
}

fn require_bfs_hvs(g: &BipolarFuzzySoftSet, what: &str) -> Result<()> {
    match is_bfs_hvs_direct(g).witness {
        None => Ok(()),
        Some(w) => Err(Error::Precondition(format!(
            "{what} needs a bfs-hvs: {}",
            w.describe(g)
        ))),
    }
}

/// Raises every parameter to `(1, -1)` on the `(alpha, beta)` cut of `e0`.
pub fn level_promote(
    f: &BipolarFuzzySoftSet,
    e0: &str,
    alpha: Rational,
    beta: Rational,
) -> Result<BipolarFuzzySoftSet> {
    let source = f
        .grades(e0)
        .ok_or_else(|| Error::UnknownParameter(e0.to_string()))?;
    if alpha <= Rational::zero() || alpha > Rational::one() {
        return Err(Error::Domain(format!(
            "alpha = {} is outside (0,1]",
            format_rational(&alpha)
        )));
    }
    if beta < -Rational::one() || beta >= Rational::zero() {
        return Err(Error::Domain(format!(
            "beta = {} is outside [-1,0)",
            format_rational(&beta)
        )));
    }
    require_bfs_hvs(f, "level promotion")?;
    let promoted = cut(source, alpha, beta);
    let table = f
        .table()
        .iter()
        .map(|fe| {
            let pos = (0..fe.len())
                .map(|x| {
                    if promoted.contains(x) {
                        Rational::one()
                    } else {
                        fe.pos(x)
                    }
                })
                .collect();
            let neg = (0..fe.len())
                .map(|x| {
                    if promoted.contains(x) {
                        -Rational::one()
                    } else {
                        fe.neg(x)
                    }
                })
                .collect();
            BipolarFuzzySet::new(pos, neg)
        })
        .collect::<Result<_>>()?;
    BipolarFuzzySoftSet::new(f.space_arc().clone(), f.params().to_vec(), table)
}

/// The chain `W₀ ⊂ W₁ ⊂ … ⊂ W_l = V` behind a generated bfs-hvs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellDecomposition {
    /// `U_i`: the elements outside `W_{i-1}` attaining every parameter's
    /// remaining sup and inf.
    pub seeds: Vec<VectorSubset>,
    /// `W_i`.
    pub spans: Vec<VectorSubset>,
    /// `Ŵ_i = W_i ∖ W_{i-1}` (with `Ŵ₀ = W₀`).
    pub shells: Vec<VectorSubset>,
    /// `pos_grades[i][e]`: the grade given to shell `i` for parameter `e`.
    pub pos_grades: Vec<Vec<Rational>>,
    pub neg_grades: Vec<Vec<Rational>>,
}

/// The smallest bfs-hvs containing `f`, built shell by shell.
///
/// `W₀ = ⟨U₀⟩`, `W_i = ⟨W_{i-1} ∪ U_i⟩`, where `U_i` collects the elements
/// of `V ∖ W_{i-1}` whose grades equal, for every parameter at once, the sup
/// of `F⁺` and the inf of `F⁻` over `V ∖ W_{i-1}`. The shell `Ŵ_i` receives
/// those sup/inf values. If no element attains every parameter's extremum
/// simultaneously the construction stops with [`Error::ConstructionStuck`].
pub fn generate_bfs_hvs(
    f: &BipolarFuzzySoftSet,
) -> Result<(BipolarFuzzySoftSet, ShellDecomposition)> {
    let space = f.space();
    let n = space.len();
    let mut trace = ShellDecomposition {
        seeds: Vec::new(),
        spans: Vec::new(),
        shells: Vec::new(),
        pos_grades: Vec::new(),
        neg_grades: Vec::new(),
    };
    let mut pos: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n]; f.params().len()];
    let mut neg = pos.clone();
    let mut covered = VectorSubset::new();

    while covered.len() < n {
        let step = trace.spans.len();
        let rest: Vec<usize> = space.carrier().filter(|&x| !covered.contains(x)).collect();
        let sups: Vec<Rational> = f
            .table()
            .iter()
            .map(|fe| {
                rest.iter()
                    .map(|&x| fe.pos(x))
                    .max()
                    .expect("rest is non-empty")
            })
            .collect();
        let infs: Vec<Rational> = f
            .table()
            .iter()
            .map(|fe| {
                rest.iter()
                    .map(|&x| fe.neg(x))
                    .min()
                    .expect("rest is non-empty")
            })
            .collect();
        let seed: VectorSubset = rest
            .iter()
            .copied()
            .filter(|&x| {
                f.table()
                    .iter()
                    .enumerate()
                    .all(|(e, fe)| fe.pos(x) == sups[e] && fe.neg(x) == infs[e])
            })
            .collect();
        if seed.is_empty() {
            let detail = f
                .params()
                .iter()
                .enumerate()
                .map(|(e, p)| {
                    format!(
                        "{p}: ({}, {})",
                        format_rational(&sups[e]),
                        format_rational(&infs[e])
                    )
                })
                .collect::<Vec<_>>()
                .join(", ");
            return Err(Error::ConstructionStuck {
                step,
                detail: format!(
                    "no element of {} attains every parameter's extremum at once [{detail}]",
                    space.format_set(&rest.into_iter().collect())
                ),
            });
        }
        let next = span(space, &covered.union(&seed))?;
        let shell = next.difference(&covered);
        for x in shell.iter() {
            for e in 0..f.params().len() {
                pos[e][x] = sups[e];
                neg[e][x] = infs[e];
            }
        }
        trace.seeds.push(seed);
        trace.shells.push(shell);
        trace.spans.push(next.clone());
        trace.pos_grades.push(sups);
        trace.neg_grades.push(infs);
        covered = next;
    }

    let table = pos
        .into_iter()
        .zip(neg)
        .map(|(p, q)| BipolarFuzzySet::new(p, q))
        .collect::<Result<_>>()?;
    let generated = BipolarFuzzySoftSet::new(f.space_arc().clone(), f.params().to_vec(), table)?;
    Ok((generated, trace))
}

/// `G⁺(0) = 1` and `G⁻(0) = -1` for every parameter.
pub fn is_normal(g: &BipolarFuzzySoftSet) -> Result<bool> {
    require_bfs_hvs(g, "normality")?;
    let zero = g.space().zero();
    Ok(g.table()
        .iter()
        .all(|ge| ge.pos(zero) == Rational::one() && ge.neg(zero) == -Rational::one()))
}

/// Shift normalization `G⁺ + 1 - G⁺(0)`, `G⁻ - 1 - G⁻(0)`.
pub fn normalize_shift(g: &BipolarFuzzySoftSet) -> Result<BipolarFuzzySoftSet> {
    require_bfs_hvs(g, "shift normalization")?;
    shift(g, |neg_at_zero| -Rational::one() - neg_at_zero)
}

/// Shift normalization with the negative pole shifted by
/// `-1 + G⁻(0)`, which sends `G⁻(0)` to `2 G⁻(0) - 1`. Fails with a domain
/// error whenever a grade leaves `[-1, 0]`. Kept for comparison with
/// [`normalize_shift`].
pub fn normalize_shift_literal(g: &BipolarFuzzySoftSet) -> Result<BipolarFuzzySoftSet> {
    require_bfs_hvs(g, "shift normalization")?;
    shift(g, |neg_at_zero| -Rational::one() + neg_at_zero)
}

fn shift(
    g: &BipolarFuzzySoftSet,
    neg_offset: impl Fn(Rational) -> Rational,
) -> Result<BipolarFuzzySoftSet> {
    let zero = g.space().zero();
    let table = g
        .table()
        .iter()
        .map(|ge| {
            let up = Rational::one() - ge.pos(zero);
            let down = neg_offset(ge.neg(zero));
            BipolarFuzzySet::new(
                ge.pos_grades().iter().map(|p| p + up).collect(),
                ge.neg_grades().iter().map(|q| q + down).collect(),
            )
        })
        .collect::<Result<_>>()?;
    BipolarFuzzySoftSet::new(g.space_arc().clone(), g.params().to_vec(), table)
}

/// Scale normalization `G⁺ / G⁺(0)`, `-G⁻ / G⁻(0)`, for bfs-hvs's with
/// `G⁺(0) > 0` and `G⁻(0) < 0` on every parameter.
pub fn normalize_scale(g: &BipolarFuzzySoftSet) -> Result<BipolarFuzzySoftSet> {
    require_bfs_hvs(g, "scale normalization")?;
    let zero = g.space().zero();
    for (param, ge) in g.entries() {
        if ge.pos(zero).is_zero() {
            return Err(Error::DivisionHypothesis {
                param: param.to_string(),
                detail: "positive grade at the zero vector is 0".into(),
            });
        }
        if ge.neg(zero).is_zero() {
            return Err(Error::DivisionHypothesis {
                param: param.to_string(),
                detail: "negative grade at the zero vector is 0".into(),
            });
        }
    }
    let table = g
        .table()
        .iter()
        .map(|ge| {
            let p0 = ge.pos(zero);
            let q0 = ge.neg(zero);
            BipolarFuzzySet::new(
                ge.pos_grades().iter().map(|p| p / p0).collect(),
                ge.neg_grades().iter().map(|q| -(q / q0)).collect(),
            )
        })
        .collect::<Result<_>>()?;
    BipolarFuzzySoftSet::new(g.space_arc().clone(), g.params().to_vec(), table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bfs::fixtures::{g_two_level, soft};
    use crate::bfs::{bfs_contains, is_bfs_hvs_direct};
    use crate::hyper::is_subhyperspace;
    use crate::hyper::space::fixtures::{classical, z4_over_z2};
    use crate::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn set(xs: &[usize]) -> VectorSubset {
        xs.iter().copied().collect()
    }

    fn params() -> Vec<String> {
        vec!["c".into(), "d".into()]
    }

    #[test]
    fn characteristic_tracks_subhyperspaces() {
        let v = Arc::new(z4_over_z2());
        for variant in [Variant::Pos, Variant::Neg] {
            for x in [set(&[0, 2]), set(&[0, 1, 2, 3])] {
                let g = characteristic_bfs(v.clone(), &x, params(), variant).unwrap();
                assert!(is_bfs_hvs_direct(&g).holds);
            }
            let g = characteristic_bfs(v.clone(), &set(&[0, 1]), params(), variant).unwrap();
            assert!(!is_bfs_hvs_direct(&g).holds);
        }
    }

    #[test]
    fn characteristic_of_empty_set_is_all_zero() {
        let v = Arc::new(z4_over_z2());
        let g = characteristic_bfs(v.clone(), &set(&[]), params(), Variant::Pos).unwrap();
        assert_eq!(g, BipolarFuzzySoftSet::zero(v.clone(), params()).unwrap());
        assert!(is_bfs_hvs_direct(&g).holds);
        assert!(!is_subhyperspace(&v, &set(&[])).unwrap());
    }

    #[test]
    fn characteristic_rejects_foreign_vectors() {
        let v = Arc::new(z4_over_z2());
        assert!(characteristic_bfs(v, &set(&[7]), params(), Variant::Pos).is_err());
    }

    #[test]
    fn promote_d_cut() {
        let v = Arc::new(z4_over_z2());
        let g = g_two_level(&v);
        let p = level_promote(&g, "d", q("0.7"), q("-0.6")).unwrap();
        assert!(is_bfs_hvs_direct(&p).holds);
        assert!(bfs_contains(&g, &p).unwrap());
        for (_, pe) in p.entries() {
            for x in [0, 2] {
                assert_eq!((pe.pos(x), pe.neg(x)), (q("1"), q("-1")));
            }
        }
        assert_eq!(p.grades("c").unwrap().pos(1), q("0.3"));
    }

    #[test]
    fn promote_with_empty_cut_is_identity() {
        let v = Arc::new(z4_over_z2());
        let g = g_two_level(&v);
        assert_eq!(level_promote(&g, "c", q("1"), q("-1")).unwrap(), g);
    }

    #[test]
    fn promote_with_full_cut_is_top() {
        let v = Arc::new(z4_over_z2());
        let g = g_two_level(&v);
        let p = level_promote(&g, "e", q("0.4"), q("-0.5")).unwrap();
        assert_eq!(p, BipolarFuzzySoftSet::top(v, g.params().to_vec()).unwrap());
    }

    #[test]
    fn promote_checks_inputs() {
        let v = Arc::new(z4_over_z2());
        let g = g_two_level(&v);
        assert!(matches!(
            level_promote(&g, "x", q("1"), q("-1")),
            Err(Error::UnknownParameter(_))
        ));
        assert!(matches!(
            level_promote(&g, "c", q("0"), q("-1")),
            Err(Error::Domain(_))
        ));
        let bad = soft(&v, &[("c", &["0.4", "0.3", "0.2", "0.7"], &["0"; 4])]);
        assert!(matches!(
            level_promote(&bad, "c", q("1"), q("-1")),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn promote_breaks_on_incomparable_subspaces() {
        // Z2 x Z2 as an ordinary vector space: the lines {0,a} and {0,b}
        // are incomparable subspaces.
        let field = Arc::new(crate::FiniteField::prime("Z2", 2).unwrap());
        let add = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        let s = |xs: &[usize]| xs.iter().copied().collect::<VectorSubset>();
        let hyperop = vec![vec![s(&[0]); 4], (0..4).map(|y| s(&[y])).collect()];
        let labels = ["0", "a", "b", "ab"].map(String::from).to_vec();
        let v = Arc::new(HyperVectorSpace::new("V", labels, add, 0, field, hyperop).unwrap());
        let f = soft(
            &v,
            &[
                ("e", &["1", "1", "0", "0"], &["-1", "-1", "0", "0"]),
                ("f", &["1", "0", "1", "0"], &["-1", "0", "-1", "0"]),
            ],
        );
        assert!(is_bfs_hvs_direct(&f).holds);
        let p = level_promote(&f, "e", q("1"), q("-1")).unwrap();
        assert!(!is_bfs_hvs_direct(&p).holds);
    }

    #[test]
    fn generate_fixes_bfs_hvs() {
        let v = Arc::new(z4_over_z2());
        let f =
            characteristic_bfs(v.clone(), &set(&[0, 2]), vec!["c".into()], Variant::Pos).unwrap();
        let (g, trace) = generate_bfs_hvs(&f).unwrap();
        assert_eq!(g, f);
        assert_eq!(trace.seeds[0], set(&[0, 2]));
        assert_eq!(trace.spans, vec![set(&[0, 2]), set(&[0, 1, 2, 3])]);
        let two = g_two_level(&v);
        assert_eq!(generate_bfs_hvs(&two).unwrap().0, two);
    }

    #[test]
    fn generate_spike() {
        let v = Arc::new(z4_over_z2());
        let f = soft(
            &v,
            &[(
                "c",
                &["0.1", "0.1", "0.8", "0.1"],
                &["-0.1", "-0.1", "-0.9", "-0.1"],
            )],
        );
        let (g, trace) = generate_bfs_hvs(&f).unwrap();
        assert_eq!(trace.seeds[0], set(&[2]));
        assert_eq!(trace.spans[0], set(&[0, 2]));
        assert_eq!(trace.shells[1], set(&[1, 3]));
        let expected = soft(
            &v,
            &[(
                "c",
                &["0.8", "0.1", "0.8", "0.1"],
                &["-0.9", "-0.1", "-0.9", "-0.1"],
            )],
        );
        assert_eq!(g, expected);
    }

    #[test]
    fn generate_reports_stuck_step() {
        let v = Arc::new(classical(3));
        // c peaks at 1, d peaks at 2: no common seed.
        let f = soft(
            &v,
            &[
                ("c", &["0", "1", "0"], &["0", "0", "0"]),
                ("d", &["0", "0", "1"], &["0", "0", "0"]),
            ],
        );
        match generate_bfs_hvs(&f) {
            Err(Error::ConstructionStuck { step: 0, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn normality() {
        let v = Arc::new(z4_over_z2());
        let g = g_two_level(&v);
        assert!(!is_normal(&g).unwrap());
        let top = BipolarFuzzySoftSet::top(v.clone(), params()).unwrap();
        assert!(is_normal(&top).unwrap());
        let bad = soft(&v, &[("c", &["0.4", "0.3", "0.2", "0.7"], &["0"; 4])]);
        assert!(is_normal(&bad).is_err());
    }

    #[test]
    fn shift_normalization() {
        let v = Arc::new(z4_over_z2());
        let g = g_two_level(&v);
        let n = normalize_shift(&g).unwrap();
        let c = n.grades("c").unwrap();
        assert_eq!((c.pos(0), c.pos(1)), (q("1"), q("4/5")));
        assert_eq!((c.neg(0), c.neg(1)), (q("-1"), q("-4/5")));
        assert!(is_normal(&n).unwrap());
        assert!(bfs_contains(&g, &n).unwrap());
        assert_eq!(normalize_shift(&n).unwrap(), n);
    }

    #[test]
    fn literal_shift_leaves_the_range() {
        let v = Arc::new(z4_over_z2());
        let g = g_two_level(&v);
        assert!(matches!(normalize_shift_literal(&g), Err(Error::Domain(_))));
    }

    #[test]
    fn scale_normalization() {
        let v = Arc::new(z4_over_z2());
        let g = g_two_level(&v);
        let n = normalize_scale(&g).unwrap();
        let c = n.grades("c").unwrap();
        assert_eq!((c.pos(0), c.pos(1)), (q("1"), q("3/5")));
        assert_eq!((c.neg(0), c.neg(1)), (q("-1"), q("-1/2")));
        assert!(is_normal(&n).unwrap());
        assert_eq!(normalize_scale(&n).unwrap(), n);
    }

    #[test]
    fn scale_needs_nonzero_origin() {
        let v = Arc::new(z4_over_z2());
        let z = BipolarFuzzySoftSet::zero(v, params()).unwrap();
        match normalize_scale(&z) {
            Err(Error::DivisionHypothesis { param, .. }) => assert_eq!(param, "c"),
            other => panic!("{other:?}"),
        }
    }
}
