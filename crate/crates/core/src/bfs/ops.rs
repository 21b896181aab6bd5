use num_traits::{One, Zero};

use super::checks::Pole;
use super::{BipolarFuzzySet, BipolarFuzzySoftSet, LevelSoftSet};
use crate::rational::format_rational;
use crate::{Error, Rational, Result, VectorSubset};

/// Why `G ⊑ H` fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContainmentWitness {
    /// A parameter of `G` absent from `H`.
    MissingParameter(String),
    /// `G` exceeds `H` at `vector` on the given pole.
    Grade {
        param: String,
        vector: usize,
        pole: Pole,
    },
}

/// First refutation of `G ⊑ H`, scanning parameters of `G` in order, then
/// vectors, positive pole before negative.
pub fn containment_witness(
    g: &BipolarFuzzySoftSet,
    h: &BipolarFuzzySoftSet,
) -> Result<Option<ContainmentWitness>> {
    if !g.same_space(h) {
        return Err(Error::SpaceMismatch);
    }
    for (param, ge) in g.entries() {
        let Some(he) = h.grades(param) else {
            return Ok(Some(ContainmentWitness::MissingParameter(
                param.to_string(),
            )));
        };
        for x in g.space().carrier() {
            let pole = if ge.pos(x) > he.pos(x) {
                Pole::Positive
            } else if ge.neg(x) < he.neg(x) {
                Pole::Negative
            } else {
                continue;
            };
            return Ok(Some(ContainmentWitness::Grade {
                param: param.to_string(),
                vector: x,
                pole,
            }));
        }
    }
    Ok(None)
}

/// `G ⊑ H`: every parameter of `G` is one of `H`, positive grades of `G`
/// are below those of `H` and negative grades above.
pub fn bfs_contains(g: &BipolarFuzzySoftSet, h: &BipolarFuzzySoftSet) -> Result<bool> {
    Ok(containment_witness(g, h)?.is_none())
}

/// Sum over the intersected parameter set:
/// `(G+H)⁺(x) = ⋁_{x=y+z} G⁺(y) ∧ H⁺(z)` and dually for the negative pole.
pub fn bfs_sum(g: &BipolarFuzzySoftSet, h: &BipolarFuzzySoftSet) -> Result<BipolarFuzzySoftSet> {
    if !g.same_space(h) {
        return Err(Error::SpaceMismatch);
    }
    let space = g.space();
    let n = space.len();
    let mut params = Vec::new();
    let mut table = Vec::new();
    for (param, ge) in g.entries() {
        let Some(he) = h.grades(param) else { continue };
        let mut pos = vec![Rational::zero(); n];
        let mut neg = vec![Rational::zero(); n];
        let mut seen = vec![false; n];
        for y in space.carrier() {
            for z in space.carrier() {
                let x = space.add(y, z);
                let p = ge.pos(y).min(he.pos(z));
                let q = ge.neg(y).max(he.neg(z));
                if seen[x] {
                    pos[x] = pos[x].max(p);
                    neg[x] = neg[x].min(q);
                } else {
                    seen[x] = true;
                    pos[x] = p;
                    neg[x] = q;
                }
            }
        }
        params.push(param.to_string());
        table.push(BipolarFuzzySet::new(pos, neg)?);
    }
    Ok(g.with_table(params, table))
}

/// Scalar product: `(b∘G)⁺(x) = ⋁ {G⁺(r) : x ∈ b∘r}`, `(b∘G)⁻(x) = ⋀ {G⁻(r) : x ∈ b∘r}`,
/// and `(0, 0)` at vectors reached from no `r`.
pub fn bfs_scalar(b: usize, g: &BipolarFuzzySoftSet) -> Result<BipolarFuzzySoftSet> {
    let space = g.space();
    if b >= space.field().len() {
        return Err(Error::Domain(format!(
            "scalar index {b} is outside a field of size {}",
            space.field().len()
        )));
    }
    let n = space.len();
    let table = g
        .table()
        .iter()
        .map(|ge| {
            let mut pos: Vec<Option<Rational>> = vec![None; n];
            let mut neg: Vec<Option<Rational>> = vec![None; n];
            for r in space.carrier() {
                for x in space.hyper(b, r).iter() {
                    pos[x] = Some(pos[x].map_or(ge.pos(r), |p| p.max(ge.pos(r))));
                    neg[x] = Some(neg[x].map_or(ge.neg(r), |q| q.min(ge.neg(r))));
                }
            }
            BipolarFuzzySet::new(
                pos.into_iter()
                    .map(|g| g.unwrap_or(Rational::zero()))
                    .collect(),
                neg.into_iter()
                    .map(|g| g.unwrap_or(Rational::zero()))
                    .collect(),
            )
        })
        .collect::<Result<_>>()?;
    Ok(g.with_table(g.params().to_vec(), table))
}

/// `(-G)(y) = G(-y)` on both poles.
pub fn bfs_negate(g: &BipolarFuzzySoftSet) -> BipolarFuzzySoftSet {
    let space = g.space();
    let table = g
        .table()
        .iter()
        .map(|ge| {
            let pos = space.carrier().map(|y| ge.pos(space.neg(y))).collect();
            let neg = space.carrier().map(|y| ge.neg(space.neg(y))).collect();
            BipolarFuzzySet::new(pos, neg).expect("permuted grades stay in range")
        })
        .collect();
    g.with_table(g.params().to_vec(), table)
}

/// `{v : pos(v) ≥ alpha ∧ neg(v) ≤ beta}` with no range restriction on the
/// thresholds.
pub fn cut(grades: &BipolarFuzzySet, alpha: Rational, beta: Rational) -> VectorSubset {
    (0..grades.len())
        .filter(|&v| grades.pos(v) >= alpha && grades.neg(v) <= beta)
        .collect()
}

/// The `(alpha, beta)`-level soft subset for `alpha ∈ (0,1]`, `beta ∈ [-1,0)`.
pub fn level_soft_set(
    g: &BipolarFuzzySoftSet,
    alpha: Rational,
    beta: Rational,
) -> Result<LevelSoftSet> {
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
    let cuts = g
        .entries()
        .map(|(p, ge)| (p.to_string(), cut(ge, alpha, beta)))
        .collect();
    Ok(LevelSoftSet { alpha, beta, cuts })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::super::fixtures::*;
    use super::*;
    use crate::hyper::space::fixtures::z4_over_z2;
    use crate::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn set(xs: &[usize]) -> VectorSubset {
        xs.iter().copied().collect()
    }

    #[test]
    fn sum_with_itself_at_zero() {
        let v = Arc::new(z4_over_z2());
        let g = g_two_level(&v);
        let s = bfs_sum(&g, &g).unwrap();
        let c = s.grades("c").unwrap();
        assert_eq!(c.pos(0), q("1/2"));
        assert_eq!(c.neg(0), q("-2/5"));
        assert_eq!(c.pos(1), q("3/10"));
    }

    #[test]
    fn sum_intersects_parameters() {
        let v = Arc::new(z4_over_z2());
        let g = g_two_level(&v);
        let h = soft(
            &v,
            &[("d", &["1"; 4], &["-1"; 4]), ("z", &["0"; 4], &["0"; 4])],
        );
        let s = bfs_sum(&g, &h).unwrap();
        assert_eq!(s.params(), ["d".to_string()]);
        // Summing with the top set spreads the global extremes of G_d.
        let d = s.grades("d").unwrap();
        assert!(v
            .carrier()
            .all(|x| d.pos(x) == q("0.7") && d.neg(x) == q("-0.6")));
    }

    #[test]
    fn scalar_zero_leaves_unreached_vectors_at_zero() {
        let v = Arc::new(z4_over_z2());
        let g = g_two_level(&v);
        let s = bfs_scalar(0, &g).unwrap();
        let c = s.grades("c").unwrap();
        // 0∘V = {0,2}: every r lands in 0, and 2 comes from 0∘0.
        assert_eq!(c.pos(0), q("1/2"));
        assert_eq!(c.pos(2), q("1/2"));
        assert_eq!((c.pos(1), c.neg(1)), (Rational::zero(), Rational::zero()));
        assert_eq!(c.neg(0), q("-2/5"));
    }

    #[test]
    fn scalar_one_takes_extremes_over_preimages() {
        let v = Arc::new(z4_over_z2());
        let g = g_irregular(&v);
        let s = bfs_scalar(1, &g).unwrap();
        let c = s.grades("c").unwrap();
        // 2 ∈ 1∘r for every r, so it collects the global extremes.
        assert_eq!(c.pos(2), q("0.7"));
        assert_eq!(c.neg(2), q("-0.6"));
        // 1 ∈ 1∘1 and 1∘3 only.
        assert_eq!(c.pos(1), q("0.7"));
        assert_eq!(c.neg(1), q("-0.6"));
        assert_eq!(c.pos(0), q("0.4"));
        assert_eq!(c.neg(0), q("-0.6"));
    }

    #[test]
    fn negation_reflects_through_zero() {
        let v = Arc::new(z4_over_z2());
        let g = g_irregular(&v);
        let n = bfs_negate(&g);
        let c = n.grades("c").unwrap();
        assert_eq!(c.pos(1), q("0.7"));
        assert_eq!(c.pos(3), q("0.3"));
        assert_eq!(c.neg(2), q("-0.6"));
        assert_eq!(bfs_negate(&n), g);
    }

    #[test]
    fn containment_order() {
        let v = Arc::new(z4_over_z2());
        let g = g_two_level(&v);
        let top = BipolarFuzzySoftSet::top(v.clone(), g.params().to_vec()).unwrap();
        let zero = BipolarFuzzySoftSet::zero(v.clone(), g.params().to_vec()).unwrap();
        assert!(bfs_contains(&zero, &g).unwrap());
        assert!(bfs_contains(&g, &top).unwrap());
        assert!(!bfs_contains(&top, &g).unwrap());
        let fewer = soft(&v, &[("c", &["0"; 4], &["0"; 4])]);
        assert!(bfs_contains(&fewer, &g).unwrap());
        let wider = soft(&v, &[("c", &["1"; 4], &["-1"; 4])]);
        assert_eq!(
            containment_witness(&g, &wider).unwrap(),
            Some(ContainmentWitness::MissingParameter("d".into()))
        );
    }

    #[test]
    fn different_spaces_are_rejected() {
        let v = Arc::new(z4_over_z2());
        let w = Arc::new(crate::hyper::space::fixtures::classical(5));
        let g = BipolarFuzzySoftSet::zero(v, vec!["c".into()]).unwrap();
        let h = BipolarFuzzySoftSet::zero(w, vec!["c".into()]).unwrap();
        assert_eq!(bfs_sum(&g, &h), Err(Error::SpaceMismatch));
    }

    #[test]
    fn two_level_cuts() {
        let v = Arc::new(z4_over_z2());
        let l = level_soft_set(&g_two_level(&v), q("1/2"), q("-1/2")).unwrap();
        assert_eq!(l.cut("c"), Some(&set(&[])));
        assert_eq!(l.cut("d"), Some(&set(&[0, 2])));
        assert_eq!(l.cut("e"), Some(&set(&[0, 2])));
    }

    #[test]
    fn irregular_cuts_follow_the_table() {
        let v = Arc::new(z4_over_z2());
        let l = level_soft_set(&g_irregular(&v), q("0.3"), q("-0.4")).unwrap();
        assert_eq!(l.cut("c"), Some(&set(&[3])));
        assert_eq!(l.cut("d"), Some(&set(&[0, 1])));
        assert_eq!(l.cut("e"), Some(&set(&[3])));
    }

    #[test]
    fn level_thresholds_are_range_checked() {
        let v = Arc::new(z4_over_z2());
        let g = g_two_level(&v);
        assert!(matches!(
            level_soft_set(&g, q("0"), q("-1/2")),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            level_soft_set(&g, q("1/2"), q("0")),
            Err(Error::Domain(_))
        ));
        assert!(level_soft_set(&g, q("1"), q("-1")).is_ok());
    }
}
