use super::{HyperVectorSpace, VectorSubset};

/// The laws reported by [`check_hvs_axioms`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    /// `b o (y + z) ⊆ b o y + b o z`
    H1,
    /// `(b + c) o y ⊆ b o y + c o y`
    H2,
    /// `b o (c o y) = (b c) o y`
    H3,
    /// `b o (-y) = (-b) o y = -(b o y)`
    H4,
    /// `y ∈ 1 o y`
    H5,
    /// equality in H1
    Srd,
    /// equality in H2
    Sld,
    /// `x ∈ b o y ⇒ y ∈ b⁻¹ o x` for `b ≠ 0`
    Invertible,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::H1 => "H1",
            Law::H2 => "H2",
            Law::H3 => "H3",
            Law::H4 => "H4",
            Law::H5 => "H5",
            Law::Srd => "srd",
            Law::Sld => "sld",
            Law::Invertible => "invertible",
        }
    }
}

/// A concrete instance refuting a law.
///
/// `scalars` and `vectors` are the quantified variables in the order the law
/// names them; `element` is the vector whose membership differs between the
/// two (or three) sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub law: Law,
    pub scalars: Vec<usize>,
    pub vectors: Vec<usize>,
    pub element: usize,
}

impl Witness {
    /// The sets compared by the law at this instance.
    pub fn sides(&self, space: &HyperVectorSpace) -> Vec<VectorSubset> {
        sides(space, self.law, &self.scalars, &self.vectors, self.element)
    }

    /// Re-evaluates the law at this instance; `true` when it is refuted.
    pub fn replay(&self, space: &HyperVectorSpace) -> bool {
        let sides = self.sides(space);
        let e = self.element;
        match self.law {
            Law::H1 | Law::H2 => sides[0].contains(e) && !sides[1].contains(e),
            Law::H3 | Law::H4 | Law::Srd | Law::Sld => {
                sides.iter().any(|s| s.contains(e)) && !sides.iter().all(|s| s.contains(e))
            }
            Law::H5 => !sides[0].contains(e),
            Law::Invertible => sides[0].contains(e) && !sides[1].contains(self.vectors[0]),
        }
    }

    pub fn describe(&self, space: &HyperVectorSpace) -> String {
        let k = space.field();
        let s = |i: usize| k.label(self.scalars[i]);
        let v = |i: usize| space.label(self.vectors[i]);
        let e = space.label(self.element);
        let sets = self.sides(space);
        let f = |i: usize| space.format_set(&sets[i]);
        match self.law {
            Law::H1 | Law::Srd => format!(
                "b={}, y={}, z={}: b o (y+z) = {}, b o y + b o z = {}; {e} differs",
                s(0),
                v(0),
                v(1),
                f(0),
                f(1)
            ),
            Law::H2 | Law::Sld => format!(
                "b={}, c={}, y={}: (b+c) o y = {}, b o y + c o y = {}; {e} differs",
                s(0),
                s(1),
                v(0),
                f(0),
                f(1)
            ),
            Law::H3 => format!(
                "b={}, c={}, y={}: b o (c o y) = {}, (bc) o y = {}; {e} differs",
                s(0),
                s(1),
                v(0),
                f(0),
                f(1)
            ),
            Law::H4 => format!(
                "b={}, y={}: b o (-y) = {}, (-b) o y = {}, -(b o y) = {}; {e} differs",
                s(0),
                v(0),
                f(0),
                f(1),
                f(2)
            ),
            Law::H5 => format!("y={}: 1 o y = {} does not contain y", v(0), f(0)),
            Law::Invertible => format!(
                "b={}, y={}: {e} ∈ b o y = {} but y ∉ b⁻¹ o {e} = {}",
                s(0),
                v(0),
                f(0),
                f(1)
            ),
        }
    }
}

fn sides(
    space: &HyperVectorSpace,
    law: Law,
    scalars: &[usize],
    vectors: &[usize],
    element: usize,
) -> Vec<VectorSubset> {
    let k = space.field();
    match law {
        Law::H1 | Law::Srd => {
            let (b, y, z) = (scalars[0], vectors[0], vectors[1]);
            vec![
                space.hyper(b, space.add(y, z)).clone(),
                space.set_sum(space.hyper(b, y), space.hyper(b, z)),
            ]
        }
        Law::H2 | Law::Sld => {
            let (b, c, y) = (scalars[0], scalars[1], vectors[0]);
            vec![
                space.hyper(k.add(b, c), y).clone(),
                space.set_sum(space.hyper(b, y), space.hyper(c, y)),
            ]
        }
        Law::H3 => {
            let (b, c, y) = (scalars[0], scalars[1], vectors[0]);
            vec![
                space.hyper_set(b, space.hyper(c, y)),
                space.hyper(k.mul(b, c), y).clone(),
            ]
        }
        Law::H4 => {
            let (b, y) = (scalars[0], vectors[0]);
            vec![
                space.hyper(b, space.neg(y)).clone(),
                space.hyper(k.neg(b), y).clone(),
                space.set_neg(space.hyper(b, y)),
            ]
        }
        Law::H5 => vec![space.hyper(k.one(), vectors[0]).clone()],
        Law::Invertible => {
            let (b, y) = (scalars[0], vectors[0]);
            let inv = k
                .inv(b)
                .expect("invertibility is quantified over non-zero scalars");
            vec![space.hyper(b, y).clone(), space.hyper(inv, element).clone()]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomOutcome {
    Pass,
    Fail(Witness),
}

impl AxiomOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, AxiomOutcome::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            AxiomOutcome::Pass => None,
            AxiomOutcome::Fail(w) => Some(w),
        }
    }
}

/// Exact per-axiom result of [`check_hvs_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub h1: AxiomOutcome,
    pub h2: AxiomOutcome,
    pub h3: AxiomOutcome,
    pub h4: AxiomOutcome,
    pub h5: AxiomOutcome,
    pub srd: AxiomOutcome,
    pub sld: AxiomOutcome,
    pub invertible: AxiomOutcome,
}

impl AxiomReport {
    /// All of H1–H5 pass.
    pub fn is_hvs(&self) -> bool {
        self.axioms().iter().all(|(_, o)| o.holds())
    }

    pub fn is_srd(&self) -> bool {
        self.srd.holds()
    }

    pub fn is_sld(&self) -> bool {
        self.sld.holds()
    }

    pub fn is_invertible(&self) -> bool {
        self.invertible.holds()
    }

    pub fn axioms(&self) -> [(Law, &AxiomOutcome); 5] {
        [
            (Law::H1, &self.h1),
            (Law::H2, &self.h2),
            (Law::H3, &self.h3),
            (Law::H4, &self.h4),
            (Law::H5, &self.h5),
        ]
    }

    pub fn flags(&self) -> [(Law, &AxiomOutcome); 3] {
        [
            (Law::Srd, &self.srd),
            (Law::Sld, &self.sld),
            (Law::Invertible, &self.invertible),
        ]
    }
}

/// Exhaustively checks H1–H5 and the srd/sld/invertible flags.
///
/// Every failure carries the first refuting instance in table order
/// (scalars before vectors, ascending indices).
pub fn check_hvs_axioms(space: &HyperVectorSpace) -> AxiomReport {
    let k = space.field();
    let field_elems: Vec<usize> = k.elements().collect();
    let scalars: &[usize] = &field_elems;
    let carrier: Vec<usize> = space.carrier().collect();
    let vectors: &[usize] = &carrier;

    let first = |law: Law, instances: &mut dyn Iterator<Item = (Vec<usize>, Vec<usize>)>| {
        for (sc, vs) in instances {
            let probe = Witness {
                law,
                scalars: sc.clone(),
                vectors: vs.clone(),
                element: 0,
            };
            let sets = probe.sides(space);
            let candidates: Vec<usize> = match law {
                Law::H5 => vec![vs[0]],
                _ => sets[0]
                    .union(&sets[sets.len() - 1])
                    .union(&sets[1])
                    .iter()
                    .collect(),
            };
            for element in candidates {
                let w = Witness {
                    element,
                    ..probe.clone()
                };
                if w.replay(space) {
                    return AxiomOutcome::Fail(w);
                }
            }
        }
        AxiomOutcome::Pass
    };

    let byz = || {
        scalars.iter().flat_map(move |&b| {
            vectors
                .iter()
                .flat_map(move |&y| vectors.iter().map(move |&z| (vec![b], vec![y, z])))
        })
    };
    let bcy = || {
        scalars.iter().flat_map(move |&b| {
            scalars
                .iter()
                .flat_map(move |&c| vectors.iter().map(move |&y| (vec![b, c], vec![y])))
        })
    };
    let by = || {
        scalars
            .iter()
            .flat_map(move |&b| vectors.iter().map(move |&y| (vec![b], vec![y])))
    };
    let nonzero_by = || {
        scalars
            .iter()
            .filter(|&&b| b != k.zero())
            .flat_map(move |&b| vectors.iter().map(move |&y| (vec![b], vec![y])))
    };

    AxiomReport {
        h1: first(Law::H1, &mut byz()),
        h2: first(Law::H2, &mut bcy()),
        h3: first(Law::H3, &mut bcy()),
        h4: first(Law::H4, &mut by()),
        h5: first(Law::H5, &mut vectors.iter().map(|&y| (vec![], vec![y]))),
        srd: first(Law::Srd, &mut byz()),
        sld: first(Law::Sld, &mut bcy()),
        invertible: first(Law::Invertible, &mut nonzero_by()),
    }
}
