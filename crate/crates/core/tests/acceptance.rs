use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use bfshvs::bfs::{
    bfs_contains, bfs_scalar, bfs_sum, check_bfs, is_bfs_hvs_direct, level_soft_set, Method,
};
use bfshvs::construct::{
    characteristic_bfs, generate_bfs_hvs, is_normal, level_promote, normalize_scale, Variant,
};
use bfshvs::dsl::{parse_document, serialize_document, Document};
use bfshvs::hyper::{check_hvs_axioms, is_subhyperspace, Law};
use bfshvs::oracle::{
    brute_force_min_bfs_hvs, equivalence_suite, random_bfs, random_bfs_from, seeded_rng, GradeGrid,
    SuiteReport,
};
use bfshvs::{
    parse_rational, BipolarFuzzySet, BipolarFuzzySoftSet, Error, FiniteField, HyperVectorSpace,
    Rational, VectorSubset,
};
use rand_core::RngCore;

const SUITE_N: usize = 200;
const SUITE_SEED: u64 = 42;
const DISTRIBUTIVITY_PAIRS: usize = 50;
const MINIMALITY_AGREEMENTS: usize = 20;
const MINIMALITY_SEED_CAP: u64 = 200;
const RANDOM_DOCUMENTS: u64 = 100;

// Wall-clock budgets per criterion. All comparisons are exact, so these are
// the only tolerances.
const BUDGET: [Duration; 11] = [
    Duration::from_secs(1),
    Duration::from_secs(1),
    Duration::from_secs(1),
    Duration::from_secs(30),
    Duration::from_secs(30),
    Duration::from_secs(10),
    Duration::from_secs(1),
    Duration::from_secs(5),
    Duration::from_secs(60),
    Duration::from_secs(5),
    Duration::from_secs(5),
];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixture(name: &str) -> (PathBuf, String) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    let text = std::fs::read_to_string(&path).expect("fixture exists");
    (path, text)
}

fn examples() -> Document {
    parse_document(&fixture("examples.hvs").1).expect("examples parse")
}

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suites() -> &'static (SuiteReport, SuiteReport) {
    static SUITES: std::sync::OnceLock<(SuiteReport, SuiteReport)> = std::sync::OnceLock::new();
    SUITES.get_or_init(|| {
        let doc = examples();
        let grid = GradeGrid::three_by_three();
        (
            equivalence_suite(doc.space("Z4").unwrap(), SUITE_N, SUITE_SEED, &grid),
            equivalence_suite(doc.space("Z5").unwrap(), SUITE_N, SUITE_SEED, &grid),
        )
    })
}

fn golden_axioms() -> Outcome {
    let doc = parse_document(&fixture("z4_z2.hvs").1).map_err(|e| e.to_string())?;
    let v = doc.space("Z4").ok_or("no space Z4")?;
    let report = check_hvs_axioms(v);
    let flags = [
        report.srd.holds(),
        report.sld.holds(),
        report.invertible.holds(),
    ];
    let failed: Vec<String> = report
        .axioms()
        .iter()
        .filter_map(|(law, o)| {
            o.witness()
                .map(|w| format!("{}: {}", law.name(), w.describe(v)))
        })
        .collect();
    ensure(flags == [false; 3], || {
        format!("flags srd/sld/invertible = {flags:?}")
    })?;
    ensure(failed.is_empty(), || failed.join("; "))?;
    Ok("H1..H5 pass; srd, sld, invertible false".into())
}

fn golden_bfs_hvs() -> Outcome {
    let doc = examples();
    let g = doc.bfs("G_ex29").unwrap();
    for m in [Method::Direct, Method::Iff1, Method::Levels] {
        let v = check_bfs(g, m).map_err(|e| e.to_string())?;
        ensure(v.holds, || format!("{} says false", m.name()))?;
    }
    for m in [Method::Combo, Method::ScalarSum] {
        match check_bfs(g, m) {
            Err(Error::Hypothesis(_)) => {}
            other => return Err(format!("{} did not refuse: {other:?}", m.name())),
        }
    }
    Ok("direct, iff1, levels true; combo, scalarsum refuse".into())
}

fn cut_strings(g: &BipolarFuzzySoftSet, alpha: &str, beta: &str) -> Result<Vec<String>, String> {
    let l = level_soft_set(g, q(alpha), q(beta)).map_err(|e| e.to_string())?;
    Ok(l.cuts
        .iter()
        .map(|(_, c)| g.space().format_set(c))
        .collect())
}

fn golden_level_sets() -> Outcome {
    let doc = examples();
    let a = cut_strings(doc.bfs("G_ex29").unwrap(), "1/2", "-1/2")?;
    let b = cut_strings(doc.bfs("G_ex38").unwrap(), "3/10", "-2/5")?;
    let mut errors = Vec::new();
    if a != ["{}", "{0,2}", "{0,2}"] {
        errors.push(format!("G_ex29 cuts {a:?}"));
    }
    if b != ["{1,3}", "{0,1}", "{3}"] {
        errors.push(format!(
            "G_ex38 cuts {b:?}, expected [\"{{1,3}}\", \"{{0,1}}\", \"{{3}}\"]"
        ));
    }
    ensure(errors.is_empty(), || errors.join("; "))?;
    Ok(format!("{a:?} and {b:?}"))
}

fn checker_equivalence() -> Outcome {
    let (z4, z5) = suites();
    ensure(z4.methods == ["direct", "iff1", "levels"], || {
        format!("Z4 methods {:?}", z4.methods)
    })?;
    ensure(z5.methods.len() == 5, || {
        format!("Z5 methods {:?}", z5.methods)
    })?;
    for r in [z4, z5] {
        ensure(r.disagreements.is_empty(), || {
            format!(
                "{}: {} disagreements, first {:?}",
                r.space,
                r.disagreements.len(),
                r.disagreements[0]
            )
        })?;
    }
    Ok(format!(
        "Z4 {} samples ({} bfs-hvs), Z5 {} samples ({} bfs-hvs), 0 disagreements",
        z4.samples, z4.bfs_hvs_samples, z5.samples, z5.bfs_hvs_samples
    ))
}

fn property_tallies(report: &SuiteReport, names: &[&str]) -> Result<Vec<String>, String> {
    names
        .iter()
        .map(|name| {
            let t = report
                .properties
                .get(name)
                .ok_or_else(|| format!("{}: {name} never checked", report.space))?;
            ensure(t.violations.is_empty(), || {
                format!("{}: {name} violated: {:?}", report.space, t.violations[0])
            })?;
            Ok(format!("{} {name} {}", report.space, t.checked()))
        })
        .collect()
}

fn inequality_suites() -> Outcome {
    let (z4, z5) = suites();
    let basic = [
        "sum_lower_bound",
        "unit_scalar_contains",
        "negation_in_minus_one",
    ];
    let mut lines = property_tallies(z4, &basic)?;
    lines.extend(property_tallies(z5, &basic)?);
    lines.extend(property_tallies(z5, &["nonzero_scalar_dominates"])?);
    Ok(lines.join(", "))
}

fn distributivity() -> Outcome {
    let doc = examples();
    let v = doc.space("Z5").unwrap();
    let report = check_hvs_axioms(v);
    ensure(report.is_invertible() && report.is_srd(), || {
        "Z5 is not invertible srd".into()
    })?;
    let grid = GradeGrid::three_by_three();
    let params = vec!["p".to_string(), "q".to_string()];
    let mut rng = seeded_rng(SUITE_SEED, 0);
    let draw = |rng: &mut rand_chacha::ChaCha8Rng| loop {
        let f = random_bfs_from(rng, v, &params, &grid);
        if let Ok((g, _)) = generate_bfs_hvs(&f) {
            return g;
        }
    };
    let k = v.field();
    for i in 0..DISTRIBUTIVITY_PAIRS {
        let g = draw(&mut rng);
        let h = draw(&mut rng);
        ensure(
            is_bfs_hvs_direct(&g).holds && is_bfs_hvs_direct(&h).holds,
            || format!("pair {i} is not a bfs-hvs pair"),
        )?;
        for b in k.elements().filter(|&b| b != k.zero()) {
            let left = bfs_scalar(b, &bfs_sum(&g, &h).unwrap()).unwrap();
            let right = bfs_sum(&bfs_scalar(b, &g).unwrap(), &bfs_scalar(b, &h).unwrap()).unwrap();
            ensure(left == right, || format!("pair {i}, b = {}", k.label(b)))?;
        }
    }
    Ok(format!("{DISTRIBUTIVITY_PAIRS} pairs, b in 1..4"))
}

fn all_subsets(v: &HyperVectorSpace) -> Vec<VectorSubset> {
    (0u32..1 << v.len())
        .map(|mask| v.carrier().filter(|&i| mask >> i & 1 == 1).collect())
        .collect()
}

fn characteristic_equivalence() -> Outcome {
    let doc = examples();
    let v = doc.space("Z4").unwrap();
    let params = vec!["c".to_string(), "d".to_string()];
    let mut mismatches = Vec::new();
    let subsets = all_subsets(v);
    for x in &subsets {
        let shs = is_subhyperspace(v, x).unwrap();
        for variant in [Variant::Pos, Variant::Neg] {
            let g = characteristic_bfs(v.clone(), x, params.clone(), variant).unwrap();
            if is_bfs_hvs_direct(&g).holds != shs {
                mismatches.push(format!("{} {variant:?}: shs={shs}", v.format_set(x)));
            }
        }
    }
    ensure(mismatches.is_empty(), || mismatches.join("; "))?;
    Ok(format!("{} subsets, both variants", subsets.len()))
}

fn level_promotion() -> Outcome {
    let doc = examples();
    let g = doc.bfs("G_ex29").unwrap();
    let mut points = 0;
    for (e0, ge) in g.entries() {
        for alpha in ge
            .pos_image()
            .into_iter()
            .filter(|a| *a > Rational::from(0))
        {
            for beta in ge
                .neg_image()
                .into_iter()
                .filter(|b| *b < Rational::from(0))
            {
                let p = level_promote(g, e0, alpha, beta).map_err(|e| e.to_string())?;
                ensure(is_bfs_hvs_direct(&p).holds, || {
                    format!("{e0} at ({alpha}, {beta}) not a bfs-hvs")
                })?;
                ensure(bfs_contains(g, &p).unwrap(), || {
                    format!("{e0} at ({alpha}, {beta}) loses G")
                })?;
                points += 1;
            }
        }
    }
    Ok(format!("{points} realized threshold points"))
}

fn generated_minimality() -> Outcome {
    let doc = examples();
    let v = doc.space("Z4").unwrap();
    let grid = GradeGrid::three_by_three();
    let params = vec!["c".to_string()];
    let (mut agreed, mut stuck) = (0, Vec::new());
    let mut seed = 0;
    while agreed < MINIMALITY_AGREEMENTS && seed < MINIMALITY_SEED_CAP {
        let f = random_bfs(v, &params, &grid, seed);
        match generate_bfs_hvs(&f) {
            Ok((g, _)) => {
                let oracle = brute_force_min_bfs_hvs(v, &f, &grid).map_err(|e| e.to_string())?;
                ensure(oracle == g, || {
                    format!("seed {seed}: generated {g:?} vs oracle {oracle:?}")
                })?;
                agreed += 1;
            }
            Err(Error::ConstructionStuck { step, .. }) => stuck.push(format!("{seed}@{step}")),
            Err(e) => return Err(format!("seed {seed}: {e}")),
        }
        seed += 1;
    }
    ensure(agreed >= MINIMALITY_AGREEMENTS, || {
        format!("only {agreed} constructions succeeded")
    })?;
    Ok(format!(
        "{agreed} agree over seeds 0..{seed}, stuck (seed@step): [{}]",
        stuck.join(" ")
    ))
}

fn normalization() -> Outcome {
    let doc = examples();
    let g = doc.bfs("G_ex29").unwrap();
    let n = normalize_scale(g).map_err(|e| e.to_string())?;
    let c = n.grades("c").unwrap();
    let expected = BipolarFuzzySet::new(
        ["1", "3/5", "1", "3/5"].map(q).to_vec(),
        ["-1", "-1/2", "-1", "-1/2"].map(q).to_vec(),
    )
    .unwrap();
    ensure(*c == expected, || format!("scaled c = {c:?}"))?;
    ensure(is_normal(doc.bfs("F_ex53").unwrap()) == Ok(true), || {
        "F_ex53 not normal".into()
    })?;
    let (z4, z5) = suites();
    let mut lines = property_tallies(z4, &["normalize_shift", "normalize_scale"])?;
    lines.extend(property_tallies(
        z5,
        &["normalize_shift", "normalize_scale"],
    )?);
    Ok(lines.join(", "))
}

fn random_document(seed: u64) -> Document {
    let mut rng = seeded_rng(seed, 7);
    let mut below = |n: u64| rng.next_u64() % n;
    let p = [2usize, 3, 5][below(3) as usize];
    let tag = below(1000);
    let flabels: Vec<String> = (0..p).map(|i| format!("k{i}_{tag}")).collect();
    let add = (0..p)
        .map(|a| (0..p).map(|b| (a + b) % p).collect())
        .collect();
    let mul = (0..p)
        .map(|a| (0..p).map(|b| (a * b) % p).collect())
        .collect();
    let field = FiniteField::new(format!("F{tag}"), flabels, add, mul, 0, 1).unwrap();
    let labels: Vec<String> = (0..p).map(|i| format!("v{i}")).collect();
    let vadd = (0..p)
        .map(|a| (0..p).map(|b| (a + b) % p).collect())
        .collect();
    // Random non-empty cells; the format does not require the axioms.
    let hyper = (0..p)
        .map(|_| {
            (0..p)
                .map(|_| {
                    let mask = 1 + below((1 << p) - 1);
                    (0..p)
                        .filter(|i| mask >> i & 1 == 1)
                        .collect::<VectorSubset>()
                })
                .collect()
        })
        .collect();
    let space = Arc::new(
        HyperVectorSpace::new(format!("V{tag}"), labels, vadd, 0, Arc::new(field), hyper).unwrap(),
    );
    let mut doc = Document::new();
    doc.insert_space(space.clone()).unwrap();
    let sets = below(4);
    for s in 0..sets {
        let nparams = 1 + below(3) as usize;
        let params: Vec<String> = (0..nparams).map(|i| format!("e{i}")).collect();
        let table = params
            .iter()
            .map(|_| {
                let mut grade = |neg: bool| {
                    let d = 1 + below(12) as i64;
                    let n = below(d as u64 + 1) as i64;
                    Rational::new(if neg { -n } else { n }, d)
                };
                let pos = (0..p).map(|_| grade(false)).collect();
                let neg = (0..p).map(|_| grade(true)).collect();
                BipolarFuzzySet::new(pos, neg).unwrap()
            })
            .collect();
        let g = BipolarFuzzySoftSet::new(space.clone(), params, table).unwrap();
        doc.insert_bfs(format!("S{s}"), g).unwrap();
    }
    doc
}

fn dsl_round_trip() -> Outcome {
    let mut count = 0;
    for name in ["z4_z2.hvs", "examples.hvs"] {
        let (_, text) = fixture(name);
        let once = parse_document(&text).map_err(|e| format!("{name}: {e}"))?;
        let twice =
            parse_document(&serialize_document(&once)).map_err(|e| format!("{name}: {e}"))?;
        ensure(once == twice, || format!("{name} changed in round trip"))?;
        count += 1;
    }
    for seed in 0..RANDOM_DOCUMENTS {
        let doc = random_document(seed);
        let text = serialize_document(&doc);
        let once = parse_document(&text).map_err(|e| format!("document {seed}: {e}"))?;
        ensure(once == doc, || format!("document {seed} changed"))?;
        let again = serialize_document(&once);
        ensure(again == text, || {
            format!("document {seed}: serialization not stable")
        })?;
        ensure(parse_document(&again).as_ref() == Ok(&once), || {
            format!("document {seed}")
        })?;
        count += 1;
    }
    Ok(format!("{count} documents"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("golden axioms", golden_axioms),
        ("golden bfs-hvs", golden_bfs_hvs),
        ("golden level sets", golden_level_sets),
        ("checker equivalence", checker_equivalence),
        ("inequality property suites", inequality_suites),
        ("scalar distributivity", distributivity),
        ("characteristic sets", characteristic_equivalence),
        ("level promotion", level_promotion),
        ("generated vs oracle minimum", generated_minimality),
        ("normalization", normalization),
        ("dsl round trip", dsl_round_trip),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > BUDGET[i] {
            outcome = Err(format!("took {elapsed:?}, budget {:?}", BUDGET[i]));
        }
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(detail) => {
                println!("FAIL {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn axiom_flags_of_the_fixture() {
    let doc = parse_document(&fixture("z4_z2.hvs").1).unwrap();
    let report = check_hvs_axioms(doc.space("Z4").unwrap());
    assert!(!report.is_srd() && !report.is_sld() && !report.is_invertible());
    let failing: Vec<Law> = report
        .axioms()
        .iter()
        .filter(|(_, o)| !o.holds())
        .map(|(l, _)| *l)
        .collect();
    assert_eq!(failing, [Law::H1, Law::H3]);
}

#[test]
fn characteristic_sets_agree_on_nonempty_subsets() {
    let doc = examples();
    let v = doc.space("Z4").unwrap();
    for x in all_subsets(v).into_iter().filter(|x| !x.is_empty()) {
        let shs = is_subhyperspace(v, &x).unwrap();
        for variant in [Variant::Pos, Variant::Neg] {
            let g = characteristic_bfs(v.clone(), &x, vec!["c".into()], variant).unwrap();
            assert_eq!(is_bfs_hvs_direct(&g).holds, shs, "{}", v.format_set(&x));
        }
    }
}
