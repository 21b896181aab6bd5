use std::fmt::Write;

use bfshvs::bfs::{Method, Verdict};
use bfshvs::construct::ShellDecomposition;
use bfshvs::hyper::AxiomOutcome;
use bfshvs::oracle::SuiteReport;
use bfshvs::{format_rational, AxiomReport, BipolarFuzzySoftSet, HyperVectorSpace, VectorSubset};
use serde::Serialize;
use serde_json::{json, Value};

pub(crate) fn json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub(crate) fn error_json(code: i32, message: &str) -> String {
    json(&json!({ "error": message, "code": code }))
}

pub(crate) fn labels(v: &HyperVectorSpace, set: &VectorSubset) -> Vec<String> {
    set.iter().map(|x| v.label(x).to_string()).collect()
}

fn outcome_json(v: &HyperVectorSpace, o: &AxiomOutcome) -> Value {
    json!({
        "holds": o.holds(),
        "witness": o.witness().map(|w| w.describe(v)),
    })
}

pub(crate) fn axioms_json(v: &HyperVectorSpace, r: &AxiomReport) -> Value {
    let axioms: serde_json::Map<_, _> = r
        .axioms()
        .iter()
        .map(|(l, o)| (l.name().to_string(), outcome_json(v, o)))
        .collect();
    let flags: serde_json::Map<_, _> = r
        .flags()
        .iter()
        .map(|(l, o)| (l.name().to_string(), outcome_json(v, o)))
        .collect();
    json!({ "space": v.name(), "hvs": r.is_hvs(), "axioms": axioms, "flags": flags })
}

pub(crate) fn axioms_text(v: &HyperVectorSpace, r: &AxiomReport) -> String {
    let mut out = format!("H1..H5: {}\n", if r.is_hvs() { "pass" } else { "fail" });
    for (law, o) in r.axioms() {
        match o.witness() {
            None => writeln!(out, "{}: pass", law.name()),
            Some(w) => writeln!(out, "{}: fail: {}", law.name(), w.describe(v)),
        }
        .unwrap();
    }
    for (law, o) in r.flags() {
        match o.witness() {
            None => writeln!(out, "{}: true", law.name()),
            Some(w) => writeln!(out, "{}: false: {}", law.name(), w.describe(v)),
        }
        .unwrap();
    }
    out
}

type MethodResult = (Method, bfshvs::Result<Verdict>);

pub(crate) fn verdicts_json(
    name: &str,
    g: &BipolarFuzzySoftSet,
    results: &[MethodResult],
    verdict: &str,
) -> Value {
    let methods: Vec<Value> = results
        .iter()
        .map(|(m, r)| match r {
            Ok(v) => json!({
                "method": m.name(),
                "holds": v.holds,
                "witness": v.witness.as_ref().map(|w| w.describe(g)),
            }),
            Err(e) => json!({ "method": m.name(), "refused": e.to_string() }),
        })
        .collect();
    json!({ "bfs": name, "methods": methods, "verdict": verdict })
}

pub(crate) fn verdicts_text(
    g: &BipolarFuzzySoftSet,
    results: &[MethodResult],
    verdict: &str,
) -> String {
    let mut out = String::new();
    for (m, r) in results {
        match r {
            Ok(Verdict { holds: true, .. }) => writeln!(out, "{}: true", m.name()),
            Ok(Verdict {
                witness: Some(w), ..
            }) => writeln!(out, "{}: false: {}", m.name(), w.describe(g)),
            Ok(_) => writeln!(out, "{}: false", m.name()),
            Err(e) => writeln!(out, "{}: refused: {e}", m.name()),
        }
        .unwrap();
    }
    writeln!(out, "verdict: {verdict}").unwrap();
    out
}

pub(crate) fn bfs_json(name: &str, g: &BipolarFuzzySoftSet) -> Value {
    let v = g.space();
    let grades: serde_json::Map<_, _> = g
        .entries()
        .map(|(p, ge)| {
            let row: serde_json::Map<_, _> = v
                .carrier()
                .map(|x| {
                    let pair = json!([format_rational(&ge.pos(x)), format_rational(&ge.neg(x))]);
                    (v.label(x).to_string(), pair)
                })
                .collect();
            (p.to_string(), Value::Object(row))
        })
        .collect();
    json!({ "name": name, "space": v.name(), "params": g.params(), "grades": grades })
}

pub(crate) fn shells_json(g: &BipolarFuzzySoftSet, t: &ShellDecomposition) -> Value {
    let v = g.space();
    let shells: Vec<Value> = (0..t.shells.len())
        .map(|i| {
            let grades: serde_json::Map<_, _> = g
                .params()
                .iter()
                .enumerate()
                .map(|(e, p)| {
                    let pair = json!([
                        format_rational(&t.pos_grades[i][e]),
                        format_rational(&t.neg_grades[i][e])
                    ]);
                    (p.clone(), pair)
                })
                .collect();
            json!({
                "seed": labels(v, &t.seeds[i]),
                "span": labels(v, &t.spans[i]),
                "shell": labels(v, &t.shells[i]),
                "grades": grades,
            })
        })
        .collect();
    Value::Array(shells)
}

/// The shell trace as `.hvs` comments, so the whole output still parses.
pub(crate) fn shells_text(g: &BipolarFuzzySoftSet, t: &ShellDecomposition) -> String {
    let v = g.space();
    let mut out = String::new();
    for i in 0..t.shells.len() {
        write!(
            out,
            "# shell {i}: seed {} span {} shell {}",
            v.format_set(&t.seeds[i]),
            v.format_set(&t.spans[i]),
            v.format_set(&t.shells[i])
        )
        .unwrap();
        for (e, p) in g.params().iter().enumerate() {
            write!(
                out,
                " {p}=({}, {})",
                format_rational(&t.pos_grades[i][e]),
                format_rational(&t.neg_grades[i][e])
            )
            .unwrap();
        }
        out.push('\n');
    }
    out
}

pub(crate) fn suite_text(r: &SuiteReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "space {}, {} instances, seed {}",
        r.space, r.instances, r.seed
    )
    .unwrap();
    writeln!(
        out,
        "grid: {{{}}} x {{{}}}",
        r.grid_pos.join(","),
        r.grid_neg.join(",")
    )
    .unwrap();
    writeln!(out, "methods: {}", r.methods.join(" ")).unwrap();
    writeln!(
        out,
        "samples: {} ({} bfs-hvs)",
        r.samples, r.bfs_hvs_samples
    )
    .unwrap();
    for (pair, n) in &r.agreements {
        writeln!(out, "agree {pair}: {n}").unwrap();
    }
    writeln!(out, "disagreements: {}", r.disagreement_count()).unwrap();
    for d in &r.disagreements {
        let verdicts: Vec<String> = d.verdicts.iter().map(|(m, v)| format!("{m}={v}")).collect();
        writeln!(
            out,
            "  instance {} ({}): {}",
            d.instance,
            d.sample,
            verdicts.join(" ")
        )
        .unwrap();
    }
    writeln!(
        out,
        "stuck constructions: {}",
        r.construction_failures.len()
    )
    .unwrap();
    for (name, t) in &r.properties {
        writeln!(
            out,
            "property {name}: {} checked, {} violations",
            t.checked(),
            t.violations.len()
        )
        .unwrap();
        for v in &t.violations {
            writeln!(out, "  instance {}: {}", v.instance, v.detail).unwrap();
        }
    }
    let clean = r.disagreement_count() == 0 && r.violation_count() == 0;
    writeln!(out, "verdict: {}", if clean { "pass" } else { "fail" }).unwrap();
    out
}
