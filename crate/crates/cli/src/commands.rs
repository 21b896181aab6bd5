use std::path::Path;
use std::sync::Arc;

use bfshvs::bfs::{bfs_negate, bfs_scalar, bfs_sum, check_bfs, level_soft_set, Method};
use bfshvs::construct::{
    generate_bfs_hvs, normalize_scale, normalize_shift, normalize_shift_literal,
};
use bfshvs::dsl::{parse_document, serialize_document, Document};
use bfshvs::hyper::{check_hvs_axioms, enumerate_subhyperspaces, span};
use bfshvs::oracle::{equivalence_suite, GradeGrid};
use bfshvs::{
    format_rational, parse_rational, BipolarFuzzySoftSet, HyperVectorSpace, Rational, VectorSubset,
};

use crate::render;
use crate::{Command, CommandOutcome, Failure, MethodArg, ModeArg, EXIT_FALSE, EXIT_OK};

type Outcome = Result<CommandOutcome, Failure>;

fn load(path: &Path) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn space<'d>(doc: &'d Document, name: &str) -> Result<&'d Arc<HyperVectorSpace>, Failure> {
    doc.space(name)
        .ok_or_else(|| Failure::input(format!("no space `{name}` in the file")))
}

fn bfs<'d>(doc: &'d Document, name: &str) -> Result<&'d BipolarFuzzySoftSet, Failure> {
    doc.bfs(name)
        .ok_or_else(|| Failure::input(format!("no bfs set `{name}` in the file")))
}

fn rational(flag: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text.trim())
        .ok_or_else(|| Failure::input(format!("--{flag}: `{text}` is not a rational")))
}

fn rationals(flag: &str, text: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',').map(|t| rational(flag, t)).collect()
}

fn vector_set(v: &HyperVectorSpace, text: &str) -> Result<VectorSubset, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            v.index_of(t)
                .ok_or_else(|| Failure::input(format!("`{t}` is not a vector of {}", v.name())))
        })
        .collect()
}

fn single(g: BipolarFuzzySoftSet, name: &str) -> Result<Document, Failure> {
    let mut doc = Document::new();
    doc.insert_bfs(name, g)?;
    Ok(doc)
}

fn emit_bfs(g: BipolarFuzzySoftSet, name: &str, json: bool) -> Outcome {
    let stdout = if json {
        render::json(&render::bfs_json(name, &g))
    } else {
        serialize_document(&single(g, name)?)
    };
    Ok(CommandOutcome::ok(EXIT_OK, stdout))
}

pub(crate) fn dispatch(command: &Command, json: bool) -> Outcome {
    match command {
        Command::Check { file, space: s } => {
            let doc = load(file)?;
            let v = space(&doc, s)?;
            let report = check_hvs_axioms(v);
            let code = if report.is_hvs() { EXIT_OK } else { EXIT_FALSE };
            let stdout = if json {
                render::json(&render::axioms_json(v, &report))
            } else {
                render::axioms_text(v, &report)
            };
            Ok(CommandOutcome::ok(code, stdout))
        }
        Command::CheckBfs {
            file,
            bfs: name,
            method,
        } => {
            let doc = load(file)?;
            let g = bfs(&doc, name)?;
            let methods: Vec<Method> = match method {
                MethodArg::All => Method::ALL.to_vec(),
                MethodArg::Direct => vec![Method::Direct],
                MethodArg::Iff1 => vec![Method::Iff1],
                MethodArg::Levels => vec![Method::Levels],
                MethodArg::Combo => vec![Method::Combo],
                MethodArg::Scalarsum => vec![Method::ScalarSum],
            };
            let results: Vec<_> = methods.iter().map(|&m| (m, check_bfs(g, m))).collect();
            if let [(_, Err(e))] = results.as_slice() {
                return Err(e.clone().into());
            }
            let ran: Vec<bool> = results
                .iter()
                .filter_map(|(_, r)| r.as_ref().ok().map(|v| v.holds))
                .collect();
            let verdict = if ran.iter().all(|&h| h) {
                "true"
            } else if ran.iter().all(|&h| !h) {
                "false"
            } else {
                "disagreement"
            };
            let code = if verdict == "true" {
                EXIT_OK
            } else {
                EXIT_FALSE
            };
            let stdout = if json {
                render::json(&render::verdicts_json(name, g, &results, verdict))
            } else {
                render::verdicts_text(g, &results, verdict)
            };
            Ok(CommandOutcome::ok(code, stdout))
        }
        Command::Level {
            file,
            bfs: name,
            alpha,
            beta,
        } => {
            let doc = load(file)?;
            let g = bfs(&doc, name)?;
            let level = level_soft_set(g, rational("alpha", alpha)?, rational("beta", beta)?)?;
            let v = g.space();
            let stdout = if json {
                render::json(&serde_json::json!({
                    "bfs": name,
                    "alpha": format_rational(&level.alpha),
                    "beta": format_rational(&level.beta),
                    "cuts": level.cuts.iter().map(|(p, c)| serde_json::json!({
                        "param": p,
                        "cut": render::labels(v, c),
                    })).collect::<Vec<_>>(),
                }))
            } else {
                level
                    .cuts
                    .iter()
                    .map(|(p, c)| format!("{p}: {}\n", v.format_set(c)))
                    .collect()
            };
            Ok(CommandOutcome::ok(EXIT_OK, stdout))
        }
        Command::Span {
            file,
            space: s,
            set,
        } => {
            let doc = load(file)?;
            let v = space(&doc, s)?;
            let seed = vector_set(v, set)?;
            let closed = span(v, &seed)?;
            let stdout = if json {
                render::json(&serde_json::json!({
                    "space": v.name(),
                    "set": render::labels(v, &seed),
                    "span": render::labels(v, &closed),
                }))
            } else {
                format!("{}\n", v.format_set(&closed))
            };
            Ok(CommandOutcome::ok(EXIT_OK, stdout))
        }
        Command::Sum {
            file,
            bfs: a,
            with,
            name,
        } => {
            let doc = load(file)?;
            let g = bfs_sum(bfs(&doc, a)?, bfs(&doc, with)?)?;
            emit_bfs(g, name, json)
        }
        Command::Scale {
            file,
            bfs: a,
            scalar,
            name,
        } => {
            let doc = load(file)?;
            let g = bfs(&doc, a)?;
            let k = g.space().field();
            let b = k.index_of(scalar.trim()).ok_or_else(|| {
                Failure::input(format!("`{scalar}` is not an element of {}", k.name()))
            })?;
            emit_bfs(bfs_scalar(b, g)?, name, json)
        }
        Command::Negate { file, bfs: a, name } => {
            let doc = load(file)?;
            emit_bfs(bfs_negate(bfs(&doc, a)?), name, json)
        }
        Command::Generate { file, bfs: a, name } => {
            let doc = load(file)?;
            let f = bfs(&doc, a)?;
            let (g, trace) = generate_bfs_hvs(f)?;
            let stdout = if json {
                let mut value = render::bfs_json(name, &g);
                value["shells"] = render::shells_json(&g, &trace);
                render::json(&value)
            } else {
                format!(
                    "{}{}",
                    render::shells_text(&g, &trace),
                    serialize_document(&single(g, name)?)
                )
            };
            Ok(CommandOutcome::ok(EXIT_OK, stdout))
        }
        Command::Normalize {
            file,
            bfs: a,
            mode,
            literal,
            name,
        } => {
            let doc = load(file)?;
            let g = bfs(&doc, a)?;
            let n = match (mode, literal) {
                (ModeArg::Shift, false) => normalize_shift(g)?,
                (ModeArg::Shift, true) => normalize_shift_literal(g)?,
                (ModeArg::Scale, false) => normalize_scale(g)?,
                (ModeArg::Scale, true) => {
                    return Err(Failure::input("--literal applies to --mode shift only"))
                }
            };
            emit_bfs(n, name, json)
        }
        Command::Verify {
            file,
            space: s,
            n,
            seed,
            grid_pos,
            grid_neg,
        } => {
            let doc = load(file)?;
            let v = space(&doc, s)?;
            let grid = GradeGrid::new(
                rationals("grid-pos", grid_pos)?,
                rationals("grid-neg", grid_neg)?,
            )?;
            let report = equivalence_suite(v, *n, *seed, &grid);
            let clean = report.disagreement_count() == 0 && report.violation_count() == 0;
            let stdout = if json {
                render::json(&report)
            } else {
                render::suite_text(&report)
            };
            Ok(CommandOutcome::ok(
                if clean { EXIT_OK } else { EXIT_FALSE },
                stdout,
            ))
        }
        Command::EnumerateShs { file, space: s } => {
            let doc = load(file)?;
            let v = space(&doc, s)?;
            let all = enumerate_subhyperspaces(v)?;
            let stdout = if json {
                render::json(&serde_json::json!({
                    "space": v.name(),
                    "subhyperspaces": all.iter().map(|x| render::labels(v, x)).collect::<Vec<_>>(),
                }))
            } else {
                all.iter()
                    .map(|x| format!("{}\n", v.format_set(x)))
                    .collect()
            };
            Ok(CommandOutcome::ok(EXIT_OK, stdout))
        }
    }
}
