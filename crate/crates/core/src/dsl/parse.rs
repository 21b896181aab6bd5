use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{DefKind, Document, Span};
use crate::bfs::{BipolarFuzzySet, BipolarFuzzySoftSet};
use crate::hyper::VectorSubset;
use crate::{parse_rational, FiniteField, HyperVectorSpace, Rational};

const KEYWORDS: &[&str] = &[
    "field", "space", "bfs", "over", "on", "end", "elements", "zero", "one", "params", "o",
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message} (at `{token}`)")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub token: String,
}

type PResult<T> = Result<T, ParseError>;

#[derive(Debug, Clone, Copy)]
struct Tok<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl<'a> Tok<'a> {
    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
            token: self.text.to_string(),
        }
    }

    fn span(&self) -> Span {
        Span {
            line: self.line,
            column: self.column,
        }
    }
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '/' | '-')
}

/// Labels, parameters and section names: word characters, not a keyword.
pub(crate) fn check_name(name: &str) -> Result<(), String> {
    if name.is_empty() || !name.chars().all(is_word_char) {
        return Err(format!("`{name}` is not a valid name"));
    }
    if KEYWORDS.contains(&name) {
        return Err(format!("`{name}` is a reserved word"));
    }
    Ok(())
}

fn lex(text: &str) -> PResult<Vec<Vec<Tok<'_>>>> {
    let mut lines = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let mut toks = Vec::new();
        let mut chars = line.char_indices().enumerate().peekable();
        while let Some(&(col, (start, c))) = chars.peek() {
            let column = col + 1;
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            if "+*={}(),".contains(c) {
                chars.next();
                toks.push(Tok {
                    text: &line[start..start + c.len_utf8()],
                    line: i + 1,
                    column,
                });
                continue;
            }
            if !is_word_char(c) {
                return Err(ParseError {
                    line: i + 1,
                    column,
                    message: "unexpected character".into(),
                    token: c.to_string(),
                });
            }
            let mut end = start;
            while let Some(&(_, (at, d))) = chars.peek() {
                if !is_word_char(d) {
                    break;
                }
                end = at + d.len_utf8();
                chars.next();
            }
            toks.push(Tok {
                text: &line[start..end],
                line: i + 1,
                column,
            });
        }
        lines.push(toks);
    }
    Ok(lines)
}

struct Section<'a> {
    kind: DefKind,
    name: Tok<'a>,
    target: Option<Tok<'a>>,
    body: Vec<Vec<Tok<'a>>>,
    end: Tok<'a>,
}

fn split_sections<'a>(lines: Vec<Vec<Tok<'a>>>) -> PResult<Vec<Section<'a>>> {
    let mut sections = Vec::new();
    let mut lines = lines.into_iter().filter(|l| !l.is_empty());
    while let Some(header) = lines.next() {
        let head = header[0];
        let (kind, link) = match head.text {
            "field" => (DefKind::Field, None),
            "space" => (DefKind::Space, Some("over")),
            "bfs" => (DefKind::Bfs, Some("on")),
            _ => return Err(head.err("expected `field`, `space` or `bfs`")),
        };
        let want = if link.is_some() { 4 } else { 2 };
        if header.len() != want {
            let usage = match kind {
                DefKind::Field => "field NAME",
                DefKind::Space => "space NAME over FIELD",
                DefKind::Bfs => "bfs NAME on SPACE",
            };
            let at = header.get(want).or(header.last()).unwrap_or(&head);
            return Err(at.err(format!("expected `{usage}`")));
        }
        let name = header[1];
        check_name(name.text).map_err(|m| name.err(m))?;
        let target = match link {
            Some(word) => {
                if header[2].text != word {
                    return Err(header[2].err(format!("expected `{word}`")));
                }
                check_name(header[3].text).map_err(|m| header[3].err(m))?;
                Some(header[3])
            }
            None => None,
        };
        let mut body = Vec::new();
        let end = loop {
            match lines.next() {
                None => {
                    return Err(name.err(format!(
                        "{} `{}` is missing `end`",
                        kind.keyword(),
                        name.text
                    )))
                }
                Some(l) if l[0].text == "end" => {
                    if l.len() > 1 {
                        return Err(l[1].err("unexpected token after `end`"));
                    }
                    break l[0];
                }
                Some(l) if matches!(l[0].text, "field" | "space" | "bfs") && l.len() >= 2 => {
                    return Err(l[0].err(format!(
                        "{} `{}` is missing `end`",
                        kind.keyword(),
                        name.text
                    )))
                }
                Some(l) => body.push(l),
            }
        };
        sections.push(Section {
            kind,
            name,
            target,
            body,
            end,
        });
    }
    Ok(sections)
}

/// Element labels of a section, in declaration order.
struct Labels<'a> {
    what: &'static str,
    names: Vec<&'a str>,
    index: HashMap<&'a str, usize>,
}

impl<'a> Labels<'a> {
    fn declare(what: &'static str, toks: &[Tok<'a>]) -> PResult<Self> {
        let mut index = HashMap::new();
        for (i, t) in toks.iter().enumerate() {
            check_name(t.text).map_err(|m| t.err(m))?;
            if index.insert(t.text, i).is_some() {
                return Err(t.err(format!("duplicate {what} `{}`", t.text)));
            }
        }
        Ok(Self {
            what,
            names: toks.iter().map(|t| t.text).collect(),
            index,
        })
    }

    fn from_labels(what: &'static str, labels: &'a [String]) -> Self {
        Self {
            what,
            names: labels.iter().map(String::as_str).collect(),
            index: labels
                .iter()
                .enumerate()
                .map(|(i, l)| (l.as_str(), i))
                .collect(),
        }
    }

    fn get(&self, t: &Tok<'_>) -> PResult<usize> {
        self.index
            .get(t.text)
            .copied()
            .ok_or_else(|| t.err(format!("unknown {} `{}`", self.what, t.text)))
    }

    fn len(&self) -> usize {
        self.names.len()
    }

    fn owned(&self) -> Vec<String> {
        self.names.iter().map(|s| s.to_string()).collect()
    }
}

/// Finds the single `keyword ...` line of a section body.
fn keyword_line<'s, 'a>(sec: &'s Section<'a>, keyword: &str) -> PResult<Option<&'s [Tok<'a>]>> {
    let mut found: Option<&[Tok]> = None;
    for l in &sec.body {
        if l[0].text == keyword {
            if found.is_some() {
                return Err(l[0].err(format!("duplicate `{keyword}` line")));
            }
            found = Some(l);
        }
    }
    Ok(found)
}

fn require_line<'s, 'a>(sec: &'s Section<'a>, keyword: &str) -> PResult<&'s [Tok<'a>]> {
    keyword_line(sec, keyword)?.ok_or_else(|| {
        sec.name.err(format!(
            "{} `{}` has no `{keyword}` line",
            sec.kind.keyword(),
            sec.name.text
        ))
    })
}

fn single_label(line: &[Tok<'_>], labels: &Labels<'_>) -> PResult<usize> {
    match line {
        [_, t] => labels.get(t),
        [k] => Err(k.err(format!("`{}` needs one element", k.text))),
        [_, _, extra, ..] => Err(extra.err("unexpected token")),
        [] => unreachable!("lines are non-empty"),
    }
}

fn expect<'a>(line: &[Tok<'a>], i: usize, text: &str) -> PResult<()> {
    match line.get(i) {
        Some(t) if t.text == text => Ok(()),
        Some(t) => Err(t.err(format!("expected `{text}`"))),
        None => Err(line[line.len() - 1].err(format!("expected `{text}` after this"))),
    }
}

fn token<'a>(line: &[Tok<'a>], i: usize, what: &str) -> PResult<Tok<'a>> {
    line.get(i)
        .copied()
        .ok_or_else(|| line[line.len() - 1].err(format!("expected {what} after this")))
}

fn no_trailing(line: &[Tok<'_>], len: usize) -> PResult<()> {
    match line.get(len) {
        Some(t) => Err(t.err("unexpected token")),
        None => Ok(()),
    }
}

/// Fills `table[a][b]` from `a OP b = c` lines.
#[allow(clippy::too_many_arguments)]
fn binary_table(
    what: &str,
    op: &str,
    line: &[Tok<'_>],
    left: &Labels<'_>,
    right: &Labels<'_>,
    out: &Labels<'_>,
    table: &mut [Vec<Option<usize>>],
) -> PResult<()> {
    let a = left.get(&line[0])?;
    expect(line, 1, op)?;
    let b = right.get(&token(line, 2, "an element")?)?;
    expect(line, 3, "=")?;
    let c = out.get(&token(line, 4, "an element")?)?;
    no_trailing(line, 5)?;
    if table[a][b].replace(c).is_some() {
        return Err(line[0].err(format!(
            "duplicate {what} cell {} {op} {}",
            line[0].text, line[2].text
        )));
    }
    Ok(())
}

fn complete(
    what: &str,
    op: &str,
    table: Vec<Vec<Option<usize>>>,
    left: &Labels<'_>,
    right: &Labels<'_>,
    end: &Tok<'_>,
) -> PResult<Vec<Vec<usize>>> {
    table
        .into_iter()
        .enumerate()
        .map(|(a, row)| {
            row.into_iter()
                .enumerate()
                .map(|(b, c)| {
                    c.ok_or_else(|| {
                        end.err(format!(
                            "missing {what} cell {} {op} {}",
                            left.names[a], right.names[b]
                        ))
                    })
                })
                .collect()
        })
        .collect()
}

fn build_field(sec: &Section<'_>) -> PResult<FiniteField> {
    let elems = require_line(sec, "elements")?;
    let labels = Labels::declare("element", &elems[1..])?;
    if labels.len() == 0 {
        return Err(elems[0].err("a field needs elements"));
    }
    let zero = single_label(require_line(sec, "zero")?, &labels)?;
    let one = single_label(require_line(sec, "one")?, &labels)?;
    let n = labels.len();
    let mut add = vec![vec![None; n]; n];
    let mut mul = vec![vec![None; n]; n];
    for line in &sec.body {
        match line[0].text {
            "elements" | "zero" | "one" => continue,
            _ => {}
        }
        match line.get(1).map(|t| t.text) {
            Some("+") => binary_table("addition", "+", line, &labels, &labels, &labels, &mut add)?,
            Some("*") => binary_table(
                "multiplication",
                "*",
                line,
                &labels,
                &labels,
                &labels,
                &mut mul,
            )?,
            Some(_) => return Err(line[1].err("expected `+` or `*`")),
            None => return Err(line[0].err("expected a table line")),
        }
    }
    let add = complete("addition", "+", add, &labels, &labels, &sec.end)?;
    let mul = complete("multiplication", "*", mul, &labels, &labels, &sec.end)?;
    FiniteField::new(sec.name.text, labels.owned(), add, mul, zero, one)
        .map_err(|e| sec.name.err(e.to_string()))
}

fn build_space(sec: &Section<'_>, field: Arc<FiniteField>) -> PResult<HyperVectorSpace> {
    let elems = require_line(sec, "elements")?;
    let labels = Labels::declare("element", &elems[1..])?;
    if labels.len() == 0 {
        return Err(elems[0].err("a space needs elements"));
    }
    let scalars = Labels::from_labels("scalar", field.labels());
    let zero = single_label(require_line(sec, "zero")?, &labels)?;
    let n = labels.len();
    let mut add = vec![vec![None; n]; n];
    let mut hyper: Vec<Vec<Option<VectorSubset>>> = vec![vec![None; n]; scalars.len()];
    for line in &sec.body {
        match line[0].text {
            "elements" | "zero" => continue,
            _ => {}
        }
        match line.get(1).map(|t| t.text) {
            Some("+") => binary_table("addition", "+", line, &labels, &labels, &labels, &mut add)?,
            Some("o") => {
                let b = scalars.get(&line[0])?;
                let y = labels.get(&token(line, 2, "an element")?)?;
                expect(line, 3, "=")?;
                expect(line, 4, "{")?;
                let open = line[4];
                let mut cell = VectorSubset::new();
                let mut i = 5;
                loop {
                    let t = token(line, i, "`}`")?;
                    if t.text == "}" && cell.is_empty() {
                        return Err(open.err("empty hyperoperation cell"));
                    }
                    let v = labels.get(&t)?;
                    if !cell.insert(v) {
                        return Err(t.err(format!("element `{}` listed twice", t.text)));
                    }
                    let sep = token(line, i + 1, "`,` or `}`")?;
                    match sep.text {
                        "," => i += 2,
                        "}" => break,
                        _ => return Err(sep.err("expected `,` or `}`")),
                    }
                }
                no_trailing(line, i + 2)?;
                if hyper[b][y].replace(cell).is_some() {
                    return Err(line[0].err(format!(
                        "duplicate hyperoperation cell {} o {}",
                        line[0].text, line[2].text
                    )));
                }
            }
            Some(_) => return Err(line[1].err("expected `+` or `o`")),
            None => return Err(line[0].err("expected a table line")),
        }
    }
    let add = complete("addition", "+", add, &labels, &labels, &sec.end)?;
    let hyper = hyper
        .into_iter()
        .enumerate()
        .map(|(b, row)| {
            row.into_iter()
                .enumerate()
                .map(|(y, c)| {
                    c.ok_or_else(|| {
                        sec.end.err(format!(
                            "missing hyperoperation cell {} o {}",
                            scalars.names[b], labels.names[y]
                        ))
                    })
                })
                .collect::<PResult<Vec<_>>>()
        })
        .collect::<PResult<Vec<_>>>()?;
    HyperVectorSpace::new(sec.name.text, labels.owned(), add, zero, field, hyper)
        .map_err(|e| sec.name.err(e.to_string()))
}

fn grade(t: &Tok<'_>, positive: bool) -> PResult<Rational> {
    let q = parse_rational(t.text).ok_or_else(|| t.err("malformed rational"))?;
    let ok = if positive {
        q >= Rational::zero() && q <= Rational::one()
    } else {
        q >= -Rational::one() && q <= Rational::zero()
    };
    if !ok {
        let range = if positive { "[0,1]" } else { "[-1,0]" };
        return Err(t.err(format!("grade out of range {range}")));
    }
    Ok(q)
}

fn build_bfs(sec: &Section<'_>, space: Arc<HyperVectorSpace>) -> PResult<BipolarFuzzySoftSet> {
    let params_line = require_line(sec, "params")?;
    let params = Labels::declare("parameter", &params_line[1..])?;
    let vectors = Labels::from_labels("element", space.labels());
    let n = vectors.len();
    let mut cells: Vec<Vec<Option<(Rational, Rational)>>> = vec![vec![None; n]; params.len()];
    for line in &sec.body {
        if line[0].text == "params" {
            continue;
        }
        let e = params.get(&line[0])?;
        let x = vectors.get(&token(line, 1, "an element")?)?;
        expect(line, 2, "=")?;
        expect(line, 3, "(")?;
        let pos = grade(&token(line, 4, "a grade")?, true)?;
        expect(line, 5, ",")?;
        let neg = grade(&token(line, 6, "a grade")?, false)?;
        expect(line, 7, ")")?;
        no_trailing(line, 8)?;
        if cells[e][x].replace((pos, neg)).is_some() {
            return Err(line[0].err(format!(
                "duplicate grade cell {} {}",
                line[0].text, line[1].text
            )));
        }
    }
    let mut table = Vec::with_capacity(params.len());
    for (e, row) in cells.into_iter().enumerate() {
        let mut pos = Vec::with_capacity(n);
        let mut neg = Vec::with_capacity(n);
        for (x, c) in row.into_iter().enumerate() {
            let (p, q) = c.ok_or_else(|| {
                sec.end.err(format!(
                    "missing grade cell {} {}",
                    params.names[e], vectors.names[x]
                ))
            })?;
            pos.push(p);
            neg.push(q);
        }
        table.push(BipolarFuzzySet::new(pos, neg).map_err(|err| sec.name.err(err.to_string()))?);
    }
    BipolarFuzzySoftSet::new(space, params.owned(), table).map_err(|e| sec.name.err(e.to_string()))
}

/// Parses and fully validates a `.hvs` document.
pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let sections = split_sections(lex(text)?)?;
    let mut by_kind: BTreeMap<DefKind, BTreeMap<&str, &Section>> = BTreeMap::new();
    for sec in &sections {
        let names = by_kind.entry(sec.kind).or_default();
        if names.insert(sec.name.text, sec).is_some() {
            return Err(sec.name.err(format!(
                "duplicate {} `{}`",
                sec.kind.keyword(),
                sec.name.text
            )));
        }
    }
    let of = |kind| by_kind.get(&kind).cloned().unwrap_or_default();

    let mut doc = Document::new();
    let mut fields = BTreeMap::new();
    for (name, sec) in of(DefKind::Field) {
        fields.insert(name, Arc::new(build_field(sec)?));
        doc.record_span(DefKind::Field, name, sec.name.span());
    }
    let mut spaces = BTreeMap::new();
    for (name, sec) in of(DefKind::Space) {
        let target = sec.target.expect("space headers name a field");
        let field = fields
            .get(target.text)
            .ok_or_else(|| target.err(format!("unknown field `{}`", target.text)))?;
        spaces.insert(name, Arc::new(build_space(sec, field.clone())?));
        doc.record_span(DefKind::Space, name, sec.name.span());
    }
    let mut sets = BTreeMap::new();
    for (name, sec) in of(DefKind::Bfs) {
        let target = sec.target.expect("bfs headers name a space");
        let space = spaces
            .get(target.text)
            .ok_or_else(|| target.err(format!("unknown space `{}`", target.text)))?;
        sets.insert(name, build_bfs(sec, space.clone())?);
        doc.record_span(DefKind::Bfs, name, sec.name.span());
    }

    let internal = |e: crate::Error| ParseError {
        line: 1,
        column: 1,
        message: e.to_string(),
        token: String::new(),
    };
    for f in fields.into_values() {
        doc.insert_field(f).map_err(internal)?;
    }
    for s in spaces.into_values() {
        doc.insert_space(s).map_err(internal)?;
    }
    for (name, g) in sets {
        doc.insert_bfs(name, g).map_err(internal)?;
    }
    Ok(doc)
}
