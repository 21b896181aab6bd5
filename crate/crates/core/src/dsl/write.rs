use std::fmt::Write;

use super::Document;
use crate::{format_rational, BipolarFuzzySoftSet, FiniteField, HyperVectorSpace};

fn write_field(out: &mut String, f: &FiniteField) {
    let l = |a: usize| f.label(a);
    writeln!(out, "field {}", f.name()).unwrap();
    writeln!(out, "  elements {}", f.labels().join(" ")).unwrap();
    writeln!(out, "  zero {}", l(f.zero())).unwrap();
    writeln!(out, "  one {}", l(f.one())).unwrap();
    for a in f.elements() {
        for b in f.elements() {
            writeln!(out, "  {} + {} = {}", l(a), l(b), l(f.add(a, b))).unwrap();
        }
    }
    for a in f.elements() {
        for b in f.elements() {
            writeln!(out, "  {} * {} = {}", l(a), l(b), l(f.mul(a, b))).unwrap();
        }
    }
    out.push_str("end\n");
}

fn write_space(out: &mut String, v: &HyperVectorSpace) {
    let l = |y: usize| v.label(y);
    writeln!(out, "space {} over {}", v.name(), v.field().name()).unwrap();
    writeln!(out, "  elements {}", v.labels().join(" ")).unwrap();
    writeln!(out, "  zero {}", l(v.zero())).unwrap();
    for y in v.carrier() {
        for z in v.carrier() {
            writeln!(out, "  {} + {} = {}", l(y), l(z), l(v.add(y, z))).unwrap();
        }
    }
    for b in v.field().elements() {
        for y in v.carrier() {
            writeln!(
                out,
                "  {} o {} = {}",
                v.field().label(b),
                l(y),
                v.format_set(v.hyper(b, y))
            )
            .unwrap();
        }
    }
    out.push_str("end\n");
}

fn write_bfs(out: &mut String, name: &str, g: &BipolarFuzzySoftSet) {
    let v = g.space();
    writeln!(out, "bfs {name} on {}", v.name()).unwrap();
    writeln!(out, "  params {}", g.params().join(" ")).unwrap();
    for (param, ge) in g.entries() {
        for x in v.carrier() {
            writeln!(
                out,
                "  {param} {} = ({}, {})",
                v.label(x),
                format_rational(&ge.pos(x)),
                format_rational(&ge.neg(x))
            )
            .unwrap();
        }
    }
    out.push_str("end\n");
}

/// Canonical text: fields, then spaces, then bfs sets, each sorted by
/// name, separated by blank lines. Elements and parameters keep their
/// declared order; tables are written row by row; grades in lowest terms.
pub fn serialize_document(doc: &Document) -> String {
    let mut blocks = Vec::new();
    for f in doc.fields().values() {
        let mut s = String::new();
        write_field(&mut s, f);
        blocks.push(s);
    }
    for v in doc.spaces().values() {
        let mut s = String::new();
        write_space(&mut s, v);
        blocks.push(s);
    }
    for (name, g) in doc.bfs_sets() {
        let mut s = String::new();
        write_bfs(&mut s, name, g);
        blocks.push(s);
    }
    blocks.join("\n")
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::bfs::fixtures::g_two_level;
    use crate::dsl::parse_document;
    use crate::hyper::space::fixtures::z4_over_z2;

    #[test]
    fn round_trip_built_document() {
        let v = Arc::new(z4_over_z2());
        let mut doc = Document::new();
        doc.insert_bfs("G", g_two_level(&v)).unwrap();
        let text = serialize_document(&doc);
        let back = parse_document(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(serialize_document(&back), text);
    }

    #[test]
    fn canonical_layout() {
        let v = Arc::new(z4_over_z2());
        let mut doc = Document::new();
        doc.insert_bfs("G", g_two_level(&v)).unwrap();
        let text = serialize_document(&doc);
        assert!(text.starts_with("field Z2\n  elements 0 1\n  zero 0\n  one 1\n  0 + 0 = 0\n"));
        assert!(text.contains("end\n\nspace Z4 over Z2\n  elements 0 1 2 3\n"));
        assert!(text.contains("  1 o 1 = {1,2,3}\n"));
        assert!(text.contains("bfs G on Z4\n  params c d e\n  c 0 = (1/2, -2/5)\n"));
        assert!(text.ends_with("  e 3 = (2/5, -1/2)\nend\n"));
    }

    #[test]
    fn grades_in_lowest_terms() {
        let text = "field K\n  elements 0\n  zero 0\n  one 0\n  0 + 0 = 0\n  0 * 0 = 0\nend\n";
        // The one-element ring is not a field.
        assert!(parse_document(text).is_err());
        let v = Arc::new(crate::hyper::space::fixtures::classical(2));
        let src = format!(
            "{}\nbfs H on Z2\n  params p\n  p 0 = (2/4, -0.50)\n  p 1 = (0, 0)\nend\n",
            serialize_document(&{
                let mut d = Document::new();
                d.insert_space(v).unwrap();
                d
            })
        );
        let doc = parse_document(&src).unwrap();
        assert!(serialize_document(&doc).contains("  p 0 = (1/2, -1/2)\n"));
    }
}
