//! Text renderings of depth posets: DOT, JSON, annotated persistence
//! diagram as CSV, and a static SVG of the same diagram.
//!
//! Pair ids are indices into [`DepthPoset::elements`], which are sorted by
//! birth value. All output is deterministic.

use std::fmt::Write as _;

use serde::Serialize;

use crate::complex::LefschetzComplex;
use crate::depth_poset::DepthPoset;

fn node_label(poset: &DepthPoset, complex: &LefschetzComplex, i: usize) -> String {
    let p = &poset.elements()[i];
    format!("{} p={}", p.display(complex), p.dim)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram as a DOT digraph, edges from the pair cancelled first.
pub fn emit_dot(poset: &DepthPoset, complex: &LefschetzComplex) -> String {
    let mut out = String::from("digraph depth_poset {\n  rankdir=BT;\n  node [shape=box];\n");
    for i in 0..poset.len() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(&node_label(poset, complex, i)));
    }
    for &(a, b) in poset.hasse() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct JsonElement {
    id: usize,
    birth: String,
    death: String,
    dim: usize,
    birth_value: f64,
    death_value: f64,
    persistence: f64,
}

#[derive(Serialize)]
struct JsonPoset {
    elements: Vec<JsonElement>,
    closure: Vec<[usize; 2]>,
    hasse: Vec<[usize; 2]>,
}

/// Elements plus closure and Hasse edge lists as JSON.
pub fn emit_json(poset: &DepthPoset, complex: &LefschetzComplex) -> String {
    let doc = JsonPoset {
        elements: poset
            .elements()
            .iter()
            .enumerate()
            .map(|(id, p)| JsonElement {
                id,
                birth: complex.label(p.birth),
                death: complex.label(p.death),
                dim: p.dim,
                birth_value: p.birth_value,
                death_value: p.death_value,
                persistence: p.persistence,
            })
            .collect(),
        closure: poset.closure().iter().map(|&(a, b)| [a, b]).collect(),
        hasse: poset.hasse().iter().map(|&(a, b)| [a, b]).collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("poset serializes");
    text.push('\n');
    text
}

/// Persistence diagram points `birth_value,death_value,dim,pair_id`, then,
/// if the poset has relations, a second header and one
/// `pair_id_from,pair_id_to` row per Hasse edge.
pub fn emit_annotated_csv(poset: &DepthPoset) -> String {
    let mut out = String::from("birth_value,death_value,dim,pair_id\n");
    for (i, p) in poset.elements().iter().enumerate() {
        let _ = writeln!(out, "{},{},{},{i}", p.birth_value, p.death_value, p.dim);
    }
    if !poset.hasse().is_empty() {
        out.push_str("pair_id_from,pair_id_to\n");
        for &(a, b) in poset.hasse() {
            let _ = writeln!(out, "{a},{b}");
        }
    }
    out
}

/// Points and arcs parsed back from [`emit_annotated_csv`].
pub type DiagramRows = (Vec<(f64, f64, usize, usize)>, Vec<(usize, usize)>);

pub fn parse_annotated_csv(text: &str) -> Option<DiagramRows> {
    let mut lines = text.lines();
    if lines.next()? != "birth_value,death_value,dim,pair_id" {
        return None;
    }
    let mut points = Vec::new();
    let mut arcs = Vec::new();
    let mut in_arcs = false;
    for line in lines {
        if line == "pair_id_from,pair_id_to" {
            in_arcs = true;
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if in_arcs {
            arcs.push((f.first()?.parse().ok()?, f.get(1)?.parse().ok()?));
        } else {
            points.push((
                f.first()?.parse().ok()?,
                f.get(1)?.parse().ok()?,
                f.get(2)?.parse().ok()?,
                f.get(3)?.parse().ok()?,
            ));
        }
    }
    Some((points, arcs))
}

const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// Static SVG: birth on the x axis, death on the y axis, the diagonal, one
/// dot per pair coloured by dimension and one segment per Hasse edge.
pub fn emit_svg(poset: &DepthPoset, complex: &LefschetzComplex) -> String {
    const SIZE: f64 = 480.0;
    const MARGIN: f64 = 40.0;
    let values: Vec<f64> = poset
        .elements()
        .iter()
        .flat_map(|p| [p.birth_value, p.death_value])
        .collect();
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = if lo.is_finite() && hi > lo { (lo, hi) } else { (0.0, 1.0) };
    let scale = |v: f64| (v - lo) / (hi - lo) * (SIZE - 2.0 * MARGIN);
    let x = |v: f64| MARGIN + scale(v);
    let y = |v: f64| SIZE - MARGIN - scale(v);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    out.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    let _ = writeln!(
        out,
        "  <line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"#999\" stroke-dasharray=\"4 4\"/>",
        x(lo),
        y(lo),
        x(hi),
        y(hi)
    );
    let _ = writeln!(
        out,
        "  <text x=\"{:.3}\" y=\"{:.3}\" font-size=\"11\" text-anchor=\"end\">birth</text>",
        SIZE - MARGIN,
        SIZE - 10.0
    );
    let _ = writeln!(out, "  <text x=\"10\" y=\"{MARGIN}\" font-size=\"11\">death</text>");
    for &(a, b) in poset.hasse() {
        let (p, q) = (&poset.elements()[a], &poset.elements()[b]);
        let _ = writeln!(
            out,
            "  <line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"#444\" stroke-width=\"1\"/>",
            x(p.birth_value),
            y(p.death_value),
            x(q.birth_value),
            y(q.death_value)
        );
    }
    for (i, p) in poset.elements().iter().enumerate() {
        let _ = writeln!(
            out,
            "  <circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"4\" fill=\"{}\"><title>{} #{i}</title></circle>",
            x(p.birth_value),
            y(p.death_value),
            PALETTE[p.dim % PALETTE.len()],
            escape_xml(&node_label(poset, complex, i))
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::depth_poset::build_depth_poset;
    use crate::fixtures;

    #[test]
    fn empty_poset_outputs() {
        let poset = DepthPoset::new(vec![], []).unwrap();
        let complex = LefschetzComplex::empty();
        let dot = emit_dot(&poset, &complex);
        assert!(!dot.contains("->"));
        assert_eq!(emit_annotated_csv(&poset), "birth_value,death_value,dim,pair_id\n");
        assert!(emit_svg(&poset, &complex).ends_with("</svg>\n"));
    }

    #[test]
    fn circle_dot_has_maximal_g_big_h() {
        let (complex, filter) = fixtures::circle();
        let poset = build_depth_poset(&complex, &filter).unwrap();
        let dot = emit_dot(&poset, &complex);
        let node = dot
            .lines()
            .find(|l| l.contains("\"(g,H) p=0\""))
            .expect("node present");
        let id = node.trim().split(' ').next().unwrap();
        assert!(!dot.contains(&format!("  {id} ->")));
        assert_eq!(dot.matches("->").count(), poset.hasse().len());
    }

    #[test]
    fn circle_csv_points() {
        let (complex, filter) = fixtures::circle();
        let poset = build_depth_poset(&complex, &filter).unwrap();
        let (points, arcs) = parse_annotated_csv(&emit_annotated_csv(&poset)).unwrap();
        assert_eq!(points.len(), 7);
        assert!(points.iter().all(|p| p.2 == 0 && p.0 < p.1));
        assert_eq!(arcs.len(), poset.hasse().len());
        for (a, b) in arcs {
            assert!(points[a].0 > points[b].0 && points[a].1 < points[b].1);
        }
    }

    #[test]
    fn json_lists_closure() {
        let (complex, filter) = fixtures::circle();
        let poset = build_depth_poset(&complex, &filter).unwrap();
        let v: serde_json::Value = serde_json::from_str(&emit_json(&poset, &complex)).unwrap();
        assert_eq!(v["elements"].as_array().unwrap().len(), 7);
        assert_eq!(v["closure"].as_array().unwrap().len(), poset.closure().len());
    }
}
