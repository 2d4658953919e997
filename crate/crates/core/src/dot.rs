//! Graphviz rendering of skeletons with measure overlays.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::berk::{BerkPoint, PointType};
use crate::measure::Measure;
use crate::skeleton::{Location, Skeleton};
use crate::valfield::format_rational;

const LAYER_STYLES: &[(&str, &str)] = &[
    ("dashed", "lightblue"),
    ("dotted", "lightpink"),
    ("bold", "palegreen"),
    ("dashed", "khaki"),
    ("dotted", "lavender"),
];

fn type_label(x: &BerkPoint) -> &'static str {
    match x.point_type() {
        PointType::One => "type 1",
        PointType::Two => "type 2",
        PointType::Three => "type 3",
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders `skel` as an undirected DOT graph. Each `(name, measure)` layer
/// becomes a set of note nodes labelled `name: mass`, attached to the vertex
/// its atoms retract to. Output depends only on the inputs.
pub fn export_dot(skel: &Skeleton, layers: &[(&str, &Measure)]) -> String {
    let mut order: Vec<(String, usize)> = skel
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, x)| (x.to_string(), i))
        .collect();
    order.sort();
    let id: BTreeMap<usize, usize> = order
        .iter()
        .enumerate()
        .map(|(k, (_, i))| (*i, k))
        .collect();

    let mut out = String::from("graph skeleton {\n  node [shape=ellipse];\n");
    for (label, i) in &order {
        let x = skel.vertex(*i);
        let _ = writeln!(
            out,
            "  v{} [label=\"{}\\n{}\"];",
            id[i],
            escape(label),
            type_label(x)
        );
    }

    let mut edges: Vec<(usize, usize, String)> = skel
        .edges()
        .map(|e| {
            let (a, b) = (id[&e.child], id[&e.parent]);
            (a.min(b), a.max(b), skel.edge_length(e.child).to_string())
        })
        .collect();
    edges.sort();
    for (a, b, len) in edges {
        let _ = writeln!(out, "  v{a} -- v{b} [label=\"{len}\"];");
    }

    for (layer, (name, mu)) in layers.iter().enumerate() {
        let (style, color) = LAYER_STYLES[layer % LAYER_STYLES.len()];
        let mut atoms: Vec<(usize, String, String)> = mu
            .atoms()
            .map(|(x, w)| {
                let anchor = match skel.locate(&skel.retract(x)) {
                    Some(Location::Vertex(i)) | Some(Location::Edge { child: i, .. }) => id[&i],
                    None => id[&skel.top()],
                };
                let label = if skel.index_of(x).is_some() {
                    format!("{name}: {}", format_rational(w))
                } else {
                    format!("{name}: {} at {x}", format_rational(w))
                };
                (anchor, x.to_string(), label)
            })
            .collect();
        atoms.sort();
        for (k, (anchor, _, label)) in atoms.into_iter().enumerate() {
            let _ = writeln!(
                out,
                "  m{layer}_{k} [shape=note, style=filled, fillcolor={color}, label=\"{}\"];",
                escape(&label)
            );
            let _ = writeln!(out, "  m{layer}_{k} -- v{anchor} [style={style}];");
        }
    }
    out.push_str("}\n");
    out
}
