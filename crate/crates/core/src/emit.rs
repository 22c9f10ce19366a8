//! DOT and SVG emitters. Pure string builders with deterministic output;
//! the SVG renderer is the one place floating point appears (display only).

use std::fmt::Write;

use crate::colorset::ColorSet;
use crate::cortege::PathSystem;
use crate::cubillage::{Cubillage, CubillageFlipGraph};
use crate::orders::FlipGraph;

/// DOT for an order flip graph; node labels are the sorted inversion sets
/// spelled out as corteges.
pub fn flip_graph_dot(sys: &PathSystem, graph: &FlipGraph) -> String {
    let mut out = String::from("digraph flips {\n  rankdir=BT;\n");
    for (i, inv) in graph.nodes.iter().enumerate() {
        let label: Vec<String> = inv
            .iter()
            .map(|&p| sys.cortege_name(&sys.level(graph.d).corteges[p]))
            .collect();
        let label = if label.is_empty() {
            "{}".to_string()
        } else {
            format!("{{{}}}", label.join(", "))
        };
        writeln!(out, "  n{i} [label=\"{label}\"];").unwrap();
    }
    for &(a, b, p) in &graph.arcs {
        let name = sys.cortege_name(&sys.level(graph.d).corteges[p]);
        writeln!(out, "  n{a} -> n{b} [label=\"{name}\"];").unwrap();
    }
    out.push_str("}\n");
    out
}

/// DOT for a cubillage flip graph; node labels are inversion sets of packets.
pub fn cubillage_graph_dot(graph: &CubillageFlipGraph) -> String {
    let mut out = String::from("digraph cubillages {\n  rankdir=BT;\n");
    for (i, (inv, _)) in graph.nodes.iter().enumerate() {
        let label: Vec<String> = inv.iter().map(|p| p.to_string()).collect();
        writeln!(out, "  n{i} [label=\"{{{}}}\"];", label.join(", ")).unwrap();
    }
    for &(a, b, p) in &graph.arcs {
        writeln!(out, "  n{a} -> n{b} [label=\"{p}\"];").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Options for the tiling renderer (dimension 2 only).
#[derive(Clone, Debug, Default)]
pub struct RenderOptions {
    /// Packet whose three rhombi get a bold stroke.
    pub bold_packet: Option<ColorSet>,
    /// Draw an arrow per immediate-precedence arc of the natural order.
    pub arrows: bool,
}

/// Renders a 2-dimensional cubillage (a rhombus tiling of a zonogon) as SVG.
/// Edge colors get unit vectors spread evenly over a quarter turn in the
/// configuration's slope order, which keeps the picture readable whatever
/// the moment-curve parameters are.
pub fn tiling_svg(q: &Cubillage, options: &RenderOptions) -> String {
    assert_eq!(q.dim(), 2, "SVG rendering is for d = 2");
    let n = q.n();
    let scale = 60.0;
    let unit: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let theta = if n == 1 {
                std::f64::consts::FRAC_PI_2
            } else {
                3.0 * std::f64::consts::FRAC_PI_4
                    - i as f64 * std::f64::consts::FRAC_PI_2 / (n - 1) as f64
            };
            (theta.cos() * scale, theta.sin() * scale)
        })
        .collect();
    let point = |s: ColorSet| -> (f64, f64) {
        s.iter().fold((0.0, 0.0), |(x, y), c| {
            let (dx, dy) = unit[c as usize - 1];
            (x + dx, y + dy)
        })
    };
    let (mut min_x, mut min_y, mut max_x, mut max_y) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for mask in 0..(1u16 << n) {
        let (x, y) = point(ColorSet(mask));
        min_x = min_x.min(x);
        min_y = min_y.min(y);
        max_x = max_x.max(x);
        max_y = max_y.max(y);
    }
    let pad = 10.0;
    let width = max_x - min_x + 2.0 * pad;
    let height = max_y - min_y + 2.0 * pad;
    // SVG y grows downwards; flip so the front side is at the bottom.
    let tx = |x: f64| x - min_x + pad;
    let ty = |y: f64| max_y - y + pad;

    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">"
    )
    .unwrap();
    let bold = options.bold_packet;
    for (t, x) in q.cubes() {
        let colors = t.colors();
        let (a, b) = (colors[0], colors[1]);
        let p0 = point(x);
        let p1 = point(x.insert(a));
        let p2 = point(x.insert(a).insert(b));
        let p3 = point(x.insert(b));
        let is_bold = bold.is_some_and(|p| t.is_subset(p));
        let stroke = if is_bold { 3.0 } else { 1.0 };
        writeln!(
            out,
            "  <polygon points=\"{:.3},{:.3} {:.3},{:.3} {:.3},{:.3} {:.3},{:.3}\" fill=\"none\" stroke=\"black\" stroke-width=\"{stroke}\"/>",
            tx(p0.0), ty(p0.1), tx(p1.0), ty(p1.1), tx(p2.0), ty(p2.1), tx(p3.0), ty(p3.1),
        )
        .unwrap();
    }
    if options.arrows {
        if let Ok(order) = q.natural_order() {
            let center = |t: ColorSet| -> (f64, f64) {
                let x = q.bottom_of(t).unwrap();
                let p0 = point(x);
                let p2 = point(x.union(t));
                ((p0.0 + p2.0) / 2.0, (p0.1 + p2.1) / 2.0)
            };
            for &(a, b) in &order.arcs {
                let (x1, y1) = center(order.types[a]);
                let (x2, y2) = center(order.types[b]);
                writeln!(
                    out,
                    "  <line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"gray\" stroke-width=\"0.8\" marker-end=\"url(#a)\"/>",
                    tx(x1), ty(y1), tx(x2), ty(y2),
                )
                .unwrap();
            }
            out.insert_str(
                out.find('\n').unwrap() + 1,
                "  <defs><marker id=\"a\" markerWidth=\"8\" markerHeight=\"6\" refX=\"8\" refY=\"3\" orient=\"auto\"><path d=\"M0,0 L8,3 L0,6 z\" fill=\"gray\"/></marker></defs>\n",
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
