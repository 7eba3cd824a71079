//! Hand-written SVG: graph edges solid, happy-set edges dashed, visibility
//! edges light, unhappy vertices as squares.

use std::fmt::Write;

use parity_core::{verify_happy_set, visibility_graph, Edge, EdgeSet, Instance};

pub fn svg(inst: &Instance, happy: Option<&EdgeSet>, show_vis: bool) -> String {
    let pts = inst.graph.points();
    // SVG's y axis points down, so flip
    let xy: Vec<(f64, f64)> = pts.iter().map(|p| (p.x as f64, 0.0 - p.y as f64)).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (0.0f64, 0.0f64, 1.0f64, 1.0f64);
    if let Some(&(x, y)) = xy.first() {
        (x0, y0, x1, y1) = (x, y, x, y);
        for &(x, y) in &xy {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
    }
    let span = (x1 - x0).max(y1 - y0).max(1.0);
    let margin = 0.05 * span;
    let (vx, vy) = (x0 - margin, y0 - margin);
    let (vw, vh) = (x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);
    let stroke = span / 300.0;
    let r = span / 100.0;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{vx} {vy} {vw} {vh}">"#
    )
    .unwrap();
    let line = |out: &mut String, e: Edge, class: &str, style: &str| {
        let (a, b) = (xy[e.lo()], xy[e.hi()]);
        writeln!(
            out,
            r#"  <line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" {style}/>"#,
            a.0, a.1, b.0, b.1
        )
        .unwrap();
    };
    if let Some(h) = happy {
        if !verify_happy_set(inst, h).passed() {
            writeln!(
                out,
                r#"  <text class="warning" x="{vx}" y="{}" font-size="{}" fill="red">happy set fails verification</text>"#,
                vy + 3.0 * r,
                3.0 * r
            )
            .unwrap();
        }
    }
    if show_vis {
        for e in visibility_graph(&inst.graph).iter() {
            line(&mut out, e, "vis", &format!(r##"stroke="#c8c8c8" stroke-width="{}""##, stroke / 2.0));
        }
    }
    for &e in inst.graph.edges() {
        line(&mut out, e, "graph", &format!(r#"stroke="black" stroke-width="{stroke}""#));
    }
    if let Some(h) = happy {
        for e in h.iter() {
            line(
                &mut out,
                e,
                "happy",
                &format!(
                    r##"stroke="#d62728" stroke-width="{stroke}" stroke-dasharray="{} {}""##,
                    4.0 * stroke,
                    2.0 * stroke
                ),
            );
        }
    }
    for (v, &(x, y)) in xy.iter().enumerate() {
        if inst.unhappy.contains(&v) {
            writeln!(
                out,
                r#"  <rect class="unhappy" x="{}" y="{}" width="{}" height="{}" fill="white" stroke="black" stroke-width="{stroke}"/>"#,
                x - r,
                y - r,
                2.0 * r,
                2.0 * r
            )
            .unwrap();
        } else {
            writeln!(
                out,
                r#"  <circle class="happy-vertex" cx="{x}" cy="{y}" r="{r}" fill="black"/>"#
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}
