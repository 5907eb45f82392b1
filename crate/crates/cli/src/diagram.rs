//! SVG plot of a planar ground set and its circuits.

use std::fmt::Write;

use sonc_core::SoncCone;

const CELL: f64 = 48.0;
const MARGIN: f64 = 32.0;

pub fn render(cone: &SoncCone) -> String {
    let a = cone.ground_set();
    let max_x = a.points().iter().map(|p| p.coords()[0]).max().unwrap_or(0).max(1);
    let max_y = a.points().iter().map(|p| p.coords()[1]).max().unwrap_or(0).max(1);
    let width = 2.0 * MARGIN + CELL * f64::from(max_x);
    let height = 2.0 * MARGIN + CELL * f64::from(max_y);
    let at = |c: &[u32]| (MARGIN + CELL * f64::from(c[0]), height - MARGIN - CELL * f64::from(c[1]));

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(svg, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let _ = writeln!(svg, r##"<g stroke="#e4e4e4" stroke-width="1">"##);
    for x in 0..=max_x {
        let (px, _) = at(&[x, 0]);
        let _ = writeln!(svg, r#"<line x1="{px}" y1="{MARGIN}" x2="{px}" y2="{}"/>"#, height - MARGIN);
    }
    for y in 0..=max_y {
        let (_, py) = at(&[0, y]);
        let _ = writeln!(svg, r#"<line x1="{MARGIN}" y1="{py}" x2="{}" y2="{py}"/>"#, width - MARGIN);
    }
    let _ = writeln!(svg, "</g>");

    for (c, &reduced) in cone.circuits().iter().zip(cone.reduced_flags()) {
        let pts: Vec<String> = c
            .support()
            .map(|p| {
                let (x, y) = at(p.coords());
                format!("{x},{y}")
            })
            .collect();
        let style = if reduced {
            r##"fill="#d9534f" fill-opacity="0.12" stroke="#d9534f" stroke-width="2.5" class="circuit reduced""##
        } else {
            r##"fill="none" stroke="#5b7db1" stroke-width="1.2" stroke-dasharray="4 3" class="circuit""##
        };
        let _ = writeln!(
            svg,
            r#"<polygon points="{}" {style}><title>{c}</title></polygon>"#,
            pts.join(" ")
        );
    }

    for p in a.points() {
        let (x, y) = at(p.coords());
        let fill = if p.is_even() { "#222222" } else { "#ffffff" };
        let _ = writeln!(
            svg,
            r##"<circle cx="{x}" cy="{y}" r="6" fill="{fill}" stroke="#222222" stroke-width="2"><title>{p}</title></circle>"##
        );
    }
    svg.push_str("</svg>\n");
    svg
}
