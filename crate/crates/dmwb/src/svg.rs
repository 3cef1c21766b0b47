//! Schematic drawing of the blown-up quadrilateral with its branched orders.

use std::fmt::Write;

use dmwb_core::lattice_params::weights_from_spec;
use dmwb_core::{DivisorId, ExtOrder, LatticeSpec};

pub const SIZE: f64 = 800.0;
const RADIUS: f64 = 30.0;
const MARGIN: f64 = 20.0;

/// Canvas positions of the triple points under `E0, E1, E2, E3`.
pub const POINTS: [(f64, f64); 4] = [
    (400.0, 467.0),
    (400.0, 100.0),
    (100.0, 650.0),
    (700.0, 650.0),
];

pub fn style_class(order: &ExtOrder) -> &'static str {
    if order.is_negative() {
        "collapsed"
    } else if order.is_infinite() {
        "cusp"
    } else {
        "regular"
    }
}

/// Labels in the table's labelling of the divisors.
pub fn labels(spec: &LatticeSpec) -> Vec<(DivisorId, ExtOrder)> {
    let w = weights_from_spec(spec);
    let perm = spec.table_labeling();
    DivisorId::ALL
        .iter()
        .map(|d| (*d, w.branched(d.permute(&perm))))
        .collect()
}

fn unit(dx: f64, dy: f64) -> (f64, f64) {
    let n = dx.hypot(dy);
    (dx / n, dy / n)
}

/// Parameter range of `p + t·u` inside the canvas margin.
fn clip(p: (f64, f64), u: (f64, f64)) -> (f64, f64) {
    let (lo, hi) = (MARGIN, SIZE - MARGIN);
    let mut range = (f64::NEG_INFINITY, f64::INFINITY);
    for (x, dx) in [(p.0, u.0), (p.1, u.1)] {
        if dx.abs() > 1e-12 {
            let (a, b) = ((lo - x) / dx, (hi - x) / dx);
            range = (range.0.max(a.min(b)), range.1.min(a.max(b)));
        }
    }
    range
}

pub fn render(spec: &LatticeSpec) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, "  <title>Branched orders for {spec}</title>");
    s.push_str(
        "  <style>\n    \
         line, circle { fill: none; stroke: #222; stroke-width: 2; }\n    \
         .collapsed { stroke: #c0392b; stroke-dasharray: 6 4; fill: #c0392b; }\n    \
         .cusp { stroke: #2471a3; stroke-width: 3; fill: #2471a3; }\n    \
         circle.collapsed, circle.cusp { fill-opacity: 0.2; }\n    \
         text { font-family: sans-serif; font-size: 18px; stroke: none; }\n  \
         </style>\n",
    );
    for (d, order) in labels(spec) {
        let class = style_class(&order);
        let label = order.symbol();
        if let Some(b) = d.point_index() {
            let (x, y) = POINTS[b as usize];
            let _ = writeln!(
                s,
                r#"  <circle id="{d}" class="{class}" cx="{x}" cy="{y}" r="{RADIUS}"/>"#
            );
            let _ = writeln!(
                s,
                r#"  <text id="{d}-label" class="{class}" x="{}" y="{}">{d}: {label}</text>"#,
                x + RADIUS + 4.0,
                y - RADIUS
            );
        } else {
            let (a, b) = d.line_indices().expect("line divisor");
            let [p, q] = [0u8, 1, 2, 3]
                .into_iter()
                .filter(|i| *i != a && *i != b)
                .map(|i| POINTS[i as usize])
                .collect::<Vec<_>>()[..]
            else {
                unreachable!()
            };
            let (ux, uy) = unit(q.0 - p.0, q.1 - p.1);
            let (t0, t1) = clip(p, (ux, uy));
            let (x1, y1) = (p.0 + ux * t0, p.1 + uy * t0);
            let (x2, y2) = (p.0 + ux * t1, p.1 + uy * t1);
            let _ = writeln!(
                s,
                r#"  <line id="{d}" class="{class}" x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}"/>"#
            );
            let t = t1 - 60.0;
            let (tx, ty) = (p.0 + ux * t + uy * 16.0, p.1 + uy * t - ux * 16.0);
            let _ = writeln!(
                s,
                r#"  <text id="{d}-label" class="{class}" x="{tx:.1}" y="{ty:.1}">{d}: {label}</text>"#
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inside_canvas() {
        let svg = render(&LatticeSpec::three(10, 5));
        for attr in ["x1", "y1", "x2", "y2", "cx", "cy"] {
            for part in svg.split(&format!(" {attr}=\"")).skip(1) {
                let v: f64 = part.split('"').next().unwrap().parse().unwrap();
                assert!((0.0..=SIZE).contains(&v), "{attr}={v}");
            }
        }
    }

    #[test]
    fn collapsed_and_cusp_classes() {
        let l = labels(&LatticeSpec::three(4, 8));
        let e0 = l.iter().find(|(d, _)| *d == DivisorId::E0).unwrap();
        assert_eq!(e0.1, ExtOrder::int(-4));
        assert_eq!(style_class(&e0.1), "collapsed");
        assert!(
            labels(&LatticeSpec::three(6, 3))
                .iter()
                .filter(|(_, o)| o.is_infinite())
                .count()
                >= 4
        );
    }
}
