//! SVG rendering of curve families. Rationals are converted to decimal
//! with 12 significant digits for display only; nothing here feeds back
//! into any predicate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::coloring::Coloring;
use crate::geom::{CurveFamily, Kind};

/// Decimal rendering with 12 significant digits, for display only.
fn dec(r: &BigRational) -> String {
    let f = match r.to_f64() {
        Some(f) if f.is_finite() => f,
        _ => return (r.numer() / r.denom()).to_string(),
    };
    if f == 0.0 {
        return "0".to_string();
    }
    let int_digits = f.abs().log10().floor().max(0.0) as usize + 1;
    let decimals = 12usize.saturating_sub(int_digits);
    let s = format!("{:.*}", decimals, f);
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn tuple_hash(tuple: &[u32]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &c in tuple {
        h ^= c as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

const PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#393b79", "#ad494a",
];

fn stroke_for(tuple: &[u32]) -> &'static str {
    PALETTE[(tuple_hash(tuple) % PALETTE.len() as u64) as usize]
}

/// Renders one path per curve, plus the ground line x = 0 for grounded and
/// split families. The viewBox covers the rational bounding box rounded
/// outward by one unit.
pub fn emit_svg(fam: &CurveFamily, coloring: Option<&Coloring>) -> String {
    let mut min_x = BigInt::from(0);
    let mut max_x = BigInt::from(1);
    let mut min_y = BigInt::from(0);
    let mut max_y = BigInt::from(1);
    let mut any = false;
    for c in &fam.curves {
        for p in &c.points {
            let (fx, fy) = (p.x.floor().to_integer(), p.y.floor().to_integer());
            let (cx, cy) = (p.x.ceil().to_integer(), p.y.ceil().to_integer());
            if !any {
                min_x = fx.clone();
                max_x = cx.clone();
                min_y = fy.clone();
                max_y = cy.clone();
                any = true;
            }
            min_x = min_x.min(fx);
            max_x = max_x.max(cx);
            min_y = min_y.min(fy);
            max_y = max_y.max(cy);
        }
    }
    min_x -= 1;
    min_y -= 1;
    max_x += 1;
    max_y += 1;
    let width = &max_x - &min_x;
    let height = &max_y - &min_y;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    // y axis flipped so larger y renders higher
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">\n",
        min_x, -&max_y, width, height
    ));
    if matches!(fam.kind, Kind::Grounded | Kind::Split) {
        out.push_str(&format!(
            "  <line x1=\"0\" y1=\"{}\" x2=\"0\" y2=\"{}\" stroke=\"#999\" stroke-width=\"0.05\" stroke-dasharray=\"0.2,0.1\"/>\n",
            -&max_y, -&min_y
        ));
    }
    let mut curves: Vec<_> = fam.curves.iter().collect();
    curves.sort_by_key(|c| c.id);
    for c in curves {
        let stroke = match coloring {
            Some(col) => stroke_for(col.color(c.id)),
            None => "#1f77b4",
        };
        let mut d = String::new();
        for (i, p) in c.points.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            d.push_str(&format!("{}{} {} ", cmd, dec(&p.x), dec(&(-p.y.clone()))));
        }
        if c.points.len() == 1 {
            // degenerate single-point curve: render a dot
            let p = &c.points[0];
            out.push_str(&format!(
                "  <circle cx=\"{}\" cy=\"{}\" r=\"0.08\" fill=\"{}\"/>\n",
                dec(&p.x),
                dec(&(-p.y.clone())),
                stroke
            ));
            continue;
        }
        out.push_str(&format!(
            "  <path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"0.08\"/>\n",
            d.trim_end(),
            stroke
        ));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{rat, CurveFamily, Kind, Point, Polyline};
    use crate::graph::VertexId;

    #[test]
    fn empty_family_renders_ground_line() {
        let fam = CurveFamily::new(vec![], Kind::Grounded).unwrap();
        let svg = emit_svg(&fam, None);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains("<line"));
        assert!(svg.contains("</svg>"));
    }

    #[test]
    fn path_point_counts_match() {
        let c = Polyline::new(
            VertexId(1),
            vec![
                Point::new(rat(0), rat(2)),
                Point::new(crate::geom::ratio(1, 3), rat(1)),
                Point::new(rat(1), rat(2)),
            ],
        )
        .unwrap();
        let fam = CurveFamily::new(vec![c], Kind::Grounded).unwrap();
        let svg = emit_svg(&fam, None);
        let path_line = svg.lines().find(|l| l.contains("<path")).unwrap();
        assert_eq!(path_line.matches('L').count(), 2);
        assert_eq!(path_line.matches('M').count(), 1);
    }

    #[test]
    fn coloring_sets_stroke_colors() {
        let curves = vec![
            Polyline::new(
                VertexId(1),
                vec![Point::new(rat(0), rat(1)), Point::new(rat(1), rat(1))],
            )
            .unwrap(),
            Polyline::new(
                VertexId(2),
                vec![Point::new(rat(0), rat(2)), Point::new(rat(2), rat(2))],
            )
            .unwrap(),
        ];
        let fam = CurveFamily::new(curves, Kind::Grounded).unwrap();
        let coloring = crate::coloring::Coloring {
            colors: vec![vec![1, 1], vec![2, 1]],
            bound: 3,
            algorithm: crate::coloring::Algorithm::SemiComparability,
        };
        let svg = emit_svg(&fam, Some(&coloring));
        let strokes: Vec<&str> = svg
            .lines()
            .filter(|l| l.contains("<path"))
            .filter_map(|l| l.split("stroke=\"").nth(1))
            .filter_map(|s| s.split('"').next())
            .collect();
        assert_eq!(strokes.len(), 2);
        assert_ne!(strokes[0], strokes[1]);
    }

    #[test]
    fn generic_family_has_no_ground_line() {
        let c = Polyline::new(
            VertexId(1),
            vec![Point::new(rat(1), rat(1)), Point::new(rat(2), rat(1))],
        )
        .unwrap();
        let fam = CurveFamily::new(vec![c], Kind::Generic).unwrap();
        let svg = emit_svg(&fam, None);
        assert!(!svg.contains("<line"));
    }
}
