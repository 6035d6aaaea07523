//! Line-based text formats: `ograph 1` for ordered graphs, `curves 1` for
//! polyline families, and the coloring output format. All emitters produce
//! canonical bytes: orders written explicitly, edges sorted by (min, max),
//! curves sorted by id.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::geom::{CurveFamily, Kind, Point, Polyline};
use crate::graph::{OrderedGraph, TotalOrder, VertexId};

fn input_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Input(format!("line {}: {}", line, msg.into()))
}

/// Strips comments and blank lines, keeping 1-based line numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                None
            } else {
                Some((i + 1, line))
            }
        })
        .collect()
}

pub fn parse_ograph(text: &str) -> Result<OrderedGraph> {
    let lines = content_lines(text);
    let mut it = lines.iter();
    match it.next() {
        Some(&(_, "ograph 1")) => {}
        Some(&(no, other)) => {
            return Err(input_err(
                no,
                format!("expected header `ograph 1`, found `{}`", other),
            ))
        }
        None => return Err(Error::Input("empty file".into())),
    }
    let (n, first_body) = match it.next() {
        Some(&(no, line)) => {
            let mut parts = line.split_whitespace();
            if parts.next() != Some("vertices") {
                return Err(input_err(no, "expected `vertices <n>`"));
            }
            let n: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| input_err(no, "bad vertex count"))?;
            if parts.next().is_some() {
                return Err(input_err(no, "trailing tokens after vertex count"));
            }
            (n, no)
        }
        None => return Err(Error::Input("missing `vertices` line".into())),
    };
    let _ = first_body;

    let mut orders: [Option<TotalOrder>; 3] = [None, None, None];
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for &(no, line) in it {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("order") => {
                let name = parts
                    .next()
                    .ok_or_else(|| input_err(no, "missing order name"))?;
                let slot = match name {
                    "o1" => 0,
                    "o2" => 1,
                    "o3" => 2,
                    other => return Err(input_err(no, format!("unknown order `{}`", other))),
                };
                if orders[slot].is_some() {
                    return Err(input_err(no, format!("duplicate order `{}`", name)));
                }
                let seq: Vec<VertexId> = parts
                    .map(|s| {
                        s.parse::<u32>()
                            .map(VertexId)
                            .map_err(|_| input_err(no, format!("bad vertex id `{}`", s)))
                    })
                    .collect::<Result<_>>()?;
                let order =
                    TotalOrder::from_sequence(n, &seq).map_err(|e| input_err(no, e.to_string()))?;
                orders[slot] = Some(order);
            }
            Some("edge") => {
                let read = |p: Option<&str>| -> Result<VertexId> {
                    let s = p.ok_or_else(|| input_err(no, "edge needs two endpoints"))?;
                    let v: u32 = s
                        .parse()
                        .map_err(|_| input_err(no, format!("bad vertex id `{}`", s)))?;
                    if v == 0 || v as usize > n {
                        return Err(input_err(
                            no,
                            format!("vertex {} out of range [1, {}]", v, n),
                        ));
                    }
                    Ok(VertexId(v))
                };
                let u = read(parts.next())?;
                let v = read(parts.next())?;
                if parts.next().is_some() {
                    return Err(input_err(no, "trailing tokens after edge"));
                }
                if u == v {
                    return Err(input_err(no, format!("self-loop at vertex {}", u)));
                }
                edges.push((u, v));
            }
            Some("vertices") => return Err(input_err(no, "duplicate `vertices` line")),
            Some(other) => return Err(input_err(no, format!("unknown directive `{}`", other))),
            None => unreachable!(),
        }
    }

    // the highest order mentioned fixes the order count; gaps default to identity
    let count = orders
        .iter()
        .rposition(|o| o.is_some())
        .map(|i| i + 1)
        .unwrap_or(0)
        .max(1);
    let orders: Vec<TotalOrder> = orders
        .into_iter()
        .take(count)
        .map(|o| o.unwrap_or_else(|| TotalOrder::identity(n)))
        .collect();
    OrderedGraph::new(n, orders, &edges)
}

pub fn emit_ograph(g: &OrderedGraph) -> String {
    let mut out = String::new();
    out.push_str("ograph 1\n");
    out.push_str(&format!("vertices {}\n", g.n()));
    for (i, o) in g.orders().iter().enumerate() {
        out.push_str(&format!("order o{}", i + 1));
        for v in o.sequence() {
            out.push_str(&format!(" {}", v));
        }
        out.push('\n');
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("edge {} {}\n", u, v));
    }
    out
}

fn parse_rational(s: &str, no: usize) -> Result<BigRational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse::<BigInt>()
            .map_err(|_| input_err(no, format!("bad number `{}`", s)))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if !den.is_positive() {
                return Err(input_err(
                    no,
                    format!("denominator must be positive in `{}`", s),
                ));
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// Parses `p/q` or a plain integer.
pub fn parse_rational_str(s: &str) -> Result<BigRational> {
    parse_rational(s, 0).map_err(|_| Error::Input(format!("bad rational `{}`", s)))
}

/// Renders a rational as `p/q`, or just `p` for integers.
pub fn rational_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_curves(text: &str) -> Result<CurveFamily> {
    let lines = content_lines(text);
    let mut it = lines.iter();
    match it.next() {
        Some(&(_, "curves 1")) => {}
        Some(&(no, other)) => {
            return Err(input_err(
                no,
                format!("expected header `curves 1`, found `{}`", other),
            ))
        }
        None => return Err(Error::Input("empty file".into())),
    }
    let mut kind: Option<Kind> = None;
    let mut curves: Vec<Polyline> = Vec::new();
    for &(no, line) in it {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("kind") => {
                if kind.is_some() {
                    return Err(input_err(no, "duplicate `kind` line"));
                }
                kind = Some(match parts.next() {
                    Some("grounded") => Kind::Grounded,
                    Some("split") => Kind::Split,
                    Some("generic") => Kind::Generic,
                    other => {
                        return Err(input_err(no, format!("bad kind `{}`", other.unwrap_or(""))))
                    }
                });
            }
            Some("curve") => {
                let id: u32 = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| input_err(no, "bad curve id"))?;
                let coords: Vec<BigRational> = parts
                    .map(|s| parse_rational(s, no))
                    .collect::<Result<_>>()?;
                if coords.is_empty() || !coords.len().is_multiple_of(2) {
                    return Err(input_err(
                        no,
                        "curve needs an even, positive number of coordinates",
                    ));
                }
                let points: Vec<Point> = coords
                    .chunks(2)
                    .map(|c| Point {
                        x: c[0].clone(),
                        y: c[1].clone(),
                    })
                    .collect();
                let poly = Polyline::new(VertexId(id), points)
                    .map_err(|e| input_err(no, e.to_string()))?;
                curves.push(poly);
            }
            Some(other) => return Err(input_err(no, format!("unknown directive `{}`", other))),
            None => unreachable!(),
        }
    }
    CurveFamily::new(curves, kind.unwrap_or(Kind::Generic))
}

pub fn emit_curves(fam: &CurveFamily) -> String {
    let mut out = String::new();
    out.push_str("curves 1\n");
    out.push_str(&format!(
        "kind {}\n",
        match fam.kind {
            Kind::Grounded => "grounded",
            Kind::Split => "split",
            Kind::Generic => "generic",
        }
    ));
    let mut curves: Vec<&Polyline> = fam.curves.iter().collect();
    curves.sort_by_key(|c| c.id);
    for c in curves {
        out.push_str(&format!("curve {}", c.id));
        for p in &c.points {
            out.push_str(&format!(" {} {}", rational_str(&p.x), rational_str(&p.y)));
        }
        out.push('\n');
    }
    out
}

pub fn emit_coloring(c: &Coloring) -> String {
    let mut out = String::new();
    out.push_str(&format!("bound {}\n", c.bound));
    for (i, tuple) in c.colors.iter().enumerate() {
        out.push_str(&format!("color {}", VertexId::from_index(i)));
        for comp in tuple {
            out.push_str(&format!(" {}", comp));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::OrderIdx;

    #[test]
    fn minimal_file() {
        let g = parse_ograph("ograph 1\nvertices 1\n").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.num_orders(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn comments_and_defaults() {
        let text = "# a comment\nograph 1\nvertices 3 # three of them\norder o2 3 2 1\nedge 1 2\n";
        let g = parse_ograph(text).unwrap();
        assert_eq!(g.num_orders(), 2);
        let o1 = g.order(OrderIdx::O1).unwrap();
        assert!(o1.precedes(VertexId(1), VertexId(2)));
        let o2 = g.order(OrderIdx::O2).unwrap();
        assert!(o2.precedes(VertexId(3), VertexId(1)));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad_version = parse_ograph("ograph 2\nvertices 1\n").unwrap_err();
        assert!(bad_version.to_string().contains("line 1"));

        let bad_order = parse_ograph("ograph 1\nvertices 3\norder o1 1 1 2\n").unwrap_err();
        assert!(bad_order.to_string().contains("line 3"));

        let bad_vertex = parse_ograph("ograph 1\nvertices 2\nedge 1 5\n").unwrap_err();
        assert!(bad_vertex.to_string().contains("line 3"), "{}", bad_vertex);
    }

    #[test]
    fn canonical_round_trip() {
        let text = "ograph 1\nvertices 4\nedge 3 1\nedge 1 2\norder o1 4 3 2 1\n";
        let g = parse_ograph(text).unwrap();
        let emitted = emit_ograph(&g);
        assert_eq!(
            emitted,
            "ograph 1\nvertices 4\norder o1 4 3 2 1\nedge 1 2\nedge 1 3\n"
        );
        let g2 = parse_ograph(&emitted).unwrap();
        assert_eq!(g, g2);
        assert_eq!(emit_ograph(&g2), emitted);
    }

    #[test]
    fn rationals_round_trip() {
        let text = "curves 1\nkind generic\ncurve 1 0 1/3 2 -5/7\n";
        let fam = parse_curves(text).unwrap();
        assert_eq!(emit_curves(&fam), text);
    }
}
