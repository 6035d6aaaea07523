//! Curve realizations: every magical graph is the disjointness graph of a
//! grounded family, and every double-magical graph is the disjointness
//! graph of a family of x-monotone curves crossing the y-axis. Both
//! constructions are exact over the rationals.

use crate::error::{Error, Result};
use crate::geom::{rat, ratio, CurveFamily, Kind, Point, Polyline};
use crate::graph::{
    double_magical_violations, magical_closure_over, magical_violations, OrderIdx, OrderedGraph,
    VertexId,
};

/// Realizes a magical graph as a grounded family: curve v starts at
/// (0, y(v)) with y(v) the o1 rank, spans x in [0, x(v)] with x(v) the o2
/// rank, and is built from unit pieces. The piece over [i-1, i] stays
/// horizontal when v is joined to (or equals) the vertex of o2 rank i, and
/// otherwise dips or rises to a bend vertex that forces an intersection.
pub fn realize_magical(g: &OrderedGraph) -> Result<CurveFamily> {
    realize_magical_over(g, OrderIdx::O2)
}

fn realize_magical_over(g: &OrderedGraph, second: OrderIdx) -> Result<CurveFamily> {
    let viols = magical_violations_over(g, second)?;
    if let Some(t) = viols.first() {
        return Err(Error::Precondition(format!(
            "not magical; violating triple ({}, {}, {})",
            t[0], t[1], t[2]
        )));
    }
    let n = g.n();
    let o1 = g.order(OrderIdx::O1)?;
    let o2 = g.order(second)?;
    let mut at_rank = vec![VertexId(0); n + 1]; // o2 rank -> vertex
    for i in 0..n {
        let v = VertexId::from_index(i);
        at_rank[o2.rank(v) as usize] = v;
    }
    let mut curves = Vec::with_capacity(n);
    for idx in 0..n {
        let v = VertexId::from_index(idx);
        let y_v = o1.rank(v) as i64;
        let x_v = o2.rank(v) as i64;
        let mut points = vec![Point::new(rat(0), rat(y_v))];
        for i in 1..=x_v {
            let u = at_rank[i as usize];
            let y_u = o1.rank(u) as i64;
            if u == v || g.has_edge(u, v) {
                points.push(Point::new(rat(i), rat(y_v)));
            } else if y_u < y_v {
                // dip just below y(u), offset by y(v)/(10n) to keep dips
                // at distinct depths
                let bend_y = rat(y_u) - ratio(1, 10) + ratio(y_v, 10 * n as i64);
                points.push(Point::new(rat(i) - ratio(2, 3), bend_y));
                points.push(Point::new(rat(i), rat(y_v)));
            } else {
                let bend_y = rat(y_u) + ratio(y_v, 10 * n as i64);
                points.push(Point::new(rat(i) - ratio(1, 3), bend_y));
                points.push(Point::new(rat(i), rat(y_v)));
            }
        }
        curves.push(Polyline::new(v, points)?);
    }
    CurveFamily::new(curves, Kind::Grounded)
}

fn magical_violations_over(g: &OrderedGraph, second: OrderIdx) -> Result<Vec<[VertexId; 3]>> {
    if second == OrderIdx::O2 {
        return magical_violations(g);
    }
    // re-seat the requested order as o2 for the check
    let orders = vec![g.order(OrderIdx::O1)?.clone(), g.order(second)?.clone()];
    let h = OrderedGraph::new(g.n(), orders, &g.edges())?;
    magical_violations(&h)
}

/// Realizes a double-magical graph as a split family: the closure over
/// (o1, o2) is realized on the right half-plane, the closure over (o1, o3)
/// is realized and mirrored onto the left half-plane, and the two pieces
/// of each vertex are joined at (0, o1-rank).
pub fn realize_double_magical(g: &OrderedGraph) -> Result<CurveFamily> {
    let missing = double_magical_violations(g)?;
    if let Some(&(u, v)) = missing.first() {
        return Err(Error::Precondition(format!(
            "not double-magical; closure intersection adds edge ({}, {})",
            u, v
        )));
    }
    let right_graph = magical_closure_over(g, OrderIdx::O2)?;
    let left_graph = magical_closure_over(g, OrderIdx::O3)?;
    let right = realize_magical_over(&right_graph, OrderIdx::O2)?;
    let left = realize_magical_over(&left_graph, OrderIdx::O3)?;
    let n = g.n();
    let mut curves = Vec::with_capacity(n);
    for i in 0..n {
        let v = VertexId::from_index(i);
        let right_points = &right.curve(v).points;
        let left_points = &left.curve(v).points;
        let mut points: Vec<Point> = left_points
            .iter()
            .rev()
            .map(|p| Point::new(-p.x.clone(), p.y.clone()))
            .collect();
        debug_assert_eq!(points.last(), right_points.first());
        points.extend(right_points.iter().skip(1).cloned());
        curves.push(Polyline::new(v, points)?);
    }
    CurveFamily::new(curves, Kind::Split)
}
