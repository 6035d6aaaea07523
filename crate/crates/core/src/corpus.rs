//! Seeded, reproducible corpus generators shared by the test suites and
//! examples: random ordered graphs, magical and double-magical instances,
//! and random polyline families. Identical seed, identical artifact.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::{rat, ratio, CurveFamily, Kind, Point, Polyline, Rational};
use crate::graph::{
    magical_closure, magical_closure_over, OrderIdx, OrderedGraph, TotalOrder, VertexId,
};

/// The crate-wide seedable generator.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The 8-vertex counterexample: a semi-comparability graph under the
/// identity order that admits no second order making it magical.
pub fn counterexample8() -> OrderedGraph {
    let edges: Vec<(VertexId, VertexId)> = [
        (1, 2),
        (1, 5),
        (1, 7),
        (2, 3),
        (2, 4),
        (2, 5),
        (2, 7),
        (2, 8),
        (3, 4),
        (4, 7),
        (4, 8),
        (5, 6),
        (5, 7),
        (6, 7),
        (7, 8),
    ]
    .iter()
    .map(|&(a, b)| (VertexId(a), VertexId(b)))
    .collect();
    OrderedGraph::with_identity_orders(8, 1, &edges).unwrap()
}

pub fn random_order(n: usize, rng: &mut ChaCha8Rng) -> TotalOrder {
    let mut seq: Vec<VertexId> = (0..n).map(VertexId::from_index).collect();
    seq.shuffle(rng);
    TotalOrder::from_sequence(n, &seq).unwrap()
}

/// A random graph with `num_orders` random total orders; each pair is an
/// edge with probability `edge_percent`/100.
pub fn random_ordered_graph(
    n: usize,
    num_orders: usize,
    edge_percent: u32,
    rng: &mut ChaCha8Rng,
) -> OrderedGraph {
    let orders = (0..num_orders).map(|_| random_order(n, rng)).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_range(0..100) < edge_percent {
                edges.push((VertexId::from_index(i), VertexId::from_index(j)));
            }
        }
    }
    OrderedGraph::new(n, orders, &edges).unwrap()
}

/// A random magical graph: the closure of a random double-ordered graph.
pub fn random_magical_graph(n: usize, edge_percent: u32, rng: &mut ChaCha8Rng) -> OrderedGraph {
    let g = random_ordered_graph(n, 2, edge_percent, rng);
    magical_closure(&g).unwrap()
}

/// A random double-magical graph: the intersection of the two closures of
/// a random triple-ordered graph.
pub fn random_double_magical_graph(
    n: usize,
    edge_percent: u32,
    rng: &mut ChaCha8Rng,
) -> OrderedGraph {
    let g = random_ordered_graph(n, 3, edge_percent, rng);
    let c2 = magical_closure_over(&g, OrderIdx::O2).unwrap();
    let c3 = magical_closure_over(&g, OrderIdx::O3).unwrap();
    let mut edges = Vec::new();
    for (u, v) in c2.edges() {
        if c3.has_edge(u, v) {
            edges.push((u, v));
        }
    }
    OrderedGraph::new(n, g.orders().to_vec(), &edges).unwrap()
}

/// A random grounded family: curve i starts at (0, sigma(i)), wanders over
/// a few segments, and ends at a distinct integer abscissa. Left-endpoint
/// y values and right-endpoint x values are distinct by construction.
pub fn random_grounded_family(n: usize, rng: &mut ChaCha8Rng) -> CurveFamily {
    let mut left_y: Vec<i64> = (1..=n as i64).collect();
    left_y.shuffle(rng);
    let mut right_x: Vec<i64> = (1..=n as i64).collect();
    right_x.shuffle(rng);
    let mut curves = Vec::with_capacity(n);
    for i in 0..n {
        let span = right_x[i];
        let segments = rng.gen_range(1i64..=4).min(span.max(1));
        let mut points = vec![Point::new(rat(0), rat(left_y[i]))];
        for s in 1..segments {
            let x = ratio(span * s, segments);
            let y = ratio(rng.gen_range(4..=(8 * n as i64 + 4)), 4);
            points.push(Point::new(x, y));
        }
        points.push(Point::new(
            rat(span),
            ratio(rng.gen_range(4..=(8 * n as i64 + 4)), 4),
        ));
        curves.push(Polyline::new(VertexId::from_index(i), points).unwrap());
    }
    CurveFamily::new(curves, Kind::Grounded).unwrap()
}

/// A random family of x-monotone polylines, not necessarily grounded.
pub fn random_xmono_family(n: usize, rng: &mut ChaCha8Rng) -> CurveFamily {
    let mut curves = Vec::with_capacity(n);
    for i in 0..n {
        let x0 = ratio(rng.gen_range(-40i64..=40), 4);
        let span = ratio(rng.gen_range(4i64..=60), 4);
        let segments = rng.gen_range(1usize..=4);
        let mut points = Vec::with_capacity(segments + 1);
        let y = |rng: &mut ChaCha8Rng| ratio(rng.gen_range(-(8 * n as i64)..=8 * n as i64), 8);
        points.push(Point::new(x0.clone(), y(rng)));
        for s in 1..=segments {
            let x = &x0 + &span * ratio(s as i64, segments as i64);
            points.push(Point::new(x, y(rng)));
        }
        curves.push(Polyline::new(VertexId::from_index(i), points).unwrap());
    }
    CurveFamily::new(curves, Kind::Generic).unwrap()
}

/// Uniform rational in (0, 1) with the given denominator, never 0 or 1.
pub fn unit_fraction(denom: u64, rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(1..denom) as i64;
    ratio(num, denom as i64)
}
