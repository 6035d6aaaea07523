//! Exact rational geometry for strictly x-monotone polylines: intersection
//! predicates, y-evaluation, and disjointness graphs. No floating point
//! anywhere; every comparison is a rational sign test.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{OrderedGraph, TotalOrder, VertexId};

pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Rational n/d.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }
}

/// A strictly x-monotone polyline with at least one point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polyline {
    pub id: VertexId,
    pub points: Vec<Point>,
}

impl Polyline {
    pub fn new(id: VertexId, points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Input(format!("curve {} has no points", id.0)));
        }
        for w in points.windows(2) {
            if w[0].x >= w[1].x {
                return Err(Error::Input(format!(
                    "curve {} is not strictly x-monotone at x = {}",
                    id.0, w[1].x
                )));
            }
        }
        Ok(Polyline { id, points })
    }

    pub fn left(&self) -> &Point {
        &self.points[0]
    }

    pub fn right(&self) -> &Point {
        self.points.last().unwrap()
    }

    /// The y value at abscissa x, or None if x lies outside the span.
    pub fn y_at(&self, x: &Rational) -> Option<Rational> {
        if *x < self.left().x || *x > self.right().x {
            return None;
        }
        // find the segment containing x; strict monotonicity makes it unique
        for w in self.points.windows(2) {
            if *x >= w[0].x && *x <= w[1].x {
                let t = (x - &w[0].x) / (&w[1].x - &w[0].x);
                return Some(&w[0].y + &t * (&w[1].y - &w[0].y));
            }
        }
        Some(self.points[0].y.clone()) // single-point curve, x == the point
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    Grounded,
    Split,
    Generic,
}

/// A family of strictly x-monotone polylines whose ids form [1, n].
#[derive(Clone, Debug)]
pub struct CurveFamily {
    pub curves: Vec<Polyline>,
    pub kind: Kind,
}

impl CurveFamily {
    pub fn new(curves: Vec<Polyline>, kind: Kind) -> Result<Self> {
        let n = curves.len();
        let mut seen = vec![false; n];
        for c in &curves {
            let id = c.id.0 as usize;
            if id == 0 || id > n {
                return Err(Error::Input(format!(
                    "curve id {} out of range [1, {}]",
                    c.id.0, n
                )));
            }
            if seen[id - 1] {
                return Err(Error::Input(format!("duplicate curve id {}", c.id.0)));
            }
            seen[id - 1] = true;
        }
        match kind {
            Kind::Grounded => {
                for c in &curves {
                    if !c.left().x.is_zero() {
                        return Err(Error::Input(format!(
                            "grounded family: curve {} does not start on x = 0",
                            c.id.0
                        )));
                    }
                }
                let mut ys: Vec<(&Rational, VertexId)> =
                    curves.iter().map(|c| (&c.left().y, c.id)).collect();
                ys.sort();
                for w in ys.windows(2) {
                    if w[0].0 == w[1].0 {
                        return Err(Error::Input(format!(
                            "grounded family: curves {} and {} share the left-endpoint y {}",
                            w[0].1 .0, w[1].1 .0, w[0].0
                        )));
                    }
                }
            }
            Kind::Split => {
                for c in &curves {
                    if c.left().x > Rational::zero() || c.right().x < Rational::zero() {
                        return Err(Error::Input(format!(
                            "split family: curve {} does not reach x = 0",
                            c.id.0
                        )));
                    }
                }
            }
            Kind::Generic => {}
        }
        Ok(CurveFamily { curves, kind })
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    /// Curve with the given id.
    pub fn curve(&self, id: VertexId) -> &Polyline {
        self.curves.iter().find(|c| c.id == id).unwrap()
    }
}

fn sign(r: &Rational) -> i8 {
    match r.cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Orientation of c relative to the directed line a -> b: 1 left, -1 right,
/// 0 collinear.
fn orient(a: &Point, b: &Point, c: &Point) -> i8 {
    let det = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    sign(&det)
}

fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    orient(a, b, p) == 0
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// Closed-segment intersection test; touching and collinear overlap count.
pub fn segments_intersect(a1: &Point, a2: &Point, b1: &Point, b2: &Point) -> bool {
    let d1 = orient(b1, b2, a1);
    let d2 = orient(b1, b2, a2);
    let d3 = orient(a1, a2, b1);
    let d4 = orient(a1, a2, b2);
    if d1 != d2 && d3 != d4 && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0 {
        return true;
    }
    if d1 == 0 && on_segment(b1, b2, a1) {
        return true;
    }
    if d2 == 0 && on_segment(b1, b2, a2) {
        return true;
    }
    if d3 == 0 && on_segment(a1, a2, b1) {
        return true;
    }
    if d4 == 0 && on_segment(a1, a2, b2) {
        return true;
    }
    false
}

/// True iff the two polylines share at least one point.
pub fn curves_intersect(a: &Polyline, b: &Polyline) -> bool {
    // x-span prefilter: disjoint spans cannot intersect
    if a.right().x < b.left().x || b.right().x < a.left().x {
        return false;
    }
    let (an, bn) = (a.points.len(), b.points.len());
    if an == 1 && bn == 1 {
        return a.points[0] == b.points[0];
    }
    if an == 1 {
        let p = &a.points[0];
        return b.points.windows(2).any(|w| on_segment(&w[0], &w[1], p));
    }
    if bn == 1 {
        let p = &b.points[0];
        return a.points.windows(2).any(|w| on_segment(&w[0], &w[1], p));
    }
    for s in a.points.windows(2) {
        for t in b.points.windows(2) {
            if s[1].x < t[0].x || t[1].x < s[0].x {
                continue;
            }
            if segments_intersect(&s[0], &s[1], &t[0], &t[1]) {
                return true;
            }
        }
    }
    false
}

fn rank_order(n: usize, mut keyed: Vec<(Rational, usize)>, what: &str) -> Result<TotalOrder> {
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    for w in keyed.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::Input(format!(
                "tie in {} between curves {} and {}; perturb the input",
                what,
                w[0].1 + 1,
                w[1].1 + 1
            )));
        }
    }
    let mut ranks = vec![0u32; n];
    for (pos, (_, idx)) in keyed.into_iter().enumerate() {
        ranks[idx] = pos as u32 + 1;
    }
    TotalOrder::from_ranks(ranks)
}

/// The disjointness graph of a family: vertices are curve ids, edges join
/// pairs of disjoint curves. Grounded families get o1 from left-endpoint y
/// and o2 from right-endpoint x; split families get o1 from y at x = 0,
/// o2 from left-endpoint x magnitude, o3 from right-endpoint x; generic
/// families get the identity o1.
pub fn disjointness_graph(fam: &CurveFamily) -> Result<OrderedGraph> {
    let n = fam.len();
    let mut by_id: Vec<&Polyline> = Vec::with_capacity(n);
    for i in 0..n {
        by_id.push(fam.curve(VertexId::from_index(i)));
    }
    let orders = match fam.kind {
        Kind::Grounded => {
            let left_y = by_id
                .iter()
                .enumerate()
                .map(|(i, c)| (c.left().y.clone(), i))
                .collect();
            let right_x = by_id
                .iter()
                .enumerate()
                .map(|(i, c)| (c.right().x.clone(), i))
                .collect();
            vec![
                rank_order(n, left_y, "left-endpoint y")?,
                rank_order(n, right_x, "right-endpoint x")?,
            ]
        }
        Kind::Split => {
            let at_zero = by_id
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let y = c
                        .y_at(&Rational::zero())
                        .expect("split family curves reach x = 0");
                    (y, i)
                })
                .collect();
            let left_mag = by_id
                .iter()
                .enumerate()
                .map(|(i, c)| (-c.left().x.clone(), i))
                .collect();
            let right_x = by_id
                .iter()
                .enumerate()
                .map(|(i, c)| (c.right().x.clone(), i))
                .collect();
            vec![
                rank_order(n, at_zero, "y at x = 0")?,
                rank_order(n, left_mag, "left-endpoint x magnitude")?,
                rank_order(n, right_x, "right-endpoint x")?,
            ]
        }
        Kind::Generic => vec![TotalOrder::identity(n)],
    };
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !curves_intersect(by_id[i], by_id[j]) {
                edges.push((VertexId::from_index(i), VertexId::from_index(j)));
            }
        }
    }
    OrderedGraph::new(n, orders, &edges)
}
