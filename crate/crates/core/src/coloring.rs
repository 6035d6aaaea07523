//! Constructive colorings with certified palette bounds: one for
//! semi-comparability graphs, one for double-magical graphs, and the
//! two-phase coloring of disjointness graphs of x-monotone curve families.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geom::{curves_intersect, CurveFamily, Rational};
use crate::graph::{
    double_magical_violations, extract_partial_orders, semi_comparability_violations, OrderIdx,
    OrderedGraph, Relation, TotalOrder, VertexId,
};

/// Whether a chain height counts chains ending or starting at the vertex.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Ending,
    Starting,
}

/// Longest-chain heights of an acyclic relation; heights are >= 1 and
/// strictly increase along arcs (Ending) or strictly decrease (Starting).
#[derive(Clone, Debug)]
pub struct ChainHeights {
    pub height: Vec<u32>,
    pub direction: Direction,
}

impl ChainHeights {
    pub fn of(&self, v: VertexId) -> u32 {
        self.height[v.index()]
    }

    pub fn max(&self) -> u32 {
        self.height.iter().copied().max().unwrap_or(0)
    }
}

/// Exact longest-chain dynamic program over an acyclic relation.
pub fn chain_heights(rel: &Relation, direction: Direction) -> Result<ChainHeights> {
    let n = rel.n;
    // orient arcs so that heights propagate forward
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for &(u, v) in &rel.pairs {
        let (from, to) = match direction {
            Direction::Ending => (u.index(), v.index()),
            Direction::Starting => (v.index(), u.index()),
        };
        succ[from].push(to);
        indeg[to] += 1;
    }
    let mut height = vec![1u32; n];
    let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut processed = 0;
    while let Some(u) = queue.pop() {
        processed += 1;
        for &v in &succ[u] {
            height[v] = height[v].max(height[u] + 1);
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push(v);
            }
        }
    }
    if processed != n {
        return Err(Error::Input("relation contains a cycle".into()));
    }
    Ok(ChainHeights { height, direction })
}

/// Exact size of the largest clique whose o1-minimum is v: branch and
/// bound over the o1-later neighbours of v, pruning on candidate count.
pub fn anchored_clique_size(g: &OrderedGraph, v: VertexId) -> u32 {
    let n = g.n();
    let words = g.adj_words();
    let o1 = g.order(OrderIdx::O1).expect("o1 always present");
    let mut cand = vec![0u64; words];
    for j in 0..n {
        let w = VertexId::from_index(j);
        if g.has_edge(v, w) && o1.precedes(v, w) {
            cand[j / 64] |= 1 << (j % 64);
        }
    }
    fn count(mask: &[u64]) -> u32 {
        mask.iter().map(|w| w.count_ones()).sum()
    }
    fn grow(g: &OrderedGraph, words: usize, cand: &mut [u64], size: u32, best: &mut u32) {
        if size > *best {
            *best = size;
        }
        if size + count(cand) <= *best {
            return;
        }
        // take candidates one at a time; later candidates are explored
        // without the earlier ones to avoid duplicate subtrees
        while let Some(j) = cand
            .iter()
            .enumerate()
            .find_map(|(w, &bits)| (bits != 0).then(|| w * 64 + bits.trailing_zeros() as usize))
        {
            cand[j / 64] &= !(1 << (j % 64));
            let mut next: Vec<u64> = (0..words).map(|w| cand[w] & g.adj_row(j)[w]).collect();
            grow(g, words, &mut next, size + 1, best);
            if size + count(cand) <= *best {
                return;
            }
        }
    }
    let mut best = 1;
    grow(g, words, &mut cand, 1, &mut best);
    best
}

/// omega(g), as the maximum anchored clique size over all vertices.
pub fn clique_number_anchored(g: &OrderedGraph) -> u32 {
    (0..g.n())
        .map(|i| anchored_clique_size(g, VertexId::from_index(i)))
        .max()
        .unwrap_or(0)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Algorithm {
    SemiComparability,
    DoubleMagical,
    XMonotone,
}

/// A proper coloring: one small-integer tuple per vertex, together with
/// the algorithm's certified palette bound.
#[derive(Clone, Debug)]
pub struct Coloring {
    pub colors: Vec<Vec<u32>>,
    pub bound: u64,
    pub algorithm: Algorithm,
}

impl Coloring {
    pub fn color(&self, v: VertexId) -> &[u32] {
        &self.colors[v.index()]
    }

    /// Number of distinct tuples actually used.
    pub fn palette_size(&self) -> usize {
        let mut tuples: Vec<&Vec<u32>> = self.colors.iter().collect();
        tuples.sort();
        tuples.dedup();
        tuples.len()
    }

    /// True iff adjacent vertices always carry different tuples.
    pub fn is_proper(&self, g: &OrderedGraph) -> bool {
        g.edges()
            .iter()
            .all(|&(u, v)| self.colors[u.index()] != self.colors[v.index()])
    }
}

/// chi bound for semi-comparability graphs with clique number k.
pub fn semi_palette_bound(k: u32) -> u64 {
    let k = k as u64;
    k * (k + 1) / 2
}

/// chi bound for double-magical graphs with clique number k.
pub fn double_palette_bound(k: u32) -> u64 {
    (1..=k as u64).map(|i| (k as u64 + 1 - i) * i * i).sum()
}

/// chi bound for disjointness graphs of x-monotone curves with clique
/// number k.
pub fn xmono_palette_bound(k: u32) -> u64 {
    let k = k as u64;
    k * k * (k * (k + 1) / 2)
}

/// Colors a semi-comparability graph by (anchored clique size, chain
/// height inside the class). Proper, with palette at most C(k+1, 2) for
/// k the clique number.
pub fn color_semi_comparability(g: &OrderedGraph) -> Result<Coloring> {
    let violations = semi_comparability_violations(g);
    if let Some(q) = violations.first() {
        return Err(Error::Precondition(format!(
            "not a semi-comparability graph; violating quadruple ({}, {}, {}, {})",
            q[0], q[1], q[2], q[3]
        )));
    }
    let n = g.n();
    let o1 = g.order(OrderIdx::O1)?;
    let f: Vec<u32> = (0..n)
        .map(|i| anchored_clique_size(g, VertexId::from_index(i)))
        .collect();
    let k = f.iter().copied().max().unwrap_or(0);
    let mut colors = vec![Vec::new(); n];
    for class in 1..=k {
        let members: Vec<usize> = (0..n).filter(|&i| f[i] == class).collect();
        let mut pairs = Vec::new();
        for &i in &members {
            for &j in &members {
                let (u, v) = (VertexId::from_index(i), VertexId::from_index(j));
                if o1.precedes(u, v) && g.has_edge(u, v) {
                    pairs.push((u, v));
                }
            }
        }
        pairs.sort_unstable();
        let heights = chain_heights(&Relation { n, pairs }, Direction::Ending)?;
        for &i in &members {
            colors[i] = vec![class, heights.height[i]];
        }
    }
    Ok(Coloring {
        colors,
        bound: semi_palette_bound(k),
        algorithm: Algorithm::SemiComparability,
    })
}

fn restrict_relation(rel: &Relation, members: &[bool]) -> Relation {
    Relation {
        n: rel.n,
        pairs: rel
            .pairs
            .iter()
            .filter(|&&(u, v)| members[u.index()] && members[v.index()])
            .copied()
            .collect(),
    }
}

/// Colors a double-magical graph by the tuple (h, m, r, q): the chain
/// height in the first partial order, then the starting-chain heights of
/// the second, third and fourth orders inside the successively refined
/// classes. Proper, with palette at most ((k+1)/2) C(k+2, 3).
pub fn color_double_magical(g: &OrderedGraph) -> Result<Coloring> {
    let missing = double_magical_violations(g)?;
    if let Some(&(u, v)) = missing.first() {
        return Err(Error::Precondition(format!(
            "not double-magical; closure intersection adds edge ({}, {})",
            u, v
        )));
    }
    let n = g.n();
    let po = extract_partial_orders(g)?;
    let h = chain_heights(&po.relations[0], Direction::Ending)?.height;
    let mut colors: Vec<Vec<u32>> = vec![Vec::new(); n];

    let mut h_classes: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        h_classes.entry(h[i]).or_default().push(i);
    }
    for (&hv, class_h) in &h_classes {
        let mut in_h = vec![false; n];
        for &i in class_h {
            in_h[i] = true;
        }
        let m = chain_heights(
            &restrict_relation(&po.relations[1], &in_h),
            Direction::Starting,
        )?
        .height;
        let mut hm_classes: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for &i in class_h {
            hm_classes.entry(m[i]).or_default().push(i);
        }
        for (&mv, class_hm) in &hm_classes {
            let mut in_hm = vec![false; n];
            for &i in class_hm {
                in_hm[i] = true;
            }
            let r = chain_heights(
                &restrict_relation(&po.relations[2], &in_hm),
                Direction::Starting,
            )?
            .height;
            let q = chain_heights(
                &restrict_relation(&po.relations[3], &in_hm),
                Direction::Starting,
            )?
            .height;
            for &i in class_hm {
                colors[i] = vec![hv, mv, r[i], q[i]];
            }
        }
    }
    let k = clique_number_anchored(g);
    Ok(Coloring {
        colors,
        bound: double_palette_bound(k),
        algorithm: Algorithm::DoubleMagical,
    })
}

/// Colors the disjointness graph of a family of x-monotone curves.
///
/// Phase 1 computes the two partial orders on disjoint pairs with
/// comparable x-projections (lower curve first, upper curve first) and
/// classes vertices by their chain heights. Phase 2 picks, per class, the
/// vertical line through the rightmost left endpoint, orders the class by
/// the exact y values there, and colors the class as a semi-comparability
/// graph. The tuple is (h1, h2, f, height).
pub fn color_xmonotone(fam: &CurveFamily) -> Result<Coloring> {
    let n = fam.len();
    let curves: Vec<_> = (0..n).map(|i| fam.curve(VertexId::from_index(i))).collect();
    let mut disjoint = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if !curves_intersect(curves[i], curves[j]) {
                disjoint[i][j] = true;
                disjoint[j][i] = true;
            }
        }
    }
    let xmin = |i: usize| &curves[i].left().x;
    let xmax = |i: usize| &curves[i].right().x;
    // strict x-projection dominance
    let before = |i: usize, j: usize| xmin(i) < xmin(j) && xmax(i) < xmax(j);

    let mut lower_pairs: Vec<(VertexId, VertexId)> = Vec::new(); // i below j
    let mut upper_pairs: Vec<(VertexId, VertexId)> = Vec::new(); // i above j
    for i in 0..n {
        for j in 0..n {
            if i == j || !disjoint[i][j] || !before(i, j) {
                continue;
            }
            let (u, v) = (VertexId::from_index(i), VertexId::from_index(j));
            if xmax(i) < xmin(j) {
                // projections disjoint: below holds vacuously both ways
                lower_pairs.push((u, v));
                upper_pairs.push((u, v));
                continue;
            }
            // evaluate at the midpoint of the common x-range
            let mid = (xmin(j) + xmax(i)) / Rational::from_integer(2.into());
            let yi = curves[i].y_at(&mid).expect("mid lies in both spans");
            let yj = curves[j].y_at(&mid).expect("mid lies in both spans");
            debug_assert!(yi != yj, "disjoint curves cannot tie at a shared abscissa");
            if yi < yj {
                lower_pairs.push((u, v));
            } else {
                upper_pairs.push((u, v));
            }
        }
    }
    lower_pairs.sort_unstable();
    upper_pairs.sort_unstable();
    let h1 = chain_heights(
        &Relation {
            n,
            pairs: lower_pairs,
        },
        Direction::Ending,
    )?
    .height;
    let h2 = chain_heights(
        &Relation {
            n,
            pairs: upper_pairs,
        },
        Direction::Ending,
    )?
    .height;

    let mut classes: BTreeMap<(u32, u32), Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        classes.entry((h1[i], h2[i])).or_default().push(i);
    }
    let mut colors: Vec<Vec<u32>> = vec![Vec::new(); n];
    for ((c1, c2), members) in &classes {
        // common abscissa: every x-projection in the class contains the
        // rightmost left endpoint (the projections pairwise intersect)
        let abscissa = members
            .iter()
            .map(|&i| xmin(i).clone())
            .max()
            .expect("class is nonempty");
        let mut keyed: Vec<(Rational, usize)> = members
            .iter()
            .map(|&i| {
                let y = curves[i]
                    .y_at(&abscissa)
                    .expect("abscissa lies in the span");
                (y, i)
            })
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        let m = members.len();
        let mut local_edges = Vec::new();
        let local_of: BTreeMap<usize, usize> = keyed
            .iter()
            .enumerate()
            .map(|(l, &(_, i))| (i, l))
            .collect();
        for (l, &(_, i)) in keyed.iter().enumerate() {
            for &(_, j) in keyed.iter().skip(l + 1) {
                if disjoint[i][j] {
                    local_edges.push((
                        VertexId::from_index(local_of[&i]),
                        VertexId::from_index(local_of[&j]),
                    ));
                }
            }
        }
        let class_graph = OrderedGraph::new(m, vec![TotalOrder::identity(m)], &local_edges)?;
        let sub = color_semi_comparability(&class_graph)?;
        for &(_, i) in &keyed {
            let c = sub.color(VertexId::from_index(local_of[&i]));
            colors[i] = vec![*c1, *c2, c[0], c[1]];
        }
    }
    // the disjointness graph itself, for the clique certificate
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if disjoint[i][j] {
                edges.push((VertexId::from_index(i), VertexId::from_index(j)));
            }
        }
    }
    let dg = OrderedGraph::new(n, vec![TotalOrder::identity(n)], &edges)?;
    let k = clique_number_anchored(&dg);
    Ok(Coloring {
        colors,
        bound: xmono_palette_bound(k),
        algorithm: Algorithm::XMonotone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{rat, Kind, Point, Polyline};

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn rel(n: usize, pairs: &[(u32, u32)]) -> Relation {
        let mut pairs: Vec<_> = pairs.iter().map(|&(a, b)| (v(a), v(b))).collect();
        pairs.sort_unstable();
        Relation { n, pairs }
    }

    #[test]
    fn empty_relation_heights_are_one() {
        let h = chain_heights(&rel(5, &[]), Direction::Ending).unwrap();
        assert_eq!(h.height, vec![1; 5]);
    }

    #[test]
    fn chain_heights_on_a_chain() {
        let h = chain_heights(&rel(3, &[(1, 2), (2, 3), (1, 3)]), Direction::Ending).unwrap();
        assert_eq!(h.height, vec![1, 2, 3]);
        let s = chain_heights(&rel(3, &[(1, 2), (2, 3), (1, 3)]), Direction::Starting).unwrap();
        assert_eq!(s.height, vec![3, 2, 1]);
    }

    #[test]
    fn diamond_height() {
        let h = chain_heights(
            &rel(4, &[(1, 2), (1, 3), (2, 4), (3, 4)]),
            Direction::Ending,
        )
        .unwrap();
        assert_eq!(h.height[3], 3);
    }

    #[test]
    fn cycle_is_rejected() {
        let r = rel(2, &[(1, 2), (2, 1)]);
        assert!(matches!(
            chain_heights(&r, Direction::Ending),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn anchored_clique_on_k3() {
        let g =
            OrderedGraph::with_identity_orders(3, 1, &[(v(1), v(2)), (v(1), v(3)), (v(2), v(3))])
                .unwrap();
        assert_eq!(anchored_clique_size(&g, v(1)), 3);
        assert_eq!(anchored_clique_size(&g, v(3)), 1);
    }

    #[test]
    fn anchored_clique_on_counterexample_matches_enumeration() {
        let g = crate::corpus::counterexample8();
        // exhaustive: all subsets containing vertex 2 and no vertex before it
        let mut best = 0u32;
        for mask in 0u32..256 {
            if mask & 0b10 == 0 || mask & 0b01 != 0 {
                continue;
            }
            let verts: Vec<usize> = (0..8).filter(|&i| mask >> i & 1 == 1).collect();
            let is_clique = verts.iter().enumerate().all(|(a, &i)| {
                verts[a + 1..]
                    .iter()
                    .all(|&j| g.has_edge(VertexId::from_index(i), VertexId::from_index(j)))
            });
            if is_clique {
                best = best.max(verts.len() as u32);
            }
        }
        assert_eq!(anchored_clique_size(&g, v(2)), best);
    }

    #[test]
    fn semi_coloring_on_k3() {
        let g =
            OrderedGraph::with_identity_orders(3, 1, &[(v(1), v(2)), (v(1), v(3)), (v(2), v(3))])
                .unwrap();
        let c = color_semi_comparability(&g).unwrap();
        assert_eq!(c.color(v(1)), &[3, 1]);
        assert_eq!(c.color(v(2)), &[2, 1]);
        assert_eq!(c.color(v(3)), &[1, 1]);
        assert_eq!(c.bound, 6);
        assert!(c.is_proper(&g));
    }

    #[test]
    fn semi_coloring_on_edgeless() {
        let g = OrderedGraph::with_identity_orders(4, 1, &[]).unwrap();
        let c = color_semi_comparability(&g).unwrap();
        assert_eq!(c.palette_size(), 1);
        assert_eq!(c.bound, 1);
    }

    #[test]
    fn semi_coloring_rejects_p4() {
        let g =
            OrderedGraph::with_identity_orders(4, 1, &[(v(1), v(2)), (v(2), v(3)), (v(3), v(4))])
                .unwrap();
        assert!(matches!(
            color_semi_comparability(&g),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn double_magical_coloring_on_k3() {
        let g =
            OrderedGraph::with_identity_orders(3, 3, &[(v(1), v(2)), (v(1), v(3)), (v(2), v(3))])
                .unwrap();
        let c = color_double_magical(&g).unwrap();
        assert!(c.is_proper(&g));
        assert_eq!(c.palette_size(), 3);
        assert_eq!(c.bound, double_palette_bound(3));
        assert_eq!(c.bound, 20);
        let hs: Vec<u32> = (1..=3).map(|i| c.color(v(i))[0]).collect();
        assert_eq!(hs, vec![1, 2, 3]);
    }

    #[test]
    fn double_magical_coloring_on_single_vertex() {
        let g = OrderedGraph::with_identity_orders(1, 3, &[]).unwrap();
        let c = color_double_magical(&g).unwrap();
        assert_eq!(c.color(v(1)), &[1, 1, 1, 1]);
    }

    #[test]
    fn palette_bounds_match_closed_forms() {
        assert_eq!(semi_palette_bound(2), 3);
        assert_eq!(double_palette_bound(2), 6);
        assert_eq!(double_palette_bound(3), 20);
        assert_eq!(xmono_palette_bound(2), 12);
    }

    #[test]
    fn stacked_segments_need_k_colors() {
        let k = 5;
        let curves: Vec<Polyline> = (0..k)
            .map(|i| {
                Polyline::new(
                    VertexId::from_index(i),
                    vec![
                        Point::new(rat(0), rat(i as i64)),
                        Point::new(rat(10), rat(i as i64)),
                    ],
                )
                .unwrap()
            })
            .collect();
        let fam = CurveFamily::new(curves, Kind::Generic).unwrap();
        let c = color_xmonotone(&fam).unwrap();
        assert_eq!(c.palette_size(), k);
    }

    #[test]
    fn crossing_segments_need_one_color() {
        let curves = vec![
            Polyline::new(
                v(1),
                vec![Point::new(rat(0), rat(0)), Point::new(rat(2), rat(2))],
            )
            .unwrap(),
            Polyline::new(
                v(2),
                vec![Point::new(rat(0), rat(2)), Point::new(rat(2), rat(0))],
            )
            .unwrap(),
            Polyline::new(
                v(3),
                vec![Point::new(rat(0), rat(1)), Point::new(rat(2), rat(1))],
            )
            .unwrap(),
        ];
        let fam = CurveFamily::new(curves, Kind::Generic).unwrap();
        let c = color_xmonotone(&fam).unwrap();
        assert_eq!(c.palette_size(), 1);
        assert_eq!(c.bound, 1);
    }
}
