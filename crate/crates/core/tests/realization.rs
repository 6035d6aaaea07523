//! Round trips between graphs and curve families, and the structural
//! properties of realized grounded families.

use xcurve_core::corpus::{self, rng};
use xcurve_core::geom::{curves_intersect, disjointness_graph, Point, Polyline, Rational};
use xcurve_core::graph::{is_magical, is_semi_comparability, OrderIdx, VertexId};
use xcurve_core::realize::{realize_double_magical, realize_magical};

#[test]
fn magical_round_trip_small_corpus() {
    for seed in 0..50 {
        let mut r = rng(seed);
        let n = 2 + (seed as usize % 7);
        let g = corpus::random_magical_graph(n, 20 + (seed as u32 * 13) % 70, &mut r);
        let fam = realize_magical(&g).unwrap();
        let dg = disjointness_graph(&fam).unwrap();
        assert_eq!(dg.edges(), g.edges(), "seed {}", seed);
        assert_eq!(
            dg.order(OrderIdx::O1).unwrap(),
            g.order(OrderIdx::O1).unwrap(),
            "seed {}",
            seed
        );
    }
}

#[test]
fn double_magical_round_trip_small_corpus() {
    for seed in 0..30 {
        let mut r = rng(seed);
        let n = 2 + (seed as usize % 6);
        let g = corpus::random_double_magical_graph(n, 25 + (seed as u32 * 17) % 60, &mut r);
        let fam = realize_double_magical(&g).unwrap();
        let dg = disjointness_graph(&fam).unwrap();
        assert_eq!(dg.edges(), g.edges(), "seed {}", seed);
        assert_eq!(
            dg.order(OrderIdx::O1).unwrap(),
            g.order(OrderIdx::O1).unwrap(),
            "seed {}",
            seed
        );
    }
}

#[test]
fn random_grounded_families_are_magical_and_semi() {
    for seed in 0..50 {
        let mut r = rng(seed);
        let n = 2 + (seed as usize % 9);
        let fam = corpus::random_grounded_family(n, &mut r);
        let dg = disjointness_graph(&fam).unwrap();
        assert!(is_magical(&dg).unwrap(), "seed {}", seed);
        assert!(is_semi_comparability(&dg), "seed {}", seed);
    }
}

/// Splits a realized grounded curve back into its unit pieces; every piece
/// boundary sits at an integer abscissa by construction.
fn pieces(c: &Polyline) -> Vec<Vec<Point>> {
    let mut out = Vec::new();
    let mut current = vec![c.points[0].clone()];
    for p in &c.points[1..] {
        current.push(p.clone());
        if p.x.is_integer() {
            out.push(std::mem::take(&mut current));
            current.push(p.clone());
        }
    }
    out
}

#[test]
fn piece_level_intersections_respect_rank_bound() {
    for seed in 0..20 {
        let mut r = rng(seed);
        let g = corpus::random_magical_graph(6, 40, &mut r);
        let o2 = g.order(OrderIdx::O2).unwrap();
        let fam = realize_magical(&g).unwrap();
        for a in 0..g.n() {
            for b in a + 1..g.n() {
                let (va, vb) = (VertexId::from_index(a), VertexId::from_index(b));
                let pa = pieces(fam.curve(va));
                let pb = pieces(fam.curve(vb));
                for i in 0..pa.len().min(pb.len()) {
                    let ca = Polyline::new(va, pa[i].clone()).unwrap();
                    let cb = Polyline::new(vb, pb[i].clone()).unwrap();
                    if curves_intersect(&ca, &cb) {
                        let rank = (i + 1) as u32;
                        assert!(o2.rank(va) >= rank && o2.rank(vb) >= rank);
                    }
                }
            }
        }
    }
}

#[test]
fn realized_coordinates_are_exact_rationals() {
    let mut r = rng(5);
    let g = corpus::random_magical_graph(5, 50, &mut r);
    let fam = realize_magical(&g).unwrap();
    let three = Rational::new(3.into(), 1.into());
    let ten_n = Rational::new((10 * g.n() as i64).into(), 1.into());
    for c in &fam.curves {
        for p in &c.points {
            // x lands on thirds, y on multiples of 1/(10n)
            assert!((&p.x * &three).is_integer());
            assert!((&p.y * &ten_n).is_integer());
        }
    }
}
