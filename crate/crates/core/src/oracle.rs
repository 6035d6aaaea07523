//! Exact brute-force ground truth: clique number, chromatic number,
//! independence number, exhaustive second-order witness search, and the
//! definitional mountain-path closure. Every routine here either answers
//! exactly or refuses; nothing approximates.

use crate::error::{Error, Result};
use crate::graph::{OrderIdx, OrderedGraph, TotalOrder, VertexId};

/// Node budget for the exact chromatic-number search.
const CHROMATIC_NODE_CAP: u64 = 200_000_000;

/// Bundle of the brute-force statistics; fields are None where the
/// corresponding search refused.
#[derive(Clone, Debug, Default)]
pub struct OracleStats {
    pub omega: Option<u32>,
    pub chi: Option<u32>,
    pub alpha: Option<u32>,
    pub witness: Option<TotalOrder>,
}

impl OracleStats {
    /// Computes whatever fits the size caps and cross-checks the results:
    /// omega <= chi, and alpha * chi covers all vertices.
    pub fn gather(g: &OrderedGraph) -> Result<OracleStats> {
        let omega = Some(clique_number(g));
        let alpha = Some(independence_number(g));
        let chi = match chromatic_number(g) {
            Ok(c) => Some(c),
            Err(Error::Refused(_)) => None,
            Err(e) => return Err(e),
        };
        let witness = match witness_search(g) {
            Ok(w) => w,
            Err(Error::Refused(_)) => None,
            Err(e) => return Err(e),
        };
        if let (Some(w), Some(c)) = (omega, chi) {
            assert!(w <= c, "omega exceeds chi");
        }
        if let (Some(a), Some(c)) = (alpha, chi) {
            assert!(a as usize * c as usize >= g.n(), "alpha * chi below n");
        }
        Ok(OracleStats {
            omega,
            chi,
            alpha,
            witness,
        })
    }
}

/// Largest n for which the witness search will enumerate permutations.
pub const WITNESS_MAX_N: usize = 9;

/// Largest n for which the mountain-path closure oracle will enumerate paths.
pub const CLOSURE_ORACLE_MAX_N: usize = 7;

fn neighbours_mask(g: &OrderedGraph, i: usize) -> u128 {
    let mut m = 0u128;
    for j in 0..g.n() {
        if j != i && g.has_edge(VertexId::from_index(i), VertexId::from_index(j)) {
            m |= 1 << j;
        }
    }
    m
}

struct CliqueSearch {
    adj: Vec<u128>,
    best: u32,
}

impl CliqueSearch {
    /// Greedy colouring of the candidate set; returns per-vertex colour
    /// counts used as the branch-and-bound pruning bound.
    fn expand(&mut self, cand: u128, size: u32) {
        if cand == 0 {
            if size > self.best {
                self.best = size;
            }
            return;
        }
        // greedy colour classes over the candidates, processed in reverse
        // colour order: size + colour(v) bounds any clique through v
        let mut order: Vec<(usize, u32)> = Vec::new();
        let mut uncoloured = cand;
        let mut colour = 0u32;
        while uncoloured != 0 {
            colour += 1;
            let mut avail = uncoloured;
            while avail != 0 {
                let v = avail.trailing_zeros() as usize;
                avail &= !(1 << v);
                avail &= !self.adj[v];
                uncoloured &= !(1 << v);
                order.push((v, colour));
            }
        }
        let mut cand = cand;
        for &(v, colour) in order.iter().rev() {
            if size + colour <= self.best {
                return;
            }
            cand &= !(1u128 << v);
            self.expand(cand & self.adj[v], size + 1);
        }
    }
}

/// Exact maximum clique size, branch-and-bound with a greedy colouring bound.
pub fn clique_number(g: &OrderedGraph) -> u32 {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    if n <= 127 {
        let adj: Vec<u128> = (0..n).map(|i| neighbours_mask(g, i)).collect();
        let mut s = CliqueSearch { adj, best: 0 };
        s.expand((1u128 << n) - 1, 0);
        return s.best;
    }
    clique_number_wide(g)
}

/// Fallback for wide graphs: bitset rows of arbitrary width.
pub(crate) fn clique_number_wide(g: &OrderedGraph) -> u32 {
    let n = g.n();
    let words = n.div_ceil(64);
    let mut adj = vec![0u64; n * words];
    for i in 0..n {
        adj[i * words..(i + 1) * words].copy_from_slice(g.adj_row(i));
    }
    struct Wide<'a> {
        adj: &'a [u64],
        words: usize,
        best: u32,
    }
    impl Wide<'_> {
        fn expand(&mut self, cand: &[u64], size: u32) {
            let mut order: Vec<(usize, u32)> = Vec::new();
            let mut uncoloured = cand.to_vec();
            let mut colour = 0u32;
            while uncoloured.iter().any(|&w| w != 0) {
                colour += 1;
                let mut avail = uncoloured.clone();
                while let Some(v) = first_bit(&avail) {
                    clear_bit(&mut avail, v);
                    for w in 0..self.words {
                        avail[w] &= !self.adj[v * self.words + w];
                    }
                    clear_bit(&mut uncoloured, v);
                    order.push((v, colour));
                }
            }
            if order.is_empty() {
                if size > self.best {
                    self.best = size;
                }
                return;
            }
            let mut cand = cand.to_vec();
            for &(v, colour) in order.iter().rev() {
                if size + colour <= self.best {
                    return;
                }
                clear_bit(&mut cand, v);
                let mut next = vec![0u64; self.words];
                for w in 0..self.words {
                    next[w] = cand[w] & self.adj[v * self.words + w];
                }
                self.expand(&next, size + 1);
            }
        }
    }
    fn first_bit(m: &[u64]) -> Option<usize> {
        for (w, &bits) in m.iter().enumerate() {
            if bits != 0 {
                return Some(w * 64 + bits.trailing_zeros() as usize);
            }
        }
        None
    }
    fn clear_bit(m: &mut [u64], v: usize) {
        m[v / 64] &= !(1 << (v % 64));
    }
    let mut all = vec![u64::MAX; words];
    if !n.is_multiple_of(64) {
        all[words - 1] = (1u64 << (n % 64)) - 1;
    }
    let mut s = Wide {
        adj: &adj,
        words,
        best: 0,
    };
    s.expand(&all, 0);
    s.best
}

/// Exact independence number, as the clique number of the complement.
pub fn independence_number(g: &OrderedGraph) -> u32 {
    clique_number(&g.complement())
}

/// Greedy colouring in descending-degree order; an upper bound on chi.
pub fn greedy_coloring_bound(g: &OrderedGraph) -> u32 {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(g.degree(VertexId::from_index(i))));
    let mut colour = vec![0u32; n];
    let mut max = 0u32;
    for &i in &order {
        let mut used = vec![false; n + 1];
        for j in 0..n {
            if colour[j] != 0 && g.has_edge(VertexId::from_index(i), VertexId::from_index(j)) {
                used[colour[j] as usize] = true;
            }
        }
        let c = (1..=n as u32).find(|&c| !used[c as usize]).unwrap();
        colour[i] = c;
        max = max.max(c);
    }
    max
}

struct ColorSearch<'a> {
    g: &'a OrderedGraph,
    n: usize,
    colour: Vec<u32>,
    nodes: u64,
}

impl ColorSearch<'_> {
    fn colourable(&mut self, limit: u32) -> Result<bool> {
        self.colour.iter_mut().for_each(|c| *c = 0);
        self.descend(limit, 0)
    }

    fn descend(&mut self, limit: u32, coloured: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > CHROMATIC_NODE_CAP {
            return Err(Error::Refused(format!(
                "chromatic search exceeded {} nodes",
                CHROMATIC_NODE_CAP
            )));
        }
        if coloured == self.n {
            return Ok(true);
        }
        // DSATUR: branch on the uncoloured vertex with the most distinctly
        // coloured neighbours, ties by degree
        let mut pick = usize::MAX;
        let mut pick_key = (0usize, 0usize);
        let mut pick_used: u64 = 0;
        for i in 0..self.n {
            if self.colour[i] != 0 {
                continue;
            }
            let mut used: u64 = 0;
            let mut deg = 0;
            for j in 0..self.n {
                if j != i
                    && self
                        .g
                        .has_edge(VertexId::from_index(i), VertexId::from_index(j))
                {
                    deg += 1;
                    if self.colour[j] != 0 {
                        used |= 1 << (self.colour[j] - 1);
                    }
                }
            }
            let key = (used.count_ones() as usize, deg);
            if pick == usize::MAX || key > pick_key {
                pick = i;
                pick_key = key;
                pick_used = used;
            }
        }
        let max_used = self.colour.iter().copied().max().unwrap_or(0);
        // first untouched colour is interchangeable with any later one
        let tryable = limit.min(max_used + 1);
        for c in 1..=tryable {
            if pick_used >> (c - 1) & 1 == 1 {
                continue;
            }
            self.colour[pick] = c;
            if self.descend(limit, coloured + 1)? {
                return Ok(true);
            }
            self.colour[pick] = 0;
        }
        Ok(false)
    }
}

/// Exact chromatic number by iterative deepening between the clique lower
/// bound and the greedy upper bound. Refuses (never guesses) past the node
/// budget.
pub fn chromatic_number(g: &OrderedGraph) -> Result<u32> {
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    let lower = clique_number(g);
    let upper = greedy_coloring_bound(g);
    let mut search = ColorSearch {
        g,
        n,
        colour: vec![0; n],
        nodes: 0,
    };
    for limit in lower..upper {
        if search.colourable(limit)? {
            return Ok(limit);
        }
    }
    Ok(upper)
}

/// Searches for a second order making (o1, o2) magical, by exhausting the
/// permutation space in lexicographic rank order. Prefix pruning only cuts
/// branches every completion of which is already invalid, so a `None`
/// certifies that none of the n! orders works.
pub fn witness_search(g: &OrderedGraph) -> Result<Option<TotalOrder>> {
    let n = g.n();
    if n > WITNESS_MAX_N {
        return Err(Error::Refused(format!(
            "witness search enumerates n! orders; n = {} exceeds the cap of {}",
            n, WITNESS_MAX_N
        )));
    }
    let o1 = g.order(OrderIdx::O1)?;
    // Every triple a <1 b <1 c with ab, bc edges and ac a non-edge forces
    // b before a and b before c in any witness order.
    let mut must_precede: Vec<Vec<usize>> = vec![Vec::new(); n]; // by later vertex
    let mut by_rank: Vec<usize> = (0..n).collect();
    by_rank.sort_unstable_by_key(|&i| o1.rank_of_index(i));
    for bi in 0..n {
        let b = by_rank[bi];
        for ai in 0..bi {
            let a = by_rank[ai];
            if !g.has_edge(VertexId::from_index(a), VertexId::from_index(b)) {
                continue;
            }
            for ci in bi + 1..n {
                let c = by_rank[ci];
                if g.has_edge(VertexId::from_index(b), VertexId::from_index(c))
                    && !g.has_edge(VertexId::from_index(a), VertexId::from_index(c))
                {
                    must_precede[a].push(b);
                    must_precede[c].push(b);
                }
            }
        }
    }
    for l in &mut must_precede {
        l.sort_unstable();
        l.dedup();
    }

    fn extend(
        n: usize,
        must_precede: &[Vec<usize>],
        placed: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        if placed.len() == n {
            return true;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            if !must_precede[v].iter().all(|&p| used[p]) {
                continue;
            }
            used[v] = true;
            placed.push(v);
            if extend(n, must_precede, placed, used) {
                return true;
            }
            placed.pop();
            used[v] = false;
        }
        false
    }

    let mut placed = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if extend(n, &must_precede, &mut placed, &mut used) {
        let seq: Vec<VertexId> = placed.into_iter().map(VertexId::from_index).collect();
        let o2 = TotalOrder::from_sequence(n, &seq)?;
        // re-check the witness against the definition before returning it
        let gw = OrderedGraph::new(n, vec![o1.clone(), o2.clone()], &g.edges())?;
        assert!(crate::graph::is_magical(&gw)?, "witness failed re-check");
        Ok(Some(o2))
    } else {
        Ok(None)
    }
}

/// Definitional closure: u and v are joined iff some mountain path of g
/// connects them. Exponential path enumeration; only used to validate the
/// fixed-point closure.
pub fn closure_oracle(g: &OrderedGraph) -> Result<OrderedGraph> {
    let n = g.n();
    if n > CLOSURE_ORACLE_MAX_N {
        return Err(Error::Refused(format!(
            "mountain-path enumeration capped at n = {}, got {}",
            CLOSURE_ORACLE_MAX_N, n
        )));
    }
    let o1 = g.order(OrderIdx::O1)?.clone();
    let o2 = g.order(OrderIdx::O2)?.clone();
    let mut out = g.clone();
    for i in 0..n {
        for j in 0..n {
            let (u, v) = (VertexId::from_index(i), VertexId::from_index(j));
            if i == j || !o1.precedes(u, v) || out.has_edge(u, v) {
                continue;
            }
            if mountain_path_exists(g, &o1, &o2, u, v) {
                out.add_edge(u, v);
            }
        }
    }
    Ok(out)
}

/// DFS over strictly o1-increasing edge paths from u to v, tracking whether
/// the interior so far stays o2-above u (f1) or o2-above v (f2).
fn mountain_path_exists(
    g: &OrderedGraph,
    o1: &TotalOrder,
    o2: &TotalOrder,
    u: VertexId,
    v: VertexId,
) -> bool {
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        g: &OrderedGraph,
        o1: &TotalOrder,
        o2: &TotalOrder,
        cur: VertexId,
        target: VertexId,
        f1: bool,
        f2: bool,
        start: VertexId,
    ) -> bool {
        if cur == target {
            return true;
        }
        for j in 0..g.n() {
            let w = VertexId::from_index(j);
            if !g.has_edge(cur, w) || !o1.precedes(cur, w) {
                continue;
            }
            if w == target {
                return true;
            }
            if !o1.precedes(w, target) {
                continue;
            }
            // w becomes an interior vertex
            let nf1 = f1 && o2.precedes(start, w);
            let nf2 = f2 && o2.precedes(target, w);
            if !nf1 && !nf2 {
                continue;
            }
            if dfs(g, o1, o2, w, target, nf1, nf2, start) {
                return true;
            }
        }
        false
    }
    dfs(g, o1, o2, u, v, true, true, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_magical, magical_closure};

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn path_edges(n: u32) -> Vec<(VertexId, VertexId)> {
        (1..n).map(|i| (v(i), v(i + 1))).collect()
    }

    fn cycle5() -> OrderedGraph {
        let mut e = path_edges(5);
        e.push((v(5), v(1)));
        OrderedGraph::with_identity_orders(5, 1, &e).unwrap()
    }

    fn complete(n: u32) -> OrderedGraph {
        let mut e = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                e.push((v(i), v(j)));
            }
        }
        OrderedGraph::with_identity_orders(n as usize, 1, &e).unwrap()
    }

    #[test]
    fn clique_numbers() {
        assert_eq!(clique_number(&complete(4)), 4);
        assert_eq!(clique_number(&cycle5()), 2);
        let edgeless = OrderedGraph::with_identity_orders(7, 1, &[]).unwrap();
        assert_eq!(clique_number(&edgeless), 1);
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&cycle5()).unwrap(), 3);
        assert_eq!(chromatic_number(&complete(4)).unwrap(), 4);
        // K_{3,3}
        let mut e = Vec::new();
        for i in 1..=3u32 {
            for j in 4..=6u32 {
                e.push((v(i), v(j)));
            }
        }
        let k33 = OrderedGraph::with_identity_orders(6, 1, &e).unwrap();
        assert_eq!(chromatic_number(&k33).unwrap(), 2);
    }

    #[test]
    fn independence_numbers() {
        assert_eq!(independence_number(&complete(4)), 1);
        assert_eq!(independence_number(&cycle5()), 2);
        let edgeless = OrderedGraph::with_identity_orders(7, 1, &[]).unwrap();
        assert_eq!(independence_number(&edgeless), 7);
    }

    #[test]
    fn stats_gather_on_small_graphs() {
        // C5 under the identity order: not even semi-comparability, so no
        // witness can exist
        let s = OracleStats::gather(&cycle5()).unwrap();
        assert_eq!(s.omega, Some(2));
        assert_eq!(s.chi, Some(3));
        assert_eq!(s.alpha, Some(2));
        assert!(s.witness.is_none());

        let path3 = OrderedGraph::with_identity_orders(3, 1, &path_edges(3)).unwrap();
        let s = OracleStats::gather(&path3).unwrap();
        assert_eq!(s.omega, Some(2));
        assert!(s.witness.is_some());

        let big = OrderedGraph::with_identity_orders(12, 1, &[]).unwrap();
        let s = OracleStats::gather(&big).unwrap();
        assert_eq!(s.omega, Some(1));
        assert!(s.witness.is_none()); // refused, n > 9
    }

    #[test]
    fn sanity_inequalities_on_counterexample() {
        let g = crate::corpus::counterexample8();
        let omega = clique_number(&g);
        let chi = chromatic_number(&g).unwrap();
        let alpha = independence_number(&g);
        assert!(omega <= chi);
        assert!(alpha * chi >= g.n() as u32);
        // cross-check omega by full subset enumeration over 2^8
        let mut best = 0;
        for mask in 0u32..256 {
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
        assert_eq!(omega, best);
    }

    /// Plain recursion with no bound, as an independent route.
    fn max_clique_naive(g: &OrderedGraph) -> u32 {
        fn grow(g: &OrderedGraph, cand: Vec<usize>, size: u32, best: &mut u32) {
            *best = (*best).max(size);
            for (pos, &v) in cand.iter().enumerate() {
                let next: Vec<usize> = cand[pos + 1..]
                    .iter()
                    .copied()
                    .filter(|&w| g.has_edge(VertexId::from_index(v), VertexId::from_index(w)))
                    .collect();
                grow(g, next, size + 1, best);
            }
        }
        let mut best = 0;
        grow(g, (0..g.n()).collect(), 0, &mut best);
        best
    }

    #[test]
    fn clique_routes_agree_on_random_graphs() {
        for seed in 0..30 {
            let mut r = crate::corpus::rng(seed);
            let n = 4 + (seed as usize % 11);
            let g = crate::corpus::random_ordered_graph(n, 1, 20 + (seed as u32 * 9) % 70, &mut r);
            let naive = max_clique_naive(&g);
            assert_eq!(clique_number(&g), naive, "seed {}", seed);
            assert_eq!(clique_number_wide(&g), naive, "seed {} (wide)", seed);
        }
    }

    #[test]
    fn wide_clique_search_on_a_wide_graph() {
        // 140 vertices: a planted K6 inside sparse noise, through the
        // arbitrary-width code path
        let mut r = crate::corpus::rng(3);
        let mut g = crate::corpus::random_ordered_graph(140, 1, 4, &mut r);
        for i in 40..46 {
            for j in i + 1..46 {
                g.add_edge(VertexId::from_index(i), VertexId::from_index(j));
            }
        }
        assert!(g.n() > 128);
        assert_eq!(clique_number(&g), 6);
    }

    #[test]
    fn witness_on_path3_ranks_middle_first() {
        let g = OrderedGraph::with_identity_orders(3, 1, &path_edges(3)).unwrap();
        let o2 = witness_search(&g).unwrap().expect("path has a witness");
        assert!(o2.precedes(v(2), v(1)));
        assert!(o2.precedes(v(2), v(3)));
    }

    #[test]
    fn witness_vacuous_when_transitively_closed() {
        // no induced a<b<c with ac missing: any order works
        let g = complete(4);
        assert!(witness_search(&g).unwrap().is_some());
    }

    #[test]
    fn witness_refuses_large_input() {
        let g = OrderedGraph::with_identity_orders(10, 1, &[]).unwrap();
        assert!(matches!(witness_search(&g), Err(Error::Refused(_))));
    }

    #[test]
    fn counterexample_has_no_witness() {
        let g = crate::corpus::counterexample8();
        assert!(crate::graph::is_semi_comparability(&g));
        assert_eq!(witness_search(&g).unwrap(), None);
    }

    #[test]
    fn closure_oracle_matches_fixed_point_on_path() {
        let g = OrderedGraph::with_identity_orders(3, 2, &path_edges(3)).unwrap();
        let oracle = closure_oracle(&g).unwrap();
        assert!(oracle.has_edge(v(1), v(3)));
        assert_eq!(oracle.edges(), magical_closure(&g).unwrap().edges());
    }

    #[test]
    fn closure_oracle_refuses_large_input() {
        let g = OrderedGraph::with_identity_orders(8, 2, &[]).unwrap();
        assert!(matches!(closure_oracle(&g), Err(Error::Refused(_))));
    }

    #[test]
    fn witness_result_is_rechecked() {
        // a graph where some orders fail: path of length 4
        let g = OrderedGraph::with_identity_orders(4, 1, &path_edges(4)).unwrap();
        if let Some(o2) = witness_search(&g).unwrap() {
            let gw = OrderedGraph::new(4, vec![TotalOrder::identity(4), o2], &g.edges()).unwrap();
            assert!(is_magical(&gw).unwrap());
        }
    }
}
