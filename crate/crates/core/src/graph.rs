//! Ordered graphs: an undirected graph together with one to three total
//! orders on its vertices, plus the recognition predicates and the magical
//! closure that the rest of the crate is built on.

use std::fmt;

use crate::error::{Error, Result};

/// 1-based vertex identifier, stable across all operations except
/// construction-time deletion (which re-reports survivors by original id).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn from_index(i: usize) -> Self {
        VertexId(i as u32 + 1)
    }

    /// 0-based index into internal arrays.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// A total order on the vertices [1, n], stored as a rank permutation.
/// Comparisons are O(1) rank lookups.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TotalOrder {
    /// rank[i] is the 1-based position of vertex index i in the order.
    rank: Vec<u32>,
}

impl TotalOrder {
    pub fn identity(n: usize) -> Self {
        TotalOrder {
            rank: (1..=n as u32).collect(),
        }
    }

    /// Builds the order from the vertex sequence listed smallest first.
    pub fn from_sequence(n: usize, seq: &[VertexId]) -> Result<Self> {
        if seq.len() != n {
            return Err(Error::Input(format!(
                "order lists {} vertices, expected {}",
                seq.len(),
                n
            )));
        }
        let mut rank = vec![0u32; n];
        for (pos, v) in seq.iter().enumerate() {
            let i = v.0 as usize;
            if i == 0 || i > n {
                return Err(Error::Input(format!(
                    "vertex {} out of range [1, {}]",
                    v, n
                )));
            }
            if rank[i - 1] != 0 {
                return Err(Error::Input(format!("vertex {} listed twice in order", v)));
            }
            rank[i - 1] = pos as u32 + 1;
        }
        Ok(TotalOrder { rank })
    }

    /// Builds the order from per-vertex ranks (must form a permutation of [1, n]).
    pub fn from_ranks(ranks: Vec<u32>) -> Result<Self> {
        let n = ranks.len();
        let mut seen = vec![false; n];
        for &r in &ranks {
            if r == 0 || r as usize > n {
                return Err(Error::Input(format!("rank {} out of range [1, {}]", r, n)));
            }
            if seen[r as usize - 1] {
                return Err(Error::Input(format!("rank {} assigned twice", r)));
            }
            seen[r as usize - 1] = true;
        }
        Ok(TotalOrder { rank: ranks })
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, v: VertexId) -> u32 {
        self.rank[v.index()]
    }

    pub fn rank_of_index(&self, i: usize) -> u32 {
        self.rank[i]
    }

    /// True iff u precedes v.
    pub fn precedes(&self, u: VertexId, v: VertexId) -> bool {
        self.rank[u.index()] < self.rank[v.index()]
    }

    /// Vertices listed smallest first.
    pub fn sequence(&self) -> Vec<VertexId> {
        let n = self.rank.len();
        let mut seq = vec![VertexId(0); n];
        for i in 0..n {
            seq[self.rank[i] as usize - 1] = VertexId::from_index(i);
        }
        seq
    }

    /// Restriction to the vertices with `keep[i]`, ranks compacted,
    /// relative order preserved.
    pub fn restrict(&self, keep: &[bool]) -> TotalOrder {
        let mut kept: Vec<(u32, usize)> = self
            .rank
            .iter()
            .enumerate()
            .filter(|&(i, _)| keep[i])
            .map(|(i, &r)| (r, i))
            .collect();
        kept.sort_unstable();
        let mut rank = vec![0u32; kept.len()];
        let mut new_index = vec![usize::MAX; self.rank.len()];
        let mut next = 0usize;
        for (i, k) in keep.iter().enumerate() {
            if *k {
                new_index[i] = next;
                next += 1;
            }
        }
        for (pos, &(_, old)) in kept.iter().enumerate() {
            rank[new_index[old]] = pos as u32 + 1;
        }
        TotalOrder { rank }
    }
}

/// Symmetric irreflexive adjacency stored as bitset rows.
#[derive(Clone, PartialEq, Eq)]
struct AdjMatrix {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl AdjMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        AdjMatrix {
            n,
            words,
            rows: vec![0u64; n * words],
        }
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
        self.rows[j * self.words + i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }
}

/// Which of the up to three total orders to use.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderIdx {
    O1,
    O2,
    O3,
}

impl OrderIdx {
    pub fn as_usize(self) -> usize {
        match self {
            OrderIdx::O1 => 0,
            OrderIdx::O2 => 1,
            OrderIdx::O3 => 2,
        }
    }
}

/// An undirected graph on vertices [1, n] with one to three total orders.
#[derive(Clone, PartialEq, Eq)]
pub struct OrderedGraph {
    n: usize,
    adj: AdjMatrix,
    orders: Vec<TotalOrder>,
}

impl OrderedGraph {
    /// Builds a graph with the given orders (1 to 3 of them) and edges.
    pub fn new(n: usize, orders: Vec<TotalOrder>, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        if orders.is_empty() || orders.len() > 3 {
            return Err(Error::Input(format!(
                "graph must carry 1 to 3 orders, got {}",
                orders.len()
            )));
        }
        for o in &orders {
            if o.len() != n {
                return Err(Error::Input(format!(
                    "order on {} vertices attached to graph with n = {}",
                    o.len(),
                    n
                )));
            }
        }
        let mut g = OrderedGraph {
            n,
            adj: AdjMatrix::new(n),
            orders,
        };
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::Input(format!("self-loop at vertex {}", u)));
            }
            g.adj.set(u.index(), v.index());
        }
        Ok(g)
    }

    /// Identity-ordered graph, mostly for tests and fixtures.
    pub fn with_identity_orders(
        n: usize,
        num_orders: usize,
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self> {
        let orders = (0..num_orders).map(|_| TotalOrder::identity(n)).collect();
        OrderedGraph::new(n, orders, edges)
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.0 == 0 || v.0 as usize > self.n {
            return Err(Error::Input(format!(
                "vertex {} out of range [1, {}]",
                v, self.n
            )));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_orders(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self, which: OrderIdx) -> Result<&TotalOrder> {
        self.orders.get(which.as_usize()).ok_or_else(|| {
            Error::Input(format!(
                "graph has {} order(s), o{} missing",
                self.orders.len(),
                which.as_usize() + 1
            ))
        })
    }

    pub fn orders(&self) -> &[TotalOrder] {
        &self.orders
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u != v && self.adj.get(u.index(), v.index())
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) {
        debug_assert!(u != v);
        self.adj.set(u.index(), v.index());
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Edges as (min, max) pairs, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.adj.get(i, j) {
                    out.push((VertexId::from_index(i), VertexId::from_index(j)));
                }
            }
        }
        out
    }

    pub fn degree(&self, v: VertexId) -> usize {
        let i = v.index();
        (0..self.n)
            .filter(|&j| j != i && self.adj.get(i, j))
            .count()
    }

    /// Neighbour bitset row of vertex index i (words of 64).
    pub(crate) fn adj_row(&self, i: usize) -> &[u64] {
        self.adj.row(i)
    }

    pub(crate) fn adj_words(&self) -> usize {
        self.adj.words
    }

    /// Same vertices and orders, complemented edge set.
    pub fn complement(&self) -> OrderedGraph {
        let mut g = OrderedGraph {
            n: self.n,
            adj: AdjMatrix::new(self.n),
            orders: self.orders.clone(),
        };
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.adj.get(i, j) {
                    g.adj.set(i, j);
                }
            }
        }
        g
    }

    /// Induced subgraph on the vertices with `keep[i]`, orders restricted.
    /// Returns the subgraph and the original ids of the survivors, in the
    /// order they were renumbered.
    pub fn induced(&self, keep: &[bool]) -> (OrderedGraph, Vec<VertexId>) {
        assert_eq!(keep.len(), self.n);
        let survivors: Vec<usize> = (0..self.n).filter(|&i| keep[i]).collect();
        let orders = self.orders.iter().map(|o| o.restrict(keep)).collect();
        let mut g = OrderedGraph {
            n: survivors.len(),
            adj: AdjMatrix::new(survivors.len()),
            orders,
        };
        for (a, &i) in survivors.iter().enumerate() {
            for (b, &j) in survivors.iter().enumerate().skip(a + 1) {
                if self.adj.get(i, j) {
                    g.adj.set(a, b);
                }
            }
        }
        let ids = survivors.into_iter().map(VertexId::from_index).collect();
        (g, ids)
    }

    /// Vertex indices sorted by rank in the given order.
    fn by_rank(&self, which: OrderIdx) -> Result<Vec<usize>> {
        let o = self.order(which)?;
        let mut idx: Vec<usize> = (0..self.n).collect();
        idx.sort_unstable_by_key(|&i| o.rank_of_index(i));
        Ok(idx)
    }
}

impl fmt::Debug for OrderedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrderedGraph")
            .field("n", &self.n)
            .field("orders", &self.orders.len())
            .field("edges", &self.edges())
            .finish()
    }
}

/// All quadruples a <1 b <1 c <1 d with ab, bc, cd edges and ac, bd
/// non-edges, in lexicographic o1-rank order. Empty iff the graph is a
/// semi-comparability graph under o1.
pub fn semi_comparability_violations(g: &OrderedGraph) -> Vec<[VertexId; 4]> {
    let by_rank = g.by_rank(OrderIdx::O1).expect("o1 always present");
    let n = g.n();
    let mut out = Vec::new();
    for ai in 0..n {
        for bi in ai + 1..n {
            let (a, b) = (by_rank[ai], by_rank[bi]);
            if !g.adj.get(a, b) {
                continue;
            }
            for ci in bi + 1..n {
                let c = by_rank[ci];
                if !g.adj.get(b, c) || g.adj.get(a, c) {
                    continue;
                }
                for di in ci + 1..n {
                    let d = by_rank[di];
                    if g.adj.get(c, d) && !g.adj.get(b, d) {
                        out.push([
                            VertexId::from_index(a),
                            VertexId::from_index(b),
                            VertexId::from_index(c),
                            VertexId::from_index(d),
                        ]);
                    }
                }
            }
        }
    }
    out
}

pub fn is_semi_comparability(g: &OrderedGraph) -> bool {
    semi_comparability_violations(g).is_empty()
}

/// All triples a <1 b <1 c with ab, bc edges, ac a non-edge, and b not
/// before both a and c in o2, in lexicographic o1-rank order. Empty iff
/// the graph is magical under (o1, o2).
pub fn magical_violations(g: &OrderedGraph) -> Result<Vec<[VertexId; 3]>> {
    let o2 = g.order(OrderIdx::O2)?.clone();
    let by_rank = g.by_rank(OrderIdx::O1)?;
    let n = g.n();
    let mut out = Vec::new();
    for ai in 0..n {
        for bi in ai + 1..n {
            let (a, b) = (by_rank[ai], by_rank[bi]);
            if !g.adj.get(a, b) {
                continue;
            }
            for ci in bi + 1..n {
                let c = by_rank[ci];
                if !g.adj.get(b, c) || g.adj.get(a, c) {
                    continue;
                }
                let (va, vb, vc) = (
                    VertexId::from_index(a),
                    VertexId::from_index(b),
                    VertexId::from_index(c),
                );
                if !(o2.precedes(vb, va) && o2.precedes(vb, vc)) {
                    out.push([va, vb, vc]);
                }
            }
        }
    }
    Ok(out)
}

pub fn is_magical(g: &OrderedGraph) -> Result<bool> {
    Ok(magical_violations(g)?.is_empty())
}

/// The unique minimal magical supergraph over (o1, o2): fixed point of the
/// rule "a <1 b <1 c, ab and bc edges, a <2 b or c <2 b, add ac". Orders
/// are carried over unchanged.
pub fn magical_closure(g: &OrderedGraph) -> Result<OrderedGraph> {
    magical_closure_over(g, OrderIdx::O2)
}

/// Magical closure over (o1, `second`); `second` is o2 or o3.
pub fn magical_closure_over(g: &OrderedGraph, second: OrderIdx) -> Result<OrderedGraph> {
    let o2 = g.order(second)?.clone();
    let by_rank = g.by_rank(OrderIdx::O1)?;
    let n = g.n();
    let words = g.adj.words;
    let mut out = g.clone();

    // For each middle vertex b, split its neighbourhood into the part
    // before/after b in o1 and below/above b in o2, then OR whole rows.
    // Masks are indexed by vertex, not by rank position.
    let mut changed = true;
    while changed {
        changed = false;
        for bi in 0..n {
            let b = by_rank[bi];
            let vb = VertexId::from_index(b);
            // Candidate a's: neighbours before b in o1. Candidate c's:
            // neighbours after b in o1. Classified by o2 against b.
            let mut before_lo: Vec<usize> = Vec::new(); // a <2 b
            let mut before_hi: Vec<usize> = Vec::new(); // b <2 a
            let mut after_mask = vec![0u64; words];
            let mut after_lo_mask = vec![0u64; words]; // c <2 b
            for (pos, &x) in by_rank.iter().enumerate() {
                if pos == bi || !out.adj.get(b, x) {
                    continue;
                }
                let vx = VertexId::from_index(x);
                if pos < bi {
                    if o2.precedes(vx, vb) {
                        before_lo.push(x);
                    } else {
                        before_hi.push(x);
                    }
                } else {
                    after_mask[x / 64] |= 1 << (x % 64);
                    if o2.precedes(vx, vb) {
                        after_lo_mask[x / 64] |= 1 << (x % 64);
                    }
                }
            }
            // a <2 b: rule fires for every c after b. b <2 a: fires only
            // when c <2 b.
            for &a in &before_lo {
                let row = a * words;
                for w in 0..words {
                    let add = after_mask[w] & !out.adj.rows[row + w];
                    if add != 0 {
                        changed = true;
                        out.adj.rows[row + w] |= add;
                        let mut bits = add;
                        while bits != 0 {
                            let j = w * 64 + bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            out.adj.rows[j * words + a / 64] |= 1 << (a % 64);
                        }
                    }
                }
            }
            for &a in &before_hi {
                let row = a * words;
                for w in 0..words {
                    let add = after_lo_mask[w] & !out.adj.rows[row + w];
                    if add != 0 {
                        changed = true;
                        out.adj.rows[row + w] |= add;
                        let mut bits = add;
                        while bits != 0 {
                            let j = w * 64 + bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            out.adj.rows[j * words + a / 64] |= 1 << (a % 64);
                        }
                    }
                }
            }
        }
    }
    // A vertex is never adjacent to itself: the rule only ever joins a < b < c.
    Ok(out)
}

/// True iff `seq` is a mountain path in g: strictly o1-increasing,
/// consecutive pairs are edges, and one endpoint precedes every interior
/// vertex in o2.
pub fn is_mountain_path(g: &OrderedGraph, seq: &[VertexId]) -> Result<bool> {
    if seq.is_empty() {
        return Err(Error::Input("empty vertex sequence".into()));
    }
    let mut seen = vec![false; g.n()];
    for &v in seq {
        g.check_vertex(v)?;
        if seen[v.index()] {
            return Err(Error::Input(format!("vertex {} repeated in sequence", v)));
        }
        seen[v.index()] = true;
    }
    let o1 = g.order(OrderIdx::O1)?;
    let o2 = g.order(OrderIdx::O2)?;
    for w in seq.windows(2) {
        if !o1.precedes(w[0], w[1]) || !g.has_edge(w[0], w[1]) {
            return Ok(false);
        }
    }
    if seq.len() <= 2 {
        return Ok(true);
    }
    let interior = &seq[1..seq.len() - 1];
    let first = seq[0];
    let last = seq[seq.len() - 1];
    let first_ok = interior.iter().all(|&x| o2.precedes(first, x));
    let last_ok = interior.iter().all(|&x| o2.precedes(last, x));
    Ok(first_ok || last_ok)
}

/// Edges of the closure intersection that are missing from g. Empty iff g
/// is double-magical: its edge set equals the intersection of the minimal
/// magical supergraphs over (o1, o2) and (o1, o3).
pub fn double_magical_violations(g: &OrderedGraph) -> Result<Vec<(VertexId, VertexId)>> {
    g.order(OrderIdx::O3)?;
    let c2 = magical_closure_over(g, OrderIdx::O2)?;
    let c3 = magical_closure_over(g, OrderIdx::O3)?;
    let mut missing = Vec::new();
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            let (u, v) = (VertexId::from_index(i), VertexId::from_index(j));
            if c2.has_edge(u, v) && c3.has_edge(u, v) && !g.has_edge(u, v) {
                missing.push((u, v));
            }
        }
    }
    Ok(missing)
}

pub fn is_double_magical(g: &OrderedGraph) -> Result<bool> {
    Ok(double_magical_violations(g)?.is_empty())
}

/// A directed relation on the vertices [1, n]; pairs (u, v) mean u -> v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub n: usize,
    pub pairs: Vec<(VertexId, VertexId)>,
}

impl Relation {
    pub fn contains(&self, u: VertexId, v: VertexId) -> bool {
        self.pairs.binary_search(&(u, v)).is_ok()
    }
}

/// A transitivity failure a -> b -> c without a -> c in relation `rel`
/// (0-based index into the four partial orders).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityViolation {
    pub rel: usize,
    pub triple: [VertexId; 3],
}

/// The four edge-disjoint directed relations of a triple-ordered graph.
/// Every edge ab with a <1 b lands in exactly one relation according to
/// the position of a and b in o2 and o3. On double-magical graphs each
/// relation is transitive; `transitivity_violations` lists the failures
/// otherwise.
#[derive(Clone, Debug)]
pub struct PartialOrders {
    pub relations: [Relation; 4],
    pub transitivity_violations: Vec<TransitivityViolation>,
}

pub fn extract_partial_orders(g: &OrderedGraph) -> Result<PartialOrders> {
    let o1 = g.order(OrderIdx::O1)?;
    let o2 = g.order(OrderIdx::O2)?;
    let o3 = g.order(OrderIdx::O3)?;
    let n = g.n();
    let mut rels: [Vec<(VertexId, VertexId)>; 4] = Default::default();
    for (u, v) in g.edges() {
        let (a, b) = if o1.precedes(u, v) { (u, v) } else { (v, u) };
        let fwd2 = o2.precedes(a, b);
        let fwd3 = o3.precedes(a, b);
        let idx = match (fwd2, fwd3) {
            (true, true) => 0,
            (false, false) => 1,
            (true, false) => 2,
            (false, true) => 3,
        };
        rels[idx].push((a, b));
    }
    for r in &mut rels {
        r.sort_unstable();
    }
    let relations = rels.map(|pairs| Relation { n, pairs });
    let mut transitivity_violations = Vec::new();
    for (idx, rel) in relations.iter().enumerate() {
        // adjacency lists for the triple scan
        let mut succ: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for &(u, v) in &rel.pairs {
            succ[u.index()].push(v);
        }
        for &(a, b) in &rel.pairs {
            for &c in &succ[b.index()] {
                if !rel.contains(a, c) {
                    transitivity_violations.push(TransitivityViolation {
                        rel: idx,
                        triple: [a, b, c],
                    });
                }
            }
        }
    }
    transitivity_violations.sort_by_key(|v| (v.rel, v.triple));
    Ok(PartialOrders {
        relations,
        transitivity_violations,
    })
}
