//! Dense bitset graphs and the constructions used throughout: tensor
//! product, lexicographic product with a complete graph, and the
//! generalized Mycielski construction.
//!
//! Vertices are `0..n` internally. Adjacency is stored as packed bit rows,
//! one row per vertex, so neighborhood tests and traversals are
//! word-parallel. Graphs are immutable after construction; build them with
//! [`GraphBuilder`] or one of the generators.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("{kind} requires size >= {min}, got {got}")]
    SizeOutOfRange {
        kind: &'static str,
        min: usize,
        got: usize,
    },
    #[error("vertex {0} out of range for graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("operation requires a loop-free graph (loop at vertex {0})")]
    LoopNotAllowed(usize),
}

/// Finite simple graph (loops optionally permitted) with dense bit-row
/// adjacency. Symmetry is enforced by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    allow_loops: bool,
    m: usize,
}

pub struct GraphBuilder {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    allow_loops: bool,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        GraphBuilder {
            n,
            words,
            rows: vec![0u64; n * words],
            allow_loops: false,
        }
    }

    pub fn allow_loops(mut self) -> Self {
        self.allow_loops = true;
        self
    }

    /// Adds the undirected edge `{u, v}`. Duplicates are harmless.
    ///
    /// Panics on out-of-range vertices or on a loop when loops were not
    /// enabled; callers parsing untrusted input must validate first.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range");
        assert!(u != v || self.allow_loops, "loop at {u} not allowed");
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn build(self) -> Graph {
        let mut m = 0usize;
        for u in 0..self.n {
            let row = &self.rows[u * self.words..(u + 1) * self.words];
            for (w, word) in row.iter().enumerate() {
                let mut bits = *word;
                while bits != 0 {
                    let v = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    if v >= u {
                        m += 1;
                    }
                }
            }
        }
        Graph {
            n: self.n,
            words: self.words,
            rows: self.rows,
            allow_loops: self.allow_loops,
            m,
        }
    }
}

impl Graph {
    pub fn builder(n: usize) -> GraphBuilder {
        GraphBuilder::new(n)
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            b.add_edge(u, v);
        }
        b.build()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges; a loop counts once.
    pub fn num_edges(&self) -> usize {
        self.m
    }

    pub fn allows_loops(&self) -> bool {
        self.allow_loops
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 != 0
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(w, word)| {
            let base = w * 64;
            let mut bits = *word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let v = base + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            })
        })
    }

    /// Edges as unordered pairs `(u, v)` with `u <= v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v >= u)
                .map(move |v| (u, v))
        })
    }

    pub fn has_loop_at(&self, u: usize) -> bool {
        self.has_edge(u, u)
    }

    pub fn first_loop(&self) -> Option<usize> {
        (0..self.n).find(|&u| self.has_edge(u, u))
    }

    pub fn is_loop_free(&self) -> bool {
        self.first_loop().is_none()
    }

    fn require_loop_free(&self) -> Result<(), GraphError> {
        match self.first_loop() {
            Some(u) => Err(GraphError::LoopNotAllowed(u)),
            None => Ok(()),
        }
    }

    /// Loop-free complement.
    pub fn complement(&self) -> Graph {
        let mut b = GraphBuilder::new(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    b.add_edge(u, v);
                }
            }
        }
        b.build()
    }

    /// BFS hop counts from `source`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<Option<u32>>, GraphError> {
        if source >= self.n {
            return Err(GraphError::VertexOutOfRange(source, self.n));
        }
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut frontier = vec![source];
        let mut d = 0u32;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                for v in self.neighbors(u) {
                    if dist[v].is_none() {
                        dist[v] = Some(d);
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        Ok(dist)
    }

    /// Length of a shortest odd cycle, or `None` for bipartite graphs.
    ///
    /// Runs a BFS on the bipartite double cover from each vertex: the
    /// distance from `(v, even)` to `(v, odd)` is the length of a shortest
    /// odd closed walk through `v`, and the minimum over `v` is attained by
    /// a shortest odd cycle.
    pub fn odd_girth(&self) -> Result<Option<u32>, GraphError> {
        self.require_loop_free()?;
        let mut best: Option<u32> = None;
        let mut dist = vec![u32::MAX; 2 * self.n];
        for s in 0..self.n {
            dist.fill(u32::MAX);
            dist[2 * s] = 0;
            let mut frontier = vec![2 * s];
            let mut d = 0u32;
            'bfs: while !frontier.is_empty() {
                if let Some(b) = best {
                    if d >= b {
                        break 'bfs;
                    }
                }
                d += 1;
                let mut next = Vec::new();
                for &x in &frontier {
                    let (u, parity) = (x / 2, x % 2);
                    for v in self.neighbors(u) {
                        let y = 2 * v + (1 - parity);
                        if dist[y] == u32::MAX {
                            dist[y] = d;
                            if y == 2 * s + 1 {
                                best = Some(match best {
                                    Some(b) => b.min(d),
                                    None => d,
                                });
                                break 'bfs;
                            }
                            next.push(y);
                        }
                    }
                }
                frontier = next;
            }
        }
        Ok(best)
    }
}

/// Cycle `C_n` with edges `i ~ i+1 (mod n)`.
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::SizeOutOfRange {
            kind: "cycle",
            min: 3,
            got: n,
        });
    }
    Ok(Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))))
}

/// Complete graph `K_n`.
pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(GraphError::SizeOutOfRange {
            kind: "complete",
            min: 1,
            got: n,
        });
    }
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            b.add_edge(u, v);
        }
    }
    Ok(b.build())
}

/// Path `v_0 v_1 ... v_r` with a loop at `v_0`; `r + 1` vertices.
pub fn path_with_loop(r: usize) -> Result<Graph, GraphError> {
    if r < 1 {
        return Err(GraphError::SizeOutOfRange {
            kind: "path-with-loop",
            min: 1,
            got: r,
        });
    }
    let mut b = GraphBuilder::new(r + 1).allow_loops();
    b.add_edge(0, 0);
    for i in 0..r {
        b.add_edge(i, i + 1);
    }
    Ok(b.build())
}

/// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
pub fn petersen() -> Graph {
    let mut b = GraphBuilder::new(10);
    for i in 0..5 {
        b.add_edge(i, (i + 1) % 5);
        b.add_edge(5 + i, 5 + (i + 2) % 5);
        b.add_edge(i, 5 + i);
    }
    b.build()
}

/// The Grötzsch graph, `M_2(C_5)`.
pub fn groetzsch() -> Graph {
    mycielski(&cycle(5).unwrap(), 2).unwrap()
}

/// Tensor (categorical) product: `(x, y) ~ (x', y')` iff `x x' ∈ E(G)` and
/// `y y' ∈ E(H)`. Vertex `(x, y)` has index `x · |V(H)| + y`.
pub fn tensor_product(g: &Graph, h: &Graph) -> Graph {
    let hn = h.n();
    let mut b = GraphBuilder::new(g.n() * hn);
    if g.allows_loops() || h.allows_loops() {
        b = b.allow_loops();
    }
    for (x, x2) in ordered_edges(g) {
        for (y, y2) in ordered_edges(h) {
            let a = x * hn + y;
            let c = x2 * hn + y2;
            if a <= c {
                b.add_edge(a, c);
            }
        }
    }
    b.build()
}

/// Index of product vertex `(x, y)` in [`tensor_product`]'s labeling.
pub fn product_index(x: usize, y: usize, h_n: usize) -> usize {
    x * h_n + y
}

/// Inverse of [`product_index`].
pub fn product_label(idx: usize, h_n: usize) -> (usize, usize) {
    (idx / h_n, idx % h_n)
}

fn ordered_edges(g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(2 * g.num_edges());
    for (u, v) in g.edges() {
        out.push((u, v));
        if u != v {
            out.push((v, u));
        }
    }
    out
}

/// Lexicographic product `F[K_q]`: each vertex of `F` blown up into a
/// q-clique, cross edges following `F`. Vertex `(s, j)` (both 0-based)
/// has index `s·q + j`.
pub fn lex_complete(f: &Graph, q: usize) -> Result<Graph, GraphError> {
    f.require_loop_free()?;
    if q < 1 {
        return Err(GraphError::SizeOutOfRange {
            kind: "lex_complete",
            min: 1,
            got: q,
        });
    }
    let mut b = GraphBuilder::new(f.n() * q);
    for s in 0..f.n() {
        for j in 0..q {
            for j2 in (j + 1)..q {
                b.add_edge(s * q + j, s * q + j2);
            }
        }
    }
    for (s, s2) in f.edges() {
        for j in 0..q {
            for j2 in 0..q {
                b.add_edge(s * q + j, s2 * q + j2);
            }
        }
    }
    Ok(b.build())
}

/// Generalized Mycielski graph `M_r(G)`: the quotient of `G × P_r` (loop at
/// `v_0`) identifying the whole top layer into one apex vertex.
///
/// Layers `0..r` each hold a copy of `V(G)`; vertex `(v, layer)` has index
/// `layer·|V(G)| + v` and the apex has index `r·|V(G)|`. Layer 0 induces `G`.
pub fn mycielski(g: &Graph, r: usize) -> Result<Graph, GraphError> {
    g.require_loop_free()?;
    if r < 1 {
        return Err(GraphError::SizeOutOfRange {
            kind: "mycielski",
            min: 1,
            got: r,
        });
    }
    let n = g.n();
    let apex = r * n;
    let mut b = GraphBuilder::new(r * n + 1);
    for (u, v) in g.edges() {
        b.add_edge(u, v);
        for layer in 0..r - 1 {
            b.add_edge(layer * n + u, (layer + 1) * n + v);
            b.add_edge(layer * n + v, (layer + 1) * n + u);
        }
        b.add_edge((r - 1) * n + u, apex);
        b.add_edge((r - 1) * n + v, apex);
    }
    Ok(b.build())
}

/// `M_{r_1}(M_{r_2}(... M_{r_d}(G)))`: the chain composes right to left.
pub fn mycielski_chain(g: &Graph, rs: &[usize]) -> Result<Graph, GraphError> {
    let mut out = g.clone();
    for &r in rs.iter().rev() {
        out = mycielski(&out, r)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators() {
        let c7 = cycle(7).unwrap();
        assert_eq!((c7.n(), c7.num_edges()), (7, 7));
        let k1 = complete(1).unwrap();
        assert_eq!((k1.n(), k1.num_edges()), (1, 0));
        let p3 = path_with_loop(3).unwrap();
        assert_eq!((p3.n(), p3.num_edges()), (4, 4));
        assert!(p3.has_loop_at(0) && !p3.has_loop_at(1));
        assert_eq!(cycle(2), Err(GraphError::SizeOutOfRange { kind: "cycle", min: 3, got: 2 }));
        let pet = petersen();
        assert_eq!((pet.n(), pet.num_edges()), (10, 15));
        for u in 0..10 {
            assert_eq!(pet.degree(u), 3);
        }
    }

    #[test]
    fn tensor_product_examples() {
        let k2 = complete(2).unwrap();
        let p = tensor_product(&k2, &k2);
        assert_eq!((p.n(), p.num_edges()), (4, 2));
        let c7 = cycle(7).unwrap();
        let iso = tensor_product(&c7, &complete(1).unwrap());
        assert_eq!((iso.n(), iso.num_edges()), (7, 0));
        let cyl = tensor_product(&c7, &k2);
        assert_eq!((cyl.n(), cyl.num_edges()), (14, 14));
    }

    #[test]
    fn lex_complete_examples() {
        let c7 = cycle(7).unwrap();
        let g = lex_complete(&c7, 3).unwrap();
        assert_eq!((g.n(), g.num_edges()), (21, 84));
        let f1 = lex_complete(&c7, 1).unwrap();
        assert_eq!((f1.n(), f1.num_edges()), (7, 7));
        let kq = lex_complete(&complete(1).unwrap(), 5).unwrap();
        assert_eq!((kq.n(), kq.num_edges()), (5, 10));
        assert!(lex_complete(&path_with_loop(2).unwrap(), 2).is_err());
    }

    #[test]
    fn mycielski_examples() {
        let c5 = cycle(5).unwrap();
        let grz = mycielski(&c5, 2).unwrap();
        assert_eq!((grz.n(), grz.num_edges()), (11, 20));
        let k3 = mycielski(&complete(2).unwrap(), 1).unwrap();
        assert_eq!((k3.n(), k3.num_edges()), (3, 3));
        let chain = mycielski_chain(&cycle(7).unwrap(), &[3, 3, 3, 3]).unwrap();
        assert_eq!(chain.n(), 607);
        assert_eq!(mycielski_chain(&c5, &[]).unwrap(), c5);
        assert_eq!(mycielski_chain(&c5, &[2]).unwrap(), grz);
    }

    #[test]
    fn mycielski_layer_zero_induces_g() {
        let g = petersen();
        let m = mycielski(&g, 3).unwrap();
        for u in 0..g.n() {
            for v in 0..g.n() {
                assert_eq!(m.has_edge(u, v), g.has_edge(u, v));
            }
        }
    }

    /// Independent route: build M_r(G) as a quotient of G × P_r.
    #[test]
    fn mycielski_matches_product_quotient() {
        for (g, r) in [(cycle(5).unwrap(), 2), (cycle(7).unwrap(), 3), (petersen(), 1)] {
            let m = mycielski(&g, r).unwrap();
            let pr = path_with_loop(r).unwrap();
            let prod = tensor_product(&g, &pr);
            let n = g.n();
            // (x, layer) in the product maps to layer*n + x; layer r maps to the apex.
            let quot = |idx: usize| -> usize {
                let (x, layer) = product_label(idx, r + 1);
                if layer == r {
                    r * n
                } else {
                    layer * n + x
                }
            };
            let mut b = GraphBuilder::new(r * n + 1);
            for (a, c) in prod.edges() {
                let (qa, qc) = (quot(a), quot(c));
                assert_ne!(qa, qc, "identification must not create loops");
                b.add_edge(qa, qc);
            }
            assert_eq!(b.build(), m);
        }
    }

    #[test]
    fn bfs_and_odd_girth() {
        let c7 = cycle(7).unwrap();
        let d = c7.bfs_distances(1).unwrap();
        assert_eq!(d[4], Some(3));
        assert_eq!(d[1], Some(0));
        assert!(c7.bfs_distances(7).is_err());

        let mut b = GraphBuilder::new(5);
        b.add_edge(0, 1);
        b.add_edge(2, 3);
        let two = b.build();
        assert_eq!(two.bfs_distances(0).unwrap()[2], None);

        assert_eq!(c7.odd_girth().unwrap(), Some(7));
        assert_eq!(complete(4).unwrap().odd_girth().unwrap(), Some(3));
        assert_eq!(cycle(6).unwrap().odd_girth().unwrap(), None);
        assert_eq!(petersen().odd_girth().unwrap(), Some(5));
        assert_eq!(groetzsch().odd_girth().unwrap(), Some(5));
        assert!(path_with_loop(2).unwrap().odd_girth().is_err());
    }

    #[test]
    fn odd_girth_of_mycielski_chain() {
        let m3c7 = mycielski(&cycle(7).unwrap(), 3).unwrap();
        assert_eq!(m3c7.odd_girth().unwrap(), Some(7));
        let m2c5 = groetzsch();
        assert_eq!(m2c5.odd_girth().unwrap(), Some(5));
        // og(M_r(G)) >= min(og(G), 2r+1) across the corpus
        for base in [cycle(5).unwrap(), cycle(7).unwrap()] {
            let og = base.odd_girth().unwrap().unwrap();
            for r in 1..=4 {
                let m = mycielski(&base, r).unwrap();
                let got = m.odd_girth().unwrap().unwrap();
                assert!(got >= og.min(2 * r as u32 + 1), "M_{r} of C_{}", base.n());
            }
        }
    }
}
