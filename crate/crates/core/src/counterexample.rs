//! The counterexample construction: from a seed graph `F` on `p` vertices
//! (odd girth 7 intended), a blow-up factor `q ≥ ⌈(p−1)/2⌉` and a colour
//! count `c = 3q+2`, build `G = F[K_q]` and the four-layer gadget graph
//! `H`, plus the explicit colour functions that embed `H` into `K_c^G`.
//!
//! Everything in this module is 1-based — seed vertices `s, i ∈ [p]`,
//! copies `j ∈ [q]`, colours and `t`-indices in `[c]` — matching the
//! index arithmetic of the construction (`δ` offsets, ranges like
//! `[2q+2, 3q+2]`). Conversion to 0-based graph vertices happens only at
//! the boundary.
//!
//! `H` consists of
//! 1. vertices `g_i`, `i ∈ [c]`, forming a clique;
//! 2. a vertex `φ` adjacent to `g_i` for `i > p`;
//! 3. vertices `μ_{i,t}` for `i ∈ [p]`, `t ∈ [q+2, 3q+2]`, where
//!    `{μ_{i,t}: t} ∪ {g_i}` forms a clique and `μ_{i,t}` is further
//!    adjacent to `g_j` for `j > 2q+1`, `j ≠ t`;
//! 4. vertices `θ_{i,t}` for `i ∈ [p]`, `t ∈ [2q+2, 3q+2]`, adjacent to
//!    `φ`, `μ_{i,t}`, and every `g_j` with `j ∉ {i, t}`.

use crate::graph::{self, Graph};
use crate::solvers::Coloring;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamError {
    #[error("seed graph has a loop at vertex {0}")]
    SeedHasLoop(usize),
    #[error("seed graph is empty")]
    EmptySeed,
    #[error("q must be at least 1, got {0}")]
    QTooSmall(usize),
    #[error("p = {p} exceeds 2q+1 = {max} (need q >= ceil((p-1)/2))")]
    PTooLarge { p: usize, max: usize },
    #[error("c = {c} outside the allowed set {{3q+2, 3q+3, 3q+4}} = {{{base}, {}, {}}}", base + 1, base + 2)]
    BadColorCount { c: u32, base: u32 },
    #[error("c = {c} exceeds the supported maximum of 128 colours")]
    TooManyColors { c: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamWarning {
    /// The embedding proof needs odd girth at least 7; smaller seeds are
    /// permitted for negative-control runs.
    OddGirthBelowSeven { got: Option<u32> },
    /// Distances in a disconnected seed fall into the `>= 3` branch.
    Disconnected,
}

impl fmt::Display for ParamWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamWarning::OddGirthBelowSeven { got: Some(g) } => {
                write!(f, "seed odd girth {g} < 7")
            }
            ParamWarning::OddGirthBelowSeven { got: None } => {
                write!(f, "seed is bipartite (no odd cycle)")
            }
            ParamWarning::Disconnected => write!(f, "seed graph is disconnected"),
        }
    }
}

/// Validated construction parameters.
#[derive(Debug, Clone)]
pub struct Params {
    f: Graph,
    p: usize,
    q: usize,
    c: u32,
    experimental: bool,
    odd_girth: Option<u32>,
    warnings: Vec<ParamWarning>,
}

impl Params {
    /// Checks every constraint; `c` defaults to `3q+2`, and `3q+3` or
    /// `3q+4` are allowed as experimental choices. Odd girth below 7 and
    /// disconnectedness are recorded as warnings, not errors, so
    /// negative-control runs stay expressible.
    pub fn validate(f: Graph, q: usize, c: Option<u32>) -> Result<Params, Vec<ParamError>> {
        let mut errors = Vec::new();
        let p = f.n();
        if p == 0 {
            errors.push(ParamError::EmptySeed);
        }
        if let Some(u) = f.first_loop() {
            errors.push(ParamError::SeedHasLoop(u));
        }
        if q < 1 {
            errors.push(ParamError::QTooSmall(q));
        }
        if q >= 1 && p > 2 * q + 1 {
            errors.push(ParamError::PTooLarge { p, max: 2 * q + 1 });
        }
        let base = (3 * q + 2) as u32;
        let c = c.unwrap_or(base);
        if c < base || c > base + 2 {
            errors.push(ParamError::BadColorCount { c, base });
        }
        if c > 128 {
            errors.push(ParamError::TooManyColors { c });
        }
        if !errors.is_empty() {
            return Err(errors);
        }
        let odd_girth = f.odd_girth().expect("loop-freeness already checked");
        let mut warnings = Vec::new();
        if odd_girth.is_none() || odd_girth.unwrap() < 7 {
            warnings.push(ParamWarning::OddGirthBelowSeven { got: odd_girth });
        }
        if p > 0 && f.bfs_distances(0).unwrap().iter().any(Option::is_none) {
            warnings.push(ParamWarning::Disconnected);
        }
        Ok(Params {
            experimental: c != base,
            f,
            p,
            q,
            c,
            odd_girth,
            warnings,
        })
    }

    pub fn seed(&self) -> &Graph {
        &self.f
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn experimental(&self) -> bool {
        self.experimental
    }

    pub fn odd_girth(&self) -> Option<u32> {
        self.odd_girth
    }

    pub fn warnings(&self) -> &[ParamWarning] {
        &self.warnings
    }

    /// Range of `t` for μ vertices: `[q+2, 3q+2]`, anchored regardless of
    /// an experimental `c`.
    pub fn mu_t_range(&self) -> std::ops::RangeInclusive<usize> {
        self.q + 2..=3 * self.q + 2
    }

    /// Range of `t` for θ vertices: `[2q+2, 3q+2]`.
    pub fn theta_t_range(&self) -> std::ops::RangeInclusive<usize> {
        2 * self.q + 2..=3 * self.q + 2
    }
}

/// Tagged vertex of `H`. All indices 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HVertex {
    G(usize),
    Phi,
    Mu { i: usize, t: usize },
    Theta { i: usize, t: usize },
}

impl fmt::Display for HVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HVertex::G(i) => write!(f, "g:{i}"),
            HVertex::Phi => write!(f, "phi"),
            HVertex::Mu { i, t } => write!(f, "mu:{i}:{t}"),
            HVertex::Theta { i, t } => write!(f, "theta:{i}:{t}"),
        }
    }
}

/// `c + 1 + p(2q+1) + p(q+1)`: the number of vertices of `H`.
pub fn h_vertex_count(p: u64, q: u64, c: u64) -> u64 {
    c + 1 + p * (2 * q + 1) + p * (q + 1)
}

/// Closed form `3⌈(p+1)/2⌉(p+1) − p`, valid for `q = ⌈(p−1)/2⌉`, `c = 3q+2`.
pub fn h_vertex_count_closed_form(p: u64) -> u64 {
    3 * ((p + 1).div_ceil(2)) * (p + 1) - p
}

/// `G = F[K_q]`. Vertex `(v_s, j)` (1-based) has graph index
/// `(s-1)·q + (j-1)`.
pub fn build_g(params: &Params) -> Graph {
    graph::lex_complete(&params.f, params.q).expect("params validated")
}

pub fn g_index(s: usize, j: usize, q: usize) -> usize {
    (s - 1) * q + (j - 1)
}

pub fn g_label(idx: usize, q: usize) -> (usize, usize) {
    (idx / q + 1, idx % q + 1)
}

/// `H` with its vertex labeling.
#[derive(Debug, Clone)]
pub struct HGraph {
    pub graph: Graph,
    p: usize,
    q: usize,
    c: u32,
}

impl HGraph {
    pub fn index_of(&self, v: HVertex) -> usize {
        let (p, q, c) = (self.p, self.q, self.c as usize);
        match v {
            HVertex::G(i) => {
                debug_assert!((1..=c).contains(&i));
                i - 1
            }
            HVertex::Phi => c,
            HVertex::Mu { i, t } => {
                debug_assert!((1..=p).contains(&i) && (q + 2..=3 * q + 2).contains(&t));
                c + 1 + (i - 1) * (2 * q + 1) + (t - (q + 2))
            }
            HVertex::Theta { i, t } => {
                debug_assert!((1..=p).contains(&i) && (2 * q + 2..=3 * q + 2).contains(&t));
                c + 1 + p * (2 * q + 1) + (i - 1) * (q + 1) + (t - (2 * q + 2))
            }
        }
    }

    pub fn vertex_at(&self, idx: usize) -> HVertex {
        let (p, q, c) = (self.p, self.q, self.c as usize);
        if idx < c {
            return HVertex::G(idx + 1);
        }
        if idx == c {
            return HVertex::Phi;
        }
        let mu_base = c + 1;
        let theta_base = mu_base + p * (2 * q + 1);
        if idx < theta_base {
            let off = idx - mu_base;
            return HVertex::Mu {
                i: off / (2 * q + 1) + 1,
                t: off % (2 * q + 1) + q + 2,
            };
        }
        let off = idx - theta_base;
        debug_assert!(off < p * (q + 1));
        HVertex::Theta {
            i: off / (q + 1) + 1,
            t: off % (q + 1) + 2 * q + 2,
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = HVertex> + '_ {
        (0..self.graph.n()).map(|idx| self.vertex_at(idx))
    }
}

/// Builds `H` from the rule table, one rule per construction clause.
pub fn build_h(params: &Params) -> HGraph {
    let (p, q, c) = (params.p, params.q, params.c as usize);
    let n = h_vertex_count(p as u64, q as u64, c as u64) as usize;
    let h = HGraph {
        graph: Graph::from_edges(0, []),
        p,
        q,
        c: params.c,
    };
    let mut b = graph::GraphBuilder::new(n);
    let mut add = |u: HVertex, v: HVertex| b.add_edge(h.index_of(u), h.index_of(v));

    // (1) the g-clique
    for i in 1..=c {
        for j in i + 1..=c {
            add(HVertex::G(i), HVertex::G(j));
        }
    }
    // (2) φ sees the g's above p
    for j in p + 1..=c {
        add(HVertex::Phi, HVertex::G(j));
    }
    for i in 1..=p {
        // (3) the μ row clique through g_i ...
        for t in params.mu_t_range() {
            add(HVertex::Mu { i, t }, HVertex::G(i));
            for t2 in t + 1..=3 * q + 2 {
                add(HVertex::Mu { i, t }, HVertex::Mu { i, t: t2 });
            }
            // ... plus the high g's other than g_t
            for j in 2 * q + 2..=c {
                if j != t {
                    add(HVertex::Mu { i, t }, HVertex::G(j));
                }
            }
        }
        // (4) θ's
        for t in params.theta_t_range() {
            add(HVertex::Theta { i, t }, HVertex::Phi);
            add(HVertex::Theta { i, t }, HVertex::Mu { i, t });
            for j in 1..=c {
                if j != i && j != t {
                    add(HVertex::Theta { i, t }, HVertex::G(j));
                }
            }
        }
    }
    HGraph {
        graph: b.build(),
        ..h
    }
}

/// Distance classes of `d_F(v_s, v_i)` as used by the vertex maps; an
/// unreachable pair lands in `ThreePlus` (the formulas stay total on
/// disconnected seeds).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistClass {
    ZeroOrTwo,
    One,
    ThreePlus,
}

/// A built instance: parameters plus the all-pairs seed distances the
/// vertex maps consume.
#[derive(Debug, Clone)]
pub struct Instance {
    params: Params,
    dist: Vec<Option<u32>>,
}

impl Instance {
    pub fn new(params: Params) -> Instance {
        let p = params.p;
        let mut dist = Vec::with_capacity(p * p);
        for s in 0..p {
            dist.extend(params.f.bfs_distances(s).expect("vertex in range"));
        }
        Instance { params, dist }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// `d_F(v_s, v_i)`, 1-based; `None` when unreachable.
    pub fn dist_f(&self, s: usize, i: usize) -> Option<u32> {
        self.dist[(s - 1) * self.params.p + (i - 1)]
    }

    pub fn dist_class(&self, s: usize, i: usize) -> DistClass {
        match self.dist_f(s, i) {
            Some(0) | Some(2) => DistClass::ZeroOrTwo,
            Some(1) => DistClass::One,
            _ => DistClass::ThreePlus,
        }
    }

    /// The colour the H-vertex `y`, read as a map `V(G) → [c]`, assigns to
    /// the G-vertex `(v_s, j)`:
    ///
    /// * `g_i ↦ i` everywhere;
    /// * `φ ↦ s`;
    /// * `μ_{i,t}`: `j + δ_{j≥i}` at distance 0 or 2, `q + j + δ_{q+j≥i}`
    ///   at distance 1, `t − δ_{i≥t}` at distance ≥ 3;
    /// * `θ_{i,t}`: `t` at distance ≤ 1, `i` at distance ≥ 2.
    pub fn vertex_map(&self, y: HVertex, s: usize, j: usize) -> u32 {
        let q = self.params.q;
        debug_assert!((1..=self.params.p).contains(&s) && (1..=q).contains(&j));
        let delta = |cond: bool| -> usize { usize::from(cond) };
        let value = match y {
            HVertex::G(i) => i,
            HVertex::Phi => s,
            HVertex::Mu { i, t } => match self.dist_class(s, i) {
                DistClass::ZeroOrTwo => j + delta(j >= i),
                DistClass::One => q + j + delta(q + j >= i),
                DistClass::ThreePlus => t - delta(i >= t),
            },
            HVertex::Theta { i, t } => match self.dist_f(s, i) {
                Some(d) if d <= 1 => t,
                _ => i,
            },
        };
        debug_assert!((1..=self.params.c as usize).contains(&value));
        value as u32
    }

    /// The colour function of `y` over all of `V(G)`, in G-vertex order.
    pub fn color_function(&self, y: HVertex) -> Vec<u32> {
        let (p, q) = (self.params.p, self.params.q);
        let mut values = Vec::with_capacity(p * q);
        for s in 1..=p {
            for j in 1..=q {
                values.push(self.vertex_map(y, s, j));
            }
        }
        values
    }

    /// Ground-truth image: enumerate every G-vertex.
    pub fn image_bruteforce(&self, y: HVertex) -> Vec<u32> {
        let mut mask = 0u128;
        for s in 1..=self.params.p {
            for j in 1..=self.params.q {
                mask |= 1u128 << (self.vertex_map(y, s, j) - 1);
            }
        }
        mask_to_colors(mask)
    }

    /// Closed-form image: `Im(g_i) = {i}`, `Im(φ) = [p]`,
    /// `Im(θ_{i,t}) = {i,t}`, `Im(μ_{i,t}) = ([2q+1] ∪ {t}) − {i}`.
    ///
    /// Valid only when every distance class the formula for `y` branches
    /// on is realized by some seed vertex; returns `None` otherwise
    /// (brute force remains the ground truth).
    pub fn image_closed_form(&self, y: HVertex) -> Option<Vec<u32>> {
        let (p, q) = (self.params.p, self.params.q);
        match y {
            HVertex::G(i) => Some(vec![i as u32]),
            HVertex::Phi => Some((1..=p as u32).collect()),
            HVertex::Theta { i, t } => {
                let classes: Vec<bool> = (1..=p)
                    .map(|s| self.dist_f(s, i).is_some_and(|d| d <= 1))
                    .collect();
                let near = classes.iter().any(|&x| x);
                let far = classes.iter().any(|&x| !x);
                (near && far).then(|| {
                    let mut out = vec![i as u32, t as u32];
                    out.sort_unstable();
                    out
                })
            }
            HVertex::Mu { i, t } => {
                let mut seen = [false; 3];
                for s in 1..=p {
                    seen[match self.dist_class(s, i) {
                        DistClass::ZeroOrTwo => 0,
                        DistClass::One => 1,
                        DistClass::ThreePlus => 2,
                    }] = true;
                }
                seen.iter().all(|&x| x).then(|| {
                    let mut mask = 0u128;
                    for v in 1..=2 * q + 1 {
                        mask |= 1u128 << (v - 1);
                    }
                    mask |= 1u128 << (t - 1);
                    mask &= !(1u128 << (i - 1));
                    mask_to_colors(mask)
                })
            }
        }
    }

    /// The product colouring `Φ(x, y) = y(x)` on `G × H` (indexed as in
    /// [`graph::tensor_product`] with `x` major). Properness is the
    /// verifier's question, not an invariant here; it fails for seeds of
    /// odd girth below 7.
    pub fn product_coloring(&self, h: &HGraph) -> Coloring {
        let (p, q) = (self.params.p, self.params.q);
        let g_n = p * q;
        let h_n = h.graph.n();
        let mut colors = vec![0u32; g_n * h_n];
        for (y_idx, y) in h.vertices().enumerate() {
            for s in 1..=p {
                for j in 1..=q {
                    colors[g_index(s, j, q) * h_n + y_idx] = self.vertex_map(y, s, j);
                }
            }
        }
        Coloring::new(colors, self.params.c)
    }
}

fn mask_to_colors(mask: u128) -> Vec<u32> {
    (0..128u32)
        .filter(|k| mask >> k & 1 != 0)
        .map(|k| k + 1)
        .collect()
}
