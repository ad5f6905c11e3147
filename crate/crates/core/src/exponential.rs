//! The exponential graph `K_c^G`: vertices are colour functions
//! `V(G) → [c]`, and `f ~ g` iff every edge `xy` of `G` has
//! `f(x) ≠ g(y)` (checked in both orientations). Loops mark proper
//! c-colourings. Materializing `K_c^G` is only feasible for tiny
//! instances; everything else goes through the pairwise adjacency oracle.

use crate::graph::{self, Graph};
use crate::solvers::Coloring;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExponentialError {
    #[error("colour function covers {got} vertices, graph has {expected}")]
    DomainMismatch { expected: usize, got: usize },
    #[error("vertex {vertex} has colour {color}, outside 1..={c}")]
    ColorOutOfRange { vertex: usize, color: u32, c: u32 },
    #[error("functions disagree on the colour count ({0} vs {1})")]
    ColorCountMismatch(u32, u32),
    #[error("{c} colours exceed the supported maximum of 128")]
    TooManyColors { c: u32 },
    #[error("K_c^G would have {needed} vertices, above the guard {guard}")]
    GuardExceeded { needed: u128, guard: u64 },
    #[error("c^n overflows for c={c}, n={n}")]
    Overflow { c: u32, n: usize },
    #[error("map is not a homomorphism: H-edge ({u},{v}) fails on G-edge ({x},{y}) with colour {color}")]
    NotHomomorphism { u: usize, v: usize, x: usize, y: usize, color: u32 },
    #[error("colouring is improper on product edge (({x},{u}),({y},{v}))")]
    ImproperColoring { x: usize, u: usize, y: usize, v: usize },
}

/// A map `V(G) → [c]`, simultaneously a vertex of `K_c^G` and one column
/// of a product colouring. Carries a precomputed image bitmask (bit `k`
/// set iff colour `k+1` is used) for the disjoint-image fast path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorFunction {
    values: Vec<u32>,
    c: u32,
    image_mask: u128,
}

impl ColorFunction {
    pub fn new(values: Vec<u32>, c: u32) -> Result<Self, ExponentialError> {
        if c > 128 {
            return Err(ExponentialError::TooManyColors { c });
        }
        let mut image_mask = 0u128;
        for (vertex, &color) in values.iter().enumerate() {
            if color < 1 || color > c {
                return Err(ExponentialError::ColorOutOfRange { vertex, color, c });
            }
            image_mask |= 1u128 << (color - 1);
        }
        Ok(ColorFunction { values, c, image_mask })
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn get(&self, v: usize) -> u32 {
        self.values[v]
    }

    pub fn image_mask(&self) -> u128 {
        self.image_mask
    }

    /// Used colours, ascending.
    pub fn image(&self) -> Vec<u32> {
        (0..self.c)
            .filter(|k| self.image_mask >> k & 1 != 0)
            .map(|k| k + 1)
            .collect()
    }

    /// One-line serialization: whitespace-separated 1-based colours in
    /// vertex order.
    pub fn to_line(&self) -> String {
        self.values
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn from_line(line: &str, c: u32) -> Result<Self, ExponentialError> {
        let values = line
            .split_ascii_whitespace()
            .enumerate()
            .map(|(vertex, tok)| {
                tok.parse::<u32>()
                    .map_err(|_| ExponentialError::ColorOutOfRange { vertex, color: 0, c })
            })
            .collect::<Result<Vec<_>, _>>()?;
        ColorFunction::new(values, c)
    }

    pub fn as_coloring(&self) -> Coloring {
        Coloring::new(self.values.clone(), self.c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpAdjacency {
    Adjacent,
    /// Witness: G-edge `(x, y)` on which `f(x) = g(y) = color`.
    NotAdjacent { x: usize, y: usize, color: u32 },
}

fn check_bound(f: &ColorFunction, g: &Graph) -> Result<(), ExponentialError> {
    if f.values.len() != g.n() {
        return Err(ExponentialError::DomainMismatch {
            expected: g.n(),
            got: f.values.len(),
        });
    }
    Ok(())
}

/// `f ~ g` in `K_c^G`: for every edge `xy` of `G`, both `f(x) ≠ g(y)` and
/// `f(y) ≠ g(x)`.
pub fn exp_adjacent(
    f: &ColorFunction,
    g_fn: &ColorFunction,
    g: &Graph,
) -> Result<ExpAdjacency, ExponentialError> {
    check_bound(f, g)?;
    check_bound(g_fn, g)?;
    if f.c != g_fn.c {
        return Err(ExponentialError::ColorCountMismatch(f.c, g_fn.c));
    }
    for (x, y) in g.edges() {
        if f.values[x] == g_fn.values[y] {
            return Ok(ExpAdjacency::NotAdjacent { x, y, color: f.values[x] });
        }
        if f.values[y] == g_fn.values[x] {
            return Ok(ExpAdjacency::NotAdjacent { x: y, y: x, color: f.values[y] });
        }
    }
    Ok(ExpAdjacency::Adjacent)
}

/// `f ~ f` is a loop in `K_c^G` iff `f` is a proper c-colouring of `G`.
pub fn has_loop(f: &ColorFunction, g: &Graph) -> Result<bool, ExponentialError> {
    Ok(exp_adjacent(f, f, g)? == ExpAdjacency::Adjacent)
}

/// Colour function with index `k` in the canonical enumeration:
/// `f_k(v_i) = (k / c^i) mod c + 1` (little-endian base c).
pub fn function_at(k: u128, n: usize, c: u32) -> ColorFunction {
    let c_big = c as u128;
    let mut values = Vec::with_capacity(n);
    let mut rest = k;
    for _ in 0..n {
        values.push((rest % c_big) as u32 + 1);
        rest /= c_big;
    }
    ColorFunction::new(values, c).expect("canonical enumeration stays in range")
}

pub fn function_index(f: &ColorFunction) -> u128 {
    let c = f.c as u128;
    f.values
        .iter()
        .rev()
        .fold(0u128, |acc, &v| acc * c + (v as u128 - 1))
}

pub fn function_count(n: usize, c: u32) -> Result<u128, ExponentialError> {
    let mut count: u128 = 1;
    for _ in 0..n {
        count = count
            .checked_mul(c as u128)
            .ok_or(ExponentialError::Overflow { c, n })?;
    }
    Ok(count)
}

/// Explicit `K_c^G` on all `c^n` colour functions, loops included.
/// Vertex `k` is [`function_at`]`(k, n, c)`.
pub fn exp_explicit(g: &Graph, c: u32, guard: u64) -> Result<Graph, ExponentialError> {
    let count = function_count(g.n(), c)?;
    if count > guard as u128 {
        return Err(ExponentialError::GuardExceeded { needed: count, guard });
    }
    let count = count as usize;
    let fns: Vec<ColorFunction> = (0..count).map(|k| function_at(k as u128, g.n(), c)).collect();
    let mut b = graph::GraphBuilder::new(count).allow_loops();
    for a in 0..count {
        for bidx in a..count {
            if exp_adjacent(&fns[a], &fns[bidx], g)? == ExpAdjacency::Adjacent {
                b.add_edge(a, bidx);
            }
        }
    }
    Ok(b.build())
}

/// Lemma of El-Zahar and Sauer, forward direction: a proper c-colouring
/// `Ψ` of `G × H` (indexed as in [`graph::tensor_product`]) induces the
/// homomorphism `u ↦ f_u` with `f_u(v) = Ψ(v, u)`. Improper input is
/// rejected with the violating product edge.
pub fn coloring_to_hom(
    psi: &Coloring,
    g: &Graph,
    h: &Graph,
) -> Result<Vec<ColorFunction>, ExponentialError> {
    let (gn, hn) = (g.n(), h.n());
    if psi.colors.len() != gn * hn {
        return Err(ExponentialError::DomainMismatch {
            expected: gn * hn,
            got: psi.colors.len(),
        });
    }
    let mut fns = Vec::with_capacity(hn);
    for u in 0..hn {
        let values: Vec<u32> = (0..gn).map(|v| psi.colors[v * hn + u]).collect();
        fns.push(ColorFunction::new(values, psi.num_colors)?);
    }
    for (u, v) in h.edges() {
        if let ExpAdjacency::NotAdjacent { x, y, .. } = exp_adjacent(&fns[u], &fns[v], g)? {
            return Err(ExponentialError::ImproperColoring { x, u, y, v });
        }
    }
    Ok(fns)
}

/// Inverse direction: a verified homomorphism `H → K_c^G` (one colour
/// function per H-vertex) yields the proper colouring `Ψ(v, u) = f_u(v)`.
pub fn hom_to_coloring(
    fns: &[ColorFunction],
    g: &Graph,
    h: &Graph,
) -> Result<Coloring, ExponentialError> {
    if fns.len() != h.n() {
        return Err(ExponentialError::DomainMismatch {
            expected: h.n(),
            got: fns.len(),
        });
    }
    let c = fns.first().map_or(1, |f| f.c);
    for f in fns {
        check_bound(f, g)?;
        if f.c != c {
            return Err(ExponentialError::ColorCountMismatch(c, f.c));
        }
    }
    for (u, v) in h.edges() {
        if let ExpAdjacency::NotAdjacent { x, y, color } = exp_adjacent(&fns[u], &fns[v], g)? {
            return Err(ExponentialError::NotHomomorphism { u, v, x, y, color });
        }
    }
    let hn = h.n();
    let mut colors = vec![0u32; g.n() * hn];
    for (u, f) in fns.iter().enumerate() {
        for v in 0..g.n() {
            colors[v * hn + u] = f.values[v];
        }
    }
    Ok(Coloring::new(colors, c))
}
