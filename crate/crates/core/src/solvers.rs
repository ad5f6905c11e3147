//! Exact combinatorial solvers used for ground truth at desk scale:
//! proper-colouring verification, exact chromatic number, colouring
//! extension (feasibility) queries, and exact independence number.
//!
//! All searches are deterministic: fixed vertex orders, fixed colour
//! orders, and explicit node budgets. A search that runs out of budget
//! reports `Unknown` (with bounds where meaningful) — never a wrong answer.

use crate::graph::Graph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("colouring covers {got} vertices, graph has {expected}")]
    DomainMismatch { expected: usize, got: usize },
    #[error("vertex {vertex} has colour {color}, outside 1..={c}")]
    ColorOutOfRange { vertex: usize, color: u32, c: u32 },
    #[error("graph has a loop at vertex {0}; chromatic solvers require loop-free graphs")]
    LoopForbidden(usize),
    #[error("{c} colours exceed the supported maximum of 128")]
    TooManyColors { c: u32 },
    #[error("graph on {n} vertices exceeds the solver limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("partial colouring is improper: vertices {u} and {v} are adjacent with equal colour")]
    InvalidPartial { u: usize, v: usize },
}

/// A total map from vertices to colours in `1..=num_colors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<u32>,
    pub num_colors: u32,
}

impl Coloring {
    pub fn new(colors: Vec<u32>, num_colors: u32) -> Self {
        Coloring { colors, num_colors }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Properness {
    Proper,
    /// First monochromatic edge in lexicographic order; loops show up
    /// as `(u, u)`.
    Improper { u: usize, v: usize },
}

/// Checks a colouring against every edge, loops included.
pub fn check_coloring(g: &Graph, col: &Coloring) -> Result<Properness, SolverError> {
    if col.colors.len() != g.n() {
        return Err(SolverError::DomainMismatch {
            expected: g.n(),
            got: col.colors.len(),
        });
    }
    for (v, &color) in col.colors.iter().enumerate() {
        if color < 1 || color > col.num_colors {
            return Err(SolverError::ColorOutOfRange {
                vertex: v,
                color,
                c: col.num_colors,
            });
        }
    }
    for u in 0..g.n() {
        for v in g.neighbors(u) {
            if v >= u && col.colors[u] == col.colors[v] {
                return Ok(Properness::Improper { u, v });
            }
        }
    }
    Ok(Properness::Proper)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Coloring),
    Infeasible,
    /// Node budget exhausted before the search finished.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChromaticResult {
    Exact { chi: u32, witness: Coloring },
    Unknown { lower: u32, upper: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountResult {
    Exact { value: u32, witness: Vec<usize> },
    Unknown { lower: u32, upper: u32 },
}

/// DSATUR greedy colouring: always proper, used as the upper-bound phase
/// of [`chromatic_number`]. Deterministic (saturation, then degree, then
/// lowest index).
pub fn greedy_coloring(g: &Graph) -> Result<Coloring, SolverError> {
    if let Some(u) = g.first_loop() {
        return Err(SolverError::LoopForbidden(u));
    }
    let n = g.n();
    let mut colors = vec![0u32; n];
    let mut max_color = 0u32;
    for _ in 0..n {
        let mut pick = usize::MAX;
        let mut key = (0usize, 0usize);
        for v in 0..n {
            if colors[v] != 0 {
                continue;
            }
            let mut seen = 0u128;
            for u in g.neighbors(v) {
                if colors[u] != 0 {
                    seen |= 1u128 << ((colors[u] - 1) & 127);
                }
            }
            let cand = (seen.count_ones() as usize, g.degree(v));
            if pick == usize::MAX || cand > key {
                pick = v;
                key = cand;
            }
        }
        let mut color = 1u32;
        'fit: loop {
            for u in g.neighbors(pick) {
                if colors[u] == color {
                    color += 1;
                    continue 'fit;
                }
            }
            break;
        }
        colors[pick] = color;
        max_color = max_color.max(color);
    }
    Ok(Coloring::new(colors, max_color.max(u32::from(n > 0))))
}

/// Greedy maximal clique: grow from the highest-degree vertex, always
/// adding the lowest-degree candidate (ties by index). Used for the
/// chromatic lower bound and symmetry-breaking pins.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    if g.n() == 0 {
        return Vec::new();
    }
    let degrees: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let start = (0..g.n())
        .max_by_key(|&v| (degrees[v], std::cmp::Reverse(v)))
        .unwrap();
    grow_clique(g, start, &degrees)
}

fn grow_clique(g: &Graph, start: usize, degrees: &[usize]) -> Vec<usize> {
    let mut clique = vec![start];
    let mut cand: Vec<usize> = g.neighbors(start).filter(|&u| u != start).collect();
    while let Some(&u) = cand.iter().min_by_key(|&&u| (degrees[u], u)) {
        clique.push(u);
        cand.retain(|&w| w != u && g.has_edge(w, u));
    }
    clique.sort_unstable();
    clique
}

/// Registered cliques for the counting prune: one greedy maximal clique
/// grown from every vertex not yet covered, deduplicated.
fn clique_cover(g: &Graph) -> Vec<Vec<usize>> {
    let degrees: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut covered = vec![false; g.n()];
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for v in 0..g.n() {
        if covered[v] {
            continue;
        }
        let clique = grow_clique(g, v, &degrees);
        for &u in &clique {
            covered[u] = true;
        }
        if clique.len() >= 2 && seen.insert(clique.clone()) {
            out.push(clique);
        }
    }
    out
}

/// Exhaustive colouring-extension search with forward checking.
///
/// Decides whether `partial` (vertex, colour) pins extend to a proper
/// c-colouring of all of `g`. Branching follows the static
/// highest-degree-first order; singleton domains are propagated to a
/// fixpoint and a counting prune fires whenever the unassigned part of a
/// registered clique has fewer colours available than members.
pub fn extendable(
    g: &Graph,
    partial: &[(usize, u32)],
    c: u32,
    node_budget: u64,
) -> Result<Feasibility, SolverError> {
    if let Some(u) = g.first_loop() {
        return Err(SolverError::LoopForbidden(u));
    }
    if c > 128 {
        return Err(SolverError::TooManyColors { c });
    }
    let n = g.n();
    for &(v, color) in partial {
        if v >= n {
            return Err(SolverError::DomainMismatch { expected: n, got: v + 1 });
        }
        if color < 1 || color > c {
            return Err(SolverError::ColorOutOfRange { vertex: v, color, c });
        }
    }
    for (a, &(u, cu)) in partial.iter().enumerate() {
        for &(v, cv) in &partial[a + 1..] {
            let clash = (cu == cv && g.has_edge(u, v)) || (u == v && cu != cv);
            if clash {
                return Err(SolverError::InvalidPartial { u, v });
            }
        }
    }
    if n == 0 {
        return Ok(Feasibility::Feasible(Coloring::new(Vec::new(), c)));
    }
    if c == 0 {
        return Ok(Feasibility::Infeasible);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    let mut search = CspSearch {
        g,
        cliques: clique_cover(g),
        order,
        domains: vec![full_mask(c); n],
        color_of: vec![0u32; n],
        trail: Vec::new(),
        assign_trail: Vec::new(),
        nodes_left: node_budget,
    };
    let mut queue = Vec::new();
    for &(v, color) in partial {
        if search.color_of[v] == color {
            continue;
        }
        if search.domains[v] & color_bit(color) == 0 {
            return Ok(Feasibility::Infeasible);
        }
        if !search.assign(v, color, &mut queue) {
            return Ok(Feasibility::Infeasible);
        }
    }
    if !search.propagate(&mut queue) {
        return Ok(Feasibility::Infeasible);
    }
    Ok(search.run(c))
}

#[inline]
fn color_bit(color: u32) -> u128 {
    1u128 << (color - 1)
}

#[inline]
fn full_mask(c: u32) -> u128 {
    if c == 128 {
        u128::MAX
    } else {
        (1u128 << c) - 1
    }
}

struct CspSearch<'a> {
    g: &'a Graph,
    cliques: Vec<Vec<usize>>,
    order: Vec<usize>,
    domains: Vec<u128>,
    color_of: Vec<u32>,
    trail: Vec<(u32, u128)>,
    assign_trail: Vec<u32>,
    nodes_left: u64,
}

struct Frame {
    v: usize,
    remaining: u128,
    trail_mark: usize,
    assign_mark: usize,
}

impl<'a> CspSearch<'a> {
    fn assign(&mut self, v: usize, color: u32, queue: &mut Vec<usize>) -> bool {
        self.trail.push((v as u32, self.domains[v]));
        self.assign_trail.push(v as u32);
        self.color_of[v] = color;
        self.domains[v] = color_bit(color);
        let bit = color_bit(color);
        for u in self.g.neighbors(v) {
            if self.color_of[u] != 0 {
                if self.color_of[u] == color {
                    return false;
                }
                continue;
            }
            let dom = self.domains[u];
            if dom & bit != 0 {
                self.trail.push((u as u32, dom));
                let next = dom & !bit;
                self.domains[u] = next;
                if next == 0 {
                    return false;
                }
                if next.count_ones() == 1 {
                    queue.push(u);
                }
            }
        }
        true
    }

    fn propagate(&mut self, queue: &mut Vec<usize>) -> bool {
        while let Some(v) = queue.pop() {
            if self.color_of[v] != 0 {
                continue;
            }
            let dom = self.domains[v];
            debug_assert_eq!(dom.count_ones(), 1);
            let color = dom.trailing_zeros() + 1;
            if !self.assign(v, color, queue) {
                queue.clear();
                return false;
            }
        }
        // Counting prune: a clique cannot be finished if its unassigned
        // members jointly see fewer colours than their number.
        for clique in &self.cliques {
            let mut unassigned = 0u32;
            let mut union = 0u128;
            for &v in clique {
                if self.color_of[v] == 0 {
                    unassigned += 1;
                    union |= self.domains[v];
                }
            }
            if unassigned > union.count_ones() {
                return false;
            }
        }
        true
    }

    fn rewind(&mut self, trail_mark: usize, assign_mark: usize) {
        while self.assign_trail.len() > assign_mark {
            let v = self.assign_trail.pop().unwrap() as usize;
            self.color_of[v] = 0;
        }
        while self.trail.len() > trail_mark {
            let (v, dom) = self.trail.pop().unwrap();
            self.domains[v as usize] = dom;
        }
    }

    fn next_unassigned(&self) -> Option<usize> {
        self.order.iter().copied().find(|&v| self.color_of[v] == 0)
    }

    fn run(&mut self, c: u32) -> Feasibility {
        let mut frames: Vec<Frame> = Vec::new();
        let mut queue = Vec::new();
        loop {
            match self.next_unassigned() {
                None => {
                    return Feasibility::Feasible(Coloring::new(self.color_of.clone(), c));
                }
                Some(v) => {
                    if self.nodes_left == 0 {
                        return Feasibility::Unknown;
                    }
                    self.nodes_left -= 1;
                    frames.push(Frame {
                        v,
                        remaining: self.domains[v],
                        trail_mark: self.trail.len(),
                        assign_mark: self.assign_trail.len(),
                    });
                }
            }
            'descend: loop {
                let Some(frame) = frames.last_mut() else {
                    return Feasibility::Infeasible;
                };
                if frame.remaining == 0 {
                    self.rewind(frame.trail_mark, frame.assign_mark);
                    frames.pop();
                    continue 'descend;
                }
                let color = frame.remaining.trailing_zeros() + 1;
                frame.remaining &= frame.remaining - 1;
                let (v, tm, am) = (frame.v, frame.trail_mark, frame.assign_mark);
                self.rewind(tm, am);
                queue.clear();
                if self.assign(v, color, &mut queue) && self.propagate(&mut queue) {
                    break 'descend;
                }
            }
        }
    }
}

/// Exact chromatic number by branch and bound: greedy-clique lower bound,
/// DSATUR upper bound, then per-c feasibility with the clique pinned to
/// colours `1..=|Q|`.
pub fn chromatic_number(g: &Graph, node_budget: u64) -> Result<ChromaticResult, SolverError> {
    if let Some(u) = g.first_loop() {
        return Err(SolverError::LoopForbidden(u));
    }
    if g.n() == 0 {
        return Ok(ChromaticResult::Exact {
            chi: 0,
            witness: Coloring::new(Vec::new(), 0),
        });
    }
    let upper = greedy_coloring(g)?;
    let clique = greedy_clique(g);
    let lower = clique.len() as u32;
    if upper.num_colors > 128 {
        return Err(SolverError::TooManyColors { c: upper.num_colors });
    }
    let pins: Vec<(usize, u32)> = clique
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as u32 + 1))
        .collect();
    for c in lower..upper.num_colors {
        match extendable(g, &pins, c, node_budget)? {
            Feasibility::Feasible(witness) => return Ok(ChromaticResult::Exact { chi: c, witness }),
            Feasibility::Infeasible => {}
            Feasibility::Unknown => {
                return Ok(ChromaticResult::Unknown {
                    lower: c,
                    upper: upper.num_colors,
                });
            }
        }
    }
    Ok(ChromaticResult::Exact {
        chi: upper.num_colors,
        witness: upper,
    })
}

/// Exact maximum clique (Tomita-style branch and bound with a greedy
/// colouring bound over bitset candidate sets). Limited to 128 vertices.
pub fn max_clique(g: &Graph, node_budget: u64) -> Result<CountResult, SolverError> {
    if let Some(u) = g.first_loop() {
        return Err(SolverError::LoopForbidden(u));
    }
    let n = g.n();
    if n > 128 {
        return Err(SolverError::TooLarge { n, max: 128 });
    }
    if n == 0 {
        return Ok(CountResult::Exact { value: 0, witness: Vec::new() });
    }
    // Permute vertices by descending degree for tighter colour bounds.
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut adj = vec![0u128; n];
    for (i, &v) in perm.iter().enumerate() {
        for (j, &u) in perm.iter().enumerate() {
            if i != j && g.has_edge(v, u) {
                adj[i] |= 1u128 << j;
            }
        }
    }
    let mut bb = CliqueSearch {
        adj: &adj,
        best: 0,
        best_set: 0,
        nodes_left: node_budget,
        exhausted: false,
    };
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let root_bound = bb.color_bound_size(all);
    bb.expand(0, 0, all);
    let witness = |set: u128| -> Vec<usize> {
        let mut out: Vec<usize> = (0..n).filter(|&i| set >> i & 1 != 0).map(|i| perm[i]).collect();
        out.sort_unstable();
        out
    };
    if bb.exhausted {
        Ok(CountResult::Unknown {
            lower: bb.best,
            upper: root_bound,
        })
    } else {
        Ok(CountResult::Exact {
            value: bb.best,
            witness: witness(bb.best_set),
        })
    }
}

/// Exact independence number: maximum clique of the complement.
pub fn independence_number(g: &Graph, node_budget: u64) -> Result<CountResult, SolverError> {
    max_clique(&g.complement(), node_budget)
}

struct CliqueSearch<'a> {
    adj: &'a [u128],
    best: u32,
    best_set: u128,
    nodes_left: u64,
    exhausted: bool,
}

impl<'a> CliqueSearch<'a> {
    fn color_bound_size(&self, cand: u128) -> u32 {
        let mut rest = cand;
        let mut classes = 0u32;
        while rest != 0 {
            classes += 1;
            let mut avail = rest;
            while avail != 0 {
                let v = avail.trailing_zeros() as usize;
                let bit = 1u128 << v;
                avail &= !(self.adj[v] | bit);
                rest &= !bit;
            }
        }
        classes
    }

    /// Greedy colour classes over `cand`; returns vertices with their class
    /// number, class numbers nondecreasing.
    fn color_sort(&self, cand: u128) -> Vec<(usize, u32)> {
        let mut rest = cand;
        let mut out = Vec::with_capacity(cand.count_ones() as usize);
        let mut class = 0u32;
        while rest != 0 {
            class += 1;
            let mut avail = rest;
            while avail != 0 {
                let v = avail.trailing_zeros() as usize;
                let bit = 1u128 << v;
                out.push((v, class));
                avail &= !(self.adj[v] | bit);
                rest &= !bit;
            }
        }
        out
    }

    fn expand(&mut self, size: u32, current: u128, cand: u128) {
        if self.exhausted {
            return;
        }
        if cand == 0 {
            if size > self.best {
                self.best = size;
                self.best_set = current;
            }
            return;
        }
        if self.nodes_left == 0 {
            self.exhausted = true;
            return;
        }
        self.nodes_left -= 1;
        let colored = self.color_sort(cand);
        let mut cand = cand;
        for &(v, class) in colored.iter().rev() {
            if size + class <= self.best {
                return;
            }
            let bit = 1u128 << v;
            cand &= !bit;
            self.expand(size + 1, current | bit, cand & self.adj[v]);
            if self.exhausted {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, groetzsch, petersen};

    const BUDGET: u64 = 100_000_000;

    #[test]
    fn check_coloring_examples() {
        let c7 = cycle(7).unwrap();
        let good = Coloring::new(vec![1, 2, 1, 2, 1, 2, 3], 3);
        assert_eq!(check_coloring(&c7, &good).unwrap(), Properness::Proper);
        let k3 = complete(3).unwrap();
        let mono = Coloring::new(vec![1, 1, 1], 1);
        assert_eq!(
            check_coloring(&k3, &mono).unwrap(),
            Properness::Improper { u: 0, v: 1 }
        );
        let looped = crate::graph::path_with_loop(2).unwrap();
        assert_eq!(
            check_coloring(&looped, &Coloring::new(vec![1, 2, 3], 3)).unwrap(),
            Properness::Improper { u: 0, v: 0 }
        );
        assert!(matches!(
            check_coloring(&k3, &Coloring::new(vec![1, 2, 4], 3)),
            Err(SolverError::ColorOutOfRange { vertex: 2, color: 4, c: 3 })
        ));
    }

    #[test]
    fn greedy_coloring_is_proper() {
        for g in [cycle(7).unwrap(), petersen(), groetzsch(), complete(6).unwrap()] {
            let col = greedy_coloring(&g).unwrap();
            assert_eq!(check_coloring(&g, &col).unwrap(), Properness::Proper);
        }
    }

    #[test]
    fn chromatic_number_examples() {
        let cases = [
            (cycle(7).unwrap(), 3),
            (groetzsch(), 4),
            (petersen(), 3),
            (complete(6).unwrap(), 6),
            (cycle(6).unwrap(), 2),
        ];
        for (g, expected) in cases {
            match chromatic_number(&g, BUDGET).unwrap() {
                ChromaticResult::Exact { chi, witness } => {
                    assert_eq!(chi, expected);
                    assert_eq!(check_coloring(&g, &witness).unwrap(), Properness::Proper);
                }
                other => panic!("expected exact result, got {other:?}"),
            }
        }
    }

    #[test]
    fn extendable_examples() {
        let k3 = complete(3).unwrap();
        assert!(matches!(
            extendable(&k3, &[(0, 1), (1, 2)], 3, BUDGET).unwrap(),
            Feasibility::Feasible(_)
        ));
        assert_eq!(
            extendable(&k3, &[(0, 1), (1, 2)], 2, BUDGET).unwrap(),
            Feasibility::Infeasible
        );
        assert!(matches!(
            extendable(&k3, &[(0, 1), (1, 1)], 3, BUDGET),
            Err(SolverError::InvalidPartial { .. })
        ));
        // one vertex pinned to two colours is malformed, not infeasible
        assert!(matches!(
            extendable(&k3, &[(0, 1), (0, 2)], 3, BUDGET),
            Err(SolverError::InvalidPartial { .. })
        ));
        // a repeated identical pin is harmless
        assert!(matches!(
            extendable(&k3, &[(0, 1), (0, 1)], 3, BUDGET).unwrap(),
            Feasibility::Feasible(_)
        ));
    }

    #[test]
    fn extendable_monotone_in_c() {
        let g = groetzsch();
        let mut prev_feasible = false;
        for c in 1..=5 {
            let feasible = matches!(
                extendable(&g, &[], c, BUDGET).unwrap(),
                Feasibility::Feasible(_)
            );
            assert!(!prev_feasible || feasible, "feasibility must be monotone in c");
            prev_feasible = feasible;
        }
        assert!(prev_feasible);
    }

    #[test]
    fn chromatic_matches_smallest_extendable_c() {
        for g in [cycle(7).unwrap(), petersen(), groetzsch(), cycle(6).unwrap()] {
            let ChromaticResult::Exact { chi, .. } = chromatic_number(&g, BUDGET).unwrap() else {
                panic!("budget too small");
            };
            let smallest = (1..=chi)
                .find(|&c| {
                    matches!(
                        extendable(&g, &[], c, BUDGET).unwrap(),
                        Feasibility::Feasible(_)
                    )
                })
                .unwrap();
            assert_eq!(smallest, chi);
        }
    }

    #[test]
    fn independence_examples() {
        let cases = [
            (cycle(7).unwrap(), 3),
            (petersen(), 4),
            (complete(5).unwrap(), 1),
            (groetzsch(), 5),
        ];
        for (g, expected) in cases {
            match independence_number(&g, BUDGET).unwrap() {
                CountResult::Exact { value, witness } => {
                    assert_eq!(value, expected);
                    assert_eq!(witness.len(), expected as usize);
                    for (a, &u) in witness.iter().enumerate() {
                        for &v in &witness[a + 1..] {
                            assert!(!g.has_edge(u, v), "witness not independent");
                        }
                    }
                }
                other => panic!("expected exact result, got {other:?}"),
            }
        }
    }

    #[test]
    fn chi_lower_bounds_hold() {
        for g in [cycle(7).unwrap(), petersen(), groetzsch(), complete(6).unwrap()] {
            let ChromaticResult::Exact { chi, .. } = chromatic_number(&g, BUDGET).unwrap() else {
                panic!("budget too small");
            };
            let CountResult::Exact { value: alpha, .. } =
                independence_number(&g, BUDGET).unwrap()
            else {
                panic!("budget too small");
            };
            let n = g.n() as u32;
            assert!(chi >= n.div_ceil(alpha));
            assert!(chi >= greedy_clique(&g).len() as u32);
        }
    }

    #[test]
    fn budget_exhaustion_reports_unknown() {
        let g = groetzsch();
        assert_eq!(extendable(&g, &[], 3, 1).unwrap(), Feasibility::Unknown);
        assert!(matches!(
            chromatic_number(&g, 1).unwrap(),
            ChromaticResult::Unknown { .. }
        ));
    }

    #[test]
    fn rejects_loops() {
        let looped = crate::graph::path_with_loop(2).unwrap();
        assert!(matches!(
            chromatic_number(&looped, BUDGET),
            Err(SolverError::LoopForbidden(0))
        ));
        assert!(matches!(
            extendable(&looped, &[], 3, BUDGET),
            Err(SolverError::LoopForbidden(0))
        ));
    }
}
