//! DIMACS CNF export of proper-colouring feasibility, the escape hatch
//! for cross-checking `χ(H) > c` with an external SAT solver.
//!
//! Variable `(v-1)·c + k` (1-based) asserts that vertex `v` gets colour
//! `k`. Clauses: at-least-one colour per vertex, a conflict clause per
//! edge per colour, and a unit clause per pinned vertex. The formula is
//! satisfiable iff the pins extend to a proper c-colouring.

use crate::counterexample::{HGraph, HVertex};
use crate::graph::Graph;
use std::io::{self, Write};

pub fn write_coloring_cnf<W: Write>(
    g: &Graph,
    c: u32,
    pins: &[(usize, u32)],
    mut w: W,
) -> io::Result<()> {
    let n = g.n();
    let c = c as usize;
    let var = |v: usize, k: usize| -> usize { v * c + k };
    let num_vars = n * c;
    let num_clauses = n + g.num_edges() * c + pins.len();
    writeln!(w, "c proper {c}-colouring feasibility, {n} vertices")?;
    writeln!(w, "c var (v-1)*{c}+k <=> vertex v takes colour k (1-based)")?;
    writeln!(w, "p cnf {num_vars} {num_clauses}")?;
    for v in 0..n {
        for k in 1..=c {
            write!(w, "{} ", var(v, k))?;
        }
        writeln!(w, "0")?;
    }
    for (u, v) in g.edges() {
        for k in 1..=c {
            writeln!(w, "-{} -{} 0", var(u, k), var(v, k))?;
        }
    }
    for &(v, k) in pins {
        writeln!(w, "{} 0", var(v, k as usize))?;
    }
    Ok(())
}

/// The `χ(H) ≤ c` instance with the g-clique pinned to colours `1..=c`.
pub fn write_h_feasibility_cnf<W: Write>(h: &HGraph, c: u32, w: W) -> io::Result<()> {
    let pins: Vec<(usize, u32)> = (1..=c as usize)
        .map(|i| (h.index_of(HVertex::G(i)), i as u32))
        .collect();
    write_coloring_cnf(&h.graph, c, &pins, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete;

    #[test]
    fn k3_two_colors() {
        let mut buf = Vec::new();
        write_coloring_cnf(&complete(3).unwrap(), 2, &[(0, 1)], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("p cnf 6 10"));
        // vertex 1 pinned to colour 1 -> unit clause on variable 1
        assert!(text.lines().any(|l| l == "1 0"));
        assert!(text.lines().any(|l| l == "-1 -3 0"));
        let clause_lines = text.lines().filter(|l| l.ends_with(" 0")).count();
        assert_eq!(clause_lines, 10);
    }

    #[test]
    fn h_instance_counts() {
        let params =
            crate::counterexample::Params::validate(crate::graph::cycle(7).unwrap(), 3, None)
                .unwrap();
        let h = crate::counterexample::build_h(&params);
        let mut buf = Vec::new();
        write_h_feasibility_cnf(&h, params.c(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        // 89*11 vars; 89 + 731*11 + 11 clauses
        assert!(text.contains("p cnf 979 8141"));
    }
}
