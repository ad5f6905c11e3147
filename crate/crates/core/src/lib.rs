//! Construction and mechanical verification of small counterexamples to
//! Hedetniemi's conjecture.
//!
//! The library builds the two graphs of the refutation — `G = F[K_q]` and the
//! four-layer gadget graph `H` — from a seed graph `F` of odd girth 7, and
//! verifies every claim that is checkable by machine:
//!
//! * `H` embeds into the exponential graph `K_c^G`, hence `χ(G × H) ≤ c`
//!   ([`verifier::check_embedding`]),
//! * `χ(H) > c` by exhaustive search under clique symmetry breaking
//!   ([`verifier::check_h_lower`]),
//! * `χ(G) > c` via an exact rational bound on the fractional chromatic
//!   number of `F` ([`verifier::check_g_lower`]).
//!
//! Supporting machinery: dense bitset graphs with tensor / lexicographic /
//! generalized Mycielski constructions ([`graph`]), exact combinatorial
//! solvers ([`solvers`]), the fractional chromatic number by exact rational
//! LP over independent sets ([`fractional`]), and the exponential-graph
//! adjacency oracle ([`exponential`]).

#![forbid(unsafe_code)]

pub mod cnf;
pub mod counterexample;
pub mod dimacs;
pub mod exponential;
pub mod fractional;
pub mod graph;
pub mod simplex;
pub mod solvers;
pub mod verifier;

pub use graph::Graph;
