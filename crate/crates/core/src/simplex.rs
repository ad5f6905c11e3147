//! Exact rational simplex for the independent-set covering LP.
//!
//! Solves `min Σ_j x_j` subject to `Σ_{j: v ∈ col_j} x_j ≥ 1` for every row
//! `v`, `x ≥ 0`, in exact `BigRational` arithmetic: two-phase full tableau
//! with Bland's rule, so the solve terminates and the optimum is exact.
//! The dual vector (one value per row) is read off the surplus columns of
//! the final tableau; callers re-verify both solutions independently.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical `num/den` serialization; integers render as `n/1`.
pub fn rat_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("row {0} is not covered by any column; the LP is infeasible")]
    UncoveredRow(usize),
    #[error("column {col} references row {row}, but there are only {rows} rows")]
    BadColumn { col: usize, row: usize, rows: usize },
    #[error("LP is unbounded")]
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct CoveringSolution {
    pub objective: Rat,
    /// Weight per input column.
    pub primal: Vec<Rat>,
    /// Dual value per row (a fractional clique when rows are vertices).
    pub dual: Vec<Rat>,
}

/// Solves the covering LP over 0/1 columns given as row-index lists.
pub fn solve_covering(num_rows: usize, columns: &[Vec<usize>]) -> Result<CoveringSolution, LpError> {
    for (j, col) in columns.iter().enumerate() {
        for &v in col {
            if v >= num_rows {
                return Err(LpError::BadColumn { col: j, row: v, rows: num_rows });
            }
        }
    }
    let mut covered = vec![false; num_rows];
    for col in columns {
        for &v in col {
            covered[v] = true;
        }
    }
    if let Some(v) = covered.iter().position(|&c| !c) {
        return Err(LpError::UncoveredRow(v));
    }
    if num_rows == 0 {
        return Ok(CoveringSolution {
            objective: Rat::zero(),
            primal: vec![Rat::zero(); columns.len()],
            dual: Vec::new(),
        });
    }

    let ncols = columns.len();
    // Column layout: [set columns | surplus | artificial].
    let surplus0 = ncols;
    let art0 = ncols + num_rows;
    let total = ncols + 2 * num_rows;

    let mut t = vec![vec![Rat::zero(); total]; num_rows];
    let mut rhs = vec![Rat::one(); num_rows];
    for (j, col) in columns.iter().enumerate() {
        for &v in col {
            t[v][j] = Rat::one();
        }
    }
    for v in 0..num_rows {
        t[v][surplus0 + v] = -Rat::one();
        t[v][art0 + v] = Rat::one();
    }
    let mut basis: Vec<usize> = (0..num_rows).map(|v| art0 + v).collect();

    // Phase 1: minimize the artificial sum. With the artificial basis,
    // reduced costs are c_j minus the column sum.
    let mut obj: Vec<Rat> = (0..total)
        .map(|j| {
            let cost = if j >= art0 { Rat::one() } else { Rat::zero() };
            let col_sum: Rat = (0..num_rows).map(|i| t[i][j].clone()).sum();
            cost - col_sum
        })
        .collect();
    let mut obj_val: Rat = -rhs.iter().cloned().sum::<Rat>();
    pivot_to_optimum(&mut t, &mut rhs, &mut basis, &mut obj, &mut obj_val, total)?;
    debug_assert!(obj_val.is_zero(), "covering LP must be phase-1 feasible");

    // Drive any degenerate artificials out of the basis where possible.
    for i in 0..num_rows {
        if basis[i] >= art0 {
            if let Some(j) = (0..art0).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut rhs, &mut basis, &mut obj, &mut obj_val, i, j);
            }
        }
    }

    // Phase 2: original objective (unit cost per set column). Artificials
    // are barred from entering.
    let cost = |j: usize| -> Rat {
        if j < ncols {
            Rat::one()
        } else {
            Rat::zero()
        }
    };
    for j in 0..total {
        let mut reduced = cost(j);
        for i in 0..num_rows {
            reduced -= cost(basis[i]) * &t[i][j];
        }
        obj[j] = reduced;
    }
    // The objective cell carries -z so the pivot update is uniform.
    obj_val = -(0..num_rows).map(|i| cost(basis[i]) * &rhs[i]).sum::<Rat>();
    pivot_to_optimum(&mut t, &mut rhs, &mut basis, &mut obj, &mut obj_val, art0)?;

    let mut primal = vec![Rat::zero(); ncols];
    for (i, &b) in basis.iter().enumerate() {
        if b < ncols {
            primal[b] = rhs[i].clone();
        }
    }
    let dual: Vec<Rat> = (0..num_rows).map(|v| obj[surplus0 + v].clone()).collect();
    Ok(CoveringSolution {
        objective: -obj_val,
        primal,
        dual,
    })
}

/// Bland's rule: entering column = lowest index with a negative reduced
/// cost; leaving row = lexicographically smallest basic variable among the
/// minimum ratios.
fn pivot_to_optimum(
    t: &mut [Vec<Rat>],
    rhs: &mut [Rat],
    basis: &mut [usize],
    obj: &mut [Rat],
    obj_val: &mut Rat,
    enter_limit: usize,
) -> Result<(), LpError> {
    loop {
        let Some(enter) = (0..enter_limit).find(|&j| obj[j].is_negative()) else {
            return Ok(());
        };
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..t.len() {
            if t[i][enter].is_positive() {
                let ratio = &rhs[i] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = leave else {
            return Err(LpError::Unbounded);
        };
        pivot(t, rhs, basis, obj, obj_val, row, enter);
    }
}

fn pivot(
    t: &mut [Vec<Rat>],
    rhs: &mut [Rat],
    basis: &mut [usize],
    obj: &mut [Rat],
    obj_val: &mut Rat,
    row: usize,
    col: usize,
) {
    let inv = t[row][col].recip();
    for x in t[row].iter_mut() {
        *x *= &inv;
    }
    rhs[row] *= &inv;
    let pivot_row = t[row].clone();
    let pivot_rhs = rhs[row].clone();
    for i in 0..t.len() {
        if i == row || t[i][col].is_zero() {
            continue;
        }
        let factor = t[i][col].clone();
        for (x, p) in t[i].iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *x -= &factor * p;
            }
        }
        rhs[i] -= &factor * &pivot_rhs;
    }
    if !obj[col].is_zero() {
        let factor = obj[col].clone();
        for (x, p) in obj.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *x -= &factor * p;
            }
        }
        *obj_val -= &factor * &pivot_rhs;
    }
    basis[row] = col;
}
