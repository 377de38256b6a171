//! Thin wrapper over `minilp` for the small programs the lattice needs.

use minilp::{ComparisonOp, Error as LpError, OptimizationDirection, Problem};

use crate::linalg::Halfspace;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(f64),
    Unbounded,
    Infeasible,
}

/// `min cᵀz` subject to `aⱼᵀz ≥ bⱼ`, `z` free.
pub fn minimize(c: &[f64], hs: &[Halfspace]) -> LpOutcome {
    let mut p = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<_> = c.iter().map(|&ci| p.add_var(ci, (f64::NEG_INFINITY, f64::INFINITY))).collect();
    for h in hs {
        let expr: Vec<_> = vars.iter().zip(&h.a).map(|(&v, &a)| (v, a)).collect();
        p.add_constraint(expr.as_slice(), ComparisonOp::Ge, h.b);
    }
    match p.solve() {
        Ok(sol) if sol.objective() == f64::NEG_INFINITY => LpOutcome::Unbounded,
        Ok(sol) => LpOutcome::Optimal(sol.objective()),
        Err(LpError::Unbounded) => LpOutcome::Unbounded,
        Err(LpError::Infeasible) => LpOutcome::Infeasible,
    }
}

/// Whether `{z : aⱼᵀz > bⱼ ∀j}` is nonempty: maximize a common slack `s ≤ 1`.
pub fn strictly_feasible(hs: &[Halfspace], d: usize, tol: f64) -> bool {
    if hs.is_empty() {
        return true;
    }
    let mut p = Problem::new(OptimizationDirection::Maximize);
    let vars: Vec<_> = (0..d).map(|_| p.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY))).collect();
    let s = p.add_var(1.0, (f64::NEG_INFINITY, 1.0));
    for h in hs {
        let mut expr: Vec<_> = vars.iter().zip(&h.a).map(|(&v, &a)| (v, a)).collect();
        expr.push((s, -1.0));
        p.add_constraint(expr.as_slice(), ComparisonOp::Ge, h.b);
    }
    match p.solve() {
        Ok(sol) => sol.objective() > tol,
        Err(_) => false,
    }
}
