//! Fixed workloads shared by the benchmarks.

use psiset_core::scenarios::{builtin_problems, BuiltinParams};
use psiset_core::solver::SetValuedProblem;
use psiset_core::{Cone, DiscreteRV, VectorProblem};

/// The first problem of a builtin at grid resolution `grid`.
pub fn builtin(name: &str, grid: Option<usize>) -> SetValuedProblem {
    builtin_problems(name, &BuiltinParams { grid, ..Default::default() }).expect("builtin exists").remove(0)
}

/// A convex front `(x, (1 − x)²)` on `n + 1` points of `[0, 1]`.
pub fn convex_front(n: usize) -> VectorProblem {
    let s = (0..=n).map(|k| vec![k as f64 / n as f64]).collect();
    VectorProblem::from_fn("front", s, |x| vec![x[0], (1.0 - x[0]).powi(2)], Cone::orthant(2), vec![1.0, 1.0], true).expect("valid front")
}

/// Two scalar rvs with `n` atoms each on a deterministic pattern.
pub fn rv_pair(n: usize) -> (DiscreteRV, DiscreteRV) {
    let xs: Vec<f64> = (0..n).map(|i| ((i * 7) % n) as f64 / n as f64).collect();
    let ys: Vec<f64> = (0..n).map(|i| ((i * 5 + 3) % n) as f64 / n as f64 + 0.01).collect();
    (DiscreteRV::uniform_scalar(&xs).expect("atoms"), DiscreteRV::uniform_scalar(&ys).expect("atoms"))
}
