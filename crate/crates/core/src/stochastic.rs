//! Discrete random variables, AV@R, second-order dominance and the lower
//! C-distribution function with its first-order dominance relation.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::error::StochasticError;
use crate::family::{FamilyKind, Member, ScalarFamily};
use crate::linalg::dot;

const PROB_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscreteRV {
    pub atoms: Vec<Vec<f64>>,
    pub probs: Vec<f64>,
}

impl DiscreteRV {
    pub fn new(atoms: Vec<Vec<f64>>, probs: Vec<f64>) -> Result<Self, StochasticError> {
        if atoms.is_empty() {
            return Err(StochasticError::NoAtoms);
        }
        if atoms.len() != probs.len() {
            return Err(StochasticError::Length { atoms: atoms.len(), probs: probs.len() });
        }
        let d = atoms[0].len();
        if d == 0 {
            return Err(StochasticError::Dimension { expected: 1, found: 0 });
        }
        if let Some(a) = atoms.iter().find(|a| a.len() != d) {
            return Err(StochasticError::Dimension { expected: d, found: a.len() });
        }
        let sum: f64 = probs.iter().sum();
        if probs.iter().any(|p| *p < 0.0 || !p.is_finite()) || (sum - 1.0).abs() > PROB_TOL {
            return Err(StochasticError::Probabilities(sum));
        }
        Ok(DiscreteRV { atoms, probs })
    }

    pub fn scalar(values: &[f64], probs: &[f64]) -> Result<Self, StochasticError> {
        DiscreteRV::new(values.iter().map(|v| vec![*v]).collect(), probs.to_vec())
    }

    pub fn uniform(atoms: Vec<Vec<f64>>) -> Result<Self, StochasticError> {
        let n = atoms.len();
        DiscreteRV::new(atoms, vec![1.0 / n.max(1) as f64; n])
    }

    pub fn uniform_scalar(values: &[f64]) -> Result<Self, StochasticError> {
        DiscreteRV::uniform(values.iter().map(|v| vec![*v]).collect())
    }

    /// Value `a` with probability `p`, `b` with probability `1 − p`.
    pub fn two_point(a: Vec<f64>, b: Vec<f64>, p: f64) -> Result<Self, StochasticError> {
        DiscreteRV::new(vec![a, b], vec![p, 1.0 - p])
    }

    pub fn constant(c: Vec<f64>) -> Self {
        DiscreteRV { atoms: vec![c], probs: vec![1.0] }
    }

    pub fn dim(&self) -> usize {
        self.atoms[0].len()
    }

    fn scalar_values(&self) -> Result<Vec<f64>, StochasticError> {
        if self.dim() != 1 {
            return Err(StochasticError::Dimension { expected: 1, found: self.dim() });
        }
        Ok(self.atoms.iter().map(|a| a[0]).collect())
    }

    pub fn expectation(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.dim()];
        for (a, p) in self.atoms.iter().zip(&self.probs) {
            for (mi, ai) in m.iter_mut().zip(a) {
                *mi += p * ai;
            }
        }
        m
    }
}

fn check_alpha(alpha: f64) -> Result<(), StochasticError> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(StochasticError::Alpha(alpha))
    }
}

/// `inf_r (1/α) E[(r − x)⁺] − r` over atom candidates.
///
/// The objective is convex and piecewise linear in `r` with kinks at the atoms;
/// its slope is `−1` left of every atom and `1/α − 1 ≥ 0` right of every atom,
/// so the minimum is attained at an atom.
pub fn avar_on_points(values: &[f64], probs: &[f64], alpha: f64) -> f64 {
    values
        .iter()
        .map(|&r| {
            let shortfall: f64 = values.iter().zip(probs).map(|(x, p)| p * (r - x).max(0.0)).sum();
            shortfall / alpha - r
        })
        .fold(f64::INFINITY, f64::min)
}

pub fn avar(x: &DiscreteRV, alpha: f64) -> Result<f64, StochasticError> {
    check_alpha(alpha)?;
    Ok(avar_on_points(&x.scalar_values()?, &x.probs, alpha))
}

/// Cumulative probabilities of the sorted atoms, without the leading zero.
fn breakpoints(x: &DiscreteRV) -> Vec<f64> {
    let mut pairs: Vec<(f64, f64)> = x.atoms.iter().map(|a| a[0]).zip(x.probs.iter().copied()).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut acc = 0.0;
    pairs
        .iter()
        .map(|(_, p)| {
            acc += p;
            acc
        })
        .collect()
}

/// Merged AV@R breakpoints of both variables, clamped into `(0, 1]`.
pub fn ssd_alpha_breakpoints(x: &DiscreteRV, y: &DiscreteRV) -> Vec<f64> {
    let mut a: Vec<f64> = breakpoints(x).into_iter().chain(breakpoints(y)).map(|v| v.min(1.0)).filter(|v| *v > 0.0).collect();
    a.push(1.0);
    a.sort_by(f64::total_cmp);
    a.dedup_by(|u, v| (*u - *v).abs() <= PROB_TOL);
    a
}

/// `x ⪯_SSD y`: `y` dominates, `AV@R_α(y) ≤ AV@R_α(x)` for all `α ∈ (0, 1]`.
///
/// `α ↦ α AV@R_α` is piecewise linear with kinks at the cumulative
/// probabilities, so the merged breakpoints decide the quantifier exactly.
pub fn ssd_leq(x: &DiscreteRV, y: &DiscreteRV, tol: f64) -> Result<bool, StochasticError> {
    ssd_leq_on_grid(x, y, &ssd_alpha_breakpoints(x, y), tol)
}

/// The same test restricted to a user-supplied α grid (sampled evidence).
pub fn ssd_leq_on_grid(x: &DiscreteRV, y: &DiscreteRV, alphas: &[f64], tol: f64) -> Result<bool, StochasticError> {
    for &a in alphas {
        if avar(y, a)? > avar(x, a)? + tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Shortfall characterization: `E[(t − y)⁺] ≤ E[(t − x)⁺]` at every merged atom.
pub fn ssd_oracle(x: &DiscreteRV, y: &DiscreteRV, tol: f64) -> Result<bool, StochasticError> {
    let xs = x.scalar_values()?;
    let ys = y.scalar_values()?;
    let lpm = |vals: &[f64], probs: &[f64], t: f64| -> f64 { vals.iter().zip(probs).map(|(v, p)| p * (t - v).max(0.0)).sum() };
    Ok(xs.iter().chain(&ys).all(|&t| lpm(&ys, &y.probs, t) <= lpm(&xs, &x.probs, t) + tol))
}

/// Members `AV@R_α` acting on points of `R^N`, read as atom values of a random
/// variable with the fixed state probabilities.
pub fn avar_family(alphas: &[f64], probs: &[f64]) -> Result<ScalarFamily, StochasticError> {
    for &a in alphas {
        check_alpha(a)?;
    }
    let sum: f64 = probs.iter().sum();
    if probs.is_empty() || (sum - 1.0).abs() > PROB_TOL || probs.iter().any(|p| *p < 0.0) {
        return Err(StochasticError::Probabilities(sum));
    }
    let shared = Arc::new(probs.to_vec());
    let members = alphas.iter().map(|&alpha| Member::Avar { alpha, probs: Arc::clone(&shared) }).collect();
    // ψ(x) ≤ ψ(y) for all members means y ⪯_SSD x: the family orders by risk,
    // the dominating variable being the smaller one.
    Ok(ScalarFamily::new(FamilyKind::Avar, probs.len(), members).with_meta("orientation", "x <= y iff x dominates y (ssd)"))
}

fn check_directions(cone: &Cone, w_grid: &[Vec<f64>]) -> Result<(), StochasticError> {
    if w_grid.is_empty() || w_grid.iter().any(|w| w.len() != cone.d || dot(w, w) == 0.0 || !cone.dual_contains(w, 1e-9)) {
        return Err(StochasticError::DirectionGrid);
    }
    Ok(())
}

/// `F_{x,C}(z) = min_w P(wᵀx ≤ wᵀz)` over the direction grid.
pub fn lower_c_distribution(x: &DiscreteRV, cone: &Cone, z: &[f64], w_grid: &[Vec<f64>], tol: f64) -> Result<f64, StochasticError> {
    if z.len() != x.dim() || cone.d != x.dim() {
        return Err(StochasticError::Dimension { expected: x.dim(), found: z.len() });
    }
    check_directions(cone, w_grid)?;
    Ok(cdf_min(&x.atoms, &x.probs, z, w_grid, tol))
}

fn cdf_min(atoms: &[Vec<f64>], probs: &[f64], z: &[f64], w_grid: &[Vec<f64>], tol: f64) -> f64 {
    w_grid
        .iter()
        .map(|w| {
            let wz = dot(w, z);
            atoms.iter().zip(probs).filter(|(a, _)| dot(w, a) <= wz + tol).map(|(_, p)| p).sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min)
}

/// `F_{x,C}(z)` for `x` given state-major as `probs.len()` blocks of `z.len()`.
pub fn c_distribution_on_points(flat: &[f64], probs: &[f64], z: &[f64], w_grid: &[Vec<f64>], tol: f64) -> f64 {
    let d = z.len();
    let atoms: Vec<Vec<f64>> = flat.chunks(d).map(<[f64]>::to_vec).collect();
    cdf_min(&atoms, probs, z, w_grid, tol)
}

pub fn flatten(x: &DiscreteRV) -> Vec<f64> {
    x.atoms.iter().flatten().copied().collect()
}

/// Members `ψ_z(x) = F_{x,C}(z)` for `z` in the threshold grid.
pub fn c_distribution_family(
    cone: &Cone,
    z_grid: &[Vec<f64>],
    w_grid: &[Vec<f64>],
    probs: &[f64],
    tol: f64,
) -> Result<ScalarFamily, StochasticError> {
    check_directions(cone, w_grid)?;
    let dirs = Arc::new(w_grid.to_vec());
    let p = Arc::new(probs.to_vec());
    let members =
        z_grid.iter().map(|z| Member::CDistribution { z: z.clone(), directions: Arc::clone(&dirs), probs: Arc::clone(&p), tol }).collect();
    Ok(ScalarFamily::new(FamilyKind::CDistribution, probs.len() * cone.d, members)
        .with_meta("orientation", "x <= y iff F_x <= F_y on the grid"))
}

/// Outcome of the grid-based dominance test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FsdVerdict {
    /// `F_{x,C}(z) ≤ F_{y,C}(z)` at every grid threshold, i.e. `y ⪰ x`.
    pub holds: bool,
    /// Exact for `d = 1` when the grid covers the merged atoms; sampled otherwise.
    pub exact: bool,
    pub z_points: usize,
    pub w_points: usize,
    pub witness: Option<Vec<f64>>,
}

pub fn fsd_leq(
    x: &DiscreteRV,
    y: &DiscreteRV,
    cone: &Cone,
    z_grid: &[Vec<f64>],
    w_grid: &[Vec<f64>],
    tol: f64,
) -> Result<FsdVerdict, StochasticError> {
    if x.dim() != y.dim() {
        return Err(StochasticError::Dimension { expected: x.dim(), found: y.dim() });
    }
    check_directions(cone, w_grid)?;
    let mut witness = None;
    for z in z_grid {
        let fx = lower_c_distribution(x, cone, z, w_grid, tol)?;
        let fy = lower_c_distribution(y, cone, z, w_grid, tol)?;
        if fx > fy + tol {
            witness = Some(z.clone());
            break;
        }
    }
    let exact = x.dim() == 1 && {
        let covered = |v: f64| z_grid.iter().any(|z| (z[0] - v).abs() <= tol);
        x.atoms.iter().chain(&y.atoms).all(|a| covered(a[0]))
    };
    Ok(FsdVerdict { holds: witness.is_none(), exact, z_points: z_grid.len(), w_points: w_grid.len(), witness })
}

/// Merged atom values as a threshold grid in one dimension.
pub fn merged_atoms_1d(x: &DiscreteRV, y: &DiscreteRV) -> Vec<Vec<f64>> {
    let mut v: Vec<f64> = x.atoms.iter().chain(&y.atoms).map(|a| a[0]).collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v.into_iter().map(|a| vec![a]).collect()
}
