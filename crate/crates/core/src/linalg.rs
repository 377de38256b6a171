//! Small dense helpers: dot products, projections onto polyhedra.

use nalgebra::{DMatrix, DVector};

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

/// Orthonormal basis of `v⊥` by Gram-Schmidt over the standard basis.
pub fn orthogonal_complement(v: &[f64]) -> Vec<Vec<f64>> {
    let d = v.len();
    let n = norm(v);
    let mut basis: Vec<Vec<f64>> = Vec::new();
    if n > 0.0 {
        basis.push(v.iter().map(|x| x / n).collect());
    }
    let mut out = Vec::new();
    for i in 0..d {
        let mut e = vec![0.0; d];
        e[i] = 1.0;
        for b in &basis {
            let c = dot(&e, b);
            for (x, y) in e.iter_mut().zip(b) {
                *x -= c * y;
            }
        }
        let m = norm(&e);
        if m > 1e-8 {
            let u: Vec<f64> = e.iter().map(|x| x / m).collect();
            basis.push(u.clone());
            out.push(u);
        }
        if out.len() + usize::from(n > 0.0) == d {
            break;
        }
    }
    out
}

/// Halfspace `{z : aᵀz ≥ b}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Halfspace {
    pub a: Vec<f64>,
    pub b: f64,
}

impl Halfspace {
    pub fn holds(&self, z: &[f64], tol: f64) -> bool {
        dot(&self.a, z) >= self.b - tol
    }
}

/// Euclidean projection of `y` onto the affine set `{aⱼᵀz = bⱼ}`; `None` when
/// the rows are (numerically) dependent.
fn project_affine(y: &[f64], rows: &[&Halfspace]) -> Option<Vec<f64>> {
    let d = y.len();
    let k = rows.len();
    let a = DMatrix::from_fn(k, d, |i, j| rows[i].a[j]);
    let gram = &a * a.transpose();
    let lu = gram.clone().lu();
    let det = lu.determinant();
    let scale: f64 = rows.iter().map(|r| dot(&r.a, &r.a)).product();
    if det.abs() <= 1e-12 * scale.max(1.0) {
        return None;
    }
    let yv = DVector::from_column_slice(y);
    let resid = &a * &yv - DVector::from_iterator(k, rows.iter().map(|r| r.b));
    let lambda = lu.solve(&resid)?;
    let p = yv - a.transpose() * lambda;
    Some(p.iter().copied().collect())
}

/// Distance from `y` to `{z : aⱼᵀz ≥ bⱼ ∀j}`; `None` if the polyhedron is empty.
///
/// Enumerates every active set of at most `d` independent constraints. The
/// projection is the foot point of one of them (KKT plus Carathéodory), so the
/// minimum over feasible candidates is exact.
pub fn distance_to_polyhedron(y: &[f64], hs: &[Halfspace], tol: f64) -> Option<f64> {
    if hs.iter().all(|h| h.holds(y, tol)) {
        return Some(0.0);
    }
    let d = y.len();
    let m = hs.len();
    let mut best: Option<f64> = None;
    let mut idx: Vec<usize> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn rec(start: usize, idx: &mut Vec<usize>, m: usize, d: usize, y: &[f64], hs: &[Halfspace], tol: f64, best: &mut Option<f64>) {
        if !idx.is_empty() {
            let rows: Vec<&Halfspace> = idx.iter().map(|&i| &hs[i]).collect();
            if let Some(p) = project_affine(y, &rows) {
                if hs.iter().all(|h| h.holds(&p, tol)) {
                    let dd = dist(y, &p);
                    if best.is_none_or(|b| dd < b) {
                        *best = Some(dd);
                    }
                }
            } else {
                return;
            }
        }
        if idx.len() == d {
            return;
        }
        for i in start..m {
            idx.push(i);
            rec(i + 1, idx, m, d, y, hs, tol, best);
            idx.pop();
        }
    }
    rec(0, &mut idx, m, d, y, hs, tol, &mut best);
    best
}
