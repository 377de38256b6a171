//! Vector problems, their set-valued C-extensions and approximate weak
//! efficiency, used as independent oracles for the set-valued solver.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::error::{FamilyError, SolverError};
use crate::families::{linear_family, translative_family, TranslativeSpec};
use crate::family::ScalarFamily;
use crate::lattice::PointCloudSet;
use crate::linalg::{axpy, dist, dot, sub, Halfspace};
use crate::lp::{minimize, LpOutcome};
use crate::solver::{min_set, Mode, SetValue, SetValuedProblem};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorProblem {
    pub name: String,
    /// Decision grid `S`.
    pub s: Vec<Vec<f64>>,
    /// Image `F(x)` for each point of `S`.
    pub f: Vec<Vec<f64>>,
    pub cone: Cone,
    pub e: Vec<f64>,
    /// Asserted by the author; see [`midpoint_convexity_violations`].
    pub convex: bool,
}

impl VectorProblem {
    pub fn new(name: &str, s: Vec<Vec<f64>>, f: Vec<Vec<f64>>, cone: Cone, e: Vec<f64>, convex: bool) -> Result<Self, SolverError> {
        if s.len() != f.len() || s.is_empty() {
            return Err(SolverError::Malformed("S and F must be nonempty and of equal length".into()));
        }
        if f.iter().any(|z| z.len() != cone.d) || e.len() != cone.d {
            return Err(SolverError::Malformed("image dimension differs from the cone".into()));
        }
        if cone.is_solid() && !cone.contains_interior(&e, crate::cone::DEFAULT_TOL) {
            return Err(SolverError::Malformed("e must lie in int C".into()));
        }
        Ok(VectorProblem { name: name.to_string(), s, f, cone, e, convex })
    }

    pub fn from_fn(
        name: &str,
        s: Vec<Vec<f64>>,
        map: impl Fn(&[f64]) -> Vec<f64>,
        cone: Cone,
        e: Vec<f64>,
        convex: bool,
    ) -> Result<Self, SolverError> {
        let f = s.iter().map(|x| map(x)).collect();
        VectorProblem::new(name, s, f, cone, e, convex)
    }
}

/// `f(x) = {F(x)} + C` on `S`.
pub fn c_extend(vp: &VectorProblem, fam: &ScalarFamily) -> Result<SetValuedProblem, SolverError> {
    let values = vp.f.iter().map(|z| SetValue::Cloud(PointCloudSet::with_cone(vec![z.clone()], vp.cone.clone()))).collect();
    SetValuedProblem::new(&vp.name, vp.s.clone(), values, fam.clone())
}

/// `wEff_{εe}(F, S)`, by the literal double loop.
pub fn weff(vp: &VectorProblem, eps: f64) -> Result<Vec<usize>, SolverError> {
    if !vp.cone.is_solid() {
        return Err(SolverError::Malformed("int C is empty".into()));
    }
    if eps.is_nan() || eps < 0.0 {
        return Err(SolverError::NegativeEpsilon(eps));
    }
    let tol = crate::cone::DEFAULT_TOL;
    let mut out = Vec::new();
    for (xb, fb) in vp.f.iter().enumerate() {
        let shifted = axpy(fb, -eps, &vp.e);
        // F(x) ∈ F(x̄) − εe − int C  ⇔  F(x̄) − εe − F(x) ∈ int C
        let dominated = vp.f.iter().any(|fx| vp.cone.contains_interior(&sub(&shifted, fx), tol));
        if !dominated {
            out.push(xb);
        }
    }
    Ok(out)
}

/// `wEff_{εe}` against `conv F[S] + C` instead of `F[S] + C`.
///
/// For a convex `F` that is affine between neighbouring grid points this hull
/// is the image set `F[S] + C` of the underlying continuous problem, so the
/// result is that problem's ε-weak efficiency restricted to the grid. Each
/// point is one LP: maximize `s` with `wⱼᵀ(F(x̄) − εe − Σλᵢ F(xᵢ)) ≥ s`, `λ` in the
/// simplex; `x̄` is dominated iff `s* > 0`.
pub fn weff_convex_hull(vp: &VectorProblem, eps: f64) -> Result<Vec<usize>, SolverError> {
    if !vp.cone.is_solid() {
        return Err(SolverError::Malformed("int C is empty".into()));
    }
    if eps.is_nan() || eps < 0.0 {
        return Err(SolverError::NegativeEpsilon(eps));
    }
    let n = vp.f.len();
    let unit = |i: usize| -> Vec<f64> {
        let mut a = vec![0.0; n + 1];
        a[i] = 1.0;
        a
    };
    let mut base = Vec::new();
    for i in 0..n {
        base.push(Halfspace { a: unit(i), b: 0.0 });
    }
    let mut sum = vec![1.0; n + 1];
    sum[n] = 0.0;
    base.push(Halfspace { a: sum.clone(), b: 1.0 });
    base.push(Halfspace { a: sum.iter().map(|v| -v).collect(), b: -1.0 });
    base.push(Halfspace { a: unit(n).iter().map(|v| -v).collect(), b: -1.0 });
    let mut c = vec![0.0; n + 1];
    c[n] = -1.0;
    let mut out = Vec::new();
    for (xb, fb) in vp.f.iter().enumerate() {
        let shifted = axpy(fb, -eps, &vp.e);
        let mut hs = base.clone();
        for w in &vp.cone.dual_generators {
            let mut a: Vec<f64> = vp.f.iter().map(|fi| -dot(w, fi)).collect();
            a.push(-1.0);
            hs.push(Halfspace { a, b: -dot(w, &shifted) });
        }
        let dominated = match minimize(&c, &hs) {
            LpOutcome::Optimal(v) => -v > crate::cone::DEFAULT_TOL,
            LpOutcome::Unbounded => true,
            LpOutcome::Infeasible => false,
        };
        if !dominated {
            out.push(xb);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquivalenceKind {
    LinearBase {
        directions: Vec<Vec<f64>>,
    },
    /// Anchors at the images `F(x)` plus any extra anchors.
    Translative {
        extra_anchors: Vec<Vec<f64>>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceRow {
    pub eps: f64,
    pub weff: Vec<usize>,
    pub min_set: Vec<usize>,
    pub symmetric_difference: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub kind: &'static str,
    pub rows: Vec<EquivalenceRow>,
    pub agree: bool,
    /// Linear-base agreement is only claimed for convex instances.
    pub expected_to_agree: bool,
    pub pass: bool,
}

/// Directions of `B⁺ = {w ∈ C⁺ : wᵀe = 1}` that decide the linear-base
/// minimizers exactly in two dimensions for the orthant: both endpoints and
/// every point of `B⁺` where two images tie.
pub fn base_direction_candidates(vp: &VectorProblem) -> Vec<Vec<f64>> {
    assert_eq!(vp.cone.d, 2, "candidate directions are computed for R² only");
    let e = &vp.e;
    // Parametrize w(t) = (t, (1 − t e₁)/e₂) for t ∈ [0, 1/e₁].
    let t_max = 1.0 / e[0];
    let w_of = |t: f64| vec![t, (1.0 - t * e[0]) / e[1]];
    let mut ts = vec![0.0, t_max];
    for i in 0..vp.f.len() {
        for j in (i + 1)..vp.f.len() {
            let d = sub(&vp.f[i], &vp.f[j]);
            // wᵀd = t d₁ + (1 − t e₁) d₂ / e₂ = 0
            let slope = d[0] - e[0] * d[1] / e[1];
            if slope.abs() > 1e-14 {
                let t = -(d[1] / e[1]) / slope;
                if t > 0.0 && t < t_max {
                    ts.push(t);
                }
            }
        }
    }
    ts.sort_by(f64::total_cmp);
    ts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    ts.into_iter().map(w_of).filter(|w| vp.cone.dual_contains(w, 1e-12)).collect()
}

pub fn check_weff_equivalence(vp: &VectorProblem, ladder: &[f64], kind: &EquivalenceKind) -> Result<EquivalenceReport, SolverError> {
    let (label, fam, expected) = match kind {
        EquivalenceKind::LinearBase { directions } => {
            let fam = linear_family(&vp.cone, directions, Some(&vp.e)).map_err(family_err)?;
            ("linear-base", fam, vp.convex)
        }
        EquivalenceKind::Translative { extra_anchors } => {
            let mut anchors = vp.f.clone();
            anchors.extend(extra_anchors.iter().cloned());
            let spec = TranslativeSpec::new(vp.cone.clone(), vp.e.clone(), anchors).map_err(family_err)?;
            ("translative", translative_family(&spec, None).map_err(family_err)?, true)
        }
    };
    let prob = c_extend(vp, &fam)?;
    // Convex problems compare against the hull of the images, see `weff_convex_hull`.
    let hull = matches!(kind, EquivalenceKind::LinearBase { .. }) && vp.convex;
    let mut rows = Vec::with_capacity(ladder.len());
    for &eps in ladder {
        let w = if hull { weff_convex_hull(vp, eps)? } else { weff(vp, eps)? };
        let m = min_set(&prob, eps, Mode::Strict)?.indices;
        let a: BTreeSet<usize> = w.iter().copied().collect();
        let b: BTreeSet<usize> = m.iter().copied().collect();
        let symmetric_difference = a.symmetric_difference(&b).copied().collect();
        rows.push(EquivalenceRow { eps, weff: w, min_set: m, symmetric_difference });
    }
    let agree = rows.iter().all(|r| r.symmetric_difference.is_empty());
    let pass = agree || !expected;
    Ok(EquivalenceReport { kind: label, rows, agree, expected_to_agree: expected, pass })
}

fn family_err(e: FamilyError) -> SolverError {
    SolverError::Malformed(e.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorollaryReport {
    pub weff_zero: Vec<usize>,
    pub nonempty: bool,
    /// `(ε, sup_{x ∈ wEff(ε)} d(x, wEff(0)))` along the ladder.
    pub distances: Vec<(f64, f64)>,
    pub decreasing: bool,
    pub reaches_zero: bool,
    pub eps0_set: Vec<usize>,
    pub closedness: &'static str,
}

/// Grid version of the vector Weierstrass corollary.
pub fn weierstrass_corollary_harness(vp: &VectorProblem, eps0: f64, ladder: &[f64]) -> Result<CorollaryReport, SolverError> {
    let w0 = weff(vp, 0.0)?;
    let one_sided = |a: &[usize]| -> f64 {
        a.iter().map(|&i| w0.iter().map(|&j| dist(&vp.s[i], &vp.s[j])).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
    };
    let mut distances = Vec::with_capacity(ladder.len());
    for &eps in ladder {
        distances.push((eps, one_sided(&weff(vp, eps)?)));
    }
    let decreasing = distances.windows(2).all(|w| w[1].1 <= w[0].1 + 1e-12);
    let reaches_zero = distances.last().is_none_or(|d| d.1 <= 1e-12) || distances.len() < 2;
    Ok(CorollaryReport {
        nonempty: !w0.is_empty(),
        weff_zero: w0,
        distances,
        decreasing,
        reaches_zero,
        eps0_set: weff(vp, eps0)?,
        closedness: "finite grid: every subset is closed, recorded as evidence only",
    })
}

/// Grid triples `(x, y, m)` with `m` the midpoint of `x` and `y` where
/// `F(m) ≤_C (F(x) + F(y)) / 2` fails.
pub fn midpoint_convexity_violations(vp: &VectorProblem) -> usize {
    let tol = 1e-9;
    let mut bad = 0;
    for i in 0..vp.s.len() {
        for j in (i + 1)..vp.s.len() {
            let mid: Vec<f64> = vp.s[i].iter().zip(&vp.s[j]).map(|(a, b)| 0.5 * (a + b)).collect();
            if let Some(k) = vp.s.iter().position(|p| dist(p, &mid) < 1e-12) {
                let avg: Vec<f64> = vp.f[i].iter().zip(&vp.f[j]).map(|(a, b)| 0.5 * (a + b)).collect();
                if !vp.cone.leq(&vp.f[k], &avg, tol) {
                    bad += 1;
                }
            }
        }
    }
    bad
}

/// `e` is strictly positive against every dual generator.
pub fn is_interior_direction(cone: &Cone, e: &[f64]) -> bool {
    cone.dual_generators.iter().all(|w| dot(w, e) > crate::cone::DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(n: usize, a: f64, b: f64) -> Vec<Vec<f64>> {
        (0..=n).map(|k| vec![a + (b - a) * k as f64 / n as f64]).collect()
    }

    #[test]
    fn hull_weff_sees_dominating_segments() {
        let f = vec![vec![0.0, 1.0], vec![1.0, 0.0], vec![0.65, 0.65]];
        let s = vec![vec![0.0], vec![1.0], vec![2.0]];
        let vp = VectorProblem::new("tri", s, f, Cone::orthant(2), vec![1.0, 1.0], true).unwrap();
        assert_eq!(weff(&vp, 0.1).unwrap(), vec![0, 1, 2]);
        // (0.5, 0.5) on the segment lies strictly below (0.65, 0.65) − 0.1e.
        assert_eq!(weff_convex_hull(&vp, 0.1).unwrap(), vec![0, 1]);
        assert_eq!(weff_convex_hull(&vp, 0.2).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn weff_examples() {
        let single = VectorProblem::new("s", vec![vec![0.0]], vec![vec![1.0, 2.0]], Cone::orthant(2), vec![1.0, 1.0], true).unwrap();
        assert_eq!(weff(&single, 0.0).unwrap(), vec![0]);
        assert_eq!(weff(&single, 3.0).unwrap(), vec![0]);

        let id = VectorProblem::from_fn("id", line(20, 0.0, 2.0), |x| vec![x[0]], Cone::orthant(1), vec![1.0], true).unwrap();
        let w = weff(&id, 0.5).unwrap();
        assert!(w.iter().all(|&i| id.s[i][0] <= 0.5 + 1e-12));
        assert_eq!(w.len(), 6);

        let bi =
            VectorProblem::from_fn("bi", line(10, 0.0, 1.0), |x| vec![x[0], 1.0 - x[0]], Cone::orthant(2), vec![1.0, 1.0], true).unwrap();
        assert_eq!(weff(&bi, 0.0).unwrap().len(), 11);
    }

    #[test]
    fn non_solid_cone_rejected() {
        let vp = VectorProblem::new("r", vec![vec![0.0]], vec![vec![1.0, 1.0]], Cone::ray(&[1.0, 1.0]), vec![1.0, 1.0], true).unwrap();
        assert!(weff(&vp, 0.0).is_err());
    }

    #[test]
    fn constant_images_are_all_efficient() {
        let vp = VectorProblem::from_fn("c", line(5, 0.0, 1.0), |_| vec![0.0, 0.0], Cone::orthant(2), vec![1.0, 1.0], true).unwrap();
        let rep = weierstrass_corollary_harness(&vp, 0.5, &[0.5, 0.1]).unwrap();
        assert_eq!(rep.weff_zero.len(), 6);
        assert!(rep.distances.iter().all(|d| d.1 == 0.0));
    }

    #[test]
    fn extension_profiles_of_zero_map() {
        let vp = VectorProblem::from_fn("z", line(3, 0.0, 1.0), |_| vec![0.0, 0.0], Cone::orthant(2), vec![1.0, 1.0], true).unwrap();
        let fam = linear_family(&vp.cone, &[vec![1.0, 0.0], vec![0.0, 1.0]], None).unwrap();
        let p = c_extend(&vp, &fam).unwrap();
        let e0 = crate::lattice::embed(&[0.0, 0.0], &fam);
        assert!(p.profiles().iter().all(|q| *q == e0));
    }

    #[test]
    fn unique_minimum_shrinks() {
        let vp = VectorProblem::from_fn("q", line(40, -1.0, 1.0), |x| vec![x[0] * x[0]], Cone::orthant(1), vec![1.0], true).unwrap();
        let rep = weierstrass_corollary_harness(&vp, 0.5, &[0.25, 0.0625, 0.01]).unwrap();
        assert_eq!(rep.weff_zero.len(), 1);
        assert!(rep.decreasing);
        assert!((rep.distances[0].1 - 0.5).abs() < 1e-9);
    }
}
