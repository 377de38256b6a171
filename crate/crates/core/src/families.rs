//! Concrete families: linear functionals, translative functions, oriented
//! distances and indicator functions of lower level sets.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::error::FamilyError;
use crate::extended::{ExtendedReal, Finite, NegInf, PosInf};
use crate::family::{FamilyKind, Member, ScalarFamily};
use crate::linalg::{axpy, distance_to_polyhedron, dot, norm, sub, Halfspace};
use crate::lp::strictly_feasible;

/// Members `ψ_w(z) = wᵀz`. With a base anchor `e` each `w` is rescaled so
/// that `wᵀe = 1`.
pub fn linear_family(cone: &Cone, directions: &[Vec<f64>], base: Option<&[f64]>) -> Result<ScalarFamily, FamilyError> {
    if directions.is_empty() {
        return Err(FamilyError::Empty);
    }
    let mut members = Vec::with_capacity(directions.len());
    for (index, w) in directions.iter().enumerate() {
        if w.len() != cone.d {
            return Err(FamilyError::Invalid(format!("direction {index} has dimension {}", w.len())));
        }
        if norm(w) == 0.0 {
            return Err(FamilyError::ZeroDirection { index });
        }
        if !cone.dual_contains(w, crate::cone::DEFAULT_TOL) {
            return Err(FamilyError::DirectionOutsideDual { index });
        }
        let w = match base {
            Some(e) => {
                let s = dot(w, e);
                if s <= 0.0 {
                    return Err(FamilyError::Normalization { index, value: s.to_string() });
                }
                w.iter().map(|x| x / s).collect()
            }
            None => w.clone(),
        };
        members.push(Member::Linear { w });
    }
    let mut fam = ScalarFamily::new(FamilyKind::Linear, cone.d, members).with_cone(Arc::new(cone.clone()));
    if let Some(e) = base {
        fam.anchor = Some(e.to_vec());
    }
    Ok(fam)
}

/// Unit-sum grid `{(k/n, 1 − k/n)}` on the base of `R²₊`; `n + 1` points.
pub fn simplex_grid_2d(n: usize) -> Vec<Vec<f64>> {
    (0..=n)
        .map(|k| {
            let a = k as f64 / n as f64;
            vec![a, 1.0 - a]
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TranslativeSpec {
    pub cone: Cone,
    pub e: Vec<f64>,
    pub anchors: Vec<Vec<f64>>,
}

impl TranslativeSpec {
    pub fn new(cone: Cone, e: Vec<f64>, anchors: Vec<Vec<f64>>) -> Result<Self, FamilyError> {
        if e.len() != cone.d {
            return Err(FamilyError::BadDirection(format!("e has dimension {}", e.len())));
        }
        if !cone.is_proper_direction(&e, crate::cone::DEFAULT_TOL) {
            return Err(FamilyError::BadDirection(format!("{e:?} is not in C \\ (-C)")));
        }
        Ok(TranslativeSpec { cone, e, anchors })
    }
}

/// Smallest `t` with `v + t e` in the polyhedral cone `{u : wᵀu ≥ 0, w ∈ duals}`,
/// as a lower end of the feasible interval (which is `[t₀, ∞)` since `wᵀe ≥ 0`).
fn feasible_start(duals: &[Vec<f64>], v: &[f64], e: &[f64], tol: f64) -> ExtendedReal {
    let mut t0 = NegInf;
    for w in duals {
        let we = dot(w, e);
        let wv = dot(w, v);
        if we > tol {
            t0 = t0.max(Finite(-wv / we));
        } else if wv < -tol {
            return PosInf;
        }
    }
    t0
}

/// `τ_{y,e}(z) = inf{t : y + te − z ∈ C}`.
pub fn tau_eval(spec: &TranslativeSpec, y: &[f64], z: &[f64]) -> ExtendedReal {
    let tol = crate::cone::DEFAULT_TOL;
    let v = sub(y, z);
    let t0 = feasible_start(&spec.cone.dual_generators, &v, &spec.e, tol);
    let face = match &spec.cone.strict_face {
        None => return t0,
        Some(f) => f,
    };
    if t0 == PosInf {
        return PosInf;
    }
    // On the closure interval [t₀, ∞), v(t) = v + te lies in C iff it is off the
    // face hyperplane or inside the face cone.
    let ne = dot(&face.normal, &spec.e);
    let nv = dot(&face.normal, &v);
    if ne > tol {
        // nᵀv(t) > 0 exactly for t > −nᵀv/nᵀe.
        return t0.max(Finite(-nv / ne));
    }
    if nv > tol {
        return t0;
    }
    // The whole line stays on the face hyperplane; only the face cone remains.
    feasible_start(&face.face_duals, &v, &spec.e, tol).max(t0)
}

/// `z′` with `z′(e) = 1` and `z′ ≥ 0` on `C`: the sum of dual generators, scaled.
pub fn default_reduction_functional(spec: &TranslativeSpec) -> Option<Vec<f64>> {
    let mut w = vec![0.0; spec.cone.d];
    for g in &spec.cone.dual_generators {
        for (a, b) in w.iter_mut().zip(g) {
            *a += b;
        }
    }
    let s = dot(&w, &spec.e);
    (s > crate::cone::DEFAULT_TOL).then(|| w.iter().map(|x| x / s).collect())
}

/// One member per anchor. With `reduce = Some(z′)` every anchor is moved along
/// `e` onto `{y : z′(y) = −1}`; the shift changes each member by a constant, so
/// the family is equivalent and the normalization holds at `z̄ = e`.
pub fn translative_family(spec: &TranslativeSpec, reduce: Option<&[f64]>) -> Result<ScalarFamily, FamilyError> {
    if spec.anchors.is_empty() {
        return Err(FamilyError::Empty);
    }
    let anchors: Vec<Vec<f64>> = match reduce {
        None => spec.anchors.clone(),
        Some(zp) => {
            if (dot(zp, &spec.e) - 1.0).abs() > 1e-9 {
                return Err(FamilyError::Invalid("z′(e) must equal 1".into()));
            }
            if spec.cone.generators.iter().any(|g| dot(zp, g) < -1e-9) {
                return Err(FamilyError::Invalid("z′ must be nonnegative on C".into()));
            }
            spec.anchors.iter().map(|y| axpy(y, -(dot(zp, y) + 1.0), &spec.e)).collect()
        }
    };
    let shared = Arc::new(TranslativeSpec { cone: spec.cone.clone(), e: spec.e.clone(), anchors: anchors.clone() });
    let members = anchors.into_iter().map(|anchor| Member::Translative { spec: Arc::clone(&shared), anchor }).collect();
    let mut fam = ScalarFamily::new(FamilyKind::Translative, spec.cone.d, members).with_cone(Arc::new(spec.cone.clone()));
    if reduce.is_some() {
        fam.anchor = Some(spec.e.clone());
    }
    Ok(fam)
}

/// `Δ_C(v) = d_C(v) − d_{C^c}(v)` for a polyhedral cone (distances only see the closure).
pub fn oriented_distance_cone(cone: &Cone, v: &[f64]) -> f64 {
    let tol = 1e-12;
    if cone.contains_closure(v, 0.0) {
        -cone.unit_duals().iter().map(|w| dot(w, v)).fold(f64::INFINITY, f64::min).max(0.0)
    } else {
        let hs: Vec<Halfspace> = cone.dual_generators.iter().map(|w| Halfspace { a: w.clone(), b: 0.0 }).collect();
        distance_to_polyhedron(v, &hs, tol).expect("a cone contains the origin")
    }
}

/// `p_y(z) = Δ_C(y − z)`.
pub fn oriented_distance_eval(cone: &Cone, y: &[f64], z: &[f64]) -> f64 {
    oriented_distance_cone(cone, &sub(y, z))
}

/// `Δ_A(y)` for `A = {d₁, …, d_K} + C`.
///
/// Outside `A` this is the distance to the nearest translated cone. Inside, the
/// complement is a union over choices of one violated facet per generator; each
/// choice is an open polyhedron and its distance equals that to its closure
/// when it is nonempty.
pub fn oriented_distance_to_union(cone: &Cone, points: &[Vec<f64>], y: &[f64]) -> f64 {
    assert!(!points.is_empty(), "oriented distance of the empty set is +∞ everywhere");
    let tol = 1e-12;
    let outside: f64 = points
        .iter()
        .map(|d| {
            let v = sub(y, d);
            if cone.contains_closure(&v, 0.0) {
                0.0
            } else {
                oriented_distance_cone(cone, &v)
            }
        })
        .fold(f64::INFINITY, f64::min);
    if outside > 0.0 {
        return outside;
    }
    let duals = &cone.dual_generators;
    let m = duals.len();
    let k = points.len();
    let mut best = f64::INFINITY;
    let mut choice = vec![0usize; k];
    loop {
        // {z : w_{jₖ}ᵀz ≤ w_{jₖ}ᵀdₖ}, written as (−w)ᵀz ≥ −wᵀd.
        let hs: Vec<Halfspace> = choice
            .iter()
            .zip(points)
            .map(|(&j, d)| Halfspace { a: duals[j].iter().map(|x| -x).collect(), b: -dot(&duals[j], d) })
            .collect();
        if strictly_feasible(&hs, y.len(), 1e-12) {
            if let Some(dd) = distance_to_polyhedron(y, &hs, tol) {
                best = best.min(dd);
            }
        }
        let mut i = 0;
        loop {
            if i == k {
                return -best;
            }
            choice[i] += 1;
            if choice[i] < m {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

pub fn oriented_distance_family(cone: &Cone, anchors: &[Vec<f64>]) -> Result<ScalarFamily, FamilyError> {
    if anchors.is_empty() {
        return Err(FamilyError::Empty);
    }
    let shared = Arc::new(cone.clone());
    let members = anchors.iter().map(|y| Member::OrientedDistance { cone: Arc::clone(&shared), anchor: y.clone() }).collect();
    Ok(ScalarFamily::new(FamilyKind::OrientedDistance, cone.d, members).with_cone(shared))
}

/// A preorder on a finite ground set; `relation[i][j]` means `gᵢ ⪯ gⱼ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscretePreorder {
    pub ground: Vec<Vec<f64>>,
    pub relation: Vec<Vec<bool>>,
}

impl DiscretePreorder {
    #[allow(clippy::needless_range_loop)]
    pub fn new(ground: Vec<Vec<f64>>, relation: Vec<Vec<bool>>) -> Result<Self, FamilyError> {
        let n = ground.len();
        if relation.len() != n || relation.iter().any(|r| r.len() != n) {
            return Err(FamilyError::NotPreorder(format!("relation must be {n}×{n}")));
        }
        for i in 0..n {
            if !relation[i][i] {
                return Err(FamilyError::NotPreorder(format!("not reflexive at {i}")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !relation[i][j] {
                    continue;
                }
                for k in 0..n {
                    if relation[j][k] && !relation[i][k] {
                        return Err(FamilyError::NotPreorder(format!("not transitive at ({i}, {j}, {k})")));
                    }
                }
            }
        }
        Ok(DiscretePreorder { ground, relation })
    }

    /// Ground set `{0, 1, …, n−1}` as one-dimensional points.
    pub fn on_indices(relation: Vec<Vec<bool>>) -> Result<Self, FamilyError> {
        let ground = (0..relation.len()).map(|i| vec![i as f64]).collect();
        DiscretePreorder::new(ground, relation)
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.relation[i][j]
    }

    pub fn index_of(&self, z: &[f64]) -> Option<usize> {
        self.ground.iter().position(|g| g.len() == z.len() && g.iter().zip(z).all(|(a, b)| (a - b).abs() <= 1e-9))
    }

    /// Indices of `U(gᵢ)`.
    pub fn upper_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.relation[i][j]).collect()
    }
}

/// `I_{L(g_level)}(z)`: `0` if `z ⪯ g_level`, `+∞` otherwise (also off the ground set).
pub fn indicator_eval(pre: &DiscretePreorder, level: usize, z: &[f64]) -> ExtendedReal {
    match pre.index_of(z) {
        Some(j) if pre.leq(j, level) => Finite(0.0),
        _ => PosInf,
    }
}

pub fn indicator_family(pre: &DiscretePreorder) -> Result<ScalarFamily, FamilyError> {
    if pre.is_empty() {
        return Err(FamilyError::Empty);
    }
    let shared = Arc::new(pre.clone());
    let members = (0..pre.len()).map(|level| Member::Indicator { preorder: Arc::clone(&shared), level }).collect();
    let dim = pre.ground[0].len();
    Ok(ScalarFamily::new(FamilyKind::Indicator, dim, members))
}

fn in_sum(points: &[Vec<f64>], cone: &Cone, z: &[f64]) -> bool {
    points.iter().any(|d| cone.contains(&sub(z, d), 0.0))
}

/// Adds the candidates `z ∉ D + C` whose shifts `z + sₖe` all lie in `D + C`
/// for `sₖ = tol·2⁻ᵏ` (from either side), iterated to a fixed point.
pub fn directional_closure(points: &[Vec<f64>], candidates: &[Vec<f64>], e: &[f64], cone: &Cone, tol: f64) -> Vec<Vec<f64>> {
    let steps: Vec<f64> = (0..=10).map(|k| tol * 0.5f64.powi(k)).collect();
    let mut out = points.to_vec();
    loop {
        let mut added = false;
        for c in candidates {
            if in_sum(&out, cone, c) {
                continue;
            }
            let from = |sign: f64| steps.iter().all(|&s| in_sum(&out, cone, &axpy(c, sign * s, e)));
            if from(1.0) || from(-1.0) {
                out.push(c.clone());
                added = true;
            }
        }
        if !added {
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::StrictFace;

    const T: f64 = 1e-9;

    #[test]
    fn linear_family_base_rescaling() {
        let f = linear_family(&Cone::orthant(2), &[vec![2.0, 0.0]], Some(&[1.0, 1.0])).unwrap();
        match &f.members[0] {
            Member::Linear { w } => assert_eq!(w, &vec![1.0, 0.0]),
            _ => unreachable!(),
        }
        let err = linear_family(&Cone::orthant(2), &[vec![1.0, 0.0], vec![1.0, -0.5]], None).unwrap_err();
        assert_eq!(err, FamilyError::DirectionOutsideDual { index: 1 });
        assert_eq!(linear_family(&Cone::orthant(2), &simplex_grid_2d(100), None).unwrap().len(), 101);
    }

    #[test]
    fn tau_orthant_closed_form() {
        let spec = TranslativeSpec::new(Cone::orthant(2), vec![1.0, 2.0], vec![]).unwrap();
        for (y, z) in [([0.0, 0.0], [1.0, 1.0]), ([1.0, -2.0], [3.0, 0.5]), ([0.3, 0.1], [-1.0, 4.0])] {
            let expect = ((z[0] - y[0]) / 1.0f64).max((z[1] - y[1]) / 2.0);
            assert_eq!(tau_eval(&spec, &y, &z), Finite(expect));
        }
        assert_eq!(tau_eval(&spec, &[0.7, -0.2], &[0.7, -0.2]), Finite(0.0));
    }

    #[test]
    fn tau_lexicographic_domain() {
        let spec = TranslativeSpec::new(Cone::lexicographic(), vec![0.0, 1.0], vec![]).unwrap();
        let y = [0.0, 0.0];
        assert_eq!(tau_eval(&spec, &y, &[1.0, 0.0]), PosInf);
        assert_eq!(tau_eval(&spec, &y, &[-1.0, 7.0]), NegInf);
        assert_eq!(tau_eval(&spec, &y, &[0.0, 5.0]), Finite(5.0));
        assert_eq!(tau_eval(&spec, &y, &[0.0, 0.0]), Finite(0.0));
    }

    #[test]
    fn tau_improper_direction_rejected() {
        assert!(TranslativeSpec::new(Cone::halfspace(&[1.0, 0.0]), vec![0.0, 1.0], vec![]).is_err());
    }

    #[test]
    fn reduced_anchors_satisfy_normalization() {
        let c = Cone::orthant(2);
        let e = vec![1.0, 1.0];
        let mut anchors = Vec::new();
        for i in -3..=3 {
            for j in -3..=3 {
                anchors.push(vec![i as f64 * 0.7, j as f64 * 0.4]);
            }
        }
        let spec = TranslativeSpec::new(c, e.clone(), anchors).unwrap();
        let zp = default_reduction_functional(&spec).unwrap();
        let fam = translative_family(&spec, Some(&zp)).unwrap();
        for m in &fam.members {
            let v = m.eval(&e).finite().unwrap();
            assert!(v > 1.0);
            assert!(v >= 2.0 - 1e-12);
        }
    }

    #[test]
    fn oriented_distance_values() {
        let c = Cone::orthant(2);
        assert_eq!(oriented_distance_cone(&c, &[0.0, 0.0]), 0.0);
        assert!((oriented_distance_cone(&c, &[-3.0, -4.0]) - 5.0).abs() < 1e-12);
        assert!((oriented_distance_cone(&c, &[2.0, 0.5]) + 0.5).abs() < 1e-12);
        let a = vec![vec![-1.0, 0.0], vec![0.0, -1.0]];
        let y = [1.0, 1.0];
        let inf = a.iter().map(|d| oriented_distance_eval(&c, &y, d)).fold(f64::INFINITY, f64::min);
        assert!((inf + 1.0).abs() < 1e-9);
        assert!((oriented_distance_to_union(&c, &a, &y) + 2f64.sqrt()).abs() < 1e-9);
        assert!((oriented_distance_to_union(&c, &a, &[-2.0, -1.0]) - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn oriented_distance_on_ray() {
        let c = Cone::ray(&[1.0, 1.0]);
        assert_eq!(oriented_distance_cone(&c, &[2.0, 2.0]), 0.0);
        let d = oriented_distance_cone(&c, &[1.0, -1.0]);
        assert!((d - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn indicator_chain_hull() {
        // a ⪯ b ⪯ c
        let rel = vec![vec![true, true, true], vec![false, true, true], vec![false, false, true]];
        let pre = DiscretePreorder::on_indices(rel).unwrap();
        let fam = indicator_family(&pre).unwrap();
        let p = crate::lattice::profile_of_points(&[vec![1.0]], &fam);
        let hull: Vec<usize> = (0..3).filter(|&i| crate::lattice::hull_membership(&[i as f64], &p, &fam)).collect();
        assert_eq!(hull, vec![1, 2]);
        assert_eq!(pre.upper_set(1), vec![1, 2]);
    }

    #[test]
    fn preorder_validation() {
        let not_refl = vec![vec![false]];
        assert!(DiscretePreorder::on_indices(not_refl).is_err());
        let not_trans = vec![vec![true, true, false], vec![false, true, true], vec![false, false, true]];
        assert!(DiscretePreorder::on_indices(not_trans).is_err());
    }

    #[test]
    fn directional_closure_examples() {
        let c = Cone::orthant(2);
        let d = vec![vec![0.0, 0.0]];
        let cands = vec![vec![0.0, 1.0], vec![-1.0, 0.0], vec![-1e-12, 0.0]];
        assert_eq!(directional_closure(&d, &cands, &[1.0, 1.0], &c, T), d);

        let half_open = Cone::new(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]], vec![vec![1.0, 0.0]])
            .unwrap()
            .with_strict_face(StrictFace { normal: vec![1.0, 0.0], face_duals: vec![vec![0.0, 1.0], vec![0.0, -1.0]] });
        assert!(!half_open.contains(&[0.0, 1.0], T));
        let cands = vec![vec![0.0, 1.0], vec![0.0, -2.0], vec![-0.5, 0.0]];
        let out = directional_closure(&d, &cands, &[1.0, 0.0], &half_open, T);
        assert_eq!(out, vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![0.0, -2.0]]);
        assert_eq!(directional_closure(&out, &cands, &[1.0, 0.0], &half_open, T), out);
    }
}
