//! Inf-extensions, profiles, the hull `cl_Ψ` and the lattice operations.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::error::LatticeError;
use crate::extended::{ExtendedReal, Finite, NegInf, PosInf};
use crate::family::{FamilyKind, Member, ScalarFamily};
use crate::linalg::Halfspace;
use crate::lp::{minimize, LpOutcome};

/// Finite generating set of a lattice element; the empty list is the top.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointCloudSet {
    pub points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone: Option<Cone>,
}

impl PointCloudSet {
    pub fn new(points: Vec<Vec<f64>>) -> Self {
        PointCloudSet { points, cone: None }
    }

    pub fn with_cone(points: Vec<Vec<f64>>, cone: Cone) -> Self {
        PointCloudSet { points, cone: Some(cone) }
    }

    pub fn empty() -> Self {
        PointCloudSet { points: Vec::new(), cone: None }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn union(&self, other: &PointCloudSet) -> PointCloudSet {
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        PointCloudSet { points, cone: self.cone.clone().or_else(|| other.cone.clone()) }
    }
}

/// The tuple `(ψᵢ^△(D))ᵢ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub family_id: String,
    pub values: Vec<ExtendedReal>,
}

impl Profile {
    pub fn top(fam: &ScalarFamily) -> Profile {
        Profile { family_id: fam.id.clone(), values: vec![PosInf; fam.len()] }
    }

    /// Componentwise `self ≤ other + tol`.
    pub fn le(&self, other: &Profile, tol: f64) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a.le_tol(*b, tol))
    }

    pub fn approx_eq(&self, other: &Profile, tol: f64) -> bool {
        self.family_id == other.family_id
            && self.values.len() == other.values.len()
            && self.values.iter().zip(&other.values).all(|(a, b)| a.approx_eq(*b, tol))
    }
}

/// `ψ^△(D) = min_{z∈D} ψ(z)`, `+∞` on the empty list.
pub fn inf_extend(psi: &Member, points: &[Vec<f64>]) -> ExtendedReal {
    points.iter().map(|z| psi.eval(z)).min().unwrap_or(PosInf)
}

/// `max_{z∈D} ψ(z)`, `−∞` on the empty list.
pub fn sup_extend(psi: &Member, points: &[Vec<f64>]) -> ExtendedReal {
    points.iter().map(|z| psi.eval(z)).max().unwrap_or(NegInf)
}

pub fn profile_of(d: &PointCloudSet, fam: &ScalarFamily) -> Profile {
    profile_of_points(&d.points, fam)
}

pub fn profile_of_points(points: &[Vec<f64>], fam: &ScalarFamily) -> Profile {
    let values = if fam.len() * points.len() > 4096 {
        fam.members.par_iter().map(|m| inf_extend(m, points)).collect()
    } else {
        fam.members.iter().map(|m| inf_extend(m, points)).collect()
    };
    Profile { family_id: fam.id.clone(), values }
}

/// `D₁ ⪯_Ψ D₂`.
pub fn set_leq(d1: &PointCloudSet, d2: &PointCloudSet, fam: &ScalarFamily) -> bool {
    profile_of(d1, fam).le(&profile_of(d2, fam), fam.tol)
}

/// `z ∈ cl_Ψ D` given the profile of `D`.
pub fn hull_membership(z: &[f64], p: &Profile, fam: &ScalarFamily) -> bool {
    p.values.iter().zip(&fam.members).all(|(v, m)| v.le_tol(m.eval(z), fam.tol))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolyKind {
    /// Bounded by the listed halfspaces (the whole space if there are none).
    Regular,
    Empty,
}

/// Intersection of halfspaces `{z : wᵀz ≥ b}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HPolyhedron {
    pub dim: usize,
    pub halfspaces: Vec<Halfspace>,
    pub kind: PolyKind,
}

impl HPolyhedron {
    pub fn everything(dim: usize) -> Self {
        HPolyhedron { dim, halfspaces: Vec::new(), kind: PolyKind::Regular }
    }

    pub fn empty(dim: usize) -> Self {
        HPolyhedron { dim, halfspaces: Vec::new(), kind: PolyKind::Empty }
    }

    pub fn is_trivially_all(&self) -> bool {
        self.kind == PolyKind::Regular && self.halfspaces.is_empty()
    }

    pub fn is_trivially_empty(&self) -> bool {
        self.kind == PolyKind::Empty
    }

    pub fn contains(&self, z: &[f64], tol: f64) -> bool {
        self.kind == PolyKind::Regular && self.halfspaces.iter().all(|h| h.holds(z, tol))
    }

    pub fn intersect(&self, other: &HPolyhedron) -> HPolyhedron {
        if self.is_trivially_empty() || other.is_trivially_empty() {
            return HPolyhedron::empty(self.dim);
        }
        let mut hs = self.halfspaces.clone();
        hs.extend(other.halfspaces.iter().cloned());
        HPolyhedron { dim: self.dim, halfspaces: hs, kind: PolyKind::Regular }
    }

    /// `inf_{z∈P} cᵀz` by linear programming.
    pub fn minimize(&self, c: &[f64]) -> ExtendedReal {
        if self.is_trivially_empty() {
            return PosInf;
        }
        match minimize(c, &self.halfspaces) {
            LpOutcome::Optimal(v) => Finite(v),
            LpOutcome::Unbounded => NegInf,
            LpOutcome::Infeasible => PosInf,
        }
    }
}

fn linear_directions(fam: &ScalarFamily) -> Result<Vec<&Vec<f64>>, LatticeError> {
    if fam.kind != FamilyKind::Linear {
        return Err(LatticeError::NotLinear(fam.kind.to_string()));
    }
    fam.members
        .iter()
        .map(|m| match m {
            Member::Linear { w } => Ok(w),
            other => Err(LatticeError::NotLinear(other.describe())),
        })
        .collect()
}

/// `cl_Ψ D` for a linear family as an explicit halfspace intersection.
pub fn hull_materialize_linear(d: &PointCloudSet, fam: &ScalarFamily) -> Result<HPolyhedron, LatticeError> {
    let dirs = linear_directions(fam)?;
    if d.is_empty() {
        return Ok(HPolyhedron::empty(fam.dim));
    }
    let p = profile_of(d, fam);
    let halfspaces = dirs.iter().zip(&p.values).filter_map(|(w, v)| v.finite().map(|b| Halfspace { a: (*w).clone(), b })).collect();
    Ok(HPolyhedron { dim: fam.dim, halfspaces, kind: PolyKind::Regular })
}

fn check_same_family(profiles: &[Profile]) -> Result<(), LatticeError> {
    let first = &profiles[0];
    for p in &profiles[1..] {
        if p.family_id != first.family_id {
            return Err(LatticeError::FamilyMismatch { expected: first.family_id.clone(), found: p.family_id.clone() });
        }
        if p.values.len() != first.values.len() {
            return Err(LatticeError::DimensionMismatch { expected: first.values.len(), found: p.values.len() });
        }
    }
    Ok(())
}

/// Componentwise minimum; by inf-stability this is the profile of the union.
pub fn lattice_inf(profiles: &[Profile]) -> Result<Profile, LatticeError> {
    if profiles.is_empty() {
        return Err(LatticeError::Empty("lattice_inf needs at least one profile"));
    }
    check_same_family(profiles)?;
    let n = profiles[0].values.len();
    let values = (0..n).map(|i| profiles.iter().map(|p| p.values[i]).min().unwrap_or(PosInf)).collect();
    Ok(Profile { family_id: profiles[0].family_id.clone(), values })
}

/// Supremum of lattice elements, the intersection of their hulls.
#[derive(Clone, Debug)]
pub struct SupElement {
    pub parts: Vec<Profile>,
    /// Componentwise maximum of the parts; always a lower bound.
    pub lower: Profile,
    /// Exact profile for linear families, else the best sampled upper bound.
    pub upper: Profile,
    pub approximate: bool,
}

impl SupElement {
    pub fn membership(&self, z: &[f64], fam: &ScalarFamily) -> bool {
        self.parts.iter().all(|p| hull_membership(z, p, fam))
    }

    pub fn exact(&self) -> Option<&Profile> {
        (!self.approximate).then_some(&self.upper)
    }
}

/// `sup = ⋂ cl_Ψ Dₖ`. Exact via linear programming for linear families; other
/// kinds are bracketed using the member points among `samples`.
pub fn lattice_sup(clouds: &[PointCloudSet], fam: &ScalarFamily, samples: &[Vec<f64>]) -> Result<SupElement, LatticeError> {
    if clouds.is_empty() {
        // The empty supremum is the bottom element, the whole space.
        let bottom = Profile { family_id: fam.id.clone(), values: vec![NegInf; fam.len()] };
        return Ok(SupElement { parts: Vec::new(), lower: bottom.clone(), upper: bottom, approximate: fam.kind != FamilyKind::Linear });
    }
    let parts: Vec<Profile> = clouds.iter().map(|c| profile_of(c, fam)).collect();
    let n = fam.len();
    let lower =
        Profile { family_id: fam.id.clone(), values: (0..n).map(|i| parts.iter().map(|p| p.values[i]).max().unwrap_or(NegInf)).collect() };
    if fam.kind == FamilyKind::Linear {
        let dirs = linear_directions(fam)?;
        let mut poly = HPolyhedron::everything(fam.dim);
        for c in clouds {
            poly = poly.intersect(&hull_materialize_linear(c, fam)?);
        }
        let values = dirs.iter().map(|w| poly.minimize(w)).collect::<Vec<_>>();
        // If the intersection is empty every entry is +∞; the LP answers that per member.
        let upper = Profile { family_id: fam.id.clone(), values };
        return Ok(SupElement { parts, lower, upper, approximate: false });
    }
    let members: Vec<&Vec<f64>> = samples.iter().filter(|z| parts.iter().all(|p| hull_membership(z, p, fam))).collect();
    let upper = Profile {
        family_id: fam.id.clone(),
        values: fam.members.iter().map(|m| members.iter().map(|z| m.eval(z)).min().unwrap_or(PosInf)).collect(),
    };
    Ok(SupElement { parts, lower, upper, approximate: true })
}

/// `a(z)`, the lattice element generated by a single point.
pub fn embed(z: &[f64], fam: &ScalarFamily) -> Profile {
    profile_of_points(&[z.to_vec()], fam)
}

/// Refutation test for equivalence: compares hull membership of every sample
/// point for every sample cloud. Agreement is evidence, not proof.
pub fn families_equivalent(a: &ScalarFamily, b: &ScalarFamily, clouds: &[PointCloudSet], points: &[Vec<f64>]) -> bool {
    clouds.iter().all(|c| {
        let pa = profile_of(c, a);
        let pb = profile_of(c, b);
        points.iter().all(|z| hull_membership(z, &pa, a) == hull_membership(z, &pb, b))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extended::Finite;
    use crate::families::linear_family;

    fn orthant_family(dirs: &[Vec<f64>]) -> ScalarFamily {
        linear_family(&Cone::orthant(2), dirs, None).unwrap()
    }

    fn coords() -> ScalarFamily {
        orthant_family(&[vec![1.0, 0.0], vec![0.0, 1.0]])
    }

    #[test]
    fn empty_set_conventions() {
        let m = Member::Linear { w: vec![1.0, 1.0] };
        assert_eq!(inf_extend(&m, &[]), PosInf);
        assert_eq!(sup_extend(&m, &[]), NegInf);
        let u = Member::Linear { w: vec![1.0] };
        assert_eq!(sup_extend(&u, &[vec![1.0], vec![2.0], vec![3.0]]), Finite(3.0));
        assert_eq!(sup_extend(&u, &[vec![2.5]]), Finite(2.5));
    }

    #[test]
    fn profiles_of_small_sets() {
        let f = coords();
        assert_eq!(profile_of(&PointCloudSet::empty(), &f).values, vec![PosInf, PosInf]);
        assert_eq!(profile_of(&PointCloudSet::new(vec![vec![0.0, 0.0]]), &f).values, vec![Finite(0.0), Finite(0.0)]);
        let d = PointCloudSet::new(vec![vec![-1.0, 0.0], vec![0.0, -1.0]]);
        assert_eq!(profile_of(&d, &f).values, vec![Finite(-1.0), Finite(-1.0)]);
    }

    #[test]
    fn set_order_examples() {
        let f = orthant_family(&[vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]);
        let d1 = PointCloudSet::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        let d2 = PointCloudSet::new(vec![vec![1.0, 1.0]]);
        assert!(set_leq(&d1, &d1, &f));
        assert!(set_leq(&d1, &d2, &f));
        assert!(!set_leq(&d2, &d1, &f));
    }

    #[test]
    fn hull_membership_halfspaces() {
        let f = coords();
        let p = profile_of(&PointCloudSet::new(vec![vec![0.0, 0.0]]), &f);
        assert!(hull_membership(&[1.0, 1.0], &p, &f));
        assert!(!hull_membership(&[-1.0, 1.0], &p, &f));
        assert!(hull_membership(&[0.0, 0.0], &p, &f));
    }

    #[test]
    fn materialized_hulls() {
        let f = coords();
        let h = hull_materialize_linear(&PointCloudSet::new(vec![vec![0.0, 0.0]]), &f).unwrap();
        assert_eq!(h.halfspaces.len(), 2);
        assert!(h.contains(&[0.0, 3.0], 1e-12) && !h.contains(&[-0.1, 3.0], 1e-12));

        let g = orthant_family(&[vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]);
        let d = PointCloudSet::new(vec![vec![-1.0, 0.0], vec![0.0, -1.0]]);
        let h = hull_materialize_linear(&d, &g).unwrap();
        assert!(!h.contains(&[1.0, -1.5], 1e-12));
        assert!(h.contains(&[1.0, -0.5], 1e-12));

        assert!(hull_materialize_linear(&PointCloudSet::empty(), &f).unwrap().is_trivially_empty());
    }

    #[test]
    fn non_linear_materialization_is_rejected() {
        let mut f = coords();
        f.kind = FamilyKind::Custom;
        assert!(matches!(hull_materialize_linear(&PointCloudSet::empty(), &f), Err(LatticeError::NotLinear(_))));
    }

    #[test]
    fn inf_laws() {
        let f = orthant_family(&[vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]);
        let a = PointCloudSet::new(vec![vec![1.0, 0.0]]);
        let b = PointCloudSet::new(vec![vec![0.0, 1.0]]);
        let pa = profile_of(&a, &f);
        let pb = profile_of(&b, &f);
        assert_eq!(lattice_inf(&[pa.clone(), pa.clone()]).unwrap(), pa);
        assert_eq!(lattice_inf(&[Profile::top(&f), pa.clone()]).unwrap(), pa);
        assert_eq!(lattice_inf(&[pa, pb]).unwrap(), profile_of(&a.union(&b), &f));
    }

    #[test]
    fn inf_rejects_mixed_families() {
        let f = coords();
        let g = orthant_family(&[vec![1.0, 1.0], vec![0.0, 1.0]]);
        let p = embed(&[0.0, 0.0], &f);
        let q = embed(&[0.0, 0.0], &g);
        assert!(matches!(lattice_inf(&[p, q]), Err(LatticeError::FamilyMismatch { .. })));
    }

    #[test]
    fn sup_of_two_orthants() {
        let f = orthant_family(&[vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]);
        let a = PointCloudSet::new(vec![vec![0.0, 1.0]]);
        let b = PointCloudSet::new(vec![vec![1.0, 0.0]]);
        let s = lattice_sup(&[a.clone(), b.clone()], &f, &[]).unwrap();
        assert!(s.membership(&[1.0, 1.0], &f));
        assert!(!s.membership(&[0.5, 0.5], &f));
        let exact = s.exact().unwrap();
        assert_eq!(exact.values[2], Finite(2.0));
        assert!(s.lower.le(exact, 1e-9));
        // Sup-stability fails: max of (1, 1) on the diagonal member is 1 < 2.
        assert_eq!(s.lower.values[2], Finite(1.0));

        let single = lattice_sup(std::slice::from_ref(&a), &f, &[]).unwrap();
        assert!(single.exact().unwrap().approx_eq(&profile_of(&a, &f), 1e-9));
    }

    #[test]
    fn sup_with_empty_intersection() {
        let f = coords();
        let s = lattice_sup(&[PointCloudSet::empty(), PointCloudSet::new(vec![vec![0.0, 0.0]])], &f, &[]).unwrap();
        assert_eq!(s.upper.values, vec![PosInf, PosInf]);
    }

    #[test]
    fn equivalence_examples() {
        let f = coords();
        let g = orthant_family(&[vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]);
        let clouds = vec![PointCloudSet::new(vec![vec![0.0, 0.0]]), PointCloudSet::new(vec![vec![-1.0, 2.0], vec![1.0, -1.0]])];
        let mut pts = Vec::new();
        for i in -8..=8 {
            for j in -8..=8 {
                pts.push(vec![i as f64 * 0.25, j as f64 * 0.25]);
            }
        }
        assert!(families_equivalent(&f, &f.scaled(3.5), &clouds, &pts));
        assert!(families_equivalent(&f, &f.with_member(Member::Constant(Finite(0.0))), &clouds, &pts));
        // With only point clouds that are singletons the diagonal is redundant.
        let singletons: Vec<_> = clouds.iter().take(1).cloned().collect();
        assert!(families_equivalent(&f, &g, &singletons, &pts));
        // The second cloud's hull is cut by the diagonal member: refuted.
        assert!(!families_equivalent(&f, &g, &clouds, &pts));
    }
}
