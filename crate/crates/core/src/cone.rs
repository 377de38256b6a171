//! Polyhedral ordering cones given by generators and dual generators.

use serde::{Deserialize, Serialize};

use crate::error::ConeError;
use crate::linalg::{dot, norm, orthogonal_complement};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Boundary face that is only partially contained in the cone.
///
/// With a strict face the cone is `{z ∈ cl C : nᵀz > 0} ∪ F` where `F` is the
/// polyhedral cone `{z : nᵀz = 0, wᵀz ≥ 0 for w in face_duals}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrictFace {
    pub normal: Vec<f64>,
    pub face_duals: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cone {
    pub d: usize,
    pub generators: Vec<Vec<f64>>,
    pub dual_generators: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strict_face: Option<StrictFace>,
    #[serde(skip)]
    flags: Flags,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
struct Flags {
    solid: bool,
    pointed: bool,
}

fn check_dims(d: usize, vs: &[Vec<f64>], offset: usize) -> Result<(), ConeError> {
    for (i, v) in vs.iter().enumerate() {
        if v.len() != d {
            return Err(ConeError::Dimension { index: offset + i, expected: d, found: v.len() });
        }
    }
    Ok(())
}

impl Cone {
    /// Builds a closed cone and checks `wᵀg ≥ −tol` on every pair.
    pub fn new(generators: Vec<Vec<f64>>, dual_generators: Vec<Vec<f64>>) -> Result<Self, ConeError> {
        let d = generators.first().or(dual_generators.first()).map(Vec::len).ok_or(ConeError::ZeroDimension)?;
        if d == 0 {
            return Err(ConeError::ZeroDimension);
        }
        if dual_generators.is_empty() {
            return Err(ConeError::NoDualGenerators);
        }
        check_dims(d, &generators, 0)?;
        check_dims(d, &dual_generators, generators.len())?;
        for (j, w) in dual_generators.iter().enumerate() {
            for (i, g) in generators.iter().enumerate() {
                let v = dot(w, g);
                if v < -DEFAULT_TOL {
                    return Err(ConeError::NotDual { dual: j, generator: i, value: v });
                }
            }
        }
        let mut cone = Cone { d, generators, dual_generators, strict_face: None, flags: Flags::default() };
        cone.flags = cone.compute_flags();
        Ok(cone)
    }

    fn compute_flags(&self) -> Flags {
        let gsum = sum(&self.generators, self.d);
        let wsum = sum(&self.dual_generators, self.d);
        let solid = self.dual_generators.iter().all(|w| dot(w, &gsum) > DEFAULT_TOL);
        let pointed = self.generators.iter().all(|g| dot(g, &wsum) > DEFAULT_TOL);
        Flags { solid, pointed }
    }

    /// Restores the derived flags after deserialization.
    pub fn revalidate(self) -> Result<Self, ConeError> {
        let face = self.strict_face.clone();
        let c = Cone::new(self.generators, self.dual_generators)?;
        Ok(match face {
            Some(f) => c.with_strict_face(f),
            None => c,
        })
    }

    pub fn orthant(d: usize) -> Self {
        let basis: Vec<Vec<f64>> = (0..d).map(|i| unit(d, i)).collect();
        Cone::new(basis.clone(), basis).expect("orthant is well formed")
    }

    /// The halfspace `{z : hᵀz ≥ 0}`.
    pub fn halfspace(h: &[f64]) -> Self {
        let mut gens = vec![h.to_vec()];
        for b in orthogonal_complement(h) {
            gens.push(b.iter().map(|x| -x).collect());
            gens.push(b);
        }
        Cone::new(gens, vec![h.to_vec()]).expect("halfspace is well formed")
    }

    /// The ray `{t v : t ≥ 0}`.
    pub fn ray(v: &[f64]) -> Self {
        let mut duals = vec![v.to_vec()];
        for b in orthogonal_complement(v) {
            duals.push(b.iter().map(|x| -x).collect());
            duals.push(b);
        }
        Cone::new(vec![v.to_vec()], duals).expect("ray is well formed")
    }

    /// `{z : z₁ > 0} ∪ {z : z₁ = 0, z₂ ≥ 0}` in R².
    pub fn lexicographic() -> Self {
        let c = Cone::new(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]], vec![vec![1.0, 0.0]])
            .expect("lexicographic closure is well formed");
        c.with_strict_face(StrictFace { normal: vec![1.0, 0.0], face_duals: vec![vec![0.0, 1.0]] })
    }

    pub fn with_strict_face(mut self, face: StrictFace) -> Self {
        self.strict_face = Some(face);
        self
    }

    pub fn is_closed(&self) -> bool {
        self.strict_face.is_none()
    }

    pub fn is_solid(&self) -> bool {
        self.flags.solid
    }

    pub fn is_pointed(&self) -> bool {
        self.flags.pointed
    }

    /// Membership in the topological closure.
    pub fn contains_closure(&self, z: &[f64], tol: f64) -> bool {
        self.dual_generators.iter().all(|w| dot(w, z) >= -tol)
    }

    pub fn contains(&self, z: &[f64], tol: f64) -> bool {
        if !self.contains_closure(z, tol) {
            return false;
        }
        match &self.strict_face {
            None => true,
            Some(f) => dot(&f.normal, z) > tol || f.face_duals.iter().all(|w| dot(w, z) >= -tol),
        }
    }

    /// Strict dual inequalities; boundary points are not interior.
    pub fn contains_interior(&self, z: &[f64], tol: f64) -> bool {
        self.flags.solid && self.dual_generators.iter().all(|w| dot(w, z) > tol)
    }

    /// `w ∈ C⁺`, decided against the generators.
    pub fn dual_contains(&self, w: &[f64], tol: f64) -> bool {
        self.generators.iter().all(|g| dot(w, g) >= -tol)
    }

    /// `z₁ ≤_C z₂`, i.e. `z₂ − z₁ ∈ C`.
    pub fn leq(&self, z1: &[f64], z2: &[f64], tol: f64) -> bool {
        let diff: Vec<f64> = z2.iter().zip(z1).map(|(a, b)| a - b).collect();
        self.contains(&diff, tol)
    }

    /// `e ∈ C \ (−C)`.
    pub fn is_proper_direction(&self, e: &[f64], tol: f64) -> bool {
        let neg: Vec<f64> = e.iter().map(|x| -x).collect();
        self.contains(e, tol) && !self.contains(&neg, tol)
    }

    /// Unit-normalized dual generators, used for facet distances.
    pub fn unit_duals(&self) -> Vec<Vec<f64>> {
        self.dual_generators
            .iter()
            .filter_map(|w| {
                let n = norm(w);
                (n > 0.0).then(|| w.iter().map(|x| x / n).collect())
            })
            .collect()
    }
}

fn unit(d: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; d];
    v[i] = 1.0;
    v
}

fn sum(vs: &[Vec<f64>], d: usize) -> Vec<f64> {
    let mut s = vec![0.0; d];
    for v in vs {
        for (a, b) in s.iter_mut().zip(v) {
            *a += b;
        }
    }
    s
}
