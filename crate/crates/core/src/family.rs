//! Finite families of monotone scalar functions.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cone::{Cone, DEFAULT_TOL};
use crate::error::FamilyError;
use crate::extended::{ExtendedReal, Finite, PosInf};
use crate::families::{indicator_eval, oriented_distance_eval, tau_eval, DiscretePreorder, TranslativeSpec};
use crate::linalg::dot;
use crate::stochastic::{avar_on_points, c_distribution_on_points};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Linear,
    Translative,
    OrientedDistance,
    Indicator,
    Avar,
    CDistribution,
    Custom,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyKind::Linear => "linear",
            FamilyKind::Translative => "translative",
            FamilyKind::OrientedDistance => "oriented-distance",
            FamilyKind::Indicator => "indicator",
            FamilyKind::Avar => "avar",
            FamilyKind::CDistribution => "c-distribution",
            FamilyKind::Custom => "custom",
        };
        f.write_str(s)
    }
}

pub type CustomFn = Arc<dyn Fn(&[f64]) -> ExtendedReal + Send + Sync>;

/// One scalarization `ψ: R^n → ℝ̄`.
#[derive(Clone)]
pub enum Member {
    Linear {
        w: Vec<f64>,
    },
    Translative {
        spec: Arc<TranslativeSpec>,
        anchor: Vec<f64>,
    },
    OrientedDistance {
        cone: Arc<Cone>,
        anchor: Vec<f64>,
    },
    Indicator {
        preorder: Arc<DiscretePreorder>,
        level: usize,
    },
    /// AV@R_α of the random variable whose atom values are the coordinates.
    Avar {
        alpha: f64,
        probs: Arc<Vec<f64>>,
    },
    /// `x ↦ F_{x,C}(z)` for `x` flattened state-major into `probs.len() · z.len()` coordinates.
    CDistribution {
        z: Vec<f64>,
        directions: Arc<Vec<Vec<f64>>>,
        probs: Arc<Vec<f64>>,
        tol: f64,
    },
    Constant(ExtendedReal),
    Scaled {
        inner: Box<Member>,
        factor: f64,
    },
    Custom {
        label: String,
        f: CustomFn,
    },
}

impl Member {
    pub fn eval(&self, z: &[f64]) -> ExtendedReal {
        match self {
            Member::Linear { w } => Finite(dot(w, z)),
            Member::Translative { spec, anchor } => tau_eval(spec, anchor, z),
            Member::OrientedDistance { cone, anchor } => Finite(oriented_distance_eval(cone, anchor, z)),
            Member::Indicator { preorder, level } => indicator_eval(preorder, *level, z),
            Member::Avar { alpha, probs } => Finite(avar_on_points(z, probs, *alpha)),
            Member::CDistribution { z: t, directions, probs, tol } => Finite(c_distribution_on_points(z, probs, t, directions, *tol)),
            Member::Constant(c) => *c,
            Member::Scaled { inner, factor } => inner.eval(z).scale(*factor),
            Member::Custom { f, .. } => f(z),
        }
    }

    pub fn scaled(&self, factor: f64) -> Member {
        assert!(factor > 0.0 && factor.is_finite(), "scale factor must be positive");
        match self {
            Member::Linear { w } => Member::Linear { w: w.iter().map(|x| x * factor).collect() },
            Member::Scaled { inner, factor: f } => Member::Scaled { inner: inner.clone(), factor: f * factor },
            Member::Constant(c) => Member::Constant(c.scale(factor)),
            other => Member::Scaled { inner: Box::new(other.clone()), factor },
        }
    }

    /// Short human-readable description, also fed into the family id.
    pub fn describe(&self) -> String {
        match self {
            Member::Linear { w } => format!("w={w:?}"),
            Member::Translative { anchor, .. } => format!("tau y={anchor:?}"),
            Member::OrientedDistance { anchor, .. } => format!("p y={anchor:?}"),
            Member::Indicator { level, .. } => format!("I L({level})"),
            Member::Avar { alpha, .. } => format!("avar a={alpha}"),
            Member::CDistribution { z, .. } => format!("F z={z:?}"),
            Member::Constant(c) => format!("const {c}"),
            Member::Scaled { inner, factor } => format!("{factor}*({})", inner.describe()),
            Member::Custom { label, .. } => label.clone(),
        }
    }

    fn hash_into(&self, h: &mut DefaultHasher) {
        match self {
            Member::Linear { w } => {
                0u8.hash(h);
                hash_f64s(w, h);
            }
            Member::Translative { spec, anchor } => {
                1u8.hash(h);
                hash_f64s(anchor, h);
                hash_f64s(&spec.e, h);
                for w in &spec.cone.dual_generators {
                    hash_f64s(w, h);
                }
            }
            Member::OrientedDistance { cone, anchor } => {
                2u8.hash(h);
                hash_f64s(anchor, h);
                for w in &cone.dual_generators {
                    hash_f64s(w, h);
                }
            }
            Member::Indicator { preorder, level } => {
                3u8.hash(h);
                level.hash(h);
                preorder.relation.hash(h);
            }
            Member::Avar { alpha, probs } => {
                4u8.hash(h);
                alpha.to_bits().hash(h);
                hash_f64s(probs, h);
            }
            Member::CDistribution { z, directions, probs, .. } => {
                5u8.hash(h);
                hash_f64s(z, h);
                hash_f64s(probs, h);
                for w in directions.iter() {
                    hash_f64s(w, h);
                }
            }
            Member::Constant(c) => {
                6u8.hash(h);
                c.to_f64().to_bits().hash(h);
            }
            Member::Scaled { inner, factor } => {
                7u8.hash(h);
                factor.to_bits().hash(h);
                inner.hash_into(h);
            }
            Member::Custom { label, .. } => {
                8u8.hash(h);
                label.hash(h);
            }
        }
    }
}

fn hash_f64s(v: &[f64], h: &mut DefaultHasher) {
    v.len().hash(h);
    for x in v {
        x.to_bits().hash(h);
    }
}

impl fmt::Debug for Member {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// A finite, indexed family `Ψ = {ψᵢ}`.
#[derive(Clone, Debug)]
pub struct ScalarFamily {
    pub id: String,
    pub kind: FamilyKind,
    pub members: Vec<Member>,
    /// Ambient dimension of the evaluated points.
    pub dim: usize,
    /// The normalization anchor `z̄` of `0 < ψ(z̄) < +∞`, when set.
    pub anchor: Option<Vec<f64>>,
    /// Cone of the declared vector preorder, when there is one.
    pub cone: Option<Arc<Cone>>,
    pub tol: f64,
    pub metadata: BTreeMap<String, String>,
}

impl ScalarFamily {
    pub fn new(kind: FamilyKind, dim: usize, members: Vec<Member>) -> Self {
        let mut fam =
            ScalarFamily { id: String::new(), kind, members, dim, anchor: None, cone: None, tol: DEFAULT_TOL, metadata: BTreeMap::new() };
        fam.refresh_id();
        fam
    }

    pub fn with_cone(mut self, cone: Arc<Cone>) -> Self {
        self.cone = Some(cone);
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_meta(mut self, key: &str, value: &str) -> Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }

    /// Recomputes the content-derived id after the members changed.
    pub fn refresh_id(&mut self) {
        let mut h = DefaultHasher::new();
        self.kind.hash(&mut h);
        self.dim.hash(&mut h);
        for m in &self.members {
            m.hash_into(&mut h);
        }
        self.id = format!("{}-{:016x}", self.kind, h.finish());
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn eval(&self, i: usize, z: &[f64]) -> ExtendedReal {
        self.members[i].eval(z)
    }

    /// `s Ψ` for `s > 0`.
    pub fn scaled(&self, s: f64) -> ScalarFamily {
        let mut f = self.clone();
        f.members = self.members.iter().map(|m| m.scaled(s)).collect();
        f.anchor = None;
        f.refresh_id();
        f
    }

    /// Appends a member, e.g. a constant, and renews the id.
    pub fn with_member(&self, m: Member) -> ScalarFamily {
        let mut f = self.clone();
        f.members.push(m);
        f.refresh_id();
        f
    }

    /// Checks `ψ(z₁) ≤ ψ(z₂) + tol` on the given comparable pairs; returns the
    /// first violation as `(pair index, member index)`.
    pub fn check_monotone(&self, pairs: &[(Vec<f64>, Vec<f64>)]) -> Option<(usize, usize)> {
        for (p, (z1, z2)) in pairs.iter().enumerate() {
            for (i, m) in self.members.iter().enumerate() {
                if !m.eval(z1).le_tol(m.eval(z2), self.tol) {
                    return Some((p, i));
                }
            }
        }
        None
    }

    /// Whether `[ψ(z₁) ≤ ψ(z₂) ∀ψ]`.
    pub fn all_ordered(&self, z1: &[f64], z2: &[f64]) -> bool {
        self.members.iter().all(|m| m.eval(z1).le_tol(m.eval(z2), self.tol))
    }
}

/// Rescales every member by `1/ψ(z̄)`.
pub fn normalize_family(fam: &ScalarFamily, z_bar: &[f64]) -> Result<ScalarFamily, FamilyError> {
    let mut members = Vec::with_capacity(fam.len());
    for (index, m) in fam.members.iter().enumerate() {
        match m.eval(z_bar) {
            Finite(v) if v > 0.0 => {
                members.push(if v == 1.0 { m.clone() } else { m.scaled(1.0 / v) });
            }
            other => {
                return Err(FamilyError::Normalization { index, value: other.to_string() });
            }
        }
    }
    let mut out = fam.clone();
    out.members = members;
    out.anchor = Some(z_bar.to_vec());
    out.refresh_id();
    Ok(out)
}

/// `0 < ψ(z̄) < +∞` for all members.
pub fn satisfies_normalization(fam: &ScalarFamily, z_bar: &[f64]) -> bool {
    fam.members.iter().all(|m| matches!(m.eval(z_bar), Finite(v) if v > 0.0))
}

pub fn constant_member(c: ExtendedReal) -> Member {
    Member::Constant(c)
}

pub fn custom_member(label: &str, f: impl Fn(&[f64]) -> ExtendedReal + Send + Sync + 'static) -> Member {
    Member::Custom { label: label.to_string(), f: Arc::new(f) }
}

/// A member is improper on the probes if it takes `−∞` somewhere or is `+∞`
/// at every probe.
pub fn is_improper_on(m: &Member, probes: &[Vec<f64>]) -> bool {
    probes.iter().any(|z| matches!(m.eval(z), ExtendedReal::NegInf)) || probes.iter().all(|z| m.eval(z) == PosInf)
}
