#![allow(dead_code)]

use psiset_core::extended::{ExtendedReal, Finite, NegInf, PosInf};
use psiset_core::families::{simplex_grid_2d, DiscretePreorder, TranslativeSpec};
use psiset_core::solver::{Mode, SetValue, SetValuedProblem};
use psiset_core::{indicator_family, linear_family, oriented_distance_family, translative_family, Cone, PointCloudSet, ScalarFamily};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A multiple of 1/4 in `[lo, hi]`; quarter values keep ties exact.
pub fn quarter(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range((lo * 4.0) as i64..=(hi * 4.0) as i64) as f64 / 4.0
}

pub fn random_points(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..d).map(|_| quarter(rng, -2.0, 2.0)).collect()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Linear,
    Translative,
    OrientedDistance,
    Indicator,
}

pub const KINDS: [Kind; 4] = [Kind::Linear, Kind::Translative, Kind::OrientedDistance, Kind::Indicator];

/// The componentwise order on `{-1, -1/2, …, 1}²`.
pub fn ground() -> Vec<Vec<f64>> {
    let s = [-1.0, -0.5, 0.0, 0.5, 1.0];
    s.iter().flat_map(|&a| s.iter().map(move |&b| vec![a, b])).collect()
}

pub fn family(kind: Kind) -> ScalarFamily {
    let cone = Cone::orthant(2);
    let anchors: Vec<Vec<f64>> = vec![vec![0.0, 0.0], vec![1.0, -1.0], vec![-1.0, 1.0], vec![1.5, 1.5], vec![-2.0, 0.5]];
    match kind {
        Kind::Linear => linear_family(&cone, &simplex_grid_2d(6), None).unwrap(),
        Kind::Translative => {
            let spec = TranslativeSpec::new(cone, vec![1.0, 1.0], anchors).unwrap();
            translative_family(&spec, None).unwrap()
        }
        Kind::OrientedDistance => oriented_distance_family(&cone, &anchors).unwrap(),
        Kind::Indicator => {
            let g = ground();
            let rel = g.iter().map(|a| g.iter().map(|b| a[0] <= b[0] && a[1] <= b[1]).collect()).collect();
            indicator_family(&DiscretePreorder::new(g, rel).unwrap()).unwrap()
        }
    }
}

/// A random cloud; indicator clouds are drawn from the ground set.
pub fn random_cloud(rng: &mut ChaCha8Rng, kind: Kind) -> PointCloudSet {
    let n = rng.gen_range(1..=6);
    let pts = match kind {
        Kind::Indicator => {
            let g = ground();
            (0..n).map(|_| g[rng.gen_range(0..g.len())].clone()).collect()
        }
        _ => random_points(rng, n, 2),
    };
    PointCloudSet::new(pts)
}

/// Probe points for hull membership; for indicators the ground set plus off-ground points.
pub fn probes(rng: &mut ChaCha8Rng, kind: Kind) -> Vec<Vec<f64>> {
    match kind {
        Kind::Indicator => {
            let mut g = ground();
            g.push(vec![0.3, 0.3]);
            g
        }
        _ => random_points(rng, 40, 2),
    }
}

/// A grid problem whose values are prescribed scalarized profiles with
/// occasional infinities and empty values.
pub fn random_scalarized(rng: &mut ChaCha8Rng) -> SetValuedProblem {
    let nx = rng.gen_range(2..=50);
    let k = rng.gen_range(1..=10);
    let fam = if k == 1 {
        linear_family(&Cone::orthant(2), &[vec![1.0, 1.0]], None).unwrap()
    } else {
        linear_family(&Cone::orthant(2), &simplex_grid_2d(k - 1), None).unwrap()
    };
    let grid: Vec<Vec<f64>> = (0..nx).map(|i| vec![i as f64 / 4.0]).collect();
    let mut values: Vec<SetValue> = (0..nx)
        .map(|_| {
            if rng.gen_bool(0.1) {
                return SetValue::Empty;
            }
            SetValue::Scalarized(
                (0..k)
                    .map(|_| match rng.gen_range(0..20) {
                        0 => NegInf,
                        1 => PosInf,
                        _ => Finite(quarter(rng, -3.0, 3.0)),
                    })
                    .collect(),
            )
        })
        .collect();
    if values.iter().all(SetValue::is_empty) {
        values[0] = SetValue::Scalarized(vec![Finite(0.0); k]);
    }
    SetValuedProblem::new("random-scalarized", grid, values, fam).unwrap()
}

/// A grid problem with point-cloud values under a linear family.
pub fn random_cloud_problem(rng: &mut ChaCha8Rng) -> SetValuedProblem {
    let nx = rng.gen_range(2..=50);
    let k = rng.gen_range(2..=10);
    let cone = Cone::orthant(2);
    let fam = linear_family(&cone, &simplex_grid_2d(k - 1), None).unwrap();
    let grid: Vec<Vec<f64>> = (0..nx).map(|i| vec![i as f64]).collect();
    let values = (0..nx)
        .map(|x| {
            if x > 0 && rng.gen_bool(0.15) {
                SetValue::Empty
            } else {
                let n = rng.gen_range(1..=4);
                SetValue::Cloud(PointCloudSet::with_cone(random_points(rng, n, 2), cone.clone()))
            }
        })
        .collect();
    SetValuedProblem::new("random-cloud", grid, values, fam).unwrap()
}

pub fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let p = rng.gen_range(0.1..0.9);
    let mut m: Vec<usize> = (0..n).filter(|_| rng.gen_bool(p)).collect();
    if m.is_empty() {
        m.push(rng.gen_range(0..n));
    }
    m
}

/// Literal transcription of the infimizer, minimizer and solution definitions,
/// using only member evaluations on the raw values. Comparisons allow the
/// solver's tolerance so that rounding in `wᵀz` does not split ties.
pub struct Literal {
    /// `ψᵢ^△(f(x))`.
    pub values: Vec<Vec<ExtendedReal>>,
    /// `ψᵢ^△(inf f[X])`.
    pub target: Vec<ExtendedReal>,
    pub tol: f64,
}

fn le(a: ExtendedReal, b: ExtendedReal, tol: f64) -> bool {
    match (a, b) {
        (Finite(a), Finite(b)) => a <= b + tol,
        (a, b) => a <= b,
    }
}

fn plus(a: ExtendedReal, eps: f64) -> ExtendedReal {
    match a {
        Finite(v) => Finite(v + eps),
        other => other,
    }
}

/// Right-hand side of the definitions, with `−1/0 = −∞`.
fn bound(t: ExtendedReal, eps: f64) -> ExtendedReal {
    match t {
        NegInf if eps == 0.0 => NegInf,
        NegInf => Finite(-1.0 / eps),
        other => plus(other, eps),
    }
}

impl Literal {
    pub fn new(prob: &SetValuedProblem) -> Self {
        let k = prob.family.len();
        let values: Vec<Vec<ExtendedReal>> = prob
            .values
            .iter()
            .map(|v| match v {
                SetValue::Empty => vec![PosInf; k],
                SetValue::Scalarized(vals) => vals.clone(),
                SetValue::Cloud(c) => (0..k)
                    .map(|i| {
                        // Members are bounded below on the cone, so the infimum over
                        // D + C is attained on D.
                        let mut best = PosInf;
                        for z in &c.points {
                            let v = prob.family.eval(i, z);
                            if v < best {
                                best = v;
                            }
                        }
                        best
                    })
                    .collect(),
            })
            .collect();
        let target = (0..k)
            .map(|i| {
                let mut best = PosInf;
                for v in &values {
                    if v[i] < best {
                        best = v[i];
                    }
                }
                best
            })
            .collect();
        Literal { values, target, tol: prob.family.tol }
    }

    pub fn is_minimizer(&self, x: usize, eps: f64) -> bool {
        (0..self.target.len()).any(|i| le(self.values[x][i], bound(self.target[i], eps), self.tol))
    }

    /// `∀δ > 0 ∃ψ`, with δ running through `2^-k`.
    pub fn is_minimizer_plus(&self, x: usize, eps: f64) -> bool {
        (1..=60).all(|k| self.is_minimizer(x, eps + 0.5f64.powi(k)))
    }

    pub fn is_minimizer_mode(&self, x: usize, eps: f64, mode: Mode) -> bool {
        match mode {
            Mode::Strict => self.is_minimizer(x, eps),
            Mode::Plus => self.is_minimizer_plus(x, eps),
        }
    }

    pub fn min_set(&self, eps: f64, mode: Mode) -> Vec<usize> {
        (0..self.values.len()).filter(|&x| self.is_minimizer_mode(x, eps, mode)).collect()
    }

    pub fn is_infimizer(&self, m: &[usize], eps: f64) -> bool {
        !m.is_empty()
            && (0..self.target.len()).all(|i| {
                let mut inf_m = PosInf;
                for &x in m {
                    if self.values[x][i] < inf_m {
                        inf_m = self.values[x][i];
                    }
                }
                le(inf_m, bound(self.target[i], eps), self.tol)
            })
    }

    pub fn is_solution(&self, m: &[usize], eps: f64, mode: Mode) -> bool {
        self.is_infimizer(m, eps) && m.iter().all(|&x| self.is_minimizer_mode(x, eps, mode))
    }
}
