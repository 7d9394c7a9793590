//! Earthquake isotopies `L_t = {p = t dΦ}` with `Φ = Σ θ_j (φ_j⁺)²`.
//!
//! `Φ` is `C¹`; its Hessian jumps across each fault `{φ_j = 0}` by
//! `2θ_j ∇φ_j ∇φ_jᵀ`, so the one-sided tangent planes differ by a rank-one
//! form whose kernel is the fault tangent.

use super::poly::Polynomial;
use super::FlowError;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Cutoff multiplying a fault's contribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theta {
    Constant(f64),
    /// Radial: `1` for `|q − c| ≤ inner`, `0` beyond `outer`, smoothstep between.
    Bump { center: Vec<f64>, inner: f64, outer: f64 },
}

fn smoothstep(s: f64) -> (f64, f64, f64) {
    let s = s.clamp(0.0, 1.0);
    let v = s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
    let d = 30.0 * s * s * (1.0 - s) * (1.0 - s);
    let dd = 60.0 * s * (1.0 - s) * (1.0 - 2.0 * s);
    (v, d, dd)
}

impl Theta {
    /// Value, gradient and Hessian.
    pub fn jet(&self, x: &[f64]) -> (f64, Vec<f64>, Vec<Vec<f64>>) {
        let n = x.len();
        match self {
            Theta::Constant(c) => (*c, vec![0.0; n], vec![vec![0.0; n]; n]),
            Theta::Bump { center, inner, outer } => {
                let d: Vec<f64> = x.iter().zip(center).map(|(a, b)| a - b).collect();
                let r = d.iter().map(|v| v * v).sum::<f64>().sqrt();
                let w = outer - inner;
                if r <= *inner || r >= *outer {
                    let v = if r <= *inner { 1.0 } else { 0.0 };
                    return (v, vec![0.0; n], vec![vec![0.0; n]; n]);
                }
                let (s, ds, dds) = smoothstep((r - inner) / w);
                let (g1, g2) = (-ds / w, -dds / (w * w));
                let u: Vec<f64> = d.iter().map(|v| v / r).collect();
                let grad = u.iter().map(|ui| g1 * ui).collect();
                let hess = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                let id = if i == j { 1.0 } else { 0.0 };
                                g2 * u[i] * u[j] + g1 / r * (id - u[i] * u[j])
                            })
                            .collect()
                    })
                    .collect();
                (1.0 - s, grad, hess)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fault {
    pub phi: Polynomial,
    pub theta: Theta,
    /// Negative-control hook: an extra symmetric matrix added to the `+`
    /// side Hessian on this fault. Valid specs leave it empty.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub injected_jump: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EarthquakeSpec {
    #[serde(default = "one")]
    pub schema_version: u32,
    pub dim: usize,
    pub faults: Vec<Fault>,
}

fn one() -> u32 {
    1
}

/// Side of a fault used for one-sided jets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Minus,
    Plus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaultSides {
    pub fault: usize,
    /// Hessian of `tΦ` from the side `φ < 0`.
    pub minus: Vec<Vec<f64>>,
    /// Hessian of `tΦ` from the side `φ > 0`.
    pub plus: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    /// Hessian of `tΦ` when `q` is off every fault.
    pub hessian: Option<Vec<Vec<f64>>>,
    /// One-sided data for each fault through `q`.
    pub sides: Vec<FaultSides>,
}

/// `|φ| ≤ FAULT_TOL` counts as on the fault.
pub const FAULT_TOL: f64 = 1e-12;

impl EarthquakeSpec {
    pub fn validate(&self) -> Result<(), FlowError> {
        for (j, f) in self.faults.iter().enumerate() {
            if f.phi.vars != self.dim || f.phi.terms.iter().any(|t| t.exps.len() != self.dim) {
                return Err(FlowError::InvalidSpec(format!("fault {j} has the wrong number of variables")));
            }
            if let Theta::Bump { center, inner, outer } = &f.theta {
                if center.len() != self.dim || !(0.0 <= *inner && inner < outer) {
                    return Err(FlowError::InvalidSpec(format!("fault {j} has a malformed bump cutoff")));
                }
            }
            if let Some(m) = &f.injected_jump {
                if m.len() != self.dim || m.iter().any(|r| r.len() != self.dim) {
                    return Err(FlowError::InvalidSpec(format!("fault {j} injected jump has the wrong size")));
                }
            }
        }
        Ok(())
    }

    pub fn phi(&self, q: &[f64]) -> Vec<f64> {
        self.faults.iter().map(|f| f.phi.eval(q)).collect()
    }

    /// `Φ(q)`.
    pub fn potential(&self, q: &[f64]) -> f64 {
        self.faults
            .iter()
            .map(|f| {
                let v = f.phi.eval(q).max(0.0);
                f.theta.jet(q).0 * v * v
            })
            .sum()
    }

    /// `dΦ(q)` from symbolic gradients.
    pub fn gradient(&self, q: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut g = vec![0.0; n];
        for f in &self.faults {
            let v = f.phi.eval(q).max(0.0);
            if v == 0.0 {
                continue;
            }
            let (th, dth, _) = f.theta.jet(q);
            let dphi = f.phi.gradient(q);
            for i in 0..n {
                g[i] += dth[i] * v * v + 2.0 * th * v * dphi[i];
            }
        }
        g
    }

    /// Hessian of `Φ` with fault `j`'s indicator fixed by `sides[j]`
    /// (`None` uses the sign of `φ_j(q)`).
    pub fn hessian_with(&self, q: &[f64], sides: &[Option<Side>]) -> Vec<Vec<f64>> {
        let n = self.dim;
        let mut h = vec![vec![0.0; n]; n];
        for (j, f) in self.faults.iter().enumerate() {
            let phi = f.phi.eval(q);
            let v = phi.max(0.0);
            let active = match sides[j] {
                Some(Side::Plus) => true,
                Some(Side::Minus) => false,
                None => phi > 0.0,
            };
            let (th, dth, hth) = f.theta.jet(q);
            let dphi = f.phi.gradient(q);
            let hphi = f.phi.hessian(q);
            for a in 0..n {
                for b in 0..n {
                    let mut e = hth[a][b] * v * v + 2.0 * v * (dth[a] * dphi[b] + dphi[a] * dth[b]) + 2.0 * th * v * hphi[a][b];
                    if active {
                        e += 2.0 * th * dphi[a] * dphi[b];
                    }
                    h[a][b] += e;
                }
            }
            if let (Some(Side::Plus), Some(m)) = (sides[j], &f.injected_jump) {
                for a in 0..n {
                    for b in 0..n {
                        h[a][b] += m[a][b];
                    }
                }
            }
        }
        h
    }
}

fn scaled(m: Vec<Vec<f64>>, t: f64) -> Vec<Vec<f64>> {
    m.into_iter().map(|r| r.into_iter().map(|v| t * v).collect()).collect()
}

/// The point `(q, t dΦ(q))` of `L_t` with its tangent data.
pub fn earthquake_section(e: &EarthquakeSpec, q: &[f64], t: f64) -> Result<Section, FlowError> {
    e.validate()?;
    if q.len() != e.dim {
        return Err(FlowError::InvalidSpec(format!("point has {} coordinates, expected {}", q.len(), e.dim)));
    }
    let p = e.gradient(q).into_iter().map(|v| t * v).collect();
    let phis = e.phi(q);
    let on: Vec<usize> = (0..phis.len()).filter(|&j| phis[j].abs() <= FAULT_TOL).collect();
    let hessian = on.is_empty().then(|| scaled(e.hessian_with(q, &vec![None; phis.len()]), t));
    let sides = on
        .iter()
        .map(|&j| {
            // Other faults through `q` are held on their minus side.
            let mut s: Vec<Option<Side>> = (0..phis.len()).map(|k| on.contains(&k).then_some(Side::Minus)).collect();
            let minus = scaled(e.hessian_with(q, &s), t);
            s[j] = Some(Side::Plus);
            let plus = scaled(e.hessian_with(q, &s), t);
            FaultSides { fault: j, minus, plus }
        })
        .collect();
    Ok(Section { q: q.to_vec(), p, hessian, sides })
}

/// Tangent plane `span(∂q_i + Σ_k H_ik ∂p_k)` as a `2n × n` basis.
pub fn graph_plane(h: &[Vec<f64>]) -> DMatrix<f64> {
    let n = h.len();
    DMatrix::from_fn(2 * n, n, |r, c| if r < n { if r == c { 1.0 } else { 0.0 } } else { h[c][r - n] })
}

/// Default numerical-rank threshold for `σ₂/σ₁`.
pub const RANK_RATIO: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JumpSample {
    pub q: Vec<f64>,
    pub singular_values: Vec<f64>,
    pub rank_one: bool,
    /// Norm of the jump restricted to the fault tangent, relative to `σ₁`.
    pub kernel_residual: f64,
}

/// Checks that the one-sided Hessians of `tΦ` across fault `j` differ by a
/// rank-one form whose kernel contains the fault tangent, at each sample.
pub fn tectonic_jump_check(
    e: &EarthquakeSpec,
    fault: usize,
    samples: &[Vec<f64>],
    t: f64,
    ratio: f64,
) -> Result<(bool, Vec<JumpSample>), FlowError> {
    e.validate()?;
    if fault >= e.faults.len() {
        return Err(FlowError::InvalidSpec(format!("no fault {fault}")));
    }
    let n = e.dim;
    let mut out = Vec::with_capacity(samples.len());
    for q in samples {
        let phis = e.phi(q);
        if phis[fault].abs() > 1e-9 {
            return Err(FlowError::OffFault { fault, q: q.clone() });
        }
        if phis.iter().enumerate().any(|(k, v)| k != fault && v.abs() <= 1e-9) {
            return Err(FlowError::FaultIntersection(q.clone()));
        }
        let mut s = vec![None; phis.len()];
        s[fault] = Some(Side::Minus);
        let minus = e.hessian_with(q, &s);
        s[fault] = Some(Side::Plus);
        let plus = e.hessian_with(q, &s);
        let jump = DMatrix::from_fn(n, n, |a, b| t * (plus[a][b] - minus[a][b]));
        let sv = jump.clone().svd(false, false).singular_values;
        let mut sigmas: Vec<f64> = sv.iter().copied().collect();
        sigmas.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
        let s1 = sigmas[0];
        let rank_one = s1 > 0.0 && sigmas.get(1).map_or(true, |s2| s2 / s1 < ratio);
        // Restriction of the jump to the fault tangent, via the projection
        // `I − ggᵀ/|g|²`; the Frobenius norm bounds the operator norm.
        let g = nalgebra::DVector::from_vec(e.faults[fault].phi.gradient(q));
        let proj = DMatrix::identity(n, n) - &g * g.transpose() / g.norm_squared();
        let kernel_residual = if s1 > 0.0 { (&jump * proj).norm() / s1 } else { 0.0 };
        out.push(JumpSample { q: q.clone(), singular_values: sigmas, rank_one, kernel_residual });
    }
    let ok = out.iter().all(|s| s.rank_one && s.kernel_residual < ratio);
    Ok((ok, out))
}

/// Up to `count` points on fault `j` inside the box `[lo, hi]`, off every
/// other fault. In one variable these are sign-change roots on a fine grid;
/// otherwise points along the box diagonals and midlines are projected onto
/// `{φ_j = 0}` by Newton steps along `∇φ_j`.
pub fn fault_samples(e: &EarthquakeSpec, j: usize, lo: &[f64], hi: &[f64], count: usize) -> Vec<Vec<f64>> {
    let phi = &e.faults[j].phi;
    let n = e.dim;
    let inside = |x: &[f64]| x.iter().zip(lo.iter().zip(hi)).all(|(v, (a, b))| *a <= *v && *v <= *b);
    let off_others = |x: &[f64]| e.phi(x).iter().enumerate().all(|(k, v)| k == j || v.abs() > 1e-6);
    let mut out: Vec<Vec<f64>> = Vec::new();
    if n == 1 {
        let steps = 4096;
        let at = |i: usize| lo[0] + (hi[0] - lo[0]) * i as f64 / steps as f64;
        for i in 0..steps {
            let (a, b) = (at(i), at(i + 1));
            let (fa, fb) = (phi.eval(&[a]), phi.eval(&[b]));
            if fa == 0.0 {
                out.push(vec![a]);
            } else if fa * fb < 0.0 {
                let (mut l, mut r) = (a, b);
                for _ in 0..200 {
                    let m = 0.5 * (l + r);
                    if phi.eval(&[l]) * phi.eval(&[m]) <= 0.0 { r = m } else { l = m }
                }
                out.push(vec![0.5 * (l + r)]);
            }
        }
        out.retain(|x| off_others(x));
        out.truncate(count);
        return out;
    }
    let starts = count.max(1) * 4;
    for k in 0..starts {
        let s = (k as f64 + 0.5) / starts as f64;
        // Alternate between the main diagonal and the first-axis midline.
        let x0: Vec<f64> = (0..n)
            .map(|a| {
                if k % 2 == 0 || a == 0 { lo[a] + s * (hi[a] - lo[a]) } else { 0.5 * (lo[a] + hi[a]) }
            })
            .collect();
        let mut x = x0;
        for _ in 0..100 {
            let f = phi.eval(&x);
            let g = phi.gradient(&x);
            let g2: f64 = g.iter().map(|v| v * v).sum();
            if g2 == 0.0 {
                break;
            }
            for a in 0..n {
                x[a] -= f * g[a] / g2;
            }
            if phi.eval(&x).abs() < 1e-14 {
                break;
            }
        }
        if phi.eval(&x).abs() < 1e-12
            && inside(&x)
            && off_others(&x)
            && out.iter().all(|y| y.iter().zip(&x).map(|(u, v)| (u - v).powi(2)).sum::<f64>() > 1e-12)
        {
            out.push(x);
        }
        if out.len() == count {
            break;
        }
    }
    out
}
