//! Morse-Bott Weinstein normal forms with boundary on `T*ℝⁿ`, as products
//! of planar factors of index 0 or 1, in coordinates `(q_1..q_n, p_1..p_n)`
//! with `ω = Σ dp∧dq`.

use super::FlowError;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Quintic smoothstep cutoff: `ψ(q) = S(-q/ε)` with
/// `S(s) = 10s³ − 15s⁴ + 6s⁵` on `[0, 1]`, so `ψ = 0` on `[0, ∞)`, `ψ = 1` on
/// `(-∞, -ε]` and `ψ' < 0` on `(-ε, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cutoff {
    pub eps: f64,
}

impl Cutoff {
    pub fn new(eps: f64) -> Result<Self, FlowError> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(FlowError::InvalidModel(format!("cutoff width must be positive, got {eps}")));
        }
        Ok(Cutoff { eps })
    }

    fn s(&self, q: f64) -> f64 {
        (-q / self.eps).clamp(0.0, 1.0)
    }

    pub fn psi(&self, q: f64) -> f64 {
        let s = self.s(q);
        s * s * s * (10.0 - 15.0 * s + 6.0 * s * s)
    }

    pub fn dpsi(&self, q: f64) -> f64 {
        let s = self.s(q);
        // dS/ds · ds/dq with ds/dq = -1/ε.
        -30.0 * s * s * (1.0 - s) * (1.0 - s) / self.eps
    }

    /// `h(q) = ∫₀^q ψ(t) t dt`.
    pub fn h(&self, q: f64) -> f64 {
        if q >= 0.0 {
            return 0.0;
        }
        let s = -q / self.eps;
        let e2 = self.eps * self.eps;
        if s >= 1.0 {
            e2 * (5.0 / 14.0 + (s * s - 1.0) / 2.0)
        } else {
            e2 * s.powi(5) * (2.0 - 2.5 * s + 6.0 / 7.0 * s * s)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FactorIndex {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
}

impl FactorIndex {
    pub fn from_int(k: u8) -> Result<Self, FlowError> {
        match k {
            0 => Ok(FactorIndex::Zero),
            1 => Ok(FactorIndex::One),
            _ => Err(FlowError::InvalidModel(format!("factor index must be 0 or 1, got {k}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MorseBottModel {
    pub factors: Vec<FactorIndex>,
    pub cutoff: Cutoff,
}

impl MorseBottModel {
    pub fn new(factors: Vec<FactorIndex>, eps: f64) -> Result<Self, FlowError> {
        if factors.is_empty() {
            return Err(FlowError::InvalidModel("a model needs at least one factor".into()));
        }
        Ok(MorseBottModel { factors, cutoff: Cutoff::new(eps)? })
    }

    pub fn planar(index: FactorIndex, eps: f64) -> Result<Self, FlowError> {
        Self::new(vec![index], eps)
    }

    pub fn dim_half(&self) -> usize {
        self.factors.len()
    }

    fn check(&self, x: &[f64]) {
        assert_eq!(x.len(), 2 * self.dim_half(), "state has the wrong length");
    }

    /// `Z = Z_std + X_f` factorwise, with `f₁ = ψpq` and `f₀ = -½ψpq`.
    pub fn liouville_field(&self, x: &[f64]) -> Vec<f64> {
        self.check(x);
        let n = self.dim_half();
        let mut z = vec![0.0; 2 * n];
        for (i, k) in self.factors.iter().enumerate() {
            let (q, p) = (x[i], x[n + i]);
            let (psi, dpsi) = (self.cutoff.psi(q), self.cutoff.dpsi(q));
            let (zq, zp) = match k {
                FactorIndex::One => (-psi * q, (1.0 + psi + dpsi * q) * p),
                FactorIndex::Zero => (0.5 * psi * q, (1.0 - 0.5 * psi - 0.5 * dpsi * q) * p),
            };
            z[i] = zq;
            z[n + i] = zp;
        }
        z
    }

    /// `λ = p dq + df`, as coefficients of `(dq, dp)`.
    pub fn liouville_form(&self, x: &[f64]) -> Vec<f64> {
        self.check(x);
        let n = self.dim_half();
        let mut l = vec![0.0; 2 * n];
        for (i, k) in self.factors.iter().enumerate() {
            let (q, p) = (x[i], x[n + i]);
            let (psi, dpsi) = (self.cutoff.psi(q), self.cutoff.dpsi(q));
            let c = match k {
                FactorIndex::One => 1.0,
                FactorIndex::Zero => -0.5,
            };
            l[i] = p + c * (dpsi * q + psi) * p;
            l[n + i] = c * psi * q;
        }
        l
    }

    /// Sum of factor Lyapunov functions `p² − h(q)` (index 1), `p² + h(q)` (index 0).
    pub fn lyapunov(&self, x: &[f64]) -> f64 {
        self.check(x);
        let n = self.dim_half();
        self.factors
            .iter()
            .enumerate()
            .map(|(i, k)| {
                let (q, p) = (x[i], x[n + i]);
                match k {
                    FactorIndex::One => p * p - self.cutoff.h(q),
                    FactorIndex::Zero => p * p + self.cutoff.h(q),
                }
            })
            .sum()
    }

    /// `dφ(Z)` in closed form, a sum of nonnegative factor terms.
    pub fn lyapunov_derivative(&self, x: &[f64]) -> f64 {
        self.check(x);
        let n = self.dim_half();
        self.factors
            .iter()
            .enumerate()
            .map(|(i, k)| {
                let (q, p) = (x[i], x[n + i]);
                let (psi, dpsi) = (self.cutoff.psi(q), self.cutoff.dpsi(q));
                match k {
                    FactorIndex::One => 2.0 * (1.0 + psi + dpsi * q) * p * p + psi * psi * q * q,
                    FactorIndex::Zero => (2.0 - psi - dpsi * q) * p * p + 0.5 * psi * psi * q * q,
                }
            })
            .sum()
    }

    /// Distance-like test for the critical set `{p = 0, q ≥ 0}` of one factor.
    fn factor_near_critical(&self, q: f64, p: f64, band: f64) -> bool {
        p.abs() < band && q > -band
    }
}

/// A tensor grid on every planar factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub q_range: (f64, f64),
    pub p_range: (f64, f64),
    pub nq: usize,
    pub np: usize,
    /// Points with every factor within this band of its critical set are skipped.
    pub band: f64,
}

impl Grid {
    pub fn square(half_width: f64, n: usize, band: f64) -> Self {
        Grid { q_range: (-half_width, half_width), p_range: (-half_width, half_width), nq: n, np: n, band }
    }

    fn axis(range: (f64, f64), k: usize, i: usize) -> f64 {
        if k <= 1 {
            return range.0;
        }
        range.0 + (range.1 - range.0) * i as f64 / (k - 1) as f64
    }

    fn planar_points(&self) -> Vec<(f64, f64)> {
        (0..self.nq)
            .flat_map(|i| (0..self.np).map(move |j| (i, j)))
            .map(|(i, j)| (Self::axis(self.q_range, self.nq, i), Self::axis(self.p_range, self.np, j)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LyapunovReport {
    pub grid: Grid,
    pub evaluated: usize,
    pub skipped: usize,
    /// Minimum of `dφ(Z)` over the evaluated points.
    pub margin: f64,
    pub argmin: Vec<f64>,
    /// Evaluated points with `dφ(Z) ≤ 0`.
    pub violations: Vec<Vec<f64>>,
}

pub fn lyapunov_check(m: &MorseBottModel, grid: &Grid) -> Result<LyapunovReport, FlowError> {
    if !(grid.band > 0.0) {
        return Err(FlowError::GridTouchesCriticalSet);
    }
    if grid.nq == 0 || grid.np == 0 {
        return Err(FlowError::InvalidModel("grid must have at least one point per axis".into()));
    }
    let planar = grid.planar_points();
    let n = m.dim_half();
    let total = planar.len().pow(n as u32);
    let results: Vec<Option<(f64, Vec<f64>)>> = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let mut x = vec![0.0; 2 * n];
            for i in 0..n {
                let (q, p) = planar[idx % planar.len()];
                idx /= planar.len();
                x[i] = q;
                x[n + i] = p;
            }
            let near = (0..n).all(|i| m.factor_near_critical(x[i], x[n + i], grid.band));
            (!near).then(|| (m.lyapunov_derivative(&x), x))
        })
        .collect();
    let mut margin = f64::INFINITY;
    let mut argmin = Vec::new();
    let mut violations = Vec::new();
    let mut evaluated = 0;
    for (v, x) in results.iter().flatten() {
        evaluated += 1;
        if *v < margin {
            margin = *v;
            argmin = x.clone();
        }
        if *v <= 0.0 {
            violations.push(x.clone());
        }
    }
    Ok(LyapunovReport { grid: *grid, evaluated, skipped: total - evaluated, margin, argmin, violations })
}

/// One classical Runge-Kutta step of `ẋ = sign·Z(x)`.
pub fn rk4_step(m: &MorseBottModel, x: &[f64], h: f64, sign: f64) -> Vec<f64> {
    let f = |y: &[f64]| -> Vec<f64> { m.liouville_field(y).into_iter().map(|v| sign * v).collect() };
    let add = |a: &[f64], b: &[f64], c: f64| -> Vec<f64> { a.iter().zip(b).map(|(u, v)| u + c * v).collect() };
    let k1 = f(x);
    let k2 = f(&add(x, &k1, h / 2.0));
    let k3 = f(&add(x, &k2, h / 2.0));
    let k4 = f(&add(x, &k3, h));
    (0..x.len()).map(|i| x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])).collect()
}

/// Divergence guard: any coordinate beyond this magnitude aborts a run.
pub const DIVERGENCE_BOUND: f64 = 1e6;

/// Integrates `ẋ = sign·Z` for `horizon` with fixed step `h`, recording every
/// `record_every`-th state (and the final one).
pub fn trajectory(
    m: &MorseBottModel,
    seed: &[f64],
    horizon: f64,
    h: f64,
    sign: f64,
    record_every: usize,
) -> Result<Vec<(f64, Vec<f64>)>, FlowError> {
    if !(horizon > 0.0 && h > 0.0) {
        return Err(FlowError::InvalidModel("horizon and step must be positive".into()));
    }
    // Uniform steps no longer than `h` that end exactly at `horizon`.
    let steps = ((horizon / h) - 1e-9).ceil().max(1.0) as usize;
    let h = horizon / steps as f64;
    let every = record_every.max(1);
    let mut x = seed.to_vec();
    let mut out = vec![(0.0, x.clone())];
    for k in 1..=steps {
        x = rk4_step(m, &x, h, sign);
        if x.iter().any(|v| !v.is_finite() || v.abs() > DIVERGENCE_BOUND) {
            return Err(FlowError::Diverged { seed: seed.to_vec(), time: k as f64 * h });
        }
        if k % every == 0 || k == steps {
            out.push((k as f64 * h, x.clone()));
        }
    }
    Ok(out)
}

/// Endpoints of the backward flow from each seed.
pub fn skeleton_estimate(
    m: &MorseBottModel,
    seeds: &[Vec<f64>],
    horizon: f64,
    h: f64,
) -> Result<Vec<Vec<f64>>, FlowError> {
    seeds
        .par_iter()
        .map(|s| {
            let t = trajectory(m, s, horizon, h, -1.0, usize::MAX)?;
            Ok(t.last().expect("trajectory is nonempty").1.clone())
        })
        .collect()
}

/// Distance of a point to the critical quadrant `{p = 0, q ≥ 0}`.
pub fn distance_to_critical_set(x: &[f64]) -> f64 {
    let n = x.len() / 2;
    (0..n)
        .map(|i| {
            let dq = x[i].min(0.0);
            dq * dq + x[n + i] * x[n + i]
        })
        .sum::<f64>()
        .sqrt()
}

/// `λ_{x(t)}(DΦ_t v) / λ_x(v)` for the forward flow `Φ_t`, with `DΦ_t v`
/// estimated by central differences of step `delta`. Equals `e^t` exactly.
pub fn liouville_scaling_ratio(
    m: &MorseBottModel,
    x: &[f64],
    v: &[f64],
    t: f64,
    h: f64,
    delta: f64,
) -> Result<f64, FlowError> {
    let flow = |y: Vec<f64>| -> Result<Vec<f64>, FlowError> {
        Ok(trajectory(m, &y, t, h, 1.0, usize::MAX)?.pop().expect("nonempty").1)
    };
    let shifted = |c: f64| x.iter().zip(v).map(|(a, b)| a + c * b).collect::<Vec<_>>();
    let xt = flow(x.to_vec())?;
    let plus = flow(shifted(delta))?;
    let minus = flow(shifted(-delta))?;
    let dv: Vec<f64> = plus.iter().zip(&minus).map(|(a, b)| (a - b) / (2.0 * delta)).collect();
    let pair = |l: Vec<f64>, w: &[f64]| l.iter().zip(w).map(|(a, b)| a * b).sum::<f64>();
    Ok(pair(m.liouville_form(&xt), &dv) / pair(m.liouville_form(x), v))
}
