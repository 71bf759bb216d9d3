//! Classical minimizers over the ansatz parameter vector.
//!
//! Four methods: SPSA (simultaneous-perturbation stochastic approximation),
//! COBYLA (linear-approximation trust region, via the `cobyla` crate),
//! Nelder–Mead (simplex direct search), and ADAM driven by central
//! finite-difference gradients. Every objective call is recorded as
//! `(evaluation index, θ hash, value)`, so `best_value` is always the exact
//! running minimum of the history and convergence curves can be replayed.
//!
//! All four are deterministic given the seed: SPSA draws its ±1 perturbations
//! from a counter-keyed stream, and the finite-difference / simplex evaluation
//! orders are fixed. Default budgets: SPSA 300 iterations (plus a short
//! gain-calibration phase), COBYLA and Nelder–Mead up to 2000 evaluations,
//! ADAM 200 steps.

use crate::rng::{hash_theta, stream_seed, SplitMix64};
use cobyla::{Func, RhoBeg, StopTols};
use serde::{Deserialize, Serialize};
use std::cell::RefCell;
use std::str::FromStr;

/// Stream tag for SPSA perturbation draws.
const STREAM_SPSA: u64 = 0x5B5A;
/// Stream tag for initial-point draws.
const STREAM_THETA0: u64 = 0x7E7A0;
/// Number of gradient probes used to calibrate the SPSA gain `a`.
const SPSA_CALIBRATION_PROBES: usize = 10;

#[derive(Debug, thiserror::Error)]
pub enum OptimError {
    #[error("optimizer budget must be ≥ 1")]
    BadBudget,
    #[error("the parameter vector is empty")]
    EmptyTheta,
    #[error("unknown optimizer `{0}` (valid: spsa, cobyla, nelder-mead, adam)")]
    UnknownKind(String),
}

/// The four supported minimizers.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptimizerKind {
    Spsa,
    Cobyla,
    NelderMead,
    Adam,
}

impl OptimizerKind {
    pub const ALL: [OptimizerKind; 4] = [
        OptimizerKind::Spsa,
        OptimizerKind::Cobyla,
        OptimizerKind::NelderMead,
        OptimizerKind::Adam,
    ];

    pub fn id(self) -> &'static str {
        match self {
            OptimizerKind::Spsa => "spsa",
            OptimizerKind::Cobyla => "cobyla",
            OptimizerKind::NelderMead => "nelder-mead",
            OptimizerKind::Adam => "adam",
        }
    }

    /// Default budget, in the unit native to each method: SPSA iterations,
    /// COBYLA / Nelder–Mead objective evaluations, ADAM steps.
    pub fn default_budget(self) -> usize {
        match self {
            OptimizerKind::Spsa => 300,
            OptimizerKind::Cobyla | OptimizerKind::NelderMead => 2000,
            OptimizerKind::Adam => 200,
        }
    }
}

impl FromStr for OptimizerKind {
    type Err = OptimError;
    fn from_str(s: &str) -> Result<Self, OptimError> {
        match s.to_ascii_lowercase().as_str() {
            "spsa" => Ok(OptimizerKind::Spsa),
            "cobyla" => Ok(OptimizerKind::Cobyla),
            "nelder-mead" | "neldermead" | "nm" => Ok(OptimizerKind::NelderMead),
            "adam" => Ok(OptimizerKind::Adam),
            other => Err(OptimError::UnknownKind(other.to_string())),
        }
    }
}

impl std::fmt::Display for OptimizerKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

/// Optimizer settings. `max_iterations` is interpreted in each method's
/// native unit (see [`OptimizerKind::default_budget`]); the remaining fields
/// are per-method hyperparameters at their documented defaults.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub kind: OptimizerKind,
    pub max_iterations: usize,
    pub seed: u64,
    /// SPSA gain `a`; when absent it is calibrated from ~10 gradient probes
    /// so the first update has magnitude ≈ `spsa_target_step` per component.
    #[serde(default)]
    pub spsa_a: Option<f64>,
    /// SPSA perturbation scale `c` in c_k = c/(k+1)^0.101.
    #[serde(default = "default_spsa_c")]
    pub spsa_c: f64,
    /// Target first-step magnitude for SPSA gain calibration.
    #[serde(default = "default_spsa_target_step")]
    pub spsa_target_step: f64,
    /// COBYLA initial trust radius.
    #[serde(default = "default_rho_begin")]
    pub cobyla_rho_begin: f64,
    /// COBYLA final trust radius (termination).
    #[serde(default = "default_rho_end")]
    pub cobyla_rho_end: f64,
    /// Nelder–Mead termination: simplex x-spread threshold.
    #[serde(default = "default_nm_tol")]
    pub nm_xatol: f64,
    /// Nelder–Mead termination: simplex value-spread threshold.
    #[serde(default = "default_nm_tol")]
    pub nm_fatol: f64,
    /// ADAM learning rate α.
    #[serde(default = "default_adam_alpha")]
    pub adam_alpha: f64,
    /// ADAM central finite-difference step h.
    #[serde(default = "default_adam_h")]
    pub adam_h: f64,
    /// ADAM first-moment decay β₁.
    #[serde(default = "default_adam_beta1")]
    pub adam_beta1: f64,
    /// ADAM second-moment decay β₂.
    #[serde(default = "default_adam_beta2")]
    pub adam_beta2: f64,
    /// ADAM denominator guard ε.
    #[serde(default = "default_adam_eps")]
    pub adam_eps: f64,
}

fn default_spsa_c() -> f64 {
    0.1
}
fn default_spsa_target_step() -> f64 {
    0.1
}
fn default_rho_begin() -> f64 {
    1.0
}
fn default_rho_end() -> f64 {
    1e-4
}
fn default_nm_tol() -> f64 {
    1e-6
}
fn default_adam_alpha() -> f64 {
    0.1
}
fn default_adam_h() -> f64 {
    1e-2
}
fn default_adam_beta1() -> f64 {
    0.9
}
fn default_adam_beta2() -> f64 {
    0.999
}
fn default_adam_eps() -> f64 {
    1e-8
}

impl OptimizerConfig {
    /// Config with the method's default budget and hyperparameters.
    pub fn new(kind: OptimizerKind, seed: u64) -> Self {
        OptimizerConfig {
            kind,
            max_iterations: kind.default_budget(),
            seed,
            spsa_a: None,
            spsa_c: default_spsa_c(),
            spsa_target_step: default_spsa_target_step(),
            cobyla_rho_begin: default_rho_begin(),
            cobyla_rho_end: default_rho_end(),
            nm_xatol: default_nm_tol(),
            nm_fatol: default_nm_tol(),
            adam_alpha: default_adam_alpha(),
            adam_h: default_adam_h(),
            adam_beta1: default_adam_beta1(),
            adam_beta2: default_adam_beta2(),
            adam_eps: default_adam_eps(),
        }
    }
}

/// Outcome of one minimization: the best point seen, the full evaluation
/// trace, and the total number of objective calls.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OptimizerRun {
    pub best_theta: Vec<f64>,
    pub best_value: f64,
    /// (evaluation index, θ snapshot hash, objective value), in call order.
    pub history: Vec<(usize, u64, f64)>,
    pub evaluations: usize,
}

/// Records every objective call and tracks the argmin as it happens.
struct Recorder<'a> {
    f: &'a mut dyn FnMut(&[f64]) -> f64,
    history: Vec<(usize, u64, f64)>,
    best_theta: Vec<f64>,
    best_value: f64,
}

impl<'a> Recorder<'a> {
    fn new(f: &'a mut dyn FnMut(&[f64]) -> f64) -> Self {
        Recorder { f, history: Vec::new(), best_theta: Vec::new(), best_value: f64::INFINITY }
    }

    fn eval(&mut self, theta: &[f64]) -> f64 {
        let value = (self.f)(theta);
        self.history.push((self.history.len(), hash_theta(theta), value));
        if value < self.best_value {
            self.best_value = value;
            self.best_theta = theta.to_vec();
        }
        value
    }

    fn count(&self) -> usize {
        self.history.len()
    }

    fn into_run(self) -> OptimizerRun {
        let evaluations = self.history.len();
        OptimizerRun {
            best_theta: self.best_theta,
            best_value: self.best_value,
            history: self.history,
            evaluations,
        }
    }
}

/// Draw each θ component uniformly from [0, 2π), keyed by the run seed.
pub fn random_theta0(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = SplitMix64::new(stream_seed(seed, STREAM_THETA0, 0));
    (0..n).map(|_| rng.next_angle()).collect()
}

/// Minimize `f` from `theta0` with the configured method.
pub fn minimize(
    f: &mut dyn FnMut(&[f64]) -> f64,
    theta0: &[f64],
    cfg: &OptimizerConfig,
) -> Result<OptimizerRun, OptimError> {
    if cfg.max_iterations == 0 {
        return Err(OptimError::BadBudget);
    }
    if theta0.is_empty() {
        return Err(OptimError::EmptyTheta);
    }
    match cfg.kind {
        OptimizerKind::Spsa => spsa_minimize(f, theta0, cfg),
        OptimizerKind::Cobyla => cobyla_minimize(f, theta0, cfg),
        OptimizerKind::NelderMead => nelder_mead_minimize(f, theta0, cfg),
        OptimizerKind::Adam => adam_minimize(f, theta0, cfg),
    }
}

/// One ±1 perturbation direction.
fn draw_delta(rng: &mut SplitMix64, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.next_sign()).collect()
}

/// SPSA with the standard gain schedule a_k = a/(k+1+A)^0.602,
/// c_k = c/(k+1)^0.101, A = 0.1·max_iterations. When `spsa_a` is not given,
/// `a` is calibrated from a few two-sided gradient probes at θ₀ so the first
/// update moves each component by about `spsa_target_step`; the calibration
/// evaluations are part of the recorded history.
pub fn spsa_minimize(
    f: &mut dyn FnMut(&[f64]) -> f64,
    theta0: &[f64],
    cfg: &OptimizerConfig,
) -> Result<OptimizerRun, OptimError> {
    let n = theta0.len();
    let mut rec = Recorder::new(f);
    let mut rng = SplitMix64::new(stream_seed(cfg.seed, STREAM_SPSA, 0));
    let big_a = 0.1 * cfg.max_iterations as f64;
    let c = cfg.spsa_c;
    let mut theta = theta0.to_vec();

    let a = match cfg.spsa_a {
        Some(a) => a,
        None => {
            // Mean per-component gradient magnitude from two-sided probes.
            let mut magnitude_sum = 0.0;
            for _ in 0..SPSA_CALIBRATION_PROBES {
                let delta = draw_delta(&mut rng, n);
                let plus: Vec<f64> = theta.iter().zip(&delta).map(|(t, d)| t + c * d).collect();
                let minus: Vec<f64> = theta.iter().zip(&delta).map(|(t, d)| t - c * d).collect();
                let f_plus = rec.eval(&plus);
                let f_minus = rec.eval(&minus);
                magnitude_sum += (f_plus - f_minus).abs() / (2.0 * c);
            }
            let mean_magnitude = (magnitude_sum / SPSA_CALIBRATION_PROBES as f64).max(1e-10);
            cfg.spsa_target_step * (1.0 + big_a).powf(0.602) / mean_magnitude
        }
    };

    for k in 0..cfg.max_iterations {
        let a_k = a / (k as f64 + 1.0 + big_a).powf(0.602);
        let c_k = c / (k as f64 + 1.0).powf(0.101);
        let delta = draw_delta(&mut rng, n);
        let plus: Vec<f64> = theta.iter().zip(&delta).map(|(t, d)| t + c_k * d).collect();
        let minus: Vec<f64> = theta.iter().zip(&delta).map(|(t, d)| t - c_k * d).collect();
        let f_plus = rec.eval(&plus);
        let f_minus = rec.eval(&minus);
        let scale = (f_plus - f_minus) / (2.0 * c_k);
        // ĝ_j = scale / Δ_j = scale·Δ_j since Δ_j = ±1.
        for (t, d) in theta.iter_mut().zip(&delta) {
            *t -= a_k * scale * d;
        }
    }
    Ok(rec.into_run())
}

/// COBYLA: Powell's linear-approximation trust-region method, unconstrained
/// here (±∞ bounds, no inequality constraints). The trust radius shrinks
/// from `cobyla_rho_begin` to `cobyla_rho_end`; the evaluation cap is
/// `max_iterations`.
pub fn cobyla_minimize(
    f: &mut dyn FnMut(&[f64]) -> f64,
    theta0: &[f64],
    cfg: &OptimizerConfig,
) -> Result<OptimizerRun, OptimError> {
    let rec = RefCell::new(Recorder::new(f));
    let objective = |x: &[f64], _: &mut ()| rec.borrow_mut().eval(x);
    let cons: Vec<&dyn Func<()>> = Vec::new();
    let bounds = vec![(f64::NEG_INFINITY, f64::INFINITY); theta0.len()];
    let stop = StopTols {
        // The trust radius terminates at xtol_rel·rho_begin = rho_end.
        xtol_rel: cfg.cobyla_rho_end / cfg.cobyla_rho_begin,
        ..StopTols::default()
    };
    // The status is advisory; the recorded history is the ground truth and
    // it already tracks the best point seen.
    let _ = cobyla::minimize(
        objective,
        theta0,
        &bounds,
        &cons,
        (),
        cfg.max_iterations,
        RhoBeg::All(cfg.cobyla_rho_begin),
        Some(stop),
    );
    Ok(rec.into_inner().into_run())
}

/// Nelder–Mead with the standard reflect(1)/expand(2)/contract(½)/shrink(½)
/// moves. The initial simplex scales each coordinate by 5% (or sets 2.5e-4
/// where it is zero). Terminates when the simplex x-spread falls below
/// `nm_xatol` **or** the value spread falls below `nm_fatol`, or at the
/// evaluation cap.
pub fn nelder_mead_minimize(
    f: &mut dyn FnMut(&[f64]) -> f64,
    theta0: &[f64],
    cfg: &OptimizerConfig,
) -> Result<OptimizerRun, OptimError> {
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;
    let n = theta0.len();
    let cap = cfg.max_iterations;
    let mut rec = Recorder::new(f);

    // Initial simplex around θ₀.
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(theta0.to_vec());
    for j in 0..n {
        let mut v = theta0.to_vec();
        if v[j] != 0.0 {
            v[j] *= 1.05;
        } else {
            v[j] = 2.5e-4;
        }
        simplex.push(v);
    }
    let mut values: Vec<f64> = Vec::with_capacity(n + 1);
    for v in &simplex {
        if rec.count() >= cap {
            break;
        }
        values.push(rec.eval(v));
    }
    while values.len() < simplex.len() {
        // Cap hit during the initial simplex: report what was evaluated.
        simplex.pop();
    }

    loop {
        // Order ascending by value.
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap_or(std::cmp::Ordering::Equal));
        let reordered: Vec<Vec<f64>> = order.iter().map(|&i| simplex[i].clone()).collect();
        let reordered_vals: Vec<f64> = order.iter().map(|&i| values[i]).collect();
        simplex = reordered;
        values = reordered_vals;
        if simplex.len() < n + 1 || rec.count() >= cap {
            break;
        }

        // Convergence: x-spread or value spread below tolerance.
        let x_spread = simplex[1..]
            .iter()
            .map(|v| {
                v.iter()
                    .zip(&simplex[0])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        let f_spread = values[1..]
            .iter()
            .map(|v| (v - values[0]).abs())
            .fold(0.0, f64::max);
        if x_spread <= cfg.nm_xatol || f_spread <= cfg.nm_fatol {
            break;
        }

        // Centroid of all but the worst vertex.
        let worst = simplex[n].clone();
        let mut centroid = vec![0.0; n];
        for v in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / n as f64;
            }
        }
        let blend = |from: &[f64], toward: &[f64], t: f64| -> Vec<f64> {
            from.iter().zip(toward).map(|(a, b)| a + t * (b - a)).collect()
        };

        // Reflection.
        let xr = blend(&centroid, &worst, -REFLECT);
        let fr = rec.eval(&xr);
        if fr < values[0] {
            // Try to expand past the reflection point.
            if rec.count() < cap {
                let xe = blend(&centroid, &worst, -EXPAND);
                let fe = rec.eval(&xe);
                if fe < fr {
                    simplex[n] = xe;
                    values[n] = fe;
                    continue;
                }
            }
            simplex[n] = xr;
            values[n] = fr;
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = xr;
            values[n] = fr;
            continue;
        }
        if rec.count() >= cap {
            break;
        }
        if fr < values[n] {
            // Outside contraction, toward the reflection point.
            let xc = blend(&centroid, &xr, CONTRACT);
            let fc = rec.eval(&xc);
            if fc <= fr {
                simplex[n] = xc;
                values[n] = fc;
                continue;
            }
        } else {
            // Inside contraction, toward the worst point.
            let xc = blend(&centroid, &worst, CONTRACT);
            let fc = rec.eval(&xc);
            if fc < values[n] {
                simplex[n] = xc;
                values[n] = fc;
                continue;
            }
        }
        // Shrink everything toward the best vertex: v ← best + σ(v − best).
        for i in 1..=n {
            if rec.count() >= cap {
                break;
            }
            let shrunk = blend(&simplex[0], &simplex[i], SHRINK);
            values[i] = rec.eval(&shrunk);
            simplex[i] = shrunk;
        }
    }
    Ok(rec.into_run())
}

/// Bias-corrected ADAM moment update; pure so the β₁ = β₂ = 0 degeneracy
/// (first moment estimate equal to the raw gradient) is directly checkable.
fn adam_update(
    m: &mut [f64],
    v: &mut [f64],
    grad: &[f64],
    beta1: f64,
    beta2: f64,
    step: usize,
) -> (Vec<f64>, Vec<f64>) {
    for ((mi, vi), g) in m.iter_mut().zip(v.iter_mut()).zip(grad) {
        *mi = beta1 * *mi + (1.0 - beta1) * g;
        *vi = beta2 * *vi + (1.0 - beta2) * g * g;
    }
    let bc1 = 1.0 - beta1.powi(step as i32);
    let bc2 = 1.0 - beta2.powi(step as i32);
    let m_hat = m.iter().map(|x| x / bc1).collect();
    let v_hat = v.iter().map(|x| x / bc2).collect();
    (m_hat, v_hat)
}

/// ADAM with central finite-difference gradients: each step spends 2n
/// objective evaluations on ∇f, then applies the bias-corrected update.
pub fn adam_minimize(
    f: &mut dyn FnMut(&[f64]) -> f64,
    theta0: &[f64],
    cfg: &OptimizerConfig,
) -> Result<OptimizerRun, OptimError> {
    let n = theta0.len();
    let mut rec = Recorder::new(f);
    let mut theta = theta0.to_vec();
    let mut m = vec![0.0; n];
    let mut v = vec![0.0; n];
    let h = cfg.adam_h;
    for step in 1..=cfg.max_iterations {
        let mut grad = vec![0.0; n];
        for j in 0..n {
            let mut plus = theta.clone();
            plus[j] += h;
            let mut minus = theta.clone();
            minus[j] -= h;
            let f_plus = rec.eval(&plus);
            let f_minus = rec.eval(&minus);
            grad[j] = (f_plus - f_minus) / (2.0 * h);
        }
        let (m_hat, v_hat) = adam_update(&mut m, &mut v, &grad, cfg.adam_beta1, cfg.adam_beta2, step);
        for ((t, mh), vh) in theta.iter_mut().zip(&m_hat).zip(&v_hat) {
            *t -= cfg.adam_alpha * mh / (vh.sqrt() + cfg.adam_eps);
        }
    }
    Ok(rec.into_run())
}
