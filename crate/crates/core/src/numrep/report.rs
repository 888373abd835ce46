//! Drift measurements along numerical trajectories.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{eigenvalues, integrate, spectrum_distance, CMatrix, NumericRep, Trajectory};
use crate::algebra::{casimir_c, hamiltonian_h, u, v};
use crate::error::{Error, Result};
use crate::lax::build_l;
use crate::par::{self, Execution};
use crate::specialize::{abelianize, classical_poisson, CommutativeLaurent};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SimConfig {
    /// Matrix size `N`.
    pub n: usize,
    pub t: f64,
    pub dt: f64,
    pub seed: u64,
    pub k_max: u32,
    /// Spectral parameters `[re, im]` at which `L(λ)` is evaluated.
    pub lambda_samples: Vec<[f64; 2]>,
    /// Every `stride`-th recorded state appears in the output series.
    pub stride: usize,
    /// Steps used for the convergence-order measurement, each half the previous.
    pub order_dts: Vec<f64>,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            n: 4,
            t: 1.0,
            dt: 1e-3,
            seed: 0,
            k_max: 4,
            lambda_samples: vec![[0.5, 0.5], [1.0, 0.0], [-1.5, 0.25]],
            stride: 50,
            order_dts: vec![0.05, 0.025, 0.0125],
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Invalid("N must be at least 1".into()));
        }
        if !(self.t > 0.0 && self.dt > 0.0) {
            return Err(Error::Invalid("T and dt must be positive".into()));
        }
        if self.stride == 0 {
            return Err(Error::Invalid("stride must be at least 1".into()));
        }
        Ok(())
    }

    fn lambdas(&self) -> Vec<Complex64> {
        self.lambda_samples.iter().map(|[re, im]| Complex64::new(*re, *im)).collect()
    }
}

/// Relative deviation from the initial value at each output time.
#[derive(Debug, Clone, Serialize)]
pub struct DriftSeries {
    pub quantity: String,
    pub values: Vec<f64>,
    /// Maximum over every recorded state, not only the strided output.
    pub max: f64,
}

impl DriftSeries {
    fn from_all(quantity: String, all: Vec<f64>, stride: usize) -> Self {
        let max = all.iter().cloned().fold(0.0, f64::max);
        let values = all.iter().step_by(stride).cloned().collect();
        DriftSeries { quantity, values, max }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConservationReport {
    pub times: Vec<f64>,
    /// `Tr φ(h)ᵏ` for `k = 1..=k_max`.
    pub trace_powers: Vec<DriftSeries>,
    pub h_spectrum: DriftSeries,
    pub casimir: DriftSeries,
    pub casimir_spectrum: DriftSeries,
    /// Spectrum of `φ(L(λ))`, one series per sampled `λ`.
    pub lax_spectrum: Vec<DriftSeries>,
    pub max_drift: f64,
}

fn trace(m: &CMatrix) -> Complex64 {
    m.trace()
}

fn rel(d: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        d / scale
    } else {
        d
    }
}

fn max_abs(ev: &[Complex64]) -> f64 {
    ev.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn spectral_series(name: String, mats: &[CMatrix], stride: usize) -> Result<DriftSeries> {
    let ev0 = eigenvalues(&mats[0])?;
    let scale = max_abs(&ev0);
    let all = mats
        .iter()
        .map(|m| Ok(rel(spectrum_distance(&eigenvalues(m)?, &ev0), scale)))
        .collect::<Result<Vec<f64>>>()?;
    Ok(DriftSeries::from_all(name, all, stride))
}

pub fn conservation_report(
    traj: &Trajectory,
    k_max: u32,
    lambdas: &[Complex64],
    stride: usize,
) -> Result<ConservationReport> {
    let h = hamiltonian_h();
    let hs: Vec<CMatrix> = traj.states.iter().map(|s| s.evaluate(&h)).collect();

    let mut trace_powers = Vec::new();
    for k in 1..=k_max {
        let tr: Vec<Complex64> = hs.iter().map(|m| trace(&m.pow(k))).collect();
        let scale = tr[0].norm();
        let all = tr.iter().map(|x| rel((x - tr[0]).norm(), scale)).collect();
        trace_powers.push(DriftSeries::from_all(format!("tr_h^{k}"), all, stride));
    }

    let h_spectrum = spectral_series("spectrum_h".into(), &hs, stride)?;

    let c = casimir_c();
    let cs: Vec<CMatrix> = traj.states.iter().map(|s| s.evaluate(&c)).collect();
    let c0 = cs[0].norm();
    let casimir = DriftSeries::from_all("casimir".into(), cs.iter().map(|m| rel((m - &cs[0]).norm(), c0)).collect(), stride);
    let casimir_spectrum = spectral_series("spectrum_casimir".into(), &cs, stride)?;

    let l = build_l();
    let lax_spectrum = lambdas
        .iter()
        .map(|&lam| {
            let ls: Vec<CMatrix> = traj.states.iter().map(|s| s.evaluate_lax(&l, lam)).collect();
            spectral_series(format!("spectrum_L({}{:+}i)", lam.re, lam.im), &ls, stride)
        })
        .collect::<Result<Vec<_>>>()?;

    let max_drift = trace_powers
        .iter()
        .chain(lax_spectrum.iter())
        .chain([&h_spectrum, &casimir, &casimir_spectrum])
        .map(|s| s.max)
        .fold(0.0, f64::max);
    Ok(ConservationReport {
        times: traj.times.iter().step_by(stride).cloned().collect(),
        trace_powers,
        h_spectrum,
        casimir,
        casimir_spectrum,
        lax_spectrum,
        max_drift,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub dts: Vec<f64>,
    /// Largest relative drift of `Tr φ(h)ᵏ`, `k ≤ k_max`, at the final time.
    pub drifts: Vec<f64>,
    /// `log₂(drift(dt) / drift(dt/2))` for consecutive steps.
    pub orders: Vec<f64>,
}

impl ConvergenceReport {
    pub fn order(&self) -> f64 {
        *self.orders.last().unwrap_or(&f64::NAN)
    }
}

fn final_trace_drift(traj: &Trajectory, k_max: u32) -> f64 {
    let h = hamiltonian_h();
    let h0 = traj.states[0].evaluate(&h);
    let h1 = traj.last().evaluate(&h);
    (1..=k_max)
        .map(|k| {
            let a = trace(&h0.pow(k));
            let b = trace(&h1.pow(k));
            rel((b - a).norm(), a.norm())
        })
        .fold(0.0, f64::max)
}

/// Integrates once per step size (in parallel) and measures how the drift of
/// the trace integrals shrinks as the step halves.
pub fn convergence_order(rep0: &NumericRep, t_end: f64, dts: &[f64], k_max: u32, exec: Execution) -> Result<ConvergenceReport> {
    let drifts = par::map(exec, dts, |&dt| integrate(rep0, t_end, dt).map(|tr| final_trace_drift(&tr, k_max)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let orders = drifts
        .windows(2)
        .zip(dts.windows(2))
        .map(|(d, h)| (d[0] / d[1]).ln() / (h[0] / h[1]).ln())
        .collect();
    Ok(ConvergenceReport {
        dts: dts.to_vec(),
        drifts,
        orders,
    })
}

/// `u ↦ uvu⁻¹`, `v ↦ u⁻¹ + v⁻¹u⁻¹`.
pub fn backlund_map(s: &NumericRep) -> Result<NumericRep> {
    let (u, v, ui, vi) = (&s.u, &s.v, s.u_inv(), s.v_inv());
    let nu = u * v * ui;
    let nv = ui + vi * ui;
    NumericRep::new(nu, nv).map_err(|e| match e {
        Error::Singular(m) => Error::Singular(format!("transformed initial data: {m}")),
        other => other,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BacklundReport {
    pub times: Vec<f64>,
    /// `‖B(x(t)) − y(t)‖ / ‖y(t)‖`, with `y` integrated from `B(x(0))`.
    pub deviation: Vec<f64>,
    pub max_deviation: f64,
}

pub fn backlund_check(rep0: &NumericRep, t_end: f64, dt: f64, stride: usize, exec: Execution) -> Result<BacklundReport> {
    let transformed0 = backlund_map(rep0)?;
    let starts = [rep0.clone(), transformed0];
    let mut trajs = par::map(exec, &starts, |s| integrate(s, t_end, dt))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let direct = trajs.pop().expect("two runs");
    let original = trajs.pop().expect("two runs");
    let mut all = Vec::with_capacity(original.states.len());
    for (x, y) in original.states.iter().zip(&direct.states) {
        let b = backlund_map(x)?;
        let num = (&b.u - &y.u).norm().max((&b.v - &y.v).norm());
        let den = y.u.norm().max(y.v.norm());
        all.push(rel(num, den));
    }
    let series = DriftSeries::from_all("backlund".into(), all, stride);
    Ok(BacklundReport {
        times: original.times.iter().step_by(stride).cloned().collect(),
        deviation: series.values,
        max_deviation: series.max,
    })
}

fn eval_laurent(p: &CommutativeLaurent, u: Complex64, v: Complex64) -> Complex64 {
    p.terms()
        .map(|((m, n), c)| u.powi(*m as i32) * v.powi(*n as i32) * c.to_f64())
        .sum()
}

/// RK4 for the commutative system `u̇ = {h, u}`, `v̇ = {h, v}` with the
/// classical bracket; returns `(t, u, v)` at each step.
pub fn classical_scalar_trajectory(u0: Complex64, v0: Complex64, t_end: f64, dt: f64) -> Vec<(f64, Complex64, Complex64)> {
    let h = abelianize(&hamiltonian_h());
    let fu = classical_poisson(&h, &abelianize(&u()));
    let fv = classical_poisson(&h, &abelianize(&v()));
    let field = |a: Complex64, b: Complex64| (eval_laurent(&fu, a, b), eval_laurent(&fv, a, b));
    let steps = (t_end / dt).round() as usize;
    let mut out = vec![(0.0, u0, v0)];
    let (mut a, mut b) = (u0, v0);
    for i in 0..steps {
        let k1 = field(a, b);
        let k2 = field(a + k1.0 * (dt / 2.0), b + k1.1 * (dt / 2.0));
        let k3 = field(a + k2.0 * (dt / 2.0), b + k2.1 * (dt / 2.0));
        let k4 = field(a + k3.0 * dt, b + k3.1 * dt);
        a += (k1.0 + k2.0 * 2.0 + k3.0 * 2.0 + k4.0) * (dt / 6.0);
        b += (k1.1 + k2.1 * 2.0 + k3.1 * 2.0 + k4.1) * (dt / 6.0);
        out.push(((i + 1) as f64 * dt, a, b));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalarComparison {
    pub steps: usize,
    pub max_deviation: f64,
}

/// `N = 1` matrix trajectory against the classical scalar system.
pub fn scalar_comparison(u0: Complex64, v0: Complex64, t_end: f64, dt: f64) -> Result<ScalarComparison> {
    let rep = NumericRep::new(CMatrix::from_element(1, 1, u0), CMatrix::from_element(1, 1, v0))?;
    let traj = integrate(&rep, t_end, dt)?;
    let classical = classical_scalar_trajectory(u0, v0, t_end, dt);
    let max_deviation = traj
        .states
        .iter()
        .zip(&classical)
        .map(|(s, (_, a, b))| {
            let d = (s.u[(0, 0)] - a).norm().max((s.v[(0, 0)] - b).norm());
            rel(d, a.norm().max(b.norm()))
        })
        .fold(0.0, f64::max);
    Ok(ScalarComparison {
        steps: traj.states.len() - 1,
        max_deviation,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SimulationReport {
    pub config: SimConfig,
    pub conservation: ConservationReport,
    pub convergence: ConvergenceReport,
    pub convergence_order: f64,
    pub backlund: BacklundReport,
}

pub fn run_simulation(cfg: &SimConfig, exec: Execution) -> Result<SimulationReport> {
    cfg.validate()?;
    let rep0 = NumericRep::random(cfg.n, cfg.seed);
    let traj = integrate(&rep0, cfg.t, cfg.dt)?;
    let conservation = conservation_report(&traj, cfg.k_max, &cfg.lambdas(), cfg.stride)?;
    let convergence = convergence_order(&rep0, cfg.t, &cfg.order_dts, cfg.k_max, exec)?;
    let backlund = backlund_check(&rep0, cfg.t, cfg.dt, cfg.stride, exec)?;
    Ok(SimulationReport {
        config: cfg.clone(),
        convergence_order: convergence.order(),
        conservation,
        convergence,
        backlund,
    })
}

/// Independent trajectories, one per seed, run in parallel.
pub fn run_ensemble(cfg: &SimConfig, seeds: &[u64], exec: Execution) -> Vec<Result<SimulationReport>> {
    par::map(exec, seeds, |&seed| {
        let c = SimConfig { seed, ..cfg.clone() };
        run_simulation(&c, Execution::Sequential)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Real root of `x³ = x + 1`; `U = V = xI` is a fixed point.
    fn equilibrium(n: usize) -> NumericRep {
        let x = 1.324_717_957_244_746;
        let m = CMatrix::identity(n, n) * Complex64::new(x, 0.0);
        NumericRep::new(m.clone(), m).unwrap()
    }

    #[test]
    fn equilibrium_has_no_drift() {
        let rep = equilibrium(2);
        let traj = integrate(&rep, 0.5, 0.01).unwrap();
        let r = conservation_report(&traj, 4, &[Complex64::new(1.0, 0.0)], 1).unwrap();
        assert!(r.max_drift < 1e-12, "{}", r.max_drift);
        let b = backlund_check(&rep, 0.5, 0.01, 1, Execution::Sequential).unwrap();
        assert!(b.max_deviation < 1e-12);
    }

    #[test]
    fn scalar_case_is_the_classical_system() {
        let c = scalar_comparison(Complex64::new(1.7, 0.2), Complex64::new(2.1, -0.3), 0.5, 1e-3).unwrap();
        assert!(c.max_deviation < 1e-12, "{}", c.max_deviation);
    }

    #[test]
    fn scalar_backlund_symmetry() {
        let rep = NumericRep::new(
            CMatrix::from_element(1, 1, Complex64::new(1.8, 0.1)),
            CMatrix::from_element(1, 1, Complex64::new(2.2, -0.2)),
        )
        .unwrap();
        let b = backlund_check(&rep, 0.5, 1e-3, 10, Execution::Sequential).unwrap();
        assert!(b.max_deviation < 1e-9, "{}", b.max_deviation);
    }

    #[test]
    fn ensemble_matches_single_runs() {
        let cfg = SimConfig {
            n: 2,
            t: 0.1,
            dt: 0.01,
            order_dts: vec![0.05, 0.025],
            ..SimConfig::default()
        };
        let ens = run_ensemble(&cfg, &[1, 2], Execution::Parallel);
        let single = run_simulation(&SimConfig { seed: 2, ..cfg.clone() }, Execution::Sequential).unwrap();
        let second = ens[1].as_ref().unwrap();
        assert_eq!(second.conservation.max_drift, single.conservation.max_drift);
    }
}
