//! Evaluation of `A` in complex matrices, `φ(u) = U`, `φ(v) = V`, and
//! numerical integration of the matrix equations of motion.

mod integrate;
mod report;

pub use integrate::{integrate, rk4_step, vector_field, Integrator, Trajectory, BLOWUP_NORM};
pub use report::{
    backlund_check, backlund_map, classical_scalar_trajectory, conservation_report, convergence_order,
    run_ensemble, run_simulation, scalar_comparison, BacklundReport, ConservationReport, ConvergenceReport, DriftSeries,
    ScalarComparison, SimConfig, SimulationReport,
};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::lax::LaxMatrix;
use crate::word::Letter;

pub type CMatrix = DMatrix<Complex64>;

/// Condition-number bound used when sampling random representations.
pub const SAMPLE_COND_BOUND: f64 = 1e3;
/// Beyond this condition number a generator is treated as singular.
pub const SINGULAR_COND_BOUND: f64 = 1e10;

pub fn condition_number(m: &CMatrix) -> f64 {
    let s = m.clone().svd(false, false).singular_values;
    let max = s.iter().cloned().fold(0.0, f64::max);
    let min = s.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Inverse by LU solve against the identity; `None` if singular or too
/// badly conditioned.
pub fn checked_inverse(m: &CMatrix, cond_bound: f64) -> Option<CMatrix> {
    let n = m.nrows();
    let inv = m.clone().lu().solve(&CMatrix::identity(n, n))?;
    // 1-norm condition estimate, cheap enough to run every stage.
    let norm1 = |x: &CMatrix| {
        (0..x.ncols())
            .map(|j| x.column(j).iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    };
    let k = norm1(m) * norm1(&inv);
    (k.is_finite() && k <= cond_bound).then_some(inv)
}

/// A representation `u ↦ U, v ↦ V` with both inverses precomputed.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericRep {
    pub u: CMatrix,
    pub v: CMatrix,
    u_inv: CMatrix,
    v_inv: CMatrix,
}

impl NumericRep {
    pub fn new(u: CMatrix, v: CMatrix) -> Result<Self> {
        if !u.is_square() || u.shape() != v.shape() {
            return Err(Error::Dimension(format!(
                "U is {:?} and V is {:?}; both must be the same square size",
                u.shape(),
                v.shape()
            )));
        }
        let u_inv = checked_inverse(&u, SINGULAR_COND_BOUND)
            .ok_or_else(|| Error::Singular("U is not invertible".into()))?;
        let v_inv = checked_inverse(&v, SINGULAR_COND_BOUND)
            .ok_or_else(|| Error::Singular("V is not invertible".into()))?;
        Ok(NumericRep { u, v, u_inv, v_inv })
    }

    pub fn identity(n: usize) -> Self {
        let i = CMatrix::identity(n, n);
        NumericRep::new(i.clone(), i).expect("identity is invertible")
    }

    /// Entries uniform on the unit disc plus `2I`; `U`, `V` redrawn until
    /// both have condition number at most [`SAMPLE_COND_BOUND`].
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let u = random_shifted(&mut rng, n);
            let v = random_shifted(&mut rng, n);
            if condition_number(&u) > SAMPLE_COND_BOUND || condition_number(&v) > SAMPLE_COND_BOUND {
                continue;
            }
            if let Ok(rep) = NumericRep::new(u, v) {
                return rep;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    pub fn u_inv(&self) -> &CMatrix {
        &self.u_inv
    }

    pub fn v_inv(&self) -> &CMatrix {
        &self.v_inv
    }

    pub fn letter(&self, l: Letter) -> &CMatrix {
        match l {
            Letter::U => &self.u,
            Letter::UInv => &self.u_inv,
            Letter::V => &self.v,
            Letter::VInv => &self.v_inv,
        }
    }

    /// `φ(e)`.
    pub fn evaluate(&self, e: &AlgebraElement) -> CMatrix {
        let n = self.dim();
        let mut out = CMatrix::zeros(n, n);
        for (w, c) in e.terms() {
            let mut m = CMatrix::identity(n, n);
            for &l in w.letters() {
                m *= self.letter(l);
            }
            out += m * Complex64::new(c.to_f64(), 0.0);
        }
        out
    }

    /// `φ(L(λ))` as a `kN × kN` block matrix for a `k × k` Lax matrix.
    pub fn evaluate_lax(&self, l: &LaxMatrix, lambda: Complex64) -> CMatrix {
        let (n, k) = (self.dim(), l.dim());
        let mut out = CMatrix::zeros(k * n, k * n);
        for i in 0..k {
            for j in 0..k {
                let mut block = CMatrix::zeros(n, n);
                for (p, a) in l.entry(i, j).coeffs() {
                    block += self.evaluate(a) * lambda.powi(p as i32);
                }
                out.view_mut((i * n, j * n), (n, n)).copy_from(&block);
            }
        }
        out
    }

    pub fn max_norm(&self) -> f64 {
        self.u.norm().max(self.v.norm())
    }
}

fn random_shifted(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let mut m = CMatrix::from_fn(n, n, |_, _| {
        let r = rng.gen::<f64>().sqrt();
        let theta = rng.gen::<f64>() * std::f64::consts::TAU;
        Complex64::from_polar(r, theta)
    });
    for i in 0..n {
        m[(i, i)] += Complex64::new(2.0, 0.0);
    }
    m
}

pub fn eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    m.eigenvalues()
        .map(|v| v.iter().cloned().collect())
        .ok_or_else(|| Error::Invalid("eigenvalue iteration did not converge".into()))
}

/// Largest `|a_i − b_σ(i)|` under greedy nearest matching.
pub fn spectrum_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .fold((usize::MAX, f64::INFINITY), |acc, c| if c.1 < acc.1 { c } else { acc });
        if j == usize::MAX {
            return f64::INFINITY;
        }
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}
