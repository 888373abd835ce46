use num_complex::Complex64;
use serde::Serialize;

use super::{checked_inverse, CMatrix, NumericRep, SINGULAR_COND_BOUND};
use crate::error::{Error, Result};

/// Frobenius norm of `U` or `V` above which integration stops.
pub const BLOWUP_NORM: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Integrator {
    Rk4,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<NumericRep>,
    pub dt: f64,
    pub method: Integrator,
}

impl Trajectory {
    pub fn last(&self) -> &NumericRep {
        self.states.last().expect("trajectory holds the initial state")
    }
}

/// `(U̇, V̇) = (UV − UV⁻¹ − V⁻¹, −VU + VU⁻¹ + U⁻¹)`.
pub fn vector_field(s: &NumericRep) -> (CMatrix, CMatrix) {
    let (u, v, ui, vi) = (&s.u, &s.v, s.u_inv(), s.v_inv());
    let du = u * v - u * vi - vi;
    let dv = -(v * u) + v * ui + ui;
    (du, dv)
}

fn shifted(s: &NumericRep, k: &(CMatrix, CMatrix), h: f64, t: f64) -> Result<NumericRep> {
    let u = &s.u + &k.0 * Complex64::new(h, 0.0);
    let v = &s.v + &k.1 * Complex64::new(h, 0.0);
    state(u, v, t)
}

fn state(u: CMatrix, v: CMatrix, t: f64) -> Result<NumericRep> {
    let norm = u.norm().max(v.norm());
    if !norm.is_finite() || norm > BLOWUP_NORM {
        return Err(Error::BlowUp {
            time: t,
            norm,
            limit: BLOWUP_NORM,
        });
    }
    let u_inv = checked_inverse(&u, SINGULAR_COND_BOUND)
        .ok_or_else(|| Error::Singular(format!("U became singular at t = {t}")))?;
    let v_inv = checked_inverse(&v, SINGULAR_COND_BOUND)
        .ok_or_else(|| Error::Singular(format!("V became singular at t = {t}")))?;
    Ok(NumericRep { u, v, u_inv, v_inv })
}

/// One classical fourth-order Runge-Kutta step.
pub fn rk4_step(s: &NumericRep, dt: f64, t: f64) -> Result<NumericRep> {
    let k1 = vector_field(s);
    let k2 = vector_field(&shifted(s, &k1, dt / 2.0, t)?);
    let k3 = vector_field(&shifted(s, &k2, dt / 2.0, t)?);
    let k4 = vector_field(&shifted(s, &k3, dt, t)?);
    let w = Complex64::new(dt / 6.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    let u = &s.u + (&k1.0 + &k2.0 * two + &k3.0 * two + &k4.0) * w;
    let v = &s.v + (&k1.1 + &k2.1 * two + &k3.1 * two + &k4.1) * w;
    state(u, v, t + dt)
}

/// Fixed-step RK4 from `t = 0` to `t_end`; the state is recorded after every step.
pub fn integrate(rep0: &NumericRep, t_end: f64, dt: f64) -> Result<Trajectory> {
    if !(dt > 0.0 && t_end > 0.0 && dt.is_finite() && t_end.is_finite()) {
        return Err(Error::Invalid(format!("need dt > 0 and T > 0, got dt = {dt}, T = {t_end}")));
    }
    let steps = (t_end / dt).round() as usize;
    if steps == 0 {
        return Err(Error::Invalid(format!("dt = {dt} exceeds T = {t_end}")));
    }
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(0.0);
    states.push(rep0.clone());
    for i in 0..steps {
        let t = i as f64 * dt;
        let next = rk4_step(&states[i], dt, t)?;
        times.push((i + 1) as f64 * dt);
        states.push(next);
    }
    Ok(Trajectory {
        times,
        states,
        dt,
        method: Integrator::Rk4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_at_identity() {
        let rep = NumericRep::identity(2);
        let (du, dv) = vector_field(&rep);
        let i = CMatrix::identity(2, 2);
        assert!((du + &i).norm() < 1e-15);
        assert!((dv - &i).norm() < 1e-15);
    }

    #[test]
    fn bad_steps_are_rejected() {
        let rep = NumericRep::identity(1);
        assert!(matches!(integrate(&rep, 1.0, 0.0), Err(Error::Invalid(_))));
        assert!(matches!(integrate(&rep, -1.0, 0.1), Err(Error::Invalid(_))));
    }

    #[test]
    fn blow_up_is_reported() {
        let big = CMatrix::identity(1, 1) * Complex64::new(1e7, 0.0);
        let rep = NumericRep::new(big.clone(), big).unwrap();
        match integrate(&rep, 10.0, 0.1) {
            Err(Error::BlowUp { limit, .. }) => assert_eq!(limit, BLOWUP_NORM),
            other => panic!("expected blow-up, got {:?}", other.map(|t| t.times.len())),
        }
    }
}
