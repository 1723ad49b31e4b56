//! Analytic / Sobolev norms on coefficient tables.
//!
//! Per θ-harmonic k the x-profile is measured in the weighted norm
//! ‖f‖²_{ρ,m} = Σ_j |f_j|² e^{4πρ|j|}(|j|^{2m}+1); θ-harmonics are then
//! combined with the analytic weight e^{2πρ|k|₁} and summed, which
//! over-estimates the sup over the complex strip D_ρ.

use super::{Kahan, TorusMap};
use serde::{Deserialize, Serialize};

/// Norm parameters: strip half-width ρ, Sobolev index m, Diophantine (κ, ν).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NormParams {
    pub rho: f64,
    pub m: i32,
    pub nu: f64,
    pub kappa: f64,
}

impl NormParams {
    pub fn new(rho: f64, m: i32) -> Self {
        Self {
            rho,
            m,
            nu: 1.0,
            kappa: 1.0,
        }
    }

    pub fn validate(&self, l: usize) -> crate::error::Result<()> {
        if self.rho <= 0.0 {
            return Err(crate::error::Error::Config(format!(
                "rho must be > 0, got {}",
                self.rho
            )));
        }
        if self.m < 0 {
            return Err(crate::error::Error::Config(format!(
                "m must be >= 0, got {}",
                self.m
            )));
        }
        if self.kappa <= 0.0 {
            return Err(crate::error::Error::Config("kappa must be > 0".into()));
        }
        if self.nu < l as f64 - 1.0 {
            return Err(crate::error::Error::Config(format!(
                "nu = {} below l - 1 = {}",
                self.nu,
                l as f64 - 1.0
            )));
        }
        Ok(())
    }
}

/// Sobolev x-weight √(|j|^{2m} + 1).
pub fn sobolev_weight(j: i64, m: i32) -> f64 {
    let ja = j.abs() as f64;
    (ja.powi(2 * m) + 1.0).sqrt()
}

impl TorusMap {
    /// ‖·‖_{ρ,m} of one component: H^{ρ,m} weight in x per θ-harmonic,
    /// analytic weight e^{2πρ|k|} across θ-harmonics (sup over D_ρ estimate).
    pub fn norm_rho_m_component(&self, c: usize, rho: f64, m: i32) -> f64 {
        // group by k: per-k weighted l2 x-norm, then weighted k-sum
        let mut per_k: std::collections::BTreeMap<Vec<i64>, Kahan> = Default::default();
        for (idx, v) in &self.coeffs {
            let wx = (4.0 * std::f64::consts::PI * rho * idx.j.abs() as f64).exp()
                * ((idx.j.abs() as f64).powi(2 * m) + 1.0);
            per_k
                .entry(idx.k.clone())
                .or_default()
                .add(v[c].norm_sqr() * wx);
        }
        let mut total = Kahan::default();
        for (k, acc) in per_k {
            let ka: i64 = k.iter().map(|v| v.abs()).sum();
            let wk = (2.0 * std::f64::consts::PI * rho * ka as f64).exp();
            total.add(wk * acc.value().max(0.0).sqrt());
        }
        total.value()
    }

    /// Product-space norm with per-component Sobolev indices `ms`:
    /// Σ_k e^{2πρ|k|} √(Σ_c ‖K̂_c(k,·)‖²_{ρ,m_c}).
    pub fn norm_weighted(&self, rho: f64, ms: &[i32]) -> f64 {
        assert_eq!(ms.len(), self.d);
        let mut per_k: std::collections::BTreeMap<Vec<i64>, Kahan> = Default::default();
        for (idx, v) in &self.coeffs {
            let acc = per_k.entry(idx.k.clone()).or_default();
            for c in 0..self.d {
                let wx = (4.0 * std::f64::consts::PI * rho * idx.j.abs() as f64).exp()
                    * ((idx.j.abs() as f64).powi(2 * ms[c]) + 1.0);
                acc.add(v[c].norm_sqr() * wx);
            }
        }
        let mut total = Kahan::default();
        for (k, acc) in per_k {
            let ka: i64 = k.iter().map(|v| v.abs()).sum();
            let wk = (2.0 * std::f64::consts::PI * rho * ka as f64).exp();
            total.add(wk * acc.value().max(0.0).sqrt());
        }
        total.value()
    }

    /// Rigorous over-estimate of sup_{D_ρ} |component c|:
    /// Σ |coeff| e^{2πρ(|k|₁+|j|)}.
    pub fn sup_norm_strip(&self, c: usize, rho: f64) -> f64 {
        let mut total = Kahan::default();
        for (idx, v) in &self.coeffs {
            let w = (2.0 * std::f64::consts::PI * rho * idx.weight() as f64).exp();
            total.add(v[c].norm() * w);
        }
        total.value()
    }

    /// Plain ℓ² norm of all coefficients (the ρ = 0, m = 0 collapse up to
    /// the +1 weight; used as a cheap size gauge).
    pub fn l2_norm(&self) -> f64 {
        let mut total = Kahan::default();
        for v in self.coeffs.values() {
            for z in v {
                total.add(z.norm_sqr());
            }
        }
        total.value().max(0.0).sqrt()
    }
}

/// Norm of one x-profile table (j, coeff) in H^{ρ,m}.
pub fn profile_norm(profile: &[(i64, num_complex::Complex64)], rho: f64, m: i32) -> f64 {
    let mut acc = Kahan::default();
    for (j, z) in profile {
        let w = (4.0 * std::f64::consts::PI * rho * j.abs() as f64).exp()
            * ((j.abs() as f64).powi(2 * m) + 1.0);
        acc.add(z.norm_sqr() * w);
    }
    acc.value().max(0.0).sqrt()
}
