//! Algebra of real-analytic functions on 𝕋^ℓ × 𝕋 held as finitely supported
//! Fourier coefficient tables.
//!
//! A [`TorusMap`] stores complex coefficients indexed by a [`MultiIndex`]
//! `(k, j)`, where `k` are the angle harmonics and `j` the space harmonic.
//! Reality is kept explicitly: `coeff(-k,-j) = conj(coeff(k,j))`. All
//! operations are exact on the coefficient lattice; products grow the support
//! and a separate truncation step records what was discarded.

mod norms;
mod serial;

pub use norms::NormParams;
pub use serial::TorusMapFile;

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Lattice index of one Fourier mode: angle harmonics `k` and space harmonic `j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    pub k: Vec<i64>,
    pub j: i64,
}

impl MultiIndex {
    pub fn new(k: Vec<i64>, j: i64) -> Self {
        Self { k, j }
    }

    /// ℓ¹ size |k|₁ of the angle part.
    pub fn k_abs(&self) -> i64 {
        self.k.iter().map(|v| v.abs()).sum()
    }

    /// Combined lattice weight |k|₁ + |j|.
    pub fn weight(&self) -> i64 {
        self.k_abs() + self.j.abs()
    }

    /// The reflected index (-k, -j).
    pub fn neg(&self) -> Self {
        Self {
            k: self.k.iter().map(|v| -v).collect(),
            j: -self.j,
        }
    }
}

/// Parity of one component under θ ↦ -θ and x ↦ -x separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Parity {
    /// even in θ, even in x (cos ⊗ cos)
    EvenEven,
    /// odd in θ, even in x (sin ⊗ cos)
    OddEven,
    /// even in θ, odd in x (cos ⊗ sin)
    EvenOdd,
    /// odd in θ, odd in x (sin ⊗ sin)
    OddOdd,
    /// no declared symmetry
    None,
}

impl Parity {
    /// Signs (s_θ, s_x) with f(-θ,-x) = s_θ s_x-structured symmetry, if declared.
    pub fn signs(self) -> Option<(f64, f64)> {
        match self {
            Parity::EvenEven => Some((1.0, 1.0)),
            Parity::OddEven => Some((-1.0, 1.0)),
            Parity::EvenOdd => Some((1.0, -1.0)),
            Parity::OddOdd => Some((-1.0, -1.0)),
            Parity::None => None,
        }
    }

    /// Parity after one x-derivative (x-parity flips).
    pub fn flip_x(self) -> Self {
        match self {
            Parity::EvenEven => Parity::EvenOdd,
            Parity::OddEven => Parity::OddOdd,
            Parity::EvenOdd => Parity::EvenEven,
            Parity::OddOdd => Parity::OddEven,
            Parity::None => Parity::None,
        }
    }

    /// Parity after one θ-derivative (θ-parity flips).
    pub fn flip_theta(self) -> Self {
        match self {
            Parity::EvenEven => Parity::OddEven,
            Parity::OddEven => Parity::EvenEven,
            Parity::EvenOdd => Parity::OddOdd,
            Parity::OddOdd => Parity::EvenOdd,
            Parity::None => Parity::None,
        }
    }
}

/// Finitely supported Fourier table for a map 𝕋^ℓ → (functions of x)^d.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusMap {
    /// angle dimension ℓ
    pub l: usize,
    /// component count d
    pub d: usize,
    /// truncation radius in |k|₁
    pub k_theta_max: i64,
    /// truncation radius in |j|
    pub k_x_max: i64,
    /// per-component parity flags
    pub parity: Vec<Parity>,
    /// coefficient table, keyed lexicographically
    pub coeffs: BTreeMap<MultiIndex, Vec<Complex64>>,
}

const DROP_TOL: f64 = 0.0;

impl TorusMap {
    /// Empty (zero) map with the given shape.
    pub fn zero(l: usize, d: usize, k_theta_max: i64, k_x_max: i64) -> Self {
        Self {
            l,
            d,
            k_theta_max,
            k_x_max,
            parity: vec![Parity::None; d],
            coeffs: BTreeMap::new(),
        }
    }

    pub fn with_parity(mut self, parity: Vec<Parity>) -> Self {
        assert_eq!(parity.len(), self.d);
        self.parity = parity;
        self
    }

    /// Add `value` to component `c` of mode `idx`, enforcing reality by also
    /// touching the reflected mode with the conjugate value.
    pub fn add_real_pair(&mut self, idx: MultiIndex, c: usize, value: Complex64) {
        let neg = idx.neg();
        if neg == idx {
            let e = self.entry_mut(idx);
            e[c] += Complex64::new(value.re, 0.0);
            return;
        }
        self.entry_mut(idx)[c] += value;
        self.entry_mut(neg)[c] += value.conj();
    }

    /// Insert a trig basis term `amp * trig_θ(2πk·θ) trig_x(2πjx)` into
    /// component `c`; the component's declared parity decides whether each
    /// trig factor is a cosine (even) or sine (odd).
    pub fn add_trig(&mut self, k: &[i64], j: i64, c: usize, amp: f64) {
        let (st, sx) = self.parity[c]
            .signs()
            .expect("add_trig requires a declared parity");
        let base = MultiIndex::new(k.to_vec(), j);
        let k_zero = base.k_abs() == 0;
        let j_zero = j == 0;
        // cos = (e^+ + e^-)/2, sin = (e^+ - e^-)/(2i)
        for (tk, tj) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
            if (k_zero && tk < 0) || (j_zero && tj < 0) {
                continue;
            }
            let idx = MultiIndex::new(base.k.iter().map(|v| v * tk).collect(), base.j * tj);
            let v = trig_factor(st, tk, k_zero) * trig_factor(sx, tj, j_zero) * amp;
            *self
                .coeffs
                .entry(idx)
                .or_insert_with(|| vec![Complex64::new(0.0, 0.0); self.d])
                .get_mut(c)
                .unwrap() += v;
        }
        self.prune();
    }

    fn entry_mut(&mut self, idx: MultiIndex) -> &mut Vec<Complex64> {
        let d = self.d;
        self.coeffs
            .entry(idx)
            .or_insert_with(|| vec![Complex64::new(0.0, 0.0); d])
    }

    /// Coefficient of component `c` at `idx` (zero if absent).
    pub fn coeff(&self, idx: &MultiIndex, c: usize) -> Complex64 {
        self.coeffs
            .get(idx)
            .map(|v| v[c])
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    /// Remove entries that are identically zero.
    pub fn prune(&mut self) {
        self.coeffs
            .retain(|_, v| v.iter().any(|z| z.norm_sqr() > DROP_TOL));
    }

    /// Largest |k|₁ actually present.
    pub fn support_k(&self) -> i64 {
        self.coeffs.keys().map(|i| i.k_abs()).max().unwrap_or(0)
    }

    /// Largest |j| actually present.
    pub fn support_j(&self) -> i64 {
        self.coeffs.keys().map(|i| i.j.abs()).max().unwrap_or(0)
    }

    /// Pointwise sum. Shapes must match.
    pub fn add(&self, other: &TorusMap) -> Result<TorusMap> {
        if self.l != other.l || self.d != other.d {
            return Err(Error::Structural(format!(
                "add: shape ({},{}) vs ({},{})",
                self.l, self.d, other.l, other.d
            )));
        }
        let mut out = self.clone();
        out.k_theta_max = self.k_theta_max.max(other.k_theta_max);
        out.k_x_max = self.k_x_max.max(other.k_x_max);
        for (idx, v) in &other.coeffs {
            let e = out.entry_mut(idx.clone());
            for c in 0..out.d {
                e[c] += v[c];
            }
        }
        for c in 0..out.d {
            if self.parity[c] != other.parity[c] {
                out.parity[c] = Parity::None;
            }
        }
        out.prune();
        Ok(out)
    }

    /// Scale by a real factor.
    pub fn scale(&self, s: f64) -> TorusMap {
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            for z in v.iter_mut() {
                *z *= s;
            }
        }
        out
    }

    /// Componentwise product of two scalar components: conv of component `ca`
    /// of `self` with component `cb` of `b`, written into a fresh d=1 map.
    /// Exact convolution on the grown support; no aliasing.
    pub fn product_component(&self, ca: usize, b: &TorusMap, cb: usize) -> Result<TorusMap> {
        if self.l != b.l {
            return Err(Error::Structural(format!(
                "product: angle dimension {} vs {}",
                self.l, b.l
            )));
        }
        let mut out = TorusMap::zero(
            self.l,
            1,
            self.k_theta_max + b.k_theta_max,
            self.k_x_max + b.k_x_max,
        );
        for (ia, va) in &self.coeffs {
            let a = va[ca];
            if a.norm_sqr() == 0.0 {
                continue;
            }
            for (ib, vb) in &b.coeffs {
                let bb = vb[cb];
                if bb.norm_sqr() == 0.0 {
                    continue;
                }
                let k: Vec<i64> = ia.k.iter().zip(&ib.k).map(|(x, y)| x + y).collect();
                let idx = MultiIndex::new(k, ia.j + ib.j);
                out.entry_mut(idx)[0] += a * bb;
            }
        }
        out.parity[0] = combine_parity(self.parity[ca], b.parity[cb]);
        out.prune();
        Ok(out)
    }

    /// ∂ₓ of the given order: coeff(k,j) ↦ (2πij)^order coeff(k,j).
    pub fn partial_x(&self, order: u32) -> TorusMap {
        let mut out = self.clone();
        for (idx, v) in out.coeffs.iter_mut() {
            let f = Complex64::new(0.0, 2.0 * std::f64::consts::PI * idx.j as f64).powu(order);
            for z in v.iter_mut() {
                *z *= f;
            }
        }
        for p in out.parity.iter_mut() {
            for _ in 0..order {
                *p = p.flip_x();
            }
        }
        out.prune();
        out
    }

    /// ω·∂_θ: coeff(k,j) ↦ 2πi(k·ω) coeff(k,j).
    pub fn omega_derivative(&self, omega: &[f64]) -> Result<TorusMap> {
        if omega.len() != self.l {
            return Err(Error::Structural(format!(
                "omega_derivative: omega has length {} but map has l = {}",
                omega.len(),
                self.l
            )));
        }
        let mut out = self.clone();
        for (idx, v) in out.coeffs.iter_mut() {
            let kw: f64 = idx.k.iter().zip(omega).map(|(&k, &w)| k as f64 * w).sum();
            let f = Complex64::new(0.0, 2.0 * std::f64::consts::PI * kw);
            for z in v.iter_mut() {
                *z *= f;
            }
        }
        for p in out.parity.iter_mut() {
            *p = p.flip_theta();
        }
        out.prune();
        Ok(out)
    }

    /// Average over θ and x: the d-vector of (k=0, j=0) coefficients.
    pub fn average(&self) -> Vec<Complex64> {
        (0..self.d)
            .map(|c| self.coeff(&MultiIndex::new(vec![0; self.l], 0), c))
            .collect()
    }

    /// θ-average of component `c`: the x-profile at k = 0 as (j, coeff) pairs.
    pub fn theta_average(&self, c: usize) -> Vec<(i64, Complex64)> {
        self.coeffs
            .iter()
            .filter(|(idx, _)| idx.k_abs() == 0)
            .map(|(idx, v)| (idx.j, v[c]))
            .collect()
    }

    /// Phase shift K(θ) ↦ K(θ + τ): coeff ↦ e^{2πik·τ} coeff.
    pub fn phase_shift(&self, tau: &[f64]) -> Result<TorusMap> {
        if tau.len() != self.l {
            return Err(Error::Structural(format!(
                "phase_shift: tau has length {} but map has l = {}",
                tau.len(),
                self.l
            )));
        }
        let mut out = self.clone();
        for (idx, v) in out.coeffs.iter_mut() {
            let kt: f64 = idx.k.iter().zip(tau).map(|(&k, &t)| k as f64 * t).sum();
            let f = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * kt);
            for z in v.iter_mut() {
                *z *= f;
            }
        }
        // a phase shift breaks θ-parity about the origin
        for p in out.parity.iter_mut() {
            if tau.iter().any(|&t| t != 0.0) {
                *p = Parity::None;
            }
        }
        Ok(out)
    }

    /// Truncate back to the given radii; returns the discarded tail mass
    /// (ℓ²-norm of the dropped coefficients) as a diagnostic.
    pub fn truncate(&mut self, k_theta_max: i64, k_x_max: i64) -> f64 {
        let mut tail = 0.0;
        self.coeffs.retain(|idx, v| {
            let keep = idx.k_abs() <= k_theta_max && idx.j.abs() <= k_x_max;
            if !keep {
                for z in v.iter() {
                    tail += z.norm_sqr();
                }
            }
            keep
        });
        self.k_theta_max = k_theta_max;
        self.k_x_max = k_x_max;
        tail.sqrt()
    }

    /// Largest deviation from reality symmetry coeff(-k,-j) = conj coeff(k,j).
    pub fn reality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (idx, v) in &self.coeffs {
            let neg = idx.neg();
            for c in 0..self.d {
                let other = self.coeff(&neg, c);
                worst = worst.max((v[c] - other.conj()).norm());
            }
        }
        worst
    }

    /// Force exact reality by averaging conjugate pairs.
    pub fn enforce_reality(&mut self) {
        let keys: Vec<MultiIndex> = self.coeffs.keys().cloned().collect();
        for idx in keys {
            let neg = idx.neg();
            if neg < idx {
                continue; // handle each pair once
            }
            for c in 0..self.d {
                let a = self.coeff(&idx, c);
                let b = self.coeff(&neg, c);
                let avg = 0.5 * (a + b.conj());
                self.entry_mut(idx.clone())[c] = avg;
                self.entry_mut(neg.clone())[c] = avg.conj();
            }
        }
        self.prune();
    }

    /// Project each component onto its declared parity class (no-op for
    /// [`Parity::None`]); idempotent.
    pub fn enforce_parity(&mut self) {
        let keys: Vec<MultiIndex> = self.coeffs.keys().cloned().collect();
        let mut done: std::collections::BTreeSet<MultiIndex> = Default::default();
        for idx in keys {
            if done.contains(&idx) {
                continue;
            }
            // symmetrize over the 4-orbit {(±k, ±j)} per component
            let orbit = [
                idx.clone(),
                MultiIndex::new(idx.k.iter().map(|v| -v).collect(), idx.j),
                MultiIndex::new(idx.k.clone(), -idx.j),
                idx.neg(),
            ];
            for o in &orbit {
                done.insert(o.clone());
            }
            for c in 0..self.d {
                let Some((st, sx)) = self.parity[c].signs() else {
                    continue;
                };
                let vals: Vec<Complex64> = orbit.iter().map(|o| self.coeff(o, c)).collect();
                // f(-θ,x) = st f(θ,x) ⇒ coeff(-k,j) = st coeff(k,j); likewise x.
                let sym = 0.25
                    * (vals[0] + st * vals[1] + sx * vals[2] + st * sx * vals[3]);
                let assigned = [sym, st * sym, sx * sym, st * sx * sym];
                for (o, val) in orbit.iter().zip(assigned) {
                    self.entry_mut(o.clone())[c] = val;
                }
            }
        }
        self.prune();
    }

    /// Zero out the x-mean modes coeff(k, 0).
    pub fn remove_x_mean(&mut self) -> f64 {
        let mut mass = 0.0;
        self.coeffs.retain(|idx, v| {
            if idx.j == 0 {
                for z in v.iter() {
                    mass += z.norm_sqr();
                }
                false
            } else {
                true
            }
        });
        mass.sqrt()
    }

    /// Evaluate component `c` at a real point (θ, x).
    pub fn eval(&self, c: usize, theta: &[f64], x: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (idx, v) in &self.coeffs {
            let phase: f64 = idx
                .k
                .iter()
                .zip(theta)
                .map(|(&k, &t)| k as f64 * t)
                .sum::<f64>()
                + idx.j as f64 * x;
            acc += v[c] * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase);
        }
        acc
    }
}

fn trig_factor(sign: f64, t: i64, degenerate: bool) -> Complex64 {
    // weight of the e^{+}/e^{-} exponential in cos (sign = +1) or sin (-1)
    if degenerate {
        // harmonic 0: cos(0) = 1 in a single term, sin(0) = 0
        return if sign > 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    if sign > 0.0 {
        Complex64::new(0.5, 0.0)
    } else if t > 0 {
        Complex64::new(0.0, -0.5)
    } else {
        Complex64::new(0.0, 0.5)
    }
}

fn combine_parity(a: Parity, b: Parity) -> Parity {
    match (a.signs(), b.signs()) {
        (Some((t1, x1)), Some((t2, x2))) => match (t1 * t2 > 0.0, x1 * x2 > 0.0) {
            (true, true) => Parity::EvenEven,
            (false, true) => Parity::OddEven,
            (true, false) => Parity::EvenOdd,
            (false, false) => Parity::OddOdd,
        },
        _ => Parity::None,
    }
}

/// Compensated (Kahan) summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    pub fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

#[cfg(test)]
mod tests;
