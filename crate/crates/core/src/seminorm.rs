//! ℓ¹-model seminorms on the symmetric algebra and the continuity estimates
//! they control.
//!
//! For `p(v) = Σ w_i |v_i|` the projective tensor power is again ℓ¹, so the
//! degree-`n` seminorm of a homogeneous element is the weighted coefficient
//! sum over ordered tuples. Summing a monomial's tuples collapses to
//! `|c|·Π w_i^{k_i}` for its canonical coefficient `c`, which is what
//! [`pn_seminorm`] computes. All sums run in the log domain so that
//! factorial weights do not overflow.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::basis::GeneratorBasis;
use crate::element::{sym_product, Element};
use crate::error::{Error, Result};
use crate::forms::{BilinearForm, Functional, TensorPair};
use crate::scalar::{ln_factorial, Coeff, Float};
use crate::star::{poisson_bracket, star, translate};

/// Relative tolerance for floating comparisons of estimate sides.
pub const REL_TOL: f64 = 1e-9;

/// `p(v) = Σ w_i |v_i|` with strictly positive weights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedSeminorm {
    #[serde(skip)]
    basis: Arc<GeneratorBasis>,
    weights: Vec<f64>,
}

impl WeightedSeminorm {
    pub fn new(basis: &Arc<GeneratorBasis>, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != basis.dim() {
            return Err(Error::Parameter(format!(
                "expected {} weights, got {}",
                basis.dim(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::Parameter(format!("weights must be positive and finite, got {w}")));
        }
        Ok(Self { basis: basis.clone(), weights })
    }

    pub fn unit(basis: &Arc<GeneratorBasis>) -> Self {
        Self { basis: basis.clone(), weights: vec![1.0; basis.dim()] }
    }

    pub fn from_named(basis: &Arc<GeneratorBasis>, entries: &[(&str, f64)]) -> Result<Self> {
        let mut w = vec![1.0; basis.dim()];
        for (name, value) in entries {
            w[basis.index(name)?] = *value;
        }
        Self::new(basis, w)
    }

    pub fn basis(&self) -> &Arc<GeneratorBasis> {
        &self.basis
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// The seminorm `c·p`.
    pub fn scaled(&self, c: f64) -> Self {
        Self { basis: self.basis.clone(), weights: self.weights.iter().map(|w| w * c).collect() }
    }

    /// `p(v)` for a vector of generator coordinates.
    pub fn eval(&self, v: &[Complex64]) -> f64 {
        v.iter().zip(&self.weights).map(|(x, w)| x.norm() * w).sum()
    }

    /// Smallest `s ≥ 1` with `|Λ_ij| ≤ (s w_i)(s w_j)` on all generator pairs,
    /// which gives `|Λ(v, w)| ≤ (s p)(v) (s p)(w)`.
    pub fn domination_scale<S: Coeff>(&self, lambda: &BilinearForm<S>) -> f64 {
        let mut s: f64 = 1.0;
        for (i, row) in lambda.matrix().iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                let r = (c.abs() / (self.weights[i] * self.weights[j])).sqrt();
                s = s.max(r);
            }
        }
        s
    }

    /// `ln Π w_i^{k_i}` for a canonical monomial.
    fn ln_weight(&self, exps: &[u32]) -> f64 {
        exps.iter()
            .zip(&self.weights)
            .filter(|(k, _)| **k > 0)
            .map(|(&k, w)| k as f64 * w.ln())
            .sum()
    }
}

/// `ln Σ exp(x)`, ignoring `-inf` entries; `-inf` for an empty sum.
pub fn ln_sum_exp(xs: impl IntoIterator<Item = f64>) -> f64 {
    let xs: Vec<f64> = xs.into_iter().filter(|x| *x > f64::NEG_INFINITY).collect();
    let Some(m) = xs.iter().cloned().reduce(f64::max) else {
        return f64::NEG_INFINITY;
    };
    if m.is_infinite() {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

fn check_basis<S: Coeff>(a: &Element<S>, p: &WeightedSeminorm) -> Result<()> {
    crate::basis::same_basis(a.basis(), p.basis())
}

/// `ln pⁿ(a_n)`; `-inf` when the degree-`n` component vanishes.
pub fn ln_pn<S: Coeff>(a: &Element<S>, n: usize, p: &WeightedSeminorm) -> f64 {
    ln_sum_exp(
        a.terms()
            .iter()
            .filter(|(m, _)| m.degree() == n)
            .map(|(m, c)| c.ln_abs() + p.ln_weight(m.exponents())),
    )
}

/// The projective seminorm `pⁿ` of the degree-`n` component of `a`.
pub fn pn_seminorm<S: Coeff>(a: &Element<S>, n: usize, p: &WeightedSeminorm) -> f64 {
    ln_pn(a, n, p).exp()
}

/// `(n, R ln n! + ln pⁿ(a_n))` for every degree present in `a`.
pub fn ln_weighted_components<S: Coeff>(a: &Element<S>, p: &WeightedSeminorm, r: f64) -> Vec<(usize, f64)> {
    let Some(top) = a.max_degree() else {
        return Vec::new();
    };
    (0..=top)
        .map(|n| (n, r * ln_factorial(n) + ln_pn(a, n, p)))
        .filter(|(_, x)| x.is_finite())
        .collect()
}

/// `ln p_R(a)`.
pub fn ln_p_r<S: Coeff>(a: &Element<S>, p: &WeightedSeminorm, r: f64) -> f64 {
    ln_sum_exp(ln_weighted_components(a, p, r).into_iter().map(|x| x.1))
}

/// `p_R(a) = Σ_n n!^R pⁿ(a_n)`.
pub fn p_r<S: Coeff>(a: &Element<S>, p: &WeightedSeminorm, r: f64) -> f64 {
    let value = ln_p_r(a, p, r).exp();
    debug_assert!({
        let lo = p_r_inf(a, p, r);
        let hi = 2.0 * p_r_inf(a, &p.scaled(2.0), r);
        lo <= value * (1.0 + REL_TOL) && value <= hi * (1.0 + REL_TOL)
    });
    value
}

/// `p_{R,∞}(a) = sup_n n!^R pⁿ(a_n)`.
pub fn p_r_inf<S: Coeff>(a: &Element<S>, p: &WeightedSeminorm, r: f64) -> f64 {
    ln_weighted_components(a, p, r)
        .into_iter()
        .map(|x| x.1)
        .fold(f64::NEG_INFINITY, f64::max)
        .exp()
}

/// `Σ |c| Π w^{left} Π w^{right}`, the projective seminorm `pⁿ ⊗ pᵐ` summed
/// over all bidegrees.
pub fn tensor_seminorm<S: Coeff>(u: &TensorPair<S>, p: &WeightedSeminorm) -> f64 {
    ln_sum_exp(
        u.terms()
            .iter()
            .map(|((l, r), c)| c.ln_abs() + p.ln_weight(l.exponents()) + p.ln_weight(r.exponents())),
    )
    .exp()
}

/// `sup_{I,J} |a_{IJ}| / |I+J|!^ε` with Taylor coefficients
/// `a_{IJ} = I! J! · c` of each monomial.
pub fn wick_epsilon_norm<S: Coeff>(a: &Element<S>, eps: f64) -> Result<f64> {
    if a.basis().parities().iter().any(|p| p.is_odd()) {
        return Err(Error::OddGenerator);
    }
    if !(eps > 0.0) {
        return Err(Error::Parameter(format!("epsilon must be positive, got {eps}")));
    }
    let best = a
        .terms()
        .iter()
        .map(|(m, c)| {
            let taylor: f64 = m.exponents().iter().map(|&k| ln_factorial(k as usize)).sum();
            c.ln_abs() + taylor - eps * ln_factorial(m.degree())
        })
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(best.exp())
}

/// Certified upper bound and sampled lower bound for
/// `‖a‖_{p,s} = sup_x |a(x)| e^{−s|x|^p}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OmmyBounds {
    pub upper: f64,
    pub lower: f64,
}

/// `sup_{r ≥ 0} rⁿ e^{−s rᵖ} = (n/(sp))^{n/p} e^{−n/p}`, as a log.
pub fn ln_radial_sup(n: usize, p_param: f64, s: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    (n / p_param) * (n / (s * p_param)).ln() - n / p_param
}

/// Scale `c` with `‖a‖_{p,s}`-upper `≤ (c p)_{1/p}(a)` for unit `p`, valid
/// for every `p ∈ (0, 2]`. It follows from `nⁿ e^{−n} ≤ n!`.
pub fn ommy_comparison_scale(p_param: f64, s: f64) -> f64 {
    (1.0 / (s * p_param)).powf(1.0 / p_param)
}

/// Bounds for `‖a‖_{p,s}` on an even basis, with Euclidean `|x|`.
///
/// The upper bound is `Σ_n pⁿ(a_n) (n/(sp))^{n/p} e^{−n/p}` with unit
/// weights. The lower bound maximizes `|a(x)| e^{−s|x|^p}` over `samples`
/// seeded random points whose radii spread around the per-degree maximizers.
pub fn ommy_norm_bounds<S: Coeff>(a: &Element<S>, p_param: f64, s: f64, samples: usize, seed: u64) -> Result<OmmyBounds> {
    if !(p_param > 0.0 && p_param <= 2.0) {
        return Err(Error::Parameter(format!("p must lie in (0, 2], got {p_param}")));
    }
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::Parameter(format!("s must be positive, got {s}")));
    }
    let basis = a.basis();
    if basis.parities().iter().any(|p| p.is_odd()) {
        return Err(Error::OddGenerator);
    }
    let unit = WeightedSeminorm::unit(basis);
    let upper = ln_sum_exp(
        (0..=a.max_degree().unwrap_or(0)).map(|n| ln_pn(a, n, &unit) + ln_radial_sup(n, p_param, s)),
    )
    .exp();

    let af: Element<Float> = a.to_backend();
    let d = basis.dim();
    let r_max = (0..=a.max_degree().unwrap_or(0))
        .map(|n| (n as f64 / (s * p_param)).powf(1.0 / p_param))
        .fold(1.0, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lower = a.constant_term().abs();
    for _ in 0..samples {
        let dir: Vec<Complex64> = (0..d)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = dir.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let radius = rng.gen_range(0.0..1.5 * r_max);
        let point: Vec<Float> = dir.iter().map(|x| x * (radius / norm)).collect();
        let value = af.evaluate(&point)?.norm() * (-s * radius.powf(p_param)).exp();
        lower = lower.max(value);
    }
    Ok(OmmyBounds { upper, lower })
}

/// Both sides of a continuity estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    pub lhs: f64,
    pub rhs: f64,
    /// Dilation of the seminorm on the right-hand side.
    pub c: f64,
    /// Overall constant on the right-hand side.
    pub c_prime: f64,
    /// Factor applied to the input seminorm so that it dominates `Λ`.
    pub scaling: f64,
    pub holds: bool,
    pub r: f64,
    pub inputs: Vec<String>,
}

impl EstimateReport {
    fn new(lhs: f64, rhs: f64, c: f64, c_prime: f64, scaling: f64, r: f64, inputs: Vec<String>) -> Self {
        let holds = lhs <= rhs * (1.0 + REL_TOL);
        Self { lhs, rhs, c, c_prime, scaling, holds, r, inputs }
    }
}

/// Sums a positive series given by `ln t_k` until terms fall below
/// `1e−17` of the running total.
fn sum_ln_series(ln_term: impl Fn(usize) -> f64) -> f64 {
    let mut total = 0.0f64;
    for k in 0..1_000_000 {
        let t = ln_term(k).exp();
        total += t;
        if k > 2 && t <= 1e-17 * total {
            break;
        }
    }
    total
}

/// The dilation `c` and constant `c′` with
/// `p_R(a ⋆ b) ≤ c′ (c p)_R(a) (c p)_R(b)` for `R ≥ ½`.
pub fn product_constants(z_abs: f64, r: f64) -> Result<(f64, f64)> {
    if !(r >= 0.5) {
        return Err(Error::Refused(format!("the product estimate needs R >= 1/2, got {r}")));
    }
    if r > 1.0 {
        return Ok((2f64.powf(r), (z_abs * 4f64.powf(-r)).exp()));
    }
    let ln4r = 2.0 * r * 2f64.ln();
    if z_abs >= 1.0 {
        let lz = z_abs.ln();
        let c_prime = sum_ln_series(|k| -(k as f64) * (lz + ln4r) - (2.0 * r - 1.0) * ln_factorial(k));
        Ok((2.0 * z_abs, c_prime))
    } else if z_abs == 0.0 {
        Ok((2.0, 1.0))
    } else {
        let lz = z_abs.ln();
        let c_prime = sum_ln_series(|k| k as f64 * (lz - ln4r) - (2.0 * r - 1.0) * ln_factorial(k));
        Ok((2.0, c_prime))
    }
}

/// Checks `p_R(a ⋆_{zΛ} b) ≤ c′ (c p)_R(a) (c p)_R(b)`, rescaling `p` first
/// if it does not dominate `Λ`.
pub fn verify_product_estimate<S: Coeff>(
    a: &Element<S>,
    b: &Element<S>,
    z: &S,
    lambda: &BilinearForm<S>,
    r: f64,
    p: &WeightedSeminorm,
) -> Result<EstimateReport> {
    let (c, c_prime) = product_constants(z.abs(), r)?;
    check_basis(a, p)?;
    let scaling = p.domination_scale(lambda);
    let p = p.scaled(scaling);
    let lhs = p_r(&star(a, b, z, lambda)?, &p, r);
    let cp = p.scaled(c);
    let rhs = c_prime * p_r(a, &cp, r) * p_r(b, &cp, r);
    Ok(EstimateReport::new(lhs, rhs, c, c_prime, scaling, r, vec![a.to_string(), b.to_string()]))
}

/// Checks `p_R({a, b}) ≤ (2^{R+1} p)_R(a) (2^{R+1} p)_R(b)`, rescaling `p`
/// first if it does not dominate `Λ`.
pub fn verify_bracket_estimate<S: Coeff>(
    a: &Element<S>,
    b: &Element<S>,
    lambda: &BilinearForm<S>,
    r: f64,
    p: &WeightedSeminorm,
) -> Result<EstimateReport> {
    if !(r >= 0.0) {
        return Err(Error::Refused(format!("the bracket estimate needs R >= 0, got {r}")));
    }
    check_basis(a, p)?;
    let scaling = p.domination_scale(lambda);
    let p = p.scaled(scaling);
    let lhs = p_r(&poisson_bracket(a, b, lambda)?, &p, r);
    let c = 2f64.powf(r + 1.0);
    let cp = p.scaled(c);
    let rhs = p_r(a, &cp, r) * p_r(b, &cp, r);
    Ok(EstimateReport::new(lhs, rhs, c, 1.0, scaling, r, vec![a.to_string(), b.to_string()]))
}

/// Checks `p_R(τ*_φ v) ≤ (2p)_R(v)`, rescaling `p` first so that
/// `|φ(e_i)| ≤ w_i` on every generator.
pub fn verify_translation_estimate<S: Coeff>(
    v: &Element<S>,
    phi: &Functional<S>,
    r: f64,
    p: &WeightedSeminorm,
) -> Result<EstimateReport> {
    check_basis(v, p)?;
    let scaling = phi
        .values()
        .iter()
        .zip(p.weights())
        .map(|(x, w)| x.abs() / w)
        .fold(1.0, f64::max);
    let p = p.scaled(scaling);
    let lhs = p_r(&translate(v, phi)?, &p, r);
    let rhs = p_r(v, &p.scaled(2.0), r);
    Ok(EstimateReport::new(lhs, rhs, 2.0, 1.0, scaling, r, vec![v.to_string()]))
}

/// Checks `p_R(a·b) ≤ (2^R p)_R(a) (2^R p)_R(b)` for the symmetric product.
pub fn verify_symmetric_product_estimate<S: Coeff>(
    a: &Element<S>,
    b: &Element<S>,
    r: f64,
    p: &WeightedSeminorm,
) -> Result<EstimateReport> {
    check_basis(a, p)?;
    let lhs = p_r(&sym_product(a, b)?, p, r);
    let c = 2f64.powf(r);
    let cp = p.scaled(c);
    let rhs = p_r(a, &cp, r) * p_r(b, &cp, r);
    Ok(EstimateReport::new(lhs, rhs, c, 1.0, 1.0, r, vec![a.to_string(), b.to_string()]))
}
