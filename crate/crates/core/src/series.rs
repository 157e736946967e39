//! Degree-truncated elements of the completed algebra.
//!
//! A [`TruncatedSeries`] stores the homogeneous components `S_0, …, S_N` of
//! a formal series together with a scalar prefactor `e^{central}`. Series
//! built from `e^{c} exp(w) C` with `w` even of degree one and `C` a
//! polynomial keep that closed form, so their star products are computed
//! exactly rather than from truncated components.

use std::sync::Arc;

use serde::Serialize;

use crate::basis::GeneratorBasis;
use crate::diagnostics::{log_ratios, ratio_verdict, Verdict};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::forms::{linear_coefficients, sharp, BilinearForm, Functional};
use crate::scalar::{ln_factorial, Coeff, Float};
use crate::seminorm::{ln_pn, ln_sum_exp, WeightedSeminorm};
use crate::star::{star, star_coefficients, translate};

/// Default truncation order for diagnostics.
pub const DEFAULT_ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesLabel {
    Exp,
    StarExp,
    FEpsilon,
    Polynomial,
    Product,
    Custom,
}

impl SeriesLabel {
    pub fn name(self) -> &'static str {
        match self {
            SeriesLabel::Exp => "exp",
            SeriesLabel::StarExp => "star-exp",
            SeriesLabel::FEpsilon => "f-eps",
            SeriesLabel::Polynomial => "polynomial",
            SeriesLabel::Product => "product",
            SeriesLabel::Custom => "custom",
        }
    }
}

/// `e^{central} exp(exponent) · poly` with an even degree-one exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpPoly<S> {
    pub central: S,
    pub exponent: Element<S>,
    pub poly: Element<S>,
}

impl<S: Coeff> ExpPoly<S> {
    pub fn new(central: S, exponent: Element<S>, poly: Element<S>) -> Result<Self> {
        crate::basis::same_basis(exponent.basis(), poly.basis())?;
        linear_coefficients(&exponent)?;
        if exponent.has_odd_generators() {
            return Err(Error::OddGenerator);
        }
        Ok(Self { central, exponent, poly })
    }

    pub fn polynomial(a: &Element<S>) -> Self {
        Self { central: S::zero(), exponent: Element::zero(a.basis()), poly: a.clone() }
    }

    pub fn basis(&self) -> &Arc<GeneratorBasis> {
        self.poly.basis()
    }

    /// Component `n` of `exp(exponent) · poly`, without the prefactor.
    pub fn component(&self, n: usize) -> Element<S> {
        let mut out = Element::zero(self.basis());
        let mut power = Element::one(self.basis());
        let mut k_fact = S::one();
        for k in 0..=n {
            if k > 0 {
                power = &power * &self.exponent;
                k_fact = k_fact * S::from_i64(k as i64);
            }
            if power.is_zero() {
                break;
            }
            let rest = self.poly.grade_component(n - k);
            if !rest.is_zero() {
                out = &out + &(&power * &rest).scale(&(S::one() / k_fact.clone()));
            }
        }
        out
    }

    /// `(e^{c₁} exp(w₁) C₁) ⋆ (e^{c₂} exp(w₂) C₂)
    ///  = e^{c₁+c₂+zΛ(w₁,w₂)} exp(w₁+w₂) (τ*_{zΛ(·,w₂)} C₁ ⋆ τ*_{zΛ(w₁,·)} C₂)`.
    pub fn star(&self, other: &Self, z: &S, lambda: &BilinearForm<S>) -> Result<Self> {
        crate::basis::same_basis(self.basis(), other.basis())?;
        crate::basis::same_basis(self.basis(), lambda.basis())?;
        let w1 = linear_coefficients(&self.exponent)?;
        let w2 = linear_coefficients(&other.exponent)?;
        let d = lambda.dim();
        let left: Vec<S> = (0..d)
            .map(|i| (0..d).fold(S::zero(), |acc, j| acc + lambda.get(i, j).clone() * w2[j].clone()) * z.clone())
            .collect();
        let right: Vec<S> = (0..d)
            .map(|j| (0..d).fold(S::zero(), |acc, i| acc + w1[i].clone() * lambda.get(i, j).clone()) * z.clone())
            .collect();
        let cross = z.clone() * lambda.eval(&w1, &w2);
        let c1 = translate(&self.poly, &Functional::new(self.basis(), left)?)?;
        let c2 = translate(&other.poly, &Functional::new(self.basis(), right)?)?;
        Ok(Self {
            central: self.central.clone() + other.central.clone() + cross,
            exponent: &self.exponent + &other.exponent,
            poly: star(&c1, &c2, z, lambda)?,
        })
    }

    pub fn truncate(&self, order: usize, label: SeriesLabel) -> TruncatedSeries<S> {
        let terminates = self.exponent.is_zero();
        TruncatedSeries {
            components: (0..=order).map(|n| self.component(n)).collect(),
            central: self.central.clone(),
            exact: vec![true; order + 1],
            terminates: terminates && self.poly.max_degree().map_or(true, |d| d <= order),
            label,
            closed_form: Some(self.clone()),
        }
    }
}

/// Components `S_0..S_N` of `e^{central} Σ_n S_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<S> {
    components: Vec<Element<S>>,
    central: S,
    exact: Vec<bool>,
    terminates: bool,
    label: SeriesLabel,
    closed_form: Option<ExpPoly<S>>,
}

impl<S: Coeff> TruncatedSeries<S> {
    /// The grading of a polynomial, truncated at `order`.
    pub fn from_polynomial(a: &Element<S>, order: usize) -> Self {
        ExpPoly::polynomial(a).truncate(order, SeriesLabel::Polynomial)
    }

    /// A series from explicit components; each must be homogeneous of its
    /// index degree. `terminates` asserts that all later components vanish.
    pub fn custom(components: Vec<Element<S>>, terminates: bool) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::Parameter("a series needs at least one component".into()));
        };
        for (n, c) in components.iter().enumerate() {
            crate::basis::same_basis(first.basis(), c.basis())?;
            if !c.is_zero() && c.homogeneous_degree() != Some(n) {
                return Err(Error::Degree { expected: n });
            }
        }
        let n = components.len();
        Ok(Self {
            components,
            central: S::zero(),
            exact: vec![true; n],
            terminates,
            label: SeriesLabel::Custom,
            closed_form: None,
        })
    }

    pub fn basis(&self) -> &Arc<GeneratorBasis> {
        self.components[0].basis()
    }

    pub fn order(&self) -> usize {
        self.components.len() - 1
    }

    pub fn components(&self) -> &[Element<S>] {
        &self.components
    }

    pub fn component(&self, n: usize) -> Element<S> {
        self.components.get(n).cloned().unwrap_or_else(|| Element::zero(self.basis()))
    }

    pub fn central(&self) -> &S {
        &self.central
    }

    /// Per-degree exactness flags.
    pub fn exact(&self) -> &[bool] {
        &self.exact
    }

    pub fn terminates(&self) -> bool {
        self.terminates
    }

    pub fn label(&self) -> SeriesLabel {
        self.label
    }

    pub fn closed_form(&self) -> Option<&ExpPoly<S>> {
        self.closed_form.as_ref()
    }

    /// `Σ_{n ≤ order} S_n`, without the prefactor.
    pub fn partial_sum(&self, order: usize) -> Element<S> {
        self.components
            .iter()
            .take(order + 1)
            .fold(Element::zero(self.basis()), |acc, c| &acc + c)
    }

    /// The highest nonzero degree when the series terminates.
    fn top_degree(&self) -> Option<usize> {
        if !self.terminates {
            return None;
        }
        Some(self.components.iter().rposition(|c| !c.is_zero()).unwrap_or(0))
    }
}

fn require_linear<S: Coeff>(v: &Element<S>) -> Result<()> {
    if v.homogeneous_degree() != Some(1) {
        return Err(Error::Degree { expected: 1 });
    }
    Ok(())
}

/// `exp(v) = Σ vⁿ/n!` for a degree-one `v`. The odd part `θ` contributes
/// the factor `1 + θ`, so an odd `v` gives exactly `1 + v`.
pub fn exp_element<S: Coeff>(v: &Element<S>, order: usize) -> Result<TruncatedSeries<S>> {
    require_linear(v)?;
    let (even, odd) = v.parity_split();
    let poly = &Element::one(v.basis()) + &odd;
    Ok(ExpPoly::new(S::zero(), even, poly)?.truncate(order, SeriesLabel::Exp))
}

/// `Exp_⋆(tw) = e^{t²zΛ(w,w)/2} exp(tw)` for even degree-one `w`.
pub fn star_exp<S: Coeff>(w: &Element<S>, t: &S, z: &S, lambda: &BilinearForm<S>, order: usize) -> Result<TruncatedSeries<S>> {
    Ok(star_exp_closed(w, t, z, lambda)?.truncate(order, SeriesLabel::StarExp))
}

fn star_exp_closed<S: Coeff>(w: &Element<S>, t: &S, z: &S, lambda: &BilinearForm<S>) -> Result<ExpPoly<S>> {
    require_linear(w)?;
    if w.has_odd_generators() {
        return Err(Error::OddGenerator);
    }
    crate::basis::same_basis(w.basis(), lambda.basis())?;
    let lww = lambda.eval_elements(w, w)?;
    let central = t.clone() * t.clone() * z.clone() * lww * S::from_ratio(1, 2);
    ExpPoly::new(central, w.scale(t), Element::one(w.basis()))
}

/// `Σ_{k ≤ K} t^k/k! w^{⋆k}`.
pub fn iterated_star_partial<S: Coeff>(w: &Element<S>, t: &S, z: &S, lambda: &BilinearForm<S>, k_max: usize) -> Result<Element<S>> {
    let mut power = Element::one(w.basis());
    let mut out = power.clone();
    let mut coeff = S::one();
    for k in 1..=k_max {
        power = star(&power, w, z, lambda)?;
        coeff = coeff * t.clone() / S::from_i64(k as i64);
        out = &out + &power.scale(&coeff);
    }
    Ok(out)
}

/// The terms of `e^{t²zΛ(w,w)/2} exp(tw)` of total order `n + 2j ≤ K` in
/// `t`, where `n` is the degree and `j` the power of the central exponent.
/// This equals [`iterated_star_partial`] with the same `K`.
pub fn star_exp_taylor_partial<S: Coeff>(
    w: &Element<S>,
    t: &S,
    z: &S,
    lambda: &BilinearForm<S>,
    k_max: usize,
) -> Result<Element<S>> {
    let closed = star_exp_closed(w, t, z, lambda)?;
    let mut out = Element::zero(w.basis());
    let mut cj = S::one();
    for j in 0..=k_max / 2 {
        if j > 0 {
            cj = cj * closed.central.clone() / S::from_i64(j as i64);
        }
        for n in 0..=k_max - 2 * j {
            out = &out + &closed.component(n).scale(&cj);
        }
    }
    Ok(out)
}

/// `f_ε(v) = Σ vⁿ/n!^ε` for even degree-one `v`.
pub fn f_epsilon_series(v: &Element<Float>, eps: f64, order: usize) -> Result<TruncatedSeries<Float>> {
    require_linear(v)?;
    if v.has_odd_generators() {
        return Err(Error::OddGenerator);
    }
    if !(eps > 0.0) {
        return Err(Error::Parameter(format!("epsilon must be positive, got {eps}")));
    }
    let mut components = Vec::with_capacity(order + 1);
    let mut power = Element::one(v.basis());
    for n in 0..=order {
        if n > 0 {
            power = &power * v;
        }
        let scale = (-eps * ln_factorial(n)).exp();
        components.push(power.scale(&Float::new(scale, 0.0)));
    }
    Ok(TruncatedSeries {
        exact: vec![true; order + 1],
        components,
        central: Float::new(0.0, 0.0),
        terminates: v.is_zero(),
        label: SeriesLabel::FEpsilon,
        closed_form: None,
    })
}

/// Degree-`≤ N` components of `A ⋆ B`.
///
/// With closed forms on both sides the product is exact. Otherwise degree
/// `n` collects `z^m/m! μ∘P^m(A_k ⊗ B_l)` over `k + l − 2m = n` for input
/// degrees up to `N + budget`; a degree is flagged exact only when no
/// unconsulted input component can reach it. With `require_exact`, an
/// inexact degree up to `N` is an error.
pub fn truncated_star<S: Coeff>(
    a: &TruncatedSeries<S>,
    b: &TruncatedSeries<S>,
    z: &S,
    lambda: &BilinearForm<S>,
    order: usize,
    budget: usize,
    require_exact: bool,
) -> Result<TruncatedSeries<S>> {
    crate::basis::same_basis(a.basis(), b.basis())?;
    crate::basis::same_basis(a.basis(), lambda.basis())?;
    if let (Some(ca), Some(cb)) = (&a.closed_form, &b.closed_form) {
        return Ok(ca.star(cb, z, lambda)?.truncate(order, SeriesLabel::Product));
    }
    let reach = order + budget;
    let ka = a.order().min(reach);
    let kb = b.order().min(reach);
    let basis = a.basis();
    let mut components = vec![Element::zero(basis); order + 1];
    for k in 0..=ka {
        let ak = &a.components[k];
        if ak.is_zero() {
            continue;
        }
        for l in 0..=kb {
            let bl = &b.components[l];
            if bl.is_zero() {
                continue;
            }
            let coeffs = star_coefficients(ak, bl, lambda)?;
            let mut zm = S::one();
            for (m, c) in coeffs.iter().enumerate() {
                if m > 0 {
                    zm = zm * z.clone();
                }
                let Some(n) = (k + l).checked_sub(2 * m) else { break };
                if n <= order && !c.is_zero() {
                    components[n] = &components[n] + &c.scale(&zm);
                }
            }
        }
    }
    let complete_a = a.top_degree().is_some_and(|d| d <= ka);
    let complete_b = b.top_degree().is_some_and(|d| d <= kb);
    let inputs_exact = a.exact[..=ka].iter().chain(&b.exact[..=kb]).all(|&e| e);
    let exact_through: Option<usize> = match (complete_a, complete_b) {
        _ if !inputs_exact => None,
        (true, true) => Some(order),
        (true, false) => (kb + 1).checked_sub(a.top_degree().unwrap() + 1),
        (false, true) => (ka + 1).checked_sub(b.top_degree().unwrap() + 1),
        (false, false) => None,
    };
    let exact: Vec<bool> = (0..=order).map(|n| exact_through.is_some_and(|e| n <= e)).collect();
    if require_exact {
        if let Some(n) = exact.iter().position(|&e| !e) {
            return Err(Error::Truncation { degree: n });
        }
    }
    Ok(TruncatedSeries {
        components,
        central: a.central.clone() + b.central.clone(),
        exact,
        terminates: complete_a && complete_b && a.top_degree().unwrap() + b.top_degree().unwrap() <= order,
        label: SeriesLabel::Product,
        closed_form: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub r: f64,
    pub label: SeriesLabel,
    pub order: usize,
    /// `ln(n!^R pⁿ(S_n) |e^{central}|)`, `-inf` for vanishing components.
    pub ln_terms: Vec<f64>,
    pub partials: Vec<f64>,
    /// `t_n / t_{n−1}` where both terms are nonzero.
    pub ratios: Vec<Option<f64>>,
    pub verdict: Verdict,
}

/// Partial sums of `Σ_n n!^R pⁿ(S_n)` with a ratio-test verdict.
pub fn convergence_diagnosis<S: Coeff>(s: &TruncatedSeries<S>, p: &WeightedSeminorm, r: f64) -> Result<ConvergenceReport> {
    crate::basis::same_basis(s.basis(), p.basis())?;
    let offset = s.central.to_c64().re;
    let ln_terms: Vec<f64> = s
        .components
        .iter()
        .enumerate()
        .map(|(n, c)| r * ln_factorial(n) + ln_pn(c, n, p) + offset)
        .collect();
    let mut partials = Vec::with_capacity(ln_terms.len());
    let mut acc = f64::NEG_INFINITY;
    for t in &ln_terms {
        acc = ln_sum_exp([acc, *t]);
        partials.push(acc.exp());
    }
    let mut ratios = vec![None; ln_terms.len()];
    for (n, lr) in log_ratios(&ln_terms) {
        if ln_terms[n - 1].is_finite() {
            ratios[n] = Some(lr.exp());
        }
    }
    let verdict = if s.terminates { Verdict::Converging } else { ratio_verdict(&ln_terms) };
    Ok(ConvergenceReport { r, label: s.label, order: s.order(), ln_terms, partials, ratios, verdict })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivergenceWitness {
    pub eps: f64,
    pub hbar: f64,
    /// `|(−iħ)^ℓ ℓ!^{1−2ε}|`.
    pub terms: Vec<f64>,
    /// `|Σ_{ℓ' ≤ ℓ} (−iħ)^{ℓ'} ℓ'!^{1−2ε}|`.
    pub partials: Vec<f64>,
}

/// Degree-zero coefficient of `f_ε(p) ⋆ f_ε(q)` for the standard-ordered
/// form with `z = −iħ`: `Σ_ℓ (−iħ)^ℓ ℓ!^{1−2ε}`.
pub fn divergence_witness(eps: f64, hbar: f64, count: usize) -> Result<DivergenceWitness> {
    if !(eps > 0.0) {
        return Err(Error::Parameter(format!("epsilon must be positive, got {eps}")));
    }
    if eps >= 0.5 {
        return Err(Error::Refused(format!("the divergence witness needs epsilon < 1/2, got {eps}")));
    }
    if !(hbar >= 0.0 && hbar.is_finite()) {
        return Err(Error::Parameter(format!("hbar must be nonnegative, got {hbar}")));
    }
    let mut terms = Vec::with_capacity(count + 1);
    let mut partials = Vec::with_capacity(count + 1);
    let mut sum = Float::new(0.0, 0.0);
    let phase = Float::new(0.0, -1.0);
    for l in 0..=count {
        let magnitude = if l == 0 {
            1.0
        } else if hbar == 0.0 {
            0.0
        } else {
            (l as f64 * hbar.ln() + (1.0 - 2.0 * eps) * ln_factorial(l)).exp()
        };
        sum += phase.powi(l as i32) * magnitude;
        terms.push(magnitude);
        partials.push(sum.norm());
    }
    Ok(DivergenceWitness { eps, hbar, terms, partials })
}

#[derive(Debug, Clone, PartialEq)]
pub struct InnerTranslationReport<S> {
    /// `φ(v) = 2zΛ₋(w, v)`.
    pub phi: S,
    /// `Exp_⋆(w) ⋆ v ⋆ Exp_⋆(−w)` from the closed forms.
    pub lhs: TruncatedSeries<S>,
    /// `v + φ(v)·1`.
    pub rhs: Element<S>,
    pub per_degree_match: Vec<bool>,
    /// Degree-zero parts of `(Σ_{k≤K} wᵏ/k!) ⋆ v ⋆ (Σ_{k≤K} (−w)ᵏ/k!)`
    /// for `K = 0..N`, computed from polynomials only.
    pub degree0_partials: Vec<S>,
}

impl<S: Coeff> InnerTranslationReport<S> {
    pub fn holds(&self) -> bool {
        self.per_degree_match.iter().all(|&m| m)
    }
}

/// Compares `Exp_⋆(w) ⋆ v ⋆ Exp_⋆(−w)` with the translation `v + 2zΛ₋(w,v)`
/// degree by degree through `N`.
pub fn inner_translation_check<S: Coeff>(
    w: &Element<S>,
    v: &Element<S>,
    z: &S,
    lambda: &BilinearForm<S>,
    order: usize,
) -> Result<InnerTranslationReport<S>> {
    if z.is_zero() {
        return Err(Error::Parameter("z must be nonzero".into()));
    }
    require_linear(v)?;
    let one = S::one();
    let plus = star_exp_closed(w, &one, z, lambda)?;
    let minus = star_exp_closed(w, &-one, z, lambda)?;
    let lhs = plus
        .star(&ExpPoly::polynomial(v), z, lambda)?
        .star(&minus, z, lambda)?
        .truncate(order, SeriesLabel::Product);

    let phi = S::from_i64(2) * z.clone() * sharp(w, lambda)?.apply(v)?;
    let rhs = v + &Element::constant(v.basis(), phi.clone());
    let central_vanishes = lhs.central.is_zero();
    let per_degree_match = (0..=order)
        .map(|n| central_vanishes && lhs.component(n) == rhs.grade_component(n))
        .collect();

    let mut degree0_partials = Vec::with_capacity(order + 1);
    let (mut ep, mut em) = (Element::zero(w.basis()), Element::zero(w.basis()));
    let neg_w = w.scale(&-S::one());
    for k in 0..=order {
        ep = &ep + &plus_component(w, k);
        em = &em + &plus_component(&neg_w, k);
        let prod = star(&star(&ep, v, z, lambda)?, &em, z, lambda)?;
        degree0_partials.push(prod.constant_term());
    }
    Ok(InnerTranslationReport { phi, lhs, rhs, per_degree_match, degree0_partials })
}

fn plus_component<S: Coeff>(w: &Element<S>, k: usize) -> Element<S> {
    let k_fact = (1..=k).fold(S::one(), |acc, j| acc * S::from_i64(j as i64));
    w.pow(k as u32).scale(&(S::one() / k_fact))
}
