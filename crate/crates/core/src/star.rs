//! Star products, Poisson brackets and the automorphisms acting on them.

use std::sync::Arc;

use crate::basis::{same_basis, GeneratorBasis};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::forms::{delta_g_unchecked, lambda_parts, p_lambda_unchecked, BilinearForm, Functional, LinearMap, TensorPair};
use crate::scalar::Coeff;

/// The coefficients `μ∘P_Λ^k(a⊗b)/k!` of `z^k` in `a ⋆ b`, for `k = 0, 1, …`
/// until they vanish.
pub fn star_coefficients<S: Coeff>(a: &Element<S>, b: &Element<S>, lambda: &BilinearForm<S>) -> Result<Vec<Element<S>>> {
    same_basis(a.basis(), lambda.basis())?;
    let mut t = TensorPair::tensor(a, b)?;
    let mut out = Vec::new();
    let mut k_fact = S::one();
    let mut k = 0i64;
    while !t.is_zero() {
        out.push(t.mu().scale(&(S::one() / k_fact.clone())));
        k += 1;
        k_fact = k_fact * S::from_i64(k);
        t = p_lambda_unchecked(&t, lambda);
    }
    Ok(out)
}

/// `a ⋆ b = Σ_k z^k/k! μ∘P_Λ^k(a⊗b)`; the sum is finite on polynomials.
pub fn star<S: Coeff>(a: &Element<S>, b: &Element<S>, z: &S, lambda: &BilinearForm<S>) -> Result<Element<S>> {
    let coeffs = star_coefficients(a, b, lambda)?;
    let mut out = Element::zero(a.basis());
    let mut zk = S::one();
    for c in &coeffs {
        out = &out + &c.scale(&zk);
        zk = zk * z.clone();
    }
    Ok(out)
}

/// The star product with `z = iħ/2`.
pub fn star_hbar<S: Coeff>(a: &Element<S>, b: &Element<S>, hbar: &S, lambda: &BilinearForm<S>) -> Result<Element<S>> {
    star(a, b, &hbar_to_z(hbar), lambda)
}

pub fn hbar_to_z<S: Coeff>(hbar: &S) -> S {
    S::i() * hbar.clone() * S::from_ratio(1, 2)
}

/// `{a, b} = 2μ∘P_{Λ₋}(a⊗b)`. With the Darboux form `{q, p} = 2`.
pub fn poisson_bracket<S: Coeff>(a: &Element<S>, b: &Element<S>, lambda: &BilinearForm<S>) -> Result<Element<S>> {
    same_basis(a.basis(), lambda.basis())?;
    let (_, minus) = lambda_parts(lambda);
    let t = TensorPair::tensor(a, b)?;
    Ok(p_lambda_unchecked(&t, &minus).mu().scale(&S::from_i64(2)))
}

/// `[a, b]⋆ = a⋆b − (−1)^{|a||b|} b⋆a`, extended bilinearly over parity parts.
pub fn graded_commutator<S: Coeff>(a: &Element<S>, b: &Element<S>, z: &S, lambda: &BilinearForm<S>) -> Result<Element<S>> {
    let (a0, a1) = a.parity_split();
    let (b0, b1) = b.parity_split();
    let mut out = Element::zero(a.basis());
    for (x, xodd) in [(&a0, false), (&a1, true)] {
        for (y, yodd) in [(&b0, false), (&b1, true)] {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let xy = star(x, y, z, lambda)?;
            let yx = star(y, x, z, lambda)?;
            out = if xodd && yodd { &(&out + &xy) + &yx } else { &(&out + &xy) - &yx };
        }
    }
    Ok(out)
}

/// `e^{zΔ_g} a`, a finite sum on polynomials.
pub fn equivalence_transform<S: Coeff>(a: &Element<S>, z: &S, g: &BilinearForm<S>) -> Result<Element<S>> {
    same_basis(a.basis(), g.basis())?;
    g.require_graded_symmetric()?;
    let mut out = a.clone();
    let mut term = a.clone();
    let mut k = 0i64;
    loop {
        term = delta_g_unchecked(&term, g);
        if term.is_zero() {
            return Ok(out);
        }
        k += 1;
        term = term.scale(&(z.clone() / S::from_i64(k)));
        out = &out + &term;
    }
}

/// Applies the unital homomorphism sending generator `i` to `images[i]`.
pub fn hom_apply<S: Coeff>(a: &Element<S>, images: &[Element<S>], target: &Arc<GeneratorBasis>) -> Element<S> {
    let mut out = Element::zero(target);
    for (m, c) in a.terms() {
        let mut v = Element::constant(target, c.clone());
        // Canonical order: ascending generator index.
        for (i, &k) in m.exponents().iter().enumerate() {
            for _ in 0..k {
                v = &v * &images[i];
            }
        }
        out = &out + &v;
    }
    out
}

/// The translation `τ*_φ`: the unital homomorphism with `v ↦ v + φ(v)·1`.
pub fn translate<S: Coeff>(a: &Element<S>, phi: &Functional<S>) -> Result<Element<S>> {
    same_basis(a.basis(), phi.basis())?;
    let b = a.basis();
    for i in 0..b.dim() {
        if b.is_odd(i) && !phi.get(i).is_zero() {
            return Err(Error::OddFunctional(b.name(i).to_string()));
        }
    }
    let images: Vec<Element<S>> = (0..b.dim())
        .map(|i| &Element::generator(b, i) + &Element::constant(b, phi.get(i).clone()))
        .collect();
    Ok(hom_apply(a, &images, b))
}

/// The derivation `X_φ = Σ_i φ(e_i) ∂⃗_i`, acting from the left.
pub fn derivation_x<S: Coeff>(a: &Element<S>, phi: &Functional<S>) -> Result<Element<S>> {
    same_basis(a.basis(), phi.basis())?;
    let b = a.basis();
    let mut out = Element::zero(b);
    for (m, c) in a.terms() {
        for i in 0..b.dim() {
            let fi = phi.get(i);
            if fi.is_zero() {
                continue;
            }
            if let Some((f, m2)) = m.left_derivative(i, b) {
                out.add_term(m2, c.clone() * fi.clone() * S::from_i64(f));
            }
        }
    }
    Ok(out)
}

/// The unital homomorphism extending a linear map on generators.
pub fn apply_linear<S: Coeff>(a: &Element<S>, map: &LinearMap<S>) -> Result<Element<S>> {
    same_basis(a.basis(), map.source())?;
    let images: Vec<Element<S>> = (0..map.source().dim()).map(|j| map.image(j)).collect();
    Ok(hom_apply(a, &images, map.target()))
}

/// Which part of `Λ` breaks the involution criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormPart {
    /// `conj Λ₊ ≠ −Λ₊`
    Symmetric,
    /// `conj Λ₋ ≠ Λ₋`
    Antisymmetric,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvolutionViolation<S> {
    pub part: FormPart,
    pub row: usize,
    pub col: usize,
    pub value: S,
    pub conjugated: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvolutionReport<S> {
    pub holds: bool,
    pub violations: Vec<InvolutionViolation<S>>,
}

/// Whether complex conjugation is an anti-automorphism of `⋆` with
/// `z = iħ/2`: holds iff `conj Λ₊ = −Λ₊` and `conj Λ₋ = Λ₋` entrywise.
pub fn check_star_involution<S: Coeff>(lambda: &BilinearForm<S>, hbar: &S) -> Result<InvolutionReport<S>> {
    if !hbar.is_real() || hbar.is_zero() {
        return Err(Error::Parameter("ħ must be real and nonzero".into()));
    }
    let (plus, minus) = lambda_parts(lambda);
    let (cplus, cminus) = (plus.conjugate(), minus.conjugate());
    let d = lambda.dim();
    let mut violations = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if *cplus.get(i, j) != -plus.get(i, j).clone() {
                violations.push(InvolutionViolation {
                    part: FormPart::Symmetric,
                    row: i,
                    col: j,
                    value: plus.get(i, j).clone(),
                    conjugated: cplus.get(i, j).clone(),
                });
            }
            if cminus.get(i, j) != minus.get(i, j) {
                violations.push(InvolutionViolation {
                    part: FormPart::Antisymmetric,
                    row: i,
                    col: j,
                    value: minus.get(i, j).clone(),
                    conjugated: cminus.get(i, j).clone(),
                });
            }
        }
    }
    Ok(InvolutionReport {
        holds: violations.is_empty(),
        violations,
    })
}

/// `conj(a⋆b) − (−1)^{|a||b|} conj(b)⋆conj(a)` with `z = iħ/2`, extended
/// bilinearly over parity parts. Zero for all `a, b` iff conjugation is a
/// `⋆`-involution.
pub fn involution_defect<S: Coeff>(a: &Element<S>, b: &Element<S>, lambda: &BilinearForm<S>, hbar: &S) -> Result<Element<S>> {
    let (a0, a1) = a.parity_split();
    let (b0, b1) = b.parity_split();
    let mut out = Element::zero(a.basis());
    for (x, xodd) in [(&a0, false), (&a1, true)] {
        for (y, yodd) in [(&b0, false), (&b1, true)] {
            let lhs = star_hbar(x, y, hbar, lambda)?.conjugate();
            let rhs = star_hbar(&y.conjugate(), &x.conjugate(), hbar, lambda)?;
            out = if xodd && yodd { &(&out + &lhs) + &rhs } else { &(&out + &lhs) - &rhs };
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::Parity;
    use crate::forms::presets;
    use crate::scalar::{q, Exact};

    fn qp() -> Arc<GeneratorBasis> {
        GeneratorBasis::even(&["q", "p"]).unwrap()
    }

    fn el(b: &Arc<GeneratorBasis>, s: &str) -> Element<Exact> {
        Element::parse(b, s).unwrap()
    }

    #[test]
    fn star_examples() {
        let b = qp();
        let std = presets::standard_ordered::<Exact>(&b, &[("q", "p")]).unwrap();
        let z = q(3, 7);
        assert_eq!(star(&el(&b, "p"), &el(&b, "q"), &z, &std).unwrap(), el(&b, "q*p + 3/7"));
        assert_eq!(star(&el(&b, "q"), &el(&b, "p"), &z, &std).unwrap(), el(&b, "q*p"));
        assert_eq!(
            star(&el(&b, "p^2"), &el(&b, "q^2"), &z, &std).unwrap(),
            el(&b, "q^2*p^2 + 12/7*q*p + 18/49")
        );
    }

    #[test]
    fn bracket_and_commutator_examples() {
        let b = qp();
        let dar = presets::darboux::<Exact>(&b, &[("q", "p")]).unwrap();
        assert_eq!(poisson_bracket(&el(&b, "q"), &el(&b, "p"), &dar).unwrap(), el(&b, "2"));
        assert!(poisson_bracket(&el(&b, "q"), &el(&b, "q"), &dar).unwrap().is_zero());
        assert_eq!(poisson_bracket(&el(&b, "q^2"), &el(&b, "p"), &dar).unwrap(), el(&b, "4*q"));
        let z = q(5, 1);
        assert_eq!(graded_commutator(&el(&b, "q"), &el(&b, "p"), &z, &dar).unwrap(), el(&b, "10"));
        assert!(graded_commutator(&el(&b, "q^2*p"), &el(&b, "1"), &z, &dar).unwrap().is_zero());
        let ob = GeneratorBasis::new([("e", Parity::Odd)]).unwrap();
        let g = BilinearForm::new(&ob, vec![vec![q(1, 1)]]).unwrap();
        let e = el(&ob, "e");
        assert_eq!(star(&e, &e, &z, &g).unwrap(), el(&ob, "5"));
        assert_eq!(graded_commutator(&e, &e, &z, &g).unwrap(), el(&ob, "10"));
    }

    #[test]
    fn equivalence_examples() {
        let b = qp();
        let g = BilinearForm::from_entries(&b, &[("q", "p", q(1, 2)), ("p", "q", q(1, 2))]).unwrap();
        let z = q(2, 3);
        assert_eq!(equivalence_transform(&el(&b, "q"), &z, &g).unwrap(), el(&b, "q"));
        assert_eq!(equivalence_transform(&el(&b, "q*p"), &z, &g).unwrap(), el(&b, "q*p + 1/3"));
        let std = presets::standard_ordered::<Exact>(&b, &[("q", "p")]).unwrap();
        let weyl = presets::weyl::<Exact>(&b, &[("q", "p")]).unwrap();
        let g = std.try_sub(&weyl).unwrap();
        let lhs = equivalence_transform(&star(&el(&b, "q"), &el(&b, "p"), &z, &weyl).unwrap(), &z, &g).unwrap();
        assert_eq!(lhs, el(&b, "q*p"));
        assert_eq!(star(&el(&b, "q"), &el(&b, "p"), &z, &std).unwrap(), lhs);
    }

    #[test]
    fn translation_derivation_linear_examples() {
        let b = qp();
        let phi = Functional::from_named(&b, &[("q", q(3, 1))]).unwrap();
        assert_eq!(translate(&el(&b, "q^2"), &phi).unwrap(), el(&b, "q^2 + 6*q + 9"));
        assert_eq!(translate(&el(&b, "1"), &phi).unwrap(), el(&b, "1"));
        let a = el(&b, "q^2*p + 7");
        assert_eq!(translate(&a, &Functional::zero(&b)).unwrap(), a);
        let x = Functional::from_named(&b, &[("q", q(1, 1))]).unwrap();
        assert_eq!(derivation_x(&el(&b, "q^2"), &x).unwrap(), el(&b, "2*q"));
        assert!(derivation_x(&el(&b, "1"), &x).unwrap().is_zero());
        let shear = LinearMap::new(&b, &b, vec![vec![q(1, 1), q(1, 1)], vec![q(0, 1), q(1, 1)]]).unwrap();
        assert_eq!(apply_linear(&el(&b, "q*p"), &shear).unwrap(), el(&b, "q*p + q^2"));
        let zero = LinearMap::new(&b, &b, vec![vec![q(0, 1); 2]; 2]).unwrap();
        assert_eq!(apply_linear(&el(&b, "1 + q"), &zero).unwrap(), el(&b, "1"));
        assert_eq!(apply_linear(&a, &LinearMap::identity(&b)).unwrap(), a);
        let ob = GeneratorBasis::new([("q", Parity::Even), ("e", Parity::Odd)]).unwrap();
        let bad = Functional::from_named(&ob, &[("e", q(1, 1))]).unwrap();
        assert!(matches!(translate(&el(&ob, "q"), &bad), Err(Error::OddFunctional(_))));
    }

    #[test]
    fn involution_examples() {
        let b = qp();
        let hbar = q(1, 1);
        let weyl = presets::weyl::<Exact>(&b, &[("q", "p")]).unwrap();
        assert!(check_star_involution(&weyl, &hbar).unwrap().holds);
        let std = presets::standard_ordered::<Exact>(&b, &[("q", "p")]).unwrap();
        let r = check_star_involution(&std, &hbar).unwrap();
        assert!(!r.holds);
        assert!(r.violations.iter().all(|v| v.part == FormPart::Symmetric));
        let wb = GeneratorBasis::even(&["z", "zbar"]).unwrap().with_conjugate_pairs(&[("z", "zbar")]).unwrap();
        let wick = BilinearForm::from_entries(&wb, &[("z", "zbar", -Exact::i() * q(4, 1))]).unwrap();
        assert!(check_star_involution(&wick, &hbar).unwrap().holds);
        assert!(check_star_involution(&weyl, &q(0, 1)).is_err());
        assert!(check_star_involution(&weyl, &Exact::i()).is_err());
    }
}
