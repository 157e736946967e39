//! Seeded random elements, forms and maps with small rational entries.

use std::sync::Arc;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basis::{GeneratorBasis, Monomial, Parity};
use crate::element::Element;
use crate::forms::{BilinearForm, Functional, LinearMap};
use crate::scalar::{Coeff, Exact};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of random elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElementShape {
    pub max_degree: usize,
    pub max_terms: usize,
    pub complex: bool,
}

impl Default for ElementShape {
    fn default() -> Self {
        Self { max_degree: 3, max_terms: 3, complex: false }
    }
}

/// `q, p` even and `e1, e2` odd.
pub fn mixed_basis() -> Arc<GeneratorBasis> {
    GeneratorBasis::new([
        ("q", Parity::Even),
        ("p", Parity::Even),
        ("e1", Parity::Odd),
        ("e2", Parity::Odd),
    ])
    .unwrap()
}

/// A rational `a/b` with `|a| ≤ 5`, `1 ≤ b ≤ 4`.
pub fn small_rational(rng: &mut SampleRng) -> BigRational {
    BigRational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into())
}

pub fn small_nonzero_rational(rng: &mut SampleRng) -> BigRational {
    loop {
        let r = small_rational(rng);
        if r != BigRational::from_integer(0.into()) {
            return r;
        }
    }
}

pub fn small_scalar(rng: &mut SampleRng, complex: bool) -> Exact {
    let re = small_rational(rng);
    let im = if complex && rng.gen_bool(0.5) { small_rational(rng) } else { BigRational::from_integer(0.into()) };
    Exact::new(re, im)
}

/// A canonical monomial of degree at most `max_degree`.
pub fn random_monomial(rng: &mut SampleRng, basis: &GeneratorBasis, max_degree: usize) -> Monomial {
    let degree = rng.gen_range(0..=max_degree);
    let mut exps = vec![0u32; basis.dim()];
    for _ in 0..degree {
        let i = rng.gen_range(0..basis.dim());
        if basis.is_odd(i) && exps[i] == 1 {
            continue;
        }
        exps[i] += 1;
    }
    Monomial::from_exponents(basis, exps).expect("odd exponents stay below two")
}

pub fn random_element(rng: &mut SampleRng, basis: &Arc<GeneratorBasis>, shape: ElementShape) -> Element<Exact> {
    let terms = rng.gen_range(1..=shape.max_terms.max(1));
    let mut out = Element::zero(basis);
    for _ in 0..terms {
        let m = random_monomial(rng, basis, shape.max_degree);
        out.add_term(m, small_scalar(rng, shape.complex));
    }
    out
}

/// A random element of a single parity.
pub fn random_homogeneous_parity(
    rng: &mut SampleRng,
    basis: &Arc<GeneratorBasis>,
    shape: ElementShape,
    parity: Parity,
) -> Element<Exact> {
    let a = random_element(rng, basis, shape);
    let (even, odd) = a.parity_split();
    match parity {
        Parity::Even => even,
        Parity::Odd => odd,
    }
}

/// A random degree-one element on even generators.
pub fn random_even_linear(rng: &mut SampleRng, basis: &Arc<GeneratorBasis>) -> Element<Exact> {
    loop {
        let coeffs: Vec<Exact> = (0..basis.dim())
            .map(|i| if basis.is_odd(i) { Exact::zero() } else { small_scalar(rng, false) })
            .collect();
        let v = Element::linear(basis, &coeffs);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Block entries respecting parity; `sym` controls the relation between
/// `(i, j)` and `(j, i)`: `None` independent, `Some(s)` graded (anti)symmetric.
fn random_matrix(
    rng: &mut SampleRng,
    basis: &GeneratorBasis,
    sym: Option<bool>,
    mut entry: impl FnMut(&mut SampleRng) -> Exact,
) -> Vec<Vec<Exact>> {
    let d = basis.dim();
    let mut m = vec![vec![Exact::zero(); d]; d];
    for i in 0..d {
        for j in 0..d {
            if basis.parity(i) != basis.parity(j) {
                continue;
            }
            match sym {
                None => m[i][j] = entry(rng),
                Some(symmetric) if j >= i => {
                    // Graded symmetric means ordinary symmetric on the even
                    // block and antisymmetric on the odd block.
                    let flip = symmetric != basis.is_odd(i);
                    if i == j && !flip {
                        continue;
                    }
                    let v = entry(rng);
                    m[j][i] = if flip { v.clone() } else { -v.clone() };
                    m[i][j] = v;
                }
                Some(_) => {}
            }
        }
    }
    m
}

/// A parity-block form with independent small rational entries.
pub fn random_form(rng: &mut SampleRng, basis: &Arc<GeneratorBasis>, complex: bool) -> BilinearForm<Exact> {
    let m = random_matrix(rng, basis, None, |r| small_scalar(r, complex));
    BilinearForm::new(basis, m).unwrap()
}

/// A real graded-symmetric form, the input of `Δ_g`.
pub fn random_graded_symmetric(rng: &mut SampleRng, basis: &Arc<GeneratorBasis>) -> BilinearForm<Exact> {
    let m = random_matrix(rng, basis, Some(true), |r| small_scalar(r, false));
    BilinearForm::new(basis, m).unwrap()
}

/// A real graded-antisymmetric form.
pub fn random_graded_antisymmetric(rng: &mut SampleRng, basis: &Arc<GeneratorBasis>) -> BilinearForm<Exact> {
    let m = random_matrix(rng, basis, Some(false), |r| small_scalar(r, false));
    BilinearForm::new(basis, m).unwrap()
}

/// `Λ₋` real and `Λ₊` imaginary, which satisfies the involution
/// criterion on a basis with trivial conjugation.
pub fn random_involutive_form(rng: &mut SampleRng, basis: &Arc<GeneratorBasis>) -> BilinearForm<Exact> {
    let minus = random_graded_antisymmetric(rng, basis);
    let plus = random_graded_symmetric(rng, basis).scale(&Exact::i());
    minus.try_add(&plus).unwrap()
}

/// An involutive form plus a nonzero real graded-symmetric or imaginary
/// graded-antisymmetric perturbation.
pub fn random_non_involutive_form(rng: &mut SampleRng, basis: &Arc<GeneratorBasis>) -> BilinearForm<Exact> {
    let base = random_involutive_form(rng, basis);
    loop {
        let bad = if rng.gen_bool(0.5) {
            random_graded_symmetric(rng, basis)
        } else {
            random_graded_antisymmetric(rng, basis).scale(&Exact::i())
        };
        if !bad.is_zero() {
            return base.try_add(&bad).unwrap();
        }
    }
}

/// A functional vanishing on odd generators.
pub fn random_even_functional(rng: &mut SampleRng, basis: &Arc<GeneratorBasis>) -> Functional<Exact> {
    let values = (0..basis.dim())
        .map(|i| if basis.is_odd(i) { Exact::zero() } else { small_scalar(rng, false) })
        .collect();
    Functional::new(basis, values).unwrap()
}

/// A parity-preserving endomorphism of the generator space.
pub fn random_linear_map(rng: &mut SampleRng, basis: &Arc<GeneratorBasis>) -> LinearMap<Exact> {
    let m = random_matrix(rng, basis, None, |r| small_scalar(r, false));
    LinearMap::new(basis, basis, m).unwrap()
}
