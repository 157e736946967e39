//! Sparse elements of the graded symmetric algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::basis::{same_basis, GeneratorBasis, Monomial, Parity};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, Coeff};

/// A finite linear combination of canonical monomials.
///
/// Zero coefficients are never stored, so equality of elements is equality
/// of the term maps.
#[derive(Clone, PartialEq, Debug)]
pub struct Element<S> {
    basis: Arc<GeneratorBasis>,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Coeff> Element<S> {
    pub fn zero(basis: &Arc<GeneratorBasis>) -> Self {
        Element {
            basis: basis.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(basis: &Arc<GeneratorBasis>) -> Self {
        Self::constant(basis, S::one())
    }

    pub fn constant(basis: &Arc<GeneratorBasis>, c: S) -> Self {
        Self::monomial(basis, Monomial::one(basis.dim()), c)
    }

    pub fn monomial(basis: &Arc<GeneratorBasis>, m: Monomial, c: S) -> Self {
        let mut e = Self::zero(basis);
        e.add_term(m, c);
        e
    }

    pub fn generator(basis: &Arc<GeneratorBasis>, i: usize) -> Self {
        Self::monomial(basis, Monomial::generator(basis.dim(), i), S::one())
    }

    /// The generator with the given name.
    pub fn var(basis: &Arc<GeneratorBasis>, name: &str) -> Result<Self> {
        Ok(Self::generator(basis, basis.index(name)?))
    }

    /// Degree-one element `Σ cᵢ eᵢ`.
    pub fn linear(basis: &Arc<GeneratorBasis>, coeffs: &[S]) -> Self {
        let mut e = Self::zero(basis);
        for (i, c) in coeffs.iter().enumerate() {
            e.add_term(Monomial::generator(basis.dim(), i), c.clone());
        }
        e
    }

    pub fn from_terms(basis: &Arc<GeneratorBasis>, terms: impl IntoIterator<Item = (Monomial, S)>) -> Self {
        let mut e = Self::zero(basis);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    /// Adds `c·m`, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn basis(&self) -> &Arc<GeneratorBasis> {
        &self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, S> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> S {
        self.coeff(&Monomial::one(self.basis.dim()))
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// `Some(n)` if every term has degree `n`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let n = self.max_degree()?;
        (self.min_degree() == Some(n)).then_some(n)
    }

    /// The parity if all terms share one; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| m.parity(&self.basis));
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    pub fn has_odd_generators(&self) -> bool {
        self.terms.keys().any(|m| m.odd_count(&self.basis) > 0)
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(&self.basis);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        same_basis(&self.basis, &other.basis)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        same_basis(&self.basis, &other.basis)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Graded-commutative product; see [`sym_product`].
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        same_basis(&self.basis, &other.basis)?;
        let mut out = Self::zero(&self.basis);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((neg, m)) = m1.mul(m2, &self.basis) {
                    let c = c1.clone() * c2.clone();
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.basis);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Degree-`n` part.
    pub fn grade_component(&self, n: usize) -> Self {
        self.filter(|m| m.degree() == n)
    }

    /// Terms of degree at most `n`.
    pub fn truncate(&self, n: usize) -> Self {
        self.filter(|m| m.degree() <= n)
    }

    fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Element {
            basis: self.basis.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Splits into the even and odd parts.
    pub fn parity_split(&self) -> (Self, Self) {
        (
            self.filter(|m| m.parity(&self.basis) == Parity::Even),
            self.filter(|m| m.parity(&self.basis) == Parity::Odd),
        )
    }

    /// Complex conjugation: conjugates coefficients and maps each generator
    /// to its conjugate generator (itself for a real basis).
    pub fn conjugate(&self) -> Self {
        let b = &self.basis;
        if b.has_real_conjugation() {
            let mut out = Self::zero(b);
            for (m, c) in &self.terms {
                out.add_term(m.clone(), c.conj());
            }
            return out;
        }
        let mut out = Self::zero(b);
        for (m, c) in &self.terms {
            let mut image = Monomial::one(b.dim());
            let mut negative = false;
            for i in m.word() {
                let g = Monomial::generator(b.dim(), b.conjugate_index(i));
                let (neg, next) = image
                    .mul(&g, b)
                    .expect("conjugation maps distinct odd generators to distinct ones");
                negative ^= neg;
                image = next;
            }
            let c = c.conj();
            out.add_term(image, if negative { -c } else { c });
        }
        out
    }

    /// Evaluates at a point given by one scalar per generator.
    pub fn evaluate(&self, point: &[S]) -> Result<S> {
        if self.has_odd_generators() {
            return Err(Error::OddGenerator);
        }
        if point.len() != self.basis.dim() {
            return Err(Error::Parameter(format!(
                "point has {} coordinates, basis has {}",
                point.len(),
                self.basis.dim()
            )));
        }
        let mut total = S::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &k) in m.exponents().iter().enumerate() {
                if k > 0 {
                    v = v * point[i].powi(k);
                }
            }
            total = total + v;
        }
        Ok(total)
    }

    /// Evaluates at a point given by generator name; every even generator
    /// must be assigned.
    pub fn evaluate_named(&self, point: &BTreeMap<String, S>) -> Result<S> {
        let mut coords = Vec::with_capacity(self.basis.dim());
        for i in 0..self.basis.dim() {
            let name = self.basis.name(i);
            match point.get(name) {
                Some(v) => coords.push(v.clone()),
                None if self.basis.is_odd(i) => coords.push(S::zero()),
                None => return Err(Error::UnknownGenerator(name.to_string())),
            }
        }
        self.evaluate(&coords)
    }

    /// The totally graded-symmetric tensor coefficients of the degree-`n`
    /// component, keyed by generator-index tuples.
    pub fn ordered_coefficients(&self, n: usize) -> BTreeMap<Vec<usize>, S> {
        let mut out = BTreeMap::new();
        let n_fact = factorial_scalar::<S>(n);
        for (m, c) in &self.terms {
            if m.degree() != n {
                continue;
            }
            let mult: S = m
                .exponents()
                .iter()
                .fold(S::one(), |acc, &k| acc * factorial_scalar::<S>(k as usize));
            let base = c.clone() * mult / n_fact.clone();
            for tuple in distinct_permutations(&m.word()) {
                let neg = koszul_inversions(&tuple, &self.basis) % 2 == 1;
                out.insert(tuple, if neg { -base.clone() } else { base.clone() });
            }
        }
        out
    }

    /// Rebuilds an element from ordered tensor coefficients by multiplying
    /// out each tuple.
    pub fn from_ordered(basis: &Arc<GeneratorBasis>, tuples: &BTreeMap<Vec<usize>, S>) -> Self {
        let mut out = Self::zero(basis);
        for (tuple, c) in tuples {
            let mut m = Monomial::one(basis.dim());
            let mut negative = false;
            let mut vanished = false;
            for &i in tuple {
                match m.mul(&Monomial::generator(basis.dim(), i), basis) {
                    Some((neg, next)) => {
                        negative ^= neg;
                        m = next;
                    }
                    None => {
                        vanished = true;
                        break;
                    }
                }
            }
            if !vanished {
                out.add_term(m, if negative { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// Converts to another backend through binary64 (lossy towards float).
    pub fn to_backend<T: Coeff>(&self) -> Element<T> {
        let mut out = Element::zero(&self.basis);
        for (m, c) in &self.terms {
            let z = c.to_c64();
            out.add_term(m.clone(), T::from_f64(z.re, z.im));
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Monomial, &S) -> S) -> Self {
        let mut out = Self::zero(&self.basis);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(m, c));
        }
        out
    }
}

/// The graded-commutative product of two elements over the same basis.
pub fn sym_product<S: Coeff>(a: &Element<S>, b: &Element<S>) -> Result<Element<S>> {
    a.try_mul(b)
}

pub(crate) fn factorial_scalar<S: Coeff>(n: usize) -> S {
    (2..=n).fold(S::one(), |acc, k| acc * S::from_i64(k as i64))
}

/// Number of out-of-order pairs among the odd entries of a generator tuple.
pub(crate) fn koszul_inversions(tuple: &[usize], basis: &GeneratorBasis) -> usize {
    let mut count = 0;
    for i in 0..tuple.len() {
        if !basis.is_odd(tuple[i]) {
            continue;
        }
        for j in i + 1..tuple.len() {
            if basis.is_odd(tuple[j]) && tuple[i] > tuple[j] {
                count += 1;
            }
        }
    }
    count
}

/// All distinct orderings of a sorted multiset, in lexicographic order.
pub(crate) fn distinct_permutations(sorted: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = sorted.to_vec();
    loop {
        out.push(current.clone());
        // Standard next-permutation step.
        let Some(i) = (0..current.len().saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1])
        else {
            break;
        };
        let j = (i + 1..current.len()).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

/// `(negative, magnitude)` of a coefficient; complex values are
/// parenthesized and never negative.
fn coeff_text<S: Coeff>(c: &S) -> (bool, String) {
    use num_traits::{One, Signed, Zero};
    match c.rational_parts() {
        Some((re, im)) if im.is_zero() => (re.is_negative(), format_rational(&re.abs())),
        Some((re, im)) if re.is_zero() => {
            let mag = if im.abs().is_one() { "i".to_string() } else { format!("{}*i", format_rational(&im.abs())) };
            (im.is_negative(), mag)
        }
        Some((re, im)) => {
            let sign = if im.is_negative() { "-" } else { "+" };
            (false, format!("({} {sign} {}*i)", format_rational(&re), format_rational(&im.abs())))
        }
        None => {
            let z = c.to_c64();
            if z.im == 0.0 {
                (z.re < 0.0, z.re.abs().to_string())
            } else {
                (false, format!("({z})"))
            }
        }
    }
}

/// Renders in the syntax accepted by [`Element::parse`], e.g. `q*p - 1/2`.
impl<S: Coeff> fmt::Display for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (negative, mag) = coeff_text(c);
            let sep = match (k, negative) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let body = if m.is_one() {
                mag
            } else if mag == "1" {
                m.display(&self.basis)
            } else {
                format!("{mag}*{}", m.display(&self.basis))
            };
            write!(f, "{sep}{body}")?;
        }
        Ok(())
    }
}

impl<'a, S: Coeff> Add for &'a Element<S> {
    type Output = Element<S>;
    fn add(self, rhs: Self) -> Element<S> {
        self.try_add(rhs).expect("basis mismatch in addition")
    }
}

impl<'a, S: Coeff> Sub for &'a Element<S> {
    type Output = Element<S>;
    fn sub(self, rhs: Self) -> Element<S> {
        self.try_sub(rhs).expect("basis mismatch in subtraction")
    }
}

impl<'a, S: Coeff> Mul for &'a Element<S> {
    type Output = Element<S>;
    fn mul(self, rhs: Self) -> Element<S> {
        self.try_mul(rhs).expect("basis mismatch in product")
    }
}

impl<'a, S: Coeff> Neg for &'a Element<S> {
    type Output = Element<S>;
    fn neg(self) -> Element<S> {
        self.scale(&-S::one())
    }
}
