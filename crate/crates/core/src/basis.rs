//! Generator bases and canonical monomials.

use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn from_bit(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn bit(self) -> usize {
        self as usize
    }

    /// Parity of the product of two homogeneous factors.
    pub fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.is_odd() != other.is_odd())
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// An ordered list of named generators, each even or odd.
///
/// `conjugation` is the permutation of generators induced by complex
/// conjugation. It is the identity for a real basis; a complex coordinate
/// pair such as `z`, `zbar` is swapped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorBasis {
    names: Vec<String>,
    parities: Vec<Parity>,
    conjugation: Vec<usize>,
}

impl GeneratorBasis {
    pub fn new<S: Into<String>>(gens: impl IntoIterator<Item = (S, Parity)>) -> Result<Arc<Self>> {
        let (names, parities): (Vec<String>, Vec<Parity>) =
            gens.into_iter().map(|(n, p)| (n.into(), p)).unzip();
        if names.is_empty() {
            return Err(Error::InvalidBasis("no generators".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !n.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::InvalidBasis(format!("bad generator name `{n}`")));
            }
            if n.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                return Err(Error::InvalidBasis(format!("name `{n}` starts with a digit")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidBasis(format!("duplicate name `{n}`")));
            }
        }
        let conjugation = (0..names.len()).collect();
        Ok(Arc::new(GeneratorBasis {
            names,
            parities,
            conjugation,
        }))
    }

    /// Even generators only.
    pub fn even(names: &[&str]) -> Result<Arc<Self>> {
        Self::new(names.iter().map(|n| (*n, Parity::Even)))
    }

    /// Declares pairs of generators exchanged by complex conjugation.
    pub fn with_conjugate_pairs(&self, pairs: &[(&str, &str)]) -> Result<Arc<Self>> {
        let mut conjugation: Vec<usize> = (0..self.dim()).collect();
        for (a, b) in pairs {
            let i = self.index(a)?;
            let j = self.index(b)?;
            if self.parities[i] != self.parities[j] {
                return Err(Error::InvalidBasis(format!("`{a}` and `{b}` differ in parity")));
            }
            if conjugation[i] != i || conjugation[j] != j {
                return Err(Error::InvalidBasis(format!("`{a}` or `{b}` already paired")));
            }
            conjugation[i] = j;
            conjugation[j] = i;
        }
        Ok(Arc::new(GeneratorBasis {
            names: self.names.clone(),
            parities: self.parities.clone(),
            conjugation,
        }))
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.parities[i].is_odd()
    }

    pub fn conjugate_index(&self, i: usize) -> usize {
        self.conjugation[i]
    }

    pub fn has_real_conjugation(&self) -> bool {
        self.conjugation.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.is_odd(i)).collect()
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.is_odd(i)).collect()
    }
}

pub(crate) fn same_basis(a: &Arc<GeneratorBasis>, b: &Arc<GeneratorBasis>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::BasisMismatch)
    }
}

/// A canonical monomial: one exponent per generator.
///
/// Odd generators carry exponent 0 or 1 and are read in ascending index
/// order; any reordering sign lives in the coefficient of the element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim].into_boxed_slice())
    }

    pub fn generator(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Monomial(e.into_boxed_slice())
    }

    /// Builds from raw exponents; odd exponents above 1 give `None`.
    pub fn from_exponents(basis: &GeneratorBasis, exps: Vec<u32>) -> Option<Self> {
        if exps.len() != basis.dim() {
            return None;
        }
        if exps.iter().enumerate().any(|(i, &k)| basis.is_odd(i) && k > 1) {
            return None;
        }
        Some(Monomial(exps.into_boxed_slice()))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&k| k as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    /// Number of odd generators present.
    pub fn odd_count(&self, basis: &GeneratorBasis) -> usize {
        self.odd_indices(basis).count()
    }

    pub fn parity(&self, basis: &GeneratorBasis) -> Parity {
        Parity::from_bit(self.odd_count(basis) % 2 == 1)
    }

    pub fn odd_indices<'a>(&'a self, basis: &'a GeneratorBasis) -> impl Iterator<Item = usize> + 'a {
        (0..self.0.len()).filter(move |&i| basis.is_odd(i) && self.0[i] == 1)
    }

    pub fn even_exponents<'a>(&'a self, basis: &'a GeneratorBasis) -> impl Iterator<Item = (usize, u32)> + 'a {
        (0..self.0.len())
            .filter(move |&i| !basis.is_odd(i) && self.0[i] > 0)
            .map(move |i| (i, self.0[i]))
    }

    /// Product in the graded symmetric algebra: `self · other = sign · result`.
    /// `None` if an odd generator repeats.
    pub fn mul(&self, other: &Monomial, basis: &GeneratorBasis) -> Option<(bool, Monomial)> {
        // Count pairs (a in self, b in other), both odd, with a > b.
        let d = self.0.len();
        let mut inversions = 0usize;
        let mut self_odd_after = vec![0usize; d + 1];
        for i in (0..d).rev() {
            self_odd_after[i] =
                self_odd_after[i + 1] + usize::from(basis.is_odd(i) && self.0[i] == 1);
        }
        for i in 0..d {
            if basis.is_odd(i) && other.0[i] == 1 {
                if self.0[i] == 1 {
                    return None;
                }
                inversions += self_odd_after[i + 1];
            }
        }
        let negative = inversions % 2 == 1;
        let exps: Vec<u32> = self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect();
        Some((negative, Monomial(exps.into_boxed_slice())))
    }

    /// Removes one factor `e_i` from the right end: `self = result · e_i · factor`.
    /// Returns `(multiplicity_with_sign, result)`.
    pub fn right_derivative(&self, i: usize, basis: &GeneratorBasis) -> Option<(i64, Monomial)> {
        let k = self.0[i];
        if k == 0 {
            return None;
        }
        let factor = if basis.is_odd(i) {
            let after = (i + 1..self.0.len())
                .filter(|&j| basis.is_odd(j) && self.0[j] == 1)
                .count();
            if after % 2 == 1 {
                -1
            } else {
                1
            }
        } else {
            k as i64
        };
        let mut e = self.0.to_vec();
        e[i] -= 1;
        Some((factor, Monomial(e.into_boxed_slice())))
    }

    /// Removes one factor `e_i` from the left end.
    pub fn left_derivative(&self, i: usize, basis: &GeneratorBasis) -> Option<(i64, Monomial)> {
        let k = self.0[i];
        if k == 0 {
            return None;
        }
        let factor = if basis.is_odd(i) {
            let before = (0..i).filter(|&j| basis.is_odd(j) && self.0[j] == 1).count();
            if before % 2 == 1 {
                -1
            } else {
                1
            }
        } else {
            k as i64
        };
        let mut e = self.0.to_vec();
        e[i] -= 1;
        Some((factor, Monomial(e.into_boxed_slice())))
    }

    /// Generator indices in canonical order, repeated by multiplicity.
    pub fn word(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.degree());
        for (i, &k) in self.0.iter().enumerate() {
            for _ in 0..k {
                w.push(i);
            }
        }
        w
    }

    /// Human-readable form such as `q^2*p*e1`, or `1`.
    pub fn display(&self, basis: &GeneratorBasis) -> String {
        let mut parts = Vec::new();
        for (i, &k) in self.0.iter().enumerate() {
            match k {
                0 => {}
                1 => parts.push(basis.name(i).to_string()),
                _ => parts.push(format!("{}^{}", basis.name(i), k)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis() -> Arc<GeneratorBasis> {
        GeneratorBasis::new([
            ("q", Parity::Even),
            ("e1", Parity::Odd),
            ("p", Parity::Even),
            ("e2", Parity::Odd),
        ])
        .unwrap()
    }

    #[test]
    fn rejects_bad_bases() {
        assert!(GeneratorBasis::even(&["q", "q"]).is_err());
        assert!(GeneratorBasis::even(&[]).is_err());
        assert!(GeneratorBasis::even(&["1x"]).is_err());
    }

    #[test]
    fn odd_product_signs() {
        let b = basis();
        let e1 = Monomial::generator(4, 1);
        let e2 = Monomial::generator(4, 3);
        let (neg, m) = e1.mul(&e2, &b).unwrap();
        assert!(!neg);
        let (neg2, m2) = e2.mul(&e1, &b).unwrap();
        assert!(neg2);
        assert_eq!(m, m2);
        assert!(e1.mul(&e1, &b).is_none());
    }

    #[test]
    fn derivative_signs() {
        let b = basis();
        let m = Monomial::from_exponents(&b, vec![2, 1, 0, 1]).unwrap();
        assert_eq!(m.right_derivative(1, &b).unwrap().0, -1);
        assert_eq!(m.right_derivative(3, &b).unwrap().0, 1);
        assert_eq!(m.left_derivative(1, &b).unwrap().0, 1);
        assert_eq!(m.left_derivative(3, &b).unwrap().0, -1);
        assert_eq!(m.left_derivative(0, &b).unwrap().0, 2);
        assert!(m.left_derivative(2, &b).is_none());
        assert_eq!(m.display(&b), "q^2*e1*e2");
    }
}
