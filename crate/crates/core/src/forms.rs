//! Bilinear forms on the generators and the operators they induce:
//! the contraction `P_Λ` on tensor pairs, the Laplacian `Δ_g`, the sharp
//! map, and Poisson-map checks.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::basis::{same_basis, GeneratorBasis, Monomial};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// A parity-preserving bilinear form: `matrix[i][j] = Λ(e_i, e_j)`.
#[derive(Clone, PartialEq, Debug)]
pub struct BilinearForm<S> {
    basis: Arc<GeneratorBasis>,
    matrix: Vec<Vec<S>>,
}

impl<S: Coeff> BilinearForm<S> {
    /// Validates the shape and that even and odd generators never pair.
    pub fn new(basis: &Arc<GeneratorBasis>, matrix: Vec<Vec<S>>) -> Result<Self> {
        let d = basis.dim();
        check_shape(&matrix, d, d)?;
        for (i, row) in matrix.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if basis.parity(i) != basis.parity(j) && !v.is_zero() {
                    return Err(Error::ParityBlock { row: i, col: j });
                }
            }
        }
        Ok(BilinearForm {
            basis: basis.clone(),
            matrix,
        })
    }

    pub fn zero(basis: &Arc<GeneratorBasis>) -> Self {
        let d = basis.dim();
        BilinearForm {
            basis: basis.clone(),
            matrix: vec![vec![S::zero(); d]; d],
        }
    }

    /// Builds a form from `(left, right, value)` entries by generator name.
    pub fn from_entries(basis: &Arc<GeneratorBasis>, entries: &[(&str, &str, S)]) -> Result<Self> {
        let mut m = Self::zero(basis).matrix;
        for (a, b, v) in entries {
            m[basis.index(a)?][basis.index(b)?] = v.clone();
        }
        Self::new(basis, m)
    }

    pub fn basis(&self) -> &Arc<GeneratorBasis> {
        &self.basis
    }

    pub fn matrix(&self) -> &[Vec<S>] {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.matrix[i][j]
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// `Λ(v, w)` for degree-one coefficient vectors.
    pub fn eval(&self, v: &[S], w: &[S]) -> S {
        let mut acc = S::zero();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                if !wj.is_zero() && !self.matrix[i][j].is_zero() {
                    acc = acc + vi.clone() * self.matrix[i][j].clone() * wj.clone();
                }
            }
        }
        acc
    }

    /// `Λ(v, w)` for degree-one elements.
    pub fn eval_elements(&self, v: &Element<S>, w: &Element<S>) -> Result<S> {
        Ok(self.eval(&linear_coefficients(v)?, &linear_coefficients(w)?))
    }

    /// `(Λ∘τ)(e_i, e_j) = (−1)^{|e_i||e_j|} Λ(e_j, e_i)`.
    pub fn graded_transpose(&self) -> Self {
        let d = self.dim();
        let mut m = vec![vec![S::zero(); d]; d];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                let t = self.matrix[j][i].clone();
                *v = if self.basis.is_odd(i) && self.basis.is_odd(j) { -t } else { t };
            }
        }
        BilinearForm {
            basis: self.basis.clone(),
            matrix: m,
        }
    }

    pub fn is_graded_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    fn first_asymmetry(&self) -> Option<(usize, usize)> {
        let t = self.graded_transpose();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if self.matrix[i][j] != t.matrix[i][j] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub(crate) fn require_graded_symmetric(&self) -> Result<()> {
        match self.first_asymmetry() {
            None => Ok(()),
            Some((row, col)) => Err(Error::NotGradedSymmetric { row, col }),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        same_basis(&self.basis, &other.basis)?;
        Ok(self.zip(other, |a, b| a.clone() + b.clone()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        same_basis(&self.basis, &other.basis)?;
        Ok(self.zip(other, |a, b| a.clone() - b.clone()))
    }

    pub fn scale(&self, c: &S) -> Self {
        self.zip(self, |a, _| a.clone() * c.clone())
    }

    /// Entrywise complex conjugate, read through the basis conjugation:
    /// `Λ̄(e_i, e_j) = conj Λ(ē_i, ē_j)`.
    pub fn conjugate(&self) -> Self {
        let d = self.dim();
        let b = &self.basis;
        let matrix = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| self.matrix[b.conjugate_index(i)][b.conjugate_index(j)].conj())
                    .collect()
            })
            .collect();
        BilinearForm {
            basis: b.clone(),
            matrix,
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(r1, r2)| r1.iter().zip(r2).map(|(a, b)| f(a, b)).collect())
            .collect();
        BilinearForm {
            basis: self.basis.clone(),
            matrix,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Coeff::is_zero)
    }
}

/// Graded-symmetric and graded-antisymmetric parts `(Λ₊, Λ₋)`.
///
/// On odd generators the Koszul sign turns an ordinary antisymmetric block
/// into the graded-symmetric part and an ordinary symmetric block into the
/// graded-antisymmetric part; for instance `Λ(e, e) = 1` has `Λ₊ = 0`,
/// `Λ₋ = Λ`.
pub fn lambda_parts<S: Coeff>(lambda: &BilinearForm<S>) -> (BilinearForm<S>, BilinearForm<S>) {
    let t = lambda.graded_transpose();
    let half = S::from_ratio(1, 2);
    let plus = lambda.zip(&t, |a, b| (a.clone() + b.clone()) * half.clone());
    let minus = lambda.zip(&t, |a, b| (a.clone() - b.clone()) * half.clone());
    (plus, minus)
}

pub(crate) fn check_shape<T>(m: &[Vec<T>], rows: usize, cols: usize) -> Result<()> {
    let bad = m.len() != rows || m.iter().any(|r| r.len() != cols);
    if bad {
        return Err(Error::Shape {
            rows: m.len(),
            cols: m.first().map_or(0, Vec::len),
            expected_rows: rows,
            expected_cols: cols,
        });
    }
    Ok(())
}

/// Coefficient vector of a degree-one (or zero) element.
pub fn linear_coefficients<S: Coeff>(v: &Element<S>) -> Result<Vec<S>> {
    let d = v.basis().dim();
    let mut out = vec![S::zero(); d];
    for (m, c) in v.terms() {
        if m.degree() != 1 {
            return Err(Error::Degree { expected: 1 });
        }
        let i = m.exponents().iter().position(|&k| k == 1).unwrap();
        out[i] = c.clone();
    }
    Ok(out)
}

/// An element of `Sym(V) ⊗ Sym(V)` in the monomial basis.
#[derive(Clone, PartialEq, Debug)]
pub struct TensorPair<S> {
    basis: Arc<GeneratorBasis>,
    terms: BTreeMap<(Monomial, Monomial), S>,
}

impl<S: Coeff> TensorPair<S> {
    pub fn zero(basis: &Arc<GeneratorBasis>) -> Self {
        TensorPair {
            basis: basis.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `a ⊗ b`.
    pub fn tensor(a: &Element<S>, b: &Element<S>) -> Result<Self> {
        same_basis(a.basis(), b.basis())?;
        let mut out = Self::zero(a.basis());
        for (m1, c1) in a.terms() {
            for (m2, c2) in b.terms() {
                out.add_term(m1.clone(), m2.clone(), c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn add_term(&mut self, left: Monomial, right: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        match self.terms.get_mut(&key) {
            Some(v) => {
                let sum = v.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *v = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn basis(&self) -> &Arc<GeneratorBasis> {
        &self.basis
    }

    pub fn terms(&self) -> &BTreeMap<(Monomial, Monomial), S> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        same_basis(&self.basis, &other.basis)?;
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(&self.basis);
        for ((l, r), v) in &self.terms {
            out.add_term(l.clone(), r.clone(), v.clone() * c.clone());
        }
        out
    }

    /// The multiplication map `μ(a ⊗ b) = a·b`.
    pub fn mu(&self) -> Element<S> {
        let mut out = Element::zero(&self.basis);
        for ((l, r), c) in &self.terms {
            if let Some((neg, m)) = l.mul(r, &self.basis) {
                out.add_term(m, if neg { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// The graded flip `τ(a ⊗ b) = (−1)^{|a||b|} b ⊗ a`.
    pub fn flip(&self) -> Self {
        let mut out = Self::zero(&self.basis);
        for ((l, r), c) in &self.terms {
            let neg = l.parity(&self.basis).is_odd() && r.parity(&self.basis).is_odd();
            out.add_term(r.clone(), l.clone(), if neg { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Applies a linear map to the left factor (`f ⊗ id`, `f` even).
    pub fn map_left(&self, f: impl Fn(&Element<S>) -> Element<S>) -> Self {
        let mut out = Self::zero(&self.basis);
        for ((l, r), c) in &self.terms {
            let image = f(&Element::monomial(&self.basis, l.clone(), c.clone()));
            for (m, v) in image.terms() {
                out.add_term(m.clone(), r.clone(), v.clone());
            }
        }
        out
    }

    /// Applies a linear map to the right factor (`id ⊗ f`, `f` even).
    pub fn map_right(&self, f: impl Fn(&Element<S>) -> Element<S>) -> Self {
        let mut out = Self::zero(&self.basis);
        for ((l, r), c) in &self.terms {
            let image = f(&Element::monomial(&self.basis, r.clone(), c.clone()));
            for (m, v) in image.terms() {
                out.add_term(l.clone(), m.clone(), v.clone());
            }
        }
        out
    }
}

/// The contraction `P_Λ`: a right derivative on the left factor paired
/// through `Λ` with a left derivative on the right factor.
pub fn p_lambda<S: Coeff>(u: &TensorPair<S>, lambda: &BilinearForm<S>) -> Result<TensorPair<S>> {
    same_basis(u.basis(), lambda.basis())?;
    Ok(p_lambda_unchecked(u, lambda))
}

pub(crate) fn p_lambda_unchecked<S: Coeff>(u: &TensorPair<S>, lambda: &BilinearForm<S>) -> TensorPair<S> {
    let b = u.basis();
    let d = b.dim();
    let mut out = TensorPair::zero(b);
    for ((l, r), c) in u.terms() {
        for i in 0..d {
            let Some((fl, l2)) = l.right_derivative(i, b) else {
                continue;
            };
            for j in 0..d {
                let lij = lambda.get(i, j);
                if lij.is_zero() {
                    continue;
                }
                let Some((fr, r2)) = r.left_derivative(j, b) else {
                    continue;
                };
                let v = c.clone() * lij.clone() * S::from_i64(fl * fr);
                out.add_term(l2.clone(), r2, v);
            }
        }
    }
    out
}

/// `P_Λ^k (a ⊗ b)`.
pub fn p_lambda_power<S: Coeff>(
    a: &Element<S>,
    b: &Element<S>,
    k: usize,
    lambda: &BilinearForm<S>,
) -> Result<TensorPair<S>> {
    same_basis(a.basis(), lambda.basis())?;
    let mut t = TensorPair::tensor(a, b)?;
    for _ in 0..k {
        if t.is_zero() {
            break;
        }
        t = p_lambda_unchecked(&t, lambda);
    }
    Ok(t)
}

/// `P_Λ^opp = τ ∘ P_Λ ∘ τ`.
pub fn p_lambda_opp<S: Coeff>(u: &TensorPair<S>, lambda: &BilinearForm<S>) -> Result<TensorPair<S>> {
    Ok(p_lambda(&u.flip(), lambda)?.flip())
}

/// The Laplacian `Δ_g`, lowering degree by two.
pub fn delta_g<S: Coeff>(a: &Element<S>, g: &BilinearForm<S>) -> Result<Element<S>> {
    same_basis(a.basis(), g.basis())?;
    g.require_graded_symmetric()?;
    Ok(delta_g_unchecked(a, g))
}

pub(crate) fn delta_g_unchecked<S: Coeff>(a: &Element<S>, g: &BilinearForm<S>) -> Element<S> {
    // Δ_g = ½ Σ_{i,j} g_ij ∂⃗_j ∂⃗_i, each ∂⃗ removing a factor from the left.
    let b = a.basis();
    let d = b.dim();
    let half = S::from_ratio(1, 2);
    let mut out = Element::zero(b);
    for (m, c) in a.terms() {
        for i in 0..d {
            let Some((fi, m1)) = m.left_derivative(i, b) else {
                continue;
            };
            for j in 0..d {
                let gij = g.get(i, j);
                if gij.is_zero() {
                    continue;
                }
                let Some((fj, m2)) = m1.left_derivative(j, b) else {
                    continue;
                };
                out.add_term(m2, c.clone() * gij.clone() * S::from_i64(fi * fj) * half.clone());
            }
        }
    }
    out
}

/// A linear functional on the generators.
#[derive(Clone, PartialEq, Debug)]
pub struct Functional<S> {
    basis: Arc<GeneratorBasis>,
    values: Vec<S>,
}

impl<S: Coeff> Functional<S> {
    pub fn new(basis: &Arc<GeneratorBasis>, values: Vec<S>) -> Result<Self> {
        if values.len() != basis.dim() {
            return Err(Error::Shape {
                rows: 1,
                cols: values.len(),
                expected_rows: 1,
                expected_cols: basis.dim(),
            });
        }
        Ok(Functional {
            basis: basis.clone(),
            values,
        })
    }

    pub fn zero(basis: &Arc<GeneratorBasis>) -> Self {
        Functional {
            basis: basis.clone(),
            values: vec![S::zero(); basis.dim()],
        }
    }

    pub fn from_named(basis: &Arc<GeneratorBasis>, entries: &[(&str, S)]) -> Result<Self> {
        let mut f = Self::zero(basis);
        for (n, v) in entries {
            f.values[basis.index(n)?] = v.clone();
        }
        Ok(f)
    }

    pub fn basis(&self) -> &Arc<GeneratorBasis> {
        &self.basis
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn get(&self, i: usize) -> &S {
        &self.values[i]
    }

    pub fn scale(&self, c: &S) -> Self {
        Functional {
            basis: self.basis.clone(),
            values: self.values.iter().map(|v| v.clone() * c.clone()).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        same_basis(&self.basis, &other.basis)?;
        Ok(Functional {
            basis: self.basis.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    /// `φ(v)` for a degree-one element.
    pub fn apply(&self, v: &Element<S>) -> Result<S> {
        same_basis(&self.basis, v.basis())?;
        let coeffs = linear_coefficients(v)?;
        Ok(coeffs
            .iter()
            .zip(&self.values)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
    }

    pub fn is_zero_on_odd(&self) -> bool {
        (0..self.basis.dim()).all(|i| !self.basis.is_odd(i) || self.values[i].is_zero())
    }
}

/// `v♯ = Λ₋(v, ·)` for a degree-one `v`.
pub fn sharp<S: Coeff>(v: &Element<S>, lambda: &BilinearForm<S>) -> Result<Functional<S>> {
    same_basis(v.basis(), lambda.basis())?;
    let coeffs = linear_coefficients(v)?;
    let (_, minus) = lambda_parts(lambda);
    let d = lambda.dim();
    let values = (0..d)
        .map(|j| {
            coeffs
                .iter()
                .enumerate()
                .fold(S::zero(), |acc, (i, c)| acc + c.clone() * minus.get(i, j).clone())
        })
        .collect();
    Functional::new(v.basis(), values)
}

/// A parity-preserving linear map between generator spaces; column `j` is
/// the image of source generator `j` in target coordinates.
#[derive(Clone, PartialEq, Debug)]
pub struct LinearMap<S> {
    source: Arc<GeneratorBasis>,
    target: Arc<GeneratorBasis>,
    matrix: Vec<Vec<S>>,
}

impl<S: Coeff> LinearMap<S> {
    pub fn new(source: &Arc<GeneratorBasis>, target: &Arc<GeneratorBasis>, matrix: Vec<Vec<S>>) -> Result<Self> {
        check_shape(&matrix, target.dim(), source.dim())?;
        for (i, row) in matrix.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if target.parity(i) != source.parity(j) && !v.is_zero() {
                    return Err(Error::ParityBlock { row: i, col: j });
                }
            }
        }
        Ok(LinearMap {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    pub fn identity(basis: &Arc<GeneratorBasis>) -> Self {
        let d = basis.dim();
        let matrix = (0..d)
            .map(|i| (0..d).map(|j| if i == j { S::one() } else { S::zero() }).collect())
            .collect();
        LinearMap {
            source: basis.clone(),
            target: basis.clone(),
            matrix,
        }
    }

    pub fn source(&self) -> &Arc<GeneratorBasis> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GeneratorBasis> {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<S>] {
        &self.matrix
    }

    /// Image of source generator `j` as a degree-one target element.
    pub fn image(&self, j: usize) -> Element<S> {
        let col: Vec<S> = self.matrix.iter().map(|r| r[j].clone()).collect();
        Element::linear(&self.target, &col)
    }
}

/// True iff `Λ_W(A e_i, A e_j) = Λ_V(e_i, e_j)` for all generator pairs.
pub fn is_poisson_map<S: Coeff>(
    map: &LinearMap<S>,
    lambda_v: &BilinearForm<S>,
    lambda_w: &BilinearForm<S>,
) -> Result<bool> {
    same_basis(map.source(), lambda_v.basis())?;
    same_basis(map.target(), lambda_w.basis())?;
    let d = map.source().dim();
    let cols: Vec<Vec<S>> = (0..d)
        .map(|j| map.matrix.iter().map(|r| r[j].clone()).collect())
        .collect();
    for i in 0..d {
        for j in 0..d {
            if lambda_w.eval(&cols[i], &cols[j]) != *lambda_v.get(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Common forms on a basis containing canonical pairs `(q, p)`.
pub mod presets {
    use super::*;

    /// Standard ordering: `Λ(p, q) = 1` for each pair, zero otherwise.
    pub fn standard_ordered<S: Coeff>(basis: &Arc<GeneratorBasis>, pairs: &[(&str, &str)]) -> Result<BilinearForm<S>> {
        let entries: Vec<(&str, &str, S)> = pairs.iter().map(|(q, p)| (*p, *q, S::one())).collect();
        BilinearForm::from_entries(basis, &entries)
    }

    /// Weyl ordering: the antisymmetric part of the standard-ordered form.
    pub fn weyl<S: Coeff>(basis: &Arc<GeneratorBasis>, pairs: &[(&str, &str)]) -> Result<BilinearForm<S>> {
        let half = S::from_ratio(1, 2);
        let mut entries = Vec::new();
        for (q, p) in pairs {
            entries.push((*p, *q, half.clone()));
            entries.push((*q, *p, -half.clone()));
        }
        BilinearForm::from_entries(basis, &entries)
    }

    /// Darboux form: `Λ(q, p) = 1 = −Λ(p, q)`.
    pub fn darboux<S: Coeff>(basis: &Arc<GeneratorBasis>, pairs: &[(&str, &str)]) -> Result<BilinearForm<S>> {
        let mut entries = Vec::new();
        for (q, p) in pairs {
            entries.push((*q, *p, S::one()));
            entries.push((*p, *q, -S::one()));
        }
        BilinearForm::from_entries(basis, &entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::Parity;
    use crate::scalar::{q, Exact};

    fn qp() -> Arc<GeneratorBasis> {
        GeneratorBasis::even(&["q", "p"]).unwrap()
    }

    fn el(b: &Arc<GeneratorBasis>, s: &str) -> Element<Exact> {
        Element::parse(b, s).unwrap()
    }

    #[test]
    fn parity_block_is_enforced() {
        let b = GeneratorBasis::new([("q", Parity::Even), ("e", Parity::Odd)]).unwrap();
        let r = BilinearForm::new(&b, vec![vec![q(0, 1), q(1, 1)], vec![q(0, 1), q(0, 1)]]);
        assert_eq!(r, Err(Error::ParityBlock { row: 0, col: 1 }));
        assert!(matches!(
            BilinearForm::<Exact>::new(&b, vec![vec![q(0, 1)]]),
            Err(Error::Shape { .. })
        ));
    }

    #[test]
    fn parts_of_standard_ordering() {
        let b = qp();
        let std = presets::standard_ordered::<Exact>(&b, &[("q", "p")]).unwrap();
        let (plus, minus) = lambda_parts(&std);
        assert_eq!(*plus.get(1, 0), q(1, 2));
        assert_eq!(*plus.get(0, 1), q(1, 2));
        assert_eq!(*minus.get(1, 0), q(1, 2));
        assert_eq!(*minus.get(0, 1), q(-1, 2));
        let dar = presets::darboux::<Exact>(&b, &[("q", "p")]).unwrap();
        let (plus, minus) = lambda_parts(&dar);
        assert!(plus.is_zero());
        assert_eq!(minus, dar);
    }

    #[test]
    fn odd_diagonal_entry_is_graded_antisymmetric() {
        let b = GeneratorBasis::new([("e", Parity::Odd)]).unwrap();
        let g = BilinearForm::new(&b, vec![vec![q(1, 1)]]).unwrap();
        let (plus, minus) = lambda_parts(&g);
        assert!(plus.is_zero());
        assert_eq!(minus, g);
        assert!(!g.is_graded_symmetric());
    }

    #[test]
    fn p_lambda_examples() {
        let b = qp();
        let std = presets::standard_ordered::<Exact>(&b, &[("q", "p")]).unwrap();
        let t = TensorPair::tensor(&el(&b, "p^2"), &el(&b, "q^2")).unwrap();
        let expected = TensorPair::tensor(&el(&b, "4*p"), &el(&b, "q")).unwrap();
        assert_eq!(p_lambda(&t, &std).unwrap(), expected);
        let t = TensorPair::tensor(&el(&b, "1"), &el(&b, "q")).unwrap();
        assert!(p_lambda(&t, &std).unwrap().is_zero());
        let pp = p_lambda_power(&el(&b, "p^2"), &el(&b, "q^2"), 2, &std).unwrap();
        assert_eq!(pp, TensorPair::tensor(&el(&b, "4"), &el(&b, "1")).unwrap());
        assert!(p_lambda_power(&el(&b, "p^2"), &el(&b, "q^2"), 3, &std).unwrap().is_zero());
        let oe = GeneratorBasis::new([("e1", Parity::Odd)]).unwrap();
        let g = BilinearForm::new(&oe, vec![vec![q(1, 1)]]).unwrap();
        let e = el(&oe, "e1");
        assert_eq!(
            p_lambda(&TensorPair::tensor(&e, &e).unwrap(), &g).unwrap(),
            TensorPair::tensor(&el(&oe, "1"), &el(&oe, "1")).unwrap()
        );
    }

    #[test]
    fn laplacian_examples() {
        let b = GeneratorBasis::even(&["q"]).unwrap();
        let g = BilinearForm::new(&b, vec![vec![q(1, 1)]]).unwrap();
        assert_eq!(delta_g(&el(&b, "q^2"), &g).unwrap(), el(&b, "1"));
        assert_eq!(delta_g(&el(&b, "q^3"), &g).unwrap(), el(&b, "3*q"));
        assert!(delta_g(&el(&b, "q"), &g).unwrap().is_zero());
        let b2 = qp();
        let dar = presets::darboux::<Exact>(&b2, &[("q", "p")]).unwrap();
        assert!(matches!(delta_g(&el(&b2, "q*p"), &dar), Err(Error::NotGradedSymmetric { .. })));
    }

    #[test]
    fn sharp_examples() {
        let b = qp();
        let dar = presets::darboux::<Exact>(&b, &[("q", "p")]).unwrap();
        assert_eq!(sharp(&el(&b, "q"), &dar).unwrap().values(), &[q(0, 1), q(1, 1)]);
        assert_eq!(sharp(&el(&b, "p"), &dar).unwrap().values(), &[q(-1, 1), q(0, 1)]);
        assert_eq!(sharp(&el(&b, "0"), &dar).unwrap(), Functional::zero(&b));
        assert!(sharp(&el(&b, "q^2"), &dar).is_err());
    }

    #[test]
    fn poisson_map_examples() {
        let b = qp();
        let dar = presets::darboux::<Exact>(&b, &[("q", "p")]).unwrap();
        let id = LinearMap::identity(&b);
        assert!(is_poisson_map(&id, &dar, &dar).unwrap());
        let scale = LinearMap::new(&b, &b, vec![vec![q(2, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]]).unwrap();
        assert!(!is_poisson_map(&scale, &dar, &dar).unwrap());
        let shear = LinearMap::new(&b, &b, vec![vec![q(1, 1), q(1, 1)], vec![q(0, 1), q(1, 1)]]).unwrap();
        assert!(is_poisson_map(&shear, &dar, &dar).unwrap());
    }
}
