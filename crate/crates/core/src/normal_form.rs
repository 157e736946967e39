//! Darboux and orthonormal normal forms of the graded-antisymmetric part
//! of a real form.
//!
//! The even block of `Λ₋` is antisymmetric and reduces by symplectic
//! Gram–Schmidt to `d` canonical pairs plus a `k`-dimensional kernel. The
//! odd block of `Λ₋` is an ordinary symmetric matrix and diagonalizes by
//! congruence to `diag(+1^r, −1^s, 0^t)`. Pivots are the first nonzero
//! candidates in index order.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forms::{lambda_parts, BilinearForm};
use crate::linalg::{matmul, rational_sqrt, transpose, Matrix};
use crate::scalar::Exact;

#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm {
    /// Number of canonical pairs `(q_i, p_i)` with `Λ₋(q_i, p_j) = δ_ij`.
    pub pairs: usize,
    /// Dimension of the even kernel.
    pub even_kernel: usize,
    pub positive: usize,
    pub negative: usize,
    pub odd_kernel: usize,
    /// Columns are the new basis vectors in old coordinates, ordered
    /// `q_1..q_d, p_1..p_d, even kernel, odd positive, odd negative, odd kernel`.
    pub change_of_basis: Matrix,
    /// `Bᵀ Λ₋ B` for the change of basis `B`.
    pub normal: Matrix,
    /// Odd diagonal values whose modulus is not a rational square stay
    /// unnormalized; their absolute values are listed here.
    pub unnormalized: Vec<BigRational>,
}

impl NormalForm {
    /// `(d, k, r, s, t)`.
    pub fn invariants(&self) -> (usize, usize, usize, usize, usize) {
        (self.pairs, self.even_kernel, self.positive, self.negative, self.odd_kernel)
    }
}

fn pairing(m: &Matrix, u: &[BigRational], v: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            if !vj.is_zero() && !m[i][j].is_zero() {
                acc += ui * &m[i][j] * vj;
            }
        }
    }
    acc
}

fn axpy(y: &mut [BigRational], a: &BigRational, x: &[BigRational]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

fn unit(d: usize, i: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); d];
    v[i] = BigRational::one();
    v
}

/// Normal form of `Λ₋` for a real exact form.
pub fn normal_form(lambda: &BilinearForm<Exact>) -> Result<NormalForm> {
    if lambda.matrix().iter().flatten().any(|c| !c.im.is_zero()) {
        return Err(Error::ComplexInput);
    }
    let (_, minus) = lambda_parts(lambda);
    let m: Matrix = minus
        .matrix()
        .iter()
        .map(|r| r.iter().map(|c| c.re.clone()).collect())
        .collect();
    let basis = lambda.basis();
    let d = basis.dim();

    let mut remaining: Vec<Vec<BigRational>> = basis.even_indices().into_iter().map(|i| unit(d, i)).collect();
    let (mut qs, mut ps, mut kernel) = (Vec::new(), Vec::new(), Vec::new());
    while !remaining.is_empty() {
        let u = remaining.remove(0);
        let partner = remaining.iter().position(|v| !pairing(&m, &u, v).is_zero());
        let Some(pos) = partner else {
            kernel.push(u);
            continue;
        };
        let v = remaining.remove(pos);
        let w = pairing(&m, &u, &v);
        let p: Vec<BigRational> = v.iter().map(|x| x / &w).collect();
        for x in remaining.iter_mut() {
            let a = -pairing(&m, x, &p);
            let b = pairing(&m, x, &u);
            axpy(x, &a, &u);
            axpy(x, &b, &p);
        }
        qs.push(u);
        ps.push(p);
    }

    let mut remaining: Vec<Vec<BigRational>> = basis.odd_indices().into_iter().map(|i| unit(d, i)).collect();
    let (mut pos, mut neg, mut odd_kernel, mut unnormalized) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    while !remaining.is_empty() {
        let diag = remaining.iter().position(|u| !pairing(&m, u, u).is_zero());
        let idx = match diag {
            Some(i) => i,
            None => {
                // All remaining vectors are isotropic; combine the first
                // non-orthogonal pair, or stop if the block is zero.
                let mut found = None;
                'outer: for i in 0..remaining.len() {
                    for j in i + 1..remaining.len() {
                        if !pairing(&m, &remaining[i], &remaining[j]).is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                match found {
                    Some((i, j)) => {
                        let vj = remaining[j].clone();
                        axpy(&mut remaining[i], &BigRational::one(), &vj);
                        i
                    }
                    None => {
                        odd_kernel.append(&mut remaining);
                        break;
                    }
                }
            }
        };
        let u = remaining.remove(idx);
        let val = pairing(&m, &u, &u);
        for x in remaining.iter_mut() {
            let a = -pairing(&m, x, &u) / &val;
            axpy(x, &a, &u);
        }
        let mag = val.abs();
        let scaled = match rational_sqrt(&mag) {
            Some(s) => u.iter().map(|x| x / &s).collect(),
            None => {
                unnormalized.push(mag);
                u
            }
        };
        if val.is_positive() {
            pos.push(scaled);
        } else {
            neg.push(scaled);
        }
    }

    let (pairs, even_kernel, positive, negative, t) = (qs.len(), kernel.len(), pos.len(), neg.len(), odd_kernel.len());
    let columns: Vec<Vec<BigRational>> = qs
        .into_iter()
        .chain(ps)
        .chain(kernel)
        .chain(pos)
        .chain(neg)
        .chain(odd_kernel)
        .collect();
    let change_of_basis = transpose(&columns);
    let normal = matmul(&matmul(&columns, &m), &change_of_basis);
    Ok(NormalForm {
        pairs,
        even_kernel,
        positive,
        negative,
        odd_kernel: t,
        change_of_basis,
        normal,
        unnormalized,
    })
}
