//! An exact 1+1-dimensional lattice Klein–Gordon model: the wave operator,
//! retarded and advanced Green operators, the propagator, and the covariant
//! and canonical Poisson structures linked by restriction to Cauchy data.
//!
//! Time runs over `0..T`, space over `0..N` periodically, with unit speed so
//! light cones are exact. The operator is
//! `(Du)(t,x) = u(t+1,x) − 2u(t,x) + u(t−1,x) − [u(t,x+1) − 2u(t,x) + u(t,x−1)] + m²u(t,x)`.
//! Green operators run the leapfrog recursion from an empty past (or
//! future), which is causal, so their values inside the window are the
//! exact restriction of the infinite-time solution.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::basis::GeneratorBasis;
use crate::error::{Error, Result};
use crate::forms::BilinearForm;
use crate::linalg::{rank, solve, Matrix};
use crate::scalar::{real, Exact};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSpacetime {
    t: usize,
    n: usize,
    m2: BigRational,
}

impl LatticeSpacetime {
    pub fn new(t: usize, n: usize, m2: BigRational) -> Result<Self> {
        if t < 3 || n < 3 {
            return Err(Error::Lattice(format!("window {t}x{n} is too small, need T >= 3 and N >= 3")));
        }
        if m2.is_negative() {
            return Err(Error::Lattice("mass squared must be nonnegative".into()));
        }
        Ok(Self { t, n, m2 })
    }

    pub fn massless(t: usize, n: usize) -> Result<Self> {
        Self::new(t, n, BigRational::zero())
    }

    pub fn time_extent(&self) -> usize {
        self.t
    }

    pub fn sites(&self) -> usize {
        self.n
    }

    pub fn mass_squared(&self) -> &BigRational {
        &self.m2
    }

    /// Number of cells `T·N`.
    pub fn cells(&self) -> usize {
        self.t * self.n
    }

    /// Periodic spatial distance.
    pub fn spatial_distance(&self, x: usize, y: usize) -> usize {
        let d = x.abs_diff(y) % self.n;
        d.min(self.n - d)
    }

    /// `(t, x)` lies in the closed causal future of `(t0, x0)`.
    pub fn in_future_cone(&self, (t0, x0): (usize, usize), (t, x): (usize, usize)) -> bool {
        t >= t0 && self.spatial_distance(x, x0) <= t - t0
    }

    /// Neither point lies in the causal future or past of the other.
    pub fn spacelike(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        !self.in_future_cone(a, b) && !self.in_future_cone(b, a)
    }

    pub fn zero(&self) -> LatticeSection {
        LatticeSection { t: self.t, n: self.n, values: vec![BigRational::zero(); self.cells()] }
    }

    pub fn delta(&self, t: usize, x: usize) -> Result<LatticeSection> {
        let mut s = self.zero();
        s.set(t, x, BigRational::one())?;
        Ok(s)
    }

    /// Deltas on every cell, row by row.
    pub fn delta_basis(&self) -> Vec<LatticeSection> {
        (0..self.t)
            .flat_map(|t| (0..self.n).map(move |x| (t, x)))
            .map(|(t, x)| self.delta(t, x).unwrap())
            .collect()
    }

    /// Deltas on rows `1..=T−2`.
    pub fn margin_delta_basis(&self) -> Vec<LatticeSection> {
        (1..self.t - 1)
            .flat_map(|t| (0..self.n).map(move |x| (t, x)))
            .map(|(t, x)| self.delta(t, x).unwrap())
            .collect()
    }

    fn check(&self, u: &LatticeSection) -> Result<()> {
        if u.t != self.t || u.n != self.n {
            return Err(Error::Lattice(format!(
                "section has window {}x{}, expected {}x{}",
                u.t, u.n, self.t, self.n
            )));
        }
        Ok(())
    }

    fn require_margin(&self, u: &LatticeSection) -> Result<()> {
        self.check(u)?;
        if let Some((lo, hi)) = u.time_support() {
            if lo == 0 || hi + 1 >= self.t {
                return Err(Error::Lattice(format!(
                    "support rows {lo}..={hi} touch the temporal boundary; rows 1..={} are allowed",
                    self.t - 2
                )));
            }
        }
        Ok(())
    }

    /// `2u + Δu − m²u` on one row, the leapfrog update without sources.
    fn evolve_row(&self, row: &[BigRational]) -> Vec<BigRational> {
        let n = self.n;
        (0..n)
            .map(|x| {
                let left = &row[(x + n - 1) % n];
                let right = &row[(x + 1) % n];
                left + right - &self.m2 * &row[x]
            })
            .collect()
    }

    /// `D` applied with zero extension outside the window; the input must
    /// be supported on rows `1..=T−2`.
    pub fn apply_d(&self, u: &LatticeSection) -> Result<LatticeSection> {
        self.require_margin(u)?;
        let mut out = self.zero();
        for t in 0..self.t {
            for x in 0..self.n {
                out.values[t * self.n + x] = self.stencil(u, t, x);
            }
        }
        Ok(out)
    }

    /// `D u` on rows `1..=T−2`, zero on the boundary rows, for any `u`.
    pub fn interior_residual(&self, u: &LatticeSection) -> Result<LatticeSection> {
        self.check(u)?;
        let mut out = self.zero();
        for t in 1..self.t - 1 {
            for x in 0..self.n {
                out.values[t * self.n + x] = self.stencil(u, t, x);
            }
        }
        Ok(out)
    }

    fn stencil(&self, u: &LatticeSection, t: usize, x: usize) -> BigRational {
        let n = self.n;
        let at = |tt: Option<usize>, xx: usize| -> BigRational {
            match tt {
                Some(tt) if tt < self.t => u.values[tt * n + xx].clone(),
                _ => BigRational::zero(),
            }
        };
        let c = at(Some(t), x);
        let time = at(Some(t + 1), x) + at(t.checked_sub(1), x) - &c - &c;
        let space = at(Some(t), (x + 1) % n) + at(Some(t), (x + n - 1) % n) - &c - &c;
        time - space + &self.m2 * &c
    }

    /// `G⁺φ`: the solution of `Du = φ` vanishing at and below the lowest
    /// support row of `φ`.
    pub fn green_retarded(&self, phi: &LatticeSection) -> Result<LatticeSection> {
        self.check(phi)?;
        let n = self.n;
        let mut u = self.zero();
        let Some((lo, _)) = phi.time_support() else {
            return Ok(u);
        };
        for t in lo..self.t - 1 {
            let row = u.row(t).to_vec();
            let prev = if t == 0 { vec![BigRational::zero(); n] } else { u.row(t - 1).to_vec() };
            let lap = self.evolve_row(&row);
            for x in 0..n {
                u.values[(t + 1) * n + x] = &phi.values[t * n + x] + &lap[x] - &prev[x];
            }
        }
        Ok(u)
    }

    /// `G⁻φ`: the solution of `Du = φ` vanishing at and above the highest
    /// support row of `φ`.
    pub fn green_advanced(&self, phi: &LatticeSection) -> Result<LatticeSection> {
        self.check(phi)?;
        let n = self.n;
        let mut u = self.zero();
        let Some((_, hi)) = phi.time_support() else {
            return Ok(u);
        };
        for t in (1..=hi).rev() {
            let row = u.row(t).to_vec();
            let next = if t + 1 == self.t { vec![BigRational::zero(); n] } else { u.row(t + 1).to_vec() };
            let lap = self.evolve_row(&row);
            for x in 0..n {
                u.values[(t - 1) * n + x] = &phi.values[t * n + x] + &lap[x] - &next[x];
            }
        }
        Ok(u)
    }

    /// `Gφ = G⁺φ − G⁻φ`.
    pub fn propagator(&self, phi: &LatticeSection) -> Result<LatticeSection> {
        Ok(self.green_retarded(phi)?.sub(&self.green_advanced(phi)?))
    }

    /// `Λ_cov(φ, ψ) = Σ (Gφ)ψ`.
    pub fn lambda_cov(&self, phi: &LatticeSection, psi: &LatticeSection) -> Result<BigRational> {
        self.check(psi)?;
        Ok(self.propagator(phi)?.pairing(psi))
    }

    fn require_slab(&self, t0: usize) -> Result<()> {
        if t0 + 1 >= self.t {
            return Err(Error::Lattice(format!("slices {t0} and {} do not fit in the window", t0 + 1)));
        }
        Ok(())
    }

    /// The solution of `Du = 0` on the window with the given two-slice data.
    pub fn solve_cauchy(&self, data: &CauchyPair, t0: usize) -> Result<LatticeSection> {
        self.require_slab(t0)?;
        if data.u0.len() != self.n || data.u1.len() != self.n {
            return Err(Error::Lattice(format!("Cauchy data must have {} sites", self.n)));
        }
        let n = self.n;
        let mut u = self.zero();
        u.values[t0 * n..(t0 + 1) * n].clone_from_slice(&data.u0);
        u.values[(t0 + 1) * n..(t0 + 2) * n].clone_from_slice(&data.u1);
        for t in t0 + 1..self.t - 1 {
            let lap = self.evolve_row(u.row(t));
            let prev = u.row(t - 1).to_vec();
            for x in 0..n {
                u.values[(t + 1) * n + x] = &lap[x] - &prev[x];
            }
        }
        for t in (1..=t0).rev() {
            let lap = self.evolve_row(u.row(t));
            let next = u.row(t + 1).to_vec();
            for x in 0..n {
                u.values[(t - 1) * n + x] = &lap[x] - &next[x];
            }
        }
        Ok(u)
    }

    /// `ρ_Σ(φ) = (Gφ(t₀,·), Gφ(t₀+1,·))`.
    pub fn rho_sigma(&self, phi: &LatticeSection, t0: usize) -> Result<CauchyPair> {
        self.require_slab(t0)?;
        Ok(self.propagator(phi)?.cauchy_data(t0))
    }

    /// `Λ_Σ(A, B) = σ Σ_x (A₁B₀ − A₀B₁)` with `σ = −1`, the sign for which
    /// `Λ_Σ(ρ_Σφ, ρ_Σψ) = Λ_cov(φ, ψ)`.
    pub fn lambda_sigma(&self, a: &CauchyPair, b: &CauchyPair) -> Result<BigRational> {
        if [a.u0.len(), a.u1.len(), b.u0.len(), b.u1.len()].iter().any(|&l| l != self.n) {
            return Err(Error::Lattice(format!("Cauchy data must have {} sites", self.n)));
        }
        Ok(wronskian(a, b))
    }

    /// The `2N` solutions with unit Cauchy data on slices `(0, 1)`.
    pub fn solution_basis(&self) -> Vec<LatticeSection> {
        (0..2 * self.n)
            .map(|k| {
                let mut data = CauchyPair::zero(self.n);
                if k < self.n {
                    data.u0[k] = BigRational::one();
                } else {
                    data.u1[k - self.n] = BigRational::one();
                }
                self.solve_cauchy(&data, 0).unwrap()
            })
            .collect()
    }

    /// Whether `φ` is a Casimir, checked both as `Gφ = 0` and as `φ`
    /// annihilating every solution.
    pub fn casimir_check(&self, phi: &LatticeSection) -> Result<CasimirCheck> {
        self.require_margin(phi)?;
        let propagator_vanishes = self.propagator(phi)?.is_zero();
        let annihilates_solutions = self.solution_basis().iter().all(|u| u.pairing(phi).is_zero());
        Ok(CasimirCheck { propagator_vanishes, annihilates_solutions })
    }

    pub fn is_casimir(&self, phi: &LatticeSection) -> Result<bool> {
        Ok(self.casimir_check(phi)?.holds())
    }

    /// A section supported on rows `t₀, t₀+1` with the same Cauchy data as
    /// `φ`, found by solving the `2N × 2N` system of `ρ_Σ` on slab deltas.
    pub fn slab_representative(&self, phi: &LatticeSection, t0: usize) -> Result<LatticeSection> {
        self.check(phi)?;
        if t0 == 0 || t0 + 2 >= self.t {
            return Err(Error::Lattice(format!("slab rows {t0}, {} must lie in 1..={}", t0 + 1, self.t - 2)));
        }
        let n = self.n;
        let slab: Vec<(usize, usize)> = (t0..t0 + 2).flat_map(|t| (0..n).map(move |x| (t, x))).collect();
        let columns: Vec<Vec<BigRational>> = slab
            .iter()
            .map(|&(t, x)| Ok(self.rho_sigma(&self.delta(t, x)?, t0)?.flatten()))
            .collect::<Result<_>>()?;
        let matrix: Matrix = (0..2 * n).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
        let target = self.rho_sigma(phi, t0)?.flatten();
        let coeffs = solve(&matrix, &target)?;
        let mut psi = self.zero();
        for (&(t, x), c) in slab.iter().zip(coeffs) {
            psi.values[t * n + x] = c;
        }
        Ok(psi)
    }

    /// Rank data identifying `ker ρ_Σ` with `D` applied to sections on rows
    /// `2..=T−3`, over margin-compliant test sections.
    pub fn kernel_report(&self, t0: usize) -> Result<KernelReport> {
        self.require_slab(t0)?;
        let n = self.n;
        let rho_columns: Vec<Vec<BigRational>> = self
            .margin_delta_basis()
            .par_iter()
            .map(|d| self.rho_sigma(d, t0).map(|c| c.flatten()))
            .collect::<Result<_>>()?;
        let rho: Matrix = (0..2 * n).map(|r| rho_columns.iter().map(|c| c[r].clone()).collect()).collect();
        let rank_rho = rank(&rho);
        let domain = rho_columns.len();

        let inner: Vec<LatticeSection> = (2..self.t.saturating_sub(2))
            .flat_map(|t| (0..n).map(move |x| (t, x)))
            .map(|(t, x)| self.delta(t, x))
            .collect::<Result<_>>()?;
        let images: Vec<LatticeSection> = inner.iter().map(|c| self.apply_d(c)).collect::<Result<_>>()?;
        let image_in_kernel = images
            .par_iter()
            .map(|img| self.rho_sigma(img, t0).map(|c| c.is_zero()))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|z| z);
        let image_matrix: Matrix = images.iter().map(|s| s.values.clone()).collect();
        let rank_image = rank(&image_matrix);
        Ok(KernelReport { domain, rank_rho, kernel_dim: domain - rank_rho, rank_image, image_in_kernel })
    }

    /// The Gram matrix `scale·Λ_cov(φ_i, φ_j)` as a form over even
    /// generators `phi0, phi1, …`.
    pub fn covariant_weyl_generators(&self, sections: &[LatticeSection], scale: &BigRational) -> Result<BilinearForm<Exact>> {
        let basis = generator_basis(sections.len())?;
        let gram = self.gram(sections)?;
        let matrix = gram
            .into_iter()
            .map(|row| row.into_iter().map(|v| real(v * scale)).collect())
            .collect();
        BilinearForm::new(&basis, matrix)
    }

    /// `Λ_cov(φ_i, φ_j)` for all pairs.
    pub fn gram(&self, sections: &[LatticeSection]) -> Result<Matrix> {
        for s in sections {
            self.check(s)?;
        }
        let props: Vec<LatticeSection> = sections.par_iter().map(|s| self.propagator(s)).collect::<Result<_>>()?;
        Ok(props
            .par_iter()
            .map(|g| sections.iter().map(|s| g.pairing(s)).collect())
            .collect())
    }
}

/// Even generators `phi0, phi1, …` for covariant Weyl algebras.
pub fn generator_basis(count: usize) -> Result<Arc<GeneratorBasis>> {
    let names: Vec<String> = (0..count).map(|i| format!("phi{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    GeneratorBasis::even(&refs)
}

fn wronskian(a: &CauchyPair, b: &CauchyPair) -> BigRational {
    a.u0.iter()
        .zip(&a.u1)
        .zip(b.u0.iter().zip(&b.u1))
        .fold(BigRational::zero(), |acc, ((a0, a1), (b0, b1))| acc + a0 * b1 - a1 * b0)
}

/// Values on the window, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSection {
    t: usize,
    n: usize,
    values: Vec<BigRational>,
}

impl LatticeSection {
    pub fn time_extent(&self) -> usize {
        self.t
    }

    pub fn sites(&self) -> usize {
        self.n
    }

    pub fn get(&self, t: usize, x: usize) -> &BigRational {
        &self.values[t * self.n + x]
    }

    pub fn set(&mut self, t: usize, x: usize, v: BigRational) -> Result<()> {
        if t >= self.t || x >= self.n {
            return Err(Error::Lattice(format!("cell ({t}, {x}) is outside the {}x{} window", self.t, self.n)));
        }
        self.values[t * self.n + x] = v;
        Ok(())
    }

    pub fn row(&self, t: usize) -> &[BigRational] {
        &self.values[t * self.n..(t + 1) * self.n]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Nonzero cells in row-major order.
    pub fn support(&self) -> Vec<(usize, usize)> {
        (0..self.values.len())
            .filter(|&i| !self.values[i].is_zero())
            .map(|i| (i / self.n, i % self.n))
            .collect()
    }

    /// Lowest and highest rows carrying nonzero values.
    pub fn time_support(&self) -> Option<(usize, usize)> {
        let first = self.values.iter().position(|v| !v.is_zero())?;
        let last = self.values.iter().rposition(|v| !v.is_zero())?;
        Some((first / self.n, last / self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Self { t: self.t, n: self.n, values }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Self { t: self.t, n: self.n, values }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { t: self.t, n: self.n, values: self.values.iter().map(|v| v * c).collect() }
    }

    /// `Σ φ ψ` over the window.
    pub fn pairing(&self, other: &Self) -> BigRational {
        self.values
            .iter()
            .zip(&other.values)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn cauchy_data(&self, t0: usize) -> CauchyPair {
        CauchyPair { u0: self.row(t0).to_vec(), u1: self.row(t0 + 1).to_vec() }
    }
}

/// Values on two consecutive slices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauchyPair {
    pub u0: Vec<BigRational>,
    pub u1: Vec<BigRational>,
}

impl CauchyPair {
    pub fn zero(n: usize) -> Self {
        Self { u0: vec![BigRational::zero(); n], u1: vec![BigRational::zero(); n] }
    }

    pub fn is_zero(&self) -> bool {
        self.u0.iter().chain(&self.u1).all(Zero::is_zero)
    }

    fn flatten(&self) -> Vec<BigRational> {
        self.u0.iter().chain(&self.u1).cloned().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CasimirCheck {
    pub propagator_vanishes: bool,
    pub annihilates_solutions: bool,
}

impl CasimirCheck {
    pub fn holds(&self) -> bool {
        self.propagator_vanishes && self.annihilates_solutions
    }

    /// The two characterizations agree.
    pub fn consistent(&self) -> bool {
        self.propagator_vanishes == self.annihilates_solutions
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelReport {
    /// Dimension of the margin-compliant test space.
    pub domain: usize,
    pub rank_rho: usize,
    pub kernel_dim: usize,
    /// Rank of `D` on sections supported on rows `2..=T−3`.
    pub rank_image: usize,
    pub image_in_kernel: bool,
}

impl KernelReport {
    pub fn holds(&self) -> bool {
        self.image_in_kernel && self.rank_image == self.kernel_dim
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn stencil_of_a_delta() {
        let lat = LatticeSpacetime::massless(6, 5).unwrap();
        let du = lat.apply_d(&lat.delta(2, 2).unwrap()).unwrap();
        for t in 0..6 {
            for x in 0..5 {
                let want = match (t, x) {
                    (1, 2) | (3, 2) => r(1),
                    (2, 1) | (2, 3) => r(-1),
                    _ => r(0),
                };
                assert_eq!(du.get(t, x), &want, "({t}, {x})");
            }
        }
        assert!(lat.apply_d(&lat.delta(0, 1).unwrap()).is_err());
        assert!(lat.apply_d(&lat.delta(5, 1).unwrap()).is_err());
    }

    #[test]
    fn retarded_green_first_step() {
        let lat = LatticeSpacetime::massless(8, 12).unwrap();
        let phi = lat.delta(2, 5).unwrap();
        let g = lat.green_retarded(&phi).unwrap();
        assert_eq!(g.get(3, 5), &r(1));
        assert!((0..=2).all(|t| g.row(t).iter().all(Zero::is_zero)));
        assert_eq!(lat.interior_residual(&g).unwrap(), phi);
        for (t, x) in g.support() {
            assert!(lat.in_future_cone((2, 5), (t, x)));
        }
        let a = lat.green_advanced(&phi).unwrap();
        assert_eq!(a.get(1, 5), &r(1));
        assert!((2..8).all(|t| a.row(t).iter().all(Zero::is_zero)));
    }

    #[test]
    fn propagator_of_d_image_vanishes() {
        let lat = LatticeSpacetime::new(9, 5, BigRational::new(1.into(), 3.into())).unwrap();
        let mut chi = lat.zero();
        chi.set(3, 1, r(2)).unwrap();
        chi.set(4, 4, r(-5)).unwrap();
        let phi = lat.apply_d(&chi).unwrap();
        assert!(lat.propagator(&phi).unwrap().is_zero());
        assert!(lat.rho_sigma(&phi, 4).unwrap().is_zero());
        assert!(lat.is_casimir(&phi).unwrap());
    }

    #[test]
    fn cauchy_examples() {
        let lat = LatticeSpacetime::massless(7, 4).unwrap();
        assert!(lat.solve_cauchy(&CauchyPair::zero(4), 2).unwrap().is_zero());
        let k = CauchyPair { u0: vec![r(3); 4], u1: vec![r(3); 4] };
        let u = lat.solve_cauchy(&k, 2).unwrap();
        assert!(u.values().iter().all(|v| v == &r(3)));
        let data = CauchyPair { u0: vec![r(1), r(0), r(-2), r(5)], u1: vec![r(0), r(4), r(1), r(1)] };
        let u = lat.solve_cauchy(&data, 3).unwrap();
        assert_eq!(u.cauchy_data(3), data);
        assert!(lat.interior_residual(&u).unwrap().is_zero());
    }

    #[test]
    fn covariant_and_canonical_forms_agree() {
        let lat = LatticeSpacetime::new(7, 4, BigRational::new(1.into(), 2.into())).unwrap();
        let basis = lat.delta_basis();
        for t0 in [0, 3, 5] {
            for a in &basis {
                let ra = lat.rho_sigma(a, t0).unwrap();
                for b in basis.iter().step_by(3) {
                    let rb = lat.rho_sigma(b, t0).unwrap();
                    assert_eq!(lat.lambda_sigma(&ra, &rb).unwrap(), lat.lambda_cov(a, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn locality_and_equal_time() {
        let lat = LatticeSpacetime::massless(10, 10).unwrap();
        let a = lat.delta(4, 0).unwrap();
        let b = lat.delta(4, 5).unwrap();
        let c = lat.delta(5, 3).unwrap();
        assert_eq!(lat.lambda_cov(&a, &b).unwrap(), r(0));
        assert!(lat.spacelike((4, 0), (5, 3)));
        assert_eq!(lat.lambda_cov(&a, &c).unwrap(), r(0));
        let form = lat.covariant_weyl_generators(&[a.clone(), b], &r(1)).unwrap();
        assert!(form.is_zero());
        let d = lat.delta(6, 1).unwrap();
        let g = lat.gram(&[a.clone(), d]).unwrap();
        assert!(!g[0][1].is_zero());
        assert_eq!(g[0][1], -g[1][0].clone());
        assert!(lat.covariant_weyl_generators(&[a], &r(1)).unwrap().is_zero());
    }

    #[test]
    fn slab_representatives() {
        let lat = LatticeSpacetime::massless(10, 5).unwrap();
        let phi = lat.delta(1, 2).unwrap();
        let psi = lat.slab_representative(&phi, 6).unwrap();
        assert!(psi.time_support().is_some_and(|(lo, hi)| lo >= 6 && hi <= 7));
        for chi in lat.delta_basis() {
            assert_eq!(lat.lambda_cov(&psi, &chi).unwrap(), lat.lambda_cov(&phi, &chi).unwrap());
        }
        assert!(lat.is_casimir(&phi.sub(&psi)).unwrap());
        let slab = lat.delta(6, 3).unwrap().add(&lat.delta(7, 0).unwrap().scale(&r(4)));
        assert_eq!(lat.slab_representative(&slab, 6).unwrap(), slab);
    }

    #[test]
    fn kernel_is_image_of_d() {
        let lat = LatticeSpacetime::massless(8, 4).unwrap();
        let rep = lat.kernel_report(3).unwrap();
        assert_eq!(rep.rank_rho, 8);
        assert!(rep.holds(), "{rep:?}");
    }

    #[test]
    fn small_windows_are_rejected() {
        assert!(LatticeSpacetime::massless(2, 8).is_err());
        assert!(LatticeSpacetime::massless(8, 2).is_err());
        assert!(LatticeSpacetime::new(8, 8, r(-1)).is_err());
    }
}
