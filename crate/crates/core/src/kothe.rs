//! Köthe matrices of the symmetric algebra and a Grothendieck–Pietsch
//! summability diagnostic.
//!
//! Rows are canonical monomials up to a degree bound, columns are seminorms
//! `(p, R)`, and the entry for a degree-`n` monomial is `n!^R Π w_i^{k_i}`.
//! Entries are stored as logarithms.

use std::sync::Arc;

use serde::Serialize;

use crate::basis::{GeneratorBasis, Monomial};
use crate::diagnostics::{ratio_verdict, Verdict, WINDOW};
use crate::error::{Error, Result};
use crate::scalar::ln_factorial;
use crate::seminorm::{ln_sum_exp, WeightedSeminorm};

/// One column of a Köthe matrix: the seminorm `p_R`.
#[derive(Debug, Clone, PartialEq)]
pub struct KotheColumn {
    pub seminorm: WeightedSeminorm,
    pub r: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KotheMatrix {
    basis: Arc<GeneratorBasis>,
    rows: Vec<Monomial>,
    /// `ln λ_{row, column}`, row-major.
    ln_entries: Vec<Vec<f64>>,
    n_max: usize,
}

/// All canonical monomials of degree at most `n_max`, ordered by degree.
pub fn monomials_up_to(basis: &GeneratorBasis, n_max: usize) -> Vec<Monomial> {
    fn rec(basis: &GeneratorBasis, i: usize, left: usize, exps: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == basis.dim() {
            out.push(exps.clone());
            return;
        }
        let cap = if basis.is_odd(i) { left.min(1) } else { left };
        for k in 0..=cap {
            exps.push(k as u32);
            rec(basis, i + 1, left - k, exps, out);
            exps.pop();
        }
    }
    let mut all = Vec::new();
    rec(basis, 0, n_max, &mut Vec::new(), &mut all);
    let mut monos: Vec<Monomial> = all
        .into_iter()
        .filter_map(|e| Monomial::from_exponents(basis, e))
        .collect();
    monos.sort_by_key(|m| (m.degree(), m.clone()));
    monos
}

impl KotheMatrix {
    pub fn new(columns: &[KotheColumn], n_max: usize) -> Result<Self> {
        let Some(first) = columns.first() else {
            return Err(Error::Parameter("a Köthe matrix needs at least one column".into()));
        };
        let basis = first.seminorm.basis().clone();
        for c in columns {
            crate::basis::same_basis(&basis, c.seminorm.basis())?;
        }
        let rows = monomials_up_to(&basis, n_max);
        let ln_entries = rows
            .iter()
            .map(|m| {
                let lf = ln_factorial(m.degree());
                columns
                    .iter()
                    .map(|c| {
                        let lw: f64 = m
                            .exponents()
                            .iter()
                            .zip(c.seminorm.weights())
                            .map(|(&k, w)| k as f64 * w.ln())
                            .sum();
                        c.r * lf + lw
                    })
                    .collect()
            })
            .collect();
        Ok(Self { basis, rows, ln_entries, n_max })
    }

    pub fn basis(&self) -> &Arc<GeneratorBasis> {
        &self.basis
    }

    pub fn rows(&self) -> &[Monomial] {
        &self.rows
    }

    pub fn columns(&self) -> usize {
        self.ln_entries.first().map_or(0, Vec::len)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn ln_entry(&self, row: usize, col: usize) -> f64 {
        self.ln_entries[row][col]
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.ln_entries[row][col].exp()
    }

    pub fn column(&self, col: usize) -> Vec<f64> {
        (0..self.rows.len()).map(|r| self.entry(r, col)).collect()
    }

    fn dominates(&self, large: usize, small: usize) -> bool {
        self.ln_entries
            .iter()
            .all(|row| row[large] >= row[small] - 1e-12 * row[small].abs().max(1.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Summability {
    Summable,
    NotSummable,
    Inconclusive,
}

/// `Nuclear` tests `α = 1`; `Strong { levels }` tests `α = 1, ½, …, 2^{1−levels}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuclearityMode {
    Nuclear,
    Strong { levels: usize },
}

impl NuclearityMode {
    pub fn alphas(self) -> Vec<f64> {
        match self {
            NuclearityMode::Nuclear => vec![1.0],
            NuclearityMode::Strong { levels } => (0..levels.max(1)).map(|k| 0.5f64.powi(k as i32)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairSummability {
    pub small: usize,
    pub large: usize,
    pub alpha: f64,
    /// `ln Σ_{deg = n} (λ_small/λ_large)^α` per degree.
    pub ln_degree_terms: Vec<f64>,
    pub partial_sums: Vec<f64>,
    pub verdict: Summability,
}

impl PairSummability {
    pub fn summable(&self) -> bool {
        self.verdict == Summability::Summable
    }
}

/// Summability of `Σ_rows (λ_small/λ_large)^α` for every ordered pair of
/// distinct columns with `λ_large ≥ λ_small` entrywise.
///
/// The verdict is `NotSummable` when the largest row term per degree does
/// not decrease over the last few degrees (terms do not tend to zero);
/// otherwise it follows the ratio test on the per-degree sums.
pub fn nuclearity_diagnostic(k: &KotheMatrix, mode: NuclearityMode) -> Result<Vec<PairSummability>> {
    let cols = k.columns();
    if cols < 2 {
        return Err(Error::Parameter("nuclearity needs at least two columns".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..cols)
        .flat_map(|s| (0..cols).map(move |l| (s, l)))
        .filter(|&(s, l)| s != l && k.dominates(l, s))
        .collect();
    if pairs.is_empty() {
        return Err(Error::Parameter("no pair of columns is entrywise comparable".into()));
    }
    let mut out = Vec::new();
    for (small, large) in pairs {
        for alpha in mode.alphas() {
            let mut per_degree = vec![Vec::new(); k.n_max + 1];
            for (i, m) in k.rows.iter().enumerate() {
                let row = &k.ln_entries[i];
                per_degree[m.degree()].push(alpha * (row[small] - row[large]));
            }
            let ln_degree_terms: Vec<f64> = per_degree.iter().map(|t| ln_sum_exp(t.iter().copied())).collect();
            let max_terms: Vec<f64> = per_degree
                .iter()
                .map(|t| t.iter().copied().fold(f64::NEG_INFINITY, f64::max))
                .collect();
            let mut partial_sums = Vec::with_capacity(ln_degree_terms.len());
            let mut acc = f64::NEG_INFINITY;
            for t in &ln_degree_terms {
                acc = ln_sum_exp([acc, *t]);
                partial_sums.push(acc.exp());
            }
            let tail = &max_terms[max_terms.len().saturating_sub(WINDOW)..];
            let stalled = tail.len() == WINDOW && tail.windows(2).all(|w| w[1] >= w[0] - 1e-12);
            let verdict = if stalled {
                Summability::NotSummable
            } else {
                match ratio_verdict(&ln_degree_terms) {
                    Verdict::Converging => Summability::Summable,
                    Verdict::Diverging => Summability::NotSummable,
                    Verdict::Inconclusive => Summability::Inconclusive,
                }
            };
            out.push(PairSummability { small, large, alpha, ln_degree_terms, partial_sums, verdict });
        }
    }
    Ok(out)
}
