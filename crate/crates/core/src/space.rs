//! Plumbing for linear maps on spans of monomials: columns are unknown coefficients,
//! rows are `(block, monomial)` coefficient equations.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{Mono, Poly, Rat, RingSpec};
use crate::linalg::{self, SparseRow};

#[derive(Default)]
pub(crate) struct Equations {
    row_of: HashMap<(usize, Mono), usize>,
    rows: Vec<SparseRow<Rat>>,
}

impl Equations {
    pub fn new() -> Self {
        Self::default()
    }

    fn row(&mut self, block: usize, m: &Mono) -> usize {
        let next = self.rows.len();
        let r = *self.row_of.entry((block, m.clone())).or_insert(next);
        if r == next {
            self.rows.push(Vec::new());
        }
        r
    }

    /// Add `scale * p` to column `col` in equation block `block`.
    pub fn add(&mut self, col: usize, block: usize, p: &Poly, scale: &Rat) {
        for (m, c) in p.terms() {
            let r = self.row(block, m);
            self.rows[r].push((col, c * scale));
        }
    }

    /// Right-hand side rows for `solve`: coefficient of each existing row in `p`.
    /// Rows for monomials of `p` not seen yet are created (with empty left side).
    pub fn rhs(&mut self, block: usize, p: &Poly) -> Vec<Rat> {
        let mut b: HashMap<usize, Rat> = HashMap::new();
        for (m, c) in p.terms() {
            let r = self.row(block, m);
            b.insert(r, c.clone());
        }
        (0..self.rows.len())
            .map(|r| b.remove(&r).unwrap_or_else(Rat::zero))
            .collect()
    }

    pub fn into_rows(self) -> Vec<SparseRow<Rat>> {
        self.rows
            .into_iter()
            .map(|r| {
                let mut acc: HashMap<usize, Rat> = HashMap::new();
                for (c, v) in r {
                    *acc.entry(c).or_insert_with(Rat::zero) += v;
                }
                let mut r: SparseRow<Rat> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                r.sort_by_key(|e| e.0);
                r
            })
            .collect()
    }
}

/// `sum_k coeffs[k] * monos[k]`.
pub(crate) fn combine(ring: &Arc<RingSpec>, monos: &[Mono], coeffs: &[(usize, Rat)]) -> Poly {
    Poly::from_terms(
        ring,
        coeffs.iter().map(|(k, c)| (monos[*k].clone(), c.clone())),
    )
}

/// Echelonize vectors over `monos_desc` (columns in descending monomial order) and
/// return the corresponding polynomials: monic, with pairwise distinct leading
/// monomials, each pivot monomial absent from the others. Sorted ascending by
/// leading monomial.
pub(crate) fn echelon_polys(
    ring: &Arc<RingSpec>,
    vectors: Vec<SparseRow<Rat>>,
    monos_desc: &[Mono],
) -> Vec<Poly> {
    let red = linalg::rref(vectors, monos_desc.len());
    let mut out: Vec<Poly> = red
        .rows
        .iter()
        .map(|r| combine(ring, monos_desc, r))
        .collect();
    out.reverse();
    out
}

/// Standard monomials up to `bound`, descending in the ring order.
pub(crate) fn monos_desc(ring: &RingSpec, bound: usize) -> Vec<Mono> {
    let mut m = ring.standard_monomials(bound);
    m.reverse();
    m
}
