use crate::algebra::{Poly, Rat};
use crate::derivations::{k_span_membership, lie_bracket, Derivation};
use crate::error::{Error, Result};
use crate::invariants::invariant_space;
use crate::par;

/// `[D_i, D_j]` for `i < j` (1-based) and its coefficients in `span{D_1..D_{i-1}}`.
#[derive(Debug, Clone)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub bracket: Derivation,
    pub coefficients: Option<Vec<Rat>>,
}

/// Whether `[D_i, D_j]` kills the truncated subalgebra `A_i = ker D_1 ∩ ... ∩ ker D_{i-1}`.
#[derive(Debug, Clone)]
pub struct RestrictionEntry {
    pub i: usize,
    pub j: usize,
    pub subalgebra_dim: usize,
    pub offending: Option<Poly>,
}

impl RestrictionEntry {
    pub fn passes(&self) -> bool {
        self.offending.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct TriangularReport {
    pub degree_bound: usize,
    pub brackets: Vec<BracketEntry>,
    pub restrictions: Vec<RestrictionEntry>,
}

impl TriangularReport {
    pub fn passes(&self) -> bool {
        self.brackets.iter().all(|b| b.coefficients.is_some())
            && self.restrictions.iter().all(RestrictionEntry::passes)
    }

    /// First failing entry, for error messages.
    pub fn failure(&self) -> Option<String> {
        if let Some(b) = self.brackets.iter().find(|b| b.coefficients.is_none()) {
            return Some(format!(
                "[D{}, D{}] = {} is not in span{{D1..D{}}}",
                b.i,
                b.j,
                b.bracket,
                b.i - 1
            ));
        }
        self.restrictions.iter().find(|r| !r.passes()).map(|r| {
            format!(
                "D{} and D{} do not commute on A_{}: bracket moves {}",
                r.i,
                r.j,
                r.i,
                r.offending.as_ref().unwrap()
            )
        })
    }
}

/// Bracket-span conditions for every pair plus restricted commutation on the
/// degree-truncated subalgebras `A_i`.
pub fn triangular_basis_check(ds: &[Derivation], bound: usize) -> Result<TriangularReport> {
    let ring = ds
        .first()
        .ok_or_else(|| {
            Error::Invalid("triangular_basis_check needs at least one derivation".into())
        })?
        .ring()
        .clone();
    let n = ds.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let brackets = pairs
        .iter()
        .map(|&(i, j)| {
            let b = lie_bracket(&ds[i], &ds[j])?;
            let coefficients = k_span_membership(&b, &ds[..i])?;
            Ok(BracketEntry {
                i: i + 1,
                j: j + 1,
                bracket: b,
                coefficients,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let levels: Vec<usize> = (0..n.saturating_sub(1)).collect();
    let subalgebras = par::map(&levels, |&i| invariant_space(&ring, &ds[..i], bound));
    let mut restrictions = Vec::new();
    for (i, sub) in levels.iter().zip(subalgebras) {
        let sub = sub?;
        for entry in brackets.iter().filter(|b| b.i == i + 1) {
            let offending = sub
                .basis
                .iter()
                .find(|g| !entry.bracket.apply_unchecked(g).is_zero())
                .cloned();
            restrictions.push(RestrictionEntry {
                i: entry.i,
                j: entry.j,
                subalgebra_dim: sub.dim(),
                offending,
            });
        }
    }
    Ok(TriangularReport {
        degree_bound: bound,
        brackets,
        restrictions,
    })
}
