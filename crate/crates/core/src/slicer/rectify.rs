use num_traits::{One, Zero};

use crate::algebra::{jacobian_det, Poly, Rat, RingSpec};
use crate::derivations::Derivation;
use crate::error::{Error, Result};
use crate::invariants::invariant_space;
use crate::linalg;
use crate::space::{self, Equations};

use super::descent::{slice_descent, SliceDescent};

/// Slices `s_1, ..., s_n` with `D_i(s_i) = 1` and `D_i(s_j) = 0` for `j > i`.
#[derive(Debug, Clone)]
pub struct Rectification {
    pub coordinates: Vec<Poly>,
    pub descents: Vec<SliceDescent>,
    /// `det d(s_1..s_n)/d(x_1..x_n)` when the ring is free with `n` variables.
    pub jacobian: Option<Rat>,
    pub degree_bound: usize,
}

/// Elements `p` of degree at most `bound` with `D_j(p) = 0` for `j < i` and
/// `D_j(D_i(p)) = 0` for `j <= i`, as an echelon basis.
fn candidates(ds: &[Derivation], i: usize, bound: usize) -> Vec<Poly> {
    let ring = ds[0].ring();
    let monos = space::monos_desc(ring, bound);
    let n = ds.len();
    let cols: Vec<Vec<(usize, Poly)>> = crate::par::map(&monos, |m| {
        let g = Poly::monomial(ring, m.clone(), Rat::one());
        let mut out: Vec<(usize, Poly)> = ds[..i]
            .iter()
            .enumerate()
            .map(|(j, d)| (j, d.apply_unchecked(&g)))
            .collect();
        let di = ds[i].apply_unchecked(&g);
        out.extend(
            ds[..=i]
                .iter()
                .enumerate()
                .map(|(j, d)| (n + j, d.apply_unchecked(&di))),
        );
        out
    });
    let mut eqs = Equations::new();
    let one = Rat::one();
    for (k, col) in cols.iter().enumerate() {
        for (block, img) in col {
            eqs.add(k, *block, img, &one);
        }
    }
    let null = linalg::nullspace(eqs.into_rows(), monos.len());
    space::echelon_polys(ring, null, &monos)
}

/// Rectify a commuting-on-kernels triangular family with trivial common kernel:
/// for `i = n, ..., 1` find a preslice of `D_i` inside `A_i`, run the slice descent
/// against the slices already found, and check the triangular slice pattern at the end.
pub fn rectify_full(ds: &[Derivation], bound: usize) -> Result<Rectification> {
    let ring = ds
        .first()
        .ok_or_else(|| Error::Invalid("rectify_full needs at least one derivation".into()))?
        .ring()
        .clone();
    for d in ds {
        RingSpec::check_same(&ring, d.ring())?;
    }
    let common = invariant_space(&ring, ds, bound)?;
    if let Some(w) = common.basis.iter().find(|g| !g.is_constant()) {
        return Err(Error::NonconstantKernel {
            bound,
            witness: w.to_string(),
        });
    }
    let n = ds.len();
    let mut slices: Vec<Option<Poly>> = vec![None; n];
    let mut descents: Vec<Option<SliceDescent>> = vec![None; n];
    for i in (0..n).rev() {
        let cands = candidates(ds, i, bound);
        let kernel = invariant_space(&ring, &ds[..=i], bound)?;
        let Some(mut p) = cands
            .iter()
            .find(|c| !ds[i].apply_unchecked(c).is_zero())
            .cloned()
        else {
            return Err(Error::BoundExhausted {
                stage: "rectify_full",
                bound,
                detail: format!("no preslice of D{} found in A_{}", i + 1, i + 1),
            });
        };
        for b in kernel.basis.iter().rev() {
            let c = p.coeff(b.leading_monomial().expect("nonzero basis element"));
            if !c.is_zero() {
                p = &p - &b.scale(&c);
            }
        }
        let gens: Vec<Poly> = slices[i + 1..].iter().map(|s| s.clone().unwrap()).collect();
        let descent = slice_descent(&p, &ds[i..], &gens, bound)?;
        slices[i] = Some(descent.slice.clone());
        descents[i] = Some(descent);
    }
    let coordinates: Vec<Poly> = slices.into_iter().map(Option::unwrap).collect();
    for (i, d) in ds.iter().enumerate() {
        for (j, s) in coordinates.iter().enumerate() {
            let v = d.apply_unchecked(s);
            let ok = match j.cmp(&i) {
                std::cmp::Ordering::Equal => v == Poly::one(&ring),
                std::cmp::Ordering::Greater => v.is_zero(),
                std::cmp::Ordering::Less => true,
            };
            if !ok {
                return Err(Error::Invalid(format!(
                    "internal: D{}({s}) = {v} breaks the slice pattern",
                    i + 1
                )));
            }
        }
    }
    let jacobian = if !ring.has_relation() && ring.nvars() == n {
        let det = jacobian_det(&coordinates)?;
        Some(
            det.constant_value()
                .ok_or_else(|| Error::NonConstantJacobian(det.to_string()))?,
        )
    } else {
        None
    };
    Ok(Rectification {
        coordinates,
        descents: descents.into_iter().map(Option::unwrap).collect(),
        jacobian,
        degree_bound: bound,
    })
}
