use num_traits::{One, Zero};

use crate::algebra::{Poly, Rat, RingSpec};
use crate::derivations::Derivation;
use crate::error::{Error, Result};
use crate::linalg;
use crate::space::{self, Equations};
use crate::univariate::UniPoly;

/// A preslice `p` of `D_i` along the triangular basis: `D_j(p) = 0` for `j < i` and
/// `D_i(p) = q(f)` with `q` monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresliceResult {
    /// 1-based position of the derivation in the basis.
    pub index: usize,
    pub p: Poly,
    pub q: UniPoly,
    pub degree_bound: usize,
}

impl PresliceResult {
    /// Re-check the defining equations with plain derivation application.
    pub fn verify(&self, ds: &[Derivation], f: &Poly) -> bool {
        let i = self.index - 1;
        ds[..i].iter().all(|d| d.apply_unchecked(&self.p).is_zero())
            && ds[i].apply_unchecked(&self.p) == self.q.eval_poly(f)
            && self.q.leading_coeff().is_one()
    }
}

/// Solve for all `p` of degree at most `bound` with `D_j(p) = 0` (`j < i`) and
/// `D_i(p) ∈ span{1, f, ..., f^bound}`, then return the monic gcd of the attainable
/// `q` together with a witness `p`.
///
/// The true generator of the ideal `J_i` divides the reported `q`; they agree once the
/// bound is large enough.
pub fn preslice_search(
    index: usize,
    ds: &[Derivation],
    f: &Poly,
    bound: usize,
) -> Result<PresliceResult> {
    if index == 0 || index > ds.len() {
        return Err(Error::Invalid(format!(
            "preslice index {index} out of range 1..={}",
            ds.len()
        )));
    }
    let ring = ds[0].ring().clone();
    for d in ds {
        RingSpec::check_same(&ring, d.ring())?;
    }
    RingSpec::check_same(&ring, f.ring())?;
    let i = index - 1;
    let monos = space::monos_desc(&ring, bound);
    let nr = bound + 1;
    // columns: r_bound, ..., r_0, then the monomials of p (descending)
    let r_col = |k: usize| bound - k;
    let ncols = nr + monos.len();

    let mut powers = vec![Poly::one(&ring)];
    for k in 1..=bound {
        let next = &powers[k - 1] * f;
        powers.push(next);
    }

    let images: Vec<Vec<Poly>> = crate::par::map(&monos, |m| {
        let g = Poly::monomial(&ring, m.clone(), Rat::one());
        ds[..=i].iter().map(|d| d.apply_unchecked(&g)).collect()
    });
    let mut eqs = Equations::new();
    let one = Rat::one();
    for (k, imgs) in images.iter().enumerate() {
        for (j, img) in imgs.iter().enumerate() {
            eqs.add(nr + k, j, img, &one);
        }
    }
    let minus = -Rat::one();
    for (k, pk) in powers.iter().enumerate() {
        eqs.add(r_col(k), i, pk, &minus);
    }
    let null = linalg::nullspace(eqs.into_rows(), ncols);
    let red = linalg::rref(null, ncols);

    // rows whose pivot is an r column carry a nonzero q
    let mut found: Vec<(UniPoly, Poly)> = Vec::new();
    for row in red.rows.iter().filter(|r| r[0].0 < nr) {
        let mut q = vec![Rat::zero(); nr];
        let mut pterms = Vec::new();
        for (c, v) in row {
            if *c < nr {
                q[bound - c] = v.clone();
            } else {
                pterms.push((c - nr, v.clone()));
            }
        }
        found.push((UniPoly::new(q), space::combine(&ring, &monos, &pterms)));
    }
    let Some(last) = found.last() else {
        return Err(Error::BoundExhausted {
            stage: "preslice_search",
            bound,
            detail: format!("no preslice for D{index} with D{index}(p) in Q[f]"),
        });
    };

    let (q, p) = if found.len() == 1 {
        last.clone()
    } else {
        let gcd = found.iter().fold(UniPoly::zero(), |acc, (q, _)| acc.gcd(q));
        if last.0.monic() == gcd {
            last.clone()
        } else {
            // gcd not attained inside the bound: combine witnesses with Bezout
            // coefficients taken in Q[f], which the derivations treat as constants.
            let mut acc = found[0].clone();
            for (qk, pk) in &found[1..] {
                let (g, s, t) = acc.0.extended_gcd(qk);
                let p = &(&s.eval_poly(f) * &acc.1) + &(&t.eval_poly(f) * pk);
                acc = (g, p);
            }
            acc
        }
    };
    let lc = q.leading_coeff();
    let result = PresliceResult {
        index,
        p: p.scale(&lc.recip()),
        q: q.monic(),
        degree_bound: bound,
    };
    if !result.verify(ds, f) {
        return Err(Error::Invalid(format!(
            "internal: preslice for D{index} failed re-verification"
        )));
    }
    Ok(result)
}
