//! Degree-truncated common kernels, the generator `f` of a one-dimensional
//! invariant ring, and rewriting elements in terms of subalgebra generators.
//!
//! Every result here is a semi-decision for a fixed degree bound. On a quotient
//! ring "degree" means the degree of the normal-form representative under the
//! ring's fixed monomial order.

use std::sync::Arc;

use num_traits::One;

use crate::algebra::{Mono, MonomialOrder, Poly, Rat, RingSpec};
use crate::derivations::Derivation;
use crate::error::{Error, Result};
use crate::linalg::{self, SparseRow};
use crate::par;
use crate::space::{self, Equations};

/// Basis of `{g : deg g <= bound, D_i(g) = 0 for all i}`.
///
/// Elements are monic with pairwise distinct leading monomials (no element contains
/// another's leading monomial), sorted ascending by leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantBasis {
    pub degree_bound: usize,
    pub basis: Vec<Poly>,
}

impl InvariantBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether `g` lies in the span of the basis.
    pub fn contains(&self, g: &Poly) -> bool {
        let mut rem = g.clone();
        for b in self.basis.iter().rev() {
            let lm = b.leading_monomial().expect("basis elements are nonzero");
            let c = rem.coeff(lm);
            rem = &rem - &b.scale(&c);
        }
        rem.is_zero()
    }
}

fn check_ring(ring: &Arc<RingSpec>, ds: &[Derivation]) -> Result<()> {
    ds.iter()
        .try_for_each(|d| RingSpec::check_same(ring, d.ring()))
}

/// Exact nullspace of `g -> (D_1 g, ..., D_k g)` on normal-form monomials of degree
/// at most `bound`. With no derivations this is the whole truncated space.
pub fn invariant_space(
    ring: &Arc<RingSpec>,
    ds: &[Derivation],
    bound: usize,
) -> Result<InvariantBasis> {
    check_ring(ring, ds)?;
    let monos = space::monos_desc(ring, bound);
    let columns: Vec<Vec<Poly>> = par::map(&monos, |m| {
        let g = Poly::monomial(ring, m.clone(), Rat::one());
        ds.iter().map(|d| d.apply_unchecked(&g)).collect()
    });
    let mut eqs = Equations::new();
    let one = Rat::one();
    for (col, images) in columns.iter().enumerate() {
        for (block, img) in images.iter().enumerate() {
            eqs.add(col, block, img, &one);
        }
    }
    let null = linalg::nullspace(eqs.into_rows(), monos.len());
    Ok(InvariantBasis {
        degree_bound: bound,
        basis: space::echelon_polys(ring, null, &monos),
    })
}

/// The minimal nonconstant invariant `f` (monic, no constant term, ties broken by the
/// monomial order), after checking that every invariant up to `bound` lies in
/// `span{1, f, f^2, ...}`.
pub fn kernel_generator(ring: &Arc<RingSpec>, ds: &[Derivation], bound: usize) -> Result<Poly> {
    let inv = invariant_space(ring, ds, bound)?;
    let f = inv
        .basis
        .iter()
        .find(|g| !g.is_constant())
        .cloned()
        .ok_or_else(|| Error::BoundExhausted {
            stage: "kernel_generator",
            bound,
            detail: "no nonconstant invariant up to the degree bound".into(),
        })?;
    for g in &inv.basis {
        if express_in_subalgebra(g, std::slice::from_ref(&f), bound)?.is_none() {
            return Err(Error::NotMonogenic {
                bound,
                detail: format!("{g} is not a polynomial in f = {f}"),
            });
        }
    }
    Ok(f)
}

/// Ring of abstract generators used to report rewritings: `t` for one generator,
/// `t1, ..., tk` otherwise.
pub fn abstract_ring(k: usize) -> Arc<RingSpec> {
    let names: Vec<String> = if k == 1 {
        vec!["t".to_string()]
    } else {
        (1..=k).map(|i| format!("t{i}")).collect()
    };
    RingSpec::free(&names, MonomialOrder::GradedLex).expect("generated names are valid")
}

/// Express `g` as a polynomial of total degree at most `bound` in `gens`, returned in
/// `abstract_ring(gens.len())`; `None` if no such expression exists. When the gens are
/// algebraically dependent one expression is chosen (free coefficients set to zero).
pub fn express_in_subalgebra(g: &Poly, gens: &[Poly], bound: usize) -> Result<Option<Poly>> {
    for h in gens {
        RingSpec::check_same(g.ring(), h.ring())?;
    }
    let target = abstract_ring(gens.len());
    if gens.is_empty() {
        return Ok(g.constant_value().map(|c| Poly::constant(&target, c)));
    }
    let ring = g.ring();
    let exps = Mono::all_up_to_degree(gens.len(), bound as u32);
    let mut powers: Vec<Vec<Poly>> = Vec::with_capacity(gens.len());
    for h in gens {
        let mut row = vec![Poly::one(ring)];
        for e in 1..=bound {
            let next = &row[e - 1] * h;
            row.push(next);
        }
        powers.push(row);
    }
    let products: Vec<Poly> = par::map(&exps, |a| {
        a.exponents()
            .iter()
            .enumerate()
            .fold(Poly::one(ring), |acc, (i, &e)| {
                &acc * &powers[i][e as usize]
            })
    });
    let mut eqs = Equations::new();
    let one = Rat::one();
    for (col, p) in products.iter().enumerate() {
        eqs.add(col, 0, p, &one);
    }
    let rhs = eqs.rhs(0, g);
    let rows = eqs.into_rows();
    let Some(x) = linalg::solve(rows, rhs, exps.len()) else {
        return Ok(None);
    };
    let coeffs: SparseRow<Rat> = x
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(c))
        .collect();
    Ok(Some(space::combine(&target, &exps, &coeffs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn ring(vars: &[&str]) -> Arc<RingSpec> {
        RingSpec::free(vars, MonomialOrder::GradedLex).unwrap()
    }

    fn der(r: &Arc<RingSpec>, pairs: &[(&str, &str)]) -> Derivation {
        let pairs: Vec<(&str, Poly)> = pairs
            .iter()
            .map(|(v, s)| (*v, parse_poly(s, r).unwrap()))
            .collect();
        Derivation::from_named(r, &pairs).unwrap()
    }

    fn strs(b: &InvariantBasis) -> Vec<String> {
        b.basis.iter().map(|p| p.to_string()).collect()
    }

    fn ex3() -> (Arc<RingSpec>, Vec<Derivation>) {
        let free = ring(&["X", "Y", "Z", "T"]);
        let r = free
            .with_relation(&parse_poly("X^2*Y + X + Z^2 + T^3", &free).unwrap())
            .unwrap();
        let d1 = der(&r, &[("Y", "2*Z"), ("Z", "-X^2")]);
        let d2 = der(&r, &[("Y", "3*T^2"), ("T", "-X^2")]);
        (r, vec![d1, d2])
    }

    #[test]
    fn example_two_invariants() {
        let r = ring(&["X", "Y", "Z"]);
        let ds = vec![der(&r, &[("X", "Z")]), der(&r, &[("Y", "1")])];
        let b = invariant_space(&r, &ds, 3).unwrap();
        assert_eq!(strs(&b), ["1", "Z", "Z^2", "Z^3"]);
        assert_eq!(kernel_generator(&r, &ds, 3).unwrap().to_string(), "Z");
    }

    #[test]
    fn example_one_has_only_constants() {
        let r = ring(&["X", "Y", "Z"]);
        let ds = vec![
            der(&r, &[("Y", "1")]),
            der(&r, &[("X", "1"), ("Y", "Z")]),
            der(&r, &[("Z", "1")]),
        ];
        let b = invariant_space(&r, &ds, 4).unwrap();
        assert_eq!(strs(&b), ["1"]);
        assert!(matches!(
            kernel_generator(&r, &ds, 4),
            Err(Error::BoundExhausted { .. })
        ));
    }

    #[test]
    fn example_three_invariants() {
        let (r, ds) = ex3();
        let b = invariant_space(&r, &ds, 2).unwrap();
        assert_eq!(strs(&b), ["1", "X", "X^2"]);
        assert_eq!(kernel_generator(&r, &ds, 4).unwrap().to_string(), "X");
    }

    #[test]
    fn two_stacked_maps() {
        let r = ring(&["X", "Y", "Z"]);
        let ds = vec![der(&r, &[("Y", "1")]), der(&r, &[("X", "1"), ("Y", "Z")])];
        assert_eq!(kernel_generator(&r, &ds, 4).unwrap().to_string(), "Z");
    }

    #[test]
    fn non_monogenic_kernel_is_reported() {
        let r = ring(&["X", "Y", "Z"]);
        let ds = vec![der(&r, &[("Z", "1")])];
        assert!(matches!(
            kernel_generator(&r, &ds, 3),
            Err(Error::NotMonogenic { .. })
        ));
    }

    #[test]
    fn empty_derivation_list_gives_all_monomials() {
        let r = ring(&["X", "Y"]);
        assert_eq!(invariant_space(&r, &[], 2).unwrap().dim(), 6);
    }

    #[test]
    fn subalgebra_rewriting() {
        let r = ring(&["X", "Y", "Z"]);
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let got = express_in_subalgebra(&p("Z^2"), &[p("Z")], 4)
            .unwrap()
            .unwrap();
        assert_eq!(got.to_string(), "t^2");
        assert!(express_in_subalgebra(&p("X"), &[p("Z")], 4)
            .unwrap()
            .is_none());
        let got = express_in_subalgebra(&p("Y^2 + 2*X^2*Y + X^4"), &[p("Y + X^2")], 4)
            .unwrap()
            .unwrap();
        assert_eq!(got.to_string(), "t^2");
        let two = express_in_subalgebra(&p("X*Z - 3"), &[p("X"), p("Z")], 2)
            .unwrap()
            .unwrap();
        assert_eq!(two.to_string(), "t1*t2 - 3");
        let none = express_in_subalgebra(&p("5"), &[], 0).unwrap().unwrap();
        assert_eq!(none.to_string(), "5");
    }
}
