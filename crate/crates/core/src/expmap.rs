//! Exponential and logarithm between locally nilpotent derivations and unipotent
//! ring automorphisms, plus composition.
//!
//! Composition convention: `compose_autos(u, v)` sends `x` to `u(x)` with `v`'s
//! images substituted for the variables, i.e. the ring endomorphism "apply `u*`, then
//! `v*`". On points this is `p -> u(v(p))`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{jacobian_det, Poly, Rat, RingSpec};
use crate::derivations::{Derivation, NilpotencyCertificate};
use crate::error::{Error, Result};

pub const COMPOSITION_CONVENTION: &str =
    "compose(u, v): x -> u(x)[vars := v(vars)] (apply u*, then v*; on points p -> u(v(p)))";

/// Ring endomorphism given by generator images.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyAuto {
    ring: Arc<RingSpec>,
    images: Vec<Poly>,
}

impl PolyAuto {
    /// On a quotient ring the images must send `P` into `(P)`.
    pub fn new(ring: &Arc<RingSpec>, images: Vec<Poly>) -> Result<Self> {
        if images.len() != ring.nvars() {
            return Err(Error::SizeMismatch {
                expected: ring.nvars(),
                got: images.len(),
            });
        }
        let images = images
            .iter()
            .map(|p| p.to_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        if let Some(p) = ring.relation_poly() {
            let free = p.ring().clone();
            let free_images = images
                .iter()
                .map(|q| q.to_ring(&free))
                .collect::<Result<Vec<_>>>()?;
            let (_, rem) = p.substitute(&free_images)?.divide_by_relation(ring)?;
            if !rem.is_zero() {
                return Err(Error::AutoNotInducedOnQuotient);
            }
        }
        Ok(PolyAuto {
            ring: ring.clone(),
            images,
        })
    }

    /// Build from `(variable name, image)` pairs; unlisted variables map to themselves.
    pub fn from_named(ring: &Arc<RingSpec>, pairs: &[(&str, Poly)]) -> Result<Self> {
        let mut images: Vec<Poly> = (0..ring.nvars()).map(|v| Poly::var(ring, v)).collect();
        for (name, p) in pairs {
            let idx = ring
                .var_index(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            images[idx] = p.clone();
        }
        PolyAuto::new(ring, images)
    }

    pub fn identity(ring: &Arc<RingSpec>) -> Self {
        PolyAuto {
            ring: ring.clone(),
            images: (0..ring.nvars()).map(|v| Poly::var(ring, v)).collect(),
        }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn image(&self, var: usize) -> &Poly {
        &self.images[var]
    }

    /// `u*(g)`: substitute the images into `g`.
    pub fn apply(&self, g: &Poly) -> Result<Poly> {
        RingSpec::check_same(&self.ring, g.ring())?;
        g.substitute(&self.images)
    }

    pub fn jacobian(&self) -> Result<Poly> {
        jacobian_det(&self.images)
    }

    /// Free ring and constant nonzero Jacobian determinant.
    pub fn is_certified_automorphism(&self) -> bool {
        match self.jacobian() {
            Ok(j) => j.constant_value().is_some_and(|c| !c.is_zero()),
            Err(_) => false,
        }
    }
}

impl fmt::Display for PolyAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(v, p)| format!("{} -> {}", self.ring.var_name(v), p))
            .collect();
        write!(f, "{{ {} }}", parts.join(" ; "))
    }
}

impl fmt::Debug for PolyAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyAuto{self}")
    }
}

/// `exp(tD)`: `x -> sum_j t^j D^j(x) / j!`, finite by the certificate.
pub fn exp_derivation(d: &Derivation, t: &Rat, cert: &NilpotencyCertificate) -> Result<PolyAuto> {
    cert.verify(d)?;
    let ring = d.ring();
    let images = (0..ring.nvars())
        .map(|v| {
            let mut term = Poly::var(ring, v);
            let mut acc = term.clone();
            let mut factor = Rat::one();
            for j in 1..cert.degree(v) {
                term = d.apply(&term)?;
                factor = factor * t / Rat::from_integer(j.into());
                acc = &acc + &term.scale(&factor);
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyAuto {
        ring: ring.clone(),
        images,
    })
}

/// `ln(u)(x) = sum_{j>=1} (-1)^{j+1} (u* - id)^j (x) / j` on each generator.
pub fn log_automorphism(u: &PolyAuto, max_iter: usize) -> Result<Derivation> {
    let ring = u.ring();
    let mut images = Vec::with_capacity(ring.nvars());
    for v in 0..ring.nvars() {
        let mut cur = Poly::var(ring, v);
        let mut acc = Poly::zero(ring);
        let mut done = false;
        for j in 1..=max_iter {
            cur = &u.apply(&cur)? - &cur;
            if cur.is_zero() {
                done = true;
                break;
            }
            let sign = if j % 2 == 1 { 1 } else { -1 };
            acc = &acc + &cur.scale(&Rat::new(sign.into(), j.into()));
        }
        if !done {
            return Err(Error::NonTerminatingSeries {
                var: ring.var_name(v).to_string(),
                max_iter,
            });
        }
        images.push(acc);
    }
    Derivation::new(ring, images)
}

/// `x -> u(x)` with `v`'s images substituted; see the module docs for the convention.
pub fn compose_autos(u: &PolyAuto, v: &PolyAuto) -> Result<PolyAuto> {
    RingSpec::check_same(&u.ring, &v.ring)?;
    let images = u
        .images
        .iter()
        .map(|p| p.substitute(&v.images))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyAuto {
        ring: u.ring.clone(),
        images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, rat, MonomialOrder};
    use crate::derivations::check_locally_nilpotent;

    fn ring(vars: &[&str]) -> Arc<RingSpec> {
        RingSpec::free(vars, MonomialOrder::GradedLex).unwrap()
    }

    fn p(r: &Arc<RingSpec>, s: &str) -> Poly {
        parse_poly(s, r).unwrap()
    }

    fn auto(r: &Arc<RingSpec>, pairs: &[(&str, &str)]) -> PolyAuto {
        let pairs: Vec<(&str, Poly)> = pairs.iter().map(|(v, s)| (*v, p(r, s))).collect();
        PolyAuto::from_named(r, &pairs).unwrap()
    }

    fn der(r: &Arc<RingSpec>, pairs: &[(&str, &str)]) -> Derivation {
        let pairs: Vec<(&str, Poly)> = pairs.iter().map(|(v, s)| (*v, p(r, s))).collect();
        Derivation::from_named(r, &pairs).unwrap()
    }

    fn exp1(d: &Derivation, t: Rat) -> PolyAuto {
        let cert = check_locally_nilpotent(d, 64)
            .certificate()
            .unwrap()
            .clone();
        exp_derivation(d, &t, &cert).unwrap()
    }

    #[test]
    fn exp_of_translation() {
        let r = ring(&["X", "Y"]);
        let u = exp1(&der(&r, &[("X", "1")]), rat(1));
        assert_eq!(u, auto(&r, &[("X", "X + 1")]));
    }

    #[test]
    fn exp_of_example_one_family() {
        let r = ring(&["a", "b", "c", "X", "Y", "Z"]);
        let d = der(&r, &[("X", "a"), ("Y", "a*Z + b - 1/2*a*c"), ("Z", "c")]);
        let u = exp1(&d, rat(1));
        assert_eq!(
            u,
            auto(&r, &[("X", "X + a"), ("Y", "Y + a*Z + b"), ("Z", "Z + c")])
        );
    }

    #[test]
    fn exp_of_example_two_d1() {
        let r = ring(&["X", "Y", "Z"]);
        let u = exp1(&der(&r, &[("X", "Z")]), rat(1));
        assert_eq!(u, auto(&r, &[("X", "X + Z")]));
    }

    #[test]
    fn exp_rejects_a_bad_certificate() {
        let r = ring(&["X", "Y"]);
        let d = der(&r, &[("X", "Y")]);
        let bad = NilpotencyCertificate::new(vec![1, 1]);
        assert!(matches!(
            exp_derivation(&d, &rat(1), &bad),
            Err(Error::InvalidCertificate(_))
        ));
    }

    #[test]
    fn log_cases() {
        let r = ring(&["X"]);
        let d = log_automorphism(&auto(&r, &[("X", "X + 1")]), 64).unwrap();
        assert_eq!(d, der(&r, &[("X", "1")]));
        let err = log_automorphism(&auto(&r, &[("X", "2*X")]), 64).unwrap_err();
        assert!(matches!(err, Error::NonTerminatingSeries { .. }));

        let s = ring(&["a", "b", "c", "X", "Y", "Z"]);
        let u = auto(&s, &[("X", "X + a"), ("Y", "Y + a*Z + b"), ("Z", "Z + c")]);
        let d = log_automorphism(&u, 64).unwrap();
        assert_eq!(
            d,
            der(&s, &[("X", "a"), ("Y", "a*Z + b - 1/2*a*c"), ("Z", "c")])
        );
    }

    #[test]
    fn composition() {
        let r = ring(&["X"]);
        let dx = der(&r, &[("X", "1")]);
        let c = compose_autos(&exp1(&dx, rat(1)), &exp1(&dx, rat(2))).unwrap();
        assert_eq!(c, auto(&r, &[("X", "X + 3")]));

        let s = ring(&["a", "b", "c", "X", "Y", "Z"]);
        let ua = auto(&s, &[("X", "X + a"), ("Y", "Y + a*Z")]);
        let uc = auto(&s, &[("Z", "Z + c")]);
        assert_eq!(compose_autos(&PolyAuto::identity(&s), &ua).unwrap(), ua);
        let ac = compose_autos(&ua, &uc).unwrap();
        let ca = compose_autos(&uc, &ua).unwrap();
        let y = s.var_index("Y").unwrap();
        assert_eq!(&ac.images()[y] - &ca.images()[y], p(&s, "a*c"));
        for v in [0, 1, 2, 3, 5] {
            assert_eq!(ac.images()[v], ca.images()[v]);
        }
    }

    #[test]
    fn quotient_autos_must_preserve_the_relation() {
        let free = ring(&["X", "Y"]);
        let q = free.with_relation(&p(&free, "X*Y - 1")).unwrap();
        let swap = PolyAuto::new(&q, vec![p(&free, "Y"), p(&free, "X")]);
        assert!(swap.is_ok());
        let bad = PolyAuto::new(&q, vec![p(&free, "X + 1"), p(&free, "Y")]);
        assert!(matches!(bad, Err(Error::AutoNotInducedOnQuotient)));
    }
}
