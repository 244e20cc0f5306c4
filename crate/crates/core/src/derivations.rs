//! k-derivations given by generator images, Lie brackets, span membership and
//! bounded local-nilpotency certificates.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{Mono, Poly, Rat, RingSpec};
use crate::error::{Error, Result};
use crate::linalg;

/// Derivation `D = sum_x images[x] * d/dx`. On a quotient ring the images are normal
/// forms and `D(P)` is known to lie in `(P)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    ring: Arc<RingSpec>,
    images: Vec<Poly>,
}

impl Derivation {
    /// Images may be given in `ring` or in its free version.
    pub fn new(ring: &Arc<RingSpec>, images: Vec<Poly>) -> Result<Self> {
        if images.len() != ring.nvars() {
            return Err(Error::SizeMismatch {
                expected: ring.nvars(),
                got: images.len(),
            });
        }
        let free = ring.free_version();
        let mut free_images = Vec::with_capacity(images.len());
        for p in &images {
            if p.ring().vars() != ring.vars() || p.ring().order() != ring.order() {
                return Err(Error::RingMismatch);
            }
            free_images.push(p.to_ring(&free)?);
        }
        if ring.has_relation() && !check_induces_on_quotient(&free_images, ring)? {
            return Err(Error::NotInducedOnQuotient);
        }
        let images = images
            .iter()
            .map(|p| p.to_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(Derivation {
            ring: ring.clone(),
            images,
        })
    }

    /// Build from `(variable name, image)` pairs; unlisted variables map to zero.
    pub fn from_named(ring: &Arc<RingSpec>, pairs: &[(&str, Poly)]) -> Result<Self> {
        let mut images = vec![Poly::zero(ring); ring.nvars()];
        for (name, p) in pairs {
            let idx = ring
                .var_index(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            images[idx] = p.clone();
        }
        Derivation::new(ring, images)
    }

    pub fn zero(ring: &Arc<RingSpec>) -> Self {
        Derivation {
            ring: ring.clone(),
            images: vec![Poly::zero(ring); ring.nvars()],
        }
    }

    /// `d/dx` on a free ring.
    pub fn partial(ring: &Arc<RingSpec>, var: usize) -> Result<Self> {
        let mut images = vec![Poly::zero(ring); ring.nvars()];
        images[var] = Poly::one(ring);
        Derivation::new(ring, images)
    }

    /// Images known to be normal forms in `ring` that induce on the quotient.
    pub(crate) fn from_trusted(ring: &Arc<RingSpec>, images: Vec<Poly>) -> Self {
        Derivation {
            ring: ring.clone(),
            images,
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

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Poly::is_zero)
    }

    pub fn apply(&self, g: &Poly) -> Result<Poly> {
        RingSpec::check_same(&self.ring, g.ring())?;
        Ok(self.apply_unchecked(g))
    }

    /// `sum_x images[x] * dg/dx` over the stored representative of `g`, then normal form.
    pub(crate) fn apply_unchecked(&self, g: &Poly) -> Poly {
        let mut acc: HashMap<Mono, Rat> = HashMap::new();
        for (m, c) in g.terms() {
            for (v, img) in self.images.iter().enumerate() {
                if img.is_zero() {
                    continue;
                }
                let Some(lower) = m.lower(v) else { continue };
                let coeff = c * Rat::from_integer(m.exp(v).into());
                for (mi, ci) in img.terms() {
                    *acc.entry(lower.mul(mi)).or_insert_with(Rat::zero) += &coeff * ci;
                }
            }
        }
        Poly::from_terms(&self.ring, acc)
    }

    /// `D^k(g)`.
    pub fn apply_power(&self, g: &Poly, k: usize) -> Result<Poly> {
        RingSpec::check_same(&self.ring, g.ring())?;
        let mut cur = g.clone();
        for _ in 0..k {
            if cur.is_zero() {
                break;
            }
            cur = self.apply_unchecked(&cur);
        }
        Ok(cur)
    }

    pub fn scale(&self, c: &Rat) -> Derivation {
        Derivation::from_trusted(&self.ring, self.images.iter().map(|p| p.scale(c)).collect())
    }

    pub fn add(&self, other: &Derivation) -> Result<Derivation> {
        RingSpec::check_same(&self.ring, &other.ring)?;
        Ok(Derivation::from_trusted(
            &self.ring,
            self.images
                .iter()
                .zip(&other.images)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Derivation) -> Result<Derivation> {
        self.add(&other.scale(&-Rat::from_integer(1.into())))
    }

    /// `g * D`, again a derivation.
    pub fn mul_poly(&self, g: &Poly) -> Result<Derivation> {
        RingSpec::check_same(&self.ring, g.ring())?;
        Ok(Derivation::from_trusted(
            &self.ring,
            self.images.iter().map(|p| p * g).collect(),
        ))
    }

    /// Restrict attention to generators: the (name, image) pairs with nonzero image.
    pub fn nonzero_images(&self) -> Vec<(&str, &Poly)> {
        self.images
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(v, p)| (self.ring.var_name(v), p))
            .collect()
    }
}

/// `{ X -> 1 ; Y -> Z }`, the session-file block syntax. Zero images are omitted.
impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .nonzero_images()
            .into_iter()
            .map(|(v, p)| format!("{v} -> {p}"))
            .collect();
        if parts.is_empty() {
            f.write_str("{ }")
        } else {
            write!(f, "{{ {} }}", parts.join(" ; "))
        }
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation{self}")
    }
}

pub fn apply_derivation(d: &Derivation, g: &Poly) -> Result<Poly> {
    d.apply(g)
}

/// Sign convention used by [`lie_bracket`].
pub const BRACKET_CONVENTION: &str = "[D, E] = D o E - E o D";

/// `[D, E] = D o E - E o D`, computed on generators.
pub fn lie_bracket(d: &Derivation, e: &Derivation) -> Result<Derivation> {
    RingSpec::check_same(&d.ring, &e.ring)?;
    let images = (0..d.ring.nvars())
        .map(|v| &d.apply_unchecked(&e.images[v]) - &e.apply_unchecked(&d.images[v]))
        .collect();
    Ok(Derivation::from_trusted(&d.ring, images))
}

/// Constants `c` with `e = sum_j c_j * basis_j` on every generator, or `None`.
pub fn k_span_membership(e: &Derivation, basis: &[Derivation]) -> Result<Option<Vec<Rat>>> {
    for b in basis {
        RingSpec::check_same(&e.ring, &b.ring)?;
    }
    // one equation per (variable, monomial) pair that occurs anywhere
    let mut row_of: HashMap<(usize, Mono), usize> = HashMap::new();
    let mut rows: Vec<linalg::SparseRow<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    let mut slot = |key: (usize, Mono), rows: &mut Vec<_>, rhs: &mut Vec<Rat>| -> usize {
        *row_of.entry(key).or_insert_with(|| {
            rows.push(Vec::new());
            rhs.push(Rat::zero());
            rows.len() - 1
        })
    };
    for (j, b) in basis.iter().enumerate() {
        for (v, img) in b.images.iter().enumerate() {
            for (m, c) in img.terms() {
                let r = slot((v, m.clone()), &mut rows, &mut rhs);
                rows[r].push((j, c.clone()));
            }
        }
    }
    for (v, img) in e.images.iter().enumerate() {
        for (m, c) in img.terms() {
            let r = slot((v, m.clone()), &mut rows, &mut rhs);
            rhs[r] = c.clone();
        }
    }
    let Some(coeffs) = linalg::solve(rows, rhs, basis.len()) else {
        return Ok(None);
    };
    let mut combo = Derivation::zero(&e.ring);
    for (c, b) in coeffs.iter().zip(basis) {
        combo = combo.add(&b.scale(c))?;
    }
    debug_assert!(combo == *e);
    Ok((combo == *e).then_some(coeffs))
}

/// Per-generator nil degrees: `D^{m_x}(x) = 0` and `D^{m_x - 1}(x) != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotencyCertificate {
    degrees: Vec<usize>,
}

impl NilpotencyCertificate {
    pub fn new(degrees: Vec<usize>) -> Self {
        NilpotencyCertificate { degrees }
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, var: usize) -> usize {
        self.degrees[var]
    }

    /// Re-apply `d` the stated number of times to each generator.
    pub fn verify(&self, d: &Derivation) -> Result<()> {
        let ring = d.ring();
        if self.degrees.len() != ring.nvars() {
            return Err(Error::SizeMismatch {
                expected: ring.nvars(),
                got: self.degrees.len(),
            });
        }
        for (v, &m) in self.degrees.iter().enumerate() {
            let bad = || Error::InvalidCertificate(ring.var_name(v).to_string());
            if m == 0 {
                return Err(bad());
            }
            let before = d.apply_power(&Poly::var(ring, v), m - 1)?;
            if before.is_zero() || !d.apply_unchecked(&before).is_zero() {
                return Err(bad());
            }
        }
        Ok(())
    }
}

/// Outcome of bounded iteration. Non-nilpotency is never claimed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Nilpotency {
    Certified(NilpotencyCertificate),
    Unknown,
}

impl Nilpotency {
    pub fn certificate(&self) -> Option<&NilpotencyCertificate> {
        match self {
            Nilpotency::Certified(c) => Some(c),
            Nilpotency::Unknown => None,
        }
    }
}

pub fn check_locally_nilpotent(d: &Derivation, max_power: usize) -> Nilpotency {
    let ring = d.ring();
    let mut degrees = Vec::with_capacity(ring.nvars());
    for v in 0..ring.nvars() {
        let mut cur = Poly::var(ring, v);
        let mut found = None;
        for k in 1..=max_power {
            cur = d.apply_unchecked(&cur);
            if cur.is_zero() {
                found = Some(k);
                break;
            }
        }
        match found {
            Some(k) => degrees.push(k),
            None => return Nilpotency::Unknown,
        }
    }
    Nilpotency::Certified(NilpotencyCertificate { degrees })
}

/// Number of applications of `d` needed to send `g` to zero, if at most `max_steps`.
pub fn steps_to_zero(d: &Derivation, g: &Poly, max_steps: usize) -> Option<usize> {
    let mut cur = g.clone();
    for k in 0..=max_steps {
        if cur.is_zero() {
            return Some(k);
        }
        cur = d.apply_unchecked(&cur);
    }
    None
}

/// Whether free-ring images define a derivation of `ring = Q[vars]/(P)`: `P | D(P)`.
/// Vacuously true on a free ring.
pub fn check_induces_on_quotient(images: &[Poly], ring: &Arc<RingSpec>) -> Result<bool> {
    let Some(p) = ring.relation_poly() else {
        return Ok(true);
    };
    if images.len() != ring.nvars() {
        return Err(Error::SizeMismatch {
            expected: ring.nvars(),
            got: images.len(),
        });
    }
    let free = p.ring().clone();
    let images = images
        .iter()
        .map(|q| q.to_ring(&free))
        .collect::<Result<Vec<_>>>()?;
    let d = Derivation::from_trusted(&free, images);
    let dp = d.apply_unchecked(&p);
    let (_, rem) = dp.divide_by_relation(ring)?;
    Ok(rem.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, rat, MonomialOrder};

    fn xyz() -> Arc<RingSpec> {
        RingSpec::free(&["X", "Y", "Z"], MonomialOrder::GradedLex).unwrap()
    }

    fn der(ring: &Arc<RingSpec>, pairs: &[(&str, &str)]) -> Derivation {
        let pairs: Vec<(&str, Poly)> = pairs
            .iter()
            .map(|(v, s)| (*v, parse_poly(s, ring).unwrap()))
            .collect();
        Derivation::from_named(ring, &pairs).unwrap()
    }

    fn ex3() -> Arc<RingSpec> {
        let free = RingSpec::free(&["X", "Y", "Z", "T"], MonomialOrder::GradedLex).unwrap();
        free.with_relation(&parse_poly("X^2*Y + X + Z^2 + T^3", &free).unwrap())
            .unwrap()
    }

    #[test]
    fn example_one_d2_on_y() {
        let r = xyz();
        let d2 = der(&r, &[("X", "1"), ("Y", "Z")]);
        let y = Poly::var(&r, 1);
        assert_eq!(d2.apply(&y).unwrap(), Poly::var(&r, 2));
        assert!(d2.apply(&Poly::constant(&r, rat(7))).unwrap().is_zero());
    }

    #[test]
    fn example_three_derivation_kills_p() {
        let r = ex3();
        let free = r.free_version();
        let d = der(&free, &[("Y", "2*Z"), ("Z", "-X^2")]);
        let p = r.relation_poly().unwrap();
        assert!(d.apply(&p).unwrap().is_zero());
        // and it is accepted on the quotient
        der(&r, &[("Y", "2*Z"), ("Z", "-X^2")]);
    }

    #[test]
    fn bracket_of_example_one() {
        let r = xyz();
        let d1 = der(&r, &[("Y", "1")]);
        let d2 = der(&r, &[("X", "1"), ("Y", "Z")]);
        let d3 = der(&r, &[("Z", "1")]);
        let b = lie_bracket(&d2, &d3).unwrap();
        assert_eq!(b, d1.scale(&rat(-1)));
        assert!(lie_bracket(&d2, &d2).unwrap().is_zero());
        assert!(lie_bracket(&d1, &d2).unwrap().is_zero());
        assert_eq!(k_span_membership(&b, &[d1]).unwrap(), Some(vec![rat(-1)]));
    }

    #[test]
    fn example_two_generators_commute() {
        let r = xyz();
        let d1 = der(&r, &[("X", "Z")]);
        let d2 = der(&r, &[("Y", "1")]);
        assert!(lie_bracket(&d1, &d2).unwrap().is_zero());
    }

    #[test]
    fn span_membership_cases() {
        let r = xyz();
        let dx = der(&r, &[("X", "1")]);
        let dy = der(&r, &[("Y", "1")]);
        let dz = der(&r, &[("Z", "1")]);
        let neg_dy = dy.scale(&rat(-1));
        assert_eq!(
            k_span_membership(&neg_dy, &[dy.clone()]).unwrap(),
            Some(vec![rat(-1)])
        );
        assert_eq!(k_span_membership(&dx, &[dy, dz]).unwrap(), None);
        assert_eq!(
            k_span_membership(&Derivation::zero(&r), &[]).unwrap(),
            Some(vec![])
        );
        assert_eq!(k_span_membership(&dx, &[]).unwrap(), None);
    }

    #[test]
    fn nilpotency_certificates() {
        let r = RingSpec::free(&["X", "Y"], MonomialOrder::GradedLex).unwrap();
        let dx = der(&r, &[("X", "1")]);
        let cert = check_locally_nilpotent(&dx, 64);
        assert_eq!(
            cert,
            Nilpotency::Certified(NilpotencyCertificate::new(vec![2, 1]))
        );
        cert.certificate().unwrap().verify(&dx).unwrap();

        let euler = der(&r, &[("X", "X")]);
        assert_eq!(check_locally_nilpotent(&euler, 10), Nilpotency::Unknown);

        let s = xyz();
        let d2 = der(&s, &[("X", "1"), ("Y", "Z")]);
        let c = check_locally_nilpotent(&d2, 64);
        assert_eq!(c.certificate().unwrap().degrees(), &[2, 2, 1]);
        assert!(NilpotencyCertificate::new(vec![1, 2, 1])
            .verify(&d2)
            .is_err());
    }

    #[test]
    fn quotient_inducement() {
        let r = ex3();
        let free = r.free_version();
        let good: Vec<Poly> = ["0", "2*Z", "-X^2", "0"]
            .iter()
            .map(|s| parse_poly(s, &free).unwrap())
            .collect();
        assert!(check_induces_on_quotient(&good, &r).unwrap());
        let dx: Vec<Poly> = ["1", "0", "0", "0"]
            .iter()
            .map(|s| parse_poly(s, &free).unwrap())
            .collect();
        assert!(!check_induces_on_quotient(&dx, &r).unwrap());
        assert!(matches!(
            Derivation::new(&r, dx),
            Err(Error::NotInducedOnQuotient)
        ));
        let plain = xyz();
        let any: Vec<Poly> = (0..3).map(|v| Poly::var(&plain, v)).collect();
        assert!(check_induces_on_quotient(&any, &plain).unwrap());
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = xyz();
        let b = RingSpec::free(&["X", "Y"], MonomialOrder::GradedLex).unwrap();
        let d = der(&a, &[("X", "1")]);
        assert!(matches!(
            d.apply(&Poly::var(&b, 0)),
            Err(Error::RingMismatch)
        ));
    }
}
