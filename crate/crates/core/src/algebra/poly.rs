use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::mono::{Mono, MonomialOrder};
use super::ring::RingSpec;
use super::{format_rat, Rat};
use crate::error::{Error, Result};

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are kept sorted descending in the ring's monomial order with no zero
/// coefficients. In a quotient ring every stored polynomial is the normal form of
/// its class, so `==` decides equality in the quotient.
#[derive(Clone)]
pub struct Poly {
    ring: Arc<RingSpec>,
    terms: Vec<(Mono, Rat)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        RingSpec::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ring: &Arc<RingSpec>) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<RingSpec>) -> Poly {
        Poly::constant(ring, Rat::one())
    }

    pub fn constant(ring: &Arc<RingSpec>, c: Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(ring);
        }
        Poly {
            ring: ring.clone(),
            terms: vec![(Mono::one(ring.nvars()), c)],
        }
    }

    pub fn var(ring: &Arc<RingSpec>, idx: usize) -> Poly {
        Poly::monomial(ring, Mono::var(ring.nvars(), idx), Rat::one())
    }

    pub fn var_named(ring: &Arc<RingSpec>, name: &str) -> Result<Poly> {
        ring.var_index(name)
            .map(|i| Poly::var(ring, i))
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn monomial(ring: &Arc<RingSpec>, m: Mono, c: Rat) -> Poly {
        Poly::from_terms(ring, std::iter::once((m, c)))
    }

    /// Collect arbitrary terms (duplicates allowed), reducing to normal form.
    pub fn from_terms<I>(ring: &Arc<RingSpec>, terms: I) -> Poly
    where
        I: IntoIterator<Item = (Mono, Rat)>,
    {
        let mut acc: HashMap<Mono, Rat> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            if c.is_zero() {
                continue;
            }
            *acc.entry(m).or_insert_with(Rat::zero) += c;
        }
        Poly::from_map(ring, acc)
    }

    pub(crate) fn from_map(ring: &Arc<RingSpec>, acc: HashMap<Mono, Rat>) -> Poly {
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero());
        match ring.relation_terms() {
            None => {
                let mut terms: Vec<_> = terms.collect();
                let order = ring.order();
                terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
                Poly {
                    ring: ring.clone(),
                    terms,
                }
            }
            Some(rel) => {
                let (_, rem) = reduce(ring.order(), rel, terms, false);
                Poly {
                    ring: ring.clone(),
                    terms: rem,
                }
            }
        }
    }

    /// Terms already sorted descending, nonzero and (for quotients) reduced.
    pub(crate) fn from_sorted_terms(ring: Arc<RingSpec>, terms: Vec<(Mono, Rat)>) -> Poly {
        Poly { ring, terms }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    /// Terms, descending in the ring's monomial order.
    pub fn terms(&self) -> &[(Mono, Rat)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The constant value if the polynomial is constant (zero included).
    pub fn constant_value(&self) -> Option<Rat> {
        match self.terms.as_slice() {
            [] => Some(Rat::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    pub fn leading_monomial(&self) -> Option<&Mono> {
        self.terms.first().map(|(m, _)| m)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading_coeff(&self) -> Rat {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// Total degree, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.exp(var))
            .max()
            .unwrap_or(0)
    }

    /// Variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&v| self.terms.iter().any(|(m, _)| m.exp(v) > 0))
            .collect()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Divide by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().recip())
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative of the stored representative, then normal form.
    pub fn partial(&self, var: usize) -> Poly {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(var);
            m.lower(var).map(|lm| (lm, c * Rat::from_integer(e.into())))
        });
        Poly::from_terms(&self.ring, terms)
    }

    pub fn partial_named(&self, name: &str) -> Result<Poly> {
        let idx = self
            .ring
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.partial(idx))
    }

    /// Substitute `images[i]` for variable `i`. The result lives in the images' ring.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::SizeMismatch {
                expected: self.ring.nvars(),
                got: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => {
                return Err(Error::Invalid(
                    "cannot substitute into a ring with no variables".into(),
                ))
            }
        };
        for p in images {
            RingSpec::check_same(&target, &p.ring)?;
        }
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::one(&target), p.clone()])
            .collect();
        let mut acc = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(&target, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[v];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
                if term.is_zero() {
                    break;
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Reinterpret the same terms in a ring with the same variables (e.g. the free
    /// version, or a quotient), reducing when the target has a relation.
    pub fn to_ring(&self, target: &Arc<RingSpec>) -> Result<Poly> {
        if target.vars() != self.ring.vars() {
            return Err(Error::RingMismatch);
        }
        if RingSpec::same(target, &self.ring) {
            return Ok(self.clone());
        }
        Ok(Poly::from_terms(target, self.terms.iter().cloned()))
    }

    /// Division by the ring's relation in its free version: `self = q*P + r` with no
    /// term of `r` divisible by the leading term of `P`. `self` must live in a free ring
    /// with the same variables as `quotient`.
    pub fn divide_by_relation(&self, quotient: &Arc<RingSpec>) -> Result<(Poly, Poly)> {
        let rel = quotient
            .relation_terms()
            .ok_or_else(|| Error::Invalid("ring has no relation".into()))?;
        if self.ring.has_relation() || self.ring.vars() != quotient.vars() {
            return Err(Error::RingMismatch);
        }
        let (q, r) = reduce(quotient.order(), rel, self.terms.iter().cloned(), true);
        let free = self.ring.clone();
        let order = free.order();
        let mut q = q;
        q.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Ok((
            Poly::from_sorted_terms(free.clone(), q),
            Poly::from_sorted_terms(free, r),
        ))
    }

    /// Evaluate a univariate-in-practice polynomial at rationals for every variable.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[v].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    fn merge(&self, other: &Poly, negate_other: bool) -> Poly {
        assert!(
            RingSpec::same(&self.ring, &other.ring),
            "polynomial arithmetic across different rings"
        );
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let sign = |c: &Rat| if negate_other { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + sign(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn product(&self, other: &Poly) -> Poly {
        assert!(
            RingSpec::same(&self.ring, &other.ring),
            "polynomial arithmetic across different rings"
        );
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        let mut acc: HashMap<Mono, Rat> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rat::zero) += ca * cb;
            }
        }
        Poly::from_map(&self.ring, acc)
    }
}

/// Key that orders monomials by a runtime monomial order.
#[derive(Clone, PartialEq, Eq)]
struct Keyed(Mono, MonomialOrder);

impl PartialOrd for Keyed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Keyed {
    fn cmp(&self, other: &Self) -> Ordering {
        self.1.cmp(&self.0, &other.0)
    }
}

/// Single-divisor multivariate division by a monic relation whose first term is its
/// leading term. Returns (quotient terms, remainder terms sorted descending).
fn reduce<I>(
    order: MonomialOrder,
    rel: &[(Mono, Rat)],
    terms: I,
    want_quotient: bool,
) -> (Vec<(Mono, Rat)>, Vec<(Mono, Rat)>)
where
    I: IntoIterator<Item = (Mono, Rat)>,
{
    let lead = &rel[0].0;
    let tail = &rel[1..];
    let mut work: BTreeMap<Keyed, Rat> = BTreeMap::new();
    for (m, c) in terms {
        if c.is_zero() {
            continue;
        }
        let e = work.entry(Keyed(m, order)).or_insert_with(Rat::zero);
        *e += c;
    }
    let mut quotient: HashMap<Mono, Rat> = HashMap::new();
    let mut rem = Vec::new();
    while let Some((Keyed(m, _), c)) = work.pop_last() {
        if c.is_zero() {
            continue;
        }
        if lead.divides(&m) {
            // m = lead * s; replace c*m by -c*s*tail, every term strictly below m.
            let s = lead.quotient_of(&m);
            for (tm, tc) in tail {
                let e = work
                    .entry(Keyed(s.mul(tm), order))
                    .or_insert_with(Rat::zero);
                *e -= &c * tc;
            }
            if want_quotient {
                *quotient.entry(s).or_insert_with(Rat::zero) += c;
            }
        } else {
            rem.push((m, c));
        }
    }
    let q = quotient.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    (q, rem)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mono = format_mono(&self.ring, m);
            match (abs.is_one(), mono.is_empty()) {
                (_, true) => f.write_str(&format_rat(&abs))?,
                (true, false) => f.write_str(&mono)?,
                (false, false) => write!(f, "{}*{}", format_rat(&abs), mono)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

fn format_mono(ring: &RingSpec, m: &Mono) -> String {
    let mut parts = Vec::new();
    for (v, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.var_name(v).to_string()),
            _ => parts.push(format!("{}^{}", ring.var_name(v), e)),
        }
    }
    parts.join("*")
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                $body(self, rhs)
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                $body(&self, rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Poly, b: &Poly| a.merge(b, false));
forward_binop!(Sub, sub, |a: &Poly, b: &Poly| a.merge(b, true));
forward_binop!(Mul, mul, |a: &Poly, b: &Poly| a.product(b));

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
