//! Dense univariate polynomials over Q: Euclidean gcd, Yun's squarefree
//! decomposition and exact rational roots via the rational root theorem.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{format_rat, Poly, Rat, RingSpec};
use crate::error::{Error, Result};

/// Coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::new(vec![c])
    }

    /// `t - r`
    pub fn linear_root(r: &Rat) -> Self {
        UniPoly::new(vec![-r, Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().recip())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rat::zero();
        UniPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + other.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_integer(k.into()))
                .collect(),
        )
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lc = d.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            q[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(q), UniPoly::new(rem))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g = gcd(self, other)` monic.
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading_coeff().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Yun's algorithm: monic squarefree `s_k` with `self = lc * prod s_k^k`.
    /// Only factors of positive degree are returned.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut k = 1;
        loop {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), k));
            }
            b = b.div_rem(&a).0;
            if b.is_constant() {
                break;
            }
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            k += 1;
        }
        out
    }

    /// Distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Vec<Rat> {
        if self.is_constant() {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let mut p = self.clone();
        // strip the root at zero first so the constant term is nonzero
        if p.coeffs[0].is_zero() {
            roots.push(Rat::zero());
            let k = p.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
            p = UniPoly::new(p.coeffs[k..].to_vec());
        }
        if !p.is_constant() {
            let ints = integer_coeffs(&p);
            let a0 = ints[0].abs();
            let an = ints[ints.len() - 1].abs();
            let nums = divisors(&a0);
            let dens = divisors(&an);
            let mut cands: Vec<Rat> = Vec::new();
            for n in &nums {
                for d in &dens {
                    let r = Rat::new(n.clone(), d.clone());
                    cands.push(r.clone());
                    cands.push(-r);
                }
            }
            cands.sort();
            cands.dedup();
            for r in cands {
                if p.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
        roots.sort();
        roots.dedup();
        roots
    }

    /// Substitute a ring element for the variable: `q(f)`.
    pub fn eval_poly(&self, f: &Poly) -> Poly {
        let ring = f.ring();
        self.coeffs.iter().rev().fold(Poly::zero(ring), |acc, c| {
            &(&acc * f) + &Poly::constant(ring, c.clone())
        })
    }

    /// Read a polynomial in a single variable of `p`'s ring (all other exponents zero).
    pub fn from_poly(p: &Poly, var: usize) -> Result<Self> {
        let mut coeffs = vec![Rat::zero(); p.degree_in(var) as usize + 1];
        for (m, c) in p.terms() {
            if m.exponents()
                .iter()
                .enumerate()
                .any(|(v, &e)| v != var && e > 0)
            {
                return Err(Error::Invalid(format!("{p} is not univariate")));
            }
            coeffs[m.exp(var) as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    /// As a polynomial in the single variable of `ring`.
    pub fn to_poly(&self, ring: &Arc<RingSpec>) -> Poly {
        assert_eq!(ring.nvars(), 1);
        self.eval_poly(&Poly::var(ring, 0))
    }

    /// Grammar string in the variable `var`.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            match (a.is_one(), mono.is_empty()) {
                (_, true) => s.push_str(&format_rat(&a)),
                (true, false) => s.push_str(&mono),
                (false, false) => s.push_str(&format!("{}*{}", format_rat(&a), mono)),
            }
        }
        s
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

/// Primitive integer multiple of `p`.
fn integer_coeffs(p: &UniPoly) -> Vec<BigInt> {
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

/// Positive divisors by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    if let Some(v) = n.to_u64() {
        let mut d = 1u64;
        while d * d <= v {
            if v % d == 0 {
                small.push(BigInt::from(d));
                if d * d != v {
                    large.push(BigInt::from(v / d));
                }
            }
            d += 1;
        }
    } else {
        let mut d = BigInt::one();
        while &d * &d <= *n {
            if (n % &d).is_zero() {
                small.push(d.clone());
                if &d * &d != *n {
                    large.push(n / &d);
                }
            }
            d += 1;
        }
    }
    large.reverse();
    small.extend(large);
    small
}
