use std::cmp::Ordering;
use std::fmt;

/// Exponent vector, one entry per ring variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(Vec<u32>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Mono(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Mono(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exp(&self, idx: usize) -> u32 {
        self.0[idx]
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Mono) -> Mono {
        Mono(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    /// Lower the exponent of `idx` by one; `None` if it is already zero.
    pub fn lower(&self, idx: usize) -> Option<Mono> {
        if self.0[idx] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[idx] -= 1;
        Some(Mono(e))
    }

    /// Drop the variable at `idx`, returning the shorter monomial.
    pub fn remove_var(&self, idx: usize) -> Mono {
        let mut e = self.0.clone();
        e.remove(idx);
        Mono(e)
    }

    /// Every monomial in `nvars` variables of total degree at most `bound`,
    /// in ascending graded order.
    pub fn all_up_to_degree(nvars: usize, bound: u32) -> Vec<Mono> {
        let mut out = Vec::new();
        for d in 0..=bound {
            let mut cur = vec![0u32; nvars];
            fill_degree(&mut cur, 0, d, &mut out);
        }
        out
    }
}

fn fill_degree(cur: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Mono>) {
    if cur.is_empty() {
        if remaining == 0 {
            out.push(Mono(Vec::new()));
        }
        return;
    }
    if pos + 1 == cur.len() {
        cur[pos] = remaining;
        out.push(Mono(cur.clone()));
        cur[pos] = 0;
        return;
    }
    for e in 0..=remaining {
        cur[pos] = e;
        fill_degree(cur, pos + 1, remaining - e, out);
    }
    cur[pos] = 0;
}

/// Monomial order. Variable precedence is always the declaration order of the ring:
/// the first declared variable is the largest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    GradedLex,
    Lex,
    GradedReverseLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GradedLex => a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0)),
            MonomialOrder::GradedReverseLex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::GradedLex => "grlex",
            MonomialOrder::Lex => "lex",
            MonomialOrder::GradedReverseLex => "grevlex",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "grlex" => Some(MonomialOrder::GradedLex),
            "lex" => Some(MonomialOrder::Lex),
            "grevlex" => Some(MonomialOrder::GradedReverseLex),
            _ => None,
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
