use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::mono::{Mono, MonomialOrder};
use super::poly::Poly;
use super::Rat;
use crate::error::{Error, Result};

/// Ambient ring: `Q[vars]` or a hypersurface quotient `Q[vars]/(P)`.
///
/// The relation is stored monic and sorted descending under `order`, so its first
/// term is the leading term that normal forms are reduced against.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    vars: Vec<String>,
    order: MonomialOrder,
    relation: Option<Vec<(Mono, Rat)>>,
}

impl RingSpec {
    pub fn free<S: AsRef<str>>(vars: &[S], order: MonomialOrder) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for v in &vars {
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!(
                    "`{v}` is not a valid variable name"
                )));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidRing(format!("variable `{v}` declared twice")));
            }
        }
        Ok(Arc::new(RingSpec {
            vars,
            order,
            relation: None,
        }))
    }

    /// Quotient of the free ring on the same variables by a single polynomial.
    /// `p` may live in this ring's free version or in the ring itself (when free).
    pub fn with_relation(self: &Arc<Self>, p: &Poly) -> Result<Arc<Self>> {
        if self.relation.is_some() {
            return Err(Error::InvalidRing(
                "only a single defining relation is supported".into(),
            ));
        }
        if p.ring().vars != self.vars || p.ring().order != self.order || p.ring().has_relation() {
            return Err(Error::RingMismatch);
        }
        if p.is_constant() {
            return Err(Error::InvalidRing("relation must be nonconstant".into()));
        }
        let lc = p.leading_coeff().clone();
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| (m.clone(), c / &lc))
            .collect();
        Ok(Arc::new(RingSpec {
            vars: self.vars.clone(),
            order: self.order,
            relation: Some(terms),
        }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, idx: usize) -> &str {
        &self.vars[idx]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn has_relation(&self) -> bool {
        self.relation.is_some()
    }

    pub(crate) fn relation_terms(&self) -> Option<&[(Mono, Rat)]> {
        self.relation.as_deref()
    }

    /// Leading monomial of the relation; normal forms have no term divisible by it.
    pub fn relation_leading(&self) -> Option<&Mono> {
        self.relation.as_ref().map(|t| &t[0].0)
    }

    /// The same variables and order with no relation.
    pub fn free_version(self: &Arc<Self>) -> Arc<Self> {
        if self.relation.is_none() {
            return self.clone();
        }
        Arc::new(RingSpec {
            vars: self.vars.clone(),
            order: self.order,
            relation: None,
        })
    }

    /// The defining relation as a polynomial of the free version, if any.
    pub fn relation_poly(self: &Arc<Self>) -> Option<Poly> {
        self.relation
            .as_ref()
            .map(|t| Poly::from_sorted_terms(self.free_version(), t.clone()))
    }

    /// Whether `m` is a normal-form monomial (not divisible by the relation's leading term).
    pub fn is_standard(&self, m: &Mono) -> bool {
        match self.relation_leading() {
            Some(l) => !l.divides(m),
            None => true,
        }
    }

    /// Normal-form monomials of total degree at most `bound`, ascending in the ring order.
    pub fn standard_monomials(&self, bound: usize) -> Vec<Mono> {
        let mut all: Vec<Mono> = Mono::all_up_to_degree(self.nvars(), bound as u32)
            .into_iter()
            .filter(|m| self.is_standard(m))
            .collect();
        all.sort_by(|a, b| self.order.cmp(a, b));
        all
    }

    pub(crate) fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }

    pub(crate) fn check_same(a: &Arc<Self>, b: &Arc<Self>) -> Result<()> {
        if Self::same(a, b) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.vars.join(","))?;
        if let Some(rel) = &self.relation {
            let p = Poly::from_sorted_terms(
                Arc::new(RingSpec {
                    vars: self.vars.clone(),
                    order: self.order,
                    relation: None,
                }),
                rel.clone(),
            );
            write!(f, "/({p})")?;
        }
        write!(f, " ({})", self.order)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
