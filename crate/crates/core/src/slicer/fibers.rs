use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{Poly, Rat, RingSpec};
use crate::derivations::Derivation;
use crate::error::{Error, Result};
use crate::linalg;
use crate::space::{self, Equations};
use crate::univariate::UniPoly;

/// A rational root `alpha` of some `q_i`, i.e. a fiber `f = alpha` where the
/// restricted derivations may become dependent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerateRoot {
    pub alpha: Rat,
    /// Multiplicity in `lcm(q_1, ..., q_n)`.
    pub multiplicity: usize,
    /// 1-based indices `i` with `q_i(alpha) = 0`.
    pub indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberReport {
    /// Squarefree factors of the lcm with multiplicities.
    pub factors: Vec<(UniPoly, usize)>,
    pub rational_roots: Vec<DegenerateRoot>,
    /// Squarefree parts with no rational root left after removing the linear factors.
    pub residual: Vec<(UniPoly, usize)>,
}

impl FiberReport {
    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Roots and factor structure of `lcm(q_1, ..., q_n)`.
pub fn degenerate_fibers(qs: &[UniPoly]) -> Result<FiberReport> {
    if qs.iter().any(UniPoly::is_zero) {
        return Err(Error::ZeroGenerator);
    }
    let lcm = qs.iter().fold(UniPoly::one(), |acc, q| {
        let g = acc.gcd(q);
        acc.mul(q).div_rem(&g).0.monic()
    });
    let factors = lcm.squarefree_decomposition();
    let mut roots: BTreeMap<Rat, usize> = BTreeMap::new();
    let mut residual = Vec::new();
    for (h, mult) in &factors {
        let mut rest = h.clone();
        for r in h.rational_roots() {
            *roots.entry(r.clone()).or_default() += mult;
            rest = rest.div_rem(&UniPoly::linear_root(&r)).0;
        }
        if !rest.is_constant() {
            residual.push((rest.monic(), *mult));
        }
    }
    let rational_roots = roots
        .into_iter()
        .map(|(alpha, multiplicity)| DegenerateRoot {
            indices: qs
                .iter()
                .enumerate()
                .filter(|(_, q)| q.eval(&alpha).is_zero())
                .map(|(i, _)| i + 1)
                .collect(),
            alpha,
            multiplicity,
        })
        .collect();
    Ok(FiberReport {
        factors,
        rational_roots,
        residual,
    })
}

/// The coordinate ring of the fiber `f = alpha`, with the projection of every
/// original variable.
#[derive(Debug, Clone)]
pub struct FiberRing {
    pub alpha: Rat,
    pub ring: Arc<RingSpec>,
    /// Image of each original variable in `ring`.
    pub projection: Vec<Poly>,
    /// Original variables solved for while building the fiber, with their values.
    pub eliminated: Vec<(String, Poly)>,
}

impl FiberRing {
    /// Image of an original-ring element.
    pub fn project(&self, g: &Poly) -> Result<Poly> {
        g.substitute(&self.projection)
    }

    /// Induced derivation on the fiber, checked for consistency on every eliminated
    /// variable and (for hypersurface fibers) on the relation.
    pub fn induce(&self, d: &Derivation) -> Result<Derivation> {
        let original = d.ring();
        let mut images = Vec::with_capacity(self.ring.nvars());
        for name in self.ring.vars() {
            let idx = original
                .var_index(name)
                .expect("fiber variables come from the original ring");
            images.push(self.project(d.image(idx))?);
        }
        let induced = Derivation::new(&self.ring, images)?;
        for (v, x) in original.vars().iter().enumerate() {
            let lhs = induced.apply_unchecked(&self.projection[v]);
            if lhs != self.project(d.image(v))? {
                return Err(Error::Invalid(format!(
                    "derivation does not descend to the fiber at {x}"
                )));
            }
        }
        Ok(induced)
    }
}

fn drop_var(ring: &Arc<RingSpec>, idx: usize) -> Result<(Arc<RingSpec>, Vec<Poly>)> {
    let names: Vec<&str> = ring
        .vars()
        .iter()
        .enumerate()
        .filter(|(v, _)| *v != idx)
        .map(|(_, n)| n.as_str())
        .collect();
    let reduced = RingSpec::free(&names, ring.order())?;
    let images = (0..ring.nvars())
        .map(|v| match v.cmp(&idx) {
            std::cmp::Ordering::Less => Poly::var(&reduced, v),
            std::cmp::Ordering::Equal => Poly::zero(&reduced),
            std::cmp::Ordering::Greater => Poly::var(&reduced, v - 1),
        })
        .collect();
    Ok((reduced, images))
}

/// Build the fiber ring of `f = alpha`.
///
/// On a hypersurface `f` must be a ring variable: it is set to `alpha` in the
/// relation. On a free ring the fiber is cut out by `f - alpha`. In both cases a
/// variable occurring linearly with a constant coefficient is then solved for, so
/// the fiber is either a polynomial ring or a hypersurface again.
pub fn fiber_ring(f: &Poly, alpha: &Rat) -> Result<FiberRing> {
    let ring = f.ring();
    let (base, mut projection, mut eliminated, cut) = if ring.has_relation() {
        let lm = f.leading_monomial().cloned();
        let v = match (f.len(), lm) {
            (1, Some(m)) if m.degree() == 1 && f.leading_coeff().is_one() => {
                m.exponents().iter().position(|&e| e == 1).unwrap()
            }
            _ => {
                return Err(Error::UnsupportedFiber(format!(
                    "on a hypersurface the invariant must be a variable, got {f}"
                )))
            }
        };
        let (base, mut images) = drop_var(&ring.free_version(), v)?;
        images[v] = Poly::constant(&base, alpha.clone());
        let rel = ring.relation_poly().unwrap().substitute(&images)?;
        let elim = vec![(ring.var_name(v).to_string(), images[v].clone())];
        (base, images, elim, rel)
    } else {
        let images: Vec<Poly> = (0..ring.nvars()).map(|v| Poly::var(ring, v)).collect();
        let cut = f - &Poly::constant(ring, alpha.clone());
        (ring.clone(), images, Vec::new(), cut)
    };

    if cut.is_zero() {
        return Ok(FiberRing {
            alpha: alpha.clone(),
            ring: base,
            projection,
            eliminated,
        });
    }
    if cut.is_constant() {
        return Err(Error::EmptyFiber {
            alpha: alpha.clone(),
        });
    }
    let linear = (0..base.nvars()).find_map(|w| {
        if cut.degree_in(w) != 1 {
            return None;
        }
        cut.partial(w).constant_value().map(|c| (w, c))
    });
    match linear {
        Some((w, c)) => {
            let (reduced, mut images) = drop_var(&base, w)?;
            let rest = &cut - &Poly::var(&base, w).scale(&c);
            let value = rest.substitute(&images)?.scale(&(-c.recip()));
            images[w] = value.clone();
            projection = projection
                .iter()
                .map(|p| p.substitute(&images))
                .collect::<Result<_>>()?;
            eliminated = eliminated
                .into_iter()
                .map(|(n, p)| Ok((n, p.substitute(&images)?)))
                .collect::<Result<_>>()?;
            eliminated.push((base.var_name(w).to_string(), value));
            Ok(FiberRing {
                alpha: alpha.clone(),
                ring: reduced,
                projection,
                eliminated,
            })
        }
        None => {
            let free_base = if base.has_relation() {
                base.free_version()
            } else {
                base.clone()
            };
            let hyper = free_base.with_relation(&cut)?;
            Ok(FiberRing {
                alpha: alpha.clone(),
                projection: projection
                    .iter()
                    .map(|p| p.to_ring(&hyper))
                    .collect::<Result<_>>()?,
                ring: hyper,
                eliminated,
            })
        }
    }
}

/// Whether nonzero `g_1, ..., g_n` of degree at most `bound` exist in the fiber ring
/// with `sum g_i * D_i = 0` as derivations of the fiber.
pub fn dependence_on_fiber(fiber: &FiberRing, induced: &[Derivation], bound: usize) -> bool {
    let ring = &fiber.ring;
    if induced.is_empty() {
        return false;
    }
    let monos = space::monos_desc(ring, bound);
    let width = monos.len();
    let mut eqs = Equations::new();
    let one = Rat::one();
    for (i, d) in induced.iter().enumerate() {
        for (k, m) in monos.iter().enumerate() {
            let g = Poly::monomial(ring, m.clone(), Rat::one());
            for (y, img) in d.images().iter().enumerate() {
                eqs.add(i * width + k, y, &(&g * img), &one);
            }
        }
    }
    !linalg::nullspace(eqs.into_rows(), induced.len() * width).is_empty()
}

/// Restrict `ds` to the fiber `f = alpha` and test for a nontrivial linear relation
/// with coefficients of degree at most `bound`.
pub fn fiber_dependence_check(
    ds: &[Derivation],
    f: &Poly,
    alpha: &Rat,
    bound: usize,
) -> Result<bool> {
    for d in ds {
        RingSpec::check_same(f.ring(), d.ring())?;
    }
    let fiber = fiber_ring(f, alpha)?;
    let induced = ds
        .iter()
        .map(|d| fiber.induce(d))
        .collect::<Result<Vec<_>>>()?;
    Ok(dependence_on_fiber(&fiber, &induced, bound))
}

/// Human-readable fiber description, e.g. `Q[Y,Z]` with `X = 1`.
pub fn describe_fiber(fiber: &FiberRing) -> String {
    let mut s = fiber.ring.to_string();
    if !fiber.eliminated.is_empty() {
        let subs: Vec<String> = fiber
            .eliminated
            .iter()
            .map(|(n, p)| format!("{n} = {p}"))
            .collect();
        s.push_str(&format!(" with {}", subs.join(", ")));
    }
    s
}
