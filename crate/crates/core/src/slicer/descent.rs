use crate::algebra::{Mono, MonomialOrder, Poly};
use crate::derivations::Derivation;
use crate::error::{Error, Result};
use crate::invariants::express_in_subalgebra;

/// One round of the descent: the current element, `D_1` of it written in the slice
/// generators, and which derivation (1-based) is applied next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentStep {
    pub p: Poly,
    pub image: Poly,
    pub applied: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceDescent {
    pub slice: Poly,
    pub steps: Vec<DescentStep>,
}

impl SliceDescent {
    /// Number of derivation applications performed.
    pub fn descents(&self) -> usize {
        self.steps.iter().filter(|s| s.applied.is_some()).count()
    }
}

fn lex_leading(q: &Poly) -> Mono {
    q.terms()
        .iter()
        .map(|(m, _)| m)
        .max_by(|a, b| MonomialOrder::Lex.cmp(a, b))
        .cloned()
        .unwrap_or_else(|| Mono::one(q.ring().nvars()))
}

/// Turn a preslice of `ds[0]` into a slice.
///
/// `slice_gens[k]` is a slice of `ds[k + 1]` that the earlier derivations kill. While
/// `D_1(p) = Q(s_2, ..., s_n)` is nonconstant, replace `p` by `D_j(p)` for the smallest
/// `j` with `dQ/dt_j != 0`; the lex degree of `Q` drops each time. Finally divide by
/// the constant `D_1(p)`.
pub fn slice_descent(
    p: &Poly,
    ds: &[Derivation],
    slice_gens: &[Poly],
    bound: usize,
) -> Result<SliceDescent> {
    if ds.is_empty() || slice_gens.len() + 1 != ds.len() {
        return Err(Error::SizeMismatch {
            expected: ds.len().saturating_sub(1),
            got: slice_gens.len(),
        });
    }
    let mut p = p.clone();
    let mut steps = Vec::new();
    let mut previous: Option<Mono> = None;
    loop {
        let image = ds[0].apply(&p)?;
        let q = express_in_subalgebra(&image, slice_gens, bound)?.ok_or_else(|| {
            Error::BoundExhausted {
                stage: "slice_descent",
                bound,
                detail: format!("D1({p}) = {image} is not a polynomial in the slices"),
            }
        })?;
        if q.is_zero() {
            return Err(Error::Invalid(format!("D1({p}) = 0: not a preslice")));
        }
        if let Some(c) = q.constant_value() {
            steps.push(DescentStep {
                p: p.clone(),
                image: q,
                applied: None,
            });
            return Ok(SliceDescent {
                slice: p.scale(&c.recip()),
                steps,
            });
        }
        let lead = lex_leading(&q);
        if let Some(prev) = &previous {
            if MonomialOrder::Lex.cmp(&lead, prev) != std::cmp::Ordering::Less {
                return Err(Error::Invalid(format!(
                    "descent stalled at {p}: lex degree of {q} did not drop"
                )));
            }
        }
        previous = Some(lead);
        let j = (0..slice_gens.len())
            .find(|&k| !q.partial(k).is_zero())
            .expect("nonconstant image depends on some generator");
        steps.push(DescentStep {
            p: p.clone(),
            image: q,
            applied: Some(j + 2),
        });
        p = ds[j + 1].apply(&p)?;
    }
}
