//! Coordinate certificates, fiberwise rectification and derivations from the
//! Jacobian mates of an automorphism.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{adjugate, determinant, jacobian_det, jacobian_matrix, Poly, Rat, RingSpec};
use crate::derivations::{lie_bracket, Derivation};
use crate::error::{Error, Result};
use crate::expmap::PolyAuto;
use crate::invariants::kernel_generator;
use crate::par;
use crate::slicer::{
    degenerate_fibers, dependence_on_fiber, fiber_ring, preslice_search, rectify_full,
    triangular_basis_check, FiberReport, FiberRing, PresliceResult,
};

/// Hypotheses a certificate relies on beyond what it checks exactly.
pub const ASSUMED_HYPOTHESES: [&str; 2] = [
    "the derivations are locally nilpotent",
    "restricted commutation and the invariant ring were only checked up to the degree bound",
];

/// `f` together with slices `s_i` (`D_i s_i = 1`, `D_j s_i = 0` for `j < i`,
/// `D_i f = 0`); in a free ring
/// `(s_1, ..., s_n, f)` is a coordinate system.
#[derive(Debug, Clone)]
pub struct CoordinateCertificate {
    pub f: Poly,
    pub slices: Vec<Poly>,
    /// `det d(s_1..s_n, f)`; absent on a hypersurface.
    pub jacobian: Option<Rat>,
    pub degree_bound: usize,
    pub assumed_hypotheses: Vec<&'static str>,
}

impl CoordinateCertificate {
    /// Exact re-check of every identity recorded in the certificate.
    pub fn verify(&self, ds: &[Derivation]) -> Result<()> {
        if self.slices.len() != ds.len() {
            return Err(Error::InvalidCertificate("one slice per derivation".into()));
        }
        let ring = self.f.ring();
        for (i, d) in ds.iter().enumerate() {
            RingSpec::check_same(ring, d.ring())?;
            if !d.apply_unchecked(&self.f).is_zero() {
                return Err(Error::InvalidCertificate(format!("D{}(f) != 0", i + 1)));
            }
            for (j, s) in self.slices.iter().enumerate().skip(i) {
                let v = d.apply_unchecked(s);
                let want = if i == j {
                    Poly::one(ring)
                } else {
                    Poly::zero(ring)
                };
                if v != want {
                    return Err(Error::InvalidCertificate(format!(
                        "D{}(s{}) = {v}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        if let Some(j) = &self.jacobian {
            let mut fs = self.slices.clone();
            fs.push(self.f.clone());
            let det = jacobian_det(&fs)?;
            if det.constant_value().as_ref() != Some(j) || j.is_zero() {
                return Err(Error::InvalidCertificate(format!("Jacobian is {det}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub enum CertifyOutcome {
    Certificate(CoordinateCertificate),
    /// Some `q_i` is nonconstant: the report locates the suspicious fibers.
    Degenerate {
        f: Poly,
        preslices: Vec<PresliceResult>,
        report: FiberReport,
    },
}

fn check_family(ds: &[Derivation]) -> Result<Arc<RingSpec>> {
    let ring = ds
        .first()
        .ok_or_else(|| Error::Invalid("need at least one derivation".into()))?
        .ring()
        .clone();
    for d in ds {
        RingSpec::check_same(&ring, d.ring())?;
    }
    Ok(ring)
}

/// Triangular check, kernel generator, one preslice per derivation; a certificate
/// when every `q_i = 1`, otherwise the degenerate-fiber report.
pub fn certify_coordinate(ds: &[Derivation], bound: usize) -> Result<CertifyOutcome> {
    let ring = check_family(ds)?;
    let dim = ring.nvars() - usize::from(ring.has_relation());
    if dim != ds.len() + 1 {
        return Err(Error::SizeMismatch {
            expected: dim - 1,
            got: ds.len(),
        });
    }
    let tri = triangular_basis_check(ds, bound)?;
    if let Some(why) = tri.failure() {
        return Err(Error::NotTriangular(why));
    }
    let f = kernel_generator(&ring, ds, bound)?;
    let idx: Vec<usize> = (1..=ds.len()).collect();
    let preslices = par::map(&idx, |&i| preslice_search(i, ds, &f, bound))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    if preslices.iter().all(|p| p.q.is_constant()) {
        let slices: Vec<Poly> = preslices.into_iter().map(|p| p.p).collect();
        let jacobian = if ring.has_relation() {
            None
        } else {
            let mut fs = slices.clone();
            fs.push(f.clone());
            let det = jacobian_det(&fs)?;
            match det.constant_value() {
                Some(c) if !c.is_zero() => Some(c),
                _ => return Err(Error::NonConstantJacobian(det.to_string())),
            }
        };
        let cert = CoordinateCertificate {
            f,
            slices,
            jacobian,
            degree_bound: bound,
            assumed_hypotheses: ASSUMED_HYPOTHESES.to_vec(),
        };
        cert.verify(ds)?;
        return Ok(CertifyOutcome::Certificate(cert));
    }
    let qs: Vec<_> = preslices.iter().map(|p| p.q.clone()).collect();
    let report = degenerate_fibers(&qs)?;
    Ok(CertifyOutcome::Degenerate {
        f,
        preslices,
        report,
    })
}

/// Coordinates of a nondegenerate fiber `f = alpha`.
#[derive(Debug, Clone)]
pub struct FiberRectification {
    pub fiber: FiberRing,
    pub induced: Vec<Derivation>,
    pub coordinates: Vec<Poly>,
    pub jacobian: Option<Rat>,
    pub degree_bound: usize,
}

/// Restrict to the fiber, refuse if the restrictions are dependent there, and
/// rectify the induced family.
pub fn fiber_rectify(
    ds: &[Derivation],
    f: &Poly,
    alpha: &Rat,
    bound: usize,
) -> Result<FiberRectification> {
    let ring = check_family(ds)?;
    RingSpec::check_same(&ring, f.ring())?;
    let fiber = fiber_ring(f, alpha)?;
    let induced = ds
        .iter()
        .map(|d| fiber.induce(d))
        .collect::<Result<Vec<_>>>()?;
    if dependence_on_fiber(&fiber, &induced, bound) {
        return Err(Error::DegenerateFiber {
            alpha: alpha.clone(),
        });
    }
    let rect = rectify_full(&induced, bound)?;
    Ok(FiberRectification {
        fiber,
        induced,
        coordinates: rect.coordinates,
        jacobian: rect.jacobian,
        degree_bound: bound,
    })
}

/// The commuting derivations dual to the components of `F`: `D_i(F_j) = δ_ij`,
/// obtained from the inverse of the (constant-determinant) Jacobian matrix.
pub fn mates_to_derivations(auto: &PolyAuto) -> Result<Vec<Derivation>> {
    let ring = auto.ring().clone();
    if ring.has_relation() {
        return Err(Error::RelationNotSupported("mates_to_derivations"));
    }
    let m = jacobian_matrix(auto.images())?;
    let det = determinant(&m, &ring);
    let c = match det.constant_value() {
        Some(c) if !c.is_zero() => c,
        _ => return Err(Error::NonConstantJacobian(det.to_string())),
    };
    let adj = adjugate(&m, &ring);
    let inv = c.recip();
    let n = ring.nvars();
    let ds: Vec<Derivation> = (0..n)
        .map(|i| Derivation::from_trusted(&ring, (0..n).map(|j| adj[j][i].scale(&inv)).collect()))
        .collect();
    for (i, d) in ds.iter().enumerate() {
        for (j, fj) in auto.images().iter().enumerate() {
            let v = d.apply_unchecked(fj);
            let want = if i == j {
                Poly::one(&ring)
            } else {
                Poly::zero(&ring)
            };
            if v != want {
                return Err(Error::Invalid(format!(
                    "internal: D{}(F{}) = {v}",
                    i + 1,
                    j + 1
                )));
            }
        }
        for e in &ds[i + 1..] {
            if !lie_bracket(d, e)?.is_zero() {
                return Err(Error::Invalid(
                    "internal: mate derivations do not commute".into(),
                ));
            }
        }
    }
    Ok(ds)
}
