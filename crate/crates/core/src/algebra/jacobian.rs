use std::sync::Arc;

use super::poly::Poly;
use super::ring::RingSpec;
use crate::error::{Error, Result};

/// Matrix of partials `J[i][j] = dF_i/dx_j`.
pub fn jacobian_matrix(fs: &[Poly]) -> Result<Vec<Vec<Poly>>> {
    let ring = check_square(fs)?;
    Ok(fs
        .iter()
        .map(|f| (0..ring.nvars()).map(|j| f.partial(j)).collect())
        .collect())
}

/// Exact Jacobian determinant of a list of `n` polynomials in an `n`-variable free ring.
pub fn jacobian_det(fs: &[Poly]) -> Result<Poly> {
    let m = jacobian_matrix(fs)?;
    Ok(determinant(&m, &fs[0].ring().clone()))
}

fn check_square(fs: &[Poly]) -> Result<Arc<RingSpec>> {
    let ring = match fs.first() {
        Some(f) => f.ring().clone(),
        None => {
            return Err(Error::SizeMismatch {
                expected: 1,
                got: 0,
            })
        }
    };
    if ring.has_relation() {
        return Err(Error::RelationNotSupported("jacobian_det"));
    }
    if fs.len() != ring.nvars() {
        return Err(Error::SizeMismatch {
            expected: ring.nvars(),
            got: fs.len(),
        });
    }
    for f in fs {
        RingSpec::check_same(&ring, f.ring())?;
    }
    Ok(ring)
}

/// Determinant over the polynomial ring by dynamic programming on column subsets
/// (Laplace expansion along rows, each minor computed once).
pub fn determinant(m: &[Vec<Poly>], ring: &Arc<RingSpec>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(ring);
    }
    assert!(n < usize::BITS as usize, "matrix too large");
    let full = (1usize << n) - 1;
    let mut minors: Vec<Option<Poly>> = vec![None; 1 << n];
    minors[0] = Some(Poly::one(ring));
    for set in 0..full {
        let Some(cur) = minors[set].take() else {
            continue;
        };
        if cur.is_zero() {
            continue;
        }
        let row = set.count_ones() as usize;
        for c in 0..n {
            if set & (1 << c) != 0 || m[row][c].is_zero() {
                continue;
            }
            // sign of inserting column c after the columns already used
            let larger = (set >> (c + 1)).count_ones();
            let term = &cur * &m[row][c];
            let term = if larger % 2 == 1 { -term } else { term };
            let slot = &mut minors[set | (1 << c)];
            *slot = Some(match slot.take() {
                Some(p) => &p + &term,
                None => term,
            });
        }
        minors[set] = Some(cur);
    }
    minors[full].take().unwrap_or_else(|| Poly::zero(ring))
}

/// Adjugate: `adj[j][i] = (-1)^(i+j) * det(minor without row i, column j)`, so that
/// `M * adj = det(M) * I`.
pub fn adjugate(m: &[Vec<Poly>], ring: &Arc<RingSpec>) -> Vec<Vec<Poly>> {
    let n = m.len();
    let mut adj = vec![vec![Poly::zero(ring); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<Poly>> = m
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != i)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let d = determinant(&minor, ring);
            adj[j][i] = if (i + j) % 2 == 1 { -d } else { d };
        }
    }
    adj
}
