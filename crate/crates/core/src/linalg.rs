//! Sparse exact linear algebra over Q.
//!
//! Rows are cleared to primitive integer vectors and eliminated fraction-free
//! (`a*row - b*pivot`, then divided by the content), so no rational arithmetic
//! happens inside the elimination loop. Only the final reduced echelon form is
//! converted back to rationals with unit pivots.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::Rat;

/// Sparse row: strictly increasing column indices, no zero entries.
pub type SparseRow<T> = Vec<(usize, T)>;

/// Reduced row echelon form: every row has a leading 1 at `pivot`, and every pivot
/// column is zero in all other rows. Rows are sorted by pivot.
#[derive(Debug, Clone)]
pub struct Rref {
    pub ncols: usize,
    pub rows: Vec<SparseRow<Rat>>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column, as sparse rows.
    pub fn nullspace(&self) -> Vec<SparseRow<Rat>> {
        let pivots = self.pivots();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        // column -> list of (row pivot, entry)
        let mut by_col: BTreeMap<usize, Vec<(usize, Rat)>> = BTreeMap::new();
        for row in &self.rows {
            let p = row[0].0;
            for (c, v) in &row[1..] {
                by_col.entry(*c).or_default().push((p, v.clone()));
            }
        }
        (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v: SparseRow<Rat> = by_col
                    .get(&free)
                    .map(|es| es.iter().map(|(p, e)| (*p, -e)).collect())
                    .unwrap_or_default();
                v.push((free, Rat::one()));
                v.sort_by_key(|(c, _)| *c);
                v
            })
            .collect()
    }
}

fn to_primitive_integer(row: &[(usize, Rat)]) -> SparseRow<BigInt> {
    let mut lcm = BigInt::one();
    for (_, v) in row {
        lcm = lcm.lcm(v.denom());
    }
    let ints: SparseRow<BigInt> = row
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (*c, (v * Rat::from_integer(lcm.clone())).to_integer()))
        .collect();
    make_primitive(ints)
}

fn make_primitive(mut row: SparseRow<BigInt>) -> SparseRow<BigInt> {
    let mut g = BigInt::zero();
    for (_, v) in &row {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
    if let Some((_, lead)) = row.first() {
        if lead.is_negative() {
            for (_, v) in row.iter_mut() {
                *v = -&*v;
            }
        }
    }
    row
}

/// `a*row - b*piv` where `a = piv[col]`, `b = row[col]`, removing column `col`.
fn eliminate(row: &[(usize, BigInt)], piv: &[(usize, BigInt)], col: usize) -> SparseRow<BigInt> {
    let a = lookup(piv, col).expect("pivot entry");
    let b = lookup(row, col).expect("row entry");
    let g = a.gcd(b);
    let a = a / &g;
    let b = b / &g;
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = piv.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, &a * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(&b * &piv[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, &a * &row[i - 1].1 - &b * &piv[j - 1].1)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    debug_assert!(lookup(&out, col).is_none());
    make_primitive(out)
}

fn lookup(row: &[(usize, BigInt)], col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |e| e.0)
        .ok()
        .map(|k| &row[k].1)
}

/// Reduced row echelon form of the matrix with the given sparse rows.
/// Entries in each row may come in any column order.
pub fn rref(rows: Vec<SparseRow<Rat>>, ncols: usize) -> Rref {
    // pivot column -> integer row whose leading column it is
    let mut table: BTreeMap<usize, SparseRow<BigInt>> = BTreeMap::new();
    for mut row in rows {
        row.sort_by_key(|e| e.0);
        debug_assert!(row.iter().all(|(c, _)| *c < ncols));
        let mut r = to_primitive_integer(&row);
        while let Some(&(lead, _)) = r.first() {
            match table.get(&lead) {
                Some(p) => r = eliminate(&r, p, lead),
                None => {
                    table.insert(lead, r);
                    break;
                }
            }
        }
    }
    // back substitution, from the last pivot upwards
    let pivots: Vec<usize> = table.keys().copied().collect();
    for &p in pivots.iter().rev() {
        let mut r = table.remove(&p).unwrap();
        loop {
            let next = r[1..]
                .iter()
                .map(|e| e.0)
                .find(|c| table.contains_key(c) && *c != p);
            match next {
                Some(c) => r = eliminate(&r, &table[&c], c),
                None => break,
            }
        }
        table.insert(p, r);
    }
    let rows = table
        .into_values()
        .map(|r| {
            let lead = Rat::from_integer(r[0].1.clone());
            r.into_iter()
                .map(|(c, v)| (c, Rat::from_integer(v) / &lead))
                .collect()
        })
        .collect();
    Rref { ncols, rows }
}

/// Basis of the nullspace of the matrix given by sparse rows.
pub fn nullspace(rows: Vec<SparseRow<Rat>>, ncols: usize) -> Vec<SparseRow<Rat>> {
    rref(rows, ncols).nullspace()
}

/// One solution of `A x = b` (free variables set to zero), or `None` when inconsistent.
/// `rows[k]` pairs with `rhs[k]`.
pub fn solve(rows: Vec<SparseRow<Rat>>, rhs: Vec<Rat>, ncols: usize) -> Option<Vec<Rat>> {
    assert_eq!(rows.len(), rhs.len());
    let aug: Vec<SparseRow<Rat>> = rows
        .into_iter()
        .zip(rhs)
        .map(|(mut r, b)| {
            if !b.is_zero() {
                r.push((ncols, b));
            }
            r
        })
        .collect();
    let red = rref(aug, ncols + 1);
    let mut x = vec![Rat::zero(); ncols];
    for row in &red.rows {
        let p = row[0].0;
        if p == ncols {
            return None;
        }
        if let Some((c, v)) = row.last() {
            if *c == ncols {
                x[p] = v.clone();
            }
        }
    }
    Some(x)
}

/// Dense matrix-vector product for sparse rows, used by tests and verifiers.
pub fn apply(rows: &[SparseRow<Rat>], x: &[Rat]) -> Vec<Rat> {
    rows.iter()
        .map(|r| r.iter().map(|(c, v)| v * &x[*c]).sum())
        .collect()
}
