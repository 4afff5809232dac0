//! Smith normal form over the integers and ranks over prime fields.
//!
//! The integer reduction runs in two phases. Unit pivots are eliminated on
//! the sparse matrix with checked `i64` arithmetic; whatever survives is a
//! (usually tiny) block without unit entries, which is diagonalized densely
//! with arbitrary-precision integers. If the sparse phase overflows, the
//! whole matrix is reduced densely instead.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Invariant factors `d_1 | d_2 | ... | d_r` of an integer matrix, `r` its rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// The factors greater than one, i.e. the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    match eliminate_units(m) {
        Some((units, residual)) => {
            let mut factors = vec![BigInt::one(); units];
            factors.extend(dense_invariant_factors(residual));
            SmithForm {
                rank: factors.len(),
                factors,
            }
        }
        None => {
            let dense = m
                .to_dense()
                .into_iter()
                .map(|row| row.into_iter().map(BigInt::from).collect())
                .collect();
            let factors = dense_invariant_factors(dense);
            SmithForm {
                rank: factors.len(),
                factors,
            }
        }
    }
}

/// Subtracts `factor * pivot` from `row`, both sorted by column.
fn axpy(row: &[(usize, i64)], pivot: &[(usize, i64)], factor: i64) -> Option<Vec<(usize, i64)>> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut a, mut b) = (0, 0);
    while a < row.len() || b < pivot.len() {
        let ca = row.get(a).map_or(usize::MAX, |e| e.0);
        let cb = pivot.get(b).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(row[a]);
            a += 1;
        } else if cb < ca {
            out.push((cb, pivot[b].1.checked_mul(factor)?.checked_neg()?));
            b += 1;
        } else {
            let v = row[a].1.checked_sub(pivot[b].1.checked_mul(factor)?)?;
            if v != 0 {
                out.push((ca, v));
            }
            a += 1;
            b += 1;
        }
    }
    Some(out)
}

/// Eliminates unit pivots. Returns the number of pivots and the residual
/// block (rows and columns without a unit entry), or `None` on overflow.
fn eliminate_units(m: &IntMatrix) -> Option<(usize, Vec<Vec<BigInt>>)> {
    let mut rows: Vec<Option<Vec<(usize, i64)>>> =
        m.clone().into_rows().into_iter().map(Some).collect();
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); m.ncols()];
    let mut heap = BinaryHeap::new();
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_ref().unwrap();
        for &(j, _) in row {
            col_rows[j].push(i);
        }
        if !row.is_empty() {
            heap.push(Reverse((row.len(), i)));
        }
    }
    let mut units = 0;
    while let Some(Reverse((len, r))) = heap.pop() {
        let Some(row) = rows[r].as_ref() else {
            continue;
        };
        if row.len() != len {
            continue;
        }
        // Among unit entries prefer the sparsest column to limit fill-in.
        let Some(&(pc, pv)) = row
            .iter()
            .filter(|e| e.1 == 1 || e.1 == -1)
            .min_by_key(|e| col_rows[e.0].len())
        else {
            continue;
        };
        let pivot = rows[r].take().unwrap();
        let others = std::mem::take(&mut col_rows[pc]);
        for r2 in others {
            if r2 == r {
                continue;
            }
            let Some(target) = rows[r2].as_ref() else {
                continue;
            };
            let Ok(k) = target.binary_search_by_key(&pc, |e| e.0) else {
                continue;
            };
            let factor = target[k].1.checked_mul(pv)?;
            let updated = axpy(target, &pivot, factor)?;
            for &(j, _) in &updated {
                if j != pc && target.binary_search_by_key(&j, |e| e.0).is_err() {
                    col_rows[j].push(r2);
                }
            }
            if !updated.is_empty() {
                heap.push(Reverse((updated.len(), r2)));
            }
            rows[r2] = Some(updated);
        }
        units += 1;
    }
    let live: Vec<Vec<(usize, i64)>> = rows
        .into_iter()
        .flatten()
        .filter(|r| !r.is_empty())
        .collect();
    let mut cols: Vec<usize> = live.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    cols.sort_unstable();
    cols.dedup();
    let residual = live
        .iter()
        .map(|row| {
            let mut dense = vec![BigInt::zero(); cols.len()];
            for &(j, v) in row {
                dense[cols.binary_search(&j).unwrap()] = BigInt::from(v);
            }
            dense
        })
        .collect();
    Some((units, residual))
}

/// Nonzero invariant factors of a dense integer matrix, in divisibility order.
fn dense_invariant_factors(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        let Some((pi, pj)) = min_abs_entry(&a, t..nrows, t..ncols) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                if !q.is_zero() {
                    let pivot_row = a[t].clone();
                    for (x, y) in a[i][t..ncols].iter_mut().zip(&pivot_row[t..ncols]) {
                        *x -= &q * y;
                    }
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // A remainder smaller than the pivot survived; move it to (t, t).
            let (mut bi, mut bj) = (t, t);
            for i in t..nrows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[bi][bj].abs() {
                    (bi, bj) = (i, t);
                }
            }
            for j in t..ncols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[bi][bj].abs() {
                    (bi, bj) = (t, j);
                }
            }
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    normalize_diagonal(&mut diag);
    diag
}

fn min_abs_entry(
    a: &[Vec<BigInt>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
                if a[i][j].abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

/// Turns a diagonal into a divisibility chain via `(a, b) -> (gcd, lcm)`.
pub(crate) fn normalize_diagonal(diag: &mut [BigInt]) {
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let mut result = 1u128;
    let mut base = a as u128 % p as u128;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    result as u64
}

/// Rank of `m` over the prime field `F_p`.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    assert!(p >= 2, "modulus must be prime");
    let reduce = |v: i64| v.rem_euclid(p as i64) as u64;
    // pivot column -> normalized row with leading entry 1 at that column
    let mut pivots: std::collections::HashMap<usize, Vec<(usize, u64)>> =
        std::collections::HashMap::new();
    for i in 0..m.nrows() {
        let mut row: Vec<(usize, u64)> = m
            .row(i)
            .iter()
            .map(|&(j, v)| (j, reduce(v)))
            .filter(|e| e.1 != 0)
            .collect();
        while let Some(&(lead, lv)) = row.first() {
            match pivots.get(&lead) {
                Some(prow) => {
                    let mut out = Vec::with_capacity(row.len() + prow.len());
                    let (mut a, mut b) = (0, 0);
                    while a < row.len() || b < prow.len() {
                        let ca = row.get(a).map_or(usize::MAX, |e| e.0);
                        let cb = prow.get(b).map_or(usize::MAX, |e| e.0);
                        if ca < cb {
                            out.push(row[a]);
                            a += 1;
                        } else if cb < ca {
                            out.push((
                                cb,
                                (p - (lv as u128 * prow[b].1 as u128 % p as u128) as u64) % p,
                            ));
                            b += 1;
                        } else {
                            let sub = (lv as u128 * prow[b].1 as u128 % p as u128) as u64;
                            let v = (row[a].1 + p - sub) % p;
                            if v != 0 {
                                out.push((ca, v));
                            }
                            a += 1;
                            b += 1;
                        }
                    }
                    row = out;
                }
                None => {
                    let inv = mod_inverse(lv, p);
                    for e in row.iter_mut() {
                        e.1 = (e.1 as u128 * inv as u128 % p as u128) as u64;
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}
