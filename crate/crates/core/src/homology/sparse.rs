//! Sparse elimination for large boundary matrices.
//!
//! Unit pivots are eliminated greedily with a Markowitz-style choice; each
//! step splits off a `[±1]` block of the Smith form without changing the rest.
//! Whatever survives is handed to the dense Smith reduction.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::snf::invariant_factors_dense;
use super::{HomologyError, IntMatrix};

/// Rank and invariant factors of an integer matrix, optionally reduced
/// modulo a prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    pub rank: usize,
    /// Invariant factors greater than one (always empty modulo a prime).
    pub torsion: Vec<u64>,
    pub unit_pivots: usize,
    pub remainder_size: (usize, usize),
}

const DENSE_LIMIT: usize = 4_000_000;

pub fn eliminate(m: &IntMatrix, modulus: Option<i64>) -> Result<Elimination, HomologyError> {
    let reduce = |v: i64| -> i64 {
        match modulus {
            Some(p) => v.rem_euclid(p),
            None => v,
        }
    };
    let mut cols: Vec<Vec<(u32, i64)>> = (0..m.cols())
        .map(|j| m.column(j).iter().map(|&(i, v)| (i, reduce(v))).filter(|e| e.1 != 0).collect())
        .collect();
    let mut row_cols: Vec<Vec<u32>> = vec![Vec::new(); m.rows()];
    for (j, col) in cols.iter().enumerate() {
        for &(i, _) in col {
            row_cols[i as usize].push(j as u32);
        }
    }
    let mut dead = vec![false; m.cols()];
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> = cols.iter().enumerate().map(|(j, c)| Reverse((c.len(), j as u32))).collect();
    let is_unit = |v: i64| modulus.is_some() || v == 1 || v == -1;
    let mut pivots = 0usize;
    let mut scratch: Vec<(u32, i64)> = Vec::new();

    while let Some(Reverse((len, c))) = heap.pop() {
        let c = c as usize;
        if dead[c] || cols[c].len() != len {
            continue;
        }
        if len == 0 {
            dead[c] = true;
            continue;
        }
        let Some(&(r, u)) = cols[c].iter().filter(|e| is_unit(e.1)).min_by_key(|e| row_cols[e.0 as usize].len()) else {
            continue;
        };
        // u^{-1}: ±1 over Z, modular inverse modulo p
        let u_inv = match modulus {
            None => u,
            Some(p) => mod_inverse(u, p),
        };
        let pivot_col = std::mem::take(&mut cols[c]);
        let touched = std::mem::take(&mut row_cols[r as usize]);
        for &cj in &touched {
            let cj = cj as usize;
            if cj == c || dead[cj] {
                continue;
            }
            let a = match cols[cj].binary_search_by_key(&r, |e| e.0) {
                Ok(k) => cols[cj][k].1,
                Err(_) => continue,
            };
            let f = match modulus {
                None => a.checked_mul(u_inv).ok_or(HomologyError::CoefficientGrowth)?,
                Some(p) => mul_mod(a, u_inv, p),
            };
            axpy(&mut scratch, &cols[cj], &pivot_col, f, modulus, &mut row_cols, cj as u32)?;
            std::mem::swap(&mut cols[cj], &mut scratch);
            heap.push(Reverse((cols[cj].len(), cj as u32)));
        }
        dead[c] = true;
        pivots += 1;
    }

    let survivors: Vec<usize> = (0..cols.len()).filter(|&j| !dead[j] && !cols[j].is_empty()).collect();
    if survivors.is_empty() {
        return Ok(Elimination { rank: pivots, torsion: Vec::new(), unit_pivots: pivots, remainder_size: (0, 0) });
    }
    if modulus.is_some() {
        unreachable!("every nonzero entry is a unit modulo a prime");
    }
    let mut rows: Vec<u32> = survivors.iter().flat_map(|&j| cols[j].iter().map(|e| e.0)).collect();
    rows.sort_unstable();
    rows.dedup();
    if rows.len() * survivors.len() > DENSE_LIMIT {
        return Err(HomologyError::RemainderTooLarge(rows.len(), survivors.len()));
    }
    let mut dense = vec![vec![BigInt::from(0); survivors.len()]; rows.len()];
    for (jj, &j) in survivors.iter().enumerate() {
        for &(i, v) in &cols[j] {
            let ii = rows.binary_search(&i).expect("row collected");
            dense[ii][jj] = BigInt::from(v);
        }
    }
    let factors = invariant_factors_dense(dense);
    let torsion = factors
        .iter()
        .filter(|f| **f != BigInt::from(1))
        .map(|f| f.to_u64().ok_or(HomologyError::CoefficientGrowth))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Elimination { rank: pivots + factors.len(), torsion, unit_pivots: pivots, remainder_size: (rows.len(), survivors.len()) })
}

// out = target - f * pivot, recording new nonzero rows of column `cj`
fn axpy(
    out: &mut Vec<(u32, i64)>,
    target: &[(u32, i64)],
    pivot: &[(u32, i64)],
    f: i64,
    modulus: Option<i64>,
    row_cols: &mut [Vec<u32>],
    cj: u32,
) -> Result<(), HomologyError> {
    out.clear();
    let (mut a, mut b) = (0, 0);
    while a < target.len() || b < pivot.len() {
        let ra = target.get(a).map_or(u32::MAX, |e| e.0);
        let rb = pivot.get(b).map_or(u32::MAX, |e| e.0);
        if ra < rb {
            out.push(target[a]);
            a += 1;
            continue;
        }
        let sub = match modulus {
            None => f.checked_mul(pivot[b].1).ok_or(HomologyError::CoefficientGrowth)?,
            Some(p) => mul_mod(f, pivot[b].1, p),
        };
        let (row, v) = if ra == rb {
            let v = match modulus {
                None => target[a].1.checked_sub(sub).ok_or(HomologyError::CoefficientGrowth)?,
                Some(p) => (target[a].1 - sub).rem_euclid(p),
            };
            a += 1;
            (rb, v)
        } else {
            row_cols[rb as usize].push(cj);
            let v = match modulus {
                None => -sub,
                Some(p) => (-sub).rem_euclid(p),
            };
            (rb, v)
        };
        b += 1;
        if v != 0 {
            out.push((row, v));
        }
    }
    Ok(())
}

fn mul_mod(a: i64, b: i64, p: i64) -> i64 {
    ((a as i128 * b as i128).rem_euclid(p as i128)) as i64
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p, a.rem_euclid(p));
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "modulus must be prime");
    t.rem_euclid(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::smith_normal_form;

    #[test]
    fn agrees_with_dense_snf() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![2, 0], vec![0, 3]],
            vec![vec![2, 4], vec![6, 8]],
            vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]],
            vec![vec![0, 0, 0]],
        ];
        for c in cases {
            let m = IntMatrix::from_dense(&c);
            let e = eliminate(&m, None).unwrap();
            let snf = smith_normal_form(&m).unwrap();
            assert_eq!(e.rank, snf.rank());
            let tors: Vec<u64> = snf.invariant_factors().into_iter().filter(|&x| x > 1).map(|x| x as u64).collect();
            assert_eq!(e.torsion, tors);
        }
    }

    #[test]
    fn mod_two_rank() {
        // boundary of the projective-plane Δ-complex style relation 2a
        let m = IntMatrix::from_dense(&[vec![2]]);
        assert_eq!(eliminate(&m, Some(2)).unwrap().rank, 0);
        assert_eq!(eliminate(&m, None).unwrap().torsion, vec![2]);
        let m = IntMatrix::from_dense(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(eliminate(&m, Some(2)).unwrap().rank, 2);
        assert_eq!(mod_inverse(3, 7), 5);
    }
}
