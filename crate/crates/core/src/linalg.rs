//! Dense linear algebra over a [`FieldCtx`] and canonical subspace enumeration.

use crate::gf_tower::{Elem, FieldCtx};

pub type Row = Vec<Elem>;

/// Reduces `rows` in place to reduced row-echelon form, dropping zero rows.
/// Returns the pivot columns.
pub fn rref(f: &FieldCtx, rows: &mut Vec<Row>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = f.inv(rows[r][c]).unwrap();
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in 0..ncols {
                    let v = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(f: &FieldCtx, rows: &[Row]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

/// Basis of `{x : M x = 0}` for `M` given by rows with `ncols` columns.
pub fn nullspace(f: &FieldCtx, rows: &[Row], ncols: usize) -> Vec<Row> {
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; ncols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(m[r][free]);
        }
        out.push(v);
    }
    out
}

/// Some solution of `M x = rhs`, if one exists.
pub fn solve(f: &FieldCtx, rows: &[Row], rhs: &[Elem]) -> Option<Row> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut aug: Vec<Row> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut a = r.clone();
            a.push(b);
            a
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![0; ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][ncols];
    }
    Some(x)
}

pub fn mat_mul(f: &FieldCtx, a: &[Row], b: &[Row]) -> Vec<Row> {
    let inner = b.len();
    let ncols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|ar| {
            (0..ncols)
                .map(|j| (0..inner).fold(0, |acc, k| f.add(acc, f.mul(ar[k], b[k][j]))))
                .collect()
        })
        .collect()
}

pub fn transpose(a: &[Row]) -> Vec<Row> {
    let ncols = a.first().map_or(0, |r| r.len());
    (0..ncols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn dot(f: &FieldCtx, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// `a + c * b`, entrywise.
pub fn axpy(f: &FieldCtx, a: &[Elem], c: Elem, b: &[Elem]) -> Row {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, f.mul(c, y))).collect()
}

pub fn scale(f: &FieldCtx, c: Elem, a: &[Elem]) -> Row {
    a.iter().map(|&x| f.mul(c, x)).collect()
}

/// Dimension of the intersection of two row spaces.
pub fn intersection_dim(f: &FieldCtx, a: &[Row], b: &[Row]) -> usize {
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    rank(f, a) + rank(f, b) - rank(f, &both)
}

/// True iff every row of `b` lies in the row space of `a`.
pub fn spans_contain(f: &FieldCtx, a: &[Row], b: &[Row]) -> bool {
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    rank(f, a) == rank(f, &both)
}

/// Every element of `F^dim` as a coordinate vector, in packed counting order.
pub fn all_vectors(order: u32, dim: usize) -> impl Iterator<Item = Row> {
    let total = (order as u64).pow(dim as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![0; dim];
        for x in v.iter_mut() {
            *x = (k % order as u64) as Elem;
            k /= order as u64;
        }
        v
    })
}

/// Calls `visit` once per `k`-dimensional subspace of an `dim`-dimensional
/// space over a field with `order` elements, passing the subspace's reduced
/// row-echelon basis.
///
/// Entries are element indices with `0` the zero and `1` the identity, so any
/// indexing of a field's elements with that convention works (this is used
/// for fields realized as ideals of a group ring). Returning `false` from
/// `visit` stops the enumeration early.
pub fn for_each_rref<V>(dim: usize, k: usize, order: u32, mut visit: V)
where
    V: FnMut(&[Row]) -> bool,
{
    if k > dim {
        return;
    }
    let mut piv: Vec<usize> = (0..k).collect();
    loop {
        let mut free = Vec::new();
        let mut rows = vec![vec![0 as Elem; dim]; k];
        for (r, &pc) in piv.iter().enumerate() {
            rows[r][pc] = 1;
            for c in pc + 1..dim {
                if !piv.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        // odometer over the free entries
        loop {
            if !visit(&rows) {
                return;
            }
            let mut i = 0;
            loop {
                if i == free.len() {
                    break;
                }
                let (r, c) = free[i];
                rows[r][c] += 1;
                if rows[r][c] < order {
                    break;
                }
                rows[r][c] = 0;
                i += 1;
            }
            if i == free.len() {
                break;
            }
        }
        // next pivot combination
        let mut j = k;
        let advanced = loop {
            if j == 0 {
                break false;
            }
            j -= 1;
            if piv[j] < dim - k + j {
                piv[j] += 1;
                for l in j + 1..k {
                    piv[l] = piv[l - 1] + 1;
                }
                break true;
            }
        };
        if !advanced {
            return;
        }
    }
}
