//! Dense GF(2) row reduction on packed `u64` rows.

#[inline]
pub(crate) fn bit(row: &[u64], col: usize) -> bool {
    (row[col / 64] >> (col % 64)) & 1 == 1
}

#[inline]
pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Reduced row echelon form of `rows` in place.
///
/// Returns the pivot column of each of the first `rank` rows; rows past the
/// rank are zero. When `track` is given, the same row operations are applied
/// to it, so `track` ends up as the transform `A` with `A · rows_in = rows_out`.
pub(crate) fn rref(rows: &mut [Vec<u64>], mut track: Option<&mut [Vec<u64>]>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len() * 64);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| bit(&rows[i], col)) else {
            continue;
        };
        rows.swap(r, p);
        if let Some(t) = track.as_deref_mut() {
            t.swap(r, p);
        }
        for i in 0..rows.len() {
            if i != r && bit(&rows[i], col) {
                let (src, dst) = pick_pair(rows, r, i);
                xor_into(dst, src);
                if let Some(t) = track.as_deref_mut() {
                    let (src, dst) = pick_pair(t, r, i);
                    xor_into(dst, src);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

fn pick_pair(rows: &mut [Vec<u64>], src: usize, dst: usize) -> (&[u64], &mut [u64]) {
    if src < dst {
        let (a, b) = rows.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = rows.split_at_mut(src);
        (&b[0], &mut a[dst])
    }
}

pub(crate) fn rank(rows: &[Vec<u64>]) -> usize {
    let mut work = rows.to_vec();
    rref(&mut work, None).len()
}

/// Reduces `v` against an RREF basis with the given pivots; returns the residue.
pub(crate) fn reduce(basis: &[Vec<u64>], pivots: &[usize], v: &[u64]) -> Vec<u64> {
    let mut out = v.to_vec();
    for (row, &p) in basis.iter().zip(pivots) {
        if bit(&out, p) {
            xor_into(&mut out, row);
        }
    }
    out
}
