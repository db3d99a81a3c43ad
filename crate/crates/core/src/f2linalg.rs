//! Small dense linear algebra over F_2 with rows packed into `u64` masks.

/// Rank of the row span.
pub fn rank(rows: &[u64]) -> usize {
    let mut rows = rows.to_vec();
    reduce(&mut rows).len()
}

/// Reduced row-echelon form: pivots descending, each pivot cleared from every
/// other row, zero rows dropped. The result is a canonical basis of the span.
pub fn rref(rows: &[u64]) -> Vec<u64> {
    let mut rows = rows.to_vec();
    reduce(&mut rows)
}

fn reduce(rows: &mut Vec<u64>) -> Vec<u64> {
    let mut out = Vec::new();
    for bit in (0..64).rev() {
        let mask = 1u64 << bit;
        let Some(pos) = rows.iter().position(|r| r & mask != 0) else {
            continue;
        };
        let pivot = rows.swap_remove(pos);
        for r in rows.iter_mut() {
            if *r & mask != 0 {
                *r ^= pivot;
            }
        }
        for r in out.iter_mut() {
            if *r & mask != 0 {
                *r ^= pivot;
            }
        }
        out.push(pivot);
    }
    out
}
