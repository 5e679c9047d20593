//! Ranks of matrices over a [`Field`].

use crate::field::Field;

/// Rank of a dense matrix by Gaussian elimination. Rows are consumed.
pub fn dense_rank<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(&rows[rank][col]);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &mut head[rank];
        for x in prow[col..].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for row in tail.iter_mut() {
            if field.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for c in col..ncols {
                if !field.is_zero(&prow[c]) {
                    let t = field.mul(&factor, &prow[c]);
                    row[c] = field.sub(&row[c], &t);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A sparse column: `(row, value)` pairs, strictly increasing rows, no zeros.
pub type SparseColumn<E> = Vec<(usize, E)>;

/// Rank of a matrix given by sparse columns.
///
/// Columns are reduced against earlier pivots on their largest row index,
/// the usual reduction for boundary matrices. Pivot columns are stored with
/// a unit leading entry.
pub fn sparse_rank<F: Field>(
    field: &F,
    columns: Vec<SparseColumn<F::Elem>>,
    nrows: usize,
) -> usize {
    let mut pivot_of: Vec<Option<usize>> = vec![None; nrows];
    let mut pivots: Vec<SparseColumn<F::Elem>> = Vec::new();
    for mut col in columns {
        while let Some((low, lead)) = col.last().cloned() {
            match pivot_of[low] {
                Some(p) => {
                    // col -= lead * pivots[p]
                    col = axpy(field, &col, &lead, &pivots[p]);
                }
                None => {
                    let inv = field.inv(&lead);
                    for (_, v) in col.iter_mut() {
                        *v = field.mul(v, &inv);
                    }
                    pivot_of[low] = Some(pivots.len());
                    pivots.push(col);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `a - s * b` for sorted sparse columns.
fn axpy<F: Field>(
    field: &F,
    a: &SparseColumn<F::Elem>,
    s: &F::Elem,
    b: &SparseColumn<F::Elem>,
) -> SparseColumn<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ra = a.get(i).map(|x| x.0).unwrap_or(usize::MAX);
        let rb = b.get(j).map(|x| x.0).unwrap_or(usize::MAX);
        if ra < rb {
            out.push(a[i].clone());
            i += 1;
        } else if rb < ra {
            out.push((rb, field.neg(&field.mul(s, &b[j].1))));
            j += 1;
        } else {
            let v = field.sub(&a[i].1, &field.mul(s, &b[j].1));
            if !field.is_zero(&v) {
                out.push((ra, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    #[test]
    fn rank_depends_on_characteristic() {
        // det = 2
        let m = |f: &PrimeField| vec![vec![1, 1], vec![f.from_i64(1), f.from_i64(-1)]];
        let f2 = PrimeField::new(2).unwrap();
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(dense_rank(&f2, m(&f2)), 1);
        assert_eq!(dense_rank(&f3, m(&f3)), 2);
        let q = Rationals;
        let rows = vec![
            vec![q.from_i64(1), q.from_i64(2), q.from_i64(3)],
            vec![q.from_i64(2), q.from_i64(4), q.from_i64(6)],
        ];
        assert_eq!(dense_rank(&q, rows), 1);
    }

    fn to_columns(rows: &[Vec<u32>], ncols: usize) -> Vec<SparseColumn<u32>> {
        (0..ncols)
            .map(|c| {
                rows.iter()
                    .enumerate()
                    .filter(|(_, r)| r[c] != 0)
                    .map(|(i, r)| (i, r[c]))
                    .collect()
            })
            .collect()
    }

    proptest! {
        #[test]
        fn sparse_and_dense_ranks_agree(
            rows in proptest::collection::vec(proptest::collection::vec(0u32..5, 6), 0..7)
        ) {
            let f = PrimeField::new(5).unwrap();
            let ncols = 6;
            let sparse = sparse_rank(&f, to_columns(&rows, ncols), rows.len());
            prop_assert_eq!(sparse, dense_rank(&f, rows));
        }
    }
}
