//! Exact linear algebra over the cyclotomic field, used to measure ranks of
//! graded components and jet evaluation maps.  Deterministic pivot order so
//! reports are reproducible byte for byte.

use crate::cyclotomic::Cyclotomic;

/// Row rank of a matrix given as a list of rows.
pub fn rank(rows: Vec<Vec<Cyclotomic>>) -> usize {
    pivot_columns(rows).len()
}

/// Columns receiving a pivot under left-to-right Gaussian elimination.
/// With columns ordered by graded blocks this reads off the dimension of
/// each graded piece of the row span.
pub fn pivot_columns(mut rows: Vec<Vec<Cyclotomic>>) -> Vec<usize> {
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let piv = (rank..rows.len()).find(|&i| !rows[i][c].is_zero());
        let Some(p) = piv else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][c]
            .inverse()
            .expect("pivot entry is nonzero, hence invertible");
        for j in c..cols {
            rows[rank][j] = rows[rank][j].mul_ref(&inv);
        }
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..cols {
                    let sub = f.mul_ref(&rows[rank][j]);
                    rows[i][j] = rows[i][j].sub_ref(&sub);
                }
            }
        }
        pivots.push(c);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Cyclotomic {
        Cyclotomic::from_i64(n)
    }

    #[test]
    fn rational_ranks() {
        assert_eq!(rank(vec![]), 0);
        assert_eq!(rank(vec![vec![c(0), c(0)]]), 0);
        assert_eq!(rank(vec![vec![c(1), c(2)], vec![c(2), c(4)]]), 1);
        assert_eq!(rank(vec![vec![c(1), c(2)], vec![c(0), c(3)]]), 2);
        assert_eq!(
            rank(vec![
                vec![c(1), c(0), c(1)],
                vec![c(0), c(1), c(1)],
                vec![c(1), c(1), c(2)],
            ]),
            2
        );
    }

    #[test]
    fn cyclotomic_entries() {
        let z = Cyclotomic::root_of_unity(3, 1);
        // (1, z) and (z, z^2) are proportional over Q(zeta_3)
        let rows = vec![
            vec![Cyclotomic::one(), z.clone()],
            vec![z.clone(), z.mul_ref(&z)],
        ];
        assert_eq!(rank(rows), 1);
        // (1, z) and (1, z^2) are independent
        let rows = vec![
            vec![Cyclotomic::one(), z.clone()],
            vec![Cyclotomic::one(), z.mul_ref(&z)],
        ];
        assert_eq!(rank(rows), 2);
    }
}
