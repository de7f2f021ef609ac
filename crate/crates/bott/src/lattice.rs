//! Integer-matrix normal forms: Smith normal form for abelian-group
//! invariants and a row Hermite normal form for lattice bases.

/// Diagonal of the Smith normal form of `mat` (rows x cols, row-major rows),
/// as the list of nonzero invariant factors d1 | d2 | ... (each positive).
pub fn smith_invariant_factors(mat: &[Vec<i64>]) -> Vec<i64> {
    if mat.is_empty() {
        return Vec::new();
    }
    let mut m: Vec<Vec<i64>> = mat.to_vec();
    let rows = m.len();
    let cols = m[0].len();
    assert!(m.iter().all(|r| r.len() == cols), "ragged matrix");
    let mut factors = Vec::new();
    let mut top = 0usize;
    let mut left = 0usize;

    while top < rows && left < cols {
        // find a pivot: smallest nonzero |entry| in the remaining block
        let mut piv: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in left..cols {
                if m[i][j] != 0
                    && piv.map_or(true, |(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    piv = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        m.swap(top, pi);
        for row in m.iter_mut() {
            row.swap(left, pj);
        }

        // clear row and column by repeated reduction
        loop {
            let p = m[top][left];
            let mut dirty = false;
            for i in top + 1..rows {
                let q = div_round(m[i][left], p);
                if q != 0 {
                    for j in left..cols {
                        m[i][j] -= q * m[top][j];
                    }
                }
                if m[i][left] != 0 {
                    dirty = true;
                    // swap up the smaller remainder and restart
                    if m[i][left].abs() < m[top][left].abs() {
                        m.swap(top, i);
                    }
                }
            }
            if dirty {
                continue;
            }
            for j in left + 1..cols {
                let q = div_round(m[top][j], p);
                if q != 0 {
                    for i in top..rows {
                        let v = m[i][left];
                        m[i][j] -= q * v;
                    }
                }
                if m[top][j] != 0 {
                    // column remainder: swap columns and restart
                    for row in m.iter_mut() {
                        row.swap(left, j);
                    }
                    dirty = true;
                    break;
                }
            }
            if !dirty {
                break;
            }
        }

        // divisibility: pivot must divide every remaining entry
        let p = m[top][left].abs();
        let mut fixed = false;
        'outer: for i in top + 1..rows {
            for j in left + 1..cols {
                if m[i][j] % p != 0 {
                    // fold row i into the pivot row and redo this pivot
                    for j2 in left..cols {
                        m[top][j2] += m[i][j2];
                    }
                    fixed = true;
                    break 'outer;
                }
            }
        }
        if fixed {
            continue;
        }
        factors.push(p);
        top += 1;
        left += 1;
    }
    factors
}

fn div_round(a: i64, b: i64) -> i64 {
    // quotient minimizing |a - q b|
    let q = a / b;
    let r = a - q * b;
    if 2 * r.abs() > b.abs() {
        q + if (r < 0) == (b < 0) { 1 } else { -1 }
    } else {
        q
    }
}

/// Row Hermite normal form of the lattice spanned by the rows of `mat`:
/// returns a basis with positive leading entries, echelon-shaped, entries
/// above each pivot reduced. The number of rows returned is the lattice rank.
pub fn hermite_basis(mat: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = mat.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    let mut basis: Vec<Vec<i64>> = Vec::new();
    let mut col = 0usize;
    let mut start = 0usize;
    while col < cols {
        // gcd-reduce all rows >= start on this column
        loop {
            let mut best: Option<usize> = None;
            for i in start..rows.len() {
                if rows[i][col] != 0
                    && best.map_or(true, |b| rows[i][col].abs() < rows[b][col].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(start, b);
            let p = rows[start][col];
            let mut any = false;
            for i in start + 1..rows.len() {
                let q = rows[i][col] / p;
                if q != 0 {
                    for j in 0..cols {
                        rows[i][j] -= q * rows[start][j];
                    }
                }
                if rows[i][col] != 0 {
                    any = true;
                }
            }
            if !any {
                break;
            }
        }
        if start < rows.len() && rows[start][col] != 0 {
            if rows[start][col] < 0 {
                for v in &mut rows[start] {
                    *v = -*v;
                }
            }
            basis.push(rows[start].clone());
            start += 1;
        }
        col += 1;
    }
    // reduce entries above pivots
    for k in (0..basis.len()).rev() {
        let pivot_col = basis[k].iter().position(|&x| x != 0).unwrap();
        let p = basis[k][pivot_col];
        let upper: Vec<Vec<i64>> = basis[..k].to_vec();
        for (i, row) in upper.into_iter().enumerate() {
            let q = row[pivot_col].div_euclid(p);
            if q != 0 {
                for j in 0..cols {
                    basis[i][j] -= q * basis[k][j];
                }
            }
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_known_matrix() {
        // classic example: invariant factors 1, 3, 21
        let m = vec![
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ];
        assert_eq!(smith_invariant_factors(&m), vec![1, 3, 21]);
    }

    #[test]
    fn snf_diagonal_reorder() {
        let m = vec![vec![4, 0], vec![0, 6]];
        assert_eq!(smith_invariant_factors(&m), vec![2, 12]);
    }

    #[test]
    fn snf_zero_and_empty() {
        assert_eq!(smith_invariant_factors(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(smith_invariant_factors(&[]), Vec::<i64>::new());
    }

    #[test]
    fn snf_divisibility_chain() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]];
        let f = smith_invariant_factors(&m);
        for w in f.windows(2) {
            assert_eq!(w[1] % w[0], 0, "factors {f:?} not a divisibility chain");
        }
        assert_eq!(f, vec![2, 2, 156]);
    }

    #[test]
    fn hermite_basis_rank_and_span() {
        let m = vec![vec![2, 0, 0, 0], vec![0, 0, 2, 0], vec![0, 0, 1, 0]];
        let b = hermite_basis(&m);
        assert_eq!(b, vec![vec![2, 0, 0, 0], vec![0, 0, 1, 0]]);
    }

    #[test]
    fn hermite_basis_mixed() {
        let m = vec![vec![3, 1], vec![1, 1]];
        let b = hermite_basis(&m);
        // lattice has index 2 in Z^2: basis (1,1),(0,2) in HNF
        assert_eq!(b, vec![vec![1, 1], vec![0, 2]]);
    }
}
