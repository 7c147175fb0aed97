//! Small dense integer matrices: Smith and Hermite normal forms, rational
//! solves and determinants. Sizes stay tiny (rank at most a handful), so
//! everything is plain `Vec<Vec<i64>>` with row-major storage.

use num_integer::Integer;
use num_rational::Ratio;

pub type IntMatrix = Vec<Vec<i64>>;
pub type Rat = Ratio<i64>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn transpose(a: &[Vec<i64>]) -> IntMatrix {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            debug_assert_eq!(row.len(), inner);
            (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    a.iter().map(|row| dot(row, x)).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Column `j` of `a`.
pub fn column(a: &[Vec<i64>], j: usize) -> Vec<i64> {
    a.iter().map(|row| row[j]).collect()
}

/// Matrix whose columns are the given vectors.
pub fn from_columns(cols: &[Vec<i64>], rows: usize) -> IntMatrix {
    (0..rows).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

/// Smith decomposition `u · a · v = diag(d)` with `u`, `v` unimodular and
/// `d_1 | d_2 | ...` nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub diag: Vec<i64>,
}

pub fn smith(a: &[Vec<i64>]) -> Smith {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut s: IntMatrix = a.to_vec();
    let mut u = identity(m);
    let mut v = identity(n);

    let swap_rows = |s: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize| {
        s.swap(i, j);
        u.swap(i, j);
    };
    let swap_cols = |s: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize| {
        for row in s.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
    };
    // row_i -= f * row_j
    let row_op = |s: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize, f: i64| {
        for k in 0..s[0].len() {
            s[i][k] -= f * s[j][k];
        }
        for k in 0..u[0].len() {
            u[i][k] -= f * u[j][k];
        }
    };
    let col_op = |s: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize, f: i64| {
        for row in s.iter_mut() {
            row[i] -= f * row[j];
        }
        for row in v.iter_mut() {
            row[i] -= f * row[j];
        }
    };

    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry in the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if s[i][j] != 0 && best.map_or(true, |(bi, bj)| s[i][j].abs() < s[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut s, &mut u, t, pi);
        swap_cols(&mut s, &mut v, t, pj);

        let mut clean = true;
        for i in t + 1..m {
            let f = Integer::div_floor(&s[i][t], &s[t][t]);
            row_op(&mut s, &mut u, i, t, f);
            clean &= s[i][t] == 0;
        }
        for j in t + 1..n {
            let f = Integer::div_floor(&s[t][j], &s[t][t]);
            col_op(&mut s, &mut v, j, t, f);
            clean &= s[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // divisibility: fold any offending row into row t and retry
        let p = s[t][t];
        let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| s[i][j] % p != 0));
        if let Some(i) = bad {
            row_op(&mut s, &mut u, t, i, -1);
            continue;
        }
        if p < 0 {
            for k in 0..n {
                s[t][k] = -s[t][k];
            }
            for k in 0..m {
                u[t][k] = -u[t][k];
            }
        }
        t += 1;
    }
    let diag = (0..m.min(n)).map(|i| s[i][i]).collect();
    Smith { u, v, diag }
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `gens`:
/// upper-triangular echelon rows with positive pivots and reduced entries above
/// each pivot. Zero rows are dropped.
pub fn hnf_rows(gens: &[Vec<i64>]) -> IntMatrix {
    let mut a: IntMatrix = gens.to_vec();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        loop {
            let pivot = (r..a.len()).filter(|&i| a[i][c] != 0).min_by_key(|&i| a[i][c].abs());
            let Some(p) = pivot else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                let f = Integer::div_floor(&a[i][c], &a[r][c]);
                if f != 0 {
                    for k in 0..ncols {
                        a[i][k] -= f * a[r][k];
                    }
                }
                done &= a[i][c] == 0;
            }
            if done {
                break;
            }
        }
        if a[r][c] == 0 {
            continue;
        }
        if a[r][c] < 0 {
            for x in a[r].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..r {
            let f = Integer::div_floor(&a[i][c], &a[r][c]);
            if f != 0 {
                for k in 0..ncols {
                    a[i][k] -= f * a[r][k];
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a.retain(|row| row.iter().any(|&x| x != 0));
    a
}

/// Determinant by fraction-free elimination (Bareiss).
pub fn det(a: &[Vec<i64>]) -> i64 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else { return 0 };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    (sign * m[n - 1][n - 1]) as i64
}

pub fn rank(a: &[Vec<i64>]) -> usize {
    hnf_rows(a).len()
}

/// Unique rational solution `x` of `a · x = b` when `a` has full column rank;
/// `None` if the system is inconsistent or underdetermined.
pub fn solve_rational(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<Rat>> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| row.iter().map(|&x| Rat::from_integer(x)).chain([Rat::from_integer(bi)]).collect())
        .collect();
    let mut r = 0;
    for c in 0..n {
        let p = (r..m).find(|&i| aug[i][c] != Rat::from_integer(0))?;
        aug.swap(r, p);
        let inv = Rat::from_integer(1) / aug[r][c];
        for x in aug[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..m {
            if i != r && aug[i][c] != Rat::from_integer(0) {
                let f = aug[i][c];
                for k in 0..=n {
                    let t = aug[r][k];
                    aug[i][k] -= f * t;
                }
            }
        }
        r += 1;
    }
    if aug[r..].iter().any(|row| row[n] != Rat::from_integer(0)) {
        return None;
    }
    Some((0..n).map(|i| aug[i][n]).collect())
}

/// Solve over `Z` (full column rank); `None` if the rational solution is not integral.
pub fn solve_integer(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<i64>> {
    let x = solve_rational(a, b)?;
    x.iter().map(|r| r.is_integer().then(|| r.to_integer())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_smith(a: &IntMatrix) {
        let s = smith(a);
        let d = mat_mul(&mat_mul(&s.u, a), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(x, s.diag[i]);
                } else {
                    assert_eq!(x, 0, "off-diagonal entry in {d:?}");
                }
            }
        }
        assert_eq!(det(&s.u).abs(), 1);
        assert_eq!(det(&s.v).abs(), 1);
        for w in s.diag.windows(2) {
            if w[0] != 0 {
                assert_eq!(w[1] % w[0], 0);
            } else {
                assert_eq!(w[1], 0);
            }
        }
    }

    #[test]
    fn smith_of_cartan_type_a2() {
        let a = vec![vec![2, -1], vec![-1, 2]];
        check_smith(&a);
        assert_eq!(smith(&a).diag, vec![1, 3]);
    }

    #[test]
    fn hnf_is_canonical() {
        let g1 = vec![vec![3, 0], vec![0, 3], vec![1, 1]];
        let g2 = vec![vec![1, 1], vec![0, 3], vec![6, 3]];
        assert_eq!(hnf_rows(&g1), hnf_rows(&g2));
        assert_eq!(hnf_rows(&g1), vec![vec![1, 1], vec![0, 3]]);
    }

    #[test]
    fn rational_solve() {
        let a = vec![vec![2, -1], vec![-1, 2]];
        let x = solve_rational(&a, &[1, 0]).unwrap();
        assert_eq!(x, vec![Rat::new(2, 3), Rat::new(1, 3)]);
        assert_eq!(solve_integer(&a, &[1, 0]), None);
        assert_eq!(solve_integer(&a, &[1, 1]), Some(vec![1, 1]));
    }

    proptest! {
        #[test]
        fn smith_decomposes(entries in proptest::collection::vec(-9i64..10, 12)) {
            let a: IntMatrix = entries.chunks(4).map(|c| c.to_vec()).collect();
            check_smith(&a);
            let sq: IntMatrix = a.iter().map(|r| r[..3].to_vec()).collect();
            let s3 = smith(&sq);
            prop_assert_eq!(s3.diag.iter().product::<i64>(), det(&sq).abs());
        }
    }
}
