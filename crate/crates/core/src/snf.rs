//! Smith normal form over the integers and linear solving over `Z_(p)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, each diagonal entry
/// dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: Matrix,
    pub v: Matrix,
    pub diagonal: Vec<BigInt>,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn swap_cols(m: &mut Matrix, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

/// `row[dst] -= q * row[src]`
fn row_axpy(m: &mut Matrix, dst: usize, src: usize, q: &BigInt) {
    let src_row = m[src].clone();
    for (x, s) in m[dst].iter_mut().zip(src_row.iter()) {
        *x -= q * s;
    }
}

/// `col[dst] -= q * col[src]`
fn col_axpy(m: &mut Matrix, dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let s = row[src].clone();
        row[dst] -= q * s;
    }
}

fn negate_row(m: &mut Matrix, i: usize) {
    for x in m[i].iter_mut() {
        *x = -x.clone();
    }
}

/// Smith normal form of an `rows × cols` integer matrix.
pub fn smith_normal_form(a: &Matrix) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut d = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // least nonzero |entry| in the trailing block
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !d[i][j].is_zero()
                        && pivot.is_none_or(|(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break;
            };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if !d[i][t].is_zero() {
                    let q = d[i][t].div_floor(&d[t][t]);
                    row_axpy(&mut d, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                    clean &= d[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !d[t][j].is_zero() {
                    let q = d[t][j].div_floor(&d[t][t]);
                    col_axpy(&mut d, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                    clean &= d[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // the pivot must divide the whole trailing block
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !(&d[i][j] % &d[t][t]).is_zero()));
            match offender {
                Some(i) => {
                    // row t += row i brings a non-multiple into row t
                    let minus_one = -BigInt::one();
                    row_axpy(&mut d, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    let diagonal = (0..rows.min(cols)).map(|i| d[i][i].clone()).collect();
    SmithForm {
        u,
        v,
        diagonal,
        rows,
        cols,
    }
}

fn coprime_to(r: &BigRational, p: u64) -> bool {
    !(r.denom() % BigInt::from(p)).is_zero()
}

/// A solution of `A·x = b` with every entry in `Z_(p)` (denominators prime to `p`),
/// or `None` if none exists. Free variables are set to zero.
pub fn solve_p_local(a: &Matrix, b: &[BigInt], p: u64) -> Option<Vec<BigRational>> {
    let snf = smith_normal_form(a);
    let c: Vec<BigInt> = snf
        .u
        .iter()
        .map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum())
        .collect();
    let r = snf.rank();
    if c[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut y = vec![BigRational::zero(); snf.cols];
    for i in 0..r {
        let q = BigRational::new(c[i].clone(), snf.diagonal[i].clone());
        if !coprime_to(&q, p) {
            return None;
        }
        y[i] = q;
    }
    let x = snf
        .v
        .iter()
        .map(|row| {
            row.iter()
                .zip(&y)
                .map(|(vij, yj)| BigRational::from_integer(vij.clone()) * yj)
                .sum()
        })
        .collect();
    Some(x)
}

/// True iff the denominator of `r` is prime to `p`.
pub fn is_p_integral(r: &BigRational, p: u64) -> bool {
    coprime_to(r, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    /// Fraction-free determinant (Bareiss).
    fn det(a: &Matrix) -> BigInt {
        let n = a.len();
        let mut a = a.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    fn check(a: &Matrix) {
        let s = smith_normal_form(a);
        let d = mat_mul(&mat_mul(&s.u, a), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(x, &s.diagonal[i]);
                } else {
                    assert!(x.is_zero());
                }
            }
        }
        for w in s.diagonal.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero());
            } else {
                assert!(w[1].is_zero());
            }
        }
        assert!(s.diagonal.iter().all(|x| !x.is_negative()));
        assert_eq!(det(&s.u).abs(), BigInt::one());
        assert_eq!(det(&s.v).abs(), BigInt::one());
    }

    #[test]
    fn known_forms() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        check(&a);
        check(&m(&[&[0, 0], &[0, 0], &[0, 3]]));
        check(&m(&[&[4, 6]]));
    }

    #[test]
    fn p_local_solving() {
        // 2x = 1 is solvable over Z_(3) but not over Z_(2)
        let a = m(&[&[2]]);
        let b = [BigInt::one()];
        assert_eq!(
            solve_p_local(&a, &b, 3),
            Some(vec![BigRational::new(1.into(), 2.into())])
        );
        assert_eq!(solve_p_local(&a, &b, 2), None);
        // inconsistent
        let a = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve_p_local(&a, &[BigInt::one(), BigInt::zero()], 5), None);
    }

    proptest! {
        #[test]
        fn snf_invariants(entries in proptest::collection::vec(-20i64..20, 12), shape in 0usize..3) {
            let (r, c) = [(3, 4), (4, 3), (2, 6)][shape];
            let a: Matrix = entries.chunks(c).take(r).map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect();
            check(&a);
        }

        #[test]
        fn solutions_solve(entries in proptest::collection::vec(-6i64..6, 9), rhs in proptest::collection::vec(-6i64..6, 3), p in prop::sample::select(vec![2u64, 3, 5])) {
            let a: Matrix = entries.chunks(3).map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let b: Vec<BigInt> = rhs.iter().map(|&x| BigInt::from(x)).collect();
            if let Some(x) = solve_p_local(&a, &b, p) {
                prop_assert!(x.iter().all(|q| is_p_integral(q, p)));
                for (row, bi) in a.iter().zip(&b) {
                    let lhs: BigRational = row.iter().zip(&x).map(|(aij, xj)| BigRational::from_integer(aij.clone()) * xj).sum();
                    prop_assert_eq!(lhs, BigRational::from_integer(bi.clone()));
                }
            }
        }
    }
}
