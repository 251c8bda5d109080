//! Exact dense linear algebra over `Z` (fraction-free) and over any exact field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Minimal interface for exact Gaussian elimination. Elements carry enough
/// context to produce their own zero and one (field elements need the field).
pub trait Scalar: Clone {
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn neg(&self) -> Self {
        self.zero_like().sub(self)
    }
}

impl Scalar for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
}

/// Determinant of a square integer matrix by Bareiss fraction-free elimination.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// In-place reduced row echelon form. Returns the pivot columns.
pub fn rref<T: Scalar>(rows: &mut [Vec<T>]) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for j in 0..ncols {
            rows[r][j] = rows[r][j].mul(&inv);
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..ncols {
                    let v = rows[i][j].sub(&factor.mul(&rows[r][j]));
                    rows[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Scalar>(rows: &[Vec<T>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of the right kernel `{v : M v = 0}`; `zero` supplies the scalar context.
pub fn right_kernel<T: Scalar>(rows: &[Vec<T>], ncols: usize, zero: &T) -> Vec<Vec<T>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let one = zero.one_like();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); ncols];
        v[free] = one.clone();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = m[r][free].neg();
        }
        basis.push(v);
    }
    basis
}

/// Determinant over an exact field (Gaussian elimination).
pub fn det<T: Scalar>(rows: &[Vec<T>]) -> Option<T> {
    let n = rows.len();
    let first = rows.first()?.first()?.clone();
    let mut m = rows.to_vec();
    let mut acc = first.one_like();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero());
        let Some(p) = p else {
            return Some(first.zero_like());
        };
        if p != c {
            m.swap(p, c);
            acc = acc.neg();
        }
        acc = acc.mul(&m[c][c]);
        let inv = m[c][c].inv().expect("nonzero pivot");
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].mul(&inv);
            for j in c..n {
                let v = m[i][j].sub(&f.mul(&m[c][j]));
                m[i][j] = v;
            }
        }
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = vec![
            vec![2, 0, 1],
            vec![1, 3, 2],
            vec![1, 1, 1],
        ]
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(det_bareiss(m), BigInt::zero());
        let m2 = vec![vec![BigInt::from(0), BigInt::from(1)], vec![BigInt::from(1), BigInt::from(0)]];
        assert_eq!(det_bareiss(m2), BigInt::from(-1));
    }

    #[test]
    fn kernel_of_rank_one() {
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let k = right_kernel(&rows, 3, &q(0));
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: BigRational = (0..3).map(|j| &rows[0][j] * &v[j]).sum();
            assert!(Zero::is_zero(&dot));
        }
        assert_eq!(rank(&rows), 1);
    }

    #[test]
    fn field_det() {
        let rows = vec![vec![q(1), q(2)], vec![q(3), q(4)]];
        assert_eq!(det(&rows).unwrap(), q(-2));
    }
}
