//! Integral LLL reduction (exact, fraction-free) and integer-relation search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::ball::CBall;
use super::dyadic::{Dyadic, Round};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Rounds `a / b` to the nearest integer (`b > 0`).
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two_a: BigInt = a * 2 + b;
    two_a.div_floor(&(b * BigInt::from(2)))
}

/// LLL-reduces linearly independent integer row vectors with δ = 3/4.
/// Uses the all-integer variant with subdeterminants `d_j` and scaled Gram–Schmidt
/// coefficients `λ_{ij} = d_j μ_{ij}`.
pub fn lll_reduce(basis: &mut [Vec<BigInt>]) {
    let n = basis.len();
    if n < 2 {
        return;
    }
    // d[0] = 1, d[j+1] = det of the Gram matrix of the first j+1 vectors
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n]; n];
    d[0] = BigInt::from(1);
    d[1] = dot(&basis[0], &basis[0]);
    let mut kmax = 0usize;
    let mut k = 1usize;

    let red = |basis: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize| {
        if (&lam[k][l] * BigInt::from(2)).abs() > d[l + 1] {
            let q = round_div(&lam[k][l], &d[l + 1]);
            let bl = basis[l].clone();
            for (x, y) in basis[k].iter_mut().zip(&bl) {
                *x -= &q * y;
            }
            lam[k][l] -= &q * &d[l + 1];
            for i in 0..l {
                let t = &q * &lam[l][i];
                lam[k][i] -= t;
            }
        }
    };

    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&basis[k], &basis[j]);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "LLL input vectors are dependent");
                    d[k + 1] = u;
                }
            }
        }
        red(basis, &mut lam, &d, k, k - 1);
        let lhs = BigInt::from(4) * &d[k + 1] * &d[k - 1];
        let rhs = BigInt::from(3) * &d[k] * &d[k] - BigInt::from(4) * &lam[k][k - 1] * &lam[k][k - 1];
        if lhs < rhs {
            // swap k and k-1
            basis.swap(k, k - 1);
            for j in 0..k - 1 {
                let t = lam[k][j].clone();
                lam[k][j] = lam[k - 1][j].clone();
                lam[k - 1][j] = t;
            }
            let l = lam[k][k - 1].clone();
            let b = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
            for i in k + 1..=kmax {
                let t = lam[i][k].clone();
                lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &l * &t) / &d[k];
                lam[i][k - 1] = (&b * &t + &l * &lam[i][k]) / &d[k + 1];
            }
            d[k] = b;
            if k > 1 {
                k -= 1;
            }
        } else {
            for l in (0..k - 1).rev() {
                red(basis, &mut lam, &d, k, l);
            }
            k += 1;
        }
    }
}

/// Candidate integer relations `Σ a_i v_i ≈ 0` among complex values given as
/// disks, using a lattice scaled by `2^bits`. Returns reduced basis vectors
/// (first coordinates = relation), shortest first.
pub fn integer_relations(values: &[CBall], bits: u32) -> Vec<Vec<BigInt>> {
    let n = values.len();
    let scale = |x: &Dyadic| -> BigInt {
        let v = x.shl(bits as i64).round_to_exp(0, Round::Nearest);
        // exponent is now >= 0
        v.mant() << v.exp().max(0) as usize
    };
    let mut basis: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row = vec![BigInt::zero(); n + 2];
            row[i] = BigInt::from(1);
            row[n] = scale(&values[i].re);
            row[n + 1] = scale(&values[i].im);
            row
        })
        .collect();
    lll_reduce(&mut basis);
    basis.into_iter().map(|mut r| {
        r.truncate(n);
        r
    }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn reduces_classic_example() {
        let mut b = vec![v(&[1, 1, 1]), v(&[-1, 0, 2]), v(&[3, 5, 6])];
        lll_reduce(&mut b);
        assert_eq!(b[0], v(&[0, 1, 0]));
        // reduced basis spans the same lattice: determinant ±3
        let det = crate::linalg::det_bareiss(b.clone());
        assert_eq!(det.abs(), BigInt::from(3));
    }

    #[test]
    fn finds_golden_ratio_relation() {
        // φ² - φ - 1 = 0
        let phi = Dyadic::from_rational(
            &num_rational::BigRational::from_float(1.618033988749895f64).unwrap(),
            53,
            Round::Nearest,
        );
        let vals = vec![
            CBall::exact(phi.square(), Dyadic::zero()),
            CBall::exact(phi.clone(), Dyadic::zero()),
            CBall::exact(Dyadic::one(), Dyadic::zero()),
        ];
        let rel = &integer_relations(&vals, 40)[0];
        let sign = if rel[0].is_negative() { -1 } else { 1 };
        let rel: Vec<BigInt> = rel.iter().map(|x| x * sign).collect();
        assert_eq!(rel, v(&[1, -1, -1]));
    }
}
