//! Polynomials over a prime field `F_p` with `p < 2^31`, coefficient vectors
//! constant term first and never ending in zero.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use super::IntPoly;

pub type ModPoly = Vec<u64>;

fn trim(mut v: ModPoly) -> ModPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn reduce(f: &IntPoly, p: u64) -> ModPoly {
    let pb = BigInt::from(p);
    trim(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

pub fn to_int(f: &ModPoly) -> IntPoly {
    IntPoly::new(f.iter().map(|&c| BigInt::from(c)).collect())
}

pub fn inv(a: u64, p: u64) -> u64 {
    pow_u64(a % p, p - 2, p)
}

fn pow_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn add(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn sub(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn mul(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub fn scale(a: &ModPoly, c: u64, p: u64) -> ModPoly {
    trim(a.iter().map(|&x| x * (c % p) % p).collect())
}

pub fn monic(a: &ModPoly, p: u64) -> ModPoly {
    match a.last() {
        Some(&lc) => scale(a, inv(lc, p), p),
        None => Vec::new(),
    }
}

pub fn divrem(a: &ModPoly, b: &ModPoly, p: u64) -> (ModPoly, ModPoly) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.clone());
    }
    let li = inv(*b.last().unwrap(), p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    for i in (0..q.len()).rev() {
        let t = r[i + db] * li % p;
        if t == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + p - t * bj % p) % p;
        }
        q[i] = t;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    divrem(a, b, p).1
}

pub fn gcd(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// `(g, s, t)` with `s·a + t·b = g` monic.
pub fn xgcd(a: &ModPoly, b: &ModPoly, p: u64) -> (ModPoly, ModPoly, ModPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let li = inv(*r0.last().expect("nonzero gcd"), p);
    (scale(&r0, li, p), scale(&s0, li, p), scale(&t0, li, p))
}

pub fn derivative(a: &ModPoly, p: u64) -> ModPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| (k as u64 % p) * c % p)
            .collect(),
    )
}

pub fn powmod(base: &ModPoly, e: &BigUint, m: &ModPoly, p: u64) -> ModPoly {
    let mut acc = vec![1u64];
    let b = rem(base, m, p);
    for i in (0..e.bits()).rev() {
        acc = rem(&mul(&acc, &acc, p), m, p);
        if e.bit(i) {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
    }
    rem(&acc, m, p)
}

pub fn is_squarefree(f: &ModPoly, p: u64) -> bool {
    let d = derivative(f, p);
    !d.is_empty() && gcd(f, &d, p).len() == 1
}

/// Distinct-degree factorization of a monic squarefree `f`: pairs
/// `(product of all irreducible factors of degree i, i)`.
pub fn distinct_degree(f: &ModPoly, p: u64) -> Vec<(ModPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = vec![0u64, 1];
    let pb = BigUint::from(p);
    let mut h = x.clone();
    let mut i = 0;
    while rest.len() > 1 {
        i += 1;
        if 2 * i > rest.len() - 1 {
            let d = rest.len() - 1;
            out.push((rest.clone(), d));
            break;
        }
        h = powmod(&h, &pb, &rest, p);
        let g = gcd(&rest, &sub(&h, &x, p), p);
        if g.len() > 1 {
            rest = divrem(&rest, &g, p).0;
            h = rem(&h, &rest, p);
            out.push((g, i));
        }
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting (odd `p`).
pub fn equal_degree<R: Rng>(f: &ModPoly, d: usize, p: u64, rng: &mut R) -> Vec<ModPoly> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: ModPoly = trim((0..n).map(|_| rng.random_range(0..p)).collect());
        if a.len() <= 1 {
            continue;
        }
        let g = gcd(&a, f, p);
        let split = if g.len() > 1 && g.len() < f.len() {
            Some(g)
        } else {
            let b = sub(&powmod(&a, &e, f, p), &vec![1u64], p);
            let g = gcd(&b, f, p);
            (g.len() > 1 && g.len() < f.len()).then_some(g)
        };
        if let Some(g) = split {
            let h = divrem(f, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&monic(&h, p), d, p, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of `f` mod `p`, or `None` when `p` divides the
/// leading coefficient or `f` is not squarefree mod `p`.
pub fn factor<R: Rng>(f: &IntPoly, p: u64, rng: &mut R) -> Option<Vec<ModPoly>> {
    let fp = reduce(f, p);
    if fp.len() != f.coeffs().len() || !is_squarefree(&fp, p) {
        return None;
    }
    let fm = monic(&fp, p);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&fm, p) {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out.sort();
    Some(out)
}

/// Degrees of the irreducible factors of `f` mod `p`, sorted; `None` as in [`factor`].
pub fn factor_degrees(f: &IntPoly, p: u64) -> Option<Vec<usize>> {
    let fp = reduce(f, p);
    if fp.len() != f.coeffs().len() || !is_squarefree(&fp, p) {
        return None;
    }
    let mut degs = Vec::new();
    for (g, d) in distinct_degree(&monic(&fp, p), p) {
        degs.extend(std::iter::repeat_n(d, (g.len() - 1) / d));
    }
    degs.sort_unstable();
    Some(degs)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Odd primes starting at `from`.
pub fn primes_from(from: u64) -> impl Iterator<Item = u64> {
    (from.max(3)..).filter(|&n| n % 2 == 1 && is_prime(n))
}

pub fn is_zero(a: &ModPoly) -> bool {
    a.iter().all(|c| c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn factors_x4_minus_1_mod_5() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = IntPoly::from_i64s(&[-1, 0, 0, 0, 1]);
        let fs = factor(&f, 5, &mut rng).unwrap();
        assert_eq!(fs.len(), 4);
        let mut prod = vec![1u64];
        for g in &fs {
            prod = mul(&prod, g, 5);
        }
        assert_eq!(prod, reduce(&f, 5));
    }

    #[test]
    fn degree_pattern() {
        // x^2+1 is irreducible mod 3 and splits mod 5
        let f = IntPoly::from_i64s(&[1, 0, 1]);
        assert_eq!(factor_degrees(&f, 3).unwrap(), vec![2]);
        assert_eq!(factor_degrees(&f, 5).unwrap(), vec![1, 1]);
    }

    #[test]
    fn xgcd_identity() {
        let p = 7;
        let a = vec![1, 0, 1];
        let b = vec![3, 1];
        let (g, s, t) = xgcd(&a, &b, p);
        assert_eq!(g, vec![1]);
        assert_eq!(add(&mul(&s, &a, p), &mul(&t, &b, p), p), vec![1]);
    }
}
