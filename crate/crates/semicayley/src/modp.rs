//! Dense polynomial arithmetic over F_p with u64 coefficients, ascending
//! order. Shared by the p-adic square-root kernel (interpolation, inversion
//! modulo the cyclotomic polynomial) and the character-table engine
//! (root extraction from characteristic polynomials).

use crate::cyclotomic::embed::{inv_mod, mul_mod};

pub fn trim(f: &mut Vec<u64>) {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
}

pub fn is_zero(f: &[u64]) -> bool {
    f.iter().all(|&c| c == 0)
}

pub fn degree(f: &[u64]) -> usize {
    let mut d = f.len();
    while d > 1 && f[d - 1] == 0 {
        d -= 1;
    }
    d - 1
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] = c % p;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] = (out[i] + p - c % p) % p;
    }
    trim(&mut out);
    out
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if is_zero(a) || is_zero(b) {
        return vec![0];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (j, &cb) in b.iter().enumerate() {
            if cb != 0 {
                out[i + j] = (out[i + j] + mul_mod(ca, cb, p)) % p;
            }
        }
    }
    trim(&mut out);
    out
}

pub fn scale(a: &[u64], k: u64, p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().map(|&c| mul_mod(c, k, p)).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; the divisor need not be monic.
pub fn divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = degree(b);
    assert!(!is_zero(b), "division by zero polynomial");
    let lead_inv = inv_mod(b[db], p);
    if degree(&rem) < db || is_zero(&rem) {
        return (vec![0], rem);
    }
    let mut quot = vec![0u64; degree(&rem) - db + 1];
    for k in (0..quot.len()).rev() {
        let c = mul_mod(rem[k + db] % p, lead_inv, p);
        if c == 0 {
            continue;
        }
        quot[k] = c;
        for j in 0..=db {
            let t = mul_mod(b[j], c, p);
            rem[k + j] = (rem[k + j] + p - t) % p;
        }
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    while !is_zero(&r1) {
        let (_, r) = divmod(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
    }
    if !is_zero(&r0) {
        let d = degree(&r0);
        let inv = inv_mod(r0[d], p);
        return scale(&r0, inv, p);
    }
    r0
}

/// Inverse of `f` modulo `modulus` over F_p; `None` if not coprime.
pub fn inverse_mod(f: &[u64], modulus: &[u64], p: u64) -> Option<Vec<u64>> {
    let (_, f) = divmod(f, modulus, p);
    if is_zero(&f) {
        return None;
    }
    let (mut r0, mut r1) = (modulus.to_vec(), f);
    let (mut s0, mut s1) = (vec![0u64], vec![1u64]);
    while !is_zero(&r1) {
        let (q, r) = divmod(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if degree(&r0) != 0 {
        return None;
    }
    let ginv = inv_mod(r0[0], p);
    let (_, out) = divmod(&scale(&s0, ginv, p), modulus, p);
    Some(out)
}

/// `base^exp mod (modulus, p)` by square and multiply.
pub fn pow_poly_mod(base: &[u64], mut exp: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let (_, mut b) = divmod(base, modulus, p);
    while exp > 0 {
        if exp & 1 == 1 {
            let (_, r) = divmod(&mul(&acc, &b, p), modulus, p);
            acc = r;
        }
        let (_, r) = divmod(&mul(&b, &b, p), modulus, p);
        b = r;
        exp >>= 1;
    }
    acc
}

pub fn eval(f: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in f.iter().rev() {
        acc = (mul_mod(acc, x, p) + c % p) % p;
    }
    acc
}

/// Unique polynomial of degree `< points.len()` through the given points
/// (pairwise distinct abscissae).
pub fn lagrange_interpolate(points: &[(u64, u64)], p: u64) -> Vec<u64> {
    let n = points.len();
    // full = prod (x - x_i)
    let mut full = vec![1u64];
    for &(x, _) in points {
        full = mul(&full, &[(p - x % p) % p, 1], p);
    }
    let mut out = vec![0u64; n];
    for &(x, y) in points {
        let (q, r) = divmod(&full, &[(p - x % p) % p, 1], p);
        debug_assert!(is_zero(&r));
        let denom = eval(&q, x, p);
        let k = mul_mod(y, inv_mod(denom, p), p);
        for (i, &c) in q.iter().enumerate() {
            out[i] = (out[i] + mul_mod(c, k, p)) % p;
        }
    }
    trim(&mut out);
    out
}

/// Tiny deterministic generator for the randomized splitting below.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

/// All distinct roots of `f` in F_p, ascending. Splits the product of the
/// linear factors with gcd(f, x^p - x), then separates roots with random
/// shifts of the (p-1)/2 power map.
pub fn distinct_roots(f: &[u64], p: u64) -> Vec<u64> {
    let mut f = f.to_vec();
    trim(&mut f);
    if degree(&f) == 0 {
        return Vec::new();
    }
    // strip a root at zero
    let mut out = Vec::new();
    if eval(&f, 0, p) == 0 {
        out.push(0);
        while eval(&f, 0, p) == 0 && degree(&f) > 0 {
            let (q, _) = divmod(&f, &[0, 1], p);
            f = q;
        }
    }
    if degree(&f) == 0 {
        return out;
    }
    let xp = pow_poly_mod(&[0, 1], p, &f, p);
    let xp_minus_x = sub(&xp, &[0, 1], p);
    let g = gcd(&f, &xp_minus_x, p);
    let mut rng = SplitMix(0x5eed ^ p);
    split_linear(&g, p, &mut rng, &mut out);
    out.sort_unstable();
    out.dedup();
    out
}

fn split_linear(g: &[u64], p: u64, rng: &mut SplitMix, out: &mut Vec<u64>) {
    match degree(g) {
        0 => {}
        1 => {
            // root of c0 + c1 x
            let root = mul_mod(p - g[0] % p, inv_mod(g[1], p), p) % p;
            out.push(root);
        }
        _ => loop {
            let delta = rng.next() % p;
            let pw = pow_poly_mod(&[delta, 1], (p - 1) / 2, g, p);
            let h = gcd(g, &sub(&pw, &[1], p), p);
            let dh = degree(&h);
            if dh > 0 && dh < degree(g) {
                let (q, r) = divmod(g, &h, p);
                debug_assert!(is_zero(&r));
                split_linear(&h, p, rng, out);
                split_linear(&q, p, rng, out);
                return;
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_round_trip() {
        let p = 101;
        let a = vec![3, 5, 0, 7, 2];
        let b = vec![4, 1, 9];
        let (q, r) = divmod(&a, &b, p);
        let mut a_t = a.clone();
        trim(&mut a_t);
        // a - q b = r
        assert_eq!(sub(&a_t, &mul(&q, &b, p), p), r);
        assert!(degree(&r) < degree(&b));
    }

    #[test]
    fn inverse_in_quotient_ring() {
        let p = 7;
        let modulus = vec![1, 0, 1]; // x^2 + 1, irreducible mod 7
        let f = vec![2, 3];
        let inv = inverse_mod(&f, &modulus, p).unwrap();
        let (_, prod) = divmod(&mul(&f, &inv, p), &modulus, p);
        assert_eq!(prod, vec![1]);
        // sharing a factor with the modulus yields no inverse
        let reducible = mul(&[1, 1], &[2, 1], p);
        assert!(inverse_mod(&[1, 1], &reducible, p).is_none());
    }

    #[test]
    fn interpolation_matches_polynomial() {
        let p = 97;
        let f = vec![12, 0, 5, 1];
        let points: Vec<(u64, u64)> = (1..=4).map(|x| (x, eval(&f, x, p))).collect();
        assert_eq!(lagrange_interpolate(&points, p), f);
    }

    #[test]
    fn root_extraction() {
        let p = 1009;
        // (x - 3)(x - 100)(x - 500)^2 with a repeated root
        let mut f = mul(&[p - 3, 1], &[p - 100, 1], p);
        f = mul(&f, &mul(&[p - 500, 1], &[p - 500, 1], p), p);
        let roots = distinct_roots(&f, p);
        assert_eq!(roots, vec![3, 100, 500]);
        // a polynomial with no roots at all
        assert!(distinct_roots(&[1, 0, 1], 7).is_empty());
    }
}
