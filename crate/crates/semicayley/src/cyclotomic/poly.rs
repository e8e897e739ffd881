//! Dense polynomial helpers over Z and Q, ascending coefficient order.
//! Only what the cyclotomic kernel needs: exact division, the cyclotomic
//! polynomials themselves, and the extended Euclidean algorithm used for
//! inversion modulo an irreducible modulus.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn trim_int(p: &mut Vec<BigInt>) {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

pub fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.iter().all(|c| c.is_zero()) || b.iter().all(|c| c.is_zero()) {
        return vec![BigInt::zero()];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    out
}

/// Exact division of integer polynomials; panics if the division leaves a
/// remainder (callers only divide known multiples).
pub fn div_exact_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    trim_int(&mut rem);
    let mut den = den.to_vec();
    trim_int(&mut den);
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    assert!(!lead.is_zero(), "division by zero polynomial");
    if rem.len() < den.len() {
        assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] / &lead;
        assert_eq!(&c * &lead, rem[k + dd], "inexact polynomial division");
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            let t = dj * &c;
            rem[k + j] -= t;
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    trim_int(&mut quot);
    quot
}

/// The m-th cyclotomic polynomial, degree phi(m), computed by dividing
/// `x^m - 1` by the cyclotomic polynomials of the proper divisors of m.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1);
    let mut table: Vec<(u64, Vec<BigInt>)> = Vec::new();
    for d in 1..=m {
        if m % d != 0 {
            continue;
        }
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = -BigInt::one();
        num[d as usize] = BigInt::one();
        let mut poly = num;
        for (e, phi_e) in &table {
            if d % e == 0 {
                poly = div_exact_int(&poly, phi_e);
            }
        }
        table.push((d, poly));
    }
    table.pop().unwrap().1
}

pub fn trim_rat(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

pub fn is_zero_rat(p: &[BigRational]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn rem_rat(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    quot_rem_rat(num, den).1
}

pub(crate) fn quot_rem_rat(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = num.to_vec();
    trim_rat(&mut rem);
    let mut den_t = den.to_vec();
    trim_rat(&mut den_t);
    let dd = den_t.len() - 1;
    let lead = den_t[dd].clone();
    if rem.len() <= dd {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den_t.iter().enumerate() {
            let t = dj * &c;
            rem[k + j] -= t;
        }
        quot[k] = c;
    }
    trim_rat(&mut rem);
    trim_rat(&mut quot);
    (quot, rem)
}

fn mul_rat(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if is_zero_rat(a) || is_zero_rat(b) {
        return vec![BigRational::zero()];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    out
}

fn sub_rat(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim_rat(&mut out);
    out
}

/// Inverse of `f` modulo the irreducible `modulus` over Q, via the extended
/// Euclidean algorithm. Returns `None` when `f` reduces to zero.
pub fn invert_mod_rat(f: &[BigRational], modulus: &[BigRational]) -> Option<Vec<BigRational>> {
    let f = {
        let r = rem_rat(f, modulus);
        if is_zero_rat(&r) {
            return None;
        }
        r
    };
    // Bezout: s*f + t*modulus = gcd; track s only
    let (mut r0, mut r1) = (modulus.to_vec(), f);
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !is_zero_rat(&r1) {
        let (q, r) = quot_rem_rat(&r0, &r1);
        let s = sub_rat(&s0, &mul_rat(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is the gcd, a nonzero constant since the modulus is irreducible
    debug_assert_eq!(r0.len(), 1);
    let g = r0[0].clone();
    let inv: Vec<BigRational> = s0.iter().map(|c| c / &g).collect();
    Some(rem_rat(&inv, modulus))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), int(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), int(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(5), int(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(6), int(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), int(&[1, 0, -1, 0, 1]));
        // the first index with a coefficient other than 0, 1, -1 is m = 105
        assert_eq!(cyclotomic_polynomial(105)[7], BigInt::from(-2));
    }

    #[test]
    fn cyclotomic_degrees_are_phi() {
        for m in 1..=30u64 {
            let phi = crate::group::euler_phi(m) as usize;
            assert_eq!(cyclotomic_polynomial(m).len(), phi + 1, "m={m}");
        }
    }

    #[test]
    fn exact_division_round_trip() {
        let a = int(&[1, 2, 3]);
        let b = int(&[-1, 0, 0, 5, 7]);
        assert_eq!(div_exact_int(&mul_int(&a, &b), &a), b);
    }
}
