//! Reduction of cyclotomic numbers modulo primes p = 1 (mod m).
//!
//! For such a prime the residue field F_p contains all m-th roots of unity,
//! so sending w to a fixed root z of Phi_m gives a ring homomorphism from the
//! p-integral elements of Q(w_m) onto F_p. These embeddings drive the
//! square-class machinery: a non-residue image certifies a non-square.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::CycNum;
use crate::error::{Error, Result};

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Ascending primes `p = 1 (mod m)` with `p > lower_bound`.
pub fn primes_one_mod(m: u64, lower_bound: u64) -> impl Iterator<Item = u64> {
    let step = m.max(1);
    let first_k = if lower_bound == 0 {
        1
    } else {
        (lower_bound - 1) / step + 1
    };
    (first_k..).map(move |k| k * step + 1).filter(|&p| is_prime_u64(p))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Legendre symbol as 0, 1 or p-1.
pub fn legendre(a: u64, p: u64) -> u64 {
    pow_mod(a, (p - 1) / 2, p)
}

/// Square root modulo an odd prime (Tonelli-Shanks); `None` for non-residues.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre(a, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    // write p - 1 = q 2^s with q odd
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| legendre(z, p) == p - 1).unwrap();
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// A prime `p = 1 (mod m)` together with a root `z` of Phi_m in F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeEmbedding {
    pub p: u64,
    pub z: u64,
}

impl PrimeEmbedding {
    /// Finds the embedding at the given prime: `z` is the smallest power
    /// `g^((p-1)/m)` of the smallest suitable base g with exact order m.
    pub fn at_prime(m: u64, p: u64) -> Result<Self> {
        assert!(is_prime_u64(p), "{p} is not prime");
        assert!(m >= 1 && (p - 1) % m == 0, "{p} != 1 mod {m}");
        if m == 1 {
            return Ok(PrimeEmbedding { p, z: 1 });
        }
        let factors = prime_factors(m);
        for g in 2..p {
            let z = pow_mod(g, (p - 1) / m, p);
            if factors.iter().all(|&q| pow_mod(z, m / q, p) != 1) {
                return Ok(PrimeEmbedding { p, z });
            }
        }
        Err(Error::NoSuitablePrime {
            modulus: m,
            lower_bound: p,
        })
    }

    /// The smallest usable embedding with `p > lower_bound`.
    pub fn find(m: u64, lower_bound: u64) -> Result<Self> {
        let p = primes_one_mod(m, lower_bound)
            .take(10_000)
            .next()
            .ok_or(Error::NoSuitablePrime {
                modulus: m,
                lower_bound,
            })?;
        Self::at_prime(m, p)
    }
}

pub fn bigint_mod_u64(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits u64")
}

/// Evaluates the coefficient polynomial at `z` mod p. Fails when p divides a
/// coefficient denominator; pick another prime in that case.
pub fn residue(x: &CycNum, e: &PrimeEmbedding) -> Result<u64> {
    let p = e.p;
    let mut acc = 0u64;
    for c in x.coeffs().iter().rev() {
        let den = bigint_mod_u64(c.denom(), p);
        if den == 0 {
            return Err(Error::PrimeDividesDenominator { p });
        }
        let num = bigint_mod_u64(c.numer(), p);
        let value = mul_mod(num, inv_mod(den, p), p);
        acc = (mul_mod(acc, e.z, p) + value) % p;
    }
    Ok(acc)
}

/// Evaluates an integer polynomial at `point` mod p.
pub fn eval_int_poly_mod(coeffs: &[BigInt], point: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for c in coeffs.iter().rev() {
        let v = bigint_mod_u64(c, p);
        acc = (mul_mod(acc, point, p) + v) % p;
    }
    acc
}

/// Signed balanced remainder in `(-M/2, M/2]`.
pub fn balanced(x: &BigInt, modulus: &BigInt) -> BigInt {
    let r = x.mod_floor(modulus);
    if &r * 2 > *modulus {
        r - modulus
    } else {
        r
    }
}

/// Rational reconstruction: finds n/d with `n = c d (mod M)`,
/// `|n|, d <= sqrt(M/2)`. Returns `None` when no such pair exists.
pub fn rational_reconstruct(c: &BigInt, modulus: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound: BigInt = (modulus / 2u8).sqrt();
    let (mut r0, mut r1) = (modulus.clone(), c.mod_floor(modulus));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::from(1));
    while r1 > bound {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        let t = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let (num, den) = if t1.is_negative() {
        (-r1, -t1)
    } else {
        (r1, t1)
    };
    // confirm the congruence (guards against gcd(den, M) > 1 artifacts)
    if (c * &den - &num).mod_floor(modulus).is_zero() {
        Some((num, den))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(7));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
    }

    #[test]
    fn embedding_for_m_six() {
        // p = 7 = 1 mod 6; the roots of x^2 - x + 1 mod 7 are 3 and 5
        let e = PrimeEmbedding::at_prime(6, 7).unwrap();
        assert!(e.z == 3 || e.z == 5);
        assert_eq!((mul_mod(e.z, e.z, 7) + 7 - e.z + 1) % 7, 0);
        let w = CycNum::root_of_unity(6, 1);
        assert_eq!(residue(&w, &e).unwrap(), e.z);
        assert_eq!(residue(&CycNum::one(6), &e).unwrap(), 1);
    }

    #[test]
    fn residue_is_multiplicative() {
        let e = PrimeEmbedding::find(12, 100).unwrap();
        let x = CycNum::from_coeffs(
            12,
            (0..4).map(|i| BigRational::from(BigInt::from(i + 2))).collect(),
        );
        let y = CycNum::root_of_unity(12, 5).add(&CycNum::from_int(12, 3));
        let lhs = residue(&x.mul(&y), &e).unwrap();
        let rhs = mul_mod(residue(&x, &e).unwrap(), residue(&y, &e).unwrap(), e.p);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn denominator_divisible_by_p_is_an_error() {
        let e = PrimeEmbedding::at_prime(6, 7).unwrap();
        let x = CycNum::from_rat(6, BigRational::new(BigInt::from(1), BigInt::from(7)));
        assert!(matches!(
            residue(&x, &e),
            Err(Error::PrimeDividesDenominator { p: 7 })
        ));
    }

    fn first_non_residue(p: u64) -> u64 {
        (2..p).find(|&a| legendre(a, p) == p - 1).unwrap()
    }

    #[test]
    fn tonelli_shanks_round_trip() {
        for p in [7u64, 13, 17, 41, 97, 12289] {
            for a in 1..40u64 {
                let a = a % p;
                if a == 0 {
                    continue;
                }
                let sq = mul_mod(a, a, p);
                let r = sqrt_mod(sq, p).unwrap();
                assert!(r == a || r == p - a, "p={p}, a={a}");
            }
            assert!(sqrt_mod(first_non_residue(p), p).is_none());
        }
    }

    #[test]
    fn rational_reconstruction_recovers_fractions() {
        let modulus = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        // c = 22/7 mod M via the extended gcd
        let gcd = BigInt::from(7).extended_gcd(&modulus);
        let c = (BigInt::from(22) * gcd.x).mod_floor(&modulus);
        let (n, d) = rational_reconstruct(&c, &modulus).unwrap();
        assert_eq!((n, d), (BigInt::from(22), BigInt::from(7)));
        // plain integers come back with denominator one
        let (n, d) = rational_reconstruct(&BigInt::from(12345), &modulus).unwrap();
        assert_eq!((n, d), (BigInt::from(12345), BigInt::from(1)));
    }
}
