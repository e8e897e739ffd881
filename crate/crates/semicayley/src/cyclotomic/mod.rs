//! Exact arithmetic in the cyclotomic field Q(w_m).
//!
//! A [`CycNum`] is a vector of phi(m) rational coefficients over the power
//! basis `1, w, .., w^(phi(m)-1)`, fully reduced modulo the m-th cyclotomic
//! polynomial. Reduction keeps the representation canonical, so equality is
//! coefficientwise. The degenerate moduli m = 1, 2 are plain rationals.
//!
//! Per-modulus data (the cyclotomic polynomial and the reduced powers
//! `w^j mod Phi_m`) is computed once and shared behind a global lock; values
//! themselves are immutable and freely shareable across threads.

pub mod embed;
pub mod galois;
pub mod poly;
pub mod sqrt;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::group::euler_phi;

pub use embed::PrimeEmbedding;
pub use galois::GaloisAut;
pub use poly::cyclotomic_polynomial;
pub use sqrt::{sqrt_in_cyclotomic, NonSquareCertificate, SqrtConfig, SqrtOutcome};

/// Shared per-modulus reduction data.
pub(crate) struct CycContext {
    pub m: u64,
    pub phi: usize,
    /// Phi_m, ascending, monic.
    pub phi_poly: Vec<BigInt>,
    /// `power_rows[j]` = coefficients of `x^j mod Phi_m`, for j up to
    /// `max(m - 1, 2 phi - 2)`; enough for both multiplication tails and
    /// Galois substitution.
    pub power_rows: Vec<Vec<BigInt>>,
}

fn contexts() -> &'static Mutex<HashMap<u64, Arc<CycContext>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycContext>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn context(m: u64) -> Arc<CycContext> {
    assert!(m >= 1, "modulus must be positive");
    let mut cache = contexts().lock().unwrap();
    if let Some(ctx) = cache.get(&m) {
        return Arc::clone(ctx);
    }
    let phi = euler_phi(m) as usize;
    let phi_poly = cyclotomic_polynomial(m);
    debug_assert_eq!(phi_poly.len(), phi + 1);
    let rows_needed = std::cmp::max(m as usize, 2 * phi - 1);
    let mut power_rows: Vec<Vec<BigInt>> = Vec::with_capacity(rows_needed);
    let mut current = vec![BigInt::zero(); phi];
    current[0] = BigInt::one();
    power_rows.push(current.clone());
    for _ in 1..rows_needed {
        // multiply by x, then fold the overflow term via
        // x^phi = -(phi_poly[0] + .. + phi_poly[phi-1] x^(phi-1))
        let overflow = current[phi - 1].clone();
        for i in (1..phi).rev() {
            current[i] = current[i - 1].clone();
        }
        current[0] = BigInt::zero();
        if !overflow.is_zero() {
            for i in 0..phi {
                current[i] -= &overflow * &phi_poly[i];
            }
        }
        power_rows.push(current.clone());
    }
    let ctx = Arc::new(CycContext {
        m,
        phi,
        phi_poly,
        power_rows,
    });
    cache.insert(m, Arc::clone(&ctx));
    ctx
}

/// An element of Q(w_m) in the reduced power basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    modulus: u64,
    coeffs: Vec<BigRational>,
}

impl CycNum {
    pub fn zero(m: u64) -> Self {
        CycNum {
            modulus: m,
            coeffs: vec![BigRational::zero(); euler_phi(m) as usize],
        }
    }

    pub fn one(m: u64) -> Self {
        Self::from_rat(m, BigRational::one())
    }

    pub fn from_rat(m: u64, value: BigRational) -> Self {
        let mut x = Self::zero(m);
        x.coeffs[0] = value;
        x
    }

    pub fn from_int(m: u64, value: i64) -> Self {
        Self::from_rat(m, BigRational::from(BigInt::from(value)))
    }

    /// `w_m^k`, reduced.
    pub fn root_of_unity(m: u64, k: u64) -> Self {
        let ctx = context(m);
        let row = &ctx.power_rows[(k % m) as usize];
        CycNum {
            modulus: m,
            coeffs: row.iter().map(|c| BigRational::from(c.clone())).collect(),
        }
    }

    /// Builds from raw coefficients of any length; reduced modulo Phi_m.
    pub fn from_coeffs(m: u64, coeffs: Vec<BigRational>) -> Self {
        let ctx = context(m);
        let mut out = vec![BigRational::zero(); ctx.phi];
        for (j, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j < ctx.phi {
                out[j] += c;
            } else {
                assert!(j < ctx.power_rows.len(), "coefficient degree out of range");
                for (i, r) in ctx.power_rows[j].iter().enumerate() {
                    if !r.is_zero() {
                        out[i] += &c * r;
                    }
                }
            }
        }
        CycNum {
            modulus: m,
            coeffs: out,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The value as a rational if all higher basis coefficients vanish.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn check_modulus(&self, other: &CycNum) {
        assert_eq!(
            self.modulus, other.modulus,
            "cyclotomic moduli differ: {} vs {}",
            self.modulus, other.modulus
        );
    }

    pub fn add(&self, other: &CycNum) -> CycNum {
        self.check_modulus(other);
        CycNum {
            modulus: self.modulus,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &CycNum) -> CycNum {
        self.check_modulus(other);
        CycNum {
            modulus: self.modulus,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &CycNum) -> CycNum {
        self.check_modulus(other);
        let ctx = context(self.modulus);
        let phi = ctx.phi;
        let mut conv = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<BigRational> = conv[..phi].to_vec();
        for (j, c) in conv.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (i, r) in ctx.power_rows[j].iter().enumerate() {
                if !r.is_zero() {
                    out[i] += c * r;
                }
            }
        }
        CycNum {
            modulus: self.modulus,
            coeffs: out,
        }
    }

    pub fn mul_rat(&self, k: &BigRational) -> CycNum {
        CycNum {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn mul_int(&self, k: i64) -> CycNum {
        self.mul_rat(&BigRational::from(BigInt::from(k)))
    }

    pub fn square(&self) -> CycNum {
        self.mul(self)
    }

    pub fn pow(&self, mut k: u64) -> CycNum {
        let mut acc = CycNum::one(self.modulus);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            k >>= 1;
        }
        acc
    }

    /// Field inverse; `None` for zero.
    pub fn inverse(&self) -> Option<CycNum> {
        if self.is_zero() {
            return None;
        }
        let ctx = context(self.modulus);
        let modulus: Vec<BigRational> = ctx
            .phi_poly
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        let inv = poly::invert_mod_rat(&self.coeffs, &modulus)?;
        let mut coeffs = inv;
        coeffs.resize(ctx.phi, BigRational::zero());
        Some(CycNum {
            modulus: self.modulus,
            coeffs,
        })
    }

    /// Exact division; panics on a zero divisor.
    pub fn div(&self, other: &CycNum) -> CycNum {
        self.check_modulus(other);
        let inv = other.inverse().expect("division by zero cyclotomic number");
        self.mul(&inv)
    }

    /// Complex conjugation, implemented as the Galois map w -> w^(m-1).
    pub fn conjugate(&self) -> CycNum {
        if self.modulus <= 2 {
            self.clone()
        } else {
            GaloisAut::new(self.modulus, self.modulus - 1)
                .expect("m-1 is a unit")
                .apply(self)
        }
    }

    /// Numeric value under the principal embedding w -> exp(2 pi i / m).
    pub fn to_complex(&self) -> Complex64 {
        let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / self.modulus as f64);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            let v = c.numer().to_f64().unwrap_or(f64::NAN)
                / c.denom().to_f64().unwrap_or(f64::NAN);
            acc = acc * omega + Complex64::new(v, 0.0);
        }
        acc
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Flips the sign so the first nonzero coefficient is positive.
    /// Used to make square roots deterministic.
    pub fn normalize_sign(&self) -> CycNum {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    /// Coefficientwise lexicographic order; a deterministic total order used
    /// for canonical sorting of rows and bases.
    pub fn lex_cmp(&self, other: &CycNum) -> std::cmp::Ordering {
        self.modulus
            .cmp(&other.modulus)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum(m={}, {})", self.modulus, self)
    }
}

impl fmt::Display for CycNum {
    /// Power-basis form such as `-16 + 16*w` with `w` the primitive m-th root.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = c.is_negative();
            if first {
                if sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                1 => {
                    if coeff_is_one {
                        write!(f, "w")?;
                    } else {
                        write!(f, "{mag}*w")?;
                    }
                }
                _ => {
                    if coeff_is_one {
                        write!(f, "w^{i}")?;
                    } else {
                        write!(f, "{mag}*w^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        CycNum::add(self, rhs)
    }
}
impl std::ops::Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        CycNum::sub(self, rhs)
    }
}
impl std::ops::Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        CycNum::mul(self, rhs)
    }
}
impl std::ops::Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn omega_squared_in_q_omega_6() {
        // Phi_6 = x^2 - x + 1, so w^2 = w - 1
        let w = CycNum::root_of_unity(6, 1);
        let w2 = w.square();
        assert_eq!(w2, CycNum::from_coeffs(6, vec![rat(-1), rat(1)]));
    }

    #[test]
    fn sixteen_omega_is_a_square_for_m_three() {
        // (4 + 4w)^2 = 16w when w^2 = -1 - w
        let x = CycNum::from_coeffs(3, vec![rat(4), rat(4)]);
        let sixteen_omega = CycNum::root_of_unity(3, 1).mul_int(16);
        assert_eq!(x.square(), sixteen_omega);
    }

    #[test]
    fn inverse_round_trip() {
        let x = CycNum::from_coeffs(12, vec![rat(3), rat(-2), rat(0), rat(7)]);
        let inv = x.inverse().unwrap();
        assert!(x.mul(&inv).is_one());
        assert!(CycNum::zero(12).inverse().is_none());
    }

    #[test]
    fn rational_detection() {
        let x = CycNum::from_int(6, 2);
        assert_eq!(x.as_rational(), Some(rat(2)));
        assert!(CycNum::root_of_unity(6, 1).as_rational().is_none());
        // w + w^4 over m = 5 is real but irrational
        let y = CycNum::root_of_unity(5, 1).add(&CycNum::root_of_unity(5, 4));
        assert!(y.as_rational().is_none());
    }

    #[test]
    fn conjugation_squares_to_identity() {
        for m in [1u64, 2, 3, 6, 8, 12] {
            let x = CycNum::from_coeffs(
                m,
                (0..euler_phi(m)).map(|i| rat(i as i64 + 1)).collect(),
            );
            assert_eq!(x.conjugate().conjugate(), x);
        }
    }

    #[test]
    fn complex_embedding_of_roots_of_unity() {
        let w = CycNum::root_of_unity(8, 1).to_complex();
        assert!((w.re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((w.im - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn degenerate_moduli_are_rational() {
        let x = CycNum::from_int(1, 5);
        let y = CycNum::from_int(1, 3);
        assert_eq!(x.mul(&y), CycNum::from_int(1, 15));
        let z = CycNum::root_of_unity(2, 1);
        assert_eq!(z, CycNum::from_int(2, -1));
    }

    #[test]
    fn display_form() {
        let x = CycNum::from_coeffs(6, vec![rat(-16), rat(16)]);
        assert_eq!(x.to_string(), "-16 + 16*w");
        assert_eq!(CycNum::zero(6).to_string(), "0");
        assert_eq!(CycNum::root_of_unity(12, 1).to_string(), "w");
    }
}
