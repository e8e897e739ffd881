//! Galois automorphisms of Q(w_m): the maps sigma_t determined by
//! `sigma_t(w) = w^t` for units t mod m. Composition corresponds to
//! multiplication of the unit indices.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::{context, CycNum};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaloisAut {
    modulus: u64,
    t: u64,
}

impl GaloisAut {
    /// Requires `gcd(t, m) = 1`.
    pub fn new(modulus: u64, t: u64) -> Result<Self> {
        let t = if modulus == 1 { 1 } else { t % modulus };
        if modulus > 1 && (t == 0 || t.gcd(&modulus) != 1) {
            return Err(Error::UnsupportedGroup(format!(
                "{t} is not a unit modulo {modulus}"
            )));
        }
        Ok(GaloisAut { modulus, t })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn unit(&self) -> u64 {
        self.t
    }

    /// Substitutes w -> w^t and reduces.
    pub fn apply(&self, x: &CycNum) -> CycNum {
        assert_eq!(self.modulus, x.modulus(), "modulus mismatch in Galois map");
        if self.t == 1 {
            return x.clone();
        }
        let ctx = context(self.modulus);
        let mut out = vec![BigRational::zero(); ctx.phi];
        for (i, c) in x.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let target = ((i as u64) * self.t % self.modulus) as usize;
            for (k, r) in ctx.power_rows[target].iter().enumerate() {
                if !r.is_zero() {
                    out[k] += c * r;
                }
            }
        }
        CycNum {
            modulus: self.modulus,
            coeffs: out,
        }
    }

    /// `sigma_t . sigma_u = sigma_(t u mod m)`.
    pub fn compose(&self, other: &GaloisAut) -> GaloisAut {
        assert_eq!(self.modulus, other.modulus);
        GaloisAut {
            modulus: self.modulus,
            t: if self.modulus == 1 {
                1
            } else {
                self.t * other.t % self.modulus
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::units_mod;
    use num_bigint::BigInt;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn sigma_five_on_omega_six() {
        // w^5 = w^3 * w^2 = -(w - 1) = 1 - w
        let s = GaloisAut::new(6, 5).unwrap();
        let w = CycNum::root_of_unity(6, 1);
        assert_eq!(s.apply(&w), CycNum::from_coeffs(6, vec![rat(1), rat(-1)]));
        // rationals are fixed
        let q = CycNum::from_int(6, 7);
        assert_eq!(s.apply(&q), q);
    }

    #[test]
    fn automorphism_and_composition_laws() {
        for m in [5u64, 6, 8, 12, 15] {
            let x = CycNum::from_coeffs(
                m,
                (0..crate::group::euler_phi(m))
                    .map(|i| rat(2 * i as i64 - 3))
                    .collect(),
            );
            let y = CycNum::root_of_unity(m, 1).add(&CycNum::from_int(m, 2));
            for &t in &units_mod(m) {
                let s = GaloisAut::new(m, t).unwrap();
                assert_eq!(s.apply(&x.add(&y)), s.apply(&x).add(&s.apply(&y)));
                assert_eq!(s.apply(&x.mul(&y)), s.apply(&x).mul(&s.apply(&y)));
                for &u in &units_mod(m) {
                    let su = GaloisAut::new(m, u).unwrap();
                    assert_eq!(
                        s.apply(&su.apply(&x)),
                        su.compose(&s).apply(&x),
                        "m={m}, t={t}, u={u}"
                    );
                }
            }
        }
    }

    #[test]
    fn norm_is_rational() {
        for m in [5u64, 8, 12] {
            let x = CycNum::root_of_unity(m, 1).add(&CycNum::from_int(m, 3));
            let mut norm = CycNum::one(m);
            for &t in &units_mod(m) {
                norm = norm.mul(&GaloisAut::new(m, t).unwrap().apply(&x));
            }
            assert!(norm.as_rational().is_some(), "m={m}");
        }
    }

    #[test]
    fn non_units_are_rejected() {
        assert!(GaloisAut::new(6, 2).is_err());
        assert!(GaloisAut::new(6, 0).is_err());
        assert!(GaloisAut::new(1, 1).is_ok());
    }
}
