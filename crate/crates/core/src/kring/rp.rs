//! Real K-theory of real projective space, modeled by `Z[t]/(t^2 + 2t)` where
//! `t = [Taut] - 1`. The relation is `Taut ⊗ Taut ≅ trivial` for a real line.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{fmt_linear, int};
use crate::{Error, Result};

/// `constant + t_coeff · t` in `KO^0(RP^n)` (torsion-free model).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RpClass {
    #[serde(serialize_with = "crate::serde_big::bigint")]
    pub constant: BigInt,
    #[serde(serialize_with = "crate::serde_big::bigint")]
    pub t: BigInt,
}

impl RpClass {
    pub fn new(constant: impl Into<BigInt>, t: impl Into<BigInt>) -> Self {
        RpClass {
            constant: constant.into(),
            t: t.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn scalar(c: impl Into<BigInt>) -> Self {
        Self::new(c, 0)
    }

    /// The tautological line bundle, `1 + t`.
    pub fn taut() -> Self {
        Self::new(1, 1)
    }

    /// `psi^k`: on a line bundle `psi^k[L] = [L]^k`, so `t` maps to `t` for
    /// odd `k` and to `0` for even `k`.
    pub fn psi(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("psi^0 is not an Adams operation"));
        }
        let t = if k % 2 == 1 {
            self.t.clone()
        } else {
            BigInt::zero()
        };
        Ok(RpClass {
            constant: self.constant.clone(),
            t,
        })
    }

    /// `Sym^2 x = (x^2 + psi^2 x) / 2`.
    pub fn sym2(&self) -> Result<Self> {
        (self * self + self.psi(2)?).halve()
    }

    /// `Lambda^2 x = (x^2 - psi^2 x) / 2`.
    pub fn lambda2(&self) -> Result<Self> {
        (self * self - self.psi(2)?).halve()
    }

    fn halve(self) -> Result<Self> {
        let two = int(2);
        let (c, rc) = self.constant.div_rem(&two);
        let (t, rt) = self.t.div_rem(&two);
        if !rc.is_zero() || !rt.is_zero() {
            return Err(Error::Invariant(format!("{self} is not divisible by 2")));
        }
        Ok(RpClass { constant: c, t })
    }
}

impl<'a> Mul<&'a RpClass> for &'a RpClass {
    type Output = RpClass;

    /// `(a + bt)(c + dt) = ac + (ad + bc - 2bd) t`.
    fn mul(self, rhs: &RpClass) -> RpClass {
        let bd = &self.t * &rhs.t;
        RpClass {
            constant: &self.constant * &rhs.constant,
            t: &self.constant * &rhs.t + &self.t * &rhs.constant - bd * 2,
        }
    }
}

impl Mul for RpClass {
    type Output = RpClass;
    fn mul(self, rhs: RpClass) -> RpClass {
        &self * &rhs
    }
}

impl Add for RpClass {
    type Output = RpClass;
    fn add(self, rhs: RpClass) -> RpClass {
        RpClass {
            constant: self.constant + rhs.constant,
            t: self.t + rhs.t,
        }
    }
}

impl Sub for RpClass {
    type Output = RpClass;
    fn sub(self, rhs: RpClass) -> RpClass {
        self + (-rhs)
    }
}

impl Neg for RpClass {
    type Output = RpClass;
    fn neg(self) -> RpClass {
        RpClass {
            constant: -self.constant,
            t: -self.t,
        }
    }
}

impl fmt::Display for RpClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_linear(&self.constant, &[(&self.t, "t")]))
    }
}

/// Restrictions to `RP^p ⊂ Gr_R(p,q)` of the bundles built from the
/// tautological bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RpRestrictions {
    /// `Taut ⊗ Taut^⊥`, the tangent bundle of the Grassmannian.
    pub tensor: RpClass,
    pub sym2: RpClass,
    pub lambda2: RpClass,
}

/// Restriction classes over `RP^p`, derived from `[Taut]| = [L] + (q - 1)`
/// and `[Taut^⊥]| = (p + q) - [Taut]|`.
pub fn rp_restriction_classes(p: u64, q: u64) -> Result<RpRestrictions> {
    if p == 0 || q == 0 {
        return Err(Error::invalid(format!(
            "restriction to RP^p needs p, q >= 1 (got p={p}, q={q})"
        )));
    }
    let taut = RpClass::taut() + RpClass::scalar(int(q) - BigInt::one());
    let perp = RpClass::scalar(int(p + q)) - taut.clone();
    Ok(RpRestrictions {
        tensor: &taut * &perp,
        sym2: taut.sym2()?,
        lambda2: taut.lambda2()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relation() {
        let t = RpClass::new(0, 1);
        assert_eq!(&t * &t, RpClass::new(0, -2));
        let x = RpClass::new(5, -3);
        assert_eq!(&RpClass::one() * &x, x);
        // (Taut)^2 = 1
        assert_eq!(&RpClass::taut() * &RpClass::taut(), RpClass::one());
    }

    #[test]
    fn brute_force_expansion() {
        // ([Taut] + q - 1)(-[Taut] + p + 1) at (p,q) = (3,1), expanded by hand
        // with [Taut] = 1 + t and t^2 = -2t: (1 + t)(3 - t) = 3 + 2t - t^2 = 3 + 4t.
        let (p, q) = (3i64, 1i64);
        let taut = RpClass::taut();
        let lhs = (taut.clone() + RpClass::scalar(q - 1)) * (-taut + RpClass::scalar(p + 1));
        assert_eq!(lhs, RpClass::new(3, 4));
        assert_eq!(
            rp_restriction_classes(3, 1).unwrap().tensor,
            RpClass::new(3, 4)
        );
    }

    #[test]
    fn restriction_examples() {
        let r = rp_restriction_classes(3, 1).unwrap();
        assert_eq!(r.tensor, RpClass::new(3, 4));
        for p in 1..10 {
            assert_eq!(
                rp_restriction_classes(p, 1).unwrap().sym2,
                RpClass::new(1, 0)
            );
        }
        assert_eq!(
            rp_restriction_classes(2, 2).unwrap().lambda2,
            RpClass::new(1, 1)
        );
        assert!(rp_restriction_classes(0, 1).is_err());
    }

    #[test]
    fn restriction_closed_forms() {
        for p in 1..=60i64 {
            for q in 1..=60i64 {
                let r = rp_restriction_classes(p as u64, q as u64).unwrap();
                assert_eq!(r.tensor, RpClass::new(p * q, p - q + 2));
                assert_eq!(r.sym2, RpClass::new(q * (q + 1) / 2, q - 1));
                assert_eq!(r.lambda2, RpClass::new(q * (q - 1) / 2, q - 1));
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(RpClass::new(3, 4).to_string(), "3 + 4·t");
        assert_eq!(RpClass::new(0, -1).to_string(), "-t");
        assert_eq!(RpClass::zero().to_string(), "0");
    }
}
