//! Quaternionic projective space. Only the symbols that appear in the
//! restriction classes are modeled: `v = [Taut] - 1` in `KSp^0(HP^n)` and the
//! real classes `1`, `w = rc'v`, `v^2` obtained by pairing two quaternionic
//! classes.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::{fmt_linear, int};
use crate::{Error, Result};

/// `constant + v_coeff · v` in `KSp^0(HP^n)`; `constant` counts
/// quaternionic dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuatClass {
    #[serde(serialize_with = "crate::serde_big::bigint")]
    pub constant: BigInt,
    #[serde(serialize_with = "crate::serde_big::bigint")]
    pub v: BigInt,
}

impl QuatClass {
    pub fn new(constant: impl Into<BigInt>, v: impl Into<BigInt>) -> Self {
        QuatClass {
            constant: constant.into(),
            v: v.into(),
        }
    }

    pub fn trivial(rank: impl Into<BigInt>) -> Self {
        Self::new(rank, 0)
    }

    /// The tautological quaternionic line, `1 + v`.
    pub fn taut() -> Self {
        Self::new(1, 1)
    }
}

impl Add for QuatClass {
    type Output = QuatClass;
    fn add(self, rhs: QuatClass) -> QuatClass {
        QuatClass::new(self.constant + rhs.constant, self.v + rhs.v)
    }
}

impl Sub for QuatClass {
    type Output = QuatClass;
    fn sub(self, rhs: QuatClass) -> QuatClass {
        QuatClass::new(self.constant - rhs.constant, self.v - rhs.v)
    }
}

/// `constant + w_coeff · rc'v + v2_coeff · v^2` in `KO^0(HP^n)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct HpClass {
    #[serde(serialize_with = "crate::serde_big::bigint")]
    pub constant: BigInt,
    #[serde(serialize_with = "crate::serde_big::bigint")]
    pub w: BigInt,
    #[serde(serialize_with = "crate::serde_big::bigint")]
    pub v2: BigInt,
}

impl HpClass {
    pub fn new(constant: impl Into<BigInt>, w: impl Into<BigInt>, v2: impl Into<BigInt>) -> Self {
        HpClass {
            constant: constant.into(),
            w: w.into(),
            v2: v2.into(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scale(&self, k: &BigInt) -> HpClass {
        HpClass {
            constant: &self.constant * k,
            w: &self.w * k,
            v2: &self.v2 * k,
        }
    }
}

impl Add for HpClass {
    type Output = HpClass;
    fn add(self, rhs: HpClass) -> HpClass {
        HpClass {
            constant: self.constant + rhs.constant,
            w: self.w + rhs.w,
            v2: self.v2 + rhs.v2,
        }
    }
}

impl Sub for HpClass {
    type Output = HpClass;
    fn sub(self, rhs: HpClass) -> HpClass {
        self + (-rhs)
    }
}

impl Neg for HpClass {
    type Output = HpClass;
    fn neg(self) -> HpClass {
        HpClass {
            constant: -self.constant,
            w: -self.w,
            v2: -self.v2,
        }
    }
}

impl fmt::Display for HpClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_linear(
            &self.constant,
            &[(&self.w, "rc'v"), (&self.v2, "v^2")],
        ))
    }
}

/// The real class of `x ⊗_H conj(y)`. With `[H ⊗_H conj H] = 4`,
/// `[L ⊗_H conj H] = rc'[L]` and `v ⊗ conj v = v^2`:
/// `(a + bv)(c + dv) ↦ 4ac + (ad + bc) rc'v + bd v^2`.
pub fn pairing(x: &QuatClass, y: &QuatClass) -> HpClass {
    HpClass {
        constant: int(4) * &x.constant * &y.constant,
        w: &x.constant * &y.v + &x.v * &y.constant,
        v2: &x.v * &y.v,
    }
}

/// Quaternion-hermitian forms on `⊕ L_i`: one real dimension per line plus
/// the pairing of every unordered pair of lines.
pub fn herm_of_line_sum(lines: &[(QuatClass, u64)]) -> HpClass {
    let mut total = HpClass::zero();
    total.constant += lines.iter().map(|(_, k)| k).sum::<u64>();
    for_each_pair(lines, |pair, mult| total = total.clone() + pair.scale(mult));
    total
}

/// Quaternion-skew-hermitian forms on `⊕ L_i`: `L_i ⊗ conj L_i - 1` per line
/// plus the pairing of every unordered pair.
pub fn skew_herm_of_line_sum(lines: &[(QuatClass, u64)]) -> HpClass {
    let mut total = HpClass::zero();
    for (line, k) in lines {
        let diag = pairing(line, line) - HpClass::new(1, 0, 0);
        total = total + diag.scale(&int(*k));
    }
    for_each_pair(lines, |pair, mult| total = total.clone() + pair.scale(mult));
    total
}

fn for_each_pair(lines: &[(QuatClass, u64)], mut f: impl FnMut(HpClass, &BigInt)) {
    for (i, (li, ki)) in lines.iter().enumerate() {
        for (j, (lj, kj)) in lines.iter().enumerate().skip(i) {
            let mult = if i == j {
                int(ki * ki.saturating_sub(1) / 2)
            } else {
                int(ki * kj)
            };
            if !mult.is_zero() {
                f(pairing(li, lj), &mult);
            }
        }
    }
}

/// Restrictions to `HP^p ⊂ Gr_H(p,q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HpRestrictions {
    /// `Taut^⊥ ⊗_H conj(Taut)`.
    pub tensor: HpClass,
    pub herm: HpClass,
    pub skew_herm: HpClass,
}

/// Restriction classes over `HP^p`, derived from `[Taut]| = [L] + (q - 1)`.
pub fn hp_restriction_classes(p: u64, q: u64) -> Result<HpRestrictions> {
    if p == 0 || q == 0 {
        return Err(Error::invalid(format!(
            "restriction to HP^p needs p, q >= 1 (got p={p}, q={q})"
        )));
    }
    let taut = QuatClass::taut() + QuatClass::trivial(q - 1);
    let perp = QuatClass::trivial(p + q) - taut.clone();
    let lines = [(QuatClass::taut(), 1), (QuatClass::trivial(1), q - 1)];
    Ok(HpRestrictions {
        tensor: pairing(&perp, &taut),
        herm: herm_of_line_sum(&lines),
        skew_herm: skew_herm_of_line_sum(&lines),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_lines() {
        let h = QuatClass::trivial(1);
        // Herm(H) = R, SkewHerm(H) = Im H
        assert_eq!(herm_of_line_sum(&[(h.clone(), 1)]), HpClass::new(1, 0, 0));
        assert_eq!(
            skew_herm_of_line_sum(&[(h.clone(), 1)]),
            HpClass::new(3, 0, 0)
        );
        // dimensions q(2q - 1) and q(2q + 1) for H^q
        for q in 1..30u64 {
            let herm = herm_of_line_sum(&[(h.clone(), q)]);
            let skew = skew_herm_of_line_sum(&[(h.clone(), q)]);
            assert_eq!(herm.constant, int(q * (2 * q - 1)));
            assert_eq!(skew.constant, int(q * (2 * q + 1)));
        }
    }

    #[test]
    fn restriction_closed_forms() {
        for p in 1..=60i64 {
            for q in 1..=60i64 {
                let r = hp_restriction_classes(p as u64, q as u64).unwrap();
                assert_eq!(r.tensor, HpClass::new(4 * p * q, p - q, -1));
                assert_eq!(r.herm, HpClass::new(q * (2 * q - 1), q - 1, 0));
                assert_eq!(r.skew_herm, HpClass::new(q * (2 * q + 1), q + 1, 1));
            }
        }
        assert!(hp_restriction_classes(0, 2).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(HpClass::new(8, 1, -1).to_string(), "8 + rc'v - v^2");
    }
}
