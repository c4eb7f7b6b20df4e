//! Normal forms `constant + m·G + b·T` with `T = psi^2(G) - G`, and the
//! divisibility condition they impose on the J-order of the base.
//!
//! `J(T)` has 2-power order (Adams conjecture with `k = 2`), so a nonzero `b`
//! only constrains `m` modulo the odd part of the J-order.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::cp::CpMixedClass;
use super::hp::HpClass;
use super::rp::RpClass;
use super::{fmt_linear, int};
use crate::jorders::{JOrder, ProjectiveKind};
use crate::numtheory::{divides, odd_part};
use crate::{Error, Result};

/// A real K-theory class over `KP^n` in the basis `1, G, T`, where `G` is
/// `t`, `ru` or `rc'v` according to the field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionForm {
    pub field: ProjectiveKind,
    #[serde(serialize_with = "crate::serde_big::bigint")]
    pub constant: BigInt,
    #[serde(serialize_with = "crate::serde_big::bigint")]
    pub linear: BigInt,
    #[serde(serialize_with = "crate::serde_big::bigint")]
    pub torsion: BigInt,
    /// The form describes twice the class of interest.
    pub doubled: bool,
}

impl ObstructionForm {
    pub fn zero(field: ProjectiveKind) -> Self {
        ObstructionForm {
            field,
            constant: BigInt::zero(),
            linear: BigInt::zero(),
            torsion: BigInt::zero(),
            doubled: false,
        }
    }

    pub fn from_rp(x: &RpClass) -> Self {
        ObstructionForm {
            constant: x.constant.clone(),
            linear: x.t.clone(),
            ..Self::zero(ProjectiveKind::Rp)
        }
    }

    /// Label of `G`.
    pub fn generator(&self) -> &'static str {
        match self.field {
            ProjectiveKind::Rp => "t",
            ProjectiveKind::Cp => "ru",
            ProjectiveKind::Hp => "rc'v",
        }
    }

    /// No Adams-conjecture weakening is needed.
    pub fn is_exact(&self) -> bool {
        self.torsion.is_zero() && !self.doubled
    }

    pub fn checked_add(&self, rhs: &ObstructionForm) -> Result<ObstructionForm> {
        if self.field != rhs.field || self.doubled != rhs.doubled {
            return Err(Error::Invariant(format!(
                "cannot add normal forms over {:?}{} and {:?}{}",
                self.field,
                if self.doubled { " (doubled)" } else { "" },
                rhs.field,
                if rhs.doubled { " (doubled)" } else { "" },
            )));
        }
        Ok(ObstructionForm {
            field: self.field,
            constant: &self.constant + &rhs.constant,
            linear: &self.linear + &rhs.linear,
            torsion: &self.torsion + &rhs.torsion,
            doubled: self.doubled,
        })
    }

    pub fn checked_sub(&self, rhs: &ObstructionForm) -> Result<ObstructionForm> {
        self.checked_add(&rhs.scale(&int(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> ObstructionForm {
        ObstructionForm {
            field: self.field,
            constant: &self.constant * k,
            linear: &self.linear * k,
            torsion: &self.torsion * k,
            doubled: self.doubled,
        }
    }
}

impl fmt::Display for ObstructionForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_linear(
            &self.constant,
            &[(&self.linear, self.generator()), (&self.torsion, "T")],
        ))
    }
}

/// Realifies a class over `CP^n` of `u`- and `ū`-degree at most 2 and
/// rewrites it in the basis `1, ru, T`.
///
/// `r(ū^k) = r(u^k)` and `r(c) = 2c`; then `u^2 = psi^2(u) - 2u` and
/// `psi^2(ru) = T + ru` give `r(u^2) = T - ru`.
pub fn cp_realify_normalize(x: &CpMixedClass) -> Result<ObstructionForm> {
    if x.total_degree() >= 3 {
        return Err(Error::UnsupportedDegree {
            degree: x.total_degree(),
        });
    }
    let c = x.constant();
    let a1 = x.u_coeff(1) + x.ubar_coeff(1);
    let a2 = x.u_coeff(2) + x.ubar_coeff(2);
    Ok(ObstructionForm {
        field: ProjectiveKind::Cp,
        constant: c * 2,
        linear: a1 - &a2,
        torsion: a2,
        doubled: false,
    })
}

/// Rewrites a class over `HP^n` in the basis `1, rc'v, T`. A `v^2` term can
/// only be expressed after doubling, through `2v^2 = T - 3 rc'v`.
pub fn hp_normalize(x: &HpClass) -> ObstructionForm {
    if x.v2.is_zero() {
        return ObstructionForm {
            constant: x.constant.clone(),
            linear: x.w.clone(),
            ..ObstructionForm::zero(ProjectiveKind::Hp)
        };
    }
    ObstructionForm {
        field: ProjectiveKind::Hp,
        constant: &x.constant * 2,
        linear: &x.w * 2 - &x.v2 * 3,
        torsion: x.v2.clone(),
        doubled: true,
    }
}

/// What `J(class) = 0` forces on the linear coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibilityCondition {
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub modulus: BigUint,
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub dividend: BigUint,
    pub satisfied: bool,
    /// The modulus is the full J-order rather than its odd part.
    pub exact: bool,
}

impl fmt::Display for DivisibilityCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.satisfied { "|" } else { "∤" };
        write!(f, "{} {rel} {}", self.modulus, self.dividend)
    }
}

/// If the class has trivial J-image then `modulus | dividend`; a condition
/// that fails therefore proves the J-image is nonzero.
pub fn extract_divisibility(form: &ObstructionForm, j: &JOrder) -> Result<DivisibilityCondition> {
    let exact = form.is_exact();
    let modulus = if exact {
        j.value().clone()
    } else {
        odd_part(j.value())?
    };
    let dividend = form.linear.abs().to_biguint().expect("absolute value");
    Ok(DivisibilityCondition {
        satisfied: divides(&modulus, &dividend),
        modulus,
        dividend,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jorders::{j_cp, j_rp};
    use crate::kring::cp::{cp_restriction_classes, CpClass};
    use proptest::prelude::*;

    #[test]
    fn complex_examples() {
        for (p, q) in [(2i64, 1i64), (5, 3), (9, 9), (1, 4)] {
            let r = cp_restriction_classes(p as u64, q as u64).unwrap();
            let f = cp_realify_normalize(&r.tensor.clone().into()).unwrap();
            assert_eq!(f.linear, int(p - q + 1));
            assert_eq!(f.torsion, int(-1));
            assert_eq!(f.constant, int(2 * p * q));

            let g = cp_realify_normalize(&r.conj_tensor)
                .unwrap()
                .checked_add(&r.herm)
                .unwrap();
            assert_eq!(g.linear, int(p + 1));
            assert!(g.is_exact());
            assert_eq!(g.constant, int(2 * p * q + q * q));
        }
        let zero = cp_realify_normalize(&CpClass::zero(3).into()).unwrap();
        assert_eq!(zero, ObstructionForm::zero(ProjectiveKind::Cp));
        let cubic = CpClass::new(4, [0, 0, 0, 1]);
        assert_eq!(
            cp_realify_normalize(&cubic.into()),
            Err(Error::UnsupportedDegree { degree: 3 })
        );
    }

    #[test]
    fn quaternionic_examples() {
        for p in 2..30i64 {
            let f = hp_normalize(&HpClass::new(7, p - 1, -1));
            assert_eq!(f.linear, int(2 * p + 1));
            assert!(f.doubled);
            let g = hp_normalize(&HpClass::new(7, p + 1, 0));
            assert_eq!(g.linear, int(p + 1));
            assert!(g.is_exact());
        }
        assert_eq!(hp_normalize(&HpClass::zero()).linear, int(0));
    }

    #[test]
    fn divisibility_examples() {
        let f = ObstructionForm::from_rp(&RpClass::new(7, 8));
        let d = extract_divisibility(&f, &j_rp(7).unwrap()).unwrap();
        assert_eq!(
            (d.modulus.clone(), d.dividend.clone()),
            (8u32.into(), 8u32.into())
        );
        assert!(d.satisfied && d.exact);
        assert_eq!(d.to_string(), "8 | 8");

        let mut g = ObstructionForm::zero(ProjectiveKind::Cp);
        g.linear = int(3);
        g.torsion = int(-1);
        let d = extract_divisibility(&g, &j_cp(3).unwrap()).unwrap();
        assert_eq!(d.modulus, 3u32.into());
        assert!(d.satisfied && !d.exact);

        let zero = ObstructionForm::zero(ProjectiveKind::Cp);
        for n in 1..20 {
            assert!(
                extract_divisibility(&zero, &j_cp(n).unwrap())
                    .unwrap()
                    .satisfied
            );
        }
    }

    #[test]
    fn sign_is_irrelevant() {
        let f = ObstructionForm::from_rp(&RpClass::new(0, -6));
        let d = extract_divisibility(&f, &j_rp(2).unwrap()).unwrap();
        assert_eq!(d.dividend, 6u32.into());
        assert!(!d.satisfied);
    }

    proptest! {
        /// `c + (a1 - 2 a2) u + a2 psi^2(u)` recovers `x` in the pure model.
        #[test]
        fn normalizer_is_sound(
            n in 2usize..=12,
            c in -1_000_000i64..=1_000_000,
            a1 in -1_000_000i64..=1_000_000,
            a2 in -1_000_000i64..=1_000_000,
        ) {
            let x = CpClass::new(n, [c, a1, a2]);
            let f = cp_realify_normalize(&x.clone().into()).unwrap();
            prop_assert_eq!(&f.constant, &int(2 * c));
            prop_assert_eq!(&f.torsion, &int(a2));
            prop_assert_eq!(&f.linear + &f.torsion, int(a1));
            let b = BigInt::from(a2);
            let rebuilt = CpClass::new(n, [BigInt::from(c), BigInt::from(a1) - &b * 2])
                .checked_add(&CpClass::u(n).psi(2).unwrap().scale(&b))
                .unwrap();
            prop_assert_eq!(rebuilt, x);
        }
    }
}
