//! Symbolic K-theory of real, complex and quaternionic projective spaces,
//! just large enough to carry the restrictions of bundles over Grassmannians
//! and rewrite them into the normal form that exposes a J-order obstruction.

pub mod cp;
pub mod hp;
pub mod normal;
pub mod rp;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serializer;

pub use cp::{cp_restriction_classes, CpClass, CpMixedClass, CpRestrictions};
pub use hp::{hp_restriction_classes, pairing, HpClass, HpRestrictions, QuatClass};
pub use normal::{
    cp_realify_normalize, extract_divisibility, hp_normalize, DivisibilityCondition,
    ObstructionForm,
};
pub use rp::{rp_restriction_classes, RpClass, RpRestrictions};

pub(crate) fn int(n: impl Into<BigInt>) -> BigInt {
    n.into()
}

/// Renders `constant + c_1·x_1 + ...`, skipping zero terms and unit
/// coefficients.
pub(crate) fn fmt_linear(constant: &BigInt, terms: &[(&BigInt, &str)]) -> String {
    let mut out = String::new();
    if !constant.is_zero() {
        out.push_str(&constant.to_string());
    }
    for (coeff, label) in terms {
        if coeff.is_zero() {
            continue;
        }
        let magnitude = coeff.abs();
        let body = if magnitude.is_one() {
            label.to_string()
        } else {
            format!("{magnitude}·{label}")
        };
        match (out.is_empty(), coeff.is_negative()) {
            (true, true) => out.push_str(&format!("-{body}")),
            (true, false) => out.push_str(&body),
            (false, true) => out.push_str(&format!(" - {body}")),
            (false, false) => out.push_str(&format!(" + {body}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(crate) fn ser_big_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_str_radix(10)))
}
