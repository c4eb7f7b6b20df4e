//! Clifford algebras `Cl_n` (generated by `R^n` with `v^2 = -|v|^2`), their
//! spinor representations, and the reduced K-groups of spheres, all
//! periodic mod 8.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::numtheory::big_pow;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Field {
    R,
    C,
    H,
}

impl Field {
    pub fn real_dim(self) -> u32 {
        match self {
            Field::R => 1,
            Field::C => 2,
            Field::H => 4,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::R => "R",
            Field::C => "C",
            Field::H => "H",
        })
    }
}

/// A matrix algebra `M(k, F)`, or the product of two copies of it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliffordType {
    pub field: Field,
    /// Two simple factors (`R×R` or `H×H` type).
    pub split: bool,
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub matrix_size: BigUint,
}

impl CliffordType {
    /// Base ring label: `R`, `C`, `H`, `R×R` or `H×H`.
    pub fn base_ring(&self) -> String {
        if self.split {
            format!("{0}×{0}", self.field)
        } else {
            self.field.to_string()
        }
    }

    pub fn real_dimension(&self) -> BigUint {
        let factors = if self.split { 2u32 } else { 1 };
        &self.matrix_size * &self.matrix_size * self.field.real_dim() * factors
    }
}

impl fmt::Display for CliffordType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({}, {})", self.matrix_size, self.field)?;
        if self.split {
            f.write_str("^2")?;
        }
        Ok(())
    }
}

fn two_pow(e: u64) -> BigUint {
    big_pow(2, e as u32)
}

/// `Cl_n` up to isomorphism.
pub fn clifford_algebra(n: u64) -> CliffordType {
    let (field, split, e) = match n % 8 {
        0 | 6 => (Field::R, false, n / 2),
        7 => (Field::R, true, (n - 1) / 2),
        1 | 5 => (Field::C, false, (n - 1) / 2),
        2 | 4 => (Field::H, false, (n - 2) / 2),
        _ => (Field::H, true, (n - 3) / 2),
    };
    CliffordType {
        field,
        split,
        matrix_size: two_pow(e),
    }
}

/// The spinor representation of the even part `Cl^0_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpinorDimension {
    pub field: Field,
    /// Dimension over `field`.
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub dim: BigUint,
    /// There are two inequivalent ones, `Δ_{n,+}` and `Δ_{n,-}` (n even).
    pub two_reps: bool,
}

impl SpinorDimension {
    pub fn real_dimension(&self) -> BigUint {
        &self.dim * self.field.real_dim()
    }
}

impl fmt::Display for SpinorDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.field, self.dim)?;
        if self.two_reps {
            f.write_str(" (±)")?;
        }
        Ok(())
    }
}

pub fn spinor_dimension(n: u64) -> Result<SpinorDimension> {
    if n == 0 {
        return Err(Error::invalid("spinor representation requires n >= 1"));
    }
    let (field, e, two_reps) = match n % 8 {
        1 | 7 => (Field::R, (n - 1) / 2, false),
        0 => (Field::R, (n - 2) / 2, true),
        2 | 6 => (Field::C, (n - 2) / 2, true),
        3 | 5 => (Field::H, (n - 3) / 2, false),
        _ => (Field::H, (n - 4) / 2, true),
    };
    Ok(SpinorDimension {
        field,
        dim: two_pow(e),
        two_reps,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum KGroup {
    Z,
    Z2,
    Zero,
}

impl fmt::Display for KGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KGroup::Z => "Z",
            KGroup::Z2 => "Z/2",
            KGroup::Zero => "0",
        })
    }
}

/// A reduced K-group and, when nonzero, the class generating it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct KEntry {
    pub group: KGroup,
    pub generator: Option<&'static str>,
}

const fn entry(group: KGroup, generator: &'static str) -> KEntry {
    KEntry {
        group,
        generator: Some(generator),
    }
}

const ZERO: KEntry = KEntry {
    group: KGroup::Zero,
    generator: None,
};

/// `KO~^0`, `KU~^0` and `KSp~^0` of `S^n`, with generators expressed through
/// the spinor representations `Δ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphereKRow {
    pub n: u64,
    pub ko: KEntry,
    pub ku: KEntry,
    pub ksp: KEntry,
}

const KO: [KEntry; 8] = [
    entry(KGroup::Z, "χ(Δ_{n,+})"),
    entry(KGroup::Z2, "χ(Δ_n)"),
    entry(KGroup::Z2, "χ(rΔ_{n,+})"),
    ZERO,
    entry(KGroup::Z, "χ(rc'Δ_{n,+})"),
    ZERO,
    ZERO,
    ZERO,
];

const KU: [KEntry; 8] = [
    entry(KGroup::Z, "χ(cΔ_{n,+})"),
    ZERO,
    entry(KGroup::Z, "χ(Δ_{n,+})"),
    ZERO,
    entry(KGroup::Z, "χ(c'Δ_{n,+})"),
    ZERO,
    entry(KGroup::Z, "χ(Δ_{n,+})"),
    ZERO,
];

const KSP: [KEntry; 8] = [
    entry(KGroup::Z, "χ(qcΔ_{n,+})"),
    ZERO,
    ZERO,
    ZERO,
    entry(KGroup::Z, "χ(Δ_{n,+})"),
    entry(KGroup::Z2, "χ(Δ_n)"),
    entry(KGroup::Z2, "χ(qΔ_{n,+})"),
    ZERO,
];

pub fn k_sphere_row(n: u64) -> Result<SphereKRow> {
    if n == 0 {
        return Err(Error::invalid("sphere K-groups are tabulated for n >= 1"));
    }
    let i = (n % 8) as usize;
    Ok(SphereKRow {
        n,
        ko: KO[i],
        ku: KU[i],
        ksp: KSP[i],
    })
}
