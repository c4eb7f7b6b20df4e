//! The homogeneous spaces `G/H` the engine knows about, their parameter
//! domains, how to build an obstruction test for each, and the parameters
//! where compact quotients are known to exist.

use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::clifford::{clifford_algebra, k_sphere_row, spinor_dimension, Field, KGroup};
use crate::jorders::{j_sphere_group, ProjectiveKind};
use crate::numtheory::divides;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    OtherSym1,
    OtherSym2,
    OtherSym3,
    OtherSym4,
    OtherSym5,
    OtherSym6,
    NonSym1,
    NonSym2,
    NonSym3,
    NonSym4,
    NonSym5,
    NonSym6,
    NonSym7,
    GrassIndefR,
    GrassIndefC,
    GrassIndefH,
    HpqR,
    HpqC,
    HpqH,
    ComplexSphere,
}

/// How many integer parameters a family takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Arity {
    /// `n` (stored as `p`).
    One,
    /// `p, q`.
    Two,
    /// `p, q, q'`.
    Three,
}

/// Static description of a family.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyInfo {
    pub id: FamilyId,
    pub g: &'static str,
    pub h: &'static str,
    /// The associated symmetric subgroup, which shares the verdict.
    pub h_assoc: Option<&'static str>,
    pub arity: Arity,
    pub domain: &'static str,
    /// The exception set is exact, not just a necessary divisibility
    /// condition.
    pub exceptions_proved: bool,
    pub tests: &'static [TestTemplate],
}

/// A test described symbolically in `p`, `q`, for documentation.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TestTemplate {
    pub kind: TestKind,
    pub base: &'static str,
    pub bundle: &'static str,
    pub condition: &'static str,
}

const fn tmpl(
    kind: TestKind,
    base: &'static str,
    bundle: &'static str,
    condition: &'static str,
) -> TestTemplate {
    TestTemplate {
        kind,
        base,
        bundle,
        condition,
    }
}

use TestKind::{CpRestriction as CpR, HpRestriction as HpR, RangeRule as RR, RpRestriction as RpR};

const INFO: [FamilyInfo; 20] = [
    FamilyInfo {
        id: FamilyId::OtherSym1,
        g: "O(p+q,C)",
        h: "O(p,C)×O(q,C)",
        h_assoc: Some("O(p,q)"),
        arity: Arity::Two,
        domain: "p >= q >= 1",
        exceptions_proved: true,
        tests: &[tmpl(RpR, "RP^p", "Taut^⊥ ⊗ Taut", "j_RP(p) | p-q+2")],
    },
    FamilyInfo {
        id: FamilyId::OtherSym2,
        g: "O*(2p+2q)",
        h: "O*(2p)×O*(2q)",
        h_assoc: Some("U(p,q)"),
        arity: Arity::Two,
        domain: "p >= q >= 1",
        exceptions_proved: true,
        tests: &[tmpl(CpR, "CP^p", "Taut^⊥ ⊗ Taut", "odd(j_CP(p)) | p-q+1")],
    },
    FamilyInfo {
        id: FamilyId::OtherSym3,
        g: "Sp(2p+2q,R)",
        h: "Sp(2p,R)×Sp(2q,R)",
        h_assoc: Some("U(p,q)"),
        arity: Arity::Two,
        domain: "p >= q >= 1",
        exceptions_proved: true,
        tests: &[
            tmpl(CpR, "CP^p", "Taut^⊥ ⊗ Taut", "odd(j_CP(p)) | p-q+1"),
            tmpl(RpR, "RP^2", "(1,1): as grass-indef-r(2,2,1)", "j_RP(2) | 2"),
        ],
    },
    FamilyInfo {
        id: FamilyId::OtherSym4,
        g: "SL(2p,C)",
        h: "Sp(2p,C)",
        h_assoc: Some("SL(p,H)"),
        arity: Arity::One,
        domain: "p >= 2",
        exceptions_proved: true,
        tests: &[
            tmpl(
                RR,
                "S^9",
                "p >= 3: tangent bundle of SU(2p)/Sp(p)",
                "J(S^9) = Z/2 detects it",
            ),
            tmpl(RpR, "RP^5", "p = 2: as othersym1(5,1)", "j_RP(5) | 6"),
        ],
    },
    FamilyInfo {
        id: FamilyId::OtherSym5,
        g: "SO0(2p,2q)",
        h: "U(p,q)",
        h_assoc: Some("U(p,q)"),
        arity: Arity::Two,
        domain: "p >= q >= 2",
        exceptions_proved: true,
        tests: &[tmpl(
            RR,
            "S^2×S^2",
            "r(E_p ⊠ conj E_q)",
            "24 ∤ 4 in J(S^4) = Z/24",
        )],
    },
    FamilyInfo {
        id: FamilyId::OtherSym6,
        g: "SU(2p,2q)",
        h: "Sp(p,q)",
        h_assoc: Some("Sp(p,q)"),
        arity: Arity::Two,
        domain: "p >= q >= 2",
        exceptions_proved: true,
        tests: &[tmpl(
            RR,
            "S^5×S^5",
            "E_p ⊠_H conj E_q",
            "J(S^10) = Z/2 detects it",
        )],
    },
    FamilyInfo {
        id: FamilyId::NonSym1,
        g: "SL(p+q,R)",
        h: "SL(p,R)",
        h_assoc: None,
        arity: Arity::Two,
        domain: "p >= 2, q >= 1",
        exceptions_proved: true,
        tests: &[
            tmpl(RpR, "RP^p", "Taut^⊥ ⊗ Taut ⊕ Sym^2 Taut", "j_RP(p) | p+1"),
            tmpl(RpR, "RP^q", "Sym^2 R^{p+q} - Sym^2 Taut^⊥", "j_RP(q) | p-1"),
        ],
    },
    FamilyInfo {
        id: FamilyId::NonSym2,
        g: "O(p+q,C)",
        h: "O(p,C)",
        h_assoc: None,
        arity: Arity::Two,
        domain: "p >= 2, q >= 1",
        exceptions_proved: true,
        tests: &[
            tmpl(RpR, "RP^p", "Taut^⊥ ⊗ Taut ⊕ Λ^2 Taut", "j_RP(p) | p+1"),
            tmpl(RpR, "RP^q", "Λ^2 R^{p+q} - Λ^2 Taut^⊥", "j_RP(q) | p-1"),
        ],
    },
    FamilyInfo {
        id: FamilyId::NonSym3,
        g: "SL(p+q,C)",
        h: "SL(p,C)",
        h_assoc: None,
        arity: Arity::Two,
        domain: "p >= 2, q >= 1",
        exceptions_proved: true,
        tests: &[tmpl(
            CpR,
            "CP^p",
            "Taut^⊥ ⊗ conj(Taut) ⊕ Herm(Taut)",
            "j_CP(p) | p+1",
        )],
    },
    FamilyInfo {
        id: FamilyId::NonSym4,
        g: "O*(2p+2q)",
        h: "O*(2p)",
        h_assoc: None,
        arity: Arity::Two,
        domain: "p >= 2, q >= 1",
        exceptions_proved: true,
        tests: &[
            tmpl(CpR, "CP^p", "Taut^⊥ ⊗ Taut ⊕ Λ^2 Taut", "odd(j_CP(p)) | p"),
            tmpl(CpR, "CP^q", "Λ^2 C^{p+q} - Λ^2 Taut^⊥", "j_CP(q) | p-1"),
        ],
    },
    FamilyInfo {
        id: FamilyId::NonSym5,
        g: "Sp(2p+2q,R)",
        h: "Sp(2p,R)",
        h_assoc: None,
        arity: Arity::Two,
        domain: "p >= 1, q >= 1",
        exceptions_proved: true,
        tests: &[
            tmpl(CpR, "CP^p", "Taut^⊥ ⊗ Taut ⊕ Sym^2 Taut", "j_CP(p) | p+1"),
            tmpl(
                CpR,
                "CP^q",
                "Sym^2 C^{p+q} - Sym^2 Taut^⊥",
                "odd(j_CP(q)) | p",
            ),
        ],
    },
    FamilyInfo {
        id: FamilyId::NonSym6,
        g: "Sp(2p+2q,C)",
        h: "Sp(2p,C)",
        h_assoc: None,
        arity: Arity::Two,
        domain: "p >= 1, q >= 1",
        exceptions_proved: true,
        tests: &[tmpl(
            HpR,
            "HP^p",
            "Taut^⊥ ⊗ conj(Taut) ⊕ SkewHerm(Taut)",
            "j_HP(p) | p+1",
        )],
    },
    FamilyInfo {
        id: FamilyId::NonSym7,
        g: "SL(p+q,H)",
        h: "SL(p,H)",
        h_assoc: None,
        arity: Arity::Two,
        domain: "p >= 2, q >= 1",
        exceptions_proved: true,
        tests: &[tmpl(
            HpR,
            "HP^p",
            "Taut^⊥ ⊗ conj(Taut) ⊕ Herm(Taut)",
            "odd(j_HP(p)) | 2p+1",
        )],
    },
    FamilyInfo {
        id: FamilyId::GrassIndefR,
        g: "O(p,q+q')",
        h: "O(p,q)×O(q')",
        h_assoc: None,
        arity: Arity::Three,
        domain: "p, q, q' >= 1",
        exceptions_proved: false,
        tests: &[tmpl(
            TestKind::HurwitzRadon,
            "RP^n, n = max(q,q')",
            "p·Taut",
            "j_RP(n) | p",
        )],
    },
    FamilyInfo {
        id: FamilyId::GrassIndefC,
        g: "U(p,q+q')",
        h: "U(p,q)×U(q')",
        h_assoc: None,
        arity: Arity::Three,
        domain: "p, q, q' >= 1",
        exceptions_proved: false,
        tests: &[tmpl(
            TestKind::HurwitzRadon,
            "CP^n, n = max(q,q')",
            "p·Taut",
            "j_CP(n) | p",
        )],
    },
    FamilyInfo {
        id: FamilyId::GrassIndefH,
        g: "Sp(p,q+q')",
        h: "Sp(p,q)×Sp(q')",
        h_assoc: None,
        arity: Arity::Three,
        domain: "p, q, q' >= 1",
        exceptions_proved: false,
        tests: &[tmpl(
            TestKind::HurwitzRadon,
            "HP^n, n = max(q,q')",
            "p·Taut",
            "j_HP(n) | p",
        )],
    },
    FamilyInfo {
        id: FamilyId::HpqR,
        g: "O(p,q+1)",
        h: "O(p,q)×O(1)",
        h_assoc: None,
        arity: Arity::Two,
        domain: "p, q >= 1",
        exceptions_proved: false,
        tests: &[tmpl(
            TestKind::HurwitzRadon,
            "RP^q",
            "p·Taut",
            "2^nu(q) | p",
        )],
    },
    FamilyInfo {
        id: FamilyId::HpqC,
        g: "U(p,q+1)",
        h: "U(p,q)×U(1)",
        h_assoc: None,
        arity: Arity::Two,
        domain: "p, q >= 1",
        exceptions_proved: false,
        tests: &[tmpl(
            TestKind::HurwitzRadon,
            "CP^q",
            "p·Taut",
            "j_CP(q) | p",
        )],
    },
    FamilyInfo {
        id: FamilyId::HpqH,
        g: "Sp(p,q+1)",
        h: "Sp(p,q)×Sp(1)",
        h_assoc: None,
        arity: Arity::Two,
        domain: "p, q >= 1",
        exceptions_proved: false,
        tests: &[tmpl(
            TestKind::HurwitzRadon,
            "HP^q",
            "p·Taut",
            "j_HP(q) | p",
        )],
    },
    FamilyInfo {
        id: FamilyId::ComplexSphere,
        g: "O(n+1,C)",
        h: "O(n,C)",
        h_assoc: None,
        arity: Arity::One,
        domain: "n >= 1",
        exceptions_proved: true,
        tests: &[
            tmpl(
                RpR,
                "RP^n",
                "as nonsym2(n,1): tangent bundle ⊕ trivial",
                "j_RP(n) | n+1",
            ),
            tmpl(RpR, "RP^1", "as nonsym2(n,1)", "2 | n-1"),
        ],
    },
];

impl FamilyId {
    pub const ALL: [FamilyId; 20] = [
        FamilyId::OtherSym1,
        FamilyId::OtherSym2,
        FamilyId::OtherSym3,
        FamilyId::OtherSym4,
        FamilyId::OtherSym5,
        FamilyId::OtherSym6,
        FamilyId::NonSym1,
        FamilyId::NonSym2,
        FamilyId::NonSym3,
        FamilyId::NonSym4,
        FamilyId::NonSym5,
        FamilyId::NonSym6,
        FamilyId::NonSym7,
        FamilyId::GrassIndefR,
        FamilyId::GrassIndefC,
        FamilyId::GrassIndefH,
        FamilyId::HpqR,
        FamilyId::HpqC,
        FamilyId::HpqH,
        FamilyId::ComplexSphere,
    ];

    pub fn info(self) -> &'static FamilyInfo {
        &INFO[self as usize]
    }

    /// Hyphenated lowercase identifier, e.g. `hpq-r`.
    pub fn name(self) -> &'static str {
        match self {
            FamilyId::OtherSym1 => "othersym1",
            FamilyId::OtherSym2 => "othersym2",
            FamilyId::OtherSym3 => "othersym3",
            FamilyId::OtherSym4 => "othersym4",
            FamilyId::OtherSym5 => "othersym5",
            FamilyId::OtherSym6 => "othersym6",
            FamilyId::NonSym1 => "nonsym1",
            FamilyId::NonSym2 => "nonsym2",
            FamilyId::NonSym3 => "nonsym3",
            FamilyId::NonSym4 => "nonsym4",
            FamilyId::NonSym5 => "nonsym5",
            FamilyId::NonSym6 => "nonsym6",
            FamilyId::NonSym7 => "nonsym7",
            FamilyId::GrassIndefR => "grass-indef-r",
            FamilyId::GrassIndefC => "grass-indef-c",
            FamilyId::GrassIndefH => "grass-indef-h",
            FamilyId::HpqR => "hpq-r",
            FamilyId::HpqC => "hpq-c",
            FamilyId::HpqH => "hpq-h",
            FamilyId::ComplexSphere => "complex-sphere",
        }
    }

    /// Accepts hyphens or underscores, any case.
    pub fn from_name(name: &str) -> Option<FamilyId> {
        let wanted = name.trim().to_ascii_lowercase().replace('_', "-");
        FamilyId::ALL.into_iter().find(|f| f.name() == wanted)
    }

    pub fn arity(self) -> Arity {
        self.info().arity
    }

    /// `G/H`, with the associated space when there is one.
    pub fn space_name(self) -> String {
        let info = self.info();
        let h = if info.h.contains('×') {
            format!("({})", info.h)
        } else {
            info.h.to_string()
        };
        match info.h_assoc {
            Some(ha) if ha != info.h => format!("{0}/{1} (and {0}/{2})", info.g, h, ha),
            _ => format!("{}/{}", info.g, h),
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for FamilyId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A family together with its parameters. One-parameter families keep
/// their parameter in `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpaceSpec {
    pub family: FamilyId,
    pub p: u64,
    pub q: Option<u64>,
    pub q2: Option<u64>,
}

impl SpaceSpec {
    pub fn single(family: FamilyId, n: u64) -> Self {
        SpaceSpec {
            family,
            p: n,
            q: None,
            q2: None,
        }
    }

    pub fn pq(family: FamilyId, p: u64, q: u64) -> Self {
        SpaceSpec {
            family,
            p,
            q: Some(q),
            q2: None,
        }
    }

    pub fn grass(family: FamilyId, p: u64, q: u64, q2: u64) -> Self {
        SpaceSpec {
            family,
            p,
            q: Some(q),
            q2: Some(q2),
        }
    }

    /// The parameter tuple, as written in exception lists: `(p,q)`.
    pub fn params(&self) -> String {
        match (self.q, self.q2) {
            (Some(q), Some(q2)) => format!("({},{},{})", self.p, q, q2),
            (Some(q), None) => format!("({},{})", self.p, q),
            _ => format!("({})", self.p),
        }
    }

    fn domain_error(&self, constraint: impl Into<String>) -> Error {
        Error::Domain {
            family: self.family.name(),
            constraint: constraint.into(),
        }
    }

    /// Checks arity and the family's domain.
    pub fn validate(&self) -> Result<()> {
        let f = self.family;
        let arity_ok = match f.arity() {
            Arity::One => self.q.is_none() && self.q2.is_none(),
            Arity::Two => self.q.is_some() && self.q2.is_none(),
            Arity::Three => self.q.is_some() && self.q2.is_some(),
        };
        if !arity_ok {
            let expected = match f.arity() {
                Arity::One => "exactly one parameter",
                Arity::Two => "parameters p and q only",
                Arity::Three => "parameters p, q and q'",
            };
            return Err(self.domain_error(format!("expects {expected}")));
        }
        let p = self.p;
        let q = self.q.unwrap_or(0);
        let violated = match f {
            FamilyId::OtherSym1 | FamilyId::OtherSym2 | FamilyId::OtherSym3 => !(p >= q && q >= 1),
            FamilyId::OtherSym5 | FamilyId::OtherSym6 => !(p >= q && q >= 2),
            FamilyId::OtherSym4 => p < 2,
            FamilyId::NonSym1
            | FamilyId::NonSym2
            | FamilyId::NonSym3
            | FamilyId::NonSym4
            | FamilyId::NonSym7 => p < 2 || q < 1,
            FamilyId::NonSym5
            | FamilyId::NonSym6
            | FamilyId::HpqR
            | FamilyId::HpqC
            | FamilyId::HpqH => p < 1 || q < 1,
            FamilyId::GrassIndefR | FamilyId::GrassIndefC | FamilyId::GrassIndefH => {
                p < 1 || q < 1 || self.q2.unwrap_or(0) < 1
            }
            FamilyId::ComplexSphere => p < 1,
        };
        if violated {
            let domain = f.info().domain;
            return Err(self.domain_error(format!("requires {domain}, got {}", self.params())));
        }
        Ok(())
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.params())
    }
}

impl Serialize for SpaceSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("family", self.family.name())?;
        match self.family.arity() {
            Arity::One => {
                let key = if self.family == FamilyId::ComplexSphere {
                    "n"
                } else {
                    "p"
                };
                map.serialize_entry(key, &self.p)?;
            }
            _ => {
                map.serialize_entry("p", &self.p)?;
                if let Some(q) = self.q {
                    map.serialize_entry("q", &q)?;
                }
                if let Some(q2) = self.q2 {
                    map.serialize_entry("q2", &q2)?;
                }
            }
        }
        map.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestKind {
    RpRestriction,
    CpRestriction,
    HpRestriction,
    HurwitzRadon,
    RangeRule,
}

impl fmt::Display for TestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TestKind::RpRestriction => "RP-restriction",
            TestKind::CpRestriction => "CP-restriction",
            TestKind::HpRestriction => "HP-restriction",
            TestKind::HurwitzRadon => "Hurwitz-Radon lower bound",
            TestKind::RangeRule => "range rule",
        })
    }
}

/// A bundle functor applied to the tautological bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Summand {
    Sym2,
    Lambda2,
    Herm,
    SkewHerm,
}

impl Summand {
    fn label(self) -> &'static str {
        match self {
            Summand::Sym2 => "Sym^2",
            Summand::Lambda2 => "Λ^2",
            Summand::Herm => "Herm",
            Summand::SkewHerm => "SkewHerm",
        }
    }
}

/// Which class to build and restrict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "recipe", rename_all = "kebab-case")]
pub enum Recipe {
    /// `Taut^⊥ ⊗ Taut` (second factor conjugated when `conj`), plus an
    /// optional summand of `Taut`, restricted to `KP^p ⊂ Gr_K(p,q)`.
    Restriction {
        field: ProjectiveKind,
        conj: bool,
        summand: Option<Summand>,
    },
    /// `S(K^{p+q}) - S(Taut^⊥)` restricted to `KP^q ⊂ Gr_K(p,q)`. The first
    /// term is trivial because it extends to the whole compact group.
    Complement {
        field: ProjectiveKind,
        summand: Summand,
    },
    /// `p` copies of the tautological line over `KP^n`.
    TautMultiple { field: ProjectiveKind, n: u64 },
    /// Nonvanishing established through sphere K-theory; only the facts the
    /// argument rests on are checked.
    RangeRule { facts: Vec<SupportingFact> },
}

/// A tabulated fact a range rule depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "fact", rename_all = "kebab-case")]
pub enum SupportingFact {
    /// `KO~^0(S^n)`.
    KoSphere { n: u64, group: KGroup },
    /// `J~(S^n)` is cyclic of this order.
    JSphere { n: u64, order: u64 },
    /// `k` times a generator of `J~(S^n)` is nonzero.
    JSphereMultipleNonzero { n: u64, k: u64 },
    /// The spinor representation of `Cl^0_n`.
    Spinor { n: u64, field: Field, dim: u64 },
    Clifford {
        n: u64,
        field: Field,
        split: bool,
        size: u64,
    },
}

impl SupportingFact {
    pub fn verify(&self) -> Result<bool> {
        Ok(match *self {
            SupportingFact::KoSphere { n, group } => k_sphere_row(n)?.ko.group == group,
            SupportingFact::JSphere { n, order } => j_sphere_group(n)?.order == order.into(),
            SupportingFact::JSphereMultipleNonzero { n, k } => {
                !divides(&j_sphere_group(n)?.order, &k.into())
            }
            SupportingFact::Spinor { n, field, dim } => {
                let s = spinor_dimension(n)?;
                s.field == field && s.dim == dim.into()
            }
            SupportingFact::Clifford {
                n,
                field,
                split,
                size,
            } => {
                let c = clifford_algebra(n);
                c.field == field && c.split == split && c.matrix_size == size.into()
            }
        })
    }
}

impl fmt::Display for SupportingFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SupportingFact::KoSphere { n, group } => write!(f, "KO~(S^{n}) = {group}"),
            SupportingFact::JSphere { n, order } => write!(f, "J~(S^{n}) = Z/{order}"),
            SupportingFact::JSphereMultipleNonzero { n, k } => {
                write!(f, "{k}·x != 0 for a generator x of J~(S^{n})")
            }
            SupportingFact::Spinor { n, field, dim } => {
                write!(f, "spinor module of Cl^0_{n} = {field}^{dim}")
            }
            SupportingFact::Clifford {
                n,
                field,
                split,
                size,
            } => {
                write!(
                    f,
                    "Cl_{n} = M({size}, {field}){}",
                    if split { "^2" } else { "" }
                )
            }
        }
    }
}

/// The J-order a test compares against: `j_{KP^n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct JOrderRef {
    pub field: ProjectiveKind,
    pub n: u64,
}

impl fmt::Display for JOrderRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "j_{}({})", self.field.symbol(), self.n)
    }
}

/// One independently evaluable obstruction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionTest {
    pub kind: TestKind,
    pub recipe: Recipe,
    /// Parameters the recipe is evaluated at.
    pub p: u64,
    pub q: u64,
    /// `None` for range rules.
    pub j_order: Option<JOrderRef>,
    pub citation: String,
    /// Set when the test is borrowed from an isomorphic space.
    pub via: Option<SpaceSpec>,
}

impl ObstructionTest {
    /// The restricted class, e.g. `[N]|RP^3`.
    pub fn label(&self) -> String {
        match self.j_order {
            Some(j) => format!("[N]|{}^{}", j.field.symbol(), j.n),
            None => "[N]".to_string(),
        }
    }

    /// The bundle the recipe builds, in words.
    pub fn bundle(&self) -> String {
        let (k, tensor) = match self.field() {
            ProjectiveKind::Rp => ("R", "⊗_R"),
            ProjectiveKind::Cp => ("C", "⊗_C"),
            ProjectiveKind::Hp => ("H", "⊗_H"),
        };
        match &self.recipe {
            Recipe::Restriction { conj, summand, .. } => {
                let second = if *conj { "conj(Taut)" } else { "Taut" };
                let base = format!("Taut^⊥ {tensor} {second}");
                match summand {
                    Some(s) => format!("{base} ⊕ {}(Taut)", s.label()),
                    None => base,
                }
            }
            Recipe::Complement { summand, .. } => {
                format!("{0}({k}^{{p+q}}) - {0}(Taut^⊥)", summand.label())
            }
            Recipe::TautMultiple { .. } => format!("{}·Taut", self.p),
            Recipe::RangeRule { .. } => "normal bundle".to_string(),
        }
    }

    fn field(&self) -> ProjectiveKind {
        match &self.recipe {
            Recipe::Restriction { field, .. }
            | Recipe::Complement { field, .. }
            | Recipe::TautMultiple { field, .. } => *field,
            Recipe::RangeRule { .. } => ProjectiveKind::Rp,
        }
    }
}

fn restriction_kind(field: ProjectiveKind) -> TestKind {
    match field {
        ProjectiveKind::Rp => TestKind::RpRestriction,
        ProjectiveKind::Cp => TestKind::CpRestriction,
        ProjectiveKind::Hp => TestKind::HpRestriction,
    }
}

fn restriction(
    field: ProjectiveKind,
    conj: bool,
    summand: Option<Summand>,
    p: u64,
    q: u64,
    citation: &str,
) -> ObstructionTest {
    ObstructionTest {
        kind: restriction_kind(field),
        recipe: Recipe::Restriction {
            field,
            conj,
            summand,
        },
        p,
        q,
        j_order: Some(JOrderRef { field, n: p }),
        citation: citation.to_string(),
        via: None,
    }
}

fn complement(
    field: ProjectiveKind,
    summand: Summand,
    p: u64,
    q: u64,
    citation: &str,
) -> ObstructionTest {
    ObstructionTest {
        kind: restriction_kind(field),
        recipe: Recipe::Complement { field, summand },
        p,
        q,
        j_order: Some(JOrderRef { field, n: q }),
        citation: citation.to_string(),
        via: None,
    }
}

fn range_rule(facts: Vec<SupportingFact>, p: u64, q: u64, citation: &str) -> ObstructionTest {
    ObstructionTest {
        kind: TestKind::RangeRule,
        recipe: Recipe::RangeRule { facts },
        p,
        q,
        j_order: None,
        citation: citation.to_string(),
        via: None,
    }
}

fn routed(target: SpaceSpec) -> Result<Vec<ObstructionTest>> {
    let mut tests = build_tests(&target)?;
    for t in &mut tests {
        t.via.get_or_insert(target);
    }
    Ok(tests)
}

/// The obstruction tests for `spec`, after checking its domain.
pub fn tests_for(spec: &SpaceSpec) -> Result<Vec<ObstructionTest>> {
    spec.validate()?;
    build_tests(spec)
}

fn build_tests(spec: &SpaceSpec) -> Result<Vec<ObstructionTest>> {
    use ProjectiveKind::{Cp, Hp, Rp};
    let p = spec.p;
    let q = spec.q.unwrap_or(1);
    let tests = match spec.family {
        FamilyId::OtherSym1 => vec![restriction(
            Rp,
            false,
            None,
            p,
            q,
            "normal bundle = tangent bundle of Gr_R(p,q) = Taut^⊥ ⊗ Taut",
        )],
        FamilyId::OtherSym2 | FamilyId::OtherSym3 => {
            let mut tests = vec![restriction(
                Cp,
                false,
                None,
                p,
                q,
                "normal bundle = Taut^⊥ ⊗_C Taut over Gr_C(p,q); psi^2 rewrite and Adams conjecture",
            )];
            if spec.family == FamilyId::OtherSym3 && (p, q) == (1, 1) {
                // Sp(4,R)/(Sp(2,R)×Sp(2,R)) is locally O(2,3)/(O(2,2)×O(1)).
                tests.extend(routed(SpaceSpec::grass(FamilyId::GrassIndefR, 2, 2, 1))?);
            }
            tests
        }
        FamilyId::OtherSym4 if p == 2 => {
            // SL(4,C)/Sp(4,C) is locally O(6,C)/(O(5,C)×O(1,C)).
            routed(SpaceSpec::pq(FamilyId::OtherSym1, 5, 1))?
        }
        FamilyId::OtherSym4 => vec![range_rule(
            vec![
                SupportingFact::KoSphere { n: 9, group: KGroup::Z2 },
                SupportingFact::JSphere { n: 9, order: 2 },
                SupportingFact::KoSphere { n: 6, group: KGroup::Zero },
                SupportingFact::KoSphere { n: 15, group: KGroup::Zero },
                SupportingFact::KoSphere { n: 5, group: KGroup::Zero },
                SupportingFact::KoSphere { n: 14, group: KGroup::Zero },
                SupportingFact::Spinor { n: 9, field: Field::R, dim: 16 },
            ],
            p,
            0,
            "tangent bundle of SU(2p)/Sp(p) reduces to SU(6)/Sp(3), an S^5-bundle over S^9 \
             with KO^0(S^9) ≅ KO^0(X_3); its J-image is that of the spinor bundle of S^9",
        )],
        FamilyId::OtherSym5 => vec![range_rule(
            vec![
                SupportingFact::JSphere { n: 4, order: 24 },
                SupportingFact::JSphereMultipleNonzero { n: 4, k: 4 },
                SupportingFact::KoSphere { n: 2, group: KGroup::Z2 },
                SupportingFact::KoSphere { n: 4, group: KGroup::Z },
            ],
            p,
            q,
            "reduces to (p,q) = (2,2) on S^2×S^2, where [N] - 8 = -4·r(β1β2) and r(β1β2) \
             generates KO~(S^4)",
        )],
        FamilyId::OtherSym6 => vec![range_rule(
            vec![
                SupportingFact::KoSphere { n: 5, group: KGroup::Zero },
                SupportingFact::KoSphere { n: 10, group: KGroup::Z2 },
                SupportingFact::JSphere { n: 10, order: 2 },
                SupportingFact::Spinor { n: 5, field: Field::H, dim: 2 },
                SupportingFact::Clifford { n: 9, field: Field::C, split: false, size: 16 },
            ],
            p,
            q,
            "reduces to (p,q) = (2,2) on S^5×S^5, where [N] - 16 pulls back the generator \
             of KO~(S^10)",
        )],
        FamilyId::NonSym1 | FamilyId::NonSym2 => {
            let s = if spec.family == FamilyId::NonSym1 {
                Summand::Sym2
            } else {
                Summand::Lambda2
            };
            vec![
                restriction(Rp, false, Some(s), p, q, &format!("normal bundle = Taut^⊥ ⊗ Taut ⊕ {}(Taut) over Gr_R(p,q)", s.label())),
                complement(Rp, s, p, q, &format!("{0}(R^p ⊕ R^q) extends to O(p+q), so [N] = rank - [{0}(Taut^⊥)]", s.label())),
            ]
        }
        FamilyId::NonSym3 => vec![restriction(
            Cp,
            true,
            Some(Summand::Herm),
            p,
            q,
            "normal bundle = Taut^⊥ ⊗_C conj(Taut) ⊕ Herm(Taut) over Gr_C(p,q)",
        )],
        FamilyId::NonSym4 | FamilyId::NonSym5 => {
            let s = if spec.family == FamilyId::NonSym4 {
                Summand::Lambda2
            } else {
                Summand::Sym2
            };
            vec![
                restriction(Cp, false, Some(s), p, q, &format!("normal bundle = Taut^⊥ ⊗_C Taut ⊕ {}(Taut) over Gr_C(p,q)", s.label())),
                complement(Cp, s, p, q, &format!("{0}(C^p ⊕ C^q) extends to U(p+q), so [N] = rank - [{0}(Taut^⊥)]", s.label())),
            ]
        }
        FamilyId::NonSym6 => vec![restriction(
            Hp,
            true,
            Some(Summand::SkewHerm),
            p,
            q,
            "normal bundle = Taut^⊥ ⊗_H conj(Taut) ⊕ SkewHerm(Taut) over Gr_H(p,q)",
        )],
        FamilyId::NonSym7 => vec![restriction(
            Hp,
            true,
            Some(Summand::Herm),
            p,
            q,
            "normal bundle = Taut^⊥ ⊗_H conj(Taut) ⊕ Herm(Taut) over Gr_H(p,q); doubled via 2v^2 = T - 3 rc'v",
        )],
        FamilyId::GrassIndefR | FamilyId::GrassIndefC | FamilyId::GrassIndefH => {
            let field = match spec.family {
                FamilyId::GrassIndefR => Rp,
                FamilyId::GrassIndefC => Cp,
                _ => Hp,
            };
            let n = q.max(spec.q2.unwrap_or(1));
            vec![ObstructionTest {
                kind: TestKind::HurwitzRadon,
                recipe: Recipe::TautMultiple { field, n },
                p,
                q,
                j_order: Some(JOrderRef { field, n }),
                citation: "normal bundle is p copies of Taut; restricted to KP^n, n = max(q,q'), \
                           it is p·Taut_{KP^n}"
                    .to_string(),
                via: None,
            }]
        }
        FamilyId::HpqR => routed(SpaceSpec::grass(FamilyId::GrassIndefR, p, q, 1))?,
        FamilyId::HpqC => routed(SpaceSpec::grass(FamilyId::GrassIndefC, p, q, 1))?,
        FamilyId::HpqH => routed(SpaceSpec::grass(FamilyId::GrassIndefH, p, q, 1))?,
        FamilyId::ComplexSphere => routed(SpaceSpec::pq(FamilyId::NonSym2, p, 1))?,
    };
    Ok(tests)
}

/// A parameter value where compact quotients are known to exist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExistenceNote {
    pub description: String,
    pub reference: &'static str,
}

fn note(description: impl Into<String>, reference: &'static str) -> Option<ExistenceNote> {
    Some(ExistenceNote {
        description: description.into(),
        reference,
    })
}

/// Known compact quotients. Works outside the test domains too, e.g. for
/// `hpq-r` with `q = 0`.
pub fn known_existence(spec: &SpaceSpec) -> Option<ExistenceNote> {
    let p = spec.p;
    let q = spec.q;
    match (spec.family, q) {
        (FamilyId::HpqR, Some(q)) => {
            if p == 0 {
                note("H^{0,q} = RP^q is compact", "elementary")
            } else if q == 0 {
                note("H^{p,0} is Riemannian hyperbolic space", "Borel (1963)")
            } else if q == 1 && p.is_multiple_of(2) {
                note(
                    format!(
                        "U({},1) acts transitively on H^{{{p},1}} with compact stabilizer",
                        p / 2
                    ),
                    "Kulkarni (1981)",
                )
            } else if q == 3 && p.is_multiple_of(4) {
                note(
                    format!(
                        "Sp({},1) acts transitively on H^{{{p},3}} with compact stabilizer",
                        p / 4
                    ),
                    "Kulkarni (1981)",
                )
            } else if (p, q) == (8, 7) {
                note(
                    "Spin(1,8) standard quotient: Spin(1,8) ⊂ O(8,8) acts transitively on H^{8,7}",
                    "Kobayashi (1997)",
                )
            } else {
                None
            }
        }
        (FamilyId::HpqC, Some(1)) if p.is_multiple_of(2) => note(
            format!("H^{{{p},1}}_C = U({p},2)/(U({p},1)×U(1)) has standard compact quotients"),
            "Kobayashi (1989)",
        ),
        (FamilyId::GrassIndefR, Some(q)) => match (p, q, spec.q2) {
            (4, 1, Some(2)) => note(
                "O(4,3)/(O(4,1)×O(2)) has compact quotients",
                "Kobayashi (1997)",
            ),
            (4, 1, Some(3)) => note(
                "O(4,4)/(O(4,1)×O(3)) has compact quotients",
                "Kobayashi (1997)",
            ),
            (_, _, Some(1)) => known_existence(&SpaceSpec::pq(FamilyId::HpqR, p, q)),
            _ => None,
        },
        (FamilyId::GrassIndefC, Some(q)) if spec.q2 == Some(1) => {
            known_existence(&SpaceSpec::pq(FamilyId::HpqC, p, q))
        }
        (FamilyId::ComplexSphere, None) => match p {
            1 => note("O(1,C) is compact", "elementary"),
            3 => note(
                "S^3_C is locally (SL(2,C)×SL(2,C))/Diag, a group manifold",
                "elementary",
            ),
            7 => note(
                "Spin(1,7) ⊂ O(8,C) acts transitively on S^7_C with compact stabilizer",
                "Kobayashi–Yoshino (2005)",
            ),
            _ => None,
        },
        (FamilyId::NonSym2, Some(1)) => {
            known_existence(&SpaceSpec::single(FamilyId::ComplexSphere, p)).filter(|_| p >= 2)
        }
        (FamilyId::OtherSym1, Some(1)) => match p {
            3 => note(
                "O(4,C)/(O(3,C)×O(1,C)) and O(4,C)/O(3,1) are locally group manifolds of O(3,C)",
                "elementary",
            ),
            7 => note(
                "O(8,C)/(O(7,C)×O(1,C)) and O(8,C)/O(7,1) have standard compact quotients",
                "Kobayashi–Yoshino (2005)",
            ),
            _ => None,
        },
        (FamilyId::OtherSym2, Some(1)) if p == 3 => note(
            "O*(8)/(O*(6)×O*(2)) and O*(8)/U(3,1) are locally SO0(6,2)/U(3,1)",
            "Kobayashi (1989)",
        ),
        (FamilyId::OtherSym5, Some(1)) => note(
            format!("SO0({},2)/U({p},1) has standard compact quotients", 2 * p),
            "Kobayashi (1989)",
        ),
        (FamilyId::OtherSym6, Some(1)) => note(
            format!("SU({},2)/Sp({p},1) has standard compact quotients", 2 * p),
            "Kobayashi (1989)",
        ),
        _ => None,
    }
}

/// One catalog row for export.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub family: FamilyId,
    pub space: String,
    #[serde(flatten)]
    pub info: &'static FamilyInfo,
}

/// The whole catalog, in declaration order.
pub fn catalog() -> Vec<CatalogEntry> {
    FamilyId::ALL
        .into_iter()
        .map(|f| CatalogEntry {
            family: f,
            space: f.space_name(),
            info: f.info(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for f in FamilyId::ALL {
            assert_eq!(FamilyId::from_name(f.name()), Some(f));
            assert_eq!(f.info().id, f);
        }
        assert_eq!(FamilyId::from_name("HPQ_R"), Some(FamilyId::HpqR));
        assert_eq!(FamilyId::from_name("nonsym8"), None);
    }

    #[test]
    fn domain_errors() {
        let bad = SpaceSpec::pq(FamilyId::OtherSym2, 1, 2);
        match tests_for(&bad) {
            Err(Error::Domain { family, constraint }) => {
                assert_eq!(family, "othersym2");
                assert!(constraint.contains("p >= q >= 1"), "{constraint}");
            }
            other => panic!("expected domain error, got {other:?}"),
        }
        assert!(tests_for(&SpaceSpec::pq(FamilyId::NonSym1, 1, 1)).is_err());
        assert!(tests_for(&SpaceSpec::pq(FamilyId::OtherSym5, 3, 1)).is_err());
        assert!(tests_for(&SpaceSpec::single(FamilyId::OtherSym4, 1)).is_err());
        assert!(tests_for(&SpaceSpec::single(FamilyId::ComplexSphere, 0)).is_err());
        assert!(tests_for(&SpaceSpec::pq(FamilyId::GrassIndefR, 2, 1)).is_err());
        assert!(tests_for(&SpaceSpec::single(FamilyId::NonSym3, 4)).is_err());
    }

    #[test]
    fn test_shapes() {
        let t = tests_for(&SpaceSpec::pq(FamilyId::NonSym1, 3, 1)).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(
            t[0].j_order,
            Some(JOrderRef {
                field: ProjectiveKind::Rp,
                n: 3
            })
        );
        assert_eq!(
            t[1].j_order,
            Some(JOrderRef {
                field: ProjectiveKind::Rp,
                n: 1
            })
        );

        let t = tests_for(&SpaceSpec::pq(FamilyId::HpqR, 6, 2)).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].kind, TestKind::HurwitzRadon);
        assert_eq!(
            t[0].via,
            Some(SpaceSpec::grass(FamilyId::GrassIndefR, 6, 2, 1))
        );

        let t = tests_for(&SpaceSpec::pq(FamilyId::OtherSym3, 1, 1)).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(
            t[1].j_order,
            Some(JOrderRef {
                field: ProjectiveKind::Rp,
                n: 2
            })
        );

        let t = tests_for(&SpaceSpec::single(FamilyId::OtherSym4, 2)).unwrap();
        assert_eq!(t[0].via, Some(SpaceSpec::pq(FamilyId::OtherSym1, 5, 1)));
        let t = tests_for(&SpaceSpec::single(FamilyId::OtherSym4, 3)).unwrap();
        assert_eq!(t[0].kind, TestKind::RangeRule);

        let t = tests_for(&SpaceSpec::single(FamilyId::ComplexSphere, 1)).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].bundle(), "Taut^⊥ ⊗_R Taut ⊕ Λ^2(Taut)");
    }

    #[test]
    fn range_rule_facts_hold() {
        for spec in [
            SpaceSpec::single(FamilyId::OtherSym4, 5),
            SpaceSpec::pq(FamilyId::OtherSym5, 4, 2),
            SpaceSpec::pq(FamilyId::OtherSym6, 3, 3),
        ] {
            for t in tests_for(&spec).unwrap() {
                let Recipe::RangeRule { facts } = &t.recipe else {
                    panic!("expected a range rule for {spec}");
                };
                for f in facts {
                    assert!(f.verify().unwrap(), "{f}");
                }
            }
        }
        let wrong = SupportingFact::Spinor {
            n: 5,
            field: Field::H,
            dim: 1,
        };
        assert!(!wrong.verify().unwrap());
    }

    #[test]
    fn existence_examples() {
        assert!(known_existence(&SpaceSpec::pq(FamilyId::HpqR, 8, 7))
            .unwrap()
            .description
            .contains("Spin(1,8)"));
        assert!(known_existence(&SpaceSpec::single(FamilyId::ComplexSphere, 7)).is_some());
        assert!(known_existence(&SpaceSpec::pq(FamilyId::HpqR, 6, 2)).is_none());
        assert!(known_existence(&SpaceSpec::pq(FamilyId::HpqR, 4, 2)).is_none());
        assert!(known_existence(&SpaceSpec::pq(FamilyId::HpqR, 5, 0)).is_some());
        assert!(known_existence(&SpaceSpec::grass(FamilyId::GrassIndefR, 4, 1, 3)).is_some());
        assert!(known_existence(&SpaceSpec::grass(FamilyId::GrassIndefR, 12, 3, 1)).is_some());
        assert!(known_existence(&SpaceSpec::single(FamilyId::ComplexSphere, 5)).is_none());
    }

    #[test]
    fn catalog_serializes() {
        let json = serde_json::to_value(catalog()).unwrap();
        let rows = json.as_array().unwrap();
        assert_eq!(rows.len(), 20);
        assert_eq!(rows[16]["family"], "hpq-r");
        assert_eq!(rows[0]["domain"], "p >= q >= 1");
        assert!(rows[0]["tests"].as_array().unwrap().len() == 1);
    }
}
