//! Complex K-theory of `CP^n` as the truncated polynomial ring
//! `Z[u]/(u^{n+1})`, `u = [Taut] - 1`, plus a two-variable model that keeps
//! conjugate classes `ū` symbolic until realification.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::normal::{cp_realify_normalize, ObstructionForm};
use super::{fmt_linear, int};
use crate::jorders::ProjectiveKind;
use crate::{Error, Result};

/// An element of `KU^0(CP^n)`: `coeffs[k]` is the coefficient of `u^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CpClass {
    degree: usize,
    #[serde(serialize_with = "super::ser_big_vec")]
    coeffs: Vec<BigInt>,
}

fn fit(mut coeffs: Vec<BigInt>, degree: usize) -> Vec<BigInt> {
    coeffs.resize(degree + 1, BigInt::zero());
    coeffs
}

fn same_degree(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::TruncationMismatch { left: a, right: b })
    }
}

impl CpClass {
    /// Coefficients beyond `u^degree` are dropped, missing ones are zero.
    pub fn new<T: Into<BigInt>>(degree: usize, coeffs: impl IntoIterator<Item = T>) -> Self {
        let coeffs = coeffs
            .into_iter()
            .map(Into::into)
            .take(degree + 1)
            .collect();
        CpClass {
            degree,
            coeffs: fit(coeffs, degree),
        }
    }

    pub fn zero(degree: usize) -> Self {
        Self::new::<i32>(degree, [])
    }

    pub fn constant(degree: usize, c: impl Into<BigInt>) -> Self {
        Self::new(degree, [c.into()])
    }

    pub fn one(degree: usize) -> Self {
        Self::constant(degree, 1)
    }

    /// The generator `u`.
    pub fn u(degree: usize) -> Self {
        Self::new(degree, [0, 1])
    }

    /// The tautological line, `1 + u`.
    pub fn taut(degree: usize) -> Self {
        Self::new(degree, [1, 1])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Highest power of `u` with a nonzero coefficient.
    pub fn u_degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn checked_add(&self, rhs: &CpClass) -> Result<CpClass> {
        same_degree(self.degree, rhs.degree)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CpClass {
            degree: self.degree,
            coeffs,
        })
    }

    pub fn checked_sub(&self, rhs: &CpClass) -> Result<CpClass> {
        self.checked_add(&-rhs.clone())
    }

    pub fn checked_mul(&self, rhs: &CpClass) -> Result<CpClass> {
        same_degree(self.degree, rhs.degree)?;
        Ok(self.mul_unchecked(rhs))
    }

    fn mul_unchecked(&self, rhs: &CpClass) -> CpClass {
        let n = self.degree;
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        CpClass {
            degree: n,
            coeffs: out,
        }
    }

    pub fn scale(&self, k: &BigInt) -> CpClass {
        CpClass {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Substitutes `u ↦ s`. `s` must have zero constant term so the result
    /// stays a ring endomorphism of the truncated ring.
    fn compose(&self, s: &CpClass) -> CpClass {
        debug_assert!(s.coeffs[0].is_zero());
        let mut acc = CpClass::zero(self.degree);
        for c in self.coeffs[..=self.u_degree()].iter().rev() {
            acc = acc.mul_unchecked(s);
            acc.coeffs[0] += c;
        }
        acc
    }

    /// Adams operation: `u ↦ (1 + u)^k - 1`.
    pub fn psi(&self, k: u32) -> Result<CpClass> {
        if k == 0 {
            return Err(Error::invalid("psi^0 is not an Adams operation"));
        }
        let taut = CpClass::taut(self.degree);
        let mut power = CpClass::one(self.degree);
        for _ in 0..k {
            power = power.mul_unchecked(&taut);
        }
        power.coeffs[0] -= 1;
        Ok(self.compose(&power))
    }

    /// Complex conjugation: `[L] ↦ [L]^{-1}`, so `u ↦ sum_{k>=1} (-1)^k u^k`.
    pub fn conj(&self) -> CpClass {
        let series = (0..=self.degree).map(|k| match k {
            0 => 0,
            k if k % 2 == 0 => 1,
            _ => -1,
        });
        self.compose(&CpClass::new(self.degree, series))
    }

    /// `Sym^2 x = (x^2 + psi^2 x) / 2`.
    pub fn sym2(&self) -> Result<CpClass> {
        self.mul_unchecked(self).checked_add(&self.psi(2)?)?.halve()
    }

    /// `Lambda^2 x = (x^2 - psi^2 x) / 2`.
    pub fn lambda2(&self) -> Result<CpClass> {
        self.mul_unchecked(self).checked_sub(&self.psi(2)?)?.halve()
    }

    fn halve(self) -> Result<CpClass> {
        let two = int(2);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(&two);
            if !r.is_zero() {
                return Err(Error::Invariant(format!("{self} is not divisible by 2")));
            }
            coeffs.push(q);
        }
        Ok(CpClass {
            degree: self.degree,
            coeffs,
        })
    }
}

impl Neg for CpClass {
    type Output = CpClass;
    fn neg(self) -> CpClass {
        CpClass {
            degree: self.degree,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

fn power_label(base: &str, k: usize) -> String {
    if k == 1 {
        base.to_string()
    } else {
        format!("{base}^{k}")
    }
}

impl fmt::Display for CpClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (1..=self.degree).map(|k| power_label("u", k)).collect();
        let terms: Vec<(&BigInt, &str)> = self.coeffs[1..]
            .iter()
            .zip(&labels)
            .map(|(c, l)| (c, l.as_str()))
            .collect();
        f.write_str(&fmt_linear(&self.coeffs[0], &terms))
    }
}

/// An element of `KU^0(CP^n)` written with both `u` and `ū = conj(u)`.
///
/// Products are reduced with `uū = -u - ū` (from `(1 + u)(1 + ū) = 1`), so
/// every term is a pure power of `u` or of `ū`. Terms of total degree above
/// `n` vanish since `ū` is `u` times a unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CpMixedClass {
    degree: usize,
    /// `u[k]` is the coefficient of `u^k`; `u[0]` is the constant.
    #[serde(serialize_with = "super::ser_big_vec")]
    u: Vec<BigInt>,
    /// `ubar[k]` is the coefficient of `ū^k`; `ubar[0]` is always zero.
    #[serde(serialize_with = "super::ser_big_vec")]
    ubar: Vec<BigInt>,
}

impl From<CpClass> for CpMixedClass {
    fn from(x: CpClass) -> Self {
        CpMixedClass {
            degree: x.degree,
            u: x.coeffs,
            ubar: vec![BigInt::zero(); x.degree + 1],
        }
    }
}

impl CpMixedClass {
    pub fn new<T: Into<BigInt>>(
        degree: usize,
        u: impl IntoIterator<Item = T>,
        ubar: impl IntoIterator<Item = T>,
    ) -> Self {
        let u = fit(
            u.into_iter().map(Into::into).take(degree + 1).collect(),
            degree,
        );
        let mut ubar = fit(
            ubar.into_iter().map(Into::into).take(degree + 1).collect(),
            degree,
        );
        let c = std::mem::take(&mut ubar[0]);
        let mut x = CpMixedClass { degree, u, ubar };
        x.u[0] += c;
        x
    }

    /// `ū`, the conjugate generator.
    pub fn ubar(degree: usize) -> Self {
        Self::new(degree, [0], [0, 1])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn u_coeff(&self, k: usize) -> BigInt {
        self.u.get(k).cloned().unwrap_or_default()
    }

    pub fn ubar_coeff(&self, k: usize) -> BigInt {
        if k == 0 {
            return BigInt::zero();
        }
        self.ubar.get(k).cloned().unwrap_or_default()
    }

    pub fn constant(&self) -> &BigInt {
        &self.u[0]
    }

    /// Highest power of `u` or `ū` with a nonzero coefficient.
    pub fn total_degree(&self) -> usize {
        let top = |v: &[BigInt]| v.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        top(&self.u).max(top(&self.ubar))
    }

    pub fn conj(&self) -> CpMixedClass {
        let mut x = CpMixedClass {
            degree: self.degree,
            u: self.ubar.clone(),
            ubar: self.u.clone(),
        };
        x.u[0] = std::mem::take(&mut x.ubar[0]);
        x
    }

    pub fn checked_add(&self, rhs: &CpMixedClass) -> Result<CpMixedClass> {
        same_degree(self.degree, rhs.degree)?;
        let add = |a: &[BigInt], b: &[BigInt]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        Ok(CpMixedClass {
            degree: self.degree,
            u: add(&self.u, &rhs.u),
            ubar: add(&self.ubar, &rhs.ubar),
        })
    }

    pub fn checked_sub(&self, rhs: &CpMixedClass) -> Result<CpMixedClass> {
        self.checked_add(&-rhs.clone())
    }

    fn monomials(&self) -> impl Iterator<Item = ((usize, usize), &BigInt)> {
        let u = self.u.iter().enumerate().map(|(k, c)| ((k, 0), c));
        let ub = self
            .ubar
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| ((0, k), c));
        u.chain(ub).filter(|(_, c)| !c.is_zero())
    }

    pub fn checked_mul(&self, rhs: &CpMixedClass) -> Result<CpMixedClass> {
        same_degree(self.degree, rhs.degree)?;
        let n = self.degree;
        let mut terms: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for ((a1, b1), c1) in self.monomials() {
            for ((a2, b2), c2) in rhs.monomials() {
                let key = (a1 + a2, b1 + b2);
                if key.0 + key.1 <= n {
                    *terms.entry(key).or_default() += c1 * c2;
                }
            }
        }
        // u^a ū^b = -u^a ū^{b-1} - u^{a-1} ū^b, lowering total degree each step.
        let top = terms.keys().map(|(a, b)| a + b).max().unwrap_or(0);
        for d in (2..=top).rev() {
            for a in 1..d {
                let b = d - a;
                if let Some(c) = terms.remove(&(a, b)) {
                    *terms.entry((a, b - 1)).or_default() -= &c;
                    *terms.entry((a - 1, b)).or_default() -= &c;
                }
            }
        }
        let mut out = CpMixedClass::from(CpClass::zero(n));
        for ((a, b), c) in terms {
            if b == 0 {
                out.u[a] += c;
            } else {
                out.ubar[b] += c;
            }
        }
        Ok(out)
    }

    /// Collapses to the pure `u` model by substituting `ū = conj(u)`.
    pub fn evaluate(&self) -> CpClass {
        let pure_u = CpClass::new(self.degree, self.u.iter().cloned());
        let pure_ubar = CpClass::new(self.degree, self.ubar.iter().cloned());
        let conj_u = CpClass::u(self.degree).conj();
        pure_u
            .checked_add(&pure_ubar.compose(&conj_u))
            .expect("same truncation degree")
    }
}

impl Neg for CpMixedClass {
    type Output = CpMixedClass;
    fn neg(self) -> CpMixedClass {
        CpMixedClass {
            degree: self.degree,
            u: self.u.into_iter().map(|c| -c).collect(),
            ubar: self.ubar.into_iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for CpMixedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut labels = Vec::new();
        let mut coeffs = Vec::new();
        for k in 1..=self.degree {
            labels.push(power_label("u", k));
            coeffs.push(&self.u[k]);
            labels.push(power_label("ū", k));
            coeffs.push(&self.ubar[k]);
        }
        let terms: Vec<(&BigInt, &str)> = coeffs
            .into_iter()
            .zip(&labels)
            .map(|(c, l)| (c, l.as_str()))
            .collect();
        f.write_str(&fmt_linear(&self.u[0], &terms))
    }
}

/// Restrictions to `CP^p ⊂ Gr_C(p,q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CpRestrictions {
    /// `Taut^⊥ ⊗ Taut`.
    pub tensor: CpClass,
    /// `Taut^⊥ ⊗ conj(Taut)`.
    pub conj_tensor: CpMixedClass,
    pub sym2: CpClass,
    pub lambda2: CpClass,
    /// Hermitian forms on `Taut`, already realified.
    pub herm: ObstructionForm,
}

impl CpRestrictions {
    /// Coefficient of `ru` in the hermitian-form class.
    pub fn herm_real_linear(&self) -> &BigInt {
        &self.herm.linear
    }
}

/// Degree of the truncated ring the restriction classes are computed in.
///
/// Classes are expanded in `Z[u]/(u^{d+1})` with `d = max(p, 2)` and read on
/// `CP^p` through the quotient map, so the `u^2` term survives on `CP^1` and
/// every normal form has the same shape for all `p`.
pub fn working_degree(p: u64) -> usize {
    p.max(2) as usize
}

/// Restriction classes over `CP^p`, derived from `[Taut]| = [L] + (q - 1)`.
pub fn cp_restriction_classes(p: u64, q: u64) -> Result<CpRestrictions> {
    if p == 0 || q == 0 {
        return Err(Error::invalid(format!(
            "restriction to CP^p needs p, q >= 1 (got p={p}, q={q})"
        )));
    }
    let n = working_degree(p);
    let taut = CpClass::taut(n).checked_add(&CpClass::constant(n, int(q) - 1))?;
    let perp = CpClass::constant(n, int(p + q)).checked_sub(&taut)?;
    let conj_tensor =
        CpMixedClass::from(perp.clone()).checked_mul(&CpMixedClass::from(taut.clone()).conj())?;

    let lines = [
        (CpMixedClass::from(CpClass::taut(n)), 1),
        (CpMixedClass::from(CpClass::one(n)), q - 1),
    ];
    Ok(CpRestrictions {
        tensor: perp.checked_mul(&taut)?,
        conj_tensor,
        sym2: taut.sym2()?,
        lambda2: taut.lambda2()?,
        herm: herm_of_line_sum(n, &lines)?,
    })
}

/// Realified hermitian forms on a sum of complex lines, given as
/// `(line class, multiplicity)`: one real dimension per line and
/// `r(L_i ⊗ conj L_j)` per unordered pair.
pub fn herm_of_line_sum(degree: usize, lines: &[(CpMixedClass, u64)]) -> Result<ObstructionForm> {
    let mut total = ObstructionForm::zero(ProjectiveKind::Cp);
    let count: u64 = lines.iter().map(|(_, k)| k).sum();
    total.constant += count;
    for (i, (li, ki)) in lines.iter().enumerate() {
        for (j, (lj, kj)) in lines.iter().enumerate().skip(i) {
            let pairs = if i == j {
                int(ki * ki.saturating_sub(1) / 2)
            } else {
                int(ki * kj)
            };
            if pairs.is_zero() {
                continue;
            }
            if li.degree() != degree || lj.degree() != degree {
                return Err(Error::TruncationMismatch {
                    left: li.degree(),
                    right: lj.degree(),
                });
            }
            let pair = cp_realify_normalize(&li.checked_mul(&lj.conj())?)?;
            total = total.checked_add(&pair.scale(&pairs))?;
        }
    }
    Ok(total)
}
