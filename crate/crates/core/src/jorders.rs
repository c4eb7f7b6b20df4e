//! Orders of reduced J-group images: the tautological line bundles over real,
//! complex and quaternionic projective spaces, and the J-groups of spheres.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::numtheory::{big_pow, nu, primes_up_to, vp, xi};
use crate::{Error, Result};

/// A positive integer kept together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JOrder {
    #[serde(serialize_with = "crate::serde_big::biguint")]
    value: BigUint,
    factorization: BTreeMap<u64, u32>,
}

impl JOrder {
    /// Builds an order from its factorization. Zero exponents are dropped.
    pub fn from_factorization(factors: impl IntoIterator<Item = (u64, u32)>) -> Self {
        let factorization: BTreeMap<u64, u32> =
            factors.into_iter().filter(|&(_, e)| e > 0).collect();
        let value = factorization
            .iter()
            .fold(BigUint::one(), |acc, (&p, &e)| acc * big_pow(p, e));
        JOrder {
            value,
            factorization,
        }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn factorization(&self) -> &BTreeMap<u64, u32> {
        &self.factorization
    }

    pub fn exponent(&self, prime: u64) -> u32 {
        self.factorization.get(&prime).copied().unwrap_or(0)
    }

    /// Product of the factorization; equals [`JOrder::value`] by construction.
    pub fn recompute(&self) -> BigUint {
        self.factorization
            .iter()
            .fold(BigUint::one(), |acc, (&p, &e)| acc * big_pow(p, e))
    }

    /// Factorization as `2^6 · 3^2 · 5`. A lone prime keeps its exponent
    /// (`2^1`) so the factored form never reads as a bare number.
    pub fn factor_string(&self) -> String {
        if self.factorization.is_empty() {
            return "1".to_string();
        }
        let single = self.factorization.len() == 1;
        self.factorization
            .iter()
            .map(|(p, e)| {
                if *e == 1 && !single {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" · ")
    }
}

impl fmt::Display for JOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.value, self.factor_string())
    }
}

/// Which projective space a J-order refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjectiveKind {
    Rp,
    Cp,
    Hp,
}

impl ProjectiveKind {
    pub fn symbol(self) -> &'static str {
        match self {
            ProjectiveKind::Rp => "RP",
            ProjectiveKind::Cp => "CP",
            ProjectiveKind::Hp => "HP",
        }
    }
}

/// `j_{KP^n}` for the given field.
pub fn j_order(kind: ProjectiveKind, n: u64) -> Result<JOrder> {
    match kind {
        ProjectiveKind::Rp => j_rp(n),
        ProjectiveKind::Cp => j_cp(n),
        ProjectiveKind::Hp => j_hp(n),
    }
}

/// `j_{RP^n} = 2^{nu(n)}`.
pub fn j_rp(n: u64) -> Result<JOrder> {
    let e = nu(n)?;
    Ok(JOrder::from_factorization([(2, e)]))
}

fn cp_cache() -> &'static Mutex<HashMap<u64, JOrder>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, JOrder>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `j_{CP^n} = prod_{p <= n+1} p^{xi_p(n)}`.
pub fn j_cp(n: u64) -> Result<JOrder> {
    if n == 0 {
        return Err(Error::invalid("j_CP(n) requires n >= 1"));
    }
    if let Some(hit) = cp_cache().lock().expect("cache poisoned").get(&n) {
        return Ok(hit.clone());
    }
    let factors = primes_up_to(n + 1)
        .into_iter()
        .map(|p| xi(p, n).map(|e| (p, e)))
        .collect::<Result<Vec<_>>>()?;
    let order = JOrder::from_factorization(factors);
    cp_cache()
        .lock()
        .expect("cache poisoned")
        .insert(n, order.clone());
    Ok(order)
}

/// `j_{HP^n}`: `j_{CP^{2n}}` when `xi_2(2n) = 2n + 1`, half of it when
/// `xi_2(2n) >= 2n + 2`.
pub fn j_hp(n: u64) -> Result<JOrder> {
    if n == 0 {
        return Err(Error::invalid("j_HP(n) requires n >= 1"));
    }
    let doubled = j_cp(2 * n)?;
    let e2 = xi(2, 2 * n)? as u64;
    if e2 <= 2 * n {
        return Err(Error::Invariant(format!(
            "xi_2({}) = {e2} <= {}",
            2 * n,
            2 * n
        )));
    }
    if e2 == 2 * n + 1 {
        return Ok(doubled);
    }
    let factors = doubled
        .factorization()
        .iter()
        .map(|(&p, &e)| if p == 2 { (p, e - 1) } else { (p, e) });
    Ok(JOrder::from_factorization(factors))
}

/// `s_n = prod_{2(p-1) | n} p^{1 + v_p(n)}` for `n ≡ 0 mod 4`.
pub fn s_sphere(n: u64) -> Result<BigUint> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(Error::invalid(format!(
            "s_n requires n ≡ 0 mod 4, n >= 4; got {n}"
        )));
    }
    let mut out = BigUint::one();
    for p in primes_up_to(n / 2 + 1) {
        if n.is_multiple_of(2 * (p - 1)) {
            out *= big_pow(p, 1 + vp(p, n)?);
        }
    }
    Ok(out)
}

/// A cyclic group described by its order; order 1 is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicGroup {
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub order: BigUint,
}

impl CyclicGroup {
    pub fn of_order(order: impl Into<BigUint>) -> Self {
        CyclicGroup {
            order: order.into(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }
}

impl fmt::Display for CyclicGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            write!(f, "0")
        } else {
            write!(f, "Z/{}", self.order)
        }
    }
}

/// The reduced J-group of `S^n`.
pub fn j_sphere_group(n: u64) -> Result<CyclicGroup> {
    if n == 0 {
        return Err(Error::invalid("J(S^n) requires n >= 1"));
    }
    Ok(match n % 8 {
        3 | 5 | 6 | 7 => CyclicGroup::of_order(1u32),
        1 | 2 => CyclicGroup::of_order(2u32),
        _ => CyclicGroup::of_order(s_sphere(n)?),
    })
}
