//! Exact integer utilities: p-adic valuations, small primes, and the two
//! exponent functions that control the J-orders of projective spaces.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::{Error, Result};

/// Trial-division primality test. Inputs here stay small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn require_prime(prime: u64) -> Result<()> {
    if is_prime(prime) {
        Ok(())
    } else {
        Err(Error::invalid(format!("{prime} is not prime")))
    }
}

/// Exponent of `prime` in the factorization of `n`.
pub fn vp(prime: u64, n: u64) -> Result<u32> {
    require_prime(prime)?;
    if n == 0 {
        return Err(Error::invalid("valuation of 0 is undefined"));
    }
    let mut n = n;
    let mut e = 0;
    while n.is_multiple_of(prime) {
        n /= prime;
        e += 1;
    }
    Ok(e)
}

/// [`vp`] for arbitrary-precision arguments.
pub fn vp_big(prime: u64, n: &BigUint) -> Result<u32> {
    require_prime(prime)?;
    if n.is_zero() {
        return Err(Error::invalid("valuation of 0 is undefined"));
    }
    let p = BigUint::from(prime);
    let mut n = n.clone();
    let mut e = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        e += 1;
    }
    Ok(e)
}

/// All primes `<= bound`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let len = bound as usize + 1;
    let mut composite = vec![false; len];
    let mut out = Vec::new();
    for i in 2..len {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j < len {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// `n` with every factor of 2 removed.
///
/// For the Adams-conjecture weakening: a J-order `j` divides `2^e * m` for
/// all large `e` exactly when `odd_part(j)` divides `m`.
pub fn odd_part(n: &BigUint) -> Result<BigUint> {
    match n.trailing_zeros() {
        None => Err(Error::invalid("odd part of 0 is undefined")),
        Some(z) => Ok(n >> z),
    }
}

/// Hurwitz–Radon exponent: `floor(n/2)` when `n mod 8` is 0, 6 or 7, and
/// `floor(n/2) + 1` otherwise. Defined for `n >= 1` only.
pub fn nu(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::invalid("nu(n) requires n >= 1"));
    }
    let half = (n / 2) as u32;
    Ok(match n % 8 {
        0 | 6 | 7 => half,
        _ => half + 1,
    })
}

/// `max { r + v_p(r) : 1 <= r <= floor(n / (p - 1)) }`, by direct enumeration.
pub fn xi(prime: u64, n: u64) -> Result<u32> {
    require_prime(prime)?;
    let top = n / (prime - 1);
    if top == 0 {
        return Err(Error::invalid(format!(
            "xi({prime}, {n}) has an empty range (need prime <= n + 1)"
        )));
    }
    let mut best = 0u32;
    for r in 1..=top {
        let val = r as u32 + vp(prime, r)?;
        best = best.max(val);
    }
    Ok(best)
}

/// `base^exp` as a big integer.
pub fn big_pow(base: u64, exp: u32) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

/// Whether `d` divides `n`; zero is divisible by everything, nothing but zero
/// is divisible by zero.
pub fn divides(d: &BigUint, n: &BigUint) -> bool {
    if d.is_zero() {
        return n.is_zero();
    }
    (n % d).is_zero()
}
