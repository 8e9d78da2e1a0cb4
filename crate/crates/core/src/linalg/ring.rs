use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient ring of an algebra or matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseRing {
    Integers,
    PrimeField(u64),
    Rationals,
}

impl BaseRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(BaseRing::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            BaseRing::PrimeField(p) => *p,
            _ => 0,
        }
    }

    /// Canonical representative: residues in `[0, p)` over a prime field.
    pub fn normalize(&self, x: BigInt) -> BigInt {
        match self {
            BaseRing::PrimeField(p) => x.mod_floor(&BigInt::from(*p)),
            _ => x,
        }
    }

    pub fn is_unit(&self, x: &BigInt) -> bool {
        match self {
            BaseRing::Integers => x.abs().is_one(),
            BaseRing::PrimeField(p) => !x.mod_floor(&BigInt::from(*p)).is_zero(),
            BaseRing::Rationals => !x.is_zero(),
        }
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Integers => write!(f, "Z"),
            BaseRing::PrimeField(p) => write!(f, "GF({p})"),
            BaseRing::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for BaseRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Z" | "ZZ" | "integers" => return Ok(BaseRing::Integers),
            "Q" | "QQ" | "rationals" => return Ok(BaseRing::Rationals),
            _ => {}
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix('F'));
        match inner.and_then(|r| r.parse::<u64>().ok()) {
            Some(p) => BaseRing::prime_field(p),
            None => Err(Error::Parse(format!("unrecognised base ring '{s}'"))),
        }
    }
}

/// Trial division; fine for the machine-word primes this crate deals in.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors of `|n|`, ascending. Zero and units have none.
pub fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let two = BigInt::from(2);
    if n.is_even() {
        out.push(two.clone());
        while n.is_even() {
            n /= &two;
        }
    }
    let mut d = BigInt::from(3);
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            while n.is_multiple_of(&d) {
                n /= &d;
            }
        }
        d += &two;
    }
    if !n.is_one() {
        out.push(n);
    }
    out
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && n.is_multiple_of(&p) {
        n /= &p;
        v += 1;
    }
    v
}

pub(crate) fn to_residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in a machine word")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_by_trial_division() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(BaseRing::prime_field(9).is_err());
        assert_eq!(BaseRing::prime_field(7).unwrap(), BaseRing::PrimeField(7));
    }

    #[test]
    fn factor_elementary_divisors() {
        assert_eq!(
            prime_divisors(&BigInt::from(-360)),
            vec![BigInt::from(2), BigInt::from(3), BigInt::from(5)]
        );
        assert!(prime_divisors(&BigInt::from(1)).is_empty());
        assert_eq!(valuation(&BigInt::from(24), 2), 3);
    }

    #[test]
    fn parse_and_display_round_trip() {
        for b in [BaseRing::Integers, BaseRing::Rationals, BaseRing::PrimeField(5)] {
            assert_eq!(b.to_string().parse::<BaseRing>().unwrap(), b);
        }
        assert!("GF(4)".parse::<BaseRing>().is_err());
        assert_eq!(BaseRing::PrimeField(3).normalize(BigInt::from(-1)), BigInt::from(2));
    }
}
