//! Exact rational helpers shared by every stage.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Lowest common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales a rational vector to a primitive integer vector (content 1) whose
/// first nonzero entry is positive. Returns the zero vector unchanged.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(v.iter());
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let flip = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in ints.iter_mut() {
        *x = &*x / &g;
        if flip {
            *x = -&*x;
        }
    }
    ints
}

/// Prime factorization by trial division. Adequate for the denominators
/// that occur here, which are products of small primes.
pub fn factorize(n: &BigInt) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut m = n.abs();
    if m <= BigInt::one() {
        return out;
    }
    let mut p: u64 = 2;
    loop {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        while (&m % &bp).is_zero() {
            *out.entry(p).or_insert(0) += 1;
            m /= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
        if p > 10_000_000 {
            break;
        }
    }
    if m > BigInt::one() {
        let last = m.to_u64().unwrap_or(u64::MAX);
        *out.entry(last).or_insert(0) += 1;
    }
    out
}

pub fn prime_support(n: &BigInt) -> BTreeSet<u64> {
    factorize(n).into_keys().collect()
}

/// Rational serialized as decimal strings, `{"num": "...", "den": "..."}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalJson {
    fn from(q: &Rational) -> Self {
        RationalJson {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

impl RationalJson {
    pub fn to_rational(&self) -> Option<Rational> {
        let n: BigInt = self.num.parse().ok()?;
        let d: BigInt = self.den.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational::new(n, d))
    }
}

/// Compact human-readable rendering: `3`, `-1/2`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn sign_of(q: &Rational) -> Sign {
    q.numer().sign()
}

/// One provenance entry of the denominator ledger.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSource {
    pub prime: u64,
    pub stages: Vec<String>,
}

/// Primes inverted so far, with the stages that introduced each one.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DenominatorLedger {
    primes: BTreeMap<u64, Vec<String>>,
}

impl DenominatorLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_prime(&mut self, p: u64, stage: &str) {
        let stages = self.primes.entry(p).or_default();
        if !stages.iter().any(|s| s == stage) {
            stages.push(stage.to_string());
        }
    }

    pub fn add_integer(&mut self, n: &BigInt, stage: &str) {
        for p in prime_support(n) {
            self.add_prime(p, stage);
        }
    }

    pub fn add_rational(&mut self, q: &Rational, stage: &str) {
        if !q.denom().is_one() {
            self.add_integer(q.denom(), stage);
        }
    }

    pub fn add_all<'a>(&mut self, qs: impl IntoIterator<Item = &'a Rational>, stage: &str) {
        for q in qs {
            self.add_rational(q, stage);
        }
    }

    pub fn merge(&mut self, other: &DenominatorLedger) {
        for (p, stages) in &other.primes {
            for s in stages {
                self.add_prime(*p, s);
            }
        }
    }

    pub fn primes(&self) -> BTreeSet<u64> {
        self.primes.keys().copied().collect()
    }

    /// d = product of the ledger primes.
    pub fn d(&self) -> BigInt {
        self.primes
            .keys()
            .fold(BigInt::one(), |acc, p| acc * BigInt::from(*p))
    }

    pub fn sources(&self) -> Vec<PrimeSource> {
        self.primes
            .iter()
            .map(|(p, s)| PrimeSource {
                prime: *p,
                stages: s.clone(),
            })
            .collect()
    }

    /// True when every denominator of `q` is invertible in Z[1/d].
    pub fn covers(&self, q: &Rational) -> bool {
        prime_support(q.denom()).iter().all(|p| self.primes.contains_key(p))
    }
}

impl fmt::Display for DenominatorLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.primes.keys().map(|p| p.to_string()).collect();
        write!(f, "d = {} (primes {{{}}})", self.d(), ps.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_small() {
        let f = factorize(&BigInt::from(24));
        assert_eq!(f.get(&2), Some(&3));
        assert_eq!(f.get(&3), Some(&1));
        assert!(factorize(&BigInt::from(1)).is_empty());
        assert_eq!(prime_support(&BigInt::from(-98)), [2, 7].into_iter().collect());
    }

    #[test]
    fn primitive_vector_normalizes_sign_and_content() {
        let v = vec![frac(-1, 2), int(0), frac(3, 4)];
        let p = primitive_integer_vector(&v);
        assert_eq!(p, vec![BigInt::from(2), BigInt::from(0), BigInt::from(-3)]);
    }

    #[test]
    fn ledger_tracks_provenance() {
        let mut l = DenominatorLedger::new();
        l.add_rational(&frac(1, 6), "witt");
        l.add_rational(&frac(5, 4), "theta");
        assert_eq!(l.primes(), [2, 3].into_iter().collect());
        assert_eq!(l.d(), BigInt::from(6));
        let s = l.sources();
        assert_eq!(s[0].stages, vec!["witt".to_string(), "theta".to_string()]);
        assert!(l.covers(&frac(7, 12)));
        assert!(!l.covers(&frac(1, 5)));
    }

    #[test]
    fn rational_json_roundtrip() {
        let q = frac(-21, 2);
        let j = RationalJson::from(&q);
        assert_eq!(j.num, "-21");
        assert_eq!(j.den, "2");
        assert_eq!(j.to_rational(), Some(q));
    }
}
