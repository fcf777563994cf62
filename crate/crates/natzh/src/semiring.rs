// natzh - Rust library for exact SAT and #SAT solving by rewriting
//         NatZH tensor-network diagrams
// Copyright (C) 2026 - the natzh developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Evaluation carriers for closed diagrams.
//!
//! A closed diagram has one syntax and two meanings: its value over the
//! naturals is a model count, its value over the booleans is a
//! satisfiability verdict. The two are linked by the projection
//! homomorphism `n ↦ [n > 0]`, so everything here is computed exactly in
//! ℕ and projected on demand. There is deliberately no floating-point
//! carrier: every comparison in the library is exact equality.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// An arbitrary-precision natural number.
///
/// Counts reach 2^n for n-variable instances, so a fixed-width integer is
/// not an option anywhere a count is stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Natural(BigUint);

impl Natural {
    pub fn zero() -> Self {
        Natural(BigUint::zero())
    }

    pub fn one() -> Self {
        Natural(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// True iff the value is exactly 2^c for some c ≥ 0.
    pub fn is_power_of_two(&self) -> bool {
        !self.is_zero() && (&self.0 & (&self.0 - BigUint::one())).is_zero()
    }

    pub fn to_decimal(&self) -> String {
        self.0.to_str_radix(10)
    }

    /// Parses a decimal string. Returns `None` on any non-digit input.
    pub fn from_decimal(s: &str) -> Option<Self> {
        BigUint::parse_bytes(s.as_bytes(), 10).map(Natural)
    }
}

/// 2^c, exactly, for any c.
pub fn pow2(c: u64) -> Natural {
    Natural(BigUint::one() << c)
}

/// The projection ℕ → 𝔹, the unique semiring homomorphism between them:
/// 0 ↦ 0 and everything else ↦ 1.
pub fn project(n: &Natural) -> bool {
    !n.is_zero()
}

impl fmt::Debug for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u64> for Natural {
    fn from(v: u64) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<u32> for Natural {
    fn from(v: u32) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<BigUint> for Natural {
    fn from(v: BigUint) -> Self {
        Natural(v)
    }
}

impl Add for Natural {
    type Output = Natural;
    fn add(self, rhs: Natural) -> Natural {
        Natural(self.0 + rhs.0)
    }
}

impl Add<&Natural> for Natural {
    type Output = Natural;
    fn add(self, rhs: &Natural) -> Natural {
        Natural(self.0 + &rhs.0)
    }
}

impl AddAssign<&Natural> for Natural {
    fn add_assign(&mut self, rhs: &Natural) {
        self.0 += &rhs.0;
    }
}

impl Mul for Natural {
    type Output = Natural;
    fn mul(self, rhs: Natural) -> Natural {
        Natural(self.0 * rhs.0)
    }
}

impl Mul<&Natural> for Natural {
    type Output = Natural;
    fn mul(self, rhs: &Natural) -> Natural {
        Natural(self.0 * &rhs.0)
    }
}

impl MulAssign<&Natural> for Natural {
    fn mul_assign(&mut self, rhs: &Natural) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Natural {
    fn sum<I: Iterator<Item = Natural>>(iter: I) -> Natural {
        iter.fold(Natural::zero(), |a, b| a + b)
    }
}

impl Product for Natural {
    fn product<I: Iterator<Item = Natural>>(iter: I) -> Natural {
        iter.fold(Natural::one(), |a, b| a * b)
    }
}

impl Serialize for Natural {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_decimal())
    }
}

impl<'de> Deserialize<'de> for Natural {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        Natural::from_decimal(&s)
            .ok_or_else(|| serde::de::Error::custom(format!("invalid natural number `{s}`")))
    }
}

/// Which semiring a diagram is evaluated over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Carrier {
    /// Natural numbers: addition and multiplication; answers are counts.
    Nat,
    /// Booleans: ∨ as addition, ∧ as multiplication; answers are
    /// satisfiability verdicts.
    Bool,
}

/// A value in one of the two carriers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Count(Natural),
    Decision(bool),
}

impl Value {
    /// Reinterprets a natural in the requested carrier.
    pub fn of(carrier: Carrier, n: Natural) -> Value {
        match carrier {
            Carrier::Nat => Value::Count(n),
            Carrier::Bool => Value::Decision(project(&n)),
        }
    }

    pub fn as_count(&self) -> Option<&Natural> {
        match self {
            Value::Count(n) => Some(n),
            Value::Decision(_) => None,
        }
    }

    pub fn as_decision(&self) -> Option<bool> {
        match self {
            Value::Count(_) => None,
            Value::Decision(b) => Some(*b),
        }
    }
}

impl Carrier {
    pub fn zero(self) -> Value {
        match self {
            Carrier::Nat => Value::Count(Natural::zero()),
            Carrier::Bool => Value::Decision(false),
        }
    }

    pub fn one(self) -> Value {
        match self {
            Carrier::Nat => Value::Count(Natural::one()),
            Carrier::Bool => Value::Decision(true),
        }
    }

    pub fn add(self, a: &Value, b: &Value) -> Value {
        match (self, a, b) {
            (Carrier::Nat, Value::Count(x), Value::Count(y)) => Value::Count(x.clone() + y),
            (Carrier::Bool, Value::Decision(x), Value::Decision(y)) => Value::Decision(*x || *y),
            _ => panic!("carrier/value mismatch"),
        }
    }

    pub fn mul(self, a: &Value, b: &Value) -> Value {
        match (self, a, b) {
            (Carrier::Nat, Value::Count(x), Value::Count(y)) => Value::Count(x.clone() * y),
            (Carrier::Bool, Value::Decision(x), Value::Decision(y)) => Value::Decision(*x && *y),
            _ => panic!("carrier/value mismatch"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn project_fixed_points() {
        assert!(!project(&Natural::zero()));
        assert!(project(&Natural::one()));
        // in booleans 1 = 2
        assert!(project(&Natural::from(2u32)));
    }

    #[test]
    fn pow2_values() {
        assert_eq!(pow2(0), Natural::one());
        assert_eq!(pow2(3), Natural::from(8u32));
        // beyond 64-bit: computed by repeated doubling as a check
        let mut doubled = Natural::one();
        for _ in 0..64 {
            doubled = doubled.clone() + &doubled;
        }
        assert_eq!(pow2(64), doubled);
        assert_eq!(pow2(64).to_decimal(), "18446744073709551616");
    }

    #[test]
    fn projection_is_a_homomorphism() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let m = Natural::from(rng.gen_range(0u64..5));
            let n = Natural::from(rng.gen_range(0u64..5));
            let sum = m.clone() + &n;
            let prod = m.clone() * &n;
            assert_eq!(project(&sum), project(&m) || project(&n));
            assert_eq!(project(&prod), project(&m) && project(&n));
        }
    }

    #[test]
    fn projection_of_powers_of_two() {
        for c in 0..100 {
            assert!(project(&pow2(c)));
            assert!(pow2(c).is_power_of_two());
        }
        assert!(!Natural::zero().is_power_of_two());
        assert!(!Natural::from(6u32).is_power_of_two());
    }

    #[test]
    fn semiring_laws_on_bool_exhaustive() {
        let c = Carrier::Bool;
        let vals = [Value::Decision(false), Value::Decision(true)];
        for a in &vals {
            for b in &vals {
                assert_eq!(c.add(a, b), c.add(b, a));
                assert_eq!(c.mul(a, b), c.mul(b, a));
                assert_eq!(c.mul(&c.zero(), a), c.zero());
                for d in &vals {
                    assert_eq!(c.add(&c.add(a, b), d), c.add(a, &c.add(b, d)));
                    assert_eq!(c.mul(&c.mul(a, b), d), c.mul(a, &c.mul(b, d)));
                    assert_eq!(
                        c.mul(a, &c.add(b, d)),
                        c.add(&c.mul(a, b), &c.mul(a, d))
                    );
                }
            }
        }
    }

    #[test]
    fn semiring_laws_on_nat_randomized() {
        let c = Carrier::Nat;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let a = Value::Count(Natural::from(rng.gen_range(0u64..1000)));
            let b = Value::Count(Natural::from(rng.gen_range(0u64..1000)));
            let d = Value::Count(Natural::from(rng.gen_range(0u64..1000)));
            assert_eq!(c.add(&a, &b), c.add(&b, &a));
            assert_eq!(c.mul(&a, &b), c.mul(&b, &a));
            assert_eq!(c.add(&c.add(&a, &b), &d), c.add(&a, &c.add(&b, &d)));
            assert_eq!(c.mul(&c.mul(&a, &b), &d), c.mul(&a, &c.mul(&b, &d)));
            assert_eq!(
                c.mul(&a, &c.add(&b, &d)),
                c.add(&c.mul(&a, &b), &c.mul(&a, &d))
            );
            assert_eq!(c.mul(&c.zero(), &a), c.zero());
        }
    }

    #[test]
    fn decimal_round_trip() {
        let n = pow2(200);
        assert_eq!(Natural::from_decimal(&n.to_decimal()), Some(n));
        assert_eq!(Natural::from_decimal("x12"), None);
    }
}
