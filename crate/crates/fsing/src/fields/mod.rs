//! Exact arithmetic in the rational function fields K_e = F_p(t^{1/p^e}).
//!
//! Level e of the tower is represented as F_p(theta) with theta^{p^e} = t,
//! so every level is itself a plain rational function field and no modular
//! reduction is ever needed. The printed variable is "t" at level 0 and
//! "s" at every level above.

mod element;
mod matrix;
mod unipoly;

pub use element::FieldElement;
pub use matrix::Matrix;
pub use unipoly::UniPoly;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields: {0} vs {1}")]
    FieldMismatch(FieldDesc, FieldDesc),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field F_p with elements represented as residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inv(&self, a: u64) -> Result<u64, FieldError> {
        if a.is_multiple_of(self.p) {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, self.p - 2))
    }
}

/// Identifies one field in the tower F_p(t) = K_0 ⊂ K_1 ⊂ ... where
/// K_e = F_p(theta) with theta^{p^e} = t.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldDesc {
    p: u64,
    e: u32,
}

impl FieldDesc {
    pub fn new(p: u64, e: u32) -> Result<Self, FieldError> {
        PrimeField::new(p)?;
        Ok(FieldDesc { p, e })
    }

    /// The base field F_p(t).
    pub fn base(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 0)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.e
    }

    pub fn prime_field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    /// Descriptor of the next field up the tower, F_p(t^{1/p^{e+1}}).
    pub fn up(&self) -> FieldDesc {
        FieldDesc {
            p: self.p,
            e: self.e + 1,
        }
    }

    /// Printed name of the generator: "t" at level 0, "s" above.
    pub fn var_name(&self) -> &'static str {
        if self.e == 0 {
            "t"
        } else {
            "s"
        }
    }
}

impl std::fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.e == 0 {
            write!(f, "F_{}(t)", self.p)
        } else {
            write!(f, "F_{}(t^(1/{}^{}))", self.p, self.p, self.e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_check() {
        assert!(is_prime(2));
        assert!(is_prime(7));
        assert!(!is_prime(1));
        assert!(!is_prime(4));
        assert!(PrimeField::new(4).is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.inv(0), Err(FieldError::DivisionByZero));
    }
}
