//! Rational functions in the tower generator, canonicalized after every
//! operation: gcd-reduced with a monic denominator, so equality is
//! syntactic.

use super::{FieldDesc, FieldError, UniPoly};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    desc: FieldDesc,
    num: UniPoly,
    den: UniPoly,
}

impl FieldElement {
    /// Builds num/den in canonical form. The denominator must be nonzero.
    pub fn new(desc: FieldDesc, num: UniPoly, den: UniPoly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(FieldElement {
                desc,
                num,
                den: UniPoly::one(desc.prime_field()),
            });
        }
        let g = num.gcd(&den);
        let (num, _) = num.divrem(&g)?;
        let (den, _) = den.divrem(&g)?;
        let lead_inv = desc.prime_field().inv(den.leading_coeff())?;
        Ok(FieldElement {
            desc,
            num: num.mul_scalar(lead_inv),
            den: den.monic(),
        })
    }

    pub fn from_poly(desc: FieldDesc, num: UniPoly) -> Self {
        FieldElement {
            desc,
            num,
            den: UniPoly::one(desc.prime_field()),
        }
    }

    pub fn zero(desc: FieldDesc) -> Self {
        Self::from_poly(desc, UniPoly::zero(desc.prime_field()))
    }

    pub fn one(desc: FieldDesc) -> Self {
        Self::from_poly(desc, UniPoly::one(desc.prime_field()))
    }

    pub fn from_int(desc: FieldDesc, n: i64) -> Self {
        let c = desc.prime_field().reduce(n);
        Self::from_poly(desc, UniPoly::constant(desc.prime_field(), c))
    }

    /// The generator theta of the level (prints as "t" or "s").
    pub fn gen(desc: FieldDesc) -> Self {
        Self::from_poly(desc, UniPoly::monomial(desc.prime_field(), 1, 1))
    }

    pub fn desc(&self) -> FieldDesc {
        self.desc
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn check_desc(&self, rhs: &FieldElement) {
        assert_eq!(
            self.desc, rhs.desc,
            "field mismatch: {} vs {}",
            self.desc, rhs.desc
        );
    }

    pub fn inverse(&self) -> Result<FieldElement, FieldError> {
        FieldElement::new(self.desc, self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check_desc(rhs);
        Ok(self * &rhs.inverse()?)
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        let mut acc = FieldElement::one(self.desc);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The p-th power c^p. In F_p(theta) this just multiplies every
    /// exponent by p, since scalar coefficients are Frobenius-fixed.
    pub fn frobenius(&self) -> FieldElement {
        let p = self.desc.p() as usize;
        FieldElement {
            desc: self.desc,
            num: self.num.stretch(p),
            den: self.den.stretch(p),
        }
    }

    /// Writes c = sum_{a=0}^{p-1} (w_a)^p * theta^a and returns
    /// [w_0, ..., w_{p-1}]. This is the p-basis {1, theta, ..., theta^{p-1}}
    /// decomposition of K_e over K_e^p.
    pub fn p_components(&self) -> Vec<FieldElement> {
        let p = self.desc.p();
        // c = N/Q = (N * Q^{p-1}) / Q^p; split the numerator by exponent
        // class mod p, then divide exponents by p.
        let m = self.num.mul(&self.den.pow(p - 1));
        m.split_mod_p()
            .into_iter()
            .map(|part| {
                FieldElement::new(self.desc, part, self.den.clone())
                    .expect("denominator is nonzero")
            })
            .collect()
    }

    /// Reassembles sum_a w_a^p * theta^a; inverse of `p_components`.
    pub fn from_p_components(desc: FieldDesc, parts: &[FieldElement]) -> FieldElement {
        let mut acc = FieldElement::zero(desc);
        let theta = FieldElement::gen(desc);
        for (a, w) in parts.iter().enumerate() {
            acc = &acc + &(&w.frobenius() * &theta.pow(a as u64));
        }
        acc
    }

    /// Injects into the next field of the tower by t = theta'^p.
    pub fn embed_up(&self) -> FieldElement {
        let p = self.desc.p() as usize;
        FieldElement {
            desc: self.desc.up(),
            num: self.num.stretch(p),
            den: self.den.stretch(p),
        }
    }

    /// Canonical string form: numerator, then "/" and denominator when
    /// the denominator is not 1. No spaces, terms high-to-low.
    pub fn render(&self) -> String {
        let var = self.desc.var_name();
        if self.den.is_one() {
            self.num.render(var)
        } else {
            format!("{}/{}", self.num.render(var), self.den.render(var))
        }
    }

    pub fn parse(desc: FieldDesc, input: &str) -> Result<FieldElement, FieldError> {
        let var = desc.var_name();
        let field = desc.prime_field();
        match input.split_once('/') {
            Some((n, d)) => {
                let num = UniPoly::parse(field, var, n)?;
                let den = UniPoly::parse(field, var, d)?;
                FieldElement::new(desc, num, den)
            }
            None => Ok(FieldElement::from_poly(
                desc,
                UniPoly::parse(field, var, input)?,
            )),
        }
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check_desc(rhs);
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        FieldElement::new(self.desc, num, self.den.mul(&rhs.den)).expect("nonzero denominator")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check_desc(rhs);
        FieldElement::new(self.desc, self.num.mul(&rhs.num), self.den.mul(&rhs.den))
            .expect("nonzero denominator")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            desc: self.desc,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u64) -> FieldDesc {
        FieldDesc::base(p).unwrap()
    }

    fn el(p: u64, s: &str) -> FieldElement {
        FieldElement::parse(k(p), s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        // (p=2) 1/(t+1) + t/(t+1) = 1
        assert!((&el(2, "1/t+1") + &el(2, "t/t+1")).is_one());
        // (p=3) t * t^2 = t^3
        assert_eq!(&el(3, "t") * &el(3, "t^2"), el(3, "t^3"));
        // (p=2) (t^2+t+1)^{-1} * (t^2+t+1) = 1
        let a = el(2, "t^2+t+1");
        assert!((&a.inverse().unwrap() * &a).is_one());
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(el(2, "t+1").frobenius(), el(2, "t^2+1"));
        assert!(FieldElement::zero(k(3)).frobenius().is_zero());
        assert_eq!(el(2, "1/t+1").frobenius(), el(2, "1/t^2+1"));
    }

    #[test]
    fn p_component_examples() {
        // t = 1^2 * t
        let parts = el(2, "t").p_components();
        assert!(parts[0].is_zero());
        assert!(parts[1].is_one());
        // 1/(t^2+t) = (t/(t^2+t))^2 + (1/(t^2+t))^2 * t
        let c = el(2, "1/t^2+t");
        let parts = c.p_components();
        assert_eq!(parts[0], el(2, "t/t^2+t"));
        assert_eq!(parts[1], el(2, "1/t^2+t"));
        assert_eq!(FieldElement::from_p_components(k(2), &parts), c);
        // t^2 = 1^3 * t^2 over F_3
        let parts = el(3, "t^2").p_components();
        assert!(parts[0].is_zero() && parts[1].is_zero() && parts[2].is_one());
    }

    #[test]
    fn embed_up_examples() {
        let up = el(2, "t").embed_up();
        assert_eq!(up.render(), "s^2");
        assert!(el(2, "1").embed_up().is_one());
        let up = el(3, "t+1/t").embed_up();
        assert_eq!(up.render(), "s^3+1/s^3");
    }

    #[test]
    fn canonical_string_roundtrip() {
        let c = el(2, "t^2+t+1/t^3");
        assert_eq!(c.render(), "t^2+t+1/t^3");
        assert_eq!(FieldElement::parse(k(2), &c.render()).unwrap(), c);
    }
}
