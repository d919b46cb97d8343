//! Dense univariate polynomials over F_p, the substrate for rational
//! function arithmetic. Coefficients are stored low-to-high with no
//! trailing zero.

use super::{FieldError, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl UniPoly {
    pub fn new(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= field.p();
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: PrimeField) -> Self {
        UniPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        Self::new(field, vec![c])
    }

    /// c * x^k as a polynomial.
    pub fn monomial(field: PrimeField, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.field.add(self.coeff(i), rhs.coeff(i)))
            .collect();
        UniPoly::new(self.field, coeffs)
    }

    pub fn sub(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.field.sub(self.coeff(i), rhs.coeff(i)))
            .collect();
        UniPoly::new(self.field, coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        UniPoly::new(self.field, coeffs)
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = self.field.add(coeffs[i + j], self.field.mul(a, b));
            }
        }
        UniPoly::new(self.field, coeffs)
    }

    pub fn mul_scalar(&self, c: u64) -> UniPoly {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        UniPoly::new(self.field, coeffs)
    }

    pub fn pow(&self, e: u64) -> UniPoly {
        let mut acc = UniPoly::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn divrem(&self, div: &UniPoly) -> Result<(UniPoly, UniPoly), FieldError> {
        if div.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let dd = div.degree().unwrap();
        let lead_inv = self.field.inv(div.leading_coeff())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = self.field.mul(*rem.last().unwrap(), lead_inv);
            quot[k] = factor;
            for (i, &c) in div.coeffs.iter().enumerate() {
                rem[k + i] = self.field.sub(rem[k + i], self.field.mul(factor, c));
            }
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        Ok((
            UniPoly::new(self.field, quot),
            UniPoly::new(self.field, rem),
        ))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scales so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading_coeff()).unwrap();
        self.mul_scalar(inv)
    }

    /// Substitutes x -> x^k, i.e. multiplies every exponent by k.
    pub fn stretch(&self, k: usize) -> UniPoly {
        if self.is_zero() || k == 0 {
            return if self.is_zero() {
                self.clone()
            } else {
                UniPoly::constant(self.field, self.eval_at_one())
            };
        }
        let mut coeffs = vec![0u64; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c;
        }
        UniPoly::new(self.field, coeffs)
    }

    fn eval_at_one(&self) -> u64 {
        self.coeffs.iter().fold(0, |acc, &c| self.field.add(acc, c))
    }

    /// Splits by exponent class mod p: returns `p` polynomials n_a with
    /// self(x) = sum_a n_a(x^p) * x^a. Coefficients are untouched (they
    /// are Frobenius-fixed in F_p).
    pub fn split_mod_p(&self) -> Vec<UniPoly> {
        let p = self.field.p() as usize;
        let mut parts = vec![Vec::new(); p];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let (q, a) = (i / p, i % p);
            if parts[a].len() <= q {
                parts[a].resize(q + 1, 0);
            }
            parts[a][q] = c;
        }
        parts
            .into_iter()
            .map(|coeffs| UniPoly::new(self.field, coeffs))
            .collect()
    }

    /// Renders with the given variable name, terms high-to-low,
    /// e.g. "t^2+t+1" or "2*t^3+1".
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            match (c, i) {
                (_, 0) => out.push_str(&c.to_string()),
                (1, 1) => out.push_str(var),
                (1, _) => out.push_str(&format!("{var}^{i}")),
                (_, 1) => out.push_str(&format!("{c}*{var}")),
                (_, _) => out.push_str(&format!("{c}*{var}^{i}")),
            }
        }
        out
    }

    /// Parses the `render` grammar (also accepting "-" between terms).
    pub fn parse(field: PrimeField, var: &str, input: &str) -> Result<UniPoly, FieldError> {
        let s = input.trim();
        if s.is_empty() {
            return Err(FieldError::Parse {
                what: "polynomial",
                input: input.to_string(),
            });
        }
        let err = || FieldError::Parse {
            what: "polynomial",
            input: input.to_string(),
        };
        let mut acc = UniPoly::zero(field);
        // split into signed terms
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if ch == '-' && i == 0 {
                neg = true;
            } else {
                cur.push(ch);
            }
        }
        terms.push((neg, cur));
        for (is_neg, term) in terms {
            let term = term.trim();
            if term.is_empty() {
                return Err(err());
            }
            let (coeff_str, mono) = match term.split_once('*') {
                Some((c, m)) => (Some(c), m),
                None => (None, term),
            };
            let mut coeff = match coeff_str {
                Some(c) => c.parse::<u64>().map_err(|_| err())?,
                None => 1,
            };
            let exp;
            if mono.chars().all(|c| c.is_ascii_digit()) {
                // bare constant
                if coeff_str.is_some() {
                    return Err(err());
                }
                coeff = mono.parse::<u64>().map_err(|_| err())?;
                exp = 0;
            } else if mono == var {
                exp = 1;
            } else if let Some(rest) = mono.strip_prefix(var) {
                let e = rest.strip_prefix('^').ok_or_else(err)?;
                exp = e.parse::<usize>().map_err(|_| err())?;
            } else {
                return Err(err());
            }
            let c = if is_neg {
                field.neg(coeff % field.p())
            } else {
                coeff % field.p()
            };
            acc = acc.add(&UniPoly::monomial(field, c, exp));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn canonical_form_trims_zeros() {
        let p = UniPoly::new(f2(), vec![1, 0, 0]);
        assert_eq!(p.degree(), Some(0));
        assert!(UniPoly::new(f2(), vec![0, 0]).is_zero());
        assert_eq!(UniPoly::zero(f2()).degree(), None);
    }

    #[test]
    fn divrem_roundtrip() {
        let a = UniPoly::new(f5(), vec![1, 2, 3, 4]);
        let b = UniPoly::new(f5(), vec![2, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_of_common_factor() {
        let common = UniPoly::new(f2(), vec![1, 1]); // t+1
        let a = common.mul(&UniPoly::new(f2(), vec![0, 1]));
        let b = common.mul(&UniPoly::new(f2(), vec![1, 1, 1]));
        assert_eq!(a.gcd(&b), common);
    }

    #[test]
    fn split_mod_p_reassembles() {
        let p = UniPoly::new(f5(), vec![1, 2, 3, 4, 0, 1, 2]);
        let parts = p.split_mod_p();
        let mut sum = UniPoly::zero(f5());
        for (a, part) in parts.iter().enumerate() {
            sum = sum.add(&part.stretch(5).mul(&UniPoly::monomial(f5(), 1, a)));
        }
        assert_eq!(sum, p);
    }

    #[test]
    fn render_parse_roundtrip() {
        let p = UniPoly::new(f5(), vec![3, 0, 1, 4]);
        let s = p.render("t");
        assert_eq!(s, "4*t^3+t^2+3");
        assert_eq!(UniPoly::parse(f5(), "t", &s).unwrap(), p);
        assert_eq!(
            UniPoly::parse(f2(), "t", "t^2+t+1").unwrap(),
            UniPoly::new(f2(), vec![1, 1, 1])
        );
    }
}
