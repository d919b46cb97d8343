//! Cech-basis model of top local cohomology for graded hypersurfaces
//! R = k[x,y,z]/(f) with f monic in x, computed on the system of
//! parameters y, z. Classes are spanned by symbols [x^a/(y^b z^c)] with
//! 0 <= a <= m-1 and b, c >= 1; everything else reduces into the image
//! of the partial localizations and is dropped.
//!
//! Lower cohomology vanishes: a two-dimensional graded hypersurface is
//! Cohen-Macaulay (free over k[y,z] on 1, x, ..., x^{m-1}), so only H^2
//! is modeled.

use crate::fields::{FieldDesc, FieldElement};
use crate::polyring::{MPoly, WeightedRing};
use crate::semilinear::PLinearMap;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("hypersurface polynomial must be homogeneous")]
    NonHomogeneous,
    #[error("hypersurface ring must have exactly three variables")]
    WrongVariableCount,
    #[error("leading x-coefficient of f must be a unit scalar, found {0}")]
    NotMonicInX(String),
    #[error("a reduced class left the target basis (internal invariant)")]
    BasisExpressFailure,
}

/// R = S/fS for homogeneous f, monic of degree m in x. The stored g
/// always satisfies the rewrite rule x^m -> g in R, regardless of the
/// sign convention f = x^m + g or x^m - g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedHypersurface {
    ring: WeightedRing,
    f: MPoly,
    m: u32,
    g: MPoly,
}

impl GradedHypersurface {
    pub fn new(ring: WeightedRing, f: MPoly) -> Result<Self, CohomologyError> {
        if ring.nvars() != 3 {
            return Err(CohomologyError::WrongVariableCount);
        }
        if !f.is_homogeneous() || f.is_zero() {
            return Err(CohomologyError::NonHomogeneous);
        }
        let m = f.max_exponent(0).unwrap();
        let lead = f.coeff(&[m, 0, 0]);
        if lead.is_zero() {
            return Err(CohomologyError::NotMonicInX(lead.render()));
        }
        let one = FieldElement::one(ring.field());
        if lead != one && lead != -&one {
            return Err(CohomologyError::NotMonicInX(lead.render()));
        }
        // g = x^m - lead^{-1} f, so that x^m = g holds in R
        let xm = MPoly::var_power(&ring, 0, m);
        let g = xm.sub(&f.mul_scalar(&lead.inverse().expect("unit")));
        if g.max_exponent(0).unwrap_or(0) >= m && !g.is_zero() {
            return Err(CohomologyError::NotMonicInX(lead.render()));
        }
        Ok(GradedHypersurface { ring, f, m, g })
    }

    pub fn ring(&self) -> &WeightedRing {
        &self.ring
    }

    pub fn field(&self) -> FieldDesc {
        self.ring.field()
    }

    pub fn f(&self) -> &MPoly {
        &self.f
    }

    pub fn g(&self) -> &MPoly {
        &self.g
    }

    pub fn x_degree(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> i64 {
        self.f.homogeneous_degree().expect("f is homogeneous")
    }

    /// a(R) = (m-1) deg(x) - (deg(y) + deg(z)).
    pub fn a_invariant(&self) -> i64 {
        let w = self.ring.weights();
        (self.m as i64 - 1) * w[0] as i64 - (w[1] as i64 + w[2] as i64)
    }

    /// The same hypersurface with coefficients embedded one level up.
    pub fn base_change(&self) -> GradedHypersurface {
        let up_ring = self.ring.with_field(self.field().up());
        let f = self.f.map_coeffs(&up_ring, FieldElement::embed_up);
        GradedHypersurface::new(up_ring, f).expect("base change preserves the shape")
    }
}

/// A Cech basis symbol [x^a/(y^b z^c)] with 0 <= a <= m-1, b, c >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CechSymbol {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl CechSymbol {
    pub fn degree(&self, ring: &WeightedRing) -> i64 {
        let w = ring.weights();
        self.a as i64 * w[0] as i64 - self.b as i64 * w[1] as i64 - self.c as i64 * w[2] as i64
    }

    pub fn render(&self) -> String {
        let x = match self.a {
            0 => "1".to_string(),
            1 => "x".to_string(),
            a => format!("x^{a}"),
        };
        let pow = |v: &str, e: u32| {
            if e == 1 {
                v.to_string()
            } else {
                format!("{v}^{e}")
            }
        };
        format!("[{}/({}*{})]", x, pow("y", self.b), pow("z", self.c))
    }
}

/// A K-linear combination of Cech symbols.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CohomClass {
    terms: BTreeMap<CechSymbol, FieldElement>,
}

impl CohomClass {
    pub fn zero() -> Self {
        CohomClass::default()
    }

    pub fn of_symbol(sym: CechSymbol, coeff: FieldElement) -> Self {
        let mut class = Self::zero();
        class.add_term(sym, coeff);
        class
    }

    pub fn add_term(&mut self, sym: CechSymbol, coeff: FieldElement) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(sym) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, rhs: &CohomClass) -> CohomClass {
        let mut out = self.clone();
        for (&s, c) in &rhs.terms {
            out.add_term(s, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> CohomClass {
        if c.is_zero() {
            return CohomClass::zero();
        }
        CohomClass {
            terms: self.terms.iter().map(|(&s, k)| (s, k * c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CechSymbol, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, sym: &CechSymbol, desc: FieldDesc) -> FieldElement {
        self.terms
            .get(sym)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(desc))
    }

    /// Common weighted degree of all symbols, or None if mixed or zero.
    pub fn homogeneous_degree(&self, ring: &WeightedRing) -> Option<i64> {
        let mut deg = None;
        for s in self.terms.keys() {
            let d = s.degree(ring);
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Coordinates in the given basis; None if a symbol falls outside it.
    pub fn coordinates(&self, basis: &[CechSymbol], desc: FieldDesc) -> Option<Vec<FieldElement>> {
        let index: BTreeMap<&CechSymbol, usize> =
            basis.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut coords = vec![FieldElement::zero(desc); basis.len()];
        for (s, c) in &self.terms {
            coords[*index.get(s)?] = c.clone();
        }
        Some(coords)
    }

    pub fn from_coordinates(basis: &[CechSymbol], coords: &[FieldElement]) -> CohomClass {
        let mut class = CohomClass::zero();
        for (s, c) in basis.iter().zip(coords) {
            class.add_term(*s, c.clone());
        }
        class
    }

    pub fn to_json(&self, ring: &WeightedRing) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(s, c)| serde_json::json!({"a": s.a, "b": s.b, "c": s.c, "coeff": c.render()}))
            .collect();
        serde_json::json!({
            "degree": self.homogeneous_degree(ring),
            "terms": terms,
        })
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(s, c)| {
                if c.is_one() {
                    s.render()
                } else {
                    format!("({})*{}", c.render(), s.render())
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }
}

/// All basis symbols of the given weighted degree, ordered by ascending
/// (a, b); complete since c is forced by the degree equation.
pub fn basis_of_degree(h: &GradedHypersurface, d: i64) -> Vec<CechSymbol> {
    let w = h.ring().weights();
    let (wx, wy, wz) = (w[0] as i64, w[1] as i64, w[2] as i64);
    let mut out = Vec::new();
    for a in 0..h.x_degree() {
        let budget = a as i64 * wx - d; // = b*wy + c*wz, need b,c >= 1
        let mut b = 1i64;
        while b * wy + wz <= budget {
            let rem = budget - b * wy;
            if rem % wz == 0 {
                out.push(CechSymbol {
                    a,
                    b: b as u32,
                    c: (rem / wz) as u32,
                });
            }
            b += 1;
        }
    }
    out
}

/// Expresses numerator/(y^b z^c) in the Cech basis: rewrites x^m -> g
/// until every x-exponent is at most m-1, then keeps exactly the
/// monomials whose y- and z-exponents stay below b and c.
pub fn reduce_to_cech(h: &GradedHypersurface, numerator: &MPoly, b: u32, c: u32) -> CohomClass {
    assert!(b >= 1 && c >= 1);
    let m = h.x_degree();
    let mut poly = numerator.clone();
    // each rewrite strictly lowers total x-degree, so this terminates
    while poly.max_exponent(0).unwrap_or(0) >= m {
        let mut next = MPoly::zero(h.ring());
        for (e, coeff) in poly.terms() {
            if e[0] >= m {
                let mut rest = e.clone();
                rest[0] -= m;
                let tail = MPoly::monomial(h.ring(), rest, coeff.clone());
                next = next.add(&tail.mul(h.g()));
            } else {
                next.add_term(e.clone(), coeff.clone());
            }
        }
        poly = next;
    }
    let mut class = CohomClass::zero();
    for (e, coeff) in poly.terms() {
        // monomials divisible by y^b or z^c lie in the image of the
        // partial localizations and vanish in H^2
        if e[1] >= b || e[2] >= c {
            continue;
        }
        class.add_term(
            CechSymbol {
                a: e[0],
                b: b - e[1],
                c: c - e[2],
            },
            coeff.clone(),
        );
    }
    class
}

/// Frobenius on a class: coefficients to the p, symbols via reduction of
/// x^{ap}/(y^{bp} z^{cp}).
pub fn frobenius_class(h: &GradedHypersurface, class: &CohomClass) -> CohomClass {
    let p = h.field().p() as u32;
    let mut out = CohomClass::zero();
    for (s, coeff) in class.terms() {
        let num = MPoly::var_power(h.ring(), 0, s.a * p);
        let image = reduce_to_cech(h, &num, s.b * p, s.c * p);
        out = out.add(&image.scale(&coeff.frobenius()));
    }
    out
}

/// The Frobenius action [H^2]_d -> [H^2]_{pd} as a p-semilinear map in
/// the degree bases.
pub fn frobenius_matrix_on_piece(
    h: &GradedHypersurface,
    d: i64,
) -> Result<PLinearMap, CohomologyError> {
    let p = h.field().p() as i64;
    let src = basis_of_degree(h, d);
    let dst = basis_of_degree(h, d * p);
    let desc = h.field();
    let mut columns = Vec::with_capacity(src.len());
    for s in &src {
        let image = frobenius_class(h, &CohomClass::of_symbol(*s, FieldElement::one(desc)));
        let coords = image
            .coordinates(&dst, desc)
            .ok_or(CohomologyError::BasisExpressFailure)?;
        columns.push(coords);
    }
    let matrix = crate::fields::Matrix::from_columns(desc, dst.len(), &columns);
    Ok(PLinearMap::new(
        desc,
        1,
        src.iter().map(CechSymbol::render).collect(),
        dst.iter().map(CechSymbol::render).collect(),
        matrix,
    ))
}

/// Least n0 with p*n > sum(k_i e_i) - 2 deg(f) for all n >= n0; the
/// Frobenius action is injective on every piece of degree <= -n0 by the
/// negative-degree criterion, given certified power containments k_i.
pub fn hara_bound(h: &GradedHypersurface, k_powers: (u32, u32, u32)) -> i64 {
    let w = h.ring().weights();
    let rhs = k_powers.0 as i64 * w[0] as i64
        + k_powers.1 as i64 * w[1] as i64
        + k_powers.2 as i64 * w[2] as i64
        - 2 * h.degree();
    let p = h.field().p() as i64;
    (rhs.div_euclid(p) + 1).max(1)
}

/// H^2 of the two-variable polynomial ring on the parameters u, v:
/// symbols (b, c) stand for [1/(u^b v^c)], b, c >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRingH2 {
    desc: FieldDesc,
    weights: (u64, u64),
}

impl PolyRingH2 {
    pub fn standard(desc: FieldDesc) -> Self {
        PolyRingH2 {
            desc,
            weights: (1, 1),
        }
    }

    pub fn desc(&self) -> FieldDesc {
        self.desc
    }

    pub fn symbol_degree(&self, sym: (u32, u32)) -> i64 {
        -(sym.0 as i64 * self.weights.0 as i64) - (sym.1 as i64 * self.weights.1 as i64)
    }

    /// Basis of the degree-d piece, ascending in b.
    pub fn piece(&self, d: i64) -> Vec<(u32, u32)> {
        let (wu, wv) = (self.weights.0 as i64, self.weights.1 as i64);
        let mut out = Vec::new();
        let mut b = 1i64;
        while b * wu + wv <= -d {
            let rem = -d - b * wu;
            if rem % wv == 0 {
                out.push((b as u32, (rem / wv) as u32));
            }
            b += 1;
        }
        out
    }

    /// Frobenius sends (b,c) to (pb, pc) with the coefficient p-th powered.
    pub fn frobenius_symbol(&self, sym: (u32, u32)) -> (u32, u32) {
        let p = self.desc.p() as u32;
        (sym.0 * p, sym.1 * p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::make_example;

    fn el(h: &GradedHypersurface, s: &str) -> FieldElement {
        FieldElement::parse(h.field(), s).unwrap()
    }

    #[test]
    fn a_invariants() {
        assert_eq!(make_example(2).unwrap().a_invariant(), 3);
        assert_eq!(make_example(3).unwrap().a_invariant(), 2);
        assert_eq!(make_example(5).unwrap().a_invariant(), 22);
        // m=1, weights (1,1,1): a = -2
        let ring = WeightedRing::new(
            FieldDesc::base(2).unwrap(),
            vec![("x", 1), ("y", 1), ("z", 1)],
        );
        let f = MPoly::parse(&ring, "x+y+z").unwrap();
        assert_eq!(GradedHypersurface::new(ring, f).unwrap().a_invariant(), -2);
    }

    #[test]
    fn degree0_basis_p2() {
        let h = make_example(2).unwrap();
        let basis = basis_of_degree(&h, 0);
        let set: std::collections::BTreeSet<(u32, u32, u32)> =
            basis.iter().map(|s| (s.a, s.b, s.c)).collect();
        assert_eq!(set, [(1, 1, 1), (2, 2, 2), (2, 1, 4)].into_iter().collect());
        // empty above the a-invariant, nonempty at it
        assert!(basis_of_degree(&h, 4).is_empty());
        assert!(!basis_of_degree(&h, 3).is_empty());
    }

    #[test]
    fn degree0_dimension_p_gt_2() {
        // dimension (p-2)(p-1) from the constraint 1<=n<=p-2, 1<=m<=2n
        for p in [3u64, 5, 7] {
            let h = make_example(p).unwrap();
            let dim = basis_of_degree(&h, 0).len() as u64;
            assert_eq!(dim, (p - 2) * (p - 1), "p={p}");
        }
    }

    #[test]
    fn reduction_drop_rule() {
        let h = make_example(2).unwrap();
        // numerator y with b=1: e >= b, the term drops
        let y = MPoly::parse(h.ring(), "y").unwrap();
        assert!(reduce_to_cech(&h, &y, 1, 1).is_zero());
    }

    #[test]
    fn frobenius_relations_p2() {
        let h = make_example(2).unwrap();
        let (e1, e2, e3) = (
            CechSymbol { a: 1, b: 1, c: 1 },
            CechSymbol { a: 2, b: 2, c: 2 },
            CechSymbol { a: 2, b: 1, c: 4 },
        );
        let one = FieldElement::one(h.field());
        let f1 = frobenius_class(&h, &CohomClass::of_symbol(e1, one.clone()));
        assert_eq!(f1, CohomClass::of_symbol(e2, one.clone()));
        let f2 = frobenius_class(&h, &CohomClass::of_symbol(e2, one.clone()));
        assert_eq!(f2, CohomClass::of_symbol(e1, one.clone()));
        let f3 = frobenius_class(&h, &CohomClass::of_symbol(e3, one.clone()));
        assert_eq!(f3, CohomClass::of_symbol(e1, el(&h, "t")));
    }

    #[test]
    fn frobenius_relations_p_gt_2() {
        for p in [3u64, 5, 7] {
            let h = make_example(p).unwrap();
            let one = FieldElement::one(h.field());
            let e1 = CechSymbol {
                a: 1,
                b: 1,
                c: p as u32,
            };
            let e2 = CechSymbol { a: 1, b: 2, c: 1 };
            let f1 = frobenius_class(&h, &CohomClass::of_symbol(e1, one.clone()));
            assert_eq!(f1, CohomClass::of_symbol(e1, one.clone()), "p={p}");
            let f2 = frobenius_class(&h, &CohomClass::of_symbol(e2, one.clone()));
            assert_eq!(f2, CohomClass::of_symbol(e1, el(&h, "t")), "p={p}");
        }
    }

    #[test]
    fn hara_bounds() {
        let h2 = make_example(2).unwrap();
        assert_eq!(hara_bound(&h2, (2, 7, 11)), 7);
        for p in [3u64, 5, 7] {
            let h = make_example(p).unwrap();
            let ks = (
                (p - 2) as u32,
                (3 * p - 2) as u32,
                (2 * p * p - 3 * p) as u32,
            );
            assert_eq!(hara_bound(&h, ks), 3 * p as i64 - 6, "p={p}");
        }
        // negative right-hand side: any positive n works
        let h = make_example(2).unwrap();
        assert_eq!(hara_bound(&h, (0, 0, 0)), 1);
    }

    #[test]
    fn polyring_h2_pieces() {
        let p2 = PolyRingH2::standard(FieldDesc::base(2).unwrap());
        assert_eq!(p2.piece(-2), vec![(1, 1)]);
        assert!(p2.piece(0).is_empty());
        assert_eq!(p2.piece(-3), vec![(1, 2), (2, 1)]);
        assert_eq!(p2.frobenius_symbol((1, 1)), (2, 2));
    }
}
