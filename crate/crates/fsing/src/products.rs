//! Veronese graded-piece selection, Kunneth assembly for Segre products
//! and the enveloping algebra, and Frobenius on tensor classes. The
//! enveloping algebra is never materialized as a six-variable ring: its
//! top cohomology is free on pairs of hypersurface symbols, and the
//! Frobenius reduction runs componentwise.

use crate::cohomology::{
    basis_of_degree, frobenius_matrix_on_piece, reduce_to_cech, CechSymbol, CohomClass,
    CohomologyError, GradedHypersurface, PolyRingH2,
};
use crate::fields::FieldElement;
use crate::polyring::MPoly;
use crate::semilinear::PLinearMap;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProductError {
    #[error(
        "Veronese index {n} does not make the subring standard graded (lcm of weights is {lcm})"
    )]
    NonStandardGrading { n: u64, lcm: u64 },
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// The n-th Veronese subring of a hypersurface, viewed through its
/// graded pieces: piece t of the Veronese is the parent's piece t*n.
#[derive(Debug, Clone)]
pub struct VeroneseView {
    parent: GradedHypersurface,
    n: u64,
}

impl VeroneseView {
    pub fn new(parent: GradedHypersurface, n: u64) -> Self {
        assert!(n >= 1);
        VeroneseView { parent, n }
    }

    pub fn parent(&self) -> &GradedHypersurface {
        &self.parent
    }

    pub fn index(&self) -> u64 {
        self.n
    }

    pub fn piece(&self, t: i64) -> Vec<CechSymbol> {
        basis_of_degree(&self.parent, t * self.n as i64)
    }

    /// Dimension of the Veronese ring itself in Veronese degree t:
    /// monomials of parent degree t*n with x-exponent below m.
    pub fn ring_piece_dim(&self, t: i64) -> usize {
        if t < 0 {
            return 0;
        }
        self.parent
            .ring()
            .monomials_of_degree(t * self.n as i64)
            .into_iter()
            .filter(|e| e[0] < self.parent.x_degree())
            .count()
    }

    /// True iff n is a multiple of the lcm of the parent weights, which
    /// makes the Veronese subring standard graded.
    pub fn is_standard_graded(&self) -> bool {
        self.n.is_multiple_of(weights_lcm(&self.parent))
    }
}

pub fn weights_lcm(h: &GradedHypersurface) -> u64 {
    h.ring().weights().into_iter().fold(1, lcm)
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A basis symbol of H^4 of the enveloping algebra: a pair of
/// hypersurface symbols, the right factor written in u, v, w.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct TensorSymbol {
    pub left: CechSymbol,
    pub right: CechSymbol,
}

impl TensorSymbol {
    pub fn render(&self) -> String {
        format!("{}(x){}", self.left.render(), self.right.render())
    }
}

/// A K-linear combination of tensor symbols.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorClass {
    terms: BTreeMap<TensorSymbol, FieldElement>,
}

impl TensorClass {
    pub fn zero() -> Self {
        TensorClass::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorSymbol, &FieldElement)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, sym: TensorSymbol, coeff: FieldElement) {
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

    pub fn add(&self, rhs: &TensorClass) -> TensorClass {
        let mut out = self.clone();
        for (&s, c) in &rhs.terms {
            out.add_term(s, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &TensorClass) -> TensorClass {
        let mut out = self.clone();
        for (&s, c) in &rhs.terms {
            out.add_term(s, -c);
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> TensorClass {
        if c.is_zero() {
            return TensorClass::zero();
        }
        TensorClass {
            terms: self.terms.iter().map(|(&s, k)| (s, k * c)).collect(),
        }
    }

    /// eta (x) eta': coefficients multiply.
    pub fn tensor(left: &CohomClass, right: &CohomClass) -> TensorClass {
        let mut out = TensorClass::zero();
        for (&ls, lc) in left.terms() {
            for (&rs, rc) in right.terms() {
                out.add_term(
                    TensorSymbol {
                        left: ls,
                        right: rs,
                    },
                    lc * rc,
                );
            }
        }
        out
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

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(s, c)| {
                serde_json::json!({
                    "left": {"a": s.left.a, "b": s.left.b, "c": s.left.c},
                    "right": {"a": s.right.a, "b": s.right.b, "c": s.right.c},
                    "coeff": c.render(),
                })
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }
}

/// Builds a tensor class from a fraction whose numerator mixes both
/// variable blocks: each (left, right) numerator pair sits over the
/// common denominator y^b1 z^c1 v^b2 w^c2 and reduces componentwise.
pub fn tensor_reduce(
    h: &GradedHypersurface,
    parts: &[(MPoly, MPoly)],
    denom: (u32, u32, u32, u32),
) -> TensorClass {
    let (b1, c1, b2, c2) = denom;
    let mut out = TensorClass::zero();
    for (left_num, right_num) in parts {
        let left = reduce_to_cech(h, left_num, b1, c1);
        let right = reduce_to_cech(h, right_num, b2, c2);
        out = out.add(&TensorClass::tensor(&left, &right));
    }
    out
}

/// Frobenius on a tensor class: p-th power of the coefficient, then the
/// hypersurface reduction independently in each factor.
pub fn enveloping_frobenius(h: &GradedHypersurface, class: &TensorClass) -> TensorClass {
    let one = FieldElement::one(h.field());
    let mut out = TensorClass::zero();
    for (s, coeff) in class.terms() {
        let fl = crate::cohomology::frobenius_class(h, &CohomClass::of_symbol(s.left, one.clone()));
        let fr =
            crate::cohomology::frobenius_class(h, &CohomClass::of_symbol(s.right, one.clone()));
        out = out.add(&TensorClass::tensor(&fl, &fr).scale(&coeff.frobenius()));
    }
    out
}

/// Dimension report for the Segre product A = T # k[u,v] in one Segre
/// degree t, from the Kunneth formula: H^3 is the degreewise tensor of
/// the two H^2's, and H^2 collects the ring-tensor-cohomology summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KunnethDims {
    pub t: i64,
    pub h3: usize,
    pub h2: usize,
}

pub fn kunneth_piece_dims(
    veronese: &VeroneseView,
    poly_h2: &PolyRingH2,
    t: i64,
) -> Result<KunnethDims, ProductError> {
    if !veronese.is_standard_graded() {
        return Err(ProductError::NonStandardGrading {
            n: veronese.index(),
            lcm: weights_lcm(veronese.parent()),
        });
    }
    let h2_t = veronese.piece(t).len();
    let poly_t = poly_h2.piece(t).len();
    // T_t # H^2(k[u,v])_t and k[u,v]_t # H^2(T)_t
    let ring_t = veronese.ring_piece_dim(t);
    let kuv_t = if t >= 0 { (t + 1) as usize } else { 0 };
    Ok(KunnethDims {
        t,
        h3: h2_t * poly_t,
        h2: ring_t * poly_t + kuv_t * h2_t,
    })
}

/// The Frobenius action on H^2 of the Segre product A = T # k[u,v],
/// obtained through the identification with the parent's degree-0 piece.
pub fn segre_h2_frobenius(
    veronese: &VeroneseView,
    _poly_h2: &PolyRingH2,
) -> Result<PLinearMap, ProductError> {
    if !veronese.is_standard_graded() {
        return Err(ProductError::NonStandardGrading {
            n: veronese.index(),
            lcm: weights_lcm(veronese.parent()),
        });
    }
    Ok(frobenius_matrix_on_piece(veronese.parent(), 0)?)
}
