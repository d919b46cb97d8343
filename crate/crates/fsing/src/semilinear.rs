//! p-semilinear maps over the imperfect fields K_e, stored as a plain
//! matrix plus the convention v -> M * v^(p^e). Kernels are computed
//! exactly by expanding every matrix entry along the p-basis
//! {1, theta, ..., theta^{p-1}} of K_e over K_e^p, which turns the
//! semilinear condition into an honest linear system.

use crate::fields::{FieldDesc, FieldElement, Matrix};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemilinearError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subspace is not F-stable: image of basis vector {0} leaves the span")]
    NotStable(usize),
}

/// An additive map phi with phi(c v) = c^{p^e} phi(v), acting as
/// v -> M * v^(p^e) on coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLinearMap {
    desc: FieldDesc,
    /// Semilinearity exponent e: the map twists by p^e.
    exponent: u32,
    src_labels: Vec<String>,
    dst_labels: Vec<String>,
    matrix: Matrix,
}

impl PLinearMap {
    pub fn new(
        desc: FieldDesc,
        exponent: u32,
        src_labels: Vec<String>,
        dst_labels: Vec<String>,
        matrix: Matrix,
    ) -> Self {
        assert_eq!(matrix.rows(), dst_labels.len());
        assert_eq!(matrix.cols(), src_labels.len());
        assert_eq!(matrix.desc(), desc);
        assert!(exponent >= 1);
        PLinearMap {
            desc,
            exponent,
            src_labels,
            dst_labels,
            matrix,
        }
    }

    pub fn desc(&self) -> FieldDesc {
        self.desc
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn src_labels(&self) -> &[String] {
        &self.src_labels
    }

    pub fn dst_labels(&self) -> &[String] {
        &self.dst_labels
    }

    pub fn src_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn dst_dim(&self) -> usize {
        self.matrix.rows()
    }

    fn twist(v: &FieldElement, e: u32) -> FieldElement {
        let mut out = v.clone();
        for _ in 0..e {
            out = out.frobenius();
        }
        out
    }

    /// Applies the map: M * v^(p^e).
    pub fn apply(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let twisted: Vec<FieldElement> = v.iter().map(|c| Self::twist(c, self.exponent)).collect();
        self.matrix.mul_vec(&twisted)
    }

    /// The p-basis expansion of the matrix: the kernel of the returned
    /// (p^e * dst) x src linear matrix equals the kernel of the map.
    pub fn expanded_matrix(&self) -> Matrix {
        let mut m = self.matrix.clone();
        for _ in 0..self.exponent {
            m = expand_once(&m);
        }
        m
    }

    /// Basis of {v : M v^(p^e) = 0}; the kernel is a genuine K-subspace
    /// since scaling twists through the p^e power of the scalar.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        self.expanded_matrix().kernel_basis()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_empty()
    }

    /// Composition self after other: matrix M_self * M_other^(p^{e_self}),
    /// twisting exponent adds.
    pub fn compose(&self, other: &PLinearMap) -> Result<PLinearMap, SemilinearError> {
        if other.dst_labels != self.src_labels {
            return Err(SemilinearError::DimensionMismatch(format!(
                "compose: inner destination ({}) != outer source ({})",
                other.dst_labels.len(),
                self.src_labels.len()
            )));
        }
        let twisted = other
            .matrix
            .map(self.desc, |c| Self::twist(c, self.exponent));
        Ok(PLinearMap::new(
            self.desc,
            self.exponent + other.exponent,
            other.src_labels.clone(),
            self.dst_labels.clone(),
            self.matrix.matmul(&twisted),
        ))
    }

    /// e-fold self-composition; requires src = dst.
    pub fn iterate(&self, e: u32) -> Result<PLinearMap, SemilinearError> {
        if self.src_labels != self.dst_labels {
            return Err(SemilinearError::DimensionMismatch(
                "iterate requires an endomorphism".to_string(),
            ));
        }
        assert!(e >= 1);
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// Extends scalars one step up the tower; same labels, entries embedded.
    pub fn base_change(&self) -> PLinearMap {
        let up = self.desc.up();
        PLinearMap::new(
            up,
            self.exponent,
            self.src_labels.clone(),
            self.dst_labels.clone(),
            self.matrix.map(up, FieldElement::embed_up),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let matrix: Vec<Vec<String>> = (0..self.matrix.rows())
            .map(|i| {
                (0..self.matrix.cols())
                    .map(|j| self.matrix.get(i, j).render())
                    .collect()
            })
            .collect();
        serde_json::json!({
            "level": self.desc.level(),
            "src": self.src_labels,
            "dst": self.dst_labels,
            "matrix": matrix,
            "exponent": self.desc.p().pow(self.exponent),
        })
    }
}

/// One p-basis expansion step: each entry m_ij = sum_a w_ij_a^p theta^a
/// becomes p stacked rows of w's, so that sum_j c_j^p m_ij = 0 iff every
/// expanded row pairs to zero with (c_j).
fn expand_once(m: &Matrix) -> Matrix {
    let p = m.desc().p() as usize;
    let mut parts: Vec<Vec<Vec<FieldElement>>> = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let row: Vec<Vec<FieldElement>> =
            (0..m.cols()).map(|j| m.get(i, j).p_components()).collect();
        parts.push(row);
    }
    Matrix::from_fn(m.desc(), m.rows() * p, m.cols(), |i, j| {
        let (orig, a) = (i / p, i % p);
        parts[orig][j][a].clone()
    })
}

/// Verified witness that Frobenius is not injective on a quotient by the
/// F-stable subspace V: eta lies outside span(V) but maps into it.
#[derive(Debug, Clone)]
pub struct StableSubspaceWitness {
    pub subspace: Vec<Vec<FieldElement>>,
    pub eta: Vec<FieldElement>,
}

impl StableSubspaceWitness {
    /// Recomputes the three defining facts from scratch.
    pub fn verify(&self, map: &PLinearMap) -> bool {
        let dim = map.src_dim();
        let span = Matrix::from_columns(map.desc(), dim, &self.subspace);
        let stable = self
            .subspace
            .iter()
            .all(|v| span.contains_in_span(&map.apply(v)));
        let eta_outside = !span.contains_in_span(&self.eta);
        let image_inside = span.contains_in_span(&map.apply(&self.eta));
        stable && eta_outside && image_inside
    }
}

/// Given an endomorphism phi and a subspace V with F(V) contained in
/// span(V), finds the first basis-ordered eta outside span(V) whose image
/// lands in span(V), if any.
pub fn stable_subspace_witness(
    map: &PLinearMap,
    subspace: &[Vec<FieldElement>],
) -> Result<Option<StableSubspaceWitness>, SemilinearError> {
    let dim = map.src_dim();
    assert_eq!(map.dst_dim(), dim, "endomorphism required");
    let span = Matrix::from_columns(map.desc(), dim, subspace);
    for (i, v) in subspace.iter().enumerate() {
        if !span.contains_in_span(&map.apply(v)) {
            return Err(SemilinearError::NotStable(i));
        }
    }
    // Rows of the left annihilator of span(V): c with c^T V = 0. Then
    // F(eta) in span(V) iff (C M) eta^(p^e) = 0, so the preimage is the
    // kernel of that projected semilinear map.
    let annihilator = span.transpose().kernel_basis();
    if annihilator.is_empty() {
        return Ok(None); // V is the whole space
    }
    let proj = Matrix::from_columns(map.desc(), dim, &annihilator).transpose();
    let projected = PLinearMap::new(
        map.desc(),
        map.exponent,
        map.src_labels().to_vec(),
        (0..annihilator.len()).map(|i| format!("q{i}")).collect(),
        proj.matmul(map.matrix()),
    );
    for eta in projected.kernel() {
        if !span.contains_in_span(&eta) {
            let witness = StableSubspaceWitness {
                subspace: subspace.to_vec(),
                eta,
            };
            debug_assert!(witness.verify(map));
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> FieldDesc {
        FieldDesc::base(2).unwrap()
    }

    fn el(desc: FieldDesc, s: &str) -> FieldElement {
        FieldElement::parse(desc, s).unwrap()
    }

    /// The degree-0 Frobenius matrix of the p=2 hypersurface in basis
    /// order eta1, eta3, eta2 (ascending (a,b) on the symbols).
    fn p2_degree0_map() -> PLinearMap {
        let d = k2();
        let labels = vec!["e1".into(), "e3".into(), "e2".into()];
        // F(e1)=e2, F(e3)=t e1, F(e2)=e1
        let mut m = Matrix::zero(d, 3, 3);
        m.set(2, 0, el(d, "1"));
        m.set(0, 1, el(d, "t"));
        m.set(0, 2, el(d, "1"));
        PLinearMap::new(d, 1, labels.clone(), labels, m)
    }

    #[test]
    fn zero_matrix_full_kernel() {
        let d = k2();
        let labels: Vec<String> = (0..3).map(|i| format!("b{i}")).collect();
        let map = PLinearMap::new(d, 1, labels.clone(), labels, Matrix::zero(d, 3, 3));
        assert_eq!(map.kernel().len(), 3);
    }

    #[test]
    fn degree0_injective_over_base() {
        let map = p2_degree0_map();
        assert!(map.is_injective());
        // rank + nullity on the expanded matrix
        let exp = map.expanded_matrix();
        assert_eq!(exp.rank() + exp.kernel_basis().len(), 3);
    }

    #[test]
    fn degree0_kernel_after_base_change() {
        let map = p2_degree0_map().base_change();
        let ker = map.kernel();
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        // expected: 0*e1 + 1*e3 + s*e2 up to scaling (t^{1/2} e2 + e3)
        assert!(v[0].is_zero());
        let s = el(map.desc(), "s");
        assert!((&(&v[1] * &s) - &v[2]).is_zero());
        // and it really maps to zero
        assert!(map.apply(v).iter().all(FieldElement::is_zero));
    }

    #[test]
    fn iterate_composes_relations() {
        // F^2(e1) = F(e2) = e1 on the p=2 example
        let map = p2_degree0_map();
        let sq = map.iterate(2).unwrap();
        let e1 = vec![
            el(k2(), "1"),
            FieldElement::zero(k2()),
            FieldElement::zero(k2()),
        ];
        assert_eq!(sq.apply(&e1), e1);
        assert_eq!(sq.exponent(), 2);
        assert_eq!(map.iterate(1).unwrap(), map);
    }

    #[test]
    fn identity_injective_after_iteration_and_base_change() {
        let d = k2();
        let labels: Vec<String> = (0..2).map(|i| format!("b{i}")).collect();
        let map = PLinearMap::new(d, 1, labels.clone(), labels, Matrix::identity(d, 2));
        assert!(map.iterate(3).unwrap().is_injective());
        assert!(map.base_change().is_injective());
    }

    #[test]
    fn stable_subspace_witness_p2() {
        let map = p2_degree0_map();
        let d = k2();
        // V = span(e1, e2) (indices 0 and 2 in this basis order)
        let v = vec![
            vec![el(d, "1"), el(d, "0"), el(d, "0")],
            vec![el(d, "0"), el(d, "0"), el(d, "1")],
        ];
        let w = stable_subspace_witness(&map, &v).unwrap().unwrap();
        assert!(w.verify(&map));
        // the witness is e3 up to span(V): nonzero middle coordinate
        assert!(!w.eta[1].is_zero());
        // whole space: no witness exists
        let full = vec![
            vec![el(d, "1"), el(d, "0"), el(d, "0")],
            vec![el(d, "0"), el(d, "1"), el(d, "0")],
            vec![el(d, "0"), el(d, "0"), el(d, "1")],
        ];
        assert!(stable_subspace_witness(&map, &full).unwrap().is_none());
    }

    #[test]
    fn unstable_subspace_rejected() {
        let map = p2_degree0_map();
        let d = k2();
        // span(e1) alone is not F-stable: F(e1) = e2
        let v = vec![vec![el(d, "1"), el(d, "0"), el(d, "0")]];
        assert!(matches!(
            stable_subspace_witness(&map, &v),
            Err(SemilinearError::NotStable(0))
        ));
    }
}
